import itertools
import math
import random

import pytest

from rdss.code import (Code, bounds_report, capacity_exact, confusable, confusion_degrees, degree_distribution_bound,
                       max_code_with_distance, min_distance, parse_code, q_set_size, q_set_words, serialize_code,
                       translate, verify_rdss, word_index, index_word)
from rdss.config import Limits
from rdss.errors import CapExceeded, FormatError
from rdss.graph import Graph, complete_graph, cycle_graph, empty_graph, path_graph, pentagon

import oracles

EXAMPLE_1 = Code.from_strings(["00000", "01100", "00011", "11011", "11101"])
EDGE = path_graph(2)


def test_word_index_is_lexicographic():
    words = list(itertools.product(range(3), repeat=3))
    assert [word_index(w, 3) for w in words] == list(range(27))
    assert all(index_word(i, 3, 3) == w for i, w in enumerate(words))


def test_confusable_examples():
    assert confusable(EDGE, (0, 0), (1, 0))
    assert not confusable(EDGE, (1, 0), (1, 0))
    assert not confusable(pentagon(), (0, 0, 0, 0, 0), (0, 1, 1, 0, 0))


def test_verify_examples():
    ver = verify_rdss(pentagon(), EXAMPLE_1)
    assert ver.ok
    for w in EXAMPLE_1:
        for i in range(5):
            assert ver.tables.recover(i, w) == w[i]
    bad = verify_rdss(pentagon(), Code.from_strings(["00000", "10000"]))
    assert not bad.ok and bad.witness.vertex == 0
    assert verify_rdss(pentagon(), Code.from_strings(["10110"])).ok


@pytest.mark.parametrize("seed", range(20))
def test_verify_matches_pairwise_definition(seed):
    rng = random.Random(seed)
    q = rng.choice([2, 3])
    n = rng.randint(1, 4)
    G = oracles.random_graph(rng, n, 0.5, directed=rng.random() < 0.5)
    words = list(itertools.product(range(q), repeat=n))
    C = Code(q, n, tuple(rng.sample(words, rng.randint(1, min(6, len(words))))))
    expected = not any(oracles.confusable(G, x, y) for x, y in itertools.combinations(C.words, 2))
    ver = verify_rdss(G, C)
    assert ver.ok == expected
    if not expected:
        w = ver.witness
        assert w.x[w.vertex] != w.y[w.vertex]
        assert all(w.x[j] == w.y[j] for j in range(n) if G.has_edge(w.vertex, j))


def test_min_distance_examples():
    assert min_distance(Code.from_strings(["00000", "11011"])) == 4
    assert min_distance(EXAMPLE_1) == 2
    assert min_distance(Code.from_strings(["000", "111"])) == 3
    with pytest.warns(UserWarning):
        assert min_distance(Code.from_strings(["010"])) == 4


def test_translate_examples():
    assert translate(EXAMPLE_1, (0,) * 5) == EXAMPLE_1
    shifted = translate(EXAMPLE_1, (1,) * 5)
    assert len(shifted) == 5 and verify_rdss(pentagon(), shifted).ok
    assert translate(Code.from_strings(["00", "11"]), (0, 1)) == Code.from_strings(["01", "10"])


def test_code_rejects_duplicates_and_bad_symbols():
    with pytest.raises(ValueError):
        Code.from_strings(["00", "00"])
    with pytest.raises(ValueError):
        Code(2, 2, ((0, 2),))


def test_capacity_examples():
    res = capacity_exact(pentagon(), 2)
    assert res.size == 5 and math.isclose(res.dimension, math.log2(5))
    assert verify_rdss(pentagon(), res.code).ok
    assert capacity_exact(complete_graph(5), 2).dimension == 4
    assert capacity_exact(cycle_graph(4), 2).dimension == 2
    assert capacity_exact(empty_graph(3), 2).size == 1


@pytest.mark.parametrize("seed", range(25))
def test_capacity_against_max_clique_oracle(seed):
    rng = random.Random(100 + seed)
    q = rng.choice([2, 2, 3])
    n = rng.randint(1, 4 if q == 2 else 3)
    G = oracles.random_graph(rng, n, rng.uniform(0.2, 0.9), directed=rng.random() < 0.5)
    res = capacity_exact(G, q)
    assert verify_rdss(G, res.code).ok
    assert res.size == oracles.capacity_size(G, q)


def test_q_set_examples():
    r = q_set_size(EDGE, 2)
    assert r.size == 2 and math.isclose(r.turan_bound, 2 - math.log2(3))
    for n in range(1, 6):
        assert q_set_size(complete_graph(n), 2).size == n
    r = q_set_size(empty_graph(1), 2)
    assert r.size == 1 and r.turan_bound == 0


@pytest.mark.parametrize("seed", range(15))
def test_q_set_and_confusion_degrees(seed):
    rng = random.Random(seed)
    q = rng.choice([2, 3])
    n = rng.randint(1, 4)
    G = oracles.random_graph(rng, n, 0.5, directed=rng.random() < 0.5)
    zero = (0,) * n
    brute = [w for w in itertools.product(range(q), repeat=n) if w != zero and oracles.confusable(G, zero, w)]
    assert sorted(q_set_words(G, q)) == sorted(brute)
    assert q_set_size(G, q).size == len(brute)
    assert set(confusion_degrees(G, q)) == {len(brute)}


def test_degree_distribution_examples():
    assert math.isclose(degree_distribution_bound(pentagon(), 2).raw, -math.log2(5 / 8))
    k5 = degree_distribution_bound(complete_graph(5), 2, turan=q_set_size(complete_graph(5), 2).turan_bound)
    assert math.isclose(k5.raw, -math.log2(5 / 32))
    assert k5.consistent is False
    lone = degree_distribution_bound(empty_graph(1), 2, turan=0.0)
    assert lone.raw == 1 and lone.consistent is False


@pytest.mark.parametrize("seed", range(15))
def test_corrected_degree_bound_below_turan(seed):
    rng = random.Random(seed)
    G = oracles.random_graph(rng, rng.randint(1, 7), rng.random())
    for q in (2, 3):
        turan = q_set_size(G, q).turan_bound
        db = degree_distribution_bound(G, q, turan)
        assert db.corrected <= turan + 1e-9
        assert db.union_bound >= q_set_size(G, q).size


def test_bounds_report_examples():
    rep = bounds_report(pentagon(), 2)
    assert rep.get("matching").value == 2 and rep.get("vertex_cover").value == 3
    assert rep.get("minrank").value == 2
    assert (rep.lower, rep.upper) == (2, 3)
    assert rep.lower <= math.log2(5) <= rep.upper
    assert (bounds_report(cycle_graph(4), 2).lower, bounds_report(cycle_graph(4), 2).upper) == (2, 2)
    tri = bounds_report(cycle_graph(3, directed=True), 2)
    assert tri.get("vertex_disjoint_cycles").value == 1 and tri.get("feedback_vertex_set").value == 1


def test_bounds_report_notes_omissions():
    rep = bounds_report(pentagon(), 4)
    assert any(name == "minrank" for name, _ in rep.omitted)
    rep = bounds_report(path_graph(6), 2, Limits(state_cap=16))
    assert any(name == "turan" for name, _ in rep.omitted)


@pytest.mark.parametrize("seed", range(20))
def test_bounds_bracket_capacity(seed):
    rng = random.Random(seed)
    directed = rng.random() < 0.5
    G = oracles.random_graph(rng, rng.randint(1, 6), rng.uniform(0.2, 0.8), directed)
    for q in (2, 3):
        if q**G.n > 243:
            continue
        cap = capacity_exact(G, q).dimension
        rep = bounds_report(G, q)
        assert rep.lower - 1e-9 <= cap <= rep.upper + 1e-9


def test_max_code_with_distance():
    C = max_code_with_distance(pentagon(), 2, 3)
    assert verify_rdss(pentagon(), C).ok
    assert len(C) == 1 or min_distance(C) >= 3
    assert len(max_code_with_distance(pentagon(), 2, 1)) == 5


def test_code_file_round_trip():
    assert parse_code(serialize_code(EXAMPLE_1)) == EXAMPLE_1
    ternary = Code.from_strings(["012", "120"], q=3)
    assert parse_code(serialize_code(ternary)) == ternary


@pytest.mark.parametrize("text", [
    "c rdss 2 2 1\n02",
    "c rdss 2 2 2\n01",
    "x rdss 2 2 1\n01",
    "c rdss 2 2 2\n01\n01",
    "c rdss 3 2 1\n01",
])
def test_code_file_errors(text):
    with pytest.raises(FormatError):
        parse_code(text)


def test_capacity_cap():
    with pytest.raises(CapExceeded):
        capacity_exact(path_graph(6), 2, Limits(state_cap=32))
