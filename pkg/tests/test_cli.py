import json
import math
import subprocess
import sys

import pytest

from rdss import cli
from rdss.code import Code, parse_code, serialize_code, verify_rdss
from rdss.graph import Graph, complete_graph, cycle_graph, empty_graph, path_graph, pentagon, serialize_graph

DOUBLE_TRIANGLE = Graph.from_edges(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)], directed=True)
EXAMPLE = Code.from_strings(["00000", "01100", "00011", "11011", "11101"])


@pytest.fixture
def files(tmp_path):
    def put(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    graphs = {
        "pentagon": pentagon(), "c4": cycle_graph(4), "tri": cycle_graph(3, directed=True),
        "k5": complete_graph(5), "k4": complete_graph(4), "empty3": empty_graph(3), "p3": path_graph(3),
        "dtri": DOUBLE_TRIANGLE,
    }
    out = {k: put(f"{k}.txt", serialize_graph(G)) for k, G in graphs.items()}
    out["example"] = put("example.code", serialize_code(EXAMPLE))
    out["bad"] = put("bad.code", serialize_code(Code.from_strings(["00000", "10000"])))
    out["rep3"] = put("rep3.code", serialize_code(Code.from_strings(["000", "111"])))
    out["garbage"] = put("garbage.txt", "p rdss 3 1 u\ne 0 7\n")
    out["dir"] = str(tmp_path / "out")
    return out


def test_bounds(files):
    status, rep = cli.run(["bounds", files["pentagon"]])
    assert status == 0 and rep["result"]["interval"] == [2, 3]
    assert cli.run(["bounds", files["c4"]])[1]["result"]["interval"] == [2, 2]
    assert cli.run(["bounds", files["tri"]])[1]["result"]["interval"] == [1, 1]


def test_capacity(files):
    status, rep = cli.run(["capacity", files["pentagon"], "--exact", "--out", files["dir"]])
    res = rep["result"]
    assert status == 0 and res["size"] == 5 and res["dimension"] == pytest.approx(math.log2(5))
    assert res["reverified"]
    assert cli.run(["capacity", files["k5"], "--exact"])[1]["result"]["dimension"] == 4
    assert cli.run(["capacity", files["empty3"], "--exact"])[1]["result"]["dimension"] == 0


def test_capacity_cap_falls_back_to_bounds(files):
    status, rep = cli.run(["capacity", files["pentagon"], "--exact", "--state-cap", "8"])
    assert status == cli.EXIT_CAP and rep["result"]["interval"] == [2, 3] and rep["notices"]


def test_construct(files):
    status, rep = cli.run(["construct", files["pentagon"], "--method", "matching", "--out", files["dir"]])
    assert status == 0 and rep["result"]["dimension"] == 2 and rep["result"]["reverified"]
    assert cli.run(["construct", files["tri"], "--method", "cycles"])[1]["result"]["dimension"] == 1
    status, rep = cli.run(["construct", files["dtri"], "--method", "lp", "--out", files["dir"]])
    res = rep["result"]
    assert status == 0 and res["K"] == "1" and res["p"] == 2
    assert res["message_length"] == 2 and res["max_storage"] == 2 and res["reverified"]
    assert cli.run(["construct", files["pentagon"], "--method", "lp"])[0] == cli.EXIT_USAGE
    assert cli.run(["construct", files["tri"], "--method", "matching"])[0] == cli.EXIT_USAGE


def test_verify(files):
    status, rep = cli.run(["verify", files["pentagon"], files["example"]])
    assert status == 0 and rep["result"]["ok"]
    status, rep = cli.run(["verify", files["pentagon"], files["bad"]])
    assert status == cli.EXIT_VERIFY and rep["result"]["witness"]["vertex"] == 0
    status, rep = cli.run(["verify", files["p3"], files["rep3"], "--coop-t", "2"])
    assert status == 0 and rep["result"]["ok"]
    assert cli.run(["verify", files["p3"], files["rep3"], "--coop-t", "3"])[0] == cli.EXIT_USAGE
    assert cli.run(["verify", files["pentagon"], files["rep3"]])[0] == cli.EXIT_USAGE


def test_verify_distance(files):
    status, rep = cli.run(["verify", files["p3"], files["rep3"], "--distance", "3"])
    dist = rep["result"]["distance"]
    assert status == 0 and dist["measured"] == 3 and dist["consistent"]
    assert cli.run(["verify", files["p3"], files["rep3"], "--distance", "4"])[0] == cli.EXIT_VERIFY


def test_minrank(files):
    status, rep = cli.run(["minrank", files["pentagon"], "--out", files["dir"]])
    assert status == 0 and rep["result"]["minrank"] == 3 and rep["result"]["code"]["size"] == 4
    assert cli.run(["minrank", files["k4"]])[1]["result"]["minrank"] == 1
    assert cli.run(["minrank", files["empty3"]])[1]["result"]["minrank"] == 3
    assert cli.run(["minrank", files["pentagon"], "--q", "4"])[0] == cli.EXIT_USAGE


def test_dualize(files):
    status, rep = cli.run(["dualize", files["pentagon"], files["example"], "--out", files["dir"]])
    res = rep["result"]
    assert status == 0 and res["round_trip"] and res["reread_ok"]
    assert res["ell"] <= res["generator_bound"] == 5
    assert res["index_length"] <= res["length_bound"] + 1e-12
    assert cli.run(["dualize", files["pentagon"], files["bad"]])[0] == cli.EXIT_VERIFY


def test_dualize_linear_cross_check(files, tmp_path):
    _, rep = cli.run(["minrank", files["pentagon"], "--out", files["dir"]])
    code_file = rep["result"]["code"]["file"]
    status, rep = cli.run(["dualize", files["pentagon"], code_file])
    assert status == 0 and rep["result"]["syndrome"] == {"length": 3, "round_trip": True}


def test_emitted_codes_reverify(files):
    cli.run(["construct", files["pentagon"], "--method", "cliques", "--out", files["dir"]])
    from pathlib import Path

    C = parse_code((Path(files["dir"]) / "cliques.code").read_text())
    assert verify_rdss(pentagon(), C).ok


def test_exit_codes(files):
    assert cli.run(["bounds", files["garbage"]])[0] == cli.EXIT_PARSE
    assert cli.run(["bounds", files["dir"] + "/missing.txt"])[0] == cli.EXIT_PARSE
    with pytest.raises(SystemExit) as exc:
        cli.run(["frobnicate"])
    assert exc.value.code == cli.EXIT_USAGE


def test_report_schema_and_determinism(files):
    argv = ["construct", files["dtri"], "--method", "lp", "--seed", "7"]
    a, b = cli.run(argv)[1], cli.run(argv)[1]
    for key in ("schema_version", "tool", "version", "command", "seed", "graph", "result", "status"):
        assert key in a
    a.pop("timing_s"), b.pop("timing_s")
    assert a == b and a["seed"] == 7


def test_main_prints_json(files):
    proc = subprocess.run([sys.executable, "-m", "rdss", "minrank", files["pentagon"]], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["minrank"] == 3
