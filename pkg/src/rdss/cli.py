"""Command-line front end. Every command prints one JSON report on stdout."""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
import warnings
from pathlib import Path

from . import __version__
from . import combinatorics as comb
from . import config
from . import constructions as cons
from . import duality, linear, resilience
from .code import (Code, bounds_report, capacity_exact, min_distance, parse_code, serialize_code, verify_rdss,
                   word_str)
from .errors import CapExceeded, FormatError, NotApplicable, RDSSError
from .graph import Graph, parse_graph

SCHEMA_VERSION = 1

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_PARTIAL, EXIT_CAP, EXIT_USAGE = range(6)


class UsageError(RDSSError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Outcome:
    """Result payload plus the exit status it implies."""

    def __init__(self, result: dict, status: int = EXIT_OK, notices=()):
        self.result = result
        self.status = status
        self.notices = list(notices)


def _read_graph(path: str) -> Graph:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return parse_graph(Path(path).read_text())


def _read_code(path: str) -> Code:
    return parse_code(Path(path).read_text())


def _words(C: Code) -> list[str]:
    return [word_str(w, C.q) for w in C.words]


def _write(args, name: str, text: str) -> str | None:
    if not args.out:
        return None
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / name
    path.write_text(text)
    return str(path)


def _code_summary(C: Code) -> dict:
    return {"q": C.q, "n": C.n, "size": len(C), "dimension": C.dimension, "dimension_bits": C.dimension_bits}


def _emit_code(args, G: Graph, C: Code, name: str) -> dict:
    """Write ``C`` and confirm that the written file parses back to a verifying code."""
    info = _code_summary(C)
    path = _write(args, name, serialize_code(C))
    if path:
        again = _read_code(path)
        info["file"] = path
        info["reverified"] = again == C and verify_rdss(G, again).ok
    return info


# --- commands ------------------------------------------------------------------------

def cmd_bounds(args, G: Graph, limits) -> _Outcome:
    rep = bounds_report(G, args.q, limits)
    status = EXIT_PARTIAL if rep.omitted else EXIT_OK
    return _Outcome(rep.to_dict(), status)


def cmd_capacity(args, G: Graph, limits) -> _Outcome:
    if not args.exact:
        rep = bounds_report(G, args.q, limits)
        return _Outcome({"exact": False, "interval": [rep.lower, rep.upper], "bounds": rep.to_dict()},
                        EXIT_PARTIAL if rep.omitted else EXIT_OK)
    try:
        res = capacity_exact(G, args.q, limits)
    except CapExceeded as exc:
        rep = bounds_report(G, args.q, limits)
        return _Outcome({"exact": False, "interval": [rep.lower, rep.upper], "bounds": rep.to_dict()},
                        EXIT_CAP, [f"exact search skipped: {exc}; bounds reported instead"])
    info = _emit_code(args, G, res.code, "capacity.code")
    info["exact"] = True
    info["words"] = _words(res.code)
    return _Outcome(info)


def cmd_construct(args, G: Graph, limits) -> _Outcome:
    method = args.method
    if method in ("matching", "cliques") and G.directed:
        raise UsageError(f"method {method!r} needs an undirected graph")
    if method in ("cycles", "lp") and not G.directed:
        raise UsageError(f"method {method!r} needs a directed graph")
    if method == "lp":
        P = cons.fractional_cycle_packing(G, limits)
        V = cons.vector_code_from_packing(G, P, args.q)
        if not V.check_repair(G, trials=args.trials, seed=args.seed):
            return _Outcome({"method": method, "repair_ok": False}, EXIT_VERIFY)
        info = {
            "method": method,
            "K": str(P.K),
            "p": P.p,
            "message_length": V.message_length,
            "max_storage": max((V.storage(v) for v in range(G.n)), default=0),
            "cycles": [{"cycle": list(c), "weight": str(w), "multiplicity": m}
                       for c, w, m in zip(P.cycles, P.weights, P.multiplicities)],
            "repair_ok": True,
        }
        path = _write(args, "vector.code", cons.serialize_vector_code(V))
        if path:
            again = cons.parse_vector_code(Path(path).read_text())
            info["file"] = path
            info["reverified"] = again == V and again.check_repair(G, trials=args.trials, seed=args.seed)
        return _Outcome(info)
    if method == "matching":
        C = cons.matching_code(G, args.q, limits)
    elif method == "cliques":
        C = cons.clique_partition_code(G, args.q, "exact" if G.n <= limits.subset_cap else "greedy", limits)
    else:
        C = cons.cycle_replication_code(G, args.q, limits)
    ver = verify_rdss(G, C)
    if not ver.ok:
        return _Outcome({"method": method, "verified": False}, EXIT_VERIFY)
    info = _emit_code(args, G, C, f"{method}.code")
    info.update(method=method, verified=True)
    return _Outcome(info)


def _witness(w) -> dict | None:
    if w is None:
        return None
    out = {k: v for k, v in vars(w).items()}
    for key in ("x", "y"):
        if key in out:
            out[key] = "".join(map(str, out[key])) if all(s < 10 for s in out[key]) else list(out[key])
    if "lost" in out:
        out["lost"] = list(out["lost"])
    return out


def cmd_verify(args, G: Graph, limits) -> _Outcome:
    C = _read_code(args.code)
    if C.n != G.n:
        raise UsageError(f"code length {C.n} does not match graph order {G.n}")
    info = _code_summary(C)
    status = EXIT_OK
    if args.coop_t:
        if args.coop_t not in (1, 2):
            raise UsageError("--coop-t must be 1 or 2")
        ver = resilience.verify_cooperative(G, C, args.coop_t)
        info.update(check="cooperative", t=args.coop_t, ok=ver.ok, witness=_witness(ver.witness))
    else:
        ver = verify_rdss(G, C)
        info.update(check="rdss", ok=ver.ok, witness=_witness(ver.witness))
    if not ver.ok:
        status = EXIT_VERIFY
    if args.distance is not None:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            d = min_distance(C)
        dist = {"required": args.distance, "measured": d, "ok": d >= args.distance}
        if not dist["ok"]:
            status = EXIT_VERIFY
        k = math.ceil(C.dimension - 1e-12)
        if len(C) > 1 and ver.ok:
            dist["distance_upper_bound"] = resilience.distance_upper_bound(
                resilience.DistanceBoundQuery(G, k, d, C.q), limits)
            dist["alpha_bound"] = resilience.alpha_bound(G, d, C.q, limits)
            dist["consistent"] = d <= dist["distance_upper_bound"] and k <= dist["alpha_bound"]
        info["distance"] = dist
    return _Outcome(info, status)


def cmd_minrank(args, G: Graph, limits) -> _Outcome:
    res = linear.minrank(G, args.q, limits)
    info = {"q": args.q, "minrank": res.rank, "witness": [list(r) for r in res.witness]}
    if args.out and G.n:
        C = linear.linear_rdss_from_fit(G, res.witness, args.q, limits)
        info["code"] = _emit_code(args, G, C, "minrank.code")
    return _Outcome(info)


def cmd_dualize(args, G: Graph, limits) -> _Outcome:
    C = _read_code(args.code)
    if C.n != G.n:
        raise UsageError(f"code length {C.n} does not match graph order {G.n}")
    ver = verify_rdss(G, C)
    if not ver.ok:
        return _Outcome({"ok": False, "witness": _witness(ver.witness)}, EXIT_VERIFY,
                        ["input code is not an RDSS code for this graph"])
    I = duality.index_from_rdss(G, C, limits=limits)
    fam = I.family
    info = {
        "generators": [word_str(g, C.q) for g in fam.generators],
        "ell": fam.ell,
        "generator_bound": duality.generator_bound(C.q, C.n, len(C)),
        "span_size": len(fam.distinct_span()),
        "index_length": I.length,
        "index_symbols": I.symbols,
        "length_bound": duality.index_length_bound(C.q, C.n, len(C)),
        "uncovered_trajectory": [str(x) for x in fam.trajectory],
        "round_trip": duality.round_trip(G, I, limits),
    }
    if linear.code_basis(C) is not None:
        S = linear.syndrome_index_code(G, C)
        info["syndrome"] = {"length": S.symbols, "round_trip": duality.round_trip(G, S, limits)}
    path = _write(args, "covering.txt", duality.serialize_covering(fam))
    if path:
        info["file"] = path
        info["reread_ok"] = duality.parse_covering(Path(path).read_text(), C.q).generators == fam.generators
    return _Outcome(info, EXIT_OK if info["round_trip"] else EXIT_VERIFY)


COMMANDS = {
    "bounds": cmd_bounds,
    "capacity": cmd_capacity,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "minrank": cmd_minrank,
    "dualize": cmd_dualize,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=2, help="alphabet size (default 2)")
    common.add_argument("--state-cap", type=int, help="max q^n strings for exhaustive work")
    common.add_argument("--subset-cap", type=int, help="max vertices for exact subset searches")
    common.add_argument("--cycle-cap", type=int, help="max simple cycles enumerated")
    common.add_argument("--threads", type=int, default=1, help="worker cap (searches are single-threaded)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--out", help="directory for emitted artifacts")

    parser = _Parser(prog="rdss", description="Bounds, constructions and checks for recoverable storage codes.")
    parser.add_argument("--version", action="version", version=f"rdss {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bounds", parents=[common], help="all applicable bounds on the capacity")
    p.add_argument("graph")
    p = sub.add_parser("capacity", parents=[common], help="storage capacity (exact with --exact)")
    p.add_argument("graph")
    p.add_argument("--exact", action="store_true")
    p = sub.add_parser("construct", parents=[common], help="build a code by a named method")
    p.add_argument("graph")
    p.add_argument("--method", choices=["matching", "cycles", "cliques", "lp"], required=True)
    p.add_argument("--trials", type=int, default=1000, help="random messages for the vector-code repair check")
    p = sub.add_parser("verify", parents=[common], help="check a code against a graph")
    p.add_argument("graph")
    p.add_argument("code")
    p.add_argument("--coop-t", type=int, help="check cooperative repair of t adjacent failures (1 or 2)")
    p.add_argument("--distance", type=int, help="also require this minimum distance")
    p = sub.add_parser("minrank", parents=[common], help="minrank over a prime field")
    p.add_argument("graph")
    p = sub.add_parser("dualize", parents=[common], help="turn a code into an index code by greedy covering")
    p.add_argument("graph")
    p.add_argument("code")
    return parser


def _limits(args) -> config.Limits:
    return config.from_env().override(state_cap=args.state_cap, subset_cap=args.subset_cap,
                                      cycle_cap=args.cycle_cap)


def run(argv: list[str] | None = None) -> tuple[int, dict]:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    report = {
        "schema_version": SCHEMA_VERSION,
        "tool": "rdss",
        "version": __version__,
        "command": ["rdss"] + argv,
        "seed": args.seed,
        "threads": args.threads,
    }
    start = time.perf_counter()
    try:
        limits = _limits(args)
        G = _read_graph(args.graph)
        report["graph"] = G.summary()
        outcome = COMMANDS[args.command](args, G, limits)
    except FormatError as exc:
        outcome = _Outcome({"error": str(exc)}, EXIT_PARSE)
    except (UsageError, NotApplicable, ValueError) as exc:
        outcome = _Outcome({"error": str(exc)}, EXIT_USAGE)
    except CapExceeded as exc:
        outcome = _Outcome({"error": str(exc)}, EXIT_CAP)
    except OSError as exc:
        outcome = _Outcome({"error": str(exc)}, EXIT_PARSE)
    report["result"] = outcome.result
    report["notices"] = outcome.notices
    report["status"] = outcome.status
    report["timing_s"] = round(time.perf_counter() - start, 6)
    return outcome.status, report


def main(argv: list[str] | None = None) -> int:
    status, report = run(argv)
    json.dump(report, sys.stdout, indent=2, sort_keys=True, default=str)
    sys.stdout.write("\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
