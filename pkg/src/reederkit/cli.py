"""Command-line front end.

    reederkit small C 4 --format dot
    reederkit reeder E 8
    reederkit mult E 7 w2+w7 w6
    reederkit verify all --jobs 4

JSON goes to stdout, diagnostics to stderr. Exit codes: 0 success,
1 verification mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import checks, paperdata
from .multiplicity import weight_multiplicity
from .orbits import OrbitError, orbit_dimension
from .reeder import all_pieces, enumerate_small
from .rootsystem import Coweight, LieType, RootSystemError, pairing_two_rho, parse_coweight

log = logging.getLogger("reederkit")

SCHEMA_SMALL = "reederkit.small/1"
SCHEMA_REEDER = "reederkit.reeder/1"
SCHEMA_VERIFY = checks.SCHEMA

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _lie_type(family: str, rank: str) -> LieType:
    try:
        return LieType(family.upper(), int(rank))
    except (ValueError, RootSystemError) as e:
        raise UsageError(str(e)) from None


def node_id(lam: Coweight) -> str:
    """Stable DOT identifier from the coordinates ('m' marks a minus sign)."""
    prefix = "c" if lam.basis == "classical" else "w"
    return prefix + "_" + "_".join(str(x).replace("-", "m") for x in lam.coords)


def _coweight_json(lam: Coweight) -> dict:
    return {
        "id": node_id(lam),
        "label": str(lam),
        "basis": lam.basis,
        "coords": list(lam.coords),
        "fundamental": list(lam.fund),
        "dim": pairing_two_rho(lam),
    }


def small_json(lt: LieType) -> dict:
    poset = enumerate_small(lt)
    nodes = []
    for i, lam in enumerate(poset.elements):
        d = _coweight_json(lam)
        d["dual"] = node_id(poset.elements[poset.involution[i]])
        nodes.append(d)
    edges = sorted([node_id(poset.elements[hi]), node_id(poset.elements[lo])] for hi, lo in poset.hasse_edges)
    return {"schema": SCHEMA_SMALL, "type": str(lt), "nodes": nodes, "edges": edges}


def small_dot(lt: LieType) -> str:
    data = small_json(lt)
    lines = [f"digraph small_{lt} {{", "  rankdir=TB;", "  node [shape=box];"]
    for n in data["nodes"]:
        lines.append(f'  {n["id"]} [label="{n["label"]}\\ndim {n["dim"]}"];')
    for hi, lo in data["edges"]:
        lines.append(f"  {hi} -> {lo};")
    pairs = sorted({tuple(sorted((n["id"], n["dual"]))) for n in data["nodes"] if n["id"] != n["dual"]})
    for a, b in pairs:
        lines.append(f"  {a} -> {b} [style=dashed, dir=none, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def reeder_json(lt: LieType) -> dict:
    store = None if lt.is_classical else paperdata.load_tables()
    pieces = []
    for p in all_pieces(lt, store):
        pieces.append({
            "sources": [_coweight_json(s) for s in p.sources],
            "orbits": [{"label": str(o), "dim": orbit_dimension(o)} for o in p.orbits],
            "case": p.case,
        })
    return {"schema": SCHEMA_REEDER, "type": str(lt), "pieces": pieces}


def _emit(obj):
    json.dump(obj, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def cmd_small(args) -> int:
    lt = _lie_type(args.family, args.rank)
    if args.format == "dot":
        sys.stdout.write(small_dot(lt))
    else:
        _emit(small_json(lt))
    return EXIT_OK


def cmd_reeder(args) -> int:
    lt = _lie_type(args.family, args.rank)
    _emit(reeder_json(lt))
    return EXIT_OK


def cmd_mult(args) -> int:
    lt = _lie_type(args.family, args.rank)
    try:
        lam = parse_coweight(args.lam, lt)
        mu = parse_coweight(args.mu, lt)
        value = weight_multiplicity(lam, mu)
    except (RootSystemError, ValueError) as e:
        raise UsageError(str(e)) from None
    print(value)
    return EXIT_OK


def cmd_verify(args) -> int:
    records = checks.run_suite(args.suite, jobs=args.jobs)
    summary = {s: sum(1 for r in records if r.status == s) for s in ("ok", "mismatch", "error")}
    for r in records:
        if r.status != "ok":
            log.error("%s: %s %s", r.check, r.status, json.dumps(r.outputs, sort_keys=True))
    if args.format == "text":
        for r in records:
            print(f"{r.status:8s} {r.check}")
        print(f"{summary['ok']} ok, {summary['mismatch']} mismatch, {summary['error']} error")
    else:
        _emit({"schema": SCHEMA_VERIFY, "suite": args.suite, "summary": summary,
               "records": [r.to_dict() for r in records]})
    return EXIT_OK if summary["ok"] == len(records) else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reederkit", description="Small coweights and Reeder pieces.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("small", help="poset of small coweights")
    s.add_argument("family")
    s.add_argument("rank")
    s.add_argument("--format", choices=("json", "dot"), default="json")
    s.set_defaults(func=cmd_small)

    r = sub.add_parser("reeder", help="Reeder pieces for every small coweight")
    r.add_argument("family")
    r.add_argument("rank")
    r.set_defaults(func=cmd_reeder)

    m = sub.add_parser("mult", help="weight multiplicity of mu in V_lam",
                       epilog="coweights: 'w2+w7', '3w1', '0', or classical tuples like '2,1,1,0'")
    m.add_argument("family")
    m.add_argument("rank")
    m.add_argument("lam")
    m.add_argument("mu")
    m.set_defaults(func=cmd_mult)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("suite", choices=("all",) + checks.SUITES)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--format", choices=("json", "text"), default="json")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, OrbitError, paperdata.TableError) as e:
        print(f"reederkit: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
