"""Verification suites behind ``reederkit verify``.

Each suite is a list of case ids. ``run_case`` maps one id to a
``ReportRecord``; cases are independent and picklable so they can be
sharded across processes.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from math import factorial

from . import exact, paperdata
from .matrixmodel import (
    LaurentMatrix,
    MatrixModelError,
    build_nilpotent,
    coweight_of_element,
    exp_nilpotent,
    iota,
    jordan_type,
    minnotsmall_element,
    one_plus,
    pi_dagger,
    x2_decomposition,
)
from .multiplicity import weight_multiplicity, zero_weight_dim
from .orbits import Partition, orbit_dimension, partitions
from .reeder import (
    all_pieces,
    build_embedding,
    classcalc_piece,
    classical_pieces,
    enumerate_small,
    reeder_piece_classical,
    restrict_orbit_members,
    sl_coweight,
    small_closed_form,
    small_nilpotent_orbits,
    stalk_check,
)
from .rootsystem import Coweight, LieType, minus_w0, pairing_two_rho

SCHEMA = "reederkit.report/1"
SUITES = ("tables", "stalk", "poset", "matrix")
EXCEPTIONAL = ("E6", "E7", "E8", "F4", "G2")
POSET_TYPES = ("A3", "C4", "B4", "D4") + EXCEPTIONAL
IOTA_CASES = 100
IOTA_BATCH = 10


@dataclass
class ReportRecord:
    command: str
    check: str
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    status: str = "ok"  # ok, mismatch or error
    origin: str | None = None
    expected: dict | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["expected"] is None:
            del d["expected"]
        return d


class _Mismatch(Exception):
    def __init__(self, what, computed, expected):
        super().__init__(what)
        self.what = what
        self.computed = computed
        self.expected = expected


def _expect(what, computed, expected):
    if computed != expected:
        raise _Mismatch(what, computed, expected)


def _fmt(x):
    if isinstance(x, (set, frozenset)):
        return sorted(_fmt(y) for y in x)
    if isinstance(x, (list, tuple)):
        return [_fmt(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _fmt(v) for k, v in x.items()}
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


# --- case lists ------------------------------------------------------------

def suite_cases(suite: str) -> list[str]:
    if suite == "all":
        return [c for s in SUITES for c in suite_cases(s)]
    if suite == "tables":
        out = ["tables:store"]
        for g in EXCEPTIONAL:
            out += [f"tables:dim_gr:{g}", f"tables:mu_column:{g}", f"tables:pieces:{g}"]
        out += [f"tables:mult:{g}" for g in ("E6", "E7", "E8")]
        out.append("tables:zero_weight")
        return out
    if suite == "stalk":
        store = paperdata.load_tables()
        out = []
        for g in ("E6", "E7", "E8"):
            lt = LieType.parse(g)
            for top in sorted(store.multiplicity_columns(lt)):
                top_s = ",".join(map(str, top))
                for orbit in store.stalk_orbits(lt):
                    out.append(f"stalk:row:{g}:{top_s}:{orbit}")
        return out
    if suite == "poset":
        out = [f"poset:small:{t}" for t in POSET_TYPES]
        for fam, lo in (("A", 1), ("B", 2), ("C", 2), ("D", 4)):
            out += [f"poset:classical:{fam}{n}" for n in range(lo, 9)]
        out += [f"poset:schur_weyl:A{n}" for n in range(1, 9)]
        return out
    if suite == "matrix":
        out = [f"matrix:a_orbits:{n}" for n in range(2, 7)]
        out += [f"matrix:forms:{t}" for t in ("B3", "B4", "C3", "C4", "D4")]
        out += [f"matrix:iota:{k}" for k in range(0, IOTA_CASES, IOTA_BATCH)]
        out.append("matrix:minnotsmall")
        return out
    raise ValueError(f"unknown suite {suite!r}")


def run_case(case: str) -> ReportRecord:
    suite, name, *rest = case.split(":", 2)
    arg = rest[0] if rest else ""
    fn = _CASES[(suite, name)]
    rec = ReportRecord(command=f"verify {suite}", check=case)
    try:
        fn(arg, rec)
    except _Mismatch as m:
        rec.status = "mismatch"
        rec.outputs[m.what] = _fmt(m.computed)
        rec.expected = {m.what: _fmt(m.expected)}
    except Exception as e:  # reported, never swallowed silently
        rec.status = "error"
        rec.outputs["error"] = f"{type(e).__name__}: {e}"
    return rec


# --- tables ----------------------------------------------------------------

def _tables_store(_arg, rec):
    store = paperdata.load_tables(verify=False)
    passed = paperdata.verify_store(store)
    rec.origin = "embedded tables"
    rec.outputs["checks_passed"] = len(passed)


def _origin(lt: LieType) -> str:
    return "FGcalc" if lt.family in "FG" else "Ecalc"


def _tables_dim_gr(arg, rec):
    lt = LieType.parse(arg)
    store = paperdata.load_tables()
    rec.origin = _origin(lt)
    expected = {r.lam.fund: r.lam_dim for r in store.records(lt)}
    computed = {lam.fund: pairing_two_rho(lam) for lam in enumerate_small(lt).elements}
    computed_rows = {k: v for k, v in computed.items() if v}
    expected_rows = {k: v for k, v in expected.items() if v}
    rec.outputs["dims"] = sorted(computed.values(), reverse=True)
    _expect("dim_gr", computed_rows, expected_rows)


def _tables_mu_column(arg, rec):
    lt = LieType.parse(arg)
    store = paperdata.load_tables()
    rec.origin = _origin(lt)
    emb = build_embedding(lt)
    expected: dict = {}
    for r in store.records(lt):
        expected.setdefault(r.lam.fund, set()).add(r.mu.fund)
    computed = {}
    for lam_f in expected:
        lam = next(r.lam for r in store.records(lt) if r.lam.fund == lam_f)
        if emb.mode == "subgroup":
            computed[lam_f] = {mu.fund for mu in restrict_orbit_members(emb, lam)}
        else:
            computed[lam_f] = {emb.lift(lam).fund}
    rec.outputs["rows"] = sum(len(v) for v in computed.values())
    _expect("mu_column", computed, expected)


def _tables_pieces(arg, rec):
    lt = LieType.parse(arg)
    store = paperdata.load_tables()
    rec.origin = "excpo"
    data = store.posets[lt]
    computed = {}
    for piece in all_pieces(lt, store):
        for s in piece.sources:
            computed[s.fund] = tuple(piece.orbits)
    expected = {k: tuple(v) for k, v in data.pieces.items()}
    doubles = sum(1 for p in all_pieces(lt, store) if p.case == "double")
    rec.outputs["pieces"] = len(all_pieces(lt, store))
    rec.outputs["double"] = doubles
    _expect("pieces", {k: set(v) for k, v in computed.items()}, {k: set(v) for k, v in expected.items()})
    for piece in all_pieces(lt, store):
        _expect(f"dim open orbit of {piece.sources[0]}",
                orbit_dimension(piece.open_orbit), pairing_two_rho(piece.sources[0]))


def _tables_mult(arg, rec):
    lt = LieType.parse(arg)
    store = paperdata.load_tables()
    rec.origin = "Estalk"
    cols = store.multiplicity_columns(lt)
    computed = {}
    for lam_f, col in cols.items():
        lam = Coweight(lam_f, "fundamental", lt)
        computed[lam_f] = {mu: weight_multiplicity(lam, Coweight(mu, "fundamental", lt)) for mu in col}
    rec.outputs["columns"] = {str(Coweight(k, "fundamental", lt)): sorted(v.values()) for k, v in computed.items()}
    _expect("multiplicities", computed, cols)


def _tables_zero_weight(_arg, rec):
    store = paperdata.load_tables()
    rec.origin = "zero weight spaces"
    computed = {f"{d.lam.lie_type}:{d.lam}": zero_weight_dim(d.lam) for d in store.zero_weight}
    expected = {f"{d.lam.lie_type}:{d.lam}": d.dimension for d in store.zero_weight}
    rec.outputs["dims"] = computed
    _expect("zero_weight", computed, expected)


# --- stalk -----------------------------------------------------------------

def _stalk(arg, rec):
    g, top, orbit = arg.split(":", 2)
    lt = LieType.parse(g)
    lam = Coweight(tuple(int(x) for x in top.split(",")), "fundamental", lt)
    store = paperdata.load_tables()
    rec.origin = "Estalk"
    from .orbits import parse_orbit

    c = stalk_check(lt, lam, parse_orbit(lt, orbit), store)
    rec.inputs = {"type": g, "lam": str(lam), "orbit": orbit}
    rec.outputs = {"lhs": c.lhs, "rhs": {str(k): v for k, v in c.rhs_by_h_orbit.items()}}
    _expect("rhs", set(c.rhs_by_h_orbit.values()), {c.lhs})


# --- poset -----------------------------------------------------------------

def _poset_small(arg, rec):
    lt = LieType.parse(arg)
    store = paperdata.load_tables()
    rec.origin = "classpo" if lt.is_classical else "excpo"
    data = store.posets[lt]
    poset = enumerate_small(lt)
    funds = [e.fund for e in poset.elements]
    rec.outputs["nodes"] = len(funds)
    rec.outputs["edges"] = len(poset.hasse_edges)
    _expect("nodes", set(funds), set(data.pieces))
    edges = {(funds[hi], funds[lo]) for hi, lo in poset.hasse_edges}
    _expect("edges", edges, set(data.lam_edges))
    if lt.is_classical:
        computed = {}
        for lam in poset.elements:
            computed[lam.fund] = set(reeder_piece_classical(lt, lam).orbits)
        _expect("pieces", computed, {k: set(v) for k, v in data.pieces.items()})


def _poset_classical(arg, rec):
    lt = LieType.parse(arg)
    rec.origin = "classcalc"
    poset = enumerate_small(lt)
    _expect("closed form", {c.fund for c in small_closed_form(lt)}, {e.fund for e in poset.elements})
    pieces = classical_pieces(lt)
    covered = []
    for piece in pieces:
        lam = piece.sources[0]
        for s in piece.sources:
            _expect(f"engine vs closed form at {s}", classcalc_piece(lt, s), reeder_piece_classical(lt, s))
        self_dual = minus_w0(lam).fund == lam.fund
        _expect(f"double iff self-dual at {lam}", piece.case == "double", self_dual and len(piece.orbits) == 2)
        _expect(f"dim open orbit at {lam}", orbit_dimension(piece.open_orbit), pairing_two_rho(lam))
        covered.extend(piece.orbits)
    _expect("orbits disjoint", len(covered), len(set(covered)))
    _expect("orbit list", set(covered), set(small_nilpotent_orbits(lt)))
    rec.outputs = {"small": len(poset), "pieces": len(pieces),
                   "double": sum(1 for p in pieces if p.case == "double")}


def hook_length_dimension(p: Partition) -> int:
    parts = p.parts
    conj = p.dual().parts
    hooks = 1
    for i, row in enumerate(parts):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    return factorial(p.total) // hooks


def _poset_schur_weyl(arg, rec):
    lt = LieType.parse(arg)
    rec.origin = "Schur-Weyl"
    computed, expected = {}, {}
    for lam in enumerate_small(lt).elements:
        a = lam.to("classical").coords
        if a[-1] < -1:
            continue
        key = str(lam)
        computed[key] = zero_weight_dim(lam)
        expected[key] = hook_length_dimension(Partition(tuple(x + 1 for x in a)))
    rec.outputs["cases"] = len(computed)
    _expect("zero weight vs hook length", computed, expected)


# --- matrix ----------------------------------------------------------------

def _matrix_a_orbits(arg, rec):
    n = int(arg)
    lt = LieType("A", n - 1)
    count = 0
    for parts in partitions(n):
        b = Partition(parts)
        tau1 = tuple(x - 1 for x in list(parts) + [0] * (n - len(parts)))
        tau2 = tuple(1 - x for x in reversed(list(parts) + [0] * (n - len(parts))))
        for seed in range(5):
            x, _ = build_nilpotent(lt, b, seed)
            _expect(f"jordan type {b} seed {seed}", jordan_type(x), b)
            g = one_plus(x)
            _expect(f"1+x/t for {b}", coweight_of_element(g).coords, tau1)
            _expect(f"(1-x/t)^-1 for {b}", coweight_of_element(iota(g)).coords, tau2)
            count += 1
    rec.outputs["cases"] = count


def _locate(lt: LieType, g: LaurentMatrix):
    """Small coweights of lt whose natural-representation coweight is that of g."""
    target = coweight_of_element(g).coords
    return [lam for lam in enumerate_small(lt).elements if sl_coweight(lam) == target]


def _matrix_forms(arg, rec):
    lt = LieType.parse(arg)
    counts = {"x2_zero": 0, "x2_rank1": 0, "x2_rank2": 0}
    for orbit in small_nilpotent_orbits(lt):
        parts = orbit.partition.parts
        for seed in range(3):
            x, form = build_nilpotent(lt, orbit, seed)
            _expect(f"jordan type {orbit}", jordan_type(x), orbit.partition)
            x2 = exact.matmul(x, x)
            r = exact.rank(x2)
            n = len(x)
            if r == 0:
                g = one_plus(x)
                _expect(f"iota fixes 1+x/t for {orbit}", iota(g), g)
                counts["x2_zero"] += 1
            elif r == 1:
                g = exp_nilpotent(x)
                _expect(f"iota fixes exp(x/t) for {orbit}", iota(g), g)
                twos = parts.count(2)
                big_n = lt.matrix_size
                shadow = (2,) + (1,) * twos + (0,) * (big_n - 2 * twos - 2) + (-1,) * twos + (-2,)
                _expect(f"coweight of exp(x/t) for {orbit}", coweight_of_element(g).coords, shadow)
                counts["x2_rank1"] += 1
            else:
                y1, y2 = x2_decomposition(x, form)
                _expect("y1 + y2", exact.add(y1, y2), x2)
                _expect("ranks", (exact.rank(y1), exact.rank(y2)), (1, 1))
                _expect("adjoint", form.adjoint(y1), y2)
                zero = exact.zeros(n)
                for name, m in (("y1y2", exact.matmul(y1, y2)), ("y2y1", exact.matmul(y2, y1)),
                                ("xy1", exact.matmul(x, y1)), ("y1x", exact.matmul(y1, x)),
                                ("xy2", exact.matmul(x, y2)), ("y2x", exact.matmul(y2, x))):
                    _expect(name, m, zero)
                one = exact.identity(n)
                g = LaurentMatrix.from_terms(n, {0: one, 1: x, 2: y1})
                swapped = LaurentMatrix.from_terms(n, {0: one, 1: x, 2: y2})
                _expect(f"iota swaps for {orbit}", iota(g), swapped)
                _expect(f"iota swaps back for {orbit}", iota(swapped), g)
                counts["x2_rank2"] += 1
            _expect(f"form identity for {orbit}", form.preserves(g), True)
            # the orbit of x lies in the Reeder piece of the cell containing g
            hits = _locate(lt, g)
            found = any(orbit.partition in {o.partition for o in reeder_piece_classical(lt, lam).orbits}
                        for lam in hits)
            _expect(f"piece containing {orbit}", found, True)
    rec.outputs = counts


def _random_a_element(rng: random.Random) -> LaurentMatrix:
    n = rng.randint(2, 5)
    lt = LieType("A", n - 1)
    g = LaurentMatrix.identity(n)
    for _ in range(rng.randint(1, 2)):
        parts = rng.choice(list(partitions(n)))
        x, _ = build_nilpotent(lt, Partition(parts), rng.randint(0, 10 ** 6))
        g = g * one_plus(x)
    return g


def _matrix_iota(arg, rec):
    start = int(arg)
    for seed in range(start, min(start + IOTA_BATCH, IOTA_CASES)):
        rng = random.Random(seed)
        g = _random_a_element(rng)
        h = iota(g)
        _expect(f"pi_dagger commutes with iota, seed {seed}", pi_dagger(h), pi_dagger(g))
        lam = coweight_of_element(g)
        _expect(f"iota dualizes the cell, seed {seed}", coweight_of_element(h).coords, minus_w0(lam).coords)
        _expect(f"iota is an involution, seed {seed}", iota(h), g)
    rec.outputs["seeds"] = [start, min(start + IOTA_BATCH, IOTA_CASES) - 1]


def _matrix_minnotsmall(_arg, rec):
    g = minnotsmall_element()
    lam = coweight_of_element(g)
    _expect("coweight", lam.fund, (4,))
    p = pi_dagger(g)
    _expect("pi_dagger", p, exact.to_fraction_matrix([[1, 0], [1, -1]]))
    nilpotent = True
    try:
        jordan_type(p)
    except MatrixModelError:
        nilpotent = False
    _expect("pi_dagger nilpotent", nilpotent, False)
    rec.outputs = {"coweight": str(lam), "pi_dagger": _fmt(p)}


_CASES = {
    ("tables", "store"): _tables_store,
    ("tables", "dim_gr"): _tables_dim_gr,
    ("tables", "mu_column"): _tables_mu_column,
    ("tables", "pieces"): _tables_pieces,
    ("tables", "mult"): _tables_mult,
    ("tables", "zero_weight"): _tables_zero_weight,
    ("stalk", "row"): _stalk,
    ("poset", "small"): _poset_small,
    ("poset", "classical"): _poset_classical,
    ("poset", "schur_weyl"): _poset_schur_weyl,
    ("matrix", "a_orbits"): _matrix_a_orbits,
    ("matrix", "forms"): _matrix_forms,
    ("matrix", "iota"): _matrix_iota,
    ("matrix", "minnotsmall"): _matrix_minnotsmall,
}


def run_suite(suite: str, jobs: int = 1) -> list[ReportRecord]:
    cases = suite_cases(suite)
    if jobs > 1 and len(cases) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(run_case, cases))
    else:
        records = [run_case(c) for c in cases]
    return sorted(records, key=lambda r: r.check)
