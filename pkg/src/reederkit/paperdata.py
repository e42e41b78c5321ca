"""Embedded reference tables and their load-time consistency checks.

The tables live in ``data/tables.txt`` (see the header of that file for the
format). ``REEDERKIT_DATA`` may point at a replacement file.

Two entry points:

* ``catalog()`` parses the file without cross-checks. The orbit module uses
  it for exceptional orbit dimensions and closure data.
* ``load_tables()`` parses and then verifies every record against values
  recomputed from scratch (dimensions, multiplicities, zero weight spaces),
  failing loudly on the first mismatch.
"""

from __future__ import annotations

import os
import re
import threading
from dataclasses import dataclass, field
from pathlib import Path

from .orbits import OrbitLabel, canonical_bala_carter, parse_orbit
from .rootsystem import Coweight, LieType, parse_coweight

SECTIONS = ("E6CALC", "E7CALC", "E8CALC", "FGCALC", "ESTALK", "EXCZW", "EXCPO", "CLASSPO")
SHEAVES = ("IC", "IC_sigma")

# H for each exceptional G: a classical subgroup for E, the unfolded group for F and G
HOST_TYPE = {
    LieType("E", 6): LieType("A", 5),
    LieType("E", 7): LieType("D", 6),
    LieType("E", 8): LieType("D", 8),
    LieType("F", 4): LieType("E", 6),
    LieType("G", 2): LieType("D", 4),
}

DEFAULT_PATH = Path(__file__).with_name("data") / "tables.txt"


class TableError(ValueError):
    """Parse failure or invariant violation in the embedded tables."""


class MissingRecordError(KeyError):
    pass


@dataclass(frozen=True)
class StalkPolynomial:
    g_type: LieType
    orbit: OrbitLabel
    sheaf: str
    terms: tuple  # (exponent, coefficient), exponents strictly decreasing

    def at_one(self) -> int:
        return sum(c for _, c in self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in self.terms:
            coef = "" if c == 1 else str(c)
            out.append(f"{coef}q^{e}" if e else str(c))
        return "+".join(out)


@dataclass(frozen=True)
class ZeroWeightDecomposition:
    lam: Coweight
    irreps: tuple  # (label, dimension)

    @property
    def dimension(self) -> int:
        return sum(d for _, d in self.irreps)


@dataclass(frozen=True)
class CalcRecord:
    """One row of an orbit calculation table (restriction or folding)."""

    g_type: LieType
    lam: Coweight
    lam_dim: int
    mu: Coweight
    h_orbit: OrbitLabel
    g_orbit: OrbitLabel
    g_dim: int
    line: int


@dataclass(frozen=True)
class SaturationRecord:
    g_type: LieType
    h_orbit: OrbitLabel
    g_orbit: OrbitLabel
    g_dim: int


@dataclass
class PosetData:
    """Drawn poset data for one type: pieces, coweight edges, orbit edges and dims."""

    lie_type: LieType
    pieces: dict = field(default_factory=dict)  # fund tuple -> tuple of OrbitLabel
    lam_edges: list = field(default_factory=list)  # (hi fund, lo fund)
    orbit_edges: list = field(default_factory=list)  # (hi label, lo label)
    orbit_dims: dict = field(default_factory=dict)  # label -> dim (exceptional only)


@dataclass
class DataStore:
    path: str
    calc: dict = field(default_factory=dict)  # g_type -> list[CalcRecord]
    mults: dict = field(default_factory=dict)  # (g_type, lam fund, mu fund) -> int
    stalks: dict = field(default_factory=dict)  # (g_type, orbit, sheaf) -> StalkPolynomial
    stalk_tops: dict = field(default_factory=dict)  # g_type -> OrbitLabel
    zero_weight: list = field(default_factory=list)
    posets: dict = field(default_factory=dict)  # LieType -> PosetData
    verified: bool = False

    # -- lookups --

    def records(self, g_type: LieType) -> list[CalcRecord]:
        try:
            return self.calc[g_type]
        except KeyError:
            raise MissingRecordError(f"no orbit calculation table for {g_type}") from None

    def saturation_records(self, g_type: LieType) -> list[SaturationRecord]:
        seen = {}
        for r in self.records(g_type):
            seen.setdefault(r.h_orbit, SaturationRecord(g_type, r.h_orbit, r.g_orbit, r.g_dim))
        return list(seen.values())

    def saturate(self, g_type: LieType, h_orbit: OrbitLabel) -> OrbitLabel:
        for r in self.records(g_type):
            if r.h_orbit == h_orbit:
                return r.g_orbit
        raise MissingRecordError(f"no saturation record for H-orbit {h_orbit} in {g_type}")

    def exceptional_orbits(self, g_type: LieType) -> list[OrbitLabel]:
        data = self.posets.get(g_type)
        if data is None:
            raise MissingRecordError(f"no orbit data for {g_type}")
        return sorted(data.orbit_dims, key=lambda o: (-data.orbit_dims[o], str(o)))

    def orbit_dimension(self, label: OrbitLabel) -> int:
        data = self.posets.get(label.lie_type)
        if data is None or label not in data.orbit_dims:
            raise MissingRecordError(f"unknown exceptional orbit {label} in {label.lie_type}")
        return data.orbit_dims[label]

    def exceptional_closure_leq(self, a: OrbitLabel, b: OrbitLabel) -> bool:
        self.orbit_dimension(a)
        self.orbit_dimension(b)
        data = self.posets[a.lie_type]
        below = {b}
        frontier = [b]
        while frontier:
            x = frontier.pop()
            for hi, lo in data.orbit_edges:
                if hi == x and lo not in below:
                    below.add(lo)
                    frontier.append(lo)
        return a in below

    def stalk(self, orbit: OrbitLabel, sheaf: str, g_type: LieType) -> StalkPolynomial:
        key = (g_type, orbit, sheaf)
        if key not in self.stalks:
            raise MissingRecordError(f"no stalk record for {orbit} ({sheaf}) in {g_type}")
        return self.stalks[key]

    def stalk_sheaves(self, g_type: LieType) -> tuple:
        return tuple(s for s in SHEAVES if any(k[0] == g_type and k[2] == s for k in self.stalks))

    def stalk_orbits(self, g_type: LieType) -> list[OrbitLabel]:
        out = []
        for (t, orbit, _sheaf) in self.stalks:
            if t == g_type and orbit not in out:
                out.append(orbit)
        return out

    def multiplicity_columns(self, g_type: LieType) -> dict:
        """{lam fund: {mu fund: value}} for the printed multiplicity columns."""
        out: dict = {}
        for (t, lam, mu), v in self.mults.items():
            if t == g_type:
                out.setdefault(lam, {})[mu] = v
        return out


def stalk_value_at_one(orbit_point: OrbitLabel, sheaf: str, g_type: LieType, store: DataStore | None = None) -> int:
    """Sum of coefficients of the stored stalk polynomial (blank cells give 0)."""
    store = store or load_tables()
    return store.stalk(orbit_point, sheaf, g_type).at_one()


# --- parsing ---------------------------------------------------------------

_POLY_TERM = re.compile(r"(\d*)q(?:\^\{?(\d+)\}?)?|(\d+)")


def parse_polynomial(text: str) -> tuple:
    s = text.replace(" ", "")
    if not s:
        return ()
    terms = []
    for chunk in s.split("+"):
        m = _POLY_TERM.fullmatch(chunk)
        if not m:
            raise TableError(f"bad polynomial term {chunk!r}")
        if m.group(3) is not None:
            terms.append((0, int(m.group(3))))
        else:
            coef = int(m.group(1)) if m.group(1) else 1
            exp = int(m.group(2)) if m.group(2) else 1
            terms.append((exp, coef))
    exps = [e for e, _ in terms]
    if any(a <= b for a, b in zip(exps, exps[1:])):
        raise TableError(f"exponents not strictly decreasing in {text!r}")
    if any(c <= 0 for _, c in terms):
        raise TableError(f"nonpositive coefficient in {text!r}")
    return tuple(terms)


_IRREP = re.compile(r"phi_\{(\d+),(\d+)\}('*)")


def parse_irreps(text: str) -> tuple:
    out = []
    for chunk in text.split("+"):
        chunk = chunk.strip()
        m = _IRREP.fullmatch(chunk)
        if not m:
            raise TableError(f"bad irreducible label {chunk!r}")
        out.append((chunk, int(m.group(1))))
    return tuple(out)


def _fields(line: str, lineno: int) -> dict:
    out = {}
    for part in line.split(" | "):
        if "=" not in part:
            raise TableError(f"line {lineno}: field without '=': {part!r}")
        k, v = part.split("=", 1)
        k = k.strip()
        if k in out:
            raise TableError(f"line {lineno}: duplicate field {k!r}")
        out[k] = v.strip()
    if "origin" not in out:
        raise TableError(f"line {lineno}: record without origin field")
    return out


def _coweight(text: str, lt: LieType) -> Coweight:
    return parse_coweight(text, lt)


def _require(rec: dict, lineno: int, *keys):
    missing = [k for k in keys if k not in rec]
    if missing:
        raise TableError(f"line {lineno}: missing fields {missing}")


def parse_tables(text: str, path: str = "<string>") -> DataStore:
    store = DataStore(path=path)
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = re.fullmatch(r"\[(\w+)\]", line)
        if m:
            section = m.group(1)
            if section not in SECTIONS:
                raise TableError(f"line {lineno}: unknown section [{section}]")
            continue
        if section is None:
            raise TableError(f"line {lineno}: record outside any section")
        rec = _fields(line, lineno)
        try:
            _add_record(store, section, rec, lineno)
        except TableError:
            raise
        except (ValueError, KeyError) as exc:
            raise TableError(f"line {lineno}: {exc}") from exc
    return store


def _add_record(store: DataStore, section: str, rec: dict, lineno: int):
    if section.endswith("CALC"):
        if section == "FGCALC":
            _require(rec, lineno, "g_type")
            g = LieType.parse(rec["g_type"])
        else:
            g = LieType("E", int(section[1]))
        _require(rec, lineno, "lam", "lam_dim", "mu", "h_orbit", "g_orbit", "g_dim")
        h = HOST_TYPE[g]
        r = CalcRecord(
            g_type=g,
            lam=_coweight(rec["lam"], g),
            lam_dim=int(rec["lam_dim"]),
            mu=_coweight(rec["mu"], h),
            h_orbit=parse_orbit(h, rec["h_orbit"]),
            g_orbit=parse_orbit(g, rec["g_orbit"]),
            g_dim=int(rec["g_dim"]),
            line=lineno,
        )
        store.calc.setdefault(g, []).append(r)
    elif section == "ESTALK":
        _require(rec, lineno, "kind", "g_type")
        g = LieType.parse(rec["g_type"])
        if rec["kind"] == "mult":
            _require(rec, lineno, "lam", "mu", "value")
            key = (g, _coweight(rec["lam"], g).fund, _coweight(rec["mu"], g).fund)
            store.mults[key] = int(rec["value"])
        elif rec["kind"] == "stalk":
            _require(rec, lineno, "top", "orbit", "sheaf", "poly")
            if rec["sheaf"] not in SHEAVES:
                raise TableError(f"line {lineno}: unknown sheaf tag {rec['sheaf']!r}")
            orbit = parse_orbit(g, rec["orbit"])
            top = parse_orbit(g, rec["top"])
            if store.stalk_tops.setdefault(g, top) != top:
                raise TableError(f"line {lineno}: inconsistent top orbit for {g}")
            key = (g, orbit, rec["sheaf"])
            if key in store.stalks:
                raise TableError(f"line {lineno}: duplicate stalk record")
            store.stalks[key] = StalkPolynomial(g, orbit, rec["sheaf"], parse_polynomial(rec["poly"]))
        else:
            raise TableError(f"line {lineno}: unknown kind {rec['kind']!r}")
    elif section == "EXCZW":
        _require(rec, lineno, "g_type", "lam", "irreps")
        g = LieType.parse(rec["g_type"])
        store.zero_weight.append(ZeroWeightDecomposition(_coweight(rec["lam"], g), parse_irreps(rec["irreps"])))
    elif section in ("EXCPO", "CLASSPO"):
        _require(rec, lineno, "kind", "g_type")
        g = LieType.parse(rec["g_type"])
        data = store.posets.setdefault(g, PosetData(g))
        kind = rec["kind"]
        if kind == "orbit":
            data.orbit_dims[parse_orbit(g, rec["orbit"])] = int(rec["dim"])
        elif kind == "orbit_edge":
            data.orbit_edges.append((parse_orbit(g, rec["hi"]), parse_orbit(g, rec["lo"])))
        elif kind == "lam_edge":
            data.lam_edges.append((_coweight(rec["hi"], g).fund, _coweight(rec["lo"], g).fund))
        elif kind == "piece":
            orbits = tuple(parse_orbit(g, s) for s in rec["orbits"].split(";"))
            data.pieces[_coweight(rec["lam"], g).fund] = orbits
        else:
            raise TableError(f"line {lineno}: unknown kind {kind!r}")


# --- loading and verification ----------------------------------------------

_lock = threading.Lock()
_cache: dict = {}


def data_path() -> Path:
    env = os.environ.get("REEDERKIT_DATA")
    return Path(env) if env else DEFAULT_PATH


def catalog(path=None) -> DataStore:
    """Parsed tables without cross-checks (cached per path)."""
    p = Path(path) if path else data_path()
    key = ("raw", str(p))
    with _lock:
        if key in _cache:
            return _cache[key]
    store = parse_tables(p.read_text(), str(p))
    with _lock:
        return _cache.setdefault(key, store)


def load_tables(path=None, verify: bool = True) -> DataStore:
    """Parse the tables and, by default, check every invariant against recomputation."""
    store = catalog(path)
    if verify and not store.verified:
        with _lock:
            pending = not store.verified
        if pending:
            verify_store(store)
            store.verified = True
    return store


def clear_cache():
    with _lock:
        _cache.clear()


def verify_store(store: DataStore) -> list[str]:
    """Run every load-time check; raise TableError on the first failure.

    Returns the list of check descriptions that passed.
    """
    from .multiplicity import weight_multiplicity, zero_weight_dim
    from .orbits import orbit_dimension

    passed = []

    def check(ok, msg):
        if not ok:
            raise TableError(f"{store.path}: {msg}")
        passed.append(msg)

    for g, recs in store.calc.items():
        by_lam: dict = {}
        for r in recs:
            check(r.lam.datum.is_dominant(r.lam.fund), f"line {r.line}: {r.lam} dominant")
            check(r.lam.datum.pairing_two_rho(r.lam.fund) == r.lam_dim,
                  f"line {r.line}: dim Gr of {r.lam} is {r.lam_dim}")
            check(store.orbit_dimension(r.g_orbit) == r.g_dim,
                  f"line {r.line}: dim {r.g_orbit} is {r.g_dim}")
            check(orbit_dimension(r.h_orbit) <= r.g_dim or g.family in "FG",
                  f"line {r.line}: H-orbit {r.h_orbit} no bigger than its saturation")
            by_lam.setdefault(r.lam.fund, []).append(r)
        for lam, rows in by_lam.items():
            top = max(x.g_dim for x in rows)
            check(top == rows[0].lam_dim, f"{g} {rows[0].lam}: open orbit dimension equals dim Gr")
        sat: dict = {}
        for r in recs:
            check(sat.setdefault(r.h_orbit, r.g_orbit) == r.g_orbit,
                  f"line {r.line}: H-orbit {r.h_orbit} saturates consistently")

    for (g, lam, mu), v in store.mults.items():
        lam_c = Coweight(lam, "fundamental", g)
        mu_c = Coweight(mu, "fundamental", g)
        check(weight_multiplicity(lam_c, mu_c) == v, f"{g} multiplicity of {mu_c} in V_{lam_c} is {v}")

    for g, top in store.stalk_tops.items():
        check(top in store.posets.get(g, PosetData(g)).orbit_dims, f"{g} stalk top orbit {top} is known")
        for (t, orbit, _s) in store.stalks:
            if t == g:
                check(store.exceptional_closure_leq(orbit, top), f"{g} stalk orbit {orbit} lies below {top}")

    for z in store.zero_weight:
        check(zero_weight_dim(z.lam) == z.dimension,
              f"{z.lam.lie_type} {z.lam}: zero weight space has dimension {z.dimension}")

    for g, data in store.posets.items():
        for hi, lo in data.orbit_edges:
            check(orbit_dimension(hi) > orbit_dimension(lo), f"{g} orbit edge {hi} > {lo} drops dimension")
        datum = g and Coweight((0,) * g.rank, "fundamental", g).datum
        for hi, lo in data.lam_edges:
            check(datum.leq(lo, hi) and lo != hi, f"{g} coweight edge {hi} > {lo} is a dominance relation")
        for lam, orbits in data.pieces.items():
            check(orbit_dimension(orbits[0]) == datum.pairing_two_rho(lam),
                  f"{g} piece of {lam}: open orbit dimension equals dim Gr")
    return passed


__all__ = [
    "DataStore",
    "StalkPolynomial",
    "ZeroWeightDecomposition",
    "SaturationRecord",
    "CalcRecord",
    "TableError",
    "MissingRecordError",
    "load_tables",
    "catalog",
    "stalk_value_at_one",
    "parse_tables",
    "parse_polynomial",
    "verify_store",
    "HOST_TYPE",
    "canonical_bala_carter",
]
