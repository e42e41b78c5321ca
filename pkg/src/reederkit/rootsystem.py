"""Simple root systems of types A-G, coweight lattices and Weyl group moves.

Conventions
-----------
Nodes are numbered as in Bourbaki's plates. Simple roots are realized as
explicit vectors in a Euclidean space (the plates' realization), and every
other piece of data is derived from those vectors, so there is no room for a
transposed Cartan matrix to slip in.

``cartan[i][j] = <alpha_i^vee, alpha_j>``.

Coweights of G are stored internally in fundamental-coweight coordinates,
``c_i = <lambda, alpha_i>``. For types A-D the "classical" view is the
coordinate vector in the Euclidean realization, which matches the usual
identifications: ``SL_n`` coweights are integer n-tuples with sum 0, and for
``Sp_2n``, ``Spin_2n+1``, ``Spin_2n`` they are n-tuples (with even sum for
the spin groups when the coweight lies in the coroot lattice).

For F4 and G2 the numbering is the one for G itself; the fundamental weights
of the dual group then appear in reverse order, as the exceptional tables do.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Sequence

from . import exact

BASES = ("classical", "fundamental", "coroot")

_GROUP_DIM = {
    "E": {6: 78, 7: 133, 8: 248},
    "F": {4: 52},
    "G": {2: 14},
}


class RootSystemError(ValueError):
    pass


class NonIntegralError(RootSystemError):
    """Raised when a lattice element has no integral coordinates in a basis."""

    def __init__(self, message, witness):
        super().__init__(f"{message}: rational coordinates {tuple(str(x) for x in witness)}")
        self.witness = tuple(witness)


@dataclass(frozen=True, order=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self):
        fam, r = self.family, self.rank
        if fam not in "ABCDEFG" or len(fam) != 1:
            raise RootSystemError(f"unknown family {fam!r}")
        if not isinstance(r, int) or r < 1:
            raise RootSystemError(f"rank must be a positive integer, got {r!r}")
        ok = {
            "A": r >= 1,
            "B": r >= 2,
            "C": r >= 2,
            "D": r >= 3,
            "E": r in (6, 7, 8),
            "F": r == 4,
            "G": r == 2,
        }[fam]
        if not ok:
            raise RootSystemError(f"invalid rank {r} for family {fam}")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @property
    def is_classical(self) -> bool:
        return self.family in "ABCD"

    @property
    def dimension(self) -> int:
        """Dimension of the simple group of this type."""
        n = self.rank
        if self.family == "A":
            return (n + 1) ** 2 - 1
        if self.family in "BC":
            return n * (2 * n + 1)
        if self.family == "D":
            return n * (2 * n - 1)
        return _GROUP_DIM[self.family][n]

    @property
    def classical_length(self) -> int:
        """Number of classical coordinates (n+1 for A_n, n otherwise)."""
        if not self.is_classical:
            raise RootSystemError(f"no classical coordinates for type {self}")
        return self.rank + 1 if self.family == "A" else self.rank

    @property
    def matrix_size(self) -> int:
        """Size of the standard matrix representation (classical types)."""
        n = self.rank
        return {"A": n + 1, "B": 2 * n + 1, "C": 2 * n, "D": 2 * n}[self.family]

    @classmethod
    def parse(cls, text: str) -> "LieType":
        m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", text)
        if not m:
            raise RootSystemError(f"cannot parse Lie type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))


@dataclass(frozen=True)
class Coweight:
    coords: tuple
    basis: str
    lie_type: LieType

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))
        if self.basis not in BASES:
            raise RootSystemError(f"unknown basis {self.basis!r}")
        lt = self.lie_type
        if self.basis == "classical":
            if len(self.coords) != lt.classical_length:
                raise RootSystemError(
                    f"{lt} classical coweight needs {lt.classical_length} coordinates, "
                    f"got {len(self.coords)}")
            if lt.family == "A" and sum(self.coords) != 0:
                raise RootSystemError(f"type A coweight must have coordinate sum 0: {self.coords}")
        elif len(self.coords) != lt.rank:
            raise RootSystemError(f"{lt} coweight needs {lt.rank} coordinates")

    @property
    def datum(self) -> "RootDatum":
        return build_root_system(self.lie_type)

    @property
    def fund(self) -> tuple:
        return self.datum.to_fundamental(self.coords, self.basis)

    def to(self, basis: str) -> "Coweight":
        return convert_basis(self, basis)

    def __str__(self):
        if self.basis == "fundamental":
            return format_fundamental(self.coords)
        return "(" + ",".join(str(x) for x in self.coords) + ")"


def format_fundamental(c: Sequence[int]) -> str:
    """``(0,1,0,0,0,0,1)`` -> ``'w2+w7'``."""
    terms = []
    for i, x in enumerate(c, start=1):
        if x == 0:
            continue
        coef = "" if x == 1 else ("-" if x == -1 else str(x))
        terms.append(f"{coef}w{i}")
    if not terms:
        return "0"
    return "+".join(terms).replace("+-", "-")


# --- Euclidean realizations (Bourbaki plates I-IX) -------------------------

def _e(n, *entries):
    v = [Fraction(0)] * n
    for idx, val in entries:
        v[idx] = Fraction(val)
    return v


def _simple_roots(lt: LieType) -> list[list[Fraction]]:
    fam, n = lt.family, lt.rank
    if fam == "A":
        return [_e(n + 1, (i, 1), (i + 1, -1)) for i in range(n)]
    if fam in "BCD":
        roots = [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)]
        last = {"B": _e(n, (n - 1, 1)),
                "C": _e(n, (n - 1, 2)),
                "D": _e(n, (n - 2, 1), (n - 1, 1))}[fam]
        return roots + [last]
    if fam == "E":
        h = Fraction(1, 2)
        e8 = [
            [h, -h, -h, -h, -h, -h, -h, h],
            _e(8, (0, 1), (1, 1)),
            _e(8, (0, -1), (1, 1)),
            _e(8, (1, -1), (2, 1)),
            _e(8, (2, -1), (3, 1)),
            _e(8, (3, -1), (4, 1)),
            _e(8, (4, -1), (5, 1)),
            _e(8, (5, -1), (6, 1)),
        ]
        return [list(map(Fraction, r)) for r in e8[:n]]
    if fam == "F":
        h = Fraction(1, 2)
        return [_e(4, (1, 1), (2, -1)), _e(4, (2, 1), (3, -1)), _e(4, (3, 1)),
                [h, -h, -h, -h]]
    if fam == "G":
        return [_e(3, (0, 1), (1, -1)), _e(3, (0, -2), (1, 1), (2, 1))]
    raise RootSystemError(str(lt))


def _dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class RootDatum:
    """Root data for one simple type; immutable once built.

    ``positive_roots`` are in simple-root coordinates, ``positive_coroots`` in
    simple-coroot coordinates. ``highest_short_coroot`` is given in
    fundamental-coweight coordinates; it is the highest short root of the dual
    group, i.e. the coroot of the highest root of G.
    """

    lie_type: LieType
    cartan: tuple
    simple_roots: tuple
    simple_coroots: tuple
    positive_roots: tuple
    positive_coroots: tuple
    two_rho: tuple
    highest_root: tuple
    highest_short_coroot: tuple
    longest_element_action: tuple
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    # -- coordinate changes (all on plain tuples) --

    @property
    def cartan_inverse(self):
        if "cinv" not in self._cache:
            self._cache["cinv"] = exact.inverse(exact.to_fraction_matrix(self.cartan))
        return self._cache["cinv"]

    @property
    def _scaled_inverse(self):
        # (den, M) with M = den * C^-1 integral; keeps the hot paths off Fraction
        if "sinv" not in self._cache:
            inv = self.cartan_inverse
            den = 1
            for row in inv:
                for x in row:
                    den = den * x.denominator // gcd(den, x.denominator)
            self._cache["sinv"] = (den, tuple(tuple(int(x * den) for x in row) for row in inv))
        return self._cache["sinv"]

    def _fund_to_coroot_scaled(self, c) -> tuple:
        den, m = self._scaled_inverse
        n = self.rank
        return den, tuple(sum(c[i] * m[i][j] for i in range(n)) for j in range(n))

    def fund_to_coroot_frac(self, c) -> tuple:
        den, num = self._fund_to_coroot_scaled(c)
        return tuple(Fraction(x, den) for x in num)

    def coroot_to_fund(self, d) -> tuple:
        n = self.rank
        return tuple(sum(d[j] * self.cartan[j][i] for j in range(n)) for i in range(n))

    def fund_to_euclid(self, c) -> tuple:
        d = self.fund_to_coroot_frac(c)
        dim = len(self.simple_coroots[0])
        return tuple(sum((d[j] * self.simple_coroots[j][k] for j in range(self.rank)), Fraction(0))
                     for k in range(dim))

    def euclid_to_fund(self, v) -> tuple:
        out = []
        for a in self.simple_roots:
            x = _dot(v, a)
            if x.denominator != 1:
                raise NonIntegralError("not a coweight", [_dot(v, b) for b in self.simple_roots])
            out.append(int(x))
        return tuple(out)

    def to_fundamental(self, coords, basis: str) -> tuple:
        if basis == "fundamental":
            return tuple(coords)
        if basis == "coroot":
            return self.coroot_to_fund(coords)
        if basis == "classical":
            self._require_classical()
            return self.euclid_to_fund([Fraction(x) for x in coords])
        raise RootSystemError(f"unknown basis {basis!r}")

    def from_fundamental(self, c, basis: str) -> tuple:
        if basis == "fundamental":
            return tuple(c)
        if basis == "coroot":
            d = self.fund_to_coroot_frac(c)
            if any(x.denominator != 1 for x in d):
                raise NonIntegralError("outside the coroot lattice", d)
            return tuple(int(x) for x in d)
        if basis == "classical":
            self._require_classical()
            v = self.fund_to_euclid(c)
            if any(x.denominator != 1 for x in v):
                raise NonIntegralError("no integral classical coordinates", v)
            return tuple(int(x) for x in v)
        raise RootSystemError(f"unknown basis {basis!r}")

    def _require_classical(self):
        if not self.lie_type.is_classical:
            raise RootSystemError(f"classical coordinates undefined for type {self.lie_type}")

    # -- lattice and order --

    def in_coroot_lattice(self, c) -> bool:
        den, num = self._fund_to_coroot_scaled(c)
        return all(x % den == 0 for x in num)

    def is_dominant(self, c) -> bool:
        return all(x >= 0 for x in c)

    def leq(self, mu, lam) -> bool:
        """Dominance order: lam - mu is an N-combination of simple coroots."""
        den, num = self._fund_to_coroot_scaled([a - b for a, b in zip(lam, mu)])
        return all(x >= 0 and x % den == 0 for x in num)

    def reflect(self, c, i: int) -> tuple:
        ci = c[i]
        if ci == 0:
            return tuple(c)
        row = self.cartan[i]
        return tuple(x - ci * a for x, a in zip(c, row))

    def dominant(self, c) -> tuple[tuple, int]:
        """Dominant element of the W-orbit of ``c`` and the number of reflections used.

        Always reflects at the least index with a negative coordinate.
        """
        c = tuple(c)
        steps = 0
        while True:
            i = next((k for k, x in enumerate(c) if x < 0), None)
            if i is None:
                return c, steps
            c = self.reflect(c, i)
            steps += 1

    def minus_w0(self, c) -> tuple:
        return self.dominant(tuple(-x for x in c))[0]

    def pairing_two_rho(self, c) -> int:
        # <lam, 2 rho> = 2 <lam, sum of fundamental weights> = 2 * (sum of coroot coords)
        total = 2 * sum(self.fund_to_coroot_frac(c), Fraction(0))
        if total.denominator != 1:
            raise NonIntegralError("pairing with 2rho is not integral", [total])
        return int(total)

    def pair_root(self, c, root) -> int:
        """<lam, alpha> for alpha given in simple-root coordinates."""
        return sum(a * b for a, b in zip(c, root))

    # -- derived data used by the multiplicity code --

    @property
    def positive_coroots_fund(self) -> tuple:
        if "pcf" not in self._cache:
            self._cache["pcf"] = tuple(self.coroot_to_fund(d) for d in self.positive_coroots)
        return self._cache["pcf"]

    @property
    def coweight_gram(self):
        """Integer Gram matrix of a W-invariant form in fundamental coordinates.

        Proportional to the form in which short coroots have squared length 2.
        """
        if "gram" not in self._cache:
            n = self.rank
            bc = [[_dot(self.simple_coroots[i], self.simple_coroots[j]) for j in range(n)]
                  for i in range(n)]
            short = min(bc[i][i] for i in range(n))
            bc = [[x * 2 / short for x in row] for row in bc]
            inv = self.cartan_inverse
            g = exact.matmul(exact.matmul(inv, bc), exact.transpose(inv))
            den = lcm(*(x.denominator for row in g for x in row))
            self._cache["gram"] = tuple(tuple(int(x * den) for x in row) for row in g)
        return self._cache["gram"]

    def form(self, u, v) -> int:
        g = self.coweight_gram
        return sum(u[i] * g[i][j] * v[j] for i in range(self.rank) for j in range(self.rank) if u[i] and v[j])

    def orbit(self, c) -> set:
        """The full W-orbit of a coweight (breadth-first over simple reflections)."""
        start = tuple(c)
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for v in frontier:
                for i in range(self.rank):
                    w = self.reflect(v, i)
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return seen

    def two_rho_classical(self) -> tuple:
        self._require_classical()
        dim = len(self.simple_roots[0])
        tot = [Fraction(0)] * dim
        for r in self.positive_roots:
            for i, n_i in enumerate(r):
                if n_i:
                    for k in range(dim):
                        tot[k] += n_i * self.simple_roots[i][k]
        return tuple(int(x) for x in tot)


def _closure(simple_count, step) -> list[tuple]:
    """Positive (co)roots by reflection closure from the simple ones."""
    simple = [tuple(1 if j == i else 0 for j in range(simple_count)) for i in range(simple_count)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(simple_count):
                s = step(r, i)
                if s != r and all(x >= 0 for x in s) and s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    return sorted(seen, key=lambda r: (sum(r), r))


@lru_cache(maxsize=None)
def build_root_system(lt: LieType) -> RootDatum:
    roots = _simple_roots(lt)
    n = lt.rank
    coroots = [[x * 2 / _dot(a, a) for x in a] for a in roots]
    cartan = tuple(tuple(int(_dot(coroots[i], roots[j])) for j in range(n)) for i in range(n))

    def root_step(r, i):
        k = sum(r[j] * cartan[i][j] for j in range(n))
        return tuple(x - (k if j == i else 0) for j, x in enumerate(r))

    def coroot_step(d, i):
        k = sum(d[j] * cartan[j][i] for j in range(n))
        return tuple(x - (k if j == i else 0) for j, x in enumerate(d))

    pos_roots = _closure(n, root_step)
    pos_coroots = _closure(n, coroot_step)
    if 2 * len(pos_roots) != lt.dimension - n or len(pos_coroots) != len(pos_roots):
        raise RootSystemError(f"reflection closure produced {len(pos_roots)} roots for {lt}")

    two_rho = tuple(sum(r[i] for r in pos_roots) for i in range(n))
    highest_root = max(pos_roots, key=sum)

    def euclid_len(d):
        v = [sum((d[j] * coroots[j][k] for j in range(n)), Fraction(0)) for k in range(len(coroots[0]))]
        return _dot(v, v)

    short_len = min(euclid_len(d) for d in pos_coroots)
    hsc = max((d for d in pos_coroots if euclid_len(d) == short_len), key=sum)
    hsc_fund = tuple(sum(hsc[j] * cartan[j][i] for j in range(n)) for i in range(n))

    datum = RootDatum(
        lie_type=lt,
        cartan=cartan,
        simple_roots=tuple(tuple(r) for r in roots),
        simple_coroots=tuple(tuple(r) for r in coroots),
        positive_roots=tuple(pos_roots),
        positive_coroots=tuple(pos_coroots),
        two_rho=two_rho,
        highest_root=highest_root,
        highest_short_coroot=hsc_fund,
        longest_element_action=(),
    )
    perm = []
    for i in range(n):
        unit = tuple(1 if j == i else 0 for j in range(n))
        img = datum.minus_w0(unit)
        perm.append(img.index(1))
    object.__setattr__(datum, "longest_element_action", tuple(perm))
    if any(perm[perm[i]] != i for i in range(n)):
        raise RootSystemError(f"-w0 is not an involution for {lt}")
    return datum


# --- coweight-level operations ---------------------------------------------

def _check_same_type(*ws: Coweight):
    types = {w.lie_type for w in ws}
    if len(types) != 1:
        raise RootSystemError(f"mixed Lie types: {sorted(map(str, types))}")


def convert_basis(v: Coweight, target: str) -> Coweight:
    if target == v.basis:
        return v
    d = v.datum
    return Coweight(d.from_fundamental(v.fund, target), target, v.lie_type)


def dominance_leq(mu: Coweight, lam: Coweight) -> bool:
    _check_same_type(mu, lam)
    return mu.datum.leq(mu.fund, lam.fund)


def dominant_representative(v: Coweight) -> tuple[Coweight, int]:
    c, steps = v.datum.dominant(v.fund)
    return Coweight(v.datum.from_fundamental(c, v.basis), v.basis, v.lie_type), steps


def minus_w0(lam: Coweight) -> Coweight:
    d = lam.datum
    if not d.is_dominant(lam.fund):
        raise RootSystemError(f"minus_w0 expects a dominant coweight, got {lam}")
    return Coweight(d.from_fundamental(d.minus_w0(lam.fund), lam.basis), lam.basis, lam.lie_type)


def pairing_two_rho(lam: Coweight) -> int:
    return lam.datum.pairing_two_rho(lam.fund)


def fundamental(lt: LieType, *terms: tuple[int, int]) -> Coweight:
    """Build a coweight from (coefficient, node) pairs, e.g. ``fundamental(E7, (1, 2), (1, 7))``."""
    c = [0] * lt.rank
    for coef, node in terms:
        c[node - 1] += coef
    return Coweight(tuple(c), "fundamental", lt)


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*w(\d+)")


def parse_coweight(text: str, lt: LieType) -> Coweight:
    """Parse ``'w2+w7'``, ``'3w1'``, ``'0'`` or a classical tuple ``'2,1,1,0'``."""
    s = text.strip()
    if s in ("0", ""):
        return Coweight((0,) * lt.rank, "fundamental", lt)
    if "w" in s:
        body = s.replace(" ", "")
        pos = 0
        c = [0] * lt.rank
        for m in _TERM.finditer(body):
            if m.start() != pos:
                raise RootSystemError(f"bad coweight syntax {text!r}")
            pos = m.end()
            sign = -1 if m.group(1) == "-" else 1
            coef = int(m.group(2)) if m.group(2) else 1
            node = int(m.group(3))
            if not 1 <= node <= lt.rank:
                raise RootSystemError(f"node {node} out of range for {lt}")
            c[node - 1] += sign * coef
        if pos != len(body):
            raise RootSystemError(f"bad coweight syntax {text!r}")
        return Coweight(tuple(c), "fundamental", lt)
    try:
        coords = tuple(int(x) for x in s.strip("()").split(","))
    except ValueError:
        raise RootSystemError(f"bad coweight syntax {text!r}") from None
    return Coweight(coords, "classical", lt)


def iter_types(families: Iterable[str] = "ABCDEFG", max_rank: int = 8):
    for fam in families:
        for r in range(1, max_rank + 1):
            try:
                yield LieType(fam, r)
            except RootSystemError:
                continue
