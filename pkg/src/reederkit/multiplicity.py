"""Weight multiplicities of irreducible representations of the dual group.

A dominant coweight of G is a dominant weight of the dual group, whose
positive roots are the positive coroots of G. Multiplicities are computed
with Freudenthal's recursion over the dominant cone, in exact integers.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .rootsystem import Coweight, RootDatum, RootSystemError, build_root_system

_lock = threading.Lock()
_memo: dict = {}


@dataclass
class MultiplicityTable:
    """Dominant weight multiplicities of ``V_lam``.

    ``entries`` maps fundamental-coordinate tuples to multiplicities; only
    dominant weights with nonzero multiplicity are stored.
    """

    lam: Coweight
    entries: dict = field(default_factory=dict)

    def __getitem__(self, mu):
        if isinstance(mu, Coweight):
            mu = mu.fund
        datum = self.lam.datum
        dom, _ = datum.dominant(mu)
        return self.entries.get(dom, 0)

    def dimension(self) -> int:
        datum = self.lam.datum
        return sum(m * orbit_size_fund(datum, mu) for mu, m in self.entries.items())


def _depth_key(datum: RootDatum, lam, mu):
    return (datum.pairing_two_rho([a - b for a, b in zip(lam, mu)]), tuple(-x for x in mu))


def dominant_below_fund(datum: RootDatum, lam) -> list[tuple]:
    """Dominant mu <= lam, ordered by depth <lam - mu, 2rho> then lexicographically (descending).

    Every dominant mu < lam is reached from lam through dominant weights by
    subtracting one positive coroot at a time, so a downward search is complete.
    """
    lam = tuple(lam)
    if not datum.is_dominant(lam):
        raise RootSystemError(f"expected a dominant coweight, got {lam}")
    seen = {lam}
    frontier = [lam]
    coroots = datum.positive_coroots_fund
    while frontier:
        nxt = []
        for mu in frontier:
            for b in coroots:
                nu = tuple(x - y for x, y in zip(mu, b))
                if nu not in seen and all(x >= 0 for x in nu):
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt
    return sorted(seen, key=lambda mu: _depth_key(datum, lam, mu))


def dominant_weights_below(lam: Coweight) -> list[Coweight]:
    datum = lam.datum
    if not datum.in_coroot_lattice(lam.fund):
        raise RootSystemError(f"{lam} is not in the coroot lattice")
    return [Coweight(datum.from_fundamental(mu, lam.basis), lam.basis, lam.lie_type)
            for mu in dominant_below_fund(datum, lam.fund)]


def _freudenthal(datum: RootDatum, lam) -> dict:
    lam = tuple(lam)
    n = datum.rank
    rho = (1,) * n
    coroots = datum.positive_coroots_fund
    order = dominant_below_fund(datum, lam)
    mult = {lam: 1}
    lr = tuple(a + b for a, b in zip(lam, rho))
    norm_top = datum.form(lr, lr)
    for mu in order[1:]:
        total = 0
        for b in coroots:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, b))
                dom, _ = datum.dominant(nu)
                m = mult.get(dom)
                if m is None:
                    # weight strings are unbroken, so nothing further along is a weight
                    if not datum.leq(dom, lam):
                        break
                    m = 0
                if m:
                    total += datum.form(nu, b) * m
                k += 1
        mr = tuple(a + b for a, b in zip(mu, rho))
        denom = norm_top - datum.form(mr, mr)
        num = 2 * total
        if denom <= 0 or num % denom:
            raise ArithmeticError(f"Freudenthal step not integral at {mu}: {num}/{denom}")
        if num:
            mult[mu] = num // denom
    return mult


def multiplicity_table(lam: Coweight) -> MultiplicityTable:
    """Cached table for ``lam``, keyed by (type, lam)."""
    datum = lam.datum
    key = (lam.lie_type, lam.fund)
    with _lock:
        cached = _memo.get(key)
    if cached is None:
        cached = _freudenthal(datum, lam.fund)
        with _lock:
            _memo.setdefault(key, cached)
    return MultiplicityTable(lam, dict(cached))


def weight_multiplicity(lam: Coweight, mu: Coweight) -> int:
    if mu.lie_type != lam.lie_type:
        raise RootSystemError("mixed Lie types")
    datum = lam.datum
    if not datum.is_dominant(lam.fund):
        raise RootSystemError(f"highest weight must be dominant, got {lam}")
    diff = [a - b for a, b in zip(lam.fund, mu.fund)]
    if not datum.in_coroot_lattice(diff):
        return 0
    return multiplicity_table(lam)[mu]


def weyl_dimension_fund(datum: RootDatum, lam) -> int:
    num = Fraction(1)
    for alpha in datum.positive_roots:
        num *= Fraction(sum(n_i * (c + 1) for n_i, c in zip(alpha, lam)), sum(alpha))
    if num.denominator != 1:
        raise ArithmeticError("Weyl dimension formula gave a non-integer")
    return int(num)


def weyl_dimension(lam: Coweight) -> int:
    datum = lam.datum
    if not datum.is_dominant(lam.fund):
        raise RootSystemError(f"highest weight must be dominant, got {lam}")
    return weyl_dimension_fund(datum, lam.fund)


@dataclass(frozen=True)
class ZeroWeightResult:
    dim: int
    outside_coroot_lattice: bool = False

    def __int__(self):
        return self.dim


def zero_weight_dim(lam: Coweight) -> int:
    """Dimension of the zero weight space; 0 when lam is outside the coroot lattice."""
    return zero_weight_result(lam).dim


def zero_weight_result(lam: Coweight) -> ZeroWeightResult:
    if not lam.datum.in_coroot_lattice(lam.fund):
        return ZeroWeightResult(0, outside_coroot_lattice=True)
    zero = Coweight((0,) * lam.lie_type.rank, "fundamental", lam.lie_type)
    return ZeroWeightResult(weight_multiplicity(lam, zero))


def orbit_size_fund(datum: RootDatum, mu) -> int:
    return len(datum.orbit(mu))


def orbit_size(mu: Coweight) -> int:
    return orbit_size_fund(mu.datum, mu.fund)


def clear_cache():
    with _lock:
        _memo.clear()


__all__ = [
    "MultiplicityTable",
    "dominant_weights_below",
    "weight_multiplicity",
    "weyl_dimension",
    "zero_weight_dim",
    "orbit_size",
    "multiplicity_table",
    "build_root_system",
]
