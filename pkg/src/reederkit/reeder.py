"""Small coweights, Reeder pieces and the exceptional restriction pipelines.

A dominant coweight in the coroot lattice is *small* when it is not >= twice
the coroot of the highest root. The Reeder piece of a small coweight is the
set of nilpotent orbits hit by the projection from its part of the small
affine Grassmannian; it is one orbit, or two orbits for certain self-dual
coweights.

Classical types are computed directly: the coweight is turned into an
``SL_N`` coweight of the natural representation, and the nilpotent orbits
compatible with its Laurent rank data are selected. Exceptional types go
through a classical subgroup H (E6, E7, E8) or an unfolded group H (F4, G2),
and the embedded saturation records translate H-orbits back to G-orbits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import paperdata
from .multiplicity import weight_multiplicity
from .orbits import (
    OrbitLabel,
    Partition,
    is_valid_orbit_partition,
    orbit_dimension,
    partitions,
)
from .rootsystem import Coweight, LieType, RootSystemError, build_root_system

MAX_CLASSICAL_RANK = 12

# H-simple node -> G extended-diagram node (0 is the affine node, i.e. minus the highest coroot)
SUBGROUP_NODES = {
    LieType("E", 6): (1, 3, 4, 5, 6),
    LieType("E", 7): (0, 1, 3, 4, 2, 5),
    LieType("E", 8): (0, 8, 7, 6, 5, 4, 3, 2),
}

# G-simple node -> orbit of H-simple nodes under the diagram automorphism
FOLDING_NODES = {
    LieType("F", 4): ((2,), (4,), (3, 5), (1, 6)),
    LieType("G", 2): ((1, 3, 4), (2,)),
}


class NotSmallError(RootSystemError):
    pass


class EmbeddingError(RootSystemError):
    pass


def _basis_for(lt: LieType) -> str:
    return "classical" if lt.is_classical else "fundamental"


def _as_coweight(lt: LieType, fund) -> Coweight:
    datum = build_root_system(lt)
    return Coweight(datum.from_fundamental(tuple(fund), _basis_for(lt)), _basis_for(lt), lt)


def is_small(lam: Coweight) -> bool:
    datum = lam.datum
    c = lam.fund
    if not datum.is_dominant(c) or not datum.in_coroot_lattice(c):
        return False
    two_a0 = tuple(2 * x for x in datum.highest_short_coroot)
    return not datum.leq(two_a0, c)


# --- the small poset -------------------------------------------------------

@dataclass
class SmallPoset:
    lie_type: LieType
    elements: list  # Coweights, classical basis for A-D, fundamental otherwise
    hasse_edges: list  # (upper index, lower index)
    involution: list  # index -> index of -w0(element)

    def index(self, lam: Coweight) -> int:
        f = lam.fund
        for i, e in enumerate(self.elements):
            if e.fund == f:
                return i
        raise KeyError(f"{lam} is not small in {self.lie_type}")

    def __len__(self):
        return len(self.elements)


@lru_cache(maxsize=None)
def _small_fund(lt: LieType) -> tuple:
    """Small dominant coweights (fundamental coordinates) by upward search from 0.

    The small set is a lower order ideal of the dominant coroot-lattice
    coweights, and a covering relation between dominant elements always
    differs by a positive coroot, so every small coweight is reached from 0
    through small coweights one positive coroot at a time.
    """
    datum = build_root_system(lt)
    two_a0 = tuple(2 * x for x in datum.highest_short_coroot)
    zero = (0,) * lt.rank
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for lam in frontier:
            for b in datum.positive_coroots_fund:
                nu = tuple(x + y for x, y in zip(lam, b))
                if nu in seen or any(x < 0 for x in nu) or datum.leq(two_a0, nu):
                    continue
                seen.add(nu)
                nxt.append(nu)
        frontier = nxt
    return tuple(sorted(seen, key=lambda c: (-datum.pairing_two_rho(c), tuple(-x for x in datum.fund_to_coroot_frac(c)))))


def enumerate_small(lt: LieType, max_rank: int = MAX_CLASSICAL_RANK) -> SmallPoset:
    if lt.is_classical and lt.rank > max_rank:
        raise RootSystemError(f"rank {lt.rank} exceeds the configured bound {max_rank}")
    datum = build_root_system(lt)
    funds = list(_small_fund(lt))
    elements = [_as_coweight(lt, c) for c in funds]
    pos = {c: i for i, c in enumerate(funds)}
    coroot = [tuple(int(x) for x in datum.fund_to_coroot_frac(c)) for c in funds]

    def below(i, j):  # funds[i] <= funds[j]
        return all(a <= b for a, b in zip(coroot[i], coroot[j]))

    edges = []
    n = len(funds)
    for hi in range(n):
        for lo in range(n):
            if hi == lo or not below(lo, hi):
                continue
            if any(m not in (hi, lo) and below(lo, m) and below(m, hi) for m in range(n)):
                continue
            edges.append((hi, lo))
    involution = [pos[datum.minus_w0(c)] for c in funds]
    return SmallPoset(lt, elements, edges, involution)


def _require_classification(lt: LieType):
    if lt.family == "D" and lt.rank < 4:
        raise RootSystemError(f"the type D classification needs rank >= 4; treat {lt} as A3")


def _tau1_inverse(b, length):
    b = list(b) + [0] * (length - len(b))
    return tuple(x - 1 for x in b)


def _tau2_inverse(b, length):
    b = list(b) + [0] * (length - len(b))
    return tuple(1 - x for x in reversed(b))


def small_closed_form(lt: LieType) -> list[Coweight]:
    """The explicit families of small coweights for the classical types."""
    if not lt.is_classical:
        raise RootSystemError(f"no closed form for exceptional type {lt}")
    _require_classification(lt)
    n = lt.rank
    fam = lt.family
    out = set()
    if fam == "A":
        for b in partitions(n + 1):
            out.add(_tau1_inverse(b, n + 1))
            out.add(_tau2_inverse(b, n + 1))
    elif fam == "C":
        for j in range(n + 1):
            out.add((1,) * j + (0,) * (n - j))
    else:
        for j in range(n):
            if 2 * j <= n - 1 and (fam == "B" or 2 * j < n - 1):
                out.add((2,) + (1,) * (2 * j) + (0,) * (n - 2 * j - 1))
        for j in range(n + 1):
            if 2 * j <= n and (fam == "B" or 2 * j < n):
                out.add((1,) * (2 * j) + (0,) * (n - 2 * j))
        if fam == "D":
            if n % 2 == 0:
                out.add((1,) * n)
                out.add((1,) * (n - 1) + (-1,))
            else:
                out.add((2,) + (1,) * (n - 1))
                out.add((2,) + (1,) * (n - 2) + (-1,))
    return [Coweight(c, "classical", lt) for c in sorted(out, reverse=True)]


# --- Reeder pieces, classical engine ---------------------------------------

@dataclass(frozen=True)
class ReederPiece:
    lie_type: LieType
    sources: tuple  # (lam,) or (lam, -w0 lam)
    orbits: tuple  # open orbit first
    case: str  # "single" or "double"

    def __post_init__(self):
        if self.case not in ("single", "double"):
            raise ValueError(f"bad case tag {self.case!r}")
        if (self.case == "double") != (len(self.orbits) == 2) or len(self.orbits) not in (1, 2):
            raise ValueError(f"case {self.case} with {len(self.orbits)} orbits")

    @property
    def open_orbit(self) -> OrbitLabel:
        return self.orbits[0]


def _sources(lam: Coweight) -> tuple:
    datum = lam.datum
    dual = datum.minus_w0(lam.fund)
    if dual == lam.fund:
        return (lam,)
    return (lam, Coweight(datum.from_fundamental(dual, lam.basis), lam.basis, lam.lie_type))


def _make_piece(lam: Coweight, orbits) -> ReederPiece:
    orbits = sorted(set(orbits), key=lambda o: (-orbit_dimension(o), str(o)))
    return ReederPiece(lam.lie_type, _sources(lam), tuple(orbits), "double" if len(orbits) == 2 else "single")


def sl_coweight(lam: Coweight) -> tuple:
    """The coweight of the natural representation, as a dominant SL_N coweight."""
    lt = lam.lie_type
    a = lam.to("classical").coords
    if lt.family == "A":
        return a
    neg = tuple(-x for x in reversed(a))
    if lt.family == "C":
        return a + neg
    if lt.family == "B":
        return a + (0,) + neg
    return tuple(sorted(a + neg, reverse=True))


def _orbit_with_tag(lt, parts, lam_classical) -> OrbitLabel:
    p = Partition(tuple(parts))
    tag = None
    if lt.family == "D" and p.parts and all(x % 2 == 0 for x in p.parts):
        # convention: last coordinate +1 gives I, -1 gives II
        tag = "II" if lam_classical[-1] < 0 else "I"
    return OrbitLabel(lt, partition=p, tag=tag)


def reeder_piece_classical(lt: LieType, lam: Coweight) -> ReederPiece:
    if lam.lie_type != lt or not lt.is_classical:
        raise RootSystemError(f"expected a classical coweight of type {lt}")
    _require_classification(lt)
    if not is_small(lam):
        raise NotSmallError(f"{lam} is not small in {lt}")
    a = lam.to("classical").coords
    mu = sl_coweight(lam)
    big_n = len(mu)
    if mu[-1] >= -1:
        return _make_piece(lam, [_orbit_with_tag(lt, [x + 1 for x in mu], a)])
    if lt.family == "A":
        if mu[0] > 1:
            raise NotSmallError(f"{lam} is not small in {lt}")
        return _make_piece(lam, [OrbitLabel(lt, partition=Partition(tuple(1 - x for x in reversed(mu))))])
    if mu[-1] != -2:
        raise NotSmallError(f"{lam} is not small in {lt}")
    # Elements 1 + x/t + y/t^2 in this cell: x has parts <= 3 with x^2 != 0, and
    # rank(x) equals the size-2 block Toeplitz rank sum_j max(2 - (mu_j - mu_N), 0).
    r2 = sum(max(2 - (m - mu[-1]), 0) for m in mu)
    found = []
    for parts in partitions(big_n, 3):
        threes = parts.count(3)
        if threes not in (1, 2):
            continue
        p = Partition(parts)
        if big_n - len(parts) != r2 or not is_valid_orbit_partition(lt, p):
            continue
        found.append(OrbitLabel(lt, partition=p))
    if not found:
        raise ArithmeticError(f"no orbit matches the rank data of {lam}")
    return _make_piece(lam, found)


def classcalc_piece(lt: LieType, lam: Coweight) -> ReederPiece:
    """Reeder piece read off the closed-form classification, independent of the engine."""
    _require_classification(lt)
    n = lt.rank
    a = lam.to("classical").coords
    fam = lt.family

    def orb(parts, tag=None):
        return OrbitLabel(lt, partition=Partition(tuple(parts)), tag=tag)

    if fam == "A":
        if a[-1] >= -1:
            return _make_piece(lam, [orb([x + 1 for x in a])])
        return _make_piece(lam, [orb([1 - x for x in reversed(a)])])
    if fam == "C":
        j = sum(a)
        return _make_piece(lam, [orb([2] * j + [1] * (2 * n - 2 * j))])
    ones = sum(1 for x in a if abs(x) == 1)
    if a[0] == 2:
        j2 = ones  # number of coordinates equal to +-1 after the leading 2
        if fam == "D" and n % 2 == 1 and j2 == n - 1:
            return _make_piece(lam, [orb([3, 3] + [2] * (n - 3))])
        j = j2 // 2
        extra = 1 if fam == "B" else 0
        if j == 0:
            return _make_piece(lam, [orb([3] + [1] * (2 * n - 3 + extra))])
        return _make_piece(lam, [
            orb([3, 3] + [2] * (2 * j - 2) + [1] * (2 * n - 4 * j - 2 + extra)),
            orb([3] + [2] * (2 * j) + [1] * (2 * n - 4 * j - 3 + extra)),
        ])
    if fam == "D" and ones == n:
        return _make_piece(lam, [orb([2] * n, "I" if a[-1] > 0 else "II")])
    j = ones // 2
    extra = 1 if fam == "B" else 0
    return _make_piece(lam, [orb([2] * (2 * j) + [1] * (2 * n - 4 * j + extra))])


def classical_pieces(lt: LieType) -> list[ReederPiece]:
    """One piece per {lam, -w0 lam}, in the order of the small poset."""
    seen = set()
    out = []
    for lam in enumerate_small(lt).elements:
        if lam.fund in seen:
            continue
        piece = reeder_piece_classical(lt, lam)
        seen.update(s.fund for s in piece.sources)
        out.append(piece)
    return out


def small_nilpotent_orbits(lt: LieType) -> list[OrbitLabel]:
    """Orbit list of the small nilpotent cone, computed without the Reeder engine.

    Types B and D: parts at most 3, with at most two parts equal to 3.
    Type C: parts at most 2. Type A: every partition.
    """
    from .orbits import classical_orbits

    out = []
    for o in classical_orbits(lt):
        parts = o.partition.parts
        if lt.family == "A":
            ok = True
        elif lt.family == "C":
            ok = all(p <= 2 for p in parts)
        else:
            ok = all(p <= 3 for p in parts) and parts.count(3) <= 2
        if ok:
            out.append(o)
    return out


# --- embeddings and the exceptional pipelines ------------------------------

@dataclass(frozen=True)
class SubsystemEmbedding:
    g_type: LieType
    h_type: LieType
    node_map: tuple
    coroot_images: tuple
    mode: str  # "subgroup" or "folding"

    def embed(self, mu: Coweight) -> tuple:
        """Subgroup mode: an H coweight as a G coweight (fundamental coordinates)."""
        if self.mode != "subgroup":
            raise EmbeddingError("embed is only defined in subgroup mode")
        d = mu.datum.fund_to_coroot_frac(mu.fund)
        if any(x.denominator != 1 for x in d):
            raise EmbeddingError(f"{mu} is outside the coroot lattice of {self.h_type}")
        g_rank = self.g_type.rank
        out = [0] * g_rank
        for di, img in zip(d, self.coroot_images):
            for k in range(g_rank):
                out[k] += int(di) * img[k]
        return tuple(out)

    def lift(self, lam: Coweight) -> Coweight:
        """Folding mode: a G coweight as a diagram-stable H coweight."""
        if self.mode != "folding":
            raise EmbeddingError("lift is only defined in folding mode")
        c = [0] * self.h_type.rank
        for g_node, orbit in enumerate(self.node_map):
            for h_node in orbit:
                c[h_node - 1] = lam.fund[g_node]
        return _as_coweight(self.h_type, c)


@lru_cache(maxsize=None)
def build_embedding(g: LieType) -> SubsystemEmbedding:
    gd = build_root_system(g)
    h = paperdata.HOST_TYPE.get(g)
    if h is None:
        raise EmbeddingError(f"no embedding data for {g}")
    hd = build_root_system(h)
    if g in SUBGROUP_NODES:
        nodes = SUBGROUP_NODES[g]
        theta = gd.highest_root
        images, roots = [], []
        for k in nodes:
            if k == 0:
                images.append(tuple(-x for x in gd.highest_short_coroot))
                roots.append(tuple(-x for x in theta))
            else:
                images.append(tuple(gd.cartan[k - 1]))
                roots.append(tuple(1 if i == k - 1 else 0 for i in range(g.rank)))
        cartan = tuple(tuple(sum(a * b for a, b in zip(images[i], roots[j])) for j in range(len(nodes)))
                       for i in range(len(nodes)))
        if cartan != hd.cartan:
            raise EmbeddingError(f"node map for {g} does not reproduce the Cartan matrix of {h}")
        return SubsystemEmbedding(g, h, nodes, tuple(images), "subgroup")
    orbits = FOLDING_NODES[g]
    images = []
    for orbit in orbits:
        img = [0] * h.rank
        for k in orbit:
            for i, x in enumerate(hd.cartan[k - 1]):
                img[i] += x
        images.append(tuple(img))
    for i, oi in enumerate(orbits):
        for j, oj in enumerate(orbits):
            vals = {sum(hd.cartan[k - 1][l - 1] for k in oi) for l in oj}
            if vals != {gd.cartan[i][j]}:
                raise EmbeddingError(f"folding data for {g} does not reproduce its Cartan matrix")
    return SubsystemEmbedding(g, h, orbits, tuple(images), "folding")


def restrict_orbit_members(emb: SubsystemEmbedding, lam: Coweight) -> list[Coweight]:
    """All small H coweights whose image is W-conjugate to lam."""
    if emb.mode != "subgroup":
        raise EmbeddingError("restriction is only defined in subgroup mode")
    gd = build_root_system(emb.g_type)
    out = []
    for mu in enumerate_small(emb.h_type).elements:
        if gd.dominant(emb.embed(mu))[0] == lam.fund:
            out.append(mu)
    return out


def _saturate_all(g: LieType, h_orbits, store) -> list[OrbitLabel]:
    return [store.saturate(g, o) for o in h_orbits]


def reeder_piece_exceptional(g: LieType, lam: Coweight, store=None) -> ReederPiece:
    if g.is_classical:
        raise RootSystemError(f"{g} is classical")
    if not is_small(lam):
        raise NotSmallError(f"{lam} is not small in {g}")
    store = store or paperdata.catalog()
    emb = build_embedding(g)
    if emb.mode == "subgroup":
        h_orbits = []
        for mu in restrict_orbit_members(emb, lam):
            h_orbits.extend(reeder_piece_classical(emb.h_type, mu).orbits)
    else:
        mu = emb.lift(lam)
        if not is_small(mu):
            raise NotSmallError(f"lift {mu} of {lam} is not small in {emb.h_type}")
        h_orbits = list(reeder_piece(emb.h_type, mu, store).orbits)
    return _make_piece(lam, _saturate_all(g, h_orbits, store))


def reeder_piece(lt: LieType, lam: Coweight, store=None) -> ReederPiece:
    if lt.is_classical:
        return reeder_piece_classical(lt, lam)
    return reeder_piece_exceptional(lt, lam, store)


def all_pieces(lt: LieType, store=None) -> list[ReederPiece]:
    seen = set()
    out = []
    for lam in enumerate_small(lt).elements:
        if lam.fund in seen:
            continue
        piece = reeder_piece(lt, lam, store)
        seen.update(s.fund for s in piece.sources)
        out.append(piece)
    return out


# --- the stalk identity ----------------------------------------------------

@dataclass
class StalkCheck:
    g_type: LieType
    lam: Coweight
    x_orbit: OrbitLabel
    lhs: int
    rhs_by_h_orbit: dict = field(default_factory=dict)
    terms: dict = field(default_factory=dict)  # h_orbit -> list of (mu, count, multiplicity)

    @property
    def rhs(self) -> int:
        vals = list(self.rhs_by_h_orbit.values())
        bad = [v for v in vals if v != self.lhs]
        return bad[0] if bad else vals[0]

    @property
    def ok(self) -> bool:
        return bool(self.rhs_by_h_orbit) and all(v == self.lhs for v in self.rhs_by_h_orbit.values())


def fiber_counts(g: LieType, h_orbit: OrbitLabel) -> list[tuple[Coweight, int]]:
    """For x in the given H-orbit: (mu, number of points of the H-fiber over x in Gr_{H,mu})."""
    emb = build_embedding(g)
    out = []
    for mu in enumerate_small(emb.h_type).elements:
        piece = reeder_piece_classical(emb.h_type, mu)
        if h_orbit not in piece.orbits:
            continue
        count = 2 if piece.case == "double" and h_orbit == piece.open_orbit else 1
        out.append((mu, count))
    return out


def stalk_check(g: LieType, lam: Coweight, x_orbit: OrbitLabel, store=None) -> StalkCheck:
    store = store or paperdata.load_tables()
    if g not in SUBGROUP_NODES:
        raise RootSystemError(f"the stalk identity is checked for E6, E7, E8 only, not {g}")
    lhs = sum(paperdata.stalk_value_at_one(x_orbit, s, g, store) for s in store.stalk_sheaves(g))
    emb = build_embedding(g)
    gd = build_root_system(g)
    h_orbits = [r.h_orbit for r in store.saturation_records(g) if r.g_orbit == x_orbit]
    if not h_orbits:
        raise paperdata.MissingRecordError(f"orbit {x_orbit} of {g} meets no small H-orbit")
    check = StalkCheck(g, lam, x_orbit, lhs)
    for h in h_orbits:
        total = 0
        terms = []
        for mu, count in fiber_counts(g, h):
            nu = Coweight(gd.dominant(emb.embed(mu))[0], "fundamental", g)
            m = weight_multiplicity(lam, nu)
            terms.append((mu, count, m))
            total += count * m
        check.rhs_by_h_orbit[h] = total
        check.terms[h] = terms
    return check


def verify_stalk_identity(g: LieType, lam: Coweight, x_orbit: OrbitLabel, store=None) -> tuple[int, int, bool]:
    c = stalk_check(g, lam, x_orbit, store)
    return c.lhs, c.rhs, c.ok


def top_small_coweights(g: LieType) -> list[Coweight]:
    """Maximal elements of the small poset."""
    poset = enumerate_small(g)
    lowers = {lo for _hi, lo in poset.hasse_edges}
    return [poset.elements[i] for i in range(len(poset)) if i not in lowers]


__all__ = [
    "SmallPoset",
    "ReederPiece",
    "SubsystemEmbedding",
    "StalkCheck",
    "enumerate_small",
    "small_closed_form",
    "reeder_piece_classical",
    "reeder_piece_exceptional",
    "reeder_piece",
    "classcalc_piece",
    "classical_pieces",
    "all_pieces",
    "small_nilpotent_orbits",
    "build_embedding",
    "restrict_orbit_members",
    "verify_stalk_identity",
    "stalk_check",
    "fiber_counts",
    "is_small",
    "sl_coweight",
    "top_small_coweights",
]
