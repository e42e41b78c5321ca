"""Exact matrix models for classical loop group elements.

Elements of the opposite loop group are polynomials in ``u = t^{-1}`` with
matrix coefficients and constant term 1. ``LaurentMatrix`` stores them as a
list of coefficient matrices indexed by the power of ``u``. All arithmetic is
over ``Fraction``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import exact
from .orbits import OrbitLabel, Partition
from .rootsystem import Coweight, LieType


class MatrixModelError(ValueError):
    pass


@dataclass(frozen=True)
class LaurentMatrix:
    size: int
    coeffs: tuple  # coeffs[k] is the coefficient of u^k = t^{-k}

    def __post_init__(self):
        cs = [exact.to_fraction_matrix(c) for c in self.coeffs]
        for c in cs:
            if exact.shape(c) != (self.size, self.size):
                raise MatrixModelError(f"coefficient of shape {exact.shape(c)} in a {self.size}x{self.size} matrix")
        while len(cs) > 1 and exact.is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(tuple(tuple(r) for r in c) for c in cs))

    @classmethod
    def identity(cls, n: int) -> "LaurentMatrix":
        return cls(n, (exact.identity(n),))

    @classmethod
    def from_terms(cls, n: int, terms: dict) -> "LaurentMatrix":
        """Build from {power of u: matrix}; missing powers are zero."""
        top = max(terms) if terms else 0
        cs = [terms.get(k, exact.zeros(n)) for k in range(top + 1)]
        return cls(n, tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return [list(r) for r in self.coeffs[k]]
        return exact.zeros(self.size)

    @property
    def is_normalized(self) -> bool:
        return self.coeff(0) == exact.identity(self.size)

    def __mul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        n = self.size
        out = [exact.zeros(n) for _ in range(self.degree + other.degree + 1)]
        for i, a in enumerate(self.coeffs):
            if exact.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = exact.add(out[i + j], exact.matmul([list(r) for r in a], [list(r) for r in b]))
        return LaurentMatrix(n, tuple(out))

    def __eq__(self, other):
        return isinstance(other, LaurentMatrix) and self.size == other.size and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.size, self.coeffs))

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix(self.size, tuple(exact.transpose([list(r) for r in c]) for c in self.coeffs))

    def theta(self) -> "LaurentMatrix":
        """Substitute t -> -t."""
        return LaurentMatrix(self.size, tuple(exact.scale((-1) ** k, [list(r) for r in c])
                                              for k, c in enumerate(self.coeffs)))

    def evaluate(self, u) -> list:
        u = Fraction(u)
        out = exact.zeros(self.size)
        for k, c in enumerate(self.coeffs):
            out = exact.add(out, exact.scale(u ** k, [list(r) for r in c]))
        return out


@dataclass(frozen=True)
class BilinearForm:
    gram: tuple

    def __post_init__(self):
        g = exact.to_fraction_matrix(self.gram)
        object.__setattr__(self, "gram", tuple(tuple(r) for r in g))
        if exact.det(g) == 0:
            raise MatrixModelError("degenerate bilinear form")
        if self.kind is None:
            raise MatrixModelError("form is neither symmetric nor alternating")

    @property
    def matrix(self):
        return [list(r) for r in self.gram]

    @property
    def kind(self):
        g = self.matrix
        t = exact.transpose(g)
        if t == g:
            return "symmetric"
        if t == exact.scale(-1, g):
            return "alternating"
        return None

    def adjoint(self, x):
        """The adjoint x* with (x v, w) = (v, x* w)."""
        g = self.matrix
        return exact.matmul(exact.inverse(g), exact.matmul(exact.transpose(x), g))

    def is_skew(self, x) -> bool:
        """x is anti-self-adjoint: x^T J + J x = 0."""
        g = self.matrix
        return exact.is_zero(exact.add(exact.matmul(exact.transpose(x), g), exact.matmul(g, x)))

    def preserves(self, g: LaurentMatrix) -> bool:
        """g^T J g = J as a polynomial identity in u."""
        lhs = g.transpose() * LaurentMatrix(len(self.gram), (self.matrix,)) * g
        return lhs == LaurentMatrix(len(self.gram), (self.matrix,))


# --- nilpotent representatives ---------------------------------------------

def jordan_type(x) -> Partition:
    n = len(x)
    ranks = [n]
    p = exact.identity(n)
    for _ in range(n):
        p = exact.matmul(p, x)
        ranks.append(exact.rank(p))
        if ranks[-1] == 0:
            break
    if ranks[-1] != 0:
        raise MatrixModelError("matrix is not nilpotent")
    # number of parts >= s is rank(x^{s-1}) - rank(x^s)
    at_least = [ranks[s - 1] - ranks[s] for s in range(1, len(ranks))]
    parts = []
    for s, cnt in enumerate(at_least, start=1):
        nxt = at_least[s] if s < len(at_least) else 0
        parts.extend([s] * (cnt - nxt))
    return Partition(tuple(parts))


def _shift_block(b: int):
    m = exact.zeros(b)
    for i in range(b - 1):
        m[i][i + 1] = Fraction(1)
    return m


def _single_block(b: int):
    """Nilpotent Jordan block with an antidiagonal form making it anti-self-adjoint."""
    k = exact.zeros(b)
    for i in range(b):
        k[i][b - 1 - i] = Fraction((-1) ** i)
    return _shift_block(b), k


def _paired_block(b: int, eps: int):
    a = _shift_block(b)
    x = exact.zeros(2 * b)
    g = exact.zeros(2 * b)
    for i in range(b):
        for j in range(b):
            x[i][j] = a[i][j]
            x[b + i][b + j] = -a[j][i]
        g[i][b + i] = Fraction(1)
        g[b + i][i] = Fraction(eps)
    return x, g


def _block_diag(blocks):
    n = sum(len(b) for b in blocks)
    out = exact.zeros(n)
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                out[off + i][off + j] = v
        off += len(b)
    return out


def _random_invertible(n: int, rng: random.Random):
    while True:
        m = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        for i in range(n):
            m[i][i] += 3
        if exact.det(m) != 0:
            return m


def _cayley(form: BilinearForm, rng: random.Random):
    """A random group element (I - a)^{-1} (I + a) with a anti-self-adjoint."""
    g = form.matrix
    n = len(g)
    sym = form.kind == "alternating"
    while True:
        s = exact.zeros(n)
        for i in range(n):
            for j in range(i, n):
                if rng.random() < 0.4:
                    v = Fraction(rng.randint(-2, 2))
                    if i == j and not sym:
                        continue
                    s[i][j] = v
                    s[j][i] = v if sym else -v
        a = exact.matmul(exact.inverse(g), s)
        i_minus = exact.sub(exact.identity(n), a)
        if exact.det(i_minus) == 0:
            continue
        return exact.matmul(exact.inverse(i_minus), exact.add(exact.identity(n), a))


def build_nilpotent(lt: LieType, label: OrbitLabel | Partition, seed: int = 0):
    """A random rational representative of a nilpotent orbit.

    Returns ``(x, form)``; ``form`` is None in type A. For B, C, D the matrix
    is anti-self-adjoint for the returned form.
    """
    if isinstance(label, Partition):
        label = OrbitLabel(lt, partition=label)
    if label.lie_type != lt or not lt.is_classical:
        raise MatrixModelError(f"{label} is not a classical orbit of {lt}")
    rng = random.Random(seed)
    parts = list(label.partition.parts)
    n = lt.matrix_size
    if lt.family == "A":
        x = _block_diag([_shift_block(b) for b in parts]) if parts else exact.zeros(n)
        p = _random_invertible(n, rng)
        return exact.matmul(exact.matmul(p, x), exact.inverse(p)), None
    eps = -1 if lt.family == "C" else 1
    xs, gs = [], []
    remaining = sorted(parts, reverse=True)
    while remaining:
        b = remaining.pop(0)
        if remaining and remaining[0] == b:
            remaining.pop(0)
            x, g = _paired_block(b, eps)
        else:
            x, g = _single_block(b)
        xs.append(x)
        gs.append(g)
    x = _block_diag(xs)
    form = BilinearForm(_block_diag(gs))
    if form.kind != ("alternating" if lt.family == "C" else "symmetric") or not form.is_skew(x):
        raise MatrixModelError(f"block model failed for {label}")
    c = _cayley(form, rng)
    x = exact.matmul(exact.matmul(c, x), exact.inverse(c))
    if not form.is_skew(x):
        raise MatrixModelError("conjugation left the Lie algebra")
    return x, form


# --- loop group operations -------------------------------------------------

def _det_is_one(g: LaurentMatrix) -> bool:
    pts = g.size * g.degree + 1
    return all(exact.det(g.evaluate(k)) == 1 for k in range(1, pts + 1))


def block_toeplitz_rank(g: LaurentMatrix, s: int) -> int:
    """Rank of the s x s block upper triangular Toeplitz matrix built from the lowest t-powers."""
    d = g.degree
    n = g.size
    big = exact.zeros(n * s)
    for bi in range(s):
        for bj in range(bi, s):
            k = d - (bj - bi)  # power of u, i.e. t-power -d + (bj - bi)
            if k < 0:
                continue
            c = g.coeff(k)
            for i in range(n):
                for j in range(n):
                    big[bi * n + i][bj * n + j] = c[i][j]
    return exact.rank(big)


def coweight_of_element(g: LaurentMatrix) -> Coweight:
    """Dominant SL_n coweight of the double coset containing g."""
    n = g.size
    if not _det_is_one(g):
        raise MatrixModelError("determinant is not 1")
    d = g.degree
    if d == 0:
        return Coweight((0,) * n, "classical", LieType("A", n - 1))
    low = -d
    counts = []
    prev_r, prev_diff = 0, 0
    s = 0
    limit = n * d + 2
    while sum(counts) < n:
        s += 1
        if s > limit:
            raise MatrixModelError("rank sequence did not saturate")
        r = block_toeplitz_rank(g, s)
        diff = r - prev_r
        c = diff - prev_diff
        if c < 0 or diff > n:
            raise MatrixModelError("inconsistent rank sequence")
        counts.append(c)
        prev_r, prev_diff = r, diff
    b = []
    for k, c in enumerate(counts):
        b.extend([k] * c)
    a = tuple(sorted((x + low for x in b), reverse=True))
    if sum(a) != 0:
        raise MatrixModelError(f"recovered coweight {a} does not sum to zero")
    return Coweight(a, "classical", LieType("A", n - 1))


def iota(g: LaurentMatrix, bound: int | None = None) -> LaurentMatrix:
    """theta(g)^{-1}, inverted degree by degree.

    ``bound`` caps the degree of the inverse. The default is the larger of
    four times the degree of g and (n-1) times it, the adjugate bound for
    determinant one. Exceeding it is an error, never a silent truncation.
    """
    if not g.is_normalized:
        raise MatrixModelError("iota expects constant term 1")
    n = g.size
    y = g.theta()
    d = y.degree
    if d == 0:
        return LaurentMatrix.identity(n)
    bound = max(4 * d, (n - 1) * d) if bound is None else bound
    h = [exact.identity(n)]
    zeros_run = 0
    k = 0
    while zeros_run < d:
        k += 1
        if k > bound + d:
            raise MatrixModelError(f"inverse has support beyond degree {bound}")
        acc = exact.zeros(n)
        for i in range(1, min(k, d) + 1):
            acc = exact.sub(acc, exact.matmul(y.coeff(i), h[k - i]))
        h.append(acc)
        zeros_run = zeros_run + 1 if exact.is_zero(acc) else 0
    out = LaurentMatrix(n, tuple(h))
    if out.degree > bound:
        raise MatrixModelError(f"inverse has support beyond degree {bound}")
    return out


def pi_dagger(g: LaurentMatrix):
    if not g.is_normalized:
        raise MatrixModelError("pi_dagger expects constant term 1")
    return g.coeff(1)


def exp_nilpotent(x, max_power: int | None = None) -> LaurentMatrix:
    """exp(x u) for nilpotent x."""
    n = len(x)
    terms = {0: exact.identity(n)}
    p = exact.identity(n)
    fact = 1
    for k in range(1, (max_power or n) + 1):
        p = exact.matmul(p, x)
        if exact.is_zero(p):
            break
        fact *= k
        terms[k] = exact.scale(Fraction(1, fact), p)
    return LaurentMatrix.from_terms(n, terms)


def one_plus(x, power: int = 1) -> LaurentMatrix:
    n = len(x)
    return LaurentMatrix.from_terms(n, {0: exact.identity(n), power: x})


def minnotsmall_element() -> LaurentMatrix:
    """An SL_2 element whose projection is semisimple, not nilpotent."""
    return LaurentMatrix.from_terms(2, {
        0: [[1, 0], [0, 1]],
        1: [[1, 0], [1, -1]],
        2: [[0, 1], [0, 1]],
    })


# --- splitting x^2 ---------------------------------------------------------

def x2_decomposition(x, form: BilinearForm):
    """Split x^2 = y1 + y2 along the two isotropic lines of the induced form on im(x^2).

    The induced form is <x^2 v, x^2 w> = (v, x^2 w). Lines are ordered by
    their normalized spanning vectors, lexicographically smallest first.
    """
    n = len(x)
    if not form.is_skew(x):
        raise MatrixModelError("x is not anti-self-adjoint")
    x2 = exact.matmul(x, x)
    if not exact.is_zero(exact.matmul(x2, x)):
        raise MatrixModelError("x^3 is not zero")
    if exact.rank(x2) != 2:
        raise MatrixModelError("rank of x^2 is not 2")
    red, pivots = exact.row_echelon(x2)
    # preimages: unit vectors at pivot columns of x2 give a basis of the image
    vs = []
    for p in pivots:
        v = [Fraction(0)] * n
        v[p] = Fraction(1)
        vs.append(v)
    us = [[sum((x2[i][j] * v[j] for j in range(n)), Fraction(0)) for i in range(n)] for v in vs]
    j = form.matrix

    def pair(v, w):
        return sum((v[i] * j[i][k] * w[k] for i in range(n) for k in range(n) if v[i] and j[i][k] and w[k]), Fraction(0))

    m = [[pair(vs[a], us[b]) for b in range(2)] for a in range(2)]
    p, q, r = m[0][0], m[0][1], m[1][1]
    if m[0][1] != m[1][0]:
        raise MatrixModelError("induced form is not symmetric")
    disc = q * q - p * r
    if disc == 0:
        raise MatrixModelError("induced form is degenerate")
    root = exact.frac_sqrt(disc)
    if root is None:
        raise MatrixModelError("isotropic lines are not defined over the rationals")
    if p != 0:
        coords = [((-q + root) / p, Fraction(1)), ((-q - root) / p, Fraction(1))]
    elif r != 0:
        coords = [(Fraction(1), Fraction(0)), (r, -2 * q)]
    else:
        coords = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
    lines = []
    for al, be in coords:
        w = [al * us[0][i] + be * us[1][i] for i in range(n)]
        lines.append((exact.normalize_line(w), (al, be)))
    lines.sort(key=lambda t: t[0])
    (w1, c1), (w2, c2) = lines
    # projection onto line k along the other, in the (u0, u1) coordinates
    basis = [[c1[0], c2[0]], [c1[1], c2[1]]]
    inv = exact.inverse(basis)
    ys = []
    for k, c in enumerate((c1, c2)):
        # coordinate of u_a along line k is inv[k][a]
        y = exact.zeros(n)
        # x2 v = sum_a lambda_a(v) u_a, with lambda read off through the echelon form
        for col in range(n):
            lam = [red[a][col] for a in range(2)]
            t = inv[k][0] * lam[0] + inv[k][1] * lam[1]
            if t == 0:
                continue
            for i in range(n):
                y[i][col] = t * (c[0] * us[0][i] + c[1] * us[1][i])
        ys.append(y)
    y1, y2 = ys
    if exact.add(y1, y2) != x2:
        raise MatrixModelError("split does not sum to x^2")
    return y1, y2


__all__ = [
    "LaurentMatrix",
    "BilinearForm",
    "MatrixModelError",
    "build_nilpotent",
    "jordan_type",
    "coweight_of_element",
    "iota",
    "x2_decomposition",
    "pi_dagger",
    "exp_nilpotent",
    "one_plus",
    "minnotsmall_element",
    "block_toeplitz_rank",
]
