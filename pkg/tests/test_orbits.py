import pytest
from hypothesis import given, strategies as st

from reederkit import exact
from reederkit.matrixmodel import build_nilpotent
from reederkit.orbits import (
    OrbitError,
    OrbitLabel,
    Partition,
    canonical_bala_carter,
    classical_orbit,
    classical_orbits,
    closure_leq,
    hasse_edges,
    is_valid_orbit_partition,
    orbit_dimension,
    parse_orbit,
    parse_partition,
    partitions,
    weighted_dynkin_classical,
    zero_orbit,
)
from reederkit.reeder import classical_pieces, enumerate_small, small_nilpotent_orbits
from reederkit.rootsystem import LieType, minus_w0, pairing_two_rho

B4, C4, D4, A3 = LieType("B", 4), LieType("C", 4), LieType("D", 4), LieType("A", 3)
E6, E7 = LieType("E", 6), LieType("E", 7)


def test_partition_normalization_and_str():
    assert Partition((1, 3, 1, 1, 1, 0, 0)) == Partition((3, 1, 1, 1, 1))
    assert str(Partition((3, 3, 1, 1, 1))) == "[3^2 1^3]"
    assert str(Partition((1,) * 12)) == "[1^{12}]"
    assert Partition((3, 1)).dual() == Partition((2, 1, 1))
    with pytest.raises(OrbitError):
        Partition((2, -1))


@pytest.mark.parametrize("text,parts", [
    ("[3^2 1^3]", (3, 3, 1, 1, 1)),
    ("3^21^3", (3, 3, 1, 1, 1)),
    ("[1^{12}]", (1,) * 12),
    ("3,2,2,1,1", (3, 2, 2, 1, 1)),
    ("3221", (3, 2, 2, 1)),
    ("[]", ()),
])
def test_parse_partition(text, parts):
    assert parse_partition(text).parts == parts


def test_parse_partition_rejects_garbage():
    with pytest.raises(OrbitError):
        parse_partition("[3^x]")


@given(st.lists(st.integers(1, 12), max_size=8))
def test_partition_str_round_trip(parts):
    p = Partition(tuple(parts))
    assert parse_partition(str(p)) == p
    assert p.dual().dual() == p


def test_validity_examples():
    assert is_valid_orbit_partition(B4, Partition((3, 2, 2, 1, 1)))
    assert not is_valid_orbit_partition(C4, Partition((3, 2, 2, 1)))
    assert all(is_valid_orbit_partition(LieType("A", 4), Partition(p)) for p in partitions(5))
    assert not is_valid_orbit_partition(B4, Partition((2, 1) * 3))
    with pytest.raises(OrbitError):
        is_valid_orbit_partition(E6, Partition((1,)))


def test_label_validation():
    with pytest.raises(OrbitError):
        OrbitLabel(D4, Partition((2, 2, 2, 2)))
    with pytest.raises(OrbitError):
        OrbitLabel(D4, Partition((3, 1, 1, 1, 1, 1)), tag="I")
    with pytest.raises(OrbitError):
        OrbitLabel(C4, Partition((3, 2, 2, 1)))
    assert str(parse_orbit(D4, "[2^4]_{II}")) == "[2^4]_II"
    assert parse_orbit(E7, "(3A_1)''").bala_carter == "(3A1)''"
    assert canonical_bala_carter("\\widetilde{A}_1") == "~A1"
    assert zero_orbit(E7).is_zero and zero_orbit(B4).is_zero


def test_dimension_examples():
    assert orbit_dimension(parse_orbit(E7, "A2+A1")) == 76
    assert orbit_dimension(zero_orbit(E6)) == 0
    assert orbit_dimension(classical_orbit(B4, (3, 3, 1, 1, 1))) == 22
    assert orbit_dimension(classical_orbit(B4, (3, 3, 1, 1, 1))) == pairing_two_rho(
        __import__("reederkit").Coweight((2, 1, 1, 0), "classical", B4))
    with pytest.raises(Exception):
        orbit_dimension(parse_orbit(E6, "E6"))


# --- independent oracle: centralizer dimension ------------------------------

def _lie_algebra_constraints(form, n):
    """Rows expressing y^T J + J y = 0 in the n*n entries of y."""
    rows = []
    j = form.matrix
    for a in range(n):
        for b in range(a, n):
            row = [0] * (n * n)
            # (y^T J)[a][b] = sum_k y[k][a] J[k][b];  (J y)[a][b] = sum_k J[a][k] y[k][b]
            for k in range(n):
                row[k * n + a] += j[k][b]
                row[k * n + b] += j[a][k]
            rows.append(row)
    return rows


def centralizer_orbit_dimension(lt, label, seed=0):
    x, form = build_nilpotent(lt, label, seed)
    n = len(x)
    rows = []
    for a in range(n):
        for b in range(n):
            row = [0] * (n * n)
            # (x y - y x)[a][b]
            for k in range(n):
                row[k * n + b] += x[a][k]
                row[a * n + k] -= x[k][b]
            rows.append(row)
    if form is None:
        cent = n * n - exact.rank(rows)
        return (n * n - 1) - (cent - 1)
    cons = _lie_algebra_constraints(form, n)
    g_dim = n * n - exact.rank(cons)
    cent = n * n - exact.rank(rows + cons)
    assert g_dim == lt.dimension
    return g_dim - cent


ORACLE_TYPES = [LieType(*t) for t in [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3),
                                      ("C", 2), ("C", 3), ("D", 4)]]


@pytest.mark.parametrize("lt", ORACLE_TYPES, ids=str)
def test_dimension_formula_matches_centralizer(lt):
    for label in classical_orbits(lt):
        assert orbit_dimension(label) == centralizer_orbit_dimension(lt, label), label


@pytest.mark.parametrize("lt", [B4, C4], ids=str)
def test_dimension_formula_matches_centralizer_small_orbits(lt):
    for label in small_nilpotent_orbits(lt):
        assert orbit_dimension(label) == centralizer_orbit_dimension(lt, label, seed=1), label


# --- closure order ---------------------------------------------------------

def test_closure_examples():
    assert closure_leq(classical_orbit(B4, (3, 2, 2, 1, 1)), classical_orbit(B4, (3, 3, 1, 1, 1)))
    a = classical_orbit(D4, (2, 2, 2, 2), "I")
    b = classical_orbit(D4, (2, 2, 2, 2), "II")
    assert closure_leq(a, a)
    assert not closure_leq(a, b) and not closure_leq(b, a)
    assert closure_leq(classical_orbit(D4, (2, 2, 1, 1, 1, 1)), a)
    assert closure_leq(a, classical_orbit(D4, (3, 1, 1, 1, 1, 1))) is False
    assert closure_leq(parse_orbit(E6, "3A1"), parse_orbit(E6, "2A2"))
    assert not closure_leq(parse_orbit(E6, "2A2"), parse_orbit(E6, "A1"))
    with pytest.raises(OrbitError):
        closure_leq(a, classical_orbit(B4, (1,) * 9))


@pytest.mark.parametrize("lt", [LieType(f, r) for f, lo in (("A", 1), ("B", 2), ("C", 2), ("D", 4))
                                for r in range(lo, 9)], ids=str)
def test_closure_is_partial_order_on_small_cone(lt):
    orbits = small_nilpotent_orbits(lt)
    for a in orbits:
        assert closure_leq(a, a)
        for b in orbits:
            if a != b and closure_leq(a, b):
                assert not closure_leq(b, a)
                assert orbit_dimension(a) < orbit_dimension(b)
    if len(orbits) <= 40:
        for a in orbits:
            for b in orbits:
                if closure_leq(a, b):
                    for c in orbits:
                        if closure_leq(b, c):
                            assert closure_leq(a, c)


def test_hasse_edges_d4():
    orbits = small_nilpotent_orbits(D4)
    edges = {(str(h), str(l)) for h, l in hasse_edges(orbits)}
    assert ("[3^2 1^2]", "[3 2^2 1]") in edges
    assert ("[3 2^2 1]", "[2^4]_I") in edges and ("[3 2^2 1]", "[2^4]_II") in edges
    assert ("[3^2 1^2]", "[2^4]_I") not in edges


# --- weighted Dynkin diagrams ----------------------------------------------

def test_weighted_dynkin_examples():
    assert weighted_dynkin_classical(A3, Partition((2, 1, 1))).coords == (1, 0, 0, -1)
    for lt in (A3, B4, C4, D4):
        assert weighted_dynkin_classical(lt, Partition((1,) * lt.matrix_size)).coords == (0,) * lt.classical_length
    for n in (2, 3, 4, 5):
        lt = LieType("C", n)
        for j in range(n + 1):
            p = Partition((2,) * j + (1,) * (2 * n - 2 * j))
            assert weighted_dynkin_classical(lt, p).coords == (1,) * j + (0,) * (n - j)
    assert weighted_dynkin_classical(D4, Partition((2,) * 4), "II").coords == (1, 1, 1, -1)


@pytest.mark.parametrize("lt", [LieType(f, r) for f, lo in (("A", 1), ("B", 2), ("C", 2), ("D", 4))
                                for r in range(lo, 9)], ids=str)
def test_self_dual_small_coweights_are_weighted_dynkin(lt):
    by_wdd = {}
    for label in classical_orbits(lt):
        by_wdd.setdefault(weighted_dynkin_classical(lt, label).fund, []).append(label)
    for lam in enumerate_small(lt).elements:
        if minus_w0(lam) == lam:
            assert len(by_wdd.get(lam.fund, [])) == 1, lam
    for piece in classical_pieces(lt):
        lam = piece.sources[0]
        if piece.case == "single" and minus_w0(lam) == lam:
            assert weighted_dynkin_classical(lt, piece.open_orbit).fund == lam.fund
