"""Acceptance criteria, each at its stated tolerance and time bound.

Every test prints one ``PASS``/``FAIL`` line naming its criterion.
"""

import time
from contextlib import contextmanager
from functools import lru_cache

import pytest

from reederkit import checks, multiplicity, paperdata
from reederkit.multiplicity import weight_multiplicity, zero_weight_dim
from reederkit.orbits import Partition, parse_orbit
from reederkit.reeder import enumerate_small, stalk_check
from reederkit.rootsystem import Coweight, LieType, pairing_two_rho


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(number, title, bound):
        multiplicity.clear_cache()
        paperdata.clear_cache()
        start = time.perf_counter()
        try:
            yield
            elapsed = time.perf_counter() - start
            assert elapsed < bound, f"took {elapsed:.2f}s, bound {bound}s"
        except BaseException as e:
            with capsys.disabled():
                print(f"\nFAIL criterion {number}: {title} ({e})")
            raise
        with capsys.disabled():
            print(f"\nPASS criterion {number}: {title} ({elapsed:.2f}s < {bound}s)")

    return run


def _run_cases(prefix):
    failed = []
    for case in checks.suite_cases(prefix.split(":")[0]):
        if case.startswith(prefix):
            rec = checks.run_case(case)
            if rec.status != "ok":
                failed.append((case, rec.status, rec.outputs))
    return failed


SMALL_COUNTS = {"E6": 8, "E7": 6, "E8": 5, "F4": 4, "G2": 3, "A3": 7, "C4": 5, "B4": 5, "D4": 6}


def test_criterion_1_small_posets(criterion):
    with criterion(1, "small coweight counts and Hasse diagrams", 1.0):
        store = paperdata.load_tables()
        for name, count in SMALL_COUNTS.items():
            lt = LieType.parse(name)
            poset = enumerate_small(lt)
            assert len(poset) == count, name
            funds = [e.fund for e in poset.elements]
            data = store.posets[lt]
            assert set(funds) == set(data.pieces), name
            assert {(funds[a], funds[b]) for a, b in poset.hasse_edges} == set(data.lam_edges), name


DIM_GR = {
    "E6": (48, 48, 46, 46, 42, 32, 22, 0),
    "E7": (76, 66, 54, 52, 34, 0),
    "E8": (136, 114, 92, 58, 0),
    "F4": (30, 22, 16, 0),
    "G2": (10, 6, 0),
}


def test_criterion_2_dim_gr(criterion):
    with criterion(2, "dimension columns of Gr", 1.0):
        for name, col in DIM_GR.items():
            got = tuple(sorted((pairing_two_rho(e) for e in enumerate_small(LieType.parse(name)).elements),
                               reverse=True))
            assert got == col, name


def test_criterion_3_mu_columns(criterion):
    with criterion(3, "restriction reproduces the mu columns", 10.0):
        assert _run_cases("tables:mu_column:") == []


MULT_COLUMNS = {
    ("E6", (3, 0, 0, 0, 0, 0)): [1, 1, 1, 4, 10, 24],
    ("E6", (0, 0, 0, 0, 0, 3)): [1, 1, 1, 4, 10, 24],
    ("E7", (0, 1, 0, 0, 0, 0, 1)): [1, 5, 6, 22, 75, 225],
    ("E8", (0, 1, 0, 0, 0, 0, 0, 0)): [1, 6, 29, 111, 370],
}


def test_criterion_4_multiplicity_columns(criterion):
    with criterion(4, "Freudenthal multiplicity columns", 60.0):
        store = paperdata.load_tables()
        for (name, top), expected in MULT_COLUMNS.items():
            lt = LieType.parse(name)
            lam = Coweight(top, "fundamental", lt)
            column = store.multiplicity_columns(lt)[top]
            got = {mu: weight_multiplicity(lam, Coweight(mu, "fundamental", lt)) for mu in column}
            assert got == column
            assert sorted(got.values()) == expected


def test_criterion_5_stalk_identity(criterion):
    with criterion(5, "stalk identity at q=1 on every orbit row", 60.0):
        store = paperdata.load_tables()
        cases = 0
        for name, tops in (("E6", ((3, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 3))),
                           ("E7", ((0, 1, 0, 0, 0, 0, 1),)), ("E8", ((0, 1, 0, 0, 0, 0, 0, 0),))):
            lt = LieType.parse(name)
            for top in tops:
                lam = Coweight(top, "fundamental", lt)
                for orbit in store.stalk_orbits(lt):
                    c = stalk_check(lt, lam, orbit, store)
                    assert c.rhs_by_h_orbit and set(c.rhs_by_h_orbit.values()) == {c.lhs}, (name, orbit)
                    cases += 1
        assert cases == 29


ZERO_WEIGHT = [
    ("E7", "w2+w7", (120, 105)),
    ("E8", "w2", (210, 160)),
    ("E6", "w4", (30, 15)),
    ("F4", "w2", (8, 1)),
    ("G2", "w1", (2,)),
]


def test_criterion_6_zero_weight_sums(criterion):
    with criterion(6, "zero weight space dimensions", 60.0):
        from reederkit.rootsystem import parse_coweight

        store = paperdata.load_tables()
        stored = {(str(d.lam.lie_type), str(d.lam)): d for d in store.zero_weight}
        for name, lam, summands in ZERO_WEIGHT:
            lt = LieType.parse(name)
            assert zero_weight_dim(parse_coweight(lam, lt)) == sum(summands), (name, lam)
            assert sorted(d for _, d in stored[name, lam].irreps) == sorted(summands)
        for d in store.zero_weight:
            assert zero_weight_dim(d.lam) == d.dimension, (d.lam.lie_type, d.lam)


def test_criterion_7_classical_engine(criterion):
    with criterion(7, "classical pieces for ranks up to 8", 30.0):
        assert _run_cases("poset:classical:") == []


def test_criterion_8_matrix_suite(criterion):
    with criterion(8, "matrix model properties", 120.0):
        assert _run_cases("matrix:") == []


@lru_cache(maxsize=None)
def _standard_tableaux(shape):
    # remove a corner box in every possible way
    if sum(shape) <= 1:
        return 1
    total = 0
    for i, row in enumerate(shape):
        if row and (i + 1 == len(shape) or shape[i + 1] < row):
            smaller = tuple(r for r in shape[:i] + (row - 1,) + shape[i + 1:] if r)
            total += _standard_tableaux(smaller)
    return total


def test_criterion_9_schur_weyl(criterion):
    with criterion(9, "zero weight spaces of type A match Specht dimensions", 10.0):
        cases = 0
        for n in range(1, 9):
            lt = LieType("A", n)
            for lam in enumerate_small(lt).elements:
                a = lam.to("classical").coords
                if a[-1] < -1:
                    continue
                shape = Partition(tuple(x + 1 for x in a))
                assert zero_weight_dim(lam) == _standard_tableaux(shape.parts), (lt, lam)
                cases += 1
        assert cases > 0
        assert _run_cases("poset:schur_weyl:") == []
