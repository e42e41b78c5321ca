import pytest

from reederkit import paperdata
from reederkit.multiplicity import multiplicity_table
from reederkit.orbits import OrbitLabel, Partition, classical_orbits, closure_leq, orbit_dimension, parse_orbit
from reederkit.reeder import (
    FOLDING_NODES,
    NotSmallError,
    SUBGROUP_NODES,
    all_pieces,
    build_embedding,
    classcalc_piece,
    classical_pieces,
    enumerate_small,
    is_small,
    reeder_piece,
    reeder_piece_classical,
    reeder_piece_exceptional,
    restrict_orbit_members,
    small_closed_form,
    small_nilpotent_orbits,
    stalk_check,
    top_small_coweights,
    verify_stalk_identity,
)
from reederkit.rootsystem import (
    Coweight,
    LieType,
    RootSystemError,
    build_root_system,
    fundamental,
    minus_w0,
    pairing_two_rho,
)

A3, B4, C4, D4 = LieType("A", 3), LieType("B", 4), LieType("C", 4), LieType("D", 4)
E6, E7, E8, F4, G2 = (LieType.parse(t) for t in ("E6", "E7", "E8", "F4", "G2"))
CLASSICAL = [LieType(f, r) for f, lo in (("A", 1), ("B", 2), ("C", 2), ("D", 4)) for r in range(lo, 9)]


def cl(lt, *coords):
    return Coweight(coords, "classical", lt)


# --- small coweights -------------------------------------------------------

@pytest.mark.parametrize("lt,count", [(A3, 7), (C4, 5), (B4, 5), (D4, 6), (E6, 8), (E7, 6), (E8, 5),
                                      (F4, 4), (G2, 3), (LieType("A", 1), 2)], ids=str)
def test_small_counts(lt, count):
    assert len(enumerate_small(lt)) == count


def test_small_examples():
    c4 = enumerate_small(C4)
    assert [e.coords for e in c4.elements] == [(1,) * j + (0,) * (4 - j) for j in range(4, -1, -1)]
    assert len(c4.hasse_edges) == 4
    e8 = enumerate_small(E8)
    assert [str(e) for e in e8.elements] == ["w2", "w7", "w1", "w8", "0"]
    assert len(e8.hasse_edges) == 4
    assert {e.coords for e in small_closed_form(B4)} == {(2, 1, 1, 0), (2, 0, 0, 0), (1, 1, 1, 1), (1, 1, 0, 0), (0, 0, 0, 0)}
    assert (1, 1, 1, -1) in {e.coords for e in small_closed_form(D4)}
    assert {e.coords for e in small_closed_form(LieType("A", 2))} == {(2, -1, -1), (1, 1, -2), (1, 0, -1), (0, 0, 0)}
    with pytest.raises(RootSystemError):
        small_closed_form(E6)


def test_rank_bound():
    with pytest.raises(RootSystemError):
        enumerate_small(LieType("A", 13))
    assert len(enumerate_small(LieType("C", 13), max_rank=13)) == 14


@pytest.mark.parametrize("lt", [LieType(f, r) for f, lo in (("A", 1), ("B", 2), ("C", 2), ("D", 4))
                                for r in range(lo, 11)], ids=str)
def test_closed_form_equals_enumeration(lt):
    assert {c.fund for c in small_closed_form(lt)} == {e.fund for e in enumerate_small(lt).elements}


def _twice_coroots(d):
    """Dominant representatives of twice a coroot: at most two W-orbits."""
    out = set()
    for b in d.positive_coroots_fund:
        dom, _ = d.dominant(tuple(2 * x for x in b))
        out.add(dom)
    return out


@pytest.mark.parametrize("lt", [A3, LieType("A", 4), B4, C4, D4, LieType("B", 3), F4, G2, E6, E7], ids=str)
def test_small_means_no_weight_is_twice_a_coroot(lt):
    # independent of the 2*alpha_0 criterion: read the weights off Freudenthal
    d = build_root_system(lt)
    bad = _twice_coroots(d)
    small = {e.fund for e in enumerate_small(lt).elements}
    frontier = set()
    for lam in small:
        table = multiplicity_table(Coweight(lam, "fundamental", lt))
        assert not (set(table.entries) & bad), lam
        for b in d.positive_coroots_fund:
            nu = tuple(x + y for x, y in zip(lam, b))
            if all(x >= 0 for x in nu) and nu not in small:
                frontier.add(nu)
    for nu in frontier:
        table = multiplicity_table(Coweight(nu, "fundamental", lt))
        assert set(table.entries) & bad, nu


@pytest.mark.parametrize("lt", CLASSICAL + [E6, E7, E8, F4, G2], ids=str)
def test_poset_structure(lt):
    poset = enumerate_small(lt)
    d = build_root_system(lt)
    funds = [e.fund for e in poset.elements]
    # downward closed among dominant coroot-lattice coweights
    for lam in funds:
        for b in d.positive_coroots_fund:
            nu = tuple(x - y for x, y in zip(lam, b))
            if all(x >= 0 for x in nu):
                assert nu in funds
    # the involution is an automorphism of the Hasse diagram
    inv = poset.involution
    edges = set(poset.hasse_edges)
    assert {(inv[h], inv[l]) for h, l in edges} == edges
    assert all(inv[inv[i]] == i for i in range(len(poset)))
    assert all(is_small(e) for e in poset.elements)


def test_is_small_rejects():
    assert not is_small(cl(A3, 2, 0, 0, -2))
    assert not is_small(fundamental(E6, (1, 1)))  # outside the coroot lattice
    assert is_small(fundamental(E6, (3, 1)))


def test_d3_is_rejected():
    with pytest.raises(RootSystemError):
        small_closed_form(LieType("D", 3))
    with pytest.raises(RootSystemError):
        reeder_piece_classical(LieType("D", 3), cl(LieType("D", 3), 0, 0, 0))


# --- classical pieces ------------------------------------------------------

def test_classical_piece_examples():
    p = reeder_piece_classical(A3, cl(A3, 2, 0, -1, -1))
    assert p.case == "single" and [str(o) for o in p.orbits] == ["[3 1]"]
    p = reeder_piece_classical(B4, cl(B4, 2, 1, 1, 0))
    assert p.case == "double" and [str(o) for o in p.orbits] == ["[3^2 1^3]", "[3 2^2 1^2]"]
    assert closure_leq(p.orbits[1], p.orbits[0])
    p = reeder_piece_classical(D4, cl(D4, 1, 1, 1, -1))
    assert [str(o) for o in p.orbits] == ["[2^4]_II"]
    p = reeder_piece_classical(D4, cl(D4, 1, 1, 1, 1))
    assert [str(o) for o in p.orbits] == ["[2^4]_I"]
    with pytest.raises(NotSmallError):
        reeder_piece_classical(A3, cl(A3, 2, 0, 0, -2))


@pytest.mark.parametrize("lt", CLASSICAL, ids=str)
def test_engine_matches_closed_form_tables(lt):
    for lam in enumerate_small(lt).elements:
        assert reeder_piece_classical(lt, lam) == classcalc_piece(lt, lam)


@pytest.mark.parametrize("lt", CLASSICAL, ids=str)
def test_pieces_partition_small_cone(lt):
    pieces = classical_pieces(lt)
    seen = []
    for p in pieces:
        lam = p.sources[0]
        assert orbit_dimension(p.open_orbit) == pairing_two_rho(lam)
        if p.case == "double":
            assert minus_w0(lam) == lam and len(p.orbits) == 2
        seen.extend(p.orbits)
    assert len(seen) == len(set(seen))
    assert set(seen) == set(small_nilpotent_orbits(lt))
    # the union is closed downward in the closure order
    everything = classical_orbits(lt)
    for o in seen:
        for other in everything:
            if closure_leq(other, o):
                assert other in seen


@pytest.mark.parametrize("lt", CLASSICAL, ids=str)
def test_sources_agree_iff_dual(lt):
    elements = enumerate_small(lt).elements
    pieces = {e.fund: reeder_piece_classical(lt, e).orbits for e in elements}
    for a in elements:
        for b in elements:
            same = set(pieces[a.fund]) == set(pieces[b.fund])
            assert same == (b == a or b == minus_w0(a))


# --- exceptional pipeline --------------------------------------------------

def test_embedding_examples():
    emb = build_embedding(E7)
    assert emb.h_type == LieType("D", 6) and emb.node_map == (0, 1, 3, 4, 2, 5) and emb.mode == "subgroup"
    assert SUBGROUP_NODES[E8] == (0, 8, 7, 6, 5, 4, 3, 2)
    g2 = build_embedding(G2)
    assert g2.mode == "folding" and g2.lift(fundamental(G2, (1, 1))).coords == (2, 1, 1, 0)
    f4 = build_embedding(F4)
    assert f4.lift(fundamental(F4, (1, 2))) == fundamental(E6, (1, 4))
    assert FOLDING_NODES[F4] == ((2,), (4,), (3, 5), (1, 6))


def test_restriction_examples():
    d6, d8 = LieType("D", 6), LieType("D", 8)
    got = {m.coords for m in restrict_orbit_members(build_embedding(E7), fundamental(E7, (1, 3)))}
    assert got == {(2, 1, 1, 0, 0, 0), (1, 1, 1, 1, 1, 1)}
    got = {m.coords for m in restrict_orbit_members(build_embedding(E8), fundamental(E8, (1, 2)))}
    assert got == {(2, 1, 1, 1, 1, 0, 0, 0), (1,) * 8}
    for g, h in ((E6, LieType("A", 5)), (E7, d6), (E8, d8)):
        zero = Coweight((0,) * g.rank, "fundamental", g)
        assert [m.coords for m in restrict_orbit_members(build_embedding(g), zero)] == [(0,) * h.classical_length]


def test_exceptional_piece_examples():
    p = reeder_piece_exceptional(E6, fundamental(E6, (1, 4)))
    assert p.case == "double" and [str(o) for o in p.orbits] == ["A2", "3A1"]
    p = reeder_piece_exceptional(F4, fundamental(F4, (1, 4)))
    assert p.case == "single" and [str(o) for o in p.orbits] == ["~A1"]
    p = reeder_piece_exceptional(G2, fundamental(G2, (1, 1)))
    assert p.case == "double" and [str(o) for o in p.orbits] == ["G2(a1)", "~A1"]
    with pytest.raises(NotSmallError):
        reeder_piece_exceptional(E6, fundamental(E6, (1, 1)))


@pytest.mark.parametrize("lt,pieces,doubles", [(E6, 6, 1), (E7, 6, 2), (E8, 5, 2), (F4, 4, 1), (G2, 3, 1)], ids=str)
def test_exceptional_piece_counts(lt, pieces, doubles):
    got = all_pieces(lt)
    assert len(got) == pieces
    assert sum(1 for p in got if p.case == "double") == doubles
    for p in got:
        lam = p.sources[0]
        assert orbit_dimension(p.open_orbit) == pairing_two_rho(lam)
        if p.case == "double":
            assert minus_w0(lam) == lam


@pytest.mark.parametrize("lt", [E6, E7, E8, F4, G2], ids=str)
def test_exceptional_pieces_match_drawn_data(lt):
    store = paperdata.load_tables()
    drawn = store.posets[lt].pieces
    for lam in enumerate_small(lt).elements:
        assert set(reeder_piece(lt, lam).orbits) == set(drawn[lam.fund])


# --- stalk identity --------------------------------------------------------

def test_stalk_examples():
    lhs, rhs, ok = verify_stalk_identity(E7, fundamental(E7, (1, 2), (1, 7)), parse_orbit(E7, "(3A1)''"))
    assert (lhs, rhs, ok) == (6, 6, True)
    lhs, rhs, ok = verify_stalk_identity(E6, fundamental(E6, (3, 1)), parse_orbit(E6, "2A2"))
    assert (lhs, rhs, ok) == (1, 1, True)
    c = stalk_check(E8, fundamental(E8, (1, 2)), parse_orbit(E8, "1"))
    assert c.ok and c.lhs >= 370


def test_stalk_rejects_folding_types():
    with pytest.raises(RootSystemError):
        stalk_check(F4, fundamental(F4, (1, 2)), parse_orbit(F4, "A2"))


def test_stalk_unknown_orbit():
    with pytest.raises(paperdata.MissingRecordError):
        stalk_check(E6, fundamental(E6, (3, 1)), OrbitLabel(E6, bala_carter="E6"))


@pytest.mark.parametrize("g", [E6, E7, E8], ids=str)
def test_stalk_identity_all_rows(g):
    store = paperdata.load_tables()
    tops = top_small_coweights(g)
    assert {t.fund for t in tops} == set(store.multiplicity_columns(g))
    for lam in tops:
        for orbit in store.stalk_orbits(g):
            c = stalk_check(g, lam, orbit, store)
            assert c.ok, (str(lam), str(orbit), c.lhs, c.rhs_by_h_orbit)


def test_stalk_identity_detects_a_wrong_multiplicity():
    # swapping the top coweight breaks the identity at a row where the columns differ
    store = paperdata.load_tables()
    bad = [o for o in store.stalk_orbits(E7)
           if not stalk_check(E7, fundamental(E7, (1, 3)), o, store).ok]
    assert bad
