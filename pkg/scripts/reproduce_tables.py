"""Recompute the exceptional-type tables from scratch and print them as text.

    python3 scripts/reproduce_tables.py            # everything
    python3 scripts/reproduce_tables.py pieces E8  # one section, one type

Values printed here are computed; the embedded data is consulted only for
orbit names and dimensions of exceptional orbits and for stalk polynomials.
"""

import argparse

from reederkit import paperdata
from reederkit.multiplicity import weight_multiplicity, zero_weight_dim
from reederkit.orbits import orbit_dimension
from reederkit.reeder import all_pieces, build_embedding, enumerate_small, restrict_orbit_members, stalk_check
from reederkit.rootsystem import Coweight, LieType, pairing_two_rho

EXCEPTIONAL = ["E6", "E7", "E8", "F4", "G2"]


def section_pieces(lt, store):
    print(f"== {lt}: small coweights, dim Gr, restricted coweights, pieces")
    emb = build_embedding(lt)
    pieces = {s.fund: p for p in all_pieces(lt, store) for s in p.sources}
    for lam in enumerate_small(lt).elements:
        if emb.mode == "subgroup":
            mus = sorted({str(mu) for mu in restrict_orbit_members(emb, lam)})
        else:
            mus = [str(emb.lift(lam))]
        p = pieces[lam.fund]
        orbits = ", ".join(f"{o} ({orbit_dimension(o)})" for o in p.orbits)
        print(f"  {str(lam):>10}  dim {pairing_two_rho(lam):>3}  {p.case:6}  {orbits}")
        for mu in mus:
            print(f"  {'':>10}  via {mu}")


def section_mult(lt, store):
    if lt.family != "E":
        return
    print(f"== {lt}: weight multiplicities in the stalk tables")
    for top, column in store.multiplicity_columns(lt).items():
        lam = Coweight(top, "fundamental", lt)
        for mu in sorted(column, key=lambda m: -pairing_two_rho(Coweight(m, "fundamental", lt))):
            print(f"  V_{lam}  mu={Coweight(mu, 'fundamental', lt)}  {weight_multiplicity(lam, Coweight(mu, 'fundamental', lt))}")


def section_stalk(lt, store):
    if lt.family != "E":
        return
    print(f"== {lt}: stalk identity at q=1")
    for top in store.multiplicity_columns(lt):
        lam = Coweight(top, "fundamental", lt)
        for orbit in store.stalk_orbits(lt):
            c = stalk_check(lt, lam, orbit, store)
            ok = set(c.rhs_by_h_orbit.values()) == {c.lhs}
            print(f"  top {lam}  orbit {str(orbit):>12}  lhs {c.lhs:>4}  rhs {c.rhs:>4}  {'ok' if ok else 'MISMATCH'}")


def section_zero(lt, store):
    print(f"== {lt}: zero weight space dimensions")
    for d in store.zero_weight:
        if d.lam.lie_type == lt:
            parts = " + ".join(f"{name}:{dim}" for name, dim in d.irreps)
            print(f"  {str(d.lam):>10}  {zero_weight_dim(d.lam):>4}  ({parts})")


SECTIONS = {"pieces": section_pieces, "mult": section_mult, "stalk": section_stalk, "zero": section_zero}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("section", nargs="?", choices=sorted(SECTIONS) + ["all"], default="all")
    ap.add_argument("types", nargs="*", default=EXCEPTIONAL)
    args = ap.parse_args()
    store = paperdata.load_tables()
    names = sorted(SECTIONS) if args.section == "all" else [args.section]
    for name in args.types:
        lt = LieType.parse(name)
        for section in names:
            SECTIONS[section](lt, store)


if __name__ == "__main__":
    main()
