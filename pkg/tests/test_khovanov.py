import pytest

from lasagna import oracles
from lasagna.corpus import CLOSED, move_pairs
from lasagna.diagram import empty, unknot
from lasagna.handles import closed_braid
from lasagna.khovanov import (CapExceeded, MoveNotApplicable, cobordism_map, jones, kh,
                              laurent_text, reidemeister_map)
from lasagna.linalg import GF2, QQ, Homology, induced_map
from lasagna.tqft import FrobeniusSpec

KHOVANOV_Q = FrobeniusSpec.named("khovanov", QQ)


def test_unknot_and_empty():
    assert kh(unknot()).dims == {(0, 1): 1, (0, -1): 1}
    assert kh(empty()).dims == {(0, 0): 1}


def test_trefoil():
    d = CLOSED["trefoil-right"]()
    # over GF2 the torsion of the integral theory doubles the t = 2, 3 part
    assert kh(d).dims == {(0, 1): 1, (0, 3): 1, (2, 5): 1, (2, 7): 1, (3, 7): 1, (3, 9): 1}
    assert kh(d, KHOVANOV_Q).dims == {(0, 1): 1, (0, 3): 1, (2, 5): 1, (3, 9): 1}
    assert laurent_text(jones(d)) == "-q^9 + q^5 + q^3 + q^1"


def test_hopf_links():
    assert kh(CLOSED["hopf+"]()).dims == {(0, 0): 1, (0, 2): 1, (2, 4): 1, (2, 6): 1}
    assert kh(CLOSED["hopf-"]()).dims == {(0, 0): 1, (0, -2): 1, (-2, -4): 1, (-2, -6): 1}
    assert kh(CLOSED["hopf-pd"]()) == kh(CLOSED["hopf+"]())


@pytest.mark.parametrize("name", sorted(CLOSED))
def test_euler_characteristic_is_jones(name):
    d = CLOSED[name]()
    ref = oracles.state_sum_jones(d)
    assert jones(d) == ref
    assert kh(d).euler_characteristic() == ref
    assert kh(d, KHOVANOV_Q).euler_characteristic() == ref


@pytest.mark.parametrize("name", ["trefoil-right", "figure-eight", "hopf+", "borromean"])
def test_deformed_theories_have_rank_two_to_the_components(name):
    d = CLOSED[name]()
    expect = 2 ** d.n_components()
    assert kh(d, FrobeniusSpec.named("lee", QQ)).total == expect
    assert kh(d, FrobeniusSpec.named("bar-natan", GF2)).total == expect


def test_threads_do_not_change_results():
    d = CLOSED["torus-3-4"]()
    assert kh(d, threads=1) == kh(d, threads=4)


def test_crossing_cap():
    big = closed_braid(2, [1] * 15)[0]
    with pytest.raises(CapExceeded):
        kh(big)
    with pytest.raises(CapExceeded):
        jones(big)


def test_move_pairs_agree():
    pairs = move_pairs()
    assert len(pairs) >= 20
    for desc, d1, d2 in pairs:
        assert kh(d1) == kh(d2), desc


def _is_iso(f):
    hs, ht = Homology(f.source), Homology(f.target)
    return hs.dims == ht.dims and all(m.rank() == m.rows == m.cols for m in induced_map(f, hs, ht).values())


@pytest.mark.parametrize("spec", [FrobeniusSpec.named("khovanov"), KHOVANOV_Q])
def test_reidemeister_maps_are_equivalences(spec):
    d = CLOSED["trefoil-right"]()
    arc = sorted(d.arcs())[0]
    for move, loc in (("R1+", (arc, 1)), ("R1-", (arc, -1)), ("R2", tuple(sorted(d.arcs())[:2]))):
        try:
            eq = reidemeister_map(move, loc, d, spec, add=True)
        except MoveNotApplicable:
            continue
        eq.to_small.verify()
        eq.to_big.verify()
        assert _is_iso(eq.to_small) and _is_iso(eq.to_big)
    with pytest.raises(MoveNotApplicable):
        reidemeister_map("R3", 0, d)


def test_birth_and_death_maps():
    birth = cobordism_map(empty(), ["birth"])
    ((deg, m),) = induced_map(birth.map).items()
    assert deg == (0, 0) and m.rank() == 1
    death = cobordism_map(unknot(), ["death 0"])
    assert sum(m.rank() for m in induced_map(death.map).values()) == 1
