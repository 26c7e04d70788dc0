import pytest

from lasagna.diagram import (CrossinglessMatching, DiagramError, TangleDiagram, braid, cap, close,
                             cup, disjoint_union, empty, enumerate_matchings, from_pd, identity,
                             plat, reflect, unknot, unlink)


def test_hopf_writhe_and_components():
    d = from_pd([(1, 3, 2, 4), (3, 1, 4, 2)])
    assert d.writhe == 2
    assert d.n_components() == 2
    assert d.is_closed


def test_label_used_three_times():
    with pytest.raises(DiagramError) as e:
        TangleDiagram([(1, 1, 2, 2), (1, 3, 3, 4)], (), (), (), None, [1, 1])
    assert e.value.rule == "label-occurs-twice"


def test_crossing_arity():
    with pytest.raises(DiagramError) as e:
        TangleDiagram([(1, 2, 3)], (), (), (), None, [1])
    assert e.value.rule == "crossing-arity"


def test_matchings_are_catalan():
    assert [len(enumerate_matchings(n)) for n in range(5)] == [1, 1, 2, 5, 14]


def test_reflect_and_close():
    a = CrossinglessMatching.of([(1, 4), (2, 3)])
    assert reflect(a) == a
    closed = close(identity(4, [1, -1, 1, -1]), a, a)
    assert closed.is_closed and closed.n_components() == 2


def test_braid_and_plat_boundaries():
    b = braid(4, [1, -2, 3])
    assert (b.m, b.n) == (2, 2) and b.n_crossings == 3
    m = CrossinglessMatching.of([(1, 2), (3, 4)])
    up, low = plat([2, 2], m, m, [1, -1, -1, 1], split=1)
    assert (up.m, up.n, low.m, low.n) == (0, 2, 2, 0)


def test_small_constructors():
    assert (cup().m, cup().n) == (0, 1)
    assert (cap().m, cap().n) == (1, 0)
    assert unknot().n_components() == 1
    assert unlink(3).n_components() == 3
    assert empty().arcs() == []
    assert disjoint_union(unknot(), unlink(2)).n_components() == 3


def test_canonical_is_label_independent():
    d = from_pd([(1, 3, 2, 4), (3, 1, 4, 2)])
    e = d.relabeled({1: 11, 2: 12, 3: 13, 4: 14})
    assert d.canonical() == e.canonical()
