import pytest

from lasagna.corpus import CLOSED, square_tangles
from lasagna.diagram import DiagramError, braid, cup, empty, identity, unknot
from lasagna.handles import (HandleScopeError, ModuleRelation, annulus_map, attach_1_handle,
                             attach_2_handle, attach_3_handle, attach_4_handle, braid_consistency,
                             braid_map, check_one_handle_input, closed_braid, inverse_word,
                             one_handle_report)
from lasagna.khovanov import CapExceeded, kh
from lasagna.linalg import GF2, QQ, Field, GradedVectorSpace, SparseMatrix
from lasagna.tqft import FrobeniusSpec

GF2_SPEC = FrobeniusSpec.named("khovanov", GF2)
Q_SPEC = FrobeniusSpec.named("khovanov", QQ)


# -- 1-handles

def test_one_handle_input_rules():
    with pytest.raises(DiagramError) as e:
        check_one_handle_input(cup())
    assert e.value.rule == "square"
    with pytest.raises(DiagramError) as e:
        check_one_handle_input(square_tangles()["twist-1"])
    assert e.value.rule == "orientation"
    with pytest.raises(DiagramError) as e:
        check_one_handle_input(identity(2, [1, 1]))
    assert e.value.rule == "intersection"


def test_one_handle_values():
    assert attach_1_handle(empty()).dims == {(0, 0): 1}
    assert attach_1_handle(identity(2, [1, -1])).dims == {(0, 0): 1, (0, -2): 1}
    r = one_handle_report(braid(2, [1, 1], [1, -1]))
    assert r.agree
    assert r.dims.dims == {(0, 0): 1, (0, -2): 1}


@pytest.mark.parametrize("spec", [GF2_SPEC, Q_SPEC])
def test_one_handle_paths_agree(spec):
    for name in ("identity-2", "middle-twist-2", "braid-2"):
        assert one_handle_report(square_tangles()[name], spec).agree


# -- closed braids and braid maps

def test_closed_braids():
    assert kh(closed_braid(2, [1, 1])[0]) == kh(CLOSED["hopf-pd"]())
    # the standard PD code of the trefoil draws the left-handed one here
    assert kh(closed_braid(2, [-1, -1, -1])[0]) == kh(CLOSED["trefoil-pd"]())
    assert kh(closed_braid(3, [1, 2])[0]) == kh(unknot())
    assert kh(closed_braid(3, [])[0]) == kh(CLOSED["unlink-3"]())
    with pytest.raises(DiagramError):
        closed_braid(2, [2])


def test_inverse_word():
    assert inverse_word([1, -2, 3]) == [-3, 2, -1]


@pytest.mark.parametrize("spec", [GF2_SPEC, Q_SPEC])
def test_braid_maps_are_chain_maps(spec):
    for word, dirs in (([1], [1, 1]), ([-1], [1, -1]), ([1, 2], [1, 1, -1])):
        braid_map(len(dirs), word, spec, dirs).verify()
    annulus_map(1, 0, 1, spec).verify()


@pytest.mark.parametrize("spec", [GF2_SPEC, Q_SPEC])
@pytest.mark.parametrize("level", [(2, 0), (1, 1), (3, 0), (2, 1)])
def test_braid_relations_on_homology(spec, level):
    checks = braid_consistency(*level, spec)
    assert checks and all(checks.values()), checks


# -- 2-handles

def test_two_handle_levels():
    assert attach_2_handle(empty(), unknot(), 0).quotient_dims.dims == {(0, 0): 1}
    p1 = attach_2_handle(empty(), unknot(), 1)
    assert p1.relation_ranks == {} or not any(p1.relation_ranks.values())
    assert p1.quotient_dims.dims == {(0, 0): 3, (0, 2): 2}
    p2 = attach_2_handle(empty(), unknot(), 2)
    # hand-checked: four braid and annulus relations cut 17 generators to 13
    assert p2.generator_dims.dims == {(0, 0): 6, (0, 2): 8, (0, 4): 3}
    assert p2.quotient_dims.dims == {(0, 0): 5, (0, 2): 5, (0, 4): 3}
    assert p2.consistent() and all(p2.checks.values())
    assert p2.chain_maps_verified > 0


def test_two_handle_over_q_and_threads():
    a = attach_2_handle(empty(), unknot(), 2, Q_SPEC)
    b = attach_2_handle(empty(), unknot(), 2, Q_SPEC, threads=4)
    assert a.to_json() == b.to_json()
    assert all(a.checks.values())


def test_two_handle_with_ambient_link():
    hopf = CLOSED["hopf+"]()
    p = attach_2_handle(hopf, unknot(), 1)
    assert p.checks["kunneth"]
    base = attach_2_handle(empty(), unknot(), 1).quotient_dims
    assert p.quotient_dims == kh(hopf).tensor(base)


def test_two_handle_scope():
    with pytest.raises(HandleScopeError):
        attach_2_handle(empty(), CLOSED["trefoil-right"](), 1)
    with pytest.raises(DiagramError):
        attach_2_handle(cup(), unknot(), 1)
    with pytest.raises(CapExceeded):
        attach_2_handle(empty(), unknot(), 5)


# -- 3- and 4-handles

def test_three_handle_quotient():
    F = Field(3)
    module = GradedVectorSpace({(0, 0): 3, (0, 2): 2})
    m = SparseMatrix.from_dense([[1, 1, 0], [0, 1, 0], [0, 0, 1]], F, 3)
    # m - id has rank 1
    assert attach_3_handle(module, [ModuleRelation({(0, 0): m}, 1)]).dims == {(0, 0): 2, (0, 2): 2}
    # epsilon 0: m itself is invertible
    assert attach_3_handle(module, [ModuleRelation({(0, 0): m}, 0)]).dims == {(0, 2): 2}


def test_three_handle_bare_matrix_and_errors():
    F = GF2
    single = GradedVectorSpace({(0, 0): 2})
    assert attach_3_handle(single, [SparseMatrix.from_dense([[1, 1], [0, 0]], F, 2)]).dims == {(0, 0): 1}
    with pytest.raises(ValueError):
        attach_3_handle(GradedVectorSpace({(0, 0): 1, (0, 2): 1}), [SparseMatrix.identity(1, F)])
    with pytest.raises(ValueError):
        attach_3_handle(single, [ModuleRelation({(0, 0): SparseMatrix.identity(3, F)})])


def test_four_handle_is_identity():
    v = kh(CLOSED["figure-eight"]())
    assert attach_4_handle(v) == v


def test_three_handle_trivial_cases():
    F = GF2
    module = GradedVectorSpace({(0, 0): 3})
    assert attach_3_handle(module, []) == module
    ident = ModuleRelation({(0, 0): SparseMatrix.identity(3, F)}, 1)
    assert attach_3_handle(module, [ident]) == module
    projector = SparseMatrix.from_dense([[1, 0, 0], [0, 0, 0], [0, 0, 0]], F, 3)
    assert attach_3_handle(module, [ModuleRelation({(0, 0): projector}, 0)]).dims == {(0, 0): 2}
    assert attach_4_handle(attach_3_handle(module, [])) == module
