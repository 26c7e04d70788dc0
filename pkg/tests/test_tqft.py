import pytest

from lasagna import oracles
from lasagna.linalg import GF2, QQ, Field
from lasagna.tqft import (THEORIES, CobordismEvent, FrobeniusSpec, apply_events,
                          evaluate_closed_surface, event_matrix, frobenius_axiom_failures)

FIELDS = [GF2, Field(3), QQ]


@pytest.mark.parametrize("field", FIELDS)
@pytest.mark.parametrize("name", sorted(THEORIES))
def test_axioms_and_oracle(name, field):
    spec = FrobeniusSpec.named(name, field)
    assert frobenius_axiom_failures(spec) == []
    assert oracles.frobenius_mismatches(spec) == []


def test_sphere_values():
    # eps(X^d): X^2 = 0, X^2 = 1 and X^2 = X respectively
    expect = {"khovanov": [0, 1, 0, 0, 0], "lee": [0, 1, 0, 1, 0], "bar-natan": [0, 1, 1, 1, 1]}
    for name, vals in expect.items():
        spec = FrobeniusSpec.named(name, QQ)
        assert [evaluate_closed_surface(0, d, spec) for d in range(5)] == vals


def test_named_aliases_and_errors():
    assert FrobeniusSpec.named("BarNatan").name == "bar-natan"
    assert FrobeniusSpec.named("khovanov").graded
    assert not FrobeniusSpec.named("lee").graded
    with pytest.raises(ValueError):
        FrobeniusSpec.named("odd")
    with pytest.raises(ValueError):
        evaluate_closed_surface(1, 0, FrobeniusSpec.named("khovanov"))
    with pytest.raises(ValueError):
        CobordismEvent("merge", (0, 0))


def test_neck_cutting_on_khovanov():
    # a tube (split then merge) is 2 X on A
    spec = FrobeniusSpec.named("khovanov", QQ)
    ev = [CobordismEvent("split", (0,)), CobordismEvent("merge", (0, 1))]
    assert apply_events(ev, spec, {(0,): QQ.one}) == {(1,): 2}
    assert apply_events(ev, spec, {(1,): QQ.one}) in ({}, {(1,): 0})


def test_event_matrix_shape():
    spec = FrobeniusSpec.named("khovanov")
    assert event_matrix(CobordismEvent("merge", (0, 1)), spec, 2).shape == (2, 4)
    assert event_matrix(CobordismEvent("birth"), spec, 1).shape == (4, 2)


def test_merge_matrix_entries_and_rank():
    # three nonzero entries (1.1, 1.X, X.1) but rank 2
    m = event_matrix(CobordismEvent("merge", (0, 1)), FrobeniusSpec.named("khovanov"), 2)
    assert m.nnz == 3
    assert m.rank() == 2
    assert oracles.rank(m.to_dense(), GF2) == 2
