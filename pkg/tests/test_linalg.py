import random
from fractions import Fraction

import pytest

from lasagna import oracles
from lasagna.linalg import (GF2, QQ, ChainComplex, ChainComplexError, ChainMap, Field,
                            GradedVectorSpace, Homology, SparseMatrix, coequalizer,
                            gaussian_simplify, induced_map)


def test_field_parse_and_arithmetic():
    assert Field.parse("Q") == QQ
    assert Field.parse("GF(3)") == Field(3)
    assert Field.parse("F5").characteristic == 5
    assert Field.parse(2) == GF2
    with pytest.raises(ValueError):
        Field(4)
    F = Field(7)
    assert F.mul(3, F.inv(3)) == 1
    assert QQ.inv(3) == Fraction(1, 3)
    assert F(Fraction(1, 2)) == 4


@pytest.mark.parametrize("field", [GF2, Field(3), QQ])
def test_rank_matches_sympy(field):
    rng = random.Random(7)
    for _ in range(40):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        dense = [[rng.randint(-2, 2) for _ in range(c)] for _ in range(r)]
        m = SparseMatrix.from_dense([[field(x) for x in row] for row in dense], field, c)
        assert m.rank() == oracles.rank(dense, field)
        assert len(m.kernel()) == c - m.rank()


def _complex(field):
    # C^0 = <a>, C^1 = <b, c>, C^2 = <e>; d(a) = b + c, d(b) = d(c) = e
    one = field.one
    d0 = SparseMatrix(2, 1, field, [{0: one, 1: one}])
    d1 = SparseMatrix(1, 2, field, [{0: one}, {0: field.neg(one)}])
    return ChainComplex(field, {0: ["a"], 1: ["b", "c"], 2: ["e"]},
                        {0: [0], 1: [0, 0], 2: [0]}, {0: d0, 1: d1})


@pytest.mark.parametrize("field", [GF2, QQ])
def test_homology_of_small_complex(field):
    assert Homology(_complex(field)).dims.total == 0
    # multiplication by 2 is exact over Q only
    two = SparseMatrix(1, 1, field, [{0: field(2)}] if field(2) else [{}])
    c = ChainComplex(field, {0: ["a"], 1: ["b"]}, {0: [0], 1: [0]}, {0: two})
    assert Homology(c).dims.dims == ({} if field is QQ else {(0, 0): 1, (1, 0): 1})
    assert c.euler_characteristic() == {}


def test_dd_nonzero_is_rejected():
    F = QQ
    d0 = SparseMatrix(1, 1, F, [{0: F.one}])
    d1 = SparseMatrix(1, 1, F, [{0: F.one}])
    with pytest.raises(ChainComplexError):
        ChainComplex(F, {0: ["a"], 1: ["b"], 2: ["c"]}, {0: [0], 1: [0], 2: [0]}, {0: d0, 1: d1})


def test_gaussian_simplify_preserves_homology():
    rng = random.Random(3)
    F = GF2
    for _ in range(20):
        n0, n1, n2 = rng.randint(1, 4), rng.randint(1, 5), rng.randint(1, 4)
        # d1 d0 = 0 by building d0 from the kernel of a random d1
        d1 = SparseMatrix.from_dense([[rng.randint(0, 1) for _ in range(n1)] for _ in range(n2)], F, n1)
        ker = d1.kernel()
        cols = [ker[rng.randrange(len(ker))] if ker and rng.random() < 0.7 else {} for _ in range(n0)]
        d0 = SparseMatrix(n1, n0, F, cols)
        c = ChainComplex(F, {0: range(n0), 1: range(n1), 2: range(n2)},
                         {0: [0] * n0, 1: [0] * n1, 2: [0] * n2}, {0: d0, 1: d1})
        s = gaussian_simplify(c)
        assert Homology(s.reduced).dims == Homology(c).dims
        s.projection_map().verify()
        s.inclusion_map().verify()


def test_identity_induces_identity():
    c = _complex(GF2)
    f = ChainMap.identity(c)
    for m in induced_map(f).values():
        assert m == SparseMatrix.identity(m.rows, GF2)


def test_coequalizer_dimension():
    F = QQ
    f = SparseMatrix.from_dense([[1, 0], [0, 1], [0, 0]], F, 2)
    g = SparseMatrix.from_dense([[0, 0], [1, 0], [0, 1]], F, 2)
    # target / span(e0 - e1, e1 - e2)
    assert coequalizer(f, g).dim == 1


def test_graded_vector_space():
    v = GradedVectorSpace({(0, 1): 1, (0, -1): 1})
    w = v.tensor(v)
    assert w.dims == {(0, 2): 1, (0, 0): 2, (0, -2): 1}
    assert v.poincare() == "t^0 q^1 + t^0 q^-1"
    assert v.shift(1, 2).dims == {(1, 3): 1, (1, 1): 1}
    assert GradedVectorSpace({(1, 3): 2}).euler_characteristic() == {3: -2}
    assert v.to_records() == [[0, -1, 1], [0, 1, 1]]
