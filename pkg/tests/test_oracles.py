from fractions import Fraction

from lasagna import oracles
from lasagna.corpus import CLOSED
from lasagna.diagram import empty, unknot, unlink
from lasagna.linalg import GF2, QQ, Field


def test_state_sum_small_cases():
    assert oracles.state_sum_jones(empty()) == {0: 1}
    assert oracles.state_sum_jones(unknot()) == {-1: 1, 1: 1}
    assert oracles.state_sum_jones(unlink(2)) == {-2: 1, 0: 2, 2: 1}
    # positive Hopf link: q^0 + q^2 + q^4 + q^6 with this normalization
    assert oracles.state_sum_jones(CLOSED["hopf+"]()) == {0: 1, 2: 1, 4: 1, 6: 1}


def test_state_sum_mirror():
    right = oracles.state_sum_jones(CLOSED["trefoil-right"]())
    left = oracles.state_sum_jones(CLOSED["trefoil-left"]())
    assert left == {-k: v for k, v in right.items()}


def test_matchings_and_dimensions():
    assert [len(oracles.noncrossing_matchings(n)) for n in range(5)] == [1, 1, 2, 5, 14]
    assert [oracles.arc_algebra_dimension(n) for n in range(4)] == [1, 2, 12, 104]


def test_rank():
    assert oracles.rank([[1, 1], [1, 1]], GF2) == 1
    assert oracles.rank([[2, 0], [0, 1]], GF2) == 1
    assert oracles.rank([[2, 0], [0, 1]], QQ) == 2
    assert oracles.rank([[Fraction(1, 2), 1], [1, 2]], QQ) == 1
    assert oracles.rank([[1, 2], [2, 4]], Field(3)) == 1
    assert oracles.rank([], QQ) == 0


def test_frobenius_oracle_dual_numbers():
    orc = oracles.FrobeniusOracle(0, 0, QQ)
    assert orc.mult(1, 1) == {}
    assert orc.comult(0) == {(0, 1): 1, (1, 0): 1}
    assert orc.comult(1) == {(1, 1): 1}
