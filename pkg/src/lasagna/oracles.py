"""Independent reference computations used by the acceptance suite.

Each oracle reaches its answer by a different route from the main code:
sympy polynomial arithmetic for the Frobenius algebras, a flat state sum
for the Jones polynomial, brute-force matching enumeration for arc algebra
dimensions, and sympy's domain matrices for ranks.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

import sympy
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from .diagram import TangleDiagram
from .linalg import Field

_X = sympy.Symbol("X")
_q = sympy.Symbol("q")


# -- Frobenius algebras ----------------------------------------------------------------------

def _poly(expr, p: int) -> sympy.Poly:
    return sympy.Poly(expr, _X, modulus=p) if p else sympy.Poly(expr, _X, domain=QQ)


def _elt(c, field: Field):
    r = sympy.Rational(c)
    return field(Fraction(int(r.p), int(r.q)))


def _coeffs(poly: sympy.Poly, field: Field) -> tuple:
    """(coefficient of 1, coefficient of X) as field elements."""
    return _elt(poly.coeff_monomial(1), field), _elt(poly.coeff_monomial(_X), field)


class FrobeniusOracle:
    """k[X]/(X^2 - hX - t) with counit 1 -> 0, X -> 1, via sympy remainders."""

    def __init__(self, h: int, t: int, field: Field):
        self.field = field
        self.p = field.characteristic
        self.modulus = _poly(_X ** 2 - h * _X - t, self.p)
        self.basis = (_poly(1, self.p), _poly(_X, self.p))

    def reduce(self, expr) -> sympy.Poly:
        return _poly(expr, self.p).rem(self.modulus)

    def mult(self, a: int, b: int) -> dict:
        c = _coeffs(self.reduce(_X ** (a + b)), self.field)
        return {lab: v for lab, v in enumerate(c) if v}

    def _counit_rational(self, d: int):
        return sympy.Rational(self.reduce(_X ** d).coeff_monomial(_X))

    def counit_power(self, d: int):
        return _coeffs(self.reduce(_X ** d), self.field)[1]

    def comult(self, a: int) -> dict:
        """Delta(x) = sum_i x e_i (x) e_i^dual for the pairing (u, v) -> eps(uv)."""
        F = self.field
        gram = sympy.Matrix(2, 2, lambda i, j: self._counit_rational(i + j))
        inv = gram.inv_mod(self.p) if self.p else gram.inv()
        inv = [[_elt(inv[i, j], F) for j in range(2)] for i in range(2)]
        out: dict = {}
        for i in range(2):
            left = self.mult(a, i)
            for j in range(2):
                # dual of e_i is sum_j inv[i][j] e_j
                for lab, v in left.items():
                    key = (lab, j)
                    out[key] = F.add(out.get(key, F.zero), F.mul(v, inv[i][j]))
        return {k: v for k, v in out.items() if v}


def frobenius_mismatches(spec) -> list[str]:
    """Compare structure maps of a FrobeniusSpec with the sympy oracle."""
    orc = FrobeniusOracle(spec.h, spec.t, spec.field)
    bad = []
    for a, b in product(range(2), repeat=2):
        mine = {k: v for k, v in spec.mult(a, b).items() if v}
        if mine != orc.mult(a, b):
            bad.append(f"m({a},{b})")
    for a in range(2):
        mine = {k: v for k, v in spec.comult(a).items() if v}
        if mine != orc.comult(a):
            bad.append(f"delta({a})")
        if spec.counit(a) != orc.counit_power(a):
            bad.append(f"eps({a})")
    return bad


def sphere_values(h: int, t: int, field: Field, max_dots: int = 4) -> list:
    """eps(X^d) for d = 0..max_dots."""
    orc = FrobeniusOracle(h, t, field)
    return [orc.counit_power(d) for d in range(max_dots + 1)]


# -- Jones polynomial by a flat state sum ----------------------------------------------------

def _components(pairs: Sequence[tuple], labels: set) -> int:
    parent = {x: x for x in labels}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in pairs:
        parent[find(u)] = find(v)
    return len({find(x) for x in labels})


def state_sum_jones(d: TangleDiagram) -> dict[int, int]:
    """Sum over all 2^n smoothings of (-q)^{#1} (q + q^-1)^{#circles}, normalized."""
    if not d.is_closed:
        raise ValueError("state sum needs a closed diagram")
    labels = {x for c in d.crossings for x in c}
    total = sympy.Integer(0)
    for bits in product((0, 1), repeat=d.n_crossings):
        pairs = []
        for (a, b, c, e), bit in zip(d.crossings, bits):
            pairs += [(a, b), (c, e)] if bit == 0 else [(a, e), (b, c)]
        circles = _components(pairs, labels) + len(d.loops)
        total += (-_q) ** sum(bits) * (_q + 1 / _q) ** circles
    npl, nmi = d.n_plus, d.n_minus
    poly = sympy.expand((-1) ** nmi * _q ** (npl - 2 * nmi) * total)
    out: dict[int, int] = {}
    for term in sympy.Add.make_args(poly):
        coeff, exp = term.as_coeff_exponent(_q)
        if coeff:
            out[int(exp)] = out.get(int(exp), 0) + int(coeff)
    return {k: v for k, v in sorted(out.items()) if v}


# -- arc algebra dimensions ------------------------------------------------------------------

def noncrossing_matchings(n: int) -> list[tuple[tuple[int, int], ...]]:
    """All perfect matchings of 1..2n without crossing pairs, by brute force."""
    pts = list(range(1, 2 * n + 1))
    out = []

    def rec(rest, acc):
        if not rest:
            out.append(tuple(sorted(acc)))
            return
        a = rest[0]
        for b in rest[1:]:
            rec([x for x in rest if x not in (a, b)], acc + [(a, b)])

    rec(pts, [])

    def crosses(p, r):
        (a, b), (c, e) = p, r
        return a < c < b < e or c < a < e < b

    return [m for m in out if not any(crosses(p, r) for p, r in combinations(m, 2))]


def arc_algebra_dimension(n: int) -> int:
    """sum over matching pairs (a, b) of 2^{circles of a glued to b}."""
    ms = noncrossing_matchings(n)
    pts = set(range(1, 2 * n + 1))
    return sum(2 ** _components(list(a) + list(b), pts) if n else 1 for a in ms for b in ms)


# -- ranks -----------------------------------------------------------------------------------

def rank(dense: Sequence[Sequence[int]], field: Field) -> int:
    """Rank of a matrix of integers or fractions, read in the field, via sympy."""
    rows = len(dense)
    cols = len(dense[0]) if rows else 0
    if rows == 0 or cols == 0:
        return 0
    p = field.characteristic
    dom = GF(p) if p else QQ
    def conv(x):
        f = Fraction(x)
        return dom.from_sympy(sympy.Rational(f.numerator, f.denominator))

    entries = [[conv(x) for x in r] for r in dense]
    return DomainMatrix(entries, (rows, cols), dom).rank()
