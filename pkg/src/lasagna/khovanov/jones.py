"""Unnormalized Jones polynomial by Kauffman-bracket splicing on PD codes.

<D> = <D_0> - q <D_1>, each free circle contributes (q + q^-1), and
J(D) = (-1)^{n_-} q^{n_+ - 2 n_-} <D>.  No chain complex is involved.
Laurent polynomials are dicts ``{exponent: integer coefficient}``.
"""

from __future__ import annotations

from functools import lru_cache

from ..diagram import TangleDiagram
from .cube import CROSSING_CAP, CapExceeded

Laurent = dict


def lmul(a: Laurent, b: Laurent) -> Laurent:
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in sorted(out.items()) if v}


def ladd(a: Laurent, b: Laurent, scale: int = 1, shift: int = 0) -> Laurent:
    out = dict(a)
    for j, y in b.items():
        out[j + shift] = out.get(j + shift, 0) + scale * y
    return {k: v for k, v in sorted(out.items()) if v}


CIRCLE = {-1: 1, 1: 1}


def lpow(a: Laurent, k: int) -> Laurent:
    out = {0: 1}
    for _ in range(k):
        out = lmul(out, a)
    return out


def _canon(crossings: tuple) -> tuple:
    order: dict = {}
    for c in crossings:
        for v in c:
            if v not in order:
                order[v] = len(order)
    return tuple(tuple(order[v] for v in c) for c in crossings)


@lru_cache(maxsize=1 << 16)
def _bracket(crossings: tuple) -> tuple:
    if not crossings:
        return ((0, 1),)
    (a, b, c, d), rest = crossings[0], crossings[1:]
    total: Laurent = {}
    for pairs, scale, shift in ((((a, b), (c, d)), 1, 0), (((a, d), (b, c)), -1, 1)):
        parent = {}

        def find(x):
            parent.setdefault(x, x)
            while parent[x] != x:
                x = parent[x]
            return x

        for u, v in pairs:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        new = tuple(tuple(find(v) for v in cr) for cr in rest)
        present = {v for cr in new for v in cr}
        closed = len({find(v) for v in (a, b, c, d)} - present)
        sub = lmul(dict(_bracket(_canon(new))), lpow(CIRCLE, closed))
        total = ladd(total, sub, scale, shift)
    return tuple(total.items())


def bracket(d: TangleDiagram) -> Laurent:
    if not d.is_closed:
        raise ValueError("the bracket needs a closed diagram")
    return lmul(dict(_bracket(_canon(d.crossings))), lpow(CIRCLE, len(d.loops)))


def jones(d: TangleDiagram, cap: int = CROSSING_CAP) -> Laurent:
    """Unnormalized Jones polynomial (unknot -> q + q^-1, empty link -> 1)."""
    if d.n_crossings > cap:
        raise CapExceeded("crossing count", d.n_crossings, cap)
    npl, nmi = d.n_plus, d.n_minus
    return {k + npl - 2 * nmi: (-1) ** nmi * v for k, v in bracket(d).items()}


def laurent_text(p: Laurent) -> str:
    """``"q^1 + q^-1"``, ``"-2 q^3"``; descending exponents; ``"0"`` if empty."""
    if not p:
        return "0"
    parts = []
    for k, v in sorted(p.items(), key=lambda kv: -kv[0]):
        coef = "" if v == 1 else ("-" if v == -1 else f"{v} ")
        parts.append(f"{coef}q^{k}")
    text = " + ".join(parts)
    return text.replace("+ -", "- ")
