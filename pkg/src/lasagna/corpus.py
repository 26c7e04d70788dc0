"""Named test diagrams (all at most 8 crossings) and derived move pairs."""

from __future__ import annotations

from typing import Callable

from .diagram import (TangleDiagram, braid, cap, cup, disjoint_union, from_pd, identity,
                      plat, CrossinglessMatching, unknot, unlink)
from .handles import closed_braid
from .khovanov.reidemeister import MoveNotApplicable, r1_addition, r2_addition


def _cb(n: int, word) -> TangleDiagram:
    return closed_braid(n, word)[0]


CLOSED: dict[str, Callable[[], TangleDiagram]] = {
    "unknot": unknot,
    "unknot-kink+": lambda: r1_addition(unknot(), 0, 1, 1).big,
    "unknot-kink-": lambda: r1_addition(unknot(), 0, -1, -1).big,
    "unknot-2-crossings": lambda: _cb(3, [1, 2]),
    "unlink-2": lambda: unlink(2),
    "unlink-3": lambda: unlink(3),
    "hopf+": lambda: _cb(2, [1, 1]),
    "hopf-": lambda: _cb(2, [-1, -1]),
    "hopf-pd": lambda: from_pd([(1, 3, 2, 4), (3, 1, 4, 2)]),
    "trefoil-right": lambda: _cb(2, [1, 1, 1]),
    "trefoil-left": lambda: _cb(2, [-1, -1, -1]),
    "trefoil-pd": lambda: from_pd([(1, 4, 2, 5), (3, 6, 4, 1), (5, 2, 6, 3)]),
    "figure-eight": lambda: _cb(3, [1, -2, 1, -2]),
    "figure-eight-pd": lambda: from_pd([(4, 2, 5, 1), (8, 6, 1, 5), (6, 3, 7, 4), (2, 7, 3, 8)]),
    "torus-2-4": lambda: _cb(2, [1, 1, 1, 1]),
    "cinquefoil": lambda: _cb(2, [1] * 5),
    "five-two": lambda: _cb(3, [1, 1, 1, 2, -1, 2]),
    "borromean": lambda: _cb(3, [1, -2] * 3),
    "granny": lambda: _cb(3, [1, 1, 1, 2, 2, 2]),
    "square": lambda: _cb(3, [1, 1, 1, -2, -2, -2]),
    "torus-3-4": lambda: _cb(3, [1, 2] * 4),
    "hopf+unknot": lambda: disjoint_union(_cb(2, [1, 1]), unknot()),
}


def closed_corpus() -> dict[str, TangleDiagram]:
    return {name: make() for name, make in CLOSED.items()}


def move_pairs(limit_per_diagram: int = 4) -> list[tuple[str, TangleDiagram, TangleDiagram]]:
    """(description, smaller, bigger) pairs related by one R1 or R2 move, plus
    R3 pairs from the braid relation inside closed 3-braids."""
    base = ["unknot", "hopf+", "hopf-", "trefoil-right", "trefoil-pd", "figure-eight", "unlink-2"]
    corpus = closed_corpus()
    out = []
    for name in base:
        d = corpus[name]
        made = 0
        arcs = sorted(d.arcs())
        for a in arcs:
            for sign, side in ((1, 1), (-1, -1), (1, -1), (-1, 1)):
                if made >= limit_per_diagram // 2:
                    break
                try:
                    r = r1_addition(d, a, sign, side)
                except MoveNotApplicable:
                    continue
                out.append((f"{name}: R1 sign {sign:+d} side {side:+d} on arc {a}", d, r.big))
                made += 1
        for a in arcs:
            for b in arcs:
                if made >= limit_per_diagram or a == b:
                    continue
                try:
                    r = r2_addition(d, a, b)
                except MoveNotApplicable:
                    continue
                out.append((f"{name}: R2 arc {a} over arc {b}", d, r.big))
                made += 1
    for tail in ([], [1], [-2], [1, 2], [-1, -2, -1]):
        w1, w2 = [1, 2, 1] + tail, [2, 1, 2] + tail
        out.append((f"R3: closure of {w1} vs {w2}", _cb(3, w1), _cb(3, w2)))
    return out


def glue_corpus() -> list[tuple[str, TangleDiagram, TangleDiagram]]:
    """(name, upper (0,n)-tangle, lower (n,0)-tangle) with n <= 2.

    Every split but one has crossings on at most one side.
    """
    m1 = CrossinglessMatching.of([(1, 2)])
    nest = CrossinglessMatching.of([(1, 4), (2, 3)])
    side = CrossinglessMatching.of([(1, 2), (3, 4)])
    out = [("cup/cap", cup(), cap())]
    up, low = plat([1], m1, m1, [1, -1], split=0)
    out.append(("kink below a cap", up, low))
    for name, word, dirs in (("hopf+", [2, 2], [1, -1, -1, 1]), ("hopf-", [-2, -2], [1, -1, -1, 1]),
                             ("trefoil", [2, 2, 2], [1, -1, -1, 1]),
                             ("trefoil-mirror", [-2, -2, -2], [1, -1, -1, 1])):
        for split in (0, len(word)):
            up, low = plat(word, side, side, dirs, split=split)
            out.append((f"{name} split after {split}", up, low))
    for word in ([1, 1], [1, 3], [1, -3, 2], [2, 2, 2, 2]):
        for split in (0, len(word)):
            up, low = plat(word, nest, nest, [1, -1, 1, -1], split=split)
            out.append((f"nested {word} split after {split}", up, low))
    up, low = plat([1, -3, 2], nest, nest, [1, -1, 1, -1], split=2)
    out.append(("nested [1, -3, 2] split after 2", up, low))
    return out


def interior_splits() -> list[tuple[str, TangleDiagram, TangleDiagram]]:
    """Splits with essential crossings on both sides (documented failures of
    the homology-level tensor product)."""
    side = CrossinglessMatching.of([(1, 2), (3, 4)])
    nest = CrossinglessMatching.of([(1, 4), (2, 3)])
    out = []
    for name, word, dirs in (("hopf+", [2, 2], [1, -1, -1, 1]),
                             ("trefoil", [2, 2, 2], [1, -1, -1, 1])):
        for split in range(1, len(word)):
            up, low = plat(word, side, side, dirs, split=split)
            out.append((f"{name} split after {split}", up, low))
    for word in ([1, 1], [1, 3], [1, -3, 2]):
        up, low = plat(word, nest, nest, [1, -1, 1, -1], split=1)
        out.append((f"nested {word} split after 1", up, low))
    return out


def square_tangles() -> dict[str, TangleDiagram]:
    """(n,n)-tangles with n <= 2.  Both Hochschild paths apply to all of them; the
    1-handle input check rejects twist-1 and outer-twists-2."""
    return {
        "identity-1": identity(2, [1, -1]),
        "twist-1": braid(2, [1], [1, -1]),
        "full-twist-1": braid(2, [1, 1], [1, -1]),
        "full-twist-1-neg": braid(2, [-1, -1], [1, -1]),
        "identity-2": identity(4, [1, -1, 1, -1]),
        "middle-twist-2": braid(4, [2, 2], [1, -1, 1, -1]),
        "outer-twists-2": braid(4, [1, 3], [1, -1, 1, -1]),
        "braid-2": braid(4, [2, -1, 2], [1, -1, 1, -1]),
    }
