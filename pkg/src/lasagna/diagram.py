"""Planar diagrams of framed oriented tangles.

A crossing is a 4-tuple of arc labels read counterclockwise starting at the
incoming under-strand, so the under-strand runs slot 0 -> slot 2 and the
over-strand joins slots 1 and 3.  The over-strand running 3 -> 1 makes a
positive crossing.  Boundary points are listed left to right along the top
and bottom edges.  Crossingless closed components are kept separately as
``loops``.

Endpoints of an arc are ``("x", crossing, slot)``, ``("t", i)`` or
``("b", i)``.  An orientation assigns each arc its head endpoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count
from typing import Iterable, Mapping, Sequence

Endpoint = tuple


class DiagramError(ValueError):
    """Invalid diagram data; ``rule`` names the violated invariant."""

    def __init__(self, message: str, rule: str = "", label: int | None = None):
        super().__init__(message)
        self.rule = rule
        self.label = label


def _occurrences(crossings, top, bottom) -> dict[int, list[Endpoint]]:
    occ: dict[int, list[Endpoint]] = {}
    for ci, cr in enumerate(crossings):
        for s, lab in enumerate(cr):
            occ.setdefault(lab, []).append(("x", ci, s))
    for i, lab in enumerate(top):
        occ.setdefault(lab, []).append(("t", i))
    for i, lab in enumerate(bottom):
        occ.setdefault(lab, []).append(("b", i))
    return occ


@dataclass(frozen=True)
class TangleDiagram:
    crossings: tuple[tuple[int, int, int, int], ...] = ()
    top: tuple[int, ...] = ()
    bottom: tuple[int, ...] = ()
    loops: tuple[int, ...] = ()
    heads: tuple[tuple[int, Endpoint], ...] | None = None
    signs: tuple[int, ...] = ()
    framing: int = 0
    _occ: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(int(v) for v in c) for c in self.crossings))
        object.__setattr__(self, "top", tuple(int(v) for v in self.top))
        object.__setattr__(self, "bottom", tuple(int(v) for v in self.bottom))
        object.__setattr__(self, "loops", tuple(int(v) for v in self.loops))
        for c in self.crossings:
            if len(c) != 4:
                raise DiagramError(f"crossing {c} does not have 4 slots", "crossing-arity")
        if len(self.top) % 2 or len(self.bottom) % 2:
            raise DiagramError("top and bottom boundaries must have an even number of points",
                               "even-boundary")
        occ = _occurrences(self.crossings, self.top, self.bottom)
        for lab, where in occ.items():
            if lab < 0:
                raise DiagramError(f"arc label {lab} is negative", "non-negative-labels", lab)
            if len(where) != 2:
                raise DiagramError(f"arc label {lab} occurs {len(where)} times (must be exactly 2)",
                                   "label-occurs-twice", lab)
        if len(set(self.loops)) != len(self.loops):
            raise DiagramError("repeated loop label", "label-occurs-twice")
        for lab in self.loops:
            if lab in occ:
                raise DiagramError(f"loop label {lab} also used by an arc", "label-occurs-twice", lab)
        object.__setattr__(self, "_occ", occ)
        if self.heads is not None:
            heads = dict(self.heads)
            object.__setattr__(self, "heads", tuple(sorted(heads.items())))
            for lab, where in occ.items():
                if heads.get(lab) not in where:
                    raise DiagramError(f"arc {lab} has no valid head endpoint", "orientation", lab)
            signs = []
            for ci, cr in enumerate(self.crossings):
                is_head = [heads[cr[s]] == ("x", ci, s) for s in range(4)]
                if not is_head[0] or is_head[2]:
                    raise DiagramError(f"crossing {ci}: under-strand must enter at slot 0 and leave at slot 2",
                                       "orientation")
                if is_head[1] == is_head[3]:
                    raise DiagramError(f"crossing {ci}: over-strand needs one in-arc and one out-arc",
                                       "orientation")
                signs.append(1 if is_head[3] else -1)
            if self.signs and tuple(self.signs) != tuple(signs):
                raise DiagramError("explicit crossing signs disagree with the orientation", "orientation")
            object.__setattr__(self, "signs", tuple(signs))
        else:
            if len(self.signs) != len(self.crossings) or any(s not in (1, -1) for s in self.signs):
                raise DiagramError("unoriented diagrams need one sign (+1/-1) per crossing", "orientation")
            object.__setattr__(self, "signs", tuple(self.signs))

    # -- basic data -----------------------------------------------------------------
    @property
    def m(self) -> int:
        return len(self.top) // 2

    @property
    def n(self) -> int:
        return len(self.bottom) // 2

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    @property
    def oriented(self) -> bool:
        return self.heads is not None

    @property
    def is_closed(self) -> bool:
        return not self.top and not self.bottom

    def arcs(self) -> list[int]:
        return sorted(set(self._occ) | set(self.loops))

    def endpoints(self, label: int) -> list[Endpoint]:
        return list(self._occ[label])

    def head(self, label: int) -> Endpoint | None:
        if self.heads is None:
            return None
        return dict(self.heads)[label]

    def boundary_directions(self, side: str) -> list[int] | None:
        """Per boundary point: +1 if the strand flows into the tangle there, -1 if out."""
        if self.heads is None:
            return None
        heads = dict(self.heads)
        pts = self.top if side == "t" else self.bottom
        return [-1 if heads[lab] == (side, i) else 1 for i, lab in enumerate(pts)]

    def strands(self) -> list[list[int]]:
        """Arc labels grouped by strand (components or boundary-to-boundary paths)."""
        parent = {a: a for a in self.arcs()}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, b, c, d in self.crossings:
            parent[find(a)] = find(c)
            parent[find(b)] = find(d)
        groups: dict[int, list[int]] = {}
        for a in self.arcs():
            groups.setdefault(find(a), []).append(a)
        return sorted(groups.values())

    def n_components(self) -> int:
        """Closed components (strands that never reach the boundary)."""
        bnd = set(self.top) | set(self.bottom)
        return sum(1 for g in self.strands() if not bnd.intersection(g))

    # -- canonical form ---------------------------------------------------------------
    def relabeled(self, mapping: Mapping[int, int]) -> "TangleDiagram":
        heads = None
        if self.heads is not None:
            heads = tuple((mapping[a], e) for a, e in self.heads)
        return TangleDiagram(
            crossings=tuple(tuple(mapping[v] for v in c) for c in self.crossings),
            top=tuple(mapping[v] for v in self.top),
            bottom=tuple(mapping[v] for v in self.bottom),
            loops=tuple(mapping[v] for v in self.loops),
            heads=heads, signs=() if heads is not None else self.signs, framing=self.framing)

    def canonical_map(self) -> dict[int, int]:
        order: dict[int, int] = {}
        for lab in [v for c in self.crossings for v in c] + list(self.top) + list(self.bottom):
            if lab not in order:
                order[lab] = len(order)
        for lab in sorted(self.loops):
            order[lab] = len(order)
        return order

    def canonical(self) -> "TangleDiagram":
        mp = self.canonical_map()
        d = self.relabeled(mp)
        return TangleDiagram(d.crossings, d.top, d.bottom, tuple(sorted(d.loops)), d.heads,
                             () if d.heads is not None else d.signs, d.framing)

    def __repr__(self):
        return (f"TangleDiagram(crossings={list(self.crossings)}, top={list(self.top)}, "
                f"bottom={list(self.bottom)}, loops={list(self.loops)}, signs={list(self.signs)})")


# -- orientation inference -----------------------------------------------------------

def orient(crossings, top=(), bottom=(), explicit: Mapping[int, int] | None = None,
           default: int = 1) -> dict[int, Endpoint]:
    """Infer a head endpoint for every arc.

    ``explicit[label] = +1`` means the arc runs from its first occurrence to
    its second (crossing slots in order, then top, then bottom); ``-1`` the
    reverse.  Under-strand slots fix directions; they propagate along strands.
    Arcs left undetermined get ``default``.
    """
    occ = _occurrences(crossings, top, bottom)
    heads: dict[int, Endpoint] = {}

    def setd(lab, head):
        if lab in heads and heads[lab] != head:
            raise DiagramError(f"inconsistent orientation on arc {lab}", "orientation", lab)
        heads[lab] = head

    for lab, sgn in (explicit or {}).items():
        if lab not in occ:
            continue
        e = occ[lab]
        if len(e) != 2:
            raise DiagramError(f"arc label {lab} occurs {len(e)} times", "label-occurs-twice", lab)
        setd(lab, e[1] if sgn > 0 else e[0])
    for ci, cr in enumerate(crossings):
        setd(cr[0], ("x", ci, 0))
        other = [e for e in occ[cr[2]] if e != ("x", ci, 2)]
        if cr[2] == cr[0]:
            pass
        elif other:
            setd(cr[2], other[0])

    def other(lab, e):
        return [x for x in occ[lab] if x != e][0]

    def propagate():
        changed = True
        while changed:
            changed = False
            for ci, cr in enumerate(crossings):
                for s, t in ((1, 3), (3, 1)):
                    a, b = cr[s], cr[t]
                    if a not in heads:
                        continue
                    want = other(b, ("x", ci, t)) if heads[a] == ("x", ci, s) else ("x", ci, t)
                    if b in heads:
                        if heads[b] != want:
                            raise DiagramError(f"inconsistent orientation on arc {b}", "orientation", b)
                    else:
                        heads[b] = want
                        changed = True

    propagate()
    for lab in sorted(occ):
        if lab not in heads:
            e = occ[lab]
            heads[lab] = e[1] if default > 0 else e[0]
            propagate()
    return heads


def from_pd(crossings: Sequence[Sequence[int]], top: Sequence[int] = (), bottom: Sequence[int] = (),
            loops: Sequence[int] = (), orientations: Mapping[int, int] | None = None,
            framing: int = 0) -> TangleDiagram:
    crossings = tuple(tuple(c) for c in crossings)
    heads = orient(crossings, tuple(top), tuple(bottom), orientations)
    return TangleDiagram(crossings, tuple(top), tuple(bottom), tuple(loops),
                         tuple(sorted(heads.items())), framing=framing)


def orientation_signs(d: TangleDiagram) -> dict[int, int]:
    """Inverse of the explicit encoding used by :func:`orient`."""
    out = {}
    for lab, head in (d.heads or ()):
        occ = d.endpoints(lab)
        out[lab] = 1 if head == occ[1] else -1
    return out


# -- standard small tangles -----------------------------------------------------------

def identity(strands: int, directions: Sequence[int] | None = None) -> TangleDiagram:
    """Trivial tangle on ``strands`` vertical strands.

    ``directions[i] = +1`` (default) orients strand i downward, into the
    tangle at the top.
    """
    directions = list(directions or [1] * strands)
    labs = tuple(range(strands))
    heads = tuple((i, ("b", i) if directions[i] > 0 else ("t", i)) for i in range(strands))
    return TangleDiagram((), labs, labs, (), heads)


def cup(direction: int = 1) -> TangleDiagram:
    """(0,1)-tangle: one arc joining the two bottom points (left to right if +1)."""
    return TangleDiagram((), (), (0, 0), (), ((0, ("b", 1) if direction > 0 else ("b", 0)),))


def cap(direction: int = 1) -> TangleDiagram:
    """(1,0)-tangle: one arc joining the two top points (right to left if +1)."""
    return TangleDiagram((), (0, 0), (), (), ((0, ("t", 0) if direction > 0 else ("t", 1)),))


def unknot() -> TangleDiagram:
    return TangleDiagram(loops=(0,), heads=())


def empty() -> TangleDiagram:
    return TangleDiagram(heads=())


def unlink(k: int) -> TangleDiagram:
    return TangleDiagram(loops=tuple(range(k)), heads=())


# -- composition ------------------------------------------------------------------------

class _UF:
    def __init__(self):
        self.p: dict = {}

    def find(self, a):
        p = self.p
        p.setdefault(a, a)
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.p[rb] = ra


@dataclass(frozen=True)
class Composite:
    diagram: TangleDiagram
    relabel: dict  # (part index, old label) -> new label


def stack(parts: Sequence[TangleDiagram], check_orientation: bool = True) -> Composite:
    """Vertical composition of tangles, top to bottom, with canonical relabeling.

    The bottom of each part is glued to the top of the next.  Oriented inputs
    must meet out-to-in at every glued point; if any part is unoriented the
    result is unoriented and keeps the concatenated crossing signs.
    """
    for k in range(len(parts) - 1):
        if len(parts[k].bottom) != len(parts[k + 1].top):
            raise DiagramError(f"boundary size mismatch: {len(parts[k].bottom)} bottom points "
                               f"vs {len(parts[k + 1].top)} top points", "boundary-size")
    oriented = all(p.oriented for p in parts)
    if oriented and check_orientation:
        for k in range(len(parts) - 1):
            up, lo = parts[k].boundary_directions("b"), parts[k + 1].boundary_directions("t")
            for i, (u, l) in enumerate(zip(up, lo)):
                if u == l:
                    raise DiagramError(f"orientation mismatch at glued point {i}", "orientation")
    uf = _UF()
    offsets = []
    for k, p in enumerate(parts):
        for a in p.arcs():
            uf.find((k, a))
    for k in range(len(parts) - 1):
        for a, b in zip(parts[k].bottom, parts[k + 1].top):
            uf.union((k, a), (k + 1, b))
    crossings, signs, heads_raw = [], [], {}
    xoff = 0
    for k, p in enumerate(parts):
        offsets.append(xoff)
        for c in p.crossings:
            crossings.append(tuple(uf.find((k, v)) for v in c))
        signs.extend(p.signs)
        xoff += len(p.crossings)
    top = tuple(uf.find((0, v)) for v in parts[0].top) if parts else ()
    bottom = tuple(uf.find((len(parts) - 1, v)) for v in parts[-1].bottom) if parts else ()
    used = {v for c in crossings for v in c} | set(top) | set(bottom)
    roots = sorted({uf.find((k, a)) for k, p in enumerate(parts) for a in p.arcs()})
    loops = tuple(r for r in roots if r not in used)
    if oriented:
        last = len(parts) - 1
        for k, p in enumerate(parts):
            for a, e in (p.heads or ()):
                if e[0] == "x":
                    heads_raw[uf.find((k, a))] = ("x", e[1] + offsets[k], e[2])
                elif e[0] == "t" and k == 0:
                    heads_raw[uf.find((k, a))] = e
                elif e[0] == "b" and k == last:
                    heads_raw[uf.find((k, a))] = e
    order: dict = {}
    for lab in [v for c in crossings for v in c] + list(top) + list(bottom) + list(loops):
        if lab not in order:
            order[lab] = len(order)
    relabel = {(k, a): order[uf.find((k, a))] for k, p in enumerate(parts) for a in p.arcs()}
    heads = None
    if oriented:
        heads = tuple(sorted((order[r], e) for r, e in heads_raw.items() if r in used))
    d = TangleDiagram(tuple(tuple(order[v] for v in c) for c in crossings),
                      tuple(order[v] for v in top), tuple(order[v] for v in bottom),
                      tuple(order[v] for v in loops), heads,
                      () if oriented else tuple(signs),
                      sum(p.framing for p in parts))
    return Composite(d, relabel)


def compose(d1: TangleDiagram, d2: TangleDiagram) -> TangleDiagram:
    """Glue the bottom of ``d1`` (an (m,n)-tangle) to the top of ``d2`` (an (n,p)-tangle)."""
    return stack([d1, d2]).diagram


def disjoint_union(d1: TangleDiagram, d2: TangleDiagram) -> TangleDiagram:
    """Side-by-side union of two closed diagrams."""
    if not (d1.is_closed and d2.is_closed):
        raise DiagramError("disjoint_union takes closed diagrams", "closed")
    off = max(d1.arcs(), default=-1) + 1
    mp = {a: a + off for a in d2.arcs()}
    e = d2.relabeled(mp)
    nx = len(d1.crossings)
    oriented = d1.oriented and d2.oriented
    heads = None
    if oriented:
        heads = tuple(d1.heads) + tuple((a, ("x", h[1] + nx, h[2])) for a, h in e.heads)
    return TangleDiagram(d1.crossings + e.crossings, (), (), d1.loops + e.loops, heads,
                         () if oriented else d1.signs + d2.signs, d1.framing + d2.framing)


# -- crossingless matchings -------------------------------------------------------------

@dataclass(frozen=True, order=True)
class CrossinglessMatching:
    """Non-crossing perfect matching of points 1..2n, pairs stored sorted."""

    n: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted(tuple(sorted(p)) for p in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        pts = sorted(x for p in pairs for x in p)
        if pts != list(range(1, 2 * self.n + 1)):
            raise DiagramError(f"pairs {pairs} are not a perfect matching of 1..{2 * self.n}", "matching")
        for (a, b) in pairs:
            for (c, d) in pairs:
                if a < c < b < d:
                    raise DiagramError(f"pairs {(a, b)} and {(c, d)} cross", "non-crossing")

    @classmethod
    def of(cls, pairs: Iterable[Sequence[int]]) -> "CrossinglessMatching":
        pairs = [tuple(p) for p in pairs]
        return cls(len(pairs), tuple(pairs))

    def partner(self, i: int) -> int:
        for a, b in self.pairs:
            if a == i:
                return b
            if b == i:
                return a
        raise KeyError(i)

    def label(self) -> str:
        """Compact text like ``(1,4)(2,3)``; ``()`` for the empty matching."""
        return "".join(f"({a},{b})" for a, b in self.pairs) or "()"

    def __repr__(self):
        return f"M{self.label()}"


def reflect(a: CrossinglessMatching) -> CrossinglessMatching:
    """The matching read after a half-turn: point i becomes 2n+1-i."""
    N = 2 * a.n + 1
    return CrossinglessMatching(a.n, tuple((N - j, N - i) for i, j in a.pairs))


MATCHING_CAP = 6


def enumerate_matchings(n: int, cap: int = MATCHING_CAP) -> list[CrossinglessMatching]:
    """All crossingless matchings of 2n points, lexicographic on pair lists."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > cap:
        raise DiagramError(f"matching size {n} exceeds cap {cap}", "cap")

    def rec(points: tuple[int, ...]) -> list[list[tuple[int, int]]]:
        if not points:
            return [[]]
        first = points[0]
        out = []
        for k in range(1, len(points), 2):
            inside, outside = points[1:k], points[k + 1:]
            for a in rec(inside):
                for b in rec(outside):
                    out.append([(first, points[k])] + a + b)
        return out

    ms = [CrossinglessMatching(n, tuple(p)) for p in rec(tuple(range(1, 2 * n + 1)))]
    return sorted(ms, key=lambda m: m.pairs)


def matching_tangle(a: CrossinglessMatching, side: str,
                    directions: Sequence[int] | None = None) -> TangleDiagram | None:
    """The matching as a cap-row (``side="top"``: a (0,n)-tangle closing a top
    boundary from above) or cup-row (``side="bottom"``: an (n,0)-tangle).

    ``directions`` are the boundary directions (+1 into the tangle being
    closed) of the points this row attaches to; the row is oriented to
    continue them.  Returns an unoriented row when they are incompatible.
    """
    labs = [0] * (2 * a.n)
    for k, (i, j) in enumerate(a.pairs):
        labs[i - 1] = k
        labs[j - 1] = k
    pos = "b" if side == "top" else "t"
    heads = None
    if directions is not None:
        hs = []
        ok = True
        for k, (i, j) in enumerate(a.pairs):
            di, dj = directions[i - 1], directions[j - 1]
            if di == dj:
                ok = False
                break
            # the row's arc must flow into the point where the closed tangle takes flow in
            hs.append((k, (pos, i - 1) if di > 0 else (pos, j - 1)))
        heads = tuple(hs) if ok else None
    signs = () if heads is not None else ()
    if side == "top":
        return TangleDiagram((), (), tuple(labs), (), heads, signs)
    return TangleDiagram((), tuple(labs), (), (), heads, signs)


def close(d: TangleDiagram, a: CrossinglessMatching | None = None,
          b: CrossinglessMatching | None = None) -> TangleDiagram:
    """Closed diagram W(a) d b.

    The top is closed by the reflected copy of ``a``; reflecting a cup-row
    across the horizontal axis keeps its left-to-right pairs, so the top
    points are joined by the pairs of ``a`` itself.  Closure arcs are oriented
    by the tangle's boundary orientation; if that is impossible the result is
    unoriented and keeps the crossing signs of ``d``.
    """
    a = a or CrossinglessMatching(0, ())
    b = b or CrossinglessMatching(0, ())
    if 2 * a.n != len(d.top) or 2 * b.n != len(d.bottom):
        raise DiagramError(f"closure sizes ({a.n},{b.n}) do not match tangle boundary "
                           f"({d.m},{d.n})", "boundary-size")
    return close_composite(d, a, b).diagram


def close_composite(d: TangleDiagram, a: CrossinglessMatching, b: CrossinglessMatching) -> Composite:
    """:func:`close` keeping the relabeling map; parts are (top row, d, bottom row)."""
    tdir = d.boundary_directions("t")
    bdir = d.boundary_directions("b")
    top_row = matching_tangle(a, "top", tdir)
    bot_row = matching_tangle(b, "bottom", bdir)
    parts = [top_row, d, bot_row]
    if any(not p.oriented for p in parts):
        parts = [_unoriented(p) for p in parts]
    return stack(parts)


def _unoriented(d: TangleDiagram) -> TangleDiagram:
    if not d.oriented:
        return d
    return TangleDiagram(d.crossings, d.top, d.bottom, d.loops, None, d.signs, d.framing)


# -- flat diagrams ----------------------------------------------------------------------

@dataclass(frozen=True)
class FlatDiagram:
    """Closed crossingless picture: circles (ids = least arc label), dots per circle."""

    circles: tuple[int, ...]
    dots: tuple[int, ...]
    provenance: tuple[tuple[int, int], ...]  # (arc label, circle id)

    def __post_init__(self):
        if len(self.circles) != len(self.dots):
            raise ValueError("one dot count per circle")
        if any(x < 0 for x in self.dots):
            raise ValueError("dot counts must be non-negative")

    @property
    def n_circles(self) -> int:
        return len(self.circles)

    @property
    def total_dots(self) -> int:
        return sum(self.dots)

    def relabeled(self, mapping: Mapping[int, int]) -> "FlatDiagram":
        prov = sorted((mapping[a], c) for a, c in self.provenance)
        groups: dict[int, list[int]] = {}
        for a, c in prov:
            groups.setdefault(c, []).append(a)
        new_id = {c: min(arcs) for c, arcs in groups.items()}
        dots = dict(zip(self.circles, self.dots))
        circles = sorted(new_id[c] for c in self.circles)
        inv = {v: k for k, v in new_id.items()}
        return FlatDiagram(tuple(circles), tuple(dots[inv[c]] for c in circles),
                           tuple((a, new_id[c]) for a, c in prov))


def resolve(d: TangleDiagram, bits: Sequence[int], dots: Mapping[int, int] | None = None) -> FlatDiagram:
    """Flatten a closed diagram at the given smoothing (0: join slots 0-1 and 2-3;
    1: join 0-3 and 1-2).  ``dots`` maps arc labels to dot counts."""
    if not d.is_closed:
        raise DiagramError("resolve needs a closed diagram", "closed")
    if len(bits) != len(d.crossings):
        raise DiagramError("one bit per crossing", "resolution")
    uf = _UF()
    for a in d.arcs():
        uf.find(a)
    for (a, b, c, e), bit in zip(d.crossings, bits):
        if bit:
            uf.union(a, e)
            uf.union(b, c)
        else:
            uf.union(a, b)
            uf.union(c, e)
    groups: dict[int, list[int]] = {}
    for a in d.arcs():
        groups.setdefault(uf.find(a), []).append(a)
    circles = sorted(min(g) for g in groups.values())
    prov = tuple(sorted((a, min(g)) for g in groups.values() for a in g))
    dots = dots or {}
    dc = {c: 0 for c in circles}
    for a, k in dots.items():
        dc[dict(prov)[a]] += k
    return FlatDiagram(tuple(circles), tuple(dc[c] for c in circles), prov)


# -- cabling ----------------------------------------------------------------------------

@dataclass(frozen=True)
class CableSpec:
    n_plus: int
    n_minus: int
    companion: TangleDiagram

    def __post_init__(self):
        if self.n_plus < 0 or self.n_minus < 0:
            raise DiagramError("cable strand counts must be non-negative", "cable")
        c = self.companion
        if not c.is_closed:
            raise DiagramError("companion must be a closed diagram", "cable")
        if len(c.strands()) != 1:
            raise DiagramError("companion must have exactly one component", "cable")

    @property
    def strands(self) -> int:
        return self.n_plus + self.n_minus


class _Builder:
    """Collects crossings as half-edge slots and joins half-edges into arcs."""

    def __init__(self):
        self.crossings: list[list] = []
        self.links: dict = {}
        self.loops = 0

    def crossing(self, slots: Sequence) -> None:
        self.crossings.append(list(slots))

    def join(self, e1, e2) -> None:
        if e1 in self.links or e2 in self.links:
            raise RuntimeError("half-edge joined twice")
        self.links[e1] = e2
        self.links[e2] = e1

    def build(self, framing: int = 0) -> TangleDiagram:
        label: dict = {}
        nxt = count()
        for cr in self.crossings:
            for e in cr:
                if e not in label:
                    lab = next(nxt)
                    label[e] = lab
                    label[self.links[e]] = lab
        pd = [tuple(label[e] for e in cr) for cr in self.crossings]
        loops = tuple(next(nxt) for _ in range(self.loops))
        return from_pd(pd, loops=loops, framing=framing)


def cable(spec: CableSpec, ambient: TangleDiagram | None = None) -> TangleDiagram:
    """Replace the companion by blackboard-parallel copies with framing twists.

    Copies are indexed by their offset to the left of the companion's
    direction; copies ``0..n_plus-1`` follow the companion, the rest run
    against it.  ``|framing|`` full twists are inserted on one arc.
    """
    n = spec.strands
    K = spec.companion
    f = K.framing
    ambient = ambient if ambient is not None else empty()
    if n == 0:
        return ambient
    orient_with = [k < spec.n_plus for k in range(n)]
    B = _Builder()
    heads = dict(K.heads or ())

    port: dict = {}  # (crossing, slot, copy) -> grid half-edge facing that slot

    # grids replacing the companion's crossings
    for ci, cr in enumerate(K.crossings):
        over_we = heads[cr[3]] == ("x", ci, 3)
        ys = [(1 if over_we else -1) * ko for ko in range(n)]
        for ku in range(n):
            order = sorted(range(n), key=lambda ko: ys[ko])
            port[(ci, 0, ku)] = (("g", ci, ku, order[0]), "S")
            for j in range(1, n):
                B.join((("g", ci, ku, order[j]), "S"), (("g", ci, ku, order[j - 1]), "N"))
            port[(ci, 2, ku)] = (("g", ci, ku, order[-1]), "N")
        for ko in range(n):
            order = list(range(n - 1, -1, -1))
            port[(ci, 3, ko)] = (("g", ci, order[0], ko), "W")
            for j in range(1, n):
                B.join((("g", ci, order[j], ko), "W"), (("g", ci, order[j - 1], ko), "E"))
            port[(ci, 1, ko)] = (("g", ci, order[-1], ko), "E")
        for ku in range(n):
            for ko in range(n):
                g = ("g", ci, ku, ko)
                if orient_with[ku]:
                    B.crossing([(g, "S"), (g, "E"), (g, "N"), (g, "W")])
                else:
                    B.crossing([(g, "N"), (g, "W"), (g, "S"), (g, "E")])

    # the twist region, spliced into the first arc (or the loop)
    if n == 1:
        f = 0
    twist_in = twist_out = None
    if f:
        twist_in, twist_out = _full_twists(B, n, f, orient_with)

    if K.crossings:
        arcs = K.arcs()
        for lab in arcs:
            e_head = heads[lab]
            e_tail = [e for e in K.endpoints(lab) if e != e_head][0]
            for k in range(n):
                t_tail = port[(e_tail[1], e_tail[2], k)]
                t_head = port[(e_head[1], e_head[2], k)]
                if f and lab == arcs[0]:
                    B.join(t_tail, twist_in[k])
                    B.join(twist_out[k], t_head)
                else:
                    B.join(t_tail, t_head)
    elif f:
        for k in range(n):
            B.join(twist_out[k], twist_in[k])
    else:
        B.loops = n
    cab = B.build()
    if not ambient.arcs():
        return cab
    return disjoint_union(ambient, cab)


def _full_twists(B: _Builder, n: int, f: int, orient_with: Sequence[bool]):
    """|f| full twists on n strands running north; returns the bottom and top
    half-edges by strand copy index."""
    pos = list(range(n))  # pos[p] = copy index at position p (p = offset, 0 rightmost)
    bottom = {k: None for k in range(n)}
    current = {}  # copy -> dangling half-edge heading north
    for k in range(n):
        current[k] = None
    word = [p for _ in range(abs(f)) for _ in range(n) for p in range(n - 1)]
    for step, p in enumerate(word):
        right, left = pos[p], pos[p + 1]
        g = ("tw", step)
        positive = f > 0
        # left strand enters SW and leaves NE; right strand enters SE and leaves NW
        for copy, half in ((left, "SW"), (right, "SE")):
            if current[copy] is None:
                bottom[copy] = (g, half)
            else:
                B.join(current[copy], (g, half))
        current[left] = (g, "NE")
        current[right] = (g, "NW")
        if positive:
            if orient_with[right]:
                B.crossing([(g, "SE"), (g, "NE"), (g, "NW"), (g, "SW")])
            else:
                B.crossing([(g, "NW"), (g, "SW"), (g, "SE"), (g, "NE")])
        else:
            if orient_with[left]:
                B.crossing([(g, "SW"), (g, "SE"), (g, "NE"), (g, "NW")])
            else:
                B.crossing([(g, "NE"), (g, "NW"), (g, "SW"), (g, "SE")])
        pos[p], pos[p + 1] = left, right
    return bottom, current


# -- faces ------------------------------------------------------------------------------

Dart = tuple  # (arc label, +1 from first occurrence to second, -1 reverse)


def faces(d: TangleDiagram) -> list[list[Dart]]:
    """Faces of a closed diagram as cycles of darts, each face on the dart's left.

    Loops are not part of the projection graph and contribute no darts.
    """
    if not d.is_closed:
        raise DiagramError("faces are defined for closed diagrams", "closed")
    occ = {a: d.endpoints(a) for a in d.arcs() if a not in d.loops}
    darts = [(a, s) for a in sorted(occ) for s in (1, -1)]
    seen: set = set()
    out = []
    for start in darts:
        if start in seen:
            continue
        face = []
        cur = start
        while cur not in seen:
            seen.add(cur)
            face.append(cur)
            a, s = cur
            _, ci, slot = occ[a][1] if s > 0 else occ[a][0]
            nslot = (slot - 1) % 4
            b = d.crossings[ci][nslot]
            e = ("x", ci, nslot)
            cur = (b, 1 if occ[b][0] == e else -1)
        out.append(face)
    return out


def projection_pieces(d: TangleDiagram) -> int:
    """Connected pieces of the 4-valent projection graph (loops excluded)."""
    parent = list(range(len(d.crossings)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in d.arcs():
        if a in d.loops:
            continue
        ends = [e[1] for e in d.endpoints(a) if e[0] == "x"]
        if len(ends) == 2:
            ra, rb = find(ends[0]), find(ends[1])
            if ra != rb:
                parent[ra] = rb
    return len({find(i) for i in range(len(d.crossings))})


def is_planar(d: TangleDiagram) -> bool:
    """Euler-characteristic test: each projection piece on the sphere has c + 2 faces."""
    return len(faces(d)) == len(d.crossings) + 2 * projection_pieces(d)


def braid(strands: int, word: Sequence[int], directions: Sequence[int] | None = None) -> TangleDiagram:
    """(strands/2, strands/2)-tangle of a braid word read top to bottom.

    Generator ``i`` crosses positions i and i+1 (1-based); ``+i`` puts the
    strand entering at the upper left under, which is a positive crossing
    when both strands run downward.  ``directions[p] = +1`` orients the
    strand entering at top position p downward.
    """
    dirs = list(directions or [1] * strands)
    if len(dirs) != strands:
        raise DiagramError("one direction per strand", "orientation")
    cur = list(range(strands))
    arc_dir = {i: dirs[i] for i in range(strands)}
    upper: dict = {i: ("t", i) for i in range(strands)}
    lower: dict = {}
    crossings = []
    nxt = strands
    for g in word:
        i = abs(int(g)) - 1
        if g == 0 or not 0 <= i < strands - 1:
            raise DiagramError(f"braid generator {g} out of range for {strands} strands", "braid")
        nw, ne = cur[i], cur[i + 1]
        sw, se = nxt, nxt + 1
        nxt += 2
        dl, dr = arc_dir[nw], arc_dir[ne]
        if g > 0:
            slots = (nw, sw, se, ne) if dl > 0 else (se, ne, nw, sw)
        else:
            slots = (ne, nw, sw, se) if dr > 0 else (sw, se, ne, nw)
        ci = len(crossings)
        crossings.append(slots)
        where = {lab: ("x", ci, s) for s, lab in enumerate(slots)}
        lower[nw], lower[ne] = where[nw], where[ne]
        upper[sw], upper[se] = where[sw], where[se]
        arc_dir[sw], arc_dir[se] = dr, dl
        cur[i], cur[i + 1] = sw, se
    for p, lab in enumerate(cur):
        lower[lab] = ("b", p)
    heads = tuple(sorted((lab, lower[lab] if arc_dir[lab] > 0 else upper[lab]) for lab in arc_dir))
    return TangleDiagram(tuple(crossings), tuple(range(strands)), tuple(cur), (), heads)


def plat(word: Sequence[int], top: "CrossinglessMatching", bottom: "CrossinglessMatching",
         directions: Sequence[int] | None = None, split: int | None = None):
    """Closure of a braid by matchings; with ``split`` returns the (0,n)- and
    (n,0)-halves cut after the first ``split`` generators instead."""
    strands = 2 * top.n
    b = braid(strands, word, directions)
    if split is None:
        return close(b, top, bottom)
    first = braid(strands, word[:split], directions)
    second = braid(strands, word[split:], first.boundary_directions("b") and
                   [-x for x in first.boundary_directions("b")])
    upper = stack([matching_tangle(top, "top", first.boundary_directions("t")), first]).diagram
    lower = stack([second, matching_tangle(bottom, "bottom", second.boundary_directions("b"))]).diagram
    return upper, lower
