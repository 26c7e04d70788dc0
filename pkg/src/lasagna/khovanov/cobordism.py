"""Chain maps induced by elementary cobordisms between closed diagrams.

Events act away from the crossings, so the map is assembled vertex by vertex
on the cube: both diagrams' circles are refined to a common set of arc
pieces and compared with :class:`~lasagna.khovanov.cube.Transition`.

Events are tuples: ``("birth",)`` adds a free loop, ``("death", loop)``
caps one off, ``("dot", arc)`` multiplies by X on the circle through
``arc``, and ``("saddle", arc1, arc2)`` does an oriented band surgery between
two arcs that share a face (free loops may be banded to anything).
``("saddle", arc, arc)`` pinches a small loop off ``arc``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..diagram import DiagramError, TangleDiagram, faces
from ..linalg import ChainMap, SparseMatrix, axpy
from ..tqft import FrobeniusSpec
from .cube import CROSSING_CAP, CubeComplex, Picture, Transition, label_index

QSHIFT = {"birth": 1, "death": 1, "saddle": -1, "dot": -2}


def normalize_event(ev) -> tuple:
    if isinstance(ev, str):
        ev = ev.replace(",", " ").split()
    ev = tuple(ev)
    if not ev:
        raise ValueError("empty event")
    kind = str(ev[0]).lower()
    args = tuple(int(a) for a in ev[1:])
    arity = {"birth": 0, "death": 1, "dot": 1, "saddle": 2}
    if kind not in arity:
        raise ValueError(f"unknown event kind {kind!r}")
    if len(args) != arity[kind]:
        raise ValueError(f"{kind} takes {arity[kind]} arc label(s)")
    return (kind,) + args


@dataclass
class EventStep:
    """One event: the diagram after it and how arcs refine to common pieces."""

    kind: str
    before: TangleDiagram
    after: TangleDiagram
    refine_before: dict
    refine_after: dict
    dot_arc: int | None = None


def _ident(d: TangleDiagram) -> dict:
    return {a: ((a, 0),) for a in d.arcs()}


def _with(d: TangleDiagram, crossings=None, loops=None, heads="keep") -> TangleDiagram:
    crossings = d.crossings if crossings is None else crossings
    loops = d.loops if loops is None else loops
    if heads == "keep":
        heads = d.heads
    if heads is None:
        return TangleDiagram(crossings, (), (), tuple(loops), None, d.signs, d.framing)
    return TangleDiagram(crossings, (), (), tuple(loops), heads, (), d.framing)


def diagram_event(d: TangleDiagram, ev) -> EventStep:
    """Apply one event to a closed diagram."""
    if not d.is_closed:
        raise DiagramError("events act on closed diagrams", "closed")
    ev = normalize_event(ev)
    kind = ev[0]
    arcs = set(d.arcs())
    loops = set(d.loops)
    for a in ev[1:]:
        if a not in arcs:
            raise DiagramError(f"arc {a} is not in the diagram", "event", a)
    ident = _ident(d)
    if kind == "birth":
        new = max(arcs, default=-1) + 1
        d2 = _with(d, loops=d.loops + (new,))
        r2 = dict(ident)
        r2[new] = ((new, 0),)
        return EventStep(kind, d, d2, ident, r2)
    if kind == "death":
        (a,) = ev[1:]
        if a not in loops:
            raise DiagramError(f"death needs a free loop; arc {a} meets crossings", "event", a)
        d2 = _with(d, loops=tuple(x for x in d.loops if x != a))
        r2 = {k: v for k, v in ident.items() if k != a}
        return EventStep(kind, d, d2, ident, r2)
    if kind == "dot":
        return EventStep(kind, d, d, ident, ident, ev[1])
    a, b = ev[1:]
    if a == b:
        new = max(arcs) + 1
        r1 = dict(ident)
        r1[a] = ((a, 1), (a, 2))
        r2 = dict(ident)
        r2[a] = ((a, 1),)
        r2[new] = ((a, 2),)
        return EventStep(kind, d, _with(d, loops=d.loops + (new,)), r1, r2)
    if a in loops or b in loops:
        keep, gone = (b, a) if a in loops else (a, b)
        d2 = _with(d, loops=tuple(x for x in d.loops if x != gone))
        r2 = {k: v for k, v in ident.items() if k != gone}
        r2[keep] = ((keep, 0), (gone, 0))
        return EventStep(kind, d, d2, ident, r2)
    return _arc_saddle(d, a, b, ident)


def _arc_saddle(d: TangleDiagram, a: int, b: int, ident: dict) -> EventStep:
    occ = {x: d.endpoints(x) for x in (a, b)}
    orient = {}
    if d.oriented:
        for x in (a, b):
            orient[x] = 1 if d.head(x) == occ[x][1] else -1
    choice = None
    for face in faces(d):
        da = [s for (x, s) in face if x == a]
        db = [s for (x, s) in face if x == b]
        for sa in da:
            for sb in db:
                if not d.oriented or sa * orient[a] == sb * orient[b]:
                    choice = (sa, sb)
                    break
            if choice:
                break
        if choice:
            break
    if choice is None:
        raise DiagramError(f"arcs {a} and {b} do not bound a common face compatibly", "event")
    sa, sb = choice
    end_a = occ[a][1] if sa > 0 else occ[a][0]
    end_b = occ[b][1] if sb > 0 else occ[b][0]
    cross = [list(c) for c in d.crossings]
    cross[end_a[1]][end_a[2]] = b
    cross[end_b[1]][end_b[2]] = a
    heads = None
    if d.oriented:
        hd = dict(d.heads)
        start_a = occ[a][0] if sa > 0 else occ[a][1]
        start_b = occ[b][0] if sb > 0 else occ[b][1]
        old_heads = {hd[a], hd[b]}
        for lab, ends in ((a, (start_a, end_b)), (b, (start_b, end_a))):
            hs = [e for e in ends if e in old_heads]
            if len(hs) != 1:
                raise DiagramError("saddle is not compatible with the orientation", "event")
            hd[lab] = hs[0]
        heads = tuple(sorted(hd.items()))
    d2 = _with(d, crossings=tuple(tuple(c) for c in cross), heads=heads)
    # halves: 1 = traversal start, 2 = traversal end
    r1 = dict(ident)
    r1[a] = ((a, 1), (a, 2))
    r1[b] = ((b, 1), (b, 2))
    r2 = dict(ident)
    r2[a] = ((a, 1), (b, 2))
    r2[b] = ((b, 1), (a, 2))
    return EventStep("saddle", d, d2, r1, r2)


def _refined(circles, refine) -> list[frozenset]:
    return [frozenset(p for a in circ for p in refine[a]) for circ in circles]


def step_map(step: EventStep, c1: CubeComplex, c2: CubeComplex) -> ChainMap:
    spec = c1.spec
    F = spec.field
    comps: dict[int, list] = {}
    for v, circ1 in c1.circles.items():
        i = sum(v) - c1.n_minus
        cols = comps.setdefault(i, [None] * c1.complex.dim(i))
        circ2 = c2.circles[v]
        off1, off2 = c1.offset[v], c2.offset[v]
        if step.kind == "dot":
            k = next(n for n, circ in enumerate(circ1) if step.dot_arc in circ)
            for j in range(1 << len(circ1)):
                labs = tuple((j >> (len(circ1) - 1 - t)) & 1 for t in range(len(circ1)))
                col: dict = {}
                for lab, coef in spec.times_x(labs[k]).items():
                    new = labs[:k] + (lab,) + labs[k + 1:]
                    axpy(F, col, coef, {off2 + label_index(new): F.one})
                cols[off1 + j] = col
            continue
        t = Transition(spec, _refined(circ1, step.refine_before), _refined(circ2, step.refine_after))
        for j in range(1 << len(circ1)):
            labs = tuple((j >> (len(circ1) - 1 - s)) & 1 for s in range(len(circ1)))
            col = {}
            for labs2, coef in t(labs).items():
                axpy(F, col, coef, {off2 + label_index(labs2): F.one})
            cols[off1 + j] = col
    mats = {i: SparseMatrix(c2.complex.dim(i), c1.complex.dim(i), F, cols) for i, cols in comps.items()}
    return ChainMap(c1.complex, c2.complex, mats, 0, QSHIFT[step.kind])


@dataclass
class CobordismResult:
    diagrams: list[TangleDiagram]
    cubes: list[CubeComplex]
    map: ChainMap
    steps: list[EventStep]

    @property
    def target(self) -> TangleDiagram:
        return self.diagrams[-1]


def cobordism_map(d1: TangleDiagram, events: Sequence, spec: FrobeniusSpec | None = None,
                  target: TangleDiagram | None = None, cap: int = CROSSING_CAP,
                  verify: bool = True) -> CobordismResult:
    """Chain map C(d1) -> C(d_k) of an event sequence (empty sequence: identity)."""
    spec = spec or FrobeniusSpec.named("khovanov")
    cube = CubeComplex(Picture.from_diagram(d1), spec, cap)
    diagrams, cubes, steps = [d1], [cube], []
    total = ChainMap.identity(cube.complex)
    for ev in events:
        step = diagram_event(diagrams[-1], ev)
        nxt = cube if step.kind == "dot" else CubeComplex(Picture.from_diagram(step.after), spec, cap)
        m = step_map(step, cubes[-1], nxt)
        if verify:
            m.verify()
        total = m @ total
        diagrams.append(step.after)
        cubes.append(nxt)
        steps.append(step)
        cube = nxt
    if target is not None and target.canonical() != diagrams[-1].canonical():
        raise DiagramError("event sequence does not end at the stated target diagram", "event")
    return CobordismResult(diagrams, cubes, total, steps)
