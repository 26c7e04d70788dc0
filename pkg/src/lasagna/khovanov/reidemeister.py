"""Reidemeister moves on closed diagrams and the chain homotopy equivalences
between their cube complexes.

A move relates a larger diagram ``big`` to a smaller ``small`` by deleting a
set of local crossings.  The equivalence is obtained by Gaussian elimination
restricted to cube edges of the local crossings that create or destroy a
small circle made only of local arcs; the surviving generators are then
matched with the generators of ``small`` through the arcs both diagrams
share.  Both directions are returned and verified as chain maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..diagram import DiagramError, TangleDiagram, faces
from ..linalg import ChainComplexError, ChainMap, SparseMatrix, gaussian_simplify
from ..tqft import ONE, X, FrobeniusSpec
from .cube import CROSSING_CAP, CubeComplex, Picture, Transition, labelings


class MoveNotApplicable(DiagramError):
    pass


@dataclass
class Removal:
    """``small`` is ``big`` with crossings ``local`` deleted.

    ``keep[k]`` is the index in ``big`` of crossing k of ``small``;
    ``arc_map[s]`` is the set of ``big`` arcs that make up arc ``s``.
    """

    big: TangleDiagram
    small: TangleDiagram
    local: tuple[int, ...]
    keep: tuple[int, ...]
    arc_map: dict


def remove_crossings(d: TangleDiagram, local: Sequence[int], joins: Sequence[tuple[int, int]],
                     internal: Sequence[int]) -> Removal:
    """Delete crossings, glue arcs in ``joins`` and drop ``internal`` arcs."""
    local = tuple(sorted(set(local)))
    keep = tuple(i for i in range(d.n_crossings) if i not in local)
    parent = {a: a for a in d.arcs()}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in joins:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    internal = set(internal)
    crossings = tuple(tuple(find(v) for v in d.crossings[i]) for i in keep)
    used = {v for c in crossings for v in c}
    classes: dict[int, set] = {}
    for a in d.arcs():
        if a not in internal:
            classes.setdefault(find(a), set()).add(a)
    loops = tuple(sorted(r for r in classes if r not in used))
    heads = None
    if d.oriented:
        newpos = {old: new for new, old in enumerate(keep)}
        hd = dict(d.heads)
        heads = {}
        for r, members in classes.items():
            if r not in used:
                continue
            ends = [e for a in members for e in d.endpoints(a) if e[0] == "x" and e[1] in newpos]
            hs = [e for e in ends if any(hd.get(a) == e for a in members)]
            if len(hs) != 1:
                raise MoveNotApplicable("orientation does not survive the move", "orientation")
            heads[r] = ("x", newpos[hs[0][1]], hs[0][2])
        small = TangleDiagram(crossings, (), (), loops, tuple(sorted(heads.items())), (), d.framing)
    else:
        small = TangleDiagram(crossings, (), (), loops, None,
                              tuple(d.signs[i] for i in keep), d.framing)
    return Removal(d, small, local, keep, {r: frozenset(m) for r, m in classes.items()})


def _opposite(d: TangleDiagram, ci: int, slot: int) -> int:
    return d.crossings[ci][(slot + 2) % 4]


def r1_removal(d: TangleDiagram, c: int) -> Removal:
    """Remove the kink at crossing ``c``."""
    cr = d.crossings[c]
    for s in range(4):
        if cr[s] == cr[(s + 1) % 4]:
            k = cr[s]
            p, q = cr[(s + 2) % 4], cr[(s + 3) % 4]
            return remove_crossings(d, [c], [(p, q)], [k])
    raise MoveNotApplicable(f"crossing {c} is not a kink", "R1")


def _bigon_arcs(d: TangleDiagram, c1: int, c2: int):
    for face in faces(d):
        if len(face) != 2:
            continue
        (u, _), (w, _) = face
        ends_u = {e[1] for e in d.endpoints(u) if e[0] == "x"}
        ends_w = {e[1] for e in d.endpoints(w) if e[0] == "x"}
        if u != w and ends_u == ends_w == {c1, c2}:
            yield u, w


def r2_removal(d: TangleDiagram, c1: int, c2: int, bigon: tuple[int, int] | None = None) -> Removal:
    """Remove a bigon bounded by crossings ``c1`` and ``c2`` (one strand over at both).

    ``bigon`` picks the two arcs of the bigon when several faces qualify."""
    if c1 == c2:
        raise MoveNotApplicable("R2 needs two distinct crossings", "R2")
    for u, w in _bigon_arcs(d, c1, c2):
        if bigon is not None and {u, w} != set(bigon):
            continue
        slots_u = {e[1]: e[2] for e in d.endpoints(u)}
        slots_w = {e[1]: e[2] for e in d.endpoints(w)}
        over_u = [slots_u[c] % 2 for c in (c1, c2)]
        over_w = [slots_w[c] % 2 for c in (c1, c2)]
        if len(set(over_u)) != 1 or len(set(over_w)) != 1 or over_u[0] == over_w[0]:
            continue
        joins = [(_opposite(d, c1, slots_u[c1]), _opposite(d, c2, slots_u[c2])),
                 (_opposite(d, c1, slots_w[c1]), _opposite(d, c2, slots_w[c2]))]
        return remove_crossings(d, [c1, c2], joins, [u, w])
    raise MoveNotApplicable(f"crossings {c1},{c2} do not bound an R2 bigon", "R2")


def r2_bigons(d: TangleDiagram) -> list[tuple[int, int]]:
    out = []
    for c1 in range(d.n_crossings):
        for c2 in range(c1 + 1, d.n_crossings):
            try:
                r2_removal(d, c1, c2)
            except MoveNotApplicable:
                continue
            out.append((c1, c2))
    return out


def kinks(d: TangleDiagram) -> list[int]:
    return [c for c, cr in enumerate(d.crossings) if any(cr[s] == cr[(s + 1) % 4] for s in range(4))]


# -- adding crossings --------------------------------------------------------------------

def _fresh(d: TangleDiagram, k: int) -> list[int]:
    m = max(d.arcs(), default=-1) + 1
    return list(range(m, m + k))


def _traversal(d: TangleDiagram, a: int, sense: int):
    """(start endpoint, end endpoint) of arc ``a`` traversed in ``sense``."""
    occ = d.endpoints(a)
    return (occ[0], occ[1]) if sense > 0 else (occ[1], occ[0])


def _orientation_sense(d: TangleDiagram, a: int) -> int:
    if a in d.loops or not d.oriented:
        return 1
    return 1 if d.head(a) == d.endpoints(a)[1] else -1


def _rebuild(d: TangleDiagram, crossings, loops, sense_of: dict) -> TangleDiagram:
    """Diagram with new crossings; arcs oriented by the given traversal senses."""
    from ..diagram import from_pd
    crossings = tuple(tuple(c) for c in crossings)
    if d.oriented:
        occ: dict = {}
        for ci, c in enumerate(crossings):
            for s, lab in enumerate(c):
                occ.setdefault(lab, []).append(("x", ci, s))
        explicit = {}
        for lab, sense in sense_of.items():
            if lab in occ:
                explicit[lab] = sense
        return from_pd(crossings, loops=loops, orientations=explicit, framing=d.framing)
    raise DiagramError("adding crossings needs an oriented diagram", "orientation")


def r1_addition(d: TangleDiagram, arc: int, sign: int, side: int = 1) -> Removal:
    """Add a kink of crossing sign ``sign`` on ``arc``, on its left (``side=+1``)
    or right (``side=-1``) relative to the arc's orientation."""
    if not d.oriented:
        raise DiagramError("adding crossings needs an oriented diagram", "orientation")
    k, a2 = _fresh(d, 2)
    a1 = arc
    is_loop = arc in d.loops
    if is_loop:
        a2 = a1
    if side > 0:
        new = (a1, a2, k, k) if sign > 0 else (k, a1, a2, k)
    else:
        new = (k, k, a2, a1) if sign > 0 else (a1, k, k, a2)
    crossings = [list(c) for c in d.crossings]
    loops = tuple(x for x in d.loops if x != arc)
    sense = _orientation_sense(d, arc)
    if not is_loop:
        _, end = _traversal(d, arc, sense)
        crossings[end[1]][end[2]] = a2
    crossings.append(list(new))
    # the new crossing's slots follow traversal order: a1 ... k ... a2
    big = _rebuild(d, crossings, loops, {})
    if big.signs[-1] != sign:
        raise RuntimeError("internal: kink sign mismatch")
    nb = big.n_crossings - 1
    removal = r1_removal(big, nb)
    return _relabel_removal(removal, d)


def r2_addition(d: TangleDiagram, over: int, under: int) -> Removal:
    """Push a finger of arc ``over`` across arc ``under`` through a face they share."""
    if not d.oriented:
        raise DiagramError("adding crossings needs an oriented diagram", "orientation")
    if over == under:
        raise MoveNotApplicable("R2 needs two different arcs", "R2")
    loops = set(d.loops)
    choice = None
    if over in loops or under in loops:
        choice = (1, 1)
    else:
        for face in faces(d):
            sa = [s for (x, s) in face if x == over]
            sb = [s for (x, s) in face if x == under]
            if sa and sb:
                choice = (sa[0], sb[0])
                break
    if choice is None:
        raise MoveNotApplicable(f"arcs {over} and {under} share no face", "R2")
    sa, sb = choice
    a1, b1 = over, under
    am, a2, bm, b2 = _fresh(d, 4)
    if over in loops:
        a2 = a1
    if under in loops:
        b2 = b1
    crossings = [list(c) for c in d.crossings]
    for lab, s, new in ((over, sa, a2), (under, sb, b2)):
        if lab not in loops:
            _, end = _traversal(d, lab, s)
            crossings[end[1]][end[2]] = new
    b_along = _orientation_sense(d, under) == sb
    if b_along:
        p1 = (bm, am, b2, a1)
        p2 = (b1, am, bm, a2)
    else:
        p1 = (b2, a1, bm, am)
        p2 = (bm, a2, b1, am)
    crossings.append(list(p1))
    crossings.append(list(p2))
    new_loops = tuple(x for x in d.loops if x not in (over, under))
    big = _rebuild(d, crossings, new_loops, {})
    nb = big.n_crossings
    removal = r2_removal(big, nb - 2, nb - 1, (am, bm))
    return _relabel_removal(removal, d)


def _relabel_removal(removal: Removal, original: TangleDiagram) -> Removal:
    """Express ``removal.small`` with the labels of ``original`` (which it equals up to labels)."""
    small = removal.small
    if small.n_crossings != original.n_crossings or len(small.loops) != len(original.loops):
        raise RuntimeError("internal: addition did not invert")
    # crossings of small keep the order of original's crossings
    mp = {}
    for c_s, c_o in zip(small.crossings, original.crossings):
        for x, y in zip(c_s, c_o):
            if mp.setdefault(x, y) != y:
                raise RuntimeError("internal: addition relabeling clash")
    rest_s = [x for x in small.loops if x not in mp]
    rest_o = [x for x in original.loops if x not in mp.values()]
    # loops are matched through the arcs they contain in the big diagram
    unmatched = []
    for x in rest_s:
        cand = [y for y in rest_o if y in removal.arc_map[x]]
        if len(cand) == 1:
            mp[x] = cand[0]
            rest_o.remove(cand[0])
        elif cand:
            raise RuntimeError("internal: cannot match loops after addition")
        else:
            unmatched.append(x)
    # a kinked free loop is a figure eight; either lobe may be the kink
    if len(unmatched) != len(rest_o) or len(unmatched) > 1:
        raise RuntimeError("internal: cannot match loops after addition")
    mp.update(zip(unmatched, rest_o))
    arc_map = {mp[s]: m for s, m in removal.arc_map.items()}
    return Removal(removal.big, original, removal.local, removal.keep, arc_map)


# -- chain homotopy equivalences -----------------------------------------------------------

@dataclass
class Equivalence:
    removal: Removal
    big: CubeComplex
    small: CubeComplex
    to_small: ChainMap
    to_big: ChainMap


def equivalence(removal: Removal, spec: FrobeniusSpec | None = None, cap: int = CROSSING_CAP,
                verify: bool = True) -> Equivalence:
    spec = spec or FrobeniusSpec.named("khovanov")
    F = spec.field
    big = CubeComplex(Picture.from_diagram(removal.big), spec, cap)
    small = CubeComplex(Picture.from_diagram(removal.small), spec, cap)
    outer = set().union(*removal.arc_map.values()) if removal.arc_map else set()
    internal = set(removal.big.arcs()) - outer

    def is_small(circ):
        return circ <= internal

    used: set = set()
    pairs = []
    for v, circ_v in big.circles.items():
        for c in removal.local:
            if v[c]:
                continue
            w = v[:c] + (1,) + v[c + 1:]
            circ_w = big.circles[w]
            created = [s for s in circ_w if is_small(s) and s not in circ_v]
            destroyed = [s for s in circ_v if is_small(s) and s not in circ_w]
            if len(created) + len(destroyed) != 1:
                continue
            t = Transition(spec, circ_v, circ_w)
            for labs in labelings(len(circ_v)):
                if destroyed:
                    k = circ_v.index(destroyed[0])
                    if labs[k] != ONE:
                        continue
                img = t(labs)
                if created:
                    k2 = circ_w.index(created[0])
                    target = _split_target(t, labs, k2, img)
                else:
                    target = _merge_target(t, labs, img)
                if target is None:
                    continue
                x = big.index(v, labs)
                y = big.index(w, target)
                if x in used or y in used:
                    continue
                used.add(x)
                used.add(y)
                pairs.append((x, y))
    simp = gaussian_simplify(big.complex, candidates=pairs)
    if len(simp.steps) != len(pairs):
        raise ChainComplexError("local elimination lost a pivot")
    red = simp.reduced
    # identify survivors with the small complex
    perm: dict[int, dict] = {}
    for i, labels in red.bases.items():
        cols, seen = [], set()
        for (v, labs) in labels:
            v2 = tuple(v[k] for k in removal.keep)
            circ_b = big.circles[v]
            circ_s = small.circles[v2]
            where = {}
            for j, cs in enumerate(circ_s):
                for a in cs:
                    for b in removal.arc_map[a]:
                        where[b] = j
            img = [None] * len(circ_s)
            for k, cb in enumerate(circ_b):
                if is_small(cb):
                    continue
                js = {where[a] for a in cb if a in where}
                if len(js) != 1 or img[next(iter(js))] is not None:
                    raise ChainComplexError("survivor circle does not match a circle of the smaller diagram")
                img[js.pop()] = labs[k]
            if None in img:
                raise ChainComplexError("survivor circles do not match the smaller diagram")
            i2, idx = small.index(v2, tuple(img))
            if i2 != i:
                raise ChainComplexError("homological degrees do not match across the move")
            if idx in seen:
                raise ChainComplexError("two survivors match the same generator", i)
            seen.add(idx)
            cols.append({idx: F.one if _edge_parity(v, removal.local, removal.keep) == 0
                         else F.neg(F.one)})
        perm[i] = SparseMatrix(small.complex.dim(i), len(labels), F, cols)
    for i in set(small.complex.degrees()) | set(red.degrees()):
        if small.complex.dim(i) != red.dim(i):
            raise ChainComplexError("survivor count differs from the smaller complex", i)
    iso = ChainMap(red, small.complex, perm)
    iso.verify()
    inv = ChainMap(small.complex, red, {i: m.transpose() for i, m in perm.items()})
    to_small = iso @ simp.projection_map()
    to_big = simp.inclusion_map() @ inv
    if verify:
        to_small.verify()
        to_big.verify()
    return Equivalence(removal, big, small, to_small, to_big)


def _edge_parity(v, local, keep) -> int:
    """Sign exponent relating edge signs of the big cube at v to the small cube:
    each kept 1-bit sees the local 1-bits before it."""
    ones = [c for c in local if v[c]]
    return sum(1 for c in keep if v[c] for c2 in ones if c2 < c) % 2


def _split_target(t: Transition, labs, k2: int, img: dict):
    """The image term with the new small circle labelled X and the rest unchanged."""
    split = [op for op in t.ops if op[0] == "split"][0]
    j1, j2 = split[2]
    other = j1 if j2 == k2 else j2
    want_other = labs[split[1]]
    for labs2 in img:
        if labs2[k2] == X and labs2[other] == want_other:
            return labs2
    return None


def _merge_target(t: Transition, labs, img: dict):
    merge = [op for op in t.ops if op[0] == "merge"][0]
    i, k = merge[1]
    for labs2 in img:
        if labs2[merge[2]] == (labs[k] if labs[i] == ONE else labs[i]):
            return labs2
    return None


def reidemeister_map(move: str, location, d: TangleDiagram, spec: FrobeniusSpec | None = None,
                     add: bool = False, cap: int = CROSSING_CAP) -> Equivalence:
    """Equivalence for one move; ``to_small``/``to_big`` give both directions.

    Removal: ``R1`` (location = kink crossing; ``R1+``/``R1-`` also check its
    sign) and ``R2`` (location = the two bigon crossings).  With ``add=True``:
    ``R1±`` takes ``(arc, side)`` and ``R2`` takes ``(over_arc, under_arc)``;
    ``d`` is then the smaller diagram.
    """
    key = move.upper().replace(" ", "")
    if key.startswith("R1"):
        sign = {"R1": None, "R1+": 1, "R1-": -1}.get(key, "bad")
        if sign == "bad":
            raise MoveNotApplicable(f"unknown move {move!r}", "move")
        if add:
            if sign is None:
                raise MoveNotApplicable("adding a kink needs R1+ or R1-", "R1")
            arc, side = location
            removal = r1_addition(d, arc, sign, side)
        else:
            removal = r1_removal(d, int(location))
            if sign is not None and d.signs[int(location)] != sign:
                raise MoveNotApplicable(f"crossing {location} has sign {d.signs[int(location)]}", "R1")
    elif key == "R2":
        if add:
            removal = r2_addition(d, *location)
        else:
            removal = r2_removal(d, *location)
    elif key == "R3":
        raise MoveNotApplicable("R3 chain maps are not built; compare homology dimensions instead", "R3")
    else:
        raise MoveNotApplicable(f"unknown move {move!r}", "move")
    return equivalence(removal, spec, cap)
