"""Arc algebras H^n, tangle bimodules and vertical composition.

Summands are homologies of closures W(a) D b.  Closures are assembled as a
stack of parts (a cap row, the tangle, a cup row) in a node picture where row
arcs are split into halves at their boundary points; composing two closures
along a common matching b glues the half-arcs of the cup row of b to those
of the cap row of b one arc at a time, each step a merge or split of circles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .diagram import (CrossinglessMatching, DiagramError, TangleDiagram, enumerate_matchings,
                      _unoriented, identity, stack)
from .khovanov.cube import CROSSING_CAP, CapExceeded, CubeComplex, Picture, Transition
from .linalg import GradedVectorSpace, Homology, axpy
from .tqft import ONE, FrobeniusSpec

ALGEBRA_CAP = 4


@dataclass(frozen=True)
class Row:
    """A row of caps (``side="top"``, closes a boundary from above) or cups."""

    matching: CrossinglessMatching
    side: str

    def arc_of_point(self) -> list[int]:
        out = [0] * (2 * self.matching.n)
        for k, (i, j) in enumerate(self.matching.pairs):
            out[i - 1] = k
            out[j - 1] = k
        return out


class StackPicture:
    """Parts stacked top to bottom, as a :class:`Picture`.

    Tangle nodes are ``(part, label)``; row nodes are half-arcs
    ``(part, arc, point)``.  A bridge ``(p, q, k)`` replaces arc k of rows p
    and q by two strands joining them at the arc's endpoints.
    """

    def __init__(self, parts: Sequence, bridges: Sequence[tuple[int, int, int]] = ()):
        self.parts = tuple(parts)
        nodes, edges, crossings, signs = [], [], [], []
        cut = {(p, k) for (p, q, k) in bridges} | {(q, k) for (p, q, k) in bridges}
        for p, part in enumerate(self.parts):
            if isinstance(part, Row):
                for k, (i, j) in enumerate(part.matching.pairs):
                    u, v = (p, k, i - 1), (p, k, j - 1)
                    nodes += [u, v]
                    if (p, k) not in cut:
                        edges.append((u, v))
            else:
                nodes += [(p, lab) for lab in part.arcs()]
                crossings += [tuple((p, lab) for lab in c) for c in part.crossings]
                signs += list(part.signs)
        for p in range(len(self.parts) - 1):
            lo, hi = self.boundary(p, "b"), self.boundary(p + 1, "t")
            if len(lo) != len(hi):
                raise DiagramError(f"boundary size mismatch between parts {p} and {p + 1}",
                                   "boundary-size")
            edges += list(zip(lo, hi))
        for (p, q, k) in bridges:
            i, j = self.parts[p].matching.pairs[k]
            edges += [((p, k, i - 1), (q, k, i - 1)), ((p, k, j - 1), (q, k, j - 1))]
        self.picture = Picture(nodes, edges, crossings, signs)

    def boundary(self, p: int, side: str) -> list:
        part = self.parts[p]
        if isinstance(part, Row):
            if (part.side == "top") != (side == "b"):
                return []
            return [(p, k, i) for i, k in enumerate(part.arc_of_point())]
        pts = part.top if side == "t" else part.bottom
        return [(p, lab) for lab in pts]


class Summand:
    """Homology of the closure W(a) D b, quantum-shifted by -n (n = bottom half-count)."""

    def __init__(self, d: TangleDiagram, a: CrossinglessMatching, b: CrossinglessMatching,
                 spec: FrobeniusSpec, cap: int = CROSSING_CAP):
        if 2 * a.n != len(d.top) or 2 * b.n != len(d.bottom):
            raise DiagramError(f"matchings of sizes ({a.n},{b.n}) do not fit a ({d.m},{d.n})-tangle",
                               "boundary-size")
        self.d, self.a, self.b, self.spec = d, a, b, spec
        self.parts = (Row(a, "top"), d, Row(b, "bottom"))
        self.stack = StackPicture(self.parts)
        self.cube = CubeComplex(self.stack.picture, spec, cap, check=False)
        self.homology = Homology(self.cube.complex)
        self.basis = self.homology.basis
        self.pos = {key: k for k, key in enumerate(self.basis)}
        self.shift = -d.n if spec.graded else 0

    def __len__(self):
        return len(self.basis)

    def degree(self, k: int) -> tuple[int, int]:
        i, q, _ = self.basis[k]
        return i, q + self.shift

    @property
    def dims(self) -> GradedVectorSpace:
        return GradedVectorSpace.from_degrees((self.degree(k) for k in range(len(self))),
                                              self.spec.graded)

    def rep(self, k: int) -> tuple[int, dict]:
        i, q, j = self.basis[k]
        return i, self.homology.rep(i, q, j)

    def coords(self, i: int, vec: dict) -> dict:
        out = {}
        for (i2, q), cs in self.homology.classify(i, vec).items():
            for j, c in cs.items():
                out[self.pos[(i2, q, j)]] = c
        return out

    def unit_class(self) -> int | None:
        """Position of the all-1 labeling when the closure is crossingless."""
        if self.cube.n:
            return None
        circ = self.cube.circles[()]
        i, idx = self.cube.index((), (ONE,) * len(circ))
        c = self.coords(i, {idx: self.spec.field.one})
        if len(c) != 1:
            return None
        (k, v), = c.items()
        return k if v == self.spec.field.one else None


def stacked_labels(d1: TangleDiagram, d2: TangleDiagram, which: int | None = None
                   ) -> tuple[TangleDiagram, dict]:
    """The composite d1 d2 and a map (part, label) -> label of the composite.

    With ``which`` set, the composite is replaced by that part itself (the
    other part must be an identity tangle) and labels are that part's own.
    """
    comp = stack([_unoriented(d1), _unoriented(d2)])
    if which is None:
        return comp.diagram, dict(comp.relabel)
    own = (d1, d2)[which]
    inv = {}
    for lab in own.arcs():
        s = comp.relabel[(which, lab)]
        if s in inv:
            raise DiagramError("identity factor merges two arcs", "compose")
        inv[s] = lab
    return own, {key: inv[s] for key, s in comp.relabel.items()}


class Composer:
    """Homology-level product Kh(W(a) D1 b) x Kh(W(b) D2 c) -> Kh(W(a) D1D2 c).

    ``label_map`` sends (0, label of D1) and (1, label of D2) to labels of the
    target's tangle; the target must list the crossings of D1 then D2.
    """

    def __init__(self, s1: Summand, s2: Summand, target: Summand, label_map: dict):
        if s1.b != s2.a:
            raise ValueError("middle matchings differ")
        if target.a != s1.a or target.b != s2.b:
            raise ValueError("target closure does not match the outer matchings")
        self.s1, self.s2, self.target = s1, s2, target
        self.spec = target.spec
        parts = s1.parts + s2.parts
        nb = s1.b.n
        bridges = [(2, 3, k) for k in range(nb)]
        self.pics = [StackPicture(parts, bridges[:k]).picture for k in range(nb + 1)]
        d1 = s1.d

        def tmap(node):
            p = node[0]
            if p == 0:
                return node
            if p == 5:
                return (2,) + node[1:]
            if p == 1:
                return (1, label_map[(0, node[1])])
            if p == 4:
                return (1, label_map[(1, node[1])])
            return (1, label_map[(0, d1.bottom[node[2]])])

        self.tmap = tmap
        final = self.pics[-1]
        tpic = target.stack.picture
        if len(final.crossings) != len(tpic.crossings) or any(
                tuple(tmap(x) for x in c) != tc for c, tc in zip(final.crossings, tpic.crossings)):
            raise DiagramError("target tangle does not match the composite", "compose")
        self._embed: dict = {}
        self._trans: dict = {}
        self._to_target: dict = {}

    def _embed_perm(self, v1: tuple, v2: tuple) -> list[int]:
        key = (v1, v2)
        hit = self._embed.get(key)
        if hit is None:
            circ = self.pics[0].circles(v1 + v2)
            where = {}
            for n, c in enumerate(circ):
                where[min(c)] = n
            hit = [where[min(c)] for c in self.s1.cube.circles[v1]]
            hit += [where[min((x[0] + 3,) + x[1:] for x in c)] for c in self.s2.cube.circles[v2]]
            self._embed[key] = hit
        return hit

    def _transition(self, k: int, v: tuple) -> Transition:
        t = self._trans.get((k, v))
        if t is None:
            t = Transition(self.spec, self.pics[k].circles(v), self.pics[k + 1].circles(v))
            self._trans[(k, v)] = t
        return t

    def _target_perm(self, v: tuple) -> list[int]:
        hit = self._to_target.get(v)
        if hit is None:
            tcirc = self.target.cube.circles[v]
            where = {x: n for n, c in enumerate(tcirc) for x in c}
            hit = []
            for c in self.pics[-1].circles(v):
                js = {where[self.tmap(x)] for x in c}
                if len(js) != 1:
                    raise DiagramError("composite circle does not match the target", "compose")
                hit.append(js.pop())
            if sorted(hit) != list(range(len(tcirc))):
                raise DiagramError("composite circles do not match the target", "compose")
            self._to_target[v] = hit
        return hit

    def chain(self, i1: int, x: dict, i2: int, y: dict) -> tuple[int, dict]:
        """Image of the chain x (x) y in the target complex."""
        F = self.spec.field
        b1, b2 = self.s1.cube.complex.bases[i1], self.s2.cube.complex.bases[i2]
        cur: dict = {}
        for j, cx in x.items():
            v1, l1 = b1[j]
            for l, cy in y.items():
                v2, l2 = b2[l]
                perm = self._embed_perm(v1, v2)
                labs = [None] * len(perm)
                for src, dst in enumerate(perm):
                    labs[dst] = (l1 + l2)[src]
                axpy(F, cur, F.mul(cx, cy), {(v1 + v2, tuple(labs)): F.one})
        for k in range(len(self.pics) - 1):
            nxt: dict = {}
            for (v, labs), c in cur.items():
                for labs2, e in self._transition(k, v)(labs).items():
                    axpy(F, nxt, F.mul(c, e), {(v, labs2): F.one})
            cur = nxt
        out: dict = {}
        i = None
        for (v, labs), c in cur.items():
            perm = self._target_perm(v)
            labs2 = [None] * len(perm)
            for src, dst in enumerate(perm):
                labs2[dst] = labs[src]
            i, idx = self.target.cube.index(v, tuple(labs2))
            axpy(F, out, c, {idx: F.one})
        if i is None:
            i = i1 + i2
        return i, out

    def __call__(self, k1: int, k2: int) -> dict:
        """Product of basis classes, in target basis positions."""
        i1, x = self.s1.rep(k1)
        i2, y = self.s2.rep(k2)
        i, vec = self.chain(i1, x, i2, y)
        return self.target.coords(i, vec) if vec else {}


def _identity_tangle(n: int) -> TangleDiagram:
    return identity(2 * n, [1 if i % 2 == 0 else -1 for i in range(2 * n)])


class _Graded:
    """Shared bookkeeping: summands keyed by matching pairs, one global basis."""

    def _index_summands(self, summands: dict):
        self.summands = summands
        self.offset: dict = {}
        self.basis: list[tuple] = []
        for key in sorted(summands, key=lambda ab: (ab[0].pairs, ab[1].pairs)):
            self.offset[key] = len(self.basis)
            self.basis += [(key, k) for k in range(len(summands[key]))]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def dims(self) -> GradedVectorSpace:
        out: dict = {}
        for key, s in self.summands.items():
            for deg, n in s.dims.dims.items():
                out[deg] = out.get(deg, 0) + n
        return GradedVectorSpace(out, self.spec.graded)

    def degree(self, x: int) -> tuple[int, int]:
        key, k = self.basis[x]
        return self.summands[key].degree(k)

    def _globalize(self, key, local: dict) -> dict:
        off = self.offset[key]
        return {off + k: c for k, c in local.items()}


class ArcAlgebra(_Graded):
    """H^n = sum over matchings (a, b) of Kh(W(a) b), with vertical composition."""

    def __init__(self, n: int, spec: FrobeniusSpec | None = None, cap: int = ALGEBRA_CAP):
        if n > cap:
            raise CapExceeded("arc algebra size n", n, cap)
        self.n = n
        self.spec = spec or FrobeniusSpec.named("khovanov")
        self.matchings = enumerate_matchings(n)
        self.tangle = _identity_tangle(n)
        self._index_summands({(a, b): Summand(self.tangle, a, b, self.spec)
                              for a in self.matchings for b in self.matchings})
        self._composers: dict = {}
        self._table: dict = {}
        _, self._labels = stacked_labels(self.tangle, self.tangle, which=0)

    def idempotent(self, a: CrossinglessMatching) -> int:
        return self.offset[(a, a)] + self.summands[(a, a)].unit_class()

    def unit_terms(self) -> dict:
        """Sum of all idempotents (a unit since the matching set is finite)."""
        return {self.idempotent(a): self.spec.field.one for a in self.matchings}

    def _composer(self, a, b, c) -> Composer:
        key = (a, b, c)
        comp = self._composers.get(key)
        if comp is None:
            s = self.summands
            comp = Composer(s[(a, b)], s[(b, c)], s[(a, c)], self._labels)
            self._composers[key] = comp
        return comp

    def product(self, x: int, y: int) -> dict:
        """Product of basis elements; zero when the middle matchings differ."""
        hit = self._table.get((x, y))
        if hit is not None:
            return hit
        (a, b), k1 = self.basis[x]
        (b2, c), k2 = self.basis[y]
        out = {} if b != b2 else self._globalize((a, c), self._composer(a, b, c)(k1, k2))
        self._table[(x, y)] = out
        return out

    def mul(self, u: dict, v: dict) -> dict:
        F = self.spec.field
        out: dict = {}
        for x, cx in u.items():
            for y, cy in v.items():
                axpy(F, out, F.mul(cx, cy), self.product(x, y))
        return out

    def build_table(self) -> dict:
        for x in range(self.dim):
            (a, b), _ = self.basis[x]
            for c in self.matchings:
                off = self.offset[(b, c)]
                for k in range(len(self.summands[(b, c)])):
                    self.product(x, off + k)
        return self._table

    def nonzero_products(self) -> list[tuple[int, int, dict]]:
        self.build_table()
        return [(x, y, v) for (x, y), v in sorted(self._table.items()) if v]

    def check_units(self) -> list[str]:
        failures = []
        F = self.spec.field
        for x in range(self.dim):
            (a, b), _ = self.basis[x]
            if self.product(self.idempotent(a), x) != {x: F.one}:
                failures.append(f"1_{a.label()} * e{x} != e{x}")
            if self.product(x, self.idempotent(b)) != {x: F.one}:
                failures.append(f"e{x} * 1_{b.label()} != e{x}")
        return failures

    def check_associativity(self) -> list[str]:
        self.build_table()
        failures = []
        by_left: dict = {}
        for x, (key, _) in enumerate(self.basis):
            by_left.setdefault(key[0], []).append(x)
        for x in range(self.dim):
            (a, b), _ = self.basis[x]
            for y in by_left[b]:
                c = self.basis[y][0][1]
                xy = self.product(x, y)
                for z in by_left[c]:
                    if self.mul(xy, {z: self.spec.field.one}) != self.mul({x: self.spec.field.one},
                                                                       self.product(y, z)):
                        failures.append(f"(e{x} e{y}) e{z} != e{x} (e{y} e{z})")
        return failures


def build_arc_algebra(n: int, spec: FrobeniusSpec | None = None, cap: int = ALGEBRA_CAP) -> ArcAlgebra:
    alg = ArcAlgebra(n, spec, cap)
    alg.build_table()
    return alg


def vertical_compose(d1: TangleDiagram, a, b, u: dict, d2: TangleDiagram, b2, c, v: dict,
                     spec: FrobeniusSpec | None = None) -> tuple[Summand, dict]:
    """Compose u in Kh(W(a) d1 b) with v in Kh(W(b2) d2 c) (vectors over summand bases).

    Returns the target summand over the stacked tangle and the product
    (zero when ``b != b2``).
    """
    spec = spec or FrobeniusSpec.named("khovanov")
    if len(d1.bottom) != len(d2.top):
        raise DiagramError("tangles are not composable", "boundary-size")
    d12, labels = stacked_labels(d1, d2)
    target = Summand(d12, a, c, spec)
    if b != b2:
        return target, {}
    comp = Composer(Summand(d1, a, b, spec), Summand(d2, b2, c, spec), target, labels)
    F = spec.field
    out: dict = {}
    for k1, c1 in u.items():
        for k2, c2 in v.items():
            axpy(F, out, F.mul(c1, c2), comp(k1, k2))
    return target, out


class ArcBimodule(_Graded):
    """(H^m, H^n)-bimodule sum over (a, b) of Kh(W(a) D b) with both actions."""

    def __init__(self, d: TangleDiagram, spec: FrobeniusSpec | None = None,
                 left: ArcAlgebra | None = None, right: ArcAlgebra | None = None,
                 cap: int = CROSSING_CAP, algebra_cap: int = ALGEBRA_CAP):
        self.d = d
        self.m, self.n = d.m, d.n
        self.spec = spec or FrobeniusSpec.named("khovanov")
        self.left = left or ArcAlgebra(self.m, self.spec, algebra_cap)
        self.right = right or (self.left if self.n == self.m and left is None
                               else ArcAlgebra(self.n, self.spec, algebra_cap))
        if self.left.n != self.m or self.right.n != self.n:
            raise DiagramError("algebra sizes do not match the tangle boundary", "boundary-size")
        self._index_summands({(a, b): Summand(d, a, b, self.spec, cap)
                              for a in self.left.matchings for b in self.right.matchings})
        self._composers: dict = {}
        self._lmap = stacked_labels(self.left.tangle, d, which=1)[1]
        self._rmap = stacked_labels(d, self.right.tangle, which=0)[1]
        self._lcache: dict = {}
        self._rcache: dict = {}

    def act_left(self, h: int, v: int) -> dict:
        """h . v for basis elements h of H^m and v of the bimodule."""
        hit = self._lcache.get((h, v))
        if hit is None:
            (a2, a), k1 = self.left.basis[h]
            (a3, b), k2 = self.basis[v]
            hit = {}
            if a == a3:
                key = ("L", a2, a, b)
                comp = self._composers.get(key)
                if comp is None:
                    comp = Composer(self.left.summands[(a2, a)], self.summands[(a, b)],
                                    self.summands[(a2, b)], self._lmap)
                    self._composers[key] = comp
                hit = self._globalize((a2, b), comp(k1, k2))
            self._lcache[(h, v)] = hit
        return hit

    def act_right(self, v: int, h: int) -> dict:
        """v . h for basis elements v of the bimodule and h of H^n."""
        hit = self._rcache.get((v, h))
        if hit is None:
            (a, b), k1 = self.basis[v]
            (b2, c), k2 = self.right.basis[h]
            hit = {}
            if b == b2:
                key = ("R", a, b, c)
                comp = self._composers.get(key)
                if comp is None:
                    comp = Composer(self.summands[(a, b)], self.right.summands[(b, c)],
                                    self.summands[(a, c)], self._rmap)
                    self._composers[key] = comp
                hit = self._globalize((a, c), comp(k1, k2))
            self._rcache[(v, h)] = hit
        return hit

    def left_vec(self, h: int, vec: dict) -> dict:
        F = self.spec.field
        out: dict = {}
        for v, c in vec.items():
            axpy(F, out, c, self.act_left(h, v))
        return out

    def right_vec(self, vec: dict, h: int) -> dict:
        F = self.spec.field
        out: dict = {}
        for v, c in vec.items():
            axpy(F, out, c, self.act_right(v, h))
        return out

    def _partners(self, alg: ArcAlgebra, side: int) -> dict:
        out: dict = {}
        for x, (key, _) in enumerate(alg.basis):
            out.setdefault(key[side], []).append(x)
        return out

    def left_matrix(self, h: int) -> dict:
        return {v: self.act_left(h, v) for v in range(self.dim)}

    def right_matrix(self, h: int) -> dict:
        return {v: self.act_right(v, h) for v in range(self.dim)}

    def action_ranks(self) -> dict:
        """Rank of the left action of each H^m basis element and of the right action
        of each H^n basis element (as linear maps on the whole bimodule)."""
        from .linalg import rank_of_vectors
        F = self.spec.field
        left = {h: rank_of_vectors(F, self.left_matrix(h).values()) for h in range(self.left.dim)}
        right = {h: rank_of_vectors(F, self.right_matrix(h).values()) for h in range(self.right.dim)}
        return {"left": left, "right": right}

    def check(self) -> list[str]:
        """Unit, associativity and commutation axioms on all basis triples."""
        F = self.spec.field
        one = F.one
        fails = []
        L, R = self.left, self.right
        lby_right = self._partners(L, 1)
        rby_left = self._partners(R, 0)
        for v in range(self.dim):
            (a, b), _ = self.basis[v]
            if self.act_left(L.idempotent(a), v) != {v: one}:
                fails.append(f"1_{a.label()} . v{v} != v{v}")
            if self.act_right(v, R.idempotent(b)) != {v: one}:
                fails.append(f"v{v} . 1_{b.label()} != v{v}")
            for h2 in lby_right.get(a, ()):
                h2v = self.act_left(h2, v)
                a2 = L.basis[h2][0][0]
                for h1 in lby_right.get(a2, ()):
                    lhs = self.left_vec(h1, h2v)
                    rhs = {}
                    for x, c in L.product(h1, h2).items():
                        axpy(F, rhs, c, self.act_left(x, v))
                    if lhs != rhs:
                        fails.append(f"(h{h1} h{h2}) . v{v} != h{h1} . (h{h2} . v{v})")
                for g in rby_left.get(b, ()):
                    if self.right_vec(h2v, g) != self.left_vec(h2, self.act_right(v, g)):
                        fails.append(f"(h{h2} . v{v}) . g{g} != h{h2} . (v{v} . g{g})")
            for g1 in rby_left.get(b, ()):
                vg = self.act_right(v, g1)
                c = R.basis[g1][0][1]
                for g2 in rby_left.get(c, ()):
                    lhs = self.right_vec(vg, g2)
                    rhs = {}
                    for x, cc in R.product(g1, g2).items():
                        axpy(F, rhs, cc, self.act_right(v, x))
                    if lhs != rhs:
                        fails.append(f"(v{v} . g{g1}) . g{g2} != v{v} . (g{g1} g{g2})")
        return fails


def tangle_bimodule(d: TangleDiagram, spec: FrobeniusSpec | None = None, check: bool = True,
                    **kw) -> ArcBimodule:
    mod = ArcBimodule(d, spec, **kw)
    if check:
        fails = mod.check()
        if fails:
            raise AssertionError("bimodule axioms fail: " + "; ".join(fails[:5]))
    return mod


def tangle_module(d: TangleDiagram, spec: FrobeniusSpec | None = None, check: bool = True,
                  **kw) -> ArcBimodule:
    """Right H^n-module of a (0, n)-tangle (a bimodule with trivial left algebra H^0)."""
    if d.top:
        raise DiagramError("tangle_module needs an empty top boundary", "boundary-size")
    return tangle_bimodule(d, spec, check, **kw)
