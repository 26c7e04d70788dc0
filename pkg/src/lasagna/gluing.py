"""Tensor products of tangle bimodules over arc algebras, Hochschild-0, and the
direct check of the gluing isomorphism against homology of the glued diagram.

All quotients are computed per bidegree: a free space of matched pure
tensors modulo a span of relation vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .arc_algebra import ArcAlgebra, ArcBimodule, Composer, Summand, stacked_labels, tangle_module
from .diagram import DiagramError, TangleDiagram
from .khovanov.cube import CROSSING_CAP, kh
from .linalg import Echelon, GradedVectorSpace, SparseMatrix, axpy, graded_coequalizer
from .tqft import FrobeniusSpec


@dataclass
class Quotient:
    """Free space with basis ``labels`` (graded by ``degrees``) modulo relations."""

    labels: list
    degrees: list
    graded: bool
    echelons: dict = dc_field(default_factory=dict)
    n_relations: int = 0

    @property
    def free_dims(self) -> GradedVectorSpace:
        return GradedVectorSpace.from_degrees(self.degrees, self.graded)

    def rank(self, deg) -> int:
        ech = self.echelons.get(deg)
        return ech.rank if ech else 0

    @property
    def dims(self) -> GradedVectorSpace:
        free = self.free_dims.dims
        return GradedVectorSpace({deg: n - self.rank(deg) for deg, n in free.items()}, self.graded)

    @property
    def relation_ranks(self) -> dict:
        return {deg: e.rank for deg, e in sorted(self.echelons.items()) if e.rank}

    def reduce(self, vec: dict) -> dict:
        """Normal form of a free vector modulo the relations (zero iff it vanishes)."""
        out: dict = {}
        by_deg: dict = {}
        for k, c in vec.items():
            by_deg.setdefault(self.degrees[k], {})[k] = c
        for deg, part in by_deg.items():
            ech = self.echelons.get(deg)
            rem = ech.reduce(part)[0] if ech else part
            out.update(rem)
        return out


class _QuotientBuilder:
    def __init__(self, field, graded: bool):
        self.F = field
        self.graded = graded
        self.labels: list = []
        self.degrees: list = []
        self.index: dict = {}
        self.echelons: dict = {}
        self.n_relations = 0

    def add_basis(self, label, deg):
        self.index[label] = len(self.labels)
        self.labels.append(label)
        self.degrees.append(deg)

    def add_relation(self, vec: dict):
        vec = {k: c for k, c in vec.items() if c != 0}
        self.n_relations += 1
        if not vec:
            return
        degs = {self.degrees[k] for k in vec}
        if len(degs) != 1:
            raise ValueError(f"relation is not homogeneous: degrees {sorted(degs)}")
        deg = degs.pop()
        ech = self.echelons.get(deg)
        if ech is None:
            ech = self.echelons[deg] = Echelon(self.F)
        ech.add(vec)

    def build(self) -> Quotient:
        return Quotient(self.labels, self.degrees, self.graded, self.echelons, self.n_relations)


def _add_deg(d1, d2):
    return (d1[0] + d2[0], d1[1] + d2[1])


def _same_algebra(a: ArcAlgebra, b: ArcAlgebra):
    if a.n != b.n or a.spec.name != b.spec.name or a.spec.field != b.spec.field:
        raise ValueError(f"modules are over different algebras (H^{a.n} {a.spec.name} vs "
                         f"H^{b.n} {b.spec.name})")


@dataclass
class TensorResult:
    quotient: Quotient
    left: ArcBimodule
    right: ArcBimodule
    algebra: ArcAlgebra

    @property
    def dims(self) -> GradedVectorSpace:
        return self.quotient.dims

    def pure(self, m: int, n: int) -> dict:
        """Normal form of the pure tensor m (x) n (zero for mismatched idempotents)."""
        k = self.quotient_index(m, n)
        if k is None:
            return {}
        return self.quotient.reduce({k: self.algebra.spec.field.one})

    def quotient_index(self, m: int, n: int) -> int | None:
        return self._index.get((m, n))


def tensor_over(M: ArcBimodule, N: ArcBimodule) -> TensorResult:
    """M (x)_{H^n} N for M an (H^l, H^n)- and N an (H^n, H^p)-bimodule."""
    H = M.right
    _same_algebra(H, N.left)
    F = H.spec.field
    qb = _QuotientBuilder(F, H.spec.graded)
    n_by_left: dict = {}
    for y, ((b, c), _) in enumerate(N.basis):
        n_by_left.setdefault(b, []).append(y)
    for x, ((a, b), _) in enumerate(M.basis):
        for y in n_by_left.get(b, ()):
            qb.add_basis((x, y), _add_deg(M.degree(x), N.degree(y)))
    h_by_left: dict = {}
    for h, ((b, c), _) in enumerate(H.basis):
        h_by_left.setdefault(b, []).append(h)
    for x, ((a, b), _) in enumerate(M.basis):
        for h in h_by_left.get(b, ()):
            c = H.basis[h][0][1]
            xh = M.act_right(x, h)
            for y in n_by_left.get(c, ()):
                rel: dict = {}
                for x2, cx in xh.items():
                    axpy(F, rel, cx, {qb.index[(x2, y)]: F.one})
                for y2, cy in N.act_left(h, y).items():
                    axpy(F, rel, F.neg(cy), {qb.index[(x, y2)]: F.one})
                qb.add_relation(rel)
    res = TensorResult(qb.build(), M, N, H)
    res._index = qb.index
    return res


# -- Hochschild-0 -------------------------------------------------------------------------

def _check_square(B: ArcBimodule):
    if B.m != B.n:
        raise ValueError(f"Hochschild homology needs m = n, got ({B.m},{B.n})")
    _same_algebra(B.left, B.right)


def hochschild0(B: ArcBimodule) -> GradedVectorSpace:
    """B / span{h v - v h}, as a graded coequalizer of the two actions."""
    _check_square(B)
    H = B.right
    F = H.spec.field
    graded = H.spec.graded
    cols: dict = {}
    for v in range(B.dim):
        for h in range(H.dim):
            lv, rv = B.act_left(h, v), B.act_right(v, h)
            if not lv and not rv:
                continue
            deg = _add_deg(B.degree(v), H.degree(h))
            cols.setdefault(deg, []).append((lv, rv))
    by_deg: dict = {}
    for k in range(B.dim):
        by_deg.setdefault(B.degree(k), []).append(k)
    blocks = {}
    for deg, idx in by_deg.items():
        pos = {k: j for j, k in enumerate(idx)}
        pairs = cols.get(deg, [])
        f = SparseMatrix(len(idx), len(pairs), F, [{pos[k]: c for k, c in lv.items()} for lv, _ in pairs])
        g = SparseMatrix(len(idx), len(pairs), F, [{pos[k]: c for k, c in rv.items()} for _, rv in pairs])
        blocks[deg] = (f, g)
    return graded_coequalizer(blocks, graded)[0]


def hochschild0_relations(B: ArcBimodule) -> Quotient:
    """Explicit enumeration: one relation h v - v h per matched basis pair."""
    _check_square(B)
    H = B.right
    F = H.spec.field
    qb = _QuotientBuilder(F, H.spec.graded)
    for k in range(B.dim):
        qb.add_basis(k, B.degree(k))
    for v, ((a, b), _) in enumerate(B.basis):
        for h, ((c, e), _) in enumerate(H.basis):
            if e != a and c != b:
                continue
            rel = dict(B.act_left(h, v))
            axpy(F, rel, F.neg(F.one), B.act_right(v, h))
            qb.add_relation(rel)
    return qb.build()


def hochschild0_enveloping(B: ArcBimodule) -> Quotient:
    """B (x) over H (x) H^op of the regular bimodule H, with H (x) H^op generated by
    g (x) 1 and 1 (x) g; relations g'v (x) x - v (x) x g' and v g (x) x - v (x) g x."""
    _check_square(B)
    H = B.right
    F = H.spec.field
    qb = _QuotientBuilder(F, H.spec.graded)
    x_by_left: dict = {}
    for x, ((b, a), _) in enumerate(H.basis):
        x_by_left.setdefault((b, a), []).append(x)
    for v, ((a, b), _) in enumerate(B.basis):
        for x in x_by_left.get((b, a), ()):
            qb.add_basis((v, x), _add_deg(B.degree(v), H.degree(x)))

    def put(rel, vec_v, x, sign):
        for v2, c in vec_v.items():
            axpy(F, rel, F.mul(sign, c), {qb.index[(v2, x)]: F.one})

    def put_x(rel, v, vec_x, sign):
        for x2, c in vec_x.items():
            axpy(F, rel, F.mul(sign, c), {qb.index[(v, x2)]: F.one})

    one, mone = F.one, F.neg(F.one)
    for v, ((a, b), _) in enumerate(B.basis):
        for g, ((c, e), _) in enumerate(H.basis):
            # v g (x) x  -  v (x) g x      (v g in (a, e), x in (e, a), g x in (c, a) = (b, a))
            if c == b:
                for x in x_by_left.get((e, a), ()):
                    rel: dict = {}
                    put(rel, B.act_right(v, g), x, one)
                    put_x(rel, v, H.product(g, x), mone)
                    qb.add_relation(rel)
            # g v (x) x  -  v (x) x g      (g v in (c, b), x in (b, c), x g in (b, e) = (b, a))
            if e == a:
                for x in x_by_left.get((b, c), ()):
                    rel = {}
                    put(rel, B.act_left(g, v), x, one)
                    put_x(rel, v, H.product(x, g), mone)
                    qb.add_relation(rel)
    return qb.build()


# -- the gluing check -----------------------------------------------------------------------

@dataclass
class GlueReport:
    lhs_dims: GradedVectorSpace
    rhs_dims: GradedVectorSpace
    map_rank: int
    relations_killed: bool

    @property
    def graded_pass(self) -> bool:
        return self.lhs_dims == self.rhs_dims

    @property
    def dims_pass(self) -> bool:
        return self.lhs_dims.total == self.rhs_dims.total

    @property
    def passed(self) -> bool:
        return self.graded_pass and self.relations_killed and self.map_rank == self.rhs_dims.total

    def to_json(self) -> dict:
        return {"lhs_dims": self.lhs_dims.to_records(), "rhs_dims": self.rhs_dims.to_records(),
                "pass": self.passed, "graded_pass": self.graded_pass,
                "dimension_pass": self.dims_pass, "map_rank": self.map_rank,
                "relations_killed": self.relations_killed}


def glue_verify(d1: TangleDiagram, d2: TangleDiagram, spec: FrobeniusSpec | None = None,
                cap: int = CROSSING_CAP) -> GlueReport:
    """Compare kh(d1 d2) with tangle_module(d1) (x)_{H^n} tangle_module(d2).

    Besides the dimensions, the gluing map m (x) n -> Kh(d1 d2) is computed
    on the quotient basis and its rank reported; it must kill all relations.
    """
    spec = spec or FrobeniusSpec.named("khovanov")
    if d1.top or d2.bottom:
        raise DiagramError("glue_verify takes a (0,n)- and an (n,0)-tangle", "boundary-size")
    if len(d1.bottom) != len(d2.top):
        raise DiagramError("boundary sizes do not match", "boundary-size")
    if d1.n_crossings + d2.n_crossings > cap:
        from .khovanov.cube import CapExceeded
        raise CapExceeded("crossing count", d1.n_crossings + d2.n_crossings, cap)
    glued, labels = stacked_labels(d1, d2)
    lhs = kh(glued, spec, cap)
    M = tangle_module(d1, spec, cap=cap)
    N = ArcBimodule(d2, spec, left=M.right, cap=cap)
    fails = N.check()
    if fails:
        raise AssertionError("bimodule axioms fail: " + "; ".join(fails[:5]))
    T = tensor_over(M, N)
    F = spec.field
    empty = M.left.matchings[0]
    target = Summand(glued, empty, empty, spec, cap)
    comps = {}
    images = {}
    for k, (x, y) in enumerate(T.quotient.labels):
        (_, b), kx = M.basis[x]
        (_, _), ky = N.basis[y]
        comp = comps.get(b)
        if comp is None:
            comp = comps[b] = Composer(M.summands[(empty, b)], N.summands[(b, empty)], target, labels)
        images[k] = comp(kx, ky)
    # relations must map to zero; the map on the quotient has rank = rank of all images
    killed = True
    for deg, ech in T.quotient.echelons.items():
        for row in ech.rows.values():
            vec = row[0]
            img: dict = {}
            for k, c in vec.items():
                axpy(F, img, c, images[k])
            if img:
                killed = False
    rank = 0
    by_deg: dict = {}
    for k, deg in enumerate(T.quotient.degrees):
        by_deg.setdefault(deg, []).append(images[k])
    for vecs in by_deg.values():
        e = Echelon(F)
        for v in vecs:
            if v:
                e.add(v)
        rank += e.rank
    return GlueReport(lhs, T.dims, rank, killed)


@dataclass
class ChainGlueReport:
    """Chain-level gluing: generators of the cube complexes instead of homology classes."""

    composite_dims: GradedVectorSpace
    tensor_dims: GradedVectorSpace
    map_rank: int
    relations_killed: bool

    @property
    def passed(self) -> bool:
        return (self.composite_dims == self.tensor_dims and self.relations_killed
                and self.map_rank == self.composite_dims.total)


def chain_glue_verify(d1: TangleDiagram, d2: TangleDiagram, spec: FrobeniusSpec | None = None,
                      cap: int = CROSSING_CAP) -> ChainGlueReport:
    """Glue the chain groups of the closures over H^n and compare with the chain
    groups of the composite; the gluing map must be a graded bijection."""
    spec = spec or FrobeniusSpec.named("khovanov")
    F = spec.field
    if d1.top or d2.bottom or len(d1.bottom) != len(d2.top):
        raise DiagramError("chain_glue_verify takes a (0,n)- and an (n,0)-tangle", "boundary-size")
    H = ArcAlgebra(d1.n, spec)
    empty = enumerate_empty()
    glued, labels = stacked_labels(d1, d2)
    target = Summand(glued, empty, empty, spec, cap)
    M = {b: Summand(d1, empty, b, spec, cap) for b in H.matchings}
    N = {b: Summand(d2, b, empty, spec, cap) for b in H.matchings}
    rmap = stacked_labels(d1, H.tangle, which=0)[1]
    lmap = stacked_labels(H.tangle, d2, which=1)[1]

    def gens(s: Summand):
        c = s.cube.complex
        return [(i, k, (i, q + s.shift)) for i in c.degrees() for k, q in enumerate(c.qdeg[i])]

    qb = _QuotientBuilder(F, spec.graded)
    for b in H.matchings:
        for (i1, k1, e1) in gens(M[b]):
            for (i2, k2, e2) in gens(N[b]):
                qb.add_basis((b, i1, k1, i2, k2), _add_deg(e1, e2))
    for (b, c), s in H.summands.items():
        right = Composer(M[b], s, M[c], rmap)
        left = Composer(s, N[c], N[b], lmap)
        for kh_ in range(len(s)):
            ih, hv = s.rep(kh_)
            for (i1, k1, _) in gens(M[b]):
                j1, xh = right.chain(i1, {k1: F.one}, ih, hv)
                for (i2, k2, _) in gens(N[c]):
                    rel: dict = {}
                    for k, cx in xh.items():
                        axpy(F, rel, cx, {qb.index[(c, j1, k, i2, k2)]: F.one})
                    j2, hy = left.chain(ih, hv, i2, {k2: F.one})
                    for k, cy in hy.items():
                        axpy(F, rel, F.neg(cy), {qb.index[(b, i1, k1, j2, k)]: F.one})
                    qb.add_relation(rel)
    Q = qb.build()
    glue = {b: Composer(M[b], N[b], target, labels) for b in H.matchings}
    images = []
    for (b, i1, k1, i2, k2) in Q.labels:
        images.append(glue[b].chain(i1, {k1: F.one}, i2, {k2: F.one}))
    killed = True
    for ech in Q.echelons.values():
        for row, _ in ech.rows.values():
            acc: dict = {}
            for k, c in row.items():
                i, img = images[k]
                axpy(F, acc, c, {(i, x): v for x, v in img.items()})
            if acc:
                killed = False
    rank = 0
    by_deg: dict = {}
    for k, deg in enumerate(Q.degrees):
        i, img = images[k]
        by_deg.setdefault(deg, []).append({(i, x): v for x, v in img.items()})
    for vecs in by_deg.values():
        e = Echelon(F)
        for v in vecs:
            if v:
                e.add(v)
        rank += e.rank
    return ChainGlueReport(target.cube.complex.graded_dims(), Q.dims, rank, killed)


def enumerate_empty():
    from .diagram import CrossinglessMatching
    return CrossinglessMatching(0, ())
