"""Cube-of-resolutions complexes.

A :class:`Picture` is a closed planar picture: nodes (arc pieces) joined by
fixed edges and by the smoothings of its crossings.  Circles at a vertex of
the cube are the connected components; a circle is named by its least node
and circles are ordered by name.  Two node partitions over the same node set
are compared cluster by cluster, which yields the merge/split maps of cube
edges and of saddle cobordisms alike.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from itertools import product
from typing import Hashable, Iterable, Sequence

from ..diagram import TangleDiagram
from ..linalg import ChainComplex, GradedVectorSpace, SparseMatrix, axpy, rank_of_vectors
from ..tqft import ONE, X, FrobeniusSpec

CROSSING_CAP = 14


class CapExceeded(ValueError):
    """A configured size cap was exceeded."""

    def __init__(self, what: str, value: int, cap: int, hint: str = ""):
        msg = f"{what} {value} exceeds cap {cap}"
        if hint:
            msg += f" ({hint})"
        super().__init__(msg)
        self.what, self.value, self.cap = what, value, cap


def smoothing_pairs(crossing: Sequence[Hashable], bit: int) -> tuple[tuple, tuple]:
    a, b, c, d = crossing
    return ((a, d), (b, c)) if bit else ((a, b), (c, d))


class Picture:
    """Nodes, fixed edges, and crossings (4-tuples of nodes) with signs."""

    def __init__(self, nodes: Iterable[Hashable], edges: Iterable[tuple] = (),
                 crossings: Sequence[Sequence[Hashable]] = (), signs: Sequence[int] = ()):
        self.nodes = tuple(sorted(set(nodes)))
        self.edges = tuple(tuple(e) for e in edges)
        self.crossings = tuple(tuple(c) for c in crossings)
        self.signs = tuple(signs)
        if len(self.signs) != len(self.crossings):
            raise ValueError("one sign per crossing")
        known = set(self.nodes)
        for e in self.edges:
            for v in e:
                if v not in known:
                    raise ValueError(f"edge endpoint {v!r} is not a node")
        for c in self.crossings:
            for v in c:
                if v not in known:
                    raise ValueError(f"crossing slot {v!r} is not a node")
        self._cache: dict = {}

    @classmethod
    def from_diagram(cls, d: TangleDiagram) -> "Picture":
        if not d.is_closed:
            raise ValueError("cube complexes need a closed diagram")
        return cls(d.arcs(), (), d.crossings, d.signs)

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    def circles(self, bits: Sequence[int], extra_edges: Iterable[tuple] = ()) -> tuple[frozenset, ...]:
        key = (tuple(bits), tuple(extra_edges))
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        parent = {v: v for v in self.nodes}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        def union(u, v):
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)

        for u, v in self.edges:
            union(u, v)
        for u, v in key[1]:
            union(u, v)
        for cr, bit in zip(self.crossings, bits):
            for u, v in smoothing_pairs(cr, bit):
                union(u, v)
        groups: dict = {}
        for v in self.nodes:
            groups.setdefault(find(v), set()).add(v)
        out = tuple(sorted((frozenset(g) for g in groups.values()), key=min))
        if len(self._cache) < 1 << 16:
            self._cache[key] = out
        return out


def label_index(labels: Sequence[int]) -> int:
    """Position of a labeling in the lexicographic order (1 < X, first circle most significant)."""
    k = 0
    for lab in labels:
        k = 2 * k + lab
    return k


def labelings(c: int) -> list[tuple[int, ...]]:
    return list(product((ONE, X), repeat=c))


def label_qdeg(labels: Sequence[int]) -> int:
    return sum(1 if lab == ONE else -1 for lab in labels)


class Transition:
    """Linear map A^{⊗before} -> A^{⊗after} between two node partitions.

    Each overlap cluster must be an identity (1 -> 1), merge (2 -> 1), split
    (1 -> 2), death (1 -> 0, nodes only before) or birth (0 -> 1, nodes only
    after); anything else raises ``ValueError``.
    """

    def __init__(self, spec: FrobeniusSpec, before: Sequence[frozenset], after: Sequence[frozenset]):
        self.spec = spec
        self.n_after = len(after)
        bidx = {v: i for i, circ in enumerate(before) for v in circ}
        aidx = {v: j for j, circ in enumerate(after) for v in circ}
        parent: dict = {}

        def find(x):
            parent.setdefault(x, x)
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for v in bidx:
            if v in aidx:
                ra, rb = find(("b", bidx[v])), find(("a", aidx[v]))
                if ra != rb:
                    parent[ra] = rb
        clusters: dict = {}
        for i in range(len(before)):
            clusters.setdefault(find(("b", i)), ([], []))[0].append(i)
        for j in range(len(after)):
            clusters.setdefault(find(("a", j)), ([], []))[1].append(j)
        self.ops = []
        for bs, as_ in clusters.values():
            if len(bs) == 1 and len(as_) == 1:
                self.ops.append(("id", bs[0], as_[0]))
            elif len(bs) == 2 and len(as_) == 1:
                self.ops.append(("merge", tuple(bs), as_[0]))
            elif len(bs) == 1 and len(as_) == 2:
                self.ops.append(("split", bs[0], tuple(as_)))
            elif len(bs) == 1 and not as_ and not any(v in aidx for v in before[bs[0]]):
                self.ops.append(("death", bs[0], None))
            elif not bs and len(as_) == 1 and not any(v in bidx for v in after[as_[0]]):
                self.ops.append(("birth", None, as_[0]))
            else:
                raise ValueError(f"unsupported local change: {len(bs)} circle(s) -> {len(as_)}")
        self.is_identity = all(op[0] == "id" for op in self.ops)

    def changes(self) -> list[tuple]:
        return [op for op in self.ops if op[0] != "id"]

    def __call__(self, labels: Sequence[int]) -> dict[tuple[int, ...], object]:
        F = self.spec.field
        base = [None] * self.n_after
        terms: list[tuple[list, object]] = [(base, F.one)]
        for op in self.ops:
            kind = op[0]
            if kind == "id":
                for t, _ in terms:
                    t[op[2]] = labels[op[1]]
                continue
            if kind == "birth":
                for t, _ in terms:
                    t[op[2]] = ONE
                continue
            if kind == "death":
                e = self.spec.counit(labels[op[1]])
                if not e:
                    return {}
                terms = [(t, F.mul(c, e)) for t, c in terms]
                continue
            if kind == "merge":
                i, k = op[1]
                opts = [(((op[2], lab),), v) for lab, v in self.spec.mult(labels[i], labels[k]).items()]
            else:
                j1, j2 = op[2]
                opts = [(((j1, l1), (j2, l2)), v) for (l1, l2), v in self.spec.comult(labels[op[1]]).items()]
            new_terms = []
            for t, c in terms:
                for assigns, v in opts:
                    nt = list(t)
                    for j, lab in assigns:
                        nt[j] = lab
                    new_terms.append((nt, F.mul(c, v)))
            terms = new_terms
            if not terms:
                return {}
        out: dict = {}
        for t, c in terms:
            axpy(F, out, c, {tuple(t): F.one})
        return out


class CubeComplex:
    """Khovanov-type complex of a :class:`Picture`.

    Basis labels are ``(bits, labels)``; vertices are ordered by weight then
    bit string, labelings lexicographically.  Homological degree is
    ``|bits| - n_minus``, quantum degree ``labels + |bits| + n_plus - 2 n_minus``.
    """

    def __init__(self, picture: Picture, spec: FrobeniusSpec, cap: int = CROSSING_CAP,
                 check: bool = True):
        n = len(picture.crossings)
        if n > cap:
            raise CapExceeded("crossing count", n, cap,
                              "reduce the diagram or raise the crossing cap")
        self.picture = picture
        self.spec = spec
        self.n = n
        npl, nmi = picture.n_plus, picture.n_minus
        self.n_plus, self.n_minus = npl, nmi
        F = spec.field
        verts = sorted(product((0, 1), repeat=n), key=lambda b: (sum(b), b))
        self.circles: dict[tuple, tuple[frozenset, ...]] = {}
        self.offset: dict[tuple, int] = {}
        bases: dict[int, list] = {}
        qdeg: dict[int, list] = {}
        for v in verts:
            circ = picture.circles(v)
            self.circles[v] = circ
            r = sum(v)
            i = r - nmi
            bases.setdefault(i, [])
            qdeg.setdefault(i, [])
            self.offset[v] = len(bases[i])
            for labs in labelings(len(circ)):
                bases[i].append((v, labs))
                qdeg[i].append(label_qdeg(labs) + r + npl - 2 * nmi)
        d = {}
        for i in sorted(bases):
            if i + 1 not in bases:
                continue
            cols = []
            for (v, labs) in bases[i]:
                cols.append(self._edge_image(v, labs))
            d[i] = SparseMatrix(len(bases[i + 1]), len(bases[i]), F, cols)
        self.complex = ChainComplex(F, bases, qdeg, d, graded=spec.graded, check=check)

    def vertex_degree(self, v: Sequence[int]) -> int:
        return sum(v) - self.n_minus

    def index(self, v: tuple, labs: tuple) -> tuple[int, int]:
        """(homological degree, basis index) of a generator."""
        return sum(v) - self.n_minus, self.offset[v] + label_index(labs)

    def _edge_image(self, v: tuple, labs: tuple) -> dict:
        F = self.spec.field
        col: dict = {}
        ones = 0
        for c in range(self.n):
            if v[c]:
                ones += 1
                continue
            w = v[:c] + (1,) + v[c + 1:]
            t = Transition(self.spec, self.circles[v], self.circles[w])
            sign = F.one if ones % 2 == 0 else F.neg(F.one)
            base = self.offset[w]
            for labs2, coef in t(labs).items():
                axpy(F, col, F.mul(sign, coef), {base + label_index(labs2): F.one})
        return col


def homology_dims(c: ChainComplex, threads: int = 1) -> GradedVectorSpace:
    """Bigraded Betti numbers from block ranks: dim C - rank d_out - rank d_in."""
    F = c.field
    tasks = []
    for i in c.degrees():
        for q, idx in c.blocks(i).items():
            tasks.append((i, q, idx))

    def out_rank(task):
        i, q, idx = task
        m = c.d.get(i)
        if m is None:
            return 0
        return rank_of_vectors(F, (m.column(j) for j in idx))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            ranks = list(ex.map(out_rank, tasks))
    else:
        ranks = [out_rank(t) for t in tasks]
    rk = {(i, q): r for (i, q, _), r in zip(tasks, ranks)}
    dims = {}
    for (i, q, idx) in tasks:
        dims[(i, q)] = len(idx) - rk[(i, q)] - rk.get((i - 1, q), 0)
    return GradedVectorSpace(dims, c.graded)


def picture_of(d: TangleDiagram) -> Picture:
    return Picture.from_diagram(d)


def cube_complex(d: TangleDiagram, spec: FrobeniusSpec, cap: int = CROSSING_CAP,
                 check: bool = True) -> CubeComplex:
    return CubeComplex(Picture.from_diagram(d), spec, cap, check)


def kh(d: TangleDiagram, spec: FrobeniusSpec | None = None, cap: int = CROSSING_CAP,
       threads: int = 1) -> GradedVectorSpace:
    """Bigraded homology dimensions of a closed diagram."""
    spec = spec or FrobeniusSpec.named("khovanov")
    cube = cube_complex(d, spec, cap, check=False)
    return homology_dims(cube.complex, threads)
