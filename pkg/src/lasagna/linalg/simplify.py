"""Gaussian elimination of invertible differential entries.

Cancelling an isomorphism entry ``x -> y`` (x in C^i, y in C^{i+1}) replaces
the differential by ``d - d|_{->y} λ^{-1} d|_{x->}`` on the surviving basis
and yields an explicit homotopy equivalence.  The projection ``f`` and the
inclusion ``g`` are recorded step by step and can be evaluated on demand.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Mapping

from .complex import ChainComplex, ChainMap
from .field import Field
from .sparse import SparseMatrix, axpy

Node = tuple[int, int]  # (degree, original index)


@dataclass
class _Step:
    x: Node
    y: Node
    lam_inv: object
    out_x: dict  # w -> coefficient of w in d(x), w != y
    in_y: dict   # z -> coefficient of y in d(z), z != x


@dataclass
class Simplification:
    """Result of :func:`gaussian_simplify`.

    ``reduced`` uses the surviving basis labels of the input complex;
    ``survivors[i]`` lists the input indices that remain in degree i.
    """

    original: ChainComplex
    reduced: ChainComplex
    survivors: dict[int, list[int]]
    steps: list[_Step] = dc_field(repr=False, default_factory=list)

    def project(self, i: int, vec: Mapping[int, object]) -> dict:
        """f: C^i -> reduced^i on an original-basis vector; returns reduced indices."""
        F = self.original.field
        cur = {(i, k): v for k, v in vec.items()}
        for st in self.steps:
            if st.x in cur:
                del cur[st.x]
            c = cur.pop(st.y, None)
            if c is not None:
                axpy(F, cur, F.neg(F.mul(c, st.lam_inv)), st.out_x)
        pos = {k: n for n, k in enumerate(self.survivors.get(i, ()))}
        return {pos[k]: v for (j, k), v in cur.items()}

    def include(self, i: int, vec: Mapping[int, object]) -> dict:
        """g: reduced^i -> C^i on a reduced-basis vector; returns original indices."""
        F = self.original.field
        surv = self.survivors.get(i, [])
        cur = {(i, surv[n]): v for n, v in vec.items()}
        for st in reversed(self.steps):
            acc = F.zero
            for z, mu in st.in_y.items():
                c = cur.get(z)
                if c is not None:
                    acc = F.add(acc, F.mul(c, mu))
            if acc != 0:
                axpy(F, cur, F.neg(F.mul(acc, st.lam_inv)), {st.x: F.one})
        return {k: v for (j, k), v in cur.items()}

    def projection_map(self) -> ChainMap:
        c, r = self.original, self.reduced
        comps = {i: SparseMatrix(r.dim(i), c.dim(i), c.field,
                                 [self.project(i, {k: c.field.one}) for k in range(c.dim(i))])
                 for i in c.degrees()}
        return ChainMap(c, r, comps)

    def inclusion_map(self) -> ChainMap:
        c, r = self.original, self.reduced
        comps = {i: SparseMatrix(c.dim(i), r.dim(i), c.field,
                                 [self.include(i, {k: c.field.one}) for k in range(r.dim(i))])
                 for i in r.degrees()}
        return ChainMap(r, c, comps)


PivotFilter = Callable[[Node, Node, object], bool]


def gaussian_simplify(c: ChainComplex, allowed: PivotFilter | None = None,
                      candidates: Iterable[tuple[Node, Node]] | None = None,
                      record: bool = True) -> Simplification:
    """Cancel invertible entries until none (or none allowed) remain.

    With ``candidates`` only those ``(x, y)`` pairs are cancelled, in the given
    order, each if still present; otherwise every entry passing ``allowed`` is
    eligible; nodes are swept in order and each is paired with the target
    of fewest incoming entries, ties broken by node order.
    """
    F: Field = c.field
    out: dict[Node, dict] = {}
    inc: dict[Node, dict] = {}
    for i in c.degrees():
        for k in range(c.dim(i)):
            out[(i, k)] = {}
            inc[(i, k)] = {}
    for i, m in c.d.items():
        for k, col in enumerate(m.columns):
            for r, v in col.items():
                out[(i, k)][(i + 1, r)] = v
                inc[(i + 1, r)][(i, k)] = v
    steps: list[_Step] = []

    def cancel(x: Node, y: Node):
        lam = out[x][y]
        lam_inv = F.inv(lam)
        out_x = {w: v for w, v in out[x].items() if w != y}
        in_y = {z: v for z, v in inc[y].items() if z != x}
        for z, mu in in_y.items():
            coef = F.neg(F.mul(mu, lam_inv))
            row = out[z]
            for w, nu in out_x.items():
                s = F.add(row.get(w, F.zero), F.mul(coef, nu))
                if s == 0:
                    row.pop(w, None)
                    inc[w].pop(z, None)
                else:
                    row[w] = s
                    inc[w][z] = s
        for node in (x, y):
            for w in out[node]:
                inc[w].pop(node, None)
            for z in inc[node]:
                out[z].pop(node, None)
            del out[node], inc[node]
        if record:
            steps.append(_Step(x, y, lam_inv, out_x, in_y))

    if candidates is not None:
        for x, y in candidates:
            if x in out and y in out[x]:
                cancel(x, y)
    else:
        progress = True
        while progress:
            progress = False
            for x in sorted(out):
                if x not in out:
                    continue
                best = None
                for y, v in out[x].items():
                    if allowed is not None and not allowed(x, y, v):
                        continue
                    key = (len(inc[y]), y)
                    if best is None or key < best:
                        best = key
                if best is not None:
                    cancel(x, best[1])
                    progress = True

    survivors: dict[int, list[int]] = {}
    for (i, k) in sorted(out):
        survivors.setdefault(i, []).append(k)
    pos = {(i, k): n for i, ks in survivors.items() for n, k in enumerate(ks)}
    bases = {i: [c.bases[i][k] for k in ks] for i, ks in survivors.items()}
    qdeg = {i: [c.qdeg[i][k] for k in ks] for i, ks in survivors.items()}
    d = {}
    for i, ks in survivors.items():
        if i + 1 not in survivors:
            continue
        cols = [{pos[w]: v for w, v in out[(i, k)].items()} for k in ks]
        d[i] = SparseMatrix(len(survivors[i + 1]), len(ks), F, cols)
    reduced = ChainComplex(F, bases, qdeg, d, graded=c.graded, check=False)
    return Simplification(c, reduced, survivors, steps)
