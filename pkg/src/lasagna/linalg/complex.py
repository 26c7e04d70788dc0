"""Cochain complexes (differential raises homological degree by one), chain
maps, homology with stored representatives, and coequalizers."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from typing import Hashable, Mapping, Sequence

from .field import Field
from .graded import GradedVectorSpace
from .sparse import Echelon, SparseMatrix, axpy


class ChainComplexError(ValueError):
    """Raised when d∘d != 0 or a differential breaks the quantum grading."""

    def __init__(self, message: str, degree: int | None = None):
        super().__init__(message)
        self.degree = degree


class ChainComplex:
    """A bounded complex of based vector spaces.

    ``bases[i]`` lists opaque labels of the basis of C^i, ``qdeg[i]`` their
    quantum degrees, and ``d[i]`` is the matrix C^i -> C^{i+1}.
    """

    def __init__(self, field: Field, bases: Mapping[int, Sequence[Hashable]],
                 qdeg: Mapping[int, Sequence[int]], d: Mapping[int, SparseMatrix],
                 graded: bool = True, check: bool = True):
        self.field = field
        self.bases = {i: list(b) for i, b in sorted(bases.items()) if len(b)}
        self.qdeg = {i: list(qdeg[i]) for i in self.bases}
        self.graded = graded
        self.d: dict[int, SparseMatrix] = {}
        for i, m in d.items():
            if m.is_zero():
                continue
            if m.cols != self.dim(i) or m.rows != self.dim(i + 1):
                raise ChainComplexError(f"differential d^{i} has shape {m.shape}, expected "
                                        f"({self.dim(i + 1)}, {self.dim(i)})", i)
            self.d[i] = m
        self._index: dict[int, dict] = {}
        if check:
            self.verify()

    def dim(self, i: int) -> int:
        return len(self.bases.get(i, ()))

    @property
    def total_dim(self) -> int:
        return sum(len(b) for b in self.bases.values())

    def degrees(self) -> list[int]:
        return sorted(self.bases)

    def index(self, i: int) -> dict:
        if i not in self._index:
            self._index[i] = {lab: k for k, lab in enumerate(self.bases.get(i, ()))}
        return self._index[i]

    def differential(self, i: int) -> SparseMatrix:
        m = self.d.get(i)
        if m is None:
            return SparseMatrix.zero(self.dim(i + 1), self.dim(i), self.field)
        return m

    def verify(self) -> None:
        for i, m in self.d.items():
            nxt = self.d.get(i + 1)
            if nxt is not None and not (nxt @ m).is_zero():
                raise ChainComplexError(f"d^{i + 1} o d^{i} != 0", i)
            if self.graded:
                qs, qt = self.qdeg[i], self.qdeg.get(i + 1, [])
                for j, col in enumerate(m.columns):
                    for r in col:
                        if qt[r] != qs[j]:
                            raise ChainComplexError(
                                f"d^{i} maps quantum degree {qs[j]} to {qt[r]}", i)

    def blocks(self, i: int) -> dict[int, list[int]]:
        """Basis indices of C^i grouped by quantum degree (one block if ungraded)."""
        out: dict[int, list[int]] = defaultdict(list)
        for k, q in enumerate(self.qdeg.get(i, ())):
            out[q if self.graded else 0].append(k)
        return dict(sorted(out.items()))

    def graded_dims(self) -> GradedVectorSpace:
        return GradedVectorSpace.from_degrees(
            ((i, q if self.graded else 0) for i, qs in self.qdeg.items() for q in qs), self.graded)

    def euler_characteristic(self) -> dict[int, int]:
        return self.graded_dims().euler_characteristic()


@dataclass
class ChainMap:
    """Degree-(hshift, qshift) map; ``components[i]`` sends C^i to D^{i+hshift}."""

    source: ChainComplex
    target: ChainComplex
    components: dict[int, SparseMatrix]
    hshift: int = 0
    qshift: int = 0

    def component(self, i: int) -> SparseMatrix:
        m = self.components.get(i)
        if m is None:
            return SparseMatrix.zero(self.target.dim(i + self.hshift), self.source.dim(i),
                                     self.source.field)
        return m

    def verify(self) -> None:
        s, t, h = self.source, self.target, self.hshift
        sign = self.source.field.one if h % 2 == 0 else self.source.field.neg(self.source.field.one)
        for i in sorted(set(s.degrees()) | {j - h for j in t.degrees()}):
            f_i = self.component(i)
            if f_i.shape != (t.dim(i + h), s.dim(i)):
                raise ChainComplexError(f"chain map component {i} has shape {f_i.shape}", i)
            lhs = t.differential(i + h) @ f_i
            rhs = (self.component(i + 1) @ s.differential(i)).scale(sign)
            if lhs != rhs:
                raise ChainComplexError(f"chain map does not commute with d in degree {i}", i)
        if s.graded and t.graded:
            for i, m in self.components.items():
                for j, col in enumerate(m.columns):
                    for r in col:
                        if t.qdeg[i + h][r] != s.qdeg[i][j] + self.qshift:
                            raise ChainComplexError(f"chain map not homogeneous in degree {i}", i)

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """``self ∘ other``."""
        comps = {}
        for i in other.source.degrees():
            comps[i] = self.component(i + other.hshift) @ other.component(i)
        return ChainMap(other.source, self.target, comps,
                        self.hshift + other.hshift, self.qshift + other.qshift)

    @classmethod
    def identity(cls, c: ChainComplex) -> "ChainMap":
        return cls(c, c, {i: SparseMatrix.identity(c.dim(i), c.field) for i in c.degrees()})

    @classmethod
    def zero(cls, s: ChainComplex, t: ChainComplex, hshift: int = 0, qshift: int = 0) -> "ChainMap":
        return cls(s, t, {}, hshift, qshift)

    def apply(self, i: int, vec: Mapping) -> dict:
        return self.component(i).apply(vec)


class Homology:
    """Homology of a complex with representative cycles in the original basis.

    Classes are indexed by ``(i, q, k)``: the k-th representative in bidegree
    (i, q).  :meth:`classify` writes a cycle in that basis.
    """

    def __init__(self, complex: ChainComplex):
        self.complex = complex
        F = complex.field
        self.reps: dict[tuple[int, int], list[dict]] = {}
        self._echelons: dict[tuple[int, int], Echelon] = {}
        self._block_of: dict[int, dict[int, int]] = {}
        for i in complex.degrees():
            d_out = complex.differential(i)
            d_in = complex.differential(i - 1)
            in_blocks = complex.blocks(i - 1)
            block_of = {}
            for q, idx in complex.blocks(i).items():
                for k in idx:
                    block_of[k] = q
                ech = Echelon(F)
                for j in in_blocks.get(q, ()):
                    col = d_in.column(j)
                    if col:
                        ech.add(col)
                kern = Echelon(F)
                cycles = []
                for j in idx:
                    rem, tag = kern.add(d_out.column(j), {j: F.one})
                    if not rem:
                        cycles.append(tag)
                reps = []
                for z in cycles:
                    rem, _ = ech.add(z, {len(reps): F.one})
                    if rem:
                        reps.append(z)
                if reps:
                    self.reps[(i, q)] = reps
                self._echelons[(i, q)] = ech
            self._block_of[i] = block_of
        self.dims = GradedVectorSpace({k: len(v) for k, v in self.reps.items()}, complex.graded)

    @property
    def basis(self) -> list[tuple[int, int, int]]:
        return [(i, q, k) for (i, q), reps in sorted(self.reps.items()) for k in range(len(reps))]

    def rep(self, i: int, q: int, k: int) -> dict:
        return self.reps[(i, q)][k]

    def classify(self, i: int, vec: Mapping) -> dict[tuple[int, int], dict]:
        """Coordinates of the class of cycle ``vec`` in C^i, keyed by bidegree.

        Raises ``ChainComplexError`` if ``vec`` is not a cycle.
        """
        if vec and not self.complex.differential(i).apply(vec) == {}:
            raise ChainComplexError(f"vector in degree {i} is not a cycle", i)
        parts: dict[int, dict] = defaultdict(dict)
        block_of = self._block_of.get(i, {})
        for k, v in vec.items():
            parts[block_of[k]][k] = v
        out = {}
        for q, part in parts.items():
            ech = self._echelons[(i, q)]
            rem, coords = ech.reduce(part)
            if rem:
                raise ChainComplexError("internal: cycle not in span of boundaries and representatives", i)
            coords = {k: c for k, c in coords.items() if c != 0}
            if coords:
                out[(i, q)] = coords
        return out

    def is_boundary(self, i: int, vec: Mapping) -> bool:
        return all(not c for c in self.classify(i, vec).values())


def homology(c: ChainComplex) -> Homology:
    return Homology(c)


def induced_map(f: ChainMap, hs: Homology | None = None, ht: Homology | None = None
                ) -> dict[tuple[int, int], SparseMatrix]:
    """Matrices of f_* per source bidegree; columns index source reps, rows target reps."""
    hs = hs or Homology(f.source)
    ht = ht or Homology(f.target)
    F = f.source.field
    out = {}
    for (i, q), reps in sorted(hs.reps.items()):
        tdeg = (i + f.hshift, q + f.qshift if hs.complex.graded else 0)
        nrows = len(ht.reps.get(tdeg, ()))
        cols = []
        for z in reps:
            image = f.apply(i, z)
            coords = ht.classify(i + f.hshift, image)
            extra = set(coords) - {tdeg}
            if extra:
                raise ChainComplexError(f"induced map not homogeneous: lands in {sorted(extra)}", i)
            cols.append(coords.get(tdeg, {}))
        out[(i, q)] = SparseMatrix(nrows, len(reps), F, cols)
    return out


@dataclass
class Coequalizer:
    """``target / im(f - g)`` with the projection onto a complement basis."""

    dim: int
    projection: SparseMatrix
    quotient_basis: list[int] = dc_field(default_factory=list)


def coequalizer(f: SparseMatrix, g: SparseMatrix) -> Coequalizer:
    if f.shape != g.shape:
        raise ValueError(f"coequalizer shape mismatch: {f.shape} vs {g.shape}")
    F = f.field
    ech = Echelon(F)
    for col in (f - g).columns:
        if col:
            ech.add(col)
    free = [j for j in range(f.rows) if j not in ech.rows]
    pos = {j: k for k, j in enumerate(free)}
    cols = []
    for j in range(f.rows):
        rem, _ = ech.reduce({j: F.one})
        cols.append({pos[k]: v for k, v in rem.items()})
    return Coequalizer(len(free), SparseMatrix(len(free), f.rows, F, cols), free)


def graded_coequalizer(blocks: Mapping[tuple[int, int], tuple[SparseMatrix, SparseMatrix]],
                       graded: bool = True) -> tuple[GradedVectorSpace, dict[tuple[int, int], Coequalizer]]:
    """Coequalizer computed independently in each bidegree block."""
    parts = {deg: coequalizer(f, g) for deg, (f, g) in sorted(blocks.items())}
    return GradedVectorSpace({deg: c.dim for deg, c in parts.items()}, graded), parts


def stack_rank(field: Field, vectors) -> int:
    ech = Echelon(field)
    for v in vectors:
        if v:
            ech.add(v)
    return ech.rank


def vector_sum(field: Field, terms) -> dict:
    out: dict = {}
    for a, v in terms:
        axpy(field, out, a, v)
    return out
