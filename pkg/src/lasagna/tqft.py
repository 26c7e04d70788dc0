"""Rank-two Frobenius algebras A = k[X]/(X^2 - hX - t) and the linear maps
that elementary cobordisms induce on tensor powers of A.

Basis labels: ``0`` is the unit ``1``, ``1`` is ``X``.  An element of
A^{⊗c} is a dict from c-tuples of labels to coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

from .linalg.field import Field, GF2
from .linalg.sparse import SparseMatrix, axpy

ONE, X = 0, 1

THEORIES = {
    "khovanov": (0, 0),
    "lee": (0, 1),
    "bar-natan": (1, 0),
}


@dataclass(frozen=True)
class FrobeniusSpec:
    name: str
    h: int
    t: int
    field: Field = GF2

    @classmethod
    def named(cls, name: str, field: Field = GF2) -> "FrobeniusSpec":
        key = name.lower().replace("_", "-")
        if key == "barnatan":
            key = "bar-natan"
        if key not in THEORIES:
            raise ValueError(f"unknown theory {name!r}; choose from {sorted(THEORIES)}")
        h, t = THEORIES[key]
        return cls(key, h, t, field)

    @property
    def graded(self) -> bool:
        """Structure maps are quantum-homogeneous only when h = t = 0."""
        return self.h == 0 and self.t == 0

    @staticmethod
    def qdeg(label: int) -> int:
        return 1 if label == ONE else -1

    def mult(self, a: int, b: int) -> dict[int, object]:
        F = self.field
        if a == ONE:
            return {b: F.one}
        if b == ONE:
            return {a: F.one}
        out = {}
        if F(self.h):
            out[X] = F(self.h)
        if F(self.t):
            out[ONE] = F(self.t)
        return out

    def comult(self, a: int) -> dict[tuple[int, int], object]:
        F = self.field
        if a == ONE:
            out = {(ONE, X): F.one, (X, ONE): F.one}
            if F(self.h):
                out[(ONE, ONE)] = F.neg(F(self.h))
            return out
        out = {(X, X): F.one}
        if F(self.t):
            out[(ONE, ONE)] = F(self.t)
        return out

    def counit(self, a: int):
        return self.field.one if a == X else self.field.zero

    def times_x(self, a: int) -> dict[int, object]:
        return self.mult(X, a)


@dataclass(frozen=True)
class CobordismEvent:
    """One elementary piece of a cobordism acting on indexed tensor factors.

    ``birth``: new factor appended (labelled 1).  ``death``: counit on
    ``circles[0]``.  ``merge``: factors ``circles = (i, j)`` multiplied into
    position ``min(i, j)``.  ``split``: factor ``i`` replaced by two adjacent
    factors.  ``dot``: multiplication by X on factor ``i``.
    """

    kind: str
    circles: tuple[int, ...] = ()

    def __post_init__(self):
        arity = {"birth": 0, "death": 1, "merge": 2, "split": 1, "dot": 1}
        if self.kind not in arity:
            raise ValueError(f"unknown cobordism event {self.kind!r}")
        if len(self.circles) != arity[self.kind]:
            raise ValueError(f"{self.kind} takes {arity[self.kind]} circle id(s), got {self.circles}")
        if self.kind == "merge" and self.circles[0] == self.circles[1]:
            raise ValueError("merge needs two distinct circles")

    def target_count(self, c: int) -> int:
        return c + {"birth": 1, "death": -1, "merge": -1, "split": 1, "dot": 0}[self.kind]


def _check_ids(event: CobordismEvent, c: int):
    for i in event.circles:
        if not 0 <= i < c:
            raise IndexError(f"circle id {i} not valid for {c} circle(s)")


def apply_event(event: CobordismEvent, spec: FrobeniusSpec, element: Mapping[tuple, object]) -> dict:
    """Image of an element of A^{⊗c} under the event."""
    F = spec.field
    out: dict = {}
    for labels, coef in element.items():
        c = len(labels)
        _check_ids(event, c)
        k = event.kind
        if k == "birth":
            axpy(F, out, coef, {labels + (ONE,): F.one})
        elif k == "death":
            i = event.circles[0]
            e = spec.counit(labels[i])
            if e:
                axpy(F, out, F.mul(coef, e), {labels[:i] + labels[i + 1:]: F.one})
        elif k == "dot":
            i = event.circles[0]
            for lab, v in spec.times_x(labels[i]).items():
                axpy(F, out, F.mul(coef, v), {labels[:i] + (lab,) + labels[i + 1:]: F.one})
        elif k == "merge":
            i, j = sorted(event.circles)
            rest = list(labels)
            del rest[j]
            for lab, v in spec.mult(labels[i], labels[j]).items():
                rest[i] = lab
                axpy(F, out, F.mul(coef, v), {tuple(rest): F.one})
        else:
            i = event.circles[0]
            for (l1, l2), v in spec.comult(labels[i]).items():
                axpy(F, out, F.mul(coef, v), {labels[:i] + (l1, l2) + labels[i + 1:]: F.one})
    return out


def tensor_basis(c: int) -> list[tuple[int, ...]]:
    return list(product((ONE, X), repeat=c))


def event_matrix(event: CobordismEvent, spec: FrobeniusSpec, c: int) -> SparseMatrix:
    """Matrix of the event from A^{⊗c} to A^{⊗c'} in the lexicographic tensor basis."""
    src = tensor_basis(c)
    tgt = {lab: n for n, lab in enumerate(tensor_basis(event.target_count(c)))}
    cols = []
    for lab in src:
        img = apply_event(event, spec, {lab: spec.field.one})
        cols.append({tgt[k]: v for k, v in img.items()})
    return SparseMatrix(len(tgt), len(src), spec.field, cols)


def apply_events(events: Sequence[CobordismEvent], spec: FrobeniusSpec, element: Mapping) -> dict:
    for e in events:
        element = apply_event(e, spec, element)
    return element


def evaluate_closed_surface(genus: int, dots: int, spec: FrobeniusSpec):
    """Scalar of a closed dotted surface; only spheres are supported."""
    if genus != 0:
        raise ValueError("only genus-0 surfaces arise from the handle relations")
    if dots < 0:
        raise ValueError("dot count must be non-negative")
    events = [CobordismEvent("birth")] + [CobordismEvent("dot", (0,))] * dots + [CobordismEvent("death", (0,))]
    val = apply_events(events, spec, {(): spec.field.one})
    return val.get((), spec.field.zero)


def event_qshift(event: CobordismEvent) -> int:
    """Quantum degree of the induced map for the Khovanov grading (Euler characteristic, -2 per dot)."""
    return {"birth": 1, "death": 1, "merge": -1, "split": -1, "dot": -2}[event.kind]


def frobenius_axiom_failures(spec: FrobeniusSpec) -> list[str]:
    """Exhaustive check of the algebra/coalgebra/Frobenius identities on basis tensors."""
    F = spec.field
    fails = []

    def m2(x: dict) -> dict:
        out: dict = {}
        for (a, b), c in x.items():
            for lab, v in spec.mult(a, b).items():
                axpy(F, out, F.mul(c, v), {lab: F.one})
        return out

    for a, b, c in product((ONE, X), repeat=3):
        left = m2({(k, c): v for k, v in spec.mult(a, b).items()})
        right = m2({(a, k): v for k, v in spec.mult(b, c).items()})
        if left != right:
            fails.append(f"associativity fails on {(a, b, c)}")
    for a, b in product((ONE, X), repeat=2):
        if spec.mult(a, b) != spec.mult(b, a):
            fails.append(f"commutativity fails on {(a, b)}")
    for a in (ONE, X):
        if spec.mult(ONE, a) != {a: F.one}:
            fails.append(f"unit fails on {a}")
    gram = [[sum((F.mul(v, spec.counit(k)) for k, v in spec.mult(a, b).items()), F.zero)
             for b in (ONE, X)] for a in (ONE, X)]
    if SparseMatrix.from_dense(gram, F).rank() != 2:
        fails.append("counit pairing is degenerate")
    for a in (ONE, X):
        d = spec.comult(a)
        left: dict = {}
        right: dict = {}
        for (x1, x2), v in d.items():
            for (y1, y2), w in spec.comult(x1).items():
                axpy(F, left, F.mul(v, w), {(y1, y2, x2): F.one})
            for (y1, y2), w in spec.comult(x2).items():
                axpy(F, right, F.mul(v, w), {(x1, y1, y2): F.one})
        if left != right:
            fails.append(f"coassociativity fails on {a}")
        cl: dict = {}
        cr: dict = {}
        for (x1, x2), v in d.items():
            axpy(F, cl, F.mul(v, spec.counit(x1)), {x2: F.one})
            axpy(F, cr, F.mul(v, spec.counit(x2)), {x1: F.one})
        if cl != {a: F.one} or cr != {a: F.one}:
            fails.append(f"counit law fails on {a}")
    for a, b in product((ONE, X), repeat=2):
        dm: dict = {}
        for lab, v in spec.mult(a, b).items():
            axpy(F, dm, v, spec.comult(lab))
        left: dict = {}
        for (x1, x2), v in spec.comult(b).items():
            for lab, w in spec.mult(a, x1).items():
                axpy(F, left, F.mul(v, w), {(lab, x2): F.one})
        right: dict = {}
        for (x1, x2), v in spec.comult(a).items():
            for lab, w in spec.mult(x2, b).items():
                axpy(F, right, F.mul(v, w), {(x1, lab): F.one})
        if left != dm or right != dm:
            fails.append(f"Frobenius (bimodule) identity fails on {(a, b)}")
    return fails
