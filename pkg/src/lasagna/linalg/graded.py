"""Bigraded dimension functions and their Poincare polynomial text."""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Mapping


class GradedVectorSpace:
    """Finite map ``(homological, quantum) -> dimension`` with no zero entries.

    ``graded=False`` marks output of a theory whose differential does not
    preserve the quantum grading; such spaces keep every class at ``q = 0``
    and print without a ``q`` factor.
    """

    __slots__ = ("_dims", "graded")

    def __init__(self, dims: Mapping[tuple[int, int], int] | Iterable = (), graded: bool = True):
        items = dims.items() if isinstance(dims, Mapping) else dims
        d = {}
        for (i, q), n in items:
            n = int(n)
            if n < 0:
                raise ValueError(f"negative dimension at {(i, q)}")
            if n:
                d[(int(i), int(q))] = d.get((int(i), int(q)), 0) + n
        self._dims = dict(sorted(d.items()))
        self.graded = graded

    @classmethod
    def from_degrees(cls, degrees: Iterable[tuple[int, int]], graded: bool = True):
        return cls(Counter(degrees), graded=graded)

    @property
    def dims(self) -> dict:
        return dict(self._dims)

    def __getitem__(self, key) -> int:
        return self._dims.get(key, 0)

    def items(self):
        return self._dims.items()

    def keys(self):
        return self._dims.keys()

    @property
    def total(self) -> int:
        return sum(self._dims.values())

    def homological_degrees(self) -> list[int]:
        return sorted({i for i, _ in self._dims})

    def shift(self, dt: int = 0, dq: int = 0) -> "GradedVectorSpace":
        return GradedVectorSpace({(i + dt, q + dq): n for (i, q), n in self._dims.items()}, self.graded)

    def __add__(self, other: "GradedVectorSpace") -> "GradedVectorSpace":
        d = Counter(self._dims)
        d.update(other._dims)
        return GradedVectorSpace(d, self.graded and other.graded)

    def tensor(self, other: "GradedVectorSpace") -> "GradedVectorSpace":
        d: Counter = Counter()
        for (i, q), n in self._dims.items():
            for (j, r), m in other._dims.items():
                d[(i + j, q + r)] += n * m
        return GradedVectorSpace(d, self.graded and other.graded)

    def euler_characteristic(self) -> dict[int, int]:
        """Graded Euler characteristic as ``{q exponent: coefficient}``."""
        out: Counter = Counter()
        for (i, q), n in self._dims.items():
            out[q] += (-1) ** (i % 2) * n
        return {q: c for q, c in sorted(out.items()) if c}

    def poincare(self) -> str:
        """``"t^0 q^1 + t^0 q^-1"``-style text, sorted by (t, q) descending in q within t."""
        if not self._dims:
            return "0"
        terms = []
        for (i, q), n in sorted(self._dims.items(), key=lambda kv: (kv[0][0], -kv[0][1])):
            coef = "" if n == 1 else f"{n} "
            if self.graded:
                terms.append(f"{coef}t^{i} q^{q}")
            else:
                terms.append(f"{coef}t^{i}")
        return " + ".join(terms)

    def to_records(self) -> list[list[int]]:
        return [[i, q, n] for (i, q), n in self._dims.items()]

    def __eq__(self, other):
        if not isinstance(other, GradedVectorSpace):
            return NotImplemented
        return self._dims == other._dims

    def __hash__(self):
        return hash(tuple(self._dims.items()))

    def __repr__(self):
        return f"GradedVectorSpace({self._dims})"
