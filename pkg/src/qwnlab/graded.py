"""Graded state vectors for the truncated Fock-space models.

A :class:`GradedVector` stores one flat complex coordinate block per grade
0..max_grade over a base space of dimension ``dim`` (grade k holds dim**k
coordinates; grade 0 is the scalar multiple of the vacuum).  The truncation
is a hard wall: any operation that would populate a grade beyond the cap
raises :class:`GradeOverflowError` instead of silently dropping weight.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class GradeOverflowError(RuntimeError):
    """A creation-type operator tried to step past the truncation grade."""


@dataclass
class GradedVector:
    dim: int
    parts: list  # parts[k] is a 1-d complex array of length dim**k

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if not self.parts:
            raise ValueError("need at least the vacuum grade")
        fixed = []
        for k, p in enumerate(self.parts):
            arr = np.asarray(p, dtype=complex).reshape(-1)
            if arr.size != self.dim**k:
                raise ValueError(
                    f"grade {k} must have {self.dim**k} coordinates, got {arr.size}"
                )
            fixed.append(arr)
        self.parts = fixed

    @property
    def max_grade(self) -> int:
        return len(self.parts) - 1

    @classmethod
    def vacuum(cls, dim: int, max_grade: int) -> "GradedVector":
        parts = [np.zeros(dim**k, dtype=complex) for k in range(max_grade + 1)]
        parts[0][0] = 1.0
        return cls(dim, parts)

    @classmethod
    def zero(cls, dim: int, max_grade: int) -> "GradedVector":
        return cls(dim, [np.zeros(dim**k, dtype=complex) for k in range(max_grade + 1)])

    def copy(self) -> "GradedVector":
        return GradedVector(self.dim, [p.copy() for p in self.parts])

    def scaled(self, c) -> "GradedVector":
        return GradedVector(self.dim, [c * p for p in self.parts])

    def add(self, other: "GradedVector") -> "GradedVector":
        self._compatible(other)
        return GradedVector(
            self.dim, [a + b for a, b in zip(self.parts, other.parts)]
        )

    def vacuum_component(self) -> complex:
        return complex(self.parts[0][0])

    def _compatible(self, other: "GradedVector"):
        if self.dim != other.dim or self.max_grade != other.max_grade:
            raise ValueError("graded vectors live on different spaces")
