"""The groupoid algebra of a pair groupoid and its fundamental representation.

Elements are finitely supported complex functions on the groupoid, stored
sparsely as ``{(j, k): coefficient}``.  The product extends groupoid
composition bilinearly; products of non-composable symbols vanish.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from numbers import Number
from typing import Mapping

import numpy as np

from .errors import DimensionMismatch, OutcomeSetMismatch
from .groupoid import OutcomeSet, PairGroupoid, PairGroupoidElement

PRUNE_TOL = 1e-14


def _pruned(coeffs) -> dict:
    return {
        (int(j), int(k)): complex(c)
        for (j, k), c in coeffs.items()
        if abs(c) >= PRUNE_TOL
    }


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    outcome_set: OutcomeSet
    coeffs: Mapping[tuple[int, int], complex] = field(default_factory=dict)

    def __post_init__(self):
        coeffs = _pruned(self.coeffs)
        for j, k in coeffs:
            self.outcome_set.check_index(j)
            self.outcome_set.check_index(k)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def n(self) -> int:
        return self.outcome_set.n

    def __getitem__(self, jk) -> complex:
        return self.coeffs.get(tuple(jk), 0j)

    def support(self) -> list[tuple[int, int]]:
        return sorted(self.coeffs)

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if other.outcome_set != self.outcome_set:
            raise OutcomeSetMismatch("algebra elements over different outcome sets")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for jk, c in other.coeffs.items():
            out[jk] = out.get(jk, 0j) + c
        return AlgebraElement(self.outcome_set, out)

    def __neg__(self):
        return AlgebraElement(self.outcome_set, {jk: -c for jk, c in self.coeffs.items()})

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if not isinstance(scalar, Number):
            return NotImplemented
        return AlgebraElement(
            self.outcome_set, {jk: scalar * c for jk, c in self.coeffs.items()}
        )

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return convolve(self, other)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.outcome_set == other.outcome_set and self.coeffs == other.coeffs

    def max_distance(self, other: AlgebraElement) -> float:
        """Max-norm of the coefficient difference."""
        self._check(other)
        keys = set(self.coeffs) | set(other.coeffs)
        return max((abs(self[jk] - other[jk]) for jk in keys), default=0.0)

    @property
    def dagger(self) -> AlgebraElement:
        return involution(self)

    def __repr__(self):
        labels = self.outcome_set.labels
        if not self.coeffs:
            return "0"
        terms = [
            f"({c:.6g})M({labels[j]},{labels[k]})" for (j, k), c in sorted(self.coeffs.items())
        ]
        return " + ".join(terms)


@dataclass(frozen=True, eq=False)
class MatrixRepresentation:
    """An operator on the carrier space C^n of the fundamental representation."""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DimensionMismatch(f"expected a square matrix, got shape {entries.shape}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def adjoint(self) -> MatrixRepresentation:
        return MatrixRepresentation(self.entries.conj().T)

    def __matmul__(self, other):
        if not isinstance(other, MatrixRepresentation):
            return NotImplemented
        return MatrixRepresentation(self.entries @ other.entries)

    def as_element(self, outcome_set: OutcomeSet) -> AlgebraElement:
        """Read matrix entries back as coefficients of ``M(a_j, a_k)``."""
        if outcome_set.n != self.dim:
            raise DimensionMismatch(f"outcome set of size {outcome_set.n} for a {self.dim}x{self.dim} matrix")
        rows, cols = np.nonzero(np.abs(self.entries) >= PRUNE_TOL)
        return AlgebraElement(
            outcome_set, {(j, k): self.entries[j, k] for j, k in zip(rows, cols)}
        )


def embed(x: PairGroupoidElement) -> AlgebraElement:
    return AlgebraElement(x.outcome_set, {(x.j, x.k): 1 + 0j})


def zero(G: PairGroupoid | OutcomeSet) -> AlgebraElement:
    outcome_set = G.outcome_set if isinstance(G, PairGroupoid) else G
    return AlgebraElement(outcome_set, {})


def unit(G: PairGroupoid | OutcomeSet) -> AlgebraElement:
    outcome_set = G.outcome_set if isinstance(G, PairGroupoid) else G
    return AlgebraElement(outcome_set, {(j, j): 1 + 0j for j in range(outcome_set.n)})


def convolve(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """(x*y)(j, m) = sum_k x(j, k) y(k, m)."""
    if x.outcome_set != y.outcome_set:
        raise OutcomeSetMismatch("cannot convolve elements over different outcome sets")
    rows_of_y = defaultdict(list)
    for (k, m), c in y.coeffs.items():
        rows_of_y[k].append((m, c))
    out = defaultdict(complex)
    for (j, k), a in x.coeffs.items():
        for m, b in rows_of_y.get(k, ()):
            out[j, m] += a * b
    return AlgebraElement(x.outcome_set, out)


def involution(x: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(
        x.outcome_set, {(k, j): c.conjugate() for (j, k), c in x.coeffs.items()}
    )


def is_real(x: AlgebraElement, tol: float = 0.0) -> bool:
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return x.max_distance(involution(x)) <= tol


def represent(x: AlgebraElement) -> MatrixRepresentation:
    m = np.zeros((x.n, x.n), dtype=complex)
    for (j, k), c in x.coeffs.items():
        m[j, k] = c
    return MatrixRepresentation(m)


def operator_norm(x: AlgebraElement | MatrixRepresentation) -> float:
    """Largest singular value of the represented operator."""
    m = x.entries if isinstance(x, MatrixRepresentation) else represent(x).entries
    return float(np.linalg.norm(m, 2))


def random_element(outcome_set: OutcomeSet, rng: np.random.Generator, density: float = 1.0) -> AlgebraElement:
    """Element with standard complex Gaussian coefficients on a random support."""
    n = outcome_set.n
    mask = rng.random((n, n)) < density
    values = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return AlgebraElement(
        outcome_set,
        {(j, k): values[j, k] for j in range(n) for k in range(n) if mask[j, k]},
    )
