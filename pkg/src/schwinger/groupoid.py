"""Finite pair groupoids of measurement symbols.

An element ``M(a_j, a_k)`` is stored as the index pair ``(j, k)`` over an
:class:`OutcomeSet`: ``j`` is the target (emerging) outcome and ``k`` the
source (accepted) outcome.  Composition ``M(a_j, a_k) o M(a_l, a_m)`` is
defined only when ``k == l`` and then equals ``M(a_j, a_m)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import (
    DuplicateLabel,
    EmptyOutcomeSet,
    IndexOutOfRange,
    NotComposable,
    OutcomeSetMismatch,
)


@dataclass(frozen=True)
class OutcomeSet:
    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(label) for label in self.labels)
        if not labels:
            raise EmptyOutcomeSet("an outcome set needs at least one label")
        seen = set()
        for label in labels:
            if label in seen:
                raise DuplicateLabel(f"label {label!r} appears more than once")
            seen.add(label)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise IndexOutOfRange(f"unknown outcome label {label!r}") from None

    def check_index(self, i: int) -> int:
        if isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < self.n:
            raise IndexOutOfRange(f"index {i!r} outside 0..{self.n - 1}")
        return i


@dataclass(frozen=True)
class PairGroupoidElement:
    """The measurement symbol ``M(a_j, a_k)``."""

    outcome_set: OutcomeSet
    j: int
    k: int

    def __post_init__(self):
        self.outcome_set.check_index(self.j)
        self.outcome_set.check_index(self.k)

    @property
    def is_unit(self) -> bool:
        return self.j == self.k

    def __repr__(self):
        labels = self.outcome_set.labels
        return f"M({labels[self.j]},{labels[self.k]})"


@dataclass(frozen=True)
class PairGroupoid:
    outcome_set: OutcomeSet

    @property
    def n(self) -> int:
        return self.outcome_set.n

    def __len__(self):
        return self.n * self.n

    def __contains__(self, x):
        return isinstance(x, PairGroupoidElement) and x.outcome_set == self.outcome_set

    def __iter__(self) -> Iterator[PairGroupoidElement]:
        return self.elements()

    def elements(self) -> Iterator[PairGroupoidElement]:
        """Generate all n**2 elements in row-major (j, k) order."""
        for j in range(self.n):
            for k in range(self.n):
                yield PairGroupoidElement(self.outcome_set, j, k)

    def element(self, j, k) -> PairGroupoidElement:
        """Element by index or by label."""
        if isinstance(j, str):
            j = self.outcome_set.index(j)
        if isinstance(k, str):
            k = self.outcome_set.index(k)
        return PairGroupoidElement(self.outcome_set, j, k)

    def units(self) -> list[PairGroupoidElement]:
        return units(self)


def make_pair_groupoid(labels: Sequence[str]) -> PairGroupoid:
    if isinstance(labels, str):
        raise TypeError("labels must be a sequence of strings, not a string")
    return PairGroupoid(OutcomeSet(tuple(labels)))


def source(x: PairGroupoidElement) -> PairGroupoidElement:
    return PairGroupoidElement(x.outcome_set, x.k, x.k)


def target(x: PairGroupoidElement) -> PairGroupoidElement:
    return PairGroupoidElement(x.outcome_set, x.j, x.j)


def composable(x: PairGroupoidElement, y: PairGroupoidElement) -> bool:
    return x.outcome_set == y.outcome_set and x.k == y.j


def compose(x: PairGroupoidElement, y: PairGroupoidElement) -> PairGroupoidElement:
    """``x o y``: first ``y``, then ``x``."""
    if x.outcome_set != y.outcome_set:
        raise OutcomeSetMismatch(
            f"{x!r} and {y!r} live over different outcome sets"
        )
    if x.k != y.j:
        raise NotComposable(f"source of {x!r} differs from target of {y!r}")
    return PairGroupoidElement(x.outcome_set, x.j, y.k)


def inverse(x: PairGroupoidElement) -> PairGroupoidElement:
    return PairGroupoidElement(x.outcome_set, x.k, x.j)


def units(G: PairGroupoid) -> list[PairGroupoidElement]:
    return [PairGroupoidElement(G.outcome_set, j, j) for j in range(G.n)]
