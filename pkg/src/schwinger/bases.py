"""Resolutions of the identity, rays and the probabilities built from them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import MatrixRepresentation
from .errors import DimensionMismatch, NotOrthonormal, ZeroVector
from .groupoid import OutcomeSet, PairGroupoid

ORTHONORMAL_TOL = 1e-10
COMPLEMENTARY_TOL = 1e-9
STOCHASTIC_TOL = 1e-10
ZERO_NORM = 1e-12


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class OrthonormalBasis:
    """Columns of ``vectors`` are the basis kets ``|a_j>``."""

    vectors: np.ndarray
    labels: OutcomeSet
    eigenvalues: tuple[float, ...] | None = None
    name: str | None = None

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def ket(self, j: int) -> np.ndarray:
        self.labels.check_index(j)
        return self.vectors[:, j]

    def projector(self, j: int) -> np.ndarray:
        v = self.ket(j)
        return np.outer(v, v.conj())

    def symbol(self, j: int, k: int) -> np.ndarray:
        """``|a_j><a_k|`` in ambient coordinates."""
        return np.outer(self.ket(j), self.ket(k).conj())

    def groupoid(self) -> PairGroupoid:
        return PairGroupoid(self.labels)

    def observable(self) -> np.ndarray:
        """``sum_j a_j |a_j><a_j|``; requires eigenvalues."""
        if self.eigenvalues is None:
            raise ValueError("basis carries no eigenvalues")
        V = self.vectors
        return (V * np.asarray(self.eigenvalues)) @ V.conj().T

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"<OrthonormalBasis{tag} dim={self.dim}>"


def make_basis(
    vectors,
    labels: Sequence[str] | OutcomeSet | None = None,
    eigenvalues: Sequence[float] | None = None,
    name: str | None = None,
    tol: float = ORTHONORMAL_TOL,
) -> OrthonormalBasis:
    """Validate ``vectors`` (a sequence of n kets) as an orthonormal basis."""
    try:
        cols = [np.asarray(v, dtype=complex) for v in vectors]
    except (TypeError, ValueError) as exc:
        raise DimensionMismatch(f"vectors are not complex arrays: {exc}") from None
    n = len(cols)
    if n == 0:
        raise DimensionMismatch("a basis needs at least one vector")
    if any(v.shape != (n,) for v in cols):
        raise DimensionMismatch(f"expected {n} vectors of length {n}")
    V = np.column_stack(cols)
    if np.any(np.linalg.norm(V, axis=0) <= ZERO_NORM):
        raise NotOrthonormal("basis contains a zero vector")
    gram_dev = np.max(np.abs(V.conj().T @ V - np.eye(n)))
    if gram_dev > tol:
        raise NotOrthonormal(f"Gram matrix deviates from identity by {gram_dev:.3g}")

    if labels is None:
        labels = OutcomeSet(tuple(str(j) for j in range(n)))
    elif not isinstance(labels, OutcomeSet):
        labels = OutcomeSet(tuple(labels))
    if labels.n != n:
        raise DimensionMismatch(f"{labels.n} labels for {n} vectors")
    if eigenvalues is not None:
        eigenvalues = tuple(float(a) for a in eigenvalues)
        if len(eigenvalues) != n:
            raise DimensionMismatch(f"{len(eigenvalues)} eigenvalues for {n} vectors")
    return OrthonormalBasis(_readonly(V), labels, eigenvalues, name)


def basis_from_unitary(U, labels=None, eigenvalues=None, name=None, tol=ORTHONORMAL_TOL) -> OrthonormalBasis:
    U = np.asarray(U, dtype=complex)
    return make_basis(list(U.T), labels, eigenvalues, name, tol)


def standard_basis(n: int, prefix: str = "e") -> OrthonormalBasis:
    return basis_from_unitary(np.eye(n), [f"{prefix}{j}" for j in range(n)], name="standard")


def fourier_basis(n: int, prefix: str = "f") -> OrthonormalBasis:
    """f_k has components exp(2 pi i j k / n) / sqrt(n)."""
    if n < 1:
        raise ValueError("n must be positive")
    jk = np.outer(np.arange(n), np.arange(n))
    F = np.exp(2j * np.pi * jk / n) / np.sqrt(n)
    return basis_from_unitary(F, [f"{prefix}{k}" for k in range(n)], name="fourier")


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_basis(n: int, rng: np.random.Generator, prefix: str = "b") -> OrthonormalBasis:
    return basis_from_unitary(haar_unitary(n, rng), [f"{prefix}{j}" for j in range(n)])


@dataclass(frozen=True, eq=False)
class RayState:
    """A nonzero vector standing for its ray; never normalized in storage."""

    vector: np.ndarray

    def __post_init__(self):
        v = np.array(self.vector, dtype=complex)
        if v.ndim != 1 or v.size == 0:
            raise DimensionMismatch(f"a state is a nonempty 1-d vector, got shape {v.shape}")
        if np.linalg.norm(v) <= ZERO_NORM:
            raise ZeroVector("state vector has (numerically) zero norm")
        object.__setattr__(self, "vector", _readonly(v))

    @property
    def dim(self) -> int:
        return self.vector.shape[0]

    @property
    def norm_squared(self) -> float:
        return float(np.vdot(self.vector, self.vector).real)

    def density(self) -> np.ndarray:
        """The projector ``|psi><psi| / <psi|psi>``."""
        v = self.vector
        return np.outer(v, v.conj()) / self.norm_squared


def _same_dim(*dims):
    if len(set(dims)) != 1:
        raise DimensionMismatch(f"dimensions differ: {dims}")


def probability_vector(psi: RayState, basis: OrthonormalBasis) -> np.ndarray:
    """p_j = <a_j|psi><psi|a_j> / <psi|psi>."""
    _same_dim(psi.dim, basis.dim)
    amps = basis.vectors.conj().T @ psi.vector
    return (amps.real**2 + amps.imag**2) / psi.norm_squared


def transition_probability(psi: RayState, phi: RayState) -> float:
    _same_dim(psi.dim, phi.dim)
    overlap = np.vdot(psi.vector, phi.vector)
    return float(abs(overlap) ** 2 / (psi.norm_squared * phi.norm_squared))


def transition_probability_expansion(psi: RayState, phi: RayState, basis: OrthonormalBasis) -> float:
    """The double sum over j, k of <a_j|psi><phi|a_j><a_k|phi><psi|a_k>, normalized.

    Evaluated term by term in ``basis``; independent of
    :func:`transition_probability`, which uses the inner product directly.
    """
    _same_dim(psi.dim, phi.dim, basis.dim)
    a_psi = basis.vectors.conj().T @ psi.vector  # <a_j|psi>
    a_phi = basis.vectors.conj().T @ phi.vector  # <a_j|phi>
    terms = np.outer(a_psi * a_phi.conj(), a_phi * a_psi.conj())
    total = terms.sum() / (psi.norm_squared * phi.norm_squared)
    return float(total.real)


def transition_amplitude_symbol(psi: RayState, phi: RayState) -> MatrixRepresentation:
    """T(psi, phi) = |psi><phi| / (|psi| |phi|)."""
    _same_dim(psi.dim, phi.dim)
    scale = np.sqrt(psi.norm_squared * phi.norm_squared)
    return MatrixRepresentation(np.outer(psi.vector, phi.vector.conj()) / scale)


@dataclass(frozen=True, eq=False)
class TransformationFunction:
    """entries[j, k] = |<a_j|b_k>|^2."""

    entries: np.ndarray
    basis_a: OrthonormalBasis | None = None
    basis_b: OrthonormalBasis | None = None

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def transpose(self) -> TransformationFunction:
        return TransformationFunction(_readonly(self.entries.T.copy()), self.basis_b, self.basis_a)


def transformation_function(A: OrthonormalBasis, B: OrthonormalBasis) -> TransformationFunction:
    _same_dim(A.dim, B.dim)
    overlaps = A.vectors.conj().T @ B.vectors
    p = overlaps.real**2 + overlaps.imag**2
    return TransformationFunction(_readonly(p), A, B)


def is_doubly_stochastic(T: TransformationFunction | np.ndarray, tol: float = STOCHASTIC_TOL) -> bool:
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    p = np.asarray(T.entries if isinstance(T, TransformationFunction) else T, dtype=float)
    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        return False
    return bool(
        np.all(p >= -tol)
        and np.all(np.abs(p.sum(axis=0) - 1) <= tol)
        and np.all(np.abs(p.sum(axis=1) - 1) <= tol)
    )


def are_complementary(A: OrthonormalBasis, B: OrthonormalBasis, tol: float = COMPLEMENTARY_TOL) -> bool:
    p = transformation_function(A, B).entries
    return bool(np.all(np.abs(p - 1.0 / A.dim) <= tol))
