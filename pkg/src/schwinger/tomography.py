"""Tomograms of a ray over a family of bases, and linear-inversion reconstruction.

Hermitian matrices are handled through the real isometry

    H  ->  (H_jj for all j, sqrt(2) Re H_jk, sqrt(2) Im H_jk for j < k)

onto R^(n^2), under which tr(P H) is the Euclidean inner product.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bases import OrthonormalBasis, RayState, basis_from_unitary, fourier_basis, probability_vector, standard_basis
from .errors import (
    DimensionMismatch,
    InconsistentTomograms,
    InvalidTomogram,
    NotInformationallyComplete,
)

RANK_TOL = 1e-8
NORMALIZATION_SLACK = 1e-8
NEGATIVITY_SLACK = 1e-12
RESIDUAL_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class Tomogram:
    basis: OrthonormalBasis
    probabilities: np.ndarray

    def __post_init__(self):
        p = np.array(self.probabilities, dtype=float)
        if p.shape != (self.basis.dim,):
            raise DimensionMismatch(f"{p.shape} probabilities for a basis of dimension {self.basis.dim}")
        if np.any(p < -NEGATIVITY_SLACK):
            raise InvalidTomogram("negative probability")
        if abs(p.sum() - 1) > NORMALIZATION_SLACK:
            raise InvalidTomogram(f"probabilities sum to {p.sum():.12g}")
        p.setflags(write=False)
        object.__setattr__(self, "probabilities", p)


@dataclass(frozen=True, eq=False)
class Quorum:
    bases: tuple[OrthonormalBasis, ...]

    def __post_init__(self):
        bases = tuple(self.bases)
        if not bases:
            raise ValueError("a quorum needs at least one basis")
        dims = {b.dim for b in bases}
        if len(dims) != 1:
            raise DimensionMismatch(f"quorum bases have dimensions {sorted(dims)}")
        object.__setattr__(self, "bases", bases)

    @property
    def dim(self) -> int:
        return self.bases[0].dim

    def __len__(self):
        return len(self.bases)


def hermitian_to_real(H: np.ndarray) -> np.ndarray:
    n = H.shape[0]
    iu = np.triu_indices(n, 1)
    off = H[iu]
    return np.concatenate([np.diag(H).real, np.sqrt(2) * off.real, np.sqrt(2) * off.imag])


def real_to_hermitian(x: np.ndarray, n: int) -> np.ndarray:
    iu = np.triu_indices(n, 1)
    m = len(iu[0])
    H = np.diag(x[:n]).astype(complex)
    upper = (x[n : n + m] + 1j * x[n + m :]) / np.sqrt(2)
    H[iu] = upper
    H[iu[1], iu[0]] = upper.conj()
    return H


def measurement_matrix(Q: Quorum) -> np.ndarray:
    """One row per projector |b_k><b_k|, in quorum order."""
    return np.array([hermitian_to_real(b.projector(k)) for b in Q.bases for k in range(b.dim)])


def is_informationally_complete(Q: Quorum, tol: float = RANK_TOL) -> bool:
    s = np.linalg.svd(measurement_matrix(Q), compute_uv=False)
    return int(np.sum(s > tol)) == Q.dim**2


def tomograms(psi: RayState, Q: Quorum) -> list[Tomogram]:
    if psi.dim != Q.dim:
        raise DimensionMismatch(f"state of dimension {psi.dim}, quorum of dimension {Q.dim}")
    return [Tomogram(b, probability_vector(psi, b)) for b in Q.bases]


def reconstruct(Q: Quorum, T: Sequence[Tomogram | Sequence[float]], tol: float = RANK_TOL) -> np.ndarray:
    """Trace-one Hermitian matrix reproducing the tomograms, by linear inversion.

    The solution is sought as identity/n plus a traceless correction, so the
    trace is exactly one and Hermiticity holds by construction.  Negative
    eigenvalues are left in place.
    """
    if not is_informationally_complete(Q, tol):
        raise NotInformationallyComplete("quorum projectors do not span the Hermitian matrices")
    if len(T) != len(Q):
        raise DimensionMismatch(f"{len(T)} tomograms for {len(Q)} bases")
    probs = []
    for basis, t in zip(Q.bases, T):
        if not isinstance(t, Tomogram):
            t = Tomogram(basis, t)
        elif t.probabilities.shape != (basis.dim,):
            raise DimensionMismatch("tomogram does not match its quorum basis")
        probs.append(t.probabilities)
    p = np.concatenate(probs)

    n = Q.dim
    M = measurement_matrix(Q)
    u = hermitian_to_real(np.eye(n)) / np.sqrt(n)
    P_traceless = np.eye(n * n) - np.outer(u, u)
    x0 = u / np.sqrt(n)
    y = np.linalg.pinv(M @ P_traceless, rcond=1e-12) @ (p - M @ x0)
    x = x0 + P_traceless @ y

    residual = np.max(np.abs(M @ x - p))
    if residual > RESIDUAL_TOL:
        raise InconsistentTomograms(f"no state reproduces the tomograms (residual {residual:.3g})")
    return real_to_hermitian(x, n)


def fidelity_with_ray(rho: np.ndarray, psi: RayState) -> float:
    """<psi|rho|psi> / <psi|psi>."""
    v = psi.vector
    return float(np.vdot(v, rho @ v).real / psi.norm_squared)


def chirped_fourier_basis(n: int, phases, name: str | None = None) -> OrthonormalBasis:
    """Fourier basis preceded by the diagonal unitary diag(exp(i phases))."""
    D = np.exp(1j * np.asarray(phases, dtype=float))
    tag = name or "chirp"
    return basis_from_unitary(D[:, None] * fourier_basis(n).vectors, [f"{tag}_{k}" for k in range(n)], name=tag)


def pauli_quorum() -> Quorum:
    s = 1 / np.sqrt(2)
    z = standard_basis(2, prefix="z")
    x = basis_from_unitary([[s, s], [s, -s]], ["x+", "x-"], name="X")
    y = basis_from_unitary([[s, s], [1j * s, -1j * s]], ["y+", "y-"], name="Y")
    return Quorum((z, x, y))


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


_GOLDEN = (1 + 5**0.5) / 2


def default_quorum(n: int, max_extra: int | None = None) -> Quorum:
    """A complete quorum for dimension n.

    n = 2: the Pauli triple.  Odd prime n: standard basis plus the n
    quadratic chirps exp(2 pi i r j^2 / n) of the Fourier basis (mutually
    unbiased).  Otherwise: standard, Fourier, then chirps with phase
    2 pi r j^2 / (n * golden ratio) until the rank test passes.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return Quorum((standard_basis(1),))
    if n == 2:
        return pauli_quorum()
    j = np.arange(n)
    if _is_prime(n):
        bases = [standard_basis(n)] + [
            chirped_fourier_basis(n, 2 * np.pi * r * j**2 / n, name=f"mub{r}") for r in range(n)
        ]
        return Quorum(tuple(bases))
    bases = [standard_basis(n), fourier_basis(n)]
    limit = max_extra if max_extra is not None else 4 * n
    r = 1
    while not is_informationally_complete(Quorum(tuple(bases))):
        if r > limit:
            raise NotInformationallyComplete(f"no complete quorum found for n={n}")
        bases.append(chirped_fourier_basis(n, 2 * np.pi * r * j**2 / (n * _GOLDEN), name=f"chirp{r}"))
        r += 1
    return Quorum(tuple(bases))
