"""Relating the groupoids of two incompatible bases.

``U_AB = sum_k |a_k><b_k|`` carries ``|b_j><b_k|`` to ``|a_j><a_k|`` by
conjugation.  Basis vectors are paired by position; any relabelling is the
caller's business.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraElement
from .bases import ORTHONORMAL_TOL, OrthonormalBasis, transformation_function
from .errors import DimensionMismatch, NotUnitary, OutcomeSetMismatch

ISOMORPHISM_TOL = 1e-10
EXHAUSTIVE_LIMIT = 16
RANDOM_GENERATORS = 200


@dataclass(frozen=True, eq=False)
class Intertwiner:
    matrix: np.ndarray
    basis_a: OrthonormalBasis
    basis_b: OrthonormalBasis

    def __post_init__(self):
        U = np.array(self.matrix, dtype=complex)
        n = self.basis_a.dim
        if self.basis_b.dim != n or U.shape != (n, n):
            raise DimensionMismatch(f"intertwiner of shape {U.shape} between dims {n}, {self.basis_b.dim}")
        dev = np.max(np.abs(U @ U.conj().T - np.eye(n)))
        if dev > ORTHONORMAL_TOL:
            raise NotUnitary(f"U U^dagger deviates from identity by {dev:.3g}")
        U.setflags(write=False)
        object.__setattr__(self, "matrix", U)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def adjoint(self) -> Intertwiner:
        return Intertwiner(self.matrix.conj().T, self.basis_b, self.basis_a)


def make_intertwiner(A: OrthonormalBasis, B: OrthonormalBasis) -> Intertwiner:
    if A.dim != B.dim:
        raise DimensionMismatch(f"bases of dimension {A.dim} and {B.dim}")
    return Intertwiner(A.vectors @ B.vectors.conj().T, A, B)


def ambient_matrix(basis: OrthonormalBasis, x: AlgebraElement) -> np.ndarray:
    """Realize x = sum c_jk M(b_j, b_k) as the operator sum c_jk |b_j><b_k|."""
    if x.n != basis.dim:
        raise DimensionMismatch(f"element over {x.n} outcomes, basis of dimension {basis.dim}")
    V = basis.vectors
    C = np.zeros((x.n, x.n), dtype=complex)
    for (j, k), c in x.coeffs.items():
        C[j, k] = c
    return V @ C @ V.conj().T


def basis_coordinates(basis: OrthonormalBasis, X: np.ndarray) -> AlgebraElement:
    """Inverse of :func:`ambient_matrix`: coefficients <a_j|X|a_k>."""
    V = basis.vectors
    C = V.conj().T @ X @ V
    return AlgebraElement(basis.labels, {(j, k): C[j, k] for j in range(basis.dim) for k in range(basis.dim)})


def transport_matrix(U: Intertwiner, X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=complex)
    if X.shape != U.matrix.shape:
        raise DimensionMismatch(f"operator of shape {X.shape} for an intertwiner of dimension {U.dim}")
    return U.matrix @ X @ U.matrix.conj().T


def conjugate_transport(U: Intertwiner, x: AlgebraElement) -> AlgebraElement:
    """Carry an element written in B symbols to the A picture via U x U^dagger."""
    if x.n != U.dim:
        raise DimensionMismatch(f"element over {x.n} outcomes, intertwiner of dimension {U.dim}")
    if x.outcome_set != U.basis_b.labels:
        raise OutcomeSetMismatch("element is not written over the intertwiner's source basis labels")
    X = ambient_matrix(U.basis_b, x)
    return basis_coordinates(U.basis_a, transport_matrix(U, X))


@dataclass(frozen=True, eq=False)
class CrossSymbolProduct:
    """``M(a_j, a_k) M(b_l, b_m) = <a_k|b_l> M(a_j, b_m)``."""

    coefficient: complex
    result: np.ndarray
    ket_basis: OrthonormalBasis
    bra_basis: OrthonormalBasis
    j: int
    m: int

    def to_json(self, ket_id: str = "A", bra_id: str = "B") -> dict:
        return {
            "coefficient": [self.coefficient.real, self.coefficient.imag],
            "result": {"ket_basis": ket_id, "bra_basis": bra_id, "j": self.j, "m": self.m},
        }


def cross_product(A: OrthonormalBasis, j: int, k: int, B: OrthonormalBasis, l: int, m: int) -> CrossSymbolProduct:
    if A.dim != B.dim:
        raise DimensionMismatch(f"bases of dimension {A.dim} and {B.dim}")
    for labels, i in ((A.labels, j), (A.labels, k), (B.labels, l), (B.labels, m)):
        labels.check_index(i)
    coefficient = complex(np.vdot(A.ket(k), B.ket(l)))
    result = np.outer(A.ket(j), B.ket(m).conj())
    return CrossSymbolProduct(coefficient, result, A, B, j, m)


def statistical_coefficients(A: OrthonormalBasis, B: OrthonormalBasis) -> np.ndarray:
    """Matrix of <a_k|b_l>; its squared moduli form the transformation function."""
    if A.dim != B.dim:
        raise DimensionMismatch(f"bases of dimension {A.dim} and {B.dim}")
    return A.vectors.conj().T @ B.vectors


def _generator_pairs(n, rng):
    if n <= EXHAUSTIVE_LIMIT:
        return [(j, k) for j in range(n) for k in range(n)]
    picks = rng.integers(0, n, size=(RANDOM_GENERATORS, 2))
    return [tuple(int(i) for i in p) for p in picks]


def verify_isomorphism(U: Intertwiner, tol: float = ISOMORPHISM_TOL, seed: int = 0) -> bool:
    """Check that conjugation by U sends M(b_j, b_k) to M(a_j, a_k) and respects composition."""
    A, B = U.basis_a, U.basis_b
    n = U.dim
    rng = np.random.default_rng(seed)
    gens = _generator_pairs(n, rng)
    images = {}
    for j, k in gens:
        image = transport_matrix(U, B.symbol(j, k))
        if np.max(np.abs(image - A.symbol(j, k))) > tol:
            return False
        images[j, k] = image
    # composition table: image(x) image(y) = image(x o y) when composable, else 0
    for (j, k) in gens:
        for (l, m) in gens:
            product = images[j, k] @ images[l, m]
            expected = A.symbol(j, m) if k == l else np.zeros((n, n))
            if np.max(np.abs(product - expected)) > tol:
                return False
    return True


def check_transformation_consistency(A: OrthonormalBasis, B: OrthonormalBasis) -> float:
    """Max deviation between |<a_k|b_l>|^2 and the transformation function."""
    coeff = statistical_coefficients(A, B)
    return float(np.max(np.abs(np.abs(coeff) ** 2 - transformation_function(A, B).entries)))
