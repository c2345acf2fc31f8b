import cmath
import math

import numpy as np
import pytest

from schwinger.algebra import involution
from schwinger.bases import (
    RayState,
    are_complementary,
    fourier_basis,
    is_doubly_stochastic,
    make_basis,
    probability_vector,
    random_basis,
    standard_basis,
    transformation_function,
    transition_amplitude_symbol,
    transition_probability,
    transition_probability_expansion,
)
from schwinger.errors import DimensionMismatch, NotOrthonormal, ZeroVector

from conftest import random_vector

S = 1 / math.sqrt(2)
X_BASIS = make_basis([[S, S], [S, -S]], ["+", "-"])


def test_make_basis():
    b = make_basis(np.eye(3), ["a", "b", "c"], eigenvalues=[1, 1, 2])
    assert b.dim == 3 and b.eigenvalues == (1.0, 1.0, 2.0)
    np.testing.assert_allclose(b.observable(), np.diag([1, 1, 2]))
    assert X_BASIS.dim == 2
    with pytest.raises(NotOrthonormal):
        make_basis([[1, 0], [1, 0]])
    with pytest.raises(NotOrthonormal):
        make_basis([[0, 0], [0, 1]])
    with pytest.raises(DimensionMismatch):
        make_basis([[1, 0, 0], [0, 1, 0]])
    with pytest.raises(DimensionMismatch):
        make_basis(np.eye(2), ["a"])


def test_resolution_of_identity(rng):
    for n in (1, 2, 5):
        b = random_basis(n, rng)
        total = sum(b.projector(j) for j in range(n))
        assert np.max(np.abs(total - np.eye(n))) <= 1e-10


def test_ray_state():
    with pytest.raises(ZeroVector):
        RayState([0, 0])
    psi = RayState([3, 4j])
    np.testing.assert_array_equal(psi.vector, [3, 4j])  # stored unnormalized
    assert psi.norm_squared == 25


def test_probability_vector_examples():
    np.testing.assert_allclose(probability_vector(RayState([1, 0, 0]), standard_basis(3)), [1, 0, 0])
    np.testing.assert_allclose(probability_vector(RayState([1, 0]), X_BASIS), [0.5, 0.5], atol=1e-15)
    # |1/2|^2, |1/2|^2, |sqrt2/2|^2
    psi = RayState(np.array([1, 1, math.sqrt(2)]) / 2)
    np.testing.assert_allclose(probability_vector(psi, standard_basis(3)), [0.25, 0.25, 0.5], atol=1e-15)
    with pytest.raises(DimensionMismatch):
        probability_vector(psi, X_BASIS)


def test_probability_vector_properties(rng):
    for n in (2, 3, 7):
        b = random_basis(n, rng)
        psi = RayState(random_vector(rng, n))
        p = probability_vector(psi, b)
        assert np.all(p >= -1e-15) and abs(p.sum() - 1) <= 1e-12
        for _ in range(10):
            c = complex(*rng.standard_normal(2)) * 10 ** rng.uniform(-3, 3)
            assert np.max(np.abs(probability_vector(RayState(c * psi.vector), b) - p)) <= 1e-12


def test_transition_probability_examples():
    psi = RayState([1, 0])
    assert transition_probability(psi, psi) == pytest.approx(1, abs=1e-15)
    assert transition_probability(psi, RayState([0, 1])) == 0
    assert transition_probability(psi, RayState([S, S])) == pytest.approx(0.5, abs=1e-15)


def test_transition_probability_basis_independent(rng):
    for n in (2, 3, 4):
        psi, phi = RayState(random_vector(rng, n)), RayState(random_vector(rng, n))
        direct = transition_probability(psi, phi)
        assert 0 <= direct <= 1
        assert transition_probability(phi, psi) == pytest.approx(direct, abs=1e-15)
        for _ in range(5):
            assert abs(transition_probability_expansion(psi, phi, random_basis(n, rng)) - direct) <= 1e-12


def test_amplitude_symbol(rng):
    psi = RayState(np.array([1, 1j]) / math.sqrt(2))
    rho = transition_amplitude_symbol(psi, psi).entries
    np.testing.assert_allclose(rho @ rho, rho, atol=1e-15)
    assert np.trace(rho) == pytest.approx(1)
    np.testing.assert_array_equal(
        transition_amplitude_symbol(RayState([1, 0]), RayState([0, 1])).entries, [[0, 1], [0, 0]]
    )
    n = 4
    psi, phi = RayState(random_vector(rng, n)), RayState(random_vector(rng, n))
    T_pf, T_fp = transition_amplitude_symbol(psi, phi), transition_amplitude_symbol(phi, psi)
    labels = standard_basis(n).labels
    assert involution(T_pf.as_element(labels)).max_distance(T_fp.as_element(labels)) <= 1e-15
    p = transition_probability(psi, phi)
    rho_psi = transition_amplitude_symbol(psi, psi).entries
    rho_phi = transition_amplitude_symbol(phi, phi).entries
    # the amplitude symbols compose back to the ray projector; their traces carry p
    assert np.max(np.abs((T_pf @ T_fp).entries - rho_psi)) <= 1e-12
    assert abs(np.trace(T_pf.entries) * np.trace(T_fp.entries) - p) <= 1e-12
    assert abs(np.trace(rho_psi @ rho_phi) - p) <= 1e-12
    assert np.max(np.abs(rho_psi @ rho_phi @ rho_psi - p * rho_psi)) <= 1e-12


def test_transformation_function_examples(rng):
    A = random_basis(3, rng)
    np.testing.assert_allclose(transformation_function(A, A).entries, np.eye(3), atol=1e-12)
    np.testing.assert_allclose(transformation_function(standard_basis(2), X_BASIS).entries, 0.5, atol=1e-15)
    T = transformation_function(A, random_basis(3, rng))
    assert is_doubly_stochastic(T, 1e-10)
    with pytest.raises(DimensionMismatch):
        transformation_function(A, X_BASIS)


@pytest.mark.parametrize("n", [2, 3, 4, 8])
def test_double_stochasticity_and_symmetry(n, rng):
    for _ in range(25):
        A, B = random_basis(n, rng), random_basis(n, rng)
        T = transformation_function(A, B)
        assert is_doubly_stochastic(T, 1e-10)
        assert np.max(np.abs(transformation_function(B, A).entries - T.entries.T)) <= 1e-12


def test_is_doubly_stochastic():
    assert is_doubly_stochastic(np.eye(4), 0.0)
    bad = np.array([[0.5, 0.4], [0.5, 0.6]])  # first row sums to 0.9
    assert not is_doubly_stochastic(bad, 1e-10)
    assert not is_doubly_stochastic(np.array([[1.5, -0.5], [-0.5, 1.5]]), 1e-10)


def fourier_overlap_oracle(n):
    """|<e_j|f_k>|^2 evaluated one entry at a time with cmath."""
    return [[abs(cmath.exp(2j * cmath.pi * j * k / n) / math.sqrt(n)) ** 2 for k in range(n)] for j in range(n)]


def test_fourier_basis():
    np.testing.assert_allclose(fourier_basis(1).vectors, [[1]])
    np.testing.assert_allclose(fourier_basis(2).vectors, [[S, S], [S, -S]], atol=1e-15)
    for n in (2, 3, 4, 5, 12):
        np.testing.assert_allclose(
            transformation_function(standard_basis(n), fourier_basis(n)).entries, fourier_overlap_oracle(n), atol=1e-14
        )
        assert are_complementary(standard_basis(n), fourier_basis(n))
    np.testing.assert_allclose(fourier_overlap_oracle(4), 0.25)


def test_complementarity_negative(rng):
    for n in (2, 3, 5):
        A = random_basis(n, rng)
        assert not are_complementary(A, A)
    assert are_complementary(standard_basis(2), X_BASIS)
