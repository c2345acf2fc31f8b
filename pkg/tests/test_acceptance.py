"""Acceptance criteria, one test each, at the pinned tolerances.

Run ``pytest tests/test_acceptance.py`` for the pass/fail summary.
"""

import itertools
import pathlib
import subprocess
import sys

import numpy as np

from schwinger.algebra import convolve, embed, involution, operator_norm, random_element, represent
from schwinger.bases import (
    RayState,
    fourier_basis,
    is_doubly_stochastic,
    probability_vector,
    random_basis,
    standard_basis,
    transformation_function,
    transition_probability,
    transition_probability_expansion,
)
from schwinger.cascade import CascadeStage, exact_throughput, simulate
from schwinger.cross import cross_product, make_intertwiner, transport_matrix, verify_isomorphism
from schwinger.groupoid import compose, inverse, make_pair_groupoid, source, target, units
from schwinger.tomography import Quorum, default_quorum, reconstruct, tomograms

GOLDEN = pathlib.Path(__file__).parent / "golden"
SUBCOMMANDS = ["groupoid", "algebra", "basis", "transform", "cross", "tomography", "cascade"]


def cvec(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def outcomes(n):
    return make_pair_groupoid([f"a{i + 1}" for i in range(n)])


def test_01_groupoid_axioms_exhaustive(criterion):
    failures, triples = 0, 0
    for n in range(1, 7):
        G = outcomes(n)
        elems = list(G.elements())
        assert len(elems) == n * n and len(units(G)) == n
        for x in elems:
            ok = compose(target(x), x) == x == compose(x, source(x))
            ok &= compose(x, inverse(x)) == target(x) and compose(inverse(x), x) == source(x)
            failures += not ok
        for x, y, z in itertools.product(elems, repeat=3):
            if x.k == y.j and y.k == z.j:
                triples += 1
                failures += compose(compose(x, y), z) != compose(x, compose(y, z))
    criterion(1, "groupoid axioms, n=1..6, exact", failures == 0, f"{triples} composable triples")


def test_02_representation_oracle(criterion):
    rng = np.random.default_rng(2)
    worst = 0.0
    for n in (2, 3, 4, 8):
        os_ = outcomes(n).outcome_set
        for _ in range(500):
            x, y = random_element(os_, rng), random_element(os_, rng)
            dense = represent(x).entries @ represent(y).entries
            worst = max(worst, np.max(np.abs(represent(convolve(x, y)).entries - dense)))
    criterion(2, "represent(x*y) = dense product, 500 pairs per n", worst <= 1e-12, f"max dev {worst:.2e}")


def test_03_cstar_identity(criterion):
    rng = np.random.default_rng(3)
    worst = 0.0
    for i in range(200):
        x = random_element(outcomes(1 + i % 8).outcome_set, rng)
        norm = operator_norm(x)
        dev = abs(operator_norm(convolve(involution(x), x)) - norm**2) / (1 + norm**2)
        worst = max(worst, dev)
    criterion(3, "C*-identity on 200 elements, n<=8", worst <= 1e-9, f"max rel dev {worst:.2e}")


def test_04_probability_vectors(criterion):
    rng = np.random.default_rng(4)
    min_entry, norm_dev, scale_dev = 1.0, 0.0, 0.0
    for n in (2, 3, 4, 8):
        for _ in range(10):
            basis, psi = random_basis(n, rng), RayState(cvec(rng, n))
            # include eigenstates, whose other entries sit at the nonnegativity boundary
            if rng.random() < 0.3:
                psi = RayState(basis.ket(int(rng.integers(n))) * complex(*rng.standard_normal(2)))
            p = probability_vector(psi, basis)
            min_entry = min(min_entry, p.min())
            norm_dev = max(norm_dev, abs(p.sum() - 1))
            for _ in range(50):
                c = complex(*rng.standard_normal(2)) * 10 ** rng.uniform(-4, 4)
                scale_dev = max(scale_dev, np.max(np.abs(probability_vector(RayState(c * psi.vector), basis) - p)))
    ok = min_entry >= -1e-15 and norm_dev <= 1e-12 and scale_dev <= 1e-12
    criterion(4, "probability vectors: >=0, normalized, scale invariant", ok,
              f"min {min_entry:.1e}, sum dev {norm_dev:.1e}, scale dev {scale_dev:.1e}")


def test_05_transition_probability_basis_independence(criterion):
    rng = np.random.default_rng(5)
    worst = 0.0
    for n in (2, 3, 4):
        for _ in range(100):
            psi, phi = RayState(cvec(rng, n)), RayState(cvec(rng, n))
            direct = transition_probability(psi, phi)
            for _ in range(20):
                worst = max(worst, abs(transition_probability_expansion(psi, phi, random_basis(n, rng)) - direct))
    criterion(5, "transition probability basis independent", worst <= 1e-12, f"max dev {worst:.2e}")


def test_06_double_stochasticity_and_symmetry(criterion):
    rng = np.random.default_rng(6)
    all_ok, sym = True, 0.0
    for n in (2, 3, 4, 8):
        for _ in range(100):
            A, B = random_basis(n, rng), random_basis(n, rng)
            T = transformation_function(A, B)
            all_ok &= is_doubly_stochastic(T, 1e-10)
            sym = max(sym, np.max(np.abs(transformation_function(B, A).entries - T.entries.T)))
    criterion(6, "transformation functions doubly stochastic and symmetric", all_ok and sym <= 1e-12,
              f"transpose dev {sym:.2e}")


def test_07_complementarity(criterion):
    worst = 0.0
    for n in range(2, 17):
        T = transformation_function(standard_basis(n), fourier_basis(n)).entries
        worst = max(worst, np.max(np.abs(T - 1 / n)))
    criterion(7, "standard vs Fourier flat at 1/n, n=2..16", worst <= 1e-9, f"max dev {worst:.2e}")


def test_08_isomorphism_transport(criterion):
    rng = np.random.default_rng(8)
    worst, verified = 0.0, True
    for i in range(50):
        n = 2 + i % 5
        A, B = random_basis(n, rng), random_basis(n, rng)
        U = make_intertwiner(A, B)
        for j, k in itertools.product(range(n), repeat=2):
            worst = max(worst, np.max(np.abs(transport_matrix(U, B.symbol(j, k)) - A.symbol(j, k))))
        verified &= verify_isomorphism(U)
    criterion(8, "U_AB carries M(b_j,b_k) to M(a_j,a_k), 50 pairs", worst <= 1e-10 and verified,
              f"max dev {worst:.2e}")


def test_09_cross_product_consistency(criterion):
    rng = np.random.default_rng(9)
    worst, exact_ok = 0.0, True
    for n in range(1, 5):
        A, B = random_basis(n, rng), random_basis(n, rng)
        for j, k, l, m in itertools.product(range(n), repeat=4):
            cp = cross_product(A, j, k, B, l, m)
            worst = max(worst, np.max(np.abs(A.symbol(j, k) @ B.symbol(l, m) - cp.coefficient * cp.result)))
        # A = B: the coefficient is a Kronecker delta and the same-basis composition law comes back exactly
        Z = standard_basis(n)
        G = Z.groupoid()
        for j, k, l, m in itertools.product(range(n), repeat=4):
            cp = cross_product(Z, j, k, Z, l, m)
            exact_ok &= cp.coefficient == (1 if k == l else 0)
            if k == l:
                exact_ok &= np.array_equal(cp.result, represent(embed(compose(G.element(j, k), G.element(l, m)))).entries)
            else:
                exact_ok &= not convolve(embed(G.element(j, k)), embed(G.element(l, m))).coeffs
    criterion(9, "cross products: matrix product = coefficient x result; A=B exact", worst <= 1e-12 and exact_ok,
              f"max dev {worst:.2e}")


def test_10_tomographic_round_trip(criterion):
    rng = np.random.default_rng(10)
    worst = 0.0
    for n in (2, 3, 4):
        Q = default_quorum(n)
        for _ in range(100):
            psi = RayState(cvec(rng, n))
            worst = max(worst, np.linalg.norm(reconstruct(Q, tomograms(psi, Q)) - psi.density()))
    plus, minus = RayState([1, 1]), RayState([1, -1])
    single = Quorum((standard_basis(2),))
    same = np.array_equal(tomograms(plus, single)[0].probabilities, tomograms(minus, single)[0].probabilities)
    p = transition_probability(plus, minus)
    criterion(10, "tomographic round trip + single-basis witness", worst <= 1e-9 and same and p < 1 - 1e-6,
              f"max Frobenius {worst:.2e}, witness p={p:.3g}")


def test_11_cascade_statistics(criterion):
    psi = RayState([1, 0])
    stages = [CascadeStage(fourier_basis(2), 0), CascadeStage(standard_basis(2), 0)]
    exact = exact_throughput(psi, stages).exact_probability
    within, identical = 0, True
    for seed in range(20):
        r = simulate(psi, stages, 100_000, seed)
        within += abs(r.empirical_fraction - 0.25) <= 0.0069
        identical &= simulate(psi, stages, 100_000, seed).survivors == r.survivors
    ok = abs(exact - 0.25) <= 1e-12 and within >= 19 and identical
    criterion(11, "Z -> X -> Z cascade: exact 1/4, Monte Carlo within 5 sigma", ok,
              f"exact {exact!r}, {within}/20 seeds within 0.0069")


def test_12_cli_golden_files(criterion):
    mismatched = []
    for name in SUBCOMMANDS:
        args_file = GOLDEN / f"{name}.args"
        flags = args_file.read_text().split() if args_file.exists() else []
        proc = subprocess.run(
            [sys.executable, "-m", "schwinger.cli", name, "--input", str(GOLDEN / f"{name}.input.json"), *flags],
            capture_output=True, text=True, check=False,
        )
        if proc.returncode != 0 or proc.stdout != (GOLDEN / f"{name}.output.json").read_text():
            mismatched.append(name)
    criterion(12, "CLI golden files byte-identical", not mismatched, f"mismatched: {mismatched}" if mismatched else "7 subcommands")
