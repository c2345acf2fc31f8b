"""Cascades of selective measurements (idealized Stern-Gerlach filters).

Each stage accepts a single outcome of its basis.  The exact acceptance
probability is the product of successive squared overlaps; :func:`simulate`
checks it by Monte Carlo.

Randomness is counter based: trial ``i`` draws its uniforms from the Philox
blocks starting at ``i * blocks_per_trial`` under key ``seed``, so counts do
not depend on chunking or on the number of worker threads.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bases import OrthonormalBasis, RayState, probability_vector
from .errors import DimensionMismatch, EmptyCascade

ABSORBED_THRESHOLD = 1e-15
_WORDS_PER_BLOCK = 4  # Philox4x64 emits four 64-bit words per counter value


@dataclass(frozen=True, eq=False)
class CascadeStage:
    basis: OrthonormalBasis
    accepted: int

    def __post_init__(self):
        self.basis.labels.check_index(self.accepted)


@dataclass(frozen=True, eq=False)
class CascadeReport:
    exact_probability: float
    output_state: RayState | None  # None: absorbed
    stage_probabilities: tuple[float, ...] = ()
    empirical_fraction: float | None = None
    samples: int | None = None
    seed: int | None = None
    survivors: int | None = None

    @property
    def absorbed(self) -> bool:
        return self.output_state is None

    def tolerance(self, sigmas: float = 5.0) -> float | None:
        """Binomial ``sigmas``-standard-deviation band around the exact value."""
        if not self.samples:
            return None
        p = self.exact_probability
        return sigmas * float(np.sqrt(p * (1 - p) / self.samples))


def _check(psi0: RayState, stages: Sequence[CascadeStage]):
    if not stages:
        raise EmptyCascade("a cascade needs at least one stage")
    for s in stages:
        if s.basis.dim != psi0.dim:
            raise DimensionMismatch(f"stage basis of dimension {s.basis.dim}, state of dimension {psi0.dim}")


def exact_throughput(psi0: RayState, stages: Sequence[CascadeStage]) -> CascadeReport:
    _check(psi0, stages)
    state = psi0
    total = 1.0
    per_stage = []
    for stage in stages:
        prob = float(probability_vector(state, stage.basis)[stage.accepted])
        per_stage.append(prob)
        if prob < ABSORBED_THRESHOLD:
            return CascadeReport(0.0, None, tuple(per_stage))
        total *= prob
        state = RayState(stage.basis.ket(stage.accepted))
    return CascadeReport(total, state, tuple(per_stage))


def trial_uniforms(seed: int, start: int, count: int, n_stages: int) -> np.ndarray:
    """Uniforms in [0, 1) of shape (count, n_stages) for trials start..start+count-1."""
    blocks = -(-n_stages // _WORDS_PER_BLOCK)
    bitgen = np.random.Philox(key=seed, counter=[start * blocks, 0, 0, 0])
    raw = bitgen.random_raw(count * blocks * _WORDS_PER_BLOCK)
    raw = raw.reshape(count, blocks * _WORDS_PER_BLOCK)[:, :n_stages]
    return (raw >> np.uint64(11)).astype(np.float64) * (1.0 / 2**53)


def _stage_cdfs(psi0, stages):
    """Outcome CDF of every stage, given survival of all earlier stages."""
    cdfs = []
    state = psi0
    for stage in stages:
        cdf = np.cumsum(probability_vector(state, stage.basis))
        cdf[-1] = 1.0
        cdfs.append(cdf)
        state = RayState(stage.basis.ket(stage.accepted))
    return cdfs


def _count_survivors(seed, start, count, cdfs, accepted) -> int:
    u = trial_uniforms(seed, start, count, len(cdfs))
    alive = np.ones(count, dtype=bool)
    for s, (cdf, acc) in enumerate(zip(cdfs, accepted)):
        outcome = np.minimum(np.searchsorted(cdf, u[:, s], side="right"), len(cdf) - 1)
        alive &= outcome == acc
    return int(np.count_nonzero(alive))


def simulate(
    psi0: RayState,
    stages: Sequence[CascadeStage],
    samples: int,
    seed: int,
    chunk_size: int = 65536,
    workers: int = 1,
) -> CascadeReport:
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    exact = exact_throughput(psi0, stages)
    cdfs = _stage_cdfs(psi0, stages)
    accepted = [s.accepted for s in stages]
    chunks = [(start, min(chunk_size, samples - start)) for start in range(0, samples, chunk_size)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(lambda c: _count_survivors(seed, c[0], c[1], cdfs, accepted), chunks))
    else:
        counts = [_count_survivors(seed, start, count, cdfs, accepted) for start, count in chunks]
    survivors = sum(counts)
    return CascadeReport(
        exact.exact_probability,
        exact.output_state,
        exact.stage_probabilities,
        empirical_fraction=survivors / samples,
        samples=samples,
        seed=seed,
        survivors=survivors,
    )
