"""Schwinger's measurement symbols as pair groupoids.

Pair groupoids and their algebras, the matrix picture obtained from the
fundamental representation, and the probabilistic objects built on bases:
probability vectors, transition amplitudes, transformation functions,
complementarity, tomography and selective measurement cascades.
"""

from .algebra import (
    AlgebraElement,
    MatrixRepresentation,
    convolve,
    embed,
    involution,
    is_real,
    operator_norm,
    represent,
    unit,
)
from .bases import (
    OrthonormalBasis,
    RayState,
    TransformationFunction,
    are_complementary,
    fourier_basis,
    is_doubly_stochastic,
    make_basis,
    probability_vector,
    standard_basis,
    transformation_function,
    transition_amplitude_symbol,
    transition_probability,
)
from .cascade import CascadeReport, CascadeStage, exact_throughput, simulate
from .cross import (
    CrossSymbolProduct,
    Intertwiner,
    conjugate_transport,
    cross_product,
    make_intertwiner,
    verify_isomorphism,
)
from .errors import SchwingerError
from .groupoid import (
    OutcomeSet,
    PairGroupoid,
    PairGroupoidElement,
    compose,
    inverse,
    make_pair_groupoid,
    source,
    target,
    units,
)
from .tomography import Quorum, Tomogram, default_quorum, is_informationally_complete, reconstruct, tomograms

__version__ = "0.1.0"
