"""JSON wire formats.

Complex numbers travel as ``[re, im]``; matrices as row-major nested lists
of such pairs; basis vectors are listed as columns.  Everything malformed is
reported as :class:`MalformedInput`.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .algebra import AlgebraElement, MatrixRepresentation
from .bases import OrthonormalBasis, RayState, fourier_basis, make_basis, standard_basis
from .cascade import CascadeReport, CascadeStage
from .errors import MalformedInput
from .groupoid import OutcomeSet, PairGroupoid, PairGroupoidElement
from .tomography import Quorum, default_quorum

NAMED_BASES = {"standard": standard_basis, "fourier": fourier_basis}


def dumps(doc: Any) -> str:
    """Canonical text: sorted keys, shortest round-trip floats, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _f(x) -> float:
    return float(x) + 0.0  # folds -0.0 into 0.0


def complex_to_json(z) -> list[float]:
    z = complex(z)
    return [_f(z.real), _f(z.imag)]


def complex_from_json(v) -> complex:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(_is_number(t) for t in v):
        return complex(v[0], v[1])
    raise MalformedInput(f"expected [re, im], got {v!r}")


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _field(doc, key, kind=None):
    if not isinstance(doc, dict):
        raise MalformedInput(f"expected an object, got {type(doc).__name__}")
    if key not in doc:
        raise MalformedInput(f"missing field {key!r}")
    value = doc[key]
    if kind is not None and not isinstance(value, kind) or isinstance(value, bool) and kind is int:
        raise MalformedInput(f"field {key!r} has the wrong type")
    return value


def vector_to_json(v) -> list:
    return [complex_to_json(z) for z in np.asarray(v).ravel()]


def vector_from_json(doc) -> np.ndarray:
    if not isinstance(doc, list):
        raise MalformedInput("expected a list of [re, im] pairs")
    return np.array([complex_from_json(z) for z in doc], dtype=complex)


def matrix_to_json(m) -> list:
    if isinstance(m, MatrixRepresentation):
        m = m.entries
    return [[complex_to_json(z) for z in row] for row in np.asarray(m)]


def matrix_from_json(doc) -> np.ndarray:
    if not isinstance(doc, list) or not all(isinstance(row, list) for row in doc):
        raise MalformedInput("expected a row-major list of rows")
    rows = [vector_from_json(row) for row in doc]
    if len({len(r) for r in rows}) > 1:
        raise MalformedInput("ragged matrix")
    return np.array(rows, dtype=complex).reshape(len(rows), -1)


def real_matrix_to_json(m) -> list:
    return [[_f(x) for x in row] for row in np.asarray(m, dtype=float)]


# groupoid -----------------------------------------------------------------

def outcomes_from_json(doc) -> OutcomeSet:
    labels = _field(doc, "outcomes", list)
    if not all(isinstance(label, str) for label in labels):
        raise MalformedInput("outcome labels must be strings")
    return OutcomeSet(tuple(labels))


def groupoid_to_json(G: PairGroupoid) -> dict:
    return {"outcomes": list(G.outcome_set.labels)}


def groupoid_from_json(doc) -> PairGroupoid:
    return PairGroupoid(outcomes_from_json(doc))


def element_to_json(x: PairGroupoidElement) -> dict:
    return {"outcomes": list(x.outcome_set.labels), "j": x.j, "k": x.k}


def element_from_json(doc) -> PairGroupoidElement:
    return PairGroupoidElement(outcomes_from_json(doc), _field(doc, "j", int), _field(doc, "k", int))


# algebra ------------------------------------------------------------------

def algebra_to_json(x: AlgebraElement) -> dict:
    terms = [
        {"j": j, "k": k, "re": _f(c.real), "im": _f(c.imag)} for (j, k), c in sorted(x.coeffs.items())
    ]
    return {"outcomes": list(x.outcome_set.labels), "terms": terms}


def algebra_from_json(doc) -> AlgebraElement:
    outcomes = outcomes_from_json(doc)
    coeffs: dict = {}
    for term in _field(doc, "terms", list):
        jk = (_field(term, "j", int), _field(term, "k", int))
        re, im = _field(term, "re"), term.get("im", 0.0)
        if not (_is_number(re) and _is_number(im)):
            raise MalformedInput("term coefficients must be numbers")
        coeffs[jk] = coeffs.get(jk, 0j) + complex(re, im)
    return AlgebraElement(outcomes, coeffs)


# bases and states ---------------------------------------------------------

def basis_to_json(b: OrthonormalBasis) -> dict:
    doc = {
        "dim": b.dim,
        "labels": list(b.labels.labels),
        "vectors": [vector_to_json(b.vectors[:, k]) for k in range(b.dim)],
    }
    if b.eigenvalues is not None:
        doc["eigenvalues"] = [_f(a) for a in b.eigenvalues]
    return doc


def basis_from_json(doc, tol: float | None = None) -> OrthonormalBasis:
    if isinstance(doc, dict) and "named" in doc:
        name = doc["named"]
        if name not in NAMED_BASES:
            raise MalformedInput(f"unknown named basis {name!r}; known: {sorted(NAMED_BASES)}")
        dim = _field(doc, "dim", int)
        if dim < 1:
            raise MalformedInput("dim must be positive")
        return NAMED_BASES[name](dim)
    vectors = [vector_from_json(v) for v in _field(doc, "vectors", list)]
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or not all(isinstance(s, str) for s in labels)):
        raise MalformedInput("labels must be a list of strings")
    eigenvalues = doc.get("eigenvalues")
    if eigenvalues is not None and (not isinstance(eigenvalues, list) or not all(map(_is_number, eigenvalues))):
        raise MalformedInput("eigenvalues must be a list of numbers")
    kwargs = {} if tol is None else {"tol": tol}
    basis = make_basis(vectors, labels, eigenvalues, name=doc.get("name"), **kwargs)
    if "dim" in doc and doc["dim"] != basis.dim:
        raise MalformedInput(f"declared dim {doc['dim']} but {basis.dim} vectors given")
    return basis


def state_to_json(psi: RayState) -> dict:
    return {"dim": psi.dim, "vector": vector_to_json(psi.vector)}


def state_from_json(doc) -> RayState:
    v = vector_from_json(_field(doc, "vector", list))
    if "dim" in doc and doc["dim"] != len(v):
        raise MalformedInput(f"declared dim {doc['dim']} but vector has {len(v)} entries")
    return RayState(v)


def quorum_to_json(Q: Quorum) -> dict:
    return {"bases": [basis_to_json(b) for b in Q.bases]}


def quorum_from_json(doc, tol: float | None = None) -> Quorum:
    if isinstance(doc, dict) and doc.get("named") == "default":
        return default_quorum(_field(doc, "dim", int))
    return Quorum(tuple(basis_from_json(b, tol) for b in _field(doc, "bases", list)))


# cascades -----------------------------------------------------------------

def cascade_from_json(doc, tol: float | None = None) -> tuple[RayState, list[CascadeStage]]:
    psi0 = state_from_json(_field(doc, "initial", dict))
    stages = [
        CascadeStage(basis_from_json(_field(s, "basis"), tol), _field(s, "accept", int))
        for s in _field(doc, "stages", list)
    ]
    return psi0, stages


def report_to_json(r: CascadeReport) -> dict:
    doc: dict = {"exact": _f(r.exact_probability), "absorbed": r.absorbed}
    if r.empirical_fraction is not None:
        doc["empirical"] = _f(r.empirical_fraction)
        doc["samples"] = r.samples
        doc["seed"] = r.seed
    return doc
