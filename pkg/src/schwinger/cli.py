"""Command line front end: one subcommand per module, JSON in, JSON out.

Exit status 0 on success, 2 for malformed input, 3 when a numerical or
structural contract is violated (the JSON body then carries
``{"error": code, "detail": message}``).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import algebra, bases, cascade, cross, groupoid, tomography
from . import serialization as ser
from .errors import MalformedInput, SchwingerError

EXIT_OK, EXIT_MALFORMED, EXIT_CONTRACT = 0, 2, 3


def _op(doc, default=None):
    op = doc.get("op", default) if isinstance(doc, dict) else None
    if op is None:
        raise MalformedInput("missing field 'op'")
    return op


def _unknown(op, known):
    return MalformedInput(f"unknown op {op!r}; expected one of {', '.join(known)}")


def cmd_groupoid(doc, args):
    op = _op(doc, "tables")
    if op == "tables":
        G = ser.groupoid_from_json(doc)
        n = G.n
        return {
            "outcomes": list(G.outcome_set.labels),
            "elements": len(G),
            "units": [[u.j, u.k] for u in groupoid.units(G)],
            "inverse": [{"x": [x.j, x.k], "result": [x.k, x.j]} for x in G.elements()],
            "compose": [
                {"x": [j, k], "y": [k, m], "result": [j, m]}
                for j in range(n) for k in range(n) for m in range(n)
            ],
        }
    if op == "units":
        return {"units": [ser.element_to_json(u) for u in groupoid.units(ser.groupoid_from_json(doc))]}
    if op == "compose":
        x, y = ser.element_from_json(doc.get("x")), ser.element_from_json(doc.get("y"))
        return {"result": ser.element_to_json(groupoid.compose(x, y))}
    unary = {"inverse": groupoid.inverse, "source": groupoid.source, "target": groupoid.target}
    if op in unary:
        return {"result": ser.element_to_json(unary[op](ser.element_from_json(doc.get("x"))))}
    raise _unknown(op, ["tables", "units", "compose", *unary])


def cmd_algebra(doc, args):
    op = _op(doc)
    if op == "embed":
        return {"result": ser.algebra_to_json(algebra.embed(ser.element_from_json(doc.get("element"))))}
    if op == "unit":
        return {"result": ser.algebra_to_json(algebra.unit(ser.outcomes_from_json(doc)))}
    x = ser.algebra_from_json(doc.get("x"))
    if op == "convolve":
        y = ser.algebra_from_json(doc.get("y"))
        return {"result": ser.algebra_to_json(algebra.convolve(x, y))}
    if op == "involution":
        return {"result": ser.algebra_to_json(algebra.involution(x))}
    if op == "represent":
        return {"matrix": ser.matrix_to_json(algebra.represent(x))}
    if op == "norm":
        return {"norm": algebra.operator_norm(x)}
    if op == "is_real":
        tol = 1e-12 if args.tol is None else args.tol
        return {"is_real": algebra.is_real(x, tol)}
    raise _unknown(op, ["embed", "unit", "convolve", "involution", "represent", "norm", "is_real"])


def cmd_basis(doc, args):
    op = _op(doc, "validate")
    if op == "validate":
        b = ser.basis_from_json(doc.get("basis"), args.tol)
        return {"valid": True, "dim": b.dim, "basis": ser.basis_to_json(b)}
    if op in ("fourier", "standard"):
        dim = ser._field(doc, "dim", int)
        if dim < 1:
            raise MalformedInput("dim must be positive")
        return {"basis": ser.basis_to_json(ser.NAMED_BASES[op](dim))}
    if op == "probability_vector":
        psi = ser.state_from_json(doc.get("state"))
        b = ser.basis_from_json(doc.get("basis"), args.tol)
        return {"probabilities": [ser._f(p) for p in bases.probability_vector(psi, b)]}
    if op in ("transition_probability", "amplitude"):
        psi, phi = ser.state_from_json(doc.get("psi")), ser.state_from_json(doc.get("phi"))
        if op == "amplitude":
            return {"matrix": ser.matrix_to_json(bases.transition_amplitude_symbol(psi, phi))}
        return {"probability": bases.transition_probability(psi, phi)}
    raise _unknown(op, ["validate", "fourier", "standard", "probability_vector", "transition_probability", "amplitude"])


def _pair(doc, args):
    return ser.basis_from_json(ser._field(doc, "A"), args.tol), ser.basis_from_json(ser._field(doc, "B"), args.tol)


def cmd_transform(doc, args):
    A, B = _pair(doc, args)
    T = bases.transformation_function(A, B)
    stoch_tol = bases.STOCHASTIC_TOL if args.tol is None else args.tol
    comp_tol = bases.COMPLEMENTARY_TOL if args.tol is None else args.tol
    return {
        "dim": T.dim,
        "entries": ser.real_matrix_to_json(T.entries),
        "doubly_stochastic": bases.is_doubly_stochastic(T, stoch_tol),
        "complementary": bases.are_complementary(A, B, comp_tol),
    }


def cmd_cross(doc, args):
    op = _op(doc, "intertwiner")
    A, B = _pair(doc, args)
    if op == "intertwiner":
        U = cross.make_intertwiner(A, B)
        return {"matrix": ser.matrix_to_json(U.matrix), "isomorphism": cross.verify_isomorphism(U)}
    if op == "isomorphism":
        if "matrix" in doc:
            U = cross.Intertwiner(ser.matrix_from_json(doc["matrix"]), A, B)
        else:
            U = cross.make_intertwiner(A, B)
        tol = cross.ISOMORPHISM_TOL if args.tol is None else args.tol
        return {"isomorphism": cross.verify_isomorphism(U, tol)}
    if op == "transport":
        U = cross.make_intertwiner(A, B)
        return {"result": ser.algebra_to_json(cross.conjugate_transport(U, ser.algebra_from_json(doc.get("x"))))}
    if op == "product":
        j, k, l, m = (ser._field(doc, key, int) for key in "jklm")
        return cross.cross_product(A, j, k, B, l, m).to_json("A", "B")
    raise _unknown(op, ["intertwiner", "isomorphism", "transport", "product"])


def cmd_tomography(doc, args):
    op = _op(doc, "complete")
    Q = ser.quorum_from_json(ser._field(doc, "quorum"), args.tol)
    if op == "complete":
        return {"complete": tomography.is_informationally_complete(Q), "dim": Q.dim, "bases": len(Q)}
    if op == "tomograms":
        psi = ser.state_from_json(doc.get("state"))
        return {"tomograms": [[ser._f(p) for p in t.probabilities] for t in tomography.tomograms(psi, Q)]}
    if op == "reconstruct":
        T = ser._field(doc, "tomograms", list)
        if not all(isinstance(t, list) and all(map(ser._is_number, t)) for t in T):
            raise MalformedInput("tomograms must be lists of numbers")
        rho = tomography.reconstruct(Q, T)
        return {
            "rho": ser.matrix_to_json(rho),
            "trace": ser._f(np.trace(rho).real),
            "min_eigenvalue": ser._f(np.linalg.eigvalsh(rho)[0]),
        }
    raise _unknown(op, ["complete", "tomograms", "reconstruct"])


def cmd_cascade(doc, args):
    psi0, stages = ser.cascade_from_json(doc, args.tol)
    if args.exact_only:
        report = cascade.exact_throughput(psi0, stages)
    else:
        if args.samples < 1 or args.seed < 0:
            raise MalformedInput("--samples must be positive and --seed nonnegative")
        report = cascade.simulate(psi0, stages, args.samples, args.seed, workers=args.workers)
    return ser.report_to_json(report)


COMMANDS = {
    "groupoid": (cmd_groupoid, "composition, inverse and unit tables of a pair groupoid"),
    "algebra": (cmd_algebra, "convolution, involution, representation and norm"),
    "basis": (cmd_basis, "validate bases, Fourier basis, probability vectors"),
    "transform": (cmd_transform, "transformation function with stochasticity/complementarity report"),
    "cross": (cmd_cross, "intertwiner, transport, cross products, isomorphism check"),
    "tomography": (cmd_tomography, "tomograms, completeness test, reconstruction"),
    "cascade": (cmd_cascade, "selective measurement cascades, exact and Monte Carlo"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schwinger", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", "-i", default="-", help="JSON input file (default: stdin)")
        p.add_argument("--output", "-o", default="-", help="output file (default: stdout)")
        p.add_argument("--tol", type=float, default=None, help="override the module tolerance")
        if name == "cascade":
            p.add_argument("--samples", type=int, default=100_000)
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--exact-only", action="store_true")
            p.add_argument("--workers", type=int, default=1)
    return parser


def _emit(text, path):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        if args.tol is not None and args.tol < 0:
            raise MalformedInput("--tol must be nonnegative")
        if args.input == "-":
            raw = sys.stdin.read()
        else:
            with open(args.input) as fh:
                raw = fh.read()
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"invalid JSON: {exc}") from None
        result = handler(doc, args)
    except MalformedInput as exc:
        sys.stdout.write(ser.dumps({"error": exc.code, "detail": str(exc)}))
        return EXIT_MALFORMED
    except SchwingerError as exc:
        sys.stdout.write(ser.dumps({"error": exc.code, "detail": str(exc)}))
        return EXIT_CONTRACT
    except OSError as exc:
        sys.stdout.write(ser.dumps({"error": "MalformedInput", "detail": str(exc)}))
        return EXIT_MALFORMED
    _emit(ser.dumps(result), args.output)
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
