"""Command-line interface.

Subcommands: classify, check-pqc, trace-vectors, condexp, demo-frame.
Every file argument is a JSON document (see docs/file_formats.md) and "-"
reads the document from stdin. Machine output (default --format json) is a
RunReport with stable field order; identical inputs produce byte-identical
output. Exit codes: 0 for a completed run (including false verdicts),
1 for unreadable or schema-invalid input, 2 for domain errors such as
non-unital inputs or dimension mismatches.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .algebras import (
    AlgebraSpec,
    has_trace_vector,
    is_trace_vector,
    trace_vector_onb,
    trace_vector_wrt,
)
from .bloch import (
    AntipodalPair,
    GreatCircle,
    classify,
    density_to_bloch,
    sample_private_states,
    transfer,
)
from .channels import Channel, DensityOperator, choi
from .condexp import (
    PQCInstance,
    collective_noise_channel_n2,
    condexp_channel,
    is_pqc,
    verify_condexp_axioms,
)
from .errors import NoTraceVectors, PqclabError
from .io import (
    RunReport,
    SpecFormatError,
    algebra_from_spec,
    channel_from_spec,
    json_to_matrix,
    json_to_vector,
    matrix_to_json,
    vector_to_json,
)
from .linalg import ToleranceConfig

ENV_TOL = "PQCLAB_TOL"


class CliFailure(Exception):
    """Abort the command with a message and a contract exit code."""

    def __init__(self, exit_code: int, message: str):
        super().__init__(message)
        self.exit_code = exit_code


def _read_document(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else open(path, "r", encoding="utf-8").read()
    except OSError as exc:
        raise CliFailure(1, f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliFailure(1, f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise CliFailure(1, f"top-level value in {path} must be an object")
    return doc


def _load_channel(path: str, tol: ToleranceConfig) -> Channel:
    doc = _read_document(path)
    try:
        return channel_from_spec(doc, tol)
    except (SpecFormatError, PqclabError, ValueError) as exc:
        raise CliFailure(1, f"bad channel file {path}: {exc}") from exc


def _load_algebra(path: str, tol: ToleranceConfig) -> AlgebraSpec:
    doc = _read_document(path)
    try:
        return algebra_from_spec(doc, tol)
    except (SpecFormatError, ValueError, PqclabError) as exc:
        raise CliFailure(1, f"bad algebra file {path}: {exc}") from exc


def _load_density(path: str, key: str, tol: ToleranceConfig) -> DensityOperator:
    doc = _read_document(path)
    if key not in doc:
        raise CliFailure(1, f"{path} must contain a {key!r} matrix")
    try:
        return DensityOperator(json_to_matrix(doc[key]), tol)
    except (SpecFormatError, PqclabError, ValueError) as exc:
        raise CliFailure(1, f"bad density matrix in {path}: {exc}") from exc


def _domain(exc: PqclabError) -> CliFailure:
    return CliFailure(2, f"{type(exc).__name__}: {exc}")


def _floats(a) -> list:
    return [float(x) + 0.0 for x in np.asarray(a, dtype=float).reshape(-1)]


def _ket_row(ket: np.ndarray) -> dict:
    r = density_to_bloch(np.outer(ket, ket.conj())).r
    return {
        "theta": float(np.arccos(np.clip(r[2], -1.0, 1.0))),
        "bloch": _floats(r),
        "amplitudes": vector_to_json(ket),
    }


def _write_sample_csv(path: str, rows: list[dict]) -> None:
    # fixed header, radians, 17 significant digits; meant for external plotting
    def fmt(x: float) -> str:
        return f"{x:.17g}"

    lines = ["theta,rx,ry,rz,re0,im0,re1,im1"]
    for row in rows:
        amps = [x for pair in row["amplitudes"] for x in pair]
        lines.append(",".join(fmt(v) for v in ([row["theta"]] + row["bloch"] + amps)))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def cmd_classify(args, tol: ToleranceConfig) -> RunReport:
    ch = _load_channel(args.channel, tol)
    try:
        pt = transfer(ch, tol)
        tag = classify(ch, tol)
    except PqclabError as exc:
        raise _domain(exc) from exc
    result = {
        "tag": tag.tag,
        "nullity": tag.nullity,
        "T": [_floats(row) for row in pt.T],
        "t": _floats(pt.t),
    }
    if isinstance(tag, AntipodalPair):
        result["states"] = [vector_to_json(s) for s in tag.states]
    if isinstance(tag, GreatCircle):
        result["normal"] = _floats(tag.normal)
    if args.samples:
        rows = [_ket_row(k) for k in sample_private_states(tag, args.samples)]
        result["samples"] = rows
        if args.out:
            _write_sample_csv(args.out, rows)
    return RunReport("classify", tol.atol, result, 0)


def cmd_check_pqc(args, tol: ToleranceConfig) -> RunReport:
    ch = _load_channel(args.channel, tol)
    doc = _read_document(args.states)
    if "states" not in doc or not isinstance(doc["states"], list) or not doc["states"]:
        raise CliFailure(1, f"{args.states} must contain a nonempty 'states' array")
    try:
        states = [json_to_vector(s) for s in doc["states"]]
    except SpecFormatError as exc:
        raise CliFailure(1, f"bad states file {args.states}: {exc}") from exc
    rho0 = _load_density(args.rho0, "rho0", tol)
    try:
        inst = PQCInstance(tuple(states), ch, rho0, tol)
    except PqclabError as exc:
        raise _domain(exc) from exc
    report = is_pqc(inst, tol)
    result = {"verdict": report.verdict, "residuals": [float(r) for r in report.residuals]}
    return RunReport("check-pqc", tol.atol, result, 0)


def cmd_trace_vectors(args, tol: ToleranceConfig) -> RunReport:
    alg = _load_algebra(args.algebra, tol)
    result: dict
    if args.onb:
        try:
            vectors = trace_vector_onb(alg)
        except NoTraceVectors:
            return RunReport(
                "trace-vectors",
                tol.atol,
                {"no_trace_vectors": True, "blocks": [[m, n] for m, n in alg.blocks]},
                0,
            )
        except PqclabError as exc:
            raise _domain(exc) from exc
        rho0 = DensityOperator(np.eye(alg.dim) / alg.dim, tol)
        gram = np.array([[np.vdot(a, b) for b in vectors] for a in vectors])
        worst = max(is_trace_vector(v, alg, rho0, tol).max_violation for v in vectors)
        result = {
            "onb": [vector_to_json(v) for v in vectors],
            "gram_deviation": float(np.max(np.abs(gram - np.eye(alg.dim)))),
            "max_violation": float(worst),
        }
    elif args.check:
        doc = _read_document(args.check)
        if "vector" not in doc:
            raise CliFailure(1, f"{args.check} must contain a 'vector' array")
        try:
            v = json_to_vector(doc["vector"])
        except SpecFormatError as exc:
            raise CliFailure(1, f"bad vector file {args.check}: {exc}") from exc
        rho0 = (
            _load_density(args.rho0, "rho0", tol)
            if args.rho0
            else DensityOperator(np.eye(alg.dim) / alg.dim, tol)
        )
        try:
            report = is_trace_vector(v, alg, rho0, tol)
        except PqclabError as exc:
            raise _domain(exc) from exc
        result = {"passed": report.passed, "max_violation": float(report.max_violation)}
    elif args.rho0:
        rho0 = _load_density(args.rho0, "rho0", tol)
        try:
            v = trace_vector_wrt(alg, rho0, tol)
            report = is_trace_vector(v, alg, rho0, tol)
        except PqclabError as exc:
            raise _domain(exc) from exc
        result = {
            "vector": vector_to_json(v),
            "passed": report.passed,
            "max_violation": float(report.max_violation),
        }
    else:
        try:
            admits = has_trace_vector(alg)
        except PqclabError as exc:
            raise _domain(exc) from exc
        result = {
            "has_trace_vector": admits,
            "dim": alg.dim,
            "blocks": [[m, n] for m, n in alg.blocks],
        }
    return RunReport("trace-vectors", tol.atol, result, 0)


def cmd_condexp(args, tol: ToleranceConfig) -> RunReport:
    alg = _load_algebra(args.algebra, tol)
    try:
        ch = condexp_channel(alg, tol)
    except PqclabError as exc:
        raise _domain(exc) from exc
    result: dict = {"dim": alg.dim}
    if args.emit == "kraus":
        result["kraus"] = [matrix_to_json(k) for k in ch.kraus]
    elif args.emit == "choi":
        result["choi"] = matrix_to_json(choi(ch))
    elif args.emit == "transfer":
        try:
            pt = transfer(ch, tol)
        except PqclabError as exc:
            raise _domain(exc) from exc
        result["transfer"] = {"T": [_floats(r) for r in pt.T], "t": _floats(pt.t)}
    if args.verify:
        rep = verify_condexp_axioms(ch, alg, tol)
        result["axioms"] = {
            "fixes_subalgebra": float(rep.fixes_subalgebra),
            "bimodule": float(rep.bimodule),
            "positive": rep.positive,
            "trace_preserving": float(rep.trace_preserving),
            "passed": rep.passed,
        }
    return RunReport("condexp", tol.atol, result, 0)


def cmd_demo_frame(args, tol: ToleranceConfig) -> RunReport:
    ch, alg = collective_noise_channel_n2()
    axioms = verify_condexp_axioms(ch, alg, tol)
    rho0 = DensityOperator(np.eye(4) / 4, tol)
    v = trace_vector_wrt(alg, rho0, tol)
    u = alg.basis_change
    triplet_proj = u.conj().T @ np.diag([1.0, 1.0, 1.0, 0.0]) @ u
    weight = float(np.real(v.conj() @ triplet_proj @ v))
    verdict = is_pqc(PQCInstance((v,), ch, rho0, tol), tol)
    result = {
        "axioms": {
            "fixes_subalgebra": float(axioms.fixes_subalgebra),
            "bimodule": float(axioms.bimodule),
            "positive": axioms.positive,
            "trace_preserving": float(axioms.trace_preserving),
            "passed": axioms.passed,
        },
        "vector": vector_to_json(v),
        "triplet_weight": weight,
        "singlet_weight": float(1.0 - weight),
        "is_pqc": verdict.verdict,
        "residuals": [float(r) for r in verdict.residuals],
    }
    return RunReport("demo-frame", tol.atol, result, 0)


def _render_text(report: RunReport) -> str:
    lines = [f"command: {report.command}", f"tolerance: {report.tolerance!r}"]

    def walk(value, indent: str, label: str):
        if isinstance(value, dict):
            lines.append(f"{indent}{label}:")
            for k, v in value.items():
                walk(v, indent + "  ", k)
        elif isinstance(value, list) and value and isinstance(value[0], (list, dict)):
            lines.append(f"{indent}{label}:")
            for i, v in enumerate(value):
                walk(v, indent + "  ", f"[{i}]")
        else:
            lines.append(f"{indent}{label}: {value!r}")

    for key, val in report.result.items():
        walk(val, "", key)
    lines.append(f"exit_code: {report.exit_code}")
    return "\n".join(lines) + "\n"


def _resolve_tol(args) -> ToleranceConfig:
    atol = 1e-9
    env = os.environ.get(ENV_TOL)
    if env is not None:
        try:
            atol = float(env)
        except ValueError as exc:
            raise CliFailure(1, f"cannot parse {ENV_TOL}={env!r} as a float") from exc
    if args.tol is not None:
        atol = args.tol
    try:
        return ToleranceConfig(atol)
    except ValueError as exc:
        raise CliFailure(1, str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pqclab",
        description="Private quantum channels, conditional expectations, trace vectors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=None, help="absolute tolerance (default 1e-9)")
        p.add_argument(
            "--format", choices=["json", "text"], default="json", help="output format"
        )

    p = sub.add_parser("classify", help="classify the private states of a unital qubit channel")
    p.add_argument("channel", help="channel spec file, or - for stdin")
    p.add_argument("--samples", type=int, default=0, help="sample this many private states")
    p.add_argument("--out", default=None, help="write sampled states as CSV to this path")
    common(p)

    p = sub.add_parser("check-pqc", help="check that a channel privatizes the given states")
    p.add_argument("channel")
    p.add_argument("states", help="JSON file with a 'states' array")
    p.add_argument("rho0", help="JSON file with a 'rho0' matrix")
    common(p)

    p = sub.add_parser("trace-vectors", help="trace-vector constructions and checks")
    p.add_argument("algebra", help="algebra spec file, or - for stdin")
    p.add_argument("--onb", action="store_true", help="emit an orthonormal trace-vector basis")
    p.add_argument("--check", default=None, help="JSON file with a 'vector' to check")
    p.add_argument("--rho0", default=None, help="JSON file with a 'rho0' matrix")
    common(p)

    p = sub.add_parser("condexp", help="build the conditional expectation channel of an algebra")
    p.add_argument("algebra")
    p.add_argument("--emit", choices=["kraus", "choi", "transfer"], default="kraus")
    p.add_argument("--verify", action="store_true", help="append an axiom report")
    common(p)

    p = sub.add_parser("demo-frame", help="run the two-qubit collective-noise demo end to end")
    common(p)

    return parser


COMMANDS = {
    "classify": cmd_classify,
    "check-pqc": cmd_check_pqc,
    "trace-vectors": cmd_trace_vectors,
    "condexp": cmd_condexp,
    "demo-frame": cmd_demo_frame,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        tol = _resolve_tol(args)
        report = COMMANDS[args.command](args, tol)
    except CliFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    out = report.to_json() if args.format == "json" else _render_text(report)
    sys.stdout.write(out)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
