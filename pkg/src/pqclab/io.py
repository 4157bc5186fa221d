"""JSON serialization for channels, algebras, states, and reports.

One structured-text format is used everywhere: complex numbers are
two-element arrays [re, im] (bare reals are accepted on input), matrices
are row-major arrays of arrays, and every document is a JSON object whose
"kind" or field names say what it holds. Output is deterministic: no
timestamps, stable key order, floats through Python repr.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .algebras import AlgebraSpec
from .channels import Channel, depolarizing, from_kraus, random_unitary
from .errors import PqclabError
from .linalg import DEFAULT_TOL, ToleranceConfig

__all__ = [
    "SpecFormatError",
    "RunReport",
    "complex_to_json",
    "vector_to_json",
    "matrix_to_json",
    "json_to_vector",
    "json_to_matrix",
    "channel_from_spec",
    "channel_to_spec",
    "algebra_from_spec",
    "algebra_to_spec",
    "NAMED_CHANNELS",
]

NAMED_CHANNELS = ("identity", "completely_depolarizing", "dephasing_z", "frame_n2")


class SpecFormatError(PqclabError):
    """Input document does not match the documented schema."""


def complex_to_json(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def vector_to_json(v) -> list[list[float]]:
    return [complex_to_json(z) for z in np.asarray(v).reshape(-1)]


def matrix_to_json(m) -> list[list[list[float]]]:
    m = np.asarray(m)
    return [[complex_to_json(z) for z in row] for row in m]


def _json_to_complex(x) -> complex:
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, list) and len(x) == 2 and all(isinstance(p, (int, float)) for p in x):
        return complex(x[0], x[1])
    raise SpecFormatError(f"expected a number or [re, im] pair, got {x!r}")


def json_to_vector(obj) -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise SpecFormatError("vector must be a nonempty array")
    return np.array([_json_to_complex(x) for x in obj], dtype=np.complex128)


def json_to_matrix(obj) -> np.ndarray:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise SpecFormatError("matrix must be a nonempty array of rows")
    rows = [[_json_to_complex(x) for x in r] for r in obj]
    if len({len(r) for r in rows}) != 1:
        raise SpecFormatError("matrix rows have inconsistent lengths")
    return np.array(rows, dtype=np.complex128)


def _require(obj: dict, key: str):
    if key not in obj:
        raise SpecFormatError(f"missing required field {key!r}")
    return obj[key]


def algebra_from_spec(obj: dict, tol: ToleranceConfig = DEFAULT_TOL) -> AlgebraSpec:
    """Parse {"blocks": [[m, n], ...], "zero_dim": k, "basis_change": matrix|null}."""
    if not isinstance(obj, dict):
        raise SpecFormatError("algebra spec must be an object")
    raw_blocks = _require(obj, "blocks")
    if not isinstance(raw_blocks, list) or not raw_blocks:
        raise SpecFormatError("blocks must be a nonempty array of [m, n] pairs")
    try:
        blocks = tuple((int(m), int(n)) for m, n in raw_blocks)
    except (TypeError, ValueError) as exc:
        raise SpecFormatError(f"bad blocks entry: {exc}") from exc
    zero_dim = int(obj.get("zero_dim", 0))
    raw_u = obj.get("basis_change")
    u = None if raw_u is None else json_to_matrix(raw_u)
    try:
        return AlgebraSpec(blocks, zero_dim, u, tol)
    except PqclabError:
        raise
    except ValueError as exc:
        raise SpecFormatError(str(exc)) from exc


def algebra_to_spec(alg: AlgebraSpec) -> dict:
    return {
        "blocks": [[m, n] for m, n in alg.blocks],
        "zero_dim": alg.zero_dim,
        "basis_change": matrix_to_json(alg.basis_change),
    }


def _named_channel(name: str, d: int | None, tol: ToleranceConfig) -> Channel:
    if name == "identity":
        return from_kraus([np.eye(d or 2)], tol)
    if name == "completely_depolarizing":
        return depolarizing(1.0, d or 2)
    if name == "dephasing_z":
        return random_unitary([0.5, 0.5], [np.eye(2), np.diag([1.0, -1.0])], tol)
    if name == "frame_n2":
        from .condexp import collective_noise_channel_n2

        return collective_noise_channel_n2()[0]
    raise SpecFormatError(f"unknown channel name {name!r}; known: {', '.join(NAMED_CHANNELS)}")


def channel_from_spec(obj: dict, tol: ToleranceConfig = DEFAULT_TOL) -> Channel:
    """Parse a channel document; see docs/file_formats.md for the schema."""
    if not isinstance(obj, dict):
        raise SpecFormatError("channel spec must be an object")
    kind = _require(obj, "kind")
    if kind == "kraus":
        mats = _require(obj, "kraus")
        if not isinstance(mats, list) or not mats:
            raise SpecFormatError("kraus must be a nonempty array of matrices")
        return from_kraus([json_to_matrix(m) for m in mats], tol)
    if kind == "random_unitary":
        probs = _require(obj, "probs")
        us = _require(obj, "unitaries")
        if not isinstance(probs, list) or not isinstance(us, list):
            raise SpecFormatError("random_unitary needs probs and unitaries arrays")
        return random_unitary([float(p) for p in probs], [json_to_matrix(u) for u in us], tol)
    if kind == "depolarizing":
        return depolarizing(float(_require(obj, "p")), int(_require(obj, "d")))
    if kind == "condexp":
        from .condexp import condexp_channel

        return condexp_channel(algebra_from_spec(_require(obj, "algebra"), tol), tol)
    if kind == "named":
        d = obj.get("d")
        return _named_channel(str(_require(obj, "name")), None if d is None else int(d), tol)
    raise SpecFormatError(f"unknown channel kind {kind!r}")


def channel_to_spec(ch: Channel) -> dict:
    """Serialize any channel through its Kraus list (the universal kind)."""
    return {"kind": "kraus", "kraus": [matrix_to_json(k) for k in ch.kraus]}


@dataclass(frozen=True)
class RunReport:
    """Machine-readable command outcome with stable field order."""

    command: str
    tolerance: float
    result: dict
    exit_code: int

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "tolerance": self.tolerance,
            "result": self.result,
            "exit_code": self.exit_code,
        }
        return json.dumps(doc, indent=2) + "\n"
