"""Dense complex linear algebra primitives shared by the whole package.

Matrices are plain ``numpy.ndarray`` objects in row-major order with dtype
``complex128`` (the ``CMatrix`` alias). All functions are pure and never
mutate their inputs, so values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch

# Universal numeric carrier: a dense 2-D complex array, row-major.
CMatrix = np.ndarray

__all__ = [
    "CMatrix",
    "ToleranceConfig",
    "DEFAULT_TOL",
    "as_cmatrix",
    "freeze",
    "tensor",
    "direct_sum",
    "partial_trace",
    "nullspace_basis",
    "is_psd",
    "is_hermitian",
    "hs_inner",
    "max_abs_diff",
    "matrices_equal",
    "vec",
    "unvec",
]


@dataclass(frozen=True)
class ToleranceConfig:
    """Absolute tolerance driving every equality, PSD, and rank decision.

    Parameters
    ----------
    atol : float
        Absolute tolerance. Must be positive. Default 1e-9.
    """

    atol: float = 1e-9

    def __post_init__(self):
        if not (self.atol > 0 and np.isfinite(self.atol)):
            raise ValueError(f"atol must be positive and finite, got {self.atol}")


DEFAULT_TOL = ToleranceConfig()


def as_cmatrix(a) -> CMatrix:
    """Coerce to a 2-D complex128 array, rejecting non-finite entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def freeze(a: np.ndarray) -> np.ndarray:
    """Return a read-only copy; stored values are immutable by convention."""
    out = np.array(a, copy=True)
    out.setflags(write=False)
    return out


def tensor(a, b) -> CMatrix:
    """Kronecker product of two matrices; output dimensions multiply."""
    return np.kron(as_cmatrix(a), as_cmatrix(b))


def direct_sum(a, b) -> CMatrix:
    """Block-diagonal matrix with ``a`` top-left and ``b`` bottom-right."""
    a = as_cmatrix(a)
    b = as_cmatrix(b)
    out = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=np.complex128)
    out[: a.shape[0], : a.shape[1]] = a
    out[a.shape[0] :, a.shape[1] :] = b
    return out


def partial_trace(x, dim_left: int, dim_right: int, side: str) -> CMatrix:
    """Trace out one tensor factor of a square matrix on C^l (x) C^r.

    Parameters
    ----------
    x : array_like
        Square matrix of size ``dim_left * dim_right``.
    dim_left, dim_right : int
        Dimensions of the two tensor factors.
    side : {"left", "right"}
        Which factor to trace out; the output lives on the other one.
    """
    x = as_cmatrix(x)
    d = dim_left * dim_right
    if x.shape != (d, d):
        raise DimensionMismatch(
            f"expected a {d}x{d} matrix for factors ({dim_left}, {dim_right}), got {x.shape}"
        )
    t = x.reshape(dim_left, dim_right, dim_left, dim_right)
    if side == "left":
        return np.einsum("akal->kl", t)
    if side == "right":
        return np.einsum("akbk->ab", t)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def nullspace_basis(m, tol: ToleranceConfig = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal basis of the numerical nullspace of ``m``.

    Singular values below ``atol * max(s_max, 1)`` count as zero; the
    floor at 1 keeps the cutoff meaningful for near-zero matrices.
    Real input yields real basis vectors.
    """
    m = np.asarray(m)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got ndim={m.ndim}")
    if m.size == 0:
        return []
    _, s, vh = np.linalg.svd(m)
    cutoff = tol.atol * max(float(s[0]) if s.size else 0.0, 1.0)
    ncols = m.shape[1]
    rank = int(np.sum(s > cutoff))
    return [vh[i].conj() for i in range(rank, ncols)]


def is_hermitian(m, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    m = as_cmatrix(m)
    if m.shape[0] != m.shape[1]:
        return False
    return max_abs_diff(m, m.conj().T) <= tol.atol


def is_psd(m, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True iff ``m`` is Hermitian within atol with eigenvalues >= -atol."""
    m = as_cmatrix(m)
    if m.shape[0] != m.shape[1]:
        return False
    if not is_hermitian(m, tol):
        return False
    evals = np.linalg.eigvalsh((m + m.conj().T) / 2)
    return bool(evals.min() >= -tol.atol) if evals.size else True


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product trace(a^dag b)."""
    a = as_cmatrix(a)
    b = as_cmatrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape mismatch {a.shape} vs {b.shape}")
    return complex(np.sum(a.conj() * b))


def max_abs_diff(a, b) -> float:
    """Entrywise max-modulus difference, the package's matrix distance."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape mismatch {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def matrices_equal(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    return max_abs_diff(a, b) <= tol.atol


def vec(m) -> np.ndarray:
    """Row-major vectorization of a matrix."""
    return as_cmatrix(m).reshape(-1)


def unvec(v, rows: int, cols: int) -> CMatrix:
    """Inverse of :func:`vec` for the given shape."""
    v = np.asarray(v, dtype=np.complex128)
    if v.size != rows * cols:
        raise DimensionMismatch(f"vector of size {v.size} is not {rows}x{cols}")
    return v.reshape(rows, cols)
