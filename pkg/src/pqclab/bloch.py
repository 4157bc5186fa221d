"""Bloch-sphere representation of qubit states and channels.

A qubit state rho corresponds to the real 3-vector r with
rho = (1 + r . sigma)/2, pure states sitting on the unit sphere. A qubit
channel acts affinely on r as r -> T r + t; the kernel of T determines
which pure states the channel sends to the maximally mixed state, and
``classify`` names that set.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channels import Channel, DensityOperator, is_unital
from .errors import BlochVectorTooLong, DimensionMismatch, NotUnital
from .linalg import DEFAULT_TOL, ToleranceConfig, as_cmatrix, freeze, nullspace_basis

__all__ = [
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "PAULIS",
    "BlochVector",
    "PauliTransfer",
    "PrivateStateSet",
    "Empty",
    "AntipodalPair",
    "GreatCircle",
    "AllStates",
    "density_to_bloch",
    "bloch_to_density",
    "bloch_to_ket",
    "transfer",
    "classify",
    "sample_private_states",
]

SIGMA_X = freeze(np.array([[0, 1], [1, 0]], dtype=np.complex128))
SIGMA_Y = freeze(np.array([[0, -1j], [1j, 0]], dtype=np.complex128))
SIGMA_Z = freeze(np.array([[1, 0], [0, -1]], dtype=np.complex128))
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


@dataclass(frozen=True, eq=False)
class BlochVector:
    """Real 3-vector r; represents a state when ||r|| <= 1."""

    r: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float)
        if r.shape != (3,):
            raise DimensionMismatch(f"Bloch vector must have 3 components, got {r.shape}")
        object.__setattr__(self, "r", freeze(r))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.r))


@dataclass(frozen=True, eq=False)
class PauliTransfer:
    """Affine representation (T, t) of a qubit map: r -> T r + t.

    Both parts must be real within atol, which holds exactly when the map
    preserves Hermiticity; the imaginary parts are checked then dropped.
    """

    T: np.ndarray
    t: np.ndarray
    tol: ToleranceConfig = field(default=DEFAULT_TOL, compare=False)

    def __post_init__(self):
        T = np.asarray(self.T, dtype=np.complex128)
        t = np.asarray(self.t, dtype=np.complex128)
        if T.shape != (3, 3) or t.shape != (3,):
            raise DimensionMismatch(f"expected 3x3 T and 3-vector t, got {T.shape}, {t.shape}")
        if np.abs(T.imag).max() > self.tol.atol or np.abs(t.imag).max() > self.tol.atol:
            raise ValueError("transfer parts have imaginary residue beyond atol")
        object.__setattr__(self, "T", freeze(T.real))
        object.__setattr__(self, "t", freeze(t.real))

    def as_matrix(self) -> np.ndarray:
        """4x4 affine block matrix [[1, 0], [t, T]]; first row is fixed by
        trace preservation."""
        m = np.zeros((4, 4))
        m[0, 0] = 1.0
        m[1:, 0] = self.t
        m[1:, 1:] = self.T
        return m


class PrivateStateSet:
    """Base of the four-way tagged union returned by :func:`classify`."""

    tag: str = ""
    nullity: int = -1


@dataclass(frozen=True, eq=False)
class Empty(PrivateStateSet):
    tag = "Empty"
    nullity = 0


@dataclass(frozen=True, eq=False)
class AntipodalPair(PrivateStateSet):
    """Exactly two private pure states, orthogonal to each other."""

    states: tuple[np.ndarray, np.ndarray]
    tag = "AntipodalPair"
    nullity = 1

    def __post_init__(self):
        a, b = (np.asarray(s, dtype=np.complex128) for s in self.states)
        if a.shape != (2,) or b.shape != (2,):
            raise DimensionMismatch("antipodal states must be qubit kets")
        if abs(np.vdot(a, b)) > 1e-6:
            raise ValueError("antipodal states must be orthogonal")
        object.__setattr__(self, "states", (freeze(a), freeze(b)))


@dataclass(frozen=True, eq=False)
class GreatCircle(PrivateStateSet):
    """Private states fill the great circle of the plane with this normal."""

    normal: np.ndarray
    tag = "GreatCircle"
    nullity = 2

    def __post_init__(self):
        n = np.asarray(self.normal, dtype=float)
        if n.shape != (3,):
            raise DimensionMismatch("normal must be a real 3-vector")
        if abs(np.linalg.norm(n) - 1.0) > 1e-6:
            raise ValueError("normal must be a unit vector")
        object.__setattr__(self, "normal", freeze(n))


@dataclass(frozen=True, eq=False)
class AllStates(PrivateStateSet):
    tag = "AllStates"
    nullity = 3


def density_to_bloch(rho) -> BlochVector:
    """Bloch vector r_k = trace(rho sigma_k) of a 2x2 density operator."""
    m = rho.mat if isinstance(rho, DensityOperator) else as_cmatrix(rho)
    if m.shape != (2, 2):
        raise DimensionMismatch(f"expected a 2x2 state, got {m.shape}")
    return BlochVector(np.array([np.trace(m @ s).real for s in PAULIS]))


def bloch_to_density(r, tol: ToleranceConfig = DEFAULT_TOL) -> DensityOperator:
    """State (1 + r . sigma)/2 of a Bloch vector with ||r|| <= 1."""
    rv = r.r if isinstance(r, BlochVector) else np.asarray(r, dtype=float)
    if rv.shape != (3,):
        raise DimensionMismatch(f"Bloch vector must have 3 components, got {rv.shape}")
    if np.linalg.norm(rv) > 1.0 + tol.atol:
        raise BlochVectorTooLong(f"norm {np.linalg.norm(rv)} exceeds 1")
    m = (np.eye(2) + rv[0] * SIGMA_X + rv[1] * SIGMA_Y + rv[2] * SIGMA_Z) / 2
    return DensityOperator(m, tol)


def bloch_to_ket(r) -> np.ndarray:
    """Pure-state ket for a unit Bloch vector, phase fixed by a real first
    amplitude."""
    rv = r.r if isinstance(r, BlochVector) else np.asarray(r, dtype=float)
    theta = np.arccos(np.clip(rv[2] / max(np.linalg.norm(rv), 1e-300), -1.0, 1.0))
    phi = np.arctan2(rv[1], rv[0])
    return np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])


def transfer(ch: Channel, tol: ToleranceConfig = DEFAULT_TOL) -> PauliTransfer:
    """Affine (T, t) with T_jk = trace(sigma_j ch(sigma_k))/2 and
    t_j = trace(sigma_j ch(1))/2."""
    if ch.dim_in != 2 or ch.dim_out != 2:
        raise DimensionMismatch("transfer is defined for qubit channels only")
    images = [ch.apply_matrix(s) for s in PAULIS]
    T = np.array([[np.trace(sj @ img) / 2 for img in images] for sj in PAULIS])
    one_img = ch.apply_matrix(np.eye(2))
    t = np.array([np.trace(sj @ one_img) / 2 for sj in PAULIS])
    return PauliTransfer(T, t, tol)


def _lex_sign(v: np.ndarray, atol: float) -> np.ndarray:
    """Flip sign so the first component larger than atol in modulus is
    positive; pins an orientation for directions defined up to sign."""
    for x in v:
        if abs(x) > atol:
            return v + 0.0 if x > 0 else -v + 0.0  # +0.0 clears negative zeros
    return v + 0.0


def classify(ch: Channel, tol: ToleranceConfig = DEFAULT_TOL) -> PrivateStateSet:
    """Name the set of pure states the channel maps to the maximally mixed
    state: nothing, an orthogonal pair, a great circle, or everything.

    Only unital qubit channels are classified; the kernel of T decides.
    """
    pt = transfer(ch, tol)
    if not is_unital(ch, tol):
        raise NotUnital("classification requires a unital channel")
    null = nullspace_basis(pt.T, tol)
    if len(null) == 0:
        return Empty()
    if len(null) == 1:
        v = _lex_sign(null[0] / np.linalg.norm(null[0]), tol.atol)
        return AntipodalPair((bloch_to_ket(v), bloch_to_ket(-v)))
    if len(null) == 2:
        n = np.cross(null[0], null[1])
        n = _lex_sign(n / np.linalg.norm(n), tol.atol)
        return GreatCircle(n)
    return AllStates()


def _fibonacci_sphere(count: int) -> np.ndarray:
    """Deterministic quasi-uniform covering of the unit sphere."""
    i = np.arange(count)
    z = 1.0 - 2.0 * (i + 0.5) / count
    phi = i * np.pi * (3.0 - np.sqrt(5.0))
    s = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    return np.column_stack([s * np.cos(phi), s * np.sin(phi), z])


def _circle_points(normal: np.ndarray, count: int) -> np.ndarray:
    # in-plane frame seeded from the coordinate axis most orthogonal to the
    # normal, so axis-aligned circles sample axis-aligned points
    e = np.zeros(3)
    e[int(np.argmin(np.abs(normal)))] = 1.0
    u = e - (e @ normal) * normal
    u = u / np.linalg.norm(u)
    w = np.cross(normal, u)
    theta = 2.0 * np.pi * np.arange(count) / count
    return np.outer(np.cos(theta), u) + np.outer(np.sin(theta), w)


def sample_private_states(s: PrivateStateSet, count: int) -> list[np.ndarray]:
    """Concrete pure states drawn from a classified set.

    Empty yields nothing and AntipodalPair yields its two states; the circle
    is sampled at equal angles and the full sphere by a Fibonacci covering,
    both deterministically.
    """
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    if isinstance(s, Empty):
        return []
    if isinstance(s, AntipodalPair):
        return [np.array(st) for st in s.states]
    if isinstance(s, GreatCircle):
        return [bloch_to_ket(r) for r in _circle_points(s.normal, count)]
    if isinstance(s, AllStates):
        return [bloch_to_ket(r) for r in _fibonacci_sphere(count)]
    raise TypeError(f"not a PrivateStateSet: {s!r}")
