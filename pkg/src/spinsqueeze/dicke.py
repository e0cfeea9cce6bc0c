"""Exact representation of the symmetric (Dicke) subspace of N spin-1/2 particles.

The subspace is spanned by the N+1 states |J, M_J> with J = N/2 and
M_J = J, J-1, ..., -J.  Amplitude index 0 corresponds to M_J = +J
(all particles up) and indices descend from there.

Collective operators J_z, J_+/-, J_x, J_y and J^2 are dense complex
(N+1) x (N+1) matrices; for the particle numbers targeted here
(N up to a few hundred) dense storage is cheap and exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DegenerateDirectionError

NORM_TOL = 1e-12

# Relative threshold on |<J>|/J below which the mean-spin direction is
# numerically meaningless.
EPS_DIR = 1e-9

_LABELS = ("Jz", "Jplus", "Jminus", "Jx", "Jy", "Jsq")


@dataclass(frozen=True)
class DickeBasis:
    """Dicke basis |J, M_J> for N spin-1/2 particles, J = N/2."""

    N: int
    J: float
    dim: int
    m_values: tuple[float, ...]


@dataclass(frozen=True, eq=False)
class SpinState:
    """Normalized state over a Dicke basis, indexed by descending M_J."""

    basis: DickeBasis
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (self.basis.dim,):
            raise ValueError(
                f"amplitude vector has shape {amps.shape}, expected ({self.basis.dim},)"
            )
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True, eq=False)
class CollectiveOperator:
    """Matrix representation of a collective spin operator on the Dicke subspace."""

    basis: DickeBasis
    matrix: np.ndarray
    label: str

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        d = self.basis.dim
        if mat.shape != (d, d):
            raise ValueError(f"operator matrix has shape {mat.shape}, expected ({d}, {d})")
        mat = mat.copy()
        mat.flags.writeable = False
        object.__setattr__(self, "matrix", mat)


@dataclass(frozen=True, eq=False)
class TangentFrame:
    """Mean-spin direction, tangent pair and transverse covariance matrix."""

    n_hat: np.ndarray
    u1: np.ndarray
    u2: np.ndarray
    covariance: np.ndarray  # 2x2 real symmetric, ordered (J.u1, J.u2)
    mean_spin_length: float = field(default=0.0)


def make_basis(N: int) -> DickeBasis:
    """Dicke basis for N particles: dim = N+1, J = N/2, M_J descending."""
    if not isinstance(N, (int, np.integer)) or N < 1:
        raise ValueError(f"particle count must be a positive integer, got {N!r}")
    N = int(N)
    J = N / 2
    m_values = tuple(J - q for q in range(N + 1))
    return DickeBasis(N=N, J=J, dim=N + 1, m_values=m_values)


def _ladder_coeffs(basis: DickeBasis) -> np.ndarray:
    # c_q = sqrt(J(J+1) - M(M+1)) with M = m_values[q+1]; raising from row q+1 to q.
    J = basis.J
    m = np.array(basis.m_values)
    return np.sqrt(J * (J + 1) - m[1:] * (m[1:] + 1))


def build_operator(basis: DickeBasis, label: str) -> CollectiveOperator:
    """Collective operator matrix for one of Jz, Jplus, Jminus, Jx, Jy, Jsq.

    Ladder matrix elements follow J_+- |J,M> = sqrt(J(J+1) - M(M+-1)) |J,M+-1>;
    Jsq is assembled as Jx^2 + Jy^2 + Jz^2 (equal to J(J+1) I on this subspace).
    """
    if label not in _LABELS:
        raise ValueError(f"unknown operator label {label!r}; expected one of {_LABELS}")
    d = basis.dim
    m = np.array(basis.m_values)
    if label == "Jz":
        mat = np.diag(m).astype(complex)
    elif label == "Jplus":
        c = _ladder_coeffs(basis)
        mat = np.zeros((d, d), dtype=complex)
        mat[np.arange(d - 1), np.arange(1, d)] = c
    elif label == "Jminus":
        c = _ladder_coeffs(basis)
        mat = np.zeros((d, d), dtype=complex)
        mat[np.arange(1, d), np.arange(d - 1)] = c
    elif label == "Jx":
        jp = build_operator(basis, "Jplus").matrix
        jm = build_operator(basis, "Jminus").matrix
        mat = (jp + jm) / 2
    elif label == "Jy":
        jp = build_operator(basis, "Jplus").matrix
        jm = build_operator(basis, "Jminus").matrix
        mat = (jp - jm) / 2j
    else:  # Jsq
        jx = build_operator(basis, "Jx").matrix
        jy = build_operator(basis, "Jy").matrix
        jz = build_operator(basis, "Jz").matrix
        mat = jx @ jx + jy @ jy + jz @ jz
    return CollectiveOperator(basis=basis, matrix=mat, label=label)


def custom_operator(basis: DickeBasis, matrix: np.ndarray) -> CollectiveOperator:
    """Wrap an arbitrary matrix as a collective operator on this basis."""
    return CollectiveOperator(basis=basis, matrix=matrix, label="custom")


def apply(op: CollectiveOperator, state: SpinState) -> np.ndarray:
    """O|psi> as a raw amplitude vector; no renormalization."""
    if op.basis != state.basis:
        raise ValueError("operator and state live on different bases")
    return op.matrix @ state.amplitudes


def expectation(op: CollectiveOperator, state: SpinState) -> complex:
    """<psi|O|psi> for a normalized state."""
    if op.basis != state.basis:
        raise ValueError("operator and state live on different bases")
    return complex(np.vdot(state.amplitudes, op.matrix @ state.amplitudes))


@lru_cache(maxsize=None)
def _axis_eig(N: int, axis: str):
    """Cached eigendecomposition of J_axis for rotations."""
    basis = make_basis(N)
    op = build_operator(basis, {"x": "Jx", "y": "Jy", "z": "Jz"}[axis])
    w, v = np.linalg.eigh(op.matrix)
    return w, v


def rotate(state: SpinState, axis: str, angle: float) -> SpinState:
    """exp(-i * angle * J_axis) |psi>, exact via eigendecomposition."""
    if axis not in ("x", "y", "z"):
        raise ValueError(f"axis must be one of 'x', 'y', 'z', got {axis!r}")
    if not np.isfinite(angle):
        raise ValueError(f"rotation angle must be finite, got {angle!r}")
    if axis == "z":
        phases = np.exp(-1j * angle * np.array(state.basis.m_values))
        return SpinState(state.basis, phases * state.amplitudes)
    w, v = _axis_eig(state.basis.N, axis)
    out = v @ (np.exp(-1j * angle * w) * (v.conj().T @ state.amplitudes))
    return SpinState(state.basis, out)


def mean_spin(state: SpinState) -> np.ndarray:
    """Real vector (<Jx>, <Jy>, <Jz>)."""
    return np.array(
        [
            expectation(build_operator(state.basis, lbl), state).real
            for lbl in ("Jx", "Jy", "Jz")
        ]
    )


def covariance_tangent(state: SpinState) -> TangentFrame:
    """Covariance of the two spin components transverse to the mean-spin direction.

    The tangent pair is deterministic: u1 is the normalized projection of the
    z-axis onto the tangent plane (u1 = x-hat when n-hat is along +-z), and
    u2 = n-hat x u1.  Raises DegenerateDirectionError when |<J>| <= EPS_DIR * J.
    """
    basis = state.basis
    jvec = mean_spin(state)
    length = float(np.linalg.norm(jvec))
    if length <= EPS_DIR * basis.J:
        raise DegenerateDirectionError(
            f"|<J>| = {length:.3e} <= {EPS_DIR * basis.J:.3e}; no mean-spin direction"
        )
    n_hat = jvec / length
    z = np.array([0.0, 0.0, 1.0])
    z_tan = z - np.dot(z, n_hat) * n_hat
    if np.linalg.norm(z_tan) < 1e-12:
        u1 = np.array([1.0, 0.0, 0.0])
    else:
        u1 = z_tan / np.linalg.norm(z_tan)
    u2 = np.cross(n_hat, u1)

    mats = [build_operator(basis, lbl).matrix for lbl in ("Jx", "Jy", "Jz")]
    op1 = sum(c * m for c, m in zip(u1, mats))
    op2 = sum(c * m for c, m in zip(u2, mats))
    psi = state.amplitudes
    e1 = np.vdot(psi, op1 @ psi).real
    e2 = np.vdot(psi, op2 @ psi).real
    e11 = np.vdot(psi, op1 @ (op1 @ psi)).real
    e22 = np.vdot(psi, op2 @ (op2 @ psi)).real
    sym12 = np.vdot(psi, (op1 @ (op2 @ psi) + op2 @ (op1 @ psi))).real / 2
    cov = np.array(
        [
            [e11 - e1 * e1, sym12 - e1 * e2],
            [sym12 - e1 * e2, e22 - e2 * e2],
        ]
    )
    return TangentFrame(n_hat=n_hat, u1=u1, u2=u2, covariance=cov, mean_spin_length=length)


def pole_state(basis: DickeBasis) -> SpinState:
    """The stretched state |J, +J> (all particles up)."""
    amps = np.zeros(basis.dim, dtype=complex)
    amps[0] = 1.0
    return SpinState(basis, amps)
