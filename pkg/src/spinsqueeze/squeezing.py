"""Coherent spin states, one-axis twisting and squeezing metrics.

The twisting unitary exp(-i * chi_t * Jz^2) is diagonal in the Dicke basis,
so evolution is elementwise phase multiplication.  The squeezing parameter
xi = DeltaJ_perp / sqrt(J/2) uses the smaller eigenvalue of the 2x2
transverse covariance matrix, i.e. the exact minimum over transverse
directions (no angle scan).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .dicke import SpinState, covariance_tangent, make_basis, rotate
from .io import SweepResult


@dataclass(frozen=True)
class SqueezeParams:
    """Twisting strength chi*t (only the product is physical) for N particles."""

    chi_t: float
    N: int

    def __post_init__(self):
        if not np.isfinite(self.chi_t):
            raise ValueError(f"chi_t must be finite, got {self.chi_t!r}")
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")


@dataclass(frozen=True, eq=False)
class OverlapGrid:
    """Squared overlaps of a state with rotated coherent-state probes."""

    theta_values: np.ndarray
    phi_values: np.ndarray
    probabilities: np.ndarray  # shape (len(theta), len(phi)), entries in [0, 1]


def coherent_state(N: int) -> SpinState:
    """Coherent spin state with binomial amplitudes 2^(-N/2) C(N, N/2+M)^(1/2).

    All amplitudes are real positive, which places the Bloch vector along +x.
    """
    basis = make_basis(N)
    q = np.arange(N + 1)  # q = J - M
    # log C(N, q) to stay finite for large N; the N/2 log 2 offset normalizes.
    log_amp = 0.5 * (gammaln(N + 1) - gammaln(q + 1) - gammaln(N - q + 1)) - N / 2 * math.log(2)
    return SpinState(basis, np.exp(log_amp).astype(complex))


def oat_evolve(state: SpinState, chi_t: float) -> SpinState:
    """One-axis twisting: amplitude at M_J = m picks up exp(-i chi_t m^2)."""
    if not np.isfinite(chi_t):
        raise ValueError(f"chi_t must be finite, got {chi_t!r}")
    m = np.array(state.basis.m_values)
    return SpinState(state.basis, np.exp(-1j * chi_t * m**2) * state.amplitudes)


def squeezing_xi(state: SpinState) -> float:
    """xi = sqrt(lambda_min of transverse covariance) / sqrt(J/2)."""
    frame = covariance_tangent(state)
    lam_min = float(np.linalg.eigvalsh(frame.covariance)[0])
    lam_min = max(lam_min, 0.0)  # clip tiny negative round-off
    return math.sqrt(lam_min) / math.sqrt(state.basis.J / 2)


def squeezing_db(var_squeezed: float, var_unsqueezed: float) -> float:
    """Squeezing in decibels: 10 log10(var_squeezed / var_unsqueezed)."""
    if var_squeezed <= 0 or var_unsqueezed <= 0:
        raise ValueError(
            f"variances must be strictly positive, got {var_squeezed!r}, {var_unsqueezed!r}"
        )
    return 10.0 * math.log10(var_squeezed / var_unsqueezed)


def overlap_grid(state: SpinState, theta_values, phi_values) -> OverlapGrid:
    """P(theta_i, phi_j) = |<CS| exp(i theta_i Jy) exp(i phi_j Jz) |state>|^2.

    The probe is exp(-i phi Jz) exp(-i theta Jy)|CS>, with the adjoint applied
    to the probe side of the overlap.  The coherent state points along +x, so
    rotations about y and z tip the probe along the two transverse directions
    (a rotation about x would only change its global phase).
    """
    theta_values = np.atleast_1d(np.asarray(theta_values, dtype=float))
    phi_values = np.atleast_1d(np.asarray(phi_values, dtype=float))
    if theta_values.size == 0 or phi_values.size == 0:
        raise ValueError("angle grids must be nonempty")
    basis = state.basis
    cs = coherent_state(basis.N)

    from .dicke import _axis_eig  # cached Jy eigendecomposition

    w, v = _axis_eig(basis.N, "y")
    cs_y = v.conj().T @ cs.amplitudes  # CS in the Jy eigenbasis
    m = np.array(basis.m_values)
    probs = np.empty((theta_values.size, phi_values.size))
    for j, phi in enumerate(phi_values):
        tw = v.conj().T @ (np.exp(1j * phi * m) * state.amplitudes)
        # overlap(theta) = sum_k conj(cs_x_k) e^{i theta w_k} tw_k, vectorized over theta
        amp = np.exp(1j * np.outer(theta_values, w)) @ (cs_y.conj() * tw)
        probs[:, j] = np.abs(amp) ** 2
    probs = np.clip(probs, 0.0, 1.0)
    return OverlapGrid(theta_values=theta_values, phi_values=phi_values, probabilities=probs)


def xi_sweep(N: int, chi_t_values) -> SweepResult:
    """xi and Bloch length |<J>| of the twisted coherent state over a chi_t grid."""
    chi_t_values = np.atleast_1d(np.asarray(chi_t_values, dtype=float))
    if chi_t_values.size == 0:
        raise ValueError("chi_t grid must be nonempty")
    if np.any(chi_t_values < 0) or not np.all(np.isfinite(chi_t_values)):
        raise ValueError("chi_t values must be finite and nonnegative")
    cs = coherent_state(N)
    xis = np.empty(chi_t_values.size)
    bloch = np.empty(chi_t_values.size)
    for i, chi_t in enumerate(chi_t_values):
        st = oat_evolve(cs, chi_t)
        frame = covariance_tangent(st)
        lam_min = max(float(np.linalg.eigvalsh(frame.covariance)[0]), 0.0)
        xis[i] = math.sqrt(lam_min) / math.sqrt(cs.basis.J / 2)
        bloch[i] = frame.mean_spin_length
    return SweepResult(
        columns={"chi_t": chi_t_values, "xi": xis, "bloch_length": bloch},
        metadata={"N": int(N)},
    )


def find_min_xi(N: int, chi_t_max: float = 0.5, grid_points: int = 2000,
                tol: float = 1e-6) -> tuple[float, float]:
    """(argmin chi_t, min xi) over (0, chi_t_max].

    Uniform scan followed by golden-section refinement; xi(chi_t) is smooth.
    """
    grid = np.linspace(chi_t_max / grid_points, chi_t_max, grid_points)
    cs = coherent_state(N)

    def f(chi_t):
        return squeezing_xi(oat_evolve(cs, chi_t))

    vals = [f(c) for c in grid]
    k = int(np.argmin(vals))
    lo = grid[max(k - 1, 0)]
    hi = grid[min(k + 1, grid_points - 1)]

    invphi = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return float(x), float(f(x))


def coherent_state_cross_check(N: int) -> float:
    """Max |amplitude| deviation between Eq.-style binomial CS and a rotated pole state.

    Used by tests: rotate(|J,J>, y, pi/2) must match coherent_state(N) up to
    global phase.
    """
    from .dicke import pole_state

    basis = make_basis(N)
    rotated = rotate(pole_state(basis), "y", math.pi / 2)
    cs = coherent_state(N)
    # strip global phase using the largest amplitude
    k = int(np.argmax(np.abs(cs.amplitudes)))
    phase = rotated.amplitudes[k] / cs.amplitudes[k]
    phase /= abs(phase)
    return float(np.max(np.abs(rotated.amplitudes / phase - cs.amplitudes)))
