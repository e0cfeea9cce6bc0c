"""Geometric phase gate on a truncated oscillator (x) Dicke product space.

The drive H(t) = lambda_c (a^dag e^{i delta' t} + a e^{-i delta' t}) Jz is
block diagonal in M_J: each sector sees a classically driven oscillator.
Numerics use a fixed-step RK4 propagator; the closed-form solution (exact
because the second-order Magnus expansion terminates) provides an
independent oracle:

    alpha_m(t) = -(lambda_c m / delta')(e^{i delta' t} - 1)
    Phi_m(t)   = (lambda_c m / delta')^2 (delta' t - sin delta' t)

so that a sector evolves as |0>|m> -> e^{i Phi_m} D(alpha_m)|0>|m>.
At loop closure t = k 2pi/delta' the displacement vanishes and the
accumulated phase 2pi k (lambda_c m/delta')^2 is quadratic in m, i.e. the
gate acts as one-axis twisting on the spin.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .dicke import DickeBasis, SpinState, make_basis
from .errors import CutoffOverflowError, OpenLoopError, StepSizeError
from .io import SweepResult
from .squeezing import oat_evolve

TOP_FOCK_TOL = 1e-8
NORM_DRIFT_TOL = 1e-9
RETURN_FIDELITY_TOL = 1e-6
STEPS_PER_LOOP = 4096
CONVERGENCE_TOL = 1e-8


def fock_cutoff(lambda_c: float, delta_p: float, J: float) -> int:
    """Cutoff rule n_max = ceil(|a|^2 + 8|a| + 10) with |a| = 2 lambda_c J / delta'.

    The +8 sigma margin on the coherent-state Poisson tail keeps the top-level
    population below 1e-8.
    """
    a_max = 2.0 * abs(lambda_c) * J / delta_p
    return int(math.ceil(a_max**2 + 8.0 * a_max + 10.0))


@dataclass(frozen=True)
class GateParams:
    """Physical parameters of the geometric phase gate.

    g, Delta and eta enter only through lambda_c = g^2 eta / Delta; eta is
    kept as an informational Lamb-Dicke validity flag.
    """

    lambda_c: float
    delta_p: float
    N: int
    loops: int = 1
    n_max: int | None = None
    eta: float = 0.1

    def __post_init__(self):
        if not np.isfinite(self.lambda_c):
            raise ValueError(f"lambda_c must be finite, got {self.lambda_c!r}")
        if self.delta_p <= 0:
            raise ValueError(f"delta_p must be positive, got {self.delta_p!r}")
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        if self.loops < 1:
            raise ValueError(f"loops must be >= 1, got {self.loops}")
        if self.eta >= 0.3:
            warnings.warn(
                f"Lamb-Dicke parameter eta={self.eta} is not << 1; "
                "the effective Hamiltonian is suspect",
                stacklevel=2,
            )
        if self.n_max is None:
            object.__setattr__(self, "n_max", fock_cutoff(self.lambda_c, self.delta_p, self.N / 2))
        elif self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")

    @property
    def basis(self) -> DickeBasis:
        return make_basis(self.N)

    @property
    def loop_time(self) -> float:
        return 2.0 * math.pi / self.delta_p

    @property
    def total_time(self) -> float:
        return self.loops * self.loop_time


@dataclass(frozen=True, eq=False)
class JointState:
    """Amplitudes over the Fock (x) Dicke product basis, shape (n_max+1, N+1)."""

    n_max: int
    basis: DickeBasis
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        shape = (self.n_max + 1, self.basis.dim)
        if amps.shape != shape:
            raise ValueError(f"amplitudes have shape {amps.shape}, expected {shape}")
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def sector_norms(self) -> np.ndarray:
        return np.linalg.norm(self.amplitudes, axis=0)

    def top_fock_population(self) -> float:
        return float(np.sum(np.abs(self.amplitudes[-2:, :]) ** 2))


def ground_joint(params: GateParams, spin: SpinState) -> JointState:
    """|0> (x) |spin>."""
    if spin.basis != params.basis:
        raise ValueError("spin state basis does not match gate parameters")
    amps = np.zeros((params.n_max + 1, params.basis.dim), dtype=complex)
    amps[0, :] = spin.amplitudes
    return JointState(n_max=params.n_max, basis=params.basis, amplitudes=amps)


def fock_dicke(params: GateParams, n: int, m: float) -> JointState:
    """Product basis state |n>|J, m>."""
    basis = params.basis
    if not 0 <= n <= params.n_max:
        raise ValueError(f"Fock index {n} outside [0, {params.n_max}]")
    try:
        col = basis.m_values.index(m)
    except ValueError:
        raise ValueError(f"m={m} is not an eigenvalue of Jz for N={basis.N}") from None
    amps = np.zeros((params.n_max + 1, basis.dim), dtype=complex)
    amps[n, col] = 1.0
    return JointState(n_max=params.n_max, basis=basis, amplitudes=amps)


@dataclass(frozen=True, eq=False)
class GateTrace:
    """Per-sector observables sampled along a gate evolution."""

    times: np.ndarray
    m_values: np.ndarray  # populated M_J sectors
    nbar: np.ndarray  # shape (len(times), len(m_values))
    phase: np.ndarray  # unwrapped, referenced to the m=0 sector
    return_fidelity: np.ndarray
    metadata: dict = field(default_factory=dict)


def _derivative(amps, t, lambda_c, delta_p, m, sqrt_n):
    """-i H(t) psi for H = lambda_c (a^dag e^{i d t} + a e^{-i d t}) Jz."""
    phase = np.exp(1j * delta_p * t)
    out = np.zeros_like(amps)
    # a^dag: |n> -> sqrt(n+1)|n+1>; a: |n> -> sqrt(n)|n-1>
    out[1:, :] = phase * sqrt_n[1:, None] * amps[:-1, :]
    out[:-1, :] += np.conj(phase) * sqrt_n[1:, None] * amps[1:, :]
    return -1j * lambda_c * out * m[None, :]


def _rk4_run(params: GateParams, amps0: np.ndarray, t_end: float, sample_count: int,
             steps_per_sample: int):
    """Propagate and return (times, list of sampled amplitude arrays)."""
    m = np.array(params.basis.m_values)
    sqrt_n = np.sqrt(np.arange(params.n_max + 1))
    n_steps = sample_count * steps_per_sample
    h = t_end / n_steps
    amps = amps0.astype(complex).copy()
    samples = [amps.copy()]
    t = 0.0
    for step in range(n_steps):
        t = step * h
        k1 = _derivative(amps, t, params.lambda_c, params.delta_p, m, sqrt_n)
        k2 = _derivative(amps + 0.5 * h * k1, t + 0.5 * h, params.lambda_c, params.delta_p, m, sqrt_n)
        k3 = _derivative(amps + 0.5 * h * k2, t + 0.5 * h, params.lambda_c, params.delta_p, m, sqrt_n)
        k4 = _derivative(amps + h * k3, t + h, params.lambda_c, params.delta_p, m, sqrt_n)
        amps += (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if (step + 1) % steps_per_sample == 0:
            samples.append(amps.copy())
    times = np.linspace(0.0, t_end, sample_count + 1)
    return times, samples


def evolve_numeric(params: GateParams, initial: JointState, t_end: float,
                   sample_count: int = 0, convergence_check: bool = True):
    """Integrate i d|psi>/dt = H(t)|psi> with fixed-step RK4.

    Returns (GateTrace, final JointState).  Raises CutoffOverflowError when
    population reaches the top two Fock levels, StepSizeError on norm drift
    or step-halving disagreement beyond tolerance.
    """
    if initial.basis != params.basis or initial.n_max != params.n_max:
        raise ValueError("initial state does not match gate parameters")
    if t_end <= 0:
        raise ValueError(f"t_end must be positive, got {t_end!r}")
    loops_covered = t_end / params.loop_time
    if sample_count <= 0:
        sample_count = max(64, int(math.ceil(64 * loops_covered)))
    steps_per_sample = max(1, int(math.ceil(STEPS_PER_LOOP * loops_covered / sample_count)))

    times, samples = _rk4_run(params, initial.amplitudes, t_end, sample_count, steps_per_sample)

    final_amps = samples[-1]
    norm_drift = abs(np.linalg.norm(final_amps) - np.linalg.norm(initial.amplitudes))
    if norm_drift > NORM_DRIFT_TOL:
        raise StepSizeError(
            f"norm drift {norm_drift:.3e} exceeds {NORM_DRIFT_TOL:.1e}; reduce the step"
        )
    top_pop = max(float(np.sum(np.abs(s[-2:, :]) ** 2)) for s in samples)
    if top_pop >= TOP_FOCK_TOL:
        a_max = 2.0 * abs(params.lambda_c) * params.basis.J / params.delta_p
        suggested = int(math.ceil((a_max * 1.5) ** 2 + 8 * a_max * 1.5 + 10))
        raise CutoffOverflowError(params.n_max, top_pop, max(suggested, params.n_max + 10))

    if convergence_check:
        _, samples_h2 = _rk4_run(params, initial.amplitudes, t_end, sample_count,
                                 2 * steps_per_sample)
        dev = max(
            float(np.max(np.abs(a - b))) for a, b in zip(samples, samples_h2)
        )
        if dev > CONVERGENCE_TOL:
            raise StepSizeError(
                f"step-halving disagreement {dev:.3e} exceeds {CONVERGENCE_TOL:.1e}"
            )

    trace = _extract_trace(params, initial.amplitudes, times, samples)
    final = JointState(n_max=params.n_max, basis=params.basis, amplitudes=final_amps)
    return trace, final


def _extract_trace(params: GateParams, initial_amps, times, samples) -> GateTrace:
    m_all = np.array(params.basis.m_values)
    init_sector_norms = np.linalg.norm(initial_amps, axis=0)
    populated = init_sector_norms > 1e-12
    m_values = m_all[populated]
    n = np.arange(params.n_max + 1)

    nbar = np.empty((len(times), len(m_values)))
    raw_phase = np.empty((len(times), len(m_values)))
    ret_fid = np.empty((len(times), len(m_values)))
    init_cols = initial_amps[:, populated]
    for i, s in enumerate(samples):
        cols = s[:, populated]
        norms_sq = np.sum(np.abs(cols) ** 2, axis=0)
        nbar[i] = np.sum(n[:, None] * np.abs(cols) ** 2, axis=0) / norms_sq
        ov = np.sum(np.conj(init_cols) * cols, axis=0)
        raw_phase[i] = np.angle(ov)
        ret_fid[i] = np.abs(cols[0, :]) ** 2 / norms_sq

    phase = np.unwrap(raw_phase, axis=0)
    # reference to the m=0 sector (identically zero phase when absent: H
    # annihilates m=0, so the reference is zero either way)
    zero_idx = np.where(m_values == 0.0)[0]
    if zero_idx.size:
        phase = phase - phase[:, zero_idx[0]][:, None]
    return GateTrace(
        times=times,
        m_values=m_values,
        nbar=nbar,
        phase=phase,
        return_fidelity=ret_fid,
        metadata={
            "lambda_c": params.lambda_c,
            "delta_p": params.delta_p,
            "n_max": params.n_max,
            "N": params.N,
        },
    )


def evolve_analytic(params: GateParams, m: float, t: float) -> tuple[complex, float]:
    """Closed-form (displacement, phase) of the m-sector at time t.

    Exact: the Magnus series terminates at second order because
    [H(t1), H(t2)] is a c-number in each sector.
    """
    r = params.lambda_c * m / params.delta_p
    x = params.delta_p * t
    alpha = -r * (np.exp(1j * x) - 1.0)
    phase = r**2 * (x - math.sin(x))
    return complex(alpha), float(phase)


def phase_vs_m(params: GateParams, convergence_check: bool = True):
    """Numeric per-sector phases at t = loops * 2pi/delta' with quadratic fit.

    Returns (SweepResult with columns (m, phase, fit_residual), coefficient a)
    where the fit is phase(m) = a m^2 by least squares.
    """
    basis = params.basis
    amps = np.zeros((params.n_max + 1, basis.dim), dtype=complex)
    amps[0, :] = 1.0 / math.sqrt(basis.dim)  # populate every sector equally
    initial = JointState(n_max=params.n_max, basis=basis, amplitudes=amps)
    trace, _ = evolve_numeric(params, initial, params.total_time,
                              convergence_check=convergence_check)
    m = trace.m_values
    phi = trace.phase[-1]
    a = float(np.sum(phi * m**2) / np.sum(m**4))
    residual = phi - a * m**2
    sweep = SweepResult(
        columns={"m": m, "phase": phi, "fit_residual": residual},
        metadata={
            "coefficient": a,
            "coefficient_analytic": params.loops * 2 * math.pi
            * (params.lambda_c / params.delta_p) ** 2,
            "loops": params.loops,
        },
    )
    return sweep, a


def effective_chi_t(params: GateParams) -> float:
    """chi_t of the equivalent one-axis twisting after `loops` closed loops.

    The gate phase is +Phi_m = +2 pi k (lambda_c m/delta')^2 per sector while
    oat_evolve applies exp(-i chi_t m^2), so the equivalent twisting strength
    is negative in this sign convention.
    """
    return -params.loops * 2.0 * math.pi * (params.lambda_c / params.delta_p) ** 2


def gate_as_squeezer(params: GateParams, spin_in: SpinState,
                     convergence_check: bool = True):
    """Run the gate for `loops` closed loops and trace out the motion.

    Returns (reduced SpinState, report dict).  The report carries the per-m
    motional return fidelities and the overlap with the matched ideal
    one-axis twisting.  Raises OpenLoopError when any populated sector fails
    to return to the motional ground state.
    """
    initial = ground_joint(params, spin_in)
    trace, final = evolve_numeric(params, initial, params.total_time,
                                  convergence_check=convergence_check)
    ret = trace.return_fidelity[-1]
    if np.any(ret < 1.0 - RETURN_FIDELITY_TOL):
        worst = float(np.min(ret))
        raise OpenLoopError(
            f"motional return fidelity {worst:.9f} below {1 - RETURN_FIDELITY_TOL}; "
            "detuning/time mismatch"
        )
    # project onto the motional ground state and renormalize
    reduced = final.amplitudes[0, :].copy()
    reduced /= np.linalg.norm(reduced)
    out = SpinState(params.basis, reduced)
    chi_t_eff = effective_chi_t(params)
    ideal = oat_evolve(spin_in, chi_t_eff)
    overlap = float(np.abs(np.vdot(ideal.amplitudes, out.amplitudes)) ** 2)
    report = {
        "chi_t_eff": chi_t_eff,
        "oat_overlap": overlap,
        "return_fidelity_min": float(np.min(ret)),
        "m_values": trace.m_values.tolist(),
        "return_fidelity": ret.tolist(),
    }
    return out, report
