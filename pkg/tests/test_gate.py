import math

import numpy as np
import pytest

from spinsqueeze import (
    GateParams,
    coherent_state,
    effective_chi_t,
    evolve_analytic,
    evolve_numeric,
    fock_cutoff,
    fock_dicke,
    gate_as_squeezer,
    ground_joint,
    oat_evolve,
    phase_vs_m,
    pole_state,
    squeezing_xi,
)
from spinsqueeze.errors import CutoffOverflowError, OpenLoopError
from spinsqueeze.gate import JointState


def params(n=10, ratio=0.05, loops=1, **kw):
    return GateParams(lambda_c=ratio, delta_p=1.0, N=n, loops=loops, **kw)


def test_cutoff_rule_example():
    # lambda_c/delta' = 0.05, J = 5 -> |alpha|_max = 0.5 -> n_max = 15
    assert fock_cutoff(0.05, 1.0, 5.0) == 15


def test_params_validation():
    with pytest.raises(ValueError):
        GateParams(lambda_c=0.05, delta_p=0.0, N=4)
    with pytest.raises(ValueError):
        GateParams(lambda_c=float("inf"), delta_p=1.0, N=4)
    with pytest.raises(ValueError):
        GateParams(lambda_c=0.05, delta_p=1.0, N=4, loops=0)
    with pytest.warns(UserWarning):
        GateParams(lambda_c=0.05, delta_p=1.0, N=4, eta=0.5)


def test_m0_sector_is_stationary():
    p = params(n=2)
    init = fock_dicke(p, 0, 0.0)
    trace, final = evolve_numeric(p, init, p.loop_time, convergence_check=False)
    assert np.max(trace.nbar) <= 1e-12
    assert np.max(np.abs(trace.phase)) <= 1e-12
    assert np.max(np.abs(final.amplitudes - init.amplitudes)) <= 1e-12


def test_loop_closure_m1():
    p = params(n=2)
    init = fock_dicke(p, 0, 1.0)
    trace, _ = evolve_numeric(p, init, p.loop_time, convergence_check=False)
    assert trace.nbar.max() > 1e-3  # excited mid-loop
    assert trace.nbar[-1, 0] <= 1e-10  # back to ground at 2 pi / delta'
    assert trace.return_fidelity[-1, 0] >= 1 - 1e-6


def test_max_nbar_ratio_quadratic_in_m():
    p = params(n=10)
    t1, _ = evolve_numeric(p, fock_dicke(p, 0, 1.0), p.loop_time, convergence_check=False)
    t5, _ = evolve_numeric(p, fock_dicke(p, 0, 5.0), p.loop_time, convergence_check=False)
    assert t5.nbar.max() / t1.nbar.max() == pytest.approx(25.0, rel=1e-9)
    # analytic oracle: max <n> = (2 lambda_c m / delta')^2
    assert t5.nbar.max() == pytest.approx((2 * 0.05 * 5) ** 2, rel=1e-9)


def test_sector_norms_conserved():
    p = params(n=6)
    init = ground_joint(p, coherent_state(6))
    _, final = evolve_numeric(p, init, 0.7 * p.loop_time, convergence_check=False)
    assert np.max(np.abs(final.sector_norms() - init.sector_norms())) <= 1e-12


def test_nbar_periodicity():
    p = params(n=4, loops=2)
    init = fock_dicke(p, 0, 2.0)
    trace, _ = evolve_numeric(p, init, p.total_time, sample_count=256,
                              convergence_check=False)
    half = len(trace.times) // 2
    assert np.max(np.abs(trace.nbar[:half + 1, 0] - trace.nbar[half:, 0])) <= 1e-6


def test_analytic_m0():
    p = params()
    alpha, phase = evolve_analytic(p, 0.0, 3.7)
    assert alpha == 0
    assert phase == 0


def test_analytic_loop_closure():
    p = params(ratio=0.08)
    t = 2 * math.pi / p.delta_p
    for m in (1.0, 3.0, -2.0):
        alpha, phase = evolve_analytic(p, m, t)
        assert abs(alpha) <= 1e-14
        assert phase == pytest.approx(2 * math.pi * (0.08 * m) ** 2, rel=1e-12)


def test_analytic_max_displacement_at_half_loop():
    p = params(ratio=0.05)
    t = math.pi / p.delta_p
    alpha, _ = evolve_analytic(p, 3.0, t)
    assert abs(alpha) == pytest.approx(2 * 0.05 * 3, rel=1e-12)


def test_numeric_matches_analytic_along_loop():
    p = params(n=10)
    init = fock_dicke(p, 0, 4.0)
    trace, _ = evolve_numeric(p, init, p.loop_time, sample_count=128)
    for i, t in enumerate(trace.times):
        alpha, phase = evolve_analytic(p, 4.0, t)
        assert trace.nbar[i, 0] == pytest.approx(abs(alpha) ** 2, abs=1e-6)
        assert trace.phase[i, 0] == pytest.approx(phase, abs=1e-6)


def test_phase_vs_m_quadratic():
    p = params(n=10, loops=2)
    sweep, a = phase_vs_m(p, convergence_check=False)
    j = p.N / 2
    assert np.max(np.abs(sweep.columns["fit_residual"])) <= 1e-6 * abs(a) * j**2
    assert a == pytest.approx(2 * 2 * math.pi * 0.05**2, rel=1e-4)
    # phase is even in m: odd component vanishes
    m = sweep.columns["m"]
    phi = sweep.columns["phase"]
    order = np.argsort(m)
    m_sorted, phi_sorted = m[order], phi[order]
    assert np.max(np.abs(phi_sorted - phi_sorted[::-1])) <= 1e-8


def test_gate_on_jz_eigenstate_is_phase():
    p = params(n=4)
    spin = pole_state(p.basis)
    out, report = gate_as_squeezer(p, spin, convergence_check=False)
    assert abs(abs(out.amplitudes[0]) - 1.0) <= 1e-9
    assert report["return_fidelity_min"] >= 1 - 1e-6


def test_gate_equals_oat_n6():
    p = params(n=6, loops=1)
    out, report = gate_as_squeezer(p, coherent_state(6), convergence_check=False)
    assert report["oat_overlap"] >= 1 - 1e-6


def test_effective_chi_t_sign_convention():
    p = params(n=6, loops=3)
    assert effective_chi_t(p) == pytest.approx(-3 * 2 * math.pi * 0.05**2)


def test_gate_reaches_kitagawa_minimum_n50():
    # chi_t_eff after 5 loops at lambda/delta' = 0.05 sits near the N=50
    # squeezing optimum (|chi_t_eff| = 0.0785 vs argmin 0.086)
    p = params(n=50, loops=5)
    out, report = gate_as_squeezer(p, coherent_state(50), convergence_check=False)
    assert report["oat_overlap"] >= 1 - 1e-6
    assert 0.23 <= squeezing_xi(out) <= 0.33


def test_cutoff_overflow_raises():
    p = params(n=10, n_max=3)
    init = fock_dicke(p, 0, 5.0)
    with pytest.raises(CutoffOverflowError) as exc:
        evolve_numeric(p, init, p.loop_time, convergence_check=False)
    assert exc.value.suggested_n_max > 3


def test_open_loop_detection(monkeypatch):
    p = params(n=4, loops=1)
    # break loop closure by shortening the advertised gate time
    monkeypatch.setattr(GateParams, "total_time", property(lambda self: 0.6 * self.loop_time))
    with pytest.raises(OpenLoopError):
        gate_as_squeezer(p, coherent_state(4), convergence_check=False)


def test_initial_state_shape_checked():
    p = params(n=4)
    with pytest.raises(ValueError):
        JointState(n_max=p.n_max, basis=p.basis, amplitudes=np.zeros((2, 2)))
    other = params(n=6)
    with pytest.raises(ValueError):
        evolve_numeric(p, fock_dicke(other, 0, 1.0), 1.0)
