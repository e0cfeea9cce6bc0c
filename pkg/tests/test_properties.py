import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as strat

from spinsqueeze import (
    coherent_state,
    make_basis,
    oat_evolve,
    overlap_grid,
    rotate,
    squeezing_xi,
)
from spinsqueeze.dicke import SpinState

ns = strat.integers(min_value=1, max_value=16)
angles = strat.floats(min_value=-10.0, max_value=10.0, allow_nan=False)
chi_ts = strat.floats(min_value=-2.0, max_value=2.0, allow_nan=False)


def random_state(n, seed):
    rng = np.random.default_rng(seed)
    b = make_basis(n)
    amps = rng.normal(size=b.dim) + 1j * rng.normal(size=b.dim)
    amps /= np.linalg.norm(amps)
    return SpinState(b, amps)


@given(n=ns, seed=strat.integers(0, 2**32 - 1), axis=strat.sampled_from("xyz"), angle=angles)
@settings(max_examples=60, deadline=None)
def test_rotate_preserves_norm(n, seed, axis, angle):
    st = rotate(random_state(n, seed), axis, angle)
    assert abs(st.norm - 1.0) <= 1e-12


@given(n=ns, seed=strat.integers(0, 2**32 - 1), chi_t=chi_ts, phi=angles)
@settings(max_examples=60, deadline=None)
def test_oat_commutes_with_z_rotation(n, seed, chi_t, phi):
    st = random_state(n, seed)
    a = rotate(oat_evolve(st, chi_t), "z", phi)
    b = oat_evolve(rotate(st, "z", phi), chi_t)
    assert np.max(np.abs(a.amplitudes - b.amplitudes)) <= 1e-12


@given(n=ns, chi_t=chi_ts)
@settings(max_examples=40, deadline=None)
def test_oat_preserves_norm_exactly(n, chi_t):
    st = oat_evolve(coherent_state(n), chi_t)
    assert abs(st.norm - 1.0) <= 1e-12


@given(
    n=strat.integers(min_value=1, max_value=12),
    theta=strat.floats(-math.pi, math.pi, allow_nan=False),
    phi=strat.floats(-math.pi, math.pi, allow_nan=False),
    chi_t=chi_ts,
)
@settings(max_examples=40, deadline=None)
def test_overlap_probabilities_bounded(n, theta, phi, chi_t):
    og = overlap_grid(oat_evolve(coherent_state(n), chi_t), [theta], [phi])
    p = og.probabilities[0, 0]
    assert 0.0 <= p <= 1.0


@given(
    n=strat.integers(min_value=2, max_value=20),
    axis=strat.sampled_from("xyz"),
    angle=angles,
)
@settings(max_examples=40, deadline=None)
def test_xi_invariant_under_rotation_of_coherent_state(n, axis, angle):
    # any rotation of the pole state is a coherent state with xi = 1
    st = rotate(coherent_state(n), axis, angle)
    assert abs(squeezing_xi(st) - 1.0) <= 1e-9
