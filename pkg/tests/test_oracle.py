import math

import numpy as np
import pytest
from scipy.special import comb

from spinsqueeze import collective_full, dicke_to_full, verify_subspace
from spinsqueeze.errors import ResourceError


def test_n3_q1_amplitudes():
    f = dicke_to_full(3, 1)
    nonzero = f.amplitudes[np.abs(f.amplitudes) > 0]
    assert len(nonzero) == 3
    assert np.allclose(nonzero, 1 / math.sqrt(3))


def test_q0_single_configuration():
    f = dicke_to_full(5, 0)
    assert f.amplitudes[0] == 1.0
    assert np.count_nonzero(f.amplitudes) == 1


def test_n4_q2_amplitudes():
    f = dicke_to_full(4, 2)
    nonzero = f.amplitudes[np.abs(f.amplitudes) > 0]
    assert len(nonzero) == 6
    assert np.allclose(nonzero, 1 / math.sqrt(6))


def test_q_out_of_range():
    with pytest.raises(ValueError):
        dicke_to_full(4, 5)
    with pytest.raises(ValueError):
        dicke_to_full(4, -1)


def test_resource_limit():
    with pytest.raises(ResourceError):
        dicke_to_full(13, 2)
    with pytest.raises(ResourceError):
        collective_full(13, "Jz")
    with pytest.raises(ResourceError):
        verify_subspace(11)


@pytest.mark.parametrize("n", range(1, 13))
def test_normalization_and_counting(n):
    for q in range(n + 1):
        f = dicke_to_full(n, q)
        assert abs(np.linalg.norm(f.amplitudes) - 1.0) <= 1e-14
        assert np.count_nonzero(f.amplitudes) == comb(n, q, exact=True)


@pytest.mark.parametrize("n", [1, 2, 5, 9, 12])
def test_orthogonality(n):
    d = np.column_stack([dicke_to_full(n, q).amplitudes for q in range(n + 1)])
    gram = d.conj().T @ d
    assert np.max(np.abs(gram - np.eye(n + 1))) <= 1e-14


def test_jz_on_all_up():
    n = 6
    jz = collective_full(n, "Jz")
    v = dicke_to_full(n, 0).amplitudes
    assert np.allclose(jz(v), (n / 2) * v)


def test_jminus_power_n_reaches_all_down():
    n = 5
    jm = collective_full(n, "Jminus")
    v = dicke_to_full(n, 0).amplitudes
    for _ in range(n):
        v = jm(v)
    v = v / np.linalg.norm(v)
    expected = np.zeros(2**n)
    expected[-1] = 1.0  # all bits set = all down
    assert np.allclose(v, expected)


@pytest.mark.parametrize("n", [2, 4, 7, 10])
def test_ladder_coefficients_match_appendix(n):
    jm = collective_full(n, "Jminus")
    j = n / 2
    for q in range(n):
        m = j - q
        v = jm(dicke_to_full(n, q).amplitudes)
        coeff = np.linalg.norm(v)
        assert coeff == pytest.approx(math.sqrt(j * (j + 1) - m * (m - 1)), rel=1e-12)
        assert np.max(np.abs(v / coeff - dicke_to_full(n, q + 1).amplitudes)) <= 1e-12


@pytest.mark.parametrize("n", range(1, 13))
def test_jsq_degenerate_eigenvalue(n):
    jsq = collective_full(n, "Jsq")
    j = n / 2
    for q in range(n + 1):
        v = dicke_to_full(n, q).amplitudes
        assert np.max(np.abs(jsq(v) - j * (j + 1) * v)) <= 1e-12


def test_verify_subspace_n1_exact():
    rep = verify_subspace(1)
    assert rep["max_deviation"] <= 1e-14


def test_verify_subspace_n2():
    rep = verify_subspace(2)
    assert rep["max_deviation"] <= 1e-13
    assert rep["passed"]


def test_verify_subspace_n8_rotation():
    rep = verify_subspace(8, thetas=(0.7,))
    assert rep["checks"]["rotation_invariance"] <= 1e-12
    assert rep["passed"]


def test_dicke_core_elements_match_full_space():
    rep = verify_subspace(6)
    for label in ("Jz", "Jplus", "Jminus", "Jsq"):
        assert rep["checks"][f"{label}_elements"] <= 1e-12
