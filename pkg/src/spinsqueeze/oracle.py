"""Brute-force 2^N tensor-product oracle for the Dicke-subspace machinery.

Spin configurations are bitmasks (bit j set <=> particle j in the down
state), so collective operators act configuration-by-configuration without
ever materializing a 2^N x 2^N matrix.  Limited to N <= 12 by design; the
module is test support, exercised by the suite and the `oracle-check` CLI
subcommand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .dicke import build_operator, make_basis
from .errors import ResourceError

MAX_N = 12
MAX_N_SUBSPACE = 10


@dataclass(frozen=True, eq=False)
class FullState:
    """Amplitudes over all 2^N spin configurations."""

    N: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2**self.N,):
            raise ValueError(f"expected 2^{self.N} amplitudes, got shape {amps.shape}")
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)


def _check_n(N: int, limit: int = MAX_N):
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if N > limit:
        raise ResourceError(f"N={N} exceeds the brute-force limit {limit}")


def dicke_to_full(N: int, q: int) -> FullState:
    """|N/2, N/2 - q> expanded over spin configurations.

    Equal amplitude sqrt(q!(N-q)!/N!) on each of the C(N, q) configurations
    with exactly q down spins.
    """
    _check_n(N)
    if not 0 <= q <= N:
        raise ValueError(f"q={q} outside [0, {N}]")
    amp = math.sqrt(math.factorial(q) * math.factorial(N - q) / math.factorial(N))
    amps = np.zeros(2**N, dtype=complex)
    for downs in combinations(range(N), q):
        mask = 0
        for j in downs:
            mask |= 1 << j
        amps[mask] = amp
    return FullState(N=N, amplitudes=amps)


def collective_full(N: int, label: str):
    """Collective operator on the full space as a callable on amplitude vectors."""
    _check_n(N)
    size = 2**N
    masks = np.arange(size)
    popcount = np.array([bin(m).count("1") for m in range(size)])

    if label == "Jz":
        jz_eigs = N / 2 - popcount

        def op(vec):
            return jz_eigs * vec

    elif label in ("Jplus", "Jminus"):
        # Jminus flips an up bit (0) to down (1); Jplus the reverse.
        pairs = []  # (source, target) per single-bit flip up->down
        for m in range(size):
            for j in range(N):
                if not m & (1 << j):
                    pairs.append((m, m | (1 << j)))
        src, dst = (np.array([p[0] for p in pairs]), np.array([p[1] for p in pairs]))
        if label == "Jplus":
            src, dst = dst, src

        def op(vec):
            out = np.zeros_like(vec)
            np.add.at(out, dst, vec[src])
            return out

    elif label == "Jx":
        jp = collective_full(N, "Jplus")
        jm = collective_full(N, "Jminus")

        def op(vec):
            return (jp(vec) + jm(vec)) / 2

    elif label == "Jy":
        jp = collective_full(N, "Jplus")
        jm = collective_full(N, "Jminus")

        def op(vec):
            return (jp(vec) - jm(vec)) / 2j

    elif label == "Jsq":
        jx = collective_full(N, "Jx")
        jy = collective_full(N, "Jy")
        jz = collective_full(N, "Jz")

        def op(vec):
            return jx(jx(vec)) + jy(jy(vec)) + jz(jz(vec))

    else:
        raise ValueError(f"unknown operator label {label!r}")
    return op


def _dicke_matrix(N: int) -> np.ndarray:
    """Columns are dicke_to_full(N, q) for q = 0..N, shape (2^N, N+1)."""
    return np.column_stack([dicke_to_full(N, q).amplitudes for q in range(N + 1)])


def verify_subspace(N: int, thetas=(0.3, 0.7, 1.9)) -> dict:
    """Check invariance of the symmetric subspace and agreement with dicke-core.

    Compares matrix elements of Jz, J+/-, Jsq in the Dicke basis against the
    (N+1)-dimensional CollectiveOperator matrices, and verifies that rotated
    symmetric states have no component outside the subspace.  Returns a
    report dict with per-check max deviations.
    """
    _check_n(N, MAX_N_SUBSPACE)
    basis = make_basis(N)
    d = _dicke_matrix(N)  # orthonormal columns
    checks = {}

    for label in ("Jz", "Jplus", "Jminus", "Jsq"):
        op = collective_full(N, label)
        full_applied = np.column_stack([op(d[:, q]) for q in range(N + 1)])
        # invariance: O|dicke_q> must lie in span(d)
        proj = d @ (d.conj().T @ full_applied)
        checks[f"{label}_invariance"] = float(np.max(np.abs(full_applied - proj)))
        # matrix elements vs the Dicke-subspace representation
        elements = d.conj().T @ full_applied
        ref = build_operator(basis, label).matrix
        checks[f"{label}_elements"] = float(np.max(np.abs(elements - ref)))

    # rotation invariance: exp(-i theta Jx) keeps the subspace
    jx = collective_full(N, "Jx")
    jx_mat = np.column_stack([jx(col) for col in np.eye(2**N, dtype=complex).T])
    w, v = np.linalg.eigh(jx_mat)
    rot_dev = 0.0
    for theta in thetas:
        u_cols = v @ (np.exp(-1j * theta * w)[:, None] * (v.conj().T @ d))
        proj = d @ (d.conj().T @ u_cols)
        rot_dev = max(rot_dev, float(np.max(np.abs(u_cols - proj))))
    checks["rotation_invariance"] = rot_dev

    # orthonormality of the constructed Dicke vectors
    gram = d.conj().T @ d
    checks["orthonormality"] = float(np.max(np.abs(gram - np.eye(N + 1))))

    max_dev = max(checks.values())
    return {"N": N, "checks": checks, "max_deviation": max_dev, "passed": max_dev < 1e-12}
