"""Dense density-matrix tools: negativity, PPT tests, lifetime bounds.

States live on n qubits as dense Hermitian matrices of dimension 2^n,
qubit 0 being the most significant tensor factor.  The GHZ-specific fast
negativity path exploits the X-shaped support of locally Pauli-noised GHZ
states and serves system sizes far beyond the dense caps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ResourceLimitError
from .pauli import PauliChannel, SIGMA

DENSE_STATE_CAP = 14
DENSE_NEGATIVITY_CAP = 10

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = -1e-10


@dataclass(frozen=True)
class DensityMatrix:
    n: int
    entries: np.ndarray

    @classmethod
    def from_array(cls, entries: np.ndarray) -> "DensityMatrix":
        dim = entries.shape[0]
        n = int(round(math.log2(dim)))
        if entries.shape != (dim, dim) or 1 << n != dim:
            raise ValueError(f"not a square 2^n matrix: shape {entries.shape}")
        return cls(n, np.asarray(entries, dtype=complex))

    @classmethod
    def pure(cls, vector: np.ndarray) -> "DensityMatrix":
        vector = np.asarray(vector, dtype=complex)
        return cls.from_array(np.outer(vector, vector.conj()))

    def validate(self) -> None:
        """Assert Hermiticity, unit trace and positivity at the module tolerances."""
        h_dev = float(np.max(np.abs(self.entries - self.entries.conj().T)))
        if h_dev > HERMITICITY_TOL:
            raise ValueError(f"not Hermitian: deviation {h_dev:.3e}")
        t_dev = abs(self.entries.trace() - 1.0)
        if t_dev > TRACE_TOL:
            raise ValueError(f"trace deviates from 1 by {t_dev:.3e}")
        min_eig = float(np.linalg.eigvalsh(self.entries)[0])
        if min_eig < PSD_TOL:
            raise ValueError(f"negative eigenvalue {min_eig:.3e}")

    def purity(self) -> float:
        return float(np.real(np.trace(self.entries @ self.entries)))


@dataclass(frozen=True)
class LifetimeResult:
    """Critical white-noise parameter from the PPT bisection."""

    p_crit: float
    iterations: int
    residual: float
    bracketed: bool = True  # False when the sign never changes on [0, 1]


def ghz_state(n: int, cap: int = DENSE_STATE_CAP) -> DensityMatrix:
    """(|0...0> + |1...1>)/sqrt(2) as a rank-1 density matrix."""
    if n < 2:
        raise ValueError("GHZ state needs at least two qubits")
    if n > cap:
        raise ResourceLimitError(f"dense GHZ state capped at n={cap}, got {n}")
    vec = np.zeros(1 << n, dtype=complex)
    vec[0] = vec[-1] = 1.0 / math.sqrt(2.0)
    return DensityMatrix.pure(vec)


def apply_channel(rho: DensityMatrix, channel: PauliChannel, qubit: int) -> DensityMatrix:
    """Apply a single-qubit Pauli channel to one site of the state."""
    if not 0 <= qubit < rho.n:
        raise ValueError(f"qubit {qubit} out of range for n={rho.n}")
    shape = (2,) * (2 * rho.n)
    work = rho.entries.reshape(shape)
    row_ax, col_ax = qubit, rho.n + qubit
    out = np.zeros_like(work)
    for lam, sigma in zip(channel.lambdas, SIGMA):
        if lam == 0.0:
            continue
        term = np.tensordot(sigma, work, axes=([1], [row_ax]))
        term = np.moveaxis(term, 0, row_ax)
        term = np.tensordot(term, sigma.conj().T, axes=([col_ax], [0]))
        term = np.moveaxis(term, -1, col_ax)
        out += lam * term
    return DensityMatrix(rho.n, out.reshape(rho.entries.shape))


def apply_channel_all(rho: DensityMatrix, channel: PauliChannel) -> DensityMatrix:
    for q in range(rho.n):
        rho = apply_channel(rho, channel, q)
    return rho


def partial_transpose(rho: DensityMatrix, subset: Sequence[int]) -> np.ndarray:
    """Transpose the listed qubits' indices; returns a bare array."""
    subset = sorted(set(subset))
    if any(q < 0 or q >= rho.n for q in subset):
        raise ValueError("partition contains invalid qubit indices")
    shape = (2,) * (2 * rho.n)
    work = rho.entries.reshape(shape)
    perm = list(range(2 * rho.n))
    for q in subset:
        perm[q], perm[rho.n + q] = perm[rho.n + q], perm[q]
    return work.transpose(perm).reshape(rho.entries.shape)


def negativity(rho: DensityMatrix, partition: Sequence[int]) -> float:
    """Sum of |negative eigenvalues| of the partial transpose.

    Equals (||rho^T_a||_1 - 1)/2 for unit-trace states.
    """
    subset = sorted(set(partition))
    if not subset or len(subset) >= rho.n:
        raise ValueError("partition must be a nonempty proper subset")
    eigs = np.linalg.eigvalsh(partial_transpose(rho, subset))
    return float(-eigs[eigs < 0].sum())


def ghz_negativity_fast(n: int, channel: PauliChannel) -> float:
    """Negativity of E^(x)n(GHZ_n) for the 1 : n-1 split, polynomial in n.

    A local Pauli channel keeps the GHZ matrix supported on (x, x) and
    (x, xbar) only, with entries depending on the Hamming weight of x:

        diag_k    = (alpha^(n-k) beta^k + beta^(n-k) alpha^k) / 2
        corner_k  = (gamma^(n-k) delta^k + delta^(n-k) gamma^k) / 2

    with alpha = l0+l3, beta = l1+l2, gamma = l0-l3, delta = l1-l2.  The
    partial transpose then splits into 2x2 blocks pairing (1u) with (0 ubar),
    one for each u in {0,1}^(n-1), so the negative part is a binomial sum.
    Certified against the dense partial-transpose oracle in the test suite.
    """
    if n < 2:
        raise ValueError("need at least two qubits")
    l0, l1, l2, l3 = channel.lambdas
    alpha, beta = l0 + l3, l1 + l2
    gamma, delta = l0 - l3, l1 - l2

    def diag(k: int) -> float:
        return 0.5 * (alpha ** (n - k) * beta ** k + beta ** (n - k) * alpha ** k)

    def corner(k: int) -> float:
        return 0.5 * (gamma ** (n - k) * delta ** k + delta ** (n - k) * gamma ** k)

    total = 0.0
    for k in range(n):  # Hamming weight of the n-1 unmeasured coordinates
        d_hi, d_lo, g = diag(k + 1), diag(n - 1 - k), corner(k)
        mean = 0.5 * (d_hi + d_lo)
        radius = math.hypot(0.5 * (d_hi - d_lo), g)
        deficit = radius - mean
        if deficit > 0.0:
            comb = math.comb(n - 1, k)
            if comb.bit_length() <= 1020:
                total += comb * deficit
            else:  # exact binomial no longer fits in a float
                total += math.exp(
                    math.lgamma(n) - math.lgamma(k + 1) - math.lgamma(n - k)
                    + math.log(deficit)
                )
    return total


def ghz_negativity_dense(n: int, channel: PauliChannel,
                         cap: int = DENSE_NEGATIVITY_CAP) -> float:
    """Brute-force 1 : n-1 negativity; the oracle for the fast path."""
    if n > cap:
        raise ResourceLimitError(f"dense negativity capped at n={cap}")
    rho = apply_channel_all(ghz_state(n), channel)
    return negativity(rho, [0])


def _projected_pair(rho: DensityMatrix) -> np.ndarray:
    """Project qubits 2..n-1 onto |+> each and renormalize; keeps (0, 1).

    This is the graph-frame sigma_z measurement of the distillation
    protocol: writing GHZ_n as a star graph puts qubit 0 at the center, and
    measuring every other leaf in its Z basis is an X-basis measurement in
    the GHZ frame.  The uniform all-+1 branch is kept.
    """
    work = rho.entries.reshape((2,) * (2 * rho.n))
    plus = np.full(2, 1.0 / math.sqrt(2.0), dtype=complex)
    k = rho.n
    while k > 2:
        # contract bra then ket axis of the last remaining qubit with <+|
        work = np.tensordot(work, plus, axes=([2 * k - 1], [0]))
        work = np.tensordot(work, plus, axes=([k - 1], [0]))
        k -= 1
    pair = work.reshape(4, 4)
    norm = float(np.real(np.trace(pair)))
    if norm <= 0.0:
        raise ValueError("measurement branch has zero probability")
    return pair / norm


def pair_min_ppt_eigenvalue(n: int, channel: PauliChannel) -> float:
    """Minimum partial-transpose eigenvalue of the post-measurement pair."""
    rho = apply_channel_all(ghz_state(n), channel)
    pair = DensityMatrix.from_array(_projected_pair(rho)) if n > 2 else rho
    return float(np.linalg.eigvalsh(partial_transpose(pair, [0]))[0])


def lifetime_pcrit(
    channel_family: Callable[[float], PauliChannel],
    n: int,
    tol: float = 1e-6,
    grid_points: int = 33,
) -> LifetimeResult:
    """Lifetime bound: smallest p whose post-measurement pair is NPT.

    Builds the n-qubit GHZ state, sends every qubit through
    channel_family(p), measures all but two qubits (uniform branch kept)
    and tests the two-qubit PPT criterion.  A coarse grid verifies a single
    sign change before bisecting to `tol`.
    """
    if n > DENSE_STATE_CAP:
        raise ResourceLimitError(f"dense lifetime path capped at n={DENSE_STATE_CAP}")

    def entangled(p: float) -> bool:
        return pair_min_ppt_eigenvalue(n, channel_family(p)) < 0.0

    grid = np.linspace(0.0, 1.0, grid_points)
    flags = [entangled(float(p)) for p in grid]
    switches = sum(1 for a, b in zip(flags, flags[1:]) if a != b)
    if switches == 0:
        return LifetimeResult(0.0 if flags[-1] else 1.0, 0, 0.0, bracketed=False)
    if switches > 1:
        raise ValueError("PPT sign changes more than once on the grid")
    k = flags.index(True)
    lo, hi = float(grid[k - 1]), float(grid[k])  # lo separable, hi entangled
    iterations = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if entangled(mid):
            hi = mid
        else:
            lo = mid
        iterations += 1
    return LifetimeResult(hi, iterations, hi - lo)


def negativity_curve(
    channel: PauliChannel, sizes: Sequence[int]
) -> list[tuple[int, float]]:
    """(N, fast-path negativity) pairs for the 1 : N-1 split."""
    return [(int(n), ghz_negativity_fast(int(n), channel)) for n in sizes]


def find_crossing(
    curve_a: Sequence[tuple[int, float]], curve_b: Sequence[tuple[int, float]]
) -> int | None:
    """First N at which curve a catches up with curve b (sign change of a-b)."""
    diffs = [(n, va - vb) for (n, va), (_, vb) in zip(curve_a, curve_b)]
    for (_, d0), (n1, d1) in zip(diffs, diffs[1:]):
        if d0 < 0.0 <= d1:
            return n1
    return None
