"""Level-by-level channel composition for concatenated encodings.

Each level turns its input Pauli channel into an effective logical channel;
the next level consumes either the mean channel or the trivial-syndrome
projection, as configured.  The generalized Shor construction stacks a GHZ
encoding (inner) under a repetition code (outer).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codes import StabilizerCode, ghz_code, repetition_code
from .effective import EffectiveChannel, derive_effective
from .entanglement import DENSE_STATE_CAP, LifetimeResult, lifetime_pcrit
from .pauli import PauliChannel, white_noise

CHANNEL_MODES = ("mean", "projected_0")


@dataclass(frozen=True)
class ConcatSpec:
    """Ordered encoding levels, innermost first, with a mode per level."""

    levels: tuple[StabilizerCode, ...]
    modes: tuple[str, ...]

    def __post_init__(self):
        if not self.levels:
            raise ValueError("need at least one level")
        if len(self.modes) != len(self.levels):
            raise ValueError("one channel mode per level required")
        for mode in self.modes:
            if mode not in CHANNEL_MODES:
                raise ValueError(f"unknown channel mode {mode!r}")


def generalized_shor(m1: int, m2: int, mode: str = "mean") -> ConcatSpec:
    """GHZ encoding of size m1 inside a repetition code of size m2.

    (3, 3) is the nine-qubit Shor code; the inner level corrects up to
    floor(m1/2) bit flips and the outer one up to floor(m2/2) phase flips.
    """
    if m1 % 2 == 0 or m2 % 2 == 0:
        raise ValueError("level sizes must be odd")
    return ConcatSpec((ghz_code(m1), repetition_code(m2)), (mode, mode))


def concatenate(spec: ConcatSpec, physical: PauliChannel) -> EffectiveChannel:
    """Compose the levels from the physical channel up; returns the last level."""
    channel = physical
    eff: EffectiveChannel | None = None
    for code, mode in zip(spec.levels, spec.modes):
        eff = derive_effective(code, channel)
        channel = eff.mean if mode == "mean" else eff.projected(0)
    assert eff is not None
    return eff


@dataclass(frozen=True)
class CriticalRateResult:
    """Crossing point of logical vs physical error rates under white noise."""

    m1: int
    m2: int
    p_c: float | None
    grid_checked: bool
    brackets: tuple[tuple[float, float], ...] = ()


def _logical_excess(m1: int, m2: int, p: float) -> float:
    """1 - mu_0 of the concatenated mean channel minus the physical rate."""
    eff = concatenate(generalized_shor(m1, m2), white_noise(p))
    return eff.mean.error_rate - 0.75 * (1.0 - p)


def critical_rate(
    m1: int, m2: int, tol: float = 1e-6, grid_points: int = 64
) -> CriticalRateResult:
    """Find p_c with e_logical(p) < e_physical(p) for all p >= p_c.

    Scans an interior grid first: exactly one sign change is required
    before bisection refines it; several changes are reported as brackets
    with grid_checked=False, none as an absent p_c.  Both rates vanish
    identically at p = 1 and coincide at p = 0, so endpoints are excluded.
    """
    if m1 == 1 and m2 == 1:
        return CriticalRateResult(m1, m2, None, True)
    grid = np.linspace(0.0, 1.0, grid_points + 2)[1:-1]
    vals = [_logical_excess(m1, m2, float(p)) for p in grid]
    zero_band = 1e-14
    signs = [0 if abs(v) < zero_band else (1 if v > 0 else -1) for v in vals]
    brackets = [
        (float(grid[i]), float(grid[i + 1]))
        for i in range(len(grid) - 1)
        if signs[i] > 0 and signs[i + 1] < 0
    ]
    if not brackets:
        return CriticalRateResult(m1, m2, None, True)
    if len(brackets) > 1 or any(
        signs[i] < 0 and signs[i + 1] > 0 for i in range(len(grid) - 1)
    ):
        return CriticalRateResult(m1, m2, None, False, tuple(brackets))
    lo, hi = brackets[0]
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _logical_excess(m1, m2, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return CriticalRateResult(m1, m2, 0.5 * (lo + hi), True, tuple(brackets))


@dataclass(frozen=True)
class LifetimeComparison:
    n: int
    m1: int
    m2: int
    one_level: LifetimeResult
    two_level: LifetimeResult


def lifetime_concat_compare(
    n: int, m1: int, m2: int, tol: float = 1e-4
) -> LifetimeComparison:
    """Lifetime bound of one flat GHZ encoding of m1*m2 qubits versus the
    two-level (m1, m2) concatenation, both in projected-0 mode."""
    if n > DENSE_STATE_CAP:
        raise ValueError(f"n={n} exceeds the dense protocol cap")
    flat = ghz_code(m1 * m2)

    def flat_family(p: float) -> PauliChannel:
        return derive_effective(flat, white_noise(p)).projected(0)

    spec = ConcatSpec((ghz_code(m1), repetition_code(m2)),
                      ("projected_0", "projected_0"))

    def concat_family(p: float) -> PauliChannel:
        return concatenate(spec, white_noise(p)).projected(0)

    return LifetimeComparison(
        n, m1, m2,
        lifetime_pcrit(flat_family, n, tol),
        lifetime_pcrit(concat_family, n, tol),
    )
