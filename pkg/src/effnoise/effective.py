"""Effective logical channels: per-syndrome tables, mean channel, oracles.

The workhorse is :func:`derive_effective`, which enumerates all 4^m Pauli
errors, buckets their probabilities by (syndrome, residual logical class)
and normalizes.  Two independent cross-checks live alongside it: the
analytic closed form for repetition-type codes and a dense Choi-matrix
construction that follows the channel-state duality step by step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .codes import StabilizerCode
from .errors import ResourceLimitError
from .pauli import PauliChannel, PauliString, to_matrix

DEFAULT_ENUM_CAP = 12
DEFAULT_DENSE_CAP = 6

_CHUNK = 1 << 18


@dataclass(frozen=True)
class SyndromeChannel:
    """One row of the per-syndrome table."""

    prob: float
    channel: PauliChannel
    recovery_weight: int
    unreachable: bool = False


@dataclass(frozen=True)
class EffectiveChannel:
    code_label: str
    m: int
    per_syndrome: dict[int, SyndromeChannel]
    mean: PauliChannel

    def projected(self, s: int = 0) -> PauliChannel:
        """Channel conditioned on syndrome s (default: the trivial one)."""
        return self.per_syndrome[s].channel

    def syndrome_probability(self, s: int) -> float:
        return self.per_syndrome[s].prob

    def by_error_count(self) -> dict[int, list[int]]:
        """Syndromes grouped by recovery weight (the error-count index i)."""
        groups: dict[int, list[int]] = {}
        for s, row in sorted(self.per_syndrome.items()):
            groups.setdefault(row.recovery_weight, []).append(s)
        return groups


def _parity64(v: np.ndarray) -> np.ndarray:
    return (np.bitwise_count(v) & np.uint64(1)).astype(np.uint64)


def derive_effective(
    code: StabilizerCode,
    channel: PauliChannel,
    cap: int = DEFAULT_ENUM_CAP,
) -> EffectiveChannel:
    """Exact per-syndrome and mean logical channels by full enumeration.

    Runs in fixed chunk order with float64 accumulation, so results are
    bit-identical across runs and independent of machine parallelism.
    Raises :class:`ResourceLimitError` above the enumeration cap (4^cap
    strings).
    """
    m = code.m
    if m > cap:
        raise ResourceLimitError(
            f"enumeration over 4^{m} strings exceeds cap m={cap}"
        )
    n_syn = code.n_syndromes
    site_mask = np.uint64((1 << m) - 1)

    lam = channel.as_array()
    gen_x = np.array([g.x for g in code.generators], dtype=np.uint64)
    gen_z = np.array([g.z for g in code.generators], dtype=np.uint64)
    lx, lz = code.logical_x, code.logical_z

    # recovery contribution to the logical class, per syndrome
    rec_weight = np.zeros(n_syn, dtype=np.int64)
    rec_cx = np.zeros(n_syn, dtype=np.uint64)
    rec_cz = np.zeros(n_syn, dtype=np.uint64)
    for s in range(n_syn):
        r = code.recovery[s]
        rec_weight[s] = r.weight
        rec_cx[s] = 0 if r.commutes(lz) else 1
        rec_cz[s] = 0 if r.commutes(lx) else 1

    buckets = np.zeros(n_syn * 4, dtype=np.float64)
    total = 1 << (2 * m)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.uint64)
        ex = (idx >> np.uint64(m)) & site_mask
        ez = idx & site_mask

        prob = np.ones(idx.shape, dtype=np.float64)
        for site in range(m):
            xb = (ex >> np.uint64(site)) & np.uint64(1)
            zb = (ez >> np.uint64(site)) & np.uint64(1)
            letter = (xb + np.uint64(3) * zb - np.uint64(2) * (xb & zb)).astype(np.intp)
            prob *= lam[letter]

        syn = np.zeros(idx.shape, dtype=np.uint64)
        for a in range(len(code.generators)):
            bit = _parity64(ex & gen_z[a]) ^ _parity64(ez & gen_x[a])
            syn |= bit << np.uint64(a)

        cx = _parity64(ex & np.uint64(lz.z)) ^ _parity64(ez & np.uint64(lz.x))
        cz = _parity64(ex & np.uint64(lx.z)) ^ _parity64(ez & np.uint64(lx.x))
        cx ^= rec_cx[syn.astype(np.intp)]
        cz ^= rec_cz[syn.astype(np.intp)]
        cls = cx + np.uint64(3) * cz - np.uint64(2) * (cx & cz)

        buckets += np.bincount(
            ((syn << np.uint64(2)) | cls).astype(np.intp),
            weights=prob,
            minlength=n_syn * 4,
        )

    table = buckets.reshape(n_syn, 4)
    per: dict[int, SyndromeChannel] = {}
    for s in range(n_syn):
        p_s = float(table[s].sum())
        if p_s <= 0.0:
            per[s] = SyndromeChannel(0.0, PauliChannel.identity(),
                                     int(rec_weight[s]), unreachable=True)
        else:
            per[s] = SyndromeChannel(
                p_s,
                PauliChannel(tuple(table[s] / p_s)),
                int(rec_weight[s]),
            )
    mean = PauliChannel(tuple(math.fsum(table[:, j]) for j in range(4)))
    return EffectiveChannel(code.label, m, per, mean)


@dataclass(frozen=True)
class ChoiCoefficients:
    """Entries of the projected Choi matrix in the logical product basis.

    The matrix is [[a,0,0,c],[0,b,d,0],[0,d,b,0],[c,0,0,a]]; its trace
    2(a+b) is the probability of the syndrome it was projected on.
    """

    a: float
    b: float
    c: float
    d: float

    def channel(self) -> PauliChannel:
        """Normalize to the effective Pauli channel (Bell-basis transform)."""
        denom = 2.0 * (self.a + self.b)
        if denom <= 0.0:
            return PauliChannel.identity()
        return PauliChannel((
            (self.a + self.c) / denom,
            (self.b + self.d) / denom,
            (self.b - self.d) / denom,
            (self.a - self.c) / denom,
        ))

    @property
    def syndrome_probability(self) -> float:
        return 2.0 * (self.a + self.b)


def repetition_closed_form(
    m: int, i: int, channel: PauliChannel
) -> tuple[ChoiCoefficients, PauliChannel]:
    """Analytic per-syndrome coefficients for the repetition code.

    `i` is the number of flipped sites in the syndrome's minimum-weight
    error pattern (0 <= i <= floor(m/2)); every syndrome with the same i
    shares these values.  The returned channel uses the repetition-code
    logical labeling; the GHZ basis swaps the X and Z entries.
    """
    if not 0 <= i <= m // 2:
        raise ValueError(f"error count i={i} outside 0..{m // 2}")
    l0, l1, l2, l3 = channel.lambdas
    a = 0.5 * (l0 + l3) ** (m - i) * (l1 + l2) ** i
    b = 0.5 * (l0 + l3) ** i * (l1 + l2) ** (m - i)
    c = 0.5 * (l0 - l3) ** (m - i) * (l1 - l2) ** i
    d = 0.5 * (l0 - l3) ** i * (l1 - l2) ** (m - i)
    coeff = ChoiCoefficients(a, b, c, d)
    return coeff, coeff.channel()


def repetition_mean(m: int, channel: PauliChannel) -> PauliChannel:
    """Mean channel of the repetition code, summed over error counts.

    Each count i carries binom(m, i) syndromes of probability 2(a_i + b_i),
    so the binomial-weighted sums of (a+c, b+d, b-d, a-c) add up to exactly
    the engine's mean.
    """
    if m < 1 or m % 2 == 0:
        raise ValueError(f"supported sizes are odd m >= 1, got {m}")
    mu = [0.0, 0.0, 0.0, 0.0]
    for i in range(m // 2 + 1):
        w = math.comb(m, i)
        cf, _ = repetition_closed_form(m, i, channel)
        mu[0] += w * (cf.a + cf.c)
        mu[1] += w * (cf.b + cf.d)
        mu[2] += w * (cf.b - cf.d)
        mu[3] += w * (cf.a - cf.c)
    return PauliChannel(tuple(mu))


def cluster_ring_p0(p: float) -> float:
    """Closed-form white-noise parameter of the five-qubit cluster ring,
    conditioned on the trivial syndrome.

    With x = (1-p)/(1+3p) this is (1 - 10x^3 + 15x^4 - 6x^5) /
    (1 + 30x^3 + 15x^4 + 18x^5), approximately 1 - (5/8)(1-p)^3 near p=1.
    """
    x = (1.0 - p) / (1.0 + 3.0 * p)
    num = 1.0 - 10.0 * x**3 + 15.0 * x**4 - 6.0 * x**5
    den = 1.0 + 30.0 * x**3 + 15.0 * x**4 + 18.0 * x**5
    return num / den


def p_eff_estimate(p: float) -> float:
    """Probability of at most one error among five sites: p^5 + 5p^4(1-p)."""
    return p**5 + 5.0 * p**4 * (1.0 - p)


def white_parameter(channel: PauliChannel) -> float:
    """Invert the depolarizing parameterization: p = (4*lambda_0 - 1)/3."""
    return (4.0 * channel.lambdas[0] - 1.0) / 3.0


def _code_basis(code: StabilizerCode) -> tuple[np.ndarray, np.ndarray]:
    """Dense logical basis vectors from the stabilizer projector.

    |0_L> spans (1 + Z_L)/2 * prod_a (1 + G_a)/2; the relative phase is
    fixed by |1_L> = X_L |0_L>.
    """
    dim = 1 << code.m
    proj = np.eye(dim, dtype=complex)
    for g in code.generators:
        proj = proj @ (np.eye(dim) + to_matrix(g)) / 2.0
    proj = proj @ (np.eye(dim) + to_matrix(code.logical_z)) / 2.0
    # any nonzero column of the rank-1 projector is the state
    norms = np.linalg.norm(proj, axis=0)
    col = int(np.argmax(norms))
    zero_l = proj[:, col] / norms[col]
    pivot = int(np.argmax(np.abs(zero_l)))
    zero_l = zero_l * (abs(zero_l[pivot]) / zero_l[pivot])
    one_l = to_matrix(code.logical_x) @ zero_l
    return zero_l, one_l


def choi_effective(
    code: StabilizerCode,
    channel: PauliChannel,
    s: int,
    cap: int = DEFAULT_DENSE_CAP,
) -> tuple[ChoiCoefficients, np.ndarray]:
    """Dense Choi-state derivation of the syndrome-s effective channel.

    Sends half of a maximally entangled state on P_0 (x) C^2 through the
    physical channel, projects the code half onto the syndrome-s subspace,
    rotates back with the recovery operator and reads the resulting 4x4
    matrix off in the {|i_L> (x) |j>} basis.  Entirely independent of the
    symplectic enumeration engine.
    """
    m = code.m
    if m > cap:
        raise ResourceLimitError(f"dense Choi path capped at m={cap}, got {m}")
    dim = 1 << m
    zero_l, one_l = _code_basis(code)

    e0 = np.array([1.0, 0.0], dtype=complex)
    e1 = np.array([0.0, 1.0], dtype=complex)
    phi = (np.kron(zero_l, e0) + np.kron(one_l, e1)) / np.sqrt(2.0)
    rho = np.outer(phi, phi.conj())

    eye_anc = np.eye(2, dtype=complex)
    for site in range(m):
        acc = np.zeros_like(rho)
        for j, lam_j in enumerate(channel.lambdas):
            if lam_j == 0.0:
                continue
            op = np.kron(to_matrix(PauliString.single(m, site, "IXYZ"[j])), eye_anc)
            acc += lam_j * (op @ rho @ op.conj().T)
        rho = acc

    proj = np.eye(dim, dtype=complex)
    for a, g in enumerate(code.generators):
        sign = -1.0 if (s >> a) & 1 else 1.0
        proj = proj @ (np.eye(dim) + sign * to_matrix(g)) / 2.0
    rec = to_matrix(code.recovery[s])
    op = np.kron(rec @ proj, eye_anc)
    rho = op @ rho @ op.conj().T

    basis = [np.kron(v, e) for v in (zero_l, one_l) for e in (e0, e1)]
    mat = np.array([[u.conj() @ rho @ v for v in basis] for u in basis])
    coeff = ChoiCoefficients(
        mat[0, 0].real, mat[1, 1].real, mat[0, 3].real, mat[1, 2].real
    )
    return coeff, mat
