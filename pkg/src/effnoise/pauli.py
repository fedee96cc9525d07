"""Symplectic Pauli-string algebra and Pauli-channel arithmetic.

An m-qubit Pauli operator is stored as a pair of bitmasks (x, z) plus a
power of i:

    P = i^phase_exp * prod_site X_site^{x bit} Z_site^{z bit}

with the X factor to the left of the Z factor on every site.  Bit ``i`` of a
mask is qubit ``i``; qubit 0 is the leftmost letter in string labels such as
"XZZXI".  Masks are plain Python ints, so any m works; m <= 64 is the tested
envelope (everything here fits in one machine word on the numpy fast paths).

Single-site dictionary: I=(0,0), X=(1,0), Y=(1,1) with an extra i folded
into phase_exp (Y = iXZ), Z=(0,1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

LETTERS = "IXYZ"

# letter -> (x bit, z bit, i-exponent of the XZ form)
_LETTER_BITS = {"I": (0, 0, 0), "X": (1, 0, 0), "Y": (1, 1, 1), "Z": (0, 1, 0)}

_PHASES = (1, 1j, -1, -1j)


def _parity(v: int) -> int:
    return bin(v).count("1") & 1


@dataclass(frozen=True)
class PauliString:
    """Pauli operator on m qubits in binary symplectic form."""

    m: int
    x: int
    z: int
    phase_exp: int = 0  # exponent of i, mod 4

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("need at least one qubit")
        mask = (1 << self.m) - 1
        if self.x & ~mask or self.z & ~mask:
            raise ValueError("mask bits outside qubit range")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @classmethod
    def identity(cls, m: int) -> "PauliString":
        return cls(m, 0, 0)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Build from a letter string like "XZZXI" (qubit 0 leftmost)."""
        if not label:
            raise ValueError("empty Pauli label")
        x = z = exp = 0
        for i, ch in enumerate(label.upper()):
            try:
                xb, zb, e = _LETTER_BITS[ch]
            except KeyError:
                raise ValueError(f"invalid Pauli letter {ch!r}") from None
            x |= xb << i
            z |= zb << i
            exp += e
        return cls(len(label), x, z, exp)

    @classmethod
    def single(cls, m: int, site: int, letter: str) -> "PauliString":
        """Single-site operator, identity elsewhere."""
        if not 0 <= site < m:
            raise ValueError("site out of range")
        xb, zb, e = _LETTER_BITS[letter.upper()]
        return cls(m, xb << site, zb << site, e)

    def letter(self, site: int) -> str:
        xb = (self.x >> site) & 1
        zb = (self.z >> site) & 1
        return LETTERS[xb + 3 * zb - 2 * (xb & zb)]

    def label(self) -> str:
        return "".join(self.letter(i) for i in range(self.m))

    @property
    def phase(self) -> complex:
        """Scalar prefactor relative to the plain sigma-letter product."""
        n_y = _parity_count(self.x & self.z)
        return _PHASES[(self.phase_exp - n_y) % 4]

    @property
    def weight(self) -> int:
        return bin(self.x | self.z).count("1")

    def multiply(self, other: "PauliString") -> "PauliString":
        """Group product self * other with exact phase tracking."""
        if self.m != other.m:
            raise ValueError("Pauli string lengths differ")
        # moving other's X factors past self's Z factors gives (-1)^(z1.x2)
        exp = self.phase_exp + other.phase_exp + 2 * _parity(self.z & other.x)
        return PauliString(self.m, self.x ^ other.x, self.z ^ other.z, exp)

    def commutes(self, other: "PauliString") -> bool:
        """Symplectic test: parity of x1.z2 + z1.x2 is 0 iff [P,Q]=0."""
        if self.m != other.m:
            raise ValueError("Pauli string lengths differ")
        return (_parity(self.x & other.z) ^ _parity(self.z & other.x)) == 0

    def __str__(self) -> str:
        pre = {1: "+", -1: "-", 1j: "+i", -1j: "-i"}[self.phase]
        return pre + self.label()


def _parity_count(v: int) -> int:
    return bin(v).count("1")


def multiply(p: PauliString, q: PauliString) -> PauliString:
    return p.multiply(q)


def commutes(p: PauliString, q: PauliString) -> bool:
    return p.commutes(q)


@dataclass(frozen=True)
class PauliChannel:
    """Single-qubit Pauli channel as a probability 4-vector over (I, X, Y, Z).

    The vector must be normalized to 1 within 1e-12; construction never
    renormalizes silently (use :meth:`normalized` when that is wanted).
    """

    lambdas: tuple[float, float, float, float]

    SUM_TOL = 1e-12

    def __post_init__(self):
        lam = tuple(float(v) for v in self.lambdas)
        if len(lam) != 4:
            raise ValueError("channel needs exactly four probabilities")
        if any(v < -1e-15 or v > 1 + 1e-15 for v in lam):
            raise ValueError(f"probabilities outside [0, 1]: {lam}")
        if abs(sum(lam) - 1.0) > self.SUM_TOL:
            raise ValueError(f"probabilities sum to {sum(lam)!r}, not 1")
        object.__setattr__(self, "lambdas", lam)

    @classmethod
    def normalized(cls, raw: Iterable[float]) -> "PauliChannel":
        """Explicitly rescale a nonnegative 4-vector to unit sum."""
        vals = [float(v) for v in raw]
        total = sum(vals)
        if total <= 0:
            raise ValueError("cannot normalize a nonpositive vector")
        return cls(tuple(v / total for v in vals))

    @classmethod
    def identity(cls) -> "PauliChannel":
        return cls((1.0, 0.0, 0.0, 0.0))

    def __getitem__(self, j: int) -> float:
        return self.lambdas[j]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.lambdas, dtype=float)

    @property
    def error_rate(self) -> float:
        """Total probability of a nontrivial Pauli, 1 - lambda_0."""
        return 1.0 - self.lambdas[0]


def white_noise(p: float) -> PauliChannel:
    """Depolarizing channel rho -> p*rho + (1-p)*id/2.

    lambda_0 = (1+3p)/4 and lambda_{j>0} = (1-p)/4; p=1 is noiseless and
    p=0 is fully mixing.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"noise parameter p={p} outside [0, 1]")
    return PauliChannel(((1.0 + 3.0 * p) / 4.0,) + ((1.0 - p) / 4.0,) * 3)


def phase_noise(p: float) -> PauliChannel:
    """Dephasing channel: lambda_0 = (1+p)/2, lambda_3 = (1-p)/2."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"noise parameter p={p} outside [0, 1]")
    return PauliChannel(((1.0 + p) / 2.0, 0.0, 0.0, (1.0 - p) / 2.0))


def string_probability(channel: PauliChannel, error: PauliString) -> float:
    """Probability of drawing `error` from the i.i.d. channel on m sites."""
    prob = 1.0
    for site in range(error.m):
        xb = (error.x >> site) & 1
        zb = (error.z >> site) & 1
        prob *= channel.lambdas[xb + 3 * zb - 2 * (xb & zb)]
    return prob


def random_channels(
    count: int, seed: int, min_identity: float = 0.0
) -> list[PauliChannel]:
    """Deterministic sample of full-support Pauli channels (for tests/sweeps).

    `min_identity` floors lambda_0, biasing toward the weak-noise regime
    where effective-channel comparisons are nontrivial.
    """
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        l0 = rng.uniform(min_identity, 1.0)
        rest = rng.dirichlet(np.ones(3)) * (1.0 - l0)
        out.append(PauliChannel.normalized([l0, *rest]))
    return out


# dense 2x2 representations, indexed like LETTERS
SIGMA = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def to_matrix(p: PauliString) -> np.ndarray:
    """Dense 2^m matrix of the operator, phase included (small m only)."""
    out = np.array([[p.phase]], dtype=complex)
    for site in range(p.m):
        xb = (p.x >> site) & 1
        zb = (p.z >> site) & 1
        out = np.kron(out, SIGMA[xb + 3 * zb - 2 * (xb & zb)])
    return out
