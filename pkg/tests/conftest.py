import numpy as np
import pytest

from effnoise import (
    cluster_ring_code,
    ghz_code,
    repetition_code,
    trivial_code,
)
from effnoise.pauli import random_channels

# Reference single-letter multiplication table: (phase, letter) for a*b.
# Kept independent of the package's symplectic arithmetic on purpose.
LETTER_PRODUCT = {
    ("I", "I"): (1, "I"), ("I", "X"): (1, "X"), ("I", "Y"): (1, "Y"), ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"), ("X", "X"): (1, "I"), ("X", "Y"): (1j, "Z"), ("X", "Z"): (-1j, "Y"),
    ("Y", "I"): (1, "Y"), ("Y", "X"): (-1j, "Z"), ("Y", "Y"): (1, "I"), ("Y", "Z"): (1j, "X"),
    ("Z", "I"): (1, "Z"), ("Z", "X"): (1j, "Y"), ("Z", "Y"): (-1j, "X"), ("Z", "Z"): (1, "I"),
}


def letter_multiply(p: str, q: str) -> tuple[complex, str]:
    """Oracle product of two Pauli letter strings: (phase, letters)."""
    phase = 1 + 0j
    out = []
    for a, b in zip(p, q):
        ph, c = LETTER_PRODUCT[(a, b)]
        phase *= ph
        out.append(c)
    return phase, "".join(out)


def letter_commutes(p: str, q: str) -> bool:
    """Oracle commutation: even number of anticommuting sites."""
    clashes = sum(
        1 for a, b in zip(p, q) if a != "I" and b != "I" and a != b
    )
    return clashes % 2 == 0


@pytest.fixture(scope="session")
def rep3():
    return repetition_code(3)


@pytest.fixture(scope="session")
def rep5():
    return repetition_code(5)


@pytest.fixture(scope="session")
def ghz3():
    return ghz_code(3)


@pytest.fixture(scope="session")
def cr5():
    return cluster_ring_code(5)


@pytest.fixture(scope="session")
def all_small_codes(rep3, rep5, ghz3, cr5):
    return [trivial_code(), rep3, ghz3, rep5, ghz_code(5), cr5]


@pytest.fixture(scope="session")
def sample_channels():
    """Twenty weak-noise-biased channels shared across comparison tests."""
    return random_channels(20, seed=20240601, min_identity=0.6)
