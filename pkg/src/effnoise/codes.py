"""Stabilizer codes for one logical qubit: generators, logicals, recovery.

A code on m qubits is given by m-1 independent commuting generators, one
logical X/Z pair, and a lookup table mapping each of the 2^(m-1) syndromes
to a fixed recovery Pauli.  Syndromes are packed into ints, bit a set iff
the error anticommutes with generator a.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .pauli import PauliString

RECOVERY_ALPHABETS = ("x_only", "z_only", "full")


class CodeConstructionError(Exception):
    """Raised when a recovery table cannot be completed."""


@dataclass(frozen=True)
class StabilizerCode:
    m: int
    generators: tuple[PauliString, ...]
    logical_x: PauliString
    logical_z: PauliString
    recovery: dict[int, PauliString]
    label: str = "code"

    @property
    def n_syndromes(self) -> int:
        return 1 << len(self.generators)

    def syndrome(self, error: PauliString) -> int:
        """Packed anticommutation pattern of `error` with the generators."""
        if error.m != self.m:
            raise ValueError("error length does not match code size")
        s = 0
        for a, g in enumerate(self.generators):
            if not error.commutes(g):
                s |= 1 << a
        return s

    def logical_action(self, error: PauliString) -> str:
        """Residual logical Pauli class (I/X/Y/Z) after syndrome recovery.

        With C = recovery * error, the X component is set iff C anticommutes
        with logical_z and the Z component iff C anticommutes with logical_x.
        """
        c = self.recovery[self.syndrome(error)].multiply(error)
        xc = 0 if c.commutes(self.logical_z) else 1
        zc = 0 if c.commutes(self.logical_x) else 1
        return "IXZY"[xc + 2 * zc]

    def syndrome_bits(self, s: int) -> str:
        """Readable syndrome string, generator 0 leftmost."""
        return format(s, f"0{len(self.generators)}b")[::-1]


def syndrome(code: StabilizerCode, error: PauliString) -> int:
    return code.syndrome(error)


def logical_action(code: StabilizerCode, error: PauliString) -> str:
    return code.logical_action(error)


def _alphabet_patterns(m: int, weight: int, alphabet: str) -> Iterable[PauliString]:
    """All Pauli strings of the given weight, lexicographically by masks."""
    letters = {"x_only": "X", "z_only": "Z", "full": "XYZ"}[alphabet]
    for sites in itertools.combinations(range(m), weight):
        for choice in itertools.product(letters, repeat=weight):
            x = z = exp = 0
            for site, ch in zip(sites, choice):
                if ch in "XY":
                    x |= 1 << site
                if ch in "ZY":
                    z |= 1 << site
            yield PauliString(m, x, z)


def build_recovery(
    m: int, generators: Sequence[PauliString], alphabet: str = "full"
) -> dict[int, PauliString]:
    """Minimum-weight recovery table over the declared error alphabet.

    Searches weight 0, 1, 2, ... until every syndrome has a representative;
    the first (lexicographically smallest) pattern found per syndrome wins,
    which keeps the table deterministic when weights tie.
    """
    if alphabet not in RECOVERY_ALPHABETS:
        raise ValueError(f"unknown recovery alphabet {alphabet!r}")
    total = 1 << len(generators)
    table: dict[int, PauliString] = {0: PauliString.identity(m)}
    probe = StabilizerCode(m, tuple(generators), PauliString.identity(m),
                           PauliString.identity(m), {}, "probe")
    for weight in range(1, m + 1):
        if len(table) == total:
            break
        for pattern in _alphabet_patterns(m, weight, alphabet):
            s = probe.syndrome(pattern)
            if s not in table:
                table[s] = pattern
                if len(table) == total:
                    break
    if len(table) != total:
        raise CodeConstructionError(
            f"alphabet {alphabet!r} reaches only {len(table)} of {total} syndromes"
        )
    return table


def _require_odd(m: int, minimum: int) -> None:
    if m < minimum or m % 2 == 0:
        raise ValueError(f"supported sizes are odd m >= {minimum}, got {m}")


def trivial_code() -> StabilizerCode:
    """Identity encoding: one qubit, no generators, bare X/Z logicals."""
    one = PauliString.from_label
    return StabilizerCode(1, (), one("X"), one("Z"),
                          {0: PauliString.identity(1)}, "trivial")


def repetition_code(m: int) -> StabilizerCode:
    """Bit-flip repetition code: Z_i Z_{i+1} generators, |0..0>, |1..1> basis.

    m = 1 degenerates to the identity encoding with this module's labeling.
    Corrects up to floor(m/2) X errors; recovery is the unique min-weight
    X-only pattern per syndrome (odd m means no weight ties).
    """
    _require_odd(m, 1)
    if m == 1:
        return trivial_code()
    gens = tuple(
        PauliString(m, 0, (1 << i) | (1 << (i + 1))) for i in range(m - 1)
    )
    logical_x = PauliString(m, (1 << m) - 1, 0)
    logical_z = PauliString(m, 0, 1)
    recovery = build_recovery(m, gens, "x_only")
    return StabilizerCode(m, gens, logical_x, logical_z, recovery, f"repetition-{m}")


def ghz_code(m: int) -> StabilizerCode:
    """Repetition subspace with the (|0..0> +- |1..1>)/sqrt(2) logical basis.

    Same generators, syndromes and recovery as :func:`repetition_code`; the
    basis rotation swaps the logical operator roles, so logical X is Z on
    qubit 1 and logical Z is X^m.
    """
    _require_odd(m, 1)
    rep = repetition_code(m)
    if m == 1:
        return StabilizerCode(1, (), rep.logical_z, rep.logical_x,
                              rep.recovery, "ghz-1")
    return StabilizerCode(m, rep.generators, rep.logical_z, rep.logical_x,
                          rep.recovery, f"ghz-{m}")


def cluster_ring_code(m: int) -> StabilizerCode:
    """Periodic 1-D cluster-state code (ring graph), one logical qubit.

    Generators are K_a K_{a+1} for a = 0..m-2 with K_a = X_a Z_{a-1} Z_{a+1}
    on the ring; logical Z is K_0 and logical X is Z^m.  For m = 5 this is
    the optimal five-qubit code: the 15 nontrivial syndromes are exactly the
    15 single-qubit Paulis, and min-weight recovery over the full Pauli
    alphabet corrects any one error.  (Z-only patterns reach every syndrome
    too, but leave single X/Y errors with a residual logical action; user
    code files can opt into that alphabet.)
    """
    _require_odd(m, 5)

    def k(a: int) -> PauliString:
        left, right = (a - 1) % m, (a + 1) % m
        return PauliString(m, 1 << a, (1 << left) | (1 << right))

    gens = tuple(k(a).multiply(k(a + 1)) for a in range(m - 1))
    logical_z = k(0)
    logical_x = PauliString(m, 0, (1 << m) - 1)
    recovery = build_recovery(m, gens, "full")
    code = StabilizerCode(m, gens, logical_x, logical_z, recovery,
                          f"cluster-ring-{m}")
    if m == 5:
        # all weight<=1 errors must be correctable; guards the construction
        for site in range(5):
            for letter in "XYZ":
                err = PauliString.single(5, site, letter)
                if code.logical_action(err) != "I":
                    raise CodeConstructionError(
                        f"single error {letter}@{site} not corrected"
                    )
    return code


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class CodeReport:
    label: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, passed, detail))

    def lines(self) -> list[str]:
        out = [f"code {self.label}: {'PASS' if self.ok else 'FAIL'}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            out.append(f"  [{mark}] {c.name}" + (f" ({c.detail})" if c.detail else ""))
        return out


def validate(code: StabilizerCode) -> CodeReport:
    """Check every structural invariant; failures become report entries."""
    rep = CodeReport(code.label)
    gens = code.generators

    pairwise = all(
        g.commutes(h) for i, g in enumerate(gens) for h in gens[i + 1:]
    )
    rep.add("generators pairwise commute", pairwise)

    rep.add(
        "generators independent",
        _independent(code.m, gens),
        f"{len(gens)} generators",
    )
    rep.add(
        "logical X commutes with generators",
        all(code.logical_x.commutes(g) for g in gens),
    )
    rep.add(
        "logical Z commutes with generators",
        all(code.logical_z.commutes(g) for g in gens),
    )
    rep.add(
        "logical X anticommutes with logical Z",
        not code.logical_x.commutes(code.logical_z),
    )
    rep.add(
        "logicals outside the stabilizer group",
        not _in_span(code.m, gens, code.logical_x)
        and not _in_span(code.m, gens, code.logical_z),
    )

    missing = [s for s in range(code.n_syndromes) if s not in code.recovery]
    rep.add(
        "recovery covers all syndromes",
        not missing,
        f"missing {len(missing)}" if missing else f"{code.n_syndromes} entries",
    )
    bad = [
        s for s, r in code.recovery.items()
        if s < code.n_syndromes and code.syndrome(r) != s
    ]
    rep.add("recovery syndromes match their keys", not bad,
            f"mismatched {bad}" if bad else "")
    return rep


def _gauss_rank(rows: list[int]) -> int:
    rank = 0
    basis: list[int] = []
    for row in rows:
        for b in basis:
            row = min(row, row ^ b)
        if row:
            basis.append(row)
            basis.sort(reverse=True)
            rank += 1
    return rank


def _symplectic_rows(m: int, ops: Sequence[PauliString]) -> list[int]:
    return [(p.x << m) | p.z for p in ops]


def _independent(m: int, ops: Sequence[PauliString]) -> bool:
    rows = _symplectic_rows(m, ops)
    return _gauss_rank(rows) == len(ops)


def _in_span(m: int, gens: Sequence[PauliString], p: PauliString) -> bool:
    rows = _symplectic_rows(m, gens)
    return _gauss_rank(rows + _symplectic_rows(m, [p])) == _gauss_rank(rows)


def from_definition(doc: dict) -> StabilizerCode:
    """Build a user code from a definition document (already parsed JSON).

    Required fields: label, m, generators (Pauli letter strings), logical_x,
    logical_z, recovery_alphabet in {x_only, z_only, full}.
    """
    missing = [k for k in ("label", "m", "generators", "logical_x",
                           "logical_z", "recovery_alphabet") if k not in doc]
    if missing:
        raise ValueError(f"code definition missing fields: {', '.join(missing)}")
    m = int(doc["m"])
    if m < 1:
        raise ValueError("m must be positive")
    gens = tuple(PauliString.from_label(s) for s in doc["generators"])
    for g in gens:
        if g.m != m:
            raise ValueError(f"generator {g.label()} has length {g.m}, expected {m}")
    lx = PauliString.from_label(doc["logical_x"])
    lz = PauliString.from_label(doc["logical_z"])
    if lx.m != m or lz.m != m:
        raise ValueError("logical operator length does not match m")
    alphabet = doc["recovery_alphabet"]
    recovery = build_recovery(m, gens, alphabet)
    return StabilizerCode(m, gens, lx, lz, recovery, str(doc["label"]))
