"""Arithmetic over Z_d and Z_d**n: qudit systems, digit labels, and index maps."""

from __future__ import annotations

import sys
from dataclasses import dataclass


@dataclass(frozen=True)
class QuditSystem:
    """An n-qudit register with d levels per qudit; the group Z_d**n."""

    n: int
    d: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need at least one qudit, got n={self.n}")
        if self.d < 2:
            raise ValueError(f"need at least two levels per qudit, got d={self.d}")
        if self.d**self.n > sys.maxsize:
            raise ValueError(
                f"dimension {self.d}**{self.n} exceeds the platform index range"
            )

    @property
    def dim(self) -> int:
        return self.d**self.n


@dataclass(frozen=True)
class DigitLabel:
    """Length-n tuple of digits in [0, d).

    The same type labels computational basis states and linear functionals;
    which role a label plays is decided by the operation consuming it.
    """

    digits: tuple[int, ...]
    system: QuditSystem

    def __post_init__(self) -> None:
        object.__setattr__(self, "digits", tuple(int(x) for x in self.digits))
        if len(self.digits) != self.system.n:
            raise ValueError(
                f"expected {self.system.n} digits, got {len(self.digits)}"
            )
        for x in self.digits:
            if not 0 <= x < self.system.d:
                raise ValueError(f"digit {x} outside [0, {self.system.d})")

    def ket(self) -> str:
        """Digit string in ket order, e.g. '12' for digits (1, 2).

        Digits are comma-separated when d > 10 since single characters no
        longer suffice.
        """
        sep = "" if self.system.d <= 10 else ","
        return sep.join(str(x) for x in self.digits)


def _require_same_system(a: DigitLabel, b: DigitLabel) -> None:
    if a.system != b.system:
        raise ValueError(f"label systems differ: {a.system} vs {b.system}")


def add_mod(a: DigitLabel, b: DigitLabel) -> DigitLabel:
    """Digit-wise addition modulo d."""
    _require_same_system(a, b)
    d = a.system.d
    return DigitLabel(
        tuple((x + y) % d for x, y in zip(a.digits, b.digits)), a.system
    )


def dot_mod(k: DigitLabel, q: DigitLabel) -> int:
    """Modular dot product (sum of k_j * q_j) mod d."""
    _require_same_system(k, q)
    return sum(x * y for x, y in zip(k.digits, q.digits)) % k.system.d


def label_to_index(q: DigitLabel) -> int:
    """Flat index of a label; the first digit is the most significant.

    Big-endian so that printed labels read left to right like the index
    written in base d.
    """
    i = 0
    for x in q.digits:
        i = i * q.system.d + x
    return i


def index_to_label(i: int, system: QuditSystem) -> DigitLabel:
    """Inverse of label_to_index."""
    if not 0 <= i < system.dim:
        raise ValueError(f"index {i} outside [0, {system.dim})")
    digits = []
    for _ in range(system.n):
        i, r = divmod(i, system.d)
        digits.append(r)
    return DigitLabel(tuple(reversed(digits)), system)


def enumerate_labels(system: QuditSystem) -> list[DigitLabel]:
    """All d**n labels in index order."""
    return [index_to_label(i, system) for i in range(system.dim)]


def is_prime(d: int) -> bool:
    """Trial-division primality test; reporting only, nothing is gated on it."""
    if d < 2:
        raise ValueError(f"primality is asked only for d >= 2, got {d}")
    if d < 4:
        return True
    if d % 2 == 0:
        return False
    f = 3
    while f * f <= d:
        if d % f == 0:
            return False
        f += 2
    return True
