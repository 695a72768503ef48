"""Exact arithmetic in odd prime fields, and binomial coefficients mod p.

Scalars are machine residues in ``[0, p)``; the modulus is capped below
2**16 so that every intermediate product fits comfortably in 64-bit
integers (the linear algebra layer relies on this).
"""

from __future__ import annotations

__all__ = ["MAX_MODULUS", "PrimeField", "Scalar", "lucas_binomial"]

MAX_MODULUS = 1 << 16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """The prime field F_p for an odd prime p < 2**16."""

    __slots__ = ("p", "_binom_rows")

    def __init__(self, p: int) -> None:
        if not isinstance(p, int) or isinstance(p, bool):
            raise TypeError(f"modulus must be an int, got {type(p).__name__}")
        if p >= MAX_MODULUS:
            raise ValueError(f"modulus {p} exceeds the supported bound 2**16")
        if p < 3 or p % 2 == 0 or not _is_prime(p):
            raise ValueError(f"modulus must be an odd prime, got {p}")
        self.p = p
        self._binom_rows: tuple[tuple[int, ...], ...] | None = None

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def element(self, value: int) -> Scalar:
        return Scalar(value, self)

    # Plain-int operations for hot paths; Scalar wraps these.
    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return pow(a, -1, self.p)

    def binomial_digits(self) -> tuple[tuple[int, ...], ...]:
        """Pascal's triangle for single base-p digits: C(i, j) mod p, 0 <= i, j < p."""
        if self._binom_rows is None:
            p = self.p
            rows = []
            row = [1] + [0] * (p - 1)
            for i in range(p):
                rows.append(tuple(row))
                row = [1] + [(row[j - 1] + row[j]) % p for j in range(1, p)]
            self._binom_rows = tuple(rows)
        return self._binom_rows


class Scalar:
    """An element of a PrimeField, stored as its canonical residue."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField) -> None:
        self.value = value % field.p
        self.field = field

    def _coerce(self, other: object) -> int:
        if isinstance(other, Scalar):
            if other.field.p != self.field.p:
                raise ValueError(
                    f"mixed moduli: F_{self.field.p} vs F_{other.field.p}"
                )
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.value + v, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.value - v, self.field)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(v - self.value, self.field)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.value * v, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(-self.value, self.field)

    def inv(self) -> Scalar:
        return Scalar(self.field.inv(self.value), self.field)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.value * self.field.inv(v), self.field)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return other.field.p == self.field.p and other.value == self.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.value))

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.field.p})"


def lucas_binomial(a: int, b: int, field: PrimeField) -> Scalar:
    """Binomial coefficient C(a, b) mod p, digit by digit in base p.

    The result is the product of the single-digit binomials of the base-p
    expansions of a and b; any digit of b exceeding the matching digit of
    a makes the whole coefficient vanish.  b > a is allowed and gives 0.
    """
    if a < 0 or b < 0:
        raise ValueError("binomial arguments must be non-negative")
    p = field.p
    rows = field.binomial_digits()
    r = 1
    while b:
        a, ad = divmod(a, p)
        b, bd = divmod(b, p)
        if bd > ad:
            return Scalar(0, field)
        r = r * rows[ad][bd] % p
    return Scalar(r, field)
