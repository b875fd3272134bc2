"""Exact scalar arithmetic over the rationals or a prime field.

Every computation in this package is exact.  Rational scalars are
``fractions.Fraction`` (arbitrary-precision), prime-field scalars are plain
ints reduced to ``range(p)``.  An :class:`ExactField` bundles the arithmetic
so the linear algebra layer never has to branch on the scalar kind.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class ExactField:
    """The rationals (characteristic 0) or F_p (characteristic p prime).

    Scalars are Fraction for the rationals and int in [0, p) for F_p.
    """

    def __init__(self, characteristic: int = 0):
        if characteristic != 0 and not _is_prime(characteristic):
            raise FieldError(f"characteristic must be 0 or a prime, got {characteristic}")
        self.characteristic = characteristic

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime-field"

    # -- element constructors ------------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def of_int(self, n: int):
        if self.characteristic == 0:
            return Fraction(n)
        return n % self.characteristic

    def parse(self, text):
        """Parse a scalar from its file representation.

        Rationals are strings like ``"3"`` or ``"-2/5"``; prime-field scalars
        are ints (or digit strings) reduced mod p.  No floats anywhere.
        """
        if isinstance(text, bool):
            raise FieldError(f"not a scalar: {text!r}")
        if self.characteristic == 0:
            if isinstance(text, int):
                return Fraction(text)
            if isinstance(text, str):
                try:
                    return Fraction(text)
                except (ValueError, ZeroDivisionError) as exc:
                    raise FieldError(f"bad rational scalar {text!r}: {exc}") from None
            raise FieldError(f"bad rational scalar {text!r}")
        if isinstance(text, int):
            return text % self.characteristic
        if isinstance(text, str):
            try:
                return int(text, 10) % self.characteristic
            except ValueError:
                raise FieldError(f"bad prime-field scalar {text!r}") from None
        raise FieldError(f"bad prime-field scalar {text!r}")

    def unparse(self, a):
        if self.characteristic == 0:
            return str(a)
        return int(a)

    # -- arithmetic -----------------------------------------------------

    def add(self, a, b):
        if self.characteristic == 0:
            return a + b
        return (a + b) % self.characteristic

    def sub(self, a, b):
        if self.characteristic == 0:
            return a - b
        return (a - b) % self.characteristic

    def mul(self, a, b):
        if self.characteristic == 0:
            return a * b
        return (a * b) % self.characteristic

    def neg(self, a):
        if self.characteristic == 0:
            return -a
        return (-a) % self.characteristic

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / a
        return pow(a, self.characteristic - 2, self.characteristic)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def is_one(self, a) -> bool:
        return a == self.one

    # -- identity -------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, ExactField) and self.characteristic == other.characteristic

    def __hash__(self):
        return hash(("ExactField", self.characteristic))

    def __repr__(self):
        if self.characteristic == 0:
            return "ExactField(Q)"
        return f"ExactField(F_{self.characteristic})"


QQ = ExactField(0)


def GF(p: int) -> ExactField:
    return ExactField(p)
