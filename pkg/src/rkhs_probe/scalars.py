"""Scalar plumbing shared by all modules.

Every numeric value produced by the library is either an exact rational
(arbitrary-size numerator/denominator, always in lowest terms) or a
high-precision binary float that carries its own precision in bits.
ExactScalar wraps both kinds behind one arithmetic interface.

Mixing rules: rational op rational stays rational; a rational combined with
a float adopts the float's precision; two floats of different precision are
combined at the lower precision and the result is flagged as downgraded.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Tuple, Union

import mpmath as mp

DEFAULT_BITS = 256
PRECISION_CEILING_BITS = 2 ** 16

Rational = Union[int, Fraction]


def parse_rational(value) -> Fraction:
    """Parse ints, decimal floats and strings like '3/4' or '0.25' exactly.

    Floats are read through their decimal literal (str round-trip), so a
    config value 0.25 means exactly 1/4.
    """
    if isinstance(value, bool):
        raise ValueError(f"cannot parse rational from {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(str(value))
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse rational from {value!r}") from exc
    raise ValueError(f"cannot parse rational from {value!r}")


def format_rational(q: Fraction) -> str:
    """Canonical CSV/JSON text for a rational: 'p/q', or 'p' for integers."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def mpf_str(x, bits: int) -> str:
    """Full-precision decimal string for an mpf at the given working bits."""
    dps = mp.libmp.libmpf.prec_to_dps(bits)
    return mp.nstr(x, dps, strip_zeros=True)


class ExactScalar:
    """One numeric value: exact rational or high-precision float."""

    __slots__ = ("rational", "decimal", "precision_bits", "downgraded")

    def __init__(self, rational=None, decimal=None, precision_bits=None, downgraded=False):
        if (rational is None) == (decimal is None):
            raise ValueError("exactly one of rational/decimal must be given")
        if rational is not None:
            self.rational: Optional[Fraction] = Fraction(rational)
            self.decimal = None
            self.precision_bits: Optional[int] = None
        else:
            if precision_bits is None:
                raise ValueError("decimal values must state their precision")
            self.rational = None
            self.decimal = decimal
            self.precision_bits = int(precision_bits)
        self.downgraded = bool(downgraded)

    @classmethod
    def exact(cls, value) -> "ExactScalar":
        return cls(rational=parse_rational(value))

    @classmethod
    def hp(cls, value, bits: int = DEFAULT_BITS, downgraded: bool = False) -> "ExactScalar":
        with mp.workprec(bits):
            if isinstance(value, Fraction):
                x = mp.mpf(value.numerator) / value.denominator
            elif isinstance(value, str):
                x = mp.mpf(value)
            else:
                x = mp.mpf(value)
        return cls(decimal=x, precision_bits=bits, downgraded=downgraded)

    @property
    def is_exact(self) -> bool:
        return self.rational is not None

    def to_mpf(self, bits: Optional[int] = None):
        target = bits if bits is not None else (self.precision_bits or DEFAULT_BITS)
        with mp.workprec(target):
            if self.is_exact:
                return mp.mpf(self.rational.numerator) / self.rational.denominator
            return +self.decimal

    def __float__(self) -> float:
        return float(self.rational) if self.is_exact else float(self.decimal)

    # arithmetic: promote to the weaker representation
    def _coerce(self, other) -> "ExactScalar":
        if isinstance(other, ExactScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return ExactScalar(rational=Fraction(other))
        if isinstance(other, mp.mpf) or isinstance(other, float):
            return ExactScalar.hp(other, self.precision_bits or DEFAULT_BITS)
        return NotImplemented

    def _combine(self, other, op):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_exact and other.is_exact:
            return ExactScalar(rational=op(self.rational, other.rational))
        if self.is_exact or other.is_exact:
            bits = self.precision_bits or other.precision_bits
            downgraded = self.downgraded or other.downgraded
        else:
            bits = min(self.precision_bits, other.precision_bits)
            downgraded = (self.downgraded or other.downgraded
                          or self.precision_bits != other.precision_bits)
        with mp.workprec(bits):
            value = op(self.to_mpf(bits), other.to_mpf(bits))
        return ExactScalar(decimal=value, precision_bits=bits, downgraded=downgraded)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._combine(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._combine(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._combine(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._combine(other, lambda a, b: b / a)

    def __neg__(self):
        if self.is_exact:
            return ExactScalar(rational=-self.rational)
        return ExactScalar(decimal=-self.decimal, precision_bits=self.precision_bits,
                           downgraded=self.downgraded)

    def __abs__(self):
        if self.is_exact:
            return ExactScalar(rational=abs(self.rational))
        return ExactScalar(decimal=abs(self.decimal), precision_bits=self.precision_bits,
                           downgraded=self.downgraded)

    def _cmp_value(self):
        return self.rational if self.is_exact else self.decimal

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_exact and other.is_exact:
            return self.rational == other.rational
        return self.to_mpf() == other.to_mpf()

    def __lt__(self, other):
        other = self._coerce(other)
        if self.is_exact and other.is_exact:
            return self.rational < other.rational
        return self.to_mpf() < other.to_mpf()

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        other = self._coerce(other)
        if self.is_exact and other.is_exact:
            return self.rational > other.rational
        return self.to_mpf() > other.to_mpf()

    def __ge__(self, other):
        return self == other or self > other

    def __hash__(self):
        return hash(self._cmp_value())

    def __repr__(self):
        if self.is_exact:
            return f"ExactScalar({format_rational(self.rational)})"
        flag = ", downgraded" if self.downgraded else ""
        return f"ExactScalar({mpf_str(self.decimal, self.precision_bits)} @ {self.precision_bits} bits{flag})"

    def to_text(self) -> str:
        """Canonical serialization: 'p/q' when exact, decimal string otherwise."""
        if self.is_exact:
            return format_rational(self.rational)
        return mpf_str(self.decimal, self.precision_bits)
