"""Exact arithmetic on the symmetrized tropical semiring.

Values carry a sign tag (positive, negative, balanced) and an exact rational
magnitude; the tropical zero (the additive identity, conventionally minus
infinity) is a distinguished singleton with no magnitude.  Addition is a
sign-aware maximum, multiplication adds magnitudes and multiplies signs.
Everything is immutable and pure.
"""

from __future__ import annotations

import enum
from fractions import Fraction

POS = 1
NEG = -1
BAL = 0

_SIGN_PREFIX = {POS: "", NEG: "~", BAL: "*"}


class SymNum:
    """One element of the symmetrized semiring.

    `sign` is POS, NEG, BAL, or None for the tropical zero; `mag` is a
    Fraction (None for the tropical zero, which stores no magnitude).
    """

    __slots__ = ("sign", "mag")

    def __init__(self, sign, mag):
        object.__setattr__(self, "sign", sign)
        object.__setattr__(self, "mag", mag)

    def __setattr__(self, name, value):
        raise AttributeError("SymNum is immutable")

    @staticmethod
    def pos(m) -> "SymNum":
        return SymNum(POS, Fraction(m))

    @staticmethod
    def neg(m) -> "SymNum":
        return SymNum(NEG, Fraction(m))

    @staticmethod
    def bal(m) -> "SymNum":
        return SymNum(BAL, Fraction(m))

    # -- predicates ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.sign is None

    @property
    def is_balanced(self) -> bool:
        return self.sign == BAL

    @property
    def is_signed(self) -> bool:
        """True for elements of the signed subset (tropical zero included)."""
        return self.sign != BAL

    @property
    def is_pos(self) -> bool:
        return self.sign == POS

    @property
    def is_neg(self) -> bool:
        return self.sign == NEG

    # -- semiring operations ---------------------------------------------

    def __add__(self, other: "SymNum") -> "SymNum":
        if self.sign is None:
            return other
        if other.sign is None:
            return self
        if self.mag > other.mag:
            return self
        if self.mag < other.mag:
            return other
        if self.sign == other.sign:
            return self
        return SymNum(BAL, self.mag)

    def __mul__(self, other: "SymNum") -> "SymNum":
        if self.sign is None or other.sign is None:
            return ZERO
        return SymNum(self.sign * other.sign, self.mag + other.mag)

    def __neg__(self) -> "SymNum":
        if self.sign is None:
            return self
        return SymNum(-self.sign, self.mag)

    def __sub__(self, other: "SymNum") -> "SymNum":
        return self + (-other)

    def tabs(self) -> "SymNum":
        """Magnitude as a non-negative element; fixes the tropical zero."""
        if self.sign is None:
            return self
        return SymNum(POS, self.mag)

    def tinv(self) -> "SymNum":
        """Multiplicative inverse: negate the magnitude, keep the sign.

        Defined only for signed nonzero elements.
        """
        if self.sign not in (POS, NEG):
            raise ValueError(f"no multiplicative inverse for {self}")
        return SymNum(self.sign, -self.mag)

    # -- equality / hashing ------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymNum):
            return NotImplemented
        return self.sign == other.sign and self.mag == other.mag

    def __hash__(self) -> int:
        return hash((self.sign, self.mag))

    # -- text form ----------------------------------------------------------

    def __str__(self) -> str:
        if self.sign is None:
            return "_"
        return _SIGN_PREFIX[self.sign] + str(self.mag)

    def __repr__(self) -> str:
        return f"SymNum({self})"


ZERO = SymNum(None, None)


def parse_symnum(text: str) -> SymNum:
    """Parse the canonical text form: `_`, `r`, `~r`, or `*r`.

    The magnitude `r` is a decimal or `p/q` rational; the leading `-` of a
    negative magnitude belongs to `r` (so `~-2` is the negative element of
    magnitude -2).
    """
    text = text.strip()
    if not text:
        raise ValueError("empty token")
    if text == "_":
        return ZERO
    sign = POS
    if text[0] == "~":
        sign, text = NEG, text[1:]
    elif text[0] == "*":
        sign, text = BAL, text[1:]
    try:
        mag = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad magnitude {text!r}") from exc
    return SymNum(sign, mag)


# -- order and balance relations ---------------------------------------------


def strict_gt(x: SymNum, y: SymNum) -> bool:
    """x is strictly greater than y: their difference is strictly positive."""
    return (x - y).sign == POS


def balance(x: SymNum, y: SymNum) -> bool:
    """The balance relation: the difference is balanced or zero.

    Reflexive and symmetric but not transitive.
    """
    s = x - y
    return s.sign is None or s.sign == BAL


def teq(x: SymNum, y: SymNum) -> bool:
    """x exceeds-or-balances y: the difference is positive, balanced or zero.

    Compatible with the semiring operations but not transitive, so not an
    order.
    """
    s = x - y
    return s.sign != NEG


def geq(x: SymNum, y: SymNum) -> bool:
    """The non-strict partial order: strictly greater or equal."""
    return x == y or strict_gt(x, y)


class Comparison(enum.Enum):
    LT = "lt"
    GT = "gt"
    EQ = "eq"
    INCOMPARABLE = "incomparable"


def compare(x: SymNum, y: SymNum) -> Comparison:
    """Three-way comparison so callers never conflate 'not greater' with 'less'."""
    if x == y:
        return Comparison.EQ
    s = x - y
    if s.sign == POS:
        return Comparison.GT
    if s.sign == NEG:
        return Comparison.LT
    return Comparison.INCOMPARABLE


def signed_key(x: SymNum):
    """Sort key realizing the total order on signed elements.

    Negative elements sort below the tropical zero, which sorts below the
    positives; magnitude ordering is reversed on the negative side.  Raises
    on balanced input, where no total order exists.
    """
    if x.sign is None:
        return (0, 0)
    if x.sign == POS:
        return (1, x.mag)
    if x.sign == NEG:
        return (-1, -x.mag)
    raise ValueError(f"{x} is balanced; signed total order undefined")


def signed_min(values):
    return min(values, key=signed_key)


def signed_max(values):
    return max(values, key=signed_key)


class Interval:
    """A closed interval [lo, hi] of signed elements in the total order."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: SymNum, hi: SymNum):
        if not (lo.is_signed and hi.is_signed):
            raise ValueError("interval endpoints must be signed")
        if signed_key(lo) > signed_key(hi):
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    def contains(self, x: SymNum) -> bool:
        if not x.is_signed:
            return False
        k = signed_key(x)
        return signed_key(self.lo) <= k <= signed_key(self.hi)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def selections(self):
        """Endpoints plus the tropical zero when it lies inside."""
        out = [self.lo]
        if self.hi != self.lo:
            out.append(self.hi)
        if not self.is_point and self.contains(ZERO) and ZERO not in out:
            out.append(ZERO)
        return out

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __str__(self):
        if self.is_point:
            return f"{{{self.lo}}}"
        return f"[{self.lo}, {self.hi}]"

    def __repr__(self):
        return f"Interval({self.lo}, {self.hi})"


def uncomp(a: SymNum) -> Interval:
    """The set of signed elements incomparable to `a` (a point for signed `a`).

    For balanced `a` this is the interval from the negative to the positive
    element of the same magnitude; signed elements are incomparable only to
    themselves.
    """
    if a.sign == BAL:
        return Interval(SymNum(NEG, a.mag), SymNum(POS, a.mag))
    return Interval(a, a)
