"""Multi-valued signed addition as an independent semantics oracle.

Hyperfield addition returns a set: a single signed value, or the whole
interval between the opposite-signed elements of the tied magnitude.  Folding
it over a matrix-vector product gives a hull membership test that never
touches balanced numbers, which is what makes it a genuine cross-check.
Also houses the cancellative sum and its non-associativity witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .semiring import Interval, POS, SymNum, ZERO
from .linalg import SymMatrix


def _require_signed(x: SymNum):
    if not x.is_signed:
        raise ValueError(f"hyperfield operations take signed arguments, got {x}")


@dataclass(frozen=True)
class HValue:
    """Result of a multi-valued sum: one signed value or a symmetric box."""

    single: Optional[SymNum] = None
    box: Optional[Interval] = None

    @staticmethod
    def of(x: SymNum) -> "HValue":
        return HValue(single=x)

    @staticmethod
    def interval(mag) -> "HValue":
        return HValue(box=Interval(SymNum.neg(mag), SymNum.pos(mag)))

    @property
    def is_single(self) -> bool:
        return self.single is not None

    def contains(self, z: SymNum) -> bool:
        if self.single is not None:
            return z == self.single
        return self.box.contains(z)

    def __str__(self):
        return str(self.single) if self.single is not None else str(self.box)


def hadd(x: SymNum, y: SymNum) -> HValue:
    """Hyperfield addition of signed values: set-valued exactly when the
    arguments are opposite-signed with a magnitude tie."""
    _require_signed(x)
    _require_signed(y)
    if x.sign is None:
        return HValue.of(y)
    if y.sign is None:
        return HValue.of(x)
    if x.mag > y.mag:
        return HValue.of(x)
    if y.mag > x.mag:
        return HValue.of(y)
    if x.sign == y.sign:
        return HValue.of(x)
    return HValue.interval(x.mag)


def _hadd_state(state: HValue, term: SymNum) -> HValue:
    """Fold one more signed term into a set-valued partial sum; an interval
    absorbs anything up to its magnitude and is displaced by anything larger."""
    if state.is_single:
        return hadd(state.single, term)
    if term.sign is None:
        return state
    if term.mag > state.box.hi.mag:
        return HValue.of(term)
    return state


def hsum(values: Sequence[SymNum]) -> HValue:
    state = HValue.of(ZERO)
    for v in values:
        _require_signed(v)
        state = _hadd_state(state, v)
    return state


def hconv_check(v: SymMatrix, lam: Sequence[SymNum], z: Sequence[SymNum]) -> bool:
    """True when `z` is coordinatewise selectable from the set-valued product
    of the columns with normalized weights `lam`."""
    if len(lam) != v.cols or len(z) != v.rows:
        raise ValueError("dimension mismatch")
    for w in lam:
        if w.sign not in (POS, None):
            raise ValueError(f"weights must be non-negative, got {w}")
    total = ZERO
    for w in lam:
        total = total + w
    if total != SymNum.pos(0):
        raise ValueError("weights must be normalized (tropical sum 0)")
    for i in range(v.rows):
        terms = [v.entry(i, j) * lam[j] for j in range(v.cols)]
        for t in terms:
            _require_signed(t)
        if not hsum(terms).contains(z[i]):
            return False
    return True


def cancellative_sum(x: SymNum, y: SymNum) -> SymNum:
    """Strict-max sum that cancels opposite-signed ties to zero.

    Not associative; folding it is order-dependent, which is why the
    semiring keeps balanced numbers instead.
    """
    _require_signed(x)
    _require_signed(y)
    if x.sign is None:
        return y
    if y.sign is None:
        return x
    if x.mag > y.mag:
        return x
    if y.mag > x.mag:
        return y
    if x == y:
        return x
    return ZERO
