"""Exact series arithmetic and the constructive lift oracle.

Finite formal sums of rational-coefficient, rational-exponent monomials in a
parameter t, with the signed valuation reading off the leading term.  The
lift construction turns a hull membership witness into a matrix of series
whose classical convex combination tropicalizes back to the query point,
giving an oracle that is independent of the semiring solvers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .semiring import BAL, NEG, POS, SymNum, ZERO
from .linalg import SymMatrix, mat_vec


class PuiseuxSeries:
    """Finite term list (coefficient, exponent), exponents strictly decreasing."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        object.__setattr__(self, "terms", tuple(terms))
        last = None
        for c, e in self.terms:
            if c == 0:
                raise ValueError("zero coefficient in term list")
            if last is not None and e >= last:
                raise ValueError("exponents must strictly decrease")
            last = e

    def __setattr__(self, name, value):
        raise AttributeError("PuiseuxSeries is immutable")

    @staticmethod
    def zero() -> "PuiseuxSeries":
        return PuiseuxSeries()

    @staticmethod
    def monomial(coeff, exp) -> "PuiseuxSeries":
        c = Fraction(coeff)
        if c == 0:
            return PuiseuxSeries()
        return PuiseuxSeries(((c, Fraction(exp)),))

    @staticmethod
    def from_terms(terms) -> "PuiseuxSeries":
        acc = {}
        for c, e in terms:
            c, e = Fraction(c), Fraction(e)
            acc[e] = acc.get(e, Fraction(0)) + c
        cleaned = [(c, e) for e, c in acc.items() if c != 0]
        cleaned.sort(key=lambda t: t[1], reverse=True)
        return PuiseuxSeries(cleaned)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "PuiseuxSeries") -> "PuiseuxSeries":
        return PuiseuxSeries.from_terms(self.terms + other.terms)

    def __neg__(self) -> "PuiseuxSeries":
        return PuiseuxSeries(tuple((-c, e) for c, e in self.terms))

    def __sub__(self, other: "PuiseuxSeries") -> "PuiseuxSeries":
        return self + (-other)

    def __mul__(self, other: "PuiseuxSeries") -> "PuiseuxSeries":
        return PuiseuxSeries.from_terms(
            (c1 * c2, e1 + e2) for c1, e1 in self.terms for c2, e2 in other.terms
        )

    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*t^{e}" for c, e in self.terms)

    def __repr__(self):
        return f"PuiseuxSeries({self})"

    def to_json(self):
        return [[str(c), str(e)] for c, e in self.terms]


def p_add(f: PuiseuxSeries, g: PuiseuxSeries) -> PuiseuxSeries:
    return f + g


def p_mul(f: PuiseuxSeries, g: PuiseuxSeries) -> PuiseuxSeries:
    return f * g


def p_neg(f: PuiseuxSeries) -> PuiseuxSeries:
    return -f


def sval(f: PuiseuxSeries) -> SymNum:
    """Signed valuation: leading sign with the leading exponent as magnitude."""
    if f.is_zero:
        return ZERO
    c, e = f.terms[0]
    return SymNum(POS if c > 0 else NEG, e)


# -- lift construction -----------------------------------------------------------


def _sign_int(x: SymNum) -> int:
    return 1 if x.sign == POS else -1


@dataclass(frozen=True)
class Lift:
    """Matrix of series lifting a signed matrix entrywise."""

    entries: tuple  # rows of tuples of PuiseuxSeries

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def column(self, j: int):
        return tuple(r[j] for r in self.entries)

    def to_json(self):
        return [[s.to_json() for s in row] for row in self.entries]


def _check_lift_preconditions(a: SymMatrix, x: Sequence[SymNum], b: Sequence[SymNum]):
    if len(x) != a.cols or len(b) != a.rows:
        raise ValueError("dimension mismatch")
    for v in x:
        if v.sign not in (POS, None):
            raise ValueError(f"weights must be non-negative, got {v}")
    total = ZERO
    for v in x:
        total = total + v
    if total != SymNum.pos(0):
        raise ValueError("weights must be normalized (tropical sum 0)")
    p = mat_vec(a, x)
    for bi, pi in zip(b, p):
        if pi.sign == BAL:
            if bi.sign == BAL or (bi.sign is not None and bi.mag > pi.mag):
                raise ValueError(f"{bi} is outside the box of {pi}")
        elif bi != pi:
            raise ValueError(f"coordinate {bi} must equal the unbalanced value {pi}")


def _construct(a: SymMatrix, x: Sequence[SymNum], b: Sequence[SymNum]) -> Lift:
    d, n = a.rows, a.cols
    eps = Fraction(1, 2 ** (n + 2))
    rows = []
    for i in range(d):
        terms = [a.entry(i, j) * x[j] for j in range(n)]
        peak = ZERO
        for t in terms:
            peak = peak + t
        argmax = [
            j
            for j in range(n)
            if terms[j].sign is not None and peak.sign is not None and terms[j].mag == peak.mag
        ]
        jplus = [j for j in argmax if terms[j].sign == POS]
        jminus = [j for j in argmax if terms[j].sign == NEG]
        bi = b[i]
        if peak.sign is None:
            ell = None
        else:
            if bi.sign in (POS, NEG) and bi.mag == peak.mag:
                side = jplus if bi.sign == POS else jminus
                if not side:
                    side = jplus or jminus
            else:
                side = jplus if len(jplus) <= len(jminus) and jplus else (jminus or jplus)
            ell = min(side)
        scale = {j: (eps if (j in argmax and j != ell) else Fraction(1)) for j in range(n)}
        row = []
        correction_sum = PuiseuxSeries.zero()
        for j in range(n):
            if a.entry(i, j).sign is None or x[j].sign is None:
                contrib = PuiseuxSeries.zero()
            else:
                contrib = PuiseuxSeries.monomial(
                    scale[j] * _sign_int(a.entry(i, j)), a.entry(i, j).mag + x[j].mag
                )
            correction_sum = correction_sum + contrib
        target = (
            PuiseuxSeries.zero()
            if bi.sign is None
            else PuiseuxSeries.monomial(_sign_int(bi), bi.mag)
        )
        for j in range(n):
            base = (
                PuiseuxSeries.zero()
                if a.entry(i, j).sign is None
                else PuiseuxSeries.monomial(scale[j] * _sign_int(a.entry(i, j)), a.entry(i, j).mag)
            )
            if j == ell:
                shift = PuiseuxSeries.monomial(1, -x[ell].mag)
                base = base + shift * (target - correction_sum)
            row.append(base)
        rows.append(tuple(row))
    return Lift(tuple(rows))


def lift_construct(a: SymMatrix, x: Sequence[SymNum], b: Sequence[SymNum]) -> Lift:
    """A lift of `a` whose convex combination with weights t^x tropicalizes
    to `b`.

    Requires normalized non-negative weights and `b` inside the box of the
    weighted combination.  Each entry's valuation is checked after
    construction; the correction term is placed in the sparser sign class of
    the maximizing columns, perturbed so no leading coefficient cancels.
    """
    _check_lift_preconditions(a, x, b)
    lift = _construct(a, x, b)
    for i in range(a.rows):
        for j in range(a.cols):
            got = sval(lift.entries[i][j])
            if got != a.entry(i, j):
                raise RuntimeError(
                    f"lift entry ({i},{j}) valuates to {got}, expected {a.entry(i, j)}"
                )
    return lift


def lift_combination(lift: Lift, x: Sequence[SymNum]) -> tuple:
    """Row-wise series combination with unnormalized weights t^x."""
    out = []
    for row in lift.entries:
        acc = PuiseuxSeries.zero()
        for j, series in enumerate(row):
            if x[j].sign is None:
                continue
            acc = acc + PuiseuxSeries.monomial(1, x[j].mag) * series
        out.append(acc)
    return tuple(out)


def lift_verify(a: SymMatrix, x: Sequence[SymNum], b: Sequence[SymNum]) -> bool:
    """Check the lift oracle: construct a lift and confirm entrywise
    valuations and the valuation of the unnormalized combination.

    The combination's valuation must equal b shifted by the valuation of the
    total weight, which keeps the check division-free.
    """
    try:
        lift = _construct(a, x, b)
    except (ValueError, ZeroDivisionError):
        return False
    for i in range(a.rows):
        for j in range(a.cols):
            if sval(lift.entries[i][j]) != a.entry(i, j):
                return False
    total = PuiseuxSeries.zero()
    for v in x:
        if v.sign is not None:
            total = total + PuiseuxSeries.monomial(1, v.mag)
    weight_val = sval(total)
    combo = lift_combination(lift, x)
    for bi, series in zip(b, combo):
        if sval(series) != bi * weight_val:
            return False
    return True
