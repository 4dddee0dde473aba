"""Dense matrices and vectors over the symmetrized semiring.

Includes the tropical matrix product, per-row sign partitions, the
row-normalizing and pair-incidence matrices used by Fourier-Motzkin
elimination, balanced-column splitting, convex cancellation weights, and the
coordinate-section generators used for orthant decompositions.
"""

from __future__ import annotations

import json
from fractions import Fraction
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .semiring import BAL, NEG, POS, SymNum, ZERO, parse_symnum

SymVector = tuple  # tuple of SymNum


class SymMatrix:
    """Immutable dense matrix over the symmetrized semiring, row-major."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, rows: int, cols: int, entries: Sequence[SymNum]):
        if len(entries) != rows * cols:
            raise ValueError(
                f"need {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_e", tuple(entries))

    def __setattr__(self, name, value):
        raise AttributeError("SymMatrix is immutable")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def from_rows(rows: Iterable[Iterable[SymNum]]) -> "SymMatrix":
        rows = [tuple(r) for r in rows]
        if not rows:
            return SymMatrix(0, 0, ())
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return SymMatrix(len(rows), ncols, [x for r in rows for x in r])

    @staticmethod
    def from_columns(cols: Iterable[Iterable[SymNum]]) -> "SymMatrix":
        cols = [tuple(c) for c in cols]
        if not cols:
            return SymMatrix(0, 0, ())
        nrows = len(cols[0])
        if any(len(c) != nrows for c in cols):
            raise ValueError("ragged columns")
        return SymMatrix(nrows, len(cols), [cols[j][i] for i in range(nrows) for j in range(len(cols))])

    @staticmethod
    def identity(n: int) -> "SymMatrix":
        one = SymNum.pos(0)
        return SymMatrix(
            n, n, [one if i == j else ZERO for i in range(n) for j in range(n)]
        )

    @staticmethod
    def diagonal(values: Sequence[SymNum]) -> "SymMatrix":
        n = len(values)
        return SymMatrix(
            n, n, [values[i] if i == j else ZERO for i in range(n) for j in range(n)]
        )

    # -- access -------------------------------------------------------------

    def entry(self, i: int, j: int) -> SymNum:
        return self._e[i * self.cols + j]

    def row(self, i: int) -> SymVector:
        return self._e[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> SymVector:
        return self._e[j :: self.cols]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def row_list(self):
        return [self.row(i) for i in range(self.rows)]

    # -- reshaping -----------------------------------------------------------

    def transpose(self) -> "SymMatrix":
        return SymMatrix.from_columns(self.row_list())

    def drop_row(self, i: int) -> "SymMatrix":
        rows = [self.row(k) for k in range(self.rows) if k != i]
        return SymMatrix(self.rows - 1, self.cols, [x for r in rows for x in r])

    def with_row(self, i: int, new_row: Sequence[SymNum]) -> "SymMatrix":
        rows = self.row_list()
        rows[i] = tuple(new_row)
        return SymMatrix.from_rows(rows)

    def hstack(self, other: "SymMatrix") -> "SymMatrix":
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        return SymMatrix.from_columns(self.columns() + other.columns())

    def dedup_columns(self) -> "SymMatrix":
        seen, out = set(), []
        for c in self.columns():
            if c not in seen:
                seen.add(c)
                out.append(c)
        if not out:
            return SymMatrix(self.rows, 0, ())
        return SymMatrix.from_columns(out)

    # -- equality / text ------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return (
            self.rows == other.rows and self.cols == other.cols and self._e == other._e
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self._e))

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))

    def __repr__(self):
        return f"SymMatrix({self.rows}x{self.cols}: {self!s})"

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [str(x) for x in self._e],
        }

    @staticmethod
    def from_json(obj: dict) -> "SymMatrix":
        return SymMatrix(
            obj["rows"], obj["cols"], [parse_symnum(s) for s in obj["entries"]]
        )


def parse_matrix(text: str) -> SymMatrix:
    """Parse the text form: rows on lines (or separated by ';'),
    whitespace-separated entries in the canonical scalar grammar."""
    text = text.strip()
    if text.startswith("{"):
        return SymMatrix.from_json(json.loads(text))
    lines = [ln for chunk in text.splitlines() for ln in chunk.split(";")]
    rows = [[parse_symnum(tok) for tok in ln.split()] for ln in lines if ln.strip()]
    return SymMatrix.from_rows(rows)


def parse_vector(text: str) -> SymVector:
    return tuple(parse_symnum(tok) for tok in text.replace(";", " ").split())


def format_vector(v: SymVector) -> str:
    return " ".join(str(x) for x in v)


# -- products -----------------------------------------------------------------


def mat_mul(a: SymMatrix, b: SymMatrix) -> SymMatrix:
    """Tropical matrix product: max-sum with signs."""
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.rows}x{a.cols} times {b.rows}x{b.cols}")
    out = []
    brows = [b.row(j) for j in range(b.rows)]
    for i in range(a.rows):
        arow = a.row(i)
        for k in range(b.cols):
            acc = ZERO
            for j in range(a.cols):
                acc = acc + arow[j] * brows[j][k]
            out.append(acc)
    return SymMatrix(a.rows, b.cols, out)


def mat_vec(a: SymMatrix, x: Sequence[SymNum]) -> SymVector:
    if a.cols != len(x):
        raise ValueError("dimension mismatch")
    out = []
    for i in range(a.rows):
        acc = ZERO
        row = a.row(i)
        for j in range(a.cols):
            acc = acc + row[j] * x[j]
        out.append(acc)
    return tuple(out)


def vec_mat(y: Sequence[SymNum], a: SymMatrix) -> SymVector:
    if a.rows != len(y):
        raise ValueError("dimension mismatch")
    out = []
    for j in range(a.cols):
        acc = ZERO
        for i in range(a.rows):
            acc = acc + y[i] * a.entry(i, j)
        out.append(acc)
    return tuple(out)


def scale_vector(c: SymNum, v: Sequence[SymNum]) -> SymVector:
    return tuple(c * x for x in v)


def add_vectors(u: Sequence[SymNum], v: Sequence[SymNum]) -> SymVector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


# -- row sign structure ---------------------------------------------------------


@dataclass(frozen=True)
class SignPartition:
    """Column indices split by the sign of the entries in one row."""

    jplus: tuple
    jminus: tuple
    jbal: tuple
    jzero: tuple


def row_partition(a: SymMatrix, i: int) -> SignPartition:
    plus, minus, bal, zero = [], [], [], []
    for j, x in enumerate(a.row(i)):
        if x.sign == POS:
            plus.append(j)
        elif x.sign == NEG:
            minus.append(j)
        elif x.sign == BAL:
            bal.append(j)
        else:
            zero.append(j)
    return SignPartition(tuple(plus), tuple(minus), tuple(bal), tuple(zero))


def scale_normalize_row(a: SymMatrix, i: int):
    """Scale columns so every entry of row `i` has magnitude 0 or is zero.

    Returns (scaled matrix, the non-negative diagonal scaling).  The scaling
    is invertible, so kernel and separator feasibility are unaffected.
    """
    diag = []
    for x in a.row(i):
        if x.sign is None:
            diag.append(SymNum.pos(0))
        else:
            diag.append(SymNum.pos(-x.mag))
    s = SymMatrix.diagonal(diag)
    scaled_cols = [scale_vector(diag[j], a.column(j)) for j in range(a.cols)]
    return SymMatrix.from_columns(scaled_cols) if a.cols else SymMatrix(a.rows, 0, ()), s


def pair_incidence(a: SymMatrix, i: int) -> SymMatrix:
    """Incidence matrix pairing upper and lower constraints of row `i`.

    Requires the row to be normalized (entry magnitudes 0, or zero).  One
    column per pair in (positives+balanced) x (balanced+negatives), ordered
    lexicographically, then one identity column per zero entry.
    """
    for x in a.row(i):
        if x.sign is not None and x.mag != 0:
            raise ValueError("row is not normalized; scale it first")
    part = row_partition(a, i)
    uppers = sorted(part.jplus + part.jbal)
    lowers = sorted(part.jbal + part.jminus)
    n = a.cols
    one = SymNum.pos(0)
    cols = []
    for k in uppers:
        for ell in lowers:
            col = [ZERO] * n
            col[k] = one
            col[ell] = one
            cols.append(tuple(col))
    for j in part.jzero:
        col = [ZERO] * n
        col[j] = one
        cols.append(tuple(col))
    if not cols:
        return SymMatrix(n, 0, ())
    return SymMatrix.from_columns(cols)


def split_balanced_columns(a: SymMatrix) -> SymMatrix:
    """Replace each column containing balanced entries by its two signed
    resolutions (all balanced entries flipped to positive in one copy and to
    negative in the other); separator feasibility is preserved."""
    cols = []
    for col in a.columns():
        if any(x.sign == BAL for x in col):
            cols.append(tuple(SymNum(POS, x.mag) if x.sign == BAL else x for x in col))
            cols.append(tuple(SymNum(NEG, x.mag) if x.sign == BAL else x for x in col))
        else:
            cols.append(col)
    if not cols:
        return SymMatrix(a.rows, 0, ())
    return SymMatrix.from_columns(cols)


# -- convex cancellation ---------------------------------------------------------


def cancellation_weights(u: Sequence[SymNum], v: Sequence[SymNum], i: int):
    """Weights (w_plus, w_minus) combining columns u, v so coordinate `i`
    balances out.

    Requires u[i] strictly positive and v[i] strictly negative.  The weights
    are non-negative, their tropical sum is 0, and w_plus*u[i] + w_minus*v[i]
    is balanced; the cancellation property is validated exhaustively in the
    test suite.
    """
    ui, vi = u[i], v[i]
    if ui.sign != POS:
        raise ValueError(f"u[{i}] must be strictly positive, got {ui}")
    if vi.sign != NEG:
        raise ValueError(f"v[{i}] must be strictly negative, got {vi}")
    denom_inv = (ui.tinv() + (-vi).tinv()).tinv()
    w_plus = ui.tinv() * denom_inv
    w_minus = (-vi).tinv() * denom_inv
    return w_plus, w_minus


def convex_pair_incidence(a: SymMatrix, i: int) -> SymMatrix:
    """Like `pair_incidence` but with cancellation weights instead of zeros,
    so the resulting combinations are convex combinations of the columns.

    Requires signed entries in row `i` (no balanced)."""
    part = row_partition(a, i)
    if part.jbal:
        raise ValueError("balanced entries in the pivot row; resolve them first")
    n = a.cols
    cols = []
    for k in part.jplus:
        for ell in part.jminus:
            wp, wm = cancellation_weights(a.column(k), a.column(ell), i)
            col = [ZERO] * n
            col[k] = wp
            col[ell] = wm
            cols.append(tuple(col))
    one = SymNum.pos(0)
    for j in part.jzero:
        col = [ZERO] * n
        col[j] = one
        cols.append(tuple(col))
    if not cols:
        return SymMatrix(n, 0, ())
    return SymMatrix.from_columns(cols)


def coordinate_section(a: SymMatrix, i: int) -> SymMatrix:
    """Generators of the hull's intersection with the hyperplane {x_i = zero}.

    Convex-cancellation combinations of the columns, with balanced leftovers
    split into signed pairs and row `i` overwritten by zero.
    """
    t = convex_pair_incidence(a, i)
    combined = split_balanced_columns(mat_mul(a, t))
    zero_row = (ZERO,) * combined.cols
    return combined.with_row(i, zero_row).dedup_columns() if combined.cols else combined


def section_closure(m: SymMatrix) -> SymMatrix:
    """The input columns together with all iterated coordinate sections.

    Sections for different coordinates commute set-wise, so the chains are
    memoized on the set of eliminated rows; columns are deduplicated, making
    the result independent of elimination order.
    """
    d = m.rows
    memo = {frozenset(): m}

    def build(eliminated: frozenset) -> SymMatrix:
        if eliminated in memo:
            return memo[eliminated]
        cols, seen = [], set()
        for i in sorted(eliminated):
            prev = build(eliminated - {i})
            if prev.cols == 0:
                continue
            for c in coordinate_section(prev, i).columns():
                if c not in seen:
                    seen.add(c)
                    cols.append(c)
        out = SymMatrix.from_columns(cols) if cols else SymMatrix(d, 0, ())
        memo[eliminated] = out
        return out

    all_cols, seen = [], set()
    indices = list(range(d))
    for size in range(d + 1):
        for subset in combinations(indices, size):
            for c in build(frozenset(subset)).columns():
                if c not in seen:
                    seen.add(c)
                    all_cols.append(c)
    return SymMatrix.from_columns(all_cols) if all_cols else SymMatrix(d, 0, ())


# -- segment parametrization ------------------------------------------------------


def segment_point(p: Sequence[SymNum], q: Sequence[SymNum], eta) -> SymVector:
    """Point of the line segment from p to q at parameter eta.

    eta runs over the extended rationals; -inf gives p, +inf gives q.  The
    weight pair is (0, eta) for eta <= 0 and (-eta, 0) otherwise.
    """
    if eta == float("-inf"):
        return tuple(p)
    if eta == float("inf"):
        return tuple(q)
    eta = Fraction(eta)
    if eta <= 0:
        nu, mu = SymNum.pos(0), SymNum.pos(eta)
    else:
        nu, mu = SymNum.pos(-eta), SymNum.pos(0)
    return tuple(nu * a + mu * b for a, b in zip(p, q, strict=True))


def segment_breakpoints(p: Sequence[SymNum], q: Sequence[SymNum]):
    """Sorted parameter values where some coordinate changes regime.

    These are the per-coordinate magnitude differences plus the weight-pair
    kink at 0, bracketed by -inf and +inf.
    """
    etas = {Fraction(0)}
    for a, b in zip(p, q, strict=True):
        if a.sign is not None and b.sign is not None:
            etas.add(a.mag - b.mag)
    return [float("-inf")] + sorted(etas) + [float("inf")]
