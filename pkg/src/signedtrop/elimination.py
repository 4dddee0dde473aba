"""Fourier-Motzkin elimination and Farkas certificates.

Strict elimination projects the open separator cone one coordinate at a time;
non-strict elimination does the same for affine inequality systems.  The
solvers return verified witnesses: either a non-negative kernel element or a
separator, never both and never neither.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Optional, Sequence

from .semiring import (
    BAL,
    NEG,
    POS,
    SymNum,
    ZERO,
    parse_symnum,
    signed_key,
    signed_max,
    signed_min,
    teq,
    uncomp,
)
from .linalg import (
    SymMatrix,
    SymVector,
    mat_mul,
    mat_vec,
    pair_incidence,
    scale_normalize_row,
    segment_breakpoints,
    segment_point,
    split_balanced_columns,
    vec_mat,
)


class ResolutionError(RuntimeError):
    """No validated signed replacement for a balanced coefficient was found."""


# -- certificates -------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """Kernel witness (non-negative x with balanced product) or separator
    witness (signed y with strictly positive product)."""

    kind: str  # "kernel" | "separator"
    vector: SymVector
    check: SymVector  # the verified product, echoed for audit

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "vector": [str(x) for x in self.vector],
            "check": [str(x) for x in self.check],
        }


def verify_kernel(a: SymMatrix, x: Sequence[SymNum]) -> bool:
    if len(x) != a.cols:
        return False
    if not all(v.sign in (POS, None) for v in x):
        return False
    if all(v.sign is None for v in x):
        return False
    return all(v.sign in (BAL, None) for v in mat_vec(a, x))


def verify_separator(a: SymMatrix, y: Sequence[SymNum]) -> bool:
    if len(y) != a.rows:
        return False
    if not all(v.is_signed for v in y):
        return False
    return all(v.sign == POS for v in vec_mat(y, a))


# -- strict elimination ----------------------------------------------------------


def fm_step_strict(a: SymMatrix, i: int) -> SymMatrix:
    """Eliminate coordinate `i` from the separator system of `a`.

    Separator feasibility of the result equals feasibility of `a` projected
    along coordinate `i`; balanced leftovers are split into signed columns.
    """
    scaled, s = scale_normalize_row(a, i)
    t = pair_incidence(scaled, i)
    return split_balanced_columns(mat_mul(mat_mul(a.drop_row(i), s), t))


def _pick_strictly_between(alpha: Optional[SymNum], beta: Optional[SymNum]) -> SymNum:
    """Deterministic signed value strictly between the bounds (absent = open).

    Magnitude midpoints between same-sign bounds, unit steps past one-sided
    bounds, the tropical zero between a negative and a positive bound.
    """
    if alpha is None and beta is None:
        return SymNum.pos(0)
    if alpha is None:
        if beta.sign == POS:
            return ZERO
        if beta.sign == NEG:
            return SymNum.neg(beta.mag + 1)
        return SymNum.neg(0)  # beta is zero
    if beta is None:
        if alpha.sign == POS:
            return SymNum.pos(alpha.mag + 1)
        if alpha.sign == NEG:
            return ZERO
        return SymNum.pos(0)  # alpha is zero
    if signed_key(alpha) >= signed_key(beta):
        raise ValueError(f"empty open interval ({alpha}, {beta})")
    if alpha.sign == NEG and beta.sign == POS:
        return ZERO
    if alpha.sign == NEG and beta.sign is None:
        return SymNum.neg(alpha.mag - 1)
    if alpha.sign is None and beta.sign == POS:
        return SymNum.pos(beta.mag - 1)
    # same strict sign on both sides: exact magnitude midpoint
    return SymNum(alpha.sign, (alpha.mag + beta.mag) / 2)


def _extend_separator(a: SymMatrix, i: int, partial: SymVector) -> SymNum:
    """Back-substitute coordinate `i` given a separator of the eliminated
    system (coordinates of `a` other than `i`, in order)."""
    scaled, _ = scale_normalize_row(a, i)
    rest = scaled.drop_row(i)
    c = vec_mat(partial, rest) if rest.rows else (ZERO,) * a.cols
    lowers, uppers = [], []
    for j, pivot in enumerate(scaled.row(i)):
        if pivot.sign is None:
            continue
        cj = c[j]
        if pivot.sign in (POS, BAL):
            bound = -cj
            lowers.append(bound.tabs() if bound.sign == BAL else bound)
        if pivot.sign in (NEG, BAL):
            uppers.append(SymNum(NEG, cj.mag) if cj.sign == BAL else cj)
    alpha = signed_max(lowers) if lowers else None
    beta = signed_min(uppers) if uppers else None
    return _pick_strictly_between(alpha, beta)


def sep_solve(a: SymMatrix) -> Optional[SymVector]:
    """A signed vector whose product with every column is strictly positive,
    or None when none exists.

    Eliminates the highest coordinate first, decides the one-row base case,
    then back-substitutes a value strictly between the induced bounds.
    """
    if a.rows == 0:
        return () if a.cols == 0 else None
    if a.rows == 1:
        entries = a.row(0)
        if all(x.sign == POS for x in entries):
            return (SymNum.pos(0),)
        if entries and all(x.sign == NEG for x in entries):
            return (SymNum.neg(0),)
        return None
    i = a.rows - 1
    partial = sep_solve(fm_step_strict(a, i))
    if partial is None:
        return None
    return partial + (_extend_separator(a, i, partial),)


# -- kernel construction -----------------------------------------------------------


def _normalize_kernel(x: Sequence[SymNum]) -> SymVector:
    top = signed_max([v for v in x if v.sign is not None])
    shift = top.tinv()
    return tuple(shift * v for v in x)


def nnker_solve(a: SymMatrix) -> Optional[SymVector]:
    """A non-negative nonzero vector sent to a balanced-or-zero vector, or
    None when none exists.

    Built recursively through the elimination incidence matrices; the base
    case selects a balanced-or-zero entry or scales an opposite-sign pair to
    a magnitude tie.
    """
    if a.rows == 0:
        if a.cols == 0:
            return None
        return (SymNum.pos(0),) * a.cols
    if a.rows == 1:
        entries = a.row(0)
        for j, x in enumerate(entries):
            if x.sign in (BAL, None):
                out = [ZERO] * a.cols
                out[j] = SymNum.pos(0)
                return tuple(out)
        jp = next((j for j, x in enumerate(entries) if x.sign == POS), None)
        jn = next((j for j, x in enumerate(entries) if x.sign == NEG), None)
        if jp is None or jn is None:
            return None
        out = [ZERO] * a.cols
        out[jp] = SymNum.pos(-entries[jp].mag)
        out[jn] = SymNum.pos(-entries[jn].mag)
        return _normalize_kernel(out)
    i = a.rows - 1
    scaled, s = scale_normalize_row(a, i)
    t = pair_incidence(scaled, i)
    z = nnker_solve(mat_mul(scaled.drop_row(i), t))
    if z is None:
        return None
    tz = mat_vec(t, z)
    x = tuple(s.entry(j, j) * tz[j] for j in range(a.cols))
    return _normalize_kernel(x)


def farkas(a: SymMatrix) -> Certificate:
    """Exactly one verified certificate: a kernel witness or a separator."""
    x = nnker_solve(a)
    if x is not None:
        if not verify_kernel(a, x):
            raise RuntimeError(f"kernel witness failed verification for\n{a}")
        return Certificate("kernel", x, mat_vec(a, x))
    y = sep_solve(a)
    if y is None:
        raise RuntimeError(f"neither certificate found for\n{a}")
    if not verify_separator(a, y):
        raise RuntimeError(f"separator witness failed verification for\n{a}")
    return Certificate("separator", y, vec_mat(y, a))


# -- affine rows and non-strict elimination ------------------------------------------


@dataclass(frozen=True)
class AffineRow:
    """One affine inequality: coefficient 0 is the constant slot.

    Non-strict rows require the evaluation to be positive, balanced or zero;
    strict rows require it to be strictly positive.
    """

    coeffs: SymVector
    strict: bool = False

    @property
    def dim(self) -> int:
        return len(self.coeffs) - 1

    def eval_at(self, x: Sequence[SymNum]) -> SymNum:
        if len(x) != self.dim:
            raise ValueError("dimension mismatch")
        acc = self.coeffs[0]
        for c, v in zip(self.coeffs[1:], x):
            acc = acc + c * v
        return acc

    def satisfied_by(self, x: Sequence[SymNum]) -> bool:
        v = self.eval_at(x)
        if self.strict:
            return v.sign == POS
        return v.sign != NEG

    def scale(self, c: SymNum) -> "AffineRow":
        return AffineRow(tuple(c * v for v in self.coeffs), self.strict)

    def drop_coeff(self, i: int) -> "AffineRow":
        return AffineRow(self.coeffs[:i] + self.coeffs[i + 1 :], self.strict)

    def is_tautology(self) -> bool:
        if self.strict:
            return False
        if any(c.sign is not None for c in self.coeffs[1:]):
            return False
        return self.coeffs[0].sign != NEG

    def __str__(self):
        body = " ".join(str(c) for c in self.coeffs)
        return f"{body} {'>' if self.strict else '>='}"

    @staticmethod
    def parse(text: str) -> "AffineRow":
        toks = text.split()
        strict = False
        if toks and toks[-1] in (">", ">="):
            strict = toks.pop() == ">"
        return AffineRow(tuple(parse_symnum(t) for t in toks), strict)

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs], "strict": self.strict}

    @staticmethod
    def from_json(obj: dict) -> "AffineRow":
        return AffineRow(tuple(parse_symnum(s) for s in obj["coeffs"]), obj["strict"])


def parse_halfspace_system(text: str) -> list:
    text = text.strip()
    if text.startswith("["):
        import json

        return [AffineRow.from_json(o) for o in json.loads(text)]
    lines = [ln for chunk in text.splitlines() for ln in chunk.split(";")]
    return [AffineRow.parse(ln) for ln in lines if ln.strip()]


def prune_rows(rows: Sequence[AffineRow]) -> list:
    """Drop tautologies and exact duplicates, preserving order."""
    out, seen = [], set()
    for r in rows:
        if r.is_tautology():
            continue
        key = (r.coeffs, r.strict)
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


def fm_step_nonstrict(rows: Sequence[AffineRow], i: int) -> list:
    """Eliminate variable `i` (1-based coefficient index) from a non-strict
    system with signed coefficients.

    Solutions of the output are exactly the projections of solutions of the
    input.  Balanced coefficients in the input are an error (resolve them
    first); the output may contain balanced coefficients.
    """
    if i < 1:
        raise ValueError("the constant slot cannot be eliminated")
    for r in rows:
        if r.strict:
            raise ValueError("non-strict elimination on a strict row")
        for k, c in enumerate(r.coeffs):
            if c.sign == BAL:
                raise ValueError(
                    f"balanced coefficient at position {k} in row '{r}'; resolve it first"
                )
    plus, minus, zero = [], [], []
    for r in rows:
        c = r.coeffs[i]
        if c.sign == POS:
            plus.append(r.scale(SymNum.pos(-c.mag)))
        elif c.sign == NEG:
            minus.append(r.scale(SymNum.pos(-c.mag)))
        else:
            zero.append(r)
    out = []
    for rp in plus:
        for rn in minus:
            combined = tuple(x + y for x, y in zip(rp.coeffs, rn.coeffs))
            out.append(AffineRow(combined, False).drop_coeff(i))
    out.extend(r.drop_coeff(i) for r in zero)
    return prune_rows(out)


# -- resolving balanced coefficients in non-strict rows --------------------------------


def _sample_segment_points(p: SymVector, q: SymVector) -> list:
    """Exact hull points along the segment between two signed points:
    breakpoint images with every balanced coordinate selected at both
    endpoints of its interval and at zero."""
    pts = []
    for eta in segment_breakpoints(p, q):
        base = segment_point(p, q, eta)
        choices = [
            uncomp(x).selections() if x.sign == BAL else [x] for x in base
        ]
        for combo in iproduct(*choices):
            pts.append(tuple(combo))
    return pts


def _max_lambda_for(w: SymNum, v: SymNum, m: Fraction) -> SymNum:
    """Largest weight in [neg(m), pos(m)] keeping w + weight*v non-negative,
    for strictly negative v."""
    if w.sign == BAL:
        w = w.tabs()
    if w.sign is None:
        return ZERO
    if w.sign == POS:
        return SymNum.pos(min(m, w.mag - v.mag))
    # w negative: the weight must over-cancel it
    need = w.mag - v.mag
    if need > m:
        raise ResolutionError("sample point violates the row being resolved")
    return SymNum.neg(need)


def _min_lambda_for(w: SymNum, v: SymNum, m: Fraction) -> SymNum:
    """Smallest weight in [neg(m), pos(m)] keeping w + weight*v non-negative,
    for strictly positive v."""
    if w.sign == BAL:
        w = w.tabs()
    if w.sign is None:
        return ZERO
    if w.sign == POS:
        return SymNum.neg(min(m, w.mag - v.mag))
    need = w.mag - v.mag
    if need > m:
        raise ResolutionError("sample point violates the row being resolved")
    return SymNum.pos(need)


def _resolve_one(row: AffineRow, i: int, points: Sequence[SymVector]) -> AffineRow:
    ci = row.coeffs[i]
    if i == 0:
        b = ci.tabs()
    else:
        m = ci.mag
        lower = None  # best bound from points with positive coordinate i
        upper = None  # best bound from points with negative coordinate i
        for p in points:
            v = p[i - 1]
            if v.sign is None:
                continue
            acc = row.coeffs[0]
            for k, c in enumerate(row.coeffs[1:]):
                if k != i - 1:
                    acc = acc + c * p[k]
            if v.sign == NEG:
                lam = _max_lambda_for(acc, v, m)
                upper = lam if upper is None else signed_min([upper, lam])
            else:
                lam = _min_lambda_for(acc, v, m)
                lower = lam if lower is None else signed_max([lower, lam])
        lo = lower if lower is not None else SymNum.neg(m)
        hi = upper if upper is not None else SymNum.pos(m)
        if signed_key(lo) > signed_key(hi):
            raise ResolutionError(
                f"no admissible signed replacement for coefficient {i} of '{row}'"
            )
        if signed_key(lo) <= signed_key(ZERO) <= signed_key(hi):
            b = ZERO
        elif signed_key(lo) > signed_key(ZERO):
            b = lo
        else:
            b = hi
    return AffineRow(row.coeffs[:i] + (b,) + row.coeffs[i + 1 :], row.strict)


def resolve_balanced_nonstrict(row: AffineRow, generators: SymMatrix) -> AffineRow:
    """Replace every balanced coefficient of a non-strict row by a signed one
    that still holds on the convex set spanned by `generators`.

    Replacement values come from weight extremization over the generators and
    their pairwise segment samples; the result is re-validated against all
    samples and a failure is a hard error, never a silent weakening.
    """
    if row.strict:
        raise ValueError("strict rows are resolved by column splitting instead")
    pts = list(generators.columns())
    for a in generators.columns():
        for b in generators.columns():
            pts.extend(_sample_segment_points(a, b))
    seen, sample = set(), []
    for p in pts:
        if p not in seen:
            seen.add(p)
            sample.append(p)
    bad = [p for p in sample if not row.satisfied_by(p)]
    if bad:
        raise ResolutionError(
            f"sample point {bad[0]} violates '{row}'; the set is not inside the halfspace"
        )
    out = row
    for i in range(len(row.coeffs)):
        if out.coeffs[i].sign == BAL:
            out = _resolve_one(out, i, sample)
    for p in sample:
        if not out.satisfied_by(p):
            raise ResolutionError(
                f"resolved row '{out}' excludes sample point {p}; refusing to weaken"
            )
    return out


# -- experimental brute-force checker ------------------------------------------------


def seq_system_solve_bruteforce(
    a: SymMatrix, b: Sequence[SymNum], extra_mags: Sequence = ()
) -> Optional[SymVector]:
    """EXPERIMENTAL: search a finite sign-magnitude grid for a signed x with
    every coordinate of the product below-or-balancing the target (entrywise
    b teq A*x).

    No reduction of this system form to kernel feasibility is known; this is
    a desk-scale exhaustive check over the input's magnitude breakpoints,
    nothing more.
    """
    mags = {Fraction(0)}
    for x in list(a._e) + list(b):
        if x.sign is not None:
            mags.add(x.mag)
    for m in sorted(mags):
        mags = mags | {m + 1, m - 1}
    mags |= {Fraction(m) for m in extra_mags}
    values = [ZERO] + [SymNum(s, m) for m in sorted(mags) for s in (POS, NEG)]
    for x in iproduct(values, repeat=a.cols):
        prod = mat_vec(a, x)
        if all(teq(bi, pi) for bi, pi in zip(b, prod)):
            return tuple(x)
    return None
