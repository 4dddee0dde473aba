"""Convex hulls over the signed tropical numbers.

Membership with certificates, line segments, halfspace queries, conversions
between generator and halfspace descriptions, and the decomposition of a hull
into unsigned hulls per closed orthant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Optional, Sequence

from .semiring import (
    BAL,
    NEG,
    POS,
    Interval,
    SymNum,
    ZERO,
    signed_key,
    uncomp,
)
from .linalg import (
    SymMatrix,
    SymVector,
    mat_vec,
    section_closure,
    segment_breakpoints,
    segment_point,
)
from .elimination import (
    AffineRow,
    Certificate,
    farkas,
    fm_step_nonstrict,
    prune_rows,
    resolve_balanced_nonstrict,
)


class NonConvexError(RuntimeError):
    """A halfspace intersection failed the sampled convexity check."""


class UnboundedError(RuntimeError):
    """A halfspace intersection extends past the candidate grid."""


def _require_signed_matrix(a: SymMatrix, what: str):
    for x in a._e:
        if x.sign == BAL:
            raise ValueError(f"{what} must have signed entries, found {x}")


def _require_signed_vector(v: Sequence[SymNum], what: str):
    for x in v:
        if x.sign == BAL:
            raise ValueError(f"{what} must be signed, found {x}")


# -- membership ---------------------------------------------------------------


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    witness: Optional[SymVector] = None
    separator: Optional[AffineRow] = None
    certificate: Optional[Certificate] = None

    def __bool__(self) -> bool:
        return self.member


def _augmented_membership_matrix(a: SymMatrix, b: Sequence[SymNum]) -> SymMatrix:
    rows = []
    for i in range(a.rows):
        rows.append(a.row(i) + (-b[i],))
    rows.append((SymNum.pos(0),) * a.cols + (SymNum.neg(0),))
    return SymMatrix.from_rows(rows)


def member(a: SymMatrix, b: Sequence[SymNum]) -> MembershipResult:
    """Decide hull membership of `b` among the columns of `a`.

    A kernel certificate yields a normalized weight witness; a separator
    certificate yields the strictly separating open halfspace for
    diagnostics.
    """
    if len(b) != a.rows:
        raise ValueError("point dimension does not match the generators")
    _require_signed_matrix(a, "generator matrix")
    _require_signed_vector(b, "query point")
    cert = farkas(_augmented_membership_matrix(a, b))
    if cert.kind == "kernel":
        t = cert.vector[-1]
        shift = t.tinv()
        witness = tuple(shift * v for v in cert.vector[:-1])
        return MembershipResult(True, witness=witness, certificate=cert)
    y = cert.vector
    halfspace = AffineRow((y[-1],) + tuple(y[:-1]), strict=True)
    return MembershipResult(False, separator=halfspace, certificate=cert)


def conic_member(a: SymMatrix, b: Sequence[SymNum]) -> bool:
    """Decide conic-hull membership: weights are unconstrained non-negatives.

    Reduced to ordinary membership by adjoining the all-zero column and a
    copy of the generators scaled far enough up to cover every weight the
    query could need at desk scale.
    """
    if len(b) != a.rows:
        raise ValueError("point dimension does not match the generators")
    _require_signed_matrix(a, "generator matrix")
    _require_signed_vector(b, "query point")
    mags = [x.mag for x in list(a._e) + list(b) if x.sign is not None]
    if not mags:
        spread = Fraction(0)
        top = Fraction(0)
    else:
        spread = max(mags) - min(mags)
        top = max(mags)
    shift = SymNum.pos(top + (a.cols + a.rows + 2) * (spread + 1) + 1)
    cols = a.columns()
    cols += [tuple(shift * x for x in c) for c in cols]
    cols.append((ZERO,) * a.rows)
    return member(SymMatrix.from_columns(cols), b).member


# -- halfspaces ------------------------------------------------------------------


def halfspace_contains(row: AffineRow, x: Sequence[SymNum]) -> bool:
    """Evaluate an affine halfspace at a signed point."""
    _require_signed_vector(x, "query point")
    return row.satisfied_by(x)


# -- line segments ------------------------------------------------------------------


@dataclass(frozen=True)
class SegmentPiece:
    eta: object  # Fraction or +-inf
    vertex: Optional[SymVector] = None
    box: Optional[tuple] = None  # tuple of Interval

    def points(self):
        if self.vertex is not None:
            return [self.vertex]
        choices = [iv.selections() for iv in self.box]
        return [tuple(c) for c in iproduct(*choices)]

    def to_json(self) -> dict:
        eta = str(self.eta) if self.eta not in (float("-inf"), float("inf")) else (
            "-inf" if self.eta == float("-inf") else "inf"
        )
        if self.vertex is not None:
            return {"eta": eta, "vertex": [str(x) for x in self.vertex]}
        return {"eta": eta, "box": [[str(iv.lo), str(iv.hi)] for iv in self.box]}


@dataclass(frozen=True)
class SegmentDescription:
    endpoints: tuple
    pieces: tuple

    def to_json(self) -> dict:
        return {
            "endpoints": [[str(x) for x in p] for p in self.endpoints],
            "pieces": [p.to_json() for p in self.pieces],
        }


def segment(p: Sequence[SymNum], q: Sequence[SymNum]) -> SegmentDescription:
    """Piecewise description of the segment between two signed points.

    Sweeps the parameter over its breakpoints, emitting a vertex where the
    combination stays signed and the full incomparability box where some
    coordinate balances.  Consecutive duplicates are collapsed.
    """
    p, q = tuple(p), tuple(q)
    _require_signed_vector(p, "endpoint")
    _require_signed_vector(q, "endpoint")
    if len(p) != len(q):
        raise ValueError("endpoint dimensions differ")
    pieces = []
    for eta in segment_breakpoints(p, q):
        value = segment_point(p, q, eta)
        if any(x.sign == BAL for x in value):
            piece = SegmentPiece(eta, box=tuple(uncomp(x) for x in value))
        else:
            piece = SegmentPiece(eta, vertex=value)
        if pieces:
            last = pieces[-1]
            if last.vertex == piece.vertex and last.box == piece.box:
                continue
        pieces.append(piece)
    return SegmentDescription(endpoints=(p, q), pieces=tuple(pieces))


def sample_segment(p, q) -> list:
    """Exact hull points covering every combinatorial position on the segment."""
    out, seen = [], set()
    for piece in segment(p, q).pieces:
        for pt in piece.points():
            if pt not in seen:
                seen.add(pt)
                out.append(pt)
    return out


# -- hull sampling ----------------------------------------------------------------


def _weight_grid(v: SymMatrix, extra=()) -> list:
    mags = sorted({x.mag for x in v._e if x.sign is not None})
    diffs = {Fraction(0)}
    for i, m in enumerate(mags):
        for m2 in mags[i + 1 :]:
            diffs.add(m - m2)
    diffs |= {Fraction(d) for d in extra}
    if mags:
        diffs.add(min(mags) - max(mags) - 1)
    weights = {ZERO} | {SymNum.pos(-abs(d)) for d in diffs}
    return sorted(weights, key=lambda w: (w.sign is None, w.mag if w.sign else 0))


def sample_hull_points(v: SymMatrix, extra_weights=()) -> list:
    """A deterministic finite sample of exact hull points of the columns of v.

    Enumerates normalized weight vectors over the breakpoint grid and every
    selection from the resulting incomparability boxes.
    """
    grid = _weight_grid(v, extra_weights)
    zero_w = SymNum.pos(0)
    pts, seen = [], set()
    for combo in iproduct(grid, repeat=v.cols):
        if zero_w not in combo:
            continue
        value = mat_vec(v, combo)
        choices = [uncomp(x).selections() if x.sign == BAL else [x] for x in value]
        for sel in iproduct(*choices):
            if sel not in seen:
                seen.add(sel)
                pts.append(sel)
    return pts


# -- generator description -> halfspace description ------------------------------------


def _inner_hull_system(v: SymMatrix) -> list:
    """The affine inequality system tying hull weights to hull points, over
    the variables (weights..., coordinates...)."""
    d, n = v.rows, v.cols
    nvars = n + d
    zero_row = [ZERO] * (nvars + 1)
    rows = []
    one, mone = SymNum.pos(0), SymNum.neg(0)
    for i in range(d):
        row = list(zero_row)
        for j in range(n):
            row[1 + j] = v.entry(i, j)
        row[1 + n + i] = mone
        rows.append(AffineRow(tuple(row)))
    for i in range(d):
        row = list(zero_row)
        for j in range(n):
            row[1 + j] = -v.entry(i, j)
        row[1 + n + i] = one
        rows.append(AffineRow(tuple(row)))
    row = list(zero_row)
    row[0] = mone
    for j in range(n):
        row[1 + j] = one
    rows.append(AffineRow(tuple(row)))
    row = list(zero_row)
    row[0] = one
    for j in range(n):
        row[1 + j] = mone
    rows.append(AffineRow(tuple(row)))
    for j in range(n):
        row = list(zero_row)
        row[1 + j] = one
        rows.append(AffineRow(tuple(row)))
    return rows


def _joint_samples(v: SymMatrix) -> list:
    """Exact points (weights..., coordinates...) of the lifted hull set."""
    grid = _weight_grid(v)
    zero_w = SymNum.pos(0)
    pts, seen = [], set()
    for combo in iproduct(grid, repeat=v.cols):
        if zero_w not in combo:
            continue
        value = mat_vec(v, combo)
        choices = [uncomp(x).selections() if x.sign == BAL else [x] for x in value]
        for sel in iproduct(*choices):
            joint = combo + sel
            if joint not in seen:
                seen.add(joint)
                pts.append(joint)
    return pts


def vrep_to_hrep(v: SymMatrix) -> list:
    """Closed-halfspace description of the hull of the columns of v.

    Instantiates the weight/point system, eliminates the weight variables one
    at a time, and resolves any balanced coefficients against exact samples
    of the current projection after every step.  All output rows are signed
    and every hull point satisfies all of them.
    """
    _require_signed_matrix(v, "generator matrix")
    if v.cols == 0:
        raise ValueError("need at least one generator")
    rows = _inner_hull_system(v)
    samples = _joint_samples(v)
    n = v.cols
    for var in range(n, 0, -1):
        samples_m = SymMatrix.from_columns(samples)
        resolved = []
        for r in rows:
            if any(c.sign == BAL for c in r.coeffs):
                r = resolve_balanced_nonstrict(r, samples_m)
            resolved.append(r)
        rows = fm_step_nonstrict(prune_rows(resolved), var)
        samples = [p[:var - 1] + p[var:] for p in samples]
        uniq, seen = [], set()
        for p in samples:
            if p not in seen:
                seen.add(p)
                uniq.append(p)
        samples = uniq
    samples_m = SymMatrix.from_columns(samples)
    final = []
    for r in rows:
        if any(c.sign == BAL for c in r.coeffs):
            r = resolve_balanced_nonstrict(r, samples_m)
        final.append(r)
    return prune_rows(final)


# -- halfspace description -> generator description ------------------------------------


def _candidate_magnitudes(rows: Sequence[AffineRow]):
    mags = sorted({c.mag for r in rows for c in r.coeffs if c.sign is not None})
    out = set(mags) | {Fraction(0)}
    for i, m in enumerate(mags):
        for m2 in mags:
            out.add(m - m2)
    return sorted(out)


def _satisfies_all(rows, x) -> bool:
    return all(r.satisfied_by(x) for r in rows)


def hrep_to_vrep(rows: Sequence[AffineRow]) -> SymMatrix:
    """Generators for a convex intersection of closed halfspaces (dim <= 3).

    Candidate extreme points are enumerated per closed orthant from the
    breakpoint grid of the row coefficients, filtered by the system, pruned
    to hull generators, and checked for convexity by sampling pairwise
    segments; a non-convex intersection or an intersection escaping the grid
    is an error.
    """
    rows = list(rows)
    if not rows:
        raise UnboundedError("empty system describes the whole space")
    d = rows[0].dim
    if d > 3:
        raise ValueError("generator enumeration is desk-scale only (dim <= 3)")
    if any(r.dim != d for r in rows):
        raise ValueError("inconsistent row dimensions")
    for r in rows:
        if r.strict:
            raise ValueError("only non-strict systems have generator descriptions")
        for c in r.coeffs:
            if c.sign == BAL:
                raise ValueError("resolve balanced coefficients before enumeration")
    mags = _candidate_magnitudes(rows)
    escape = max(mags) + 1 if mags else Fraction(1)
    axis = [ZERO] + [SymNum(s, m) for m in mags for s in (POS, NEG)]
    probe_axis = axis + [SymNum(s, escape) for s in (POS, NEG)]
    for x in iproduct(probe_axis, repeat=d):
        if any(v.sign is not None and v.mag == escape for v in x) and _satisfies_all(rows, x):
            raise UnboundedError(f"intersection extends past the candidate grid at {x}")
    kept = [tuple(x) for x in iproduct(axis, repeat=d) if _satisfies_all(rows, x)]
    if not kept:
        return SymMatrix(d, 0, ())
    generators = _prune_generators(kept, d)
    for p in generators:
        for q in generators:
            for s in sample_segment(p, q):
                if not _satisfies_all(rows, s):
                    raise NonConvexError(
                        f"segment point {s} between {p} and {q} leaves the intersection"
                    )
    return SymMatrix.from_columns(generators)


def _orthants_of(x: SymVector):
    choices = [
        [x_i.sign] if x_i.sign in (POS, NEG) else [POS, NEG] for x_i in x
    ]
    return [tuple(c) for c in iproduct(*choices)]


def _prune_generators(points: list, d: int) -> list:
    by_orthant = {}
    for p in points:
        for eps in _orthants_of(p):
            by_orthant.setdefault(eps, []).append(p)
    kept = set()
    for eps, pts in sorted(by_orthant.items()):
        pts = sorted(set(pts), key=lambda p: [signed_key(x) for x in p])
        live = list(pts)
        for p in list(pts):
            rest = [q for q in live if q != p]
            if rest and member(SymMatrix.from_columns(rest), p).member:
                live = rest
        kept.update(live)
    ordered = sorted(kept, key=lambda p: [signed_key(x) for x in p])
    live = list(ordered)
    for p in ordered:
        rest = [q for q in live if q != p]
        if rest and member(SymMatrix.from_columns(rest), p).member:
            live = rest
    return live


# -- orthant decomposition ---------------------------------------------------------


@dataclass(frozen=True)
class OrthantHull:
    """Per-closed-orthant unsigned generator sets whose union of hulls is the
    signed hull of the original columns."""

    dim: int
    cells: dict = field(default_factory=dict)  # sign pattern -> SymMatrix (unsigned)

    def signed_generators(self, eps) -> SymMatrix:
        cell = self.cells.get(tuple(eps))
        if cell is None or cell.cols == 0:
            return SymMatrix(self.dim, 0, ())
        cols = []
        for c in cell.columns():
            cols.append(
                tuple(SymNum(e, x.mag) if x.sign is not None else x for e, x in zip(eps, c))
            )
        return SymMatrix.from_columns(cols)

    def contains(self, z: Sequence[SymNum]) -> bool:
        z = tuple(z)
        _require_signed_vector(z, "query point")
        unsigned = tuple(x.tabs() for x in z)
        for eps in _orthants_of(z):
            cell = self.cells.get(eps)
            if cell is not None and cell.cols and member(cell, unsigned).member:
                return True
        return False

    def to_json(self) -> dict:
        out = {}
        for eps, cell in sorted(self.cells.items()):
            key = "".join("+" if e == POS else "-" for e in eps)
            out[key] = [[str(x) for x in c] for c in cell.columns()]
        return {"dim": self.dim, "cells": out}


def orthant_hull(m: SymMatrix) -> OrthantHull:
    """Decompose the hull into unsigned hulls, one per closed orthant.

    Augments the columns with every iterated coordinate section, then assigns
    each column to the closed orthants containing it, stripped of signs.
    """
    _require_signed_matrix(m, "generator matrix")
    closure = section_closure(m)
    d = m.rows
    cells = {}
    for eps in iproduct((POS, NEG), repeat=d):
        cols = []
        for c in closure.columns():
            if all(x.sign is None or x.sign == e for x, e in zip(c, eps)):
                cols.append(tuple(x.tabs() for x in c))
        dedup, seen = [], set()
        for c in cols:
            if c not in seen:
                seen.add(c)
                dedup.append(c)
        cells[eps] = (
            SymMatrix.from_columns(dedup) if dedup else SymMatrix(d, 0, ())
        )
    return OrthantHull(dim=d, cells=cells)
