from fractions import Fraction
from itertools import product

import pytest

from signedtrop.semiring import SymNum, ZERO, uncomp
from signedtrop.linalg import SymMatrix, mat_vec

P = SymNum.pos
N = SymNum.neg
B = SymNum.bal
Z = ZERO


def sample_grid():
    """The exhaustively checkable element grid: zero plus all three sign
    classes at magnitudes -1, 0, 1."""
    out = [Z]
    for m in (-1, 0, 1):
        out += [P(m), N(m), B(m)]
    return out


def five_grid():
    """The signed five-element grid used by the exhaustive sweeps."""
    return [Z, P(0), N(0), P(1), N(1)]


def weight_vectors(n, mags=(0, -1, -2)):
    """All normalized non-negative weight vectors over a small magnitude grid."""
    vals = [Z] + [P(m) for m in mags]
    out = []
    for combo in product(vals, repeat=n):
        if any(w == P(0) for w in combo):
            out.append(combo)
    return out


def box_selections(value):
    """All corner/zero selections from the box of a product vector."""
    choices = [uncomp(v).selections() for v in value]
    return [tuple(c) for c in product(*choices)]


def brute_member(a: SymMatrix, b, mags=(0, -1, -2, -3, -4)) -> bool:
    """Weight-grid membership oracle, independent of the certificate solvers."""
    for x in weight_vectors(a.cols, mags):
        value = mat_vec(a, x)
        if all(uncomp(v).contains(t) for v, t in zip(value, b)):
            return True
    return False


def design_grid(mats):
    """Deterministic point grid: all sign patterns over the input magnitudes,
    their midpoints, and the extremes one past the largest."""
    mags = sorted({x.mag for m in mats for x in m._e if x.sign is not None})
    if not mags:
        mags = [Fraction(0)]
    values = set(mags)
    for lo, hi in zip(mags, mags[1:]):
        values.add((lo + hi) / 2)
    values.add(max(mags) + 1)
    values.add(min(mags) - 1)
    out = [ZERO]
    for v in sorted(values):
        out.append(SymNum(1, v))
        out.append(SymNum(-1, v))
    return out


@pytest.fixture
def first_hull_matrix():
    from signedtrop.linalg import parse_matrix

    return parse_matrix("3 ~1 ~4; 3 ~0 ~2")
