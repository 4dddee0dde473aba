"""Figure rendering for planar hulls.

Points are drawn through the sign-log display map: a signed magnitude m with
sign s lands at s * exp(m - span), so the tropical zero sits at the display
origin and everything beyond the span clamps to the unit box.  Hull regions
are shaded per orthant from the orthant decomposition; this path is display
only and uses floats, all exact computation stays in the core modules.
"""

from __future__ import annotations

import math
from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.collections import PolyCollection

from .semiring import NEG, POS, SymNum
from .linalg import SymMatrix
from .convexity import orthant_hull


def display_coord(x: SymNum, span: float) -> float:
    if x.sign is None:
        return 0.0
    r = math.exp(min(float(x.mag), span) - span)
    return r if x.sign == POS else -r


def _auto_span(m: SymMatrix) -> float:
    mags = [float(x.mag) for x in m._e if x.sign is not None]
    return (max(mags) if mags else 0.0) + 1.0


def _unsigned_member_float(gens, z) -> bool:
    """Float residuation test for unsigned planar membership (display only).

    Weights are residuated against z and capped at the normalization bound;
    membership needs the cap attained and the product to reproduce z.
    """
    if not gens:
        return False
    lams = []
    for g in gens:
        lam = 0.0
        for zi, gi in zip(z, g):
            if gi is None:
                continue
            if zi is None:
                lam = float("-inf")
                break
            lam = min(lam, zi - gi)
        lams.append(lam)
    if max(lams) != 0.0:
        return False
    out = [None, None]
    for g, lam in zip(gens, lams):
        if lam == float("-inf"):
            continue
        for i in range(2):
            if g[i] is None:
                continue
            v = g[i] + lam
            if out[i] is None or v > out[i]:
                out[i] = v
    eps = 1e-9
    for zi, oi in zip(z, out):
        if zi is None:
            if oi is not None:
                return False
        elif oi is None or abs(zi - oi) > eps:
            return False
    return True


def render_hull_figure(
    m: SymMatrix,
    halfspaces=None,
    span: Optional[float] = None,
    resolution: int = 160,
):
    """Figure with the generators, the shaded hull, and optional halfspace
    boundaries for a 2-dimensional point configuration."""
    if m.rows != 2:
        raise ValueError("plotting is implemented for dimension 2 only")
    span = float(span) if span is not None else _auto_span(m)
    hull = orthant_hull(m)

    cells_float = {}
    for eps, cell in hull.cells.items():
        gens = [
            tuple(float(x.mag) if x.sign is not None else None for x in c)
            for c in cell.columns()
        ]
        cells_float[eps] = gens

    fig, ax = plt.subplots(figsize=(6, 6))
    step = 2.0 / resolution
    quads = []
    for iy in range(resolution):
        for ix in range(resolution):
            ux = -1.0 + (ix + 0.5) * step
            uy = -1.0 + (iy + 0.5) * step
            z, pattern = [], []
            inside = True
            for u in (ux, uy):
                if abs(u) < 1e-12:
                    z.append(None)
                    pattern.append(0)
                else:
                    z.append(math.log(abs(u)) + span)
                    pattern.append(POS if u > 0 else NEG)
            for eps, gens in cells_float.items():
                if not gens:
                    continue
                if all(p == 0 or p == e for p, e in zip(pattern, eps)):
                    if _unsigned_member_float(gens, z):
                        break
            else:
                inside = False
            if inside:
                x0, y0 = ux - step / 2, uy - step / 2
                quads.append(
                    [(x0, y0), (x0 + step, y0), (x0 + step, y0 + step), (x0, y0 + step)]
                )
    ax.add_collection(
        PolyCollection(quads, facecolor="#9ecae1", edgecolor="none", alpha=0.75)
    )

    if halfspaces:
        _draw_halfspace_boundaries(ax, halfspaces, span, resolution)

    gx = [display_coord(c[0], span) for c in m.columns()]
    gy = [display_coord(c[1], span) for c in m.columns()]
    ax.plot(gx, gy, "o", color="#08306b", markersize=6, zorder=5)

    ax.axhline(0, color="0.6", linewidth=0.8)
    ax.axvline(0, color="0.6", linewidth=0.8)
    ax.set_xlim(-1.05, 1.05)
    ax.set_ylim(-1.05, 1.05)
    ax.set_aspect("equal")
    ax.set_xticks([])
    ax.set_yticks([])
    return fig


def _draw_halfspace_boundaries(ax, halfspaces, span: float, resolution: int):
    """Mark the sign boundary of each affine row on the display grid."""
    step = 2.0 / resolution
    for row in halfspaces:
        pts = []
        for iy in range(resolution):
            for ix in range(resolution):
                ux = -1.0 + (ix + 0.5) * step
                uy = -1.0 + (iy + 0.5) * step
                val = _row_balance_float(row, (ux, uy), span)
                if val is not None and val < 0.08:
                    pts.append((ux, uy))
        if pts:
            ax.plot(
                [p[0] for p in pts],
                [p[1] for p in pts],
                ".",
                markersize=1.2,
                color="#a63603",
                zorder=4,
            )


def _row_balance_float(row, u, span: float):
    """Relative gap between the dominant positive and negative terms of an
    affine row at a display point; near zero on the row's boundary."""
    pmax = nmax = 0.0
    terms = []
    c0 = row.coeffs[0]
    if c0.sign in (POS, NEG):
        terms.append((1 if c0.sign == POS else -1, math.exp(float(c0.mag))))
    for c, ui in zip(row.coeffs[1:], u):
        if c.sign not in (POS, NEG) or ui == 0:
            continue
        sgn = (1 if c.sign == POS else -1) * (1 if ui > 0 else -1)
        terms.append((sgn, math.exp(float(c.mag)) * abs(ui) * math.exp(span)))
    for sgn, mag in terms:
        if sgn > 0:
            pmax = max(pmax, mag)
        else:
            nmax = max(nmax, mag)
    if pmax == 0.0 and nmax == 0.0:
        return None
    return abs(pmax - nmax) / max(pmax, nmax)


def save_figure(fig, target, fmt: str = "svg"):
    fig.savefig(target, format=fmt)
    plt.close(fig)
