"""Outer bounds on the capacity region of the Gaussian channel.

``outer_region_cor1`` is the closed-form bound valid for any input
correlation. ``outer_region_thm1`` evaluates the genie-aided bound for a
given correlation rho between X1 and X3 through log-determinants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .gauss_core import ChannelSnr, OUTER_LABELS, cap, mi_from_factor, outer_factor_stack
from .geometry import RateRegion, HalfPlane, hull_union

R1, R2, SUM, TWO_R1, TWO_R2 = (1, 0), (0, 1), (1, 1), (2, 1), (1, 2)

# Direction of each of the twenty bounds, in order a..t.
BOUND_DIRS = (
    R1, R1, R2,
    SUM, SUM, SUM, SUM, SUM, SUM, SUM, SUM,
    TWO_R1, TWO_R1, TWO_R1, TWO_R1, TWO_R1, TWO_R1,
    TWO_R2, TWO_R2, TWO_R2,
)
BOUND_NAMES = tuple("abcdefghijklmnopqrst")

# Bits added to each closed-form bound on top of its rho = 0 value to
# cover any input correlation.
CORRELATION_SLACK = (
    0.0, 0.5, 0.0,
    0.5, 0.5, 0.5, 0.5, 0.5, 0.0, 0.0, 0.0,
    1.0, 0.5, 1.0, 0.5, 0.5, 0.0,
    0.5, 0.5, 0.0,
)


@dataclass(frozen=True)
class OuterConfig:
    rho_grid: tuple = field(default_factory=lambda: tuple(np.linspace(-1.0, 1.0, 201)))

    def __post_init__(self):
        g = tuple(float(r) for r in self.rho_grid)
        if not g:
            raise ValueError("rho_grid is empty")
        if any(not -1.0 <= r <= 1.0 for r in g):
            raise ValueError("rho_grid must lie in [-1, 1]")
        if list(g) != sorted(g):
            raise ValueError("rho_grid must be sorted")
        object.__setattr__(self, "rho_grid", g)


def _region(values, label) -> RateRegion:
    return RateRegion([HalfPlane(d[0], d[1], b) for d, b in zip(BOUND_DIRS, values)], label)


def cor1_bounds(ch: ChannelSnr) -> list:
    """Right-hand sides of the twenty closed-form bounds, in order a..t."""
    s11, s12, s13 = ch.s11, ch.s12, ch.s13
    s21, s22, s23, s31 = ch.s21, ch.s22, ch.s23, ch.s31
    C = cap
    da = (s11 + s13 + ch.delta) / (1 + s21 + s23)
    r1_v1 = (s11 + s31) / (1 + s21)
    r1_v1vec = (s11 + s31) / (1 + s21 + s31)
    r12_v1 = s12 + (s11 + s31 * (1 + s12)) / (1 + s21)
    r12_v1vec = s12 + (s11 + s31 * (1 + s12)) / (1 + s21 + s31)
    r12_x3 = s11 + s12 + s31 * (1 + s12)
    y1_all = s11 + s12 + s13
    y2_all = s21 + s22 + s23
    y2_v2 = s21 + s23 + s22 / (1 + s12)
    y2_x1 = s22 / (1 + s12)
    y23_x3 = s21 + s22 + s31 * (1 + s22)
    y23_v2x3 = s21 + s31 + s22 * (1 + s31) / (1 + s12)
    base = [
        C(s11 + s31),
        C(s11 + s13),
        C(s22),
        C(da) + C(y2_all),
        C(s12 + da) + C(y2_v2),
        C(y1_all) + C(y2_x1),
        C(r1_v1) + C(y2_all),
        C(r12_v1) + C(y2_v2),
        C(r12_x3) + C(y2_x1),
        C(r1_v1vec) + C(y23_x3),
        C(r12_v1vec) + C(y23_v2x3),
        C(da) + C(y2_v2) + C(y1_all),
        C(da) + C(y2_v2) + C(r12_x3),
        C(r1_v1) + C(y1_all) + C(y2_v2),
        C(r1_v1) + C(r12_x3) + C(y2_v2),
        C(r1_v1vec) + C(y1_all) + C(y23_v2x3),
        C(r1_v1vec) + C(r12_x3) + C(y23_v2x3),
        C(s12 + da) + C(y2_x1) + C(y2_all),
        C(r12_v1) + C(y2_x1) + C(y2_all),
        C(r12_v1vec) + C(y2_x1) + C(y23_x3),
    ]
    return [b + s for b, s in zip(base, CORRELATION_SLACK)]


def outer_region_cor1(ch: ChannelSnr) -> RateRegion:
    return _region(cor1_bounds(ch), "outer-cor1")


_IX = {k: i for i, k in enumerate(OUTER_LABELS)}


def _ix(*names):
    return [_IX[n] for n in names]


# The sixteen distinct information terms, as (A, B, C) label tuples.
_TERMS = {
    "1a": (("X1",), ("Y1", "Y3"), ("X2", "X3")),
    "1b": (("X1", "X3"), ("Y1",), ("X2",)),
    "2c": (("X2",), ("Y2",), ("X1", "X3")),
    "y1_v1x2": (("X1", "X3"), ("Y1",), ("V1", "X2")),
    "y1_all": (("X1", "X2", "X3"), ("Y1",), ()),
    "y1_v1": (("X1", "X2", "X3"), ("Y1",), ("V1",)),
    "y2_all": (("X1", "X2", "X3"), ("Y2",), ()),
    "y2_v2": (("X1", "X2", "X3"), ("Y2",), ("V2",)),
    "y2_x1v2x3": (("X2",), ("Y2",), ("X1", "V2", "X3")),
    "y13_v1x2x3": (("X1",), ("Y1", "Y3"), ("V1", "X2", "X3")),
    "y13_v1vecx2x3": (("X1",), ("Y1", "Y3"), ("V1", "V3", "X2", "X3")),
    "y13_v1x3": (("X1", "X2"), ("Y1", "Y3"), ("V1", "X3")),
    "y13_v1vecx3": (("X1", "X2"), ("Y1", "Y3"), ("V1", "V3", "X3")),
    "y13_x3": (("X1", "X2"), ("Y1", "Y3"), ("X3",)),
    "y23_x3": (("X1", "X2"), ("Y2", "Y3"), ("X3",)),
    "y23_v2x3": (("X1", "X2"), ("Y2", "Y3"), ("V2", "X3")),
}

# Each bound a..t as a sum of terms.
THM1_TERMS = (
    ("1a",),
    ("1b",),
    ("2c",),
    ("y1_v1x2", "y2_all"),
    ("y1_v1", "y2_v2"),
    ("y1_all", "y2_x1v2x3"),
    ("y13_v1x2x3", "y2_all"),
    ("y13_v1x3", "y2_v2"),
    ("y13_x3", "y2_x1v2x3"),
    ("y13_v1vecx2x3", "y23_x3"),
    ("y13_v1vecx3", "y23_v2x3"),
    ("y1_v1x2", "y1_all", "y2_v2"),
    ("y1_v1x2", "y13_x3", "y2_v2"),
    ("y13_v1x2x3", "y1_all", "y2_v2"),
    ("y13_v1x2x3", "y13_x3", "y2_v2"),
    ("y13_v1vecx2x3", "y1_all", "y23_v2x3"),
    ("y13_v1vecx2x3", "y13_x3", "y23_v2x3"),
    ("y1_v1", "y2_x1v2x3", "y2_all"),
    ("y13_v1x3", "y2_x1v2x3", "y2_all"),
    ("y13_v1vecx3", "y2_x1v2x3", "y23_x3"),
)


def thm1_bounds_grid(ch: ChannelSnr, rhos, negate=()) -> np.ndarray:
    """Genie-aided bounds for every rho, shape (len(rhos), 20)."""
    f = outer_factor_stack(ch, rhos, negate)
    vals = {k: mi_from_factor(f, _ix(*a), _ix(*b), _ix(*c)) for k, (a, b, c) in _TERMS.items()}
    return np.stack([sum(vals[t] for t in terms) for terms in THM1_TERMS], axis=-1)


def thm1_bounds(ch: ChannelSnr, rho: float, negate=()) -> list:
    """Right-hand sides of the twenty genie-aided bounds at correlation rho."""
    return [float(v) for v in thm1_bounds_grid(ch, [rho], negate)[0]]


def outer_region_thm1(ch: ChannelSnr, rho: float) -> RateRegion:
    return _region(thm1_bounds(ch, rho), f"outer-thm1(rho={rho:g})")


def outer_region_thm1_max(ch: ChannelSnr, cfg: OuterConfig = OuterConfig()) -> RateRegion:
    """Hull of the union of the rho-dependent regions over the grid."""
    grid = thm1_bounds_grid(ch, cfg.rho_grid)
    regions = [_region(row, "") for row in grid]
    return hull_union(regions, "outer-thm1")


def _gamma_star(a1: float, a2: float) -> float:
    return 0.5 * (1 - a1 * a2) - 0.5 * math.sqrt(max(0.0, (1 - a1 * a1) * (1 - a2 * a2)))


def decorr_ratio(a1: float, a2: float, rho: float, g2: float) -> float:
    """Ratio of the correlated to the uncorrelated argument at gamma*."""
    gam = _gamma_star(a1, a2)
    num = (1 + a1 * rho) + g2 * ((1 + a1 * rho) + gam * (1 - rho * rho)) \
        + g2 * g2 * gam * (1 - rho * rho)
    den = (1 + g2 * gam) * (1 + g2 * (1 + a2 * rho))
    return num / den


def decorr_sup(a1: float, a2: float, rho: float) -> float:
    """sup over G2 >= 0 of decorr_ratio, from the stationary points.

    With f = N/D, N quadratic and D a product of two linear factors, the
    numerator of f' is quadratic, so the candidates are its nonnegative
    roots plus G2 = 0 and G2 -> infinity.
    """
    gam = _gamma_star(a1, a2)
    q = gam * (1 - rho * rho)
    n0, n1, n2 = 1 + a1 * rho, (1 + a1 * rho) + q, q
    b1, b2 = gam, 1 + a2 * rho
    s, p = b1 + b2, b1 * b2
    cands = [n0]
    if p > 0:
        cands.append(n2 / p)
    elif b2 > 0:
        cands.append(n1 / s if n2 == 0 else math.inf)
    c2, c1, c0 = n2 * s - n1 * p, 2 * (n2 - n0 * p), n1 - n0 * s
    if abs(c2) > 1e-15:
        disc = c1 * c1 - 4 * c2 * c0
        if disc >= 0:
            sq = math.sqrt(disc)
            roots = [(-c1 + sq) / (2 * c2), (-c1 - sq) / (2 * c2)]
        else:
            roots = []
    elif abs(c1) > 1e-15:
        roots = [-c0 / c1]
    else:
        roots = []
    for g in roots:
        if g >= 0 and math.isfinite(g):
            cands.append(decorr_ratio(a1, a2, rho, g))
    return max(cands)


def decorr_ratio_check(grid_density: int = 50) -> float:
    """Largest ratio over the admissible (alpha1, alpha2, rho) grid.

    The grid uses interior points of (-1, 1) for the alphas and of (0, 1)
    for rho, keeping alpha1 > alpha2 and alpha1 > -rho.
    """
    if grid_density < 10:
        raise ValueError("grid_density must be >= 10")
    alphas = np.linspace(-1, 1, grid_density + 2)[1:-1]
    rhos = np.linspace(0, 1, grid_density + 2)[1:-1]
    best = 1.0
    for rho in rhos:
        for a1 in alphas:
            if a1 <= -rho:
                continue
            for a2 in alphas:
                if a2 >= a1:
                    break
                best = max(best, decorr_sup(float(a1), float(a2), float(rho)))
    return best
