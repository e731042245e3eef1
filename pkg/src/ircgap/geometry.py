"""Two-user rate regions as polytopes in the nonnegative quadrant.

Every region is cut out by half-planes a1*R1 + a2*R2 <= b whose normal
belongs to a fixed family: (1,0), (0,1), (1,1), (2,1), (1,2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

FAMILIES = ((1, 0), (0, 1), (1, 1), (2, 1), (1, 2))
DEDUP_TOL = 1e-9


@dataclass(frozen=True)
class HalfPlane:
    a1: int
    a2: int
    b: float

    def __post_init__(self):
        if (self.a1, self.a2) not in FAMILIES:
            raise ValueError(f"unsupported direction ({self.a1}, {self.a2})")
        if math.isnan(self.b):
            raise ValueError("bound is NaN")

    @property
    def family(self) -> tuple:
        return (self.a1, self.a2)


class RateRegion:
    """Canonical polytope: the tightest bound per family.

    Both single-rate families are required so the region is bounded.
    """

    def __init__(self, planes: Iterable[HalfPlane], label: str = ""):
        best = {}
        for p in planes:
            if p.family not in best or p.b < best[p.family]:
                best[p.family] = p.b
        if (1, 0) not in best or (0, 1) not in best:
            raise ValueError("region needs both an R1 and an R2 bound")
        self.bounds = {f: best[f] for f in FAMILIES if f in best}
        self.label = label
        self._vertices = None

    @classmethod
    def from_bounds(cls, bounds: dict, label: str = "") -> "RateRegion":
        return cls([HalfPlane(f[0], f[1], b) for f, b in bounds.items()], label)

    @property
    def planes(self) -> list:
        return [HalfPlane(f[0], f[1], b) for f, b in self.bounds.items()]

    @property
    def is_empty(self) -> bool:
        return any(b < 0 for b in self.bounds.values())

    def __repr__(self):
        inner = ", ".join(f"{a1}R1+{a2}R2<={b:.6g}" for (a1, a2), b in self.bounds.items())
        return f"RateRegion({inner})"


def vertices(r: RateRegion) -> np.ndarray:
    """Vertices in counter-clockwise order starting at the origin."""
    if r._vertices is not None:
        return r._vertices
    if r.is_empty:
        raise ValueError("empty region has no vertices")
    lines = [(float(a1), float(a2), b) for (a1, a2), b in r.bounds.items()]
    lines += [(-1.0, 0.0, 0.0), (0.0, -1.0, 0.0)]
    pts = []
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            a = np.array([lines[i][:2], lines[j][:2]])
            det = np.linalg.det(a)
            if abs(det) < 1e-12:
                continue
            p = np.linalg.solve(a, [lines[i][2], lines[j][2]])
            pts.append(p)
    pts = [p for p in pts if contains(r, p, tol=1e-9)]
    uniq = []
    for p in pts:
        p = np.maximum(p, 0.0)
        if not any(np.max(np.abs(p - q)) <= DEDUP_TOL for q in uniq):
            uniq.append(p)
    # Boundary walk: the region is downward closed, so after the origin
    # the R1 axis comes first, then the upper-right chain, then the R2 axis.
    uniq.sort(key=lambda p: (math.atan2(p[1], p[0]) if p.any() else -1.0, -np.hypot(*p)))
    out = np.array(uniq).reshape(-1, 2)
    r._vertices = out
    return out


def contains(r: RateRegion, p: Sequence[float], tol: float = 1e-9) -> bool:
    p1, p2 = float(p[0]), float(p[1])
    if p1 < -tol or p2 < -tol:
        return False
    return all(a1 * p1 + a2 * p2 <= b + tol for (a1, a2), b in r.bounds.items())


def max_weighted(r: RateRegion, w1: float, w2: float) -> float:
    """max of w1*R1 + w2*R2 over the region."""
    v = vertices(r)
    return float(np.max(v @ np.array([w1, w2])))


def max_sum_rate(r: RateRegion) -> float:
    return max_weighted(r, 1.0, 1.0)


def hull_union(rs: Sequence[RateRegion], label: str = "") -> RateRegion:
    """Five-direction outer description of the convex hull of a union."""
    if not rs:
        raise ValueError("hull_union needs at least one region")
    bounds = {}
    for f in FAMILIES:
        bounds[f] = max(max_weighted(r, *f) for r in rs)
    return RateRegion.from_bounds(bounds, label)


def _shift_for_plane(a1: float, a2: float, b: float, p1: float, p2: float) -> float:
    """Smallest g >= 0 with a.(p - g)^+ <= b, the positive part taken per coordinate."""
    if a1 * p1 + a2 * p2 <= b:
        return 0.0
    # Breakpoints of the piecewise-linear map g -> a.(p-g)^+ are p1 and p2.
    lo, hi = sorted((p1, p2))
    g = (a1 * p1 + a2 * p2 - b) / (a1 + a2)
    if g <= lo:
        return g
    # Past the first breakpoint only the larger coordinate is still positive.
    w = a1 if p1 >= p2 else a2
    if w == 0:
        return lo
    return max(lo, hi - b / w)


def gap_per_dim(outer: RateRegion, inner: RateRegion, clip: bool = True) -> float:
    """Smallest diagonal shift g putting every outer point inside inner.

    The shifted point is (max(R1-g, 0), max(R2-g, 0)). The required
    shift is convex in the outer point, so checking vertices suffices.

    With ``clip=False`` the shifted point may leave the quadrant and only
    the inner half-planes are checked. The result is then the largest
    per-family deficit (support of outer - bound of inner) / (a1 + a2).
    """
    if inner.is_empty:
        raise ValueError("inner region is empty")
    worst = 0.0
    for p1, p2 in vertices(outer):
        for (a1, a2), b in inner.bounds.items():
            if clip:
                g = _shift_for_plane(a1, a2, b, p1, p2)
            else:
                g = (a1 * p1 + a2 * p2 - b) / (a1 + a2)
            worst = max(worst, g)
    return worst
