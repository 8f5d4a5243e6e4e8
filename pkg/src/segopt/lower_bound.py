"""Constructive independent sets in favorable segment families.

Three constructions, each with a size guarantee in terms of the grid
statistics of the family (n segments, l_odd lines holding an odd number of
segments, s_even segments on even lines, t segments on the fullest line):

* odd:  every second segment of every line, then the larger orientation
  class; at least (n + l_odd) / 4.
* line: one fullest line plus every segment of the other orientation forms a
  bipartite family; its larger colour class has at least (n + t) / 4.
* even: a monotone cut through candidate meeting points splits the plane;
  two alternating selections on either side give at least
  n/4 + sqrt(2 s_even)/4 - l_odd/4.

:func:`best_lower_bound` keeps the largest and always reaches
n/4 + sqrt(n) / (4 sqrt 3).
"""

from __future__ import annotations

import bisect
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .exceptions import NotBipartiteError
from .geometry import (
    HORIZONTAL,
    VERTICAL,
    GridStats,
    Representation,
    Segment,
    bounding_box,
    grid_lines,
    grid_stats,
)
from .graph import IndependentSet, build_graph, format_independent_set, is_independent
from .monotone import NON_DECREASING, NON_INCREASING, PointSequence, longest_monotone
from .normalize import FavorableRepresentation, ensure_favorable

TECHNIQUES = ("odd", "line", "even")
BELOW, ON, ABOVE = "below", "on", "above"


@dataclass(frozen=True)
class Guarantee:
    """The bound ``base + coef * sqrt(radicand)`` with rational base and coef >= 0."""

    base: Fraction
    coef: Fraction = Fraction(0)
    radicand: int = 0

    def __post_init__(self):
        object.__setattr__(self, "base", Fraction(self.base))
        object.__setattr__(self, "coef", Fraction(self.coef))
        if self.coef < 0 or self.radicand < 0:
            raise ValueError("coef and radicand must be non-negative")

    @property
    def is_rational(self) -> bool:
        return self.coef == 0 or self.radicand == 0 or isqrt(self.radicand) ** 2 == self.radicand

    def __float__(self) -> float:
        return float(self.base) + float(self.coef) * self.radicand ** 0.5

    def satisfied_by(self, size: int) -> bool:
        """Exact test of ``size >= base + coef*sqrt(radicand)`` via squares."""
        d = Fraction(size) - self.base
        if d < 0:
            return False
        return d * d >= self.coef * self.coef * self.radicand

    def ceil(self) -> int:
        """Smallest integer meeting the guarantee."""
        k = int(float(self)) - 2
        while not self.satisfied_by(k):
            k += 1
        return k

    def __str__(self) -> str:
        if self.coef == 0 or self.radicand == 0:
            return str(self.base)
        r = isqrt(self.radicand)
        if r * r == self.radicand:
            return str(self.base + self.coef * r)
        return f"{self.base}+{self.coef}*sqrt({self.radicand})"


def odd_guarantee(stats: GridStats) -> Guarantee:
    return Guarantee(Fraction(stats.n + stats.l_odd, 4))


def line_guarantee(stats: GridStats) -> Guarantee:
    return Guarantee(Fraction(stats.n + stats.t, 4))


def even_guarantee(stats: GridStats) -> Guarantee:
    return Guarantee(Fraction(stats.n - stats.l_odd, 4), Fraction(1, 4), 2 * stats.s_even)


def overall_guarantee(n: int) -> Guarantee:
    """n/4 + sqrt(n)/(4 sqrt 3), written as n/4 + sqrt(3n)/12."""
    return Guarantee(Fraction(n, 4), Fraction(1, 12), 3 * n)


@dataclass
class TechniqueResult:
    technique: str
    independent_set: IndependentSet
    guarantee: Guarantee
    stats: GridStats
    details: dict = field(default_factory=dict)

    @property
    def achieved_size(self) -> int:
        return self.independent_set.size

    @property
    def guaranteed_size(self) -> Guarantee:
        return self.guarantee

    @property
    def meets_guarantee(self) -> bool:
        return self.guarantee.satisfied_by(self.achieved_size)

    def header(self) -> str:
        return f"TECHNIQUE {self.technique} achieved={self.achieved_size} guarantee={self.guarantee}"

    def to_text(self) -> str:
        return format_independent_set(self.independent_set.ids, header=self.header())


def _favorable(frep) -> Representation:
    return ensure_favorable(frep).rep


# ---------------------------------------------------------------------------
# odd technique


def _alternate(segs):
    return segs[::2]


def odd_technique(frep: FavorableRepresentation) -> TechniqueResult:
    rep = _favorable(frep)
    stats = grid_stats(rep)
    picked = {HORIZONTAL: [], VERTICAL: []}
    for gl in grid_lines(rep):
        picked[gl.orientation].extend(s.id for s in _alternate(gl.segments))
    h, v = picked[HORIZONTAL], picked[VERTICAL]
    side = HORIZONTAL if len(h) >= len(v) else VERTICAL
    return TechniqueResult(
        "odd", IndependentSet(picked[side]), odd_guarantee(stats), stats,
        {"selected": len(h) + len(v), "orientation": side},
    )


# ---------------------------------------------------------------------------
# line technique


def _fullest_line(lines, orientation):
    best = None
    for gl in lines:
        if gl.orientation == orientation and (best is None or len(gl) > len(best)):
            best = gl
    return best


def two_colouring(rep: Representation) -> list[list[str]]:
    """Bipartition of the intersection graph of *rep*, component by component.

    Each component's larger side goes into the first class.  Raises
    NotBipartiteError on an odd cycle.
    """
    g = build_graph(rep)
    adj = g.adjacency_lists()
    colour = [-1] * g.n
    first, second = [], []
    for root in range(g.n):
        if colour[root] != -1:
            continue
        colour[root] = 0
        comp = [root]
        q = deque([root])
        while q:
            v = q.popleft()
            for u in adj[v]:
                if colour[u] == -1:
                    colour[u] = 1 - colour[v]
                    comp.append(u)
                    q.append(u)
                elif colour[u] == colour[v]:
                    raise NotBipartiteError(f"odd cycle through {g.ids[u]!r} and {g.ids[v]!r}")
        a = [g.ids[v] for v in comp if colour[v] == 0]
        b = [g.ids[v] for v in comp if colour[v] == 1]
        if len(b) > len(a):
            a, b = b, a
        first.extend(a)
        second.extend(b)
    return [first, second]


def line_technique(frep: FavorableRepresentation) -> TechniqueResult:
    rep = _favorable(frep)
    stats = grid_stats(rep)
    lines = grid_lines(rep)
    g_h = _fullest_line(lines, HORIZONTAL)
    g_v = _fullest_line(lines, VERTICAL)
    s_horizontal = [s for s in rep if s.orientation == VERTICAL] + (list(g_h.segments) if g_h else [])
    s_vertical = [s for s in rep if s.orientation == HORIZONTAL] + (list(g_v.segments) if g_v else [])
    if len(s_horizontal) >= len(s_vertical):
        name, family, line = "S_horizontal", s_horizontal, g_h
    else:
        name, family, line = "S_vertical", s_vertical, g_v
    first, _ = two_colouring(Representation(family))
    details = {"family": name, "family_size": len(family)}
    if line is not None:
        details["line"] = (line.orientation, line.coordinate)
    return TechniqueResult("line", IndependentSet(first), line_guarantee(stats), stats, details)


# ---------------------------------------------------------------------------
# even technique


def candidate_points(frep: FavorableRepresentation) -> list[tuple]:
    """Meeting points that split their line into two parts of odd size.

    On a line with 2p segments these are the meeting points after the 1st,
    3rd, ..., (2p-1)th segment, so there are s_even / 2 of them in total.
    """
    rep = _favorable(frep)
    out = []
    for gl in grid_lines(rep):
        segs = gl.segments
        if len(segs) % 2:
            continue
        for i in range(0, len(segs) - 1, 2):
            out.append(segs[i].end)
    return sorted(out)


def _mirror_point(p):
    return (-p[0], p[1])


def _mirror_segment(s: Segment) -> Segment:
    if s.orientation == HORIZONTAL:
        return Segment(s.id, HORIZONTAL, s.line, -s.hi, -s.lo)
    return Segment(s.id, VERTICAL, -s.line, s.lo, s.hi)


@dataclass(frozen=True)
class Cut:
    """Monotone polyline through the cutting points, closed by two half-lines.

    Geometry is evaluated in a working frame where the cutting points form a
    non-increasing sequence and both half-lines have slope -1; for a
    non-decreasing sequence the working frame is the mirror image x -> -x.
    ``anchor`` is only used when there are no cutting points: the cut is
    then the single line of slope -1 through it.
    """

    cutting_points: PointSequence
    anchor: tuple | None = None
    _work: tuple = field(init=False, repr=False, compare=False)
    _xs: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pts = [self._to_work(p) for p in self.cutting_points.points]
        pts.sort(key=lambda p: (p[0], -p[1]))
        object.__setattr__(self, "_work", tuple(pts))
        object.__setattr__(self, "_xs", tuple(p[0] for p in pts))

    @property
    def C(self) -> int:
        return len(self.cutting_points)

    @property
    def direction(self) -> str:
        return self.cutting_points.direction

    @property
    def mirrored(self) -> bool:
        return self.direction == NON_DECREASING

    def _to_work(self, p):
        return _mirror_point(p) if self.mirrored else tuple(p)

    def y_range_work(self, x):
        """(ylo, yhi) of the cut above working-frame abscissa *x*."""
        pts, xs = self._work, self._xs
        if not pts:
            ax, ay = self.anchor
            y = ay - (x - ax)
            return (y, y)
        if x < xs[0]:
            y = pts[0][1] + (xs[0] - x)
            return (y, y)
        if x > xs[-1]:
            y = pts[-1][1] - (x - xs[-1])
            return (y, y)
        i = bisect.bisect_left(xs, x)
        j = bisect.bisect_right(xs, x)
        if i < j:
            ys = [p[1] for p in pts[i:j]]
            return (min(ys), max(ys))
        (x0, y0), (x1, y1) = pts[i - 1], pts[i]
        y = y0 + (y1 - y0) * Fraction(x - x0) / (x1 - x0)
        y = y.numerator if y.denominator == 1 else y
        return (y, y)

    def side_work(self, p) -> str:
        lo, hi = self.y_range_work(p[0])
        if p[1] < lo:
            return BELOW
        if p[1] > hi:
            return ABOVE
        return ON

    def side(self, p) -> str:
        """Classify a point of the original plane as below, on or above the cut."""
        return self.side_work(self._to_work(p))

    def polyline(self, bbox) -> list[tuple]:
        """Vertices of the cut clipped to *bbox* inflated by 1, in original coordinates."""
        xmin, ymin, xmax, ymax = bbox
        if self.mirrored:
            xmin, xmax = -xmax, -xmin
        xmin, ymin, xmax, ymax = xmin - 1, ymin - 1, xmax + 1, ymax + 1
        pts = list(self._work)
        if not pts:
            pts = [tuple(self.anchor)]
        (fx, fy), (lx, ly) = pts[0], pts[-1]
        t0 = max(0, min(fx - xmin, ymax - fy))
        t1 = max(0, min(xmax - lx, ly - ymin))
        work = [(fx - t0, fy + t0)] + pts + [(lx + t1, ly - t1)]
        if self.mirrored:
            work = [_mirror_point(p) for p in work]
        return work


def build_cut(candidates, frep: FavorableRepresentation | None = None) -> Cut:
    pts = list(candidates)
    if not pts:
        bbox = bounding_box(_favorable(frep)) if frep is not None else None
        anchor = (bbox[0], bbox[1] - 1) if bbox else (0, -1)
        return Cut(PointSequence((), NON_INCREASING), anchor)
    return Cut(longest_monotone(pts))


def _selections(rep: Representation, cut: Cut):
    """Blue and orange selections, computed in the cut's working frame."""
    work = Representation(_mirror_segment(s) for s in rep) if cut.mirrored else rep
    blue, orange = [], []
    side = cut.side_work
    for gl in grid_lines(work):
        segs = gl.segments
        if gl.orientation == VERTICAL:
            low = [s for s in segs if side(s.end) != ABOVE]
            high = [s for s in reversed(segs) if side(s.start) != BELOW]
        else:
            # blue: from the right, left endpoint on or right of the cut
            low = [s for s in reversed(segs) if side(s.start) != BELOW]
            high = [s for s in segs if side(s.end) != ABOVE]
        blue.extend(s.id for s in _alternate(low))
        orange.extend(s.id for s in _alternate(high))
    return blue, orange


def even_technique(frep: FavorableRepresentation) -> TechniqueResult:
    rep = _favorable(frep)
    stats = grid_stats(rep)
    guarantee = even_guarantee(stats)
    if stats.s_even == 0:
        base = odd_technique(FavorableRepresentation(rep))
        return TechniqueResult("even", base.independent_set, guarantee, stats, {"fallback": "odd"})
    cands = candidate_points(FavorableRepresentation(rep))
    cut = build_cut(cands, FavorableRepresentation(rep))
    blue, orange = _selections(rep, cut)
    union = len(set(blue) | set(orange))
    chosen, name = (blue, "blue") if len(blue) >= len(orange) else (orange, "orange")
    details = {
        "cut": cut,
        "candidates": len(cands),
        "C": cut.C,
        "blue": IndependentSet(blue),
        "orange": IndependentSet(orange),
        "union": union,
        "chosen": name,
    }
    return TechniqueResult("even", IndependentSet(chosen), guarantee, stats, details)


# ---------------------------------------------------------------------------


_RUNNERS = {"odd": odd_technique, "line": line_technique, "even": even_technique}


def run_technique(frep, technique: str) -> TechniqueResult:
    if technique in ("best", "all"):
        return best_lower_bound(frep)
    try:
        return _RUNNERS[technique](frep)
    except KeyError:
        raise ValueError(f"unknown technique {technique!r}") from None


def best_lower_bound(frep: FavorableRepresentation) -> TechniqueResult:
    """Run all three techniques and keep the largest set (ties: odd, line, even)."""
    frep = ensure_favorable(frep)
    results = {name: _RUNNERS[name](frep) for name in TECHNIQUES}
    winner = max(TECHNIQUES, key=lambda k: (results[k].achieved_size, -TECHNIQUES.index(k)))
    stats = results[winner].stats
    return TechniqueResult(
        "best", results[winner].independent_set, overall_guarantee(stats.n), stats,
        {"chosen": winner, "results": results},
    )


def verify_result(rep: Representation, result: TechniqueResult) -> bool:
    """Geometric certificate check plus the size guarantee."""
    return is_independent(rep, result.independent_set.ids) and result.meets_guarantee
