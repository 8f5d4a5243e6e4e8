"""Longest monotone subsequences of planar point sets.

A sequence is non-decreasing when both coordinates are non-decreasing along
it, and non-increasing when x is non-decreasing while y is non-increasing.
Every set of m distinct points has a monotone subsequence of length at least
ceil(sqrt(m)).
"""

from __future__ import annotations

import bisect
from collections.abc import Iterable
from dataclasses import dataclass

NON_DECREASING = "non_decreasing"
NON_INCREASING = "non_increasing"
DIRECTIONS = (NON_INCREASING, NON_DECREASING)


@dataclass(frozen=True)
class PointSequence:
    points: tuple
    direction: str

    def __post_init__(self):
        if self.direction not in DIRECTIONS:
            raise ValueError(f"unknown direction {self.direction!r}")
        object.__setattr__(self, "points", tuple(tuple(p) for p in self.points))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def verify_monotone(seq: PointSequence) -> bool:
    for (x1, y1), (x2, y2) in zip(seq.points, seq.points[1:]):
        if x2 < x1:
            return False
        if seq.direction == NON_DECREASING and y2 < y1:
            return False
        if seq.direction == NON_INCREASING and y2 > y1:
            return False
    return True


def _order_key(direction):
    if direction == NON_DECREASING:
        return lambda p: (p[0], p[1])
    return lambda p: (p[0], -p[1])


def longest_chain(points: Iterable, direction: str) -> list:
    """Longest non-strict chain in *direction*, in O(m log m).

    Points are sorted by x, with ties broken by y in the chain's own
    direction, so the chain is a longest non-decreasing subsequence of the
    (possibly negated) y values.  Among optimal chains the one that is
    lexicographically smallest in that order is returned.
    """
    pts = sorted(points, key=_order_key(direction))
    if not pts:
        return []
    sign = 1 if direction == NON_DECREASING else -1
    keys = [sign * p[1] for p in pts]
    # longest chain starting at each position: scan right to left on negated keys
    best_from = [0] * len(pts)
    tails: list = []
    for i in range(len(pts) - 1, -1, -1):
        z = -keys[i]
        k = bisect.bisect_right(tails, z)
        if k == len(tails):
            tails.append(z)
        else:
            tails[k] = z
        best_from[i] = k + 1
    need = len(tails)
    chain, last = [], None
    for i, p in enumerate(pts):
        if best_from[i] == need and (last is None or keys[i] >= last):
            chain.append(p)
            last = keys[i]
            need -= 1
            if need == 0:
                break
    return chain


def longest_monotone(points: Iterable) -> PointSequence:
    """Maximum-length monotone subsequence over both directions.

    Ties between directions go to the non-increasing one.  Duplicate points
    are rejected.
    """
    pts = [tuple(p) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("points must be pairwise distinct")
    dec = longest_chain(pts, NON_INCREASING)
    inc = longest_chain(pts, NON_DECREASING)
    if len(inc) > len(dec):
        return PointSequence(tuple(inc), NON_DECREASING)
    return PointSequence(tuple(dec), NON_INCREASING)
