"""The extremal family M_k and random test instances.

M_k is made of k boxes placed along the main diagonal of the square
[0, 4k^2].  Box i (offset o = 4k(i-1)) has vertical meeting points
V_j = (o + 4j - 3, o + 4k - 4j + 3) and horizontal meeting points
H_j = (o + 4j - 1, o + 4k - 4j + 1) for j = 1..k, interleaved along an
anti-diagonal.  From every meeting point two collinear segments run to the
opposite sides of the square: up/down from V_j, left/right from H_j.  Grid
lines sit at coordinates 1 mod 4 and crossings at 3 mod 4, so no three
segments share a point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .exceptions import InvalidK
from .geometry import Representation, Segment
from .graph import IndependentSet

UP, DOWN, LEFT, RIGHT = "u", "d", "l", "r"
INTERESTING, BORING = "interesting", "boring"


@dataclass(frozen=True)
class KBox:
    index: int
    k: int
    up: tuple
    down: tuple
    left: tuple
    right: tuple
    vertical_meeting: tuple
    horizontal_meeting: tuple

    @property
    def meeting_points(self) -> tuple:
        return self.vertical_meeting + self.horizontal_meeting

    @property
    def ids(self) -> frozenset:
        return frozenset(self.up + self.down + self.left + self.right)

    def roles(self, ids) -> dict:
        """Members of *ids* in this box, grouped by role."""
        ids = set(map(str, ids))
        return {
            UP: [s for s in self.up if s in ids],
            DOWN: [s for s in self.down if s in ids],
            LEFT: [s for s in self.left if s in ids],
            RIGHT: [s for s in self.right if s in ids],
        }


@dataclass(frozen=True)
class MkInstance:
    k: int
    representation: Representation
    boxes: tuple

    @property
    def side(self) -> int:
        return 4 * self.k * self.k

    def box_of(self, seg_id: str) -> KBox:
        i = int(seg_id.split("_", 1)[0][1:])
        return self.boxes[i - 1]


def _sid(i, role, j):
    return f"b{i}_{role}{j}"


def make_mk(k: int) -> MkInstance:
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise InvalidK(f"k must be a positive integer, got {k!r}")
    side = 4 * k * k
    segs, boxes = [], []
    for i in range(1, k + 1):
        o = 4 * k * (i - 1)
        vm, hm = [], []
        for j in range(1, k + 1):
            x, y = o + 4 * j - 3, o + 4 * k - 4 * j + 3
            vm.append((x, y))
            segs.append(Segment.vertical(_sid(i, UP, j), x, y, side))
            segs.append(Segment.vertical(_sid(i, DOWN, j), x, 0, y))
        for j in range(1, k + 1):
            x, y = o + 4 * j - 1, o + 4 * k - 4 * j + 1
            hm.append((x, y))
            segs.append(Segment.horizontal(_sid(i, LEFT, j), y, 0, x))
            segs.append(Segment.horizontal(_sid(i, RIGHT, j), y, x, side))
        js = range(1, k + 1)
        boxes.append(KBox(
            i, k,
            tuple(_sid(i, UP, j) for j in js), tuple(_sid(i, DOWN, j) for j in js),
            tuple(_sid(i, LEFT, j) for j in js), tuple(_sid(i, RIGHT, j) for j in js),
            tuple(vm), tuple(hm),
        ))
    return MkInstance(k, Representation(segs), tuple(boxes))


def canonical_independent_set(inst: MkInstance) -> IndependentSet:
    """Left and up segments of box 1, right and down segments of box 2, and
    for every later box its right segments plus its topmost up segment."""
    ids = []
    for box in inst.boxes:
        if box.index == 1:
            ids += box.left + box.up
        elif box.index == 2:
            ids += box.right + box.down
        else:
            ids += box.right + box.up[:1]
    return IndependentSet(ids)


def alpha_mk(k: int) -> int:
    return k * k + 3 * k - 2


def classify_box(box: KBox, independent_set) -> str:
    r = box.roles(independent_set)
    if (r[DOWN] and r[RIGHT]) or (r[UP] and r[LEFT]):
        return INTERESTING
    return BORING


@dataclass(frozen=True)
class BoxBound:
    ok: bool
    box: int
    size: int
    limit: int
    status: str

    def __bool__(self):
        return self.ok


def verify_box_bounds(box: KBox, independent_set) -> BoxBound:
    """|B & I| <= 2k always, and <= k + 1 when B is boring for I."""
    size = len(box.ids & set(map(str, independent_set)))
    status = classify_box(box, independent_set)
    limit = 2 * box.k if status == INTERESTING else box.k + 1
    return BoxBound(size <= limit, box.index, size, limit, status)


def count_interesting(inst: MkInstance, independent_set) -> int:
    ids = set(map(str, independent_set))
    return sum(classify_box(b, ids) == INTERESTING for b in inst.boxes)


# ---------------------------------------------------------------------------
# random instances


@dataclass(frozen=True)
class RandomParams:
    """Knobs for :func:`random_representation`.

    ``lines`` is the number of distinct line coordinates per orientation,
    ``chain_rate`` the chance that a segment starts where a collinear one
    ends, ``overlap_rate`` the chance that it starts inside one.
    """

    n: int
    lines: int | None = None
    extent: int | None = None
    max_length: int | None = None
    chain_rate: float = 0.5
    overlap_rate: float = 0.1

    def resolved(self) -> RandomParams:
        lines = self.lines if self.lines is not None else max(1, int(self.n ** 0.5))
        extent = self.extent if self.extent is not None else max(16, 2 * self.n)
        max_length = self.max_length if self.max_length is not None else max(2, extent // 4)
        if self.n < 0 or lines < 1 or extent < 2 or max_length < 1:
            raise ValueError(f"invalid random parameters {self}")
        if not (0 <= self.chain_rate <= 1 and 0 <= self.overlap_rate <= 1):
            raise ValueError("rates must lie in [0, 1]")
        return RandomParams(self.n, lines, extent, max_length, self.chain_rate, self.overlap_rate)


def _draw(rng: random.Random, sid: str, p: RandomParams, coords, placed, fresh: bool) -> Segment:
    orientation = rng.choice("HV")
    c = rng.choice(coords[orientation])
    length = rng.randint(1, p.max_length)
    same = placed.get((orientation, c))
    r = rng.random()
    if not fresh and same and r < p.chain_rate:
        lo = rng.choice(same).hi
    elif not fresh and same and r < p.chain_rate + p.overlap_rate:
        host = rng.choice(same)
        lo = rng.randint(host.lo, host.hi - 1) if host.hi - host.lo > 1 else host.lo
    else:
        lo = rng.randint(0, p.extent - 1)
    return Segment(sid, orientation, c, lo, lo + length)


def _spans_hit(segs, t):
    return [s for s in segs if s.lo <= t <= s.hi]


def _creates_triple(s: Segment, placed, lines) -> bool:
    """Would adding *s* put some point on three segments?

    Assumes the placed family is already in general position, so only
    triples through *s* need checking: *s* with two collinear segments, with
    a collinear one plus an orthogonal one, or with two collinear orthogonal
    segments meeting on it.
    """
    other = "V" if s.orientation == "H" else "H"
    touching = [a for a in placed.get((s.orientation, s.line), ()) if a.lo <= s.hi and s.lo <= a.hi]
    for i, a in enumerate(touching):
        lo, hi = max(a.lo, s.lo), min(a.hi, s.hi)
        for b in touching[i + 1:]:
            if b.lo <= hi and lo <= b.hi:
                return True
        for c in lines[other]:
            if lo <= c <= hi and _spans_hit(placed[(other, c)], s.line):
                return True
    for c in lines[other]:
        if s.lo <= c <= s.hi and len(_spans_hit(placed[(other, c)], s.line)) >= 2:
            return True
    return False


def random_representation(seed, params=None, **kwargs) -> Representation:
    """Reproducible random family in general position (not necessarily favorable).

    Each segment is redrawn until it does not put a point on three segments;
    after a few failures it is drawn without reference to its line mates.
    """
    if params is None:
        params = RandomParams(**kwargs)
    elif isinstance(params, dict):
        params = RandomParams(**params)
    p = params.resolved()
    rng = random.Random(seed)
    pool = list(range(p.extent + 1))
    coords = {o: sorted(rng.sample(pool, min(p.lines, len(pool)))) for o in "HV"}
    placed: dict[tuple, list] = {}
    lines: dict[str, list] = {"H": [], "V": []}
    segs = []
    for i in range(p.n):
        for attempt in range(1000):
            s = _draw(rng, str(i), p, coords, placed, fresh=attempt >= 3)
            if not _creates_triple(s, placed, lines):
                break
        else:
            raise RuntimeError("could not reach general position; loosen the parameters")
        key = (s.orientation, s.line)
        if key not in placed:
            placed[key] = []
            lines[s.orientation].append(s.line)
        placed[key].append(s)
        segs.append(s)
    return Representation(segs)
