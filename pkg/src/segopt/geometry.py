"""Exact-arithmetic primitives for families of axis-parallel segments.

Coordinates are rationals kept in canonical form: a plain ``int`` when the
value is integral and a reduced :class:`fractions.Fraction` otherwise.  Both
types compare and combine exactly, and integer-only instances stay fast.
"""

from __future__ import annotations

import bisect
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Union

from .exceptions import DegenerateSegmentError, DuplicateIdError, OverlapError, ParseError, UnknownIdError

Coord = Union[int, Fraction]
Point = tuple  # (x, y) pair of Coord

HORIZONTAL = "H"
VERTICAL = "V"
ORIENTATIONS = (HORIZONTAL, VERTICAL)


def as_coord(value) -> Coord:
    """Convert *value* to a canonical exact coordinate.

    Accepts ints, rationals, decimal strings and ``"p/q"`` strings.  Floats are
    read through their shortest decimal repr, so ``0.1`` becomes ``1/10``.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        q = value
    elif isinstance(value, Rational):
        q = Fraction(value.numerator, value.denominator)
    elif isinstance(value, float):
        q = Fraction(repr(value))
    elif isinstance(value, str):
        q = Fraction(value.strip())
    else:
        raise TypeError(f"cannot interpret {value!r} as a coordinate")
    if q.denominator == 1:
        return q.numerator
    return q


def coord_str(value: Coord) -> str:
    return str(value)


@dataclass(frozen=True, slots=True)
class Segment:
    """A closed axis-parallel segment.

    ``line`` is the fixed coordinate (y for horizontal, x for vertical) and
    ``[lo, hi]`` is the span on the varying axis.
    """

    id: str
    orientation: str
    line: Coord
    lo: Coord
    hi: Coord

    def __post_init__(self):
        if self.orientation not in ORIENTATIONS:
            raise ValueError(f"orientation must be 'H' or 'V', got {self.orientation!r}")
        object.__setattr__(self, "id", str(self.id))
        object.__setattr__(self, "line", as_coord(self.line))
        lo, hi = as_coord(self.lo), as_coord(self.hi)
        if lo > hi:
            lo, hi = hi, lo
        if lo == hi:
            raise DegenerateSegmentError(f"segment {self.id!r} has zero length")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def horizontal(cls, id, y, x1, x2) -> Segment:
        return cls(id, HORIZONTAL, y, x1, x2)

    @classmethod
    def vertical(cls, id, x, y1, y2) -> Segment:
        return cls(id, VERTICAL, x, y1, y2)

    @property
    def is_horizontal(self) -> bool:
        return self.orientation == HORIZONTAL

    def point_at(self, t: Coord) -> Point:
        """The point of the supporting line whose varying coordinate is *t*."""
        if self.orientation == HORIZONTAL:
            return (t, self.line)
        return (self.line, t)

    @property
    def start(self) -> Point:
        """Lower-left endpoint."""
        return self.point_at(self.lo)

    @property
    def end(self) -> Point:
        """Upper-right endpoint."""
        return self.point_at(self.hi)

    @property
    def endpoints(self) -> tuple[Point, Point]:
        return (self.start, self.end)

    def contains_point(self, p: Point) -> bool:
        x, y = p
        if self.orientation == HORIZONTAL:
            return y == self.line and self.lo <= x <= self.hi
        return x == self.line and self.lo <= y <= self.hi

    def replace(self, **changes) -> Segment:
        fields_ = {"id": self.id, "orientation": self.orientation, "line": self.line, "lo": self.lo, "hi": self.hi}
        fields_.update(changes)
        return Segment(**fields_)

    def sort_key(self):
        return (self.orientation, self.line, self.lo, self.hi, self.id)


class Representation(Sequence):
    """An ordered family of segments with unique ids.

    Iteration follows the order given at construction.
    """

    __slots__ = ("_segments", "_by_id", "_lines")

    def __init__(self, segments: Iterable[Segment] = ()):
        segs = tuple(segments)
        by_id: dict[str, Segment] = {}
        for s in segs:
            if not isinstance(s, Segment):
                raise TypeError(f"expected Segment, got {type(s).__name__}")
            if s.id in by_id:
                raise DuplicateIdError(f"duplicate segment id {s.id!r}")
            by_id[s.id] = s
        self._segments = segs
        self._by_id = by_id
        self._lines = None

    def __len__(self) -> int:
        return len(self._segments)

    def __getitem__(self, index):
        return self._segments[index]

    def __iter__(self) -> Iterator[Segment]:
        return iter(self._segments)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return self._segments == other._segments

    def __hash__(self) -> int:
        return hash(self._segments)

    def __repr__(self) -> str:
        return f"Representation(<{len(self)} segments>)"

    @property
    def segments(self) -> tuple[Segment, ...]:
        return self._segments

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(s.id for s in self._segments)

    def get(self, seg_id) -> Segment:
        try:
            return self._by_id[str(seg_id)]
        except KeyError:
            raise UnknownIdError(seg_id) from None

    def __contains__(self, item) -> bool:
        if isinstance(item, Segment):
            return self._by_id.get(item.id) == item
        return str(item) in self._by_id

    def subset(self, ids: Iterable) -> Representation:
        wanted = {str(i) for i in ids}
        for i in wanted:
            if i not in self._by_id:
                raise UnknownIdError(i)
        return Representation(s for s in self._segments if s.id in wanted)

    def canonical(self) -> Representation:
        """Same family sorted by (orientation, line, span, id)."""
        return Representation(sorted(self._segments, key=Segment.sort_key))


def intersects(a: Segment, b: Segment) -> bool:
    """True iff the closed segments share at least one point."""
    if a.orientation == b.orientation:
        return a.line == b.line and a.lo <= b.hi and b.lo <= a.hi
    return a.lo <= b.line <= a.hi and b.lo <= a.line <= b.hi


def bounding_box(rep: Iterable[Segment]):
    """``(xmin, ymin, xmax, ymax)`` of a non-empty family, or ``None``."""
    xs, ys = [], []
    for s in rep:
        (x1, y1), (x2, y2) = s.endpoints
        xs += (x1, x2)
        ys += (y1, y2)
    if not xs:
        return None
    return (min(xs), min(ys), max(xs), max(ys))


# ---------------------------------------------------------------------------
# grid lines and statistics


@dataclass(frozen=True)
class GridLine:
    orientation: str
    coordinate: Coord
    segments: tuple[Segment, ...]

    @property
    def members(self) -> tuple[str, ...]:
        return tuple(s.id for s in self.segments)

    def __len__(self) -> int:
        return len(self.segments)


def grid_lines(rep: Iterable[Segment]) -> list[GridLine]:
    """Partition *rep* by (orientation, line coordinate).

    Lines come horizontal first, then by coordinate; members are sorted by span.
    The result is cached on a Representation, which is immutable.
    """
    if isinstance(rep, Representation):
        if rep._lines is None:
            rep._lines = _grid_lines(rep)
        return list(rep._lines)
    return _grid_lines(rep)


def _grid_lines(rep: Iterable[Segment]) -> list[GridLine]:
    groups: dict[tuple, list[Segment]] = {}
    for s in rep:
        groups.setdefault((s.orientation, s.line), []).append(s)
    out = []
    for (o, c) in sorted(groups):
        members = sorted(groups[(o, c)], key=lambda s: (s.lo, s.hi, s.id))
        out.append(GridLine(o, c, tuple(members)))
    return out


@dataclass(frozen=True)
class MeetingPoint:
    point: Point
    pair: tuple[str, str]
    line: GridLine


def meeting_points(rep: Iterable[Segment]) -> list[MeetingPoint]:
    """All points where two collinear segments touch.

    Raises OverlapError when two collinear segments share more than a point.
    """
    out = []
    for gl in grid_lines(rep):
        segs = gl.segments
        reach = None  # segment with the largest hi seen so far
        for s in segs:
            if reach is not None:
                if s.lo < reach.hi:
                    raise OverlapError(f"segments {reach.id!r} and {s.id!r} overlap on line "
                                       f"{gl.orientation} {gl.coordinate}")
                if s.lo == reach.hi:
                    out.append(MeetingPoint(s.start, (reach.id, s.id), gl))
            if reach is None or s.hi > reach.hi:
                reach = s
    return out


@dataclass(frozen=True)
class GridStats:
    l_horizontal: int
    l_vertical: int
    l_even: int
    l_odd: int
    s_even: int
    s_odd: int
    t: int
    t_horizontal: int = 0
    t_vertical: int = 0
    n_horizontal: int = 0
    n_vertical: int = 0

    @property
    def n(self) -> int:
        return self.s_even + self.s_odd

    @property
    def lines(self) -> int:
        return self.l_horizontal + self.l_vertical

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "l_horizontal": self.l_horizontal,
            "l_vertical": self.l_vertical,
            "l_even": self.l_even,
            "l_odd": self.l_odd,
            "s_even": self.s_even,
            "s_odd": self.s_odd,
            "t": self.t,
        }


def grid_stats(rep: Iterable[Segment]) -> GridStats:
    lh = lv = le = lo = se = so = th = tv = nh = nv = 0
    for gl in grid_lines(rep):
        m = len(gl)
        if gl.orientation == HORIZONTAL:
            lh += 1
            nh += m
            th = max(th, m)
        else:
            lv += 1
            nv += m
            tv = max(tv, m)
        if m % 2 == 0:
            le += 1
            se += m
        else:
            lo += 1
            so += m
    return GridStats(lh, lv, le, lo, se, so, max(th, tv), th, tv, nh, nv)


# ---------------------------------------------------------------------------
# general position


@dataclass(frozen=True)
class GeneralPositionReport:
    ok: bool
    point: Point | None = None
    ids: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "general position: ok"
        x, y = self.point
        return f"general position violated at ({x}, {y}) by {', '.join(self.ids)}"


@dataclass
class _LineIndex:
    """Sorted grid-line coordinates of one orientation, for range queries."""

    coords: list = field(default_factory=list)
    lines: list = field(default_factory=list)

    @classmethod
    def build(cls, lines: Iterable[GridLine]) -> _LineIndex:
        idx = cls()
        for gl in lines:
            idx.coords.append(gl.coordinate)
            idx.lines.append(gl)
        return idx

    def crossing(self, a: Coord, b: Coord, at: Coord) -> Iterator[Segment]:
        """Segments on lines with coordinate in [a, b] whose span contains *at*."""
        i = bisect.bisect_left(self.coords, a)
        j = bisect.bisect_right(self.coords, b)
        for gl in self.lines[i:j]:
            for s in gl.segments:
                if s.lo > at:
                    break
                if at <= s.hi:
                    yield s


def collinear_contacts(gl: GridLine, stop_at_triple: bool = True):
    """Sweep one grid line.

    Returns ``(triple, pairs)``: *triple* is ``None`` or ``(t, segs)`` with at
    least three members of the line containing coordinate *t*; *pairs* lists
    ``(a, b, lo, hi)`` for every intersecting pair with common part [lo, hi].
    By default the sweep stops at the first triple, leaving *pairs* partial;
    pass ``stop_at_triple=False`` to collect every pair.
    """
    events = []
    for s in gl.segments:
        events.append((s.lo, 0, s))
        events.append((s.hi, 1, s))
    events.sort(key=lambda e: (e[0], e[1], e[2].id))
    active: list[Segment] = []
    pairs = []
    triple = None
    i = 0
    while i < len(events):
        t = events[i][0]
        j = i
        while j < len(events) and events[j][0] == t and events[j][1] == 0:
            s = events[j][2]
            for other in active:
                pairs.append((other, s, s.lo, min(other.hi, s.hi)))
            active.append(s)
            j += 1
        if len(active) >= 3 and triple is None:
            triple = (t, tuple(active))
            if stop_at_triple:
                return triple, pairs
        while j < len(events) and events[j][0] == t:
            active.remove(events[j][2])
            j += 1
        i = j
    return triple, pairs


def iter_violations(rep: Iterable[Segment]) -> Iterator[GeneralPositionReport]:
    """Yield witnesses of points lying on three or more segments.

    Three segments through one point always include two collinear ones, so it
    suffices to look at collinear contacts and at orthogonal segments passing
    through them.  A line with a triple point yields only that witness.
    """
    lines = grid_lines(rep)
    index = {
        HORIZONTAL: _LineIndex.build(gl for gl in lines if gl.orientation == HORIZONTAL),
        VERTICAL: _LineIndex.build(gl for gl in lines if gl.orientation == VERTICAL),
    }
    for gl in lines:
        triple, pairs = collinear_contacts(gl)
        if triple is not None:
            t, segs = triple
            yield GeneralPositionReport(False, segs[0].point_at(t), tuple(sorted(s.id for s in segs)))
            continue
        other = index[VERTICAL if gl.orientation == HORIZONTAL else HORIZONTAL]
        for a, b, lo, hi in pairs:
            for s in other.crossing(lo, hi, gl.coordinate):
                yield GeneralPositionReport(False, a.point_at(s.line), tuple(sorted((a.id, b.id, s.id))))


def validate_general_position(rep: Iterable[Segment]) -> GeneralPositionReport:
    """Return ok, or the first point found on three or more segments."""
    return next(iter_violations(rep), GeneralPositionReport(True))


# ---------------------------------------------------------------------------
# segment file format


def parse_segments(text: str) -> Representation:
    """Parse the line-oriented segment format.

    ``H <y> <x1> <x2> [id]`` or ``V <x> <y1> <y2> [id]``; ``#`` starts a
    comment.  Records without an id get their 0-based record index.
    """
    segs = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0].upper() not in ORIENTATIONS or len(parts) not in (4, 5):
            raise ParseError(f"line {lineno}: expected 'H|V <c> <a> <b> [id]', got {raw.strip()!r}")
        seg_id = parts[4] if len(parts) == 5 else str(len(segs))
        if seg_id in seen:
            raise ParseError(f"line {lineno}: duplicate id {seg_id!r}")
        try:
            c, a, b = (as_coord(p) for p in parts[1:4])
            seg = Segment(seg_id, parts[0].upper(), c, a, b)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
        seen.add(seg_id)
        segs.append(seg)
    return Representation(segs)


def format_segments(rep: Iterable[Segment], header: str | None = None) -> str:
    out = []
    if header:
        out.extend(f"# {h}" for h in header.splitlines())
    for s in rep:
        out.append(f"{s.orientation} {s.line} {s.lo} {s.hi} {s.id}")
    return "\n".join(out) + "\n"


def read_segments(path) -> Representation:
    with open(path, encoding="utf-8") as fh:
        return parse_segments(fh.read())


def write_segments(rep: Iterable[Segment], path, header: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_segments(rep, header))
