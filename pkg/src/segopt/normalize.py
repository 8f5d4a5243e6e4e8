"""Rewrite a representation into a favorable one with the same intersection graph.

A favorable family has four properties: collinear segments meet in at most a
single point, orthogonal crossings are interior to both segments, the
segments on each grid line form one touching chain, and no point lies on
three segments.  All moves use offsets below the smallest coordinate gap of
the instance, so no new incidence can appear.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exceptions import ExtensionBlockedError, GeneralPositionError, NotFavorableError, OverlapError
from .geometry import (
    HORIZONTAL,
    VERTICAL,
    GridLine,
    Representation,
    Segment,
    _LineIndex,
    as_coord,
    collinear_contacts,
    grid_lines,
    validate_general_position,
)

PROPERTIES = ("single_meeting_points", "interior_crossings", "lines_are_paths", "general_position")


def _axis_values(rep):
    xs, ys = set(), set()
    for s in rep:
        if s.orientation == HORIZONTAL:
            ys.add(s.line)
            xs.update((s.lo, s.hi))
        else:
            xs.add(s.line)
            ys.update((s.lo, s.hi))
    return xs, ys


def half_min_gap(values) -> Fraction | int:
    """Half of the smallest positive difference among *values* (1/2 if undefined)."""
    vals = sorted(set(values))
    if len(vals) < 2:
        return Fraction(1, 2)
    gap = min(b - a for a, b in zip(vals, vals[1:]))
    return as_coord(Fraction(gap) / 2)


def _require_general_position(rep):
    report = validate_general_position(rep)
    if not report.ok:
        raise GeneralPositionError(report.point, report.ids)


def _indexes(lines):
    return {
        HORIZONTAL: _LineIndex.build(gl for gl in lines if gl.orientation == HORIZONTAL),
        VERTICAL: _LineIndex.build(gl for gl in lines if gl.orientation == VERTICAL),
    }


def _other(orientation):
    return VERTICAL if orientation == HORIZONTAL else HORIZONTAL


def _rebuild(rep, replaced: dict) -> Representation:
    return Representation(replaced.get(s.id, s) for s in rep)


# ---------------------------------------------------------------------------


def trim_parallel_overlaps(rep: Representation) -> Representation:
    """Shrink overlapping collinear pairs until they touch in one point.

    A partial overlap is cut at its midpoint.  A segment nested inside a
    collinear one can only intersect its host, so it is replaced by a short
    orthogonal stub crossing the host at the midpoint of the nested span.
    """
    _require_general_position(rep)
    lines = grid_lines(rep)
    new_lo, new_hi, nested = {}, {}, []
    for gl in lines:
        _, pairs = collinear_contacts(gl)
        for a, b, lo, hi in pairs:
            if lo == hi:
                continue
            if a.lo <= b.lo and b.hi <= a.hi:
                nested.append((b, a))
            elif b.lo <= a.lo and a.hi <= b.hi:
                nested.append((a, b))
            else:
                first, second = (a, b) if a.lo < b.lo else (b, a)
                m = as_coord(Fraction(second.lo + first.hi) / 2)
                new_hi[first.id] = m
                new_lo[second.id] = m
    if not new_lo and not nested:
        return rep

    replaced = {}
    for s in rep:
        if s.id in new_lo or s.id in new_hi:
            replaced[s.id] = s.replace(lo=new_lo.get(s.id, s.lo), hi=new_hi.get(s.id, s.hi))
    trimmed = _rebuild(rep, replaced)
    if not nested:
        return trimmed

    xs, ys = _axis_values(trimmed)
    mids = {}
    for inner, _host in nested:
        mids[inner.id] = as_coord(Fraction(inner.lo + inner.hi) / 2)
        (xs if inner.orientation == HORIZONTAL else ys).add(mids[inner.id])
    # quarter gaps: stubs on a common line stay apart
    rx, ry = as_coord(half_min_gap(xs) / 2), as_coord(half_min_gap(ys) / 2)
    replaced = {}
    for inner, _host in nested:
        r = ry if inner.orientation == HORIZONTAL else rx
        c = inner.line
        replaced[inner.id] = Segment(inner.id, _other(inner.orientation), mids[inner.id], c - r, c + r)
    return _rebuild(trimmed, replaced)


def _chains(gl: GridLine):
    chains = []
    for s in gl.segments:
        if chains:
            last = chains[-1][-1]
            if s.lo < last.hi:
                raise OverlapError(f"segments {last.id!r} and {s.id!r} overlap")
            if s.lo == last.hi:
                chains[-1].append(s)
                continue
        chains.append([s])
    return chains


def _separate_orientation(rep: Representation, orientation: str) -> Representation:
    lines = grid_lines(rep)
    xs, ys = _axis_values(rep)
    delta = half_min_gap(ys if orientation == HORIZONTAL else xs)
    index = _indexes(lines)[_other(orientation)]
    replaced: dict[str, Segment] = {}
    for gl in lines:
        if gl.orientation != orientation:
            continue
        chains = _chains(gl)
        if len(chains) < 2:
            continue
        step = as_coord(Fraction(delta) / (len(chains) - 1))
        c = gl.coordinate
        for j, chain in enumerate(chains[1:], 1):
            new_c = as_coord(c + j * step)
            for s in chain:
                replaced[s.id] = s.replace(line=new_c)
                # orthogonal segments ending on this chain follow it to the new line
                for o in index.crossing(s.lo, s.hi, c):
                    o = replaced.get(o.id, o)
                    if o.lo == c:
                        replaced[o.id] = o.replace(lo=new_c)
                    elif o.hi == c:
                        replaced[o.id] = o.replace(hi=new_c)
    return _rebuild(rep, replaced) if replaced else rep


def separate_paths(rep: Representation) -> Representation:
    """Give every touching chain of collinear segments its own grid line.

    Chain j of m on line c moves to c + j*delta/(m-1), where delta is half the
    smallest coordinate gap on that axis; orthogonal segments that end on a
    moved chain have that endpoint moved with it.
    """
    out = _separate_orientation(rep, HORIZONTAL)
    return _separate_orientation(out, VERTICAL)


def extend_orthogonal_contacts(rep: Representation) -> Representation:
    """Push every orthogonal contact into the interiors of both segments.

    A segment whose endpoint lies on an orthogonal segment is extended past
    it by half the smallest coordinate gap on its axis.
    """
    lines = grid_lines(rep)
    index = _indexes(lines)
    by_line = {(gl.orientation, gl.coordinate): gl.segments for gl in lines}
    xs, ys = _axis_values(rep)
    eps = {HORIZONTAL: half_min_gap(xs), VERTICAL: half_min_gap(ys)}
    replaced = {}
    for s in rep:
        other = index[_other(s.orientation)]
        lo, hi = s.lo, s.hi
        e = eps[s.orientation]
        if any(True for _ in other.crossing(s.lo, s.lo, s.line)):
            lo = as_coord(s.lo - e)
            _check_free(s, lo, s.lo, index, by_line)
        if any(True for _ in other.crossing(s.hi, s.hi, s.line)):
            hi = as_coord(s.hi + e)
            _check_free(s, s.hi, hi, index, by_line)
        if (lo, hi) != (s.lo, s.hi):
            replaced[s.id] = s.replace(lo=lo, hi=hi)
    return _rebuild(rep, replaced) if replaced else rep


def _check_free(s: Segment, a, b, index, lines):
    """Raise if the extension of *s* between *a* and *b* meets anything new."""
    lo, hi = min(a, b), max(a, b)
    end = s.lo if b == s.lo else s.hi
    for o in index[_other(s.orientation)].crossing(lo, hi, s.line):
        if o.line != end:
            raise ExtensionBlockedError(f"extending {s.id!r} would touch {o.id!r}")
    for t in lines.get((s.orientation, s.line), ()):
        if t.id != s.id and lo <= t.hi and t.lo <= hi:
            raise ExtensionBlockedError(f"extending {s.id!r} would touch {t.id!r}")


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FavorableRepresentation:
    """A representation together with its favorability certificate.

    Obtain instances through :func:`make_favorable` or :func:`is_favorable`.
    """

    rep: Representation
    certificate: dict = field(default_factory=lambda: dict.fromkeys(PROPERTIES, True))

    def __post_init__(self):
        if not all(self.certificate.get(p, False) for p in PROPERTIES):
            raise NotFavorableError("certificate must hold for every property")

    def __len__(self):
        return len(self.rep)

    def __bool__(self):
        # a certificate is truthy even for the empty family; violations are falsy
        return True

    def __iter__(self):
        return iter(self.rep)


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    ids: tuple = ()
    point: tuple | None = None

    def __bool__(self):
        return False

    def __str__(self):
        return f"{self.kind}: {self.message}"


def is_favorable(rep: Representation) -> FavorableRepresentation | Violation:
    """Check the four favorability properties; return a certificate or the first violation."""
    if isinstance(rep, FavorableRepresentation):
        rep = rep.rep
    report = validate_general_position(rep)
    if not report.ok:
        x, y = report.point
        return Violation("general position", f"point ({x}, {y}) lies on {', '.join(report.ids)}",
                         report.ids, report.point)
    lines = grid_lines(rep)
    for gl in lines:
        _, pairs = collinear_contacts(gl)
        for a, b, lo, hi in pairs:
            if lo < hi:
                return Violation("parallel overlap", f"{a.id} and {b.id} share [{lo}, {hi}] on "
                                 f"{gl.orientation} {gl.coordinate}", (a.id, b.id))
    index = _indexes(lines)
    for s in rep:
        other = index[_other(s.orientation)]
        for t in (s.lo, s.hi):
            for o in other.crossing(t, t, s.line):
                p = s.point_at(t)
                return Violation("non-interior crossing", f"{s.id} ends on {o.id} at ({p[0]}, {p[1]})",
                                 (s.id, o.id), p)
    for gl in lines:
        chains = _chains(gl)
        if len(chains) > 1:
            return Violation("split line", f"{gl.orientation} {gl.coordinate} holds {len(chains)} separate chains",
                             gl.members)
    return FavorableRepresentation(rep)


def make_favorable(rep: Representation) -> FavorableRepresentation:
    """trim -> separate -> extend, then certify the result."""
    if isinstance(rep, FavorableRepresentation):
        return rep
    out = extend_orthogonal_contacts(separate_paths(trim_parallel_overlaps(rep)))
    cert = is_favorable(out)
    if not cert:
        raise NotFavorableError(f"normalization left a violation ({cert})")
    return cert


def ensure_favorable(x) -> FavorableRepresentation:
    """Accept a certified family as is; certify a plain one or raise."""
    if isinstance(x, FavorableRepresentation):
        return x
    cert = is_favorable(x)
    if not cert:
        raise NotFavorableError(str(cert))
    return cert
