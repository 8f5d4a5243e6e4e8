"""Input coercion shared by the estimator layer."""

from __future__ import annotations

from collections.abc import Iterable

from .geometry import Representation, Segment, parse_segments
from .lower_bound import TECHNIQUES
from .normalize import FavorableRepresentation


def check_representation(X) -> Representation:
    """Coerce *X* into a :class:`Representation`.

    Accepted: a Representation, a FavorableRepresentation, segment-file text,
    or an iterable whose items are Segments or ``(orientation, line, a, b[, id])``
    tuples.  Tuples without an id get their position as id.
    """
    if isinstance(X, Representation):
        return X
    if isinstance(X, FavorableRepresentation):
        return X.rep
    if isinstance(X, str):
        return parse_segments(X)
    if not isinstance(X, Iterable):
        raise TypeError(f"cannot interpret {type(X).__name__} as a segment family")
    segs = []
    for i, item in enumerate(X):
        if isinstance(item, Segment):
            segs.append(item)
            continue
        item = tuple(item)
        if len(item) not in (4, 5):
            raise ValueError(f"record {i}: expected (orientation, line, a, b[, id]), got {item!r}")
        o, c, a, b = item[:4]
        sid = str(item[4]) if len(item) == 5 else str(i)
        segs.append(Segment(sid, str(o).upper(), c, a, b))
    return Representation(segs)


def check_technique(name: str) -> str:
    if name not in (*TECHNIQUES, "all", "best"):
        raise ValueError(f"technique must be one of {', '.join(TECHNIQUES)}, 'all'; got {name!r}")
    return "all" if name == "best" else name
