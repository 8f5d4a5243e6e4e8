"""SVG 1.1 drawings of segment families, cuts and chosen sets.

Segments are ``<line>`` elements, meeting points are small crosses drawn as
``<path>`` elements, and a cut is a dotted ``<polyline>``.  Output is
byte-for-byte deterministic for fixed inputs.
"""

from __future__ import annotations

from collections.abc import Iterable
from xml.sax.saxutils import quoteattr

from .geometry import Representation, bounding_box, meeting_points

PLAIN = "#555555"
CHOSEN = "#d62728"
CUT = "#1f77b4"


def _num(v) -> str:
    """Fixed 4-decimal formatting with trailing zeros stripped."""
    s = f"{float(v):.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(
    rep: Representation,
    independent_set: Iterable | None = None,
    cut=None,
    size: int = 600,
    margin: int = 20,
) -> str:
    """Draw *rep*; members of *independent_set* are highlighted, *cut* is a
    :class:`~segopt.lower_bound.Cut` (or a list of polyline vertices)."""
    chosen = {str(i) for i in independent_set} if independent_set is not None else set()
    box = bounding_box(rep) or (0, 0, 1, 1)
    xmin, ymin, xmax, ymax = box
    if cut is not None and hasattr(cut, "polyline"):
        cut_pts = cut.polyline(box)
    else:
        cut_pts = list(cut) if cut is not None else []
    for x, y in cut_pts:
        xmin, xmax = min(xmin, x), max(xmax, x)
        ymin, ymax = min(ymin, y), max(ymax, y)
    span = max(xmax - xmin, ymax - ymin) or 1
    scale = (size - 2 * margin) / float(span)

    def px(x):
        return margin + (x - xmin) * scale

    def py(y):
        # SVG y grows downwards
        return size - margin - (y - ymin) * scale

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
        '<g id="segments" stroke-linecap="butt">',
    ]
    for s in rep:
        (x1, y1), (x2, y2) = s.endpoints
        picked = s.id in chosen
        out.append(
            f'<line id={quoteattr("seg-" + s.id)} x1="{_num(px(x1))}" y1="{_num(py(y1))}" '
            f'x2="{_num(px(x2))}" y2="{_num(py(y2))}" '
            f'stroke="{CHOSEN if picked else PLAIN}" stroke-width="{3 if picked else 1.5}"/>'
        )
    out.append("</g>")
    out.append('<g id="meeting-points" stroke="black" stroke-width="1" fill="none">')
    r = 4
    for mp in meeting_points(rep):
        cx, cy = px(mp.point[0]), py(mp.point[1])
        out.append(
            f'<path d="M {_num(cx - r)} {_num(cy - r)} L {_num(cx + r)} {_num(cy + r)} '
            f'M {_num(cx - r)} {_num(cy + r)} L {_num(cx + r)} {_num(cy - r)}"/>'
        )
    out.append("</g>")
    if cut_pts:
        pts = " ".join(f"{_num(px(x))},{_num(py(y))}" for x, y in cut_pts)
        out.append(
            f'<polyline id="cut" points="{pts}" fill="none" stroke="{CUT}" '
            f'stroke-width="1.5" stroke-dasharray="2,4"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
