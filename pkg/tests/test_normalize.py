from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from segopt.exceptions import GeneralPositionError, NotFavorableError
from segopt.extremal import make_mk, random_representation
from segopt.geometry import Representation, Segment, intersects, validate_general_position
from segopt.normalize import (
    FavorableRepresentation,
    ensure_favorable,
    extend_orthogonal_contacts,
    half_min_gap,
    is_favorable,
    make_favorable,
    separate_paths,
    trim_parallel_overlaps,
)

H = Segment.horizontal
V = Segment.vertical


def adjacency(rep) -> set:
    return {
        frozenset((a.id, b.id))
        for a, b in itertools.combinations(rep, 2)
        if intersects(a, b)
    }


def test_half_min_gap():
    assert half_min_gap([0, 4, 1]) == Fraction(1, 2)
    assert half_min_gap([3, 3]) == Fraction(1, 2)
    assert half_min_gap([0, 6]) == 3


# --- trim ----------------------------------------------------------------------


def test_trim_partial_overlap_at_midpoint():
    out = trim_parallel_overlaps(Representation([H("a", 0, 0, 2), H("b", 0, 1, 3)]))
    assert (out.get("a").lo, out.get("a").hi) == (0, Fraction(3, 2))
    assert (out.get("b").lo, out.get("b").hi) == (Fraction(3, 2), 3)


def test_trim_touching_pair_unchanged():
    rep = Representation([H("a", 0, 0, 1), H("b", 0, 1, 2)])
    assert trim_parallel_overlaps(rep) == rep


def test_trim_disjoint_pair_unchanged():
    rep = Representation([H("a", 0, 0, 1), H("b", 0, 2, 3)])
    assert trim_parallel_overlaps(rep) == rep


def test_trim_requires_general_position():
    rep = Representation([V("a", 0, -1, 0), V("b", 0, 0, 1), H("c", 0, -1, 1)])
    with pytest.raises(GeneralPositionError):
        trim_parallel_overlaps(rep)


def test_trim_nested_segment_becomes_crossing_stub():
    rep = Representation([H("host", 0, 0, 10), H("inner", 0, 2, 4), V("far", 7, -3, 3)])
    out = trim_parallel_overlaps(rep)
    inner = out.get("inner")
    assert inner.orientation == "V" and inner.line == 3
    assert inner.lo < 0 < inner.hi
    assert adjacency(out) == adjacency(rep)


# --- extend ----------------------------------------------------------------------


def test_extend_vertical_touching_from_below():
    rep = Representation([V("v", 1, 0, 1), H("h", 1, 0, 2)])
    out = extend_orthogonal_contacts(rep)
    # y values {0, 1}: epsilon is 1/2
    assert out.get("v").hi == Fraction(3, 2)
    assert out.get("h") == rep.get("h")


def test_extend_interior_crossing_unchanged():
    rep = Representation([V("v", 1, -1, 1), H("h", 0, 0, 2)])
    assert extend_orthogonal_contacts(rep) == rep


def test_extend_horizontal_endpoint_on_vertical():
    rep = Representation([H("h", 1, 0, 1), V("v", 1, 0, 2)])
    out = extend_orthogonal_contacts(rep)
    assert out.get("h").hi == Fraction(3, 2)
    assert out.get("v") == rep.get("v")


# --- separate --------------------------------------------------------------------


def test_separate_two_disjoint_segments():
    rep = Representation([H("a", 0, 0, 1), H("b", 0, 3, 4), H("c", 2, 0, 1)])
    out = separate_paths(rep)
    # y values {0, 2}: delta is 1
    assert out.get("a").line == 0
    assert out.get("b").line == 1


def test_separate_single_chain_unchanged():
    rep = Representation([H("a", 0, 0, 1), H("b", 0, 1, 2), H("c", 0, 2, 3)])
    assert separate_paths(rep) == rep


def test_separate_mk_unchanged():
    rep = make_mk(3).representation
    assert separate_paths(rep) == rep


def test_separate_carries_orthogonal_endpoints():
    rep = Representation([H("a", 0, 0, 1), H("b", 0, 3, 5), V("c", 4, -2, 0)])
    out = separate_paths(rep)
    assert out.get("c").hi == out.get("b").line != 0
    assert adjacency(out) == adjacency(rep)


# --- make_favorable / is_favorable ---------------------------------------------------


def test_is_favorable_mk():
    cert = is_favorable(make_mk(2).representation)
    assert isinstance(cert, FavorableRepresentation)
    assert all(cert.certificate.values())


def test_is_favorable_reports_overlap():
    v = is_favorable(Representation([H("a", 0, 0, 2), H("b", 0, 1, 3)]))
    assert not v and v.kind == "parallel overlap"


def test_is_favorable_reports_t_contact():
    v = is_favorable(Representation([V("v", 1, 0, 1), H("h", 1, 0, 2)]))
    assert not v and v.kind == "non-interior crossing"


def test_is_favorable_reports_split_line():
    v = is_favorable(Representation([H("a", 0, 0, 1), H("b", 0, 3, 4)]))
    assert not v and v.kind == "split line"


def test_is_favorable_reports_general_position():
    v = is_favorable(Representation([V("a", 0, -1, 0), V("b", 0, 0, 1), H("c", 0, -1, 1)]))
    assert not v and v.kind == "general position"


def test_certificate_must_be_all_true():
    with pytest.raises(NotFavorableError):
        FavorableRepresentation(Representation(), {"general_position": False})


def test_make_favorable_identity_on_favorable_input():
    rep = make_mk(3).representation
    assert make_favorable(rep).rep == rep


def test_make_favorable_overlap_and_t_contact():
    rep = Representation([
        H("a", 0, 0, 4), H("b", 0, 2, 6), V("t", 1, 0, 3), V("x", 5, -2, 2), H("c", 3, -1, 8),
    ])
    assert validate_general_position(rep)
    out = make_favorable(rep)
    assert is_favorable(out.rep)
    assert adjacency(out.rep) == adjacency(rep)
    assert len(out) == len(rep)


def test_make_favorable_rejects_bad_input():
    with pytest.raises(GeneralPositionError):
        make_favorable(Representation([V("a", 0, -1, 0), V("b", 0, 0, 1), H("c", 0, -1, 1)]))


def test_ensure_favorable():
    with pytest.raises(NotFavorableError):
        ensure_favorable(Representation([H("a", 0, 0, 2), H("b", 0, 1, 3)]))
    cert = ensure_favorable(make_mk(1).representation)
    assert ensure_favorable(cert) is cert


@pytest.mark.parametrize("seed", range(25))
def test_make_favorable_random_preserves_adjacency(seed):
    rep = random_representation(seed, n=40)
    out = make_favorable(rep)
    assert adjacency(out.rep) == adjacency(rep)
    again = make_favorable(out.rep)
    assert adjacency(again.rep) == adjacency(rep)
