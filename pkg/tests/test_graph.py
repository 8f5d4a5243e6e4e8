from __future__ import annotations

import numpy as np
import pytest

import bruteforce
from instances import c5, disjoint, path3
from segopt.exceptions import ParseError, UnknownIdError
from segopt.extremal import canonical_independent_set, make_mk, random_representation
from segopt.geometry import Representation, Segment
from segopt.graph import (
    IndependentSet,
    IntersectionGraph,
    Matching,
    build_graph,
    format_cover,
    format_independent_set,
    format_matching,
    is_independent,
    is_triangle_free,
    parse_solution,
    read_independent_set,
)

H = Segment.horizontal
V = Segment.vertical


def edge_set(g):
    return {frozenset(e) for e in g.edge_ids()}


def test_two_crossing_segments_give_k2():
    g = build_graph(Representation([H("a", 0, 0, 2), V("b", 1, -1, 1)]))
    assert (g.n, g.m) == (2, 1)
    assert g.has_edge(0, 1) and g.has_edge(1, 0)


def test_m1_matches_pairwise_check():
    rep = make_mk(1).representation
    g = build_graph(rep)
    assert g.n == 4
    assert edge_set(g) == bruteforce.edge_set(rep)


def test_disjoint_segments_edgeless():
    g = build_graph(disjoint(6))
    assert g.m == 0 and g.n == 6


def test_empty_graph():
    g = build_graph(Representation())
    assert g.n == 0 and g.m == 0 and is_triangle_free(g)


def test_c5_instance_is_a_cycle():
    g = build_graph(c5())
    assert edge_set(g) == {frozenset(p) for p in ("ab", "bc", "cd", "de", "ea")}


@pytest.mark.parametrize("seed", range(20))
def test_build_graph_matches_lattice_oracle(seed):
    rep = random_representation(seed, n=30, extent=24)
    assert edge_set(build_graph(rep)) == bruteforce.edge_set(rep)


def test_build_graph_chunking_is_invisible():
    rep = random_representation(3, n=120)
    assert edge_set(build_graph(rep, chunk_cells=7)) == edge_set(build_graph(rep))


def test_build_graph_fractional_and_huge_coordinates():
    big = 2 ** 70
    rep = Representation([
        H("a", "1/3", 0, big), V("b", big, -1, 1), V("c", "1/2", 0, 1), H("d", 0, "-1/7", "1/7"),
    ])
    # a touches b at b's interior point (2**70, 1/3) and crosses c; d meets nothing
    assert edge_set(build_graph(rep)) == {frozenset("ab"), frozenset("ac")}


def test_vertex_order_and_csr_shape():
    rep = c5()
    g = build_graph(rep)
    assert g.ids == rep.ids
    assert list(g.degrees()) == [2] * 5
    assert g.to_sparse().shape == (5, 5)
    assert (g.edges()[:, 0] < g.edges()[:, 1]).all()


def test_same_adjacency():
    g = build_graph(c5())
    h = IntersectionGraph.from_edges("abcde", [("e", "a"), ("d", "e"), ("c", "d"), ("b", "c"), ("a", "b")])
    assert g.same_adjacency(h)
    assert not g.same_adjacency(IntersectionGraph.from_edges("abcde", []))


def test_from_edges_rejects_loops():
    with pytest.raises(ValueError):
        IntersectionGraph.from_edges(2, [(0, 0)])


# --- triangle-free ----------------------------------------------------------


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_mk_triangle_free(k):
    assert is_triangle_free(build_graph(make_mk(k).representation))


def test_k3_not_triangle_free():
    assert not is_triangle_free(IntersectionGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)]))


def test_edgeless_triangle_free():
    assert is_triangle_free(IntersectionGraph.from_edges(5, []))


def test_triangle_free_matches_exhaustive_check():
    rng = np.random.default_rng(5)
    for _ in range(40):
        n = int(rng.integers(3, 9))
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.35]
        es = set(edges)
        has_tri = any(
            (a, b) in es and (b, c) in es and (a, c) in es
            for a in range(n) for b in range(a + 1, n) for c in range(b + 1, n)
        )
        assert is_triangle_free(IntersectionGraph.from_edges(n, edges)) == (not has_tri)


def test_triangle_free_with_arbitrary_colouring_hint():
    rng = np.random.default_rng(11)
    for _ in range(40):
        n = int(rng.integers(3, 9))
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4]
        plain = IntersectionGraph.from_edges(n, edges)
        hinted = IntersectionGraph.from_edges(n, edges)
        hinted.colouring = rng.integers(0, 2, n)
        assert is_triangle_free(hinted) == is_triangle_free(plain)


def test_build_graph_sets_orientation_colouring():
    g = build_graph(Representation([Segment.horizontal("h", 0, 0, 2), Segment.vertical("v", 1, -1, 1)]))
    assert list(g.colouring) == [1, 0]


def test_build_graph_on_collinear_pile():
    # every pair meets; the line sweep must not stop at the first triple point
    rep = Representation(Segment.horizontal(f"s{i}", 0, i, 3 + i) for i in range(4))
    assert build_graph(rep).m == 6
    assert not is_triangle_free(build_graph(rep))


# --- independence certificates ----------------------------------------------


def test_canonical_set_of_m3_independent():
    inst = make_mk(3)
    assert is_independent(inst.representation, canonical_independent_set(inst).ids)


def test_touching_collinear_pair_not_independent():
    assert not is_independent(path3(), ["p0", "p1"])
    assert is_independent(path3(), ["p0", "p2"])


def test_singleton_independent():
    assert is_independent(c5(), ["c"])
    assert is_independent(c5(), [])


def test_unknown_id_raises():
    with pytest.raises(UnknownIdError):
        is_independent(c5(), ["zzz"])


def test_crossing_pair_not_independent():
    assert not is_independent(c5(), ["a", "b"])
    assert is_independent(c5(), ["a", "c"])


@pytest.mark.parametrize("seed", range(10))
def test_is_independent_matches_pairwise_oracle(seed):
    rep = random_representation(seed, n=14, extent=20)
    edges = bruteforce.edge_set(rep)
    rng = np.random.default_rng(seed)
    for _ in range(30):
        ids = [s.id for s in rep if rng.random() < 0.3]
        expect = not any(frozenset((a, b)) in edges for a in ids for b in ids if a < b)
        assert is_independent(rep, ids) == expect


# --- solution objects and files ----------------------------------------------


def test_independent_set_iterates_sorted():
    s = IndependentSet(["b", "a", 3])
    assert list(s) == ["3", "a", "b"] and s.size == 3 and "a" in s


def test_matching_validity():
    g = build_graph(c5())
    assert Matching([("a", "b"), ("c", "d")]).is_valid(g)
    assert not Matching([("a", "b"), ("b", "c")]).is_valid(g)
    assert not Matching([("a", "c")]).is_valid(g)


def test_is_file_round_trip(tmp_path):
    text = format_independent_set(["z", "a"], header="TECHNIQUE odd achieved=2 guarantee=1")
    assert text.splitlines()[1:] == ["IS 2", "a", "z"]
    doc = parse_solution(text)
    assert doc.kind == "IS" and doc.items == ("a", "z")
    assert doc.meta == {"technique": "odd", "achieved": "2", "guarantee": "1"}
    path = tmp_path / "s.is"
    path.write_text(text)
    assert read_independent_set(path).ids == {"a", "z"}


def test_matching_and_cover_formats():
    m = parse_solution(format_matching(Matching([("b", "a")])))
    assert m.kind == "MATCHING" and m.items == (("a", "b"),)
    c = parse_solution(format_cover([("b", "a"), ("c",)]))
    assert c.kind == "COVER" and c.items == (("a", "b"), ("c",))


@pytest.mark.parametrize("text", ["", "IS x\n", "IS 2\na\n", "FOO 1\na\n", "MATCHING 1\na\n"])
def test_solution_parse_errors(text):
    with pytest.raises(ParseError):
        parse_solution(text)


def test_read_independent_set_wrong_kind(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("MATCHING 0\n")
    with pytest.raises(ParseError):
        read_independent_set(path)
