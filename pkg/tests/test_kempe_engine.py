"""Interchange, fan, downshift, transcript machinery."""
import random

import pytest

from kempe_edge.errors import (
    EdgeNotIncident,
    InvalidMoveAtIndex,
    NotSaturated,
    RepEdgeNotBicolored,
)
from kempe_edge.fixtures_gen import (
    figure1_pair,
    octahedron,
    random_graph,
    random_proper_coloring,
)
from kempe_edge.graph_core import EdgeColoring, Graph, color_class, is_proper
from kempe_edge.kempe_engine import (
    Fan,
    KempeMove,
    Transcript,
    apply_transcript,
    downshift,
    format_transcript,
    grow_fan,
    interchange,
    involution_check,
    parse_transcript,
)


def test_interchange_single_edge():
    g = Graph(2, [(1, 2)])
    f = EdgeColoring(2, [1])
    out = interchange(g, f, KempeMove(1, 2, 0))
    assert out.colors == (2,)


def test_interchange_whole_path_component():
    g = Graph(3, [(1, 2), (2, 3)])
    f = EdgeColoring(2, [1, 2])
    out = interchange(g, f, KempeMove(1, 2, 0))
    assert out.colors == (2, 1)


def test_interchange_octahedron_cycle_preserves_class_sizes():
    g = octahedron()
    f, _ = figure1_pair()
    before = {k: len(color_class(f, k)) for k in (1, 2)}
    out = interchange(g, f, KempeMove(1, 2, 0))
    assert is_proper(g, out)
    after = {k: len(color_class(out, k)) for k in (1, 2)}
    assert before[1] + before[2] == after[1] + after[2]


def test_interchange_rejects_off_component_edge():
    g = Graph(3, [(1, 2), (2, 3)])
    f = EdgeColoring(3, [1, 2])
    with pytest.raises(RepEdgeNotBicolored):
        interchange(g, f, KempeMove(2, 3, 0))


def test_involution_sweep_random():
    rng = random.Random(99)
    checked = 0
    for seed in range(80):
        g = random_graph(rng.randint(3, 10), 0.5, seed)
        if g.m == 0:
            continue
        t = g.max_degree() + 1 + rng.randint(0, 1)
        f = random_proper_coloring(g, t, seed)
        for _ in range(6):
            eid = rng.randrange(g.m)
            a = f.colors[eid]
            b = rng.choice([c for c in range(1, t + 1) if c != a])
            assert involution_check(g, f, KempeMove(a, b, eid))
            checked += 1
    assert checked >= 400


def test_grow_fan_star():
    g = Graph(4, [(1, 2), (1, 3), (1, 4)])
    f = EdgeColoring(4, [1, 2, 3])
    fan = grow_fan(g, f, 1, 0)
    # every leaf has degree 1, so each next color is missing at it
    assert fan.edges == (0, 1, 2)
    assert fan.associated == (2, 3)
    with pytest.raises(EdgeNotIncident):
        grow_fan(g, f, 2, 1)


def test_grow_fan_degree_one_pivot():
    g = Graph(3, [(1, 2), (2, 3)])
    f = EdgeColoring(2, [1, 2])
    fan = grow_fan(g, f, 1, 0)
    assert fan.edges == (0,)


def test_grow_fan_stops_on_repeated_color():
    # pivot 1 with leaves 2,3,4; edge to 4 colored like an in-fan color that
    # still appears at the previous leaf, forcing termination
    g = Graph(5, [(1, 2), (1, 3), (1, 4), (2, 5)])
    f = EdgeColoring(4, [1, 2, 3, 2])
    fan = grow_fan(g, f, 1, 0)
    # color 2 appears at leaf 2 (edge 2-5), so edge (1,3) cannot follow e1;
    # color 3 is missing at leaf 2, so edge (1,4) extends instead
    assert fan.edges[0] == 0
    assert 1 not in fan.associated


def test_downshift_single_edge_fan():
    g = Graph(2, [(1, 2)])
    f = EdgeColoring(3, [1])
    fan = Fan(1, (0,), ())
    out, tr = downshift(g, f, fan, 3)
    assert out.colors == (3,)
    assert len(tr.moves) == 1


def test_downshift_matches_rotation_formula():
    rng = random.Random(5)
    done = 0
    for seed in range(300):
        g = random_graph(rng.randint(4, 11), 0.5, seed + 1000)
        if g.m < 3:
            continue
        t = g.max_degree() + 2
        f = random_proper_coloring(g, t, seed)
        pivot = max(range(1, g.n + 1), key=g.degree)
        first = g.adj[pivot][0][1]
        fan = grow_fan(g, f, pivot, first)
        last_leaf = g.other_end(fan.edges[-1], pivot)
        free = [
            c
            for c in range(1, t + 1)
            if c not in {f.colors[e] for _, e in g.adj[pivot]}
            and c not in {f.colors[e] for _, e in g.adj[last_leaf]}
        ]
        if not free:
            continue
        out, tr = downshift(g, f, fan, free[0])
        # closed-form rotation
        expected = list(f.colors)
        for i, eid in enumerate(fan.edges):
            expected[eid] = (
                free[0] if i == len(fan.edges) - 1 else f.colors[fan.edges[i + 1]]
            )
        assert list(out.colors) == expected
        assert is_proper(g, out)
        # expansion replays to the same coloring, one edge per move
        replay = apply_transcript(g, f, tr)
        assert replay == out
        done += 1
    assert done >= 60


def test_downshift_requires_saturation():
    g = Graph(3, [(1, 2), (1, 3)])
    f = EdgeColoring(3, [1, 2])
    fan = Fan(1, (0,), ())
    with pytest.raises(NotSaturated):
        downshift(g, f, fan, 2)  # color 2 appears at the pivot


def test_apply_transcript_empty_and_involution():
    g = octahedron()
    f, _ = figure1_pair()
    assert apply_transcript(g, f, Transcript()) == f
    mv = KempeMove(1, 2, 0)
    assert apply_transcript(g, f, Transcript([mv, mv])) == f


def test_apply_transcript_fails_atomically():
    g = Graph(3, [(1, 2), (2, 3)])
    f = EdgeColoring(3, [1, 2])
    tr = Transcript([KempeMove(1, 2, 0), KempeMove(3, 1, 0)])
    with pytest.raises(InvalidMoveAtIndex) as exc:
        apply_transcript(g, f, tr)
    assert exc.value.index == 1
    assert f.colors == (1, 2)  # input untouched


def test_transcript_file_round_trip():
    g = octahedron()
    tr = Transcript(
        [KempeMove(1, 2, 0), KempeMove(3, 5, 7)], ["Lemma2.1a", None]
    )
    text = format_transcript(g, tr)
    lines = text.splitlines()
    assert lines[0] == "K 1 2 1 2\tLemma2.1a"
    assert lines[1].startswith("K 3 5 ")
    back = parse_transcript("# header comment\n" + text, g)
    assert back == tr
    assert back.annotations == ["Lemma2.1a", None]
