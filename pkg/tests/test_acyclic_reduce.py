"""The (Delta+1) -> Delta reduction for acyclic max-degree subgraphs."""
import pytest

from kempe_edge.acyclic_reduce import (
    acyclic_reduce,
    case_a_step,
    walk_init,
    walk_step,
)
from kempe_edge.errors import (
    MaxDegreeSubgraphCyclic,
    PaletteMismatch,
    PreconditionViolated,
)
from kempe_edge.fixtures_gen import (
    acyclic_max_degree_graph,
    random_proper_coloring,
)
from kempe_edge.graph_core import EdgeColoring, Graph, color_class, is_proper
from kempe_edge.kempe_engine import apply_transcript


def test_no_top_edges_gives_empty_transcript():
    g = Graph(5, [(1, 2), (1, 3), (1, 4), (1, 5)])
    f = EdgeColoring(5, [1, 2, 3, 4])
    out, tr = acyclic_reduce(g, f)
    assert len(tr.moves) == 0 and out.t == 4


def test_star_single_move():
    # K_{1,4} colored 1,2,3,5: one single-edge recolor clears the top color
    g = Graph(5, [(1, 2), (1, 3), (1, 4), (1, 5)])
    f = EdgeColoring(5, [1, 2, 3, 5])
    out, tr = acyclic_reduce(g, f)
    assert out.t == 4 and is_proper(g, out)
    assert len(tr.moves) == 1
    assert out.colors == (1, 2, 3, 4)


def test_cyclic_max_degree_subgraph_rejected():
    g = Graph(3, [(1, 2), (2, 3), (1, 3)])  # 2-regular: G_Delta is the triangle
    with pytest.raises(MaxDegreeSubgraphCyclic):
        acyclic_reduce(g, EdgeColoring(3, [1, 2, 3]))


def test_palette_mismatch_rejected():
    g = Graph(5, [(1, 2), (1, 3), (1, 4), (1, 5)])
    with pytest.raises(PaletteMismatch):
        acyclic_reduce(g, EdgeColoring(6, [1, 2, 3, 5]))


def test_random_sweep_with_monovariant():
    done = 0
    for seed in range(60):
        delta = 3 + (seed % 4)
        g = acyclic_max_degree_graph(delta, seed)
        f = random_proper_coloring(g, delta + 1, seed)
        stats = []
        out, tr = acyclic_reduce(g, f, stats)
        assert out.t == delta
        assert is_proper(g, out)
        assert len(color_class(out, delta)) <= g.m
        replay = apply_transcript(g, f, tr, check=True)
        assert replay.colors == out.colors
        assert all(before > after for before, after in stats)
        assert [b for b, _ in stats] == sorted({b for b, _ in stats}, reverse=True)
        done += 1
    assert done == 60


def test_case_a_step_preconditions_and_effect():
    # two adjacent degree-3 hubs: the edge between them lies in G_Delta and
    # both are leaves there
    g = Graph(
        8,
        [
            (1, 2),
            (1, 3), (1, 4),
            (2, 5), (2, 6),
            (3, 7), (4, 8),
        ],
    )
    assert g.max_degree() == 3
    f = random_proper_coloring(g, 4, 11)
    top_edges = sorted(color_class(f, 4))
    hub_edge = g.edge_id(1, 2)
    if f.colors[hub_edge] != 4:
        # force the top color onto the hub edge by rebuilding a coloring
        colors = list(f.colors)
        swap_with = colors[hub_edge]
        for eid, c in enumerate(colors):
            if c == 4:
                colors[eid] = swap_with
        colors[hub_edge] = 4
        f = EdgeColoring(4, colors)
        if not is_proper(g, f):
            pytest.skip("could not stage the hub-edge fixture")
    out, tr = case_a_step(g, f, hub_edge)
    assert len(color_class(out, 4)) < len(color_class(f.with_palette(4), 4))
    assert apply_transcript(g, f, tr, check=True).colors == out.colors
    with pytest.raises(PreconditionViolated):
        case_a_step(g, out.with_palette(4), hub_edge)


def _walk_fixture():
    # path of three degree-3 hubs (1-2-3), fillers keep degree below 3
    edges = [
        (1, 2), (2, 3),
        (1, 4), (1, 5),
        (2, 6),
        (3, 7), (3, 8),
        (4, 9), (5, 9), (6, 10), (7, 10),
    ]
    return Graph(10, edges)


def test_walk_on_interior_hub_edge():
    g = _walk_fixture()
    assert g.max_degree() == 3
    delta = 3
    for seed in range(40):
        f = random_proper_coloring(g, delta + 1, seed)
        interior = g.edge_id(1, 2)
        if f.colors[interior] != delta + 1:
            continue
        state = walk_init(g, f, interior)
        baseline = len(color_class(f, delta + 1))
        res = walk_step(g, f, state)
        assert res.kind in ("terminal", "eliminated", "extended")
        top_after = len(color_class(res.coloring.with_palette(delta + 1), delta + 1))
        if res.kind == "extended":
            assert top_after <= baseline
            assert res.state.vertices[-1] not in state.vertices
        else:
            assert top_after < baseline
        assert apply_transcript(g, f, res.transcript, check=True).colors == res.coloring.colors
        break
    else:
        pytest.skip("no seed placed the top color on the interior hub edge")
