"""The 4-regular case machine and its lemma surfaces."""
import random

import pytest

from kempe_edge.errors import (
    BadWindow,
    NotRegular4,
    TargetNotProper4,
)
from kempe_edge.fixtures_gen import (
    figure1_pair,
    octahedron,
    random_regular4_class1,
    random_proper_coloring,
)
from kempe_edge.graph_core import EdgeColoring, Graph, is_proper, palette_at
from kempe_edge.kempe_engine import apply_transcript
from kempe_edge.kernels import backend
from kempe_edge.oracle import same_class
from kempe_edge.regular4_core import (
    TargetContext,
    case_b23_escape,
    lemma_2_1_a,
    lemma_2_1_b,
    lemma_2_2,
    lemma_2_3,
    theorem_4_1_transform,
)


def _bicolored_paths(g, f, a, b):
    """All maximal (a,b)-paths as vertex sequences."""
    from kempe_edge.graph_core import bicolored_subgraph

    return [
        list(c.vertices)
        for c in bicolored_subgraph(g, f, a, b)
        if c.kind == "path"
    ]


def _windows(g, f, length):
    """All (1,2)-path windows of the given vertex count (both orientations)."""
    out = []
    for verts in _bicolored_paths(g, f, 1, 2):
        for i in range(len(verts) - length + 1):
            out.append(verts[i: i + length])
            out.append(list(reversed(verts[i: i + length])))
    return out


def test_theorem_4_1_trivial_equal():
    g = octahedron()
    _, h = figure1_pair()
    f5 = EdgeColoring(5, h.colors)
    tr = theorem_4_1_transform(g, f5, h)
    assert len(tr.moves) == 0


def test_theorem_4_1_input_validation():
    g = octahedron()
    f, h = figure1_pair()
    with pytest.raises(Exception):
        theorem_4_1_transform(g, f, h)  # palette 4 working coloring
    star = Graph(5, [(1, 2), (1, 3), (1, 4), (1, 5)])
    with pytest.raises(NotRegular4):
        theorem_4_1_transform(
            star, EdgeColoring(5, [1, 2, 3, 4]), EdgeColoring(4, [1, 2, 3, 4])
        )
    bad_h = EdgeColoring(4, [1] * 12)
    with pytest.raises(TargetNotProper4):
        theorem_4_1_transform(g, EdgeColoring(5, f.colors), bad_h)


def test_theorem_4_1_octahedron_end_to_end():
    g = octahedron()
    _, h = figure1_pair()
    for seed in range(10):
        f = random_proper_coloring(g, 5, seed)
        stats = []
        tr = theorem_4_1_transform(g, f, h, stats)
        final = apply_transcript(g, f, tr, check=True)
        assert final.colors == h.colors
        assert all(after > before for before, after in stats)


def test_theorem_4_1_sweep_with_monovariant():
    for n in (6, 8, 10, 12):
        for seed in range(8):
            g, h = random_regular4_class1(n, seed)
            f = random_proper_coloring(g, 5, seed * 13 + n)
            stats = []
            tr = theorem_4_1_transform(g, f, h, stats)
            assert apply_transcript(g, f, tr, check=True).colors == h.colors
            assert all(after > before for before, after in stats)


def test_theorem_4_1_oracle_cross_check():
    g = octahedron()
    _, h = figure1_pair()
    f = random_proper_coloring(g, 5, 123)
    tr = theorem_4_1_transform(g, f, h)
    assert apply_transcript(g, f, tr, check=True).colors == h.colors
    ok, _ = same_class(g, 5, f, EdgeColoring(5, h.colors))
    assert ok


def test_lemma_2_1_a_outcomes_and_derived_postconditions():
    improved = 0
    for seed in range(40):
        g, h = random_regular4_class1(10, seed)
        f = random_proper_coloring(g, 5, seed)
        for pv in _windows(g, f, 5)[:12]:
            res = lemma_2_1_a(g, f, pv)
            if res[0] == "improved":
                _, coloring, tr, pair_edge, c = res
                assert c in (3, 4, 5)
                assert is_proper(g, coloring)
                # the color is missing at both ends of the returned edge
                u, v = g.edges[pair_edge]
                assert c not in palette_at(g, coloring, u)
                assert c not in palette_at(g, coloring, v)
                # every move stays inside {3,4,5}
                for mv in tr.moves:
                    assert {mv.a, mv.b} <= {3, 4, 5}
                assert apply_transcript(g, f, tr, check=True) == coloring
                improved += 1
            else:
                assert res[1].verify(g, f)
    assert improved > 50


def test_lemma_2_1_a_settled_window_certificate():
    # frozen instance where both window conditions hold (settled windows are
    # rare under random colorings; found by seeded scan)
    g, _ = random_regular4_class1(8, 248)
    f = random_proper_coloring(g, 5, 4224)
    res = lemma_2_1_a(g, f, [5, 2, 8, 7, 3])
    assert res[0] == "holds"
    cert = res[1]
    assert cert.verify(g, f)
    assert cert.window == (2, 8, 7)
    # the certificate is literal: both off-path neighbors of the middle
    # vertex carry all of {3,4,5}
    for x in (cert.x1, cert.x2):
        assert {3, 4, 5} <= palette_at(g, f, x)


def test_lemma_2_1_a_direct_missing_color_needs_no_moves():
    for seed in range(60):
        g, _ = random_regular4_class1(10, seed)
        f = random_proper_coloring(g, 5, seed + 77)
        for pv in _windows(g, f, 5)[:8]:
            v1, v2, v3 = pv[1], pv[2], pv[3]
            direct = [
                c
                for c in (3, 4, 5)
                if c not in palette_at(g, f, v1) | palette_at(g, f, v2)
                or c not in palette_at(g, f, v2) | palette_at(g, f, v3)
            ]
            if direct:
                res = lemma_2_1_a(g, f, pv)
                assert res[0] == "improved"
                assert len(res[2].moves) == 0
                return
    pytest.skip("no direct-missing window found")


def test_lemma_2_1_a_rejects_bad_window():
    g, _ = random_regular4_class1(8, 0)
    f = random_proper_coloring(g, 5, 1)
    with pytest.raises(BadWindow):
        lemma_2_1_a(g, f, [1, 2, 3, 4])  # wrong arity
    with pytest.raises(BadWindow):
        lemma_2_1_a(g, f, [1, 2, 1, 2, 1])  # repeated vertices
    # a walk along a non-(1,2)-colored edge is rejected
    for eid, c in enumerate(f.colors):
        if c == 3:
            u, v = g.edges[eid]
            rest = [w for w in range(1, g.n + 1) if w not in (u, v)][:3]
            with pytest.raises(BadWindow):
                lemma_2_1_a(g, f, [u, v] + rest)
            break


def test_lemma_2_1_b_postcondition():
    found = 0
    for seed in range(60):
        g, _ = random_regular4_class1(12, seed)
        f = random_proper_coloring(g, 5, seed * 3)
        for pv in _windows(g, f, 6)[:8]:
            coloring, tr, i, c = lemma_2_1_b(g, f, pv)
            assert 1 <= i <= 3 and c in (3, 4, 5)
            u, v = pv[i], pv[i + 1]
            assert c not in palette_at(g, coloring, u)
            assert c not in palette_at(g, coloring, v)
            for mv in tr.moves:
                assert {mv.a, mv.b} <= {3, 4, 5}
            assert apply_transcript(g, f, tr, check=True) == coloring
            found += 1
        if found > 60:
            break
    assert found > 30


def test_lemma_2_2_outcomes():
    seen = set()
    ctx_checks = 0
    for seed in range(200):
        g, h = random_regular4_class1(10, seed % 60)
        f = random_proper_coloring(g, 5, seed)
        ctx = TargetContext(h)
        for pv in _windows(g, f, 5):
            e = g.edge_id(pv[0], pv[1])
            if f.colors[e] != 2 or h.colors[e] != 1:
                continue
            x2 = None  # precondition u1 != x2 checked inside; skip failures
            try:
                out = lemma_2_2(g, f, h, pv)
            except Exception:
                continue
            seen.add(out[0])
            if out[0] == "I":
                assert out[1].verify(g, f)
            elif out[0] == "II":
                coloring, tr = out[1], out[2]
                assert ctx.matched_count(coloring) == ctx.matched_count(f)
                assert 1 not in palette_at(g, coloring, pv[1])
                assert apply_transcript(g, f, tr, check=True) == coloring
            elif out[0] == "III":
                coloring, tr, pair_edge, c = out[1], out[2], out[3], out[4]
                u, v = g.edges[pair_edge]
                assert c not in palette_at(g, coloring, u)
                assert c not in palette_at(g, coloring, v)
                for mv in tr.moves:
                    assert {mv.a, mv.b} <= {3, 4, 5}
            else:
                coloring, tr = out[1], out[2]
                assert ctx.matched_count(coloring) > ctx.matched_count(f)
            ctx_checks += 1
        if seen >= {"II", "III"} and ctx_checks > 80:
            break
    assert "III" in seen and "II" in seen


def test_lemma_2_3_increases_matched_count():
    done = 0
    for seed in range(120):
        g, h = random_regular4_class1(10, seed % 50)
        f = random_proper_coloring(g, 5, seed + 999)
        ctx = TargetContext(h)
        for eid in range(g.m):
            if f.colors[eid] != 2 or h.colors[eid] != 1:
                continue
            # check the distance precondition independently
            comp, verts, cyc = backend.trace_component(
                g.arrays(), list(f.colors), 1, 2, eid
            )
            s = comp.index(eid)
            near = []
            if cyc:
                nn = len(comp)
                near = [comp[(s + d) % nn] for d in (-3, -2, -1, 1, 2, 3)]
            else:
                near = comp[max(0, s - 3): s] + comp[s + 1: s + 4]
            if any(f.colors[x] == 1 and h.colors[x] == 1 for x in near):
                continue
            coloring, tr = lemma_2_3(g, f, h, eid)
            assert ctx.matched_count(coloring) > ctx.matched_count(f)
            assert apply_transcript(g, f, tr, check=True) == coloring
            done += 1
            break
        if done >= 25:
            break
    assert done >= 10


def test_case_b23_escape_surface():
    done = 0
    for seed in range(300):
        g, h = random_regular4_class1(12, seed % 80)
        f = random_proper_coloring(g, 5, seed)
        ctx = TargetContext(h)
        for eid in range(g.m):
            if h.colors[eid] != 1 or f.colors[eid] == 1:
                continue
            u, v = g.edges[eid]
            has1 = lambda w: any(f.colors[e2] == 1 for _, e2 in g.adj[w])
            if not (has1(u) and has1(v)):
                continue
            coloring, tr, tag = case_b23_escape(g, f, h, eid)
            assert is_proper(g, coloring)
            assert apply_transcript(g, f, tr, check=True) == coloring
            if tag == "done":
                assert ctx.matched_count(coloring) > ctx.matched_count(f)
            else:
                assert tag in ("case_A", "case_B1")
                assert ctx.matched_count(coloring) >= ctx.matched_count(f)
            done += 1
            break
        if done >= 20:
            break
    assert done >= 10


def test_describe_window_names_the_component():
    from kempe_edge.regular4_core import describe_window

    g, h = random_regular4_class1(10, 3)
    f = random_proper_coloring(g, 5, 9)
    for eid in range(g.m):
        if f.colors[eid] != 1:
            win = describe_window(g, f, eid)
            u, v = g.edges[eid]
            assert {win.u_side[0], win.v_side[0]} == {u, v}
            for x in (win.x1, win.x2):
                if x is not None and len(win.v_side) > 1:
                    assert g.edge_id(win.v_side[1], x) is not None
            break
