"""Pure-Python kernels: bicolored-path tracing, properness, state enumeration.

These mirror the compiled routines in ``_speedups`` and are selected at
import time when the extension is unavailable (see :mod:`kempe_edge.kernels`).
State vectors are ``bytes`` of length m, one color per edge id.
"""
from __future__ import annotations


class GraphArrays:
    """Flat adjacency view shared by both kernel backends.

    `cache` holds the compiled backend's per-graph C structures when the
    extension is active.
    """

    __slots__ = ("n", "m", "edge_u", "edge_v", "adj_start", "adj_nbr", "adj_eid", "cache")

    def __init__(self, n, m, edge_u, edge_v, adj_start, adj_nbr, adj_eid):
        self.n = n
        self.m = m
        self.edge_u = edge_u
        self.edge_v = edge_v
        self.adj_start = adj_start
        self.adj_nbr = adj_nbr
        self.adj_eid = adj_eid
        self.cache = None


def build_arrays(g) -> GraphArrays:
    n, m = g.n, g.m
    edge_u = [0] * m
    edge_v = [0] * m
    for eid, (u, v) in enumerate(g.edges):
        edge_u[eid] = u
        edge_v[eid] = v
    adj_start = [0] * (n + 2)
    adj_nbr = []
    adj_eid = []
    for v in range(1, n + 1):
        adj_start[v] = len(adj_nbr)
        for w, eid in g.adj[v]:
            adj_nbr.append(w)
            adj_eid.append(eid)
    adj_start[n + 1] = len(adj_nbr)
    return GraphArrays(n, m, edge_u, edge_v, adj_start, adj_nbr, adj_eid)


def edge_with_color(ga, colors, v, c):
    """Edge id at v colored c, or -1."""
    for k in range(ga.adj_start[v], ga.adj_start[v + 1]):
        if colors[ga.adj_eid[k]] == c:
            return ga.adj_eid[k]
    return -1


def is_proper(ga, colors) -> bool:
    for v in range(1, ga.n + 1):
        seen = set()
        for k in range(ga.adj_start[v], ga.adj_start[v + 1]):
            c = colors[ga.adj_eid[k]]
            if c in seen:
                return False
            seen.add(c)
    return True


def trace_component(ga, colors, a, b, e0):
    """Component of the (a, b)-subgraph containing edge e0.

    Returns (edge_ids, vertices, is_cycle) with vertices ordered along the
    path (smaller-id endpoint first) or around the cycle (smallest vertex
    first, toward its smaller-id neighbor).  edge_ids[i] joins vertices[i]
    and vertices[i+1] (wrapping for cycles).
    """
    u0, v0 = ga.edge_u[e0], ga.edge_v[e0]

    def walk(start, first_edge):
        # Extend from `start` away through `first_edge`; stop at a missing
        # color or when the start vertex reappears (cycle).
        verts = [start]
        eids = []
        v = start
        eid = first_edge
        while True:
            eids.append(eid)
            v = ga.edge_v[eid] if ga.edge_u[eid] == v else ga.edge_u[eid]
            verts.append(v)
            if v == start:
                return verts, eids, True
            want = b if colors[eid] == a else a
            nxt = -1
            for k in range(ga.adj_start[v], ga.adj_start[v + 1]):
                e = ga.adj_eid[k]
                if e != eid and colors[e] == want:
                    nxt = e
                    break
            if nxt < 0:
                return verts, eids, False
            eid = nxt

    verts, eids, cyc = walk(u0, e0)
    if cyc:
        vs, es = verts[:-1], eids
        pos = vs.index(min(vs))
        vs = vs[pos:] + vs[:pos]
        es = es[pos:] + es[:pos]
        if len(vs) > 2 and vs[-1] < vs[1]:
            # reverse direction: vertices[0] stays, edges realign
            vs = [vs[0]] + vs[:0:-1]
            es = es[::-1]
        return es, vs, True
    # Path: continue from u0 in the other direction.
    want = b if colors[e0] == a else a
    back_first = -1
    for k in range(ga.adj_start[u0], ga.adj_start[u0 + 1]):
        e = ga.adj_eid[k]
        if e != e0 and colors[e] == want:
            back_first = e
            break
    if back_first >= 0:
        verts2, eids2, cyc2 = walk(u0, back_first)
        assert not cyc2
        vs = verts2[::-1] + verts[1:]
        es = eids2[::-1] + eids
    else:
        vs, es = verts, eids
    if vs[0] > vs[-1]:
        vs = vs[::-1]
        es = es[::-1]
    return es, vs, False


def swap_component(colors, edge_ids, a, b):
    for e in edge_ids:
        colors[e] = b if colors[e] == a else a


def _enum_order(ga):
    """Edge order for backtracking: BFS over edge adjacency for tight pruning."""
    m = ga.m
    if m == 0:
        return []
    incident = [[] for _ in range(ga.n + 1)]
    for eid in range(m):
        incident[ga.edge_u[eid]].append(eid)
        incident[ga.edge_v[eid]].append(eid)
    seen = [False] * m
    order = []
    for seed in range(m):
        if seen[seed]:
            continue
        stack = [seed]
        seen[seed] = True
        while stack:
            e = stack.pop()
            order.append(e)
            for v in (ga.edge_u[e], ga.edge_v[e]):
                for e2 in incident[v]:
                    if not seen[e2]:
                        seen[e2] = True
                        stack.append(e2)
    return order


def enumerate_proper(ga, t, cap):
    """All proper t-colorings as bytes, or (partial, True) when cap is hit."""
    m = ga.m
    order = _enum_order(ga)
    colors = bytearray(m)
    used = [0] * (ga.n + 1)  # bitmask of colors at each vertex
    out = []
    truncated = False

    def rec(i):
        nonlocal truncated
        if truncated:
            return
        if i == m:
            if len(out) >= cap:
                truncated = True
                return
            out.append(bytes(colors))
            return
        e = order[i]
        u, v = ga.edge_u[e], ga.edge_v[e]
        avail = ~(used[u] | used[v])
        for c in range(1, t + 1):
            bit = 1 << c
            if avail & bit:
                colors[e] = c
                used[u] |= bit
                used[v] |= bit
                rec(i + 1)
                used[u] &= ~bit
                used[v] &= ~bit
                if truncated:
                    return
        colors[e] = 0

    rec(0)
    return out, truncated


def _components_of_pair(ga, colors, a, b):
    comps = []
    seen = [False] * ga.m
    for eid in range(ga.m):
        if seen[eid] or colors[eid] not in (a, b):
            continue
        es, _, _ = trace_component(ga, colors, a, b, eid)
        for e in es:
            seen[e] = True
        comps.append(es)
    return comps


def kempe_neighbors(ga, state, t):
    """All states one Kempe interchange away from `state` (bytes)."""
    colors = list(state)
    out = []
    for a in range(1, t + 1):
        for b in range(a + 1, t + 1):
            for es in _components_of_pair(ga, colors, a, b):
                nxt = bytearray(state)
                for e in es:
                    nxt[e] = b if nxt[e] == a else a
                out.append(bytes(nxt))
    return out

def kempe_neighbor_moves(ga, state, t, color_set=None):
    """Like kempe_neighbors but yields (a, b, rep_edge, next_state).

    `color_set` restricts the move colors when given (used by the bounded
    searches that must not leave a sub-palette).
    """
    colors = list(state)
    cs = sorted(color_set) if color_set is not None else list(range(1, t + 1))
    out = []
    for i, a in enumerate(cs):
        for b in cs[i + 1:]:
            for es in _components_of_pair(ga, colors, a, b):
                nxt = bytearray(state)
                for e in es:
                    nxt[e] = b if nxt[e] == a else a
                out.append((a, b, min(es), bytes(nxt)))
    return out
