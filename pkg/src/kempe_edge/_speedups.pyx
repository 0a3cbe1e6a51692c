# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels: bicolored-path tracing, properness, state enumeration.

Drop-in replacement for ``_kernels_py`` on the hot paths (oracle state-space
sweeps and transform inner loops).  Semantics, including the canonical
component orientation, must match the pure-Python module exactly.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy


cdef class CGraph:
    cdef int n, m
    cdef int* edge_u
    cdef int* edge_v
    cdef int* adj_start
    cdef int* adj_nbr
    cdef int* adj_eid

    def __cinit__(self, ga):
        cdef int i
        self.n = ga.n
        self.m = ga.m
        self.edge_u = <int*> malloc(sizeof(int) * max(1, self.m))
        self.edge_v = <int*> malloc(sizeof(int) * max(1, self.m))
        self.adj_start = <int*> malloc(sizeof(int) * (self.n + 2))
        cdef int deg_total = len(ga.adj_nbr)
        self.adj_nbr = <int*> malloc(sizeof(int) * max(1, deg_total))
        self.adj_eid = <int*> malloc(sizeof(int) * max(1, deg_total))
        for i in range(self.m):
            self.edge_u[i] = ga.edge_u[i]
            self.edge_v[i] = ga.edge_v[i]
        for i in range(self.n + 2):
            self.adj_start[i] = ga.adj_start[i]
        for i in range(deg_total):
            self.adj_nbr[i] = ga.adj_nbr[i]
            self.adj_eid[i] = ga.adj_eid[i]

    def __dealloc__(self):
        free(self.edge_u)
        free(self.edge_v)
        free(self.adj_start)
        free(self.adj_nbr)
        free(self.adj_eid)


cdef CGraph _cg(ga):
    if ga.cache is None:
        ga.cache = CGraph(ga)
    return <CGraph> ga.cache


cdef void _load_colors(object colors, unsigned char* buf, int m):
    cdef int i
    if isinstance(colors, (bytes, bytearray)):
        for i in range(m):
            buf[i] = (<object> colors)[i]
    else:
        for i in range(m):
            buf[i] = colors[i]


def is_proper(ga, colors):
    cdef CGraph cg = _cg(ga)
    cdef int v, k, c
    cdef unsigned int seen
    cdef unsigned char* col = <unsigned char*> malloc(max(1, cg.m))
    _load_colors(colors, col, cg.m)
    try:
        for v in range(1, cg.n + 1):
            seen = 0
            for k in range(cg.adj_start[v], cg.adj_start[v + 1]):
                c = col[cg.adj_eid[k]]
                if seen & (1u << c):
                    return False
                seen |= 1u << c
        return True
    finally:
        free(col)


cdef int _edge_with_color(CGraph cg, unsigned char* col, int v, int c):
    cdef int k
    for k in range(cg.adj_start[v], cg.adj_start[v + 1]):
        if col[cg.adj_eid[k]] == c:
            return cg.adj_eid[k]
    return -1


def edge_with_color(ga, colors, int v, int c):
    cdef CGraph cg = _cg(ga)
    cdef unsigned char* col = <unsigned char*> malloc(max(1, cg.m))
    _load_colors(colors, col, cg.m)
    try:
        return _edge_with_color(cg, col, v, c)
    finally:
        free(col)


cdef int _walk(CGraph cg, unsigned char* col, int a, int b, int start,
               int first_edge, int* verts, int* eids, int* is_cycle):
    """Extend from `start` through `first_edge`.  Returns edge count.
    verts gets edge_count+1 entries (or edge_count for a cycle back to start).
    """
    cdef int v = start, eid = first_edge, ne = 0, want, k, nxt, e
    verts[0] = start
    while True:
        eids[ne] = eid
        if cg.edge_u[eid] == v:
            v = cg.edge_v[eid]
        else:
            v = cg.edge_u[eid]
        ne += 1
        verts[ne] = v
        if v == start:
            is_cycle[0] = 1
            return ne
        want = b if col[eid] == a else a
        nxt = -1
        for k in range(cg.adj_start[v], cg.adj_start[v + 1]):
            e = cg.adj_eid[k]
            if e != eid and col[e] == want:
                nxt = e
                break
        if nxt < 0:
            is_cycle[0] = 0
            return ne
        eid = nxt


cdef int _trace(CGraph cg, unsigned char* col, int a, int b, int e0,
                int* out_eids, int* out_verts, int* out_cycle):
    """Canonical component trace; fills out arrays, returns edge count."""
    cdef int m = cg.m
    cdef int* verts = <int*> malloc(sizeof(int) * (m + 2))
    cdef int* eids = <int*> malloc(sizeof(int) * (m + 1))
    cdef int* verts2 = <int*> malloc(sizeof(int) * (m + 2))
    cdef int* eids2 = <int*> malloc(sizeof(int) * (m + 1))
    cdef int u0 = cg.edge_u[e0], v0 = cg.edge_v[e0]
    cdef int cyc = 0, cyc2 = 0, ne, ne2, i, pos, mn, want, back_first, k, e, total
    try:
        ne = _walk(cg, col, a, b, u0, e0, verts, eids, &cyc)
        if cyc:
            # rotate to smallest vertex, orient toward smaller neighbor
            pos = 0
            mn = verts[0]
            for i in range(1, ne):
                if verts[i] < mn:
                    mn = verts[i]
                    pos = i
            for i in range(ne):
                out_verts[i] = verts[(pos + i) % ne]
                out_eids[i] = eids[(pos + i) % ne]
            if ne > 2 and out_verts[ne - 1] < out_verts[1]:
                for i in range(ne):
                    verts2[i] = out_verts[i]
                    eids2[i] = out_eids[i]
                for i in range(1, ne):
                    out_verts[i] = verts2[ne - i]
                for i in range(ne):
                    out_eids[i] = eids2[ne - 1 - i]
            out_cycle[0] = 1
            return ne
        want = b if col[e0] == a else a
        back_first = -1
        for k in range(cg.adj_start[u0], cg.adj_start[u0 + 1]):
            e = cg.adj_eid[k]
            if e != e0 and col[e] == want:
                back_first = e
                break
        if back_first >= 0:
            ne2 = _walk(cg, col, a, b, u0, back_first, verts2, eids2, &cyc2)
        else:
            ne2 = 0
        total = ne + ne2
        # verts2 reversed (dropping shared u0) + verts
        for i in range(ne2):
            out_verts[i] = verts2[ne2 - i]
            out_eids[i] = eids2[ne2 - 1 - i]
        for i in range(ne + 1):
            out_verts[ne2 + i] = verts[i]
        for i in range(ne):
            out_eids[ne2 + i] = eids[i]
        if out_verts[0] > out_verts[total]:
            for i in range(total + 1):
                verts2[i] = out_verts[i]
            for i in range(total):
                eids2[i] = out_eids[i]
            for i in range(total + 1):
                out_verts[i] = verts2[total - i]
            for i in range(total):
                out_eids[i] = eids2[total - 1 - i]
        out_cycle[0] = 0
        return total
    finally:
        free(verts)
        free(eids)
        free(verts2)
        free(eids2)


def trace_component(ga, colors, int a, int b, int e0):
    cdef CGraph cg = _cg(ga)
    cdef unsigned char* col = <unsigned char*> malloc(max(1, cg.m))
    cdef int* out_eids = <int*> malloc(sizeof(int) * (cg.m + 1))
    cdef int* out_verts = <int*> malloc(sizeof(int) * (cg.m + 2))
    cdef int cyc = 0, ne, i
    _load_colors(colors, col, cg.m)
    try:
        ne = _trace(cg, col, a, b, e0, out_eids, out_verts, &cyc)
        eids = [out_eids[i] for i in range(ne)]
        if cyc:
            verts = [out_verts[i] for i in range(ne)]
        else:
            verts = [out_verts[i] for i in range(ne + 1)]
        return eids, verts, bool(cyc)
    finally:
        free(col)
        free(out_eids)
        free(out_verts)


def swap_component(colors, edge_ids, a, b):
    for e in edge_ids:
        colors[e] = b if colors[e] == a else a


def _enum_order(ga):
    """Edge order for backtracking: BFS over edge adjacency (matches fallback)."""
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


def enumerate_proper(ga, int t, long cap):
    cdef CGraph cg = _cg(ga)
    cdef int m = cg.m
    order_py = _enum_order(ga)
    cdef int* order = <int*> malloc(sizeof(int) * max(1, m))
    cdef unsigned char* colors = <unsigned char*> malloc(max(1, m))
    cdef unsigned int* used = <unsigned int*> malloc(sizeof(unsigned int) * (cg.n + 1))
    cdef int* choice = <int*> malloc(sizeof(int) * (m + 1))
    cdef int i, depth, e, u, v, c
    cdef unsigned int avail, bit
    cdef bint truncated = False
    out = []
    for i in range(m):
        order[i] = order_py[i]
        colors[i] = 0
    for i in range(cg.n + 1):
        used[i] = 0
    try:
        if m == 0:
            return [b""], False
        depth = 0
        choice[0] = 0
        while depth >= 0:
            e = order[depth]
            u = cg.edge_u[e]
            v = cg.edge_v[e]
            # undo previous choice at this depth
            c = choice[depth]
            if c:
                bit = 1u << c
                used[u] &= ~bit
                used[v] &= ~bit
            # try next color
            c += 1
            avail = ~(used[u] | used[v])
            while c <= t and not (avail & (1u << c)):
                c += 1
            if c > t:
                choice[depth] = 0
                depth -= 1
                continue
            choice[depth] = c
            bit = 1u << c
            used[u] |= bit
            used[v] |= bit
            colors[e] = c
            if depth == m - 1:
                if len(out) >= cap:
                    truncated = True
                    break
                out.append(PyBytes_FromUChar(colors, m))
            else:
                depth += 1
                choice[depth] = 0
        return out, truncated
    finally:
        free(order)
        free(colors)
        free(used)
        free(choice)


cdef inline bytes PyBytes_FromUChar(unsigned char* buf, int m):
    return (<char*> buf)[:m]


def kempe_neighbors(ga, state, int t):
    cdef CGraph cg = _cg(ga)
    cdef int m = cg.m
    cdef unsigned char* col = <unsigned char*> malloc(max(1, m))
    cdef unsigned char* nxt = <unsigned char*> malloc(max(1, m))
    cdef unsigned char* seen = <unsigned char*> malloc(max(1, m))
    cdef int* out_eids = <int*> malloc(sizeof(int) * (m + 1))
    cdef int* out_verts = <int*> malloc(sizeof(int) * (m + 2))
    cdef int a, b, eid, ne, i, cyc
    _load_colors(state, col, m)
    out = []
    try:
        for a in range(1, t + 1):
            for b in range(a + 1, t + 1):
                for i in range(m):
                    seen[i] = 0
                for eid in range(m):
                    if seen[eid] or (col[eid] != a and col[eid] != b):
                        continue
                    ne = _trace(cg, col, a, b, eid, out_eids, out_verts, &cyc)
                    memcpy(nxt, col, m)
                    for i in range(ne):
                        seen[out_eids[i]] = 1
                        nxt[out_eids[i]] = b if col[out_eids[i]] == a else a
                    out.append(PyBytes_FromUChar(nxt, m))
        return out
    finally:
        free(col)
        free(nxt)
        free(seen)
        free(out_eids)
        free(out_verts)


def kempe_neighbor_moves(ga, state, int t, color_set=None):
    cdef CGraph cg = _cg(ga)
    cdef int m = cg.m
    cdef unsigned char* col = <unsigned char*> malloc(max(1, m))
    cdef unsigned char* nxt = <unsigned char*> malloc(max(1, m))
    cdef unsigned char* seen = <unsigned char*> malloc(max(1, m))
    cdef int* out_eids = <int*> malloc(sizeof(int) * (m + 1))
    cdef int* out_verts = <int*> malloc(sizeof(int) * (m + 2))
    cdef int a, b, eid, ne, i, cyc, rep, ia, ib
    _load_colors(state, col, m)
    if color_set is not None:
        cs = sorted(color_set)
    else:
        cs = list(range(1, t + 1))
    out = []
    try:
        for ia in range(len(cs)):
            a = cs[ia]
            for ib in range(ia + 1, len(cs)):
                b = cs[ib]
                for i in range(m):
                    seen[i] = 0
                for eid in range(m):
                    if seen[eid] or (col[eid] != a and col[eid] != b):
                        continue
                    ne = _trace(cg, col, a, b, eid, out_eids, out_verts, &cyc)
                    memcpy(nxt, col, m)
                    rep = m
                    for i in range(ne):
                        seen[out_eids[i]] = 1
                        if out_eids[i] < rep:
                            rep = out_eids[i]
                        nxt[out_eids[i]] = b if col[out_eids[i]] == a else a
                    out.append((a, b, rep, PyBytes_FromUChar(nxt, m)))
        return out
    finally:
        free(col)
        free(nxt)
        free(seen)
        free(out_eids)
        free(out_verts)
