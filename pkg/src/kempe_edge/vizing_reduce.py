"""Palette reduction t -> Delta+1 by interchanges (classical fan recoloring).

The core is :func:`eliminate_via_fan`: clear one edge whose color lies outside
the working palette by growing a fan at a pivot, then downshifting, with at
most one bicolored-path interchange to restore saturation.  The same engine
is reused by the acyclic max-degree reduction, which additionally needs the
"stuck" outcome (the last fan leaf misses only the color being eliminated).
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalInvariantError, PaletteTooSmall
from .graph_core import EdgeColoring, Graph, require_proper
from .kempe_engine import Fan, Recorder


@dataclass
class FanOutcome:
    """Result of one fan-elimination attempt."""

    eliminated: bool
    fan: Fan  # the grown fan (meaningful mainly when not eliminated)


def _grow_until_saturated(rec: Recorder, pivot: int, first_edge: int, allowed):
    """Fan growth with associated colors inside `allowed`.

    Stops as soon as an allowed color is missing at both the pivot and the
    current leaf (returning it), or when no extension exists (maximal fan).
    Tie-break: lowest edge id among candidate extensions.
    """
    g = rec.g
    pivot_missing = frozenset(allowed) - rec.palette(pivot)
    edges = [first_edge]
    used = {first_edge}
    leaf = g.other_end(first_edge, pivot)
    associated = []
    while True:
        leaf_pal = rec.palette(leaf)
        sat = sorted(pivot_missing - leaf_pal)
        if sat:
            return Fan(pivot, tuple(edges), tuple(associated)), sat[0]
        cand = [
            eid
            for _, eid in g.adj[pivot]
            if eid not in used
            and rec.colors[eid] in allowed
            and rec.colors[eid] not in leaf_pal
        ]
        if not cand:
            return Fan(pivot, tuple(edges), tuple(associated)), None
        nxt = min(cand)
        edges.append(nxt)
        used.add(nxt)
        associated.append(rec.colors[nxt])
        leaf = g.other_end(nxt, pivot)


def _downshift_rec(rec: Recorder, fan_edges, free_color: int, note: str) -> None:
    """Fan rotation as single-edge interchanges (each component asserted {e})."""
    target = free_color
    for eid in reversed(fan_edges):
        old = rec.colors[eid]
        rec.recolor_edge(eid, target, note)
        target = old


def eliminate_via_fan(rec: Recorder, pivot: int, e1: int, allowed, note: str) -> FanOutcome:
    """Recolor e1 (whose color is outside `allowed`) using colors in `allowed`.

    Returns eliminated=True with the offending color cleared from e1, or
    eliminated=False (no move applied) when the final fan leaf misses no
    allowed color; the caller then walks toward a better pivot.
    """
    g = rec.g
    allowed = frozenset(allowed)
    if rec.colors[e1] in allowed:
        raise InternalInvariantError("edge to eliminate already inside palette")
    fan, sat_color = _grow_until_saturated(rec, pivot, e1, allowed)
    edges = list(fan.edges)
    leaves = list(fan.leaves(g))
    k = len(edges)
    u_k = leaves[-1]
    if sat_color is not None:
        # saturated prefix: straight downshift
        _downshift_rec(rec, edges, sat_color, note)
        return FanOutcome(True, fan)
    missing_allowed = sorted(allowed - rec.palette(u_k))
    if not missing_allowed:
        return FanOutcome(False, fan)
    # unsaturated maximal fan: every allowed color missing at the last leaf
    # appears at the pivot, necessarily on a fan edge
    c_next = missing_allowed[0]
    pivot_edge = rec.edge_with_color(pivot, c_next)
    if pivot_edge < 0:
        raise InternalInvariantError("unsaturated fan with a free pivot color")
    try:
        idx = edges.index(pivot_edge)
    except ValueError:
        raise InternalInvariantError(
            "maximal fan left an extendable edge unused"
        ) from None
    if not (1 <= idx <= k - 2):
        raise InternalInvariantError(f"fan repeat at invalid position {idx}")
    c0_options = sorted(allowed - rec.palette(pivot))
    if not c0_options:
        raise InternalInvariantError("pivot sees every allowed color")
    c0 = c0_options[0]
    if c0 not in rec.palette(u_k):
        _downshift_rec(rec, edges, c0, note)
        return FanOutcome(True, fan)
    # walk the (c0, c_next) path from u_k and split on where it lands
    rep = rec.edge_with_color(u_k, c0)
    edge_ids, verts, is_cycle = rec.component(c0, c_next, rep)
    if is_cycle:
        raise InternalInvariantError("leaf path closed into a cycle")
    vset = set(verts)
    u_j1 = leaves[idx]      # u_{j+1}: far end of the repeated fan edge
    u_j = leaves[idx - 1]   # u_j: the leaf missing the repeated color
    rec.apply(c0, c_next, rep, note)
    if u_j1 in vset:
        if pivot not in (verts[0], verts[-1]):
            raise InternalInvariantError("pivot expected as path endpoint")
        _downshift_rec(rec, edges[:idx], c_next, note)
    elif u_j in vset:
        _downshift_rec(rec, edges[:idx], c0, note)
    else:
        _downshift_rec(rec, edges, c0, note)
    return FanOutcome(True, fan)


def reduce_to_delta_plus_one(g: Graph, f: EdgeColoring):
    """Drive every color above Delta+1 out of the coloring.

    Returns (coloring with palette Delta+1, transcript).  The transcript
    replayed from f ends with the same assignment; shrinking the palette
    header is a no-move bookkeeping step.
    """
    require_proper(g, f)
    delta = g.max_degree()
    if f.t <= delta + 1:
        raise PaletteTooSmall(f"palette {f.t} <= Delta+1 = {delta + 1}")
    rec = Recorder(g, f)
    allowed = range(1, delta + 2)
    for c_top in range(f.t, delta + 1, -1):
        while True:
            offenders = [eid for eid in range(g.m) if rec.colors[eid] == c_top]
            if not offenders:
                break
            eid = offenders[0]
            pivot = g.edges[eid][0]  # canonical u < v: lower endpoint
            before = len(offenders)
            out = eliminate_via_fan(rec, pivot, eid, allowed, f"vizing-fan:{c_top}")
            if not out.eliminated:
                raise InternalInvariantError("fan elimination stuck below Delta+1")
            after = sum(1 for c in rec.colors if c == c_top)
            if after >= before:
                raise InternalInvariantError("top-color count did not decrease")
    rec.check_proper("after palette reduction")
    return EdgeColoring(delta + 1, rec.colors), rec.tr
