"""Straight-segment tracing with exact event records.

``trace_segment`` follows the geodesic ``t -> t*v`` for ``t`` in (0, 1]
from a cone point, across triangles, straight through regular vertices,
and reports every crossing with exact rational parameters.  The records
are consumed by the surgery code, which promotes traced segments to mesh
edge chains.

The mesh argument is duck-typed: anything with ``vec``, ``twin`` and
``nxt`` sequences works (immutable surfaces and mutable builders alike).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .geometry import Vec, corner_contains, cross, dot

_EAST = (1, 0)


def ccw_out(mesh, o: int) -> int:
    """Next outgoing half-edge counterclockwise around start(o)."""
    return mesh.twin[mesh.nxt[mesh.nxt[o]]]


def vertex_out_edges(mesh, o: int) -> list[int]:
    """All outgoing half-edges at start(o), counterclockwise from o."""
    out = [o]
    g = ccw_out(mesh, o)
    while g != o:
        out.append(g)
        g = ccw_out(mesh, g)
        if len(out) > len(mesh.vec):
            raise RuntimeError("vertex orbit does not close")
    return out


def vertex_order(mesh, o: int) -> int:
    """Cone order at start(o): (number of full turns) - 1."""
    turns = 0
    for g in vertex_out_edges(mesh, o):
        if corner_contains(mesh.vec[g], mesh.vec[ccw_out(mesh, g)], _EAST):
            turns += 1
    return turns - 1


def corner_occurrences(mesh, o: int, d) -> list[int]:
    """Corners at start(o) whose half-open arc contains direction d.

    There are exactly ``order + 1`` of them, returned in counterclockwise
    cyclic order starting from ``o``.
    """
    hits = []
    for g in vertex_out_edges(mesh, o):
        if corner_contains(mesh.vec[g], mesh.vec[ccw_out(mesh, g)], d):
            hits.append(g)
    return hits


def angular_position(mesh, o: int, g: int, d) -> int:
    """How many corners lie counterclockwise strictly between o and the
    corner g, walking from o.  Used to order direction occurrences."""
    out = vertex_out_edges(mesh, o)
    return out.index(g)


@dataclass
class TraceResult:
    """Events along a traced segment, in order of increasing parameter.

    events entries:
      ("cross", half_edge, t, pos)   transversal crossing at edge
                                     parameter t in (0,1), exact
      ("ride", half_edge, pos)       traveled along the full edge
      ("through", out_he, pos)       passed straight through the regular
                                     vertex start(out_he); out_he is the
                                     corner the segment leaves through
    end entries:
      ("vertex", out_he)             endpoint is the existing vertex
                                     start(out_he)
      ("edge", half_edge, t)         endpoint lies inside an edge
      ("inside", half_edge, offset)  endpoint lies strictly inside the
                                     triangle of half_edge; offset is
                                     endpoint - start(half_edge)
      ("blocked", out_he, pos)       a cone point was hit strictly before
                                     the endpoint
    """

    events: list = field(default_factory=list)
    end: tuple = ()

    @property
    def blocked(self) -> bool:
        return self.end[0] == "blocked"

    def node_positions(self) -> list[Vec]:
        return [ev[-1] for ev in self.events]


def trace_segment(mesh, start_corner: int, v: Vec) -> TraceResult:
    """Trace the segment of holonomy v leaving through ``start_corner``.

    ``start_corner`` must be an outgoing half-edge whose corner arc
    contains the direction of v (use ``corner_occurrences``).  Regular
    vertices met strictly inside the segment are passed through; cone
    points block.
    """
    vec, twin, nxt = mesh.vec, mesh.twin, mesh.nxt
    d = v
    dd = dot(d, d)
    res = TraceResult()
    ev = res.events
    o = start_corner
    pos = Vec(0, 0)
    guard = 0
    while True:
        guard += 1
        if guard > 10**7:
            raise RuntimeError("trace did not terminate")
        u = vec[o]
        if cross(u, d) == 0 and dot(u, d) > 0:
            # riding along edge o
            npos = Vec(pos[0] + u[0], pos[1] + u[1])
            sn = dot(d, npos)
            if sn > dd:
                t = Fraction(dd - dot(d, pos)) / Fraction(dot(d, u))
                res.end = ("edge", o, t)
                return res
            if sn == dd:
                res.end = ("vertex", twin[o])
                ev.append(("ride", o, npos))
                return res
            if vertex_order(mesh, twin[o]) >= 1:
                res.end = ("blocked", twin[o], npos)
                return res
            ev.append(("ride", o, npos))
            pos = npos
            o = _corner_through(mesh, twin[o], d)
            continue
        # leave through the interior of the corner
        e = nxt[o]
        P = Vec(pos[0] + u[0], pos[1] + u[1])
        Q = Vec(P[0] + vec[e][0], P[1] + vec[e][1])
        cP = cross(d, P)
        cQ = cross(d, Q)
        while True:
            guard += 1
            if guard > 10**7:
                raise RuntimeError("trace did not terminate")
            # crossing point X on edge e at parameter t
            den = cP - cQ
            t = Fraction(cP) / Fraction(den)
            X = Vec(P[0] + t * (Q[0] - P[0]), P[1] + t * (Q[1] - P[1]))
            sX = dot(d, X)
            if sX > dd:
                res.end = ("inside", e, Vec(v[0] - P[0], v[1] - P[1]))
                return res
            if sX == dd:
                res.end = ("edge", e, t)
                return res
            ev.append(("cross", e, t, X))
            te = twin[e]
            a2 = nxt[te]
            a3 = nxt[a2]
            V = Vec(P[0] + vec[a2][0], P[1] + vec[a2][1])
            cV = cross(d, V)
            if cV == 0:
                sV = dot(d, V)
                if sV > dd:
                    res.end = ("inside", te, Vec(v[0] - Q[0], v[1] - Q[1]))
                    return res
                if sV == dd:
                    res.end = ("vertex", a3)
                    return res
                if vertex_order(mesh, a3) >= 1:
                    res.end = ("blocked", a3, V)
                    return res
                ev.append(("through", a3, V))
                pos = V
                o = _corner_through(mesh, a3, d)
                break
            if (cP > 0) != (cV > 0):
                e, Q, cQ = a2, V, cV
            else:
                e, P, cP = a3, V, cV


def _corner_through(mesh, out_he: int, d) -> int:
    """Corner at start(out_he) containing direction d (unique at 2*pi)."""
    o = out_he
    n = len(mesh.vec)
    for _ in range(n + 1):
        nb = ccw_out(mesh, o)
        if corner_contains(mesh.vec[o], mesh.vec[nb], d):
            return o
        o = nb
        if o == out_he:
            break
    raise RuntimeError("no corner contains the continuation direction")


def resolve_corner(mesh, out_he: int, d) -> int:
    """First corner from ``out_he`` counterclockwise whose arc contains d.

    Earlier subdivisions may have split a stored corner by inserting
    spokes; the occurrence ray then lies in one of the descendants, which
    is the first containing corner reached walking counterclockwise.
    """
    return _corner_through(mesh, out_he, d)


def redevelop(mesh, start_corner: int, v: Vec) -> TraceResult:
    """Re-trace an anchor; the result's end must be a vertex at v."""
    return trace_segment(mesh, start_corner, v)
