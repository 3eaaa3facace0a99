"""Saddle connection enumeration by exact sector development.

From every endpoint vertex and every outgoing corner, triangle chains are
developed into the plane inside a shrinking direction cone.  Cone
boundaries are handled exactly: a ray through a developed vertex is
removed from both child cones, and if that vertex is a regular point the
ray is continued through it by a straight-line tracer.  All arithmetic is
integer or rational, so hits on lattice-aligned vertices (ubiquitous on
square-tiled surfaces) are never missed or double counted.

Lengths are compared against ``bound**2`` kept as an exact fraction;
floating surfaces are lifted coordinate-wise to rationals first.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BoundTooLarge, NoConePoints
from .geometry import Vec, corner_contains, cross, dot
from .surface import TranslationSurface

DEFAULT_MAX_TRIANGLES = 10**8


# --- result types ------------------------------------------------------------

@dataclass(frozen=True)
class Anchor:
    """Development anchor: the outgoing corner the connection leaves through.

    The crossing sequence is not stored; it is recomputed on demand by
    re-tracing the straight ray, which reproduces the holonomy exactly.
    """

    corner: int


@dataclass(frozen=True)
class SaddleConnection:
    start_cone: int
    end_cone: int
    holonomy: Vec
    anchor: Anchor

    @property
    def is_loop(self) -> bool:
        return self.start_cone == self.end_cone

    def norm_sq(self):
        return self.holonomy.norm_sq()

    @property
    def length(self) -> float:
        return math.sqrt(float(self.norm_sq()))

    def reversed_key(self):
        return (-self.holonomy.x, -self.holonomy.y)


@dataclass(frozen=True)
class ScanResult:
    connections: tuple[SaddleConnection, ...]
    length_bound: object
    surface_ref: str = ""

    def __len__(self) -> int:
        return len(self.connections)

    def __iter__(self):
        return iter(self.connections)

    def holonomies(self) -> list[Vec]:
        return [c.holonomy for c in self.connections]


# --- scan-time view of a surface ----------------------------------------------

class _Mesh:
    """Array view used by the enumerator and tracer (exact coordinates)."""

    __slots__ = ("vec", "twin", "nxt", "vertex_of", "order_of", "is_endpoint")

    def __init__(self, s: TranslationSurface):
        if s.exact:
            self.vec = list(s.vec)
        else:
            self.vec = [Vec(Fraction(float(v.x)), Fraction(float(v.y))) for v in s.vec]
        self.twin = s.twin
        self.nxt = s.nxt
        self.vertex_of = s.vertex_of
        self.order_of = [c.order for c in s.cone_points]
        endpoints = set(s.endpoint_vertices())
        self.is_endpoint = [
            (c.id in endpoints) for c in s.cone_points
        ]


def _rationalize(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(float(x))


def _approx_seg_dist(P, Q) -> float:
    px, py = float(P[0]), float(P[1])
    qx, qy = float(Q[0]), float(Q[1])
    dx, dy = qx - px, qy - py
    den = dx * dx + dy * dy
    if den <= 0.0:
        return px * px + py * py
    t = -(px * dx + py * dy) / den
    t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
    x, y = px + t * dx, py + t * dy
    return x * x + y * y


def _segment_cone_reachable(P, Q, u, w, ln, ld) -> bool:
    """Exact test: does segment PQ meet the closed cone [u,w] within bound.

    ``ln/ld`` is the squared length bound as a fraction of integers.
    """
    dx = Q[0] - P[0]
    dy = Q[1] - P[1]
    lo_n, lo_d = 0, 1
    hi_n, hi_d = 1, 1
    for c0, c1 in (
        (cross(u, P), u[0] * dy - u[1] * dx),
        (cross(P, w), dx * w[1] - dy * w[0]),
    ):
        if c1 == 0:
            if c0 < 0:
                return False
            continue
        if c1 > 0:
            if -c0 * lo_d > lo_n * c1:
                lo_n, lo_d = -c0, c1
        else:
            if c0 * hi_d < hi_n * (-c1):
                hi_n, hi_d = c0, -c1
    if lo_n * hi_d > hi_n * lo_d:
        return False

    def ok(tn, td):
        xx = P[0] * td + tn * dx
        yy = P[1] * td + tn * dy
        return (xx * xx + yy * yy) * ld <= ln * td * td

    if ok(lo_n, lo_d) or ok(hi_n, hi_d):
        return True
    den = dx * dx + dy * dy
    if den == 0:
        return False
    num = -(P[0] * dx + P[1] * dy)
    if num * lo_d < lo_n * den or num * hi_d > hi_n * den:
        return False
    return ok(num, den)


def _find_corner(m: _Mesh, out_he: int, d) -> int:
    """Outgoing half-edge at the same vertex whose corner arc contains d.

    Corner arcs are half-open [edge direction, next edge direction), so
    the answer is unique per full turn; at the regular vertices the
    tracer walks through, it is unique outright.
    """
    vec, twin, nxt = m.vec, m.twin, m.nxt
    o = out_he
    for _ in range(65536):
        nb = twin[nxt[nxt[o]]]
        if corner_contains(vec[o], vec[nb], d):
            return o
        o = nb
        if o == out_he:
            break
    raise RuntimeError("no corner contains the direction; corrupt mesh")


def _trace_scan(m: _Mesh, out_he: int, pos, ln, ld, corner_h, hits, counter, max_tri):
    """Continue the ray from the origin through a regular vertex at ``pos``.

    Records endpoint hits until the ray is blocked or exceeds the bound.
    """
    vec, twin, nxt = m.vec, m.twin, m.nxt
    vertex_of, is_endpoint = m.vertex_of, m.is_endpoint
    d = pos
    while True:
        o = _find_corner(m, out_he, d)
        u = vec[o]
        if cross(u, d) == 0 and dot(u, d) > 0:
            # ride along edge o to its head
            npos = Vec(pos[0] + u[0], pos[1] + u[1])
            if npos.norm_sq() * ld > ln:
                return
            v_id = vertex_of[twin[o]]
            if is_endpoint[v_id]:
                hits.append((corner_h, npos, v_id))
                return
            pos = npos
            out_he = twin[o]
            continue
        # enter the corner triangle; exit through its far edge
        e = nxt[o]
        P = Vec(pos[0] + u[0], pos[1] + u[1])
        Q = Vec(P[0] + vec[e][0], P[1] + vec[e][1])
        cP = cross(d, P)
        cQ = cross(d, Q)
        while True:
            counter[0] += 1
            if counter[0] > max_tri:
                raise BoundTooLarge(f"more than {max_tri} developed triangles")
            # crossing point of ray with edge e at parameter cP/(cP-cQ)
            den = cP - cQ
            xn = P[0] * den + cP * (Q[0] - P[0])
            yn = P[1] * den + cP * (Q[1] - P[1])
            if (xn * xn + yn * yn) * ld > ln * den * den:
                return
            te = twin[e]
            V = Vec(P[0] + vec[nxt[te]][0], P[1] + vec[nxt[te]][1])
            cV = cross(d, V)
            if cV == 0:
                # dot(d, V) > 0 holds: V is beyond the crossed edge
                if V.norm_sq() * ld > ln:
                    return
                v_id = vertex_of[nxt[nxt[te]]]
                if is_endpoint[v_id]:
                    hits.append((corner_h, V, v_id))
                    return
                pos = V
                out_he = nxt[nxt[te]]
                break
            if (cP > 0) != (cV > 0):
                e, Q, cQ = nxt[te], V, cV
            else:
                e, P, cP = nxt[nxt[te]], V, cV


def _scan_corner(m: _Mesh, corner_h: int, ln, ld, hits, counter, max_tri):
    vec, twin, nxt = m.vec, m.twin, m.nxt
    vertex_of, is_endpoint = m.vertex_of, m.is_endpoint
    A = vec[corner_h]
    # the boundary ray along the corner's first edge
    if A.norm_sq() * ld <= ln:
        v_id = vertex_of[twin[corner_h]]
        if is_endpoint[v_id]:
            hits.append((corner_h, A, v_id))
        else:
            _trace_scan(m, twin[corner_h], A, ln, ld, corner_h, hits, counter, max_tri)
    # wedge across the opposite edge; depth-first with a float pre-prune
    # followed by the exact clipped test (node set identical to fully
    # exact pruning)
    e0 = nxt[corner_h]
    Ax, Ay = A
    Bx, By = Ax + vec[e0][0], Ay + vec[e0][1]
    boundf = ln / ld * (1.0 + 1e-9) + 1e-12
    if not _segment_cone_reachable((Ax, Ay), (Bx, By), (Ax, Ay), (Bx, By), ln, ld):
        return
    stack = [(e0, Ax, Ay, Bx, By, Ax, Ay, Bx, By)]
    pop = stack.pop
    push = stack.append
    n_nodes = counter[0]
    while stack:
        e, Px, Py, Qx, Qy, ux, uy, wx, wy = pop()
        n_nodes += 1
        if n_nodes > max_tri:
            counter[0] = n_nodes
            raise BoundTooLarge(f"more than {max_tri} developed triangles")
        te = twin[e]
        a2 = nxt[te]
        v2 = vec[a2]
        Vx = Px + v2[0]
        Vy = Py + v2[1]
        if ux * Vy - uy * Vx > 0 and Vx * wy - Vy * wx > 0:
            if (Vx * Vx + Vy * Vy) * ld <= ln:
                a3 = nxt[a2]
                v_id = vertex_of[a3]
                if is_endpoint[v_id]:
                    hits.append((corner_h, Vec(Vx, Vy), v_id))
                else:
                    counter[0] = n_nodes
                    _trace_scan(
                        m, a3, Vec(Vx, Vy), ln, ld, corner_h, hits, counter, max_tri
                    )
                    n_nodes = counter[0]
        a3 = nxt[a2]
        for eC, S1x, S1y, S2x, S2y in (
            (a2, Px, Py, Vx, Vy),
            (a3, Vx, Vy, Qx, Qy),
        ):
            sgn = S1x * S2y - S1y * S2x
            if sgn == 0:
                continue
            if sgn > 0:
                lox, loy, hix, hiy = S1x, S1y, S2x, S2y
            else:
                lox, loy, hix, hiy = S2x, S2y, S1x, S1y
            if lox * uy - loy * ux >= 0:
                u2x, u2y = ux, uy
            else:
                u2x, u2y = lox, loy
            if wx * hiy - wy * hix >= 0:
                w2x, w2y = wx, wy
            else:
                w2x, w2y = hix, hiy
            if u2x * w2y - u2y * w2x <= 0:
                continue
            # cheap float lower bound on the segment distance
            px, py = float(S1x), float(S1y)
            dxf, dyf = float(S2x) - px, float(S2y) - py
            den = dxf * dxf + dyf * dyf
            if den > 0.0:
                t = -(px * dxf + py * dyf) / den
                if t < 0.0:
                    t = 0.0
                elif t > 1.0:
                    t = 1.0
                xf, yf = px + t * dxf, py + t * dyf
                if xf * xf + yf * yf > boundf:
                    continue
            if not _segment_cone_reachable(
                (S1x, S1y), (S2x, S2y), (u2x, u2y), (w2x, w2y), ln, ld
            ):
                continue
            push((eC, S1x, S1y, S2x, S2y, u2x, u2y, w2x, w2y))
    counter[0] = n_nodes


# --- public operations --------------------------------------------------------

def _int64_scan_safe(m: _Mesh, ln: int, ld: int) -> bool:
    """Whether the vectorized int64 scanner can run without overflow."""
    if not all(isinstance(v.x, int) and isinstance(v.y, int) for v in m.vec):
        return False
    if ld > 1 << 20 or ln < 0:
        return False
    maxedge = max(max(abs(v.x), abs(v.y)) for v in m.vec)
    reach = math.isqrt(ln // ld) + 1 + 2 * maxedge + 2
    return reach <= 1 << 20 and 2 * reach * reach * ld <= 1 << 61


def _scan_fast(m: _Mesh, corners, ln, ld, hits, counter, max_tri):
    """Vectorized wave expansion of the wedge search (int64 coordinates).

    Cone membership and vertex-hit tests are exact 64-bit integer
    arithmetic; only the distance pruning uses floats, with a safety
    margin so no node within the bound is ever dropped.
    """
    import numpy as np

    twin = np.asarray(m.twin, dtype=np.int64)
    nxt = np.asarray(m.nxt, dtype=np.int64)
    vx = np.asarray([v.x for v in m.vec], dtype=np.int64)
    vy = np.asarray([v.y for v in m.vec], dtype=np.int64)
    vertex_of, is_endpoint = m.vertex_of, m.is_endpoint

    boundf = ln / ld * (1.0 + 1e-9) + 1e-12
    margin = 1e-9

    cid0, e0, P0x, P0y, Q0x, Q0y = [], [], [], [], [], []
    for corner_h in corners:
        A = m.vec[corner_h]
        ax, ay = A
        if (ax * ax + ay * ay) * ld <= ln:
            v_id = vertex_of[twin[corner_h]]
            if is_endpoint[v_id]:
                hits.append((corner_h, Vec(ax, ay), v_id))
            else:
                _trace_scan(m, m.twin[corner_h], A, ln, ld, corner_h, hits, counter, max_tri)
        e = m.nxt[corner_h]
        bx, by = ax + m.vec[e][0], ay + m.vec[e][1]
        cid0.append(corner_h)
        e0.append(e)
        P0x.append(ax)
        P0y.append(ay)
        Q0x.append(bx)
        Q0y.append(by)

    cid = np.asarray(cid0, dtype=np.int64)
    e = np.asarray(e0, dtype=np.int64)
    Px = np.asarray(P0x, dtype=np.int64)
    Py = np.asarray(P0y, dtype=np.int64)
    Qx = np.asarray(Q0x, dtype=np.int64)
    Qy = np.asarray(Q0y, dtype=np.int64)
    ux, uy, wx, wy = Px.copy(), Py.copy(), Qx.copy(), Qy.copy()

    while len(e):
        counter[0] += len(e)
        if counter[0] > max_tri:
            raise BoundTooLarge(f"more than {max_tri} developed triangles")
        te = twin[e]
        a2 = nxt[te]
        a3 = nxt[a2]
        Vx = Px + vx[a2]
        Vy = Py + vy[a2]
        inside = ((ux * Vy - uy * Vx > 0) & (Vx * wy - Vy * wx > 0))
        near = (Vx * Vx + Vy * Vy) * ld <= ln
        ev = np.nonzero(inside & near)[0]
        for i in ev:
            hv = Vec(int(Vx[i]), int(Vy[i]))
            out_he = int(a3[i])
            v_id = vertex_of[out_he]
            if is_endpoint[v_id]:
                hits.append((int(cid[i]), hv, v_id))
            else:
                _trace_scan(m, out_he, hv, ln, ld, int(cid[i]), hits, counter, max_tri)

        parts = []
        for eC, S1x, S1y, S2x, S2y in (
            (a2, Px, Py, Vx, Vy),
            (a3, Vx, Vy, Qx, Qy),
        ):
            sgn = S1x * S2y - S1y * S2x
            flip = sgn < 0
            lox = np.where(flip, S2x, S1x)
            loy = np.where(flip, S2y, S1y)
            hix = np.where(flip, S1x, S2x)
            hiy = np.where(flip, S1y, S2y)
            keep_u = lox * uy - loy * ux >= 0
            u2x = np.where(keep_u, ux, lox)
            u2y = np.where(keep_u, uy, loy)
            keep_w = wx * hiy - wy * hix >= 0
            w2x = np.where(keep_w, wx, hix)
            w2y = np.where(keep_w, wy, hiy)
            ok = (sgn != 0) & (u2x * w2y - u2y * w2x > 0)

            # clipped float distance with margin (prune only, never hits)
            dxf = (S2x - S1x).astype(np.float64)
            dyf = (S2y - S1y).astype(np.float64)
            pxf = S1x.astype(np.float64)
            pyf = S1y.astype(np.float64)
            lo_t = np.zeros(len(sgn))
            hi_t = np.ones(len(sgn))
            feas = np.ones(len(sgn), dtype=bool)
            c0a = u2x * S1y - u2y * S1x  # cross(u2, P)
            c1a = u2x * dyf - u2y * dxf
            c0b = S1x * w2y - S1y * w2x  # cross(P, w2)
            c1b = dxf * w2y - dyf * w2x
            for c0, c1 in ((c0a.astype(np.float64), c1a), (c0b.astype(np.float64), c1b)):
                tb = np.where(c1 != 0.0, -c0 / np.where(c1 != 0.0, c1, 1.0), 0.0)
                lo_t = np.where(c1 > 0.0, np.maximum(lo_t, tb), lo_t)
                hi_t = np.where(c1 < 0.0, np.minimum(hi_t, tb), hi_t)
                feas &= ~((c1 == 0.0) & (c0 < 0))
            feas &= lo_t <= hi_t + margin
            den = dxf * dxf + dyf * dyf
            tf = np.where(den > 0.0, -(pxf * dxf + pyf * dyf) / np.where(den > 0.0, den, 1.0), 0.0)
            tf = np.clip(tf, lo_t, hi_t)
            xf = pxf + tf * dxf
            yf = pyf + tf * dyf
            ok &= feas & (xf * xf + yf * yf <= boundf)

            idx = np.nonzero(ok)[0]
            if len(idx):
                parts.append(
                    (
                        cid[idx],
                        eC[idx],
                        S1x[idx],
                        S1y[idx],
                        S2x[idx],
                        S2y[idx],
                        u2x[idx],
                        u2y[idx],
                        w2x[idx],
                        w2y[idx],
                    )
                )
        if not parts:
            break
        cols = [np.concatenate(c) for c in zip(*parts)]
        cid, e, Px, Py, Qx, Qy, ux, uy, wx, wy = cols


def enumerate_saddle_connections(
    s: TranslationSurface,
    L,
    bound_sq=None,
    max_triangles: int = DEFAULT_MAX_TRIANGLES,
) -> ScanResult:
    """All unoriented saddle connections of length at most L.

    Each connection is reported once, in the canonical orientation with
    ``y > 0`` (or ``y == 0 and x > 0``).  ``bound_sq`` may be given as an
    exact rational to bypass the float squaring of ``L``.
    """
    if bound_sq is None:
        bound_sq = _rationalize(L) ** 2
    else:
        bound_sq = _rationalize(bound_sq)
    if not s.endpoint_vertices():
        raise NoConePoints("surface has no zeros and no marked points")
    m = _Mesh(s)
    ln, ld = bound_sq.numerator, bound_sq.denominator
    hits: list = []  # (corner, holonomy, end_vertex)
    counter = [0]
    corners = [
        corner_h
        for vid in s.endpoint_vertices()
        for corner_h in s.cone_points[vid].half_edges
    ]
    if _int64_scan_safe(m, ln, ld):
        _scan_fast(m, corners, ln, ld, hits, counter, max_triangles)
    else:
        for corner_h in corners:
            _scan_corner(m, corner_h, ln, ld, hits, counter, max_triangles)
    conns = []
    seen = set()
    for corner_h, hol, end_v in hits:
        if hol.y < 0 or (hol.y == 0 and hol.x < 0):
            continue
        key = (corner_h, hol.x, hol.y)
        if key in seen:
            continue
        seen.add(key)
        conns.append(
            SaddleConnection(
                start_cone=m.vertex_of[corner_h],
                end_cone=end_v,
                holonomy=hol,
                anchor=Anchor(corner_h),
            )
        )
    conns.sort(
        key=lambda c: (
            c.norm_sq(),
            c.holonomy.x,
            c.holonomy.y,
            c.start_cone,
            c.end_cone,
            c.anchor.corner,
        )
    )
    return ScanResult(tuple(conns), L, surface_ref=repr(s))


def count_in_interval(s: TranslationSurface, a, b) -> int:
    """Number of saddle connections with normalized length in [a/g, b/g].

    Lengths are measured after rescaling the surface to unit area; in
    exact mode the comparison is done on squared lengths as exact
    fractions, without ever normalizing the surface itself.
    """
    a = _rationalize(a)
    b = _rationalize(b)
    if a < 0 or b < a:
        raise ValueError("need 0 <= a <= b")
    g = s.genus()
    if g < 1:
        raise ValueError("needs genus at least 1")
    area = s.area() if s.exact else Fraction(float(s.area()))
    lo = a * a * area / (g * g)
    hi = b * b * area / (g * g)
    result = enumerate_saddle_connections(s, float(b) / g, bound_sq=hi)
    return sum(1 for c in result.connections if c.norm_sq() >= lo)


def shortest_saddle_connection(s: TranslationSurface) -> SaddleConnection:
    """A globally shortest connection, by doubling the search radius."""
    if not s.endpoint_vertices():
        raise NoConePoints("surface has no zeros and no marked points")
    b2 = min(v.norm_sq() for v in s.vec)
    b2 = _rationalize(b2)
    for _ in range(64):
        res = enumerate_saddle_connections(s, math.sqrt(float(b2)), bound_sq=b2)
        if res.connections:
            return res.connections[0]
        b2 *= 4
    raise BoundTooLarge("no connection found within the doubling budget")


class GenericClass:
    """Classification outcomes for the genericity thresholds."""

    GENERIC = "Generic"
    NG_LOOP = "NG_Loop"
    NG_CHERRY = "NG_Cherry"


def classify_generic(s: TranslationSurface, B) -> str:
    """Short-loop / cherry classification at scale B.

    In unit-area terms: a loop of length at most 6B/g makes the surface
    ``NG_Loop``; otherwise a connection of length at most B/g sharing a
    zero with one of length at most 2B/g makes it ``NG_Cherry``; else
    ``Generic``.  Loop precedence matches the case split of the volume
    estimates.  Exact surfaces are classified with exact squared-length
    comparisons.
    """
    B = _rationalize(B)
    if B <= 0:
        raise ValueError("B must be positive")
    g = s.genus()
    area = s.area() if s.exact else Fraction(float(s.area()))
    gg = Fraction(g * g)
    big = 36 * B * B * area / gg  # (6B/g)^2, unnormalized
    res = enumerate_saddle_connections(s, math.sqrt(float(big)), bound_sq=big)
    small = B * B * area / gg
    mid = 4 * B * B * area / gg
    for c in res.connections:
        if c.is_loop and c.norm_sq() <= big:
            return GenericClass.NG_LOOP
    shorts = [c for c in res.connections if c.norm_sq() <= small]
    mids = [c for c in res.connections if c.norm_sq() <= mid]
    for c1 in shorts:
        for c2 in mids:
            if c1 is c2:
                continue
            if {c1.start_cone, c1.end_cone} & {c2.start_cone, c2.end_cone}:
                return GenericClass.NG_CHERRY
    return GenericClass.GENERIC


def detect_homologous_pairs(s: TranslationSurface, L) -> list[tuple[SaddleConnection, SaddleConnection]]:
    """Pairs of equal-holonomy connections whose joint cut disconnects.

    Candidates share the canonical holonomy vector exactly; for each
    candidate pair both segments are promoted to mesh chains on a scratch
    copy and the triangle adjacency graph minus the slit edges is checked
    for connectivity.
    """
    res = enumerate_saddle_connections(s, L)
    by_hol: dict = {}
    for c in res.connections:
        by_hol.setdefault((c.holonomy.x, c.holonomy.y), []).append(c)
    out = []
    for group in by_hol.values():
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                if _joint_cut_disconnects(s, group[i], group[j]):
                    out.append((group[i], group[j]))
    return out


def _joint_cut_disconnects(s: TranslationSurface, c1: SaddleConnection, c2: SaddleConnection) -> bool:
    from .meshops import MeshBuilder

    b = MeshBuilder(s)
    cut = set()
    for c in (c1, c2):
        chain, _, _ = b.promote_segment(c.anchor.corner, c.holonomy)
        for h in chain:
            cut.add(h)
            cut.add(b.twin[h])
    # union-find over triangles through non-cut twin links
    alive = b.alive_half_edges()
    tri_of = {}
    tris = []
    seen = set()
    for h in alive:
        if h in seen:
            continue
        t = len(tris)
        cyc = (h, b.nxt[h], b.nxt[b.nxt[h]])
        tris.append(cyc)
        for g in cyc:
            tri_of[g] = t
            seen.add(g)
    parent = list(range(len(tris)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for h in alive:
        if h in cut:
            continue
        a, bb = find(tri_of[h]), find(tri_of[b.twin[h]])
        if a != bb:
            parent[a] = bb
    roots = {find(t) for t in range(len(tris))}
    return len(roots) > 1


def scan_result_to_csv(result: ScanResult) -> str:
    lines = ["start,end,x,y,length"]
    for c in result.connections:
        x, y = c.holonomy.x, c.holonomy.y
        lines.append(f"{c.start_cone},{c.end_cone},{_fmt(x)},{_fmt(y)},{c.length!r}")
    return "\n".join(lines) + "\n"


def _fmt(q) -> str:
    if isinstance(q, Fraction):
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    if isinstance(q, float):
        return repr(q)
    return str(q)
