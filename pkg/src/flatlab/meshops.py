"""Mutable half-edge mesh operations backing the surgeries.

The cut-and-reglue surgeries need their cut segments to be chains of
mesh edges.  ``promote_segment`` achieves that purely by local
subdivision: every transversal crossing of the traced segment receives a
new vertex (an edge split), which automatically creates the chain edges
between consecutive nodes.  Vertices added this way are regular (order
0) and removable; ``remove_flat_vertices`` flips them away afterwards.

All coordinates stay exact: new vectors are rational combinations of old
ones.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FlatlabError
from .geometry import Vec, circumcircle_side, dot, segments_cross
from .surface import TranslationSurface
from .tracing import trace_segment, vertex_order, vertex_out_edges


class MeshBuilder:
    """Mutable copy of a surface's half-edge arrays.

    Half-edges are never renumbered while building; deletions mark
    tombstones that ``to_surface`` compacts away.
    """

    def __init__(self, s: TranslationSurface):
        self.vec: list[Vec] = list(s.vec)
        self.twin: list[int] = list(s.twin)
        self.nxt: list[int] = list(s.nxt)
        self.alive: list[bool] = [True] * len(self.vec)
        self.exact = s.exact

    def _new(self, v: Vec) -> int:
        self.vec.append(v)
        self.twin.append(-1)
        self.nxt.append(-1)
        self.alive.append(True)
        return len(self.vec) - 1

    def prev(self, h: int) -> int:
        return self.nxt[self.nxt[h]]

    def alive_half_edges(self):
        return [h for h in range(len(self.vec)) if self.alive[h]]

    def to_surface(self) -> TranslationSurface:
        remap = {}
        order = []
        for h in range(len(self.vec)):
            if self.alive[h]:
                remap[h] = len(order)
                order.append(h)
        vec = [self.vec[h] for h in order]
        twin = [remap[self.twin[h]] for h in order]
        nxt = [remap[self.nxt[h]] for h in order]
        return TranslationSurface(vec, twin, nxt, exact=self.exact)

    # --- subdivision --------------------------------------------------------

    def split_edge(self, e: int, t) -> dict:
        """Insert a vertex X on edge ``e`` at parameter ``t`` from start(e).

        Returns spokes of X:

        - ``before``: apex of e's triangle -> X (the chain edge toward X
          when the segment being promoted came through that triangle)
        - ``after``:  X -> apex of the twin triangle
        - ``in_a``:   start(e) -> X
        - ``in_b``:   X -> head(e)
        """
        t = Fraction(t)
        if not (0 < t < 1):
            raise ValueError("split parameter must be strictly inside the edge")
        vec, twin, nxt = self.vec, self.twin, self.nxt
        te = twin[e]
        a, b = nxt[e], nxt[nxt[e]]
        c, d = nxt[te], nxt[nxt[te]]
        if te in (a, b):
            raise FlatlabError("cannot split a self-glued edge")
        ve = vec[e]
        v1 = Vec(ve[0] * t, ve[1] * t)
        v2 = Vec(ve[0] - v1[0], ve[1] - v1[1])
        xq = self._new(v2)
        qx = self._new(Vec(-v2[0], -v2[1]))
        sp1 = self._new(Vec(v2[0] + vec[a][0], v2[1] + vec[a][1]))      # X -> R
        sp1t = self._new(Vec(-v2[0] - vec[a][0], -v2[1] - vec[a][1]))   # R -> X
        sp2 = self._new(Vec(vec[c][0] - v1[0], vec[c][1] - v1[1]))      # X -> T
        sp2t = self._new(Vec(v1[0] - vec[c][0], v1[1] - vec[c][1]))     # T -> X
        self.vec[e] = v1
        self.vec[te] = Vec(-v1[0], -v1[1])
        nxt[e], nxt[sp1], nxt[b] = sp1, b, e
        nxt[xq], nxt[a], nxt[sp1t] = a, sp1t, xq
        nxt[qx], nxt[sp2], nxt[d] = sp2, d, qx
        nxt[te], nxt[c], nxt[sp2t] = c, sp2t, te
        twin[xq], twin[qx] = qx, xq
        twin[sp1], twin[sp1t] = sp1t, sp1
        twin[sp2], twin[sp2t] = sp2t, sp2
        return {"before": sp1t, "after": sp2, "in_a": e, "in_b": xq}

    def split_triangle(self, h: int, offset: Vec) -> dict:
        """Insert a vertex X strictly inside the triangle of ``h``.

        ``offset`` = X - start(h).  Returns spokes keyed by corner:
        ``from_start`` start(h)->X, ``from_head`` head(h)->X,
        ``from_apex`` apex->X.
        """
        vec, twin, nxt = self.vec, self.twin, self.nxt
        a, b = nxt[h], nxt[nxt[h]]
        off = Vec(offset[0], offset[1])
        sx = self._new(off)
        xs = self._new(Vec(-off[0], -off[1]))
        vq = Vec(off[0] - vec[h][0], off[1] - vec[h][1])
        qx = self._new(vq)
        xq = self._new(Vec(-vq[0], -vq[1]))
        vr = Vec(vq[0] - vec[a][0], vq[1] - vec[a][1])
        rx = self._new(vr)
        xr = self._new(Vec(-vr[0], -vr[1]))
        nxt[h], nxt[qx], nxt[xs] = qx, xs, h
        nxt[a], nxt[rx], nxt[xq] = rx, xq, a
        nxt[b], nxt[sx], nxt[xr] = sx, xr, b
        twin[sx], twin[xs] = xs, sx
        twin[qx], twin[xq] = xq, qx
        twin[rx], twin[xr] = xr, rx
        return {"from_start": sx, "from_head": qx, "from_apex": rx}

    # --- flips ---------------------------------------------------------------

    def _hinge(self, h: int):
        """Developed hinge quad: S=0, Q, R (this side), T (twin side)."""
        vec, twin, nxt = self.vec, self.twin, self.nxt
        te = twin[h]
        Q = vec[h]
        R = Vec(Q[0] + vec[nxt[h]][0], Q[1] + vec[nxt[h]][1])
        T = vec[nxt[te]]
        return Q, R, T

    def flip_valid(self, h: int) -> bool:
        te = self.twin[h]
        nxt = self.nxt
        if te in (nxt[h], nxt[nxt[h]]):
            return False
        Q, R, T = self._hinge(h)
        return segments_cross(Vec(0, 0), Q, R, T)

    def flip(self, h: int) -> None:
        """Replace diagonal S-Q by T-R.  Requires ``flip_valid(h)``.

        Afterwards ``h`` runs T->R with triangles (b, c, h) and
        (d, a, twin(h)).
        """
        vec, twin, nxt = self.vec, self.twin, self.nxt
        te = twin[h]
        a, b = nxt[h], nxt[nxt[h]]
        c, d = nxt[te], nxt[nxt[te]]
        new_vec = Vec(-vec[b][0] - vec[c][0], -vec[b][1] - vec[c][1])  # T -> R
        vec[h] = new_vec
        vec[te] = Vec(-new_vec[0], -new_vec[1])
        nxt[b], nxt[c], nxt[h] = c, h, b
        nxt[d], nxt[a], nxt[te] = a, te, d

    def delaunay_bad(self, h: int) -> bool:
        te = self.twin[h]
        nxt = self.nxt
        if te in (nxt[h], nxt[nxt[h]]):
            return False
        Q, R, T = self._hinge(h)
        return circumcircle_side(Vec(0, 0), Q, R, T) > 0

    def make_delaunay(self, max_rounds: int | None = None) -> None:
        """Flip until every hinge satisfies the empty-circumdisk test.

        Cocircular hinges (determinant exactly zero) are left alone; the
        ambiguity is handled by cell grouping during comparison.
        """
        from collections import deque

        pending = deque(h for h in self.alive_half_edges() if h < self.twin[h])
        inq = set(pending)
        budget = max_rounds or (40 * len(self.vec) ** 2 + 10000)
        while pending:
            budget -= 1
            if budget < 0:
                raise FlatlabError("Delaunay flipping did not terminate")
            h = pending.popleft()
            inq.discard(h)
            if not self.alive[h]:
                continue
            if not self.delaunay_bad(h):
                continue
            if not self.flip_valid(h):
                continue
            self.flip(h)
            te = self.twin[h]
            for g in (self.nxt[h], self.nxt[self.nxt[h]], self.nxt[te], self.nxt[self.nxt[te]]):
                g0 = min(g, self.twin[g])
                if g0 not in inq:
                    pending.append(g0)
                    inq.add(g0)

    # --- vertex removal -------------------------------------------------------

    def remove_flat_vertex(self, out_he: int) -> bool:
        """Remove the regular vertex start(out_he); True on success.

        Lawson-style: flip incident edges until the vertex has degree 3,
        then replace its three triangles by the link triangle.  Bails out
        (returning False) on degenerate configurations.
        """
        anchor = out_he
        for _ in range(len(self.vec)):
            orbit = vertex_out_edges(self, anchor)
            if len(orbit) == 3:
                return self._remove_degree3(orbit)
            orbit_set = set(orbit)
            flipped = False
            for o in orbit:
                te = self.twin[o]
                apex1 = self.nxt[self.nxt[o]]
                apex2 = self.nxt[self.nxt[te]]
                if apex1 in orbit_set or apex2 in orbit_set:
                    continue
                if not self.flip_valid(o):
                    continue
                others = [g for g in orbit if g != o and g != te]
                if not others:
                    return False
                anchor = others[0]
                self.flip(o)
                flipped = True
                break
            if not flipped:
                return False
        return False

    def _remove_degree3(self, orbit) -> bool:
        nxt, twin = self.nxt, self.twin
        o0, o1, o2 = orbit
        l0, l1, l2 = nxt[o0], nxt[o1], nxt[o2]
        dead = {o0, o1, o2, twin[o0], twin[o1], twin[o2]}
        pieces = {o0, o1, o2, l0, l1, l2, twin[o0], twin[o1], twin[o2]}
        if len(pieces) < 9 or {l0, l1, l2} & dead:
            return False
        nxt[l0], nxt[l1], nxt[l2] = l1, l2, l0
        for g in dead:
            self.alive[g] = False
        return True

    def remove_flat_vertices(self) -> bool:
        """Remove every order-0 vertex.  Returns True if all were removed.

        Callers must ensure the surface keeps at least one vertex (do not
        call on surfaces without zeros).
        """
        all_removed = True
        progress = True
        while progress:
            progress = False
            seen = set()
            stuck = []
            for h in self.alive_half_edges():
                if h in seen:
                    continue
                orbit = vertex_out_edges(self, h)
                seen.update(orbit)
                if vertex_order(self, h) == 0:
                    if self.remove_flat_vertex(h):
                        progress = True
                        break
                    stuck.append(h)
            else:
                if stuck:
                    all_removed = False
        return all_removed

    # --- segment promotion ------------------------------------------------------

    def promote_segment(self, start_corner: int, v: Vec):
        """Make the traced segment of holonomy v a chain of mesh edges.

        Returns ``(chain, params, end_out)``: forward half-edges from the
        start vertex, the node parameters (Fractions in [0, 1], including
        both endpoints), and an outgoing half-edge at the far endpoint.

        Raises ``FlatlabError`` if the trace is blocked by a cone point.
        """
        tr = trace_segment(self, start_corner, v)
        if tr.blocked:
            raise FlatlabError("segment blocked by a cone point")
        dd = Fraction(dot(v, v))
        chain: list[int] = []
        params: list[Fraction] = [Fraction(0)]
        last_split: dict | None = None
        for ev in tr.events:
            kind = ev[0]
            pos = ev[-1]
            s = Fraction(dot(v, pos)) / dd
            if kind == "cross":
                sp = self.split_edge(ev[1], ev[2])
                chain.append(sp["before"])
                last_split = sp
            elif kind == "ride":
                chain.append(ev[1])
                last_split = None
            elif kind == "through":
                if last_split is None:
                    raise FlatlabError("pass-through without a preceding crossing")
                chain.append(last_split["after"])
                last_split = None
            params.append(s)
        end = tr.end
        if end[0] == "vertex":
            if not tr.events:
                raise FlatlabError("degenerate zero-length segment")
            last = tr.events[-1][0]
            if last == "cross":
                chain.append(last_split["after"])
                params.append(Fraction(1))
            elif last != "ride":
                raise FlatlabError("segment cannot end at a vertex after a pass-through")
            if params[-1] != 1:
                raise FlatlabError("chain does not reach the endpoint")
            end_out = end[1]
        elif end[0] == "edge":
            sp = self.split_edge(end[1], end[2])
            chain.append(sp["before"])
            params.append(Fraction(1))
            end_out = sp["after"]
        elif end[0] == "inside":
            sp3 = self.split_triangle(end[1], end[2])
            chain.append(sp3["from_apex"])
            params.append(Fraction(1))
            end_out = self.twin[sp3["from_apex"]]
        else:
            raise FlatlabError(f"unexpected trace end {end[0]!r}")
        return chain, params, end_out

    def refine_chain(self, chain, params, targets):
        """Split chain edges so the node parameter set includes ``targets``."""
        out_chain: list[int] = []
        out_params = [params[0]]
        for j, he in enumerate(chain):
            lo, hi = params[j], params[j + 1]
            inner = [t for t in targets if lo < t < hi]
            cur, cur_lo = he, lo
            for t in sorted(inner):
                local = (t - cur_lo) / (hi - cur_lo)
                sp = self.split_edge(cur, local)
                out_chain.append(sp["in_a"])
                out_params.append(t)
                cur, cur_lo = sp["in_b"], t
            out_chain.append(cur)
            out_params.append(hi)
        return out_chain, out_params

    def reglue_cyclic(self, chains: list[list[int]]) -> None:
        """Re-pair slit twins: forward of slit i glues to backward of i+1.

        With slits listed in counterclockwise order around their common
        vertex, this seals each gap sector and performs the collapse /
        opening surgery in one pointer pass.
        """
        twin = self.twin
        k = len(chains)
        bwd = [[twin[h] for h in chain] for chain in chains]
        for i in range(k):
            nx = (i + 1) % k
            if len(chains[i]) != len(bwd[nx]):
                raise FlatlabError("slit chains have mismatched refinement")
            for f, b in zip(chains[i], bwd[nx]):
                twin[f] = b
                twin[b] = f


def simplify(s: TranslationSurface) -> TranslationSurface:
    """Remove all removable marked points (order-0 vertices).

    Surfaces without zeros are returned unchanged (a flat torus needs at
    least one vertex to stay triangulated).
    """
    if not s.zeros():
        return s
    if all(c.order >= 1 for c in s.cone_points):
        return s
    b = MeshBuilder(s)
    b.remove_flat_vertices()
    return b.to_surface()
