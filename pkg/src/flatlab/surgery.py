"""Flat surgeries: collapsing zeros along saddle connections, opening up.

Both directions are the same mesh operation.  Given a vertex and a
direction, the direction occurs ``order + 1`` times among the corners;
choosing ``c`` cyclically consecutive occurrences and tracing a segment
of fixed holonomy along each gives ``c`` parallel slits from the vertex.
Cutting all slits and regluing the forward side of slit ``i`` to the
backward side of slit ``i+1`` (cyclically, in counterclockwise order)
seals every gap sector:

- the ``c - 1`` inner gaps have angle exactly 2*pi and become regular
  points,
- the outer sector of angle ``2*pi*(order - c + 2)`` becomes a zero of
  order ``order - c + 1``,
- the far endpoints of the slits merge into a zero of order ``c - 1``.

Opening up an order-2 zero is the case ``c = 2`` (three choices of the
consecutive pair).  Collapsing a zero of order m along a saddle
connection is the case ``c = m + 1`` applied at the far end of the
connection: the slits are the reversed connection together with its m
ghost doubles, and the merge promotes the surviving zero by m.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    FlatlabError,
    GhostHitsSingularity,
    Intersecting,
    NotGeneric,
    NotOrderTwo,
    NotSimpleZeros,
    SegmentHitsSingularity,
    SharedZero,
    SharedZeroMismatch,
)
from .geometry import Vec
from .meshops import MeshBuilder
from .scan import SaddleConnection
from .surface import TranslationSurface
from .tracing import corner_occurrences, trace_segment, vertex_order, vertex_out_edges


@dataclass(frozen=True)
class GhostDouble:
    """The parallel twin of a saddle connection, one full turn away.

    ``corner`` is the outgoing corner at the connection's endpoint the
    ghost leaves through; the segment runs opposite to the arrival, so
    its holonomy as traced equals minus the connection's.  ``vector``
    stores the connection's holonomy (the ghost is a translate of the
    connection).  ``end`` is the trace end record.
    """

    corner: int
    vector: Vec
    end: tuple


@dataclass(frozen=True)
class CollapseRecord:
    """Data sufficient to invert one collapse.

    ``survivor`` and ``collapsed`` are cone labels in the input surface;
    ``zero_after`` is the merged zero's label in the output surface.
    ``open_up_general(out, zero_after, holonomy, choice, count)``
    restores the input surface up to removable marked points.
    """

    survivor: int
    collapsed: int
    holonomy: Vec
    choice: int
    count: int
    zero_after: int


@dataclass(frozen=True)
class MultiCollapseRecord:
    groups: tuple[tuple[CollapseRecord, ...], ...]

    def all_records(self) -> list[CollapseRecord]:
        return [r for g in self.groups for r in g]


# --- internal plumbing --------------------------------------------------------


def _vertex_rep(mesh, out_he: int) -> int:
    return min(vertex_out_edges(mesh, out_he))


@dataclass
class _SlitGroup:
    """One cyclic family of slits cut from a common vertex."""

    corners: list[int]        # ccw occurrence corners at the vertex
    vector: Vec               # traced holonomy, shared by all slits
    start_rep: int
    end_policy: list[str]     # per slit: "zero" (must end on a zero) or
                              # "regular" (must not end on a zero)


def _validate_and_cut(b: MeshBuilder, groups: list[_SlitGroup], shared_reps: set[int]):
    """Trace, validate, promote and reglue every slit group on ``b``.

    Returns per-group lists of end-vertex representatives (before
    regluing).  Raises the caller-mapped errors through FlatlabError
    subclasses already typed by the validation closure.
    """
    # dry validation on the pristine mesh
    claimed: set[int] = set()
    for grp in groups:
        for corner, policy in zip(grp.corners, grp.end_policy):
            tr = trace_segment(b, corner, grp.vector)
            _validate_end(b, tr, policy)
            for rep in _touched_reps(b, tr, grp.start_rep):
                if rep in claimed and rep not in shared_reps:
                    raise Intersecting("slits touch a common vertex")
                claimed.add(rep)
    # promote for real, group by group, slit by slit
    claimed_edges: set[int] = set()
    claimed2: set[int] = set()
    all_chains = []
    for grp in groups:
        chains = []
        params_list = []
        for corner, policy in zip(grp.corners, grp.end_policy):
            corner = resolve_corner(b, corner, grp.vector)
            tr = trace_segment(b, corner, grp.vector)
            _validate_end(b, tr, policy)
            for ev in tr.events:
                if ev[0] in ("ride",) and (ev[1] in claimed_edges or b.twin[ev[1]] in claimed_edges):
                    raise Intersecting("slit rides along another slit")
            for rep in _touched_reps(b, tr, grp.start_rep):
                if rep in claimed2 and rep not in shared_reps:
                    raise Intersecting("slits touch a common vertex")
                claimed2.add(rep)
            chain, params, end_out = b.promote_segment(corner, grp.vector)
            chains.append((chain, params))
            claimed_edges.update(chain)
            claimed2.add(_vertex_rep(b, end_out))
        # refine all chains of the group to the common node parameters
        targets = sorted({t for _, ps in chains for t in ps})
        refined = []
        for chain, params in chains:
            ch, ps = b.refine_chain(chain, params, targets)
            claimed_edges.update(ch)
            refined.append(ch)
        all_chains.append(refined)
    for grp, refined in zip(groups, all_chains):
        b.reglue_cyclic(refined)
    return all_chains


def _validate_end(b: MeshBuilder, tr, policy: str) -> None:
    if tr.blocked:
        if policy == "regular":
            raise GhostHitsSingularity("slit meets a cone point before its endpoint")
        raise Intersecting("connection slit blocked")
    if tr.end[0] == "vertex":
        order = vertex_order(b, tr.end[1])
        if policy == "regular" and order >= 1:
            raise GhostHitsSingularity("slit endpoint is a cone point")
        if policy == "zero" and order == 0:
            raise FlatlabError("connection endpoint is not a zero")
    elif policy == "zero":
        raise FlatlabError("connection endpoint is not a vertex")


def _touched_reps(b: MeshBuilder, tr, start_rep: int):
    reps = set()
    for ev in tr.events:
        if ev[0] == "through":
            reps.add(_vertex_rep(b, ev[1]))
        elif ev[0] == "ride":
            reps.add(_vertex_rep(b, b.twin[ev[1]]))
    if tr.end[0] == "vertex":
        reps.add(_vertex_rep(b, tr.end[1]))
    reps.discard(start_rep)
    return reps


def _arrival_corner(mesh, conn: SaddleConnection) -> int:
    tr = trace_segment(mesh, conn.anchor.corner, conn.holonomy)
    if tr.end[0] != "vertex":
        raise FlatlabError("stale anchor: connection does not end at a vertex")
    return tr.end[1]


def _seam_choice(s_out, b, remap, zero_after, holonomy, last_bwd_ids):
    """Occurrence index of the consecutive seam run at the merged zero."""
    anchor = s_out.cone_points[zero_after].half_edges[0]
    occ = corner_occurrences(s_out, anchor, holonomy)
    seam_ids = {remap[b.twin[h]] for h in last_bwd_ids}
    idx = sorted(occ.index(g) for g in seam_ids)
    m = len(occ)
    k = len(idx)
    for start in idx:
        if all(((start + j) % m) in idx for j in range(k)):
            return start
    raise FlatlabError("seams are not cyclically consecutive")


def reversed_connection(s: TranslationSurface, conn: SaddleConnection) -> SaddleConnection:
    """The same geodesic anchored at its other endpoint."""
    c_arr = _arrival_corner(s, conn)
    from .scan import Anchor

    return SaddleConnection(
        start_cone=conn.end_cone,
        end_cone=conn.start_cone,
        holonomy=Vec(-conn.holonomy.x, -conn.holonomy.y),
        anchor=Anchor(c_arr),
    )


# --- public operations ---------------------------------------------------------


def ghost_double(s: TranslationSurface, alpha: SaddleConnection) -> GhostDouble:
    """The ghost twin of ``alpha`` at its endpoint, one full turn past it.

    The connection must join two distinct simple zeros.  Raises
    ``GhostHitsSingularity`` when the parallel segment meets a cone
    point strictly before reaching full length, or ends on one.
    """
    _require_simple_pair(s, alpha)
    c_arr = _arrival_corner(s, alpha)
    back = Vec(-alpha.holonomy.x, -alpha.holonomy.y)
    occ = corner_occurrences(s, c_arr, back)
    if len(occ) != 2:
        raise NotSimpleZeros("endpoint is not a simple zero")
    tr = trace_segment(s, occ[1], back)
    if tr.blocked:
        raise GhostHitsSingularity("ghost segment meets a cone point")
    if tr.end[0] == "vertex" and vertex_order(s, tr.end[1]) >= 1:
        raise GhostHitsSingularity("ghost segment ends on a cone point")
    return GhostDouble(corner=occ[1], vector=alpha.holonomy, end=tr.end)


def _require_simple_pair(s: TranslationSurface, alpha: SaddleConnection) -> None:
    if alpha.start_cone == alpha.end_cone:
        raise NotSimpleZeros("connection is a loop")
    o1 = s.cone_points[alpha.start_cone].order
    o2 = s.cone_points[alpha.end_cone].order
    if o1 != 1 or o2 != 1:
        raise NotSimpleZeros("connection does not join two simple zeros")


def collapse_zero(
    s: TranslationSurface, alpha: SaddleConnection
) -> tuple[TranslationSurface, CollapseRecord]:
    """Collapse the endpoint zero of ``alpha`` into its start zero.

    Works for an endpoint of any order m: the reversed connection and
    its m ghost doubles are cut together.  ``collapse_pair`` is the
    simple-zero specialization.
    """
    if alpha.start_cone == alpha.end_cone:
        raise NotSimpleZeros("cannot collapse a loop")
    m_y = s.cone_points[alpha.end_cone].order
    m_x = s.cone_points[alpha.start_cone].order
    if m_y < 1 or m_x < 1:
        raise NotSimpleZeros("both endpoints must be zeros")
    b = MeshBuilder(s)
    c_arr = _arrival_corner(b, alpha)
    back = Vec(-alpha.holonomy.x, -alpha.holonomy.y)
    occ = corner_occurrences(b, c_arr, back)
    if len(occ) != m_y + 1:
        raise FlatlabError("occurrence count disagrees with the cone order")
    grp = _SlitGroup(
        corners=occ,
        vector=back,
        start_rep=_vertex_rep(b, c_arr),
        end_policy=["zero"] + ["regular"] * m_y,
    )
    survivor_out = s.cone_points[alpha.start_cone].half_edges[0]
    chains = _validate_and_cut(b, [grp], shared_reps=set())
    s_out, remap = _to_surface_with_map(b)
    zero_after = s_out.vertex_of[remap[survivor_out]]
    last_bwds = [ch[-1] for ch in chains[0]]
    choice = _seam_choice(s_out, b, remap, zero_after, alpha.holonomy, last_bwds)
    rec = CollapseRecord(
        survivor=alpha.start_cone,
        collapsed=alpha.end_cone,
        holonomy=alpha.holonomy,
        choice=choice,
        count=m_y + 1,
        zero_after=zero_after,
    )
    _check_collapse_result(s, s_out, alpha.start_cone, alpha.end_cone)
    return s_out, rec


def collapse_pair(
    s: TranslationSurface, alpha: SaddleConnection
) -> tuple[TranslationSurface, CollapseRecord]:
    """Collapse a simple zero into another along a saddle connection.

    The start zero of ``alpha`` survives with order 2; the end zero is
    replaced by two regular marked points.
    """
    _require_simple_pair(s, alpha)
    return collapse_zero(s, alpha)


def _check_collapse_result(s, s_out, survivor, collapsed) -> None:
    if s.exact:
        area_changed = s_out.area() != s.area()
    else:
        area_changed = abs(float(s_out.area()) - float(s.area())) > 1e-9
    if area_changed:
        raise FlatlabError("surgery changed the area")
    if s_out.genus() != s.genus():
        raise FlatlabError("surgery changed the genus")
    before = sorted(c.order for c in s.cone_points if c.order >= 1)
    m_x = s.cone_points[survivor].order
    m_y = s.cone_points[collapsed].order
    before.remove(m_x)
    before.remove(m_y)
    expected = sorted(before + [m_x + m_y])
    got = sorted(s_out.stratum_signature().sorted())
    if expected != got:
        raise FlatlabError(f"collapse produced stratum {got}, expected {expected}")


def open_up_general(
    s: TranslationSurface,
    zero_label: int,
    v: Vec,
    choice: int,
    count: int,
) -> TranslationSurface:
    """Cut ``count`` consecutive parallel segments at a zero and reglue.

    Splits a zero of order M into zeros of orders ``M - count + 1`` and
    ``count - 1`` joined by a saddle connection of holonomy ``v`` (plus
    ``count - 1`` regular marked points).  ``choice`` selects the first
    occurrence cut, indexed counterclockwise from the zero's canonical
    corner; there are ``M + 1`` choices.
    """
    cone = s.cone_points[zero_label]
    M = cone.order
    if not (2 <= count <= M + 1):
        raise FlatlabError("count must be between 2 and order + 1")
    v = Vec(v[0], v[1])
    if v.norm_sq() == 0:
        raise FlatlabError("zero opening vector")
    b = MeshBuilder(s)
    anchor = cone.half_edges[0]
    occ = corner_occurrences(b, anchor, v)
    if len(occ) != M + 1:
        raise FlatlabError("occurrence count disagrees with the cone order")
    corners = [occ[(choice + j) % (M + 1)] for j in range(count)]
    grp = _SlitGroup(
        corners=corners,
        vector=v,
        start_rep=_vertex_rep(b, anchor),
        end_policy=["regular"] * count,
    )
    try:
        _validate_and_cut(b, [grp], shared_reps=set())
    except GhostHitsSingularity as e:
        raise SegmentHitsSingularity(str(e)) from e
    s_out = b.to_surface()
    if s_out.genus() != s.genus():
        raise FlatlabError("opening changed the genus")
    return s_out


def open_up(
    s: TranslationSurface, zero_label: int, v: Vec, choice: int
) -> TranslationSurface:
    """Open up a zero of order 2 into two simple zeros joined by ``v``.

    ``choice`` in {0, 1, 2} picks which two of the three parallel
    segments are cut; exactly one choice inverts a given collapse.
    """
    cone = s.cone_points[zero_label]
    if cone.order != 2:
        raise NotOrderTwo(f"cone point has order {cone.order}, need 2")
    if choice not in (0, 1, 2):
        raise FlatlabError("choice must be 0, 1 or 2")
    return open_up_general(s, zero_label, v, choice, 2)


def collapse_cherry(
    s: TranslationSurface, alpha: SaddleConnection, beta: SaddleConnection
) -> TranslationSurface:
    """Collapse two simple zeros into the zero they both touch.

    ``alpha`` and ``beta`` must both start at the shared zero; their end
    zeros are resolved into regular points and the shared zero gains
    order 2 (signature (1,1,1) -> (3) among the three).
    """
    if alpha.start_cone != beta.start_cone:
        raise SharedZeroMismatch("connections must start at the shared zero")
    if alpha.end_cone == beta.end_cone or alpha.end_cone == alpha.start_cone or beta.end_cone == beta.start_cone:
        raise SharedZeroMismatch("need three distinct zeros")
    for c in (alpha.start_cone, alpha.end_cone, beta.end_cone):
        if s.cone_points[c].order != 1:
            raise NotSimpleZeros("cherry collapse needs three simple zeros")
    b = MeshBuilder(s)
    groups = []
    shared = {_vertex_rep(b, s.cone_points[alpha.start_cone].half_edges[0])}
    for conn in (alpha, beta):
        c_arr = _arrival_corner(b, conn)
        back = Vec(-conn.holonomy.x, -conn.holonomy.y)
        occ = corner_occurrences(b, c_arr, back)
        groups.append(
            _SlitGroup(
                corners=occ,
                vector=back,
                start_rep=_vertex_rep(b, c_arr),
                end_policy=["zero", "regular"],
            )
        )
    _validate_and_cut(b, groups, shared_reps=shared)
    s_out = b.to_surface()
    if s_out.genus() != s.genus():
        raise FlatlabError("surgery changed the genus")
    return s_out


def classify_for_collapse(s: TranslationSurface, B) -> None:
    from .scan import classify_generic, GenericClass

    if classify_generic(s, B) is not GenericClass.GENERIC:
        raise NotGeneric("surface fails the genericity thresholds")


def collapse_many(
    s: TranslationSurface,
    groups: list[list[SaddleConnection]],
    B=None,
) -> tuple[TranslationSurface, MultiCollapseRecord]:
    """Simultaneously collapse along pairwise zero-disjoint connections.

    ``groups`` lists connections grouped by length interval; ``B`` (if
    given) runs the genericity check first.  All cuts happen on one
    mesh, so the record labels refer consistently to the input and
    output surfaces.
    """
    conns = [c for g in groups for c in g]
    if B is not None:
        classify_for_collapse(s, B)
    zeros_used: set[int] = set()
    for c in conns:
        if s.cone_points[c.start_cone].order != 1 or s.cone_points[c.end_cone].order != 1:
            raise NotSimpleZeros("collapse_many needs simple zeros")
        if c.start_cone == c.end_cone:
            raise SharedZero("loops cannot be collapsed")
        for z in (c.start_cone, c.end_cone):
            if z in zeros_used:
                raise SharedZero("connections share a zero")
            zeros_used.add(z)
    b = MeshBuilder(s)
    slit_groups = []
    survivor_outs = []
    for conn in conns:
        c_arr = _arrival_corner(b, conn)
        back = Vec(-conn.holonomy.x, -conn.holonomy.y)
        occ = corner_occurrences(b, c_arr, back)
        slit_groups.append(
            _SlitGroup(
                corners=occ,
                vector=back,
                start_rep=_vertex_rep(b, c_arr),
                end_policy=["zero", "regular"],
            )
        )
        survivor_outs.append(s.cone_points[conn.start_cone].half_edges[0])
    chains = _validate_and_cut(b, slit_groups, shared_reps=set())
    s_out, remap = _to_surface_with_map(b)
    records = []
    for conn, ch, sv_out in zip(conns, chains, survivor_outs):
        zero_after = s_out.vertex_of[remap[sv_out]]
        last_bwds = [c[-1] for c in ch]
        choice = _seam_choice(s_out, b, remap, zero_after, conn.holonomy, last_bwds)
        records.append(
            CollapseRecord(
                survivor=conn.start_cone,
                collapsed=conn.end_cone,
                holonomy=conn.holonomy,
                choice=choice,
                count=2,
                zero_after=zero_after,
            )
        )
    it = iter(records)
    grouped = tuple(tuple(next(it) for _ in g) for g in groups)
    return s_out, MultiCollapseRecord(groups=grouped)


def open_up_many(
    s: TranslationSurface, record: MultiCollapseRecord
) -> TranslationSurface:
    """Invert ``collapse_many`` using its record.

    All cuts run on one mesh so the record's zero labels, which refer to
    the collapse output ``s``, stay meaningful for every group.
    """
    b = MeshBuilder(s)
    slit_groups = []
    for rec in record.all_records():
        cone = s.cone_points[rec.zero_after]
        M = cone.order
        if not (2 <= rec.count <= M + 1):
            raise FlatlabError("record count incompatible with the zero's order")
        v = Vec(rec.holonomy[0], rec.holonomy[1])
        occ = corner_occurrences(b, cone.half_edges[0], v)
        if len(occ) != M + 1:
            raise FlatlabError("occurrence count disagrees with the cone order")
        corners = [occ[(rec.choice + j) % (M + 1)] for j in range(rec.count)]
        slit_groups.append(
            _SlitGroup(
                corners=corners,
                vector=v,
                start_rep=_vertex_rep(b, cone.half_edges[0]),
                end_policy=["regular"] * rec.count,
            )
        )
    try:
        _validate_and_cut(b, slit_groups, shared_reps=set())
    except GhostHitsSingularity as e:
        raise SegmentHitsSingularity(str(e)) from e
    return b.to_surface()


def _to_surface_with_map(b: MeshBuilder):
    remap = {}
    order = []
    for h in range(len(b.vec)):
        if b.alive[h]:
            remap[h] = len(order)
            order.append(h)
    vec = [b.vec[h] for h in order]
    twin = [remap[b.twin[h]] for h in order]
    nxt = [remap[b.nxt[h]] for h in order]
    s = TranslationSurface(vec, twin, nxt, exact=b.exact)
    return s, remap
