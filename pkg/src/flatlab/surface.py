"""Triangulated translation surfaces with exact or floating holonomy data.

A surface is a half-edge mesh: every half-edge ``h`` carries a planar
vector, a twin pointer and a successor pointer inside its triangle.
Because gluings are translations, all vectors live in one global frame
and developing a triangle chain never rotates anything.

Vertices (cone points) are derived data: orbits of half-edges under the
counterclockwise walk ``h -> twin(prev(h))``.  The cone angle at a vertex
is ``2*pi*(order + 1)``; the order is computed exactly by counting, over
the corners of the orbit, how many half-open direction arcs contain the
positive horizontal direction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import math
from typing import Iterable, Sequence

from .errors import (
    BadPairing,
    DegenerateTriangle,
    Disconnected,
    NonClosedTriangle,
    ValidationError,
)
from .geometry import Vec, corner_contains, cross

_EAST = (1, 0)


@dataclass(frozen=True)
class HalfEdge:
    """Record view of one half-edge (used by builders and documents)."""

    id: int
    vector: Vec
    twin: int
    next: int


@dataclass(frozen=True)
class ConePoint:
    """A vertex of the mesh: cone angle 2*pi*(order + 1).

    ``half_edges`` lists the outgoing half-edges in counterclockwise
    cyclic order, starting from the smallest id.  Order-0 points are
    regular and removable.
    """

    id: int
    order: int
    half_edges: tuple[int, ...]

    @property
    def removable(self) -> bool:
        return self.order == 0


class StratumSignature:
    """Labeled list of positive zero orders (m_1, ..., m_l)."""

    __slots__ = ("orders",)

    def __init__(self, orders: Iterable[int]):
        self.orders = tuple(int(m) for m in orders)
        if any(m < 1 for m in self.orders):
            raise ValidationError("stratum orders must be positive")
        if sum(self.orders) % 2 != 0:
            raise ValidationError("stratum orders must sum to an even number")

    @property
    def genus(self) -> int:
        return (sum(self.orders) + 2) // 2

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.orders, reverse=True))

    def __eq__(self, other) -> bool:
        if isinstance(other, StratumSignature):
            return self.sorted() == other.sorted()
        if isinstance(other, tuple):
            return self.sorted() == tuple(sorted(other, reverse=True))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.sorted())

    def __repr__(self) -> str:
        return f"StratumSignature{self.orders}"

    def __iter__(self):
        return iter(self.orders)

    def __len__(self) -> int:
        return len(self.orders)


class TranslationSurface:
    """Immutable validated translation surface.

    Instances are safe to share between parallel workers; every mutating
    operation (surgery, simplification, normalization) returns a new
    surface.
    """

    __slots__ = (
        "vec",
        "twin",
        "nxt",
        "exact",
        "area_scale",
        "marked",
        "vertex_of",
        "cone_points",
        "_area",
        "_genus",
    )

    def __init__(
        self,
        vec: Sequence[Vec],
        twin: Sequence[int],
        nxt: Sequence[int],
        exact: bool | None = None,
        area_scale: float = 1.0,
        marked: Iterable[int] = (),
        tol: float = 1e-9,
    ):
        self.vec = tuple(Vec(v[0], v[1]) for v in vec)
        self.twin = tuple(twin)
        self.nxt = tuple(nxt)
        if exact is None:
            exact = all(v.is_exact() for v in self.vec)
        self.exact = bool(exact)
        self.area_scale = area_scale
        _validate_combinatorics(self.vec, self.twin, self.nxt)
        _validate_geometry(self.vec, self.twin, self.nxt, self.exact, tol)
        self.vertex_of, self.cone_points = _vertex_orbits(self.vec, self.twin, self.nxt)
        self._area = _total_area(self.vec, self.nxt)
        self._genus = _genus_checked(self)
        self.marked = tuple(sorted(set(marked)))
        for vid in self.marked:
            if vid < 0 or vid >= len(self.cone_points):
                raise ValidationError(f"marked vertex {vid} out of range")
            if self.cone_points[vid].order != 0:
                raise ValidationError("only order-0 vertices can be marked points")

    # --- basic combinatorics ---

    def n_half_edges(self) -> int:
        return len(self.vec)

    def n_triangles(self) -> int:
        return len(self.vec) // 3

    def n_edges(self) -> int:
        return len(self.vec) // 2

    def prev(self, h: int) -> int:
        return self.nxt[self.nxt[h]]

    def ccw(self, h: int) -> int:
        """Next outgoing half-edge counterclockwise around start(h)."""
        return self.twin[self.nxt[self.nxt[h]]]

    def head(self, h: int) -> int:
        """Vertex id at the tip of half-edge h."""
        return self.vertex_of[self.twin[h]]

    # --- derived geometry ---

    def area(self):
        return self._area

    def genus(self) -> int:
        return self._genus

    def zeros(self) -> tuple[ConePoint, ...]:
        return tuple(c for c in self.cone_points if c.order >= 1)

    def stratum_signature(self) -> StratumSignature:
        return StratumSignature(c.order for c in self.cone_points if c.order >= 1)

    def endpoint_vertices(self) -> tuple[int, ...]:
        """Vertices where saddle connections start and end.

        Zeros when the surface has any; otherwise the marked points (a
        flat torus is only scannable through its marked points).
        Geodesics pass straight through every other order-0 vertex.
        """
        zs = tuple(c.id for c in self.cone_points if c.order >= 1)
        return zs if zs else self.marked

    # --- transformed copies ---

    def with_marked(self, marked: Iterable[int]) -> "TranslationSurface":
        return TranslationSurface(
            self.vec, self.twin, self.nxt, exact=self.exact,
            area_scale=self.area_scale, marked=marked,
        )

    def scaled(self, c) -> "TranslationSurface":
        vec = [v.scale(c) for v in self.vec]
        exact = self.exact and not isinstance(c, float)
        return TranslationSurface(
            vec, self.twin, self.nxt, exact=exact,
            area_scale=self.area_scale, marked=self.marked,
        )

    def half_edge_records(self) -> list[HalfEdge]:
        return [
            HalfEdge(h, self.vec[h], self.twin[h], self.nxt[h])
            for h in range(len(self.vec))
        ]

    def __repr__(self) -> str:
        sig = tuple(self.stratum_signature())
        return (
            f"TranslationSurface(genus={self._genus}, zeros={sig}, "
            f"triangles={self.n_triangles()}, exact={self.exact})"
        )


# --- construction -----------------------------------------------------------

def build_from_triangulation(
    half_edge_records: Sequence,
    exact: bool | None = None,
    marked: Iterable[int] = (),
    tol: float = 1e-9,
) -> TranslationSurface:
    """Build and validate a surface from half-edge records.

    Each record is a ``HalfEdge`` or a ``(vector, twin, next)`` triple.
    Raises ``BadPairing``, ``NonClosedTriangle``, ``DegenerateTriangle``
    or ``Disconnected`` when the records do not describe a valid surface.
    """
    vec, twin, nxt = [], [], []
    for rec in half_edge_records:
        if isinstance(rec, HalfEdge):
            v, t, n = rec.vector, rec.twin, rec.next
        else:
            v, t, n = rec
        vec.append(Vec(v[0], v[1]))
        twin.append(int(t))
        nxt.append(int(n))
    return TranslationSurface(vec, twin, nxt, exact=exact, marked=marked, tol=tol)


def genus(s: TranslationSurface) -> int:
    return s.genus()


def area(s: TranslationSurface):
    return s.area()


def stratum_signature(s: TranslationSurface) -> StratumSignature:
    return s.stratum_signature()


def normalize_area(s: TranslationSurface) -> TranslationSurface:
    """Rescale to unit area (drops exact mode; records the scale factor)."""
    a = float(s.area())
    c = 1.0 / math.sqrt(a)
    vec = [Vec(float(v.x) * c, float(v.y) * c) for v in s.vec]
    return TranslationSurface(
        vec, s.twin, s.nxt, exact=False, area_scale=c, marked=s.marked,
    )


# --- validation internals ----------------------------------------------------

def _validate_combinatorics(vec, twin, nxt) -> None:
    n = len(vec)
    if n == 0 or n % 3 != 0:
        raise BadPairing("half-edge count must be a positive multiple of 3")
    if len(twin) != n or len(nxt) != n:
        raise BadPairing("array lengths disagree")
    for h in range(n):
        t = twin[h]
        if not (0 <= t < n) or t == h or twin[t] != h:
            raise BadPairing(f"twin involution broken at half-edge {h}")
        if vec[h].is_exact() and vec[t].is_exact():
            if vec[t].x != -vec[h].x or vec[t].y != -vec[h].y:
                raise BadPairing(f"twin of half-edge {h} is not the opposite vector")
        if not (0 <= nxt[h] < n):
            raise BadPairing(f"next pointer out of range at half-edge {h}")
    seen = [False] * n
    for h in range(n):
        if seen[h]:
            continue
        a, b, c = h, nxt[h], nxt[nxt[h]]
        if len({a, b, c}) != 3 or nxt[c] != a:
            raise BadPairing(f"next is not a 3-cycle at half-edge {h}")
        seen[a] = seen[b] = seen[c] = True
    # connectivity of the gluing graph
    stack = [0]
    reach = [False] * n
    reach[0] = True
    count = 1
    while stack:
        h = stack.pop()
        for g in (twin[h], nxt[h]):
            if not reach[g]:
                reach[g] = True
                count += 1
                stack.append(g)
    if count != n:
        raise Disconnected("gluing graph is not connected")


def _validate_geometry(vec, twin, nxt, exact, tol) -> None:
    n = len(vec)
    scale = 1.0
    if not exact:
        scale = max(
            (abs(float(v.x)) + abs(float(v.y)) for v in vec), default=1.0
        ) or 1.0
        for h in range(n):
            t = twin[h]
            if (
                abs(float(vec[t].x) + float(vec[h].x)) > tol * scale
                or abs(float(vec[t].y) + float(vec[h].y)) > tol * scale
            ):
                raise BadPairing(f"twin of half-edge {h} is not the opposite vector")
    done = [False] * n
    for h in range(n):
        if done[h]:
            continue
        b, c = nxt[h], nxt[nxt[h]]
        done[h] = done[b] = done[c] = True
        sx = vec[h].x + vec[b].x + vec[c].x
        sy = vec[h].y + vec[b].y + vec[c].y
        if exact:
            if sx != 0 or sy != 0:
                raise NonClosedTriangle(f"triangle at half-edge {h} does not close")
        else:
            if abs(sx) > tol * scale or abs(sy) > tol * scale:
                raise NonClosedTriangle(f"triangle at half-edge {h} does not close")
        if cross(vec[h], vec[b]) <= 0:
            raise DegenerateTriangle(f"triangle at half-edge {h} has area <= 0")


def _vertex_orbits(vec, twin, nxt):
    n = len(vec)
    vertex_of = [-1] * n
    cones = []
    for h in range(n):
        if vertex_of[h] >= 0:
            continue
        vid = len(cones)
        orbit = []
        g = h
        turning = 0
        while True:
            orbit.append(g)
            vertex_of[g] = vid
            nb = twin[nxt[nxt[g]]]  # ccw neighbour
            if corner_contains(vec[g], vec[nb], _EAST):
                turning += 1
            g = nb
            if g == h:
                break
        k = min(range(len(orbit)), key=lambda i: orbit[i])
        orbit = orbit[k:] + orbit[:k]
        cones.append(ConePoint(vid, turning - 1, tuple(orbit)))
    return tuple(vertex_of), tuple(cones)


def _total_area(vec, nxt):
    n = len(vec)
    twice = 0
    done = [False] * n
    exact = all(v.is_exact() for v in vec)
    if not exact:
        twice = 0.0
    for h in range(n):
        if done[h]:
            continue
        b, c = nxt[h], nxt[nxt[h]]
        done[h] = done[b] = done[c] = True
        twice = twice + cross(vec[h], vec[b])
    if exact:
        a = Fraction(twice, 2)
        return int(a) if a.denominator == 1 else a
    return twice / 2.0


def _genus_checked(s: TranslationSurface) -> int:
    n = len(s.vec)
    V = len(s.cone_points)
    E = n // 2
    F = n // 3
    chi = V - E + F
    if chi % 2 != 0:
        raise ValidationError("odd Euler characteristic")
    g_euler = (2 - chi) // 2
    total_order = sum(c.order for c in s.cone_points)
    if total_order != 2 * g_euler - 2:
        raise ValidationError(
            f"angle sum {total_order} disagrees with Euler genus {g_euler}"
        )
    return g_euler
