"""Exact planar predicates on holonomy vectors.

Vectors are ``(x, y)`` pairs whose components are ``int``, ``Fraction`` or
``float``.  All predicates below are branch-exact for int/Fraction inputs;
float inputs go through the same formulas and inherit float semantics.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple


class Vec(NamedTuple):
    """A planar holonomy vector."""

    x: object
    y: object

    def __add__(self, other):
        return Vec(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Vec(self.x - other[0], self.y - other[1])

    def __neg__(self):
        return Vec(-self.x, -self.y)

    def scale(self, c):
        return Vec(self.x * c, self.y * c)

    def norm_sq(self):
        return self.x * self.x + self.y * self.y

    def is_exact(self) -> bool:
        return not (isinstance(self.x, float) or isinstance(self.y, float))


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def norm_sq(u):
    return u[0] * u[0] + u[1] * u[1]


def same_ray(u, v) -> bool:
    """True if u and v point in the same direction (both nonzero)."""
    return cross(u, v) == 0 and dot(u, v) > 0


def corner_contains(u, w, d) -> bool:
    """Direction membership d in the half-open corner arc [u, w).

    The arc runs counterclockwise from ``u`` (inclusive) to ``w``
    (exclusive) and must span strictly less than a half turn, which holds
    for every corner of a positively oriented triangle.  Walking
    counterclockwise around a cone point, the half-open corners tile the
    full cone angle, so each planar direction is contained in exactly
    ``order + 1`` corners.
    """
    cu = cross(u, d)
    if cu < 0 or (cu == 0 and dot(u, d) < 0):
        return False
    if cu == 0 and dot(u, d) > 0:
        return True
    # d strictly after u; require d strictly before w
    return cross(d, w) > 0


def in_open_cone(u, w, d) -> bool:
    """True if d lies strictly inside the counterclockwise arc (u, w)."""
    return cross(u, d) > 0 and cross(d, w) > 0


def ray_hits_point(d, p) -> bool:
    """True if the ray from the origin in direction d passes through p."""
    return cross(d, p) == 0 and dot(d, p) > 0


def circumcircle_side(a, b, c, d):
    """Incircle determinant for the positively oriented triangle (a, b, c).

    Positive iff ``d`` lies strictly inside the circumcircle, zero iff the
    four points are cocircular.
    """
    adx = a[0] - d[0]
    ady = a[1] - d[1]
    bdx = b[0] - d[0]
    bdy = b[1] - d[1]
    cdx = c[0] - d[0]
    cdy = c[1] - d[1]
    ad2 = adx * adx + ady * ady
    bd2 = bdx * bdx + bdy * bdy
    cd2 = cdx * cdx + cdy * cdy
    return (
        ad2 * (bdx * cdy - bdy * cdx)
        - bd2 * (adx * cdy - ady * cdx)
        + cd2 * (adx * bdy - ady * bdx)
    )


def segments_cross(p1, p2, q1, q2) -> bool:
    """Strict transversal crossing of open segments p1p2 and q1q2."""
    d1 = cross((p2[0] - p1[0], p2[1] - p1[1]), (q1[0] - p1[0], q1[1] - p1[1]))
    d2 = cross((p2[0] - p1[0], p2[1] - p1[1]), (q2[0] - p1[0], q2[1] - p1[1]))
    d3 = cross((q2[0] - q1[0], q2[1] - q1[1]), (p1[0] - q1[0], p1[1] - q1[1]))
    d4 = cross((q2[0] - q1[0], q2[1] - q1[1]), (p2[0] - q1[0], p2[1] - q1[1]))
    return ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and d1 != d2 and d3 != d4


def as_fraction_pair(q):
    """Split a rational value into an integer (num, den) pair, den > 0."""
    if isinstance(q, int):
        return q, 1
    if isinstance(q, Fraction):
        return q.numerator, q.denominator
    f = Fraction(q)
    return f.numerator, f.denominator


def segment_cone_reachable(p, q, u, w, bound_sq) -> bool:
    """Whether the segment pq meets the closed cone [u, w] within the bound.

    ``bound_sq`` is the squared distance bound.  The test is exact for
    int/Fraction inputs: the segment is clipped to the cone and the minimal
    squared distance of the clipped part from the origin is compared to the
    bound without ever leaving rational arithmetic.
    """
    dx = q[0] - p[0]
    dy = q[1] - p[1]
    # constraints for X(t) = p + t*(q - p) inside the closed cone:
    #   cross(u, X) >= 0   and   cross(X, w) >= 0
    lo_n, lo_d = 0, 1  # t interval as fractions lo_n/lo_d .. hi_n/hi_d
    hi_n, hi_d = 1, 1

    for (c0, c1, sign) in (
        (cross(u, p), u[0] * dy - u[1] * dx, 1),
        (cross(p, w), dx * w[1] - dy * w[0], -1),
    ):
        # constraint: c0 + t*c1 >= 0 (sign already folded in)
        del sign
        if c1 == 0:
            if c0 < 0:
                return False
            continue
        # boundary t* = -c0/c1
        if c1 > 0:
            # t >= -c0/c1: tighten lower bound
            if -c0 * lo_d > lo_n * c1:
                lo_n, lo_d = -c0, c1
        else:
            # t <= -c0/c1 with c1 < 0  =>  t <= c0/(-c1)
            if c0 * hi_d < hi_n * (-c1):
                hi_n, hi_d = c0, -c1
    if lo_n * hi_d > hi_n * lo_d:
        return False

    bn, bd = as_fraction_pair(bound_sq) if not isinstance(bound_sq, float) else (bound_sq, 1)

    def dist_ok(tn, td):
        # |p + (tn/td)(q-p)|^2 <= bound
        xx = p[0] * td + tn * dx
        yy = p[1] * td + tn * dy
        if isinstance(bound_sq, float):
            return (xx * xx + yy * yy) <= bound_sq * (td * td) * (1 + 1e-12) + 1e-18
        return (xx * xx + yy * yy) * bd <= bn * td * td

    # candidates: interval endpoints and the unconstrained foot of the
    # perpendicular, clamped into the interval
    if dist_ok(lo_n, lo_d) or dist_ok(hi_n, hi_d):
        return True
    den = dx * dx + dy * dy
    if den == 0:
        return False
    num = -(p[0] * dx + p[1] * dy)  # t* = num/den
    if num * lo_d < lo_n * den or num * hi_d > hi_n * den:
        return False
    return dist_ok(num, den)
