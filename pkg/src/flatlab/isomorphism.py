"""Translation-surface isomorphism as labeled mesh matching.

Two surfaces are isomorphic when some half-edge relabeling matches all
holonomy vectors.  Because surgeries retriangulate, raw meshes of equal
surfaces may differ by flips; comparison therefore runs on a canonical
form: removable marked points are flipped away, the triangulation is
made Delaunay, and cocircular hinges (where the Delaunay triangulation
is ambiguous, e.g. inside the squares of an origami) are marked as cell
walls that the matcher skips.  The result compares Delaunay cell
complexes, which are triangulation-independent.

Floating surfaces are compared directly on their raw meshes within a
tolerance (no canonicalization; adequate for perturbed copies of one
mesh).
"""

from __future__ import annotations

from .meshops import MeshBuilder, simplify
from .surface import TranslationSurface


def _canonical_complex(s: TranslationSurface):
    b = MeshBuilder(simplify(s))
    b.make_delaunay()
    alive = b.alive_half_edges()
    walls = set()
    for h in alive:
        te = b.twin[h]
        if te in (b.nxt[h], b.nxt[b.nxt[h]]):
            continue
        Q, R, T = b._hinge(h)
        from .geometry import Vec, circumcircle_side

        if circumcircle_side(Vec(0, 0), Q, R, T) == 0:
            walls.add(h)
    return b, walls


def _face_next(b: MeshBuilder, walls, h: int) -> int:
    g = b.nxt[h]
    guard = 0
    while g in walls:
        g = b.nxt[b.twin[g]]
        guard += 1
        if guard > len(b.vec):
            raise RuntimeError("face walk does not terminate")
    return g


def _match_from(b1, walls1, h1, b2, walls2, h2, eq) -> bool:
    m = {h1: h2}
    stack = [(h1, h2)]
    while stack:
        a, c = stack.pop()
        if not eq(b1.vec[a], b2.vec[c]):
            return False
        for g1, g2 in (
            (_face_next(b1, walls1, a), _face_next(b2, walls2, c)),
            (b1.twin[a], b2.twin[c]),
        ):
            if g1 in m:
                if m[g1] != g2:
                    return False
            else:
                m[g1] = g2
                stack.append((g1, g2))
    return True


def _match_raw_from(s1, h1, s2, h2, eq) -> bool:
    m = {h1: h2}
    stack = [(h1, h2)]
    while stack:
        a, c = stack.pop()
        if not eq(s1.vec[a], s2.vec[c]):
            return False
        for g1, g2 in ((s1.nxt[a], s2.nxt[c]), (s1.twin[a], s2.twin[c])):
            if g1 in m:
                if m[g1] != g2:
                    return False
            else:
                m[g1] = g2
                stack.append((g1, g2))
    return True


def is_isomorphic(s1: TranslationSurface, s2: TranslationSurface, tol: float = 1e-9) -> bool:
    """Whether some relabeling of s1 matches s2 with equal vectors.

    Exact surfaces are compared canonically (marked points removed,
    Delaunay cells matched), so the test is insensitive to the specific
    triangulation.  Floating surfaces fall back to raw-mesh matching
    within ``tol``.
    """
    if s1.genus() != s2.genus():
        return False
    if s1.stratum_signature().sorted() != s2.stratum_signature().sorted():
        return False
    if s1.exact and s2.exact:
        if s1.area() != s2.area():
            return False
        eq = lambda u, v: u.x == v.x and u.y == v.y
        b1, walls1 = _canonical_complex(s1)
        b2, walls2 = _canonical_complex(s2)
        alive1 = [h for h in b1.alive_half_edges() if h not in walls1]
        alive2 = [h for h in b2.alive_half_edges() if h not in walls2]
        if len(alive1) != len(alive2) or len(walls1) != len(walls2):
            return False
        if not alive2:
            # completely cocircular surface (flat torus covers): compare
            # the Delaunay triangulations directly
            a1 = b1.alive_half_edges()
            a2 = b2.alive_half_edges()
            if len(a1) != len(a2):
                return False
            t1 = b1.to_surface()
            t2 = b2.to_surface()
            h2 = 0
            return any(
                _match_raw_from(t1, h1, t2, h2, eq) for h1 in range(len(t1.vec))
            )
        h2 = alive2[0]
        return any(_match_from(b1, walls1, h1, b2, walls2, h2, eq) for h1 in alive1)
    # floating comparison on the raw meshes
    scale = max(
        [abs(float(v.x)) + abs(float(v.y)) for v in list(s1.vec) + list(s2.vec)] or [1.0]
    )
    eps = tol * max(scale, 1.0)
    eq = lambda u, v: (
        abs(float(u.x) - float(v.x)) <= eps and abs(float(u.y) - float(v.y)) <= eps
    )
    if len(s1.vec) != len(s2.vec):
        return False
    return any(
        _match_raw_from(s1, h1, s2, 0, eq) for h1 in range(len(s1.vec))
    )
