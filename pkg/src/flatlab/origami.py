"""Square-tiled surfaces encoded by permutation pairs.

An origami on N unit squares is a pair of permutations ``h`` and ``v`` of
``{0..N-1}``: the right edge of square ``i`` glues to the left edge of
square ``h[i]`` and the top edge of ``i`` glues to the bottom edge of
``v[i]``.  Vertices of the squares correspond to cycles of the commutator
``h v h^-1 v^-1``; a cycle of length k carries cone angle ``2*pi*k``, so
it is a zero of order k - 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import Disconnected, ValidationError
from .geometry import Vec
from .surface import StratumSignature, TranslationSurface


@dataclass(frozen=True)
class Origami:
    n_squares: int
    h: tuple[int, ...]
    v: tuple[int, ...]

    def __post_init__(self):
        n = self.n_squares
        if n < 1:
            raise ValidationError("need at least one square")
        for name, p in (("h", self.h), ("v", self.v)):
            if len(p) != n or sorted(p) != list(range(n)):
                raise ValidationError(f"{name} is not a permutation of 0..{n - 1}")

    def is_connected(self) -> bool:
        return _transitive(self.h, self.v)

    def commutator(self) -> tuple[int, ...]:
        """The permutation h v h^-1 v^-1 (maps applied right to left)."""
        n = self.n_squares
        h, v = self.h, self.v
        hinv = [0] * n
        vinv = [0] * n
        for i in range(n):
            hinv[h[i]] = i
            vinv[v[i]] = i
        return tuple(h[v[hinv[vinv[x]]]] for x in range(n))

    def stratum(self) -> StratumSignature:
        if not self.is_connected():
            raise Disconnected("origami permutations do not act transitively")
        return StratumSignature(
            k - 1 for k in _cycle_lengths(self.commutator()) if k >= 2
        )


def _transitive(h, v) -> bool:
    n = len(h)
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        i = stack.pop()
        for j in (h[i], v[i]):
            if not seen[j]:
                seen[j] = True
                count += 1
                stack.append(j)
    return count == n


def _cycle_lengths(p) -> list[int]:
    n = len(p)
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i]:
            continue
        k = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            k += 1
        out.append(k)
    return out


def origami_stratum(o: Origami) -> StratumSignature:
    return o.stratum()


def build_from_origami(o: Origami, mark_regular_if_flat: bool = True) -> TranslationSurface:
    """Exact-mode surface of area N: each square split along its diagonal.

    Square ``i`` contributes six half-edges ``6i..6i+5``:

    ==  ===========  ========
    k   segment      vector
    ==  ===========  ========
    0   bottom       (1, 0)
    1   right        (0, 1)
    2   diagonal     (-1,-1)
    3   diagonal     (1, 1)
    4   top          (-1, 0)
    5   left         (0,-1)
    ==  ===========  ========

    When the surface has no zero at all (a torus cover), every vertex is
    marked so scans still have endpoints.
    """
    if not o.is_connected():
        raise Disconnected("origami permutations do not act transitively")
    n = o.n_squares
    vec = []
    twin = [0] * (6 * n)
    nxt = [0] * (6 * n)
    for i in range(n):
        b = 6 * i
        vec.extend(
            [Vec(1, 0), Vec(0, 1), Vec(-1, -1), Vec(1, 1), Vec(-1, 0), Vec(0, -1)]
        )
        nxt[b + 0] = b + 1
        nxt[b + 1] = b + 2
        nxt[b + 2] = b + 0
        nxt[b + 3] = b + 4
        nxt[b + 4] = b + 5
        nxt[b + 5] = b + 3
        twin[b + 2] = b + 3
        twin[b + 3] = b + 2
        # right edge of i meets left edge of h[i]
        twin[b + 1] = 6 * o.h[i] + 5
        twin[6 * o.h[i] + 5] = b + 1
        # top edge of i meets bottom edge of v[i]
        twin[b + 4] = 6 * o.v[i] + 0
        twin[6 * o.v[i] + 0] = b + 4
    s = TranslationSurface(vec, twin, nxt, exact=True)
    if mark_regular_if_flat and not s.zeros():
        s = s.with_marked(c.id for c in s.cone_points)
    return s


# --- stock examples ---------------------------------------------------------

def unit_torus(marked: bool = True) -> TranslationSurface:
    """The unit square torus, optionally with its vertex marked."""
    o = Origami(1, (0,), (0,))
    s = build_from_origami(o, mark_regular_if_flat=marked)
    return s


def l_origami() -> TranslationSurface:
    """Three squares in an L: one zero of order 2, genus 2, area 3."""
    return build_from_origami(l_origami_permutations())


def l_origami_permutations() -> Origami:
    return Origami(3, (1, 0, 2), (2, 1, 0))
