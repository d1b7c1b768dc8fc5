"""Combinatorial self-intersection and intersection numbers.

The pair of pants deformation retracts onto a wedge of two circles whose
vertex carries a cyclic order of the four half-edges (a ribbon structure).
Lifting to the universal cover, a closed curve becomes a family of
bi-infinite reduced words, and the ribbon structure puts a circular order on
the ends of the tree.  Two lifts cross exactly when their ends interleave.

For cyclic words ``u`` and ``v`` the engine counts ordered offset pairs
``(i, j)`` such that

* the lift of ``u`` read from offset ``i`` and the lift of ``v`` read from
  offset ``j`` both pass through the base vertex,
* the base vertex is the first vertex the two lifts share, in the direction
  of the ``u`` lift (this picks one representative per pair of lifts), and
* the four rays leaving the base vertex interleave.

Lifts of the same geodesic are treated as parallel push-offs and never cross
each other; for a power ``d^e`` the push-off spiral adds ``e - 1`` crossings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterator, Sequence

from .errors import TrivialClassError
from .words import CurveClass, _canonical, inverse_letter, inverse_word

HALF_EDGES = ("a+", "a-", "b+", "b-")
_DEPART = {"a": "a+", "A": "a-", "b": "b+", "B": "b-"}


def depart(x: str) -> str:
    """Half-edge through which a path reading ``x`` leaves the vertex."""
    return _DEPART[x]


def arrive(x: str) -> str:
    """Half-edge through which a path reading ``x`` comes back to the vertex."""
    return _DEPART[inverse_letter(x)]


@dataclass(frozen=True)
class RibbonStructure:
    """Cyclic order of the four half-edges at the vertex of the spine."""

    cyclic_order: tuple[str, ...]
    boundary_cycles: tuple[str, ...] = field(init=False, compare=False)

    def __post_init__(self):
        if sorted(self.cyclic_order) != sorted(HALF_EDGES):
            raise ValueError(f"not an ordering of {HALF_EDGES}: {self.cyclic_order}")
        object.__setattr__(self, "boundary_cycles", tuple(self._boundary_walk()))
        if len(self.boundary_cycles) != 3:
            raise ValueError(
                f"cyclic order {self.cyclic_order} has {len(self.boundary_cycles)} "
                "boundary cycles; a pair of pants needs 3"
            )

    def position(self, half_edge: str) -> int:
        return self.cyclic_order.index(half_edge)

    def successor(self, half_edge: str) -> str:
        return self.cyclic_order[(self.position(half_edge) + 1) % 4]

    def _boundary_walk(self) -> list[str]:
        by_half_edge = {depart(x): x for x in "aAbB"}
        seen: set[str] = set()
        cycles = []
        for start in "aAbB":
            if start in seen:
                continue
            word = []
            x = start
            while x not in seen:
                seen.add(x)
                word.append(x)
                x = by_half_edge[self.successor(arrive(x))]
            cycles.append("".join(word))
        return cycles

    def boundary_words(self) -> list[str]:
        """Boundary cycles as unoriented canonical words."""
        return sorted(_canonical(w, False) for w in self.boundary_cycles)


def _boundary_walk_count(order: tuple[str, ...]) -> int:
    try:
        return len(RibbonStructure(order).boundary_cycles)
    except ValueError:
        return -1


@lru_cache(maxsize=None)
def pants_structure() -> RibbonStructure:
    """The ribbon structure whose boundary words are a, b and ab.

    Searched for rather than hard-coded, so that the three-boundary condition
    and the boundary spellings are checked every time the engine starts.
    """
    for rest in permutations(HALF_EDGES[1:]):
        order = (HALF_EDGES[0],) + rest
        if _boundary_walk_count(order) != 3:
            continue
        ribbon = RibbonStructure(order)
        if ribbon.boundary_words() == ["a", "ab", "b"]:
            return ribbon
    raise RuntimeError("no cyclic order of half-edges realises the pair of pants")


# --------------------------------------------------------------------------
# ray keys
#
# A ray r0 r1 r2 ... leaving the base vertex is encoded as a digit string:
# digit 0 is the position of depart(r0) in the cyclic order, digit t > 0 is
# the position of depart(r_t) counted from arrive(r_{t-1}).  Comparing these
# strings lexicographically is comparing the ends in the circular order, cut
# just before the first half-edge.


@lru_cache(maxsize=None)
def _digit_tables(order: tuple[str, ...]):
    pos = {h: i for i, h in enumerate(order)}
    first = {x: str(pos[depart(x)]) for x in "aAbB"}
    step = {}
    for x in "aAbB":
        for y in "aAbB":
            if y != inverse_letter(x):
                step[x + y] = str((pos[depart(y)] - pos[arrive(x)]) % 4)
    return first, step


def _tables():
    return _digit_tables(pants_structure().cyclic_order)


@lru_cache(maxsize=1 << 16)
def _forward_keys(w: str, length: int) -> tuple[str, ...]:
    first, step = _tables()
    n = len(w)
    steps = "".join(step[w[t - 1] + w[t]] for t in range(n))
    reps = length // n + 2
    ext = steps * reps
    return tuple(first[w[i]] + ext[i + 1 : i + length] for i in range(n))


def _ray_keys(w: str, length: int) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Forward and backward ray keys at every offset of the cyclic word ``w``."""
    n = len(w)
    fwd = _forward_keys(w, length)
    inv = _forward_keys(inverse_word(w), length)
    back = tuple(inv[(n - i) % n] for i in range(n))
    return fwd, back


def linked_pairs_uncached(w1: str, w2: str) -> int:
    """Ordered count of crossing lift pairs of the cyclic words ``w1``, ``w2``.

    Both words must be cyclically reduced.  Offsets range over the whole word,
    so a power is treated as a curve traversing its root several times.
    """
    n, m = len(w1), len(w2)
    # periodic rays with periods n and m that agree on n + m letters coincide
    length = n + m + 1
    f1s, b1s = _ray_keys(w1, length)
    f2s, b2s = _ray_keys(w2, length)
    heads2 = [(f2, b2, f2[0], b2[0]) for f2, b2 in zip(f2s, b2s)]
    count = 0
    for f1, b1 in zip(f1s, b1s):
        behind = b1[0]
        lo, hi = (f1, b1) if f1 < b1 else (b1, f1)
        for f2, b2, f2_head, b2_head in heads2:
            if f2_head == behind or b2_head == behind:
                continue
            if (lo < f2 < hi) != (lo < b2 < hi):
                count += 1
    return count


_linked_pairs = lru_cache(maxsize=1 << 18)(linked_pairs_uncached)


def linked_pairs(w1: str, w2: str) -> int:
    return _linked_pairs(w1, w2)


def clear_caches():
    _linked_pairs.cache_clear()
    _forward_keys.cache_clear()


def spiral_crossings(exponent: int) -> int:
    """Crossings forced by winding ``exponent`` times along one closed geodesic.

    Model: in the strip covering the annulus around the geodesic, the lifts of
    the ``exponent``-fold spiral are sawtooth paths, lift ``r`` rising with
    slope ``1/exponent`` and dropping back at integers congruent to ``r``.  One
    deck translation moves every lift by one unit, so counting the drops at
    ``x = 0`` counts crossings in the annulus once each.
    """
    dropping = 0
    crossings = 0
    for r in range(exponent):
        if r == dropping:
            continue
        height = Fraction((-r) % exponent, exponent)
        if 0 < height < 1:
            crossings += 1
    return crossings


def _check(c: CurveClass):
    if not isinstance(c, CurveClass):
        raise TypeError(f"expected CurveClass, got {type(c).__name__}")
    if not c.word:
        raise TrivialClassError("trivial class")


def self_intersection(c: CurveClass, direct: bool = False) -> int:
    """Minimal self-intersection number of ``c``.

    Powers use ``si(d^e) = si(d) e^2 + e - 1`` unless ``direct`` is set, in
    which case the linked pairs of the full word are counted and the spiral
    crossings added.
    """
    _check(c)
    if direct or not c.is_power:
        ordered = linked_pairs(c.word, c.word)
        assert ordered % 2 == 0, f"odd ordered self-count {ordered} for {c.word}"
        return ordered // 2 + (spiral_crossings(c.exponent) if c.is_power else 0)
    root = linked_pairs(c.root, c.root) // 2
    e = c.exponent
    return root * e * e + e - 1


def intersection(c1: CurveClass, c2: CurveClass, direct: bool = False) -> int:
    """Geometric intersection number; ``i(c, c)`` uses two distinct copies."""
    _check(c1)
    _check(c2)
    if direct:
        return linked_pairs(c1.word, c2.word)
    return c1.exponent * c2.exponent * linked_pairs(c1.root, c2.root)


def intersection_vector(c: CurveClass, probes: Sequence[CurveClass]) -> list[int]:
    if not probes:
        raise ValueError("probes must be non-empty")
    return [intersection(c, p) for p in probes]


# --------------------------------------------------------------------------
# rays


@dataclass(frozen=True)
class Ray:
    """Infinite reduced word obtained by reading ``base`` cyclically from ``offset``.

    With ``backward`` set the word is read in reverse with inverted letters,
    i.e. the other end of the same lift.
    """

    base: CurveClass
    offset: int
    backward: bool = False

    def __post_init__(self):
        if not 0 <= self.offset < len(self.base.word):
            raise ValueError("offset out of range")

    def letters(self) -> Iterator[str]:
        w = self.base.word
        n = len(w)
        t = 0
        while True:
            if self.backward:
                yield inverse_letter(w[(self.offset - 1 - t) % n])
            else:
                yield w[(self.offset + t) % n]
            t += 1


def compare_rays(r1: Ray, r2: Ray, order: RibbonStructure | None = None) -> str:
    """Position of ``r1`` relative to ``r2``: ``less``, ``greater`` or ``equal-tail``."""
    ribbon = order or pants_structure()
    first, step = _digit_tables(ribbon.cyclic_order)
    horizon = len(r1.base.word) + len(r2.base.word) + 1
    it1, it2 = r1.letters(), r2.letters()
    prev1 = prev2 = None
    for _ in range(horizon):
        x, y = next(it1), next(it2)
        d1 = first[x] if prev1 is None else step[prev1 + x]
        d2 = first[y] if prev2 is None else step[prev2 + y]
        if d1 != d2:
            return "less" if d1 < d2 else "greater"
        prev1, prev2 = x, y
    return "equal-tail"
