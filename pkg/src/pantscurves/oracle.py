"""Exact hyperbolic-geometry oracle for intersection numbers.

The pair of pants is uniformised by the free group generated by
``z -> z + 2`` and ``z -> z / (-2z + 1)``; a class becomes a matrix, a
hyperbolic matrix has an axis whose endpoints are real quadratic irrationals,
and two lifted axes cross exactly when their endpoints interleave.  All
predicates are integer arithmetic.

``oracle_intersection`` counts double cosets ``<w1> g <w2>`` whose translated
axes cross.  Two candidate sets for ``g`` are available:

``"ball"``
    every reduced word of length at most the radius;
``"axis"``
    ``g = x y^-1`` with ``x`` a vertex of the tree axis of ``w1`` and ``y`` a
    vertex of the tree axis of ``w2``, both within the radius of the identity.

Crossing lifts always meet in the Cayley tree, so both sets reach every
crossing double coset; ``"axis"`` is far smaller and is the default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .errors import (
    EllipticElementError,
    NotConvergedError,
    NotHyperbolicError,
    OddCountError,
    SharedEndpointError,
    TrivialClassError,
)
from .words import BOUNDARY_WORDS, CurveClass, ReducedWord, inverse_word, rank_key, reduce_str


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class GroupMatrix:
    p: int
    q: int
    r: int
    s: int

    def __post_init__(self):
        if self.p * self.s - self.q * self.r != 1:
            raise ValueError(f"determinant of {self} is not 1")

    def __matmul__(self, other: "GroupMatrix") -> "GroupMatrix":
        p, q, r, s = self.p, self.q, self.r, self.s
        P, Q, R, S = other.p, other.q, other.r, other.s
        return GroupMatrix(p * P + q * R, p * Q + q * S, r * P + s * R, r * Q + s * S)

    def inverse(self) -> "GroupMatrix":
        return GroupMatrix(self.s, -self.q, -self.r, self.p)

    @property
    def trace(self) -> int:
        return self.p + self.s

    def rows(self) -> list[list[int]]:
        return [[self.p, self.q], [self.r, self.s]]


IDENTITY = GroupMatrix(1, 0, 0, 1)
_A = GroupMatrix(1, 2, 0, 1)
# (1, 0, 2, 1) makes aB parabolic and ab hyperbolic; the self-check flips it
_B_CANDIDATES = (GroupMatrix(1, 0, 2, 1), GroupMatrix(1, 0, -2, 1))


def _product(word: str, gens: dict[str, GroupMatrix]) -> GroupMatrix:
    m = IDENTITY
    for x in word:
        m = m @ gens[x]
    return m


def _is_parabolic(m: GroupMatrix) -> bool:
    return abs(m.trace) == 2 and m not in (IDENTITY, GroupMatrix(-1, 0, 0, -1))


@lru_cache(maxsize=None)
def generators() -> dict[str, GroupMatrix]:
    """Generator matrices, chosen so that exactly a, b and ab are parabolic.

    The boundary words come from the word module; if the textbook choice of
    ``b`` makes a different word parabolic, the sign of ``b`` is corrected.
    """
    for b in _B_CANDIDATES:
        gens = {"a": _A, "A": _A.inverse(), "b": b, "B": b.inverse()}
        if all(_is_parabolic(_product(w, gens)) for w in BOUNDARY_WORDS) and not any(
            _is_parabolic(_product(w, gens)) for w in ("aB", "aab", "abb")
        ):
            return gens
    raise RuntimeError("no generator choice makes a, b, ab the parabolic classes")


def matrix_of(w) -> GroupMatrix:
    letters = w.letters if isinstance(w, ReducedWord) else str(w)
    return _product(letters, generators())


def classify_element(m: GroupMatrix) -> str:
    t = abs(m.trace)
    if m in (IDENTITY, GroupMatrix(-1, 0, 0, -1)):
        return "identity"
    if t == 2:
        return "parabolic"
    if t > 2:
        return "hyperbolic"
    raise EllipticElementError(f"elliptic matrix {m.rows()} in a free discrete group")


# --------------------------------------------------------------------------
# exact quadratic irrationals


def _sign_surd(x: int, y: int, d: int) -> int:
    """Sign of x + y*sqrt(d), d >= 0."""
    if y == 0 or d == 0:
        return _sign(x)
    sy = _sign(y)
    if x == 0 or _sign(x) == sy:
        return sy
    return _sign(x) * _sign(x * x - y * y * d)


def _sign_two_surds(x: int, y: int, d1: int, z: int, d2: int) -> int:
    """Sign of x + y*sqrt(d1) + z*sqrt(d2)."""
    if z == 0 or d2 == 0:
        return _sign_surd(x, y, d1)
    if y == 0 or d1 == 0:
        return _sign_surd(x, z, d2)
    if _sign(y) == _sign(z):
        st = _sign(y)
    else:
        st = _sign(y) * _sign(y * y * d1 - z * z * d2)
    if x == 0:
        return st
    if st == 0 or st == _sign(x):
        return _sign(x)
    # x and t = y*sqrt(d1) + z*sqrt(d2) have opposite signs: compare x^2 with t^2
    return _sign(x) * _sign_surd(x * x - y * y * d1 - z * z * d2, -2 * y * z, d1 * d2)


@dataclass(frozen=True)
class Endpoint:
    """The point (num + sign*sqrt(disc)) / den on the real line, or infinity."""

    num: int = 0
    sign: int = 0
    disc: int = 0
    den: int = 1
    infinite: bool = False

    def __post_init__(self):
        if not self.infinite and self.den <= 0:
            raise ValueError("denominator must be positive")

    def __float__(self):
        if self.infinite:
            return math.inf
        return (self.num + self.sign * math.sqrt(self.disc)) / self.den

    def compare(self, other: "Endpoint") -> int:
        if self.infinite or other.infinite:
            return int(self.infinite) - int(other.infinite)
        x = other.den * self.num - self.den * other.num
        return _sign_two_surds(
            x, other.den * self.sign, self.disc, -self.den * other.sign, other.disc
        )

    def __lt__(self, other):
        return self.compare(other) < 0

    def __eq__(self, other):
        return isinstance(other, Endpoint) and self.compare(other) == 0

    def __hash__(self):
        return hash(float(self))


@dataclass(frozen=True)
class Geodesic:
    """A geodesic of the upper half plane, stored as the integer binary quadratic
    form ``A x^2 + B x y + C y^2`` whose roots in the projective line are its
    endpoints.  The form is primitive with first non-zero coefficient positive,
    so a geodesic has exactly one stored form.
    """

    A: int
    B: int
    C: int

    def __post_init__(self):
        if self.B * self.B - 4 * self.A * self.C <= 0:
            raise ValueError("a geodesic needs a form with positive discriminant")

    @classmethod
    def from_form(cls, A: int, B: int, C: int) -> "Geodesic":
        g = math.gcd(math.gcd(A, B), C)
        A, B, C = A // g, B // g, C // g
        lead = A or B
        if lead < 0:
            A, B, C = -A, -B, -C
        return cls(A, B, C)

    @classmethod
    def from_endpoints(cls, x1, x2) -> "Geodesic":
        """Geodesic between two rational points; ``None`` stands for infinity."""
        factors = []
        for x in (x1, x2):
            if x is None:
                factors.append((0, 1))
            else:
                f = Fraction(x)
                factors.append((f.denominator, -f.numerator))
        (a1, b1), (a2, b2) = factors
        return cls.from_form(a1 * a2, a1 * b2 + a2 * b1, b1 * b2)

    @property
    def discriminant(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    def endpoints(self) -> tuple[Endpoint, Endpoint]:
        A, B, C = self.A, self.B, self.C
        D = self.discriminant
        if A == 0:
            # B x y + C y^2 = y (B x + C y): roots infinity and -C/B
            f = Fraction(-C, B)
            return Endpoint(f.numerator, 0, 0, f.denominator), Endpoint(infinite=True)
        den = 2 * A
        num = -B
        if den < 0:
            den, num = -den, -num
            lo, hi = Endpoint(num, 1, D, den), Endpoint(num, -1, D, den)
        else:
            lo, hi = Endpoint(num, -1, D, den), Endpoint(num, 1, D, den)
        return lo, hi

    def translate(self, m: GroupMatrix) -> "Geodesic":
        """Image of the geodesic under the Moebius map of ``m``."""
        A, B, C = self.A, self.B, self.C
        p, q, r, s = m.p, m.q, m.r, m.s
        return Geodesic.from_form(
            A * s * s - B * r * s + C * r * r,
            -2 * A * q * s + B * (p * s + q * r) - 2 * C * p * r,
            A * q * q - B * p * q + C * p * p,
        )


def axis_of(m: GroupMatrix) -> Geodesic:
    if classify_element(m) != "hyperbolic":
        raise NotHyperbolicError(f"{m.rows()} is not hyperbolic")
    return Geodesic.from_form(m.r, m.s - m.p, -m.q)


def _resultant(g1: Geodesic, g2: Geodesic) -> int:
    a, b, c = g1.A, g1.B, g1.C
    d, e, f = g2.A, g2.B, g2.C
    return (a * f - c * d) ** 2 - (a * e - b * d) * (b * f - c * e)


def crossing(g1: Geodesic, g2: Geodesic) -> bool:
    """True iff the endpoint pairs strictly interleave on the circle at infinity.

    The resultant of the two forms equals, up to a positive factor, the product
    of the values of one form at the roots of the other, so its sign says
    whether the second pair separates the first.
    """
    res = _resultant(g1, g2)
    if res == 0:
        raise SharedEndpointError(f"{g1} and {g2} share an endpoint")
    return res < 0


def crossing_by_endpoints(g1: Geodesic, g2: Geodesic) -> bool:
    """Same predicate as :func:`crossing`, decided by sorting exact endpoints."""
    pts = [(e, 1) for e in g1.endpoints()] + [(e, 2) for e in g2.endpoints()]
    for i in range(4):
        for j in range(i + 1, 4):
            if pts[i][0].compare(pts[j][0]) == 0:
                raise SharedEndpointError(f"{g1} and {g2} share an endpoint")
    ordered = sorted(pts, key=_cmp_key)
    labels = [lab for _, lab in ordered]
    return labels[0] != labels[1] and labels[1] != labels[2]


class _cmp_key:
    __slots__ = ("e",)

    def __init__(self, pair):
        self.e = pair[0]

    def __lt__(self, other):
        return self.e.compare(other.e) < 0


# --------------------------------------------------------------------------
# double cosets


def _power_str(w: str, k: int) -> str:
    return w * k if k >= 0 else inverse_word(w) * (-k)


def _common_prefix(w1: str, o1: int, w2: str, o2: int, limit: int) -> int:
    n1, n2 = len(w1), len(w2)
    t = 0
    while t < limit and w1[(o1 + t) % n1] == w2[(o2 + t) % n2]:
        t += 1
    return t


def _best(words) -> str:
    return min(words, key=lambda w: (len(w), rank_key(w)))


def _canonical_axis(u: str, v: str, s: int, t: int) -> str:
    """Canonical representative of <u> u[:s] v[:t]^-1 <v>.

    The lifts of ``u`` and ``v`` meet at the vertex ``u[:s]``.  The shortest
    words in the double coset correspond to lattice points of the two lifts
    lying within one period of their shared segment, which bounds the search.
    """
    n, m = len(u), len(v)
    uinv, vinv = inverse_word(u), inverse_word(v)
    limit = n + m
    fwd_same = _common_prefix(u, s, v, t, limit)
    fwd_opp = _common_prefix(u, s, vinv, (m - t) % m, limit)
    back_same = _common_prefix(uinv, (n - s) % n, vinv, (m - t) % m, limit)
    back_opp = _common_prefix(uinv, (n - s) % n, v, t, limit)
    ahead = max(fwd_same, fwd_opp)
    behind = max(back_same, back_opp)
    orient = -1 if (fwd_opp or back_opp) else 1
    # lattice points u^k at position k*n - s relative to the shared vertex
    ks = range(math.floor((s - behind - n) / n), math.ceil((s + ahead + n) / n) + 1)
    if orient == 1:
        lo, hi = t - behind - m, t + ahead + m
    else:
        lo, hi = t - ahead - m, t + behind + m
    qs = range(math.floor(lo / m), math.ceil(hi / m) + 1)
    g = reduce_str(u[:s] + inverse_word(v[:t]))
    return _best(
        reduce_str(_power_str(u, -k) + g + _power_str(v, q)) for k in ks for q in qs
    )


def _canonical_ball(u: str, v: str, g: str) -> str:
    n, m = len(u), len(v)
    bound = (2 * len(g) + 3 * (n + m)) // min(n, m) + 2
    return _best(
        reduce_str(_power_str(u, p) + g + _power_str(v, q))
        for p in range(-bound, bound + 1)
        for q in range(-bound, bound + 1)
    )


def _axis_vertices(w: str, radius: int, gens) -> list[tuple[int, GroupMatrix]]:
    """(signed offset, matrix) for the vertices of the tree axis of ``w``."""
    winv = inverse_word(w)
    out = [(0, IDENTITY)]
    m = IDENTITY
    for k in range(1, radius + 1):
        m = m @ gens[w[(k - 1) % len(w)]]
        out.append((k, m))
    m = IDENTITY
    for k in range(1, radius + 1):
        m = m @ gens[winv[(k - 1) % len(w)]]
        out.append((-k, m))
    return out


def _crosses(axis1: Geodesic, other: Geodesic) -> bool:
    try:
        return crossing(axis1, other)
    except SharedEndpointError:
        if other == axis1:
            return False  # same lift: parallel push-offs do not cross
        raise


def _count_axis(u: str, v: str, radius: int, self_mode: bool) -> int:
    gens = generators()
    axis_u = axis_of(_product(u, gens))
    axis_v = axis_of(_product(v, gens))
    n, m = len(u), len(v)
    verdicts: dict[tuple[int, int], bool] = {}
    cosets = set()
    for s, mx in _axis_vertices(u, radius, gens):
        for t, my in _axis_vertices(v, radius, gens):
            g = mx @ my.inverse()
            crosses = _crosses(axis_u, axis_v.translate(g))
            key = (s % n, t % m)
            seen = verdicts.setdefault(key, crosses)
            assert seen == crosses, f"crossing not invariant on double coset {key}"
            if crosses:
                cosets.add(_canonical_cached(u, v, *key))
    return len(cosets)


_canonical_cached = lru_cache(maxsize=1 << 16)(_canonical_axis)


def _reduced_words(radius: int) -> Iterator[str]:
    yield ""
    frontier = [""]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for x in "aAbB":
                if not w or w[-1] != inverse_word(x):
                    nxt.append(w + x)
        yield from nxt
        frontier = nxt


def _count_ball(u: str, v: str, radius: int, self_mode: bool) -> int:
    gens = generators()
    axis_u = axis_of(_product(u, gens))
    axis_v = axis_of(_product(v, gens))
    cosets = set()
    for g in _reduced_words(radius):
        if _crosses(axis_u, axis_v.translate(_product(g, gens))):
            cosets.add(_canonical_ball(u, v, g))
    return len(cosets)


def _start_radius(n: int, m: int, search: str) -> int:
    if search == "axis":
        return max(1, -(-(max(n, m) - 1) // 2))
    return max(1, (n + m) // 2 - 1)


def _stable_count(u: str, v: str, max_radius: int | None, search: str, self_mode: bool) -> int:
    n, m = len(u), len(v)
    if max_radius is None:
        max_radius = default_max_radius(n, m)
    counter = {"axis": _count_axis, "ball": _count_ball}[search]
    history: list[int] = []
    radius = _start_radius(n, m, search)
    while radius <= max_radius:
        history.append(counter(u, v, radius, self_mode))
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            return history[-1]
        radius += 1
    raise NotConvergedError(
        f"double-coset count for ({u}, {v}) still changing at radius {max_radius}: {history}"
    )


def default_max_radius(n: int, m: int) -> int:
    return 2 * (n + m) + 8


def _check(c: CurveClass):
    if not isinstance(c, CurveClass) or not c.word:
        raise TrivialClassError("trivial class")


def oracle_intersection(
    c1: CurveClass, c2: CurveClass, max_radius: int | None = None, search: str = "axis"
) -> int:
    """Intersection number from crossing double cosets of lifted axes."""
    _check(c1)
    _check(c2)
    u, v = c1.word, c2.word
    if classify_element(matrix_of(u)) != "hyperbolic":
        return 0
    if classify_element(matrix_of(v)) != "hyperbolic":
        return 0
    return _stable_count(u, v, max_radius, search, self_mode=False)


def oracle_self_intersection(
    c: CurveClass, max_radius: int | None = None, search: str = "axis"
) -> int:
    """Self-intersection number from crossing double cosets <w> g <w>.

    Each geometric crossing shows up as two ordered double cosets.  A power
    ``d^e`` also winds ``e`` times along one geodesic, which no pair of
    distinct lifts sees; those ``e - 1`` crossings are added explicitly.
    """
    _check(c)
    spiral = c.exponent - 1
    if classify_element(matrix_of(c.word)) != "hyperbolic":
        return spiral
    ordered = _stable_count(c.word, c.word, max_radius, search, self_mode=True)
    if ordered % 2:
        raise OddCountError(f"odd ordered crossing count {ordered} for {c.word}")
    return ordered // 2 + spiral
