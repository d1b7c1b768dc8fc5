"""Words in the free group on ``a, b`` naming closed curves on the pair of pants.

Letters are the characters ``a, A, b, B`` with ``A = a^-1`` and ``B = b^-1``.
Storage and output always use these four letters; ``C`` (= ``ab``) and ``c``
(= ``BA``) are accepted by the parser only, and :func:`pretty` can put them
back for display.

Canonical forms use the letter order ``a < A < b < B``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import ResourceLimitError, TrivialClassError, WordSyntaxError

LETTERS = "aAbB"
_INVERT = str.maketrans("aAbB", "AaBb")
_TO_RANK = str.maketrans("aAbB", "0123")
_FROM_RANK = str.maketrans("0123", "aAbB")
_SHORTHAND = {"a": "a", "A": "A", "b": "b", "B": "B", "C": "ab", "c": "BA"}

#: Unoriented canonical spellings of the three boundary words.
BOUNDARY_WORDS = ("a", "b", "ab")

DEFAULT_MAX_CLASSES = 2_000_000


def inverse_letter(x: str) -> str:
    return x.translate(_INVERT)


def inverse_word(w: str) -> str:
    return w[::-1].translate(_INVERT)


def rank_key(w: str) -> str:
    """Sort key realising the order a < A < b < B lexicographically."""
    return w.translate(_TO_RANK)


def class_sort_key(w: str) -> tuple[int, str]:
    return len(w), w.translate(_TO_RANK)


@dataclass(frozen=True)
class ReducedWord:
    """A freely reduced word; the empty word is the identity."""

    letters: str = ""

    def __post_init__(self):
        for i, x in enumerate(self.letters):
            if x not in LETTERS:
                raise ValueError(f"illegal letter {x!r} in {self.letters!r}")
            if i and self.letters[i - 1] == inverse_letter(x):
                raise ValueError(f"{self.letters!r} is not freely reduced")

    def __str__(self):
        return self.letters

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def inverse(self) -> "ReducedWord":
        return ReducedWord(inverse_word(self.letters))


def free_reduce(letters: Iterable[str]) -> ReducedWord:
    stack: list[str] = []
    for x in letters:
        if x not in LETTERS:
            raise ValueError(f"illegal letter {x!r}")
        if stack and stack[-1] == inverse_letter(x):
            stack.pop()
        else:
            stack.append(x)
    return ReducedWord("".join(stack))


def reduce_str(w: str) -> str:
    """String-level free reduction without validation, for hot loops."""
    stack: list[str] = []
    for x in w:
        if stack and stack[-1] == _INV_CHAR[x]:
            stack.pop()
        else:
            stack.append(x)
    return "".join(stack)


_INV_CHAR = {"a": "A", "A": "a", "b": "B", "B": "b"}


def cyclic_reduce(w: str) -> str:
    """Strip cancelling end letters of an already freely reduced word."""
    i, j = 0, len(w) - 1
    while i < j and w[j] == _INV_CHAR[w[i]]:
        i += 1
        j -= 1
    return w[i : j + 1]


# --------------------------------------------------------------------------
# parsing


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message):
        raise WordSyntaxError(message, self.text, self.pos)

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self, closing: str = "") -> list[str]:
        out: list[str] = []
        while True:
            ch = self.peek()
            if ch == closing:
                break
            if ch == "":
                self.error("unbalanced parenthesis, missing ')'")
            out.extend(self.item())
        if not out and closing == ")":
            self.error("empty group")
        return out

    def item(self) -> list[str]:
        ch = self.peek()
        if ch in _SHORTHAND:
            self.pos += 1
            atom = list(_SHORTHAND[ch])
        elif ch == "(":
            self.pos += 1
            atom = self.expr(")")
            self.pos += 1
        elif ch == "^":
            self.error("exponent with no preceding atom")
        elif ch == ")":
            self.error("unbalanced parenthesis, unexpected ')'")
        else:
            self.error(f"illegal character {ch!r}")
        if self.peek() == "^":
            self.pos += 1
            self.peek()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            digits = self.text[start : self.pos]
            if not digits:
                self.error("exponent must be a positive integer")
            k = int(digits)
            if k < 1:
                self.pos = start
                self.error("exponent must be at least 1")
            atom = atom * k
        return atom

    def parse(self) -> list[str]:
        if self.peek() == "":
            return []
        out = self.expr("")
        return out


def parse_word(text: str) -> ReducedWord:
    """Parse ``text`` and return its free reduction.

    Grammar::

        Expr := Item+
        Item := Atom ["^" PositiveInt]
        Atom := a | A | b | B | C | c | "(" Expr ")"

    ``^`` binds to the immediately preceding atom, so ``aB^2`` is ``aBB``
    while ``(aB)^2`` is ``aBaB``.

    >>> parse_word("aC").letters
    'aab'
    >>> parse_word("(aB)^2").letters
    'aBaB'
    >>> parse_word("aA").letters
    ''
    """
    return free_reduce(_Parser(text).parse())


def pretty(w: str) -> str:
    """Greedy display form re-introducing ``C = ab`` and ``c = BA``."""
    out = []
    i = 0
    while i < len(w):
        pair = w[i : i + 2]
        if pair == "ab":
            out.append("C")
            i += 2
        elif pair == "BA":
            out.append("c")
            i += 2
        else:
            out.append(w[i])
            i += 1
    return "".join(out)


# --------------------------------------------------------------------------
# curve classes


def _least_rotation(w: str) -> str:
    r = w.translate(_TO_RANK)
    doubled = r + r
    n = len(r)
    return min(doubled[i : i + n] for i in range(n))


@lru_cache(maxsize=1 << 16)
def _canonical(w: str, oriented: bool) -> str:
    best = _least_rotation(w)
    if not oriented:
        best = min(best, _least_rotation(inverse_word(w)))
    return best.translate(_FROM_RANK)


def _smallest_period(w: str) -> int:
    n = len(w)
    for p in range(1, n + 1):
        if n % p == 0 and w[p:] + w[:p] == w:
            return p
    return n


@dataclass(frozen=True)
class CurveClass:
    """A free homotopy class of closed curves, stored as a canonical cyclic word.

    ``word`` is cyclically reduced and is the least rotation (in unoriented mode
    the least over rotations of the word and of its inverse). ``word`` equals
    ``root * exponent``.
    """

    word: str
    oriented: bool = False
    root_length: int = 0
    exponent: int = 1

    def __post_init__(self):
        if not self.word:
            raise TrivialClassError("the trivial class names no curve")
        if self.root_length == 0:
            p = _smallest_period(self.word)
            object.__setattr__(self, "root_length", p)
            object.__setattr__(self, "exponent", len(self.word) // p)
        if self.root_length * self.exponent != len(self.word):
            raise ValueError("root_length * exponent must equal the word length")

    def __str__(self):
        return self.word

    def __len__(self):
        return len(self.word)

    @property
    def root(self) -> str:
        return self.word[: self.root_length]

    @property
    def is_power(self) -> bool:
        return self.exponent >= 2

    def primitive(self) -> "CurveClass":
        if not self.is_power:
            return self
        return CurveClass(self.root, self.oriented, self.root_length, 1)

    def power(self, n: int) -> "CurveClass":
        if n < 1:
            raise ValueError("power must be positive")
        return CurveClass(self.word * n, self.oriented, self.root_length, self.exponent * n)

    def inverse(self) -> "CurveClass":
        return canonical_class(inverse_word(self.word), oriented=self.oriented)

    def unoriented(self) -> "CurveClass":
        if not self.oriented:
            return self
        return canonical_class(self.word, oriented=False)


def canonical_class(w, oriented: bool = False) -> CurveClass:
    """Canonical class of a word (``ReducedWord``, letter string or shorthand text).

    >>> canonical_class("baB").word
    'a'
    >>> c = canonical_class("aBaB")
    >>> c.root, c.exponent
    ('aB', 2)
    >>> canonical_class("bA").word
    'aB'
    """
    if isinstance(w, ReducedWord):
        letters = w.letters
    elif isinstance(w, CurveClass):
        letters = w.word
    else:
        letters = parse_word(w).letters
    core = cyclic_reduce(letters)
    if not core:
        raise TrivialClassError(f"{letters!r} is trivial after cyclic reduction")
    word = _canonical(core, oriented)
    return CurveClass(word, oriented)


def is_boundary_parallel(c: CurveClass) -> bool:
    """True iff the primitive root is one of the boundary words a, b, ab."""
    return _canonical(c.root, False) in BOUNDARY_WORDS


# --------------------------------------------------------------------------
# enumeration


def max_classes_default() -> int:
    return int(os.environ.get("PANTSCURVES_MAX_CLASSES", DEFAULT_MAX_CLASSES))


def _reduced_strings(length: int) -> Iterator[str]:
    """All cyclically reduced strings of the given length."""
    if length == 1:
        yield from LETTERS
        return
    stack = [(x, x) for x in reversed(LETTERS)]
    while stack:
        first, w = stack.pop()
        last = w[-1]
        if len(w) == length - 1:
            bad_last = _INV_CHAR[first]
            for x in LETTERS:
                if x != _INV_CHAR[last] and x != bad_last:
                    yield w + x
            continue
        for x in reversed(LETTERS):
            if x != _INV_CHAR[last]:
                stack.append((first, w + x))


def canonical_words(length: int, oriented: bool = False) -> list[str]:
    """Canonical words of all classes (powers included) of exactly ``length``."""
    if length >= 9:
        from ._fast import canonical_words_np

        return canonical_words_np(length, oriented)
    out = []
    for w in _reduced_strings(length):
        if _canonical(w, oriented) == w:
            out.append(w)
    out.sort(key=rank_key)
    return out


def enumerate_classes(
    max_len: int,
    *,
    non_power_only: bool = False,
    unoriented: bool = True,
    exclude_boundary_parallel: bool = False,
    min_len: int = 1,
    max_classes: int | None = None,
) -> list[CurveClass]:
    """One canonical representative per class with ``min_len <= length <= max_len``.

    Ordered by length, then lexicographically under a < A < b < B.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    cap = max_classes_default() if max_classes is None else max_classes
    oriented = not unoriented
    out: list[CurveClass] = []
    for length in range(min_len, max_len + 1):
        for w in canonical_words(length, oriented):
            c = CurveClass(w, oriented)
            if non_power_only and c.is_power:
                continue
            if exclude_boundary_parallel and is_boundary_parallel(c):
                continue
            out.append(c)
            if len(out) > cap:
                raise ResourceLimitError(
                    f"more than {cap} classes up to length {max_len}; "
                    "raise PANTSCURVES_MAX_CLASSES to continue"
                )
    return out
