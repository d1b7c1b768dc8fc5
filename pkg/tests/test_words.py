import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pantscurves.errors import ResourceLimitError, TrivialClassError, WordSyntaxError
from pantscurves.words import (
    CurveClass,
    ReducedWord,
    canonical_class,
    cyclic_reduce,
    enumerate_classes,
    free_reduce,
    inverse_word,
    is_boundary_parallel,
    parse_word,
    pretty,
    reduce_str,
)

INV = {"a": "A", "A": "a", "b": "B", "B": "b"}
RANK = {"a": 0, "A": 1, "b": 2, "B": 3}

letters = st.sampled_from("aAbB")
raw_words = st.text(alphabet="aAbB", min_size=0, max_size=14)


def stack_reduce(w):
    out = []
    for x in w:
        if out and out[-1] == INV[x]:
            out.pop()
        else:
            out.append(x)
    return "".join(out)


def brute_canonical(w, oriented=False):
    """Least rotation by direct comparison of every candidate."""
    core = stack_reduce(w)
    while len(core) >= 2 and core[0] == INV[core[-1]]:
        core = core[1:-1]
    cands = [core]
    if not oriented:
        cands.append("".join(INV[x] for x in reversed(core)))
    rots = [c[i:] + c[:i] for c in cands for i in range(len(c))]
    return min(rots, key=lambda r: [RANK[x] for x in r])


def reduced_cyclic_words(n):
    for t in itertools.product("aAbB", repeat=n):
        w = "".join(t)
        if stack_reduce(w) == w and (n < 2 or w[0] != INV[w[-1]]):
            yield w


nontrivial = raw_words.filter(lambda w: cyclic_reduce(stack_reduce(w)) != "")

# ---------------------------------------------------------------- parsing


@pytest.mark.parametrize(
    "text, expected",
    [
        ("aB", "aB"),
        ("aC", "aab"),
        ("Cb", "abb"),
        ("c", "BA"),
        ("aB^2", "aBB"),
        ("(aB)^2", "aBaB"),
        ("aA", ""),
        ("(Cb)^3", "abbabbabb"),
        ("((a)^2B)^2", "aaBaaB"),
        ("  a B ", "aB"),
    ],
)
def test_parse_examples(text, expected):
    assert parse_word(text).letters == expected


@pytest.mark.parametrize("text, pos", [("x", 0), ("a^0", 2), ("(aB", 3), ("a)", 1), ("^2", 0)])

def test_parse_errors_report_position(text, pos):
    with pytest.raises(WordSyntaxError) as exc:
        parse_word(text)
    assert exc.value.position == pos


def test_empty_text_is_the_identity():
    assert parse_word("").letters == ""


def test_reduced_word_rejects_cancellation():
    with pytest.raises(ValueError):
        ReducedWord("aAb")


@given(raw_words)
def test_free_reduction_matches_stack(w):
    assert free_reduce(w).letters == stack_reduce(w)


@given(raw_words, st.lists(st.tuples(st.integers(0, 30), letters), max_size=20))
def test_free_reduction_confluent_under_insertions(w, inserts):
    """Inserting cancelling pairs anywhere never changes the reduced word."""
    s = w
    for pos, x in inserts:
        p = pos % (len(s) + 1)
        s = s[:p] + x + INV[x] + s[p:]
    assert reduce_str(s) == reduce_str(w)


@given(raw_words)
def test_cyclic_reduce_is_cyclically_reduced(w):
    c = cyclic_reduce(stack_reduce(w))
    assert stack_reduce(c) == c
    assert len(c) < 2 or c[0] != INV[c[-1]]


# ---------------------------------------------------------------- canonical form


@pytest.mark.parametrize(
    "text, oriented, expected",
    [
        ("baB", False, "a"),
        ("bA", False, "aB"),
        ("bA", True, "Ab"),
        ("aC", False, "aab"),
        ("Cb", False, "abb"),
        ("c", False, "ab"),
        ("c", True, "AB"),
        ("BA", False, "ab"),
        ("aBaB", False, "aBaB"),
    ],
)
def test_canonical_examples(text, oriented, expected):
    assert canonical_class(text, oriented=oriented).word == expected


@pytest.mark.parametrize("text", ["aA", "abAB" + "baBA", "(aA)^3"])
def test_trivial_class_raises(text):
    with pytest.raises(TrivialClassError):
        canonical_class(text)


@given(nontrivial, st.booleans())
def test_canonical_matches_brute_force(w, oriented):
    assert canonical_class(w, oriented).word == brute_canonical(w, oriented)


@given(nontrivial, st.integers(0, 20), st.booleans())
def test_canonical_rotation_invariant(w, k, oriented):
    core = cyclic_reduce(stack_reduce(w))
    k %= len(core)
    rotated = core[k:] + core[:k]
    assert canonical_class(rotated, oriented).word == canonical_class(core, oriented).word


@given(nontrivial, raw_words)
def test_canonical_conjugation_invariant(w, g):
    conj = g + w + inverse_word(g)
    assert canonical_class(conj).word == canonical_class(w).word


@given(nontrivial)
def test_unoriented_identifies_inverse(w):
    assert canonical_class(inverse_word(w)).word == canonical_class(w).word


def test_powers_and_roots():
    c = canonical_class("(aB)^3")
    assert (c.root, c.exponent, c.is_power) == ("aB", 3, True)
    assert c.primitive().word == "aB"
    assert canonical_class("aB").power(2).word == "aBaB"
    assert CurveClass("abb").exponent == 1


@pytest.mark.parametrize(
    "text, expected",
    [("a", True), ("B", True), ("C", True), ("c", True), ("aa", True), ("CC", True), ("aB", False), ("ab^2", False)],
)
def test_boundary_parallel(text, expected):
    assert is_boundary_parallel(canonical_class(text)) is expected


@pytest.mark.parametrize("w", ["aB", "aab", "abab", "BABA", "aabab", "ababb"])
def test_pretty_round_trips(w):
    assert parse_word(pretty(w)).letters == w


def test_pretty_uses_shorthand():
    assert pretty("aabab") == "aCC"
    assert pretty("BA") == "c"


# ---------------------------------------------------------------- enumeration


@pytest.mark.parametrize("oriented", [False, True])
@pytest.mark.parametrize("n", range(1, 8))
def test_enumeration_matches_brute_force(n, oriented):
    expected = sorted({brute_canonical(w, oriented) for w in reduced_cyclic_words(n)})
    got = [c.word for c in enumerate_classes(n, unoriented=not oriented, min_len=n)]
    assert sorted(got) == expected
    assert got == sorted(got, key=lambda w: [RANK[x] for x in w])


def test_enumeration_fast_path_matches_brute_force():
    # length 9 takes the vectorised route
    expected = sorted({brute_canonical(w) for w in reduced_cyclic_words(9)})
    got = [c.word for c in enumerate_classes(9, min_len=9)]
    assert sorted(got) == expected


def test_enumeration_filters():
    words = [c.word for c in enumerate_classes(2)]
    assert words == ["a", "b", "aa", "ab", "aB", "bb"]
    assert [c.word for c in enumerate_classes(2, non_power_only=True)] == ["a", "b", "ab", "aB"]
    assert [c.word for c in enumerate_classes(2, exclude_boundary_parallel=True)] == ["aB"]


def test_enumeration_resource_cap():
    with pytest.raises(ResourceLimitError):
        enumerate_classes(6, max_classes=10)


def test_enumeration_resource_cap_from_env(monkeypatch):
    monkeypatch.setenv("PANTSCURVES_MAX_CLASSES", "5")
    with pytest.raises(ResourceLimitError):
        enumerate_classes(4)
