import pytest
from hypothesis import given, strategies as st

from hyperboot.cube import (
    CoordPermutation,
    DimensionError,
    Vertex,
    WordSet,
    check_dim,
    distance,
    neighbors,
    permute_coords,
    weight,
    xor_translate,
)
from hyperboot.snake import SnakePath


def test_text_form_leftmost_is_coordinate_one():
    v = Vertex.parse("10100")
    assert v.bits == 0b00101
    assert str(v) == "10100"


@pytest.mark.parametrize("u, v, expected", [
    ("000", "111", 3),
    ("10110", "10110", 0),
    ("10100", "00110", 2),
])
def test_distance(u, v, expected):
    assert distance(u, v) == expected


def test_distance_dimension_mismatch():
    with pytest.raises(DimensionError):
        distance("00", "000")


@pytest.mark.parametrize("v, w", [("00000", 0), ("11111", 5), ("101110", 4)])
def test_weight(v, w):
    assert weight(v) == w


def test_neighbors_order():
    assert [str(n) for n in neighbors("00")] == ["10", "01"]
    assert [str(n) for n in neighbors("0")] == ["1"]
    assert [str(n) for n in neighbors("101")] == ["001", "111", "100"]


def test_xor_translate_sets():
    s = WordSet.from_strings(["000", "001"])
    assert xor_translate(s, Vertex.parse("000")) == s
    assert xor_translate(s, Vertex.parse("001")) == s
    with pytest.raises(DimensionError):
        xor_translate(s, Vertex.parse("01"))


def test_xor_translate_snake():
    snake = SnakePath.from_strings(["011", "001", "000"], k=3)
    moved = xor_translate(snake, Vertex.parse("011"))
    assert moved.texts() == ["000", "010", "011"]


def test_permute_coords():
    s = WordSet.from_strings(["00110"])
    assert permute_coords(s, CoordPermutation.identity(5)) == s
    swap = CoordPermutation.swaps(5, (2, 3))
    assert permute_coords(s, swap).texts() == ["01010"]
    with pytest.raises(ValueError):
        CoordPermutation((1, 1, 3))


def test_permutation_inverse_roundtrip():
    p = CoordPermutation((3, 1, 4, 2))
    for x in range(16):
        assert p.inverse().apply(p.apply(x)) == x


def test_dimension_caps():
    check_dim(28, table=True)
    with pytest.raises(DimensionError):
        check_dim(29, table=True)
    check_dim(29, table=True, allow_large=True)
    with pytest.raises(DimensionError):
        check_dim(64)


def test_wordset_rejects_out_of_range():
    with pytest.raises(ValueError):
        WordSet(2, frozenset({4}))


D = 8
words = st.integers(0, (1 << D) - 1)


def _v(x):
    return Vertex(x, D)


@given(words, words, words)
def test_distance_is_a_metric(a, b, c):
    assert distance(_v(a), _v(b)) == distance(_v(b), _v(a))
    assert (distance(_v(a), _v(b)) == 0) == (a == b)
    assert distance(_v(a), _v(c)) <= distance(_v(a), _v(b)) + distance(_v(b), _v(c))
    assert distance(_v(a), _v(b)) == weight(_v(a ^ b))


@given(st.sets(words, min_size=2, max_size=12), words, st.permutations(range(1, D + 1)))
def test_automorphisms_preserve_distances(elems, mask, perm):
    s = WordSet(D, frozenset(elems))
    p = CoordPermutation(tuple(perm))
    pairs = [(a, b) for a in elems for b in elems]
    for a, b in pairs:
        assert ((a ^ mask) ^ (b ^ mask)).bit_count() == (a ^ b).bit_count()
        assert (p.apply(a) ^ p.apply(b)).bit_count() == (a ^ b).bit_count()
    assert len(xor_translate(s, mask)) == len(s)
    assert len(permute_coords(s, p)) == len(s)
