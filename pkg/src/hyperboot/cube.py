"""Vertices, word sets and automorphisms of the hypercube {0,1}^d.

A vertex is stored as a plain ``int``. Coordinate ``i`` (1-based, as in the
tuple notation ``(x_1, ..., x_d)``) lives in bit ``i - 1``. The text form of
a vertex is a string of ``d`` characters whose leftmost character is
coordinate 1, so ``"10100"`` is the integer ``0b00101 == 5``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

MAX_VERTEX_DIM = 63
"""Largest dimension accepted for pure vertex operations."""

MAX_TABLE_DIM = 28
"""Largest dimension for which a dense 2^d state table may be allocated."""


class DimensionError(ValueError):
    """Raised on dimension mismatches or dimensions outside the allowed caps."""


def check_dim(d: int, *, table: bool = False, allow_large: bool = False) -> int:
    """Validate a dimension; ``table=True`` applies the dense-table cap."""
    if not isinstance(d, int) or d < 0:
        raise DimensionError(f"dimension must be a nonnegative integer, got {d!r}")
    if d > MAX_VERTEX_DIM:
        raise DimensionError(f"dimension {d} exceeds the vertex cap {MAX_VERTEX_DIM}")
    if table and d > MAX_TABLE_DIM and not allow_large:
        raise DimensionError(
            f"dimension {d} exceeds the state-table cap {MAX_TABLE_DIM} "
            "(pass allow_large=True to override)"
        )
    return d


def vertex_to_str(bits: int, d: int) -> str:
    return "".join("1" if bits >> i & 1 else "0" for i in range(d))


def vertex_from_str(text: str) -> int:
    text = text.strip()
    if any(c not in "01" for c in text):
        raise ValueError(f"not a vertex: {text!r}")
    return sum(1 << i for i, c in enumerate(text) if c == "1")


@dataclass(frozen=True, order=True)
class Vertex:
    """A site of {0,1}^d."""

    bits: int
    d: int

    def __post_init__(self) -> None:
        check_dim(self.d)
        if self.bits < 0 or self.bits >> self.d:
            raise ValueError(f"bits {self.bits:#x} do not fit in dimension {self.d}")

    @classmethod
    def parse(cls, text: str) -> "Vertex":
        text = text.strip()
        return cls(vertex_from_str(text), len(text))

    def __str__(self) -> str:
        return vertex_to_str(self.bits, self.d)

    def __int__(self) -> int:
        return self.bits


def as_vertex(v: Union[Vertex, str]) -> Vertex:
    return v if isinstance(v, Vertex) else Vertex.parse(v)


def _same_dim(u: Vertex, v: Vertex) -> None:
    if u.d != v.d:
        raise DimensionError(f"dimension mismatch: {u.d} vs {v.d}")


def distance(u: Union[Vertex, str], v: Union[Vertex, str]) -> int:
    u, v = as_vertex(u), as_vertex(v)
    _same_dim(u, v)
    return (u.bits ^ v.bits).bit_count()


def weight(v: Union[Vertex, str]) -> int:
    return as_vertex(v).bits.bit_count()


def neighbors(v: Union[Vertex, str]) -> list[Vertex]:
    """The d neighbours of ``v``, coordinate 1 flipped first."""
    v = as_vertex(v)
    return [Vertex(v.bits ^ (1 << i), v.d) for i in range(v.d)]


def neighbor_masks(d: int) -> list[int]:
    return [1 << i for i in range(d)]


@dataclass(frozen=True)
class WordSet:
    """A finite set of words of a common dimension ``dim``."""

    dim: int
    elements: frozenset[int]

    def __post_init__(self) -> None:
        check_dim(self.dim)
        if not isinstance(self.elements, frozenset):
            object.__setattr__(self, "elements", frozenset(self.elements))
        limit = 1 << self.dim
        for x in self.elements:
            if x < 0 or x >= limit:
                raise ValueError(f"word {x:#x} does not fit in dimension {self.dim}")

    @classmethod
    def of(cls, dim: int, words: Iterable[int]) -> "WordSet":
        return cls(dim, frozenset(words))

    @classmethod
    def from_strings(cls, texts: Iterable[str], dim: int | None = None) -> "WordSet":
        texts = [t.strip() for t in texts]
        dims = {len(t) for t in texts}
        if dim is not None:
            dims.add(dim)
        if len(dims) > 1:
            raise DimensionError(f"mixed word lengths {sorted(dims)}")
        if not dims:
            raise DimensionError("cannot infer the dimension of an empty set")
        return cls(dims.pop(), frozenset(vertex_from_str(t) for t in texts))

    @classmethod
    def full(cls, dim: int) -> "WordSet":
        return cls(dim, frozenset(range(1 << dim)))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, item: object) -> bool:
        if isinstance(item, Vertex):
            return item.d == self.dim and item.bits in self.elements
        if isinstance(item, str):
            return len(item) == self.dim and vertex_from_str(item) in self.elements
        return item in self.elements

    def _check(self, other: "WordSet") -> None:
        if other.dim != self.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __or__(self, other: "WordSet") -> "WordSet":
        self._check(other)
        return WordSet(self.dim, self.elements | other.elements)

    def __and__(self, other: "WordSet") -> "WordSet":
        self._check(other)
        return WordSet(self.dim, self.elements & other.elements)

    def __sub__(self, other: "WordSet") -> "WordSet":
        self._check(other)
        return WordSet(self.dim, self.elements - other.elements)

    def concat(self, other: "WordSet") -> "WordSet":
        """Elementwise concatenation: ``self`` supplies the leading coordinates."""
        shift = self.dim
        return WordSet(
            self.dim + other.dim,
            frozenset(a | (b << shift) for a in self.elements for b in other.elements),
        )

    def sorted_words(self) -> list[int]:
        return sorted(self.elements)

    def texts(self) -> list[str]:
        """Text forms in lexicographic order (leftmost coordinate most significant)."""
        return sorted(vertex_to_str(x, self.dim) for x in self.elements)

    def vertices(self) -> list[Vertex]:
        return [Vertex(x, self.dim) for x in sorted(self.elements)]


@dataclass(frozen=True)
class CoordPermutation:
    """Bijection on coordinates 1..d; coordinate ``j`` of the input moves to ``mapping[j-1]``."""

    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        m = tuple(self.mapping)
        object.__setattr__(self, "mapping", m)
        if sorted(m) != list(range(1, len(m) + 1)):
            raise ValueError(f"not a permutation of 1..{len(m)}: {m}")

    @property
    def d(self) -> int:
        return len(self.mapping)

    @classmethod
    def identity(cls, d: int) -> "CoordPermutation":
        return cls(tuple(range(1, d + 1)))

    @classmethod
    def swaps(cls, d: int, *pairs: tuple[int, int]) -> "CoordPermutation":
        """Composition of transpositions applied left to right."""
        pos = list(range(1, d + 1))
        for a, b in pairs:
            # coordinate currently sitting at a goes to b and vice versa
            for j in range(d):
                if pos[j] == a:
                    pos[j] = b
                elif pos[j] == b:
                    pos[j] = a
        return cls(tuple(pos))

    def inverse(self) -> "CoordPermutation":
        inv = [0] * self.d
        for j, target in enumerate(self.mapping, start=1):
            inv[target - 1] = j
        return CoordPermutation(tuple(inv))

    def apply(self, bits: int) -> int:
        out = 0
        for j, target in enumerate(self.mapping):
            if bits >> j & 1:
                out |= 1 << (target - 1)
        return out


# SnakePath lives in snake.py; both transforms treat it structurally to avoid a cycle.
Transformable = Union[WordSet, "SnakePath"]  # noqa: F821


def _mask_bits(mask: Union[Vertex, str, int], d: int) -> int:
    if isinstance(mask, int):
        if mask < 0 or mask >> d:
            raise DimensionError(f"mask {mask:#x} does not fit in dimension {d}")
        return mask
    mask = as_vertex(mask)
    if mask.d != d:
        raise DimensionError(f"dimension mismatch: {d} vs {mask.d}")
    return mask.bits


def xor_translate(s, mask):
    """XOR every word of a WordSet or SnakePath with ``mask``."""
    if isinstance(s, WordSet):
        m = _mask_bits(mask, s.dim)
        return WordSet(s.dim, frozenset(x ^ m for x in s.elements))
    m = _mask_bits(mask, s.d)
    return s.with_sites(tuple(x ^ m for x in s.sites))


def permute_coords(s, perm: Union[CoordPermutation, Sequence[int]]):
    """Move coordinate ``j`` of every word to ``perm.mapping[j-1]``."""
    if not isinstance(perm, CoordPermutation):
        perm = CoordPermutation(tuple(perm))
    d = s.dim if isinstance(s, WordSet) else s.d
    if perm.d != d:
        raise DimensionError(f"permutation acts on {perm.d} coordinates, set has {d}")
    if isinstance(s, WordSet):
        return WordSet(s.dim, frozenset(perm.apply(x) for x in s.elements))
    return s.with_sites(tuple(perm.apply(x) for x in s.sites))


def neighborhood(words: Iterable[int], d: int) -> set[int]:
    """Open neighbourhood: all vertices at distance exactly 1 from some word."""
    out: set[int] = set()
    for x in words:
        for i in range(d):
            out.add(x ^ (1 << i))
    return out
