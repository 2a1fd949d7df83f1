"""k-snakes: hypercube paths whose far-apart sites stay far apart.

A k-snake is a path S_0, ..., S_T of distinct sites, consecutive sites
adjacent, such that ``distance(S_t, S_t') >= k`` whenever ``t' - t >= k``.
``T`` is the length. Spread 2 is the classical snake-in-the-box.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .cube import DimensionError, Vertex, as_vertex, check_dim, vertex_to_str

MAX_EXHAUSTIVE_DIM = 7


@dataclass(frozen=True)
class SnakePath:
    k: int
    d: int
    sites: tuple[int, ...]

    def __post_init__(self) -> None:
        check_dim(self.d)
        object.__setattr__(self, "sites", tuple(self.sites))

    @classmethod
    def from_strings(cls, texts: Iterable[str], k: int) -> "SnakePath":
        vs = [as_vertex(t) for t in texts]
        if not vs:
            raise ValueError("empty snake")
        dims = {v.d for v in vs}
        if len(dims) != 1:
            raise DimensionError(f"mixed dimensions {sorted(dims)}")
        return cls(k, dims.pop(), tuple(v.bits for v in vs))

    @property
    def length(self) -> int:
        return len(self.sites) - 1

    def texts(self) -> list[str]:
        return [vertex_to_str(x, self.d) for x in self.sites]

    def with_sites(self, sites: Sequence[int]) -> "SnakePath":
        return replace(self, sites=tuple(sites))


@dataclass(frozen=True)
class Violation:
    """First defect found by :func:`verify`. ``kind`` is adjacency, repeat or spread."""

    kind: str
    i: int
    j: int
    distance: int

    def __str__(self) -> str:
        if self.kind == "adjacency":
            return f"sites {self.i} and {self.j} are at distance {self.distance}, not 1"
        if self.kind == "repeat":
            return f"sites {self.i} and {self.j} coincide"
        return f"spread violated at pair ({self.i}, {self.j}): distance {self.distance}"


def _coerce(sites, k: int) -> tuple[list[int], int]:
    if isinstance(sites, SnakePath):
        return list(sites.sites), sites.d
    vs = [as_vertex(s) for s in sites]
    if not vs:
        raise ValueError("empty site sequence")
    dims = {v.d for v in vs}
    if len(dims) != 1:
        raise DimensionError(f"mixed dimensions {sorted(dims)}")
    return [v.bits for v in vs], dims.pop()


def verify(sites: SnakePath | Sequence[Vertex | str], k: int | None = None) -> Violation | None:
    """Return None for a valid k-snake, else the first violation.

    Scan order: adjacency of consecutive sites, then repeated sites, then
    spread pairs by increasing ``t`` and then ``t'``.
    """
    if k is None:
        if not isinstance(sites, SnakePath):
            raise ValueError("spread k is required for a bare site sequence")
        k = sites.k
    if k < 1:
        raise ValueError(f"spread must be >= 1, got {k}")
    xs, _ = _coerce(sites, k)
    if not xs:
        raise ValueError("empty site sequence")
    for t in range(len(xs) - 1):
        dist = (xs[t] ^ xs[t + 1]).bit_count()
        if dist != 1:
            return Violation("adjacency", t, t + 1, dist)
    first: dict[int, int] = {}
    for t, x in enumerate(xs):
        if x in first:
            return Violation("repeat", first[x], t, 0)
        first[x] = t
    for t in range(len(xs)):
        for u in range(t + k, len(xs)):
            dist = (xs[t] ^ xs[u]).bit_count()
            if dist < k:
                return Violation("spread", t, u, dist)
    return None


def check_local_isometry(p: SnakePath) -> tuple[int, int, int] | None:
    """Check ``distance(S_t, S_t') == |t - t'|`` for all ``|t - t'| <= k``.

    Returns None or a counterexample ``(t, t', distance)``. Any two sites at
    most k apart lie in a window of k steps whose ends are at distance k, so
    a valid snake passes as soon as its length reaches k.
    """
    if p.length < p.k:
        raise ValueError(f"local isometry needs length >= k (length {p.length}, k {p.k})")
    xs = p.sites
    for t in range(len(xs)):
        for u in range(t + 1, min(t + p.k, len(xs) - 1) + 1):
            dist = (xs[t] ^ xs[u]).bit_count()
            if dist != u - t:
                return (t, u, dist)
    return None


def normalize_end_to_zero(p: SnakePath) -> SnakePath:
    last = p.sites[-1]
    return p.with_sites(x ^ last for x in p.sites)


def reference_lower_bound(d: int) -> float:
    """``2^d / (d * log2(d)^2)``; the logarithm base is our convention."""
    if d < 3:
        raise ValueError("the reference bound is stated for d >= 3")
    return 2 ** d / (d * math.log2(d) ** 2)


# search ----------------------------------------------------------------------


def _ball(d: int, radius: int) -> list[int]:
    out = [0]
    for w in range(1, min(radius, d) + 1):
        for coords in combinations(range(d), w):
            out.append(sum(1 << c for c in coords))
    return out


class _Budget(Exception):
    pass


def _dfs(d: int, k: int, visit: Callable[[list[int], int], None], *,
         canonical: bool = True, node_limit: int | None = None) -> int:
    """Depth-first walk over every k-snake starting at the all-zero vertex.

    With ``canonical`` set, a coordinate may be flipped for the first time
    only if all lower coordinates were already used, which picks one
    representative per coordinate-permutation orbit. Children are visited in
    increasing numeric order of the new site. ``visit(path, used)`` is called
    on every snake reached. Returns the number of extension attempts; raises
    ``_Budget`` once ``node_limit`` attempts are exceeded.
    """
    n = 1 << d
    ball = _ball(d, k - 1)
    blocked = [0] * n
    on_path = bytearray(n)
    path = [0]
    on_path[0] = 1
    attempts = 0

    def activate(x: int, delta: int) -> None:
        for m in ball:
            blocked[x ^ m] += delta

    def rec(used_mask: int) -> None:
        nonlocal attempts
        used = used_mask.bit_count()
        visit(path, used)
        tip = path[-1]
        top = min(d, used + 1) if canonical else d
        cands = sorted((tip ^ (1 << c), c) for c in range(top))
        for v, c in cands:
            attempts += 1
            if node_limit is not None and attempts > node_limit:
                raise _Budget
            if on_path[v] or blocked[v]:
                continue
            path.append(v)
            on_path[v] = 1
            # sites with index <= len(path) - k constrain the next extension
            b = len(path) - k
            if b >= 0:
                activate(path[b], 1)
            rec(used_mask | (1 << c))
            if b >= 0:
                activate(path[b], -1)
            on_path[v] = 0
            path.pop()

    if k <= 1:
        activate(0, 1)
    rec(0)
    return attempts


@dataclass(frozen=True)
class SearchResult:
    snake: SnakePath
    exhaustive: bool
    attempts: int


def _guard(d: int, k: int, allow_large: bool) -> None:
    check_dim(d)
    if d < 1:
        raise DimensionError("snake search needs d >= 1")
    if k < 1:
        raise ValueError(f"spread must be >= 1, got {k}")
    if d > MAX_EXHAUSTIVE_DIM and not allow_large:
        raise DimensionError(
            f"exhaustive snake search is limited to d <= {MAX_EXHAUSTIVE_DIM} "
            "(pass allow_large=True to override)"
        )


def search_longest(d: int, k: int, mode: str = "exhaustive", node_limit: int | None = None,
                   *, allow_large: bool = False) -> SearchResult:
    """Longest k-snake from the all-zero vertex.

    ``mode="exhaustive"`` walks the whole canonical tree and the result is
    provably maximal. ``mode="budget"`` stops after ``node_limit`` extension
    attempts and returns the best snake seen. Among snakes of equal length the
    lexicographically smallest site sequence wins.
    """
    if mode == "exhaustive":
        _guard(d, k, allow_large)
        limit = None
    elif mode == "budget":
        if node_limit is None or node_limit < 0:
            raise ValueError("budget mode needs a nonnegative node_limit")
        check_dim(d)
        if d < 1 or k < 1:
            raise ValueError("snake search needs d >= 1 and k >= 1")
        limit = node_limit
    else:
        raise ValueError(f"unknown mode {mode!r}")

    best: list[int] = [0]

    def visit(path: list[int], used: int) -> None:
        if len(path) > len(best):
            best[:] = path

    complete = True
    try:
        attempts = _dfs(d, k, visit, node_limit=limit)
    except _Budget:
        attempts = limit
        complete = False
    return SearchResult(SnakePath(k, d, tuple(best)), mode == "exhaustive" and complete, attempts)


def enumerate_longest(d: int, k: int, *, canonical: bool = True,
                      allow_large: bool = False) -> list[SnakePath]:
    """All k-snakes of maximal length from the origin, in lexicographic order.

    With ``canonical`` only one representative per coordinate-permutation
    orbit is listed.
    """
    _guard(d, k, allow_large)
    found: list[tuple[int, ...]] = []
    best = [0]

    def visit(path: list[int], used: int) -> None:
        if len(path) > best[0]:
            best[0] = len(path)
            found.clear()
        if len(path) == best[0]:
            found.append(tuple(path))

    _dfs(d, k, visit, canonical=canonical)
    return [SnakePath(k, d, s) for s in found]


def count_snakes(d: int, k: int, *, canonical: bool, allow_large: bool = False) -> dict[int, int]:
    """Number of k-snakes from the origin, keyed by how many coordinates they use."""
    _guard(d, k, allow_large)
    counts: dict[int, int] = {}

    def visit(path: list[int], used: int) -> None:
        counts[used] = counts.get(used, 0) + 1

    _dfs(d, k, visit, canonical=canonical)
    return counts
