"""Synchronous r-neighbour bootstrap percolation on {0,1}^d.

State is a dense boolean table over all 2^d vertices. Each round only the
uninfected neighbours of the sites infected in the previous round can change,
so those are the only candidates scanned; their infected-neighbour counts are
read back from the table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .cube import DimensionError, WordSet, check_dim, vertex_to_str

UNSET = -1
_CHUNK = 1 << 16


def _index_array(initial, d: int) -> np.ndarray:
    if isinstance(initial, WordSet):
        if initial.dim != d:
            raise DimensionError(f"initial set has dimension {initial.dim}, engine has {d}")
        return np.fromiter(initial.elements, dtype=np.int64, count=len(initial))
    if isinstance(initial, np.ndarray) and initial.dtype == bool:
        if initial.shape != (1 << d,):
            raise DimensionError(f"boolean table of shape {initial.shape} for dimension {d}")
        return np.flatnonzero(initial).astype(np.int64)
    idx = np.asarray(list(initial) if not isinstance(initial, np.ndarray) else initial, dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= 1 << d):
        raise DimensionError(f"vertex index out of range for dimension {d}")
    return idx


class InfectionState:
    """Evolving infected set with per-vertex infection times.

    ``time_of[v]`` is the round in which ``v`` became infected, 0 for the
    initial sites and ``UNSET`` (-1) for sites still healthy.
    """

    def __init__(self, d: int, r: int, initial: WordSet | Iterable[int] | np.ndarray,
                 *, allow_large: bool = False):
        check_dim(d, table=True, allow_large=allow_large)
        if d < 1:
            raise DimensionError("engine needs d >= 1")
        if r < 1:
            raise ValueError(f"threshold r must be >= 1, got {r}")
        self.d = d
        self.r = r
        n = 1 << d
        idx = np.unique(_index_array(initial, d))
        self.infected = np.zeros(n, dtype=bool)
        self.infected[idx] = True
        self.time_of = np.full(n, UNSET, dtype=np.int32)
        self.time_of[idx] = 0
        self.clock = 0
        self._frontier = idx
        self._masks = np.array([1 << i for i in range(d)], dtype=np.int64)

    @property
    def infected_count(self) -> int:
        return int(np.count_nonzero(self.infected))

    def infected_set(self) -> WordSet:
        return WordSet(self.d, frozenset(np.flatnonzero(self.infected).tolist()))

    def advance(self) -> np.ndarray:
        """Play one round; return the indices infected in it."""
        frontier = self._frontier
        if frontier.size == 0:
            return frontier
        masks = self._masks
        parts = []
        for lo in range(0, frontier.size, _CHUNK):
            cand = (frontier[lo:lo + _CHUNK, None] ^ masks).ravel()
            parts.append(cand[~self.infected[cand]])
        cand = np.unique(np.concatenate(parts))
        new = []
        for lo in range(0, cand.size, _CHUNK):
            chunk = cand[lo:lo + _CHUNK]
            counts = self.infected[chunk[:, None] ^ masks].sum(axis=1)
            new.append(chunk[counts >= self.r])
        fresh = np.concatenate(new) if new else cand[:0]
        if fresh.size:
            self.clock += 1
            self.infected[fresh] = True
            self.time_of[fresh] = self.clock
        self._frontier = fresh
        return fresh

    def step(self) -> WordSet:
        """Play one round; return the sites infected in it (empty at a fixpoint)."""
        return WordSet(self.d, frozenset(self.advance().tolist()))

    def rounds(self) -> Iterator[tuple[int, np.ndarray]]:
        """Yield ``(round, newly infected indices)`` until the fixpoint."""
        while True:
            fresh = self.advance()
            if not fresh.size:
                return
            yield self.clock, fresh

    def run(self) -> "Outcome":
        for _ in self.rounds():
            pass
        percolated = bool(self.infected.all())
        return Outcome(
            d=self.d,
            r=self.r,
            percolated=percolated,
            total_time=self.clock,
            times=self.time_of.copy(),
        )


@dataclass
class Outcome:
    """Result of running the dynamics to a fixpoint.

    ``total_time`` is the round of the last infection. It is also filled in
    for runs that do not percolate, but only percolating runs count as
    witnesses for the maximal time.
    """

    d: int
    r: int
    percolated: bool
    total_time: int
    times: np.ndarray

    @property
    def infected(self) -> np.ndarray:
        return self.times != UNSET

    @property
    def infected_count(self) -> int:
        return int(np.count_nonzero(self.infected))

    @property
    def final_infected(self) -> WordSet:
        return WordSet(self.d, frozenset(np.flatnonzero(self.infected).tolist()))

    def time_of(self, v: int) -> int | None:
        t = int(self.times[v])
        return None if t == UNSET else t

    def to_report(self, include_times: bool = False) -> dict:
        report = {
            "d": self.d,
            "r": self.r,
            "percolated": self.percolated,
            "total_time": self.total_time,
            "infected_count": self.infected_count,
        }
        if include_times:
            report["times"] = {
                vertex_to_str(v, self.d): int(self.times[v])
                for v in np.flatnonzero(self.infected).tolist()
            }
        return report


def simulate(d: int, r: int, initial, *, allow_large: bool = False) -> Outcome:
    return InfectionState(d, r, initial, allow_large=allow_large).run()


def is_stable(d: int, r: int, initial, *, allow_large: bool = False) -> bool:
    """True iff one round from ``initial`` infects nothing."""
    return InfectionState(d, r, initial, allow_large=allow_large).advance().size == 0


def early_neighbor_counts(outcome: Outcome) -> np.ndarray:
    """Per vertex, the number of neighbours infected at least two rounds earlier."""
    t = outcome.times.astype(np.int64)
    idx = np.arange(t.size, dtype=np.int64)
    counts = np.zeros(t.size, dtype=np.int64)
    for i in range(outcome.d):
        tu = t[idx ^ (1 << i)]
        counts += (tu != UNSET) & (t != UNSET) & (t - tu > 1)
    return counts


def early_neighbor_violations(outcome: Outcome) -> np.ndarray:
    """Non-initial sites having r or more neighbours infected two or more rounds earlier.

    Such a site would have been infected a round sooner, so this is always
    empty for a correct run.
    """
    counts = early_neighbor_counts(outcome)
    return np.flatnonzero((outcome.times > 0) & (counts > outcome.r - 1))
