"""Maximal percolation time: exhaustive oracle, upper bound, Monte Carlo.

The exhaustive oracle packs the whole infected set of {0,1}^d into one
Python int (bit v = vertex v) and plays rounds with word-level shifts and a
bit-sliced threshold counter, which is much cheaper than the table engine
when it has to be run on every subset of a tiny cube.
"""

from __future__ import annotations

import csv
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .cube import DimensionError, WordSet, check_dim
from .engine import InfectionState

MAX_BRUTE_DIM = 4
RNG_NAME = "numpy.random.default_rng (PCG64), per-sample seed = seed XOR index"


# bit-parallel kernel ---------------------------------------------------------


def _low_masks(d: int) -> list[int]:
    """For each coordinate i, the positions v whose bit i is 0."""
    n = 1 << d
    out = []
    for i in range(d):
        s = 1 << i
        block = ((1 << s) - 1)  # s ones then s zeros, period 2s
        m = 0
        for start in range(0, n, 2 * s):
            m |= block << start
        out.append(m)
    return out


def bit_percolation_time(mask: int, d: int, r: int, low: list[int] | None = None) -> tuple[bool, int]:
    """Run the dynamics on a packed set; return ``(percolated, total_time)``."""
    low = _low_masks(d) if low is None else low
    full = (1 << (1 << d)) - 1
    t = 0
    while True:
        ge = [full] + [0] * r
        for i, lo in enumerate(low):
            s = 1 << i
            b = ((mask >> s) & lo) | ((mask & lo) << s)
            for j in range(r, 0, -1):
                ge[j] |= ge[j - 1] & b
        fresh = ge[r] & ~mask
        if not fresh:
            return mask == full, t
        mask |= fresh
        t += 1


# exhaustive maximum ----------------------------------------------------------


@dataclass
class MaxTimeResult:
    d: int
    r: int
    max_time: int
    witness: WordSet
    exhaustive: bool = True

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "r": self.r,
            "max_time": self.max_time,
            "witness": self.witness.texts(),
            "exhaustive": self.exhaustive,
        }


def _sweep(args: tuple[int, int, int, int]) -> tuple[int, int]:
    d, r, lo, hi = args
    low = _low_masks(d)
    best_t, best_code = -1, -1
    for code in range(lo, hi):
        ok, t = bit_percolation_time(code, d, r, low)
        if ok and t > best_t:
            best_t, best_code = t, code
    return best_t, best_code


def brute_force_max_time(d: int, r: int, *, allow_large: bool = False, threads: int = 1) -> MaxTimeResult:
    """Maximum percolation time over every subset of {0,1}^d.

    Subsets are enumerated by their characteristic word (bit v set iff vertex
    v is infected); the witness is the smallest word attaining the maximum.
    """
    check_dim(d)
    if d < 1 or r < 1:
        raise ValueError("need d >= 1 and r >= 1")
    if d > MAX_BRUTE_DIM and not allow_large:
        raise DimensionError(f"brute force is limited to d <= {MAX_BRUTE_DIM} (pass allow_large=True)")
    total = 1 << (1 << d)
    parts = max(1, threads) * 4 if threads > 1 else 1
    bounds = [total * i // parts for i in range(parts + 1)]
    jobs = [(d, r, bounds[i], bounds[i + 1]) for i in range(parts)]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_sweep, jobs))
    else:
        results = [_sweep(j) for j in jobs]
    # chunks are in increasing code order, so strict > keeps the smallest witness
    best_t, best_code = -1, -1
    for t, code in results:
        if t > best_t:
            best_t, best_code = t, code
    witness = WordSet(d, frozenset(v for v in range(1 << d) if best_code >> v & 1))
    return MaxTimeResult(d, r, best_t, witness, True)


# upper bound -----------------------------------------------------------------


def upper_bound(d: int, r: int) -> Fraction:
    """``(4r + 2) 2^d / d`` as an exact rational."""
    if r < 3:
        raise ValueError(f"the bound needs r >= 3, got {r}")
    if d < r:
        raise ValueError(f"the bound needs d >= r, got d={d}, r={r}")
    return Fraction((4 * r + 2) * 2 ** d, d)


def check_upper_bound(d: int, r: int, t: int) -> bool:
    return t <= upper_bound(d, r)


# Monte Carlo -----------------------------------------------------------------


@dataclass
class McStats:
    d: int
    r: int
    p: float
    samples: int
    seed: int
    percolated_count: int = 0
    histogram: dict[int, int] = field(default_factory=dict)
    mean_time: float | None = None
    max_time: int | None = None
    generator: str = RNG_NAME

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "r": self.r,
            "p": self.p,
            "samples": self.samples,
            "seed": self.seed,
            "generator": self.generator,
            "percolated_count": self.percolated_count,
            "mean_time": self.mean_time,
            "max_time": self.max_time,
            "histogram": {str(t): c for t, c in sorted(self.histogram.items())},
        }


def sample_initial(d: int, p: float, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.random(1 << d) < p


def _mc_one(args: tuple[int, int, float, int, bool]) -> tuple[bool, int]:
    d, r, p, sample_seed, allow_large = args
    out = InfectionState(d, r, sample_initial(d, p, sample_seed), allow_large=allow_large).run()
    return out.percolated, out.total_time


def mc_percolation_time(d: int, r: int, p: float, samples: int, seed: int = 0, *,
                        threads: int = 1, allow_large: bool = False) -> McStats:
    """Percolation-time statistics for independent Bernoulli(p) initial sets.

    Sample ``i`` uses the generator seeded with ``seed ^ i``, so the result
    does not depend on ``threads``.
    """
    check_dim(d, table=True, allow_large=allow_large)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if samples < 0 or seed < 0:
        raise ValueError("samples and seed must be nonnegative")
    jobs = [(d, r, p, seed ^ i, allow_large) for i in range(samples)]
    if threads > 1 and samples > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_mc_one, jobs, chunksize=max(1, samples // (4 * threads))))
    else:
        results = [_mc_one(j) for j in jobs]
    times = [t for ok, t in results if ok]
    stats = McStats(d, r, p, samples, seed, percolated_count=len(times))
    for t in times:
        stats.histogram[t] = stats.histogram.get(t, 0) + 1
    if times:
        stats.mean_time = statistics.fmean(times)
        stats.max_time = max(times)
    return stats


def write_histogram_csv(path: str | Path, stats: McStats) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["time", "count"])
        for t, c in sorted(stats.histogram.items()):
            w.writerow([t, c])
