import csv
from fractions import Fraction

import pytest

from hyperboot.cube import DimensionError, WordSet
from hyperboot.engine import simulate
from hyperboot.extremal import (
    brute_force_max_time,
    check_upper_bound,
    mc_percolation_time,
    upper_bound,
    write_histogram_csv,
)

from oracles import naive_run


def _oracle_max(d, r):
    """Maximum over all subsets using the plain simulator."""
    best, witness = -1, None
    for code in range(1 << (1 << d)):
        init = {v for v in range(1 << d) if code >> v & 1}
        perc, t, _ = naive_run(d, r, init)
        if perc and t > best:
            best, witness = t, code
    return best, witness


@pytest.mark.parametrize("d, r", [(1, 1), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (3, 4)])
def test_brute_force_matches_plain_simulator(d, r):
    res = brute_force_max_time(d, r)
    best, code = _oracle_max(d, r)
    assert res.max_time == best
    assert sum(1 << v for v in res.witness) == code


def test_brute_force_examples():
    assert brute_force_max_time(2, 2).max_time == 1
    assert brute_force_max_time(3, 2).max_time == 3
    res = brute_force_max_time(2, 3)
    assert res.max_time == 0 and res.witness == WordSet.full(2)
    assert brute_force_max_time(2, 2).witness.texts() == ["01", "10"]


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_r1_max_time_is_d(d):
    assert brute_force_max_time(d, 1).max_time == d


def test_witness_reruns():
    for d, r in ((3, 2), (3, 3), (4, 3)):
        res = brute_force_max_time(d, r)
        out = simulate(d, r, res.witness)
        assert out.percolated and out.total_time == res.max_time
        assert res.exhaustive


def test_threads_do_not_change_result():
    a = brute_force_max_time(4, 3)
    b = brute_force_max_time(4, 3, threads=3)
    assert a == b


def test_brute_force_guard():
    with pytest.raises(DimensionError):
        brute_force_max_time(5, 2)


def test_upper_bound_examples():
    assert upper_bound(15, 3) == Fraction(14 * 32768, 15)
    assert check_upper_bound(15, 3, 30583)
    assert not check_upper_bound(15, 3, 30584)
    assert check_upper_bound(3, 3, 8)
    with pytest.raises(ValueError):
        check_upper_bound(2, 3, 0)
    with pytest.raises(ValueError):
        check_upper_bound(5, 2, 0)


def test_exhaustive_values_under_bound():
    for d, r in ((3, 3), (4, 3), (4, 4)):
        assert check_upper_bound(d, r, brute_force_max_time(d, r).max_time)


def test_mc_trivial_probabilities():
    full = mc_percolation_time(6, 3, 1.0, 10, seed=1)
    assert full.percolated_count == 10 and full.histogram == {0: 10}
    empty = mc_percolation_time(6, 1, 0.0, 10, seed=1)
    assert empty.percolated_count == 0 and empty.mean_time is None


def test_mc_deterministic_and_thread_independent():
    a = mc_percolation_time(10, 3, 0.5, 100, seed=42)
    b = mc_percolation_time(10, 3, 0.5, 100, seed=42)
    c = mc_percolation_time(10, 3, 0.5, 100, seed=42, threads=3)
    assert a == b == c
    assert sum(a.histogram.values()) == a.percolated_count <= a.samples


def test_mc_errors():
    with pytest.raises(ValueError):
        mc_percolation_time(4, 2, 1.5, 3)
    with pytest.raises(DimensionError):
        mc_percolation_time(29, 2, 0.5, 1)


def test_histogram_csv(tmp_path):
    stats = mc_percolation_time(8, 2, 0.3, 40, seed=5)
    path = tmp_path / "h.csv"
    write_histogram_csv(path, stats)
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["time", "count"]
    assert {int(t): int(c) for t, c in rows[1:]} == stats.histogram
