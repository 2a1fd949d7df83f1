"""Property-based checks of the invariants across modules."""

from hypothesis import given, settings, strategies as st

from hyperboot.construction import double_config
from hyperboot.cube import CoordPermutation, WordSet, permute_coords, xor_translate
from hyperboot.dsl import evaluate
from hyperboot.engine import early_neighbor_violations, simulate
from hyperboot.extremal import bit_percolation_time
from hyperboot.io import format_vertex_set, parse_vertex_set
from hyperboot.snake import verify

from oracles import naive_run, pairwise_is_snake


@st.composite
def configs(draw, max_d=7):
    d = draw(st.integers(1, max_d))
    r = draw(st.integers(1, 4))
    elems = draw(st.sets(st.integers(0, (1 << d) - 1), max_size=1 << d))
    return d, r, WordSet(d, frozenset(elems))


@settings(max_examples=150, deadline=None)
@given(configs())
def test_engine_agrees_with_oracles(cfg):
    d, r, init = cfg
    out = simulate(d, r, init)
    perc, t, times = naive_run(d, r, set(init))
    assert (out.percolated, out.total_time) == (perc, t)
    assert bit_percolation_time(sum(1 << v for v in init), d, r) == (perc, t)
    assert all(out.time_of(v) == tv for v, tv in times.items())


@settings(max_examples=100, deadline=None)
@given(configs(), st.data())
def test_dynamics_commute_with_automorphisms(cfg, data):
    d, r, init = cfg
    mask = data.draw(st.integers(0, (1 << d) - 1))
    perm = CoordPermutation(tuple(data.draw(st.permutations(range(1, d + 1)))))
    base = simulate(d, r, init)
    for moved, f in ((simulate(d, r, xor_translate(init, mask)), lambda v: v ^ mask),
                     (simulate(d, r, permute_coords(init, perm)), perm.apply)):
        assert moved.total_time == base.total_time
        assert all(moved.times[f(v)] == base.times[v] for v in range(1 << d))


@settings(max_examples=100, deadline=None)
@given(configs(max_d=8))
def test_early_neighbour_bound(cfg):
    d, r, init = cfg
    out = simulate(d, r, init)
    if out.percolated:
        assert early_neighbor_violations(out).size == 0


@settings(max_examples=60, deadline=None)
@given(configs(max_d=6))
def test_doubling_keeps_times(cfg):
    d, r, init = cfg
    base = simulate(d, r, init)
    big = simulate(d + 1, r, double_config(init))
    assert big.percolated == base.percolated and big.total_time == base.total_time
    assert all(big.times[a << 1] == big.times[(a << 1) | 1] == base.times[a] for a in range(1 << d))


@given(configs())
def test_vertex_set_text_roundtrip(cfg):
    _, _, ws = cfg
    assert parse_vertex_set(format_vertex_set(ws), ws.dim) == ws


@given(st.lists(st.lists(st.sampled_from("01*"), min_size=1, max_size=3), min_size=1, max_size=4))
def test_concat_size_is_product(blocks):
    text = "".join("[" + ",".join(b) + "]" for b in blocks)
    n = 1
    for b in blocks:
        n *= 2 ** b.count("*")
    ws = evaluate(text)
    assert len(ws) == n and ws.dim == sum(map(len, blocks))


@settings(max_examples=200)
@given(st.integers(1, 5), st.integers(1, 4), st.data())
def test_verify_matches_pairwise_definition(d, k, data):
    n = data.draw(st.integers(1, 8))
    start = data.draw(st.integers(0, (1 << d) - 1))
    sites = [start]
    for _ in range(n - 1):
        sites.append(sites[-1] ^ (1 << data.draw(st.integers(0, d - 1))))
    texts = ["".join(str(x >> i & 1) for i in range(d)) for x in sites]
    assert (verify(texts, k) is None) == pairwise_is_snake(sites, k)
