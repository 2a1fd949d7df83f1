"""Slow-percolation witness for r = 3 built around a long 3-snake.

For odd ``d >= 15`` a 3-snake ``S`` of dimension ``d - 9`` is placed in the
subcube whose first nine coordinates are zero. Two extra infected neighbours
per snake site make the snake advance one site per round, and a gadget near
the end of the snake (``J1``, ``J2``, ``J3``) percolates the whole cube once
the snake reaches it. The percolation time is therefore at least the snake
length.

Every part of the initial set is written as a subcube expression and built by
:mod:`hyperboot.dsl`, with the snake sites bound as named sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import dsl
from .cube import CoordPermutation, DimensionError, WordSet, neighborhood, permute_coords, vertex_to_str
from .engine import InfectionState, Outcome
from .snake import SnakePath, normalize_end_to_zero, search_longest, verify

PREFIX = 9
"""Number of leading zero coordinates in front of the snake."""

SEED_EXPR = "[0]^9 S0"
I0_EXPR = (
    "[0]^3 ~([0][1]) [0]^4 S1CLASS"
    " | [0]^5 ~([0][1]) [0]^2 S2CLASS"
    " | [0]^7 ~([0][1]) S3CLASS"
)
J1_EXPR = "[1,1][*]^(d'+1)"
J2_EXPR = "~([0][1]) [1] [0]^d'"
J3_EXPR = "~([0][1]) [0] ~([1,1][0,0]^((d'-2)/2))"
END_EXPR = "[0]^9 S_T1"

# S_{T-3}, S_{T-2}, S_{T-1} of the modified snake: [1,0,1,0,1]0.., [1,0,1]0.., [1]0..
_TAIL = (0b10101, 0b101, 0b1)


class ConstructionError(ValueError):
    pass


# modified snake --------------------------------------------------------------


def build_modified_snake(s_prime: SnakePath) -> SnakePath:
    """Turn a 3-snake of dimension m into one of dimension m+1 with a fixed tail.

    The input is translated to end at the origin, coordinates are permuted so
    that its last two sites before the end are ``{2}`` and ``{2, 4}``, a
    leading coordinate equal to 1 is prepended to every site, and the origin
    is appended as the new end.
    """
    if s_prime.k != 3:
        raise ConstructionError(f"expected a 3-snake, got spread {s_prime.k}")
    bad = verify(s_prime)
    if bad is not None:
        raise ConstructionError(f"input is not a 3-snake: {bad}")
    if s_prime.length < 2:
        raise ConstructionError("input snake must have length >= 2")
    m = s_prime.d
    if m < 5:
        raise ConstructionError(f"input dimension must be >= 5, got {m}")

    s = normalize_end_to_zero(s_prime)
    last1, last2 = s.sites[-2], s.sites[-3]
    a = last1.bit_length()  # 1-based coordinate of the weight-one site
    b = (last2 ^ last1).bit_length()
    # after moving a to 2, coordinate b sits at a if it was 2
    b_moved = a if b == 2 else b
    s = permute_coords(s, CoordPermutation.swaps(m, (a, 2), (b_moved, 4)))

    sites = tuple((x << 1) | 1 for x in s.sites) + (0,)
    return SnakePath(3, m + 1, sites)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


def modified_snake_conditions(S: SnakePath, input_length: int | None = None,
                              reference: int | None = None) -> list[Check]:
    """Check the six tail conditions of a modified snake.

    The sixth condition is the length: ``T >= reference`` when a reference
    value (the maximal length one dimension lower) is supplied, otherwise
    ``T == input_length + 1`` relative to the snake it was built from.
    """
    T = S.length
    checks = [Check("3-snake", S.k == 3 and verify(S, 3) is None, str(verify(S, 3) or ""))]
    if T < 3:
        return checks + [Check("length >= 3", False, f"T = {T}")]
    for n, (offset, want) in enumerate(zip((3, 2, 1), _TAIL), start=1):
        got = S.sites[T - offset]
        checks.append(Check(
            f"condition {n}: S_(T-{offset})", got == want,
            f"{vertex_to_str(got, S.d)} vs {vertex_to_str(want, S.d)}",
        ))
    checks.append(Check("condition 4: S_T is the origin", S.sites[T] == 0, vertex_to_str(S.sites[T], S.d)))
    light = [t for t in range(T - 3) if S.sites[t].bit_count() <= 3]
    checks.append(Check("condition 5: weight > 3 before T-3", not light, f"light sites at {light}"))
    if reference is not None:
        checks.append(Check("condition 6: T >= reference", T >= reference, f"T = {T}, reference = {reference}"))
    elif input_length is not None:
        checks.append(Check("condition 6: T = input length + 1", T == input_length + 1,
                            f"T = {T}, input length = {input_length}"))
    return checks


# initial configuration -------------------------------------------------------


@dataclass(frozen=True)
class ConstructionParams:
    d: int

    def __post_init__(self) -> None:
        if self.d % 2 == 0:
            raise ConstructionError(f"d must be odd, got {self.d}")
        if self.d < 15:
            raise ConstructionError(f"d must be >= 15, got {self.d}")

    @property
    def d_prime(self) -> int:
        return self.d - 3

    @property
    def d_dprime(self) -> int:
        return self.d - PREFIX


@dataclass(frozen=True)
class ConstructionParts:
    params: ConstructionParams
    snake: SnakePath
    seed: int
    I0: WordSet
    J1: WordSet
    J2: WordSet
    J3: WordSet
    residue_classes: tuple[WordSet, WordSet, WordSet]
    env: dsl.Env = field(repr=False, compare=False, default_factory=dsl.Env)

    @property
    def d(self) -> int:
        return self.params.d

    @property
    def T(self) -> int:
        return self.snake.length

    def snake_site(self, t: int) -> int:
        """The site ``[0]^9 S_t`` of the full cube."""
        return self.snake.sites[t] << PREFIX

    def initial_set(self) -> WordSet:
        return WordSet(self.d, self.I0.elements | self.J1.elements | self.J2.elements
                       | self.J3.elements | {self.seed})

    def claim2_set(self) -> WordSet:
        return self.J1 | self.J2 | self.J3 | dsl.evaluate(END_EXPR, self.env)

    def sizes(self) -> dict[str, int]:
        return {"seed": 1, "I0": len(self.I0), "J1": len(self.J1), "J2": len(self.J2),
                "J3": len(self.J3), "I": len(self.initial_set())}


def residue_class(S: SnakePath, i: int) -> WordSet:
    """``{S_(T-i-3j) : j >= 0, T-i-3j >= 0}``."""
    return WordSet(S.d, frozenset(S.sites[t] for t in range(S.length - i, -1, -3)))


def build_initial_config(S: SnakePath, params: ConstructionParams) -> ConstructionParts:
    if S.d != params.d_dprime:
        raise ConstructionError(f"snake dimension {S.d} != d - 9 = {params.d_dprime}")
    failed = [c for c in modified_snake_conditions(S) if not c.passed]
    if failed:
        raise ConstructionError("snake fails: " + "; ".join(f"{c.name} ({c.detail})" for c in failed))

    T = S.length
    classes = tuple(residue_class(S, i) for i in (1, 2, 3))
    env = dsl.Env(
        ints={"d": params.d, "d'": params.d_prime, "d''": params.d_dprime, "T": T},
        sets={
            "S0": WordSet(S.d, {S.sites[0]}),
            "S_T1": WordSet(S.d, {S.sites[T - 1]}),
            "S1CLASS": classes[0],
            "S2CLASS": classes[1],
            "S3CLASS": classes[2],
        },
    )
    (seed,) = dsl.evaluate(SEED_EXPR, env).elements
    return ConstructionParts(
        params=params,
        snake=S,
        seed=seed,
        I0=dsl.evaluate(I0_EXPR, env),
        J1=dsl.evaluate(J1_EXPR, env),
        J2=dsl.evaluate(J2_EXPR, env),
        J3=dsl.evaluate(J3_EXPR, env),
        residue_classes=classes,
        env=env,
    )


# structural audit ------------------------------------------------------------


@dataclass
class AuditEntry:
    name: str
    passed: bool
    witness: tuple[str, ...] = ()
    detail: str = ""


@dataclass
class StructureReport:
    entries: list[AuditEntry]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def to_dict(self) -> list[dict]:
        return [{"name": e.name, "passed": e.passed, "witness": list(e.witness), "detail": e.detail}
                for e in self.entries]


def _common_neighbor(a_set, b_set, d: int) -> tuple[int, int, int] | None:
    owner = {}
    for a in a_set:
        for i in range(d):
            owner.setdefault(a ^ (1 << i), a)
    for b in sorted(b_set):
        for i in range(d):
            w = b ^ (1 << i)
            if w in owner:
                return owner[w], b, w
    return None


def _times_touching(parts: ConstructionParts, target: WordSet) -> list[int]:
    n_target = neighborhood(target, parts.d)
    out = []
    for t in range(parts.T + 1):
        if neighborhood([parts.snake_site(t)], parts.d) & n_target:
            out.append(t)
    return out


def audit_structure(parts: ConstructionParts) -> StructureReport:
    d, T = parts.d, parts.T
    fmt = lambda x: vertex_to_str(x, d)  # noqa: E731
    entries = []

    witness = ()
    for (na, A), (nb, B) in (((("I0", parts.I0), ("J2", parts.J2))),
                             ((("I0", parts.I0), ("J3", parts.J3))),
                             ((("J2", parts.J2), ("J3", parts.J3)))):
        hit = _common_neighbor(A, B, d)
        if hit:
            witness = (f"{na}:{fmt(hit[0])}", f"{nb}:{fmt(hit[1])}", f"common:{fmt(hit[2])}")
            break
    entries.append(AuditEntry("I0, J2, J3 pairwise share no neighbours", not witness, witness))

    witness = ()
    j3 = sorted(parts.J3)
    for x in range(len(j3)):
        for y in range(x + 1, len(j3)):
            u, v = j3[x], j3[y]
            if (u ^ v).bit_count() <= 2 and not (u ^ v == 0b11 and {u & 0b111, v & 0b111} == {1, 2}):
                witness = (fmt(u), fmt(v))
                break
        if witness:
            break
    entries.append(AuditEntry("close pairs in J3 are ([1,0,0]x, [0,1,0]x)", not witness, witness))

    witness = ()
    i0 = sorted(parts.I0)
    for u in i0:
        close = [v for v in i0 if v != u and (u ^ v).bit_count() <= 2]
        if len(close) != 1:
            witness = (fmt(u),) + tuple(fmt(v) for v in close)
            break
    entries.append(AuditEntry("each I0 site has exactly one other I0 site within distance 2",
                              not witness, witness))

    for name, target, want in (("J3", parts.J3, T - 1), ("J2", parts.J2, T)):
        ts = _times_touching(parts, target)
        entries.append(AuditEntry(
            f"snake sites sharing neighbours with {name}: only t = {'T-1' if want == T - 1 else 'T'}",
            ts == [want], tuple(fmt(parts.snake_site(t)) for t in ts if t != want),
            f"times {ts}",
        ))

    seed = parts.seed
    named = [("I0", parts.I0), ("J1", parts.J1), ("J2", parts.J2), ("J3", parts.J3)]
    witness = next((("seed", n) for n, part in named if seed in part), ())
    for n1 in range(len(named)):
        for n2 in range(n1 + 1, len(named)):
            common = named[n1][1].elements & named[n2][1].elements
            if common and not witness:
                witness = (named[n1][0], named[n2][0], fmt(min(common)))
    entries.append(AuditEntry("seed and parts pairwise disjoint", not witness, witness))

    want = {"J1": 2 ** (d - 2), "J2": 2, "J3": d - 3, "I0": 2 * T}
    got = {"J1": len(parts.J1), "J2": len(parts.J2), "J3": len(parts.J3), "I0": len(parts.I0)}
    entries.append(AuditEntry("part sizes", got == want, (), f"got {got}, expected {want}"))

    touching_end = neighborhood([parts.snake_site(T)], d) & parts.I0.elements
    entries.append(AuditEntry("no I0 site neighbours the snake end", not touching_end,
                              tuple(fmt(x) for x in sorted(touching_end))))
    return StructureReport(entries)


# claims ----------------------------------------------------------------------


@dataclass
class Claim1Result:
    passed: bool
    rounds_checked: int
    failed_round: int | None = None
    missing: tuple[int, ...] = ()
    parasites: tuple[int, ...] = ()

    def to_dict(self, d: int) -> dict:
        return {
            "passed": self.passed,
            "rounds_checked": self.rounds_checked,
            "failed_round": self.failed_round,
            "missing": [vertex_to_str(x, d) for x in self.missing],
            "parasites": [vertex_to_str(x, d) for x in self.parasites],
        }


def verify_claim1(parts: ConstructionParts, initial: WordSet | None = None) -> Claim1Result:
    """Check that rounds 0..T-1 infect exactly the next snake site each.

    At round t the infected set must equal the initial set plus
    ``[0]^9 S_t'`` for all ``t' <= t``; full sets are compared every round.
    """
    initial = parts.initial_set() if initial is None else initial
    state = InfectionState(parts.d, 3, initial)
    expected = state.infected.copy()
    for t in range(parts.T):
        if t > 0:
            state.advance()
            expected[parts.snake_site(t)] = True
        if not np.array_equal(state.infected, expected):
            missing = np.flatnonzero(expected & ~state.infected)
            parasites = np.flatnonzero(state.infected & ~expected)
            return Claim1Result(False, t, t, tuple(missing.tolist()), tuple(parasites.tolist()))
    return Claim1Result(True, parts.T)


def verify_claim2(parts: ConstructionParts, initial: WordSet | None = None) -> Outcome:
    """Run the end gadget ``J1 | J2 | J3 | {[0]^9 S_(T-1)}`` on its own."""
    initial = parts.claim2_set() if initial is None else initial
    return InfectionState(parts.d, 3, initial).run()


# pipeline --------------------------------------------------------------------


@dataclass
class Witness:
    params: ConstructionParams
    input_snake: SnakePath
    snake: SnakePath
    parts: ConstructionParts
    conditions: list[Check]
    audit: StructureReport
    claim1: Claim1Result
    claim2: Outcome
    outcome: Outcome
    snake_exhaustive: bool = False

    @property
    def T(self) -> int:
        return self.snake.length

    @property
    def end_time(self) -> int | None:
        """Round in which the snake end ``[0]^9 S_T`` got infected."""
        return self.outcome.time_of(self.parts.snake_site(self.T))

    @property
    def certified(self) -> bool:
        return (all(c.passed for c in self.conditions) and self.audit.passed and self.claim1.passed
                and self.claim2.percolated and self.outcome.percolated
                and self.outcome.total_time >= self.T)

    def to_report(self) -> dict:
        return {
            "d": self.params.d,
            "T": self.T,
            "input_snake_length": self.input_snake.length,
            "snake_exhaustive": self.snake_exhaustive,
            "sizes": self.parts.sizes(),
            "snake_conditions": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                                 for c in self.conditions],
            "audit": self.audit.to_dict(),
            "claim1": self.claim1.to_dict(self.params.d),
            "claim2": {"percolated": self.claim2.percolated, "total_time": self.claim2.total_time},
            "percolated": self.outcome.percolated,
            "total_time": self.outcome.total_time,
            "snake_end_time": self.end_time,
            "certified": self.certified,
        }


def lower_bound_witness(d: int, snake: SnakePath | None = None, mode: str = "exhaustive",
                        node_limit: int | None = None, *, allow_large: bool = False) -> Witness:
    """Build, audit and run the witness for dimension ``d``.

    Without an explicit ``snake`` a 3-snake of dimension ``d - 10`` is found
    by :func:`hyperboot.snake.search_longest` in the given mode.
    """
    params = ConstructionParams(d)
    exhaustive = False
    if snake is None:
        res = search_longest(d - 10, 3, mode, node_limit, allow_large=allow_large)
        snake, exhaustive = res.snake, res.exhaustive
    if snake.d != d - 10:
        raise DimensionError(f"snake dimension {snake.d} != d - 10 = {d - 10}")
    S = build_modified_snake(snake)
    parts = build_initial_config(S, params)
    return Witness(
        params=params,
        input_snake=snake,
        snake=S,
        parts=parts,
        conditions=modified_snake_conditions(S, input_length=snake.length),
        audit=audit_structure(parts),
        claim1=verify_claim1(parts),
        claim2=verify_claim2(parts),
        outcome=InfectionState(d, 3, parts.initial_set()).run(),
        snake_exhaustive=exhaustive,
    )


# reductions ------------------------------------------------------------------


def double_config(A: WordSet) -> WordSet:
    """``[*]A``: both extensions of every word by a new first coordinate."""
    return WordSet(A.dim + 1, frozenset(w for a in A for w in (a << 1, (a << 1) | 1)))


def pad_for_r(cfg: WordSet, r: int) -> WordSet:
    """Embed ``cfg`` in the subcube with ``r - 3`` new trailing coordinates set to 1
    and infect everything outside that subcube."""
    if r < 3:
        raise ValueError(f"r must be >= 3, got {r}")
    extra = r - 3
    if extra == 0:
        return cfg
    m = cfg.dim
    ones = ((1 << extra) - 1) << m
    inside = {x | ones for x in cfg}
    outside = {x for x in range(1 << (m + extra)) if x & ones != ones}
    return WordSet(m + extra, frozenset(inside | outside))
