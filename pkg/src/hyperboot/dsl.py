"""Subcube pattern expressions.

Surface syntax::

    expr   := concat ('|' concat)*
    concat := factor+
    factor := atom ('^' power)?
    atom   := '[' sym (',' sym)* ']' | '~(' concat ')' | NAME | '(' expr ')'
    sym    := '0' | '1' | '*'
    power  := INT | NAME | '(' arith ')'
    arith  := integer arithmetic over INT, NAME, + - * / and parentheses

``~( ... )`` is the block permutation: the union over every ordering of its
top-level factors, each factor moved as a whole. Powers inside it expand into
repeated factors first, so ``~([1,1][0,0]^2)`` permutes three blocks.

Names may carry trailing primes (``d'``, ``d''``). In pattern position a name
refers to a bound word set, in a power it refers to a bound integer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .cube import DimensionError, WordSet

MAX_PERM_DISTINCT = 10

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*'*")
_INT = re.compile(r"\d+")


class DslSyntaxError(ValueError):
    def __init__(self, message: str, pos: int, text: str):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}: {text[:pos]}<HERE>{text[pos:]}")


class DslEvalError(ValueError):
    pass


# integer expressions --------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "IntExpr"
    right: "IntExpr"


IntExpr = Num | Var | BinOp


# pattern expressions --------------------------------------------------------


@dataclass(frozen=True)
class Block:
    symbols: tuple[str, ...]


@dataclass(frozen=True)
class Concat:
    parts: tuple["SubcubeExpr", ...]


@dataclass(frozen=True)
class Power:
    base: "SubcubeExpr"
    exponent: IntExpr


@dataclass(frozen=True)
class Perm:
    factors: tuple["SubcubeExpr", ...]


@dataclass(frozen=True)
class Union:
    parts: tuple["SubcubeExpr", ...]


@dataclass(frozen=True)
class NameRef:
    name: str


SubcubeExpr = Block | Concat | Power | Perm | Union | NameRef


@dataclass
class Env:
    ints: dict[str, int] = field(default_factory=dict)
    sets: dict[str, WordSet] = field(default_factory=dict)

    @classmethod
    def from_bindings(cls, bindings: Mapping[str, int | WordSet]) -> "Env":
        env = cls()
        for name, value in bindings.items():
            if isinstance(value, WordSet):
                env.sets[name] = value
            elif isinstance(value, int):
                env.ints[name] = value
            else:
                raise TypeError(f"binding {name!r} must be int or WordSet, got {type(value).__name__}")
        return env


# parser ----------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None) -> DslSyntaxError:
        return DslSyntaxError(message, self.pos if pos is None else pos, self.text)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise self.error(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def name(self) -> str | None:
        self.skip()
        m = _NAME.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return m.group()

    def parse(self) -> SubcubeExpr:
        e = self.expr()
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return e

    def expr(self) -> SubcubeExpr:
        parts = [self.concat()]
        while self.peek() == "|":
            self.pos += 1
            parts.append(self.concat())
        return parts[0] if len(parts) == 1 else Union(tuple(parts))

    def _factors(self) -> list[SubcubeExpr]:
        factors = []
        while self.peek() in ("[", "~", "(") or _NAME.match(self.text, self.pos):
            factors.append(self.factor())
        if not factors:
            found = self.peek() or "end of input"
            raise self.error(f"expected a pattern, found {found!r}")
        return factors

    def concat(self) -> SubcubeExpr:
        factors = self._factors()
        return factors[0] if len(factors) == 1 else Concat(tuple(factors))

    def factor(self) -> SubcubeExpr:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            base = Power(base, self.int_atom())
        return base

    def atom(self) -> SubcubeExpr:
        ch = self.peek()
        if ch == "[":
            return self.block()
        if ch == "~":
            self.pos += 1
            self.expect("(")
            factors = self._factors()
            self.expect(")")
            return Perm(tuple(factors))
        if ch == "(":
            self.pos += 1
            e = self.expr()
            self.expect(")")
            return e
        n = self.name()
        if n is None:
            raise self.error(f"unexpected {ch!r}")
        return NameRef(n)

    def block(self) -> Block:
        self.expect("[")
        syms = []
        while True:
            ch = self.peek()
            if ch not in ("0", "1", "*"):
                raise self.error(f"symbol {ch or 'end of input'!r} is not one of 0, 1, *")
            syms.append(ch)
            self.pos += 1
            nxt = self.peek()
            if nxt == ",":
                self.pos += 1
                continue
            if nxt == "]":
                self.pos += 1
                return Block(tuple(syms))
            raise self.error(f"expected ',' or ']', found {nxt or 'end of input'!r}")

    def int_atom(self) -> IntExpr:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            e = self.arith()
            self.expect(")")
            return e
        m = _INT.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return Num(int(m.group()))
        n = self.name()
        if n is None:
            raise self.error(f"expected an integer, a name or '(', found {ch or 'end of input'!r}")
        return Var(n)

    def arith(self) -> IntExpr:
        left = self.term()
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.pos += 1
            left = BinOp(op, left, self.term())
        return left

    def term(self) -> IntExpr:
        left = self.int_atom()
        while self.peek() in ("*", "/"):
            op = self.peek()
            self.pos += 1
            left = BinOp(op, left, self.int_atom())
        return left


def parse(text: str) -> SubcubeExpr:
    return _Parser(text).parse()


# evaluator -------------------------------------------------------------------


def eval_int(e: IntExpr, env: Env) -> int:
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        if e.name not in env.ints:
            raise DslEvalError(f"unbound integer {e.name!r}")
        return env.ints[e.name]
    a, b = eval_int(e.left, env), eval_int(e.right, env)
    if e.op == "+":
        return a + b
    if e.op == "-":
        return a - b
    if e.op == "*":
        return a * b
    if b == 0 or a % b:
        raise DslEvalError(f"inexact division {a}/{b}")
    return a // b


def _exponent(e: Power, env: Env) -> int:
    k = eval_int(e.exponent, env)
    if k < 0:
        raise DslEvalError(f"negative exponent {k}")
    return k


_EMPTY_WORD = WordSet(0, frozenset({0}))


def _block(b: Block) -> WordSet:
    words = [0]
    for i, s in enumerate(b.symbols):
        if s == "1":
            words = [w | (1 << i) for w in words]
        elif s == "*":
            words = words + [w | (1 << i) for w in words]
    return WordSet(len(b.symbols), frozenset(words))


def _concat_all(sets: list[WordSet]) -> WordSet:
    out = _EMPTY_WORD
    for s in sets:
        out = out.concat(s)
    return out


def _multiset_orderings(counts: list[int]) -> Iterator[list[int]]:
    total = sum(counts)
    seq: list[int] = []

    def rec() -> Iterator[list[int]]:
        if len(seq) == total:
            yield list(seq)
            return
        for i, c in enumerate(counts):
            if c:
                counts[i] -= 1
                seq.append(i)
                yield from rec()
                seq.pop()
                counts[i] += 1

    return rec()


def _perm(p: Perm, env: Env) -> WordSet:
    factors: list[WordSet] = []
    for f in p.factors:
        if isinstance(f, Power):
            factors.extend([evaluate(f.base, env)] * _exponent(f, env))
        else:
            factors.append(evaluate(f, env))
    distinct: list[WordSet] = []
    counts: list[int] = []
    for f in factors:
        for i, g in enumerate(distinct):
            if g == f:
                counts[i] += 1
                break
        else:
            distinct.append(f)
            counts.append(1)
    if len(distinct) > MAX_PERM_DISTINCT:
        raise DslEvalError(
            f"permutation of {len(distinct)} distinct factors exceeds the cap {MAX_PERM_DISTINCT}"
        )
    dim = sum(f.dim for f in factors)
    words: set[int] = set()
    for order in _multiset_orderings(counts):
        words |= _concat_all([distinct[i] for i in order]).elements
    return WordSet(dim, frozenset(words))


def evaluate(e: SubcubeExpr | str, env: Env | None = None, **bindings) -> WordSet:
    """Evaluate an expression (or its text) to an explicit word set."""
    if env is None:
        env = Env.from_bindings(bindings)
    elif bindings:
        extra = Env.from_bindings(bindings)
        env = Env({**env.ints, **extra.ints}, {**env.sets, **extra.sets})
    if isinstance(e, str):
        e = parse(e)
    if isinstance(e, Block):
        return _block(e)
    if isinstance(e, Concat):
        return _concat_all([evaluate(p, env) for p in e.parts])
    if isinstance(e, Power):
        base = evaluate(e.base, env)
        return _concat_all([base] * _exponent(e, env))
    if isinstance(e, Perm):
        return _perm(e, env)
    if isinstance(e, Union):
        sets = [evaluate(p, env) for p in e.parts]
        dims = {s.dim for s in sets}
        if len(dims) != 1:
            raise DimensionError(f"union of sets with different dimensions {sorted(dims)}")
        return WordSet(dims.pop(), frozenset().union(*(s.elements for s in sets)))
    if isinstance(e, NameRef):
        if e.name not in env.sets:
            raise DslEvalError(f"unbound set {e.name!r}")
        return env.sets[e.name]
    raise TypeError(f"not an expression: {e!r}")
