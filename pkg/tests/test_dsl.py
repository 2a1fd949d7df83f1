import random

import pytest

from hyperboot.cube import DimensionError, WordSet
from hyperboot.dsl import (
    BinOp,
    Block,
    Concat,
    DslEvalError,
    DslSyntaxError,
    NameRef,
    Num,
    Perm,
    Power,
    Union,
    Var,
    evaluate,
    parse,
)

from oracles import block_words, perm_union_bruteforce


def test_parse_concat_with_power():
    assert parse("[1,0,1][*]^2[0]") == Concat((
        Block(("1", "0", "1")),
        Power(Block(("*",)), Num(2)),
        Block(("0",)),
    ))


def test_parse_perm():
    assert parse("~([0][1])") == Perm((Block(("0",)), Block(("1",))))


def test_parse_rejects_bad_symbol():
    with pytest.raises(DslSyntaxError) as exc:
        parse("[0,2]")
    assert exc.value.pos == 3


@pytest.mark.parametrize("text", ["", "[", "[0,]", "[0]^", "~[0]", "([0]", "[0] | ", "[0]^(d-)"])
def test_parse_errors(text):
    with pytest.raises(DslSyntaxError):
        parse(text)


def test_parse_compound_exponent_and_names():
    e = parse("[0,0]^((d'-2)/2) S0 | X")
    assert e == Union((
        Concat((Power(Block(("0", "0")), BinOp("/", BinOp("-", Var("d'"), Num(2)), Num(2))),
                NameRef("S0"))),
        NameRef("X"),
    ))


def test_whitespace_insignificant():
    assert parse(" [ 1 , 0 ] ^ 2 ~ ( [0] [1] ) ") == parse("[1,0]^2~([0][1])")


def test_worked_examples():
    assert evaluate("[1,0,1][0]^2").texts() == ["10100"]
    assert evaluate("[0]~([0]^2[1,0])[*]").texts() == [
        "000100", "000101", "001000", "001001", "010000", "010001",
    ]
    assert [len(evaluate(e)) for e in ("~([1]^2[0]^2)", "~([1,1][0,0])", "~([1,0]^2)")] == [6, 2, 1]


def test_perm_of_pair_blocks_matches_explicit_union():
    k = 3
    union = " | ".join(f"[0,0]^{l}[1,1][0,0]^{k - l}" for l in range(k + 1))
    assert evaluate("~([1,1][0,0]^3)") == evaluate(union)
    assert evaluate("~([1,1][0,0]^k)", k=3) == evaluate(union)


def test_power_zero_is_empty_word():
    ws = evaluate("[1]^0")
    assert ws.dim == 0 and ws.elements == frozenset({0})
    assert evaluate("[1]^0[0,1]").texts() == ["01"]


def test_exponent_arithmetic():
    assert evaluate("[0]^(2*d+1)", d=3).dim == 7
    assert evaluate("[0]^((d-1)/2)", d=7).dim == 3
    with pytest.raises(DslEvalError):
        evaluate("[0]^(d/2)", d=7)
    with pytest.raises(DslEvalError):
        evaluate("[0]^(d-9)", d=7)
    with pytest.raises(DslEvalError):
        evaluate("[0]^n")


def test_name_bindings():
    s = WordSet.from_strings(["01", "11"])
    assert evaluate("[0] X", X=s).texts() == ["001", "011"]
    with pytest.raises(DslEvalError):
        evaluate("[0] X")


def test_union_dimension_mismatch():
    with pytest.raises(DimensionError):
        evaluate("[0] | [0,0]")


def test_perm_factor_cap():
    eleven = "[0][1]" + "".join(f"[{'1,' * i}0]" for i in range(1, 10))
    with pytest.raises(DslEvalError, match="distinct factors"):
        evaluate(f"~({eleven})")
    # many factors but few distinct ones is fine
    assert len(evaluate("~([1]^6[0]^6)")) == 924


def test_block_cardinality():
    rng = random.Random(3)
    for _ in range(50):
        syms = [rng.choice("01*") for _ in range(rng.randint(1, 8))]
        ws = evaluate("[" + ",".join(syms) + "]")
        assert len(ws) == 2 ** syms.count("*")
        assert set(ws) == block_words(syms)


def test_concat_cardinality():
    rng = random.Random(5)
    for _ in range(30):
        a = [rng.choice("01*") for _ in range(rng.randint(1, 4))]
        b = [rng.choice("01*") for _ in range(rng.randint(1, 4))]
        ea, eb = "[" + ",".join(a) + "]", "[" + ",".join(b) + "]"
        assert len(evaluate(ea + eb)) == len(evaluate(ea)) * len(evaluate(eb))


def test_perm_against_bruteforce_orderings():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(1, 6)
        factors = []
        for _ in range(n):
            # small alphabet so that equal factors occur often
            syms = [rng.choice("01*" if rng.random() < 0.3 else "01") for _ in range(rng.randint(1, 2))]
            factors.append(syms)
        text = "~(" + "".join("[" + ",".join(f) + "]" for f in factors) + ")"
        dim, words = perm_union_bruteforce([(len(f), block_words(f)) for f in factors])
        ws = evaluate(text)
        assert ws.dim == dim
        assert set(ws) == words, text


def test_perm_with_power_expands_factors():
    # ~([1]^2[0]^2) permutes four one-letter blocks: C(4,2) arrangements
    assert len(evaluate("~([1]^2[0]^2)")) == 6
    # a parenthesised group moves as one unit
    assert evaluate("~(([1][0])[0])").texts() == ["010", "100"]


def test_eval_deterministic():
    e = parse("[*]~([0][1]^2)[*]")
    assert evaluate(e) == evaluate(e)
