import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from selfref.coding import (
    InvalidCode, cantor_pair, cantor_unpair, codec_spec, context_transform, decode_formula,
    decode_sequence, diag, encode_formula, encode_sequence, is_sentence_code, is_valid_code,
)
from selfref.formula import Num, PropVar, Not, substitute_all_free
from selfref.grammar import parse, parse_template
from oracles import ref_close, ref_encode
from strategies import formulas

GOLDEN = json.loads((Path(__file__).parent / "fixtures" / "golden_codes.json").read_text())


def test_hand_computed_codes():
    # 0 = 0 serialises as 000 | 00 1 | 00 1, i.e. bits 000001001
    assert encode_formula(parse("0 = 0")) == int("1000001001", 2) - 1 == 520
    assert encode_formula(parse("~(0 = 0)")) == 4616
    assert encode_formula(parse("S(0) = 0")) == 2064


@pytest.mark.parametrize("fx", GOLDEN["fixtures"], ids=lambda fx: fx["formula"])
def test_golden_codes(fx):
    assert encode_formula(parse(fx["formula"])) == int(fx["code"])


@given(formulas())
def test_round_trip(f):
    assert decode_formula(encode_formula(f)) == f


@given(formulas())
def test_matches_reference_encoder(f):
    assert encode_formula(f) == ref_encode(f)


@given(formulas(), formulas())
def test_injective(f, g):
    assert (encode_formula(f) == encode_formula(g)) == (f == g)


def test_invalid_codes():
    for c in (0, 1, 2, 3):
        assert not is_valid_code(c)
        with pytest.raises(InvalidCode):
            decode_formula(c)
    with pytest.raises(InvalidCode):
        decode_formula(-5)
    assert is_valid_code(520) and is_sentence_code(520)
    assert not is_sentence_code(encode_formula(parse("x = 0")))


def test_propvars_have_no_code():
    with pytest.raises(ValueError):
        encode_formula(PropVar("p"))


@given(formulas())
def test_diag_against_independent_closure(f):
    c = encode_formula(f)
    assert diag(c) == ref_encode(ref_close(f, c))


def test_diag_of_sentence_is_identity():
    assert diag(520) == 520


def test_context_transform():
    c = encode_formula(parse("0 = 0"))
    assert context_transform(parse_template("~p"), c) == encode_formula(Not(parse("0 = 0")))
    assert context_transform(parse_template("p"), c) == c
    with pytest.raises(ValueError):
        context_transform(parse_template("p1 & p2"), c)


@given(st.integers(0, 10**9), st.integers(0, 10**9))
def test_cantor(x, y):
    assert cantor_unpair(cantor_pair(x, y)) == (x, y)


def test_cantor_small_values():
    # (0,0) (1,0) (0,1) (2,0) (1,1) (0,2)
    assert [cantor_unpair(z) for z in range(6)] == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


@given(st.lists(st.integers(0, 50), max_size=6))
def test_sequences(xs):
    assert decode_sequence(encode_sequence(xs)) == xs


def test_sequence_codes_are_dense():
    assert sorted(encode_sequence(decode_sequence(c)) for c in range(200)) == list(range(200))


def test_codec_spec_lists_tags_and_pairing():
    text = codec_spec()
    assert text == codec_spec()
    for tag in ("Eq", "Not", "And", "Or", "Implies", "Iff", "Forall", "Exists", "BForall", "BExists",
                "Atom", "Num", "Var", "Succ", "Add", "Mul"):
        assert tag in text
    assert "pair(x, y) = (x + y)(x + y + 1)/2 + y" in text


def test_large_numerals_code_linearly():
    big = Num(10**400)
    f = substitute_all_free(parse("x = x"), big)
    # each numeral costs about twice its binary length (Elias gamma)
    assert encode_formula(f).bit_length() < 4 * (10**400).bit_length() + 64
