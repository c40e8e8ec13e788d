import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sslab.ordinal import (
    K, TOP, Cmp, OrdinalCNF, OrdinalError, cnf_add_sub, cnf_classify, cnf_compare, cnf_parse, cnf_render,
)


@st.composite
def ordinals(draw, max_exp=K, max_coef=6):
    exps = draw(st.sets(st.integers(0, max_exp), max_size=4))
    return OrdinalCNF([(e, draw(st.integers(1, max_coef))) for e in sorted(exps, reverse=True)])


def as_int(a: OrdinalCNF, base: int = 1000) -> int:
    """Order-preserving embedding for small coefficients (base-``base`` digits)."""
    return sum(c * base ** e for e, c in a.terms)


def test_parse_reads_terms():
    assert cnf_parse("w^2*3+w+4").terms == ((2, 3), (1, 1), (0, 4))
    assert cnf_parse("0").terms == ()
    assert cnf_parse("w*5").terms == ((1, 5),)


@pytest.mark.parametrize("text,fragment", [
    ("w^9", "exponent exceeds"),
    ("w+w^2", "non-canonical"),
    ("w+w", "non-canonical"),
    ("w^2*0", "zero coefficient"),
    ("w^", "malformed"),
    ("3w", "malformed"),
    ("", "empty"),
])
def test_parse_errors_name_the_term(text, fragment):
    with pytest.raises(OrdinalError, match=fragment):
        cnf_parse(text)


def test_compare_examples():
    assert cnf_compare(cnf_parse("w*2+1"), cnf_parse("w*2")) is Cmp.GT
    assert cnf_compare(cnf_parse("0"), cnf_parse("0")) is Cmp.EQ
    assert cnf_compare(cnf_parse("w^2"), cnf_parse("w*5+9")) is Cmp.GT


def test_add_and_left_subtract_examples():
    w = cnf_parse("w")
    assert cnf_add_sub(w, w, "add") == cnf_parse("w*2")
    assert cnf_add_sub(cnf_parse("2"), w, "left_subtract") == w
    assert cnf_add_sub(w, cnf_parse("w*2"), "left_subtract") == w
    assert cnf_parse("3") + w == w
    with pytest.raises(OrdinalError, match="underflow"):
        cnf_add_sub(cnf_parse("w+1"), w, "left_subtract")


def test_classify_examples():
    assert cnf_classify(cnf_parse("w")) == (True, 1, cnf_parse("w+1"))
    assert cnf_classify(cnf_parse("5")) == (False, 0, cnf_parse("6"))
    assert cnf_classify(cnf_parse("0")) == (False, TOP, cnf_parse("1"))


def test_render_is_canonical():
    assert cnf_render(cnf_parse("w^2*3+w+4")) == "w^2*3+w+4"
    assert cnf_render(cnf_parse("w^1*1")) == "w"
    assert cnf_render(OrdinalCNF()) == "0"


@given(ordinals(), ordinals())
def test_compare_matches_integer_embedding(a, b):
    want = (as_int(a) > as_int(b)) - (as_int(a) < as_int(b))
    assert int(cnf_compare(a, b)) == want
    assert int(cnf_compare(b, a)) == -want


@given(ordinals(), ordinals(), ordinals())
def test_compare_transitive(a, b, c):
    if cnf_compare(a, b) is not Cmp.GT and cnf_compare(b, c) is not Cmp.GT:
        assert cnf_compare(a, c) is not Cmp.GT


@given(ordinals(), ordinals(), ordinals())
def test_addition_associative(a, b, c):
    assert (a + b) + c == a + (b + c)


@given(ordinals(), ordinals())
def test_left_subtract_inverts_addition(a, c):
    assert cnf_add_sub(a, a + c, "left_subtract") == c


@given(ordinals(), ordinals(), ordinals())
def test_addition_strictly_monotone_on_the_right(a, b, c):
    if b < c:
        assert a + b < a + c
    assert a <= a + b


@given(ordinals(), ordinals())
def test_nu_of_sum_is_nu_of_right_summand(a, b):
    if b.terms:
        assert (a + b).nu == b.nu


@given(ordinals())
def test_successor_is_the_next_ordinal(a):
    s = cnf_classify(a)[2]
    assert a < s
    assert s == a + cnf_parse("1")
    assert not s.is_limit


def test_render_parse_round_trip_on_random_ordinals():
    rng = random.Random(0)
    for _ in range(1000):
        exps = sorted(rng.sample(range(K + 1), rng.randint(0, 4)), reverse=True)
        a = OrdinalCNF([(e, rng.randint(1, 50)) for e in exps])
        assert cnf_parse(cnf_render(a)) == a
