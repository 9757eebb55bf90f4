from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cantorkit.expansions import (
    DigitExpansion,
    DomainError,
    as_rational,
    deinterleave,
    dual_representations,
    expand,
    format_expansion,
    format_rational,
    interleave,
    is_base_rational,
    parse_expansion,
    truncate,
    value,
)

unit_rationals = st.integers(1, 10_000).flatmap(
    lambda q: st.integers(0, q).map(lambda p: Fraction(p, q)))
bases = st.sampled_from([2, 3])


def floor_digits(x: Fraction, base: int, k: int) -> list[int]:
    """Independent oracle: d_i = floor(x b^i) - b floor(x b^(i-1)).

    Gives the terminating expansion for base rationals."""
    out = []
    for i in range(1, k + 1):
        out.append(int(x * base**i) - base * int(x * base ** (i - 1)))
    return out


def series_oracle(prefix, tail, base, terms=200) -> Fraction:
    """Partial sum of the digit series plus the exact remainder bound."""
    e = DigitExpansion(base, prefix, tail)
    return sum(Fraction(e.digit(k), base**k) for k in range(1, terms + 1))


def test_expand_examples():
    assert expand(0, 3) == DigitExpansion(3, (), ())
    assert expand(Fraction(1, 3), 3) == DigitExpansion(3, (0,), (2,))
    assert expand(Fraction(1, 4), 3) == DigitExpansion(3, (), (0, 2))


def test_expand_one_is_all_top_digits():
    assert expand(1, 2) == DigitExpansion(2, (), (1,))
    assert expand(1, 3) == DigitExpansion(3, (), (2,))


def test_expand_terminating_twin():
    assert expand(Fraction(1, 3), 3, terminating=True) == DigitExpansion(3, (1,), ())
    assert expand(Fraction(3, 4), 2, terminating=True) == DigitExpansion(2, (1, 1), ())


@pytest.mark.parametrize("x", [Fraction(-1, 2), Fraction(3, 2)])
def test_expand_rejects_out_of_range(x):
    with pytest.raises(DomainError):
        expand(x, 3)


def test_expand_rejects_floats_and_other_bases():
    with pytest.raises(TypeError):
        expand(0.5, 2)
    with pytest.raises(DomainError):
        expand(Fraction(1, 2), 10)


def test_long_division_matches_floor_oracle_for_quarter():
    e = expand(Fraction(1, 4), 3)
    assert truncate(e, 12) == floor_digits(Fraction(1, 4), 3, 12)


def test_value_examples():
    assert value(DigitExpansion(3, (), (2,))) == 1
    assert value(DigitExpansion(3, (2, 0), ())) == Fraction(2, 3)
    # 2*(1/9)/(1 - 1/9) = 1/4
    assert value(DigitExpansion(3, (), (0, 2))) == Fraction(2, 9) / (1 - Fraction(1, 9))
    assert value(DigitExpansion(3, (), (0, 2))) == Fraction(1, 4)


def test_value_agrees_with_partial_series():
    e = DigitExpansion(3, (1, 0, 2), (2, 1, 0, 0))
    v = value(e)
    s = series_oracle(e.prefix, e.tail, 3)
    assert 0 <= v - s <= Fraction(1, 3**200)


def test_dual_representation_examples():
    assert dual_representations(Fraction(2, 3), 3) == (
        DigitExpansion(3, (2,), ()), DigitExpansion(3, (1,), (2,)))
    assert dual_representations(Fraction(3, 4), 2) == (
        DigitExpansion(2, (1, 1), ()), DigitExpansion(2, (1, 0), (1,)))
    assert dual_representations(Fraction(1, 4), 3) == (DigitExpansion(3, (), (0, 2)),)


def test_dual_representations_endpoints_are_single():
    assert dual_representations(0, 3) == (DigitExpansion(3, (), ()),)
    assert dual_representations(1, 2) == (DigitExpansion(2, (), (1,)),)


def test_dual_pair_shape():
    for x in [Fraction(m, 27) for m in range(1, 27)]:
        reps = dual_representations(x, 3)
        assert len(reps) == 2
        term, non = reps
        d = term.prefix[-1]
        assert d >= 1
        assert non.prefix == term.prefix[:-1] + (d - 1,)
        assert non.tail == (2,)


def test_truncate_examples():
    assert truncate(DigitExpansion(3, (), (0, 2)), 5) == [0, 2, 0, 2, 0]
    assert truncate(DigitExpansion(3, (2,), ()), 3) == [2, 0, 0]
    assert truncate(DigitExpansion(3, (1,), (2,)), 4) == [1, 2, 2, 2]
    assert truncate(DigitExpansion(3, (1,), (2,)), 0) == []
    with pytest.raises(DomainError):
        truncate(DigitExpansion(3), -1)


@given(unit_rationals, bases)
def test_round_trip(x, b):
    assert value(expand(x, b)) == x


@given(unit_rationals, bases)
def test_canonical_form_never_terminates_inside_unit_interval(x, b):
    e = expand(x, b)
    if 0 < x < 1 and is_base_rational(x, b):
        assert e.tail == (b - 1,)
    if 0 < x < 1:
        assert e.tail != ()


@given(unit_rationals, bases)
def test_non_base_rationals_match_floor_oracle(x, b):
    if not is_base_rational(x, b):
        assert truncate(expand(x, b), 30) == floor_digits(x, b, 30)


@given(unit_rationals, st.integers(0, 40))
def test_nested_interval_inequality(x, k):
    digits = truncate(expand(x, 3), k)
    s = sum(Fraction(d, 3**i) for i, d in enumerate(digits, start=1))
    assert s <= x <= s + Fraction(1, 3**k)


@given(unit_rationals, bases)
def test_two_expansions_iff_denominator_is_power_of_base(x, b):
    power = any(b**k == x.denominator for k in range(20))
    inside = 0 < x < 1
    assert (len(dual_representations(x, b)) == 2) == (inside and power)
    assert all(value(e) == x for e in dual_representations(x, b))


@given(unit_rationals, bases)
def test_expansion_text_round_trip(x, b):
    e = expand(x, b)
    assert parse_expansion(format_expansion(e)).normalized() == e.normalized()
    assert value(parse_expansion(format_expansion(e))) == x


def test_expansion_text_format():
    assert format_expansion(DigitExpansion(3, (0, 1), (2,))) == "0.01(2)_3"
    assert parse_expansion("0.01(2)_3") == DigitExpansion(3, (0, 1), (2,))
    assert format_expansion(expand(0, 3)) == "0.0_3"
    with pytest.raises(ValueError):
        parse_expansion("0.1(2_3")
    with pytest.raises(ValueError):
        parse_expansion("0.3_3")


def test_rational_text():
    assert format_rational(Fraction(1)) == "1/1"
    assert as_rational("3/9") == Fraction(1, 3)
    with pytest.raises(ValueError):
        as_rational("0.5")


def test_normalized_preserves_value_and_shortens():
    e = DigitExpansion(3, (0, 2, 0, 2), (0, 2, 0, 2))
    n = e.normalized()
    assert n == DigitExpansion(3, (), (0, 2))
    assert value(n) == value(e)


@given(unit_rationals, st.sampled_from([2, 3]))
def test_deinterleave_interleave_inverse(x, stride):
    e = expand(x, 3)
    parts = deinterleave(e, stride)
    assert value(interleave(parts)) == x
    for c, part in enumerate(parts):
        assert truncate(part, 10) == truncate(e, 10 * stride)[c::stride]
