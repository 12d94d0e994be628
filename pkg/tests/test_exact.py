from fractions import Fraction

import pytest
import sympy

from fibral.exact import (
    NonRationalNumeral,
    SingularSystem,
    determinant,
    format_rational,
    leading_principal_minors,
    parse_rational,
    solve,
)


@pytest.mark.parametrize("text,value", [("3", 3), ("-1/2", Fraction(-1, 2)), ("4/6", Fraction(2, 3)), (7, 7), (" 5 / 3 ", Fraction(5, 3))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["0.5", "1e3", 0.5, True, "1/0", "", "a/b", None])
def test_parse_rejects(bad):
    with pytest.raises(NonRationalNumeral):
        parse_rational(bad)


def test_format_round_trip():
    for x in [Fraction(0), Fraction(-7, 3), Fraction(12)]:
        assert parse_rational(format_rational(x)) == x
    assert format_rational(Fraction(4, 2)) == "2"


def test_minors_and_determinant_match_sympy():
    a = [[Fraction(2), Fraction(-1), Fraction(1, 3)], [Fraction(-1), Fraction(5, 2), Fraction(0)], [Fraction(1, 3), Fraction(0), Fraction(4)]]
    sm = sympy.Matrix(a)
    expected = [sm[:k, :k].det() for k in range(1, 4)]
    assert [sympy.Rational(x.numerator, x.denominator) for x in leading_principal_minors(a)] == expected
    assert determinant(a) == leading_principal_minors(a)[-1]


def test_minors_with_zero_pivot():
    a = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    assert leading_principal_minors(a) == [0, -1]


def test_solve():
    a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
    assert solve(a, [Fraction(3), Fraction(5)]) == [Fraction(4, 5), Fraction(7, 5)]
    with pytest.raises(SingularSystem):
        solve([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]], [Fraction(1), Fraction(2)])
