from fractions import Fraction

import pytest

from perverse_blocks.cyclo import A_of, CycloProduct, Frac, RootAngle, a_of, pi
from perverse_blocks.degrees import (
    format_degree,
    format_param,
    parse_degree,
    parse_param,
    primed_cyclotomic,
)
from perverse_blocks.errors import DegreeParseError


@pytest.mark.parametrize(
    "text",
    [
        "q*P2^2*P6/2",
        "q^6",
        "q*P1^2*P2^2/3",
        "q^4*P1^2*P3^2*P4*P8*P12/4",
        "P8'",
        "q*P2*P12''/sqrt3",
        "L(5,2)",
        "-q^2*P4^-1",
        "1",
    ],
)
def test_canonical_text_is_kept(text):
    assert format_degree(parse_degree(text)) == text


def test_degree_values():
    f = parse_degree("q*P2^2*P6/2")
    assert f.scalar == Fraction(1, 2)
    assert (a_of(f), A_of(f)) == (1, 5)
    assert pi(f, Frac(1, 3)) == 3


def test_spaces_are_ignored():
    assert parse_degree(" q * P2 ^2 * P6 / 2 ") == parse_degree("q*P2^2*P6/2")


def test_fractional_power_of_q():
    f = parse_degree("q^(9/2)*P1")
    assert f.qexp == Fraction(9, 2)


def test_primed_cyclotomics_split_the_full_one():
    phi_12 = primed_cyclotomic(12, "'") * primed_cyclotomic(12, "''")
    assert phi_12.same_shape(parse_degree("P12"))
    assert format_degree(phi_12) == "P12"
    assert primed_cyclotomic(8, "''").root_map == {
        RootAngle.of(8, 1): 1,
        RootAngle.of(8, 7): 1,
    }


def test_sqrt_divisor():
    f = parse_degree("q*P2/sqrt3")
    assert f.surd == 3
    assert f.scalar == Fraction(1, 3)


@pytest.mark.parametrize(
    "text, column",
    [("q*X2", 2), ("q**P2", 2), ("P0", 0)],
)
def test_parse_errors_carry_the_column(text, column):
    with pytest.raises(DegreeParseError) as info:
        parse_degree(text)
    assert info.value.column == column


def test_empty_degree():
    with pytest.raises(DegreeParseError):
        parse_degree("  ")


@pytest.mark.parametrize(
    "text, angle, exponent",
    [
        ("1", RootAngle(0), 0),
        ("-1", RootAngle.of(2), 0),
        ("q", RootAngle(0), 1),
        ("-q", RootAngle.of(2), 1),
        ("q^2", RootAngle(0), 2),
        ("-theta*q", RootAngle.of(6, 5), 1),
        ("theta^2*q", RootAngle.of(3, 2), 1),
        ("-i*q^(9/2)", RootAngle.of(4, 3), Fraction(9, 2)),
        ("E(5,2)*q^3", RootAngle.of(5, 2), 3),
    ],
)
def test_parse_param(text, angle, exponent):
    assert parse_param(text) == (angle, Fraction(exponent))


@pytest.mark.parametrize(
    "text",
    ["1", "-1", "q", "-q^5", "-theta*q", "theta^2*q", "i*q^(9/2)", "-i*q^(9/2)"],
)
def test_param_text_is_kept(text):
    assert format_param(*parse_param(text)) == text


@pytest.mark.parametrize("text", ["", "q*", "w*q", "q^x", "E(0,1)*q"])
def test_bad_params(text):
    with pytest.raises(DegreeParseError):
        parse_param(text)


def test_constant_degree():
    assert parse_degree("1/2") == CycloProduct.constant(Fraction(1, 2))
