from fractions import Fraction

import pytest

from perverse_blocks.cyclo import (
    A_of,
    CycloProduct,
    Frac,
    RootAngle,
    a_of,
    aA_of,
    arg_count,
    arg_mod2,
    binomial,
    from_cyclotomic,
    negate_q,
    phi,
    pi,
    pi_binomial,
    pi_d1,
    pi_d2,
    pi_rel,
    product,
    sign_at_zeta,
    substitute_power,
)
from perverse_blocks.errors import RootAtZetaError

# the degree of phi_{2,2} in G2: q * Phi_2^2 * Phi_6 / 2
PHI_22 = product(
    [CycloProduct.monomial(1), from_cyclotomic(2, 2), from_cyclotomic(6)]
) / 2


def test_root_angle_is_reduced_mod_one():
    assert RootAngle(Fraction(5, 4)).turns == Fraction(1, 4)
    assert RootAngle.of(4, 3).negate() == RootAngle.of(4)
    assert RootAngle.of(6, -1) == RootAngle.of(6, 5)


def test_root_angle_str_and_reality():
    assert str(RootAngle(0)) == "1"
    assert str(RootAngle.of(2)) == "-1"
    assert str(RootAngle.of(12, 5)) == "E(12,5)"
    assert RootAngle.of(2).is_real
    assert not RootAngle.of(3).is_real
    assert RootAngle.of(12, 5).order == 12


def test_frac_requires_coprime_kappa():
    with pytest.raises(ValueError):
        Frac(2, 4)
    frac = Frac.parse("3/7")
    assert (frac.kappa, frac.d) == (3, 7)
    assert frac.shifted() == Frac(10, 7)
    assert str(frac) == "3/7"


def test_cyclotomic_roots():
    phi_4 = from_cyclotomic(4)
    assert phi_4.root_map == {RootAngle.of(4): 1, RootAngle.of(4, 3): 1}
    assert A_of(from_cyclotomic(12)) == 4
    assert from_cyclotomic(6).is_real


def test_surd_is_made_squarefree():
    f = CycloProduct.constant(1, surd=12)
    assert (f.scalar, f.surd) == (2, 3)
    assert (f * CycloProduct.constant(1, surd=3)).surd == 1


def test_quotient_cancels_roots():
    f = from_cyclotomic(4) * from_cyclotomic(3) / from_cyclotomic(4)
    assert f.same_shape(from_cyclotomic(3))
    assert (from_cyclotomic(5) ** -2).multiplicity(RootAngle.of(5)) == -2


def test_binomial_is_split_into_roots():
    f = binomial(3, 1)
    assert (a_of(f), A_of(f)) == (1, 3)
    assert f.multiplicity(RootAngle(0)) == 1
    assert f.multiplicity(RootAngle.of(2)) == 1
    assert binomial(1, 3).scalar == -1
    assert binomial(2, 2, sign=1).scalar == 2


def test_negate_q_swaps_phi1_and_phi2():
    assert negate_q(from_cyclotomic(1)).same_shape(from_cyclotomic(2))
    assert negate_q(from_cyclotomic(3)).same_shape(from_cyclotomic(6))


def test_negate_q_makes_the_scalar_positive():
    roots = [(RootAngle(Fraction(1, 3)), 1)]
    g = negate_q(CycloProduct(scalar=Fraction(-1, 2), qexp=1, roots=roots))
    assert g.scalar == Fraction(1, 2)
    assert g.roots == ((RootAngle(Fraction(5, 6)), 1),)
    assert negate_q(g) == CycloProduct(scalar=Fraction(1, 2), qexp=1, roots=roots)
    assert negate_q(negate_q(PHI_22)) == PHI_22


@pytest.mark.parametrize(
    "frac, expected",
    [(Frac(1, 3), 3), (Frac(2, 3), 7), (Frac(4, 3), 13)],
)
def test_pi_of_a_g2_degree(frac, expected):
    assert aA_of(PHI_22) == 6
    assert pi(PHI_22, frac) == expected


def test_phi_counts_half_for_a_root_at_one():
    assert phi(from_cyclotomic(1), Frac(1, 3)) == Fraction(1, 2)
    assert pi(from_cyclotomic(1), Frac(1, 3)) == Fraction(5, 6)


def test_pi_rel_is_a_difference():
    q6 = CycloProduct.monomial(6)
    assert pi_rel(q6, PHI_22, Frac(1, 3)) == 1


@pytest.mark.parametrize("kappa", [1, 2, 5])
def test_closed_form_at_d1(kappa):
    assert pi(PHI_22, Frac(kappa, 1)) == pi_d1(PHI_22, kappa) == 10 * kappa


@pytest.mark.parametrize("kappa", [1, 3, 7])
def test_closed_form_at_d2(kappa):
    f = from_cyclotomic(3) * from_cyclotomic(4, 2) * CycloProduct.monomial(3)
    assert pi(f, Frac(kappa, 2)) == pi_d2(f, kappa) == 9 * kappa


def test_closed_forms_refuse_roots_at_zeta():
    with pytest.raises(RootAtZetaError):
        pi_d1(from_cyclotomic(1), 1)
    with pytest.raises(RootAtZetaError):
        pi_d2(PHI_22, 1)


@pytest.mark.parametrize(
    "i, j, sign, frac",
    [
        (5, 2, -1, Frac(1, 3)),
        (4, 0, 1, Frac(2, 5)),
        (7, 3, -1, Frac(5, 4)),
        (6, 1, 1, Frac(7, 6)),
    ],
)
def test_binomial_closed_forms(i, j, sign, frac):
    assert pi(binomial(i, j, sign), frac) == pi_binomial(i, j, sign, frac)


def test_shift_law():
    frac = Frac(2, 5)
    f = PHI_22 * from_cyclotomic(5, -1) * from_cyclotomic(10)
    assert pi(f, frac.shifted()) == pi(f, frac) + 2 * A_of(f)


def test_substitute_power_matches_kappa():
    f = PHI_22 * from_cyclotomic(8)
    assert pi(substitute_power(f, 2), Frac(1, 6)) == pi(f, Frac(1, 3))
    assert pi(substitute_power(f, 5), Frac(1, 7)) == pi(f, Frac(5, 7))


def test_arg_mod2_and_sign():
    assert arg_mod2(CycloProduct.monomial(1), Frac(1, 2)) == 1
    assert sign_at_zeta(CycloProduct.monomial(1), Frac(1, 2)) == -1
    assert sign_at_zeta(CycloProduct.monomial(6), Frac(1, 3)) == 1
    # (-1)^pi is the sign of a real degree at zeta
    assert sign_at_zeta(PHI_22, Frac(1, 3)) == -1


def test_arg_mod2_rejects_a_vanishing_factor():
    with pytest.raises(RootAtZetaError):
        arg_mod2(from_cyclotomic(3), Frac(1, 3))
    with pytest.raises(RootAtZetaError):
        sign_at_zeta(from_cyclotomic(2), Frac(1, 3))


@pytest.mark.parametrize(
    "turns, frac, count",
    [
        (Fraction(0), Frac(1, 2), 0),
        (Fraction(0), Frac(3, 2), 1),
        (Fraction(1, 2), Frac(1, 2), 1),
        (Fraction(1, 3), Frac(1, 2), 1),
        (Fraction(2, 3), Frac(1, 2), 0),
        (Fraction(1, 3), Frac(5, 3), 2),
    ],
)
def test_arg_count(turns, frac, count):
    assert arg_count(RootAngle(turns), frac) == count
