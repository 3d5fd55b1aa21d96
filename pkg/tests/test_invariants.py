import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacrec.errors import InvalidInput
from jacrec.invariants import (
    CianiMatrix,
    GL3Matrix,
    TernaryForm,
    ciani_discriminant,
    ciani_form,
    differential_weight,
    discriminant,
    gl3_act,
    invariant_weight,
    macaulay_resultant,
    monomials,
    substitute,
)
from jacrec.invariants.discriminant import general_normalization_exponent, normalization_exponent
from jacrec.invariants.forms import linear_form
from jacrec.invariants.resultant import _macaulay_dets, _perturbed_res

from helpers import random_int_matrix
from oracles import linear_resultant, resultant_with_power_of_z, sylvester

FERMAT = TernaryForm.from_expr("x^4 + y^4 + z^4")
small = st.integers(-3, 3)


def random_form(rng, d, lo=-3, hi=3):
    return TernaryForm(d, {m: rng.randint(lo, hi) for m in monomials(d)})


forms = st.builds(
    lambda d, cs: TernaryForm(d, dict(zip(monomials(d), cs))),
    st.just(4),
    st.lists(small, min_size=15, max_size=15),
).filter(lambda F: not F.is_zero())


# -- forms ---------------------------------------------------------------------


def test_monomial_order_is_descending_lex():
    mons = monomials(4)
    assert len(mons) == 15
    assert mons == sorted(mons, reverse=True)
    assert mons[0] == (4, 0, 0) and mons[-1] == (0, 0, 4)


def test_exponents_must_match_degree():
    with pytest.raises(InvalidInput):
        TernaryForm(4, {(3, 0, 0): 1})


def test_partials_drop_degree():
    F = random_form(random.Random(0), 4)
    assert all(q.degree == 3 for q in F.gradient())


def test_json_round_trip():
    F = TernaryForm(4, {(4, 0, 0): Fraction(3, 7), (1, 2, 1): -2})
    data = F.to_json()
    assert data["coeffs"][0] == [4, 0, 0, "3/7"]
    assert TernaryForm.from_json(data) == F


def test_json_rejects_floats():
    with pytest.raises(InvalidInput):
        TernaryForm.from_json({"degree": 4, "coeffs": [[4, 0, 0, 0.5]]})


def test_from_expr_rejects_inhomogeneous():
    with pytest.raises(InvalidInput):
        TernaryForm.from_expr("x^4 + y")


def test_scalar_action():
    F = random_form(random.Random(1), 4)
    lam = Fraction(3, 2)
    assert gl3_act(GL3Matrix.identity(lam), F) == F.scale(lam**-4)


def test_permutation_fixes_fermat():
    for perm in ((1, 0, 2), (2, 0, 1), (0, 2, 1)):
        assert gl3_act(GL3Matrix.permutation(perm), FERMAT) == FERMAT


def test_action_inverse():
    rng = random.Random(2)
    for _ in range(5):
        F, u = random_form(rng, 4), random_int_matrix(rng)
        assert gl3_act(u, gl3_act(u.inverse(), F)) == F


def test_singular_matrix_rejected():
    with pytest.raises(InvalidInput):
        GL3Matrix([[1, 2, 3], [2, 4, 6], [0, 0, 1]])


# -- resultants ----------------------------------------------------------------


def test_resultant_identity():
    x, y, z = linear_form(1, 0, 0), linear_form(0, 1, 0), linear_form(0, 0, 1)
    assert macaulay_resultant(x, y, z) == 1


@pytest.mark.parametrize("d1", range(1, 5))
@pytest.mark.parametrize("d2", range(1, 5))
@pytest.mark.parametrize("d3", range(1, 5))
def test_resultant_normalization(d1, d2, d3):
    r = macaulay_resultant(TernaryForm.monomial((d1, 0, 0)), TernaryForm.monomial((0, d2, 0)), TernaryForm.monomial((0, 0, d3)))
    assert r == 1


def test_resultant_scaled_cubes():
    cubes = [TernaryForm.monomial(e, 4) for e in ((3, 0, 0), (0, 3, 0), (0, 0, 3))]
    assert macaulay_resultant(*cubes) == 2**54


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
@settings(max_examples=40, deadline=None)
def test_linear_resultant_is_determinant(rows):
    if any(all(c == 0 for c in row) for row in rows):
        return
    r = macaulay_resultant(*(linear_form(*row) for row in rows))
    assert r == linear_resultant(rows)


@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_resultant_against_sylvester(d1, d2, k, seed):
    rng = random.Random(seed)
    f1, f2 = random_form(rng, d1), random_form(rng, d2)
    if f1.is_zero() or f2.is_zero():
        return
    assert macaulay_resultant(f1, f2, TernaryForm.monomial((0, 0, k))) == resultant_with_power_of_z(f1, f2, k)


@given(st.integers(0, 10**6))
@settings(max_examples=15, deadline=None)
def test_resultant_multihomogeneity(seed):
    rng = random.Random(seed)
    fs = [random_form(rng, d) for d in (2, 2, 3)]
    if any(f.is_zero() for f in fs):
        return
    lam = Fraction(rng.choice([-3, -2, 2, 5]), rng.choice([1, 3, 7]))
    base = macaulay_resultant(*fs)
    scaled = macaulay_resultant(fs[0].scale(lam), fs[1], fs[2])
    assert scaled == lam ** (2 * 3) * base


def test_common_root_gives_zero():
    # all three vanish at (1:1:1)
    f1 = TernaryForm.from_expr("x^2 - y*z")
    f2 = TernaryForm.from_expr("x*y - z^2")
    f3 = TernaryForm.from_expr("x^3 - y^3 + 2*x*y*z - 2*z^3")
    assert macaulay_resultant(f1, f2, f3) == 0


def test_zero_form_rejected():
    with pytest.raises(InvalidInput):
        macaulay_resultant(TernaryForm(2), linear_form(1, 0, 0), linear_form(0, 1, 0))


def test_resultant_fallback_paths():
    # y^2 has no x^2 term, so the extraneous minor has a zero row
    f1 = TernaryForm.from_expr("y^2")
    f2 = TernaryForm.from_expr("x^2 + z^2")
    f3 = TernaryForm.from_expr("x^2 + y^2 + 3*z^2")
    assert _macaulay_dets([f1, f2, f3])[1] == 0
    # Res(y^2, f2, f3) = Res(y, f2, f3)^2 and Res(y, f2, f3) = +-Res_binary(f2|y=0, f3|y=0)
    expected = sylvester([1, 0, 1], [1, 0, 3]) ** 2
    assert macaulay_resultant(f1, f2, f3) == expected


def test_perturbation_fallback_matches_direct():
    rng = random.Random(11)
    while True:
        fs = [random_form(rng, d) for d in (1, 2, 2)]
        num, den = _macaulay_dets(fs)
        if den:
            break
    direct = Fraction(num, den)
    assert _perturbed_res(fs) == direct


# -- discriminant --------------------------------------------------------------


def test_fermat_discriminant():
    d = discriminant(FERMAT)
    assert d.value == 2**40
    assert (d.degree, d.weight) == (27, 36)


def test_forced_singular_point():
    rng = random.Random(5)
    for _ in range(10):
        F = random_form(rng, 4)
        coeffs = {m: c for m, c in F.coeffs.items() if m not in ((0, 0, 4), (1, 0, 3), (0, 1, 3))}
        assert discriminant(TernaryForm(4, coeffs)).value == 0


def test_cone_is_singular():
    assert discriminant(TernaryForm.from_expr("x^4 + y^4")).value == 0


@given(forms, st.builds(Fraction, st.integers(1, 49) | st.integers(-49, -1), st.integers(1, 49)))
@settings(max_examples=25, deadline=None)
def test_discriminant_homogeneity(F, lam):
    assert discriminant(F.scale(lam)).value == lam**27 * discriminant(F).value


@given(forms, st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_discriminant_pullback_equivariance(F, seed):
    u = random_int_matrix(random.Random(seed))
    assert discriminant(substitute(F, u)).value == u.det**36 * discriminant(F).value


def test_discriminant_left_action_exponent():
    rng = random.Random(9)
    for _ in range(10):
        F, u = random_form(rng, 4), random_int_matrix(rng)
        assert discriminant(gl3_act(u, F)).value == u.det ** (-36) * discriminant(F).value


@pytest.mark.parametrize("d", range(2, 7))
def test_normalization_constants_agree(d):
    assert general_normalization_exponent(3, d) == normalization_exponent(d)


def test_other_degrees():
    assert discriminant(TernaryForm.from_expr("x^2 + y^2 + z^2")).value != 0
    assert discriminant(TernaryForm.from_expr("x^3 + y^3 + z^3")).value != 0
    assert discriminant(TernaryForm.from_expr("x^3 + y^3 + x*y*z")).value == 0
    with pytest.raises(InvalidInput):
        discriminant(TernaryForm.from_expr("x^7 + y^7 + z^7"))


# -- weights -------------------------------------------------------------------


def test_weights():
    assert invariant_weight(4, 27) == 36
    assert invariant_weight(4, 54) == 72
    assert differential_weight(4) == 4
    with pytest.raises(InvalidInput):
        invariant_weight(4, 2)


# -- Ciani quartics ------------------------------------------------------------


def test_ciani_identity_form():
    assert ciani_form(CianiMatrix.identity()) == FERMAT
    assert ciani_discriminant(CianiMatrix.identity()) == 2**40


def test_ciani_zero_matrix():
    assert ciani_form(CianiMatrix(0, 0, 0, 0, 0, 0)).is_zero()


def test_ciani_diagonal():
    m = CianiMatrix(2, 3, 5, 0, 0, 0)
    assert ciani_form(m) == TernaryForm.from_expr("2*x^4 + 3*y^4 + 5*z^4")
    expected = Fraction(2) ** 40 * 30 * (15 * 10 * 6) ** 2 * 30**4
    assert ciani_discriminant(m) == expected == discriminant(ciani_form(m)).value


def test_ciani_all_ones():
    m = CianiMatrix(1, 1, 1, 1, 1, 1)
    assert m.cofactors == (0, 0, 0)
    assert ciani_discriminant(m) == 0 == discriminant(ciani_form(m)).value


def test_ciani_cofactors():
    m = CianiMatrix(2, 3, 5, 7, 11, 13)
    assert m.cofactors == (3 * 5 - 49, 2 * 5 - 121, 2 * 3 - 169)


@given(st.lists(st.integers(-6, 6), min_size=6, max_size=6), st.integers(1, 4))
@settings(max_examples=30, deadline=None)
def test_ciani_closed_form_property(entries, den):
    m = CianiMatrix(*(Fraction(e, den) for e in entries))
    if ciani_form(m).is_zero():
        return
    assert ciani_discriminant(m) == discriminant(ciani_form(m)).value


def test_ciani_rejects_floats():
    with pytest.raises(InvalidInput):
        CianiMatrix(1.5, 1, 1, 0, 0, 0)
