import random

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacrec.errors import ConditioningError, InvalidInput, ResourceLimit
from jacrec.theta import (
    SiegelPoint,
    SymplecticMatrix,
    ThetaCharacteristic,
    ZeroVerdict,
    chi_product,
    elementary_symmetric,
    enumerate_characteristics,
    even_characteristics,
    odd_characteristics,
    random_siegel_point,
    random_symplectic_word,
    sigma140,
    sp_action,
    symplectic_generators,
    theta,
    theta_constants,
)

from oracles import even_pairs, theta_diagonal, theta_g1_direct, theta_g1_jtheta

P = 212


def tau1(t, prec=P):
    return SiegelPoint.create([[t]], prec)


def diag_tau(ts, prec=P):
    g = len(ts)
    return SiegelPoint.create([[ts[i] if i == j else 0 for j in range(g)] for i in range(g)], prec)


# -- characteristics -----------------------------------------------------------


@pytest.mark.parametrize("g, even, total", [(1, 3, 4), (2, 10, 16), (3, 36, 64), (4, 136, 256)])
def test_characteristic_counts(g, even, total):
    chars = enumerate_characteristics(g)
    assert len(chars) == total
    assert len(even_characteristics(g)) == even == 2 ** (g - 1) * (2**g + 1)
    assert len(odd_characteristics(g)) == total - even
    assert all(c.is_even == (c.dot % 2 == 0) for c in chars)


def test_characteristic_parse():
    c = ThetaCharacteristic.parse("[011|101]")
    assert c.eps1 == (0, 1, 1) and c.eps2 == (1, 0, 1) and not c.is_even
    assert str(c) == "[011|101]"
    assert ThetaCharacteristic.parse("011,011").is_even
    with pytest.raises(InvalidInput):
        ThetaCharacteristic.parse("[01|2]")


# -- genus one against independent oracles ---------------------------------------


def test_g1_value_at_i():
    got = theta(ThetaCharacteristic((0,), (0,)), [0], tau1(1j), P)
    oracle = theta_g1_direct(0, 0, 1j, P)
    with mpmath.workprec(P):
        assert abs(got.value - oracle) < mpmath.ldexp(1, -P // 2)
        # classical closed form pi^(1/4) / Gamma(3/4)
        assert abs(got.value - mpmath.pi ** (mpmath.mpf(1) / 4) / mpmath.gamma(mpmath.mpf(3) / 4)) < mpmath.ldexp(1, -P // 2)
        assert mpmath.nstr(mpmath.re(got.value), 17).startswith("1.086434811213308")


@pytest.mark.parametrize("t", [1j, 0.3 + 0.8j, -0.45 + 1.7j, 0.1 + 0.35j])
@pytest.mark.parametrize("ab", [(0, 0), (0, 1), (1, 0)])
def test_g1_matches_jtheta(t, ab):
    got = theta(ThetaCharacteristic((ab[0],), (ab[1],)), [0], tau1(t), P)
    with mpmath.workprec(P):
        ref = theta_g1_jtheta(*ab, t, P)
        assert abs(got.value - ref) <= got.error_bound + mpmath.ldexp(abs(ref), -P + 8)
        assert got.error_bound < mpmath.ldexp(1, -P // 2) * max(1, abs(got.value))


def test_g1_odd_vanishes():
    got = theta(ThetaCharacteristic((1,), (1,)), [0], tau1(0.2 + 0.9j), P)
    assert abs(got.value) <= got.error_bound


def test_g1_with_z_against_direct_sum():
    z, t = mpmath.mpc("0.13", "-0.07"), mpmath.mpc("0.25", "1.1")
    got = theta(ThetaCharacteristic((1,), (0,)), [z], tau1(t), P)
    with mpmath.workprec(P + 30):
        s = mpmath.mpc(0)
        for n in range(-40, 41):
            m = n + mpmath.mpf(1) / 2
            s += mpmath.exp(1j * mpmath.pi * (m * m * t + 2 * m * z))
    assert abs(got.value - s) <= got.error_bound + mpmath.ldexp(1, -P + 4)


# -- genus three ---------------------------------------------------------------


def test_diagonal_factorization():
    ts = [1j, mpmath.mpc("0.2", "1.3"), mpmath.mpc("-0.4", "0.9")]
    tau = diag_tau(ts)
    vals = theta_constants(tau, P)
    for e1, e2 in list(even_pairs(3))[:12]:
        c = ThetaCharacteristic(e1, e2)
        ref = theta_diagonal(e1, e2, ts, P)
        assert abs(vals[c].value - ref) <= vals[c].error_bound + mpmath.ldexp(1, -P + 8)


def test_identity_tau_cube():
    tau = diag_tau([1j, 1j, 1j])
    v = theta(ThetaCharacteristic((0, 0, 0), (0, 0, 0)), [0, 0, 0], tau, P)
    g1 = theta_g1_direct(0, 0, 1j, P)
    with mpmath.workprec(P):
        assert abs(v.value - g1**3) < mpmath.ldexp(1, -P // 2)


def test_odd_characteristics_vanish():
    rng = random.Random(4)
    for _ in range(5):
        tau = random_siegel_point(3, rng, P)
        vals = theta_constants(tau, P)
        for c in odd_characteristics(3):
            assert abs(vals[c].value) <= vals[c].error_bound


def test_z_symmetry():
    rng = random.Random(5)
    tau = random_siegel_point(3, rng, 128)
    z = [mpmath.mpc(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)) for _ in range(3)]
    mz = [-w for w in z]
    for c in enumerate_characteristics(3)[::7]:
        a, b = theta(c, z, tau, 128), theta(c, mz, tau, 128)
        sign = (-1) ** c.dot
        with mpmath.workprec(128):
            assert abs(b.value - sign * a.value) <= a.error_bound + b.error_bound + mpmath.ldexp(1, -120)


def test_precision_doubling():
    rng = random.Random(6)
    tau = random_siegel_point(3, rng, 424)
    lo = theta_constants(tau.with_prec(212), 212)
    hi = theta_constants(tau, 424)
    for c in even_characteristics(3):
        assert abs(lo[c].value - hi[c].value) < lo[c].error_bound


def test_error_bound_is_small():
    tau = random_siegel_point(3, random.Random(7), P)
    for v in theta_constants(tau, P).values():
        assert v.error_bound < mpmath.ldexp(1, -P // 2) * max(1, abs(v.value))


def test_invalid_tau_rejected():
    with pytest.raises(InvalidInput):
        SiegelPoint.create([[1j, 0.5], [0.2, 1j]], 64)
    with pytest.raises(InvalidInput):
        SiegelPoint.create([[-1j]], 64)


def test_radius_cap():
    with pytest.raises(ResourceLimit):
        theta(ThetaCharacteristic((0,), (0,)), [0], tau1(1e-12j, 64), 64)


# -- forms ---------------------------------------------------------------------


def test_chi_product_factor_count():
    tau = random_siegel_point(3, random.Random(8), P)
    assert chi_product(3, tau, P).degree == 36
    assert chi_product(3, tau, P).weight == 18
    assert chi_product(2, random_siegel_point(2, random.Random(8), P), P).degree == 10


def test_elementary_symmetric_equal_inputs():
    with mpmath.workprec(P):
        t = mpmath.mpf("1.1")
        vals = [t**8] * 36
        assert abs(elementary_symmetric(vals, 35) - 36 * t**280) < mpmath.ldexp(t**280, -P + 16)


def test_elementary_symmetric_one_zero():
    rng = random.Random(9)
    with mpmath.workprec(P):
        vals = [mpmath.mpf(rng.uniform(0.5, 2)) ** 8 for _ in range(35)] + [mpmath.mpf(0)]
        prod = mpmath.fprod(vals[:35])
        assert abs(elementary_symmetric(vals, 35) - prod) < mpmath.ldexp(prod, -P + 16)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=8), st.integers(0, 8))
@settings(max_examples=50, deadline=None)
def test_elementary_symmetric_against_expansion(xs, k):
    import itertools

    expected = sum(mpmath.fprod(c) for c in itertools.combinations(xs, k)) if k <= len(xs) else 0
    assert elementary_symmetric([mpmath.mpf(x) for x in xs], k) == expected


def test_block_diagonal_vanishing():
    rng = random.Random(10)
    t1 = random_siegel_point(1, rng, P)
    t2 = random_siegel_point(2, rng, P)
    tau = t1.block_diagonal_with(t2)
    assert chi_product(3, tau, P).zero_test().verdict is ZeroVerdict.ZERO
    assert sigma140(tau, P).zero_test().verdict is ZeroVerdict.ZERO


def test_generic_tau_is_nonzero():
    tau = random_siegel_point(3, random.Random(11), P)
    assert chi_product(3, tau, P).zero_test().verdict is ZeroVerdict.NONZERO
    assert sigma140(tau, P).zero_test().verdict is ZeroVerdict.NONZERO


# -- Sp(2g, Z) -----------------------------------------------------------------


def test_generators_are_symplectic():
    for g in (1, 2, 3):
        assert all(M.is_symplectic() for M in symplectic_generators(g))


def test_translation_action():
    tau = random_siegel_point(3, random.Random(12), P)
    B = [[1, 0, 2], [0, -1, 0], [2, 0, 0]]
    new, det = sp_action(SymplecticMatrix.translation(B), tau)
    assert det == 1
    for i in range(3):
        for j in range(3):
            assert abs(new.tau[i, j] - tau.tau[i, j] - B[i][j]) < mpmath.ldexp(1, -P + 8)


def test_inversion_fixes_i():
    tau = diag_tau([1j, 1j, 1j])
    new, _ = sp_action(SymplecticMatrix.J(3), tau)
    for i in range(3):
        for j in range(3):
            assert abs(new.tau[i, j] - tau.tau[i, j]) < mpmath.ldexp(1, -P + 8)


def test_action_output_is_valid():
    rng = random.Random(13)
    for _ in range(10):
        tau = random_siegel_point(3, rng, 128)
        new, _ = sp_action(random_symplectic_word(3, rng), tau)
        assert new.min_eig_imag() > 0


def test_singular_denominator():
    # M = [[I, 0], [C, I]] with C = diag(1, 0): det(c tau + d) = tau_11 + 1
    M = SymplecticMatrix.from_full([[1, 0, 0, 0], [0, 1, 0, 0], [1, 0, 1, 0], [0, 0, 0, 1]])
    assert M.is_symplectic()
    tau = SiegelPoint.create([[mpmath.mpc(-1, "1e-30"), 0], [0, 1j]], 128)
    with pytest.raises(ConditioningError):
        sp_action(M, tau)


@pytest.mark.parametrize("seed", [0, 1])
def test_weight_18_and_140(seed):
    rng = random.Random(100 + seed)
    tau = random_siegel_point(3, rng, P)
    M = random_symplectic_word(3, rng)
    new, det = sp_action(M, tau)
    p0, p1 = chi_product(3, tau, P), chi_product(3, new, P)
    s0, s1 = sigma140(tau, P), sigma140(new, P)
    with mpmath.workprec(P):
        tol = mpmath.ldexp(1, -P // 2)
        assert abs(p1.value - det**18 * p0.value) <= tol * abs(p1.value)
        assert abs(s1.value - det**140 * s0.value) <= tol * abs(s1.value)
