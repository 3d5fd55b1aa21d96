import mpmath
import pytest

from jacrec.errors import InvalidInput
from jacrec.invariants import TernaryForm
from jacrec.periods import (
    AffineCurve,
    PeriodMatrix,
    branch_points,
    classical_differentials,
    compute_periods,
    homology_symplectic_basis,
    hyperelliptic_curve,
    monodromy,
    plane_quartic_curve,
)
from jacrec.periods.tracking import cycle_type
from jacrec.theta import chi_product

from helpers import random_quartic

FERMAT = TernaryForm.from_expr("x^4 + y^4 + z^4")


def standard_J(g):
    return tuple(tuple(1 if c == r + g else -1 if r == c + g else 0 for c in range(2 * g)) for r in range(2 * g))


@pytest.fixture(scope="module")
def fermat_run():
    return compute_periods(plane_quartic_curve(FERMAT))


@pytest.fixture(scope="module")
def generic_run():
    return compute_periods(plane_quartic_curve(random_quartic(7)))


@pytest.fixture(scope="module")
def x8_run():
    return compute_periods(hyperelliptic_curve([-1, 0, 0, 0, 0, 0, 0, 0, 1]))


# -- curves and differentials ----------------------------------------------------


def test_classical_differentials_fermat():
    nums = classical_differentials(FERMAT)
    assert nums == [{(1, 0): 1}, {(0, 1): 1}, {(0, 0): 1}]


def test_singular_quartic_rejected():
    with pytest.raises(InvalidInput):
        classical_differentials(TernaryForm.from_expr("x^4 + y^4 + x*y*z^2"))


def test_non_squarefree_hyperelliptic_rejected():
    # (x^2 - 1)^2 (x^4 + 1) has a double root
    with pytest.raises(InvalidInput):
        hyperelliptic_curve([1, 0, -2, 0, 2, 0, -2, 0, 1])


def test_degree_seven_curve_has_genus_three():
    C = hyperelliptic_curve([1, 0, -2, 0, 1, 0, 0, 1])
    assert C.genus == 3


def test_admissibility_change_of_coordinates():
    # no y^4 term: the projection from (0:1:0) is not admissible as given
    F = TernaryForm.from_expr("x^4 + x*y^3 + z^4 + y^3*z")
    C = plane_quartic_curve(F)
    assert C.form.coefficient((0, 4, 0)) != 0


# -- branch points and monodromy -------------------------------------------------


def test_square_root_curve():
    C = AffineCurve({(0, 2): 1, (2, 0): -1, (0, 0): 1}, (), 0)
    pts = sorted(branch_points(C), key=lambda b: b.real)
    assert pytest.approx(pts[0], abs=1e-12) == -1 and pytest.approx(pts[1], abs=1e-12) == 1
    M = monodromy(C)
    assert M.permutations == ((1, 0), (1, 0))
    assert M.product() == (0, 1)


def test_fermat_monodromy(fermat_run):
    _, M, _ = fermat_run
    assert len(M.points) == 4
    for b in M.points:
        assert abs(b**4 + 1) < 1e-12
    assert all(cycle_type(p) == [4] for p in M.permutations)
    assert M.total_deficiency() == 12
    assert M.product() == tuple(range(4)) and M.is_transitive()


def test_generic_monodromy(generic_run):
    _, M, _ = generic_run
    assert len(M.points) == 12
    assert all(cycle_type(p) == [2, 1, 1] for p in M.permutations)
    assert M.total_deficiency() == 12 and M.genus() == 3


def test_x8_monodromy(x8_run):
    _, M, H = x8_run
    assert len(M.points) == 8
    assert all(p == (1, 0) for p in M.permutations)
    assert M.total_deficiency() == 8 and H.genus == 3


def test_degree_seven_branching_at_infinity():
    C = hyperelliptic_curve([0, 1, 0, 0, 0, 0, 0, 1])  # x^7 + x
    M = monodromy(C)
    assert len(M.points) == 7
    assert M.infinity == (1, 0)
    assert M.total_deficiency() == 8
    M.check(3)


# -- homology --------------------------------------------------------------------


@pytest.mark.parametrize("run", ["fermat_run", "generic_run", "x8_run"])
def test_symplectic_basis(run, request):
    _, M, H = request.getfixturevalue(run)
    assert H.genus == 3
    assert H.intersection == standard_J(3)
    again = homology_symplectic_basis(M)
    assert again.cycles == H.cycles


def test_reduction_certificate_unimodular(generic_run):
    _, _, H = generic_run
    import sympy

    assert abs(sympy.Matrix(H.certificate).det()) == 1


# -- periods ---------------------------------------------------------------------


@pytest.mark.parametrize("run", ["fermat_run", "generic_run", "x8_run"])
def test_riemann_relations(run, request):
    Om, _, _ = request.getfixturevalue(run)
    assert Om.symmetry_residual() < 1e-9
    assert Om.tau(128).min_eig_imag() > 0
    d = Om.diagnostics
    assert d["rh_check"]["genus"] == 3 and "min_eig_im_tau" in d


def _weight18_modulus(Om):
    P = chi_product(3, Om.tau(128), 128).value
    with mpmath.workprec(128):
        return abs(P) / abs(mpmath.det(Om.omega2)) ** 18


def test_base_point_invariance(generic_run):
    Om, _, _ = generic_run
    other = compute_periods(plane_quartic_curve(random_quartic(7)), variant=1)[0]
    a, b = _weight18_modulus(Om), _weight18_modulus(other)
    assert abs(a / b - 1) < 1e-6


def test_scaling_leaves_tau(fermat_run):
    Om, _, _ = fermat_run
    lam = mpmath.mpc("1.7", "-0.3")
    T0, T1 = Om.tau_matrix(), Om.scaled(lam).tau_matrix()
    assert max(abs(T0[i, j] - T1[i, j]) for i in range(3) for j in range(3)) < 1e-12


def test_period_json_round_trip(fermat_run):
    Om, _, _ = fermat_run
    back = PeriodMatrix.from_json(Om.to_json())
    assert back.g == 3
    assert mpmath.mnorm(back.omega1 - Om.omega1, 1) < 1e-14


def test_high_precision_periods_fermat():
    Om = compute_periods(plane_quartic_curve(FERMAT), 128)[0]
    assert Om.symmetry_residual() < 2.0**-64
    dbl = compute_periods(plane_quartic_curve(FERMAT))[0]
    with mpmath.workprec(128):
        assert mpmath.mnorm(Om.tau_matrix() - dbl.tau_matrix(), 1) < 1e-9
