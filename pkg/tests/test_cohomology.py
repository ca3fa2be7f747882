"""Tests for the torus cohomology model: actions, degrees, class algebra."""

import math
import random

import pytest
import sympy as sp
from sympy import I, Matrix, eye

from toraldyn.exact_algebra import charpoly, exact_equal, exact_is_zero
from toraldyn.cohomology import (
    BudgetExceededError, CohomClass, TorusAutomorphism, classify,
    degree_profile, dynamical_degree, entropy, enumerate_degree_values,
    h11_matrix, hermitian_basis, hermitian_coords, hpp_matrix,
    intersection_number, is_kahler, is_nef, pullback, wedge, wedge_all)

CAT = TorusAutomorphism([[2, 1], [1, 1]], name="cat")
PELL = TorusAutomorphism([[1, 2], [1, 1]], name="pell")
SHEAR = TorusAutomorphism([[1, 1 + I], [0, 1]], name="shear")
ROT = TorusAutomorphism([[0, -1], [1, 0]], name="rot")

GOLDEN_D1 = (7 + 3 * math.sqrt(5)) / 2       # ((3+sqrt 5)/2)^2
CAT_ENTROPY = 2 * math.log((3 + math.sqrt(5)) / 2)
PELL_ENTROPY = 2 * math.log(1 + math.sqrt(2))


# ---------------------------------------------------------------------------
# automorphisms
# ---------------------------------------------------------------------------

def test_automorphism_requires_unit_determinant():
    with pytest.raises(ValueError):
        TorusAutomorphism([[2, 0], [0, 1]])
    with pytest.raises(ValueError):
        TorusAutomorphism([[sp.Rational(1, 2), 0], [0, 2]])
    TorusAutomorphism([[I, 0], [0, 1]])  # det i is fine


def test_automorphism_group_operations():
    assert (CAT.inverse().compose(CAT)).A == eye(2)
    assert CAT.power(2).A == Matrix([[5, 3], [3, 2]])
    assert CAT.power(-1).A == CAT.inverse().A


# ---------------------------------------------------------------------------
# cohomology actions
# ---------------------------------------------------------------------------

def test_h11_identity():
    assert h11_matrix(TorusAutomorphism(eye(3))) == eye(9)


def test_h11_rotation_swaps_diagonal_elements():
    M = h11_matrix(ROT)
    basis = hermitian_basis(2)
    e11 = hermitian_coords(basis[0])
    image = M * Matrix(e11)
    A = ROT.A
    assert list(image) == hermitian_coords(A.H * basis[0] * A)
    assert A.H * basis[0] * A == Matrix([[0, 0], [0, 1]])


def test_h11_matches_direct_conjugation():
    rng = random.Random(3)
    for _ in range(10):
        H = Matrix(2, 2, lambda i, j: rng.randint(-3, 3) +
                   I * rng.randint(-3, 3))
        H = H + H.H
        for f in (CAT, SHEAR, ROT):
            coords = Matrix(hermitian_coords(H))
            direct = sp.expand(f.A.T * H * f.A.conjugate())
            lhs = sp.expand(h11_matrix(f) * coords)
            assert lhs == sp.expand(Matrix(hermitian_coords(direct)))


def test_hpp_edge_degrees():
    assert hpp_matrix(CAT, 0) == eye(1)
    top = hpp_matrix(CAT, 2)
    assert top == eye(1)  # |det A|^2 = 1
    with pytest.raises(ValueError):
        hpp_matrix(CAT, 3)


# ---------------------------------------------------------------------------
# degrees, entropy, classification
# ---------------------------------------------------------------------------

def test_dynamical_degree_examples():
    assert exact_equal(dynamical_degree(TorusAutomorphism(eye(2)), 1).expr, 1)
    assert float(dynamical_degree(CAT, 1)) == pytest.approx(GOLDEN_D1,
                                                            abs=1e-10)
    assert exact_equal(dynamical_degree(PELL, 1).expr, 3 + 2 * sp.sqrt(2))


def test_degree_profile_endpoints():
    prof = degree_profile(CAT, verify=True)
    assert exact_equal(prof.degrees[0].expr, 1)
    assert exact_equal(prof.degrees[-1].expr, 1)
    assert prof.classification == "positive_entropy"


def test_entropy_examples():
    assert float(entropy(CAT)) == pytest.approx(CAT_ENTROPY, abs=1e-9)
    assert float(entropy(PELL)) == pytest.approx(PELL_ENTROPY, abs=1e-9)
    assert exact_is_zero(entropy(SHEAR).expr)
    assert exact_is_zero(entropy(TorusAutomorphism(I * eye(2))).expr)


def test_classify_trichotomy():
    assert classify(CAT) == "positive_entropy"
    assert classify(SHEAR) == "parabolic"
    assert classify(ROT) == "finite_order_on_cohomology"
    assert classify(TorusAutomorphism(I * eye(2))) == \
        "finite_order_on_cohomology"


# ---------------------------------------------------------------------------
# class algebra
# ---------------------------------------------------------------------------

def test_wedge_with_zero():
    c = CohomClass.identity_class(2)
    z = CohomClass.zero(2, 1)
    assert wedge(c, z).is_zero()


def test_wedge_commutative_on_11_classes():
    rng = random.Random(11)
    for _ in range(10):
        H1 = Matrix(3, 3, lambda i, j: rng.randint(-2, 2))
        H2 = Matrix(3, 3, lambda i, j: rng.randint(-2, 2))
        c1 = CohomClass.from_hermitian(H1 + H1.T)
        c2 = CohomClass.from_hermitian(H2 + H2.T)
        assert wedge(c1, c2) == wedge(c2, c1)


def test_wedge_rank_one_classes():
    w = Matrix([1, 0])
    v = Matrix([1, 1])
    cw = CohomClass.from_hermitian(w * w.H)
    cv = CohomClass.from_hermitian(v * v.H)
    assert not wedge(cw, cv).is_zero()
    assert wedge(cw, cw).is_zero()


def test_intersection_examples():
    k2 = [CohomClass.from_hermitian(sp.diag(1, 0)),
          CohomClass.from_hermitian(sp.diag(0, 1))]
    assert intersection_number(k2) == 1
    ident = CohomClass.identity_class(2)
    assert intersection_number([ident, ident]) == 2   # k! det I
    assert intersection_number([ident, CohomClass.zero(2, 1)]) == 0


def test_intersection_is_k_factorial_det():
    rng = random.Random(5)
    for k in (2, 3):
        H = Matrix(k, k, lambda i, j: rng.randint(-2, 2))
        H = H * H.T + eye(k)
        c = CohomClass.from_hermitian(H)
        assert intersection_number([c] * k) == math.factorial(k) * H.det()


def test_intersection_symmetry_and_multilinearity():
    rng = random.Random(13)
    mats = []
    for _ in range(4):
        H = Matrix(3, 3, lambda i, j: rng.randint(-2, 2))
        mats.append(H + H.T)
    c = [CohomClass.from_hermitian(H) for H in mats]
    assert intersection_number([c[0], c[1], c[2]]) == \
        intersection_number([c[2], c[0], c[1]])
    lhs = intersection_number([c[0] + c[3].scale(5), c[1], c[2]])
    rhs = (intersection_number([c[0], c[1], c[2]])
           + 5 * intersection_number([c[3], c[1], c[2]]))
    assert lhs == rhs


def test_pullback_preserves_intersections():
    rng = random.Random(17)
    for f in (CAT, PELL, SHEAR, ROT):
        cs = []
        for _ in range(2):
            H = Matrix(2, 2, lambda i, j: rng.randint(-2, 2))
            cs.append(CohomClass.from_hermitian(H + H.T))
        assert intersection_number([pullback(f, c) for c in cs]) == \
            intersection_number(cs)


def test_pullback_eigenclass_of_pell():
    # adjoint eigenvector of the Pell matrix: A^T w = (1+sqrt 2) w
    w = Matrix([1, sp.sqrt(2)])
    c = CohomClass.from_hermitian(w * w.T)
    image = pullback(PELL, c)
    lam = (1 + sp.sqrt(2)) ** 2
    assert (image - c.scale(lam)).is_zero()


def test_nef_kahler_examples():
    assert is_kahler(CohomClass.identity_class(2))
    c = CohomClass.from_hermitian(sp.diag(1, 0))
    assert is_nef(c) and not is_kahler(c)
    assert not is_nef(CohomClass.from_hermitian(sp.diag(1, -1)))


def test_pullback_preserves_nef():
    c = CohomClass.from_hermitian(sp.diag(1, 0))
    for f in (CAT, SHEAR, ROT):
        assert is_nef(pullback(f, c))


def test_wedge_all_volume_calibration():
    rng = random.Random(23)
    for k in (2, 3):
        mats = []
        for _ in range(k):
            H = Matrix(k, k, lambda i, j: rng.randint(-2, 2))
            mats.append(H + H.T)
        cs = [CohomClass.from_hermitian(H) for H in mats]
        top = wedge_all(cs)
        full = tuple(range(k))
        vol_coeff = top.coeffs.get((full, full), sp.Integer(0))
        # the volume coefficient carries the same data as the polarized det
        assert intersection_number(cs) != 0 or exact_is_zero(vol_coeff)


# ---------------------------------------------------------------------------
# degree-value enumeration
# ---------------------------------------------------------------------------

def test_enumerate_bound_zero_and_one():
    for bound in (0, 1):
        vals = enumerate_degree_values(2, bound)
        assert len(vals) == 1 and exact_equal(vals[0].expr, 1)


def test_enumerate_budget_refusal():
    with pytest.raises(BudgetExceededError):
        enumerate_degree_values(4, 50)
