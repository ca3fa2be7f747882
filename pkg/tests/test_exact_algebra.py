"""Tests for the exact linear/polynomial algebra layer."""

import itertools
import math
from fractions import Fraction

import pytest
import sympy as sp
from sympy import I, Matrix, eye

from toraldyn.exact_algebra import (
    X, AlgebraicReal, CertifiedReal, ExactAlgebraError, INFINITE_ORDER,
    IntegerLattice, charpoly, exact_equal, exact_is_zero, exact_sign,
    finite_order_bound, hermite_smith, integer_relations,
    is_cyclotomic_product, is_unimodular, matrix_order, root_moduli,
    spectral_radius)


# ---------------------------------------------------------------------------
# charpoly
# ---------------------------------------------------------------------------

def test_charpoly_cat_map():
    p = charpoly(Matrix([[2, 1], [1, 1]]))
    assert p == sp.Poly(X**2 - 3 * X + 1, X)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_charpoly_identity(n):
    assert charpoly(eye(n)) == sp.Poly((X - 1) ** n, X)


def test_charpoly_h11_unipotent_gaussian():
    # H^{1,1} action of [[1, 1+i], [0, 1]]; the oracle is the direct
    # conjugation H |-> A^H H A on the four Hermitian basis elements
    from toraldyn.cohomology import TorusAutomorphism, h11_matrix
    f = TorusAutomorphism([[1, 1 + I], [0, 1]])
    M = h11_matrix(f)
    assert charpoly(M) == sp.Poly((X - 1) ** 4, X)
    A = Matrix([[1, 1 + I], [0, 1]])
    from toraldyn.cohomology import hermitian_basis, hermitian_coords
    cols = [hermitian_coords(A.T * E * A.conjugate())
            for E in hermitian_basis(2)]
    oracle = Matrix.hstack(*[Matrix(c) for c in cols])
    assert charpoly(oracle) == sp.Poly((X - 1) ** 4, X)


def test_charpoly_gaussian_entries():
    p = charpoly(Matrix([[I, 0], [0, -I]]))
    assert p == sp.Poly(X**2 + 1, X)


def test_charpoly_rejects_non_square():
    with pytest.raises(ExactAlgebraError):
        charpoly(Matrix([[1, 2, 3]]))


# ---------------------------------------------------------------------------
# root moduli
# ---------------------------------------------------------------------------

def _moduli_floats(p):
    return [(float(m), mult) for m, mult in root_moduli(p)]


def test_root_moduli_cat_charpoly():
    vals = _moduli_floats(X**2 - 3 * X + 1)
    golden = (3 + math.sqrt(5)) / 2
    assert len(vals) == 2
    assert vals[0][0] == pytest.approx(golden, abs=1e-12)
    assert vals[1][0] == pytest.approx(1 / golden, abs=1e-12)
    assert [m for _, m in vals] == [1, 1]


def test_root_moduli_roots_of_unity_merge():
    vals = root_moduli(X**4 - 1)
    assert len(vals) == 1
    m, mult = vals[0]
    assert exact_is_zero(m.expr - 1) and mult == 4


def test_root_moduli_fibonacci():
    vals = _moduli_floats(X**2 - X - 1)
    phi = (1 + math.sqrt(5)) / 2
    assert vals[0][0] == pytest.approx(phi, abs=1e-12)
    assert vals[1][0] == pytest.approx(phi - 1, abs=1e-12)


def test_root_moduli_zero_rejected():
    with pytest.raises(ExactAlgebraError):
        root_moduli(sp.Poly(0, X, domain="ZZ"))


def test_unit_determinant_moduli_product_is_one():
    # product over all root moduli (with multiplicity) of a unit-determinant
    # integer matrix equals 1 exactly
    for rows in ([[2, 1], [1, 1]], [[1, 2], [1, 1]], [[0, -1], [1, 0]],
                 [[3, 2, 1], [1, 1, 0], [1, 1, 1]]):
        p = charpoly(Matrix(rows))
        prod = sp.Integer(1)
        for m, mult in root_moduli(p):
            prod *= m.expr ** mult
        assert exact_is_zero(sp.expand(prod - 1) if prod.is_Number
                             else prod - 1) or exact_equal(prod, 1)


# ---------------------------------------------------------------------------
# cyclotomic products and matrix orders
# ---------------------------------------------------------------------------

def test_cyclotomic_examples():
    assert is_cyclotomic_product((X - 1) ** 4)
    assert not is_cyclotomic_product(X**2 - 3 * X + 1)
    assert is_cyclotomic_product(X**2 + X + 1)
    assert is_cyclotomic_product(sp.Poly(1, X, domain="ZZ"))


def test_cyclotomic_rejects_non_monic():
    with pytest.raises(ExactAlgebraError):
        is_cyclotomic_product(2 * X - 2)


def test_cyclotomic_vs_moduli_cross_check_exhaustive_deg2():
    # Kronecker: all roots on the unit circle iff every factor is cyclotomic
    for b, c in itertools.product(range(-3, 4), repeat=2):
        p = sp.Poly(X**2 + b * X + c, X)
        if c == 0:
            continue  # zero root; modulus 0, not covered by the equivalence
        mods = root_moduli(p)
        all_one = (len(mods) == 1 and exact_is_zero(mods[0][0].expr - 1))
        assert is_cyclotomic_product(p) == all_one, (b, c)


def test_matrix_order_examples():
    assert matrix_order(Matrix([[0, -1], [1, 0]])) == 4
    assert matrix_order(eye(3)) == 1
    assert matrix_order(Matrix([[1, 1], [0, 1]])) == INFINITE_ORDER
    assert matrix_order(Matrix([[2, 1], [1, 1]])) == INFINITE_ORDER
    assert matrix_order(Matrix([[-1, 0], [0, -1]])) == 2


def test_matrix_order_respects_bound():
    assert matrix_order(Matrix([[0, -1], [1, 0]]), bound=3) == INFINITE_ORDER


def test_finite_order_bound_small_dims():
    # dim 1: orders 1, 2 -> lcm 2; dim 2 adds 3, 4, 6 -> lcm 12
    assert finite_order_bound(1) == 2
    assert finite_order_bound(2) == 12
    assert finite_order_bound(4) % 12 == 0


# ---------------------------------------------------------------------------
# lattices
# ---------------------------------------------------------------------------

def test_smith_diag_2_3():
    res = hermite_smith(IntegerLattice(2, ((2, 0), (0, 3))))
    assert res.invariant_factors == (1, 6)
    assert is_unimodular([list(r) for r in res.smith_row_transform])
    assert is_unimodular([list(r) for r in res.smith_col_transform])


def test_hermite_identity():
    res = hermite_smith(IntegerLattice(3, tuple(tuple(r) for r in
                                                eye(3).tolist())))
    assert res.rank == 3
    assert Matrix(res.hermite) == eye(3)


def test_hermite_single_vector():
    res = hermite_smith(IntegerLattice(2, ((2, 4),)))
    assert res.rank == 1
    assert res.hermite[0] in ((2, 4), (-2, -4))


def test_hermite_smith_idempotent_and_oracle():
    from sympy.matrices.normalforms import (hermite_normal_form,
                                            smith_normal_form)
    import random
    rng = random.Random(7)
    for _ in range(20):
        rows = tuple(tuple(rng.randint(-5, 5) for _ in range(3))
                     for _ in range(3))
        lat = IntegerLattice(3, rows)
        res = hermite_smith(lat)
        # transforms actually produce the normal forms
        A = Matrix([list(r) for r in rows])
        assert Matrix(res.hermite) == Matrix(res.hermite_transform) * A
        assert (Matrix(res.smith) ==
                Matrix(res.smith_row_transform) * A
                * Matrix(res.smith_col_transform))
        # invariant factors agree with sympy's Smith form
        if A.rank() == 3:
            sm = smith_normal_form(A)
            ours = sorted(abs(v) for v in res.invariant_factors)
            theirs = sorted(abs(sm[i, i]) for i in range(3) if sm[i, i] != 0)
            assert ours == theirs
        # idempotence
        again = hermite_smith(IntegerLattice(3, res.hermite))
        assert again.hermite == res.hermite


def test_lattice_rejects_wrong_length():
    with pytest.raises(ExactAlgebraError):
        IntegerLattice(2, ((1, 2, 3),))


# ---------------------------------------------------------------------------
# integer relation candidates
# ---------------------------------------------------------------------------

def test_relation_ln2_ln4():
    cands = integer_relations([sp.log(2), sp.log(4)])
    assert [2, -1] in cands


def test_relation_tau_minus_tau():
    t = sp.log(1 + sp.sqrt(2))
    cands = integer_relations([t, -t])
    assert [1, 1] in cands


def test_no_relation_ln2_ln3():
    cands = integer_relations([sp.log(2), sp.log(3)],
                              tolerance=Fraction(1, 10**12))
    # oracle: exhaustive search over |e_i| <= 50 finds no relation
    l2, l3 = math.log(2), math.log(3)
    for a in range(-50, 51):
        for b in range(-50, 51):
            if (a, b) != (0, 0):
                assert abs(a * l2 + b * l3) > 1e-12
    for e in cands:
        assert max(abs(v) for v in e) > 50 or \
            abs(e[0] * l2 + e[1] * l3) > 1e-12


# ---------------------------------------------------------------------------
# certified reals
# ---------------------------------------------------------------------------

def test_certified_real_enclosure_shrinks():
    v = CertifiedReal(sp.sqrt(2))
    lo, hi = v.enclosure(Fraction(1, 10**20))
    assert hi - lo <= 2 * Fraction(1, 10**20)
    assert lo * lo <= 2 <= hi * hi  # sqrt(2) really lies in [lo, hi]


def test_algebraic_real_min_poly():
    a = AlgebraicReal(sp.sqrt(2) + 1)
    assert a.minimal_polynomial == sp.Poly(X**2 - 2 * X - 1, X)


def test_exact_sign_and_equality():
    assert exact_sign(sp.sqrt(2) - 1) == 1
    assert exact_sign(1 - sp.sqrt(2)) == -1
    assert exact_sign(sp.sqrt(2) ** 2 - 2) == 0
    assert exact_equal(sp.sqrt(8), 2 * sp.sqrt(2))
    assert not exact_equal(sp.sqrt(2), Fraction(141421356, 10**8))


def test_spectral_radius_cat():
    rho = spectral_radius(Matrix([[2, 1], [1, 1]]))
    assert float(rho) == pytest.approx((3 + math.sqrt(5)) / 2, abs=1e-12)
