"""Tests for the group pipeline: characters, the rank of pi, structural
bounds, and the U x free decomposition."""

import math

import pytest
import sympy as sp
from sympy import I, Matrix, eye

from toraldyn.exact_algebra import exact_equal, exact_is_zero
from toraldyn.cohomology import CohomClass, dynamical_degree, pullback
from toraldyn.group_structure import (
    DegenerateSpectrumError, GroupSpec, analyze_group,
    assert_structure_theorems, check_commuting, check_theorem_4_6, decompose,
    find_characters, pi_rank, verify_zero_entropy_word, word_automorphism)

PELL = GroupSpec.from_matrices([[[1, 2], [1, 1]]], ("pell",))
PELL_PAIR = GroupSpec.from_matrices(
    [[[1, 2], [1, 1]], [[-1, 2], [1, -1]]], ("pell", "pell_inv"))
PELL_TORSION = GroupSpec.from_matrices(
    [[[1, 2], [1, 1]], (I * eye(2)).tolist()], ("pell", "i"))
PARABOLIC = GroupSpec.from_matrices(
    [[[1, 1], [0, 1]], [[1, I], [0, 1]]], ("s1", "si"))
IDENTITY = GroupSpec.from_matrices([eye(2).tolist()], ("id",))


def test_pell_inverse_sanity():
    a, b = PELL_PAIR.generators
    assert a.A * b.A == eye(2)


# ---------------------------------------------------------------------------
# commutativity
# ---------------------------------------------------------------------------

def test_commuting_examples():
    assert check_commuting(PELL_TORSION).commutes
    assert check_commuting(PELL).commutes
    bad = GroupSpec.from_matrices([[[2, 1], [1, 1]], [[1, 1], [0, 1]]])
    rep = check_commuting(bad)
    assert not rep.commutes and rep.witness == (0, 1)


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------

def test_pell_characters():
    table = find_characters(PELL)
    assert table.m == 2 and table.semisimple
    vals = sorted(float(m) for ch in table.characters
                  for m in ch.modulus_squared)
    assert vals[0] == pytest.approx(3 - 2 * math.sqrt(2), abs=1e-12)
    assert vals[1] == pytest.approx(3 + 2 * math.sqrt(2), abs=1e-12)
    taus = sorted(float(t) for ch in table.characters for t in ch.taus())
    golden = 2 * math.log(1 + math.sqrt(2))
    assert taus[0] == pytest.approx(-golden, abs=1e-9)
    assert taus[1] == pytest.approx(golden, abs=1e-9)


def test_identity_group_characters():
    table = find_characters(IDENTITY)
    assert table.m <= 1
    for ch in table.characters:
        assert all(exact_is_zero(t.expr) for t in ch.taus())


def test_character_eigenclasses_exact():
    for spec in (PELL, PELL_TORSION):
        table = find_characters(spec)
        for ch in table.characters:
            for g, msq in zip(spec.generators, ch.modulus_squared):
                diff = pullback(g, ch.eigenclass) - ch.eigenclass.scale(msq)
                assert diff.is_zero()


def test_characters_attain_d1():
    table = find_characters(PELL)
    d1 = dynamical_degree(PELL.generators[0], 1).expr
    attained = any(exact_equal(ch.modulus_squared[0], d1)
                   for ch in table.characters)
    assert attained


def test_parabolic_family_has_no_characters():
    table = find_characters(PARABOLIC)
    assert table.m == 0
    assert not table.semisimple


def test_degenerate_spectrum_rejected_when_positive_entropy():
    # a defective positive-entropy generator: 2x2 Jordan-style block over
    # the Pell matrix
    M = Matrix([[1, 2], [1, 1]])
    J = Matrix(sp.BlockMatrix([[M, eye(2)], [sp.zeros(2, 2), M]]))
    spec = GroupSpec.from_matrices([J.tolist()])
    with pytest.raises(DegenerateSpectrumError):
        find_characters(spec)


# ---------------------------------------------------------------------------
# zero-entropy word certificates
# ---------------------------------------------------------------------------

def test_verify_zero_entropy_word_examples():
    assert verify_zero_entropy_word(PELL, [0])
    assert not verify_zero_entropy_word(PELL, [1])
    assert verify_zero_entropy_word(PELL_PAIR, [1, 1])
    assert not verify_zero_entropy_word(PELL_PAIR, [1, -1])
    assert verify_zero_entropy_word(PELL_TORSION, [0, 3])


def test_word_automorphism_matches_matrix_product():
    w = word_automorphism(PELL_PAIR, [2, 1])
    a, b = (g.A for g in PELL_PAIR.generators)
    assert w.A == a**2 * b


# ---------------------------------------------------------------------------
# the rank of pi
# ---------------------------------------------------------------------------

def test_pi_rank_pell():
    table = find_characters(PELL)
    res = pi_rank(PELL, table)
    assert res.rank == 1 and res.kernel.basis == ()


def test_pi_rank_inverse_pair():
    table = find_characters(PELL_PAIR)
    res = pi_rank(PELL_PAIR, table)
    assert res.rank == 1
    assert [list(v) for v in res.kernel.basis] == [[1, 1]]


def test_pi_rank_parabolic():
    table = find_characters(PARABOLIC)
    res = pi_rank(PARABOLIC, table)
    assert res.rank == 0
    assert Matrix([list(v) for v in res.kernel.basis]).rank() == 2


def test_pi_is_additive_on_words():
    table = find_characters(PELL_TORSION)
    taus = [ch.taus() for ch in table.characters]
    # pi(e + e') = pi(e) + pi(e') holds by construction: coordinates are
    # integer combinations of per-generator character values
    for ch in table.characters:
        v = [float(t) for t in ch.taus()]
        e1, e2 = [2, 1], [1, -1]
        lhs = sum((a + b) * x for a, b, x in zip(e1, e2, v))
        rhs = sum(a * x for a, x in zip(e1, v)) + \
            sum(b * x for b, x in zip(e2, v))
        assert lhs == pytest.approx(rhs, abs=1e-12)


# ---------------------------------------------------------------------------
# structural assertions
# ---------------------------------------------------------------------------

def test_structure_pell():
    res = pi_rank(PELL, find_characters(PELL))
    rep = assert_structure_theorems(PELL, res)
    assert rep.rank == 1 and rep.rank_bound_ok
    assert rep.binomial_bounds == [(1, 1, 4, 3, True)]
    assert rep.wedge_chain_length == 2 and rep.wedge_chain_ok
    assert rep.positive_entropy_certified


def test_structure_identity_group():
    res = pi_rank(IDENTITY, find_characters(IDENTITY))
    rep = assert_structure_theorems(IDENTITY, res)
    assert rep.rank == 0 and rep.rank_bound_ok
    assert rep.binomial_bounds == []


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------

def test_decompose_pell_plus_torsion():
    dec = decompose(PELL_TORSION)
    assert dec.rank == 1
    assert dec.u_finite and dec.u_order == 4
    assert dec.free_words == [[1, 0]]
    assert dec.u_words == [[0, 1]]


def test_decompose_parabolic_whole_group_is_u():
    dec = decompose(PARABOLIC)
    assert dec.rank == 0 and dec.free_words == []
    assert not dec.u_finite
    assert Matrix(dec.u_words).rank() == 2


def test_decompose_single_generator():
    dec = decompose(PELL)
    assert dec.rank == 1 and dec.free_words == [[1]] and dec.u_words == []


def test_decompose_merge_reconstructs_group():
    # U-words and free-words together form a finite-index (here full)
    # basis of the word lattice: the stacked matrix is unimodular
    for spec in (PELL, PELL_PAIR, PELL_TORSION, PARABOLIC):
        dec = decompose(spec)
        rows = [list(w) for w in dec.u_words] + \
            [list(w) for w in dec.free_words]
        M = Matrix(rows)
        assert M.rows == spec.n and abs(M.det()) == 1


# ---------------------------------------------------------------------------
# invariant-class structure theorem
# ---------------------------------------------------------------------------

def test_theorem_4_6_pell_eigenclass():
    w = Matrix([1, sp.sqrt(2)])
    c = CohomClass.from_hermitian(w * w.T)
    rep = check_theorem_4_6(PELL, [c])
    assert rep.status == "holds"


def test_theorem_4_6_zero_wedge_vacuous():
    rep = check_theorem_4_6(PELL, [CohomClass.zero(2, 1)])
    assert rep.status == "vacuous"


def test_theorem_4_6_non_invariant_vacuous():
    rep = check_theorem_4_6(PELL, [CohomClass.identity_class(2)])
    assert rep.status == "vacuous"


# ---------------------------------------------------------------------------
# full pipeline
# ---------------------------------------------------------------------------

def test_analyze_group_pipeline():
    out = analyze_group(PELL_TORSION)
    assert out.commuting.commutes
    assert out.classifications == ["positive_entropy",
                                   "finite_order_on_cohomology"]
    assert out.rank.rank == 1
    assert out.decomposition.u_order == 4


def test_analyze_group_stops_on_non_commuting():
    bad = GroupSpec.from_matrices([[[2, 1], [1, 1]], [[1, 1], [0, 1]]])
    out = analyze_group(bad)
    assert not out.commuting.commutes
    assert out.table is None and out.rank is None
