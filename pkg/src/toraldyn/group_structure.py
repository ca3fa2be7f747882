"""Structure of commuting automorphism groups on cohomology.

A finitely generated commuting family of torus automorphisms acts on the
invariant nef directions through multiplicative characters.  Taking logs of
the character values gives a homomorphism pi into R^m whose kernel is exactly
the set of zero-entropy words; the quotient is free abelian of rank r <= k-1.
This module computes the characters from common eigenvectors, certifies the
kernel of pi with exact cyclotomic tests, checks the structural bounds, and
splits the group into a zero-entropy part U and a free positive-entropy
complement.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import sympy as sp
from sympy import Matrix, eye

from .cohomology import (
    CohomClass,
    TorusAutomorphism,
    h11_matrix,
    is_nef,
    pullback,
    wedge_all,
)
from .exact_algebra import (
    INFINITE_ORDER,
    CertifiedReal,
    ExactAlgebraError,
    IntegerLattice,
    charpoly,
    exact_equal,
    exact_is_zero,
    finite_order_bound,
    hermite_normal_form_rows,
    hermite_smith,
    integer_relations,
    is_cyclotomic_product,
    matrix_order,
    smith_normal_form_with_transforms,
)

ENUMERATION_CAP = 10**6


class DegenerateSpectrumError(ExactAlgebraError):
    """Raised for non-semisimple families whose character analysis would be
    incomplete: ``degenerate_spectrum_unsupported``."""

    def __init__(self, detail: str = ""):
        msg = "degenerate_spectrum_unsupported"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


@dataclass(frozen=True)
class GroupSpec:
    """Finitely many torus automorphisms generating a matrix group."""
    generators: tuple
    labels: tuple = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise ValueError("at least one generator required")
        k = gens[0].k
        if any(g.k != k for g in gens):
            raise ValueError("generators must act on the same torus")
        labels = tuple(self.labels) or tuple(
            g.name or f"g{j}" for j, g in enumerate(gens))
        if len(labels) != len(gens):
            raise ValueError("one label per generator")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_matrices(cls, mats, labels=()):
        return cls(tuple(TorusAutomorphism(M) for M in mats), tuple(labels))

    @property
    def k(self) -> int:
        return self.generators[0].k

    @property
    def n(self) -> int:
        return len(self.generators)


@dataclass
class CommutingReport:
    commutes: bool
    witness: tuple | None = None   # (i, j) indices of a non-commuting pair


def check_commuting(spec: GroupSpec) -> CommutingReport:
    """Exact pairwise commutator test; witness is the first failing pair."""
    gens = spec.generators
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if gens[i].A * gens[j].A != gens[j].A * gens[i].A:
                return CommutingReport(False, (i, j))
    return CommutingReport(True)


# ---------------------------------------------------------------------------
# characters from common eigenvectors


def _first_nonzero(vec: Matrix) -> int:
    for i in range(vec.rows):
        if not exact_is_zero(vec[i]):
            return i
    raise ExactAlgebraError("zero eigenvector")


def _simple_spectrum_eigensystem(spec: GroupSpec, M: Matrix, p: sp.Poly):
    """Common eigenvectors when one generator has all-distinct eigenvalues.

    Each eigenline of that generator is preserved by everything commuting
    with it, so the joint eigenvectors are exactly its eigenvectors: the
    nonzero columns of adj(theta*I - M) at each root theta.  All arithmetic
    happens on polynomials modulo the root's minimal polynomial; the root
    itself is substituted only into the final expressions."""
    from .exact_algebra import X
    k = spec.k
    adj = (X * eye(k) - M).adjugate()
    out = []
    for factor, _mult in sp.factor_list(p.as_expr())[1]:
        fpoly = sp.Poly(factor, X)

        def reduce(expr):
            return sp.rem(sp.expand(expr), factor, X)

        def conj_coeffs(expr):
            q = sp.Poly(sp.expand(expr), X)
            return sp.Add(*[sp.conjugate(c) * X ** e
                            for (e,), c in q.terms()], sp.Integer(0))

        w_poly = None
        for j in range(k):
            col = adj[:, j].applyfunc(reduce)
            if any(v != 0 for v in col):
                w_poly = col
                break
        if w_poly is None:
            raise ExactAlgebraError("vanishing adjugate at a simple factor")
        i0 = next(i for i in range(k) if w_poly[i] != 0)
        inv = sp.invert(w_poly[i0], factor, X)
        mu_polys = []
        for g in spec.generators:
            u = (Matrix(g.A).T * w_poly).applyfunc(reduce)
            mu = reduce(u[i0] * inv)
            diff = (u - mu * w_poly).applyfunc(reduce)
            if any(v != 0 for v in diff):
                raise ExactAlgebraError("eigenline not preserved "
                                        "(generators do not commute?)")
            mu_polys.append(mu)
        roots = fpoly.all_roots() if fpoly.degree() > 1 else \
            [sp.Rational(-fpoly.all_coeffs()[1], fpoly.all_coeffs()[0])]
        for theta in roots:
            theta_conj = sp.conjugate(theta)
            w = w_poly.applyfunc(lambda v: v.subs(X, theta))
            mus = []
            modsq = []
            for mu in mu_polys:
                mu_bar = conj_coeffs(mu)
                if theta_conj == theta:
                    msq = reduce(mu * mu_bar).subs(X, theta)
                else:
                    msq = sp.expand(mu.subs(X, theta)
                                    * mu_bar.subs(X, theta_conj))
                mus.append(mu.subs(X, theta))
                modsq.append(sp.expand(msq))
            out.append((w, tuple(mus), tuple(modsq)))
    return out


def _recursive_eigensystem(spec: GroupSpec):
    """Fallback common-eigenvector search by splitting eigenspaces.

    Every joint generalized eigenspace of a commuting family contains a
    common eigenvector, so every realizable system of eigenvalue moduli is
    found even when the family is not semisimple."""
    mats = [Matrix(g.A).T for g in spec.generators]
    k = spec.k
    state = {"semisimple": True}

    def rec(B: Matrix, rest):
        if B.cols == 1 or not rest:
            # a 1-dim invariant subspace is a common eigenline; with no
            # matrices left every vector of the subspace is eigen
            return [B.col(j) for j in range(B.cols)]
        M = rest[0]
        R = (B.H * B).inv() * (B.H * (M * B))
        R = R.applyfunc(lambda v: sp.simplify(v))
        residual = M * B - B * R
        if not all(exact_is_zero(v) for v in residual):
            raise ExactAlgebraError("subspace not invariant (generators "
                                    "do not commute?)")
        out = []
        covered = 0
        for _val, mult, vecs in R.eigenvects():
            covered += len(vecs)
            if len(vecs) < mult:
                state["semisimple"] = False
            sub = Matrix.hstack(*[B * v for v in vecs])
            out.extend(rec(sub, rest[1:]))
        if covered < R.rows:
            state["semisimple"] = False
        return out

    vecs = rec(eye(k), mats)
    out = []
    for w in vecs:
        _mus, modsq = _eigen_data(spec, w)
        out.append((w, _mus, modsq))
    return out, state["semisimple"]


def _common_eigenvectors(spec: GroupSpec):
    """All common eigenvectors with exact per-generator eigen data.

    Returns (list of (vector, eigenvalues, moduli_squared), semisimple)."""
    for g in spec.generators:
        p = charpoly(Matrix(g.A))
        if any(sp.im(c) != 0 for c in p.all_coeffs()):
            continue
        if sp.gcd(p, p.diff()).degree() == 0:
            # distinct eigenvalues force the joint eigenlines
            return (_simple_spectrum_eigensystem(spec, Matrix(g.A).T, p),
                    True)
    return _recursive_eigensystem(spec)


@dataclass
class Character:
    """A multiplicative character of the group on an invariant nef class."""
    eigenvector: Matrix
    modulus_squared: tuple     # exact |mu_j|^2 per generator
    eigenclass: CohomClass     # w w^H, a nef rank-one class

    def taus(self):
        """log of the per-generator multipliers, as certified reals."""
        return tuple(
            CertifiedReal(0) if exact_equal(m, 1) else CertifiedReal(sp.log(m))
            for m in self.modulus_squared)

    def is_trivial(self) -> bool:
        return all(exact_equal(m, 1) for m in self.modulus_squared)


@dataclass
class CharacterTable:
    k: int
    characters: list           # nontrivial characters only
    eigenvectors: list         # all (vector, modulus_squared tuple) found
    semisimple: bool

    @property
    def m(self) -> int:
        return len(self.characters)


def _eigen_data(spec: GroupSpec, w: Matrix):
    """Exact per-generator eigenvalue and |eigenvalue|^2 for a common
    eigenvector of the transposed family."""
    i0 = _first_nonzero(w)
    mus = []
    modsq = []
    for g in spec.generators:
        u = Matrix(g.A).T * w
        mu = sp.simplify(u[i0] / w[i0])
        diff = u - mu * w
        if not all(exact_is_zero(sp.expand(v)) for v in diff):
            raise ExactAlgebraError("not a common eigenvector")
        mus.append(mu)
        modsq.append(sp.simplify(sp.expand(mu * sp.conjugate(mu))))
    return tuple(mus), tuple(modsq)


def find_characters(spec: GroupSpec) -> CharacterTable:
    """Characters of the group on its invariant nef directions.

    Each common eigenvector w of the transposed generators yields the nef
    eigenclass w w^H with pullback multiplier |mu_j|^2 under generator j.
    The trivial character (all multipliers 1) is dropped; the rest are
    deduplicated exactly.  Non-semisimple families are supported as long as
    every generator has zero entropy (their characters are all trivial);
    a non-semisimple family with a positive-entropy generator is rejected.
    """
    comm = check_commuting(spec)
    if not comm.commutes:
        raise ValueError(f"generators {comm.witness} do not commute")
    systems, semisimple = _common_eigenvectors(spec)
    eigenvectors = []
    characters = []
    for w, _mus, modsq in systems:
        eigenvectors.append((w, modsq))
        if all(exact_equal(m, 1) for m in modsq):
            continue
        if any(all(exact_equal(a, b) for a, b in zip(modsq, c.modulus_squared))
               for c in characters):
            continue
        cls = CohomClass.from_hermitian(w * w.H)
        characters.append(Character(w, modsq, cls))
    if not semisimple and any(
            not is_cyclotomic_product(charpoly(h11_matrix(g)))
            for g in spec.generators):
        raise DegenerateSpectrumError(
            "non-semisimple family with a positive-entropy generator")
    table = CharacterTable(spec.k, characters, eigenvectors, semisimple)
    _validate_characters(spec, table)
    return table


def _largest_modulus_squared(g: TorusAutomorphism):
    from .cohomology import _moduli_squared_desc
    return _moduli_squared_desc(g)[0]


def _validate_characters(spec: GroupSpec, table: CharacterTable):
    k = spec.k
    if table.m > k * k:
        raise AssertionError(
            f"THEOREM VIOLATION: {table.m} characters exceed h1 = {k * k}")
    for c in table.characters:
        if not is_nef(c.eigenclass) or c.eigenclass.is_zero():
            raise AssertionError("THEOREM VIOLATION: eigenclass not nef")
        for j, g in enumerate(spec.generators):
            diff = pullback(g, c.eigenclass) - c.eigenclass.scale(
                c.modulus_squared[j])
            if not diff.is_zero():
                raise AssertionError(
                    "THEOREM VIOLATION: eigenclass multiplier mismatch")
    # the top degree d1 of each positive-entropy generator is attained
    for j, g in enumerate(spec.generators):
        if is_cyclotomic_product(charpoly(h11_matrix(g))):
            continue
        d1 = _largest_modulus_squared(g)
        if not any(exact_equal(c.modulus_squared[j], d1)
                   for c in table.characters):
            raise AssertionError(
                "THEOREM VIOLATION: no invariant nef class attains d1")


# ---------------------------------------------------------------------------
# words and the kernel of pi


def word_automorphism(spec: GroupSpec, e) -> TorusAutomorphism:
    """The group element with exponent vector e over the generators."""
    acc = eye(spec.k)
    for g, ej in zip(spec.generators, e):
        if ej:
            acc = acc * Matrix(g.power(int(ej)).A)
    return TorusAutomorphism(acc, name="word")


def verify_zero_entropy_word(spec: GroupSpec, e) -> bool:
    """Exact zero-entropy certificate for the word with exponents e:
    the (1,1) action of the word has a cyclotomic-product charpoly."""
    w = word_automorphism(spec, e)
    return is_cyclotomic_product(charpoly(h11_matrix(w)))


@dataclass
class PiRankResult:
    rank: int
    kernel: IntegerLattice
    m: int                     # number of pi coordinates


def _kernel_candidates(spec: GroupSpec, table: CharacterTable):
    """Iterative lattice refinement: LLL candidates per pi coordinate."""
    n = spec.n
    basis = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    digits = 60
    for c in table.characters:
        if not basis:
            break
        taus = [sp.Integer(0) if exact_equal(m, 1) else sp.log(m).evalf(digits)
                for m in c.modulus_squared]
        vals = [sum(b[j] * taus[j] for j in range(n)) for b in basis]
        cands = integer_relations(vals, height_cap=10**4)
        new = []
        for cand in cands:
            vec = [sum(cb * b[j] for cb, b in zip(cand, basis))
                   for j in range(n)]
            if any(vec):
                new.append(vec)
        basis = [row for row in hermite_normal_form_rows(new)[0]
                 if any(row)] if new else []
    return basis


def pi_rank(spec: GroupSpec, table: CharacterTable) -> PiRankResult:
    """Rank of the log-character homomorphism pi and its certified kernel.

    Numeric lattice reduction proposes kernel vectors; each is promoted only
    by the exact zero-entropy certificate, so the reported kernel is sound.
    """
    n = spec.n
    verified = [v for v in _kernel_candidates(spec, table)
                if verify_zero_entropy_word(spec, v)]
    basis = [tuple(row) for row in hermite_normal_form_rows(verified)[0]
             if any(row)] if verified else []
    kernel = IntegerLattice(n, tuple(basis))
    return PiRankResult(n - len(basis), kernel, table.m)


# ---------------------------------------------------------------------------
# structure theorems


@dataclass
class StructureReport:
    k: int
    rank: int
    rank_bound_ok: bool
    binomial_bounds: list      # (n, binom(r,n), h_n, bound, ok)
    wedge_chain_length: int
    wedge_chain_ok: bool
    positive_entropy_certified: bool


def _independent_eigenclass_chain(table: CharacterTable, count: int):
    """count eigenclasses whose eigenvectors are linearly independent."""
    vecs = [w for w, _modsq in table.eigenvectors]
    for combo in itertools.combinations(range(len(vecs)), count):
        W = Matrix.hstack(*[vecs[i] for i in combo])
        if W.rank() == count:
            return [CohomClass.from_hermitian(vecs[i] * vecs[i].H)
                    for i in combo]
    return None


def assert_structure_theorems(spec: GroupSpec,
                              analysis: PiRankResult) -> StructureReport:
    """Check the structural bounds for the computed rank r.

    r <= k-1; binom(r,n) <= h_n = binom(k,n)^2 for 1 <= n <= r, strictly
    below h_n when n divides r; and r+1 invariant nef classes with nonzero
    wedge exist.  Violations raise (build-breaking)."""
    k = spec.k
    r = analysis.rank
    table = find_characters(spec)
    # positive entropy of the free part, certified on basis words + sums
    comp = _kernel_complement_words(spec, analysis)
    cert_words = list(comp) + [
        [a + b for a, b in zip(u, v)]
        for u, v in itertools.combinations(comp, 2)]
    positive = all(not verify_zero_entropy_word(spec, e)
                   for e in cert_words if any(e))
    if not positive:
        raise AssertionError(
            "THEOREM VIOLATION: complement word with zero entropy")
    if r > k - 1:
        raise AssertionError(
            f"THEOREM VIOLATION: rank {r} exceeds k-1 = {k - 1}")
    bounds = []
    for nn in range(1, r + 1):
        hn = math.comb(k, nn) ** 2
        limit = hn - 1 if r % nn == 0 else hn
        val = math.comb(r, nn)
        ok = val <= limit
        bounds.append((nn, val, hn, limit, ok))
        if not ok:
            raise AssertionError(
                f"THEOREM VIOLATION: binom({r},{nn}) = {val} > {limit}")
    chain = _independent_eigenclass_chain(table, r + 1)
    chain_ok = chain is not None and not wedge_all(chain).is_zero()
    if not chain_ok:
        raise AssertionError(
            "THEOREM VIOLATION: no nonzero wedge chain of length r+1")
    return StructureReport(k, r, True, bounds, r + 1, True, positive)


# ---------------------------------------------------------------------------
# U x G decomposition


@dataclass
class DecompositionResult:
    rank: int
    free_words: list           # exponent vectors generating the free part
    u_words: list              # exponent vectors generating U
    u_finite: bool
    u_order: int | None
    relation_lattice: IntegerLattice


def _kernel_complement_words(spec: GroupSpec, analysis: PiRankResult):
    """Words completing the saturated kernel to a basis of Z^n."""
    n = spec.n
    B = [list(v) for v in analysis.kernel.basis]
    if not B:
        return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    _D, _U, V = smith_normal_form_with_transforms(B)
    Vinv = Matrix(V).inv()
    s = len(B)
    return [[int(Vinv[i, j]) for j in range(n)] for i in range(s, n)]


def _saturated_kernel_words(spec: GroupSpec, analysis: PiRankResult):
    n = spec.n
    B = [list(v) for v in analysis.kernel.basis]
    if not B:
        return []
    _D, _U, V = smith_normal_form_with_transforms(B)
    Vinv = Matrix(V).inv()
    s = len(B)
    words = [[int(Vinv[i, j]) for j in range(n)] for i in range(s)]
    for w in words:
        if not verify_zero_entropy_word(spec, w):
            raise ExactAlgebraError("kernel saturation produced a word "
                                    "with positive entropy")
    return words


def _real_embedding(A: Matrix) -> Matrix:
    """The 2k x 2k integer matrix of a Gaussian-integer matrix over R."""
    Re = A.applyfunc(sp.re)
    Im = A.applyfunc(sp.im)
    return Matrix(sp.BlockMatrix([[Re, -Im], [Im, Re]]))


def _enumerate_closure(mats, cap: int = ENUMERATION_CAP):
    """Size of the group generated by finite-order commuting matrices."""
    gens = [sp.ImmutableMatrix(M) for M in mats]
    gens += [sp.ImmutableMatrix(Matrix(M).inv()) for M in gens]
    seen = {sp.ImmutableMatrix(eye(gens[0].rows))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for M in frontier:
            for g in gens:
                P = sp.ImmutableMatrix(M * g)
                if P not in seen:
                    seen.add(P)
                    nxt.append(P)
                    if len(seen) > cap:
                        raise ExactAlgebraError(
                            f"group enumeration exceeded cap {cap}")
        frontier = nxt
    return len(seen)


def _relation_lattice(spec: GroupSpec, u_words, orders):
    """Exponent vectors over the input generators whose word is the identity.

    Searched inside the zero-entropy part: residues modulo the per-generator
    orders when U is finite, a small box otherwise (desk-scale completeness).
    """
    n = spec.n
    s = len(u_words)
    if s == 0:
        return IntegerLattice(n, ())
    ident = sp.ImmutableMatrix(eye(spec.k))
    mats = [Matrix(word_automorphism(spec, w).A) for w in u_words]
    finite = all(o != INFINITE_ORDER for o in orders)
    found = []
    if finite:
        total = math.prod(orders)
        if total <= 10**5:
            ranges = [range(o) for o in orders]
        else:
            ranges = [range(min(o, 8)) for o in orders]
        for c in itertools.product(*ranges):
            if not any(c):
                continue
            M = eye(spec.k)
            for ci, Wi in zip(c, mats):
                M = M * Wi**ci
            if sp.ImmutableMatrix(M) == ident:
                found.append(list(c))
        for b, o in enumerate(orders):
            v = [0] * s
            v[b] = o
            found.append(v)
    else:
        for c in itertools.product(range(-4, 5), repeat=s):
            if not any(c):
                continue
            M = eye(spec.k)
            for ci, Wi in zip(c, mats):
                M = M * (Wi**ci if ci >= 0 else Matrix(Wi).inv()**(-ci))
            if sp.ImmutableMatrix(M) == ident:
                found.append(list(c))
    rows = []
    for c in found:
        vec = [sum(ci * w[j] for ci, w in zip(c, u_words)) for j in range(n)]
        rows.append(vec)
    if not rows:
        return IntegerLattice(n, ())
    H = [tuple(r) for r in hermite_normal_form_rows(rows)[0] if any(r)]
    return IntegerLattice(n, tuple(H))


def decompose(spec: GroupSpec) -> DecompositionResult:
    """Split the group as (zero-entropy part U) x (free positive-entropy
    part) and decide the finiteness of U at maximal rank."""
    table = find_characters(spec)
    analysis = pi_rank(spec, table)
    r = analysis.rank
    k = spec.k
    u_words = _saturated_kernel_words(spec, analysis)
    free_words = _kernel_complement_words(spec, analysis)
    orders = []
    for w in u_words:
        A = Matrix(word_automorphism(spec, w).A)
        orders.append(matrix_order(_real_embedding(A),
                                   bound=finite_order_bound(2 * k)))
    u_finite = all(o != INFINITE_ORDER for o in orders)
    u_order: int | None = None
    if u_finite:
        if u_words:
            mats = [Matrix(word_automorphism(spec, w).A) for w in u_words]
            u_order = _enumerate_closure(mats)
        else:
            u_order = 1
    if r == k - 1 and not u_finite:
        raise AssertionError(
            "THEOREM VIOLATION: infinite zero-entropy part at maximal rank")
    relations = _relation_lattice(spec, u_words, orders)
    return DecompositionResult(r, free_words, u_words, u_finite, u_order,
                               relations)


# ---------------------------------------------------------------------------
# invariant-class form of the structure theorem


@dataclass
class Theorem46Report:
    status: str                # "holds" | "vacuous"
    rank: int | None = None
    reason: str = ""
    witness: object = None


def _class_multiplier(g: TorusAutomorphism, c: CohomClass):
    """lambda with pullback(g, c) = lambda c, or None."""
    key, base = next(iter(c.coeffs.items()))
    image = pullback(g, c)
    lam = sp.simplify(image.coeffs.get(key, sp.Integer(0)) / base)
    if (image - c.scale(lam)).is_zero():
        return lam
    return None


def check_theorem_4_6(spec: GroupSpec, classes) -> Theorem46Report:
    """Invariant-class structure theorem: a positive-entropy group preserving
    k-1 nef classes with nonzero wedge is commutative and free of rank
    <= k-1.  Hypotheses are checked exactly; a hypotheses-true,
    conclusion-false instance raises (build-breaking)."""
    classes = list(classes)
    k = spec.k
    n = spec.n
    if len(classes) != k - 1:
        raise ValueError("exactly k-1 classes required")
    multipliers = []       # multipliers[i][j] for class i, generator j
    for c in classes:
        if c.is_zero() or not is_nef(c):
            return Theorem46Report("vacuous", reason="class not nef/nonzero",
                                   witness=c)
        row = []
        for g in spec.generators:
            lam = _class_multiplier(g, c)
            if lam is None:
                return Theorem46Report(
                    "vacuous", reason="class not preserved", witness=(g, c))
            row.append(lam)
        multipliers.append(row)
    if wedge_all(classes).is_zero():
        return Theorem46Report("vacuous", reason="context wedge is zero")
    # positive-entropy hypothesis on a word sample: zero entropy => identity
    ident = sp.ImmutableMatrix(eye(k))
    for e in itertools.product(range(-2, 3), repeat=n):
        if not any(e):
            continue
        if verify_zero_entropy_word(spec, e):
            if sp.ImmutableMatrix(word_automorphism(spec, e).A) != ident:
                return Theorem46Report(
                    "vacuous", reason="zero-entropy non-identity word",
                    witness=e)
    comm = check_commuting(spec)
    if not comm.commutes:
        raise AssertionError(
            f"THEOREM VIOLATION: non-commuting pair {comm.witness}")
    # rank of the induced pi, with exact multiplicative verification
    digits = 60
    basis = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for row in multipliers:
        if not basis:
            break
        taus = [sp.Integer(0) if exact_equal(lam, 1)
                else sp.log(sp.Abs(lam)).evalf(digits) for lam in row]
        vals = [sum(b[j] * taus[j] for j in range(n)) for b in basis]
        cands = integer_relations(vals, height_cap=10**4)
        new = []
        for cand in cands:
            vec = [sum(cb * b[j] for cb, b in zip(cand, basis))
                   for j in range(n)]
            if any(vec):
                new.append(vec)
        basis = [b for b in hermite_normal_form_rows(new)[0]
                 if any(b)] if new else []
    verified = []
    for e in basis:
        ok = True
        for row in multipliers:
            pos = sp.Mul(*[sp.Abs(lam) ** ej for lam, ej in zip(row, e)
                           if ej > 0])
            neg = sp.Mul(*[sp.Abs(lam) ** (-ej) for lam, ej in zip(row, e)
                           if ej < 0])
            if not exact_equal(sp.expand(pos), sp.expand(neg)):
                ok = False
                break
        if ok:
            verified.append(e)
    for e in verified:
        if sp.ImmutableMatrix(word_automorphism(spec, e).A) != ident:
            # injectivity of pi fails only if the hypotheses fail;
            # the sample check above makes this unreachable in practice
            raise AssertionError(
                f"THEOREM VIOLATION: nontrivial word {e} in ker(pi)")
    r = n - len(verified)
    if r > k - 1:
        raise AssertionError(
            f"THEOREM VIOLATION: rank {r} exceeds k-1 = {k - 1}")
    return Theorem46Report("holds", rank=r)


# ---------------------------------------------------------------------------
# one-stop analysis


@dataclass
class GroupAnalysis:
    spec: GroupSpec
    commuting: CommutingReport
    classifications: list
    table: CharacterTable | None = None
    rank: PiRankResult | None = None
    structure: StructureReport | None = None
    decomposition: DecompositionResult | None = None


def analyze_group(spec: GroupSpec) -> GroupAnalysis:
    """Full pipeline: commutativity, per-generator classification,
    characters, rank, structural assertions, and the U x free split."""
    from .cohomology import classify
    comm = check_commuting(spec)
    classes = [classify(g) for g in spec.generators]
    out = GroupAnalysis(spec, comm, classes)
    if not comm.commutes:
        return out
    out.table = find_characters(spec)
    out.rank = pi_rank(spec, out.table)
    out.structure = assert_structure_theorems(spec, out.rank)
    out.decomposition = decompose(spec)
    return out
