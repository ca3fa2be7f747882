"""Cohomology of T^k = (C/Z[i])^k: class algebra, induced actions, degrees, entropy.

Classes of bidegree (p,p) are stored exactly over the monomial basis
dz_S ^ dzbar_T (S, T ascending p-subsets of {0..k-1}).  Sign convention,
used everywhere: a basis monomial is dz_{s1}..dz_{sp} dzbar_{t1}..dzbar_{tp}
with both blocks ascending and the dz block first; products are reordered
to this shape by counting transpositions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import sympy as sp
from sympy import I, Matrix, Poly, Rational

from .exact_algebra import (
    INFINITE_ORDER,
    AlgebraicReal,
    CertifiedReal,
    ExactAlgebraError,
    X,
    charpoly,
    exact_is_zero,
    exact_sign,
    is_cyclotomic_product,
    matrix_order,
    real_charpoly,
    root_moduli,
)

POSITIVE_ENTROPY = "positive_entropy"
PARABOLIC = "parabolic"
FINITE_ORDER = "finite_order_on_cohomology"

GAUSSIAN_UNITS = (sp.Integer(1), sp.Integer(-1), I, -I)


class BudgetExceededError(RuntimeError):
    def __init__(self, estimate):
        super().__init__(f"enumeration budget exceeded: ~{estimate} matrices")
        self.estimate = estimate


def _is_gaussian_integer(v) -> bool:
    v = sp.sympify(v)
    return sp.re(v).is_Integer and sp.im(v).is_Integer


class TorusAutomorphism:
    """Linear part of an automorphism of T^k: a Gaussian-integer matrix
    with unit determinant.  Translations act trivially on cohomology and
    are not modeled."""

    def __init__(self, A, name: str = ""):
        A = sp.ImmutableMatrix(A)
        if not A.is_square:
            raise ValueError("matrix must be square")
        if not all(_is_gaussian_integer(v) for v in A):
            raise ValueError("entries must be Gaussian integers")
        d = A.det()
        if d not in GAUSSIAN_UNITS:
            raise ValueError(f"determinant {d} is not a unit of Z[i]")
        self.A = A
        self.k = A.rows
        self.name = name or f"aut_{self.k}"

    def inverse(self) -> "TorusAutomorphism":
        # det is a unit, so adjugate/det stays Gaussian-integer
        return TorusAutomorphism(self.A.adjugate() / self.A.det(),
                                 name=self.name + "^-1")

    def compose(self, other: "TorusAutomorphism") -> "TorusAutomorphism":
        return TorusAutomorphism(self.A * other.A,
                                 name=f"{self.name}*{other.name}")

    def power(self, n: int) -> "TorusAutomorphism":
        if n == 0:
            return TorusAutomorphism(sp.eye(self.k), name="id")
        base = self if n > 0 else self.inverse()
        M = base.A
        acc = sp.eye(self.k)
        for _ in range(abs(n)):
            acc = acc * M
        return TorusAutomorphism(acc, name=f"{self.name}^{n}")

    def __eq__(self, other):
        return isinstance(other, TorusAutomorphism) and self.A == other.A

    def __hash__(self):
        return hash(self.A)

    def __repr__(self):
        return f"TorusAutomorphism({self.name}, k={self.k})"


# ---------------------------------------------------------------------------
# H^{1,1} integer model


@lru_cache(maxsize=None)
def hermitian_basis(k: int):
    """Integer basis of Hermitian k x k matrices:
    E_jj; E_jl + E_lj; i(E_jl - E_lj) for j < l."""
    basis = []
    for j in range(k):
        E = sp.zeros(k, k)
        E[j, j] = 1
        basis.append(sp.ImmutableMatrix(E))
    for j in range(k):
        for l in range(j + 1, k):
            E = sp.zeros(k, k)
            E[j, l] = 1
            E[l, j] = 1
            basis.append(sp.ImmutableMatrix(E))
            E = sp.zeros(k, k)
            E[j, l] = I
            E[l, j] = -I
            basis.append(sp.ImmutableMatrix(E))
    return tuple(basis)


def hermitian_coords(H: Matrix):
    """Coordinates of a Hermitian matrix in hermitian_basis(k)."""
    k = H.rows
    coords = [H[j, j] for j in range(k)]
    for j in range(k):
        for l in range(j + 1, k):
            coords.append(sp.re(H[j, l]))
            coords.append(sp.im(H[j, l]))
    return coords


def hermitian_from_coords(k: int, coords):
    H = sp.zeros(k, k)
    it = iter(coords)
    diag = [next(it) for _ in range(k)]
    for j in range(k):
        H[j, j] = diag[j]
    for j in range(k):
        for l in range(j + 1, k):
            a = next(it)
            b = next(it)
            H[j, l] = a + I * b
            H[l, j] = a - I * b
    return H


def h11_matrix(f: TorusAutomorphism) -> Matrix:
    """Integer matrix of H -> A^T H conj(A) on the Hermitian basis
    (k^2 x k^2); the same convention as ``pullback`` on (1,1)-classes."""
    k = f.k
    At = f.A.T
    Abar = f.A.conjugate()
    cols = []
    for E in hermitian_basis(k):
        B = At * E * Abar
        cols.append([sp.nsimplify(c) for c in hermitian_coords(B)])
    M = Matrix(cols).T
    if not all(v.is_Integer for v in M):
        raise ExactAlgebraError("H^{1,1} action matrix is not integral")
    return M


# ---------------------------------------------------------------------------
# H^{p,p} action via compound (exterior power) matrices


def _subsets(k: int, p: int):
    return list(itertools.combinations(range(k), p))


def _minor(A: Matrix, rows, cols):
    return A.extract(list(rows), list(cols)).det() if rows else sp.Integer(1)


def hpp_matrix(f: TorusAutomorphism, p: int) -> Matrix:
    """Exact matrix of f* on H^{p,p}(T^k, C) in the dz_S ^ dzbar_T basis.

    f*(dz_S ^ dzbar_T) = sum_{S',T'} det(A[S,S']) conj(det(A[T,T']))
    dz_{S'} ^ dzbar_{T'}; entries are Gaussian integers.
    """
    k = f.k
    if not 0 <= p <= k:
        raise ValueError(f"p must lie in [0, {k}]")
    subs = _subsets(k, p)
    comp = Matrix([[_minor(f.A, S, Sp) for S in subs] for Sp in subs])
    compc = comp.conjugate()
    n = len(subs)
    M = sp.zeros(n * n, n * n)
    for a, _ in enumerate(subs):       # target (S', T')
        for b, _ in enumerate(subs):
            for c, _ in enumerate(subs):   # source (S, T)
                for d, _ in enumerate(subs):
                    M[a * n + b, c * n + d] = sp.expand(comp[a, c] * compc[b, d])
    return M


# ---------------------------------------------------------------------------
# dynamical degrees and entropy


def eigenvalue_moduli(f: TorusAutomorphism):
    """Certified moduli (with multiplicity) of the eigenvalues of the linear part."""
    p, doubled = real_charpoly(f.A)
    mods = root_moduli(p)
    if doubled:
        mods = [(m, mult // 2) for m, mult in mods]
    return mods


def _moduli_squared_desc(f: TorusAutomorphism):
    """Eigenvalue moduli squared as exact sympy exprs, repeated by multiplicity,
    descending."""
    out = []
    for m, mult in eigenvalue_moduli(f):
        y = sp.expand(m.expr ** 2)
        out.extend([y] * mult)
    return out


def _numeric_spectral_radius(M: Matrix, dps: int = 40) -> float:
    p = charpoly(M)
    # squarefree part: repeated roots stall the numeric root finder
    p = p.quo(p.gcd(p.diff(X)))
    coeffs = [complex(c) for c in p.all_coeffs()]
    with mpmath.workdps(dps):
        roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=200)
        return float(max(abs(r) for r in roots)) if roots else 1.0


def dynamical_degree(f: TorusAutomorphism, p: int,
                     verify: bool = True) -> AlgebraicReal:
    """Certified p-th dynamical degree: (product of the p largest eigenvalue
    moduli of the linear part)^2 == spectral radius of f* on H^{p,p}.

    With ``verify=True`` the value is cross-checked against the numerically
    computed spectral radius of the exact H^{p,p} action matrix.
    """
    k = f.k
    if not 0 <= p <= k:
        raise ValueError(f"p must lie in [0, {k}]")
    ys = _moduli_squared_desc(f)
    d_expr = sp.expand(sp.Mul(*ys[:p])) if p else sp.Integer(1)
    d = AlgebraicReal(d_expr)
    if verify and 0 < p < k:
        rho = _numeric_spectral_radius(hpp_matrix(f, p))
        if abs(float(d) - rho) > 1e-9 * max(1.0, rho):
            raise ExactAlgebraError(
                f"dynamical degree cross-check failed: {float(d)} vs {rho}")
    return d


@dataclass
class DegreeProfile:
    k: int
    degrees: list          # AlgebraicReal per p in 0..k
    entropy: CertifiedReal
    classification: str


def entropy(f: TorusAutomorphism) -> CertifiedReal:
    """Topological entropy, computed cohomologically: max_p log d_p
    = 2 * sum of log|lambda| over eigenvalues with |lambda| > 1 (exact)."""
    ys = [y for y in _moduli_squared_desc(f) if exact_sign(y - 1) > 0]
    if not ys:
        return CertifiedReal(sp.Integer(0))
    return CertifiedReal(sp.log(sp.expand(sp.Mul(*ys))))


def classify(f: TorusAutomorphism) -> str:
    """Exact trichotomy on the H^{1,1} action; no floating point."""
    M = h11_matrix(f)
    p = charpoly(M)
    if not is_cyclotomic_product(p):
        return POSITIVE_ENTROPY
    if matrix_order(M) == INFINITE_ORDER:
        return PARABOLIC
    return FINITE_ORDER


def degree_profile(f: TorusAutomorphism, verify: bool = False) -> DegreeProfile:
    degrees = [dynamical_degree(f, p, verify=verify) for p in range(f.k + 1)]
    return DegreeProfile(f.k, degrees, entropy(f), classify(f))


# ---------------------------------------------------------------------------
# the class algebra


def _merge_sign(a: tuple, b: tuple):
    """Sign of sorting the concatenation of two ascending index tuples.

    Returns (0, None) on overlap, else ((-1)^inversions, merged_tuple)."""
    if set(a) & set(b):
        return 0, None
    inv = 0
    for x in b:
        inv += sum(1 for y in a if y > x)
    merged = tuple(sorted(a + b))
    return (-1) ** inv, merged


class CohomClass:
    """An element of H^{p,p}(T^k) as exact coefficients over dz_S ^ dzbar_T."""

    def __init__(self, k: int, p: int, coeffs: dict):
        self.k = k
        self.p = p
        self.coeffs = {}
        for (S, T), v in coeffs.items():
            v = sp.sympify(v)
            if v != 0:
                self.coeffs[(tuple(S), tuple(T))] = v

    @classmethod
    def zero(cls, k: int, p: int) -> "CohomClass":
        return cls(k, p, {})

    @classmethod
    def from_hermitian(cls, H) -> "CohomClass":
        H = Matrix(H)
        k = H.rows
        coeffs = {((i,), (j,)): H[i, j] for i in range(k) for j in range(k)}
        return cls(k, 1, coeffs)

    @classmethod
    def identity_class(cls, k: int) -> "CohomClass":
        return cls.from_hermitian(sp.eye(k))

    @classmethod
    def volume_class(cls, k: int) -> "CohomClass":
        full = tuple(range(k))
        return cls(k, k, {(full, full): sp.Integer(1)})

    def to_hermitian(self) -> Matrix:
        if self.p != 1:
            raise ValueError("only (1,1)-classes have a Hermitian model")
        H = sp.zeros(self.k, self.k)
        for (S, T), v in self.coeffs.items():
            H[S[0], T[0]] = v
        return H

    def is_real(self) -> bool:
        """Reality constraint c_{T,S} = conj(c_{S,T}), checked exactly."""
        for (S, T), v in self.coeffs.items():
            w = self.coeffs.get((T, S), sp.Integer(0))
            if not exact_is_zero(sp.expand(w - sp.conjugate(v))):
                return False
        return True

    def is_zero(self) -> bool:
        return all(exact_is_zero(v) for v in self.coeffs.values())

    def __add__(self, other: "CohomClass") -> "CohomClass":
        if (self.k, self.p) != (other.k, other.p):
            raise ValueError("degree mismatch")
        coeffs = dict(self.coeffs)
        for key, v in other.coeffs.items():
            coeffs[key] = sp.expand(coeffs.get(key, sp.Integer(0)) + v)
        return CohomClass(self.k, self.p, coeffs)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "CohomClass":
        c = sp.sympify(c)
        return CohomClass(self.k, self.p,
                          {key: sp.expand(c * v) for key, v in self.coeffs.items()})

    def __eq__(self, other):
        return (isinstance(other, CohomClass)
                and (self.k, self.p) == (other.k, other.p)
                and (self - other).is_zero())

    def __hash__(self):
        return hash((self.k, self.p, frozenset(self.coeffs.items())))

    def coefficient_vector(self):
        """Coefficients over all (S,T) basis pairs, in lex order."""
        subs = _subsets(self.k, self.p)
        return [self.coeffs.get((S, T), sp.Integer(0))
                for S in subs for T in subs]

    def __repr__(self):
        return f"CohomClass(k={self.k}, p={self.p}, {len(self.coeffs)} terms)"


def wedge(c1: CohomClass, c2: CohomClass) -> CohomClass:
    """Exterior product; degree overflow raises."""
    if c1.k != c2.k:
        raise ValueError("ambient dimension mismatch")
    k = c1.k
    if c1.p + c2.p > k:
        raise ValueError("degree overflow in wedge")
    coeffs: dict = {}
    for (S, T), v in c1.coeffs.items():
        for (Sp, Tp), w in c2.coeffs.items():
            sgn_s, S2 = _merge_sign(S, Sp)
            if sgn_s == 0:
                continue
            sgn_t, T2 = _merge_sign(T, Tp)
            if sgn_t == 0:
                continue
            # move the p2 dz' factors across the p1 dzbar factors
            sgn = sgn_s * sgn_t * (-1) ** (c1.p * c2.p)
            key = (S2, T2)
            coeffs[key] = sp.expand(coeffs.get(key, sp.Integer(0)) + sgn * v * w)
    return CohomClass(k, c1.p + c2.p, coeffs)


def wedge_all(classes) -> CohomClass:
    classes = list(classes)
    acc = classes[0]
    for c in classes[1:]:
        acc = wedge(acc, c)
    return acc


@lru_cache(maxsize=None)
def _volume_normalization(k: int):
    """kappa_k / k!, where kappa_k is the top coefficient of (identity class)^k."""
    idc = CohomClass.identity_class(k)
    top = wedge_all([idc] * k)
    full = tuple(range(k))
    kappa = top.coeffs.get((full, full), sp.Integer(0))
    if kappa == 0:
        raise ExactAlgebraError("volume normalization degenerated")
    return kappa / sp.factorial(k)


def intersection_number(classes):
    """Intersection of classes with degrees summing to k.

    Normalized so that k (1,1)-classes give the polarized determinant:
    intersection(omega_H, ..., omega_H) = k! det(H)."""
    classes = list(classes)
    k = classes[0].k
    if sum(c.p for c in classes) != k:
        raise ValueError("degrees must sum to the dimension")
    top = wedge_all(classes)
    full = tuple(range(k))
    coeff = top.coeffs.get((full, full), sp.Integer(0))
    return sp.expand(coeff / _volume_normalization(k))


def mixed_discriminant(mats):
    """Polarized determinant: coefficient of t_1...t_k in det(sum t_i H_i).

    Independent oracle for intersection_number on (1,1)-classes."""
    mats = [Matrix(M) for M in mats]
    k = mats[0].rows
    if len(mats) != k:
        raise ValueError("need exactly k matrices")
    ts = sp.symbols(f"t0:{k}")
    Msum = sp.zeros(k, k)
    for t, M in zip(ts, mats):
        Msum = Msum + t * M
    det = sp.expand(Msum.det())
    poly = sp.Poly(det, *ts)
    return sp.expand(poly.coeff_monomial(sp.Mul(*ts)))


def pullback(f: TorusAutomorphism, c: CohomClass) -> CohomClass:
    """f* on H^{p,p}: coordinates transform by compound matrices of A."""
    if f.k != c.k:
        raise ValueError("dimension mismatch")
    subs = _subsets(f.k, c.p)
    comp = {}
    for S in {key[0] for key in c.coeffs} | {key[1] for key in c.coeffs}:
        for Sp in subs:
            comp[(S, Sp)] = _minor(f.A, S, Sp)
    coeffs: dict = {}
    for (S, T), v in c.coeffs.items():
        for Sp in subs:
            dS = comp[(S, Sp)]
            if dS == 0:
                continue
            for Tp in subs:
                dT = sp.conjugate(comp[(T, Tp)])
                if dT == 0:
                    continue
                key = (Sp, Tp)
                coeffs[key] = sp.expand(coeffs.get(key, sp.Integer(0)) + v * dS * dT)
    return CohomClass(f.k, c.p, coeffs)


# ---------------------------------------------------------------------------
# positivity of (1,1)-classes


def _hermitian_psd(H: Matrix, require_pd: bool) -> bool:
    """Exact PSD/PD decision by pivoted Hermitian elimination."""
    n = H.rows
    if n == 0:
        return True
    diag_signs = [exact_sign(sp.re(H[i, i])) for i in range(n)]
    if any(s < 0 for s in diag_signs):
        return False
    if all(s == 0 for s in diag_signs):
        # PSD with zero diagonal forces the whole matrix to vanish
        zero = all(exact_is_zero(v) for v in H)
        return zero and not require_pd
    piv = diag_signs.index(1)
    d = H[piv, piv]
    rest = [i for i in range(n) if i != piv]
    S = sp.zeros(n - 1, n - 1)
    for a, i in enumerate(rest):
        for b, j in enumerate(rest):
            S[a, b] = sp.expand(H[i, j] - H[i, piv] * H[piv, j] / d)
    return _hermitian_psd(S, require_pd)


def is_nef(c: CohomClass) -> bool:
    """nef = closure of the Kahler cone = PSD Hermitian form, decided exactly."""
    if c.p != 1:
        raise ValueError("nef test implemented for (1,1)-classes")
    H = c.to_hermitian()
    if not c.is_real():
        return False
    return _hermitian_psd(H, require_pd=False)


def is_kahler(c: CohomClass) -> bool:
    if c.p != 1:
        raise ValueError("Kahler test implemented for (1,1)-classes")
    H = c.to_hermitian()
    if not c.is_real():
        return False
    return _hermitian_psd(H, require_pd=True)


# ---------------------------------------------------------------------------
# discreteness of d_1 at desk scale


def _charpoly_int(rows):
    """Integer characteristic polynomial coefficients (Faddeev-LeVerrier)."""
    n = len(rows)
    A = [row[:] for row in rows]
    coeffs = [1]
    Mk = [row[:] for row in rows]
    for k in range(1, n + 1):
        tr = sum(Mk[i][i] for i in range(n))
        assert tr % k == 0
        ck = -tr // k
        coeffs.append(ck)
        if k == n:
            break
        # Mk <- A (Mk + ck I)
        B = [[Mk[i][j] + (ck if i == j else 0) for j in range(n)] for i in range(n)]
        Mk = [[sum(A[i][l] * B[l][j] for l in range(n)) for j in range(n)]
              for i in range(n)]
    return coeffs


def enumerate_degree_values(k: int, entry_bound: int,
                            budget: int = 3_000_000):
    """Distinct exact d_1 values over all A in SL(k,Z) with |entries| <= bound.

    Exhibits the discreteness of the first dynamical degree (desk scale).
    Raises BudgetExceededError when the search space is too large.
    """
    if entry_bound < 0:
        raise ValueError("entry_bound must be >= 0")
    estimate = (2 * entry_bound + 1) ** (k * k)
    if estimate > budget:
        raise BudgetExceededError(estimate)
    from .exact_algebra import _det_int

    # the identity automorphism exists at every bound
    charpolys = {tuple(_charpoly_int([[1 if i == j else 0 for j in range(k)]
                                      for i in range(k)]))}
    for entries in itertools.product(range(-entry_bound, entry_bound + 1),
                                     repeat=k * k):
        rows = [list(entries[i * k:(i + 1) * k]) for i in range(k)]
        if _det_int(rows) != 1:
            continue
        charpolys.add(tuple(_charpoly_int(rows)))
    values = []
    for coeffs in sorted(charpolys):
        p = Poly(list(coeffs), X)
        mods = root_moduli(p)
        d1 = AlgebraicReal(sp.expand(mods[0][0].expr ** 2))
        if not any(exact_is_zero(d1.expr - v.expr) for v in values):
            values.append(d1)
    values.sort(key=float)
    return values
