"""Command-line surface: deterministic JSON analysis reports.

Subcommands
    analyze    full pipeline on a group spec file or a builtin catalog name
    hodge-check  exact + randomized positivity certification for H^{1,1}
    forge      build a maximal-rank group from a totally real field
    enumerate  distinct first dynamical degrees at a coefficient bound

Exit codes: 0 = all assertions pass; 2 = theorem violation (an implementation
bug, never accepted); 3 = invalid or unsupported input.  All integers in JSON
are arbitrary-precision decimal strings; every inexact number is tagged as an
approximation and accompanied by a certified rational interval.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import sympy as sp
from sympy import I, Matrix

from . import __version__
from .exact_algebra import (AlgebraicReal, CertifiedReal, IntegerLattice,
                            charpoly, exact_sign)
from .cohomology import (BudgetExceededError, CohomClass, TorusAutomorphism,
                         degree_profile, enumerate_degree_values, h11_matrix)
from .hodge_riemann import check_hodge_riemann_definite, gromov_fuzz
from .group_structure import (DegenerateSpectrumError, GroupAnalysis,
                              GroupSpec, analyze_group)
from .example_forge import (ForgeError, NumberFieldSpec, build_max_rank_group,
                            builtin, builtin_names)

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_INVALID = 3

DEFAULT_DIGITS = 12


class CliInputError(ValueError):
    """Invalid or unsupported input; maps to exit code 3."""


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------

def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _approx_str(q: Fraction, digits: int) -> str:
    return sp.Float(sp.Rational(q.numerator, q.denominator),
                    digits + 3).__str__()


def _certified_json(value: CertifiedReal, digits: int) -> dict:
    eps = Fraction(1, 2 * 10**digits)
    lo, hi = value.enclosure(eps)
    out = {
        "interval": [_frac_str(lo), _frac_str(hi)],
        "approx": _approx_str((lo + hi) / 2, digits),
        "approx_is_approximation": True,
    }
    if isinstance(value, AlgebraicReal):
        out["min_poly"] = [str(c) for c in
                           value.minimal_polynomial.all_coeffs()]
    return out


def _expr_json(expr, digits: int) -> dict:
    out = _certified_json(CertifiedReal(expr), digits)
    out["exact"] = str(expr)
    return out


def _gaussian_pair(v) -> list:
    v = sp.sympify(v)
    re, im = sp.re(v), sp.im(v)
    return [str(int(re)), str(int(im))]


def _matrix_json(M: Matrix) -> list:
    return [[_gaussian_pair(M[i, j]) for j in range(M.cols)]
            for i in range(M.rows)]


def _lattice_json(lat: IntegerLattice) -> dict:
    return {"ambient_rank": str(lat.ambient_rank),
            "basis": [[str(v) for v in row] for row in lat.basis]}


def _words_json(words) -> list:
    return [[str(v) for v in w] for w in words]


# ---------------------------------------------------------------------------
# input loading
# ---------------------------------------------------------------------------

def _entry_from_pair(pair):
    if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
        raise CliInputError("matrix entries must be [re, im] pairs")
    try:
        re, im = int(str(pair[0])), int(str(pair[1]))
    except ValueError as exc:
        raise CliInputError(f"non-integer matrix entry {pair!r}") from exc
    return re + im * I


def _group_from_json(data: dict) -> GroupSpec:
    try:
        k = int(str(data["complex_dim"]))
        gens = data["generators"]
    except (KeyError, ValueError) as exc:
        raise CliInputError(f"malformed torus_group spec: {exc}") from exc
    if not gens:
        raise CliInputError("at least one generator required")
    autos, labels = [], []
    for idx, g in enumerate(gens):
        rows = g.get("matrix")
        name = str(g.get("name", f"g{idx}"))
        if (not isinstance(rows, list) or len(rows) != k
                or any(len(r) != k for r in rows)):
            raise CliInputError(f"generator {name}: matrix must be {k}x{k}")
        M = Matrix([[_entry_from_pair(v) for v in r] for r in rows])
        try:
            autos.append(TorusAutomorphism(M, name=name))
        except ValueError as exc:
            raise CliInputError(f"generator {name}: {exc}") from exc
        labels.append(name)
    return GroupSpec(tuple(autos), tuple(labels))


def _field_from_json(data: dict) -> tuple:
    try:
        coeffs = [int(str(c)) for c in data["min_poly"]]
    except (KeyError, ValueError) as exc:
        raise CliInputError(f"malformed number_field spec: {exc}") from exc
    bound = int(str(data.get("coeff_bound", 4)))
    try:
        return NumberFieldSpec(tuple(coeffs)), bound
    except ForgeError as exc:
        raise CliInputError(str(exc)) from exc


def load_group_argument(arg: str):
    """Resolve a CLI group argument: a JSON spec file path or a builtin name.

    Returns ``(GroupSpec, forge_info_or_None)``.
    """
    if os.path.exists(arg):
        try:
            with open(arg) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CliInputError(f"cannot read spec file {arg}: {exc}") from exc
        kind = data.get("kind")
        if kind == "torus_group":
            return _group_from_json(data), None
        if kind == "number_field":
            field, bound = _field_from_json(data)
            forged = _forge_or_raise(field, bound)
            return forged.group, forged
        raise CliInputError(f"unknown spec kind {kind!r}")
    if arg in builtin_names():
        return builtin(arg), None
    raise CliInputError(
        f"{arg!r} is neither a file nor a builtin name "
        f"(builtins: {', '.join(builtin_names())})")


def _forge_or_raise(field: NumberFieldSpec, bound: int):
    try:
        return build_max_rank_group(field, bound)
    except ForgeError as exc:
        raise CliInputError(str(exc)) from exc


# ---------------------------------------------------------------------------
# report assembly
# ---------------------------------------------------------------------------

def _generator_report(g: TorusAutomorphism, digits: int) -> dict:
    prof = degree_profile(g)
    return {
        "name": g.name,
        "matrix": _matrix_json(Matrix(g.A)),
        "h11_charpoly": [str(int(c)) for c in
                         charpoly(h11_matrix(g)).all_coeffs()],
        "degrees": [_certified_json(d, digits) for d in prof.degrees],
        "entropy": _certified_json(prof.entropy, digits),
        "classification": prof.classification,
    }


def _structure_json(analysis: GroupAnalysis) -> dict:
    st = analysis.structure
    return {
        "rank_bound_r_le_k_minus_1": "pass" if st.rank_bound_ok else "fail",
        "binomial_bounds": [
            {"n": str(n), "binom_r_n": str(b), "h_n": str(h),
             "bound": str(bound), "status": "pass" if ok else "fail"}
            for (n, b, h, bound, ok) in st.binomial_bounds],
        "wedge_chain": {
            "length": str(st.wedge_chain_length),
            "status": "pass" if st.wedge_chain_ok else "fail"},
        "positive_entropy_certified": st.positive_entropy_certified,
    }


def build_analysis_report(analysis: GroupAnalysis, digits: int,
                          seed: int) -> dict:
    spec = analysis.spec
    report = {
        "tool": f"toraldyn {__version__}",
        "seed": str(seed),
        "kind": "torus_group",
        "complex_dim": str(spec.k),
        "commuting": analysis.commuting.commutes,
        "generators": [_generator_report(g, digits)
                       for g in spec.generators],
    }
    if not analysis.commuting.commutes:
        i, j = analysis.commuting.witness
        report["non_commuting_witness"] = [str(i), str(j)]
        return report
    table = analysis.table
    report["characters"] = {
        "m": str(table.m),
        "semisimple": table.semisimple,
        "modulus_squared": [
            [_expr_json(v, digits) for v in ch.modulus_squared]
            for ch in table.characters],
    }
    report["rank"] = str(analysis.rank.rank)
    report["pi_kernel"] = _lattice_json(analysis.rank.kernel)
    report["assertions"] = _structure_json(analysis)
    dec = analysis.decomposition
    report["decomposition"] = {
        "free_words": _words_json(dec.free_words),
        "u_words": _words_json(dec.u_words),
        "u_finite": dec.u_finite,
        "u_order": None if dec.u_order is None else str(dec.u_order),
        "relation_lattice": _lattice_json(dec.relation_lattice),
    }
    return report


def _emit(report: dict, json_out: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    if json_out:
        with open(json_out, "w") as fh:
            fh.write(text + "\n")
        print(f"report written to {json_out}")
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    spec, forged = load_group_argument(args.spec)
    analysis = analyze_group(spec)
    report = build_analysis_report(analysis, args.precision, args.seed)
    if forged is not None:
        report["forged_from"] = {
            "min_poly": [str(c) for c in forged.field.coeffs],
            "units": _words_json(forged.units.units),
            "independence_certificate": forged.units.certificate,
        }
    _emit(report, args.json)
    if not analysis.commuting.commutes:
        print("generators do not commute; input rejected", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def cmd_hodge_check(args) -> int:
    k, samples, seed = args.dim, args.samples, args.seed
    if k not in (2, 3, 4):
        raise CliInputError(
            f"dimension {k} refused: the exact positivity suite is budgeted "
            "for k in {2, 3, 4}")
    identity = check_hodge_riemann_definite(CohomClass.identity_class(k))
    fuzz = gromov_fuzz(k, samples, seed)
    report = {
        "tool": f"toraldyn {__version__}",
        "kind": "hodge_check",
        "k": str(k),
        "identity_form": {
            "passed": identity.passed,
            "positive_definite_on_primitive": identity.definite,
            "certificate": ("all Schur pivots of the restricted form "
                            "negative-definite side verified exactly"
                            if identity.passed else "failed"),
            "witness": (None if identity.witness is None
                        else [str(v) for v in identity.witness]),
        },
        "semipositivity_fuzz": {
            "samples": str(fuzz.samples),
            "seed": str(fuzz.seed),
            "failures": str(len(fuzz.failures)),
            "degenerate_skipped": str(fuzz.degenerate_skipped),
            "passed": fuzz.passed,
        },
    }
    _emit(report, args.json)
    if identity.passed and fuzz.passed:
        return EXIT_OK
    print("THEOREM VIOLATION: positivity failure", file=sys.stderr)
    return EXIT_VIOLATION


def cmd_forge(args) -> int:
    try:
        coeffs = tuple(int(c) for c in args.poly.split(","))
    except ValueError as exc:
        raise CliInputError(f"cannot parse --poly {args.poly!r}") from exc
    try:
        field = NumberFieldSpec(coeffs)
    except ForgeError as exc:
        raise CliInputError(str(exc)) from exc
    forged = _forge_or_raise(field, args.bound)
    spec_json = {
        "kind": "torus_group",
        "complex_dim": str(field.degree),
        "generators": [
            {"name": g.name, "matrix": _matrix_json(Matrix(g.A))}
            for g in forged.group.generators],
    }
    report = build_analysis_report(forged.analysis, args.precision, args.seed)
    report["forged_from"] = {
        "min_poly": [str(c) for c in field.coeffs],
        "units": _words_json(forged.units.units),
        "independence_certificate": forged.units.certificate,
    }
    _emit({"spec": spec_json, "report": report}, args.json)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    try:
        values = enumerate_degree_values(args.dim, args.bound)
    except BudgetExceededError as exc:
        raise CliInputError(str(exc)) from exc
    digits = args.precision
    positive = [v for v in values if exact_sign(v.expr - 1) > 0]
    report = {
        "tool": f"toraldyn {__version__}",
        "kind": "degree_enumeration",
        "k": str(args.dim),
        "entry_bound": str(args.bound),
        "distinct_d1": [_certified_json(v, digits) for v in values],
        "count": str(len(values)),
    }
    if positive:
        vmin = positive[0]
        report["min_positive_entropy_d1"] = _certified_json(vmin, digits)
        report["gap_statement"] = (
            "no first dynamical degree lies strictly between 1 and "
            + _approx_str(sum(vmin.enclosure(), Fraction(0)) / 2, digits))
    else:
        report["gap_statement"] = ("all automorphisms in the search box have "
                                   "zero entropy (d1 = 1)")
    _emit(report, args.json)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="toraldyn",
        description=("Exact cohomological dynamics of commuting automorphism "
                     "groups of complex tori (C/Z[i])^k."))
    ap.add_argument("--version", action="version",
                    version=f"toraldyn {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze",
                        help="full structural analysis of a group spec")
    pa.add_argument("spec", help="JSON spec file or builtin name")
    pa.add_argument("--seed", type=int, default=0)
    pa.add_argument("--precision", type=int, default=DEFAULT_DIGITS,
                    metavar="DIGITS",
                    help="interval width 10^-DIGITS for reported numbers")
    pa.add_argument("--json", metavar="OUT", default=None,
                    help="write the report to a file instead of stdout")
    pa.set_defaults(func=cmd_analyze)

    ph = sub.add_parser("hodge-check",
                        help="exact and randomized positivity certification")
    ph.add_argument("--dim", type=int, required=True)
    ph.add_argument("--samples", type=int, default=100)
    ph.add_argument("--seed", type=int, default=0)
    ph.add_argument("--json", metavar="OUT", default=None)
    ph.set_defaults(func=cmd_hodge_check)

    pf = sub.add_parser("forge",
                        help="maximal-rank group from a totally real field")
    pf.add_argument("--poly", required=True,
                    help="descending integer coefficients, e.g. 1,-1,-2,1")
    pf.add_argument("--bound", type=int, default=4,
                    help="unit search coefficient bound")
    pf.add_argument("--seed", type=int, default=0)
    pf.add_argument("--precision", type=int, default=DEFAULT_DIGITS,
                    metavar="DIGITS")
    pf.add_argument("--json", metavar="OUT", default=None)
    pf.set_defaults(func=cmd_forge)

    pe = sub.add_parser("enumerate",
                        help="distinct first dynamical degrees at a bound")
    pe.add_argument("--dim", type=int, required=True)
    pe.add_argument("--bound", type=int, required=True)
    pe.add_argument("--precision", type=int, default=DEFAULT_DIGITS,
                    metavar="DIGITS")
    pe.add_argument("--json", metavar="OUT", default=None)
    pe.set_defaults(func=cmd_enumerate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliInputError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except DegenerateSpectrumError as exc:
        print(f"unsupported input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except AssertionError as exc:
        print(f"{exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
