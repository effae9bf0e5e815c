"""Command-line front end.

Subcommands map one-to-one to the library operations: ``check`` runs the
axiom suite on an algebra file, ``rep`` checks representation files,
``construct`` builds new algebras (current algebra, composition twist,
direct sum, commutator of an associative product, semidirect sum,
derivation extension), ``cohomology`` computes differentials and cocycle
tests, ``deform`` drives the deformation tool-chain, and ``derivations``
solves and checks twisted derivations.

Exit codes: 0 all selected checks pass, 1 a check or mathematical
precondition fails, 2 malformed input.
"""

from __future__ import annotations

import argparse
import sys

from .algebra import AlgebraError, DEFAULT_CHECKS, Superalgebra, run_suite
from .cohomology import (
    CoefficientTwist,
    d0,
    d1,
    d2,
    d_s,
    is_two_cocycle,
    verify_d2d1_zero,
)
from .constructions import (
    current_algebra,
    direct_sum,
    extend_by_derivation,
    from_hom_associative,
    yau_twist,
)
from .deformation import (
    check_deformation_conditions,
    deform,
    is_nijenhuis,
    verify_trivial_deformation,
)
from .derivation import (
    DerivationCandidate,
    check_alpha_k_derivation,
    commutator,
    solve_derivation_space,
)
from .exactmath import Poly
from .reporting import Report, evaluation_agrees
from .representation import (
    ConstructionError,
    adjoint_rep,
    check_coadjoint_condition,
    check_dual_condition,
    check_representation,
    semidirect_sum,
)
from . import serialize as io


def _with_delta(A: Superalgebra, delta) -> Superalgebra:
    if delta is None or delta == A.delta:
        return A
    return Superalgebra(
        delta=delta,
        basis=list(zip(A.names, A.parities)),
        alpha=A.alpha,
        brackets=A.brackets,
        scalar_params=A.scalar_params,
        name=A.name,
    )


def _load_algebra(args) -> Superalgebra:
    A = io.load_algebra_file(args.algebra)
    return _with_delta(A, getattr(args, "delta_override", None))


def _coefficients(args, A):
    rep_path = getattr(args, "rep", None)
    if rep_path:
        return io.load_representation_file(rep_path, A)
    s = getattr(args, "twist_s", None)
    if s is not None:
        return CoefficientTwist(A, s).representation()
    return adjoint_rep(A)


def _emit(args, payload: dict, report: Report | None) -> int:
    if args.seed is not None and report is not None:
        report.meta["oracle_seed"] = args.seed
        report.meta["oracle_agrees"] = evaluation_agrees(report, args.seed)
    if args.format == "json":
        blob = dict(payload)
        if report is not None:
            blob["report"] = report.to_json()
        print(io.dump_json(blob))
    else:
        if report is not None:
            print(report.format_text())
        for key, value in payload.items():
            print(f"--- {key} ---")
            print(io.dump_json(value))
    if report is None:
        return 0
    if not report.ok:
        return 1
    if report.meta.get("oracle_agrees") is False:
        return 1
    return 0


# ---------------------------------------------------------------------------
# Command implementations
# ---------------------------------------------------------------------------


def cmd_check(args) -> int:
    A = _load_algebra(args)
    checks = list(DEFAULT_CHECKS)
    if args.skip_multiplicative:
        checks.remove("multiplicative")
    if args.skip_regular:
        checks.remove("regular")
    report = run_suite(A, checks)
    return _emit(args, {}, report)


def cmd_rep_check(args) -> int:
    A = _load_algebra(args)
    R = io.load_representation_file(args.representation, A)
    report = check_representation(A, R, strict=args.strict_rep)
    return _emit(args, {}, report)


def cmd_rep_dual(args) -> int:
    A = _load_algebra(args)
    R = io.load_representation_file(args.representation, A)
    return _emit(args, {}, check_dual_condition(A, R))


def cmd_rep_coadjoint(args) -> int:
    A = _load_algebra(args)
    return _emit(args, {}, check_coadjoint_condition(A))


def cmd_construct(args) -> int:
    if args.what == "cur":
        g = io.load_jordan_superalgebra_file(args.inputs[0])
        A, report = current_algebra(g)
    elif args.what == "twist":
        A0 = io.load_algebra_file(args.inputs[0])
        endo, _ = io.load_endo_file(args.inputs[1], A0)
        A, report = yau_twist(A0, endo.matrix())
    elif args.what == "dsum":
        A0 = io.load_algebra_file(args.inputs[0])
        B0 = io.load_algebra_file(args.inputs[1])
        A, report = direct_sum(A0, B0)
    elif args.what == "fromassoc":
        H = io.load_homassoc_file(args.inputs[0])
        A, report = from_hom_associative(H)
    elif args.what == "semidirect":
        A0 = io.load_algebra_file(args.inputs[0])
        R = io.load_representation_file(args.inputs[1], A0)
        A, report = semidirect_sum(A0, R)
    elif args.what == "dext":
        A0 = io.load_algebra_file(args.inputs[0])
        endo, _ = io.load_endo_file(args.inputs[1], A0)
        A, report = extend_by_derivation(A0, endo)
    else:  # pragma: no cover - argparse restricts choices
        raise AlgebraError(f"unknown construction {args.what!r}")
    return _emit(args, {"algebra": io.algebra_to_json(A)}, report)


def cmd_cohomology(args) -> int:
    A = _load_algebra(args)
    if args.what in ("d0", "d1", "d2"):
        R = _coefficients(args, A)
        gamma = io.load_cochain_file(args.cochain, A, R)
        op = {"d0": d0, "d1": d1, "d2": d2}[args.what]
        if args.what == "d0":
            out = op(A, R, gamma)
        else:
            out = op(A, R, gamma, schedule=args.alpha_power_schedule)
        return _emit(args, {"cochain": io.cochain_to_json(A, R, out)}, None)
    if args.what == "ds":
        twist = CoefficientTwist(A, args.s)
        R = twist.representation()
        gamma = io.load_cochain_file(args.cochain, A, R)
        out = d_s(A, twist, args.n, gamma, schedule=args.alpha_power_schedule)
        return _emit(args, {"cochain": io.cochain_to_json(A, R, out)}, None)
    if args.what == "cocycle":
        R = CoefficientTwist(A, -1).representation()
        psi = io.load_cochain_file(args.cochain, A, R)
        report = is_two_cocycle(A, psi, schedule=args.alpha_power_schedule)
        return _emit(args, {}, report)
    if args.what == "d2d1":
        R = _coefficients(args, A)
        gamma = io.load_cochain_file(args.cochain, A, R)
        report = verify_d2d1_zero(A, R, gamma, schedule=args.alpha_power_schedule)
        return _emit(args, {}, report)
    raise AlgebraError(f"unknown cohomology operation {args.what!r}")


def cmd_deform(args) -> int:
    A = _load_algebra(args)
    if args.what in ("apply", "conditions"):
        R = adjoint_rep(A)
        psi = io.load_cochain_file(args.operand, A, R)
        if args.what == "apply":
            deformed = deform(A, psi)
            report = run_suite(deformed)
            return _emit(args, {"algebra": io.algebra_to_json(deformed)}, report)
        return _emit(args, {}, check_deformation_conditions(A, psi))
    endo, _ = io.load_endo_file(args.operand, A)
    if args.what == "nijenhuis":
        return _emit(args, {}, is_nijenhuis(A, endo))
    if args.what == "trivial":
        return _emit(args, {}, verify_trivial_deformation(A, endo))
    raise AlgebraError(f"unknown deformation operation {args.what!r}")


def cmd_derivations(args) -> int:
    A = _load_algebra(args)
    if args.what == "solve":
        lmax, dmax = args.degree_bounds
        if args.lmax is not None:
            lmax = args.lmax
        if args.dmax is not None:
            dmax = args.dmax
        basis = solve_derivation_space(A, args.k, args.parity, (lmax, dmax))
        payload = {
            "dimension": len(basis),
            "candidates": [io.endo_to_json(c.endo, c.k) for c in basis],
        }
        return _emit(args, payload, None)
    if args.what == "check":
        endo, k = io.load_endo_file(args.inputs[0], A)
        cand = DerivationCandidate(endo=endo, k=k if k is not None else args.k)
        return _emit(args, {}, check_alpha_k_derivation(A, cand))
    if args.what == "commutator":
        endo1, k1 = io.load_endo_file(args.inputs[0], A)
        endo2, k2 = io.load_endo_file(args.inputs[1], A)
        c1 = DerivationCandidate(endo=endo1, k=k1 or 0)
        c2 = DerivationCandidate(endo=endo2, k=k2 or 0)
        cand, report = commutator(A, c1, c2)
        return _emit(args, {"candidate": io.endo_to_json(cand.endo, cand.k)}, report)
    raise AlgebraError(f"unknown derivations operation {args.what!r}")


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _degree_bounds(text: str):
    try:
        lmax, dmax = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected 'lmax,dmax' integers") from None
    if lmax < 0 or dmax < 0:
        raise argparse.ArgumentTypeError("degree bounds must be nonnegative")
    return (lmax, dmax)


def _add_common(sub) -> None:
    sub.add_argument("--format", choices=("text", "json"), default="text")
    sub.add_argument("--seed", type=int, default=None,
                     help="re-verify every verdict at 100 random rational points")
    sub.add_argument("--delta-override", type=int, choices=(1, -1), default=None,
                     dest="delta_override")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homconformal",
        description="Exact checkers and constructions for twisted Lie "
        "conformal superalgebras.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("check", help="run the axiom suite on an algebra file")
    p.add_argument("algebra")
    p.add_argument("--skip-multiplicative", action="store_true")
    p.add_argument("--skip-regular", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_check)

    p = subs.add_parser("rep", help="representation checks")
    rep_subs = p.add_subparsers(dest="what", required=True)
    q = rep_subs.add_parser("check")
    q.add_argument("algebra")
    q.add_argument("representation")
    q.add_argument("--strict-rep", action="store_true", dest="strict_rep")
    _add_common(q)
    q.set_defaults(func=cmd_rep_check)
    q = rep_subs.add_parser("dual")
    q.add_argument("algebra")
    q.add_argument("representation")
    _add_common(q)
    q.set_defaults(func=cmd_rep_dual)
    q = rep_subs.add_parser("coadjoint")
    q.add_argument("algebra")
    _add_common(q)
    q.set_defaults(func=cmd_rep_coadjoint)

    p = subs.add_parser("construct", help="build a new algebra")
    p.add_argument(
        "what", choices=("cur", "twist", "dsum", "fromassoc", "semidirect", "dext")
    )
    p.add_argument("inputs", nargs="+")
    _add_common(p)
    p.set_defaults(func=cmd_construct)

    p = subs.add_parser("cohomology", help="differentials and cocycle tests")
    p.add_argument("what", choices=("d0", "d1", "d2", "ds", "cocycle", "d2d1"))
    p.add_argument("algebra")
    p.add_argument("cochain")
    p.add_argument("--rep", default=None, help="coefficient representation file")
    p.add_argument("--twist-s", type=int, default=None, dest="twist_s",
                   help="coefficient twist power (default: adjoint coefficients)")
    p.add_argument("--s", type=int, default=-1, help="twist power for ds")
    p.add_argument("--n", type=int, choices=(1, 2), default=2, help="arity for ds")
    p.add_argument("--alpha-power-schedule", choices=("uniform", "printed"),
                   default="uniform", dest="alpha_power_schedule")
    _add_common(p)
    p.set_defaults(func=cmd_cohomology)

    p = subs.add_parser("deform", help="deformations and Nijenhuis operators")
    p.add_argument("what", choices=("apply", "conditions", "nijenhuis", "trivial"))
    p.add_argument("algebra")
    p.add_argument("operand", help="2-cochain file (apply/conditions) or "
                   "operator matrix file (nijenhuis/trivial)")
    _add_common(p)
    p.set_defaults(func=cmd_deform)

    p = subs.add_parser("derivations", help="twisted derivation tools")
    p.add_argument("what", choices=("solve", "check", "commutator"))
    p.add_argument("algebra")
    p.add_argument("inputs", nargs="*")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--parity", type=int, choices=(0, 1), default=0)
    p.add_argument("--degree-bounds", type=_degree_bounds, default=(2, 2),
                   dest="degree_bounds", help="'lmax,dmax' for the solver ansatz")
    p.add_argument("--lmax", type=int, default=None,
                   help="lambda-degree bound (overrides --degree-bounds)")
    p.add_argument("--dmax", type=int, default=None,
                   help="d-degree bound (overrides --degree-bounds)")
    _add_common(p)
    p.set_defaults(func=cmd_derivations)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (io.ParseError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (AlgebraError, ConstructionError) as exc:
        print(f"check failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
