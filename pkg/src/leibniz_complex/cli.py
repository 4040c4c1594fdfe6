"""Command-line interface.

Exit codes are a stable contract: 0 all checks passed, 1 an identity or
validity check failed, 2 unusable input (bad file, bad syntax, unknown
fixture). `--algebra` accepts either a JSON file path or the name of a
bundled fixture (A3, O1, O2, AFF_O1, omni(n)).
"""

import argparse
import json
import sys

from .algebra import (AlgebraFormatError, InvalidAlgebraError, IntegrityError,
                      PreconditionError, UnknownFixtureError, algebra_to_dict,
                      basis_vec, build_fixture, check_leibniz, load_algebra,
                      quotient_by_kernel)
from .brackets import derived_bracket_dual, poisson
from .cochains import (CochainFormatError, ComplexContext, InvalidCochainError,
                       coboundary, cochain_to_dict, cup, load_cochain)
from .duality import NotRepresentableError, is_representable, sharp
from .sympoly import SymPolyParseError
from .verify import VerifyConfig, run_verify

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2

_INPUT_ERRORS = (FileNotFoundError, IsADirectoryError, PermissionError,
                 json.JSONDecodeError, AlgebraFormatError, CochainFormatError,
                 SymPolyParseError, UnicodeDecodeError)
_CHECK_ERRORS = (InvalidAlgebraError, InvalidCochainError, NotRepresentableError,
                 IntegrityError, PreconditionError)


def _load_algebra_arg(value):
    try:
        return build_fixture(value)
    except UnknownFixtureError:
        return load_algebra(value)


def _emit(args, payload, text):
    rendered = json.dumps(payload, indent=2) if args.format == "json" else text
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rendered + "\n")
    else:
        print(rendered)


def _emit_cochain(args, omega):
    data = cochain_to_dict(omega)
    _emit(args, data, json.dumps(data, indent=2))


def cmd_check(args):
    try:
        algebra = _load_algebra_arg(args.algebra)
    except InvalidAlgebraError as exc:
        i, j, l, lhs, rhs = exc.report.violations[0]
        _emit(args, {"passed": False, "violation": {
            "triple": [i, j, l], "lhs": [str(c) for c in lhs], "rhs": [str(c) for c in rhs]}},
            f"FAIL Leibniz identity at triple ({i},{j},{l})")
        return EXIT_CHECK_FAILED
    report = check_leibniz(algebra)
    zdim = algebra.zdim
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            algebra.pairing_z(basis_vec(algebra.dim, i), basis_vec(algebra.dim, j))
    _emit(args, {"passed": report.ok, "dim": algebra.dim, "left_center_dim": zdim,
                 "fat": algebra.is_fat()},
          f"PASS {algebra.dim}-dimensional algebra, left center dim {zdim}, "
          f"fat={algebra.is_fat()}")
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def cmd_center(args):
    algebra = _load_algebra_arg(args.algebra)
    vectors = [[str(c) for c in v] for v in algebra.z_basis]
    text = "\n".join("  " + "  ".join(row) for row in vectors) or "  (trivial)"
    _emit(args, {"dim": algebra.dim, "left_center": vectors},
          f"left center dimension {len(vectors)}\n{text}")
    return EXIT_OK


def cmd_fat(args):
    algebra = _load_algebra_arg(args.algebra)
    kernel = [[str(c) for c in v] for v in algebra.kernel_basis]
    fat = algebra.is_fat()
    _emit(args, {"fat": fat, "kernel": kernel},
          f"fat={fat}, pairing kernel dimension {len(kernel)}")
    return EXIT_OK


def cmd_quotient(args):
    algebra = _load_algebra_arg(args.algebra)
    quotient = quotient_by_kernel(algebra)
    data = algebra_to_dict(quotient)
    _emit(args, data, json.dumps(data, indent=2))
    return EXIT_OK


def cmd_d(args):
    algebra = _load_algebra_arg(args.algebra)
    ctx = ComplexContext(algebra)
    omega = load_cochain(ctx, args.cochain[0])
    _emit_cochain(args, coboundary(ctx, omega))
    return EXIT_OK


def cmd_cup(args):
    algebra = _load_algebra_arg(args.algebra)
    ctx = ComplexContext(algebra)
    omega = load_cochain(ctx, args.cochain[0])
    eta = load_cochain(ctx, args.cochain[1])
    _emit_cochain(args, cup(ctx, omega, eta))
    return EXIT_OK


def cmd_bracket(args):
    algebra = _load_algebra_arg(args.algebra)
    ctx = ComplexContext(algebra)
    omega = load_cochain(ctx, args.cochain[0])
    eta = load_cochain(ctx, args.cochain[1])
    _emit_cochain(args, poisson(ctx, omega, eta))
    return EXIT_OK


def cmd_representable(args):
    algebra = _load_algebra_arg(args.algebra)
    ctx = ComplexContext(algebra)
    omega = load_cochain(ctx, args.cochain[0])
    report = is_representable(ctx, omega)
    failures = [{"component": k, "prefix": list(p), "fs": list(f)}
                for k, p, f in report.failures]
    text = "representable" if report.ok else \
        "not representable, first failure: " + json.dumps(failures[0])
    _emit(args, {"representable": report.ok, "failures": failures}, text)
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def cmd_derived_bracket(args):
    algebra = _load_algebra_arg(args.algebra)
    ctx = ComplexContext(algebra)
    if not (0 <= args.i < algebra.dim and 0 <= args.j < algebra.dim):
        raise AlgebraFormatError(f"basis indices must lie in 0..{algebra.dim - 1}")
    ei, ej = basis_vec(algebra.dim, args.i), basis_vec(algebra.dim, args.j)
    direct = algebra.bracket(ei, ej)
    dual = derived_bracket_dual(ctx, ei, ej)
    expected = tuple(algebra.pairing_poly(direct, basis_vec(algebra.dim, t))
                     for t in range(algebra.dim))
    dual_equal = all(a == b for a, b in zip(dual.values, expected))
    payload = {
        "pair": [args.i, args.j],
        "structure_product": [str(c) for c in direct],
        "derived_dual": [v.render() for v in dual.values],
        "flat_of_product": [p.render() for p in expected],
        "dual_equal": dual_equal,
    }
    lines = [f"e_{args.i} . e_{args.j} from structure constants: "
             + " ".join(str(c) for c in direct),
             "derived covector: " + dual.render(ctx),
             f"covector level equal: {dual_equal}"]
    if algebra.is_fat():
        lifted = sharp(ctx, dual).as_vector()
        sharp_equal = lifted == direct
        payload["sharp"] = [str(c) for c in lifted] if lifted else None
        payload["sharp_equal"] = sharp_equal
        lines.append(f"sharp recovers the product: {sharp_equal}")
        ok = dual_equal and sharp_equal
    else:
        lines.append("algebra is not fat: covector-level comparison only")
        ok = dual_equal
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_verify(args):
    config = VerifyConfig(max_degree=args.max_degree, fixtures=tuple(args.fixtures),
                          seed=args.seed, samples=args.samples, fmt=args.format,
                          out=args.out)
    report = run_verify(config, mutation=args.inject_mutation)
    _emit(args, report.to_dict(), report.render_text())
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def build_parser():
    parser = argparse.ArgumentParser(
        prog="leibcx",
        description="Exact standard-complex and derived-bracket calculator "
                    "for finite-dimensional Leibniz algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, cochains=0):
        p.add_argument("--algebra", required=True,
                       help="algebra JSON file or fixture name (A3, O1, O2, AFF_O1, omni(n))")
        if cochains:
            p.add_argument("--cochain", action="append", required=True,
                           help="cochain JSON file (repeat for binary operations)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", help="write the result to a file instead of stdout")

    common(sub.add_parser("check", help="validate an algebra file"))
    common(sub.add_parser("center", help="print the left center basis"))
    common(sub.add_parser("fat", help="report fatness and the pairing kernel"))
    common(sub.add_parser("quotient", help="quotient by the pairing kernel"))
    common(sub.add_parser("d", help="coboundary of a cochain"), cochains=1)
    common(sub.add_parser("cup", help="product of two cochains"), cochains=2)
    common(sub.add_parser("bracket", help="graded bracket of two representable cochains"),
           cochains=2)
    common(sub.add_parser("representable", help="test representability of a cochain"),
           cochains=1)
    db = sub.add_parser("derived-bracket",
                        help="compare e_i . e_j with the derived bracket")
    db.add_argument("i", type=int)
    db.add_argument("j", type=int)
    common(db)
    vf = sub.add_parser("verify", help="run the full identity suite")
    vf.add_argument("--fixtures", nargs="+", default=["A3", "O1", "O2", "AFF_O1"])
    vf.add_argument("--max-degree", type=int, default=3)
    vf.add_argument("--seed", type=int, default=0)
    vf.add_argument("--samples", type=int, default=25)
    vf.add_argument("--format", choices=("text", "json"), default="text")
    vf.add_argument("--out")
    vf.add_argument("--inject-mutation", choices=("zeta-sign", "d0-sign"),
                    help="testing hook: break one sign and prove the suite notices")

    handlers = {
        "check": cmd_check, "center": cmd_center, "fat": cmd_fat,
        "quotient": cmd_quotient, "d": cmd_d, "cup": cmd_cup,
        "bracket": cmd_bracket, "representable": cmd_representable,
        "derived-bracket": cmd_derived_bracket, "verify": cmd_verify,
    }
    return parser, handlers


def main(argv=None):
    parser, handlers = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "cochain", None) is not None:
        needed = 2 if args.command in ("cup", "bracket") else 1
        if len(args.cochain) != needed:
            parser.error(f"{args.command} needs exactly {needed} --cochain argument(s)")
    try:
        return handlers[args.command](args)
    except _INPUT_ERRORS as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except UnknownFixtureError as exc:
        print(f"input error: unknown fixture {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except _CHECK_ERRORS as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
