"""Command-line front end.

Every command writes one JSON report to stdout; diagnostics go to stderr.
Exit status: 0 success, 1 a property violation was found, 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import SigmaError
from .field import FieldDescriptor
from .invariant import (
    canonical_form,
    congruence_transform,
    d_invariant,
    kappa,
    kappa_explicit,
    scaled_congruence_transform,
    sigma,
    sigma_all_modes,
)
from .matrix import (
    Matrix,
    adjugate,
    derive_rng,
    inverse,
    is_symmetric,
    random_nonsingular,
    random_nonzero_scalar,
    random_symmetric_nonsingular,
    scale,
    transpose,
)
from .orbit import congruence_orbits, explore_reduction
from .zeropotent import ZeropotentAlgebra3, is_isomorphic_bruteforce

DEFAULT_SEED = 0xC0FFEE

OK, VIOLATION, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_matrix(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return Matrix.loads(text)


def _field(name):
    try:
        return FieldDescriptor.from_name(name)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(report):
    sys.stdout.write(json.dumps(report, indent=2) + "\n")


def _modes_json(values):
    return {mode.value: str(v) for mode, v in values.items()}


# -- property checks shared by props and fuzz --------------------------------


def prop1_checks(a, c):
    """Evaluate items (1)-(5) on ``a``; yields (name, holds or None when not applicable)."""
    s = sigma(a)
    yield "transpose", sigma(transpose(a)) == s
    yield "inverse", sigma(inverse(a)) == s
    yield "adjugate", sigma(adjugate(a)) == s
    yield "scalar", sigma(scale(a, c)) == s
    if is_symmetric(a):
        yield "symmetric", s == a.field.from_int(a.n)
    else:
        yield "symmetric", None


def _modes_agree(a):
    return len(set(sigma_all_modes(a).values())) == 1


# -- commands ---------------------------------------------------------------


def cmd_sigma(args):
    a = _read_matrix(args.file)
    values = sigma_all_modes(a)
    _emit(
        {
            "command": "sigma",
            "field": a.field.to_json(),
            "n": a.n,
            "sigma": _modes_json(values),
            "agreement": len(set(values.values())) == 1,
        }
    )
    return OK if len(set(values.values())) == 1 else VIOLATION


def cmd_props(args):
    a = _read_matrix(args.file)
    c = a.field.parse(args.scalar)
    if not c:
        raise UsageError("--scalar must be nonzero in the matrix field")
    labels = {
        "transpose": "(1) sigma(A^T) = sigma(A)",
        "inverse": "(2) sigma(A^-1) = sigma(A)",
        "adjugate": "(3) sigma(adj A) = sigma(A)",
        "scalar": f"(4) sigma(cA) = sigma(A), c = {a.field.format(c)}",
        "symmetric": "(5) sigma(A) = n for symmetric A",
    }
    checks = []
    failed = False
    for name, holds in prop1_checks(a, c):
        result = "skipped" if holds is None else ("pass" if holds else "fail")
        failed |= holds is False
        checks.append({"item": labels[name], "result": result})
    agree = _modes_agree(a)
    checks.append({"item": "trace, cofactor and adjugate forms agree", "result": "pass" if agree else "fail"})
    _emit({"command": "props", "sigma": str(sigma(a)), "checks": checks, "ok": not failed and agree})
    return VIOLATION if failed or not agree else OK


def cmd_kappa(args):
    a = _read_matrix(args.file)
    if a.n != 3:
        raise UsageError(f"kappa needs a 3x3 matrix, got {a.n}x{a.n}")
    k, ke = kappa(a), kappa_explicit(a)
    _emit({"command": "kappa", "kappa": str(k), "kappa_explicit": str(ke), "agreement": k == ke})
    return OK if k == ke else VIOLATION


def cmd_canon(args):
    f = args.field
    a, b, c = (f.element(v) for v in (args.a, args.b, args.c))
    m = canonical_form(a, b, c)
    _emit(
        {
            "command": "canon",
            "matrix": m.to_json(),
            "D": str(d_invariant(a, b, c)),
            "sigma": str(sigma(m)),
            "kappa": str(kappa(m)),
        }
    )
    return OK


def run_fuzz(n, count, seed, field, bound=9):
    """Seeded fuzz campaign; returns the report dict.

    Trial i draws from its own stream derived from (seed, i), so the report
    does not depend on evaluation order.
    """
    names = ["congruence", "scaled_congruence", "transpose", "inverse", "adjugate", "scalar",
             "symmetric", "modes"]
    failures = {k: 0 for k in names}
    first = None
    for i in range(count):
        rng = derive_rng(seed, "fuzz", field.name, n, i)
        a = random_nonsingular(n, field, rng, bound)
        x = random_nonsingular(n, field, rng, bound)
        c = random_nonzero_scalar(field, rng, bound)
        s = random_symmetric_nonsingular(n, field, rng, bound)
        s_a = sigma(a)
        results = {
            "congruence": sigma(congruence_transform(a, x)) == s_a,
            "scaled_congruence": sigma(scaled_congruence_transform(a, x)) == s_a,
        }
        results.update((k, v) for k, v in prop1_checks(a, c) if k != "symmetric")
        results["symmetric"] = sigma(s) == field.from_int(n)
        results["modes"] = _modes_agree(a) and _modes_agree(s)
        for k, ok in results.items():
            if not ok:
                failures[k] += 1
                if first is None:
                    first = {"trial": i, "check": k, "A": a.to_json(), "X": x.to_json(),
                             "c": str(c), "S": s.to_json()}
    return {
        "command": "fuzz",
        "field": field.to_json(),
        "n": n,
        "count": count,
        "seed": seed,
        "bound": bound,
        "failures": failures,
        "first_failure": first,
        "ok": first is None,
    }


def cmd_fuzz(args):
    if args.n < 1 or args.count < 0 or args.bound < 1:
        raise UsageError("need --n >= 1, --count >= 0 and --bound >= 1")
    report = run_fuzz(args.n, args.count, args.seed, args.field, args.bound)
    _emit(report)
    if report["first_failure"] is not None:
        print(f"first failure: {json.dumps(report['first_failure'])}", file=sys.stderr)
        return VIOLATION
    return OK


def cmd_orbits(args):
    report = congruence_orbits(args.n, args.p, allow_large=args.allow_large)
    doc = report.to_json()
    doc = {"command": "orbits", **doc}
    _emit(doc)
    return VIOLATION if report.violations else OK


def _as_prime(m, p):
    f = FieldDescriptor.prime(p)
    if m.field == f:
        return m
    if m.field.is_rational:
        if any(x.denominator != 1 for r in m.rows for x in r):
            raise UsageError("rational entries must be integers to reduce mod p")
        return Matrix(f, [[int(x) for x in r] for r in m.rows])
    raise UsageError(f"matrix is over {m.field}, but --p {p} was given")


def cmd_iso(args):
    a = _as_prime(_read_matrix(args.file_a), args.p)
    b = _as_prime(_read_matrix(args.file_b), args.p)
    if a.n != 3 or b.n != 3:
        raise UsageError("isomorphism test needs 3x3 structure matrices")
    alg_a, alg_b = ZeropotentAlgebra3(a), ZeropotentAlgebra3(b)
    found, x = is_isomorphic_bruteforce(alg_a, alg_b, allow_large=args.allow_large)
    report = {
        "command": "iso",
        "field": a.field.to_json(),
        "isomorphic": found,
        "witness": None if x is None else x.to_json(),
    }
    for key, m in (("sigma_a", a), ("sigma_b", b)):
        try:
            report[key] = str(sigma(m))
        except SigmaError:
            report[key] = None
    if x is not None:
        report["witness_revalidated"] = scaled_congruence_transform(a, x) == b
    _emit(report)
    return OK if x is None or report["witness_revalidated"] else VIOLATION


def cmd_explore(args):
    report = explore_reduction(args.p, sample=args.sample, seed=args.seed)
    _emit({"command": "explore-reduction", **report.to_json()})
    return OK if report.all_witnesses_valid else VIOLATION


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sigma-congruence",
        description="Congruence invariant sigma(A) = Tr(A^T A^-1) over exact fields.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, allow_abbrev=False)
        p.set_defaults(func=func)
        return p

    p = add("sigma", cmd_sigma, "sigma of a matrix in all three forms")
    p.add_argument("file")

    p = add("props", cmd_props, "check sigma's transpose/inverse/adjugate/scalar/symmetric identities")
    p.add_argument("file")
    p.add_argument("--scalar", default="2", help="nonzero scalar c for sigma(cA) (default 2)")

    p = add("kappa", cmd_kappa, "kappa = 3 - sigma and its explicit polynomial form (3x3)")
    p.add_argument("file")

    p = add("canon", cmd_canon, "canonical form A(a,b,c) and D(a,b,c)")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("c")
    p.add_argument("--field", type=_field, default=FieldDescriptor.rational())

    p = add("fuzz", cmd_fuzz, "random congruence-invariance and identity trials")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--field", type=_field, default=FieldDescriptor.rational())
    p.add_argument("--bound", type=int, default=9, help="entry bound over Q (default 9)")

    p = add("orbits", cmd_orbits, "exhaustive congruence orbits of GL(n, p)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--allow-large", action="store_true", help="raise the cap from p <= 5 to p <= 7")

    p = add("iso", cmd_iso, "brute-force isomorphism of two zeropotent algebras over GF(p)")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--allow-large", action="store_true", help="raise the cap from p <= 5 to p <= 7")

    p = add("explore-reduction", cmd_explore, "search A(a,b,c) -> A(s,0,0) congruences over GF(p)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--sample", type=int, default=None)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SigmaError, UsageError, ValueError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"error: {msg}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
