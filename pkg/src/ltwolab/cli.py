"""Command-line front end.

Exit codes: 0 success, 1 failed check or law violation, 2 invalid input,
3 numerical failure.  Results go to stdout as JSON with floats printed to
17 significant digits; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import factorize, hilb, inversecat, lawlab, ltwo, pinj
from .errors import LabError, NumericalFailure
from .numerics import LAW_TOL, matrix_from_json, matrix_to_json, operator_norm
from .pinj import ChainDiagram, FiniteSet, PartialInjection

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


class CheckFailed(Exception):
    """Raised by a handler that has produced output but must exit with 1."""

    def __init__(self, payload):
        self.payload = payload


def _encode(obj) -> str:
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return json.dumps(str(x))
        text = format(x, ".17g")
        if text.lstrip("-").isdigit():
            text += ".0"
        return text
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k), ensure_ascii=False)}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    if isinstance(obj, np.ndarray):
        return _encode(matrix_to_json(obj))
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj) -> str:
    return _encode(obj)


def _load(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _pi(path: str) -> PartialInjection:
    return PartialInjection.from_json(_load(path))


def _mat(path: str) -> np.ndarray:
    return matrix_from_json(_load(path))


def _labels(path: str) -> FiniteSet:
    data = _load(path)
    if isinstance(data, dict):
        data = data.get("labels")
    if not isinstance(data, list):
        raise LabError("expected a list of labels or {\"labels\": [...]}", code="malformed")
    return FiniteSet(data)


def _factorization_json(fac: factorize.LtwoFactorization, g) -> dict:
    return {
        "u": matrix_to_json(fac.u),
        "f": fac.f.to_json(),
        "v": matrix_to_json(fac.v),
        "mode": fac.mode,
        "residual": fac.residual(g),
    }


# pinj


def cmd_pinj(args):
    op = args.op
    if op == "compose":
        return pinj.compose(_pi(args.g), _pi(args.f)).to_json()
    if op == "dagger":
        return pinj.dagger(_pi(args.f)).to_json()
    if op in ("tensor", "oplus"):
        return getattr(pinj, op)(_pi(args.f), _pi(args.g)).to_json()
    if op == "equalizer":
        obj, inc = pinj.equalizer(_pi(args.f), _pi(args.g))
        return {"object": list(obj.labels), "inclusion": inc.to_json()}
    if op == "colimit":
        d = ChainDiagram.from_json(_load(args.file))
        obj, cocone = pinj.chain_colimit(d)
        return {"object": list(obj.labels), "cocone": [c.to_json() for c in cocone]}
    if op == "sup":
        return pinj.sup(_pi(p) for p in args.files).to_json()
    raise AssertionError(op)


# ltwo


def cmd_ltwo(args):
    op = args.op
    if op == "dim":
        return {"dim": ltwo.ltwo_object(_labels(args.file))}
    if op == "matrix":
        return matrix_to_json(ltwo.ltwo_matrix(_pi(args.f)))
    if op == "verify":
        g = _pi(args.g) if args.g else None
        report = ltwo.verify_preservation(args.law, _pi(args.f), g)
        if not report["holds"]:
            raise CheckFailed(report)
        return report
    if op == "basis-check":
        a = _mat(args.file)
        dom = _labels(args.dom) if args.dom else FiniteSet.range(a.shape[1])
        cod = _labels(args.cod) if args.cod else FiniteSet.range(a.shape[0])
        ok = ltwo.is_basis_preserving(a, dom, cod, args.tol)
        out = {"basis_preserving": ok}
        if not ok:
            raise CheckFailed(out)
        return out
    raise AssertionError(op)


# hilb


def cmd_hilb(args):
    op, tol = args.op, args.tol
    if op == "polar":
        a = _mat(args.file)
        r = factorize.polar(a, side=args.side, flavor="strong" if args.strong else "kernel_matched")
        return {
            "isometry_part": matrix_to_json(r.isometry_part),
            "positive_part": matrix_to_json(r.positive_part),
            "side": r.side,
            "flavor": r.flavor,
            "residual": operator_norm(a - r.product()),
        }
    if op == "factorize":
        g = _mat(args.file)
        return _factorization_json(factorize.essential_full_factor(g), g)
    if op == "isometry-factor":
        i = _mat(args.file)
        return _factorization_json(factorize.isometry_factor(i, tol), i)
    if op == "classify":
        return hilb.classify(_mat(args.file), tol).to_json()
    if op == "equalizer":
        basis = hilb.equalizer(_mat(args.a), _mat(args.b))
        return {"dim": int(basis.shape[1]), "basis": matrix_to_json(basis)}
    if op == "inverse":
        return matrix_to_json(hilb.positive_inverse(_mat(args.file), tol))
    if op == "fill-in":
        d = factorize.diagonal_fill_in(_mat(args.l), _mat(args.r), _mat(args.top), _mat(args.bottom), tol)
        return matrix_to_json(d)
    if op == "chain":
        chain = factorize.finite_rank_chain(_mat(args.file), tol)
        return {"chain": [matrix_to_json(c) for c in chain]}
    raise AssertionError(op)


# embed


def cmd_embed(args):
    c = inversecat.InverseCategoryPresentation.from_json(_load(args.file))
    if args.op == "validate":
        report = inversecat.validate(c)
        if not report["valid"]:
            raise CheckFailed(report)
        return report
    if args.op == "wp":
        return inversecat.wagner_preston(c).to_json()
    if args.op == "check":
        report = inversecat.check_embedding(c, inversecat.wagner_preston(c))
        if not report["passed"]:
            raise CheckFailed(report)
        return report
    raise AssertionError(args.op)


def cmd_laws(args):
    report = lawlab.run_suite(args.suite, args.seed, args.cases, args.max_size)
    if not report["passed"]:
        raise CheckFailed(report)
    return report


def cmd_demo(args):
    op = args.op
    if op == "equalizer":
        return lawlab.demo_equalizer_nonpreservation()
    if op == "coproduct":
        x = FiniteSet(args.x)
        y = FiniteSet(args.y)
        return lawlab.search_binary_coproduct(x, y, args.bound)
    if op == "isometry-composition":
        return lawlab.demo_isometry_composition(args.theta, args.tol)
    if op == "norm-growth":
        return lawlab.demo_unbounded_cotuple(args.n)
    if op == "dense-range":
        return lawlab.demo_dense_range_noniso(args.n)
    if op == "restriction":
        return lawlab.demo_restriction_failure()
    raise AssertionError(op)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ltwolab", description=__doc__.splitlines()[0])
    parser.add_argument("--tol", type=float, default=LAW_TOL, help="tolerance for numerical judgments")
    # also accepted after the subcommand; SUPPRESS keeps it from clobbering the global value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS)
    top = parser.add_subparsers(dest="group", required=True)

    def group(name, handler, help_):
        p = top.add_parser(name, help=help_)
        p.set_defaults(handler=handler)
        return p.add_subparsers(dest="op", required=True)

    sub = group("pinj", cmd_pinj, "partial injections")
    for op in ("compose", "tensor", "oplus", "equalizer"):
        p = sub.add_parser(op, parents=[common])
        p.add_argument("-f", required=True)
        p.add_argument("-g", required=True)
    sub.add_parser("dagger", parents=[common]).add_argument("-f", required=True)
    sub.add_parser("colimit", parents=[common]).add_argument("file")
    sub.add_parser("sup", parents=[common]).add_argument("files", nargs="+")

    sub = group("ltwo", cmd_ltwo, "the ℓ² functor")
    sub.add_parser("dim", parents=[common]).add_argument("file")
    sub.add_parser("matrix", parents=[common]).add_argument("-f", required=True)
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("--law", choices=ltwo.LAWS, required=True)
    p.add_argument("-f", required=True)
    p.add_argument("-g")
    p = sub.add_parser("basis-check", parents=[common])
    p.add_argument("file")
    p.add_argument("--dom")
    p.add_argument("--cod")

    sub = group("hilb", cmd_hilb, "matrices and factorisations")
    p = sub.add_parser("polar", parents=[common])
    p.add_argument("--side", choices=("left", "right"), default="right")
    p.add_argument("--strong", action="store_true")
    p.add_argument("file")
    for op in ("factorize", "isometry-factor", "classify", "inverse", "chain"):
        sub.add_parser(op, parents=[common]).add_argument("file")
    p = sub.add_parser("equalizer", parents=[common])
    p.add_argument("a")
    p.add_argument("b")
    p = sub.add_parser("fill-in", parents=[common])
    for name in ("l", "r", "top", "bottom"):
        p.add_argument(f"--{name}", required=True)

    sub = group("embed", cmd_embed, "inverse categories")
    for op in ("validate", "wp", "check"):
        sub.add_parser(op, parents=[common]).add_argument("file")

    sub = group("laws", cmd_laws, "seeded law suites")
    p = sub.add_parser("run", parents=[common])
    p.add_argument("--suite", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--max-size", type=int, default=8)

    sub = group("demo", cmd_demo, "counterexample demos")
    sub.add_parser("equalizer", parents=[common])
    p = sub.add_parser("coproduct", parents=[common])
    p.add_argument("--x", nargs="*", default=["x"])
    p.add_argument("--y", nargs="*", default=["y"])
    p.add_argument("--bound", type=int, default=3)
    sub.add_parser("isometry-composition", parents=[common]).add_argument(
        "--theta", type=float, default=math.pi / 4
    )
    sub.add_parser("norm-growth", parents=[common]).add_argument("--n", type=int, default=3)
    sub.add_parser("dense-range", parents=[common]).add_argument("--n", type=int, default=4)
    sub.add_parser("restriction", parents=[common])
    return parser


def dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        result = args.handler(args)
    except CheckFailed as exc:
        print(dumps(exc.payload))
        return EXIT_FAIL
    except NumericalFailure as exc:
        print(dumps(exc.to_json()), file=sys.stderr)
        return EXIT_NUMERIC
    except LabError as exc:
        print(dumps(exc.to_json()), file=sys.stderr)
        return EXIT_INPUT
    except (OSError, json.JSONDecodeError, ValueError, IndexError) as exc:
        print(dumps({"error": "invalid-input", "message": str(exc)}), file=sys.stderr)
        return EXIT_INPUT
    print(dumps(result))
    return EXIT_OK


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
