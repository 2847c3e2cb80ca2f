"""Command-line front end.

Exit codes: 0 success, 1 internal error, 2 parse error, 3 unbound constant,
4 domain error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .conservation import (
    DomainError,
    classify,
    delta_expectation,
    expectation,
    solve_special_case,
    substitute_physical,
)
from .diffop import WaveSpec, collapse
from .numlab import GridSpec, UnboundConstantError, eval_const, probe_ensemble, quad_delta, quad_expectation
from .syntax import ParseError, format_const, format_fourier, parse_operator
from .verify import run_checks

EXIT_INTERNAL, EXIT_PARSE, EXIT_BINDING, EXIT_DOMAIN = 1, 2, 3, 4


def _binding(items: list[str]) -> dict[str, Fraction]:
    out = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise ParseError(f"binding must look like NAME=p/q, got {item!r}", 1, 1)
        try:
            out[name.strip()] = Fraction(value.strip())
        except ValueError:
            raise ParseError(f"binding value {value!r} is not a rational", 1, len(name) + 2) from None
    return out


def _read_expr(args) -> str:
    return args.expr if args.expr is not None else sys.stdin.read()


def _numeric(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, ensure_ascii=False, separators=(",", ":")))
    else:
        print(text)


def cmd_reduce(args) -> int:
    c = collapse(parse_operator(_read_expr(args)))
    a0, b1, b2 = (format_fourier(f) for f in (c.a0, c.b1, c.b2))
    _emit(args, {"a0": a0, "b1": b1, "b2": b2}, f"A0 = {a0}\nB1 = {b1}\nB2 = {b2}")
    return 0


def cmd_classify(args) -> int:
    fam = classify(parse_operator(_read_expr(args)))
    const = format_const(fam.constant)
    _emit(args, {"kind": fam.kind.value, "constant": const}, f"{fam.kind.value} {const}")
    return 0


def cmd_expect(args) -> int:
    p = parse_operator(_read_expr(args))
    exact = expectation(p)
    payload = {"expectation": format_const(exact)}
    lines = [f"expectation = {payload['expectation']}"]
    if args.numeric:
        binding = _binding(args.bind)
        value = complex(eval_const(exact, binding))
        numeric = quad_expectation(p, WaveSpec(), binding, GridSpec(args.nodes))
        diff = abs(numeric - value)
        payload.update(numeric=_numeric(numeric), abs_diff=diff)
        lines += [f"numeric = {numeric!r}", f"abs_diff = {diff:.3e}"]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_probe(args) -> int:
    p = parse_operator(_read_expr(args))
    binding = _binding(args.bind)
    grid = GridSpec(args.nodes)
    if args.delta is not None:
        dp = parse_operator(args.delta)
        exact = delta_expectation(p, dp)
        numeric = quad_delta(p, dp, WaveSpec(), binding, grid)
        diff = abs(numeric - complex(eval_const(exact, binding)))
        payload = {"delta": format_const(exact), "numeric": _numeric(numeric), "abs_diff": diff}
        text = f"delta = {payload['delta']}\nnumeric = {numeric!r}\nabs_diff = {diff:.3e}"
    else:
        report = probe_ensemble(p, args.family_only, args.trials, args.seed, binding, grid)
        payload = report.as_dict()
        text = "\n".join(f"{k} = {v}" for k, v in payload.items())
    _emit(args, payload, text)
    return 0


def cmd_solve_case(args) -> int:
    c = solve_special_case(args.k, args.mode, constant=args.constant)
    payload = c.as_dict()
    payload["kind"] = classify(c.solved).kind.value
    text = "\n".join(f"{k}: {v}" for k, v in payload.items())
    _emit(args, payload, text)
    return 0


def cmd_phys(args) -> int:
    fam = classify(parse_operator(_read_expr(args)))
    form = substitute_physical(fam, args.var, args.const)
    _emit(args, {"kind": fam.kind.value, "constant": format_const(fam.constant), "form": form}, form)
    return 0


def cmd_verify(args) -> int:
    checks = run_checks()
    ok = all(c.passed for c in checks)
    if args.json:
        print(json.dumps({
            "passed": ok,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks],
        }))
    else:
        for c in checks:
            print(f"{'PASS' if c.passed else 'FAIL'} {c.name}" + (f" ({c.detail})" if c.detail else ""))
        print(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conserved-ops",
        description="Collapse, classify and check differential operators acting on rho*e^(i*phi).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, expr=True):
        sp = sub.add_parser(name, help=help)
        if expr:
            sp.add_argument("--expr", help="operator text; read from stdin when absent")
        sp.add_argument("--json", action="store_true", help="emit one JSON object")
        sp.set_defaults(func=func)
        return sp

    add("reduce", cmd_reduce, "collapse to (A0, B1, B2)")
    add("classify", cmd_classify, "match against the Alpha/Beta/Gamma families")

    sp = add("expect", cmd_expect, "exact expectation value")
    sp.add_argument("--numeric", action="store_true", help="also integrate by quadrature")
    sp.add_argument("--bind", action="append", metavar="NAME=p/q", help="value for a symbolic constant")
    sp.add_argument("--nodes", type=int, default=64)

    sp = add("probe", cmd_probe, "variational probe of the expectation")
    sp.add_argument("--delta", help="perturbation operator")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--family-only", action="store_true", help="perturb within the conserved family")
    sp.add_argument("--bind", action="append", metavar="NAME=p/q")
    sp.add_argument("--nodes", type=int, default=64)

    sp = add("solve-case", cmd_solve_case, "solve one of the six special cases", expr=False)
    sp.add_argument("--k", type=int, required=True, choices=range(1, 7))
    sp.add_argument("--mode", choices=("integral", "pointwise"), default="pointwise")
    sp.add_argument("--constant", default="A")

    sp = add("phys", cmd_phys, "render a canonical family in a physical variable")
    sp.add_argument("--var", default="x")
    sp.add_argument("--const", default="hbar")

    add("verify", cmd_verify, "run the built-in symbolic-vs-numeric cross-check", expr=False)
    return parser


def _glue_values(argv: list[str]) -> list[str]:
    # operator text may start with '-', which argparse would read as a flag
    out, it = [], iter(argv)
    for arg in it:
        if arg in ("--expr", "--delta"):
            value = next(it, None)
            out.append(arg if value is None else f"{arg}={value}")
        else:
            out.append(arg)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_values(argv))
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnboundConstantError as exc:
        print(f"binding error: {exc}", file=sys.stderr)
        return EXIT_BINDING
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
