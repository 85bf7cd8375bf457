"""Command-line front end.

Subcommands: compile a target gate, compare against the commutator-baseline
estimate, compile a named application preset, or re-verify a saved circuit.
Target gates are written as a strength assignment followed by quadrature
factors, e.g. `t=0.1 X[0] X[1] X[2]^2` or `t=1 P[0] X[1]^2`.

Exit codes: 0 success, 2 parse error or unknown preset, 3 ineligible target,
4 verification failure above threshold.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .algebra import Basis, NOPoly
from .baseline import estimate_commutator_count, trotter_suzuki
from .circuit_tools import (SchemaViolation, count_gates, deserialize,
                            serialize_json)
from .decompose import Ineligible, TargetGate, check_eligibility, compile
from .verify import (DimensionTooLarge, FockContext, verify_numeric,
                     verify_symbolic)

EXIT_PARSE = 2
EXIT_INELIGIBLE = 3
EXIT_VERIFY = 4

SYMBOLIC_THRESHOLD = 1e-9


class SpecError(Exception):
    pass


_FACTOR_RE = re.compile(r"([XP])\[(\d+)\](?:\^(\d+))?$")


def parse_spec(text: str) -> TargetGate:
    """Parse `t=<float> X[i](^n) P[j](^n) ...` into a TargetGate."""
    tokens = text.split()
    if not tokens or not tokens[0].startswith("t="):
        raise SpecError("spec must start with a strength assignment t=<float>")
    try:
        strength = float(tokens[0][2:])
    except ValueError as exc:
        raise SpecError(f"bad strength {tokens[0][2:]!r}") from exc
    exps = []
    seen = set()
    for tok in tokens[1:]:
        m = _FACTOR_RE.match(tok)
        if not m:
            raise SpecError(f"bad factor {tok!r}; expected X[i]^n or P[i]^n")
        basis = Basis.POSITION if m.group(1) == "X" else Basis.MOMENTUM
        mode = int(m.group(2))
        power = int(m.group(3)) if m.group(3) else 1
        if mode in seen:
            raise SpecError(f"mode {mode} appears twice")
        if power < 1:
            raise SpecError("exponents must be positive")
        seen.add(mode)
        exps.append((mode, power, basis))
    if not exps:
        raise SpecError("spec needs at least one quadrature factor")
    return TargetGate(tuple(exps), strength)


def format_spec(target: TargetGate) -> str:
    parts = [f"t={target.strength:.17g}"]
    for mode, power, basis in target.exponents:
        sym = "X" if basis is Basis.POSITION else "P"
        parts.append(f"{sym}[{mode}]" + (f"^{power}" if power > 1 else ""))
    return " ".join(parts)


def parse_terms(text: str) -> tuple[float, list[NOPoly]]:
    """Parse `t=<float> <product> + <product> + ...` into summand polynomials."""
    tokens = text.split()
    if not tokens or not tokens[0].startswith("t="):
        raise SpecError("spec must start with a strength assignment t=<float>")
    strength = float(tokens[0][2:])
    groups: list[list[str]] = [[]]
    for tok in tokens[1:]:
        if tok == "+":
            groups.append([])
        else:
            groups[-1].append(tok)
    terms = []
    for group in groups:
        if not group:
            raise SpecError("empty summand")
        sub = parse_spec("t=1 " + " ".join(group))
        terms.append(sub.generator())
    return strength, terms


PRESETS = {
    "bose-hubbard-dipole": "X[0]^2 X[1]^2",
    "bose-hubbard-tunneling": "X[0] X[1]^3",
    "cross-kerr": "X[0]^2 X[1]^2",
    "pca-rotation": "X[0] X[1] X[2]",
    "matrix-inversion": "P[0] P[1] X[2] X[3]",
    "pde-cubic": "X[0] X[1] X[2]",
}


def preset_spec(name: str, strength: float) -> str:
    if name.startswith("montecarlo:"):
        try:
            n = int(name.split(":", 1)[1])
        except ValueError:
            raise SpecError(f"bad preset {name!r}")
        if n < 1:
            raise SpecError("montecarlo power must be positive")
        body = f"X[0]^{n} P[1] P[2] P[3]" if n > 1 else "X[0] P[1] P[2] P[3]"
    elif name in PRESETS:
        body = PRESETS[name]
    else:
        raise SpecError(f"unknown preset {name!r}")
    return f"t={strength:g} {body}"


def _report_lines(report, residual_sym, residual_num, phase):
    lines = [
        f"route:               {report.route}",
        f"gates (non-Fourier): {report.n_gates_nonfourier}",
        f"gates (total):       {report.n_gates_total}",
        f"gates (pre-opt):     {report.n_gates_preopt}",
        f"ancilla modes:       {report.n_ancillas}",
        f"recursion steps:     {len(report.recursion_trace)}"
        + (f" (max depth {max(d for _, d in report.recursion_trace)})"
           if report.recursion_trace else ""),
    ]
    if residual_sym is not None:
        lines.append(f"symbolic residual:   {residual_sym:.3e}")
    if residual_num is not None:
        lines.append(f"numeric error:       {residual_num:.3e}")
        lines.append(f"phase offset:        {phase:.3e}")
    return lines


def _report_json(report, residual_sym, residual_num, phase):
    doc = {
        "route": report.route,
        "n_gates_nonfourier": report.n_gates_nonfourier,
        "n_gates_total": report.n_gates_total,
        "n_gates_preopt": report.n_gates_preopt,
        "n_ancillas": report.n_ancillas,
        "recursion_trace": [list(e) for e in report.recursion_trace],
        "residual_symbolic": residual_sym,
        "residual_numeric": residual_num,
        "phase_offset": phase,
    }
    return json.dumps(doc, indent=2)


def _compile_and_verify(target: TargetGate, args) -> int:
    verdict = check_eligibility(target)
    if not verdict.eligible:
        print(f"ineligible: {verdict.reason}", file=sys.stderr)
        return EXIT_INELIGIBLE

    if getattr(args, "trotter", None):
        seq = trotter_suzuki([target.generator()], target.strength, args.trotter)
        print(f"trotter split with K={args.trotter}: "
              f"{count_gates(seq, exclude_fourier=True)} non-Fourier gates")
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(serialize_json(seq))
        return 0

    seq, report = compile(target, balanced=(args.param_split == "balanced"))

    residual_sym = residual_num = phase = None
    status = 0
    if not args.no_verify:
        residual_sym = verify_symbolic(seq, target.generator(), target.strength)
        report.residual_symbolic = residual_sym
        if residual_sym > SYMBOLIC_THRESHOLD:
            status = EXIT_VERIFY
        if args.numeric_cutoff:
            ctx = FockContext(args.numeric_cutoff, args.subspace, args.tolerance)
            try:
                residual_num, phase = verify_numeric(
                    seq, target.generator(), target.strength, ctx)
                report.residual_numeric = residual_num
                if residual_num > ctx.tolerance:
                    status = EXIT_VERIFY
            except DimensionTooLarge as exc:
                print(f"numeric check skipped: {exc}", file=sys.stderr)

    if args.format == "json":
        print(_report_json(report, residual_sym, residual_num, phase))
    else:
        print(f"target:              {format_spec(target)}")
        for line in _report_lines(report, residual_sym, residual_num, phase):
            print(line)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(serialize_json(seq))
    if status == EXIT_VERIFY:
        print("verification failed: residual above threshold", file=sys.stderr)
    return status


def cmd_compile(args) -> int:
    try:
        target = parse_spec(args.spec)
    except (SpecError, ValueError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return _compile_and_verify(target, args)


def cmd_preset(args) -> int:
    try:
        spec = preset_spec(args.name, args.strength)
        target = parse_spec(spec)
    except (SpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return _compile_and_verify(target, args)


def cmd_compare(args) -> int:
    try:
        target = parse_spec(args.spec)
    except (SpecError, ValueError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    verdict = check_eligibility(target)
    if not verdict.eligible:
        print(f"ineligible: {verdict.reason}", file=sys.stderr)
        return EXIT_INELIGIBLE
    seq, report = compile(target)
    exact = report.n_gates_nonfourier
    estimate, model = estimate_commutator_count(target, args.epsilon)
    print(f"target:              {format_spec(target)}")
    print(f"exact compilation:   {exact} non-Fourier gates")
    print(f"baseline estimate:   {estimate} gates at precision {args.epsilon:g}")
    print(f"ratio:               {estimate / max(exact, 1):.3g}")
    print(f"model:               {model}")
    return 0


def cmd_verify(args) -> int:
    try:
        target = parse_spec(args.spec)
        with open(args.circuit) as fh:
            seq = deserialize(fh.read())
    except (SpecError, ValueError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (OSError, SchemaViolation) as exc:
        print(f"cannot load circuit: {exc}", file=sys.stderr)
        return EXIT_PARSE
    residual = verify_symbolic(seq, target.generator(), target.strength)
    print(f"symbolic residual:   {residual:.3e}")
    status = 0 if residual <= SYMBOLIC_THRESHOLD else EXIT_VERIFY
    if args.numeric_cutoff:
        ctx = FockContext(args.numeric_cutoff, args.subspace, args.tolerance)
        try:
            err, phase = verify_numeric(seq, target.generator(),
                                        target.strength, ctx)
            print(f"numeric error:       {err:.3e}")
            print(f"phase offset:        {phase:.3e}")
            if err > ctx.tolerance:
                status = EXIT_VERIFY
        except DimensionTooLarge as exc:
            print(f"numeric check skipped: {exc}", file=sys.stderr)
    if status:
        print("verification failed: residual above threshold", file=sys.stderr)
    return status


def _add_common(p):
    p.add_argument("--out", help="write circuit JSON to this path")
    p.add_argument("--no-verify", action="store_true",
                   help="skip verification")
    p.add_argument("--numeric-cutoff", type=int, default=0, metavar="D",
                   help="run the truncated-Fock check at this cutoff")
    p.add_argument("--subspace", type=int, default=5, metavar="d",
                   help="comparison subspace levels per mode")
    p.add_argument("--tolerance", type=float, default=1e-5,
                   help="numeric error threshold")
    p.add_argument("--param-split", choices=["default", "balanced"],
                   default="default",
                   help="strength-split policy for the identity parameters")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--trotter", type=int, default=0, metavar="K",
                   help="emit a K-step Trotter circuit instead of the exact one")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cvexact",
        description="exact compiler for quadrature-monomial gates")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile a target gate")
    p.add_argument("spec", help='e.g. "t=0.1 X[0] X[1] X[2]^2"')
    _add_common(p)
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("compare", help="exact count vs baseline estimate")
    p.add_argument("spec")
    p.add_argument("--epsilon", type=float, default=1e-3)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("preset", help="compile a named application kernel")
    p.add_argument("name", help="|".join(list(PRESETS) + ["montecarlo:<n>"]))
    p.add_argument("--strength", "-t", type=float, default=1.0)
    _add_common(p)
    p.set_defaults(func=cmd_preset)

    p = sub.add_parser("verify", help="re-verify a saved circuit")
    p.add_argument("circuit", help="circuit JSON path")
    p.add_argument("spec")
    p.add_argument("--numeric-cutoff", type=int, default=0, metavar="D")
    p.add_argument("--subspace", type=int, default=5, metavar="d")
    p.add_argument("--tolerance", type=float, default=1e-5)
    p.set_defaults(func=cmd_verify)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
