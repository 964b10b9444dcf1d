"""Command-line front end: ``ndstab is-stabilizable | stable-poly | bench``."""

from __future__ import annotations

import argparse
import csv
import json
import random
import re
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .groebner import Ideal, NotZeroDimensionalError, groebner, quotient_dimension
from .interval import ComplexBox
from .poly import MultiPoly, UniPoly, merge_vars
from .stabilizability import is_stabilizable
from .stabilization import CapExceededError, NotStabilizableError, stable_polynomial
from .textform import PolySyntaxError, UndeclaredVariableError, format_coeff, format_poly, parse_poly

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2

_DIRECTIVE = re.compile(r"^\s*([A-Za-z_][\w-]*)\s*:(.*)$")


class ProblemError(ValueError):
    pass


@dataclass
class ProblemFile:
    variables: tuple
    polynomials: list
    options: dict = field(default_factory=dict)


def parse_system_text(text: str) -> ProblemFile:
    declared = None
    options: dict = {}
    raw: list = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        m = _DIRECTIVE.match(body)
        if m:
            key, value = m.group(1).lower(), m.group(2).strip()
            if key == "vars":
                declared = tuple(value.replace(",", " ").split())
                if not declared:
                    raise ProblemError(f"line {lineno}: empty variable list")
            else:
                options[key] = value
            continue
        raw.append((lineno, body))
    if not raw:
        raise ProblemError("empty system: no polynomials given")
    polys = [parse_poly(body, declared, line=lineno) for lineno, body in raw]
    variables = declared if declared is not None else merge_vars(*(p.vars for p in polys))
    return ProblemFile(tuple(variables), [p.extend(variables) for p in polys], options)


def parse_system(path) -> ProblemFile:
    return parse_system_text(Path(path).read_text(encoding="utf-8"))


def parse_rational(s: str) -> Fraction:
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from exc


# -- serialisation ---------------------------------------------------------------

def _q(x: Fraction) -> str:
    return format_coeff(x)


def _complex(z) -> str:
    re_, im = z
    if im == 0:
        return _q(re_)
    sign = "+" if im > 0 else "-"
    return f"{_q(re_)} {sign} {_q(abs(im))}*i"


def _box_json(b: ComplexBox) -> dict:
    ends = [b.re.lo, b.re.hi, b.im.lo, b.im.hi]
    return {"exact": [_q(x) for x in ends], "decimal": [float(x) for x in ends]}


def _uni(u: UniPoly) -> str:
    return format_poly(u.to_multi((u.var,))) if u.coeffs else "0"


def _ur_json(ur) -> dict:
    return {
        "a": [_q(x) for x in ur.a],
        "f": _uni(ur.f),
        "g": [_uni(g) for g in ur.g],
    }


def _verdict_report(problem: ProblemFile, verdict, with_witnesses: bool, elapsed: float) -> dict:
    rep = {
        "command": "is-stabilizable",
        "variables": list(problem.variables),
        "polynomials": [format_poly(p) for p in problem.polynomials],
        "stabilizable": verdict.stabilizable,
        "circle_counts": list(verdict.circle_counts),
        "note": verdict.note,
        "timing_ms": round(elapsed * 1000, 3),
    }
    if verdict.ur is not None:
        rep["univariate_representation"] = _ur_json(verdict.ur)
    if with_witnesses:
        rep["witnesses"] = [
            {
                "t_box": _box_json(w.t_box),
                "coordinates": [_box_json(c) for c in w.coordinates],
                "on_circle": list(w.on_circle),
            }
            for w in verdict.witnesses
        ]
    return rep


def _stable_report(problem: ProblemFile, res, elapsed: float) -> dict:
    total = MultiPoly(problem.variables, {})
    for u, p in zip(res.cofactors, problem.polynomials):
        total = total + u * p
    spec = res.spectrum
    return {
        "command": "stable-poly",
        "variables": list(problem.variables),
        "polynomials": [format_poly(p) for p in problem.polynomials],
        "univariate_representation": _ur_json(res.ur) if res.ur is not None else None,
        "approx_roots": [_complex(g) for g in spec.gammas],
        "factor_variables": [problem.variables[k] for k in spec.var_index],
        "f_tilde": _uni(spec.f_tilde),
        "s_tilde": format_poly(res.s_tilde),
        "h0": _uni(res.h0),
        "correction": _uni(res.correction),
        "stable_polynomial": format_poly(res.s),
        "power": res.power,
        "cofactors": [format_poly(u) for u in res.cofactors],
        "certificate": {
            "L": _q(res.certificate.lower_bound),
            "N": _q(res.certificate.correction_norm),
            "eps": _q(res.certificate.eps),
            "ok": res.certificate.ok,
        },
        "identity_check": (total - res.s).is_zero(),
        "timing_ms": round(elapsed * 1000, 3),
    }


def _print_verdict(rep: dict, out) -> None:
    print(f"stabilizable: {str(rep['stabilizable']).lower()}", file=out)
    if rep.get("note"):
        print(f"note: {rep['note']}", file=out)
    ur = rep.get("univariate_representation")
    if ur:
        print(f"separating form: {', '.join(ur['a'])}", file=out)
        print(f"f = {ur['f']}", file=out)
        for v, g in zip(rep["variables"], ur["g"]):
            print(f"{v} = {g}", file=out)
    print(f"circle counts: {rep['circle_counts']}", file=out)
    for w in rep.get("witnesses", []):
        coords = "; ".join(
            f"{v} in [{c['exact'][0]}, {c['exact'][1]}] x [{c['exact'][2]}, {c['exact'][3]}]"
            + (" (on circle)" if oc else "")
            for v, c, oc in zip(rep["variables"], w["coordinates"], w["on_circle"])
        )
        print(f"witness: {coords}", file=out)


def _print_stable(rep: dict, out) -> None:
    ur = rep["univariate_representation"]
    if ur:
        print(f"separating form: {', '.join(ur['a'])}", file=out)
        print(f"f = {ur['f']}", file=out)
        for v, g in zip(rep["variables"], ur["g"]):
            print(f"{v} = {g}", file=out)
    print(f"approximate roots: [{', '.join(rep['approx_roots'])}]", file=out)
    print(f"factor variables: [{', '.join(rep['factor_variables'])}]", file=out)
    print(f"s_tilde = {rep['s_tilde']}", file=out)
    print(f"h0 = {rep['h0']}", file=out)
    print(f"s = {rep['stable_polynomial']}", file=out)
    if rep["power"] != 1:
        print(f"(s is the power {rep['power']} of the constructed polynomial)", file=out)
    print(f"cofactors: [{', '.join(rep['cofactors'])}]", file=out)
    c = rep["certificate"]
    print(f"certificate: L = {c['L']}, N = {c['N']}, eps = {c['eps']}, ok = {str(c['ok']).lower()}", file=out)
    print(f"identity s = sum u_i p_i: {str(rep['identity_check']).lower()}", file=out)


def _load(path) -> ProblemFile:
    try:
        return parse_system(path)
    except OSError as exc:
        raise ProblemError(f"cannot read {path}: {exc.strerror}") from exc


def cmd_is_stabilizable(args, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        problem = _load(args.file)
        t0 = time.perf_counter()
        verdict = is_stabilizable(problem.polynomials, problem.variables)
        elapsed = time.perf_counter() - t0
    except (ProblemError, PolySyntaxError, UndeclaredVariableError, NotZeroDimensionalError, ValueError) as exc:
        return _fail(args, "is-stabilizable", exc, out, err)
    rep = _verdict_report(problem, verdict, args.witnesses or args.json, elapsed)
    if args.json:
        json.dump(rep, out, indent=2)
        out.write("\n")
    else:
        _print_verdict(rep, out)
    return EXIT_YES if verdict.stabilizable else EXIT_NO


def cmd_stable_poly(args, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        problem = _load(args.file)
        eps = args.initial_eps
        if eps is None and "initial-eps" in problem.options:
            eps = parse_rational(problem.options["initial-eps"])
        t0 = time.perf_counter()
        res = stable_polynomial(
            problem.polynomials, problem.variables, initial_eps=eps, max_halvings=args.max_halvings
        )
        elapsed = time.perf_counter() - t0
    except (
        ProblemError,
        PolySyntaxError,
        UndeclaredVariableError,
        NotZeroDimensionalError,
        NotStabilizableError,
        CapExceededError,
        ValueError,
        argparse.ArgumentTypeError,
    ) as exc:
        return _fail(args, "stable-poly", exc, out, err)
    rep = _stable_report(problem, res, elapsed)
    if args.json:
        json.dump(rep, out, indent=2)
        out.write("\n")
    else:
        _print_stable(rep, out)
    return EXIT_YES


def _fail(args, command: str, exc: Exception, out, err) -> int:
    if getattr(args, "json", False):
        json.dump({"command": command, "error": str(exc)}, out, indent=2)
        out.write("\n")
    print(f"error: {exc}", file=err)
    return EXIT_ERROR


# -- benchmark harness -------------------------------------------------------------

BENCH_COLUMNS = ["seed", "nvars", "nsols", "is_stabilizable", "t_stab_ms", "stable_found", "t_poly_ms", "eps_final"]


def _monomials(nvars: int, degree: int) -> list:
    if nvars == 0:
        return [()]
    return [(k,) + rest for k in range(degree + 1) for rest in _monomials(nvars - 1, degree - k)]


def random_system(rng: random.Random, nvars: int, degrees: Sequence[int], coeff_bound: int, scale=10):
    """Dense random polynomials in Z with integer coefficients, rescaled by Z = scale*z."""
    scale = Fraction(scale)
    variables = tuple(f"z{i + 1}" for i in range(nvars))
    polys = []
    for deg in degrees:
        terms = {}
        for e in _monomials(nvars, deg):
            c = rng.randint(-coeff_bound, coeff_bound)
            if c:
                terms[e] = c * scale ** sum(e)
        polys.append(MultiPoly(variables, terms))
    return variables, polys


def _degrees(spec: str, nvars: int) -> list:
    parts = [int(x) for x in str(spec).split(",") if x.strip()]
    if len(parts) == 1:
        parts = parts * nvars
    if len(parts) != nvars:
        raise ValueError("degree profile must give one degree or one per variable")
    return parts


def bench_rows(
    nvars: int,
    count: int,
    degree: str,
    coeff_bound: int,
    seed: int,
    stable: bool = True,
    scale=10,
    max_halvings: int = 64,
):
    degrees = _degrees(degree, nvars)
    rows = []
    resampled = 0
    for idx in range(count):
        attempt = 0
        while True:
            inst_seed = seed * 1_000_003 + idx * 1009 + attempt
            rng = random.Random(inst_seed)
            variables, polys = random_system(rng, nvars, degrees, coeff_bound, scale)
            if all(p.total_degree() == d for p, d in zip(polys, degrees)):
                gb = groebner(Ideal.of(polys, variables), with_transform=False)
                dim = quotient_dimension(gb)
                if dim != "infinite" and dim > 0:
                    break
            attempt += 1
            resampled += 1
        t0 = time.perf_counter()
        verdict = is_stabilizable(polys, variables)
        t_stab = (time.perf_counter() - t0) * 1000
        row = {
            "seed": inst_seed,
            "nvars": nvars,
            "nsols": verdict.ur.degree if verdict.ur is not None else 0,
            "is_stabilizable": str(verdict.stabilizable).lower(),
            "t_stab_ms": f"{t_stab:.1f}",
            "stable_found": "",
            "t_poly_ms": "",
            "eps_final": "",
        }
        if stable and verdict.stabilizable:
            t0 = time.perf_counter()
            try:
                res = stable_polynomial(polys, variables, max_halvings=max_halvings)
                row["stable_found"] = "true"
                row["eps_final"] = _q(res.certificate.eps)
            except CapExceededError:
                row["stable_found"] = "false"
            row["t_poly_ms"] = f"{(time.perf_counter() - t0) * 1000:.1f}"
        rows.append(row)
    return rows, resampled


def cmd_bench(args, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        rows, resampled = bench_rows(
            args.nvars,
            args.count,
            args.degree,
            args.coeff_bound,
            args.seed,
            not args.no_stable,
            args.scale,
            args.max_halvings,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_ERROR
    target = open(args.output, "w", newline="", encoding="utf-8") if args.output else out
    try:
        writer = csv.DictWriter(target, fieldnames=BENCH_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.output:
            target.close()
    _print_summary(rows, resampled, err)
    return EXIT_YES


def _print_summary(rows: list, resampled: int, err) -> None:
    groups: dict = {}
    for r in rows:
        groups.setdefault((r["nvars"], r["nsols"]), []).append(r)
    print("nvars  #V  instances  stabilizable  mean t_stab (s)  mean t_poly (s)", file=err)
    for (nv, ns), rs in sorted(groups.items()):
        stab = sum(r["is_stabilizable"] == "true" for r in rs)
        ts = sum(float(r["t_stab_ms"]) for r in rs) / len(rs) / 1000
        tp = [float(r["t_poly_ms"]) for r in rs if r["t_poly_ms"]]
        tps = f"{sum(tp) / len(tp) / 1000:.3f}" if tp else "-"
        print(f"{nv:5d} {ns:3d} {len(rs):10d} {stab:13d} {ts:16.3f} {tps:>16}", file=err)
    print(f"resampled degenerate draws: {resampled}", file=err)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ndstab", description="Exact nD stabilizability and stabilization.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("is-stabilizable", help="decide whether the variety avoids the closed unit polydisc")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--witnesses", action="store_true", help="print enclosures of solutions inside the polydisc")
    p.set_defaults(func=cmd_is_stabilizable)

    p = sub.add_parser("stable-poly", help="compute a certified stable polynomial in the ideal")
    p.add_argument("file")
    p.add_argument("--initial-eps", type=parse_rational, default=None)
    p.add_argument("--max-halvings", type=int, default=64)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stable_poly)

    p = sub.add_parser("bench", help="random-instance benchmark, CSV on stdout")
    p.add_argument("--nvars", type=int, default=2)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--degree", default="2", help="one degree, or a comma list with one per polynomial")
    p.add_argument("--coeff-bound", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", type=parse_rational, default=Fraction(10), help="substitute Z = scale*z (default 10)")
    p.add_argument("--max-halvings", type=int, default=64)
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--no-stable", action="store_true", help="skip the stable polynomial construction")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
