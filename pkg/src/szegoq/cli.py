"""Command line: ``szegoq {rule,matrix,zeros,verify,tables} ...``.

Exit codes: 0 success, 1 a verification or table comparison failed,
2 invalid input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import measures, opmatrix, ordering, quadrature, recurrences, schur, tables
from .errors import NonUnimodularU, NumericalError, ValidationError

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3
U_RENORM_TOL = 1e-6


def max_n() -> int:
    raw = os.environ.get("SZEGOQ_MAX_N", "512")
    try:
        v = int(raw)
    except ValueError:
        raise ValidationError(f"SZEGOQ_MAX_N must be an integer, got {raw!r}") from None
    if v < 1:
        raise ValidationError("SZEGOQ_MAX_N must be positive")
    return v


def parse_u(text: str) -> complex:
    """``angle:<radians>``, ``<re>,<im>`` or a real number; renormalized onto |u| = 1."""
    t = text.strip()
    try:
        if t.startswith("angle:"):
            return complex(np.exp(1j * float(t[6:])))
        if "," in t:
            re, im = (float(x) for x in t.split(","))
            u = complex(re, im)
        else:
            u = complex(float(t), 0.0)
    except ValueError:
        raise ValidationError(f"cannot parse u={text!r}; use angle:<rad>, <re>,<im> or a real") from None
    if abs(abs(u) - 1.0) > U_RENORM_TOL:
        raise NonUnimodularU(f"|u| = {abs(u):.9g} is not within {U_RENORM_TOL:g} of 1")
    return u / abs(u)


@dataclass(frozen=True)
class JobSpec:
    command: str
    measure: str | None
    schur_file: str | None
    n: int | None
    q: float | None
    u: complex
    ordering: str | None
    method: str
    fmt: str
    output: str | None


def _spec(args) -> JobSpec:
    return JobSpec(
        args.command,
        getattr(args, "measure", None),
        getattr(args, "schur_file", None),
        getattr(args, "n", None),
        getattr(args, "q", None),
        parse_u(args.u) if getattr(args, "u", None) is not None else 1.0 + 0j,
        getattr(args, "ordering", None),
        getattr(args, "method", "cmv"),
        getattr(args, "format", "json"),
        getattr(args, "output", None),
    )


def _check_n(n: int | None, what: str = "n") -> int:
    if n is None:
        raise ValidationError(f"--{what} is required")
    if n < 1:
        raise ValidationError(f"--{what} must be >= 1")
    cap = max_n()
    if n > cap:
        raise ValidationError(f"--{what}={n} exceeds SZEGOQ_MAX_N={cap}")
    return n


def _sequence(spec: JobSpec, N: int) -> schur.SchurSequence:
    if spec.measure and spec.schur_file:
        raise ValidationError("--measure and --schur-file are mutually exclusive")
    if spec.schur_file:
        s = schur.read_schur_file(spec.schur_file)
        if s.N < N:
            raise ValidationError(f"{spec.schur_file} has {s.N} parameters, {N} needed")
        return s.truncate(N)
    m = spec.measure or "rogers-szego"
    if m == "lebesgue":
        return schur.lebesgue(max(N, 1))
    if m == "rogers-szego":
        if spec.q is None:
            raise ValidationError("--q is required for the Rogers-Szego measure")
        return schur.rogers_szego(spec.q, max(N, 1))
    raise ValidationError(f"unknown measure {m!r}")


def _ordering(spec: JobSpec, N: int, default: str) -> ordering.GeneratingSequence:
    return ordering.parse(spec.ordering or default, N)


def _moments_for(spec: JobSpec, s: schur.SchurSequence, K: int) -> measures.MomentTable:
    if spec.schur_file:
        return measures.moments_from_schur(s, K)
    if spec.measure == "lebesgue":
        return measures.lebesgue_moments(K)
    return measures.moments_numeric(measures.rogers_szego_measure(spec.q), K)


# -- commands -----------------------------------------------------------------


def cmd_rule(spec: JobSpec) -> tuple[int, str]:
    n = _check_n(spec.n)
    s = _sequence(spec, n - 1 if n > 1 else 1)
    ord = _ordering(spec, n, "balanced0") if spec.method == "roots" else None
    rule = quadrature.compute_rule(s, n, spec.u, spec.method, ord)
    return EXIT_OK, rule.to_csv() if spec.fmt == "csv" else rule.to_json() + "\n"


def cmd_matrix(spec: JobSpec, kind: str) -> tuple[int, str]:
    n = _check_n(spec.n)
    needs_n = kind in ("hessenberg", "cmv", "cmv_transpose", "cmv_adjoint", "banded_general")
    s = _sequence(spec, n if needs_n else max(n - 1, 1))
    ord = _ordering(spec, n, "balanced0") if kind == "banded_general" else None
    M = opmatrix.build(kind, s, n, spec.u, ord)
    return EXIT_OK, M.to_csv() if spec.fmt == "csv" else M.to_json() + "\n"


def cmd_zeros(spec: JobSpec, degree: int) -> tuple[int, str]:
    n = _check_n(degree, "degree")
    ord = _ordering(spec, n, "balanced1")
    if spec.schur_file or spec.measure == "lebesgue":
        phi = recurrences.laurent_from_szego(_sequence(spec, n), ord, n)
    else:
        if spec.q is None:
            raise ValidationError("--q is required for the Rogers-Szego zeros")
        if ord.steps != ordering.balanced("ceil_half", n).steps:
            phi = recurrences.laurent_from_szego(schur.rogers_szego(spec.q, n), ord, n)
        else:
            phi = recurrences.rs_laurent_explicit(spec.q, n)
    z = phi.roots()
    z = z[np.lexsort((z.imag, np.angle(z)))]
    if spec.fmt == "csv":
        buf = io.StringIO()
        buf.write("re,im,modulus\n")
        for x in z:
            buf.write(f"{x.real:.9g},{x.imag:.9g},{abs(x):.9g}\n")
        return EXIT_OK, buf.getvalue()
    out = {
        "degree": n,
        "ordering": ord.to_string(),
        "zeros": [[float(f"{x.real:.15g}"), float(f"{x.imag:.15g}")] for x in z],
        "moduli": [float(f"{abs(x):.15g}") for x in z],
    }
    return EXIT_OK, json.dumps(out) + "\n"


def cmd_verify(spec: JobSpec, tol: float) -> tuple[int, str]:
    n = _check_n(spec.n)
    s = _sequence(spec, n - 1 if n > 1 else 1)
    ord = _ordering(spec, n, "balanced0")
    rules = {m: quadrature.compute_rule(s, n, spec.u, m, ord) for m in quadrature.ROUTES}
    mom = _moments_for(spec, s, n - 1) if not spec.schur_file else None
    report = {"n": n, "u": [float(spec.u.real), float(spec.u.imag)], "tol": tol, "routes": {}, "agreement": {}}
    ok = True
    for m, r in rules.items():
        entry = {"weight_sum": float(r.weights.sum())}
        if mom is not None:
            ex = quadrature.verify_exactness(r, mom, tol)
            entry.update(max_moment_error=ex.max_error, worst_k=ex.worst_k, exact=bool(ex.passed))
            ok &= ex.passed
        report["routes"][m] = entry
    base = rules["cmv"]
    for m in ("hessenberg", "roots"):
        dn, dw = (float(x) for x in quadrature.match_rules(base, rules[m]))
        agree = bool(dn <= 1e-9 and dw <= 1e-8)
        report["agreement"][f"cmv-{m}"] = {"node": dn, "weight": dw, "ok": agree}
        ok &= agree
    report["passed"] = bool(ok)
    if spec.fmt == "csv":
        buf = io.StringIO()
        buf.write("check,value,ok\n")
        for m, e in report["routes"].items():
            if "max_moment_error" in e:
                buf.write(f"exactness_{m},{e['max_moment_error']:.9g},{e['exact']}\n")
        for k, e in report["agreement"].items():
            buf.write(f"{k},{max(e['node'], e['weight']):.9g},{e['ok']}\n")
        text = buf.getvalue()
    else:
        text = json.dumps(report) + "\n"
    return (EXIT_OK if ok else EXIT_FAIL), text


def cmd_tables(which: Sequence[int], method: str, fmt: str) -> tuple[int, str]:
    reports = [tables.reproduce(k, method) for k in which]
    ok = all(r.passed for r in reports)
    if fmt == "json":
        out = []
        for r in reports:
            out.append({
                "table": r.table.number,
                "q": r.table.q,
                "n": r.table.n,
                "method": r.method,
                "max_node_err": r.max_node_err,
                "max_weight_err": r.max_weight_err,
                "passed": r.passed,
                "entries": [
                    {
                        "ref_node": [e.ref_node.real, e.ref_node.imag],
                        "node": [float(f"{e.node.real:.15g}"), float(f"{e.node.imag:.15g}")],
                        "ref_weight": e.ref_weight,
                        "weight": float(f"{e.weight:.15g}"),
                        "node_err": e.node_err,
                        "weight_err": e.weight_err,
                    }
                    for e in r.entries
                ],
            })
        return (EXIT_OK if ok else EXIT_FAIL), json.dumps(out) + "\n"
    buf = io.StringIO()
    if fmt == "csv":
        buf.write("table,q,n,ref_re,ref_im,node_re,node_im,node_err,ref_weight,weight,weight_err,ok\n")
        for r in reports:
            t = r.table
            for e in r.entries:
                good = e.node_err <= t.node_tol and e.weight_err <= t.weight_tol
                buf.write(
                    f"{t.number},{t.q},{t.n},{e.ref_node.real:.9g},{e.ref_node.imag:.9g},"
                    f"{e.node.real:.9g},{e.node.imag:.9g},{e.node_err:.3e},"
                    f"{e.ref_weight:.9g},{e.weight:.9g},{e.weight_err:.3e},{good}\n"
                )
        return (EXIT_OK if ok else EXIT_FAIL), buf.getvalue()
    for r in reports:
        t = r.table
        buf.write(
            f"table {t.number:2d} q={t.q:<4} n={t.n}  nodes {'ok  ' if r.nodes_ok else 'FAIL'} "
            f"(max {r.max_node_err:.1e}, tol {t.node_tol:g})  weights "
            f"{'ok  ' if r.weights_ok else 'FAIL'} (max {r.max_weight_err:.1e}, tol {t.weight_tol:g})\n"
        )
    return (EXIT_OK if ok else EXIT_FAIL), buf.getvalue()


# -- argument parsing ----------------------------------------------------------


def _add_source(p: argparse.ArgumentParser, need_n: bool = True):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--measure", choices=["rogers-szego", "lebesgue"])
    g.add_argument("--schur-file", help="text file with one 're,im' line per delta_n")
    p.add_argument("--q", type=float, help="Rogers-Szego parameter in (0, 1)")
    if need_n:
        p.add_argument("--n", type=int, help="rule or matrix size")
    p.add_argument("--ordering", help="0/1 step string or balanced0 | balanced1 | poly")


def _add_output(p: argparse.ArgumentParser, choices=("json", "csv"), default="json"):
    p.add_argument("--format", choices=choices, default=default)
    p.add_argument("--output", help="write here instead of standard output")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="szegoq", description="Szego quadrature on the unit circle")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rule", help="nodes and weights of an n-point rule")
    _add_source(p)
    p.add_argument("--u", default="1", help="angle:<rad>, <re>,<im> or a real number (default 1)")
    p.add_argument("--method", choices=list(quadrature.ROUTES), default="cmv")
    _add_output(p)

    p = sub.add_parser("matrix", help="matrix representation of multiplication by z")
    _add_source(p)
    p.add_argument("--kind", choices=list(opmatrix.KINDS), default="cmv_u")
    p.add_argument("--u", default="1")
    _add_output(p)

    p = sub.add_parser("zeros", help="zeros of the orthogonal Laurent polynomial of a degree")
    _add_source(p, need_n=False)
    p.add_argument("--degree", type=int, required=True)
    _add_output(p)

    p = sub.add_parser("verify", help="exactness and route agreement for one rule")
    _add_source(p)
    p.add_argument("--u", default="1")
    p.add_argument("--tol", type=float, default=1e-9)
    _add_output(p)

    p = sub.add_parser("tables", help="compare against the reference Rogers-Szego tables")
    p.add_argument("--which", type=int, nargs="*", default=list(range(1, 11)))
    p.add_argument("--method", choices=list(quadrature.ROUTES), default="cmv")
    _add_output(p, choices=("text", "json", "csv"), default="text")
    return ap


def run(argv: Sequence[str] | None = None) -> tuple[int, str, str | None]:
    """Parse and execute; returns (exit code, rendered output, output path)."""
    args = build_parser().parse_args(argv)
    if args.command == "tables":
        code, text = cmd_tables(args.which, args.method, args.format)
        return code, text, args.output
    spec = _spec(args)
    if args.command == "rule":
        code, text = cmd_rule(spec)
    elif args.command == "matrix":
        code, text = cmd_matrix(spec, args.kind)
    elif args.command == "zeros":
        code, text = cmd_zeros(spec, args.degree)
    else:
        code, text = cmd_verify(spec, args.tol)
    return code, text, spec.output


def main(argv: Sequence[str] | None = None) -> int:
    try:
        code, text, out = run(argv)
    except ValidationError as exc:
        print(f"szegoq: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"szegoq: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"szegoq: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
