"""Command-line surface.

Symbols are given as JSON, inline or by file path:

  {"type": "monomial_combo", "n": 2,
   "terms": [{"a": [1,0], "b": [0,1], "re": 1, "im": 0}]}

  {"type": "separately_radial", "n": 2, "s": [1, 0],
   "h": {"kind": "constant", "value": 1}}

with profile kinds "constant" ({"value": v}), "power" ({"exponent": t}),
"even_poly" ({"coeffs": [c0, c1, ...]}) and "table"
({"abscissae": [...], "values": [...]}); numeric values may be a plain
number or [re, im].

Set expressions for `pset` are JSON too:

  {"tag": "finite", "n": 2, "members": [[1,1]]}
  {"tag": "full", "n": 2}
  {"tag": "union", "left": ..., "right": ...}
  {"tag": "translate", "inner": ..., "offset": [1,-1]}
  {"tag": "product_with_full", "inner": ..., "axis": 0}
  {"tag": "complement", "inner": ...}

Matrix output formats: json is dense row-major with [re, im] pairs; csv
has one "row,col,re,im" line per nonzero entry (17 significant digits).
Exit codes: 0 success, 1 verification failure (verify-all), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass

import numpy as np

from . import acceptance
from .commutant import (
    AnalyticTestFailedError,
    analytic_test,
    extract_symbol,
    prop2_classify,
    prop4_operator,
    theorem2_equivalence,
    theorem2_residual,
)
from .multiindex import enumerate_multiindices, unit
from .psets import (
    Complement,
    Finite,
    Full,
    ProductWithFull,
    Translate,
    Union,
    divergence_probe,
    property_p,
    zero_set_prefix,
)
from .quadrature import RadialProfile, mc_ball_integral
from .specialfn import SpaceParams, d_coeff, log_norm_constant
from .symbols import MonomialCombo, SeparatelyRadialSymbol, omega, omega_table
from .toeplitz import PrefixOperator, assemble, basis_symbol, commutator


class SymbolParseError(ValueError):
    """Malformed symbol/set JSON, annotated with the offending path."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


def _load_json_arg(text: str):
    """Inline JSON if the argument looks like it, else a file path."""
    stripped = text.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        source = stripped
    else:
        try:
            with open(text, "r", encoding="utf-8") as fh:
                source = fh.read()
        except OSError as exc:
            raise SymbolParseError(f"cannot read symbol file: {exc}") from exc
    try:
        return json.loads(source)
    except json.JSONDecodeError as exc:
        raise SymbolParseError(
            f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


def _complex_field(obj, path: str) -> complex:
    if isinstance(obj, (int, float)):
        return complex(obj)
    if isinstance(obj, list) and len(obj) == 2 and all(isinstance(x, (int, float)) for x in obj):
        return complex(obj[0], obj[1])
    raise SymbolParseError("expected a number or [re, im]", path)


def _int_list(obj, path: str) -> tuple[int, ...]:
    if not isinstance(obj, list) or not all(isinstance(x, int) for x in obj):
        raise SymbolParseError("expected a list of integers", path)
    return tuple(obj)


def parse_profile(obj, path: str = "$.h") -> RadialProfile:
    if not isinstance(obj, dict):
        raise SymbolParseError("profile must be an object", path)
    kind = obj.get("kind")
    try:
        if kind == "constant":
            return RadialProfile.constant(_complex_field(obj.get("value", 0), f"{path}.value"))
        if kind == "power":
            exponent = obj.get("exponent")
            if not isinstance(exponent, (int, float)):
                raise SymbolParseError("expected a number", f"{path}.exponent")
            return RadialProfile.power(float(exponent))
        if kind == "even_poly":
            coeffs = obj.get("coeffs")
            if not isinstance(coeffs, list):
                raise SymbolParseError("expected a list", f"{path}.coeffs")
            return RadialProfile.even_poly(
                [_complex_field(c, f"{path}.coeffs[{i}]") for i, c in enumerate(coeffs)]
            )
        if kind == "table":
            xs = obj.get("abscissae")
            vs = obj.get("values")
            if not isinstance(xs, list) or not isinstance(vs, list):
                raise SymbolParseError("expected abscissae and values lists", path)
            return RadialProfile.table(
                [float(x) for x in xs],
                [_complex_field(v, f"{path}.values[{i}]") for i, v in enumerate(vs)],
            )
    except ValueError as exc:
        if isinstance(exc, SymbolParseError):
            raise
        raise SymbolParseError(str(exc), path) from exc
    raise SymbolParseError(
        "kind must be one of constant, power, even_poly, table", f"{path}.kind"
    )


def parse_symbol(obj) -> "MonomialCombo | SeparatelyRadialSymbol":
    """Validate and build a symbol from its JSON form (already decoded)."""
    if isinstance(obj, str):
        obj = _load_json_arg(obj)
    if not isinstance(obj, dict):
        raise SymbolParseError("symbol must be a JSON object")
    stype = obj.get("type")
    if stype not in ("monomial_combo", "separately_radial"):
        raise SymbolParseError(
            "type must be monomial_combo or separately_radial", "$.type"
        )
    n = obj.get("n")
    if not isinstance(n, int) or n < 1:
        raise SymbolParseError("expected a positive integer", "$.n")
    if stype == "monomial_combo":
        terms_obj = obj.get("terms")
        if not isinstance(terms_obj, list):
            raise SymbolParseError("expected a list", "$.terms")
        terms = []
        for i, t in enumerate(terms_obj):
            path = f"$.terms[{i}]"
            if not isinstance(t, dict):
                raise SymbolParseError("term must be an object", path)
            a = _int_list(t.get("a"), f"{path}.a")
            b = _int_list(t.get("b"), f"{path}.b")
            if len(a) != n or len(b) != n:
                raise SymbolParseError(f"exponent length must equal n={n}", path)
            if any(x < 0 for x in a) or any(x < 0 for x in b):
                raise SymbolParseError("exponents must be >= 0", path)
            c = complex(t.get("re", 0.0), t.get("im", 0.0))
            terms.append((a, b, c))
        return MonomialCombo.from_terms(n, terms)
    s_obj = obj.get("s")
    if not isinstance(s_obj, list) or len(s_obj) != n:
        raise SymbolParseError(f"expected a list of {n} numbers", "$.s")
    s = []
    for i, x in enumerate(s_obj):
        if not isinstance(x, (int, float)) or x < 0:
            raise SymbolParseError("exponents must be numbers >= 0", f"$.s[{i}]")
        s.append(float(x))
    h = parse_profile(obj.get("h"), "$.h")
    return SeparatelyRadialSymbol(n=n, s=tuple(s), h=h)


def symbol_to_json(sym) -> dict:
    if isinstance(sym, MonomialCombo):
        return {
            "type": "monomial_combo",
            "n": sym.n,
            "terms": [
                {"a": list(a), "b": list(b), "re": c.real, "im": c.imag}
                for a, b, c in sym.terms
            ],
        }
    h = sym.h
    if h.kind == "constant":
        hobj = {"kind": "constant", "value": [h.value.real, h.value.imag]}
    elif h.kind == "power":
        hobj = {"kind": "power", "exponent": h.exponent}
    elif h.kind == "even_poly":
        hobj = {"kind": "even_poly", "coeffs": [[c.real, c.imag] for c in h.coeffs]}
    elif h.kind == "power_sum":
        hobj = {"kind": "power_sum", "terms": [[[c.real, c.imag], e] for c, e in h.terms]}
    else:
        hobj = {
            "kind": "table",
            "abscissae": list(h.abscissae),
            "values": [[v.real, v.imag] for v in h.values],
        }
    return {"type": "separately_radial", "n": sym.n, "s": list(sym.s), "h": hobj}


def parse_set_expr(obj, path: str = "$"):
    if isinstance(obj, str):
        obj = _load_json_arg(obj)
    if not isinstance(obj, dict):
        raise SymbolParseError("set expression must be a JSON object", path)
    tag = obj.get("tag")
    if tag == "finite":
        n = obj.get("n")
        members = obj.get("members", [])
        if not isinstance(n, int) or n < 1:
            raise SymbolParseError("expected a positive integer", f"{path}.n")
        if not isinstance(members, list):
            raise SymbolParseError("expected a list of points", f"{path}.members")
        try:
            return Finite.of(n, [_int_list(m, f"{path}.members[{i}]") for i, m in enumerate(members)])
        except ValueError as exc:
            raise SymbolParseError(str(exc), f"{path}.members") from exc
    if tag == "full":
        n = obj.get("n")
        if not isinstance(n, int) or n < 1:
            raise SymbolParseError("expected a positive integer", f"{path}.n")
        return Full(n)
    if tag == "union":
        return Union(
            parse_set_expr(obj.get("left"), f"{path}.left"),
            parse_set_expr(obj.get("right"), f"{path}.right"),
        )
    if tag == "translate":
        return Translate(
            parse_set_expr(obj.get("inner"), f"{path}.inner"),
            _int_list(obj.get("offset"), f"{path}.offset"),
        )
    if tag == "product_with_full":
        axis = obj.get("axis")
        if not isinstance(axis, int):
            raise SymbolParseError("expected an integer", f"{path}.axis")
        return ProductWithFull(parse_set_expr(obj.get("inner"), f"{path}.inner"), axis)
    if tag == "complement":
        return Complement(parse_set_expr(obj.get("inner"), f"{path}.inner"))
    raise SymbolParseError(
        "tag must be one of finite, full, union, translate, product_with_full, complement",
        f"{path}.tag",
    )


def parse_index(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise SymbolParseError(f"expected comma-separated integers, got {text!r}") from exc


@dataclass
class RunConfig:
    """Validated record of one CLI invocation."""

    command: str
    n: int | None = None
    alpha: float = 0.0
    degree: int = 0
    out: str | None = None
    fmt: str = "json"
    seed: int | None = None
    samples: int | None = None
    tol: float = 1e-10

    def __post_init__(self):
        if not self.alpha > -1.0:
            raise SymbolParseError(f"--alpha must be > -1, got {self.alpha}")
        if self.degree < 0:
            raise SymbolParseError(f"--degree must be >= 0, got {self.degree}")
        if self.fmt not in ("json", "csv"):
            raise SymbolParseError(f"--format must be json or csv, got {self.fmt}")

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        return cls(
            command=args.command,
            n=getattr(args, "n", None),
            alpha=getattr(args, "alpha", 0.0),
            degree=getattr(args, "degree", 0) or 0,
            out=getattr(args, "out", None),
            fmt=getattr(args, "format", "json"),
            seed=getattr(args, "seed", None),
            samples=getattr(args, "samples", None),
            tol=getattr(args, "tol", 1e-10),
        )


def _c(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _format_float(x: float) -> str:
    return f"{x:.17g}"


def _write_text(out: str | None, text: str) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".bergtoep-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit_json(obj, out: str | None) -> None:
    _write_text(out, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def matrix_to_json(S: PrefixOperator) -> dict:
    return {
        "n": S.params.n,
        "alpha": S.params.alpha,
        "degree": S.D,
        "degree_raise": S.degree_raise,
        "order": [list(m) for m in S.indexer.order],
        "valid_cols": [int(i) for i in S.valid_positions()],
        "data": [[[v.real, v.imag] for v in row] for row in S.matrix],
    }


def matrix_to_csv(S: PrefixOperator) -> str:
    lines = ["row,col,re,im"]
    for i in range(S.size):
        for j in range(S.size):
            v = S.matrix[i, j]
            if v != 0:
                lines.append(
                    f"{i},{j},{_format_float(v.real)},{_format_float(v.imag)}"
                )
    return "\n".join(lines) + "\n"


def _emit_matrix(S: PrefixOperator, cfg: RunConfig) -> None:
    if cfg.fmt == "csv":
        _write_text(cfg.out, matrix_to_csv(S))
    else:
        emit_json(matrix_to_json(S), cfg.out)


def _space(args) -> SpaceParams:
    return SpaceParams(args.n, args.alpha)


def _cmd_dcoeff(args) -> int:
    p = _space(args)
    m, k = parse_index(args.m), parse_index(args.k)
    emit_json(
        {"n": p.n, "alpha": p.alpha, "m": list(m), "k": list(k), "d": d_coeff(p, m, k)},
        args.out,
    )
    return 0


def _cmd_omega(args) -> int:
    p = _space(args)
    g = parse_symbol(_load_json_arg(args.g))
    if not isinstance(g, SeparatelyRadialSymbol):
        raise SymbolParseError("omega needs a separately_radial symbol", "$.type")
    report: dict = {"n": p.n, "alpha": p.alpha, "symbol": symbol_to_json(g)}
    if args.m is not None:
        m = parse_index(args.m)
        value = omega(p, g, m)
        report["m"] = list(m)
        report["omega"] = _c(value)
        if args.samples is not None:
            if args.seed is None:
                raise SymbolParseError("--seed is mandatory when --samples is given")
            nm2 = math.exp(2.0 * log_norm_constant(p, m))

            def integrand(z):
                out = g.evaluate(z) * nm2
                for j, mj in enumerate(m):
                    if mj:
                        out = out * np.abs(z[:, j]) ** (2 * mj)
                return out

            est = mc_ball_integral(p, integrand, args.samples, args.seed)
            report["mc"] = {
                "value": _c(est.value),
                "stderr": est.stderr,
                "samples": est.samples,
                "seed": args.seed,
                "sigmas": abs(est.value - value) / est.stderr if est.stderr else 0.0,
            }
    else:
        table = omega_table(p, g, args.degree)
        report["degree"] = args.degree
        report["entries"] = [
            {"m": list(m), "omega": _c(table[m])}
            for m in enumerate_multiindices(p.n, args.degree)
        ]
    emit_json(report, args.out)
    return 0


def _cmd_matrix(args) -> int:
    p = _space(args)
    f = parse_symbol(_load_json_arg(args.symbol))
    S = assemble(p, f, args.degree)
    _emit_matrix(S, RunConfig(command="matrix", out=args.out, fmt=args.format))
    return 0


def _cmd_commutator(args) -> int:
    p = _space(args)
    A = assemble(p, parse_symbol(_load_json_arg(args.f)), args.degree)
    B = assemble(p, parse_symbol(_load_json_arg(args.g)), args.degree)
    C = commutator(A, B)
    if args.format == "csv":
        _write_text(args.out, matrix_to_csv(C))
    else:
        obj = matrix_to_json(C)
        obj["max_valid_entry"] = C.max_valid_entry()
        emit_json(obj, args.out)
    return 0


def _cmd_analytic_test(args) -> int:
    p = _space(args)
    S = assemble(p, parse_symbol(_load_json_arg(args.f)), args.degree)
    report = analytic_test(S, args.tol)
    emit_json(
        {
            "n": p.n,
            "alpha": p.alpha,
            "degree": args.degree,
            "tol": args.tol,
            "verdict": "pass" if report.verdict else "fail",
            "lower_triangle_max": report.lower_triangle_max,
            "diagonal_spread": report.diagonal_spread,
            "worst_offdiag": (
                [list(report.worst_offdiag[0]), list(report.worst_offdiag[1])]
                if report.worst_offdiag
                else None
            ),
            "worst_shift": list(report.worst_shift) if report.worst_shift else None,
        },
        args.out,
    )
    return 0


def _cmd_extract_symbol(args) -> int:
    p = _space(args)
    S = assemble(p, parse_symbol(_load_json_arg(args.f)), args.degree)
    try:
        recovered = extract_symbol(S, args.tol)
    except AnalyticTestFailedError as exc:
        emit_json(
            {
                "verdict": "fail",
                "lower_triangle_max": exc.report.lower_triangle_max,
                "diagonal_spread": exc.report.diagonal_spread,
                "tol": args.tol,
            },
            args.out,
        )
        return 0
    R = assemble(p, recovered, args.degree)
    cols = S.valid_positions()
    dev = float(np.max(np.abs(S.matrix[:, cols] - R.matrix[:, cols]))) if cols.size else 0.0
    emit_json(
        {
            "verdict": "pass",
            "tol": args.tol,
            "symbol": symbol_to_json(recovered),
            "roundtrip_max_dev": dev,
        },
        args.out,
    )
    return 0


def _cmd_prop4(args) -> int:
    p = _space(args)
    if p.n < 2:
        raise SymbolParseError("the counterexample operator needs --n >= 2")
    S = prop4_operator(p, args.degree)
    residuals = {}
    for j in range(p.n - 1):
        C = commutator(S, assemble(p, basis_symbol(p, unit(p.n, j)), args.degree))
        residuals[f"axis_{j + 1}"] = C.max_valid_entry()
    Cn = commutator(S, assemble(p, basis_symbol(p, unit(p.n, p.n - 1)), args.degree))
    zero = (0,) * p.n
    two_dn = tuple(2 * c for c in unit(p.n, p.n - 1))
    witness = Cn.entry(zero, two_dn)
    from .specialfn import d_coeff_axis

    decay = [
        {"total_degree": d, "d_axis": d_coeff_axis(p, (d,) + (0,) * (p.n - 1))}
        for d in range(0, args.degree + 1)
    ]
    emit_json(
        {
            "n": p.n,
            "alpha": p.alpha,
            "degree": args.degree,
            "commute_residuals": residuals,
            "noncommute_witness": {
                "column": list(zero),
                "row": list(two_dn),
                "entry": _c(witness),
                "magnitude": abs(witness),
            },
            "entry_decay": decay,
        },
        args.out,
    )
    return 0


def _cmd_prop2_classify(args) -> int:
    g = parse_symbol(_load_json_arg(args.g))
    if not isinstance(g, SeparatelyRadialSymbol):
        raise SymbolParseError("prop2-classify needs a separately_radial symbol", "$.type")
    verdict = prop2_classify(g, parse_index(args.l))
    emit_json(
        {"s": list(g.s), "l": list(verdict.l), "expect_equal": verdict.expect_equal},
        args.out,
    )
    return 0


def _cmd_theorem2(args) -> int:
    p = _space(args)
    f = parse_symbol(_load_json_arg(args.f))
    g = parse_symbol(_load_json_arg(args.g))
    if not isinstance(f, MonomialCombo):
        raise SymbolParseError("theorem2 needs --f to be a monomial_combo", "$.type")
    if not isinstance(g, SeparatelyRadialSymbol):
        raise SymbolParseError("theorem2 needs --g to be separately_radial", "$.type")
    eq = theorem2_equivalence(p, f, g, args.degree, args.tol)
    report = theorem2_residual(p, f, g, args.degree)
    emit_json(
        {
            "n": p.n,
            "alpha": p.alpha,
            "degree": args.degree,
            "tol": args.tol,
            "residual": report.residual,
            "predicate": eq.predicate_pass,
            "residual_pass": eq.residual_pass,
            "agree": eq.agree,
            "witness": (
                {
                    "l": list(report.witness_l),
                    "m": list(report.witness_m),
                    "entry": _c(report.witness_entry),
                    "omega_gap": _c(report.omega_gap),
                }
                if report.witness_l is not None
                else None
            ),
        },
        args.out,
    )
    return 0


def _cmd_pset(args) -> int:
    expr = parse_set_expr(_load_json_arg(args.expr))
    verdict = property_p(expr)
    report = {
        "status": verdict.status,
        "trace": [
            {"path": list(path), "rule": rule, "status": status}
            for path, rule, status in verdict.trace
        ],
    }
    if args.probe_axis is not None:
        rest = parse_index(args.probe_rest) if args.probe_rest else ()
        report["divergence_probe"] = {
            "axis": args.probe_axis,
            "rest": list(rest),
            "cutoff": args.probe_cutoff,
            "partial_sum": divergence_probe(expr, args.probe_axis, rest, args.probe_cutoff),
        }
    emit_json(report, args.out)
    return 0


def _cmd_zeroset(args) -> int:
    p = _space(args)
    f = parse_symbol(_load_json_arg(args.f))
    if not isinstance(f, MonomialCombo):
        raise SymbolParseError("zeroset needs a monomial_combo symbol", "$.type")
    l = parse_index(args.l)
    members = zero_set_prefix(p, f, l, args.degree, weighted=args.weighted)
    valid = [
        m
        for m in enumerate_multiindices(p.n, args.degree)
        if all(a + b >= 0 for a, b in zip(m, l))
    ]
    emit_json(
        {
            "n": p.n,
            "weighted": args.weighted,
            "alpha": p.alpha if args.weighted else 0.0,
            "l": list(l),
            "degree": args.degree,
            "members": sorted(list(mem) for mem in members),
            "count": len(members),
            "full_prefix": len(members) == len(valid),
        },
        args.out,
    )
    return 0


def _cmd_verify_all(args) -> int:
    results = acceptance.run_all(printer=print)
    total = sum(r.seconds for r in results)
    ok = all(r.passed for r in results)
    print(f"{'OK' if ok else 'FAILED'}: {sum(r.passed for r in results)}/{len(results)} "
          f"criteria passed in {total:.1f}s")
    if args.out:
        emit_json(
            {
                "passed": ok,
                "total_seconds": total,
                "criteria": [
                    {"name": r.name, "passed": r.passed, "seconds": r.seconds}
                    for r in results
                ],
            },
            args.out,
        )
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bergtoep",
        description="Finite-prefix Toeplitz operators on weighted Bergman "
        "spaces of the unit ball, with commutant verifiers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_space(sp, need_degree=True):
        sp.add_argument("--n", type=int, required=True, help="ambient dimension")
        sp.add_argument("--alpha", type=float, default=0.0, help="weight exponent (> -1)")
        if need_degree:
            sp.add_argument("--degree", type=int, required=True, help="total-degree cap D")
        sp.add_argument("--out", help="output path (default: stdout)")

    sp = sub.add_parser("dcoeff", help="multiplication coefficient d(m,k)")
    add_space(sp, need_degree=False)
    sp.add_argument("--m", required=True, help="multi-index, comma-separated")
    sp.add_argument("--k", required=True, help="multi-index, comma-separated")
    sp.set_defaults(fn=_cmd_dcoeff)

    sp = sub.add_parser("omega", help="diagonal eigenvalue(s) of a separately-radial symbol")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--alpha", type=float, default=0.0)
    sp.add_argument("--g", required=True, help="separately_radial symbol (path or inline JSON)")
    sp.add_argument("--m", help="single multi-index; omit to tabulate up to --degree")
    sp.add_argument("--degree", type=int, default=0)
    sp.add_argument("--samples", type=int, help="Monte-Carlo cross-check sample count")
    sp.add_argument("--seed", type=int, help="Monte-Carlo seed (mandatory with --samples)")
    sp.add_argument("--out")
    sp.set_defaults(fn=_cmd_omega)

    sp = sub.add_parser("matrix", help="assemble the prefix matrix of a symbol")
    add_space(sp)
    sp.add_argument("--symbol", required=True, help="symbol (path or inline JSON)")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(fn=_cmd_matrix)

    sp = sub.add_parser("commutator", help="commutator of two symbol operators")
    add_space(sp)
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", required=True)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(fn=_cmd_commutator)

    sp = sub.add_parser("analytic-test", help="matrix test for analytic Toeplitz structure")
    add_space(sp)
    sp.add_argument("--f", required=True)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.set_defaults(fn=_cmd_analytic_test)

    sp = sub.add_parser("extract-symbol", help="recover the analytic symbol of a passing operator")
    add_space(sp)
    sp.add_argument("--f", required=True)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.set_defaults(fn=_cmd_extract_symbol)

    sp = sub.add_parser("prop4", help="the compact counterexample operator report")
    add_space(sp)
    sp.set_defaults(fn=_cmd_prop4)

    sp = sub.add_parser("prop2-classify", help="eigenvalue-equality classifier for a shift")
    sp.add_argument("--g", required=True)
    sp.add_argument("--l", required=True, help="shift index, comma-separated (may be negative)")
    sp.add_argument("--out")
    sp.set_defaults(fn=_cmd_prop2_classify)

    sp = sub.add_parser("theorem2", help="commutation dichotomy: residual vs symbol predicate")
    add_space(sp)
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", required=True)
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.set_defaults(fn=_cmd_theorem2)

    sp = sub.add_parser("pset", help="property (P) verdict for a set expression")
    sp.add_argument("--expr", required=True, help="set expression (path or inline JSON)")
    sp.add_argument("--probe-axis", type=int, help="axis for the divergence probe (0-based)")
    sp.add_argument("--probe-rest", help="cross-section point, comma-separated")
    sp.add_argument("--probe-cutoff", type=int, default=100)
    sp.add_argument("--out")
    sp.set_defaults(fn=_cmd_pset)

    sp = sub.add_parser("zeroset", help="degree-capped prefix of the moment zero set Z(f,l)")
    add_space(sp)
    sp.add_argument("--f", required=True)
    sp.add_argument("--l", required=True, help="shift index, comma-separated (may be negative)")
    sp.add_argument("--weighted", action="store_true",
                    help="use the (1-|z|^2)^alpha-weighted moments instead of plain nu")
    sp.set_defaults(fn=_cmd_zeroset)

    sp = sub.add_parser("verify-all", help="run the full acceptance suite")
    sp.add_argument("--out", help="write a JSON report here as well")
    sp.set_defaults(fn=_cmd_verify_all)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        RunConfig.from_args(args)  # shared flag validation
        return args.fn(args)
    except (SymbolParseError, ValueError, KeyError) as exc:
        json.dump({"error": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
