"""Command-line surface.

Subcommands expose the interpolated Euler characteristics (``chi``), the
integral identity checks (``verify``), the diagram calculus (``deligne``)
and the Wronskian-ratio experiment (``gamma-claim``). Results go to stdout
as json (default), csv, or text; diagnostics go to stderr. Exit codes:
0 success / all checks passed, 1 a verification failed, 2 usage or domain
error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import warnings
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

from . import chi as chi_mod
from . import diagrams as diag
from . import flatsections as flat
from . import integrals as integ
from .errors import RRHError
from .precision import APComplex, check_precision, mpf_str, to_mpc
from .report import CSV_FIELDS, VerificationReport

ENV_PRECISION = "RRH_PRECISION_BITS"

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = 128
    tolerance: float = 1e-20
    output_format: str = "json"
    branch: str = "plus"


def parse_cli_number(text: str, prec: int):
    """Exact Fraction for integer/rational literals, APComplex otherwise."""
    s = text.strip()
    if _RATIONAL_RE.match(s):
        return Fraction(s)
    try:
        with mp.workprec(prec):
            from .precision import parse_number

            return APComplex.make(parse_number(s), prec)
    except ValueError as exc:
        raise RRHError(str(exc)) from exc


def fmt_value(value, prec: int):
    """JSON-ready representation: exact rationals as 'p/q', numbers as strings."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, APComplex):
        return {"re": mpf_str(value.re, prec), "im": mpf_str(value.im, prec)}
    if isinstance(value, mpf):
        return mpf_str(value, prec)
    if isinstance(value, diag.TPoly):
        return str(value)
    return str(value)


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (payload, reports, csv_rows)


def _handle_chi(args, cfg: RunConfig):
    N = parse_cli_number(args.N, cfg.precision_bits)
    params = {"k": args.k, "N": args.N}
    if args.series is not None:
        values = chi_mod.hilbert_series(args.k, N, args.series, prec=cfg.precision_bits)
        params["n_max"] = args.series
        result = {"series": [fmt_value(v, cfg.precision_bits) for v in values]}
        rows = [["n", "chi"]] + [[str(n), _flat_str(v, cfg)] for n, v in enumerate(values)]
        return params, result, [], rows
    if args.n is None:
        raise RRHError("chi needs either --n or --series")
    value = chi_mod.chi_grassmannian(chi_mod.ChiQuery(args.k, N, args.n), prec=cfg.precision_bits)
    params["n"] = args.n
    rows = [["n", "chi"], [str(args.n), _flat_str(value, cfg)]]
    return params, {"chi": fmt_value(value, cfg.precision_bits)}, [], rows


def _flat_str(value, cfg: RunConfig) -> str:
    v = fmt_value(value, cfg.precision_bits)
    if isinstance(v, dict):
        return v["re"] if v["im"] in ("0.0", "0") else f"{v['re']}+{v['im']}i"
    return v


def _handle_verify(args, cfg: RunConfig):
    prec = cfg.precision_bits
    tol = cfg.tolerance
    params: dict = {}
    reports: list[VerificationReport] = []
    result: dict = {}
    if args.identity == "prop1":
        N = parse_cli_number(args.N, prec)
        params = {"N": args.N, "n": args.n}
        quad = integ.prop1_integral(N, args.n, prec)
        poly = chi_mod.chi_projective(N, args.n)
        if isinstance(poly, Fraction):
            poly = APComplex.make(poly, prec)
        reports.append(VerificationReport.compare(quad, poly, tol, prec, method="prop1-integral-vs-polynomial"))
        result = {"integral": fmt_value(quad, prec), "polynomial": fmt_value(poly, prec)}
    elif args.identity == "prop2":
        N = parse_cli_number(args.N, prec)
        params = {"k": args.k, "N": args.N, "n": args.n}
        reports = integ.prop2_check(chi_mod.ChiQuery(args.k, N, args.n), prec, tolerance=tol)
        result = {"chi": fmt_value(reports[0].lhs, prec)}
    elif args.identity == "selberg":
        alpha = parse_cli_number(args.alpha, prec)
        beta = parse_cli_number(args.beta, prec)
        gamma = parse_cli_number(args.gamma, prec)
        params = {"alpha": args.alpha, "beta": args.beta, "gamma": args.gamma, "k": args.k}
        sp = integ.SelbergParams(alpha, beta, gamma, args.k)
        closed = integ.selberg_closed_form(sp, prec)
        result = {"closed_form": fmt_value(closed, prec)}
        try:
            quad = integ.selberg_quadrature(sp, prec)
            result["quadrature"] = fmt_value(quad, prec)
            reports.append(VerificationReport.compare(quad, closed, tol, prec, method="selberg-quadrature-vs-closed"))
        except RRHError as exc:
            print(f"note: quadrature skipped ({exc})", file=sys.stderr)
    elif args.identity == "beta":
        alpha = parse_cli_number(args.alpha, prec)
        beta = parse_cli_number(args.beta, prec)
        params = {"alpha": args.alpha, "beta": args.beta}
        closed = integ.beta_closed(alpha, beta, prec)
        result = {"closed_form": fmt_value(closed, prec)}
        try:
            quad = integ.beta_quadrature(alpha, beta, prec)
            result["quadrature"] = fmt_value(quad, prec)
            reports.append(VerificationReport.compare(quad, closed, tol, prec, method="beta-quadrature-vs-closed"))
        except RRHError as exc:
            print(f"note: quadrature skipped ({exc})", file=sys.stderr)
    elif args.identity == "poincare":
        N = parse_cli_number(args.N, prec)
        y = parse_cli_number(args.y, prec)
        params = {"N": args.N, "y": args.y, "n_max": args.n_max}
        reports.append(chi_mod.poincare_check(N, y, n_max=args.n_max, prec=prec))
        result = {
            "partial_sum": fmt_value(reports[0].lhs, prec),
            "closed_form": fmt_value(reports[0].rhs, prec),
        }
    rows = [CSV_FIELDS] + [r.csv_row() for r in reports]
    return params, result, reports, rows


_MORPHISM_BUILDERS = {
    "id": diag.identity,
    "swap": diag.swap,
    "sym": diag.symmetrizer,
    "alt": diag.antisymmetrizer,
    "eval": diag.evaluation,
    "coeval": diag.coevaluation,
}


def _parse_morphism(spec: str) -> diag.DiagMorphism:
    if ":" not in spec:
        raise RRHError(f"morphism spec {spec!r} must look like name:word, e.g. id:•• or eval:•")
    name, wordtext = spec.split(":", 1)
    name = name.strip().lower()
    if name not in _MORPHISM_BUILDERS:
        raise RRHError(f"unknown morphism {name!r}; choose from {sorted(_MORPHISM_BUILDERS)}")
    word = diag.Word.parse(wordtext)
    try:
        return _MORPHISM_BUILDERS[name](word)
    except ValueError as exc:
        raise RRHError(str(exc)) from exc


def _morphism_terms(m: diag.DiagMorphism) -> list:
    return [
        {"pairs": list(map(list, matching.pairs)), "coefficient": str(coeff)}
        for matching, coeff in sorted(m.terms.items(), key=lambda kv: kv[0].pairs)
    ]


def _handle_deligne(args, cfg: RunConfig):
    if args.action == "dim":
        word = diag.Word.parse(args.word)
        kind = args.idempotent or "id"
        if kind not in ("id", "sym", "alt"):
            raise RRHError("idempotent must be one of id, sym, alt")
        try:
            e = _MORPHISM_BUILDERS[kind](word)
        except ValueError as exc:
            raise RRHError(str(exc)) from exc
        dim = diag.categorical_dim(e)
        params = {"word": str(word), "idempotent": kind}
        result = {"dimension": dim.factored_str(), "expanded": str(dim)}
        rows = [["word", "idempotent", "dimension"], [str(word), kind, dim.factored_str()]]
        return params, result, [], rows
    if args.action == "compose":
        f = _parse_morphism(args.f)
        g = _parse_morphism(args.g)
        composed = diag.compose(f, g)
        params = {"f": args.f, "g": args.g}
        result = {
            "source": str(composed.source),
            "target": str(composed.target),
            "terms": _morphism_terms(composed),
        }
        rows = [["pairs", "coefficient"]] + [
            [str(t["pairs"]), t["coefficient"]] for t in result["terms"]
        ]
        return params, result, [], rows
    if args.action == "check-laws":
        failures = diag.category_law_failures(args.max_word_len)
        params = {"max_word_len": args.max_word_len}
        result = {"failures": failures, "passed": not failures}
        rows = [["passed", "failures"], [str(not failures).lower(), str(len(failures))]]
        if failures:
            raise _VerificationFailure(params, result, rows)
        return params, result, [], rows
    raise RRHError(f"unknown deligne action {args.action!r}")


class _VerificationFailure(Exception):
    def __init__(self, params, result, rows):
        self.params, self.result, self.rows = params, result, rows


def _handle_claim(args, cfg: RunConfig):
    prec = cfg.precision_bits
    N = parse_cli_number(args.N, prec)
    zs = [parse_cli_number(part, prec) for part in args.z_list.split(",") if part.strip()]
    mbox = re.match(r"^(\d+)x(\d+)$", args.box.strip())
    if not mbox:
        raise RRHError("box must look like 3x3")
    box = (int(mbox.group(1)), int(mbox.group(2)))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        report = flat.claim_report(N, zs, box=box, order=args.order, prec=prec, branch=cfg.branch)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    params = {"N": args.N, "z_list": args.z_list, "box": args.box, "order": report.order}
    zcols = [mpf_str(z.re, prec) for z in report.z_list]
    table = []
    for row in report.rows:
        table.append(
            {
                "i": row.i,
                "j": row.j,
                "predicted": fmt_value(row.predicted, prec),
                "ratios": [fmt_value(r, prec) for r in row.ratios],
                "discrepancies": [mpf_str(d, 64) for d in row.discrepancies],
                "non_increasing": row.non_increasing,
                "final_discrepancy": mpf_str(row.final_discrepancy, 64),
            }
        )
    result = {"z": zcols, "rows": table, "all_non_increasing": report.all_non_increasing}
    rows = [["i", "j", "z", "discrepancy", "non_increasing"]]
    for row in report.rows:
        for z, d in zip(zcols, row.discrepancies):
            rows.append([str(row.i), str(row.j), z, mpf_str(d, 64), str(row.non_increasing).lower()])
    return params, result, [], rows


# ---------------------------------------------------------------------------


def _render(op: str, params, result, reports, rows, cfg: RunConfig) -> str:
    if cfg.output_format == "json":
        doc = {
            "op": op,
            "params": params,
            "result": result,
            "report": [r.to_dict() for r in reports],
            "precision_bits": cfg.precision_bits,
        }
        return json.dumps(doc, sort_keys=True, indent=2)
    if cfg.output_format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in rows:
            writer.writerow(row)
        return buf.getvalue().rstrip("\n")
    lines = [f"op: {op}"]
    for key, val in params.items():
        lines.append(f"  {key} = {val}")
    for key, val in result.items():
        lines.append(f"{key}: {json.dumps(val, sort_keys=True) if isinstance(val, (dict, list)) else val}")
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        lines.append(
            f"{status} {r.method}: rel_err={mpf_str(r.rel_err, 64)} abs_err={mpf_str(r.abs_err, 64)} tol={mpf_str(r.tolerance, 64)}"
        )
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rrh",
        description="Interpolated Euler characteristics, integral identity checks, "
        "diagrammatic dimensions, and the Wronskian-ratio experiment.",
    )
    parser.add_argument("--prec", type=int, default=None, help=f"precision in bits (default 128, env {ENV_PRECISION})")
    parser.add_argument("--tolerance", type=str, default="1e-20", help="relative tolerance for verification")
    parser.add_argument("--format", choices=("json", "csv", "text"), default="json", dest="output_format")
    parser.add_argument("--branch", choices=("plus", "minus"), default="plus", help="branch of log z for negative z")
    sub = parser.add_subparsers(dest="command", required=True)

    p_chi = sub.add_parser("chi", help="interpolated Euler characteristic / Hilbert series")
    p_chi.add_argument("--k", type=int, default=1)
    p_chi.add_argument("--N", required=True)
    p_chi.add_argument("--n", type=int, default=None)
    p_chi.add_argument("--series", type=int, default=None, metavar="N_MAX")

    p_verify = sub.add_parser("verify", help="run an identity check")
    v_sub = p_verify.add_subparsers(dest="identity", required=True)
    v1 = v_sub.add_parser("prop1")
    v1.add_argument("--N", required=True)
    v1.add_argument("--n", type=int, required=True)
    v2 = v_sub.add_parser("prop2")
    v2.add_argument("--k", type=int, required=True)
    v2.add_argument("--N", required=True)
    v2.add_argument("--n", type=int, required=True)
    vs = v_sub.add_parser("selberg")
    vs.add_argument("--alpha", required=True)
    vs.add_argument("--beta", required=True)
    vs.add_argument("--gamma", required=True)
    vs.add_argument("--k", type=int, required=True)
    vb = v_sub.add_parser("beta")
    vb.add_argument("--alpha", required=True)
    vb.add_argument("--beta", required=True)
    vp = v_sub.add_parser("poincare")
    vp.add_argument("--N", required=True)
    vp.add_argument("--y", required=True)
    vp.add_argument("--n-max", type=int, default=None)

    p_del = sub.add_parser("deligne", help="diagram category operations")
    d_sub = p_del.add_subparsers(dest="action", required=True)
    dd = d_sub.add_parser("dim")
    dd.add_argument("--word", required=True)
    dd.add_argument("--idempotent", default=None)
    dc = d_sub.add_parser("compose")
    dc.add_argument("--f", required=True, help="outer morphism, name:word (id, swap, sym, alt, eval, coeval)")
    dc.add_argument("--g", required=True, help="inner morphism, name:word")
    dl = d_sub.add_parser("check-laws")
    dl.add_argument("--max-word-len", type=int, default=3)
    dv = d_sub.add_parser("vogel")
    dv.add_argument("--a", required=True)
    dv.add_argument("--b", required=True)
    dv.add_argument("--c", required=True)

    p_claim = sub.add_parser("gamma-claim", help="Wronskian-ratio limit experiment")
    p_claim.add_argument("--N", required=True)
    p_claim.add_argument("--z-list", required=True, help="comma-separated negative reals, decreasing")
    p_claim.add_argument("--box", default="3x3")
    p_claim.add_argument("--order", type=int, default=None)
    return parser


def _handle_vogel(args, cfg: RunConfig):
    a = parse_cli_number(args.a, cfg.precision_bits)
    b = parse_cli_number(args.b, cfg.precision_bits)
    c = parse_cli_number(args.c, cfg.precision_bits)
    try:
        value = diag.vogel_dimension(a, b, c, prec=cfg.precision_bits)
    except ZeroDivisionError as exc:
        raise RRHError(str(exc)) from exc
    params = {"a": args.a, "b": args.b, "c": args.c}
    result = {"dimension": fmt_value(value, cfg.precision_bits)}
    rows = [["a", "b", "c", "dimension"], [args.a, args.b, args.c, _flat_str(value, cfg)]]
    return params, result, [], rows


def _merge_negative_values(argv: list) -> list:
    """Join '--flag -1/2' into '--flag=-1/2' so argparse keeps negative values."""
    out = []
    skip = False
    for i, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        if (
            tok.startswith("--")
            and "=" not in tok
            and i + 1 < len(argv)
            and re.match(r"^-\d", argv[i + 1])
        ):
            out.append(f"{tok}={argv[i + 1]}")
            skip = True
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_merge_negative_values(list(argv)))
    prec = args.prec
    if prec is None:
        prec = int(os.environ.get(ENV_PRECISION, 128))
    try:
        cfg = RunConfig(
            precision_bits=check_precision(prec),
            tolerance=float(mpf(args.tolerance)),
            output_format=args.output_format,
            branch=args.branch,
        )
        if args.command == "chi":
            op = "chi"
            params, result, reports, rows = _handle_chi(args, cfg)
        elif args.command == "verify":
            op = f"verify-{args.identity}"
            params, result, reports, rows = _handle_verify(args, cfg)
        elif args.command == "deligne":
            op = f"deligne-{args.action}"
            if args.action == "vogel":
                params, result, reports, rows = _handle_vogel(args, cfg)
            else:
                params, result, reports, rows = _handle_deligne(args, cfg)
        elif args.command == "gamma-claim":
            op = "gamma-claim"
            params, result, reports, rows = _handle_claim(args, cfg)
        else:  # pragma: no cover
            parser.error(f"unknown command {args.command}")
    except _VerificationFailure as vf:
        print(_render(f"deligne-{args.action}", vf.params, vf.result, [], vf.rows, cfg))
        return 1
    except (RRHError, ValueError, ZeroDivisionError) as exc:
        print(json.dumps({"error": str(exc), "type": type(exc).__name__}), file=sys.stderr)
        return 2
    print(_render(op, params, result, reports, rows, cfg))
    if any(not r.passed for r in reports):
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
