"""Command-line interface.

Subcommands: mult, milnor, theta, exponent, spectrum, section, scan, verify.
Exit codes: 0 success / all PASS, 1 at least one FAIL, 2 usage or
validation error, 3 INCONCLUSIVE (or error records) present under --strict.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .corpus import load_corpus, parse_rational
from .errors import CorpusError, SinglocalError
from .harness import (
    exit_code,
    jsonable,
    report_json,
    report_table,
    run_corpus,
)
from .invariants import (
    milnor_number,
    minimal_exponent,
    multiplicity,
    spectrum_qh,
    theta,
)
from .poly import make_varset, parse_poly
from .sampling import Sampler
from .sections import generic_section, loeser_family, mu_scan, parametric_family
from .standard_basis import set_budgets

USAGE_ERROR = 2


def _add_poly_args(p: argparse.ArgumentParser):
    p.add_argument("poly", help="polynomial text, e.g. 'x^2 + y^3'")
    p.add_argument("--vars", required=True, help="comma-separated variable names")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="singlocal",
        description="Exact local invariants of isolated hypersurface singularities.",
    )
    parser.add_argument("--version", action="version", version=f"singlocal {__version__}")
    parser.add_argument("--seed", type=int, default=0, help="global seed (default 0)")
    parser.add_argument("--height", type=int, default=101, help="sampling height (default 101)")
    parser.add_argument("--jobs", type=int, default=1, help="concurrent corpus entries")
    parser.add_argument("--format", choices=["json", "table"], default="table")
    parser.add_argument("--qmax", type=int, default=12, help="oracle denominator cap")
    parser.add_argument("--budget", type=int, default=None, help="reduction step budget")

    sub = parser.add_subparsers(dest="command", required=True)

    for name, blurb in [
        ("mult", "multiplicity (order of vanishing) at the origin"),
        ("milnor", "Milnor number"),
        ("theta", "jacobian-to-maximal-ideal valuation ratio"),
        ("exponent", "minimal exponent with method and exactness"),
        ("spectrum", "spectrum of a quasi-homogeneous isolated singularity"),
    ]:
        p = sub.add_parser(name, help=blurb)
        _add_poly_args(p)
        if name == "spectrum":
            p.add_argument("--figure", help="write a spectrum figure to this path")

    p = sub.add_parser("section", help="stabilized generic hyperplane-section invariant")
    _add_poly_args(p)
    p.add_argument(
        "--invariant",
        choices=["mult", "milnor", "exponent", "theta"],
        default="milnor",
    )

    p = sub.add_parser("scan", help="Milnor numbers across a family")
    _add_poly_args(p)
    p.add_argument("--param", help="parameter symbol for a parametric pencil")
    p.add_argument("--family", choices=["loeser", "parametric"], default=None)
    p.add_argument("--d", type=int, default=None, help="pure-power exponent (loeser)")
    p.add_argument("--samples", help="comma-separated rational parameter values")
    p.add_argument("--exclude", help="comma-separated excluded values")
    p.add_argument("--figure", help="write a scan figure to this path")

    p = sub.add_parser("verify", help="run checks over a corpus file")
    p.add_argument("corpus", help="path to a corpus JSON file")
    p.add_argument("--checks", help="comma-separated subset of checks to run")
    p.add_argument("--strict", action="store_true", help="exit 3 on INCONCLUSIVE")
    p.add_argument("--out", help="write the JSON report to this file")
    p.add_argument("--figures", help="render per-entry figures into this directory")
    return parser


def _emit(payload: dict, fmt: str):
    if fmt == "json":
        print(json.dumps(jsonable(payload), indent=2))
    else:
        for key, value in payload.items():
            rendered = jsonable(value)
            if not isinstance(rendered, (str, int, bool)) and rendered is not None:
                rendered = json.dumps(rendered)
            print(f"{key}\t{rendered}")


def _parse_samples(text: str | None) -> list[Fraction] | None:
    if text is None:
        return None
    return [parse_rational(part.strip()) for part in text.split(",") if part.strip()]


def _cmd_scalar(args) -> int:
    varset = make_varset(args.vars)
    f = parse_poly(args.poly, varset)
    if args.command == "mult":
        value = multiplicity(f)
        _emit({"mult": "inf" if value is None else value}, args.format)
    elif args.command == "milnor":
        value = milnor_number(f)
        _emit({"milnor": "inf" if value is None else value}, args.format)
    elif args.command == "theta":
        tv = theta(f)
        payload = {"theta": tv.value, "status": tv.status, "witness": tv.witness}
        if tv.status == "exact_monomial" and f.n >= 2:
            from .invariants import jacobian_ideal
            from .newton import theta_oracle

            gens = jacobian_ideal(f).generators
            if all(g.term_count() == 1 for g in gens):
                exponents = [next(iter(g.terms)) for g in gens]
                payload["oracle"] = theta_oracle(exponents, args.qmax)
        _emit(payload, args.format)
    elif args.command == "exponent":
        me = minimal_exponent(f)
        _emit(
            {"exponent": str(me.value), "method": me.method, "exact": me.exact},
            args.format,
        )
    elif args.command == "spectrum":
        spec = spectrum_qh(f)
        _emit(
            {
                "milnor": spec.total_multiplicity(),
                "entries": [[v, m] for v, m in spec.entries],
            },
            args.format,
        )
        if args.figure:
            from .figures import spectrum_figure

            spectrum_figure(spec, args.figure, title=args.poly)
            print(f"figure\t{args.figure}", file=sys.stderr)
    return 0


def _cmd_section(args) -> int:
    varset = make_varset(args.vars)
    f = parse_poly(args.poly, varset)
    sampler = Sampler(seed=args.seed, height=args.height)
    sv = generic_section(f, args.invariant, sampler)
    value = sv.value
    if args.invariant == "exponent":
        value = {"value": str(value.value), "method": value.method, "exact": value.exact}
    elif args.invariant == "theta":
        value = {"value": value.value, "status": value.status}
    elif value is None:
        value = "inf"
    _emit({args.invariant: value, "certificate": sv.certificate}, args.format)
    return 0


def _cmd_scan(args) -> int:
    varset = make_varset(args.vars)
    kind = args.family or ("parametric" if args.param else "loeser")
    if kind == "parametric":
        if not args.param:
            raise SinglocalError("parametric scan needs --param")
        family = parametric_family(args.poly, varset, args.param)
    else:
        family = loeser_family(parse_poly(args.poly, varset), args.d)
    samples = _parse_samples(args.samples)
    if samples is None:
        from .corpus import DEFAULT_SAMPLES

        samples = list(DEFAULT_SAMPLES)
    for excluded in _parse_samples(args.exclude) or []:
        samples = [t for t in samples if t != excluded]
    scan = mu_scan(family, samples)
    payload = {
        "rows": [[t, "inf" if mu is None else mu] for t, mu in scan.rows],
        "constant": scan.constant,
        "partition": scan.partition,
    }
    _emit(payload, args.format)
    if args.figure:
        from .figures import mu_scan_figure

        mu_scan_figure(scan, args.figure, title=args.poly)
        print(f"figure\t{args.figure}", file=sys.stderr)
    return 0


def _render_entry_figures(corpus, report, directory: str):
    from . import figures
    from .newton import newton_polyhedron
    from .errors import SinglocalError as _Err

    outdir = Path(directory)
    outdir.mkdir(parents=True, exist_ok=True)
    for entry in corpus.entries:
        if entry.parameter is not None:
            family = parametric_family(entry.poly_text, entry.varset, entry.parameter)
            scan = mu_scan(family, entry.effective_samples())
            figures.mu_scan_figure(scan, outdir / f"{entry.name}_mu_scan.png", title=entry.name)
            continue
        f = entry.parse()
        try:
            spec = spectrum_qh(f)
            figures.spectrum_figure(spec, outdir / f"{entry.name}_spectrum.png", title=entry.name)
        except _Err:
            pass
        if f.n == 2:
            figures.newton_figure(
                newton_polyhedron(f.support()),
                outdir / f"{entry.name}_newton.png",
                title=entry.name,
            )
    figures.summary_figure(report.summary, outdir / "summary.png")


def _cmd_verify(args) -> int:
    corpus = load_corpus(args.corpus)
    checks_filter = None
    if args.checks:
        checks_filter = {c.strip() for c in args.checks.split(",") if c.strip()}
    report = run_corpus(
        corpus,
        checks_filter=checks_filter,
        global_seed=args.seed,
        jobs=args.jobs,
        height=args.height,
    )
    if args.out:
        Path(args.out).write_text(report_json(report), encoding="utf-8")
    if args.figures:
        _render_entry_figures(corpus, report, args.figures)
    if args.format == "json":
        sys.stdout.write(report_json(report))
    else:
        sys.stdout.write(report_table(report))
    return exit_code(report, strict=args.strict)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    if args.budget is not None:
        set_budgets(steps=args.budget)
    try:
        if args.command in ("mult", "milnor", "theta", "exponent", "spectrum"):
            return _cmd_scalar(args)
        if args.command == "section":
            return _cmd_section(args)
        if args.command == "scan":
            return _cmd_scan(args)
        if args.command == "verify":
            return _cmd_verify(args)
        raise SinglocalError(f"unknown command {args.command}")
    except CorpusError as exc:
        print(f"corpus error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except SinglocalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
