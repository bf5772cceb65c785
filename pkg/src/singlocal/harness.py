"""Corpus runner and report serialization.

Entries run independently (concurrently up to the jobs limit); within an
entry, checks run sequentially and each check derives its own sampler from
the entry seed, so filtering checks never changes the draws another check
sees.  Reports serialize deterministically for a fixed corpus and global
seed: rationals as decimal-free "p/q" strings, fields in fixed order.  The
one run-dependent field, elapsed_ms, is omitted from the canonical form
used for byte-identity comparisons.
"""

from __future__ import annotations

import dataclasses
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .checks import (
    ERROR,
    FAIL,
    INCONCLUSIVE,
    PASS,
    CheckResult,
    check_corollary_chain,
    check_expectations,
    check_lct_relation,
    check_milnor_chain,
    check_spectrum_family,
    check_teissier,
    check_upper_bound,
)
from .corpus import Corpus, CorpusEntry
from .errors import SinglocalError
from .invariants import ExtRat
from .sampling import Sampler
from .sections import Hyperplane, parametric_family


def jsonable(value):
    """Rationals to "p/q" strings, dataclasses to dicts, tuples to lists."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, ExtRat):
        return str(value)
    if isinstance(value, bool) or isinstance(value, int) or isinstance(value, str):
        return value
    if value is None:
        return None
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {k: jsonable(v) for k, v in dataclasses.asdict(value).items()}
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return str(value)


@dataclass
class EntryResult:
    name: str
    seed: int
    checks: list[CheckResult]


@dataclass
class Report:
    version: str
    seed: int
    corpus_digest: str
    entries: list[EntryResult]
    summary: dict
    elapsed_ms: int


def _run_check(name: str, entry: CorpusEntry, sampler: Sampler) -> CheckResult:
    if name == "spectrum_family":
        family = parametric_family(entry.poly_text, entry.varset, entry.parameter)
        return check_spectrum_family(family, entry.effective_samples())
    if entry.parameter is not None:
        raise SinglocalError(f"check {name!r} needs a non-parametric entry")
    f = entry.parse()
    if name == "teissier":
        h = Hyperplane(entry.hyperplane) if entry.hyperplane is not None else None
        return check_teissier(f, sampler, h)
    if name == "corollary_chain":
        return check_corollary_chain(f, sampler)
    if name == "upper_bound":
        return check_upper_bound(f, sampler)
    if name == "milnor_chain":
        return check_milnor_chain(f, sampler)
    if name == "lct_relation":
        return check_lct_relation(f, entry.nondegenerate)
    raise SinglocalError(f"unknown check {name!r}")


def run_entry(
    entry: CorpusEntry, global_seed: int, height: int, checks_filter: set[str] | None
) -> EntryResult:
    seed = entry.entry_seed(global_seed)
    sampler = Sampler(seed=seed, height=height)
    results: list[CheckResult] = []
    names = [c for c in entry.checks if checks_filter is None or c in checks_filter]
    if entry.expect and (checks_filter is None or "expect" in checks_filter):
        names.append("expect")
    for name in names:
        try:
            if name == "expect":
                result = check_expectations(entry.parse(), entry.expect, sampler.split("expect"))
            else:
                result = _run_check(name, entry, sampler.split(name))
        except SinglocalError as exc:
            result = CheckResult(name, ERROR, {}, str(exc))
        results.append(result)
    return EntryResult(name=entry.name, seed=seed, checks=results)


def run_corpus(
    corpus: Corpus,
    checks_filter: set[str] | None = None,
    global_seed: int = 0,
    jobs: int = 1,
    height: int = 101,
) -> Report:
    start = time.monotonic()
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            entry_results = list(
                pool.map(
                    lambda e: run_entry(e, global_seed, height, checks_filter), corpus.entries
                )
            )
    else:
        entry_results = [
            run_entry(e, global_seed, height, checks_filter) for e in corpus.entries
        ]
    summary = {"pass": 0, "fail": 0, "inconclusive": 0, "error": 0}
    for er in entry_results:
        for cr in er.checks:
            key = {PASS: "pass", FAIL: "fail", INCONCLUSIVE: "inconclusive", ERROR: "error"}[
                cr.verdict
            ]
            summary[key] += 1
    elapsed_ms = int((time.monotonic() - start) * 1000)
    return Report(
        version=__version__,
        seed=global_seed,
        corpus_digest=corpus.digest,
        entries=entry_results,
        summary=summary,
        elapsed_ms=elapsed_ms,
    )


def report_document(report: Report, include_elapsed: bool = True) -> dict:
    doc = {
        "version": report.version,
        "seed": report.seed,
        "corpus_digest": report.corpus_digest,
        "entries": [
            {
                "name": er.name,
                "seed": er.seed,
                "checks": [
                    {
                        "check": cr.check,
                        "verdict": cr.verdict,
                        "witness": jsonable(cr.witness),
                        "message": cr.message,
                    }
                    for cr in er.checks
                ],
            }
            for er in report.entries
        ],
        "summary": dict(report.summary),
    }
    if include_elapsed:
        doc["elapsed_ms"] = report.elapsed_ms
    return doc


def report_json(report: Report, include_elapsed: bool = True) -> str:
    return json.dumps(report_document(report, include_elapsed), indent=2) + "\n"


def canonical_report_json(report: Report) -> str:
    """Byte-identical across runs for a fixed corpus and global seed."""
    return report_json(report, include_elapsed=False)


def report_table(report: Report) -> str:
    """Tab-delimited verdict table with a trailing summary line."""
    lines = ["entry\tcheck\tverdict\tmessage"]
    for er in report.entries:
        for cr in er.checks:
            lines.append(f"{er.name}\t{cr.check}\t{cr.verdict}\t{cr.message}")
    s = report.summary
    lines.append(
        f"summary\tpass={s['pass']}\tfail={s['fail']}\t"
        f"inconclusive={s['inconclusive']}\terror={s['error']}"
    )
    return "\n".join(lines) + "\n"


def exit_code(report: Report, strict: bool = False) -> int:
    if report.summary["fail"] > 0:
        return 1
    if strict and (report.summary["inconclusive"] > 0 or report.summary["error"] > 0):
        return 3
    return 0
