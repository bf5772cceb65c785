"""Corpus files: human-editable JSON records driving the verification runs.

A corpus is a JSON object {"entries": [...]}; each entry carries

    name        unique string
    vars        list of variable names
    poly        polynomial text (may use one extra parameter symbol)
    checks      list of check names to run
    params      optional: d, m, samples, exclusions, expect, nondegenerate,
                hyperplane, param
    seed        optional per-entry seed override (u64)

Unknown fields anywhere are an error: corpora double as golden test data,
so silent typos are worse than loud rejections.  Rationals in params are
written as decimal-free "p/q" strings (or plain integers).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import CorpusError
from .poly import Poly, VarSet, make_varset, parse_poly
from .sampling import derive_seed

KNOWN_CHECKS = (
    "teissier",
    "corollary_chain",
    "upper_bound",
    "milnor_chain",
    "lct_relation",
    "spectrum_family",
)

_ENTRY_FIELDS = {"name", "vars", "poly", "checks", "params", "seed"}
_PARAM_FIELDS = {
    "d",
    "m",
    "samples",
    "exclusions",
    "expect",
    "nondegenerate",
    "hyperplane",
    "param",
}
_EXPECT_FIELDS = {"mult", "milnor", "theta", "exponent", "lct", "spectrum", "e_jacobian", "mixed"}

DEFAULT_SAMPLES = [
    Fraction(1, 3),
    Fraction(-1, 3),
    Fraction(1, 2),
    Fraction(-1, 2),
    Fraction(2),
    Fraction(-2),
    Fraction(3),
    Fraction(-3),
]


def parse_rational(text) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise CorpusError(f"not a rational: {text!r}") from None
    raise CorpusError(f"not a rational: {text!r}")


def _parse_expect_value(key: str, value):
    if key == "spectrum":
        if not isinstance(value, list):
            raise CorpusError("expected spectrum must be a list of rationals")
        return [parse_rational(v) for v in value]
    if value == "inf":
        return "inf"
    return parse_rational(value)


@dataclass
class CorpusEntry:
    name: str
    varset: VarSet
    poly_text: str
    checks: tuple[str, ...]
    d: int | None = None
    m: int | None = None
    samples: list[Fraction] | None = None
    exclusions: list[Fraction] = field(default_factory=list)
    expect: dict = field(default_factory=dict)
    nondegenerate: bool = False
    hyperplane: tuple[Fraction, ...] | None = None
    parameter: str | None = None
    seed_override: int | None = None

    def parse(self) -> Poly:
        varset = self.varset if self.parameter is None else self.varset.extend([self.parameter])
        return parse_poly(self.poly_text, varset)

    def effective_samples(self) -> list[Fraction]:
        pool = self.samples if self.samples is not None else DEFAULT_SAMPLES
        return [t for t in pool if t not in self.exclusions]

    def entry_seed(self, global_seed: int) -> int:
        if self.seed_override is not None:
            return self.seed_override
        return derive_seed(global_seed, self.name)


def _parse_entry(raw: dict, index: int) -> CorpusEntry:
    if not isinstance(raw, dict):
        raise CorpusError(f"entry {index} is not an object")
    unknown = set(raw) - _ENTRY_FIELDS
    if unknown:
        raise CorpusError(f"entry {index}: unknown fields {sorted(unknown)}")
    for required in ("name", "vars", "poly"):
        if required not in raw:
            raise CorpusError(f"entry {index}: missing field {required!r}")
    name = raw["name"]
    if not isinstance(name, str) or not name:
        raise CorpusError(f"entry {index}: name must be a nonempty string")
    try:
        varset = make_varset(raw["vars"])
    except Exception as exc:
        raise CorpusError(f"entry {name!r}: bad vars: {exc}") from None

    params = raw.get("params", {})
    if not isinstance(params, dict):
        raise CorpusError(f"entry {name!r}: params must be an object")
    unknown = set(params) - _PARAM_FIELDS
    if unknown:
        raise CorpusError(f"entry {name!r}: unknown params {sorted(unknown)}")

    checks = tuple(raw.get("checks", []))
    for check in checks:
        if check not in KNOWN_CHECKS:
            raise CorpusError(f"entry {name!r}: unknown check {check!r}")

    expect_raw = params.get("expect", {})
    if not isinstance(expect_raw, dict):
        raise CorpusError(f"entry {name!r}: expect must be an object")
    unknown = set(expect_raw) - _EXPECT_FIELDS
    if unknown:
        raise CorpusError(f"entry {name!r}: unknown expect keys {sorted(unknown)}")
    expect = {k: _parse_expect_value(k, v) for k, v in expect_raw.items()}

    entry = CorpusEntry(
        name=name,
        varset=varset,
        poly_text=raw["poly"],
        checks=checks,
        d=params.get("d"),
        m=params.get("m"),
        samples=(
            [parse_rational(t) for t in params["samples"]] if "samples" in params else None
        ),
        exclusions=[parse_rational(t) for t in params.get("exclusions", [])],
        expect=expect,
        nondegenerate=bool(params.get("nondegenerate", False)),
        hyperplane=(
            tuple(parse_rational(a) for a in params["hyperplane"])
            if "hyperplane" in params
            else None
        ),
        parameter=params.get("param"),
        seed_override=raw.get("seed"),
    )
    if entry.d is not None and (not isinstance(entry.d, int) or entry.d < 1):
        raise CorpusError(f"entry {name!r}: d must be a positive integer")
    if entry.m is not None and (not isinstance(entry.m, int) or entry.m < 1):
        raise CorpusError(f"entry {name!r}: m must be a positive integer")
    if entry.seed_override is not None and not isinstance(entry.seed_override, int):
        raise CorpusError(f"entry {name!r}: seed must be an integer")
    if entry.parameter is not None and entry.parameter in varset.names:
        raise CorpusError(f"entry {name!r}: parameter collides with a variable")
    try:
        entry.parse()
    except Exception as exc:
        raise CorpusError(f"entry {name!r}: polynomial does not parse: {exc}") from None
    if "spectrum_family" in checks and entry.parameter is None:
        raise CorpusError(f"entry {name!r}: spectrum_family needs a param")
    if entry.parameter is not None and entry.expect:
        raise CorpusError(f"entry {name!r}: expectations need a non-parametric entry")
    return entry


@dataclass
class Corpus:
    entries: tuple[CorpusEntry, ...]
    digest: str
    path: str


def load_corpus(path: str | Path) -> Corpus:
    import hashlib

    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise CorpusError(f"cannot read corpus: {exc}") from None
    digest = hashlib.sha256(data).hexdigest()
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorpusError(f"corpus is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or set(doc) != {"entries"}:
        raise CorpusError('corpus must be an object with a single "entries" field')
    if not isinstance(doc["entries"], list):
        raise CorpusError("entries must be a list")
    entries = [_parse_entry(raw, i) for i, raw in enumerate(doc["entries"])]
    names = [e.name for e in entries]
    if len(set(names)) != len(names):
        raise CorpusError("entry names must be unique")
    return Corpus(entries=tuple(entries), digest=digest, path=str(path))
