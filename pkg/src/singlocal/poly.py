"""Exact sparse multivariate polynomials over the rationals.

A polynomial is a map from exponent tuples to nonzero ``Fraction``
coefficients:

    Poly.terms : dict[Exponent, Fraction]
    Exponent   = tuple[int, ...]     (one entry per variable)

The zero polynomial has an empty term map.  All operations return new
values; a ``Poly`` is never mutated after construction, so values are safe
to share between threads.  Everything is local at the origin by convention:
``order_at_origin`` is the minimal total degree of the support, and callers
representing a singularity elsewhere must translate coordinates first.

Printing uses graded lexicographic ascending term order (total degree
first, then the exponent tuple), which makes printed output deterministic
and round-trippable through ``parse_poly``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ArityError, PolyParseError

Exponent = tuple[int, ...]

MAX_ARITY = 6

# Default cap on the number of terms an expansion may produce.
TERM_CAP = 50_000

_VAR_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_NAT_RE = re.compile(r"[0-9]+")


@dataclass(frozen=True)
class VarSet:
    """An ordered tuple of distinct variable names; fixed for the life of a Poly."""

    names: tuple[str, ...]

    def __post_init__(self):
        if not (1 <= len(self.names) <= MAX_ARITY):
            raise ArityError(f"arity must be between 1 and {MAX_ARITY}, got {len(self.names)}")
        if len(set(self.names)) != len(self.names):
            raise ArityError(f"variable names must be distinct: {self.names}")
        for name in self.names:
            if not _VAR_RE.fullmatch(name):
                raise ArityError(f"invalid variable name: {name!r}")

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ArityError(f"unknown variable {name!r} in {self.names}") from None

    def drop(self, i: int) -> "VarSet":
        return VarSet(self.names[:i] + self.names[i + 1 :])

    def extend(self, extra: Iterable[str]) -> "VarSet":
        return VarSet(self.names + tuple(extra))


def make_varset(names: Iterable[str] | str) -> VarSet:
    """Build a VarSet from an iterable of names or a comma-separated string."""
    if isinstance(names, str):
        names = [s.strip() for s in names.split(",") if s.strip()]
    return VarSet(tuple(names))


@dataclass(frozen=True)
class WeightVector:
    """Positive rational weights, one per variable."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if any(w <= 0 for w in self.weights):
            raise ValueError(f"weights must be positive: {self.weights}")


@dataclass(frozen=True)
class Poly:
    """A sparse polynomial in canonical form (no zero coefficients stored).

    Two polynomials are equal iff their varsets and term maps are equal.
    """

    varset: VarSet
    terms: Mapping[Exponent, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        n = self.varset.arity
        for exp, coeff in self.terms.items():
            if len(exp) != n:
                raise ArityError(f"exponent {exp} does not match arity {n}")
            if coeff == 0:
                raise ValueError("canonical form stores no zero coefficients")

    @property
    def n(self) -> int:
        return self.varset.arity

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.n, Fraction(0))

    def support(self) -> set[Exponent]:
        return set(self.terms)

    def term_count(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.varset == other.varset and dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash((self.varset, frozenset(self.terms.items())))

    def __add__(self, other: "Poly") -> "Poly":
        return add(self, other)

    def __sub__(self, other: "Poly") -> "Poly":
        return sub(self, other)

    def __mul__(self, other: "Poly") -> "Poly":
        return mul(self, other)

    def __neg__(self) -> "Poly":
        return Poly(self.varset, {e: -c for e, c in self.terms.items()})

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({','.join(self.varset.names)}: {format_poly(self)})"


def _canonical(varset: VarSet, terms: dict[Exponent, Fraction]) -> Poly:
    return Poly(varset, {e: c for e, c in terms.items() if c != 0})


def zero(varset: VarSet) -> Poly:
    return Poly(varset, {})


def constant(varset: VarSet, value: int | Fraction) -> Poly:
    c = Fraction(value)
    if c == 0:
        return zero(varset)
    return Poly(varset, {(0,) * varset.arity: c})


def variable(varset: VarSet, i: int) -> Poly:
    exp = [0] * varset.arity
    exp[i] = 1
    return Poly(varset, {tuple(exp): Fraction(1)})


def monomial(varset: VarSet, exp: Exponent, coeff: int | Fraction = 1) -> Poly:
    c = Fraction(coeff)
    if c == 0:
        return zero(varset)
    return Poly(varset, {tuple(exp): c})


def _check_same_varset(a: Poly, b: Poly):
    if a.varset != b.varset:
        raise ArityError(f"varset mismatch: {a.varset.names} vs {b.varset.names}")


def add(a: Poly, b: Poly) -> Poly:
    _check_same_varset(a, b)
    out = dict(a.terms)
    for e, c in b.terms.items():
        s = out.get(e, Fraction(0)) + c
        if s == 0:
            out.pop(e, None)
        else:
            out[e] = s
    return Poly(a.varset, out)


def sub(a: Poly, b: Poly) -> Poly:
    _check_same_varset(a, b)
    out = dict(a.terms)
    for e, c in b.terms.items():
        s = out.get(e, Fraction(0)) - c
        if s == 0:
            out.pop(e, None)
        else:
            out[e] = s
    return Poly(a.varset, out)


def scale(a: Poly, c: int | Fraction) -> Poly:
    c = Fraction(c)
    if c == 0:
        return zero(a.varset)
    return Poly(a.varset, {e: coeff * c for e, coeff in a.terms.items()})


def mul(a: Poly, b: Poly, term_cap: int = TERM_CAP) -> Poly:
    _check_same_varset(a, b)
    if not a.terms or not b.terms:
        return zero(a.varset)
    out: dict[Exponent, Fraction] = {}
    from .errors import BudgetExceededError

    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e, Fraction(0)) + ca * cb
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        if len(out) > term_cap:
            raise BudgetExceededError(f"product exceeds term cap {term_cap}")
    return Poly(a.varset, out)


def power(a: Poly, k: int, term_cap: int = TERM_CAP) -> Poly:
    if k < 0:
        raise ValueError("negative power")
    result = constant(a.varset, 1)
    base = a
    while k:
        if k & 1:
            result = mul(result, base, term_cap)
        k >>= 1
        if k:
            base = mul(base, base, term_cap)
    return result


def partial_derivative(f: Poly, i: int) -> Poly:
    """Exact formal partial derivative with respect to variable i."""
    if not 0 <= i < f.n:
        raise ArityError(f"variable index {i} out of range for arity {f.n}")
    out: dict[Exponent, Fraction] = {}
    for e, c in f.terms.items():
        if e[i] == 0:
            continue
        d = list(e)
        d[i] -= 1
        out[tuple(d)] = c * e[i]
    return Poly(f.varset, out)


def substitute(
    f: Poly,
    assignments: Mapping[int | str, Poly],
    target: VarSet | None = None,
    term_cap: int = TERM_CAP,
) -> Poly:
    """Compose f with the given per-variable assignments.

    Keys may be variable indices or names of ``f.varset``.  Every assigned
    Poly must live in one common target varset; variables of f without an
    assignment map to the same-named variable of the target, which must
    exist there.
    """
    by_index: dict[int, Poly] = {}
    for key, val in assignments.items():
        idx = f.varset.index(key) if isinstance(key, str) else key
        if not 0 <= idx < f.n:
            raise ArityError(f"assignment index {idx} out of range")
        by_index[idx] = val

    if target is None:
        if not by_index:
            return f
        target = next(iter(by_index.values())).varset
    for val in by_index.values():
        if val.varset != target:
            raise ArityError("all substituted polynomials must share the target varset")

    images: list[Poly] = []
    for i in range(f.n):
        if i in by_index:
            images.append(by_index[i])
        else:
            images.append(variable(target, target.index(f.varset.names[i])))

    # Cache of images[i]**k, built lazily per call.
    powers: dict[tuple[int, int], Poly] = {}

    def img_pow(i: int, k: int) -> Poly:
        key = (i, k)
        if key not in powers:
            powers[key] = power(images[i], k, term_cap)
        return powers[key]

    result = zero(target)
    for e, c in f.terms.items():
        term = constant(target, c)
        for i, k in enumerate(e):
            if k:
                term = mul(term, img_pow(i, k), term_cap)
        result = add(result, term)
    return result


def order_at_origin(f: Poly) -> int | None:
    """Minimal total degree of the support; None stands for +infinity (f = 0)."""
    if not f.terms:
        return None
    return min(sum(e) for e in f.terms)


def weighted_degree(f: Poly, weights: Iterable[Fraction]) -> tuple[Fraction | None, bool]:
    """Minimum of <w, a> over the support, and whether every term attains it.

    Accepts any rational weights; ``WeightVector`` callers are the positive
    case, signed weights appear only in family gradings.  The zero
    polynomial reports (None, True), None standing for +infinity.
    """
    w = tuple(Fraction(x) for x in weights)
    if len(w) != f.n:
        raise ArityError("weight vector length must equal arity")
    if not f.terms:
        return None, True
    values = [sum(wi * ai for wi, ai in zip(w, e)) for e in f.terms]
    lo = min(values)
    return lo, all(v == lo for v in values)


def print_order_key(e: Exponent) -> tuple:
    """Canonical term order for printing: graded lexicographic ascending."""
    return (sum(e), e)


def format_poly(f: Poly) -> str:
    if not f.terms:
        return "0"
    names = f.varset.names
    parts: list[str] = []
    for e in sorted(f.terms, key=print_order_key):
        c = f.terms[e]
        factors = []
        for name, k in zip(names, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


class _Scanner:
    """Tokenizer for the polynomial grammar; whitespace is insignificant."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def match(self, regex: re.Pattern) -> str | None:
        self.skip_ws()
        m = regex.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return m.group(0)
        return None


def parse_poly(text: str, varset: VarSet) -> Poly:
    """Parse polynomial text into canonical form.

    Grammar: expr := term (('+'|'-') term)*; a term is a product of factors
    separated by optional '*', each factor an integer, a rational int/posint,
    or var('^' nat)?.  Unknown variables and syntax errors raise with the
    offending position.
    """
    sc = _Scanner(text)
    result = zero(varset)
    negate = False
    # Optional leading sign.
    if sc.take("-"):
        negate = True
    elif sc.take("+"):
        pass
    while True:
        term = _parse_term(sc, varset)
        result = add(result, -term if negate else term)
        ch = sc.peek()
        if ch == "+":
            sc.take("+")
            negate = False
        elif ch == "-":
            sc.take("-")
            negate = True
        elif ch == "":
            break
        else:
            raise PolyParseError(f"unexpected character {ch!r}", sc.pos)
    return result


def _parse_term(sc: _Scanner, varset: VarSet) -> Poly:
    factors = 0
    coeff = Fraction(1)
    exp = [0] * varset.arity
    # Signed integer coefficients are allowed at the head of a term.
    while sc.peek() in "+-":
        if sc.take("-"):
            coeff = -coeff
        else:
            sc.take("+")
    while True:
        ch = sc.peek()
        if ch.isdigit():
            num = sc.match(_NAT_RE)
            if sc.take("/"):
                den = sc.match(_NAT_RE)
                if den is None:
                    raise PolyParseError("expected denominator after '/'", sc.pos)
                if int(den) == 0:
                    raise PolyParseError("zero denominator", sc.pos)
                coeff *= Fraction(int(num), int(den))
            else:
                coeff *= int(num)
        elif ch.isalpha():
            name = sc.match(_VAR_RE)
            if name not in varset.names:
                raise PolyParseError(f"unknown variable {name!r}", sc.pos - len(name))
            i = varset.index(name)
            if sc.take("^"):
                k = sc.match(_NAT_RE)
                if k is None:
                    raise PolyParseError("expected exponent after '^'", sc.pos)
                exp[i] += int(k)
            else:
                exp[i] += 1
        else:
            if factors == 0:
                raise PolyParseError("expected a term", sc.pos)
            break
        factors += 1
        if sc.take("*"):
            if sc.peek() == "" or sc.peek() in "+-":
                raise PolyParseError("dangling '*'", sc.pos)
    return monomial(varset, tuple(exp), coeff)
