"""Hyperplane sections and the deformation families used by the checks.

Restriction substitutes a hyperplane through the origin into the polynomial
and drops the pivot variable (the last one with a nonzero coefficient).
Generic sections draw hyperplane coefficients from a sampler and are
accepted only under the library-wide two-seed policy.

Two families are built symbolically: the one-parameter degeneration
  f(x', t x_n) + (1 - t) x_n^d
which connects f (t = 1) to a section plus a pure power (t = 0), and the
two-parameter cover family
  f(x', y x_n^d) + z x_n^m
which is homogeneous of weight zero for wt(x_n) = 1, wt(y) = -d,
wt(z) = -m; the construction asserts that grading.  Parametric corpus
entries (a pencil in one named parameter) instantiate the same way.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import poly as P
from .errors import (
    ArityError,
    BudgetExceededError,
    DegenerateSampleError,
    SinglocalError,
)
from .invariants import milnor_number, minimal_exponent, multiplicity, theta
from .poly import Poly, VarSet
from .sampling import Certificate, Sampler, stable_value


@dataclass(frozen=True)
class Hyperplane:
    """A hyperplane sum(a_i x_i) = 0 through the origin; a != 0."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if all(a == 0 for a in self.coefficients):
            raise ValueError("hyperplane needs a nonzero coefficient")

    @property
    def pivot(self) -> int:
        return max(i for i, a in enumerate(self.coefficients) if a != 0)


def hyperplane(coefficients) -> Hyperplane:
    return Hyperplane(tuple(Fraction(a) for a in coefficients))


def restrict(f: Poly, h: Hyperplane) -> Poly:
    """Restrict f to the hyperplane, eliminating the pivot variable.

    The pivot variable is expressed in the remaining ones and substituted;
    the result lives in the (n-1)-variable varset that drops the pivot.
    """
    if len(h.coefficients) != f.n:
        raise ArityError("hyperplane dimension mismatch")
    if f.n < 2:
        raise ArityError("restriction needs at least two variables")
    pivot = h.pivot
    target = f.varset.drop(pivot)
    image = P.zero(target)
    for i, a in enumerate(h.coefficients):
        if i == pivot or a == 0:
            continue
        image = P.add(
            image,
            P.scale(P.variable(target, target.index(f.varset.names[i])), -a / h.coefficients[pivot]),
        )
    result = P.substitute(f, {pivot: image}, target=target)
    if result.is_zero():
        raise DegenerateSampleError("polynomial vanishes identically on the hyperplane")
    return result


def sample_hyperplane(stream, n: int, height: int) -> Hyperplane:
    """All coefficients nonzero: a hyperplane in general position."""
    return Hyperplane(tuple(Fraction(stream.nonzero_int(height)) for _ in range(n)))


# Named invariants a generic section can stabilize.  Each entry maps the
# restricted polynomial to (full value, comparison key); keys drop data that
# may legitimately differ between two generic draws (e.g. theta witnesses).
SECTION_INVARIANTS: dict[str, Callable[[Poly], tuple[object, object]]] = {
    "mult": lambda g: (multiplicity(g), multiplicity(g)),
    "milnor": lambda g: (milnor_number(g), milnor_number(g)),
    "exponent": lambda g: (
        (lambda m: (m, (m.value, m.exact)))(minimal_exponent(g))
    ),
    "theta": lambda g: ((lambda t: (t, (t.value, t.status)))(theta(g))),
}


@dataclass(frozen=True)
class SectionValue:
    """A stabilized generic-section invariant with its agreement certificate."""

    invariant: str
    value: object
    certificate: Certificate


def generic_section(f: Poly, invariant: str, sampler: Sampler) -> SectionValue:
    """Evaluate a named invariant on a generic hyperplane section of f,
    under two-seed stability."""
    if f.n < 2:
        raise ArityError("generic sections need at least two variables")
    if invariant not in SECTION_INVARIANTS:
        raise SinglocalError(f"unknown section invariant {invariant!r}")
    evaluate = SECTION_INVARIANTS[invariant]

    def compute(s: Sampler):
        stream = s.stream()
        for _ in range(8):
            h = sample_hyperplane(stream, f.n, s.height)
            try:
                g = restrict(f, h)
            except DegenerateSampleError:
                continue
            return evaluate(g)
        raise DegenerateSampleError("repeated vanishing restriction")

    (value, _), cert = stable_value(
        compute, sampler, key=lambda pair: pair[1], label=f"generic section {invariant}"
    )
    return SectionValue(invariant=invariant, value=value, certificate=cert)


@dataclass(frozen=True)
class FamilySpec:
    """A symbolic family of polynomials over one or two parameters."""

    kind: str  # "loeser" | "cover" | "parametric"
    base: Poly
    d: int | None = None
    m: int | None = None
    parameter_names: tuple[str, ...] = ()
    symbolic: Poly | None = None

    def instantiate(self, *values: Fraction | int) -> Poly:
        if self.kind == "loeser":
            (t,) = values
            return _loeser_member(self.base, self.d, Fraction(t))
        if self.kind == "cover":
            s, t = values
            return _cover_member(self.base, self.d, self.m, Fraction(s), Fraction(t))
        if self.kind == "parametric":
            (t,) = values
            return _parametric_member(self.base, self.parameter_names[0], Fraction(t))
        raise SinglocalError(f"unknown family kind {self.kind}")


def loeser_family(f: Poly, d: int | None = None) -> FamilySpec:
    """f(x', t x_n) + (1 - t) x_n^d; by default d is the multiplicity of f."""
    if f.n < 2:
        raise ArityError("family needs at least two variables")
    if d is None:
        d = multiplicity(f)
        if d is None:
            raise SinglocalError("zero polynomial has no multiplicity")
    if d < 2:
        raise SinglocalError("family exponent d must be at least 2")
    return FamilySpec(kind="loeser", base=f, d=d, parameter_names=("t",))


def _loeser_member(f: Poly, d: int, t: Fraction) -> Poly:
    n = f.n
    if t == 1:
        return f
    scaled_last = P.scale(P.variable(f.varset, n - 1), t)
    member = P.substitute(f, {n - 1: scaled_last}, target=f.varset)
    exp = [0] * n
    exp[n - 1] = d
    return P.add(member, P.monomial(f.varset, tuple(exp), Fraction(1) - t))


def _fresh_pair(varset: VarSet) -> tuple[str, str]:
    for suffix in ("", "0", "1", "2"):
        y, z = "y" + suffix, "z" + suffix
        if y not in varset.names and z not in varset.names:
            return y, z
    raise ArityError("could not pick fresh parameter names")


def cover_family(f: Poly, d: int, m: int) -> FamilySpec:
    """f(x', y x_n^d) + z x_n^m over two extra parameter variables, with the
    weight-zero grading asserted on the symbolic family."""
    if f.n < 2:
        raise ArityError("family needs at least two variables")
    if not (m >= d >= 1):
        raise SinglocalError("cover family needs m >= d >= 1")
    y_name, z_name = _fresh_pair(f.varset)
    ambient = f.varset.extend([y_name, z_name])
    n = f.n
    x_n = P.variable(ambient, n - 1)
    y = P.variable(ambient, n)
    z = P.variable(ambient, n + 1)
    lifted = P.substitute(f, {n - 1: P.mul(y, P.power(x_n, d))}, target=ambient)
    exp = [0] * ambient.arity
    exp[n - 1] = m
    exp[n + 1] = 1
    h = P.add(lifted, P.monomial(ambient, tuple(exp), 1))
    weights = [Fraction(0)] * (n - 1) + [Fraction(1), Fraction(-d), Fraction(-m)]
    degree, homogeneous = P.weighted_degree(h, weights)
    if degree != 0 or not homogeneous:
        raise SinglocalError("cover family lost its weight-zero grading")  # bug guard
    return FamilySpec(
        kind="cover", base=f, d=d, m=m, parameter_names=(y_name, z_name), symbolic=h
    )


def _cover_member(f: Poly, d: int, m: int, s: Fraction, t: Fraction) -> Poly:
    n = f.n
    x_n = P.variable(f.varset, n - 1)
    member = P.substitute(f, {n - 1: P.scale(P.power(x_n, d), s)}, target=f.varset)
    exp = [0] * n
    exp[n - 1] = m
    return P.add(member, P.monomial(f.varset, tuple(exp), t))


def parametric_family(text: str, varset: VarSet, parameter: str) -> FamilySpec:
    """A pencil given by polynomial text over vars plus one parameter symbol."""
    ambient = varset.extend([parameter])
    base = P.parse_poly(text, ambient)
    return FamilySpec(kind="parametric", base=base, parameter_names=(parameter,))


def _parametric_member(base: Poly, parameter: str, t: Fraction) -> Poly:
    ambient = base.varset
    idx = ambient.index(parameter)
    target = ambient.drop(idx)
    return P.substitute(base, {idx: P.constant(target, t)}, target=target)


@dataclass(frozen=True)
class MuScan:
    """Milnor numbers across family samples with a constancy verdict."""

    rows: tuple[tuple[Fraction, int | None | str], ...]
    constant: bool
    partition: tuple[tuple[str, tuple[Fraction, ...]], ...]


def mu_scan(family: FamilySpec, samples: list[Fraction]) -> MuScan:
    """Exact Milnor number at each sample; budget failures mark the sample
    and the scan continues."""
    rows: list[tuple[Fraction, int | None | str]] = []
    for t in samples:
        member = family.instantiate(t)
        try:
            rows.append((t, milnor_number(member)))
        except BudgetExceededError:
            rows.append((t, "budget"))
    groups: dict[str, list[Fraction]] = {}
    for t, mu in rows:
        key = "inf" if mu is None else str(mu)
        groups.setdefault(key, []).append(t)
    values = [mu for _, mu in rows if mu != "budget"]
    constant = len(values) == len(rows) and len(set(values)) == 1
    partition = tuple(sorted((k, tuple(v)) for k, v in groups.items()))
    return MuScan(rows=tuple(rows), constant=constant, partition=partition)
