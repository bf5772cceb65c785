"""Local invariants of hypersurface singularities at the origin.

Multiplicity, Milnor number, Hilbert-Samuel and mixed multiplicities,
the jacobian-versus-maximal-ideal ratio, quasi-homogeneous spectra, and a
minimal-exponent dispatcher that only ever reports a value as exact when
one of its proof-grade routes applies:

  smooth            the jacobian ideal is the unit ideal (value infinity);
  quasi_homogeneous unique positive weights, value read off the spectrum;
  morse_ak          order two with corank at most one, or one variable;
  thom_sebastiani   disjoint-variable blocks, values added;
  lct_lower_bound   Newton-diagonal fallback, explicitly flagged inexact.

Every computation is exact rational arithmetic; generic choices go through
the two-seed stability policy of the sampling module.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from . import poly as P
from .errors import (
    DegenerateSampleError,
    InfiniteColengthError,
    IsolatedSingularityRequiredError,
    NotQuasiHomogeneousError,
    SinglocalError,
)
from .newton import NewtonPoly, ThetaVal, lct_monomial, newton_polyhedron, theta_lp
from .poly import Exponent, Poly, VarSet, WeightVector
from .sampling import Certificate, Sampler, stable_value
from .standard_basis import Ideal, colength, quotient_monomial_basis


@dataclass(frozen=True)
class ExtRat:
    """A rational number or +infinity (value None)."""

    value: Fraction | None

    @classmethod
    def of(cls, q: int | Fraction) -> "ExtRat":
        return cls(Fraction(q))

    @classmethod
    def infinity(cls) -> "ExtRat":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __add__(self, other: "ExtRat") -> "ExtRat":
        if self.is_infinite or other.is_infinite:
            return ExtRat.infinity()
        return ExtRat(self.value + other.value)

    def __sub__(self, other: Fraction | int) -> "ExtRat":
        if self.is_infinite:
            return self
        return ExtRat(self.value - Fraction(other))

    def __ge__(self, other: "ExtRat") -> bool:
        if self.is_infinite:
            return True
        if other.is_infinite:
            return False
        return self.value >= other.value

    def __le__(self, other: "ExtRat") -> bool:
        return other >= self

    def __str__(self) -> str:
        return "inf" if self.is_infinite else str(self.value)


METHODS = ("smooth", "quasi_homogeneous", "thom_sebastiani", "morse_ak", "lct_lower_bound")


@dataclass(frozen=True)
class MinExp:
    """A minimal-exponent value with its derivation route and exactness flag."""

    value: ExtRat
    method: str
    exact: bool

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method}")
        if not self.exact and self.method != "lct_lower_bound":
            raise ValueError("only the lct fallback may be inexact")
        if self.exact and not self.value.is_infinite and self.value.value <= 0:
            raise ValueError("exact minimal exponents are positive")


@dataclass(frozen=True)
class Spectrum:
    """Multiset of spectral numbers with multiplicities, plus the ambient
    dimension; entries are sorted ascending."""

    entries: tuple[tuple[Fraction, int], ...]
    ambient: int

    @classmethod
    def from_values(cls, values: list[Fraction], ambient: int) -> "Spectrum":
        counted = Counter(values)
        entries = tuple(sorted((v, m) for v, m in counted.items()))
        return cls(entries=entries, ambient=ambient)

    @classmethod
    def checked(cls, values: list[Fraction], ambient: int, mu: int) -> "Spectrum":
        """Construct and enforce the classical invariants: size mu, unique
        minimum, symmetry about ambient/2."""
        spec = cls.from_values(values, ambient)
        if spec.total_multiplicity() != mu:
            raise SinglocalError("spectrum size disagrees with the Milnor number")
        if spec.entries and spec.entries[0][1] != 1:
            raise SinglocalError("minimal spectral number must have multiplicity 1")
        mirrored = sorted((Fraction(ambient) - v, m) for v, m in spec.entries)
        if mirrored != sorted(spec.entries):
            raise SinglocalError("spectrum is not symmetric about n/2")
        return spec

    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.entries)

    def minimum(self) -> Fraction:
        return self.entries[0][0]

    def values(self) -> list[Fraction]:
        out: list[Fraction] = []
        for v, m in self.entries:
            out.extend([v] * m)
        return out


def multiplicity(f: Poly) -> int | None:
    """Order of vanishing at the origin (None = +infinity for the zero poly)."""
    return P.order_at_origin(f)


def jacobian_ideal(f: Poly) -> Ideal:
    """The ideal of all first partial derivatives; zero partials dropped."""
    partials = [P.partial_derivative(f, i) for i in range(f.n)]
    gens = tuple(p for p in partials if not p.is_zero())
    if not gens:
        raise SinglocalError("constant polynomial has no jacobian ideal")
    return Ideal(f.varset, gens)


def milnor_number(f: Poly, step_budget: int | None = None) -> int | None:
    """Colength of the jacobian ideal; None means a non-isolated singularity,
    0 a smooth point."""
    kwargs = {}
    if step_budget is not None:
        kwargs["step_budget"] = step_budget
    return colength(jacobian_ideal(f), **kwargs)


def _generic_combinations(I: Ideal, count: int, stream, height: int) -> list[Poly]:
    gens = I.generators
    combos = []
    for _ in range(count):
        coeffs = [stream.nonzero_int(height) for _ in gens]
        acc = P.zero(I.varset)
        for c, g in zip(coeffs, gens):
            acc = P.add(acc, P.scale(g, c))
        combos.append(acc)
    return combos


def hilbert_samuel_multiplicity(
    I: Ideal, sampler: Sampler
) -> tuple[int, Certificate]:
    """e(I) for an m-primary ideal, as the colength of n generic integer
    combinations of the generators, accepted under two-seed agreement."""
    n = I.varset.arity
    if colength(I) is None:
        raise IsolatedSingularityRequiredError("hilbert-samuel multiplicity needs finite colength")

    def compute(s: Sampler) -> int:
        stream = s.stream()
        combos = _generic_combinations(I, n, stream, s.height)
        value = colength(Ideal(I.varset, tuple(combos)))
        if value is None:
            raise DegenerateSampleError("combination ideal is not m-primary")
        return value

    return stable_value(compute, sampler, label="hilbert-samuel multiplicity")


def mixed_multiplicity_hyperplane(
    I: Ideal, sampler: Sampler
) -> tuple[int, Certificate]:
    """e(I^[n-1], m): colength of n-1 generic elements of I together with
    one generic linear form."""
    n = I.varset.arity
    if n < 2:
        raise SinglocalError("mixed multiplicity needs at least two variables")
    if colength(I) is None:
        raise IsolatedSingularityRequiredError("mixed multiplicity needs finite colength")

    def compute(s: Sampler) -> int:
        stream = s.stream()
        combos = _generic_combinations(I, n - 1, stream, s.height)
        linear = P.zero(I.varset)
        for i in range(n):
            linear = P.add(linear, P.scale(P.variable(I.varset, i), stream.nonzero_int(s.height)))
        value = colength(Ideal(I.varset, tuple(combos + [linear])))
        if value is None:
            raise DegenerateSampleError("sampled ideal is not m-primary")
        return value

    return stable_value(compute, sampler, label="mixed multiplicity")


def theta(f: Poly) -> ThetaVal:
    """The jacobian-to-maximal-ideal valuation ratio, from the Newton
    polyhedron of the union of the partials' supports.

    The value is exact when every partial is a monomial, and in one
    variable (where the only divisor over the origin is monomial); in all
    other cases it is a certified lower bound.
    """
    mu = milnor_number(f)
    if mu is None:
        raise IsolatedSingularityRequiredError("theta needs an isolated singularity")
    if mu == 0:
        raise SinglocalError("theta undefined at a smooth point")
    J = jacobian_ideal(f)
    support: set[Exponent] = set()
    for g in J.generators:
        support |= g.support()
    np_ = newton_polyhedron(support)
    result = theta_lp(np_)
    monomial_data = all(g.term_count() == 1 for g in J.generators) or f.n == 1
    if monomial_data:
        return result
    return ThetaVal(value=result.value, status="newton_lower_bound", witness=result.witness)


def find_qh_weights(f: Poly) -> WeightVector | None:
    """The unique positive weights giving every support exponent weight 1,
    when the support determines them; None otherwise (including
    underdetermined systems, by policy)."""
    if f.is_zero():
        return None
    rows = [list(map(Fraction, e)) for e in f.terms]
    n = f.n
    # Gaussian elimination on [rows | 1].
    aug = [row + [Fraction(1)] for row in rows]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, len(aug)) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pc = aug[r][col]
        aug[r] = [x / pc for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col] != 0:
                fct = aug[i][col]
                aug[i] = [x - fct * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    for i in range(r, len(aug)):
        if aug[i][n] != 0:
            return None  # inconsistent
    if len(pivots) < n:
        return None  # underdetermined
    w = [Fraction(0)] * n
    for row_idx, col in enumerate(pivots):
        w[col] = aug[row_idx][n]
    if any(x <= 0 for x in w):
        return None
    return WeightVector(tuple(w))


def spectrum_qh(f: Poly) -> Spectrum:
    """Spectrum of a quasi-homogeneous isolated singularity: shifted weighted
    degrees over a monomial basis of the Milnor algebra."""
    w = find_qh_weights(f)
    if w is None:
        raise NotQuasiHomogeneousError("no unique positive weight vector")
    try:
        basis = quotient_monomial_basis(jacobian_ideal(f))
    except InfiniteColengthError:
        raise IsolatedSingularityRequiredError("spectrum needs an isolated singularity") from None
    values = [sum((a + 1) * wi for a, wi in zip(e, w.weights)) for e in basis]
    return Spectrum.checked(values, ambient=f.n, mu=len(basis))


def ts_split(f: Poly) -> list[Poly]:
    """Split f into summands over disjoint variable blocks.

    Blocks are the connected components of the graph joining variables that
    occur together in some term; variables absent from f belong to no
    block.  The sum of the returned parts, re-embedded, is f.
    """
    occur = [i for i in range(f.n) if any(e[i] for e in f.terms)]
    parent = {i: i for i in occur}

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for e in f.terms:
        present = [i for i in occur if e[i]]
        for a, b in zip(present, present[1:]):
            parent[find(a)] = find(b)

    blocks: dict[int, list[int]] = {}
    for i in occur:
        blocks.setdefault(find(i), []).append(i)

    parts: list[Poly] = []
    for block in sorted(blocks.values()):
        block_vars = VarSet(tuple(f.varset.names[i] for i in block))
        terms: dict[Exponent, Fraction] = {}
        for e, c in f.terms.items():
            if any(e[i] for i in block):
                if any(e[i] for i in occur if i not in block):
                    raise SinglocalError("term spans two blocks")  # unreachable
                terms[tuple(e[i] for i in block)] = c
        parts.append(Poly(block_vars, terms))
    return parts


def ts_spectrum(s1: Spectrum, s2: Spectrum) -> Spectrum:
    """Join of spectra: all pairwise sums with multiplicities."""
    values: list[Fraction] = []
    for v1, m1 in s1.entries:
        for v2, m2 in s2.entries:
            values.extend([v1 + v2] * (m1 * m2))
    return Spectrum.from_values(values, ambient=s1.ambient + s2.ambient)


def hessian_rank(f: Poly) -> int:
    """Exact rank of the Hessian of the degree-2 part at the origin."""
    n = f.n
    m = [[Fraction(0)] * n for _ in range(n)]
    for e, c in f.terms.items():
        if sum(e) != 2:
            continue
        support = [i for i, x in enumerate(e) if x]
        if len(support) == 1:
            i = support[0]
            m[i][i] = 2 * c
        else:
            i, j = support
            m[i][j] = c
            m[j][i] = c
    rank = 0
    rows = [row[:] for row in m]
    for col in range(n):
        pivot = next((i for i in range(rank, n) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pc = rows[rank][col]
        rows[rank] = [x / pc for x in rows[rank]]
        for i in range(n):
            if i != rank and rows[i][col] != 0:
                fct = rows[i][col]
                rows[i] = [x - fct * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def morse_ak_exponent(f: Poly) -> MinExp | None:
    """Exponent via curve order or A_k recognition.

    One variable: 1/order.  Otherwise order 2 with Hessian corank at most
    one and finite Milnor number mu makes f an A_mu germ up to coordinates,
    with exponent (n-1)/2 + 1/(mu+1).  Returns None when neither applies.
    """
    if f.is_zero() or f.constant_term() != 0:
        return None
    if f.n == 1:
        order = P.order_at_origin(f)
        return MinExp(value=ExtRat.of(Fraction(1, order)), method="morse_ak", exact=True)
    if P.order_at_origin(f) != 2:
        return None
    if hessian_rank(f) < f.n - 1:
        return None
    mu = milnor_number(f)
    if mu is None:
        return None
    value = Fraction(f.n - 1, 2) + Fraction(1, mu + 1)
    return MinExp(value=ExtRat.of(value), method="morse_ak", exact=True)


def minimal_exponent(f: Poly) -> MinExp:
    """Dispatch the minimal exponent through the exact routes, falling back
    to an explicitly inexact Newton-diagonal lower estimate."""
    if f.is_zero():
        raise SinglocalError("minimal exponent of the zero polynomial is undefined")
    if f.constant_term() != 0:
        raise SinglocalError("polynomial must vanish at the origin")
    mu = milnor_number(f)
    if mu == 0:
        return MinExp(value=ExtRat.infinity(), method="smooth", exact=True)

    parts = ts_split(f)
    if len(parts) > 1:
        results = [minimal_exponent(p) for p in parts]
        total = ExtRat.of(0)
        for r in results:
            total = total + r.value
        exact = all(r.exact for r in results)
        method = "thom_sebastiani" if exact else "lct_lower_bound"
        return MinExp(value=total, method=method, exact=exact)

    f = parts[0]  # drops variables that never occur

    if find_qh_weights(f) is not None:
        try:
            spec = spectrum_qh(f)
            return MinExp(
                value=ExtRat.of(spec.minimum()), method="quasi_homogeneous", exact=True
            )
        except IsolatedSingularityRequiredError:
            pass

    ak = morse_ak_exponent(f)
    if ak is not None:
        return ak

    np_ = newton_polyhedron(f.support())
    bound = min(Fraction(1), lct_monomial(np_))
    return MinExp(value=ExtRat.of(bound), method="lct_lower_bound", exact=False)
