"""Standard bases in the local ring at the origin, via Mora normal form.

The monomial order is anti-graded reverse lexicographic: exponents of
smaller total degree are larger, ties are broken at the last coordinate
where two exponents differ, with the larger entry ranked smaller.  The
unit monomial is the unique maximum, so leading terms pick out the
tangent-cone part of a polynomial and the computed leading ideal is the
one of the ideal extended to the localization at the origin.  This is what
separates the engine from a global Groebner basis: the colength of
(x - x^2, y) comes out 1, not 2, because 1 - x is a local unit.

Reduction uses Mora's weak normal form with ecart-based reducer selection;
intermediate remainders join the reducer set when their ecart drops below
the chosen reducer's, which is what makes division terminate for a local
order.  Everything is deterministic: reducer ties break by insertion
order, and s-pairs are processed by the local order on the lcm of leading
monomials, then first in, first out.

Budgets (reduction steps, intermediate term counts, staircase cells) turn
runaway computations into loud errors, never silent wrong answers.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import ArityError, BudgetExceededError, InfiniteColengthError
from .poly import Exponent, Poly, VarSet, print_order_key

DEFAULT_STEP_BUDGET = 200_000
DEFAULT_TERM_BUDGET = 50_000
STAIRCASE_CELL_CAP = 1_000_000

# Process-wide budget overrides, set once at CLI startup.
_budgets = {"steps": DEFAULT_STEP_BUDGET, "terms": DEFAULT_TERM_BUDGET}


def set_budgets(steps: int | None = None, terms: int | None = None):
    if steps is not None:
        _budgets["steps"] = steps
    if terms is not None:
        _budgets["terms"] = terms


def _resolve(steps: int | None, terms: int | None) -> tuple[int, int]:
    return (
        steps if steps is not None else _budgets["steps"],
        terms if terms is not None else _budgets["terms"],
    )


def local_order_key(e: Exponent) -> tuple:
    """Sort key for the local order; max(key) is the leading exponent."""
    return (-sum(e),) + tuple(-x for x in reversed(e))


def leading_exponent(terms: dict[Exponent, Fraction]) -> Exponent:
    return max(terms, key=local_order_key)


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _ecart(terms: dict[Exponent, Fraction], lead: Exponent) -> int:
    return max(sum(e) for e in terms) - sum(lead)


def _normalize(terms: dict[Exponent, Fraction]) -> dict[Exponent, Fraction]:
    """Divide by the rational content, leaving coprime integer coefficients."""
    num = 0
    den = 1
    for c in terms.values():
        num = gcd(num, c.numerator)
        den = den * c.denominator // gcd(den, c.denominator)
    content = Fraction(num, den)
    return {e: c / content for e, c in terms.items()}


@dataclass(frozen=True)
class Ideal:
    """A finitely generated ideal; zero generators are dropped on construction."""

    varset: VarSet
    generators: tuple[Poly, ...]

    def __post_init__(self):
        for g in self.generators:
            if g.varset != self.varset:
                raise ArityError("all generators must share the ideal's varset")
        object.__setattr__(
            self, "generators", tuple(g for g in self.generators if not g.is_zero())
        )
        if not self.generators:
            raise ValueError("ideal needs at least one nonzero generator")


def ideal(generators: list[Poly] | tuple[Poly, ...]) -> Ideal:
    gens = tuple(generators)
    if not gens:
        raise ValueError("ideal needs at least one generator")
    return Ideal(gens[0].varset, gens)


class LocalOrder:
    """The fixed anti-graded revlex comparison rule (stateless)."""

    @staticmethod
    def key(e: Exponent) -> tuple:
        return local_order_key(e)

    @staticmethod
    def greater(a: Exponent, b: Exponent) -> bool:
        return local_order_key(a) > local_order_key(b)


@dataclass(frozen=True)
class Staircase:
    """Minimal leading exponents of a standard basis, with the quotient count.

    ``colength`` is None exactly when the staircase misses a pure power of
    some variable (the quotient is then infinite-dimensional).
    """

    n: int
    exponents: tuple[Exponent, ...]
    cofinite: bool
    colength: int | None


@dataclass(frozen=True)
class StandardBasis:
    ideal: Ideal
    basis: tuple[Poly, ...]
    staircase: Staircase


class _Engine:
    """One standard-basis or normal-form computation; state dies with the call."""

    def __init__(self, step_budget: int, term_budget: int):
        self.steps_left = step_budget
        self.term_budget = term_budget

    def _spend(self):
        self.steps_left -= 1
        if self.steps_left < 0:
            raise BudgetExceededError("reduction step budget exceeded")

    def _check_terms(self, terms: dict[Exponent, Fraction]):
        if len(terms) > self.term_budget:
            raise BudgetExceededError(f"intermediate polynomial exceeds {self.term_budget} terms")

    def reduce_once(
        self,
        h: dict[Exponent, Fraction],
        h_lead: Exponent,
        g: dict[Exponent, Fraction],
        g_lead: Exponent,
    ) -> dict[Exponent, Fraction]:
        """Cancel the leading term of h against g (g_lead divides h_lead)."""
        self._spend()
        factor = h[h_lead] / g[g_lead]
        shift = tuple(a - b for a, b in zip(h_lead, g_lead))
        out = dict(h)
        for e, c in g.items():
            te = tuple(a + b for a, b in zip(e, shift))
            s = out.get(te, Fraction(0)) - factor * c
            if s == 0:
                out.pop(te, None)
            else:
                out[te] = s
        self._check_terms(out)
        return out

    def mora_nf(
        self,
        h: dict[Exponent, Fraction],
        reducers: list[tuple[Exponent, int, dict[Exponent, Fraction]]],
    ) -> dict[Exponent, Fraction]:
        """Mora weak normal form of h against the reducer list.

        Each reducer is (leading exponent, ecart, terms).  The list is
        copied so additions stay local to this division.
        """
        pool = list(reducers)
        while h:
            h_lead = leading_exponent(h)
            h_ecart = _ecart(h, h_lead)
            best = None
            for idx, (g_lead, g_ecart, g) in enumerate(pool):
                if _divides(g_lead, h_lead):
                    if best is None or g_ecart < best[1]:
                        best = (idx, g_ecart)
                        if g_ecart == 0:
                            break
            if best is None:
                return h
            idx, g_ecart = best
            g_lead, _, g = pool[idx]
            if g_ecart > h_ecart:
                pool.append((h_lead, h_ecart, dict(h)))
            h = self.reduce_once(h, h_lead, g, g_lead)
            if h:
                h = _normalize(h)
        return h


def _lcm_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def standard_basis(
    I: Ideal,
    step_budget: int | None = None,
    term_budget: int | None = None,
) -> StandardBasis:
    """Compute a minimal standard basis of I in the local ring at the origin."""
    engine = _Engine(*_resolve(step_budget, term_budget))
    basis: list[tuple[Exponent, int, dict[Exponent, Fraction]]] = []

    def admit(terms: dict[Exponent, Fraction]):
        terms = _normalize(terms)
        lead = leading_exponent(terms)
        basis.append((lead, _ecart(terms, lead), terms))

    for g in I.generators:
        admit(dict(g.terms))

    # Pair queue keyed by the local order on lcm of leading monomials
    # (largest first, i.e. lowest degree lcm first), then FIFO.
    counter = itertools.count()
    pairs: list[tuple[tuple, int, int, int]] = []

    def push_pairs(j: int):
        lead_j = basis[j][0]
        for i in range(j):
            lcm = _lcm_exp(basis[i][0], lead_j)
            heapq.heappush(pairs, (tuple(-v for v in local_order_key(lcm)), next(counter), i, j))

    for j in range(len(basis)):
        push_pairs(j)

    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        (lead_i, _, gi), (lead_j, _, gj) = basis[i], basis[j]
        lcm = _lcm_exp(lead_i, lead_j)
        si = tuple(a - b for a, b in zip(lcm, lead_i))
        sj = tuple(a - b for a, b in zip(lcm, lead_j))
        ci, cj = gi[lead_i], gj[lead_j]
        spoly: dict[Exponent, Fraction] = {}
        for e, c in gi.items():
            spoly[tuple(a + b for a, b in zip(e, si))] = c / ci
        for e, c in gj.items():
            te = tuple(a + b for a, b in zip(e, sj))
            s = spoly.get(te, Fraction(0)) - c / cj
            if s == 0:
                spoly.pop(te, None)
            else:
                spoly[te] = s
        if not spoly:
            continue
        remainder = engine.mora_nf(spoly, basis)
        if remainder:
            admit(remainder)
            push_pairs(len(basis) - 1)

    # Minimality: drop elements whose leading monomial is divisible by
    # another's; on equal leading monomials the earlier element survives.
    keep: list[int] = []
    for idx, (lead, _, _) in enumerate(basis):
        dominated = False
        for kdx, (klead, _, _) in enumerate(basis):
            if kdx == idx:
                continue
            if _divides(klead, lead) and (klead != lead or kdx < idx):
                dominated = True
                break
        if not dominated:
            keep.append(idx)

    kept = [basis[i] for i in keep]
    kept.sort(key=lambda item: local_order_key(item[0]), reverse=True)
    polys = tuple(Poly(I.varset, terms) for _, _, terms in kept)
    stair = staircase_from_exponents(tuple(lead for lead, _, _ in kept), I.varset.arity)
    return StandardBasis(ideal=I, basis=polys, staircase=stair)


def normal_form(
    g: Poly,
    sb: StandardBasis,
    step_budget: int | None = None,
    term_budget: int | None = None,
) -> Poly:
    """Mora weak normal form of g against the basis (zero iff g lies in the
    ideal extended to the local ring)."""
    if g.varset != sb.ideal.varset:
        raise ArityError("varset mismatch")
    if g.is_zero():
        return g
    engine = _Engine(*_resolve(step_budget, term_budget))
    reducers = []
    for b in sb.basis:
        terms = dict(b.terms)
        lead = leading_exponent(terms)
        reducers.append((lead, _ecart(terms, lead), terms))
    return Poly(g.varset, engine.mora_nf(dict(g.terms), reducers))


def ideal_contains(sb: StandardBasis, g: Poly) -> bool:
    return normal_form(g, sb).is_zero()


def staircase_from_exponents(exponents: tuple[Exponent, ...], n: int) -> Staircase:
    """Build the minimal staircase of a monomial ideal and count the quotient."""
    minimal: list[Exponent] = []
    for e in sorted(set(exponents), key=print_order_key):
        if not any(_divides(m, e) for m in minimal):
            minimal = [m for m in minimal if not _divides(e, m)]
            minimal.append(e)
    minimal.sort(key=print_order_key)

    bounds: list[int | None] = [None] * n
    for e in minimal:
        support = [i for i, x in enumerate(e) if x > 0]
        if not support:
            # The unit monomial generates everything.
            return Staircase(n=n, exponents=(e,), cofinite=True, colength=0)
        if len(support) == 1:
            i = support[0]
            if bounds[i] is None or e[i] < bounds[i]:
                bounds[i] = e[i]
    cofinite = all(b is not None for b in bounds)
    if not cofinite:
        return Staircase(n=n, exponents=tuple(minimal), cofinite=False, colength=None)

    cells = 1
    for b in bounds:
        cells *= b
    if cells > STAIRCASE_CELL_CAP:
        raise BudgetExceededError(f"staircase box has {cells} cells (cap {STAIRCASE_CELL_CAP})")
    count = 0
    for point in itertools.product(*(range(b) for b in bounds)):
        if not any(_divides(m, point) for m in minimal):
            count += 1
    return Staircase(n=n, exponents=tuple(minimal), cofinite=True, colength=count)


def quotient_basis_from_staircase(stair: Staircase) -> tuple[Exponent, ...]:
    if not stair.cofinite:
        raise InfiniteColengthError("quotient is infinite-dimensional")
    bounds = []
    for i in range(stair.n):
        pure = [e[i] for e in stair.exponents if all(x == 0 for j, x in enumerate(e) if j != i)]
        bounds.append(min(pure))
    points = [
        p
        for p in itertools.product(*(range(b) for b in bounds))
        if not any(_divides(m, p) for m in stair.exponents)
    ]
    points.sort(key=print_order_key)
    return tuple(points)


def colength(
    I: Ideal,
    step_budget: int | None = None,
    term_budget: int | None = None,
) -> int | None:
    """Dimension over Q of (local ring at the origin)/I; None means infinite."""
    return standard_basis(I, step_budget, term_budget).staircase.colength


def quotient_monomial_basis(
    I: Ideal,
    step_budget: int | None = None,
    term_budget: int | None = None,
) -> tuple[Exponent, ...]:
    """Monomials outside the staircase, in canonical print order."""
    sb = standard_basis(I, step_budget, term_budget)
    return quotient_basis_from_staircase(sb.staircase)
