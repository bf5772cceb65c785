"""Newton polyhedra of monomial sets and the exact optimization on them.

The Newton polyhedron of a set of exponents is their convex hull plus the
positive orthant.  For a monomial ideal its lattice points describe the
integral closure, so membership tests double as integral-closure tests and
scaling the polyhedron models powers of the ideal.

Everything is exact: facets are enumerated from n-subsets of candidate
incidences (input points and axis recession directions), and the max-min
program for the jacobian-to-maximal-ideal ratio is solved by enumerating
basic solutions of small linear programs.  No floating point, no external
solver; dimension is capped at 4 which keeps the subset counts tiny.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import ArityError, NotMPrimaryError
from .poly import Exponent

MAX_DIM = 4


@dataclass(frozen=True)
class NewtonPoly:
    """H- and V-description of conv(points) + R^n_{>=0}.

    Facets are pairs (w, c) with w componentwise nonnegative, meaning the
    halfspace <w, a> >= c; the region is their intersection within the
    nonnegative orthant.
    """

    n: int
    vertices: tuple[tuple[Fraction, ...], ...]
    facets: tuple[tuple[tuple[Fraction, ...], Fraction], ...]


@dataclass(frozen=True)
class ThetaVal:
    """Value of the max-min weight program, with its exactness pedigree.

    status is "exact_monomial" when monomial data determines the invariant
    and "newton_lower_bound" when it only bounds it from below.  The
    witness attains the optimum: min_i w_i = 1 and min over vertices of
    <w, v> equals the value.
    """

    value: Fraction
    status: str
    witness: tuple[Fraction, ...]


def _solve_square(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve a square rational system; None if singular."""
    n = len(rows)
    a = [row[:] + [rhs[i]] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        pc = a[col][col]
        a[col] = [x / pc for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def _kernel_vector(rows: list[list[Fraction]]) -> list[Fraction] | None:
    """A nonzero kernel vector of an m x k matrix if the kernel is 1-dim."""
    k = len(rows[0])
    a = [row[:] for row in rows]
    pivots: list[int] = []
    r = 0
    for col in range(k):
        pivot = next((i for i in range(r, len(a)) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        pc = a[r][col]
        a[r] = [x / pc for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(k) if c not in pivots]
    if len(free) != 1:
        return None
    fc = free[0]
    v = [Fraction(0)] * k
    v[fc] = Fraction(1)
    for row_idx, col in enumerate(pivots):
        v[col] = -a[row_idx][fc]
    return v


def _rank(rows: list[list[Fraction]]) -> int:
    a = [row[:] for row in rows]
    rank = 0
    cols = len(a[0]) if a else 0
    for col in range(cols):
        pivot = next((i for i in range(rank, len(a)) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        pc = a[rank][col]
        a[rank] = [x / pc for x in a[rank]]
        for i in range(len(a)):
            if i != rank and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def _primitive(w: list[Fraction], c: Fraction) -> tuple[tuple[int, ...], int]:
    den = 1
    for x in list(w) + [c]:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in w] + [int(c * den)]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g:
        ints = [v // g for v in ints]
    return tuple(ints[:-1]), ints[-1]


def newton_polyhedron(points: set[Exponent] | frozenset[Exponent]) -> NewtonPoly:
    """Exact facet and vertex description of conv(points) + R^n_{>=0}."""
    pts = sorted(points)
    if not pts:
        raise ValueError("need at least one point")
    n = len(pts[0])
    if n > MAX_DIM:
        raise ArityError(f"dimension {n} exceeds the cap {MAX_DIM}")
    if any(len(p) != n for p in pts):
        raise ArityError("points have mixed dimensions")
    if any(x < 0 for p in pts for x in p):
        raise ValueError("points must be componentwise nonnegative")

    frac_pts = [tuple(Fraction(x) for x in p) for p in pts]

    # Incidence rows in R^{n+1}: a point p gives [p | -1] (from <w,p> = c),
    # the recession direction e_i gives [e_i | 0] (from w_i = 0).
    rows: list[tuple[list[Fraction], str]] = []
    for p in frac_pts:
        rows.append(([*p, Fraction(-1)], "point"))
    for i in range(n):
        e = [Fraction(0)] * (n + 1)
        e[i] = Fraction(1)
        rows.append((e, "axis"))

    seen: set[tuple[tuple[int, ...], int]] = set()
    facets: list[tuple[tuple[Fraction, ...], Fraction]] = []
    for subset in itertools.combinations(range(len(rows)), n):
        matrix = [rows[i][0] for i in subset]
        wc = _kernel_vector(matrix)
        if wc is None:
            continue
        w, c = wc[:n], wc[n]
        if all(x == 0 for x in w):
            continue
        # Orient so every generator point satisfies <w, p> >= c.
        sign = 0
        ok = True
        for p in frac_pts:
            s = sum(wi * pi for wi, pi in zip(w, p)) - c
            if s > 0:
                if sign < 0:
                    ok = False
                    break
                sign = 1
            elif s < 0:
                if sign > 0:
                    ok = False
                    break
                sign = -1
        if not ok:
            continue
        if sign < 0:
            w = [-x for x in w]
            c = -c
        if any(x < 0 for x in w):
            continue
        # Facet test: tight incidences must have affine rank n.
        tight_rows = [
            [*p, Fraction(1)]
            for p in frac_pts
            if sum(wi * pi for wi, pi in zip(w, p)) == c
        ]
        for i in range(n):
            if w[i] == 0:
                e = [Fraction(0)] * (n + 1)
                e[i] = Fraction(1)
                tight_rows.append(e)
        if len(tight_rows) < n or _rank(tight_rows) < n:
            continue
        key = _primitive(w, c)
        if key not in seen:
            seen.add(key)
            facets.append((tuple(Fraction(v) for v in key[0]), Fraction(key[1])))

    facets.sort(key=lambda fc: (fc[0], fc[1]))

    vertices = []
    for p in frac_pts:
        active = [list(w) for w, c in facets if sum(wi * pi for wi, pi in zip(w, p)) == c]
        if active and _rank(active) == n:
            vertices.append(p)
    return NewtonPoly(n=n, vertices=tuple(vertices), facets=tuple(facets))


def closure_contains(np_: NewtonPoly, point: tuple[Fraction | int, ...]) -> bool:
    """Membership of a rational point in the polyhedron (integral closure test)."""
    a = tuple(Fraction(x) for x in point)
    if len(a) != np_.n:
        raise ArityError("point dimension mismatch")
    if any(x < 0 for x in a):
        return False
    return all(sum(wi * ai for wi, ai in zip(w, a)) >= c for w, c in np_.facets)


def scale(np_: NewtonPoly, k: int) -> NewtonPoly:
    """The polyhedron of the k-th power: vertices and facet constants scale by k."""
    if k < 1:
        raise ValueError("scale factor must be >= 1")
    return NewtonPoly(
        n=np_.n,
        vertices=tuple(tuple(k * x for x in v) for v in np_.vertices),
        facets=tuple((w, k * c) for w, c in np_.facets),
    )


def meets_axis(np_: NewtonPoly, i: int) -> bool:
    """Whether the polyhedron contains a point on the i-th coordinate axis."""
    return all(c <= 0 for w, c in np_.facets if w[i] == 0)


def is_m_primary(np_: NewtonPoly) -> bool:
    return all(meets_axis(np_, i) for i in range(np_.n))


def theta_lp(np_: NewtonPoly) -> ThetaVal:
    """max over weights w with min_i w_i = 1 of min over vertices of <w, v>.

    Solved as n linear programs (one per pinned coordinate w_i = 1) by
    enumerating basic solutions; the feasible sets are pointed and the
    objective is bounded precisely because the polyhedron meets every axis.
    """
    n = np_.n
    if not is_m_primary(np_):
        raise NotMPrimaryError("theta undefined: ideal not m-primary")
    best: tuple[Fraction, tuple[Fraction, ...]] | None = None
    for pinned in range(n):
        free = [j for j in range(n) if j != pinned]
        # Variables: (w_j for j in free, t); constraints as rows >= rhs.
        rows: list[list[Fraction]] = []
        rhs: list[Fraction] = []
        for idx, j in enumerate(free):
            row = [Fraction(0)] * n
            row[idx] = Fraction(1)
            rows.append(row)
            rhs.append(Fraction(1))
        for v in np_.vertices:
            row = [Fraction(0)] * n
            for idx, j in enumerate(free):
                row[idx] = v[j]
            row[n - 1] = Fraction(-1)
            rows.append(row)
            rhs.append(-v[pinned])
        m = len(rows)
        for subset in itertools.combinations(range(m), n):
            sol = _solve_square([rows[i] for i in subset], [rhs[i] for i in subset])
            if sol is None:
                continue
            feasible = all(
                sum(r * s for r, s in zip(rows[i], sol)) >= rhs[i] for i in range(m)
            )
            if not feasible:
                continue
            t = sol[n - 1]
            w = [Fraction(0)] * n
            w[pinned] = Fraction(1)
            for idx, j in enumerate(free):
                w[j] = sol[idx]
            if best is None or t > best[0]:
                best = (t, tuple(w))
    if best is None:
        raise NotMPrimaryError("theta program has no basic feasible solution")
    value, witness = best
    # Witness feasibility recheck, exact.
    assert min(witness) == 1
    attained = min(sum(wi * vi for wi, vi in zip(witness, v)) for v in np_.vertices)
    assert attained == value
    return ThetaVal(value=value, status="exact_monomial", witness=witness)


def theta_oracle(monomial_exponents: list[Exponent], qmax: int) -> Fraction:
    """Brute-force theta: min of p/q over q <= qmax with m^p inside the
    closure of the q-th power, each inclusion tested point by point.

    Independent of theta_lp: no optimization, only scaled membership tests
    over whole degree slices {|a| = p}.
    """
    if qmax < 1:
        raise ValueError("qmax must be >= 1")
    np_ = newton_polyhedron(set(monomial_exponents))
    if not is_m_primary(np_):
        raise NotMPrimaryError("theta undefined: ideal not m-primary")
    n = np_.n

    def slice_inside(p: int, q: int) -> bool:
        scaled = [(w, q * c) for w, c in np_.facets]
        # Pure-axis points first: the cheapest witnesses of failure.
        for i in range(n):
            point = tuple(p if j == i else 0 for j in range(n))
            if any(sum(wi * ai for wi, ai in zip(w, point)) < c for w, c in scaled):
                return False
        for point in _degree_slice(p, n):
            if any(sum(wi * ai for wi, ai in zip(w, point)) < c for w, c in scaled):
                return False
        return True

    best: Fraction | None = None
    p = 1
    for q in range(1, qmax + 1):
        # Minimal p grows with q; resume from the previous minimum.
        while not slice_inside(p, q):
            p += 1
        ratio = Fraction(p, q)
        if best is None or ratio < best:
            best = ratio
    return best


def _degree_slice(p: int, n: int):
    if n == 1:
        yield (p,)
        return
    for head in range(p + 1):
        for tail in _degree_slice(p - head, n - 1):
            yield (head,) + tail


def lct_monomial(np_: NewtonPoly) -> Fraction:
    """Reciprocal of the diagonal entry time: 1/t0 where t0 (1,...,1) lies on
    the boundary.  Returned raw; any min(.,1) cap is the caller's business."""
    t0 = Fraction(0)
    for w, c in np_.facets:
        s = sum(w)
        if s > 0 and c > 0:
            t0 = max(t0, Fraction(c, 1) / s)
    if t0 == 0:
        raise ValueError("diagonal never leaves the polyhedron (0 is a lattice point)")
    return 1 / t0


def multiplier_order(m: int, beta: Fraction) -> int:
    """floor(m * (beta - eps)) for infinitesimal eps: floor(m beta) off the
    integers, m beta - 1 on them."""
    if m < 1:
        raise ValueError("m must be >= 1")
    beta = Fraction(beta)
    if not 0 < beta <= 1:
        raise ValueError("beta must lie in (0, 1]")
    prod = m * beta
    if prod.denominator == 1:
        return int(prod) - 1
    return int(prod.numerator // prod.denominator)
