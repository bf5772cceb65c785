"""Theorem-level checks with three-valued verdicts.

Every check reports PASS, FAIL, or INCONCLUSIVE together with a witness
dictionary of all computed quantities, seeds, and exactness flags.  The
gating rule is uniform: FAIL is only ever issued when every quantity in the
violated relation is exact; lower bounds and unstable generic sampling can
weaken a verdict to INCONCLUSIVE but can never manufacture a FAIL.  A
lower-bound theta makes the tested inequality stronger, so a PASS with an
inexact theta is a PASS a fortiori and is reported as such.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import poly as P
from .errors import (
    DegenerateSampleError,
    SamplingInconclusiveError,
    SinglocalError,
)
from .invariants import (
    ExtRat,
    MinExp,
    Spectrum,
    hilbert_samuel_multiplicity,
    jacobian_ideal,
    milnor_number,
    minimal_exponent,
    mixed_multiplicity_hyperplane,
    multiplicity,
    spectrum_qh,
    theta,
)
from .errors import NotQuasiHomogeneousError
from .newton import lct_monomial, newton_polyhedron
from .poly import Poly
from .sampling import Sampler, stable_value
from .sections import (
    FamilySpec,
    Hyperplane,
    generic_section,
    loeser_family,
    restrict,
    sample_hyperplane,
)
from .standard_basis import Ideal, colength

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"
ERROR = "ERROR"


@dataclass
class CheckResult:
    check: str
    verdict: str
    witness: dict = field(default_factory=dict)
    message: str = ""


def _theta_witness(tv) -> dict:
    return {
        "value": tv.value,
        "status": tv.status,
        "exact": tv.status == "exact_monomial",
        "witness_weights": tv.witness,
    }


def _minexp_witness(me: MinExp) -> dict:
    return {"value": me.value.value if not me.value.is_infinite else "inf",
            "method": me.method, "exact": me.exact}


def check_teissier(
    f: Poly, sampler: Sampler, hyperplane: Hyperplane | None = None
) -> CheckResult:
    """alpha(f) >= alpha(f|_H) + 1/(theta(f) + 1) for a smooth H through 0."""
    mu = milnor_number(f)
    if mu is None or mu == 0:
        raise SinglocalError("isolated singularity required")
    alpha_f = minimal_exponent(f)
    theta_f = theta(f)
    witness: dict = {
        "milnor": mu,
        "alpha_f": _minexp_witness(alpha_f),
        "theta": _theta_witness(theta_f),
    }
    try:
        if hyperplane is not None:
            section = restrict(f, hyperplane)
            alpha_h = minimal_exponent(section)
            witness["hyperplane"] = hyperplane.coefficients
        else:
            sv = generic_section(f, "exponent", sampler.split("teissier"))
            alpha_h = sv.value
            witness["certificate"] = sv.certificate
    except SamplingInconclusiveError as exc:
        return CheckResult("teissier", INCONCLUSIVE, witness, str(exc))
    witness["alpha_section"] = _minexp_witness(alpha_h)

    bound = alpha_h.value + ExtRat.of(Fraction(1, theta_f.value + 1))
    holds = alpha_f.value >= bound
    witness["rhs"] = bound.value if not bound.is_infinite else "inf"
    witness["equality"] = (
        not alpha_f.value.is_infinite and not bound.is_infinite and alpha_f.value == bound
    )
    exponents_exact = alpha_f.exact and alpha_h.exact
    theta_exact = theta_f.status == "exact_monomial"
    message = (
        f"alpha={alpha_f.value} vs section {alpha_h.value} + 1/({theta_f.value}+1)"
    )
    if not exponents_exact:
        return CheckResult("teissier", INCONCLUSIVE, witness, f"inexact exponent; {message}")
    if holds:
        note = "" if theta_exact else " (a fortiori: theta is a lower bound)"
        return CheckResult("teissier", PASS, witness, message + note)
    if theta_exact:
        return CheckResult("teissier", FAIL, witness, message)
    return CheckResult(
        "teissier", INCONCLUSIVE, witness, f"strengthened bound fails with inexact theta; {message}"
    )


def check_corollary_chain(f: Poly, sampler: Sampler) -> CheckResult:
    """alpha(f) >= sum of 1/(theta_i + 1) along iterated generic sections."""
    mu = milnor_number(f)
    if mu is None or mu == 0:
        raise SinglocalError("isolated singularity required")
    if f.n < 2:
        raise SinglocalError("chain needs at least two variables")
    alpha_f = minimal_exponent(f)

    def compute(s: Sampler):
        stream = s.stream()
        g = f
        thetas = []
        while True:
            try:
                tv = theta(g)
            except SinglocalError as exc:
                raise DegenerateSampleError(f"section lost isolatedness: {exc}") from None
            thetas.append((tv.value, tv.status))
            if g.n == 1:
                return tuple(thetas)
            for _ in range(8):
                try:
                    g = restrict(g, sample_hyperplane(stream, g.n, s.height))
                    break
                except DegenerateSampleError:
                    continue
            else:
                raise DegenerateSampleError("repeated vanishing restriction")

    witness: dict = {"alpha_f": _minexp_witness(alpha_f)}
    try:
        thetas, cert = stable_value(compute, sampler.split("chain"), label="theta chain")
    except SamplingInconclusiveError as exc:
        return CheckResult("corollary_chain", INCONCLUSIVE, witness, str(exc))
    witness["certificate"] = cert
    witness["thetas"] = [{"value": v, "status": s} for v, s in thetas]
    total = sum((Fraction(1, v + 1) for v, _ in thetas), Fraction(0))
    witness["sum"] = total
    witness["equality"] = not alpha_f.value.is_infinite and alpha_f.value.value == total
    all_exact = all(s == "exact_monomial" for _, s in thetas)
    holds = alpha_f.value >= ExtRat.of(total)
    message = f"alpha={alpha_f.value} vs chain sum {total} over {len(thetas)} levels"
    if not alpha_f.exact:
        return CheckResult("corollary_chain", INCONCLUSIVE, witness, f"inexact exponent; {message}")
    if holds:
        note = "" if all_exact else " (a fortiori: some theta is a lower bound)"
        return CheckResult("corollary_chain", PASS, witness, message + note)
    if all_exact:
        return CheckResult("corollary_chain", FAIL, witness, message)
    return CheckResult("corollary_chain", INCONCLUSIVE, witness, message)


def check_upper_bound(f: Poly, sampler: Sampler) -> CheckResult:
    """alpha(f|_H) >= alpha(f) - 1/mult(f) for a generic H."""
    if f.is_zero() or f.constant_term() != 0:
        raise SinglocalError("need a nonzero polynomial vanishing at the origin")
    if f.n < 2:
        raise SinglocalError("sections need at least two variables")
    d = multiplicity(f)
    alpha_f = minimal_exponent(f)
    witness: dict = {"mult": d, "alpha_f": _minexp_witness(alpha_f)}
    try:
        sv = generic_section(f, "exponent", sampler.split("upper"))
    except SamplingInconclusiveError as exc:
        return CheckResult("upper_bound", INCONCLUSIVE, witness, str(exc))
    alpha_h: MinExp = sv.value
    witness["certificate"] = sv.certificate
    witness["alpha_section"] = _minexp_witness(alpha_h)
    rhs = alpha_f.value - Fraction(1, d)
    witness["rhs"] = rhs.value if not rhs.is_infinite else "inf"
    holds = alpha_h.value >= rhs
    message = f"section alpha={alpha_h.value} vs {alpha_f.value} - 1/{d}"
    if not (alpha_f.exact and alpha_h.exact):
        return CheckResult("upper_bound", INCONCLUSIVE, witness, f"inexact exponent; {message}")
    if holds:
        return CheckResult("upper_bound", PASS, witness, message)
    return CheckResult("upper_bound", FAIL, witness, message)


def check_milnor_chain(f: Poly, sampler: Sampler) -> CheckResult:
    """The multiplicity chain: five exact integer identities tying the Milnor
    number, Hilbert-Samuel and mixed multiplicities, and the degeneration
    family mu to the generic section mu."""
    mu_f = milnor_number(f)
    if mu_f is None or mu_f == 0:
        raise SinglocalError("isolated singularity required")
    if f.n < 2:
        raise SinglocalError("chain needs at least two variables")
    d = multiplicity(f)
    family = loeser_family(f, d)
    t_samples = [Fraction(1, 3), Fraction(1, 2)]
    J = jacobian_ideal(f)
    n = f.n

    def compute(s: Sampler):
        stream = s.stream()
        for _ in range(8):
            try:
                h = sample_hyperplane(stream, n, s.height)
                g = restrict(f, h)
                break
            except DegenerateSampleError:
                continue
        else:
            raise DegenerateSampleError("repeated vanishing restriction")
        mu_g = milnor_number(g)
        if mu_g is None:
            raise DegenerateSampleError("generic section not isolated")

        def combos(ideal_: Ideal, count: int) -> list[Poly]:
            out = []
            for _ in range(count):
                acc = P.zero(ideal_.varset)
                for gen in ideal_.generators:
                    acc = P.add(acc, P.scale(gen, stream.nonzero_int(s.height)))
                out.append(acc)
            return out

        e_jf = colength(Ideal(f.varset, tuple(combos(J, n))))
        restricted = Ideal(g.varset, tuple(restrict(gen, h) for gen in J.generators))
        e_res = colength(Ideal(g.varset, tuple(combos(restricted, n - 1))))
        linear = P.zero(f.varset)
        for i in range(n):
            linear = P.add(linear, P.scale(P.variable(f.varset, i), stream.nonzero_int(s.height)))
        e_mix = colength(Ideal(f.varset, tuple(combos(J, n - 1) + [linear])))
        if e_jf is None or e_res is None or e_mix is None:
            raise DegenerateSampleError("sampled reduction not m-primary")

        mu_t = []
        for t in t_samples:
            member = family.instantiate(t)
            value = milnor_number(member)
            if value is None:
                raise DegenerateSampleError(f"family member at t={t} not isolated")
            mu_t.append(value)

        # Special member in generic coordinates: the section with a pure
        # power of a fresh variable added back.
        fresh = f.varset.names[h.pivot]
        wide = g.varset.extend([fresh])
        embedded = {e + (0,): c for e, c in g.terms.items()}
        exp = (0,) * g.n + (d,)
        embedded[exp] = embedded.get(exp, Fraction(0)) + 1
        mu_h0 = milnor_number(Poly(wide, embedded))
        if mu_h0 is None:
            raise DegenerateSampleError("special member not isolated")
        return (mu_g, e_jf, e_res, e_mix, tuple(mu_t), mu_h0)

    witness: dict = {"milnor": mu_f, "mult": d, "t_samples": t_samples}
    try:
        values, cert = stable_value(compute, sampler.split("milnor-chain"), label="milnor chain")
    except SamplingInconclusiveError as exc:
        return CheckResult("milnor_chain", INCONCLUSIVE, witness, str(exc))
    mu_g, e_jf, e_res, e_mix, mu_t, mu_h0 = values
    expected = (d - 1) * mu_g
    equalities = {
        "e_jacobian_eq_milnor": e_jf == mu_f,
        "restricted_multiplicity_eq_section_milnor": e_res == mu_g,
        "mixed_multiplicity_eq_section_milnor": e_mix == mu_g,
        "family_generic_mu_eq_pred": all(v == expected for v in mu_t),
        "family_special_mu_eq_pred": mu_h0 == expected,
    }
    witness.update(
        {
            "certificate": cert,
            "mu_section": mu_g,
            "e_jacobian": e_jf,
            "e_restricted": e_res,
            "e_mixed": e_mix,
            "mu_family": list(mu_t),
            "mu_special": mu_h0,
            "predicted": expected,
            "equalities": equalities,
        }
    )
    if all(equalities.values()):
        return CheckResult(
            "milnor_chain", PASS, witness, f"all five identities hold (predicted {expected})"
        )
    failed = [k for k, ok in equalities.items() if not ok]
    return CheckResult("milnor_chain", FAIL, witness, f"failed: {', '.join(failed)}")


def check_lct_relation(f: Poly, nondegenerate: bool) -> CheckResult:
    """min(alpha, 1) equals the capped Newton-diagonal threshold, on entries
    certified Newton-nondegenerate."""
    alpha_f = minimal_exponent(f)
    np_ = newton_polyhedron(f.support())
    diag = min(Fraction(1), lct_monomial(np_))
    witness = {"alpha_f": _minexp_witness(alpha_f), "newton_diagonal": diag}
    if not nondegenerate:
        return CheckResult(
            "lct_relation", INCONCLUSIVE, witness, "entry not flagged nondegenerate"
        )
    if not alpha_f.exact:
        return CheckResult("lct_relation", INCONCLUSIVE, witness, "inexact exponent")
    lhs = Fraction(1) if alpha_f.value.is_infinite else min(alpha_f.value.value, Fraction(1))
    witness["lct"] = lhs
    if lhs == diag:
        return CheckResult("lct_relation", PASS, witness, f"lct = {lhs}")
    return CheckResult("lct_relation", FAIL, witness, f"lct {lhs} != diagonal {diag}")


def check_spectrum_family(family: FamilySpec, samples: list[Fraction]) -> CheckResult:
    """Milnor number and full spectrum are constant across the sampled family."""
    rows = []
    witness: dict = {"samples": samples}
    for t in samples:
        member = family.instantiate(t)
        try:
            spec = spectrum_qh(member)
        except NotQuasiHomogeneousError:
            witness["offending_sample"] = t
            return CheckResult(
                "spectrum_family", INCONCLUSIVE, witness, f"sample t={t} not quasi-homogeneous"
            )
        rows.append((t, spec))
    witness["mu"] = [spec.total_multiplicity() for _, spec in rows]
    witness["spectra"] = [
        {"t": t, "entries": [[v, m] for v, m in spec.entries]} for t, spec in rows
    ]
    first = rows[0][1]
    constant = all(
        spec.entries == first.entries and spec.total_multiplicity() == first.total_multiplicity()
        for _, spec in rows
    )
    if constant:
        return CheckResult(
            "spectrum_family", PASS, witness,
            f"mu={first.total_multiplicity()} and spectrum constant over {len(rows)} samples",
        )
    return CheckResult("spectrum_family", FAIL, witness, "spectrum varies across samples")


def check_expectations(f: Poly, expect: dict, sampler: Sampler) -> CheckResult:
    """Golden values from the corpus entry, compared exactly."""
    witness: dict = {}
    mismatches = []
    inexact = []
    for key, expected in expect.items():
        if key == "mult":
            value = multiplicity(f)
            actual, exact = ("inf" if value is None else value), True
        elif key == "milnor":
            value = milnor_number(f)
            actual, exact = ("inf" if value is None else value), True
        elif key == "theta":
            tv = theta(f)
            actual, exact = tv.value, tv.status == "exact_monomial"
        elif key == "exponent":
            me = minimal_exponent(f)
            actual, exact = (
                "inf" if me.value.is_infinite else me.value.value,
                me.exact,
            )
        elif key == "lct":
            actual = min(Fraction(1), lct_monomial(newton_polyhedron(f.support())))
            exact = True
        elif key == "spectrum":
            spec = spectrum_qh(f)
            actual, exact = spec.values(), True
        elif key == "e_jacobian":
            value, _ = hilbert_samuel_multiplicity(jacobian_ideal(f), sampler.split("expect-e"))
            actual, exact = value, True
        elif key == "mixed":
            value, _ = mixed_multiplicity_hyperplane(jacobian_ideal(f), sampler.split("expect-mix"))
            actual, exact = value, True
        else:
            raise SinglocalError(f"unknown expectation {key!r}")
        witness[key] = {"expected": expected, "actual": actual, "exact": exact}
        if actual != expected:
            (inexact if not exact else mismatches).append(key)
    if mismatches:
        return CheckResult("expect", FAIL, witness, f"mismatch: {', '.join(mismatches)}")
    if inexact:
        return CheckResult(
            "expect", INCONCLUSIVE, witness, f"inexact and unequal: {', '.join(inexact)}"
        )
    return CheckResult("expect", PASS, witness, f"{len(expect)} expectation(s) hold")
