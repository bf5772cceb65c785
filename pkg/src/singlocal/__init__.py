"""Exact local invariants of isolated hypersurface singularities.

Library layers, bottom up: exact sparse polynomials (poly), local standard
bases (standard_basis), Newton polyhedra and the weight program (newton),
invariant calculators (invariants), sections and families (sections), and
the theorem-level verification harness (checks, corpus, harness) behind the
``singlocal`` CLI.
"""

__version__ = "0.1.0"

from .poly import (  # noqa: E402
    Poly,
    VarSet,
    WeightVector,
    make_varset,
    order_at_origin,
    parse_poly,
    partial_derivative,
    substitute,
    weighted_degree,
)
from .standard_basis import (  # noqa: E402
    Ideal,
    LocalOrder,
    Staircase,
    StandardBasis,
    colength,
    ideal,
    normal_form,
    quotient_monomial_basis,
    standard_basis,
)
from .newton import (  # noqa: E402
    NewtonPoly,
    ThetaVal,
    closure_contains,
    lct_monomial,
    multiplier_order,
    newton_polyhedron,
    theta_lp,
    theta_oracle,
)
from .invariants import (  # noqa: E402
    ExtRat,
    MinExp,
    Spectrum,
    find_qh_weights,
    hessian_rank,
    hilbert_samuel_multiplicity,
    jacobian_ideal,
    milnor_number,
    minimal_exponent,
    mixed_multiplicity_hyperplane,
    morse_ak_exponent,
    multiplicity,
    spectrum_qh,
    theta,
    ts_split,
    ts_spectrum,
)
from .sampling import Certificate, Sampler, derive_seed, stable_value  # noqa: E402
from .sections import (  # noqa: E402
    FamilySpec,
    Hyperplane,
    MuScan,
    cover_family,
    generic_section,
    hyperplane,
    loeser_family,
    mu_scan,
    parametric_family,
    restrict,
)
from .checks import (  # noqa: E402
    CheckResult,
    check_corollary_chain,
    check_lct_relation,
    check_milnor_chain,
    check_spectrum_family,
    check_teissier,
    check_upper_bound,
)
from .corpus import Corpus, CorpusEntry, load_corpus  # noqa: E402
from .harness import Report, canonical_report_json, report_json, report_table, run_corpus  # noqa: E402
