"""Bifurcation certificates for rotation-symmetric elliptic systems on
geodesic balls in the round sphere.

Layers, bottom up: exact Euler-ring arithmetic over the circle group
(`euler`), weight decompositions of harmonic spaces (`so2rep`),
equivariant degrees (`degree`), Dirichlet spectra of the ball's
Laplace-Beltrami operator (`spectrum`, exact on the hemisphere and by
shooting elsewhere), bifurcation indices (`bifindex`), and
certificate-producing global analysis (`rabinowitz`).  The `capbif`
command wraps all of it.
"""

__version__ = "0.1.0"

from .euler import ONE, ZERO, EulerElement
from .so2rep import (
    HarmonicSpace,
    SO2Rep,
    direct_sum,
    harmonic_dim,
    so2_decompose,
    weight_multiplicity,
)
from .degree import deg_id, deg_neg_id
from .spectrum import (
    HEMISPHERE,
    EigenvalueRecord,
    RadialProblem,
    SignedCandidate,
    assemble_spectrum,
    hemisphere_spectrum,
    hemisphere_spectrum_up_to,
    mode_eigenvalues,
    radial_shoot,
    signed_candidate_set,
    tolerance_signature,
)
from .bifindex import (
    NEGATIVE,
    POSITIVE,
    ClosedFormRegimeError,
    IndexRequest,
    closed_form_estimate,
    cone_predicates,
    index_closed_form,
    index_product,
    index_report,
)
from .rabinowitz import (
    Certificate,
    SystemConfig,
    alternative_sum,
    bounded_necessary,
    certify_alternative,
    certify_unbounded,
    recheck_certificate,
    symmetry_breaking,
)

__all__ = [
    "__version__",
    "ONE",
    "ZERO",
    "EulerElement",
    "HarmonicSpace",
    "SO2Rep",
    "direct_sum",
    "harmonic_dim",
    "so2_decompose",
    "weight_multiplicity",
    "deg_id",
    "deg_neg_id",
    "HEMISPHERE",
    "EigenvalueRecord",
    "RadialProblem",
    "SignedCandidate",
    "assemble_spectrum",
    "hemisphere_spectrum",
    "hemisphere_spectrum_up_to",
    "mode_eigenvalues",
    "radial_shoot",
    "signed_candidate_set",
    "tolerance_signature",
    "NEGATIVE",
    "POSITIVE",
    "ClosedFormRegimeError",
    "IndexRequest",
    "closed_form_estimate",
    "cone_predicates",
    "index_closed_form",
    "index_product",
    "index_report",
    "Certificate",
    "SystemConfig",
    "alternative_sum",
    "bounded_necessary",
    "certify_alternative",
    "certify_unbounded",
    "recheck_certificate",
    "symmetry_breaking",
]
