"""Exact verification toolkit for exchange axioms of set functions.

The package checks mnat-concavity, m-concavity (valuated matroids), domain
connectivity, and local exchange for exact-valued set functions on small
ground sets; evaluates concave conjugates; and, when an axiom fails,
constructs an explicit pair of price vectors certifying that the conjugate
is not submodular.
"""

from .axioms import (
    CardinalityWitness,
    DisconnectWitness,
    ExchangeWitness,
    NotEquicardinalError,
    SubmodularityViolation,
    Witness,
    check_connected,
    check_equicardinal,
    check_local_exchange,
    check_m_concave,
    check_m_via_local,
    check_mnat_concave,
    check_submodular_pair,
    check_submodular_unit,
    falsify_submodularity,
    find_exchange_failures,
)
from .certificates import (
    CertificateParams,
    CertificateSearchExhaustedError,
    CertificateTarget,
    MatchingDual,
    NotALocalFailureError,
    SubmodularityCertificate,
    UniqueMatchingRequiredError,
    certify_not_mnat,
    disconnection_certificate,
    local_exchange_certificate,
    matching_dual,
)
from .core import (
    MAX_GROUND_SIZE,
    NEG_INF,
    ExtValue,
    LiftedSetFn,
    NegInfinityType,
    PriceVector,
    Rational,
    SetFn,
    conjugate,
    conjugate_maximizer,
    elements_of,
    is_finite,
    lift,
    lifted_conjugate,
    mask_of,
    tilt,
)
from .document import (
    DocumentError,
    document_digest,
    dump_setfn,
    format_rational,
    parse_rational,
    parse_setfn_document,
    setfn_to_document,
)
from .generators import (
    FAMILIES,
    FIXTURE_NAMES,
    InstanceSpec,
    build_instance,
    cardinality_concave,
    graphic_matroid,
    named_fixture,
    partition_matroid,
    perturb,
    uniform_matroid,
)
from .selftest import PropertyResult, run_selftest

__version__ = "0.1.0"

__all__ = [
    "CardinalityWitness",
    "CertificateParams",
    "CertificateSearchExhaustedError",
    "CertificateTarget",
    "DisconnectWitness",
    "DocumentError",
    "ExchangeWitness",
    "ExtValue",
    "FAMILIES",
    "FIXTURE_NAMES",
    "InstanceSpec",
    "LiftedSetFn",
    "MatchingDual",
    "MAX_GROUND_SIZE",
    "NEG_INF",
    "NegInfinityType",
    "NotALocalFailureError",
    "NotEquicardinalError",
    "PriceVector",
    "PropertyResult",
    "Rational",
    "SetFn",
    "SubmodularityCertificate",
    "SubmodularityViolation",
    "UniqueMatchingRequiredError",
    "Witness",
    "build_instance",
    "cardinality_concave",
    "certify_not_mnat",
    "check_connected",
    "check_equicardinal",
    "check_local_exchange",
    "check_m_concave",
    "check_m_via_local",
    "check_mnat_concave",
    "check_submodular_pair",
    "check_submodular_unit",
    "conjugate",
    "conjugate_maximizer",
    "disconnection_certificate",
    "document_digest",
    "dump_setfn",
    "elements_of",
    "falsify_submodularity",
    "find_exchange_failures",
    "format_rational",
    "graphic_matroid",
    "is_finite",
    "lift",
    "lifted_conjugate",
    "local_exchange_certificate",
    "mask_of",
    "matching_dual",
    "named_fixture",
    "parse_rational",
    "parse_setfn_document",
    "partition_matroid",
    "perturb",
    "run_selftest",
    "setfn_to_document",
    "tilt",
    "uniform_matroid",
]
