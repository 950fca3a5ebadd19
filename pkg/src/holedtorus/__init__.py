"""Computations on the moduli space of marked once-holed tori.

The package covers three coordinate charts (slit tori, hyperbolic
Fenchel-Nielsen data, extremal-length triples), hyperbolic length
spectra through explicit Fuchsian representations, finite-element
extremal lengths on slit tori, and the dominance-region machinery
built on top: truncated membership verdicts, critical lengths with
their admissible strips, and boundary corner certificates.
"""

__version__ = "0.1.0"

from .charts import (
    DescriptorError,
    EigenSplit,
    FNChartPoint,
    LambdaTriple,
    SlitChartPoint,
    Strip,
    SurfaceDescriptor,
    descriptor_from_json,
    descriptor_to_json,
    eigen_split,
    fn_descriptor,
    lambda_descriptor,
    lambda_of_punctured_torus,
    q_form,
    region_height,
    region_membership,
    slit_descriptor,
    strip_of,
    torus_descriptor,
    twice_punctured_descriptor,
    twice_punctured_slit_inclusion,
    validate_descriptor,
)
from .extremal import (
    Annulus,
    ModulusEstimate,
    TripleEstimate,
    annulus_from_core_length,
    annulus_quantities,
    lambda_triple_slit,
    refine_and_extrapolate,
    slit_torus_extremal_length,
)
from .fuchsian import (
    EllipticTraceError,
    Representation,
    SpectrumEntry,
    canonical_class,
    enumerate_classes,
    fn_to_rep,
    geodesic_length,
    inverse_word,
    length_spectrum,
    reduce_word,
    twist_substitute,
    word_trace,
)
from .regions import (
    ChainReport,
    CornerReport,
    CriticalLengths,
    CriticalValue,
    ResourceLimitError,
    ScanGrid,
    SigmaVerdict,
    StripReport,
    UnsupportedSurfaceError,
    corner_certificate,
    critical_lengths,
    handle_cover,
    lambda_chain_check,
    scan_sigma_slice,
    sigma_membership,
    strip_report,
)

__all__ = [
    "Annulus",
    "ChainReport",
    "CornerReport",
    "CriticalLengths",
    "CriticalValue",
    "DescriptorError",
    "EigenSplit",
    "EllipticTraceError",
    "FNChartPoint",
    "LambdaTriple",
    "ModulusEstimate",
    "Representation",
    "ResourceLimitError",
    "ScanGrid",
    "SigmaVerdict",
    "SlitChartPoint",
    "SpectrumEntry",
    "Strip",
    "StripReport",
    "SurfaceDescriptor",
    "TripleEstimate",
    "UnsupportedSurfaceError",
    "annulus_from_core_length",
    "annulus_quantities",
    "canonical_class",
    "corner_certificate",
    "critical_lengths",
    "descriptor_from_json",
    "descriptor_to_json",
    "eigen_split",
    "enumerate_classes",
    "fn_descriptor",
    "fn_to_rep",
    "geodesic_length",
    "handle_cover",
    "inverse_word",
    "lambda_chain_check",
    "lambda_descriptor",
    "lambda_of_punctured_torus",
    "lambda_triple_slit",
    "length_spectrum",
    "q_form",
    "reduce_word",
    "refine_and_extrapolate",
    "region_height",
    "region_membership",
    "scan_sigma_slice",
    "sigma_membership",
    "slit_descriptor",
    "slit_torus_extremal_length",
    "strip_of",
    "strip_report",
    "torus_descriptor",
    "twice_punctured_descriptor",
    "twice_punctured_slit_inclusion",
    "twist_substitute",
    "validate_descriptor",
    "word_trace",
]
