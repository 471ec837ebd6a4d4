"""Moment-determinacy and kriging diagnostics for smooth stationary kernels.

Three layers: exact moment sequences of the closed-form spectral families
(moments), Hankel-determinant variance ratios with their closed forms and
product formulas (hankel), and high-precision kriging with the
variance-scale membership diagnostic (gp).  The command line front end
lives in rkhs_probe.cli.
"""

__version__ = "1.0.0"

from .errors import (ConfigError, DegenerateError, DomainError, LengthError,
                     ParameterError, PrecisionError, SingularKernelError,
                     UnsupportedFamilyError)
from .gp import (Design, Kernel, KrigingFit, MembershipDiagnostic,
                 MembershipEntry, blue_discrete, confidence_bands,
                 equispaced_design, evaluate_test_function, kernel_eval,
                 kernel_matrix, krige, log_likelihood, matched_spectral_family,
                 membership_diagnostic, mle_sigma2, offset_gaussian,
                 offset_parabola, polynomial_function, reproducing_element)
from .hankel import (HankelPair, RecurrenceCoefficients, VarianceEntry,
                     VarianceReport, asymptotic_variance,
                     beta_canonical_moments, blue_variance_seq,
                     closed_form_variance, gaussian_recurrence,
                     hankel_from_canonical, hankel_from_recurrence,
                     hankel_pair, polyapprox_oracle, smallest_eigenvalue_diag)
from .moments import (DeterminacyReport, MomentSequence, SpectralFamily,
                      carleman_partial_sums, determinacy_indicators,
                      even_moments, kernel_taylor_moments, mix_atom,
                      shift_measure)
from .scalars import ExactScalar, format_rational, parse_rational

__all__ = [
    "__version__",
    "ConfigError", "DegenerateError", "DomainError", "LengthError",
    "ParameterError", "PrecisionError", "SingularKernelError",
    "UnsupportedFamilyError",
    "Design", "Kernel", "KrigingFit", "MembershipDiagnostic", "MembershipEntry",
    "blue_discrete", "confidence_bands", "equispaced_design",
    "evaluate_test_function", "kernel_eval", "kernel_matrix", "krige",
    "log_likelihood", "matched_spectral_family", "membership_diagnostic",
    "mle_sigma2", "offset_gaussian", "offset_parabola", "polynomial_function",
    "reproducing_element",
    "HankelPair", "RecurrenceCoefficients", "VarianceEntry", "VarianceReport",
    "asymptotic_variance", "beta_canonical_moments", "blue_variance_seq",
    "closed_form_variance", "gaussian_recurrence", "hankel_from_canonical",
    "hankel_from_recurrence", "hankel_pair", "polyapprox_oracle",
    "smallest_eigenvalue_diag",
    "DeterminacyReport", "MomentSequence", "SpectralFamily",
    "carleman_partial_sums", "determinacy_indicators", "even_moments",
    "kernel_taylor_moments", "mix_atom", "shift_measure",
    "ExactScalar", "format_rational", "parse_rational",
]
