"""Numerics for grand Lebesgue norms on finite measure spaces.

The package computes grand norms sup_p |f|_p / psi(p), the adjacent-function
bound and a hill-climbing oracle for the associate norm, set-function norms,
Young conjugates of p ln psi(p), the exponential Orlicz companion with its
Luxemburg norm, and moment-generating-function ball norms — everything
checkable by brute force on spaces with finitely many atoms.
"""
from glsnum.bphi import (MembershipReport, PhiFunction, RandomVariableSample,
                         bphi_norm, discretized_normal, log_mgf,
                         membership_check, mgf, phi_from_descriptor,
                         power_phi, psi_from_phi, quadratic_phi, rademacher,
                         two_point)
from glsnum.convex import (ConjugatePoint, ConjugateResult, GrowthReport,
                           RealFunction1D, check_growth_condition,
                           check_sv_condition, conjugate, exponent_V,
                           growth_report_for_psi, h_of, young_fenchel,
                           young_fenchel_point, young_fenchel_table)
from glsnum.duality import (AssociateBoundResult, DualBoundReport,
                            RepresentationReport, SetFunction, StepFunction,
                            associate_bound, associate_norm_oracle,
                            setfunction_norm, step_integral,
                            theorem_bound_check, verify_representation)
from glsnum.glnorm import (FamilyUnitNormReport, GlsNormResult,
                           family_unit_norm_check, gls_norm)
from glsnum.measure import (DiscreteMeasureSpace, MeasurableFunction, ess_sup,
                            integrate, load_csv, load_json, lp_norm, lp_norms,
                            make_space, probability_space,
                            uniform_probability_space)
from glsnum.orlicz import (BatchEmbeddingReport, EmbeddingReport,
                           HolderReport, YoungFunction, batch_embedding_check,
                           build_N, conjugate_young, conjugate_young_function,
                           conjugate_young_point, embedding_check,
                           luxemburg_norm, orlicz_holder_check, power_young,
                           validate_young)
from glsnum.psi import (AdjacentFunction, PsiFunction, adjacent,
                        conjugate_exponent, export_psi_csv, load_psi_csv,
                        make_exp_psi, make_extremal_psi, make_power_psi,
                        make_sv_psi, make_table_psi, natural_function,
                        psi_from_descriptor)
from glsnum.search import BracketError, GridSpec, NoFeasiblePoint, \
    NoInfeasiblePoint
from glsnum.verify import run_verification_suite

__version__ = "0.1.0"

__all__ = [
    "AdjacentFunction",
    "AssociateBoundResult",
    "BatchEmbeddingReport",
    "BracketError",
    "ConjugatePoint",
    "ConjugateResult",
    "DiscreteMeasureSpace",
    "DualBoundReport",
    "EmbeddingReport",
    "FamilyUnitNormReport",
    "GlsNormResult",
    "GridSpec",
    "GrowthReport",
    "HolderReport",
    "MeasurableFunction",
    "MembershipReport",
    "NoFeasiblePoint",
    "NoInfeasiblePoint",
    "PhiFunction",
    "PsiFunction",
    "RandomVariableSample",
    "RealFunction1D",
    "RepresentationReport",
    "SetFunction",
    "StepFunction",
    "YoungFunction",
    "adjacent",
    "associate_bound",
    "associate_norm_oracle",
    "batch_embedding_check",
    "bphi_norm",
    "build_N",
    "check_growth_condition",
    "check_sv_condition",
    "conjugate",
    "conjugate_exponent",
    "conjugate_young",
    "conjugate_young_function",
    "conjugate_young_point",
    "discretized_normal",
    "embedding_check",
    "ess_sup",
    "exponent_V",
    "export_psi_csv",
    "family_unit_norm_check",
    "gls_norm",
    "growth_report_for_psi",
    "h_of",
    "integrate",
    "load_csv",
    "load_json",
    "load_psi_csv",
    "log_mgf",
    "lp_norm",
    "lp_norms",
    "luxemburg_norm",
    "make_exp_psi",
    "make_extremal_psi",
    "make_power_psi",
    "make_space",
    "make_sv_psi",
    "make_table_psi",
    "membership_check",
    "mgf",
    "natural_function",
    "orlicz_holder_check",
    "phi_from_descriptor",
    "power_phi",
    "power_young",
    "probability_space",
    "psi_from_descriptor",
    "psi_from_phi",
    "quadratic_phi",
    "rademacher",
    "run_verification_suite",
    "setfunction_norm",
    "step_integral",
    "theorem_bound_check",
    "two_point",
    "uniform_probability_space",
    "validate_young",
    "verify_representation",
    "young_fenchel",
    "young_fenchel_point",
    "young_fenchel_table",
]
