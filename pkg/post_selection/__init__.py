from .prediction import align_covariates, covariate_means, hazard_ratios, predict_hazard_ratio
from .inference import InferenceRow, InferenceTable, refit_inference
from .stability import StabilityResult, draw_subsample, stability_selection
from .strata_summary import GroupSummary, StrataSummary, five_number_summary, strata_summary

__all__ = [
    "align_covariates", "covariate_means", "hazard_ratios", "predict_hazard_ratio",
    "InferenceRow", "InferenceTable", "refit_inference",
    "StabilityResult", "draw_subsample", "stability_selection",
    "GroupSummary", "StrataSummary", "five_number_summary", "strata_summary",
]
