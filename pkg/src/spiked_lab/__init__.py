"""Spiked Gaussian matrix and tensor laboratory.

Samplers for noise and rank-one-spiked ensembles, exact spectral tools,
critical-strength computations, likelihood ratio second moments, and a
reproducible two-hypothesis experiment runner.
"""

from .ensembles import (
    MODELS,
    STREAM_SAMPLE,
    STREAM_TEST,
    EnsembleSpec,
    SampleBatch,
    batch_statistics,
    haar_orthogonal,
    sample_asym_noise,
    sample_goe,
    sample_hidden_clique,
    sample_sphere,
    sample_spiked,
    sample_sym_noise,
    sample_trial,
    sub_seed_hex,
    trial_key,
    trial_rng,
)
from .errors import (
    ConfigError,
    ContractError,
    NumericalFailure,
    SizingError,
    SpikedLabError,
)
from .inference import (
    STATISTICS,
    ExperimentResult,
    ExperimentSpec,
    LikelihoodRatioEstimate,
    SecondMomentResult,
    first_coord_log_density,
    first_coord_tail_logprob,
    likelihood_ratio_mc,
    log_cn,
    make_statistic,
    run_experiment,
    second_moment_asym,
    second_moment_sym,
    spectral_test_eig,
    trace_stat,
    trace_test,
    trace_tv,
)
from .spectra import (
    LargestEigStats,
    Spectrum,
    eigvals_sym,
    ks_distance,
    largest_eig_stats,
    semicircle_ref,
    spectra_from_csv,
    spectra_to_csv,
    summarize_spectra,
    summary_to_json,
)
from .tensors import (
    DenseTensor,
    OperatorNormBound,
    SymmetricTensor,
    UnitVector,
    frobenius,
    inner,
    load_tensor,
    operator_norm_lb,
    outer_power,
    save_tensor,
    symmetrize,
    tensor_from_json,
    tensor_to_json,
)
from .thresholds import (
    AscentSummary,
    CriticalPoint,
    RateFunctionPoint,
    ThresholdResult,
    beta_star,
    beta_star_asymptotic,
    f_beta,
    g_lambda,
    g_lambda_critical,
    g_lambda_max,
    lambda_star,
    sphere_rate,
)

try:
    from importlib.metadata import version as _version

    __version__ = _version("spiked-lab")
except Exception:
    __version__ = "0.1.0"

__all__ = [
    "MODELS",
    "STATISTICS",
    "STREAM_SAMPLE",
    "STREAM_TEST",
    "ConfigError",
    "ContractError",
    "CriticalPoint",
    "DenseTensor",
    "EnsembleSpec",
    "ExperimentResult",
    "ExperimentSpec",
    "LargestEigStats",
    "LikelihoodRatioEstimate",
    "NumericalFailure",
    "OperatorNormBound",
    "RateFunctionPoint",
    "SampleBatch",
    "SecondMomentResult",
    "SizingError",
    "SpikedLabError",
    "Spectrum",
    "SymmetricTensor",
    "ThresholdResult",
    "UnitVector",
    "batch_statistics",
    "beta_star",
    "beta_star_asymptotic",
    "eigvals_sym",
    "f_beta",
    "first_coord_log_density",
    "first_coord_tail_logprob",
    "frobenius",
    "g_lambda",
    "g_lambda_critical",
    "haar_orthogonal",
    "inner",
    "ks_distance",
    "lambda_star",
    "largest_eig_stats",
    "likelihood_ratio_mc",
    "load_tensor",
    "log_cn",
    "make_statistic",
    "operator_norm_lb",
    "outer_power",
    "run_experiment",
    "sample_asym_noise",
    "sample_goe",
    "sample_hidden_clique",
    "sample_sphere",
    "sample_spiked",
    "sample_sym_noise",
    "sample_trial",
    "save_tensor",
    "second_moment_asym",
    "second_moment_sym",
    "semicircle_ref",
    "spectra_from_csv",
    "spectra_to_csv",
    "spectral_test_eig",
    "sphere_rate",
    "sub_seed_hex",
    "summarize_spectra",
    "summary_to_json",
    "symmetrize",
    "tensor_from_json",
    "tensor_to_json",
    "trace_stat",
    "trace_test",
    "trace_tv",
    "trial_key",
    "trial_rng",
]
