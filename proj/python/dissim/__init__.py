"""SSIM, symmetric SSIM, and Dissimilarity Quotient image quality metrics."""

from dissim._dissim import (
    BorderMode,
    DistortionKind,
    EpsilonMode,
    Image,
    IoError,
    MetricMap,
    MetricParams,
    StatsField,
    SymStatsField,
    TransformKind,
    WindowKind,
    WindowSpec,
    apply_distortion,
    apply_transform,
    compare,
    dissimilarity_map,
    dq_map,
    gradient_magnitude,
    identity_residuals,
    laplacian,
    local_mean,
    local_stats,
    make_kernel,
    normal_field,
    normalize,
    nrmse,
    pearson,
    pool_mean_ssim,
    pool_minkowski,
    read_pgm,
    riesz_magnitude,
    riesz_pair,
    rotate90,
    sl_map,
    spearman,
    split_seed,
    ssim_three_term,
    ssim_two_term,
    sum_diff,
    sv_map,
    sym_stats,
    write_pgm,
)

__all__ = [
    "BorderMode",
    "DistortionKind",
    "EpsilonMode",
    "Image",
    "IoError",
    "MetricMap",
    "MetricParams",
    "StatsField",
    "SymStatsField",
    "TransformKind",
    "WindowKind",
    "WindowSpec",
    "apply_distortion",
    "apply_transform",
    "compare",
    "dissimilarity_map",
    "dq_map",
    "gradient_magnitude",
    "identity_residuals",
    "laplacian",
    "local_mean",
    "local_stats",
    "make_kernel",
    "normal_field",
    "normalize",
    "nrmse",
    "pearson",
    "pool_mean_ssim",
    "pool_minkowski",
    "read_pgm",
    "riesz_magnitude",
    "riesz_pair",
    "rotate90",
    "sl_map",
    "spearman",
    "split_seed",
    "ssim_three_term",
    "ssim_two_term",
    "sum_diff",
    "sv_map",
    "sym_stats",
    "write_pgm",
]

__version__ = "0.1.0"
