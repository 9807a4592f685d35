"""Gabor-frame analysis for modulated Cauchy-kernel and shifted-sinc windows."""

from .windows import (
    CauchyModSum,
    FourierOf,
    FrameEstimate,
    Gaussian,
    GridError,
    Lattice,
    PoleError,
    SampledFunction,
    ShiftedSinc,
    Verdict,
    WindowError,
    WindowSpec,
    as_mod_sum,
    gaussian_sampled,
    hypothesis_margin,
    inner_product,
    l2_norm,
    rescale_window,
    tf_shift,
    window_eval,
    window_fourier,
)

__all__ = [
    "CauchyModSum",
    "FourierOf",
    "FrameEstimate",
    "Gaussian",
    "GridError",
    "Lattice",
    "PoleError",
    "SampledFunction",
    "ShiftedSinc",
    "Verdict",
    "WindowError",
    "WindowSpec",
    "as_mod_sum",
    "gaussian_sampled",
    "hypothesis_margin",
    "inner_product",
    "l2_norm",
    "rescale_window",
    "tf_shift",
    "window_eval",
    "window_fourier",
]

__version__ = "0.1.0"
