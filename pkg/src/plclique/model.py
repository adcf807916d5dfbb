"""Edge intensities and edge probabilities for the conditionally Poissonian model."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ValidationError

KERNELS = ("exponential", "capped", "ratio")
NORMALIZATIONS = ("by-n", "by-weight-sum")


@dataclass(frozen=True)
class ModelParams:
    """Parameters of ``G(n, alpha)`` and its variants.

    ``b`` is ignored under ``by-weight-sum`` normalization, where the
    intensity is ``w_i w_j / sum(w)``.
    """

    a: float = 1.0
    b: float = 1.0
    alpha: float = 1.0
    kernel: str = "exponential"
    normalization: str = "by-n"

    def __post_init__(self):
        for name in ("a", "b", "alpha"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValidationError(f"{name} must be positive and finite, got {v}")
        if self.kernel not in KERNELS:
            raise ValidationError(f"unknown kernel {self.kernel!r}; expected one of {KERNELS}")
        if self.normalization not in NORMALIZATIONS:
            raise ValidationError(
                f"unknown normalization {self.normalization!r}; expected one of {NORMALIZATIONS}")

    def pair_factor(self, scale: float) -> float:
        """Multiplier ``beta`` with ``lambda_ij = beta * w_i * w_j``.

        ``scale`` is n for by-n normalization and the weight sum otherwise.
        """
        if not scale > 0:
            raise ValidationError(f"scale must be positive, got {scale}")
        if self.normalization == "by-n":
            return self.b / scale
        return 1.0 / scale


def intensity(wi, wj, params: ModelParams, scale: float):
    wi = np.asarray(wi, dtype=np.float64)
    wj = np.asarray(wj, dtype=np.float64)
    if np.any(wi <= 0) or np.any(wj <= 0):
        raise ValidationError("weights must be positive")
    lam = params.pair_factor(scale) * wi * wj
    return float(lam) if lam.ndim == 0 else lam


def edge_probability(lam, kernel: str = "exponential"):
    lam = np.asarray(lam, dtype=np.float64)
    if np.any(lam < 0) or np.any(np.isnan(lam)):
        raise ValidationError("intensity must be nonnegative")
    if kernel == "exponential":
        p = -np.expm1(-lam)
    elif kernel == "capped":
        p = np.minimum(lam, 1.0)
    elif kernel == "ratio":
        # lam / (1 + lam) overflows to nan at lam=inf
        p = np.where(np.isinf(lam), 1.0, lam / (1.0 + np.where(np.isinf(lam), 0.0, lam)))
    else:
        raise ValidationError(f"unknown kernel {kernel!r}")
    return float(p) if p.ndim == 0 else p


def lambda_matrix(w, params: ModelParams, scale: float | None = None) -> np.ndarray:
    """Dense matrix of intensities with a zero diagonal; for small n only."""
    w = np.asarray(w, dtype=np.float64)
    if scale is None:
        scale = w.size if params.normalization == "by-n" else float(w.sum())
    lam = params.pair_factor(scale) * np.outer(w, w)
    np.fill_diagonal(lam, 0.0)
    return lam


def rescale_params(params: ModelParams, t: float) -> ModelParams:
    """Parameters giving the same graph after the weights are multiplied by ``t``.

    Maps ``(a, b)`` to ``(a t**alpha, b t**-2)``; ``a * b**(alpha/2)`` is unchanged.
    """
    if not t > 0:
        raise ValidationError(f"t must be positive, got {t}")
    if params.normalization != "by-n":
        raise ValidationError("rescaling is defined for by-n normalization only")
    return replace(params, a=params.a * t ** params.alpha, b=params.b * t ** -2.0)


def effective_b_for_normalized(mean_w: float) -> float:
    """The by-n ``b`` asymptotically matching by-weight-sum normalization."""
    if not (mean_w > 0 and math.isfinite(mean_w)):
        raise ValidationError(f"mean weight must be positive and finite, got {mean_w}")
    return 1.0 / mean_w


def pareto_mean(a: float, alpha: float) -> float:
    """``E W`` for the pure Pareto law; finite only for alpha > 1."""
    if alpha <= 1:
        raise ValidationError(f"E W is infinite for alpha={alpha} <= 1")
    x0 = a ** (1.0 / alpha)
    return alpha * x0 / (alpha - 1.0)
