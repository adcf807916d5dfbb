"""Closed-form predictions for clique sizes in G(n, alpha) and its variants.

All logarithms are natural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError
from .model import ModelParams, pareto_mean

_INF = math.inf

# kind -> (low, high, low_inclusive, high_inclusive) for alpha
VALID_ALPHA = {
    "omega_lead_constant": (0.0, 2.0, False, False),
    "omega_curve": (0.0, 2.0, False, False),
    "ft_ratio": (0.0, 2.0, False, False),
    "variant_exponent": (0.0, 2.0, False, False),
    "triangle_rate": (2.0, _INF, False, False),
    "omega_limit_probs": (2.0, _INF, False, False),
    "gnp_bound": (0.0, _INF, True, False),
}


def _check_alpha(kind, alpha):
    lo, hi, lo_in, hi_in = VALID_ALPHA[kind]
    ok_lo = alpha >= lo if lo_in else alpha > lo
    ok_hi = alpha <= hi if hi_in else alpha < hi
    if not (ok_lo and ok_hi):
        lb = "[" if lo_in else "("
        rb = "]" if hi_in else ")"
        raise ValidationError(f"{kind} needs alpha in {lb}{lo}, {hi}{rb}, got {alpha}")


@dataclass(frozen=True)
class Prediction:
    """A predicted quantity, constructible only for alpha inside its validity range.

    ``value`` is a float, or a tuple for two-valued predictions. ``extra``
    carries kind-specific fields (e.g. the log exponent of the ratio-kernel
    upper bracket).
    """

    kind: str
    value: float | tuple
    alpha: float
    extra: dict | None = None

    def __post_init__(self):
        if self.kind not in VALID_ALPHA:
            raise ValidationError(f"unknown prediction kind {self.kind!r}")
        _check_alpha(self.kind, self.alpha)

    @property
    def valid_alpha_range(self):
        return VALID_ALPHA[self.kind][:2]

    def to_dict(self):
        d = {"kind": self.kind, "alpha": self.alpha,
             "value": list(self.value) if isinstance(self.value, tuple) else self.value,
             "valid_alpha_range": list(self.valid_alpha_range)}
        if self.extra:
            d.update(self.extra)
        return d


def clique_constant_c(a: float, b: float, alpha: float) -> float:
    _check_alpha("omega_lead_constant", alpha)
    if not (a > 0 and b > 0):
        raise ValidationError("a and b must be positive")
    return a * b ** (alpha / 2) * (1 - alpha / 2) ** (-alpha / 2)


def ft_ratio(alpha: float) -> float:
    """Limit of |full top clique| / |maximum clique|."""
    _check_alpha("ft_ratio", alpha)
    return 2.0 ** (-alpha / 2)


def pareto_second_moment(a: float, alpha: float) -> float:
    if alpha <= 2:
        raise ValidationError(f"E W^2 is infinite for alpha={alpha} <= 2")
    if not a > 0:
        raise ValidationError("a must be positive")
    x0 = a ** (1.0 / alpha)
    return x0 * x0 * alpha / (alpha - 2.0)


def triangle_limit_rate(b: float, ew2: float) -> float:
    if not (b > 0 and ew2 > 0):
        raise ValidationError("b and E W^2 must be positive")
    return (b * ew2) ** 3 / 6.0


def limit_omega_probs(rate: float) -> tuple[float, float]:
    """Limits of P(omega = 2) and P(omega = 3) given the triangle rate."""
    if not rate >= 0:
        raise ValidationError(f"rate must be nonnegative, got {rate}")
    p2 = math.exp(-rate)
    return p2, -math.expm1(-rate)


def gnp_clique_bound(n: float, p: float) -> float:
    if n < 2:
        raise ValidationError("n must be at least 2")
    if not 0 <= p < 1:
        raise ValidationError(f"p must lie in [0, 1), got {p}")
    return 2.0 * math.log(n) / (1.0 - p)


def predicted_omega(n: float, params: ModelParams) -> Prediction:
    """Leading-order clique number for ``0 < alpha < 2``.

    The ratio kernel only pins the exponent ``(2-alpha)/(2+alpha)``; its
    constants are unknown, so the prediction carries the exponent and the
    bracket ``c n^e <= omega <= C n^e (log n)^(alpha/(2+alpha))``.
    """
    alpha = params.alpha
    if not n > 1:
        raise ValidationError("n must exceed 1")
    _check_alpha("omega_curve", alpha)
    ln = math.log(n)
    if params.normalization == "by-weight-sum":
        if params.kernel != "exponential":
            raise ValidationError("by-weight-sum predictions exist for the exponential kernel only")
        if alpha == 1:
            return Prediction("omega_curve", math.sqrt(2 * params.a * n) / ln, alpha,
                              {"kernel": params.kernel, "normalization": params.normalization})
        if alpha > 1:
            b_eff = 1.0 / pareto_mean(params.a, alpha)
            c = clique_constant_c(params.a, b_eff, alpha)
            return Prediction("omega_curve", c * n ** (1 - alpha / 2) * ln ** (-alpha / 2), alpha,
                              {"kernel": params.kernel, "normalization": params.normalization,
                               "effective_b": b_eff})
        raise ValidationError("by-weight-sum with alpha < 1 has a random limit; no point prediction")
    if params.kernel == "exponential":
        c = clique_constant_c(params.a, params.b, alpha)
        return Prediction("omega_curve", c * n ** (1 - alpha / 2) * ln ** (-alpha / 2), alpha,
                          {"kernel": "exponential", "constant": c,
                           "exponent": 1 - alpha / 2, "log_exponent": -alpha / 2})
    if params.kernel == "capped":
        const = params.a * params.b ** (alpha / 2)
        return Prediction("omega_curve", const * n ** (1 - alpha / 2), alpha,
                          {"kernel": "capped", "constant": const,
                           "exponent": 1 - alpha / 2, "log_exponent": 0.0})
    return variant_exponent(alpha)


def variant_exponent(alpha: float) -> Prediction:
    """Exponent of n for the ratio kernel ``lambda / (1 + lambda)``."""
    _check_alpha("variant_exponent", alpha)
    e = (2 - alpha) / (2 + alpha)
    return Prediction("variant_exponent", e, alpha,
                      {"kernel": "ratio", "exponent": e,
                       "lower": "c * n**exponent",
                       "upper": "C * n**exponent * log(n)**upper_log_exponent",
                       "upper_log_exponent": alpha / (2 + alpha)})


def predictions(params: ModelParams, n: float | None = None) -> dict:
    """Every prediction that applies to ``params`` (and ``n`` when given)."""
    out = {"a": params.a, "b": params.b, "alpha": params.alpha,
           "kernel": params.kernel, "normalization": params.normalization}
    alpha = params.alpha
    if n is not None:
        out["n"] = n
    if alpha < 2:
        if params.kernel == "exponential" and params.normalization == "by-n":
            out["clique_constant_c"] = clique_constant_c(params.a, params.b, alpha)
        out["ft_ratio"] = ft_ratio(alpha)
        if params.kernel == "ratio":
            out["variant_exponent"] = variant_exponent(alpha).to_dict()
        elif n is not None and n > 1:
            try:
                out["omega"] = predicted_omega(n, params).to_dict()
            except ValidationError as e:
                out["omega"] = {"unavailable": str(e)}
    elif alpha == 2:
        out["omega"] = {"regime": "tight", "note": "omega is bounded in probability but not whp bounded"}
    else:
        ew2 = pareto_second_moment(params.a, alpha)
        out["pareto_second_moment"] = ew2
        if params.normalization == "by-n":
            rate = triangle_limit_rate(params.b, ew2)
            p2, p3 = limit_omega_probs(rate)
            out["triangle_rate"] = rate
            out["omega_limit_probs"] = {"2": p2, "3": p3}
    if alpha > 1:
        out["pareto_mean"] = pareto_mean(params.a, alpha)
    return out
