import math

import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from plclique import theory
from plclique.errors import ValidationError
from plclique.model import ModelParams


def test_clique_constant():
    assert theory.clique_constant_c(1, 1, 1) == pytest.approx(math.sqrt(2))
    assert theory.clique_constant_c(2.5, 1, 1e-9) == pytest.approx(2.5, rel=1e-6)
    for bad in (0, 2, 3):
        with pytest.raises(ValidationError):
            theory.clique_constant_c(1, 1, bad)


@given(a=st.floats(0.1, 10), b=st.floats(0.1, 10), alpha=st.floats(0.05, 1.95), t=st.floats(0.1, 10))
def test_clique_constant_rescaling(a, b, alpha, t):
    c = theory.clique_constant_c(a, b, alpha)
    assert theory.clique_constant_c(a * t ** alpha, b * t ** -2, alpha) == pytest.approx(c, rel=1e-12)


def test_predicted_omega_exponential_at_e():
    pred = theory.predicted_omega(math.e, ModelParams(a=1, b=1, alpha=1))
    assert pred.value == pytest.approx(2.3316, abs=1e-4)


def test_predicted_omega_capped():
    pred = theory.predicted_omega(100, ModelParams(a=1, b=4, alpha=1, kernel="capped"))
    assert pred.value == pytest.approx(20.0)


def test_predicted_omega_ratio_exponent():
    pred = theory.predicted_omega(1000, ModelParams(alpha=1, kernel="ratio"))
    assert pred.kind == "variant_exponent"
    assert pred.value == pytest.approx(1 / 3)
    assert pred.extra["upper_log_exponent"] == pytest.approx(1 / 3)


def test_predicted_omega_normalized():
    p = ModelParams(a=2.0, alpha=1.0, normalization="by-weight-sum")
    assert theory.predicted_omega(1e4, p).value == pytest.approx(math.sqrt(4e4) / math.log(1e4))
    with pytest.raises(ValidationError):
        theory.predicted_omega(1e4, ModelParams(alpha=0.5, normalization="by-weight-sum"))


def test_predicted_omega_range():
    with pytest.raises(ValidationError):
        theory.predicted_omega(1000, ModelParams(alpha=2.5))
    with pytest.raises(ValidationError):
        theory.predicted_omega(1, ModelParams(alpha=1))


@pytest.mark.parametrize("alpha", [0.3, 1.0, 1.7])
@pytest.mark.parametrize("n", [1e3, 1e6])
def test_capped_removes_log_factor(alpha, n):
    e = theory.predicted_omega(n, ModelParams(a=1.3, b=0.7, alpha=alpha)).value
    c = theory.predicted_omega(n, ModelParams(a=1.3, b=0.7, alpha=alpha, kernel="capped")).value
    expected = (1 - alpha / 2) ** (-alpha / 2) * math.log(n) ** (-alpha / 2)
    assert e / c == pytest.approx(expected, rel=1e-12)


def test_ft_ratio():
    assert theory.ft_ratio(1) == pytest.approx(0.70711, abs=1e-5)
    assert theory.ft_ratio(1e-12) == pytest.approx(1)
    assert theory.ft_ratio(2 - 1e-12) == pytest.approx(0.5)
    with pytest.raises(ValidationError):
        theory.ft_ratio(2)


def test_pareto_second_moment():
    assert theory.pareto_second_moment(1, 3) == pytest.approx(3)
    # E W^2 = int 2x P(W > x) dx
    quad = 1 + integrate.quad(lambda x: 2 * x * x ** -3, 1, math.inf)[0]
    assert quad == pytest.approx(3)
    assert theory.pareto_second_moment(16, 4) == pytest.approx(8)
    assert theory.pareto_second_moment(1, 1e6) == pytest.approx(1, rel=1e-5)
    with pytest.raises(ValidationError):
        theory.pareto_second_moment(1, 2)


def test_triangle_rate():
    assert theory.triangle_limit_rate(0.5, 3) == pytest.approx(0.5625)
    assert theory.triangle_limit_rate(1e-9, 3) == pytest.approx(0, abs=1e-20)
    assert theory.triangle_limit_rate(1.0, 3) / theory.triangle_limit_rate(0.5, 3) == pytest.approx(8)


def test_limit_probs():
    assert theory.limit_omega_probs(0) == (1.0, 0.0)
    p2, p3 = theory.limit_omega_probs(0.5625)
    assert (p2, p3) == pytest.approx((0.5698, 0.4302), abs=1e-4)
    assert theory.limit_omega_probs(1e3) == pytest.approx((0, 1))
    with pytest.raises(ValidationError):
        theory.limit_omega_probs(-1)


@given(st.floats(0, 50))
def test_limit_probs_sum(rate):
    assert sum(theory.limit_omega_probs(rate)) == pytest.approx(1)


def test_gnp_bound():
    assert theory.gnp_clique_bound(100, 0.5) == pytest.approx(18.42, abs=0.01)
    assert theory.gnp_clique_bound(50, 0) == pytest.approx(2 * math.log(50))
    vals = [theory.gnp_clique_bound(100, p) for p in (0, 0.2, 0.5, 0.9)]
    assert vals == sorted(vals)
    with pytest.raises(ValidationError):
        theory.gnp_clique_bound(100, 1)


def test_prediction_validity_range():
    with pytest.raises(ValidationError):
        theory.Prediction("ft_ratio", 0.5, alpha=3.0)
    with pytest.raises(ValidationError):
        theory.Prediction("triangle_rate", 0.5, alpha=1.0)
    assert theory.Prediction("triangle_rate", 0.5, alpha=3.0).valid_alpha_range == (2.0, math.inf)


def test_predictions_bundle():
    hi = theory.predictions(ModelParams(a=1, b=0.5, alpha=3), n=1e4)
    assert hi["triangle_rate"] == pytest.approx(0.5625)
    assert hi["omega_limit_probs"]["2"] == pytest.approx(math.exp(-0.5625))
    lo = theory.predictions(ModelParams(alpha=1), n=1e4)
    assert lo["clique_constant_c"] == pytest.approx(math.sqrt(2))
    assert "regime" in theory.predictions(ModelParams(alpha=2))["omega"]
