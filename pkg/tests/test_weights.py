import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats

from plclique.errors import ValidationError
from plclique.weights import (WeightParams, WeightVector, deterministic_weights,
                              pareto_from_uniform, rank_by_weight, read_weights,
                              sample_iid_pareto, sample_poisson_vertex_count,
                              write_weights)


def test_inverse_cdf_boundary_and_quarter():
    p = WeightParams(alpha=1.0, a=1.0)
    assert pareto_from_uniform(1.0, p) == pytest.approx(1.0)
    assert pareto_from_uniform(0.25, p) == pytest.approx(4.0)


def test_default_x0_is_pareto_cutoff():
    assert WeightParams(alpha=2.0, a=4.0).x0 == pytest.approx(2.0)


@pytest.mark.parametrize("kw", [dict(alpha=0, a=1), dict(alpha=1, a=-1),
                                dict(alpha=1, a=1, x0=0), dict(alpha=1, a=4, x0=1)])
def test_invalid_params_rejected(kw):
    with pytest.raises(ValidationError):
        WeightParams(**kw)


def test_tail_probability_at_4():
    w = sample_iid_pareto(10 ** 6, WeightParams(alpha=2.0, a=4.0), seed=7).w
    frac = np.mean(w > 4.0)
    se = math.sqrt(0.25 * 0.75 / w.size)
    assert abs(frac - 0.25) < 3 * se
    assert w.min() >= 2.0


def test_tail_ks_against_closed_form():
    p = WeightParams(alpha=1.5, a=2.0)
    w = sample_iid_pareto(10 ** 5, p, seed=3).w
    cdf = lambda x: 1 - p.a * np.maximum(x, p.x0) ** -p.alpha
    assert stats.kstest(w, cdf).pvalue > 0.001


def test_max_weight_scale():
    # fraction of trials with W* > 2 n^(1/alpha) is at most a 2^-alpha (1 + o(1))
    n, trials, t = 10 ** 4, 1000, 2.0
    rng = np.random.default_rng(11)
    hits = sum(sample_iid_pareto(n, WeightParams(alpha=1.0), rng).max > t * n for _ in range(trials))
    bound = 1 - (1 - 1 / (t * n)) ** n
    assert hits / trials <= bound + 3 * math.sqrt(bound * (1 - bound) / trials)
    assert bound <= 1.0 / t


def test_sampling_is_deterministic():
    p = WeightParams(alpha=1.0)
    assert np.array_equal(sample_iid_pareto(50, p, 5).w, sample_iid_pareto(50, p, 5).w)
    assert sample_iid_pareto(0, p, 5).n == 0


def test_deterministic_weights():
    wv = deterministic_weights(100, 1.0, 2.0)
    assert wv.w[3] == pytest.approx(5.0)
    assert wv.w[-1] == pytest.approx(1.0)
    assert np.all(np.diff(wv.w) < 0)
    assert np.array_equal(wv.rank, np.arange(100))
    with pytest.raises(ValidationError):
        deterministic_weights(0, 1.0, 2.0)


def test_poisson_vertex_count():
    assert sample_poisson_vertex_count(0, seed=1) == 0
    rng = np.random.default_rng(2)
    draws = np.array([sample_poisson_vertex_count(1e4, rng) for _ in range(10 ** 4)])
    assert abs(draws.mean() - 1e4) < 3 * math.sqrt(1e4 / 1e4)
    assert 0.95 <= draws.var() / draws.mean() <= 1.05


@pytest.mark.parametrize("w, expected", [([1, 2, 3], [2, 1, 0]), ([2, 2, 1], [0, 1, 2]), ([5], [0])])
def test_rank_by_weight(w, expected):
    assert rank_by_weight(w).tolist() == expected


@given(st.lists(st.floats(min_value=0.01, max_value=1e6), max_size=60))
def test_rank_is_sorting_permutation(w):
    r = rank_by_weight(w)
    assert sorted(r.tolist()) == list(range(len(w)))
    ws = np.asarray(w)[r]
    assert np.all(np.diff(ws) <= 0)
    # ties keep ascending ids
    for k in range(len(w) - 1):
        if ws[k] == ws[k + 1]:
            assert r[k] < r[k + 1]


def test_weight_vector_rejects_nonpositive():
    with pytest.raises(ValidationError):
        WeightVector(np.array([1.0, 0.0]))


def test_weight_file_roundtrip(tmp_path):
    wv = sample_iid_pareto(20, WeightParams(alpha=1.3), seed=9)
    path = tmp_path / "w.txt"
    write_weights(path, wv)
    back = read_weights(path)
    assert np.array_equal(back.w, wv.w)
    assert len(path.read_text().splitlines()) == 20
