import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import stats

from tvws_interference import analytic, mcsim
from tvws_interference.analytic import InterferenceModel, StableLaw
from tvws_interference.errors import DomainError, SingularityError
from tvws_interference.geometry import RegionSpec, contains, lune


def _model(**kw):
    region = RegionSpec(kw.pop("r_max", 5.0), kw.pop("r_p", 0.0), kw.pop("r_dec", 0.0))
    return InterferenceModel(kw.pop("alpha", 4.0), kw.pop("lam", 0.5), region)


def test_trial_streams_are_independent_of_order():
    a = mcsim.trial_rng(11, 3).random(4)
    mcsim.trial_rng(11, 2).random(100)
    assert np.array_equal(a, mcsim.trial_rng(11, 3).random(4))
    assert not np.array_equal(a, mcsim.trial_rng(11, 4).random(4))


def test_points_lie_in_region():
    model = _model(r_max=3.0, r_p=1.5, r_dec=2.0, lam=5.0)
    pts = mcsim.sample_ppp(model, mcsim.trial_rng(1, 0))
    assert len(pts) > 0
    assert np.all(contains(pts, model.region))


def test_thin_lune_fallback():
    # protection disk covers all but a sliver of the network
    model = _model(r_max=1.0, r_p=1.98, r_dec=1.0, lam=200_000.0)
    frac = lune(model.region).area / math.pi
    assert frac < 0.01
    pts = mcsim.sample_ppp(model, mcsim.trial_rng(2, 0))
    assert np.all(contains(pts, model.region))
    mean = 200_000.0 * lune(model.region).area
    assert abs(len(pts) - mean) <= 4 * math.sqrt(mean)


def test_point_count_is_poisson():
    model = _model(lam=0.3, r_max=4.0)
    counts = [len(mcsim.sample_ppp(model, mcsim.trial_rng(9, i))) for i in range(3000)]
    mean = 0.3 * math.pi * 16
    assert np.mean(counts) == pytest.approx(mean, abs=4 * math.sqrt(mean / 3000))
    assert np.var(counts) == pytest.approx(mean, rel=0.1)


def test_campaign_reproducible_across_workers():
    params = mcsim.CampaignParams(_model(), n_trials=400, seed=123)
    a = mcsim.run_campaign(params)
    b = mcsim.run_campaign(params, workers=3)
    assert np.array_equal(a.samples, b.samples)
    assert mcsim.campaign_json(params, a) == mcsim.campaign_json(params, b)
    assert mcsim.campaign_csv(a) == mcsim.campaign_csv(b)


def test_campaign_matches_law_at_large_radius():
    # a wide disk removes most of the finite-network error
    model = InterferenceModel(4.0, 0.05, RegionSpec(40.0))
    law = analytic.compute_k(model)
    res = mcsim.run_campaign(mcsim.CampaignParams(model, 5000, 4))
    assert mcsim.ks_distance(res.samples, lambda x: analytic.cdf(law, x)) < 0.025


def test_singularity_at_origin():
    with pytest.raises(SingularityError):
        mcsim.aggregate_interference(np.array([[0.0, 0.0]]), _model(), mcsim.trial_rng(0))


def test_empty_field_gives_zero():
    assert mcsim.aggregate_interference(np.empty((0, 2)), _model(), mcsim.trial_rng(0)) == 0.0


def test_no_fading_is_deterministic_sum():
    model = InterferenceModel(4.0, 1.0, RegionSpec(5.0), analytic.FadingSpec("none"))
    pts = np.array([[1.0, 0.0], [0.0, 2.0]])
    assert mcsim.aggregate_interference(pts, model, mcsim.trial_rng(0), tx_power=2.0) == pytest.approx(2 * (1 + 1 / 16))


def test_ks_distance_against_scipy():
    x = mcsim.trial_rng(5).standard_normal(500)
    assert mcsim.ks_distance(x, stats.norm.cdf) == pytest.approx(stats.kstest(x, "norm").statistic, rel=1e-12)


def test_stable_sampler_rejects_point_mass():
    with pytest.raises(DomainError):
        mcsim.stable_sample(StableLaw(1.0, 1.0), 10, mcsim.trial_rng(0))


@pytest.mark.parametrize("eta", [1 / 3, 2 / 3, 0.4])
def test_stable_sampler_laplace_transform(eta):
    law = StableLaw(0.8, eta)
    x = mcsim.stable_sample(law, 200_000, mcsim.trial_rng(6, 1))
    for s in (0.3, 1.0, 3.0):
        est = np.mean(np.exp(-s * x))
        assert est == pytest.approx(math.exp(-law.K * s ** eta), abs=5e-3)


@given(st.integers(0, 2 ** 63), st.integers(1, 40))
def test_samples_positive(seed, n):
    assert np.all(mcsim.stable_sample(StableLaw(1.0, 0.5), n, mcsim.trial_rng(seed)) > 0)


def test_params_validation():
    with pytest.raises(DomainError):
        mcsim.CampaignParams(_model(), n_trials=0, seed=1)
