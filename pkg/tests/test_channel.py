import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from relaycap.channel import (
    ChannelModel,
    CsiConfig,
    NetworkConfig,
    build_covariance,
    build_predictor,
    sample_draw,
)
from relaycap.montecarlo import block_rng
from relaycap.selection import SelectionScheme
from relaycap.validation import j0_series_oracle

TRIALS = 200_000


def batch_stat(fn, *arrays, batches=20):
    """Statistic over the whole sample and its batch-means standard error."""
    whole = fn(*arrays)
    parts = [fn(*chunk) for chunk in zip(*(np.array_split(a, batches) for a in arrays))]
    return whole, np.std(parts, ddof=1) / math.sqrt(batches)


def corr(a, b):
    return np.real(np.vdot(b, a)) / math.sqrt(np.vdot(a, a).real * np.vdot(b, b).real)


def net1(var=1.0):
    return NetworkConfig(1, 1.0, 1.0, 1.0, var)


def test_config_validation():
    with pytest.raises(ValueError):
        NetworkConfig(0)
    with pytest.raises(ValueError):
        NetworkConfig(2, source_power=0.0)
    with pytest.raises(ValueError):
        NetworkConfig(2, link_variance=[1.0, -1.0])
    with pytest.raises(ValueError):
        CsiConfig(2, doppler_delay=-0.1)
    with pytest.raises(ValueError):
        CsiConfig(2, prediction_length=0)
    with pytest.raises(ValueError):
        CsiConfig(2, transmission_lag=0)
    with pytest.raises(ValueError):
        CsiConfig(2, selection_interval=1.5)
    with pytest.raises(ValueError):
        ChannelModel(NetworkConfig(2), CsiConfig(2, estimation_error_variance=1.0))
    with pytest.raises(ValueError):
        ChannelModel(NetworkConfig(2), CsiConfig(3))


def test_link_array_broadcast():
    csi = CsiConfig(3, doppler_delay=[0.1, 0.2, 0.3])
    assert csi.doppler_delay.shape == (2, 3)
    assert np.all(csi.doppler_delay[1] == [0.1, 0.2, 0.3])
    assert not csi.doppler_delay.flags.writeable


def test_symmetric_snr():
    net = NetworkConfig.symmetric_snr(4, 10.0)
    assert net.psi_s == pytest.approx(10.0) and net.psi_r == pytest.approx(10.0)


def test_covariance_static_channel():
    R, r = build_covariance((0, 0), net1(2.0), CsiConfig(1, 0.0, 1, 2, 4, 0.0))
    assert np.allclose(R, 2.0)
    assert np.allclose(r, 2.0)


def test_covariance_scalar():
    R, r = build_covariance((0, 0), net1(), CsiConfig(1, 0.3, 1, 2, 1, 0.0))
    assert R.shape == (1, 1) and R[0, 0] == pytest.approx(1.0)
    assert r[0] == pytest.approx(j0_series_oracle(2 * math.pi * 0.3), abs=1e-14)


def test_covariance_entries_vs_oracle():
    fdT, delta, lag, err = 0.3, 2, 1, 0.2
    R, r = build_covariance((1, 0), net1(), CsiConfig(1, fdT, lag, delta, 3, err))
    var_hat = 1.0 - err
    rho_e = var_hat
    for k in range(3):
        for l in range(3):
            expected = var_hat if k == l else rho_e * var_hat * j0_series_oracle(2 * math.pi * fdT * delta * abs(k - l))
            assert R[k, l] == pytest.approx(expected, abs=1e-14)
        assert r[k] == pytest.approx(var_hat * j0_series_oracle(2 * math.pi * fdT * (lag + k * delta)), abs=1e-14)


def test_predictor_single_tap_matches_outdated_correlation():
    for fdT in (0.05, 0.2, 0.3, 0.45):
        p = build_predictor((0, 0), net1(), CsiConfig(1, fdT, 1, 2, 1, 0.0))
        assert p.correlation == pytest.approx(abs(j0_series_oracle(2 * math.pi * fdT)), rel=1e-9)


def test_predictor_static_channel():
    assert build_predictor((0, 0), net1(), CsiConfig(1, 0.0, 1, 2, 5, 0.0)).correlation == pytest.approx(1.0)
    p = build_predictor((0, 0), net1(), CsiConfig(1, 0.0, 1, 2, 1, 0.25))
    assert p.correlation == pytest.approx(math.sqrt(0.75), rel=1e-9)


def test_predictor_coefficients_solve_normal_equations():
    csi = CsiConfig(1, 0.3, 1, 2, 6, 0.1)
    R, r = build_covariance((0, 0), net1(), csi)
    w = build_predictor((0, 0), net1(), csi).coefficients
    assert np.allclose(R @ w, r, atol=1e-8)


@given(st.floats(0.0, 0.5), st.integers(1, 15), st.sampled_from([1, 2, 3]), st.sampled_from([0.0, 0.05, 0.3]))
@settings(max_examples=80, deadline=None)
def test_prediction_variance_bounds_and_monotone(fdT, L, delta, err):
    a = build_predictor((0, 0), net1(), CsiConfig(1, fdT, 1, delta, L, err))
    b = build_predictor((0, 0), net1(), CsiConfig(1, fdT, 1, delta, L + 1, err))
    # averaging noisy estimates can push sigma_p^2 above var(h_hat), never above var(h)
    assert 0.0 <= a.prediction_variance <= 1.0
    assert 0.0 <= a.correlation <= 1.0
    assert b.correlation >= a.correlation - 1e-12


def test_estimate_equals_truth_without_error():
    draw = sample_draw(NetworkConfig(3), CsiConfig(3, 0.2, 1, 2, 2, 0.0), block_rng(1, 0), 1000)
    assert np.array_equal(draw.true_t, draw.estimate_t)


def test_static_channel_is_constant():
    draw = sample_draw(NetworkConfig(2), CsiConfig(2, 0.0, 1, 2, 1, 0.0), block_rng(2, 0), 1000)
    assert np.array_equal(draw.current, draw.estimate_t)


def test_history_kept_on_request():
    draw = sample_draw(NetworkConfig(2), CsiConfig(2, 0.2, 1, 2, 3, 0.0), block_rng(3, 0), 10, keep_history=True)
    assert draw.history[1, 0].shape == (10, 3)
    assert np.array_equal(draw.history[1, 0][:, 0], draw.current[:, 1, 0])


@pytest.mark.parametrize("err", [0.0, 0.2])
def test_sampled_variances(err):
    model = ChannelModel(NetworkConfig(1, link_variance=1.5), CsiConfig(1, 0.3, 1, 2, 3, err))
    draw = model.sample(block_rng(4, 0), TRIALS)
    for x, target in ((draw.current, 1.5 - err), (draw.estimate_t, 1.5 - err), (draw.true_t, 1.5)):
        v, se = batch_stat(lambda a: np.mean(np.abs(a) ** 2), x[:, 0, 0])
        assert abs(v - target) < 3 * se


@pytest.mark.parametrize("err", [0.0, 0.2])
def test_outdated_estimate_correlation(err):
    # the estimate at selection vs at transmission: rho_e * rho_f
    model = ChannelModel(net1(), CsiConfig(1, 0.3, 1, 2, 1, err))
    draw = model.sample(block_rng(5, 0), TRIALS)
    c, se = batch_stat(corr, draw.current[:, 0, 0], draw.estimate_t[:, 0, 0])
    expected = (1 - err) * j0_series_oracle(2 * math.pi * 0.3)
    assert abs(c - expected) < 3 * se


@pytest.mark.parametrize("err", [0.0, 0.1])
def test_prediction_correlations_and_error(err):
    model = ChannelModel(net1(), CsiConfig(1, 0.3, 1, 2, 4, err))
    pred = model.predictors[0, 0]
    draw = model.sample(block_rng(6, 0), TRIALS)
    hp, ht, hhat = draw.predicted[:, 0, 0], draw.true_t[:, 0, 0], draw.estimate_t[:, 0, 0]
    c, se = batch_stat(corr, hp, ht)
    assert abs(c - pred.correlation) < 3 * se
    c, se = batch_stat(corr, hp, hhat)
    assert abs(c - pred.estimate_correlation) < 3 * se
    assert pred.estimate_correlation == pytest.approx(math.sqrt(1 - err) * pred.correlation, rel=1e-9)
    mse, se = batch_stat(lambda a, b: np.mean(np.abs(a - b) ** 2), ht, hp)
    assert abs(mse - (1.0 - pred.prediction_variance)) < 3 * se


def test_stats_per_scheme():
    model = ChannelModel(NetworkConfig(2), CsiConfig(2, 0.3, 1, 2, 3, 0.1))
    rho_f = j0_series_oracle(2 * math.pi * 0.3)
    opt = model.stats(SelectionScheme.OPTIMAL)
    out = model.stats("outdated")
    pred = model.stats("predicted")
    assert np.allclose(opt.rho, 1.0)
    assert np.allclose(out.rho, 0.9 * rho_f)
    assert np.allclose(out.sigma_s2, 0.9) and np.allclose(out.sigma_t2, 0.9)
    assert np.allclose(pred.sigma_s2, pred.sigma_p2)
    assert np.allclose(pred.rho, math.sqrt(0.9) * pred.rho_p)
    assert np.all(pred.rho_p <= 1.0)
    assert np.allclose(out.rho_e, 0.9)


def test_sampling_reproducible():
    model = ChannelModel(NetworkConfig(2), CsiConfig(2, 0.3, 1, 2, 2, 0.1))
    a = model.sample(block_rng(9, 3), 50)
    b = model.sample(block_rng(9, 3), 50)
    assert np.array_equal(a.predicted, b.predicted)
