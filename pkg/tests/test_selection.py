import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from relaycap.channel import ChannelDraw, ChannelModel, CsiConfig, NetworkConfig
from relaycap.montecarlo import block_rng
from relaycap.selection import SelectionScheme, select_relay, selection_metric


def draw_from(current, estimate=None, predicted=None):
    current = np.asarray(current, dtype=complex)
    estimate = current if estimate is None else np.asarray(estimate, dtype=complex)
    return ChannelDraw(current, estimate, estimate, predicted)


def test_single_relay_always_zero():
    model = ChannelModel(NetworkConfig(1), CsiConfig(1, 0.3, 1, 2, 2))
    draw = model.sample(block_rng(0, 0), 100)
    for scheme in SelectionScheme:
        assert np.all(select_relay(draw, scheme) == 0)


def test_hand_example():
    # |h|^2 = (4, 9) on relay 0 and (1, 16) on relay 1: mins (4, 1)
    cur = np.array([[[2.0, 1.0], [3.0, 4.0]]])
    assert select_relay(draw_from(cur), "outdated")[0] == 0
    assert np.allclose(selection_metric(draw_from(cur), "outdated"), [[4.0, 1.0]])


def test_scheme_picks_its_own_channel():
    cur = np.array([[[1.0, 2.0], [1.0, 2.0]]])
    est = np.array([[[2.0, 1.0], [2.0, 1.0]]])
    d = draw_from(cur, est, predicted=cur)
    assert select_relay(d, SelectionScheme.OUTDATED)[0] == 1
    assert select_relay(d, SelectionScheme.OPTIMAL)[0] == 0
    assert select_relay(d, SelectionScheme.PREDICTED)[0] == 1


def test_ties_break_low():
    cur = np.ones((1, 2, 3))
    assert select_relay(draw_from(cur), "outdated")[0] == 0


def test_predicted_requires_prediction():
    with pytest.raises(ValueError):
        select_relay(draw_from(np.ones((1, 2, 2))), "predicted")


def test_unknown_scheme():
    with pytest.raises(ValueError):
        select_relay(draw_from(np.ones((1, 2, 2))), "psychic")


gains = arrays(np.float64, (5, 2, 4), elements=st.floats(1e-3, 1e3))


@given(gains, st.floats(1e-3, 1e3))
def test_scale_invariance(g, c):
    d1 = draw_from(np.sqrt(g))
    d2 = draw_from(np.sqrt(g) * c)
    assert np.array_equal(select_relay(d1, "outdated"), select_relay(d2, "outdated"))


@given(gains)
def test_selected_is_maximum(g):
    d = draw_from(np.sqrt(g))
    metric = selection_metric(d, "outdated")
    k = select_relay(d, "outdated")
    assert np.all(metric[np.arange(5), k] == metric.max(axis=1))


def test_static_channel_all_schemes_agree():
    model = ChannelModel(NetworkConfig(4), CsiConfig(4, 0.0, 1, 2, 3, 0.0))
    draw = model.sample(block_rng(1, 0), 20_000)
    picks = [select_relay(draw, s) for s in SelectionScheme]
    assert all(np.array_equal(picks[0], p) for p in picks[1:])


def test_single_tap_prediction_is_outdated_selection():
    model = ChannelModel(NetworkConfig(4), CsiConfig(4, 0.3, 1, 2, 1, 0.0))
    draw = model.sample(block_rng(2, 0), 20_000)
    assert np.array_equal(select_relay(draw, "predicted"), select_relay(draw, "outdated"))
