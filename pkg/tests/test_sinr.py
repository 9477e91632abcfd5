import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from relaycap.channel import CsiConfig, NetworkConfig
from relaycap.sinr import SinrParams, bound_form_capacity, instantaneous_capacity, min_approx_bound_check, sinr

gain = st.floats(0.0, 50.0)
snr = st.floats(0.1, 1e3)
errv = st.floats(0.0, 0.5)


def sinr_reference(g_own, g_other, psi_s, psi_r, e_own, e_other):
    """Second transcription, written directly from the constant definitions."""
    ts = psi_s + psi_s * psi_r * e_own
    tr = psi_r + 3 * psi_s * psi_r * e_own + psi_s * psi_r * e_other
    c = 2 * psi_r * psi_s * e_own**2 + psi_r * psi_s * e_other**2 + psi_r * e_own + 1
    return psi_r * psi_s * g_own * g_other / ((ts + tr) * g_own + ts * g_other + c)


def params(psi_s, psi_r, e1, e2, n=1):
    return SinrParams.build(psi_s, psi_r, np.array([[e1] * n, [e2] * n]))


def test_zero_gain():
    p = params(10, 10, 0.1, 0.1)
    assert sinr(0.0, 5.0, p, 0, 0) == 0.0
    assert sinr(5.0, 0.0, p, 1, 0) == 0.0


def test_hand_value():
    assert sinr(1.0, 1.0, params(1, 1, 0, 0), 0, 0) == pytest.approx(0.25)


def test_negative_gain_rejected():
    with pytest.raises(ValueError):
        sinr(-1.0, 1.0, params(1, 1, 0, 0), 0, 0)


@given(gain, gain, snr, snr, errv, errv, st.integers(0, 1))
def test_dual_transcription(g1, g2, ps, pr, e1, e2, j):
    p = params(ps, pr, e1, e2)
    e = (e1, e2)
    expected = sinr_reference(g1, g2, ps, pr, e[j], e[1 - j])
    assert sinr(g1, g2, p, j, 0) == pytest.approx(expected, rel=1e-12, abs=1e-300)


@given(gain, gain, st.floats(1e-3, 5.0), snr, snr, errv)
def test_monotone_in_each_gain(g1, g2, dg, ps, pr, e):
    p = params(ps, pr, e, e)
    assert sinr(g1 + dg, g2, p, 0, 0) >= sinr(g1, g2, p, 0, 0)
    assert sinr(g1, g2 + dg, p, 0, 0) >= sinr(g1, g2, p, 0, 0)


@given(gain, gain, snr, snr)
def test_perfect_csi_reduction(g1, g2, ps, pr):
    p = params(ps, pr, 0, 0)
    expected = pr * ps * g1 * g2 / ((ps + pr) * g1 + ps * g2 + 1)
    assert sinr(g1, g2, p, 0, 0) == expected or sinr(g1, g2, p, 0, 0) == pytest.approx(expected, rel=1e-15)
    assert np.all(p.m == 1.0)
    assert np.allclose(p.n, (ps + pr) / pr, rtol=1e-15)
    assert np.all(p.c == 1.0)


@given(snr, snr, errv, errv)
def test_constants_dominate_perfect_csi(ps, pr, e1, e2):
    p = params(ps, pr, e1, e2)
    assert np.all(p.tilde_s >= ps) and np.all(p.tilde_r >= pr) and np.all(p.c >= 1)


def test_from_configs():
    net = NetworkConfig(2, 4.0, 8.0, 2.0)
    csi = CsiConfig(2, estimation_error_variance=[[0.1, 0.2], [0.3, 0.4]])
    p = SinrParams.from_configs(net, csi)
    assert p.psi_s == 2.0 and p.psi_r == 4.0
    assert p.tilde_r[0, 1] == pytest.approx(4 + 3 * 8 * 0.2 + 8 * 0.4)


@pytest.mark.parametrize("g, expected", [((0, 0), 0.0), ((1, 1), 1.0), ((3, 1), 1.5)])
def test_capacity_examples(g, expected):
    assert instantaneous_capacity(*g) == pytest.approx(expected)


@given(gain, gain, snr, snr, errv)
def test_bound_form_below_true_capacity(g1, g2, ps, pr, e):
    # replacing c by m n lowers each SINR whenever m n >= c, which holds for
    # equal error variances on the two links of a relay
    p = params(ps, pr, e, e)
    assert np.all(p.m * p.n >= p.c)
    true = instantaneous_capacity(sinr(g1, g2, p, 0, 0), sinr(g2, g1, p, 1, 0))
    assert bound_form_capacity(g1, g2, p, 0) <= true + 1e-12


def test_bound_form_can_exceed_with_unequal_errors():
    p = params(1.0, 8.0, 0.5, 0.0)
    assert p.m[1, 0] * p.n[1, 0] < p.c[1, 0]
    true = instantaneous_capacity(sinr(1.0, 1.0, p, 0, 0), sinr(1.0, 1.0, p, 1, 0))
    assert bound_form_capacity(1.0, 1.0, p, 0) > true


def test_bound_form_value():
    p = params(10.0, 5.0, 0.0, 0.0)
    g1, g2 = 1.3, 0.4
    m, n = 1.0, 15.0 / 5.0
    direct = 0.0
    for near, far in ((g1, g2), (g2, g1)):
        direct += math.log((5 * near + m) * (10 * far + n) / (15 * near + 10 * far + m * n))
    assert bound_form_capacity(g1, g2, p, 0) == pytest.approx(direct / (2 * math.log(2)), rel=1e-14)


def test_min_approx_zero_gain():
    prod, sur = min_approx_bound_check(0.0, 3.0, params(10, 10, 0.1, 0.1))
    assert prod == 0.0 and sur == 0.0


@given(gain, gain, snr, snr, errv, errv)
def test_min_approx_is_upper_bound(g1, g2, ps, pr, e1, e2):
    prod, sur = min_approx_bound_check(g1, g2, params(ps, pr, e1, e2))
    assert np.isfinite(prod) and np.isfinite(sur)
    assert prod <= sur * (1 + 1e-12)


def test_min_approx_ratio_settles_for_large_symmetric_gains():
    p = params(10, 10, 0.0, 0.0)
    ratios = [np.divide(*min_approx_bound_check(g, g, p)) for g in (1e3, 1e4, 1e5)]
    assert ratios[-1] == pytest.approx(ratios[-2], rel=1e-3)
