"""End-to-end SINR of two-way amplify-and-forward relaying and the sum rate."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SinrParams:
    """SNRs and the error-inflated constants of the SINR expression.

    Per-direction arrays have shape ``(2, N)``; entry ``[j, i]`` belongs to the
    SINR received at source ``j`` via relay ``i``.
    """

    psi_s: float
    psi_r: float
    tilde_s: np.ndarray
    tilde_r: np.ndarray
    c: np.ndarray

    @property
    def m(self):
        return self.tilde_s / self.psi_s

    @property
    def n(self):
        return (self.tilde_s + self.tilde_r) / self.psi_r

    @classmethod
    def from_configs(cls, net, csi):
        return cls.build(net.psi_s, net.psi_r, csi.estimation_error_variance)

    @classmethod
    def build(cls, psi_s, psi_r, error_variance):
        """Constants from SNRs and the ``(2, N)`` estimation-error variances."""
        e = np.asarray(error_variance, dtype=float)
        e_bar = e[::-1]  # opposite direction, same relay
        ps, pr = float(psi_s), float(psi_r)
        tilde_s = ps + ps * pr * e
        tilde_r = pr + 3.0 * ps * pr * e + ps * pr * e_bar
        c = 2.0 * pr * ps * e**2 + pr * ps * e_bar**2 + pr * e + 1.0
        return cls(ps, pr, tilde_s, tilde_r, c)


def sinr(gain_near, gain_far, params, j, relay):
    """SINR at source `j` through `relay`.

    Parameters
    ----------
    gain_near : float or array
        ``|h_hat_t|^2`` of the receiving source's own link.
    gain_far : float or array
        ``|h_hat_t|^2`` of the other source's link to the same relay.
    params : SinrParams
    j : int
        Receiving source, 0 or 1.
    relay : int or int array
        Relay index, broadcast against the gains.
    """
    g1 = np.asarray(gain_near, dtype=float)
    g2 = np.asarray(gain_far, dtype=float)
    if np.any(g1 < 0) or np.any(g2 < 0):
        raise ValueError("channel gains must be non-negative")
    ts = params.tilde_s[j, relay]
    tr = params.tilde_r[j, relay]
    c = params.c[j, relay]
    num = params.psi_r * params.psi_s * g1 * g2
    return num / ((ts + tr) * g1 + ts * g2 + c)


def instantaneous_capacity(gamma_1, gamma_2):
    """Two-phase sum rate ``0.5 log2(1 + g1) + 0.5 log2(1 + g2)`` in bits/s/Hz."""
    return 0.5 * np.log2(1.0 + np.asarray(gamma_1)) + 0.5 * np.log2(1.0 + np.asarray(gamma_2))


def bound_form_capacity(g1, g2, params, relay):
    """Integrand of the capacity lower bound with ``c`` replaced by ``m n``.

    Returns the per-trial value in bits/s/Hz; its expectation over the
    selected-relay gains is what the closed form evaluates.
    """
    g1 = np.asarray(g1, dtype=float)
    g2 = np.asarray(g2, dtype=float)
    total = 0.0
    for j, (near, far) in enumerate(((g1, g2), (g2, g1))):
        ts = params.tilde_s[j, relay]
        tr = params.tilde_r[j, relay]
        m = params.m[j, relay]
        n = params.n[j, relay]
        ratio_log = (
            np.log(params.psi_r * near + m)
            + np.log(params.psi_s * far + n)
            - np.log((ts + tr) * near + ts * far + m * n)
        )
        total = total + ratio_log
    return total / (2.0 * np.log(2.0))


def min_approx_bound_check(gain_1, gain_2, params, relay=0):
    """Compare the SINR product against its max-min surrogate.

    Returns ``(gamma_1 * gamma_2, (psi_r psi_s)^2 min(gain_1, gain_2)^2 /
    (tilde_s_1 tilde_s_2))``. The second entry is an upper bound on the first
    (``xy / (ax + by) <= min(x, y) / b`` for ``a >= b``), so the ratio shows how
    well ranking relays by the weaker link tracks the SINR product. Nothing is
    decided on it.
    """
    g1 = np.asarray(gain_1, dtype=float)
    g2 = np.asarray(gain_2, dtype=float)
    prod = sinr(g1, g2, params, 0, relay) * sinr(g2, g1, params, 1, relay)
    ts0 = params.tilde_s[0, relay]
    ts1 = params.tilde_s[1, relay]
    surrogate = (params.psi_r * params.psi_s) ** 2 * np.minimum(g1, g2) ** 2 / (ts0 * ts1)
    return prod, surrogate
