"""Closed-form distribution of the selected gain and the capacity lower bound.

The density of the transmission-time gain on the selected relay is a signed
mixture of exponentials, one pair of terms per relay ``i`` and per subset
``A`` of the other relays (inclusion-exclusion over "every other relay has a
smaller max-min metric"). Every expectation needed by the bound then reduces
to :func:`~relaycap.specfun.phi` and :func:`~relaycap.specfun.theta`.
"""

from dataclasses import dataclass
from itertools import combinations
import math

import numpy as np

from .specfun import phi, theta

ENUMERATION_CAP = 16


class EnumerationCapError(ValueError):
    """Relay count too large for subset enumeration."""


@dataclass(frozen=True)
class PdfTermSet:
    """Terms of the selected-gain density for one direction.

    One entry per ``(i, A_t)`` tuple (or per ``t`` on the symmetric path, with
    ``multiplicity`` counting the collapsed tuples). The density is

        sum sign * multiplicity * weight * rate * (exp(-rate z) + zeta exp(-xi rate z))
    """

    direction: int
    relay: np.ndarray
    size: np.ndarray
    sign: np.ndarray
    weight: np.ndarray
    rate: np.ndarray
    xi: np.ndarray
    zeta: np.ndarray
    multiplicity: np.ndarray

    def __len__(self):
        return len(self.relay)

    def mixture(self):
        """The density as an :class:`ExpMixture`."""
        base = self.sign * self.multiplicity * self.weight * self.rate
        keep = self.zeta != 0.0
        coef = np.concatenate([base, base[keep] * self.zeta[keep]])
        rate = np.concatenate([self.rate, self.xi[keep] * self.rate[keep]])
        return ExpMixture(coef, rate).compact()


@dataclass(frozen=True)
class ExpMixture:
    """``f(z) = sum_k coef[k] * exp(-rate[k] * z)`` on ``z >= 0``."""

    coef: np.ndarray
    rate: np.ndarray

    def compact(self, rtol=1e-13):
        """Merge terms whose rates agree to `rtol`."""
        order = np.argsort(self.rate, kind="stable")
        rates = self.rate[order]
        coefs = self.coef[order]
        out_r, out_c = [], []
        group = [0]
        for k in range(1, len(rates) + 1):
            if k < len(rates) and rates[k] - rates[group[0]] <= rtol * rates[group[0]]:
                group.append(k)
                continue
            out_r.append(rates[group[0]])
            out_c.append(math.fsum(coefs[group]))
            group = [k]
        return ExpMixture(np.array(out_c), np.array(out_r))

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        return np.sum(self.coef * np.exp(-np.multiply.outer(z, self.rate)), axis=-1)

    def total_mass(self):
        return math.fsum(self.coef / self.rate)

    def expected_log(self, scale, shift):
        """``E[ln(scale * X + shift)]`` for ``X`` with this density."""
        return math.fsum(c / scale * phi(shift, r / scale) for c, r in zip(self.coef, self.rate))


@dataclass(frozen=True)
class CapacityBreakdown:
    """Accumulators in nats; ``capacity`` in bits/s/Hz."""

    t1: float
    t2: float
    t3: float
    t4: float

    @property
    def capacity(self):
        return (self.t1 + self.t2 - self.t3 - self.t4) / (2.0 * math.log(2.0))


def _combined(sigma_s2):
    return sigma_s2[0] * sigma_s2[1] / (sigma_s2[0] + sigma_s2[1])


def _tuple_terms(j, i, subset_sum, s2, comb, rho):
    jb = 1 - j
    weight = 1.0 / (1.0 + s2[jb, i] * subset_sum)
    r2 = rho[j, i] ** 2
    denom = r2 / s2[j, i] + (1.0 - r2) / comb[i] + (1.0 - r2) * subset_sum
    xi = (1.0 / comb[i] + subset_sum) / denom
    zeta = (s2[jb, i] / s2[j, i]) * subset_sum / denom
    return weight, xi, zeta


def _check_stats(stats, relay_count):
    s2 = np.asarray(stats.sigma_s2, dtype=float)
    t2 = np.asarray(stats.sigma_t2, dtype=float)
    if relay_count is None:
        relay_count = s2.shape[1]
    if relay_count < 1:
        raise ValueError("relay_count must be >= 1")
    if relay_count > ENUMERATION_CAP:
        raise EnumerationCapError(f"relay_count {relay_count} exceeds enumeration cap {ENUMERATION_CAP}")
    if s2.shape != (2, relay_count) or t2.shape != (2, relay_count):
        raise ValueError("stats arrays must have shape (2, relay_count)")
    if np.any(s2 <= 0) or np.any(t2 <= 0):
        raise ValueError("selection and transmission variances must be positive")
    return s2, t2, np.asarray(stats.rho, dtype=float), relay_count


def enumerate_terms(j, stats, relay_count=None):
    """All ``N 2^(N-1)`` tuples ``(i, A_t)`` of the selected-gain density of direction `j`."""
    s2, t2, rho, n = _check_stats(stats, relay_count)
    comb = _combined(s2)
    inv = 1.0 / comb
    rows = []
    for i in range(n):
        others = [l for l in range(n) if l != i]
        for t in range(n):
            for subset in combinations(others, t):
                ssum = math.fsum(inv[list(subset)]) if subset else 0.0
                w, xi, zeta = _tuple_terms(j, i, ssum, s2, comb, rho)
                rows.append((i, t, (-1.0) ** t, w, 1.0 / t2[j, i], xi, zeta, 1.0))
    return _pack(j, rows)


def is_symmetric(stats):
    """True when every relay has identical statistics in both directions."""
    arrs = [np.asarray(a, dtype=float) for a in (stats.sigma_s2, stats.sigma_t2, stats.rho)]
    return all(np.all(a == a[:, :1]) for a in arrs) and np.all(np.abs(arrs[2]) == np.abs(arrs[2][:, :1]))


def enumerate_terms_symmetric(j, stats, relay_count=None):
    """Binomial fast path: all subsets of a given size contribute equally."""
    s2, t2, rho, n = _check_stats(stats, relay_count)
    if not is_symmetric(stats):
        raise ValueError("symmetric fast path needs identical statistics on every relay")
    comb = _combined(s2)
    rows = []
    for t in range(n):
        ssum = t / comb[0]
        w, xi, zeta = _tuple_terms(j, 0, ssum, s2, comb, rho)
        rows.append((0, t, (-1.0) ** t, w, 1.0 / t2[j, 0], xi, zeta, float(n * math.comb(n - 1, t))))
    return _pack(j, rows)


def _pack(j, rows):
    cols = list(zip(*rows))
    return PdfTermSet(
        direction=j,
        relay=np.array(cols[0], dtype=int),
        size=np.array(cols[1], dtype=int),
        sign=np.array(cols[2]),
        weight=np.array(cols[3]),
        rate=np.array(cols[4]),
        xi=np.array(cols[5]),
        zeta=np.array(cols[6]),
        multiplicity=np.array(cols[7]),
    )


def terms_for(j, stats, relay_count=None, fast=True):
    """Symmetric fast path when applicable, general enumeration otherwise."""
    if fast and is_symmetric(stats):
        return enumerate_terms_symmetric(j, stats, relay_count)
    return enumerate_terms(j, stats, relay_count)


def selected_gain_pdf(z, terms):
    """Density of ``|h_hat_t|^2`` on the selected relay, evaluated at `z`."""
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise ValueError("z must be non-negative")
    return terms.mixture()(z)


def expected_log_sum(mix_a, scale_a, mix_b, scale_b, shift, perturb=0.0):
    """``E[ln(scale_a X + scale_b Y + shift)]`` for independent ``X ~ mix_a``, ``Y ~ mix_b``.

    `perturb` multiplies the largest-magnitude contribution by ``1 + perturb``;
    it exists only so validation can check that it detects a broken term.
    """
    parts = []
    for ca, ra in zip(mix_a.coef, mix_a.rate):
        for cb, rb in zip(mix_b.coef, mix_b.rate):
            parts.append((ca / scale_a) * (cb / scale_b) * theta(shift, ra / scale_a, rb / scale_b))
    if perturb:
        k = int(np.argmax(np.abs(parts)))
        parts[k] *= 1.0 + perturb
    return math.fsum(parts)


def _uniform_row(arr, name):
    arr = np.asarray(arr, dtype=float)
    if not np.allclose(arr, arr[:, :1], rtol=1e-12, atol=0.0):
        raise ValueError(f"closed-form bound needs {name} common to all relays in each direction")
    return arr[:, 0]


def capacity_lower_bound(params, stats, relay_count=None, fast=True, perturb_theta=0.0):
    """Closed-form lower bound on the ergodic sum capacity.

    Parameters
    ----------
    params : SinrParams
        SNRs and error-inflated constants. The estimation-error variance must
        be common to all relays within each direction.
    stats : LinkDerivedStats
        Scheme-facing statistics (``sigma_s2``, ``sigma_t2``, ``rho``).
    relay_count : int, optional
    fast : bool
        Use the binomial path when every relay is statistically identical.
    perturb_theta : float
        Validation hook, see :func:`expected_log_sum`.

    Returns
    -------
    CapacityBreakdown
    """
    ts = _uniform_row(params.tilde_s, "tilde psi_s")
    tr = _uniform_row(params.tilde_r, "tilde psi_r")
    m = ts / params.psi_s
    n = (ts + tr) / params.psi_r
    mix = [terms_for(j, stats, relay_count, fast).mixture() for j in range(2)]
    ps, pr = params.psi_s, params.psi_r
    t1 = mix[0].expected_log(pr, m[0]) + mix[0].expected_log(ps, n[1])
    t2 = mix[1].expected_log(pr, m[1]) + mix[1].expected_log(ps, n[0])
    t3 = expected_log_sum(mix[0], ts[0] + tr[0], mix[1], ts[0], m[0] * n[0], perturb_theta)
    t4 = expected_log_sum(mix[1], ts[1] + tr[1], mix[0], ts[1], m[1] * n[1])
    return CapacityBreakdown(t1, t2, t3, t4)
