"""Stochastic channel model with outdated, noisy CSI and Wiener prediction.

Each link ``(j, i)`` between source ``j`` and relay ``i`` carries a Rayleigh
fading process with Jakes autocorrelation ``J0(2 pi fdT lag)``. Estimates are
produced independently at every instant from a noisy observation,

    h_hat(t) = rho_e * (h(t) + n(t)),      rho_e = var(h_hat) / var(h),

which is the linear-MMSE estimator and makes ``h = h_hat + e`` with the error
``e`` uncorrelated with ``h_hat``. Under this model the correlation between
the outdated estimate and the estimate at the transmission instant is exactly
``rho_e * J0(2 pi fdT tau')``.

Arrays indexed by link have shape ``(2, N)``: row ``j`` is source ``j + 1``.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from . import linalg
from .selection import SelectionScheme
from .specfun import bessel_j0


def _link_array(value, relay_count, name, dtype=float):
    arr = np.asarray(value, dtype=dtype)
    if arr.ndim == 0:
        arr = np.full((2, relay_count), arr, dtype=dtype)
    elif arr.shape == (relay_count,):
        arr = np.tile(arr, (2, 1))
    if arr.shape != (2, relay_count):
        raise ValueError(f"{name}: expected scalar, ({relay_count},) or (2, {relay_count}); got {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class NetworkConfig:
    """Node count, powers and per-link channel variances."""

    relay_count: int
    source_power: float = 1.0
    relay_power: float = 1.0
    noise_variance: float = 1.0
    link_variance: np.ndarray = 1.0

    def __post_init__(self):
        if int(self.relay_count) != self.relay_count or self.relay_count < 1:
            raise ValueError(f"relay_count must be a positive integer, got {self.relay_count!r}")
        object.__setattr__(self, "relay_count", int(self.relay_count))
        for name in ("source_power", "relay_power", "noise_variance"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        var = _link_array(self.link_variance, self.relay_count, "link_variance")
        if np.any(var <= 0):
            raise ValueError("link_variance must be positive")
        object.__setattr__(self, "link_variance", var)

    @property
    def psi_s(self):
        return self.source_power / self.noise_variance

    @property
    def psi_r(self):
        return self.relay_power / self.noise_variance

    @classmethod
    def symmetric_snr(cls, relay_count, snr_db, link_variance=1.0):
        """Equal source/relay power ``P0`` with ``P0 / sigma_n^2 = 10^(snr_db/10)``."""
        p0 = 10.0 ** (snr_db / 10.0)
        return cls(relay_count, p0, p0, 1.0, link_variance)


@dataclass(frozen=True)
class CsiConfig:
    """Outdating, estimation error and prediction settings per link.

    Attributes
    ----------
    doppler_delay : array (2, N)
        Normalised Doppler ``f_d T`` of each link.
    transmission_lag : int
        Frames between relay selection and data transmission (``tau'``).
    selection_interval : int
        Frames between consecutive selection processes (``Delta``).
    prediction_length : int array (2, N)
        Number of past estimates fed to the predictor (``L``).
    estimation_error_variance : array (2, N)
        Variance of ``h - h_hat``; must be below the link variance.
    """

    relay_count: int
    doppler_delay: np.ndarray = 0.0
    transmission_lag: int = 1
    selection_interval: int = 2
    prediction_length: np.ndarray = 1
    estimation_error_variance: np.ndarray = 0.0

    def __post_init__(self):
        n = int(self.relay_count)
        object.__setattr__(self, "relay_count", n)
        object.__setattr__(self, "doppler_delay", _link_array(self.doppler_delay, n, "doppler_delay"))
        lengths = _link_array(self.prediction_length, n, "prediction_length", dtype=np.int64)
        if np.any(lengths < 1):
            raise ValueError("prediction_length must be >= 1")
        object.__setattr__(self, "prediction_length", lengths)
        err = _link_array(self.estimation_error_variance, n, "estimation_error_variance")
        if np.any(err < 0):
            raise ValueError("estimation_error_variance must be non-negative")
        object.__setattr__(self, "estimation_error_variance", err)
        if np.any(self.doppler_delay < 0) or not np.all(np.isfinite(self.doppler_delay)):
            raise ValueError("doppler_delay must be finite and non-negative")
        for name in ("transmission_lag", "selection_interval"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
            object.__setattr__(self, name, int(v))


@dataclass(frozen=True)
class LinkDerivedStats:
    """Per-link second-order statistics, shape ``(2, N)`` each.

    ``sigma_s2``, ``sigma_t2`` and ``rho`` are the scheme-facing quantities:
    variance of the selection variable, variance of the transmission-time
    estimate, and the correlation coefficient between the two.
    """

    sigma_h2: np.ndarray
    sigma_hat2: np.ndarray
    rho_e: np.ndarray
    rho_f: np.ndarray
    sigma_p2: np.ndarray
    rho_p: np.ndarray
    sigma_s2: np.ndarray
    sigma_t2: np.ndarray
    rho: np.ndarray


@dataclass(frozen=True)
class WienerPredictor:
    coefficients: np.ndarray
    prediction_variance: float
    correlation: float
    # correlation between the prediction and the transmission-time estimate
    estimate_correlation: float


@dataclass
class ChannelDraw:
    """Joint realisation of every link for a batch of trials.

    All arrays have shape ``(trials, 2, N)``. ``history`` is only filled when
    requested and is then a list over links of ``(trials, L)`` arrays ordered
    ``tau, tau - Delta, ...``.
    """

    current: np.ndarray
    estimate_t: np.ndarray
    true_t: np.ndarray
    predicted: np.ndarray = None
    history: dict = field(default=None, repr=False)

    @property
    def trials(self):
        return self.current.shape[0]


def _validate_pair(net, csi):
    if net.relay_count != csi.relay_count:
        raise ValueError("network and CSI configs disagree on relay_count")
    if np.any(csi.estimation_error_variance >= net.link_variance):
        raise ValueError("estimation_error_variance must be below link_variance on every link")


def _instants(csi, j, i):
    # history instants relative to tau, then the transmission instant
    L = int(csi.prediction_length[j, i])
    hist = -csi.selection_interval * np.arange(L, dtype=float)
    return np.append(hist, float(csi.transmission_lag))


def _jakes(fdT, times):
    lags = np.abs(times[:, None] - times[None, :])
    return np.vectorize(lambda lag: bessel_j0(2.0 * math.pi * fdT * lag))(lags)


def build_covariance(link, net, csi):
    """Covariance of the estimate history and its cross-covariance with ``h_t``.

    Returns
    -------
    R : (L, L) complex array
        ``E{h~ h~^H}`` for ``h~ = [h_hat(tau), h_hat(tau - Delta), ...]``.
    r : (L,) complex array
        ``E{h~ h_t^*}`` with ``h_t`` the true channel at ``tau + tau'``.
    """
    _validate_pair(net, csi)
    j, i = link
    var_h = net.link_variance[j, i]
    var_hat = var_h - csi.estimation_error_variance[j, i]
    rho_e = var_hat / var_h
    times = _instants(csi, j, i)
    J = _jakes(csi.doppler_delay[j, i], times)
    L = len(times) - 1
    R = rho_e * var_hat * J[:L, :L]
    R[np.diag_indices(L)] = var_hat
    r = var_hat * J[:L, L]
    return R.astype(complex), r.astype(complex)


def build_predictor(link, net, csi):
    """Wiener predictor of the true transmission-time channel of one link."""
    R, r = build_covariance(link, net, csi)
    j, i = link
    var_h = net.link_variance[j, i]
    var_hat = var_h - csi.estimation_error_variance[j, i]
    rho_e = var_hat / var_h
    Rr = linalg.ridge(R)
    w = linalg.solve_hermitian(Rr, r)
    sigma_p2 = min(linalg.quadratic_form(Rr, r), var_h)
    rho_p = min(1.0, math.sqrt(sigma_p2 / var_h))
    # cov(h~, h_hat_t) = rho_e * r because estimation noise is white in time
    var_pred = float(np.real(np.vdot(w, R @ w)))
    if var_pred > 0:
        est_corr = abs(np.vdot(w, rho_e * r)) / math.sqrt(var_pred * var_hat)
    else:
        est_corr = 0.0
    return WienerPredictor(w, sigma_p2, rho_p, min(1.0, float(est_corr)))


class ChannelModel:
    """Immutable bundle of sampling factors and predictors for one config."""

    def __init__(self, net, csi):
        _validate_pair(net, csi)
        self.net = net
        self.csi = csi
        n = net.relay_count
        self.sigma_h2 = net.link_variance
        self.sigma_hat2 = net.link_variance - csi.estimation_error_variance
        self.rho_e = self.sigma_hat2 / self.sigma_h2
        self.rho_f = np.vectorize(lambda f: bessel_j0(2.0 * math.pi * f * csi.transmission_lag))(
            csi.doppler_delay
        )
        self._factors = {}
        self.predictors = {}
        for j in range(2):
            for i in range(n):
                times = _instants(csi, j, i)
                J = _jakes(csi.doppler_delay[j, i], times)
                self._factors[j, i] = linalg.cholesky_psd(self.sigma_h2[j, i] * J)
                self.predictors[j, i] = build_predictor((j, i), net, csi)

    def stats(self, scheme):
        """Scheme-facing :class:`LinkDerivedStats`."""
        scheme = SelectionScheme(scheme)
        n = self.net.relay_count
        sigma_p2 = np.array([[self.predictors[j, i].prediction_variance for i in range(n)] for j in range(2)])
        rho_p = np.array([[self.predictors[j, i].correlation for i in range(n)] for j in range(2)])
        if scheme is SelectionScheme.OPTIMAL:
            sigma_s2, rho = self.sigma_hat2, np.ones_like(self.sigma_hat2)
        elif scheme is SelectionScheme.OUTDATED:
            sigma_s2, rho = self.sigma_hat2, self.rho_e * self.rho_f
        else:
            sigma_s2 = sigma_p2
            rho = np.array([[self.predictors[j, i].estimate_correlation for i in range(n)] for j in range(2)])
        return LinkDerivedStats(
            sigma_h2=self.sigma_h2,
            sigma_hat2=self.sigma_hat2,
            rho_e=self.rho_e,
            rho_f=self.rho_f,
            sigma_p2=sigma_p2,
            rho_p=rho_p,
            sigma_s2=np.asarray(sigma_s2, dtype=float),
            sigma_t2=self.sigma_hat2,
            rho=np.asarray(rho, dtype=float),
        )

    def sample(self, rng, trials, keep_history=False):
        """Draw `trials` joint channel realisations using generator `rng`."""
        n = self.net.relay_count
        shape = (trials, 2, n)
        current = np.empty(shape, dtype=complex)
        estimate_t = np.empty(shape, dtype=complex)
        true_t = np.empty(shape, dtype=complex)
        predicted = np.empty(shape, dtype=complex)
        history = {} if keep_history else None
        for j in range(2):
            for i in range(n):
                low = self._factors[j, i]
                dim = low.shape[0]
                z = rng.standard_normal((2, trials, dim))
                white = (z[0] + 1j * z[1]) * math.sqrt(0.5)
                h = white @ low.T
                rho_e = self.rho_e[j, i]
                if rho_e < 1.0:
                    noise_var = self.sigma_h2[j, i] * (1.0 / rho_e - 1.0)
                    z = rng.standard_normal((2, trials, dim))
                    noise = (z[0] + 1j * z[1]) * math.sqrt(0.5 * noise_var)
                    est = rho_e * (h + noise)
                else:
                    est = h
                hist = est[:, :-1]
                current[:, j, i] = hist[:, 0]
                estimate_t[:, j, i] = est[:, -1]
                true_t[:, j, i] = h[:, -1]
                w = self.predictors[j, i].coefficients
                predicted[:, j, i] = hist @ w.conj()
                if keep_history:
                    history[j, i] = hist
        return ChannelDraw(current, estimate_t, true_t, predicted, history)


def sample_draw(net, csi, rng, trials=1, keep_history=False):
    """Convenience wrapper building a :class:`ChannelModel` and sampling it."""
    return ChannelModel(net, csi).sample(rng, trials, keep_history)
