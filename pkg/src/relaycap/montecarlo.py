"""Monte-Carlo estimation of ergodic capacity under relay selection.

Trials are processed in fixed-size blocks. Block ``b`` draws from a generator
seeded by ``SeedSequence(base_seed, spawn_key=(b,))``, so results depend only
on the seed and the trial count, never on the number of worker threads.
Block moments are reduced in block order.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import math
import os

import numpy as np

from .channel import ChannelModel, CsiConfig, NetworkConfig
from .selection import SelectionScheme, select_relay
from .sinr import SinrParams, bound_form_capacity, instantaneous_capacity, sinr

BLOCK_SIZE = 1 << 16
HISTOGRAM_BINS = 200
THREADS_ENV = "RELAYCAP_THREADS"


def default_threads():
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass(frozen=True)
class ExperimentSpec:
    network: NetworkConfig
    csi: CsiConfig
    scheme: SelectionScheme = SelectionScheme.OUTDATED
    trials: int = 100_000
    base_seed: int = 0
    true_capacity: bool = True
    bound_form: bool = False
    histogram: bool = False
    histogram_bins: int = HISTOGRAM_BINS

    def __post_init__(self):
        object.__setattr__(self, "scheme", SelectionScheme(self.scheme))
        if int(self.trials) != self.trials or self.trials < 1:
            raise ValueError("trials must be a positive integer")
        if self.histogram and self.histogram_bins < 16:
            raise ValueError("histogram needs at least 16 bins")
        if not 0 <= self.base_seed < 2**64:
            raise ValueError("base_seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class CapacityResult:
    """Sample mean in bits/s/Hz with its standard error."""

    mean: float
    standard_error: float
    trials: int
    direction_means: tuple = (math.nan, math.nan)

    @property
    def stddev(self):
        return self.standard_error * math.sqrt(self.trials)


@dataclass(frozen=True)
class HistogramResult:
    edges: np.ndarray
    densities: np.ndarray
    samples: int

    @property
    def centers(self):
        return 0.5 * (self.edges[1:] + self.edges[:-1])

    @property
    def widths(self):
        return np.diff(self.edges)


@dataclass
class MonteCarloResult:
    capacity: CapacityResult = None
    bound_form: CapacityResult = None
    histograms: tuple = None
    extras: dict = field(default_factory=dict)


def block_rng(base_seed, block):
    """Generator for trial block `block`; a pure function of its arguments."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(base_seed, spawn_key=(block,))))


def _blocks(trials):
    starts = range(0, trials, BLOCK_SIZE)
    return [(b, min(BLOCK_SIZE, trials - s)) for b, s in enumerate(starts)]


def _map_blocks(fn, trials, threads):
    blocks = _blocks(trials)
    threads = default_threads() if threads is None else max(1, int(threads))
    if threads == 1 or len(blocks) == 1:
        return [fn(b, n) for b, n in blocks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda bn: fn(*bn), blocks))


def selected_gains(draw, k):
    """``(|h_hat_t,1k|^2, |h_hat_t,2k|^2)`` on the selected relays."""
    rows = np.arange(draw.trials)
    x = draw.estimate_t[rows, :, k]
    g = x.real**2 + x.imag**2
    return g[:, 0], g[:, 1]


def _moments(x):
    return np.array([x.size, x.sum(), np.dot(x, x)])


def _result(m, extra=()):
    n, s, ss = m
    mean = s / n
    var = max(ss / n - mean * mean, 0.0) * n / max(n - 1, 1)
    return CapacityResult(float(mean), float(math.sqrt(var / n)), int(n), tuple(extra))


def run(spec, threads=None):
    """Run the experiment described by `spec`.

    Returns
    -------
    MonteCarloResult
        ``capacity`` (true ergodic capacity), ``bound_form`` (expectation of
        the lower-bound integrand on the same draws) and ``histograms`` (one
        :class:`HistogramResult` per direction) as requested by `spec`.
    """
    model = ChannelModel(spec.network, spec.csi)
    params = SinrParams.from_configs(spec.network, spec.csi)

    def block(b, n):
        rng = block_rng(spec.base_seed, b)
        draw = model.sample(rng, n)
        k = select_relay(draw, spec.scheme)
        g1, g2 = selected_gains(draw, k)
        out = {}
        if spec.true_capacity:
            s1 = sinr(g1, g2, params, 0, k)
            s2 = sinr(g2, g1, params, 1, k)
            out["cap"] = _moments(instantaneous_capacity(s1, s2))
            out["dir"] = np.array([np.sum(0.5 * np.log2(1 + s1)), np.sum(0.5 * np.log2(1 + s2))])
        if spec.bound_form:
            out["bound"] = _moments(bound_form_capacity(g1, g2, params, k))
        if spec.histogram:
            out["gains"] = (g1, g2)
        return out

    parts = _map_blocks(block, spec.trials, threads)
    result = MonteCarloResult()
    if spec.true_capacity:
        m = np.sum([p["cap"] for p in parts], axis=0)
        d = np.sum([p["dir"] for p in parts], axis=0) / spec.trials
        result.capacity = _result(m, (float(d[0]), float(d[1])))
    if spec.bound_form:
        result.bound_form = _result(np.sum([p["bound"] for p in parts], axis=0))
    if spec.histogram:
        hists = []
        for j in range(2):
            g = np.concatenate([p["gains"][j] for p in parts])
            hists.append(histogram(g, spec.histogram_bins))
        result.histograms = tuple(hists)
    return result


def histogram(samples, bins=HISTOGRAM_BINS, quantile=0.999):
    """Density histogram on ``[0, quantile(samples)]``, normalised over the range."""
    samples = np.asarray(samples, dtype=float)
    top = float(np.quantile(samples, quantile))
    dens, edges = np.histogram(samples, bins=bins, range=(0.0, top), density=True)
    return HistogramResult(edges, dens, samples.size)


@dataclass(frozen=True)
class RatioResult:
    value: float
    standard_error: float
    trials: int
    reference: CapacityResult
    candidate: CapacityResult


def normalized_difference(spec, reference=SelectionScheme.OPTIMAL, threads=None):
    """``(C_ref - C_spec) / C_ref`` estimated on common random numbers.

    Both schemes select on the same channel draws; the standard error uses
    the delta method on the ratio of means.
    """

    model = ChannelModel(spec.network, spec.csi)
    params = SinrParams.from_configs(spec.network, spec.csi)
    reference = SelectionScheme(reference)

    def block(b, n):
        draw = model.sample(block_rng(spec.base_seed, b), n)
        caps = []
        for scheme in (reference, spec.scheme):
            k = select_relay(draw, scheme)
            g1, g2 = selected_gains(draw, k)
            caps.append(instantaneous_capacity(sinr(g1, g2, params, 0, k), sinr(g2, g1, params, 1, k)))
        o, c = caps
        d = o - c
        return np.array([n, o.sum(), c.sum(), d.sum(), np.dot(o, o), np.dot(c, c), np.dot(d, d), np.dot(d, o)])

    n, so, sc, sd, soo, scc, sdd, sdo = np.sum(_map_blocks(block, spec.trials, threads), axis=0)
    mo, mc, md = so / n, sc / n, sd / n
    var_o = soo / n - mo * mo
    var_c = scc / n - mc * mc
    var_d = sdd / n - md * md
    cov_do = sdo / n - md * mo
    ratio = md / mo
    var_ratio = max(var_d - 2 * ratio * cov_do + ratio**2 * var_o, 0.0) / (mo * mo * n)
    return RatioResult(
        float(ratio),
        float(math.sqrt(var_ratio)),
        int(n),
        CapacityResult(float(mo), float(math.sqrt(max(var_o, 0) / n)), int(n)),
        CapacityResult(float(mc), float(math.sqrt(max(var_c, 0) / n)), int(n)),
    )
