"""Sweep configuration files (YAML) and their validation.

A config describes one figure-like sweep: a swept axis, a grid, a list of
series (each overriding some point parameters) and the outputs to compute.
See ``presets/`` for complete examples; the schema is documented in the
README.
"""

from dataclasses import asdict, dataclass, replace
import math

import yaml

from .channel import CsiConfig, NetworkConfig
from .selection import SelectionScheme

AXES = ("snr_db", "fdT", "L")
OUTPUTS = ("mc_capacity", "analytic_bound", "normalized_difference")
POINT_KEYS = ("relay_count", "snr_db", "link_variance", "fdT", "transmission_lag",
              "selection_interval", "L", "estimation_error", "scheme")
SNR_INVERSE = "snr_inverse"


class ConfigError(ValueError):
    """Invalid sweep configuration; `where` names the field and line if known."""

    def __init__(self, message, where=None):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


@dataclass(frozen=True)
class PointParams:
    """Parameters of one evaluation point in the symmetric-power convention.

    ``p_s = p_r = P0`` and ``sigma_n^2 = 1`` so that ``SNR = P0``.
    ``estimation_error`` is a variance or ``"snr_inverse"`` for ``1 / SNR``.
    """

    relay_count: int = 4
    snr_db: float = 10.0
    link_variance: float = 1.0
    fdT: float = 0.0
    transmission_lag: int = 1
    selection_interval: int = 2
    L: int = 1
    estimation_error: object = 0.0
    scheme: str = "outdated"

    def error_variance(self):
        if self.estimation_error == SNR_INVERSE:
            return 10.0 ** (-self.snr_db / 10.0)
        return float(self.estimation_error)

    def network(self):
        return NetworkConfig.symmetric_snr(self.relay_count, self.snr_db, self.link_variance)

    def csi(self):
        return CsiConfig(
            self.relay_count,
            doppler_delay=self.fdT,
            transmission_lag=self.transmission_lag,
            selection_interval=self.selection_interval,
            prediction_length=self.L,
            estimation_error_variance=self.error_variance(),
        )


@dataclass(frozen=True)
class SweepConfig:
    name: str
    axis: str
    grid: tuple
    base: PointParams
    series: tuple = ({},)
    outputs: tuple = ("mc_capacity", "analytic_bound")
    trials: int = 1_000_000
    seed: int = 12345
    plot: bool = True

    def points(self):
        """Yield ``(series_overrides, axis_value, PointParams)`` in output order."""
        for overrides in self.series:
            clean = {k: v for k, v in overrides.items() if k != "label"}
            for value in self.grid:
                yield overrides, value, replace(self.base, **clean, **{self.axis: value})

    def series_keys(self):
        keys = []
        for s in self.series:
            for k in s:
                if k not in keys and k != self.axis:
                    keys.append(k)
        return keys

    def to_dict(self):
        return {
            "name": self.name,
            "axis": self.axis,
            "grid": list(self.grid),
            "series": [dict(s) for s in self.series],
            "outputs": list(self.outputs),
            "trials": self.trials,
            "seed": self.seed,
            "plot": self.plot,
            "point": asdict(self.base),
        }

    def dump(self):
        return yaml.safe_dump(self.to_dict(), sort_keys=False)


def _line_index(text):
    """Map dotted key paths to 1-based line numbers."""
    lines = {}

    def walk(node, path):
        if isinstance(node, yaml.MappingNode):
            for k, v in node.value:
                p = f"{path}.{k.value}" if path else str(k.value)
                lines[p] = k.start_mark.line + 1
                walk(v, p)
        elif isinstance(node, yaml.SequenceNode):
            for i, v in enumerate(node.value):
                p = f"{path}[{i}]"
                lines[p] = v.start_mark.line + 1
                walk(v, p)

    try:
        walk(yaml.compose(text), "")
    except yaml.YAMLError:
        pass
    return lines


def _num(value, where, kind=float, positive=False, nonneg=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {value!r}", where)
    if kind is int and int(value) != value:
        raise ConfigError(f"expected an integer, got {value!r}", where)
    value = kind(value)
    if not math.isfinite(value):
        raise ConfigError("must be finite", where)
    if positive and value <= 0:
        raise ConfigError("must be positive", where)
    if nonneg and value < 0:
        raise ConfigError("must be non-negative", where)
    return value


def _point_value(key, value, where):
    if key in ("relay_count", "transmission_lag", "selection_interval", "L"):
        return _num(value, where, int, positive=True)
    if key in ("link_variance",):
        return _num(value, where, positive=True)
    if key == "fdT":
        return _num(value, where, nonneg=True)
    if key == "snr_db":
        return _num(value, where)
    if key == "estimation_error":
        if value == SNR_INVERSE:
            return value
        return _num(value, where, nonneg=True)
    if key == "scheme":
        try:
            return SelectionScheme(value).value
        except ValueError:
            raise ConfigError(f"unknown scheme {value!r}; use one of "
                              f"{[s.value for s in SelectionScheme]}", where) from None
    raise ConfigError(f"unknown parameter {key!r}", where)


def parse_config(text):
    """Parse and validate YAML `text` into a :class:`SweepConfig`."""
    lines = _line_index(text)

    def at(path):
        return f"{path} (line {lines[path]})" if path in lines else path

    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"not valid YAML: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError("top level must be a mapping")
    known = {"name", "axis", "grid", "series", "outputs", "trials", "seed", "plot", "point"}
    for k in raw:
        if k not in known:
            raise ConfigError(f"unknown key {k!r}", at(k))

    axis = raw.get("axis")
    if axis not in AXES:
        raise ConfigError(f"axis must be one of {AXES}, got {axis!r}", at("axis"))
    grid = raw.get("grid")
    if not isinstance(grid, list) or not grid:
        raise ConfigError("grid must be a non-empty list", at("grid"))
    grid = tuple(_point_value(axis, v, at(f"grid[{i}]")) for i, v in enumerate(grid))
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ConfigError("grid must be strictly increasing", at("grid"))

    point = raw.get("point", {}) or {}
    if not isinstance(point, dict):
        raise ConfigError("point must be a mapping", at("point"))
    base = PointParams(**{k: _point_value(k, v, at(f"point.{k}")) for k, v in point.items()})

    series = raw.get("series", [{}]) or [{}]
    if not isinstance(series, list):
        raise ConfigError("series must be a list of mappings", at("series"))
    parsed_series = []
    for i, s in enumerate(series):
        if not isinstance(s, dict):
            raise ConfigError("series entry must be a mapping", at(f"series[{i}]"))
        entry = {}
        for k, v in s.items():
            where = at(f"series[{i}].{k}")
            if k == "label":
                entry[k] = str(v)
            elif k == axis:
                raise ConfigError(f"series cannot override the swept axis {axis!r}", where)
            else:
                entry[k] = _point_value(k, v, where)
        parsed_series.append(entry)

    outputs = raw.get("outputs", ["mc_capacity", "analytic_bound"])
    if not isinstance(outputs, list) or not outputs:
        raise ConfigError("outputs must be a non-empty list", at("outputs"))
    for i, o in enumerate(outputs):
        if o not in OUTPUTS:
            raise ConfigError(f"unknown output {o!r}; use {OUTPUTS}", at(f"outputs[{i}]"))

    trials = _num(raw.get("trials", 1_000_000), at("trials"), int, positive=True)
    seed = _num(raw.get("seed", 12345), at("seed"), int, nonneg=True)
    plot = raw.get("plot", True)
    if not isinstance(plot, bool):
        raise ConfigError("plot must be true or false", at("plot"))
    name = str(raw.get("name", "sweep"))

    cfg = SweepConfig(name, axis, grid, base, tuple(parsed_series), tuple(outputs), trials, seed, plot)
    for overrides, value, p in cfg.points():
        try:
            p.network()
            p.csi()
            if p.error_variance() >= p.link_variance:
                raise ValueError("estimation error variance must be below the link variance")
        except ValueError as exc:
            raise ConfigError(f"invalid point {cfg.axis}={value} {overrides or ''}: {exc}") from None
    return cfg


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def with_overrides(cfg, **changes):
    return replace(cfg, **{k: v for k, v in changes.items() if v is not None})


__all__ = ["ConfigError", "PointParams", "SweepConfig", "parse_config", "load_config", "with_overrides"]
