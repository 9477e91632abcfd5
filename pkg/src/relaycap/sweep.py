"""Evaluate a :class:`~relaycap.config.SweepConfig` into CSV rows and plots."""

import csv
import io
import os

from . import analytic, montecarlo
from .channel import ChannelModel
from .selection import SelectionScheme
from .sinr import SinrParams
from .svgplot import line_chart


def fmt(x):
    if isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    return f"{x:.12g}"


def analytic_bound(p, scheme=None):
    """Closed-form lower bound (bits/s/Hz) at point `p`."""
    net, csi = p.network(), p.csi()
    stats = ChannelModel(net, csi).stats(scheme or p.scheme)
    return analytic.capacity_lower_bound(SinrParams.from_configs(net, csi), stats, p.relay_count).capacity


def experiment(p, trials, seed, **targets):
    return montecarlo.ExperimentSpec(p.network(), p.csi(), p.scheme, trials, seed, **targets)


def columns(cfg):
    cols = [cfg.axis] + cfg.series_keys()
    for out in cfg.outputs:
        if out == "mc_capacity":
            cols += ["mc_capacity", "mc_stderr"]
        elif out == "analytic_bound":
            cols += ["analytic_bound"]
        else:
            cols += ["normalized_difference", "nd_stderr", "analytic_normalized_difference"]
    return cols


def evaluate(cfg, threads=None, progress=None):
    """Compute every row of the sweep; returns ``(columns, rows)``."""
    cols = columns(cfg)
    rows = []
    for overrides, value, p in cfg.points():
        row = {cfg.axis: value}
        for k in cfg.series_keys():
            row[k] = overrides.get(k, getattr(p, k, ""))
        for out in cfg.outputs:
            if out == "mc_capacity":
                res = montecarlo.run(experiment(p, cfg.trials, cfg.seed), threads).capacity
                row["mc_capacity"] = res.mean
                row["mc_stderr"] = res.standard_error
            elif out == "analytic_bound":
                row["analytic_bound"] = analytic_bound(p)
            else:
                res = montecarlo.normalized_difference(experiment(p, cfg.trials, cfg.seed), threads=threads)
                row["normalized_difference"] = res.value
                row["nd_stderr"] = res.standard_error
                opt = analytic_bound(p, SelectionScheme.OPTIMAL)
                row["analytic_normalized_difference"] = (opt - analytic_bound(p)) / opt
        rows.append(row)
        if progress:
            progress(row)
    return cols, rows


def to_csv(cols, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for row in rows:
        writer.writerow([fmt(row.get(c, "")) for c in cols])
    return buf.getvalue()


def _series_label(cfg, overrides):
    if "label" in overrides:
        return overrides["label"]
    parts = [f"{k}={fmt(v)}" for k, v in overrides.items()]
    return ", ".join(parts) or cfg.name


def plot(cfg, rows):
    """SVG line chart of every numeric output against the swept axis."""
    keys = [k for k in ("mc_capacity", "analytic_bound", "normalized_difference") if any(k in r for r in rows)]
    series = []
    n = len(cfg.grid)
    for s_idx, overrides in enumerate(cfg.series):
        chunk = rows[s_idx * n:(s_idx + 1) * n]
        for key in keys:
            xs = [r[cfg.axis] for r in chunk]
            ys = [r[key] for r in chunk]
            style = "markers" if key in ("mc_capacity", "normalized_difference") else "line"
            series.append((f"{_series_label(cfg, overrides)} [{key}]", xs, ys, style, s_idx))
    ylabel = "normalized difference" if keys == ["normalized_difference"] else "capacity (bits/s/Hz)"
    xlabel = {"snr_db": "SNR (dB)", "fdT": "f_d T", "L": "prediction length L"}[cfg.axis]
    return line_chart(series, title=cfg.name, xlabel=xlabel, ylabel=ylabel)


def write_outputs(cfg, cols, rows, out_dir):
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    csv_path = os.path.join(out_dir, f"{cfg.name}.csv")
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(to_csv(cols, rows))
    paths.append(csv_path)
    cfg_path = os.path.join(out_dir, f"{cfg.name}.effective.yaml")
    with open(cfg_path, "w", encoding="utf-8") as fh:
        fh.write(cfg.dump())
    paths.append(cfg_path)
    if cfg.plot:
        svg_path = os.path.join(out_dir, f"{cfg.name}.svg")
        with open(svg_path, "w", encoding="utf-8") as fh:
            fh.write(plot(cfg, rows))
        paths.append(svg_path)
    return paths
