"""Figure rendering from sweep CSVs.

Two figure kinds:

* error-vs-t: per-method mean gate error against the decay time on a
  log-log grid, with a one-sigma band, and the channel's unitarity error
  on a right-hand axis. A grid point belongs to a method's curve only if
  every one of its records succeeded; curves are never interpolated
  across failed points.
* error-vs-n: mean gate error against the qubit count, one panel per
  fixed decay time, one curve per (method, target pattern).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .errors import EmptySelection
from .reader import SweepRow, apply_filters, read_rows

KIND_ERROR_VS_T = "error-vs-t"
KIND_ERROR_VS_N = "error-vs-n"

_METHOD_STYLE = {
    "mixed": dict(color="tab:orange", marker="o"),
    "pure": dict(color="tab:blue", marker="s"),
    "choi": dict(color="tab:green", marker="^"),
}

_FLOOR = 1e-16  # keeps exact zeros drawable on log axes


@dataclass(frozen=True)
class FigureSpec:
    input_csv: str
    figure_kind: str
    output: str
    filters: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CurveCoverage:
    """Which grid values a curve actually spans, for tests and reporting."""

    points: dict          # curve label -> tuple of covered grid values
    output: str

    def span(self, label) -> int:
        return len(self.points.get(label, ()))


def _mean_sigma(values):
    mean = float(np.mean(values))
    sigma = float(np.std(values, ddof=1)) if len(values) > 1 else 0.0
    return mean, sigma


def _covered_points(rows: list[SweepRow], key) -> dict:
    """Group rows by key; a group is covered only if every record is ok."""
    grouped = {}
    for r in rows:
        grouped.setdefault(key(r), []).append(r)
    covered = {}
    for value, group in grouped.items():
        if all(r.ok for r in group):
            covered[value] = [r.gate_error for r in group]
    return covered


def plot_error_vs_t(spec: FigureSpec) -> CurveCoverage:
    rows = apply_filters(read_rows(spec.input_csv), spec.filters)
    if not rows:
        raise EmptySelection("no records match the filters")
    methods = sorted({r.method for r in rows})
    grid = sorted({r.time_constant for r in rows})

    coverage = {}
    curves = {}
    for method in methods:
        mrows = [r for r in rows if r.method == method]
        covered = _covered_points(mrows, key=lambda r: r.time_constant)
        if not covered:
            continue
        coverage[method] = tuple(sorted(covered))
        curves[method] = {
            t: _mean_sigma(errors) for t, errors in covered.items()
        }
    if not any(len(pts) >= 2 for pts in coverage.values()):
        raise EmptySelection(
            "need at least one method with ok records at two or more grid points")

    fig, ax = plt.subplots(figsize=(7.0, 4.6))
    for method, points in curves.items():
        xs = np.array(grid, dtype=float)
        means = np.array([points.get(t, (np.nan, 0.0))[0] for t in grid])
        sigmas = np.array([points.get(t, (np.nan, 0.0))[1] for t in grid])
        means = np.where(np.isnan(means), np.nan, np.maximum(means, _FLOOR))
        style = _METHOD_STYLE.get(method, {})
        ax.plot(xs, means, label=method, **style)
        lower = np.maximum(means - sigmas, means * 1e-3)
        ax.fill_between(xs, lower, means + sigmas,
                        alpha=0.25, color=style.get("color"))
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("decay time (units of gate time)")
    ax.set_ylabel("gate error 1 - F_G")
    ax.legend(loc="lower left")

    unit = {}
    for t in grid:
        uvals = [r.unitarity_error for r in rows
                 if r.time_constant == t and r.ok and r.unitarity_error is not None]
        if uvals:
            unit[t] = max(float(np.mean(uvals)), _FLOOR)
    if unit:
        right = ax.twinx()
        xs = sorted(unit)
        right.plot(xs, [unit[t] for t in xs], color="tab:red", linestyle="--",
                   label="unitarity error")
        right.set_yscale("log")
        right.set_ylabel("unitarity error 1 - u", color="tab:red")
        right.tick_params(axis="y", labelcolor="tab:red")

    fig.tight_layout()
    fig.savefig(spec.output, metadata={"Software": "channelplots"})
    plt.close(fig)
    return CurveCoverage(points=coverage, output=spec.output)


def plot_error_vs_n(spec: FigureSpec) -> CurveCoverage:
    filters = dict(spec.filters)
    fixed_times = filters.pop("time_constant", None)
    rows = apply_filters(read_rows(spec.input_csv), filters)
    if fixed_times is not None:
        wanted = {float(v) for v in str(fixed_times).split(",")}
        rows = [r for r in rows if r.time_constant in wanted]
    if not rows:
        raise EmptySelection("no records match the filters")
    times = sorted({r.time_constant for r in rows})
    n_values = sorted({r.n_qubits for r in rows})
    if len(n_values) < 2:
        raise EmptySelection(
            f"error-vs-n needs records at two or more qubit counts, "
            f"found n_qubits = {n_values}")

    fig, axes = plt.subplots(
        1, len(times), figsize=(4.2 * len(times), 4.2),
        sharey=True, squeeze=False)
    coverage = {}
    for ax, t in zip(axes[0], times):
        trows = [r for r in rows if r.time_constant == t]
        labels = sorted({(r.method, r.target_pattern) for r in trows})
        for method, pattern in labels:
            crows = [r for r in trows
                     if r.method == method and r.target_pattern == pattern]
            covered = _covered_points(crows, key=lambda r: r.n_qubits)
            if not covered:
                continue
            label = f"{method} [{pattern}]"
            coverage[(t, label)] = tuple(sorted(covered))
            xs = sorted(covered)
            means = [max(_mean_sigma(covered[n])[0], _FLOOR) for n in xs]
            sigmas = [_mean_sigma(covered[n])[1] for n in xs]
            style = _METHOD_STYLE.get(method, {})
            ax.errorbar(xs, means, yerr=sigmas, label=label, capsize=3,
                        **style)
        ax.set_xscale("linear")
        ax.set_yscale("log")
        ax.set_xticks(n_values)
        ax.set_xlabel("number of qubits")
        ax.set_title(f"decay time = {t:g}")
        ax.legend(fontsize=8)
    axes[0][0].set_ylabel("gate error 1 - F_G")
    fig.tight_layout()
    fig.savefig(spec.output, metadata={"Software": "channelplots"})
    plt.close(fig)
    return CurveCoverage(points=coverage, output=spec.output)


def render(spec: FigureSpec) -> CurveCoverage:
    if spec.figure_kind == KIND_ERROR_VS_T:
        return plot_error_vs_t(spec)
    if spec.figure_kind == KIND_ERROR_VS_N:
        return plot_error_vs_n(spec)
    raise EmptySelection(f"unknown figure kind {spec.figure_kind!r}")
