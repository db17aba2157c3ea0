"""Trajectory post-processing: measure curves, event detection, sweeps."""

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .config import ConfigError, RunConfig
from .correlations import discord_oracle, eof, x_concurrence_arrays, x_discord_arrays
from .dynamics import integrate

FLANK_TOL = 1e-9


@dataclass
class MeasureSeries:
    """Per-sample correlation measures along one trajectory."""

    t: np.ndarray
    d: np.ndarray
    e: np.ndarray
    c: np.ndarray
    gap_x_vs_oracle: np.ndarray = None


@dataclass
class EventReport:
    """Detected crossover and sudden-death times with detection metadata."""

    t_cri: float
    t_esd: float
    crossings: list
    esd_threshold: float
    window_end: float


@dataclass
class SweepRow:
    value: float
    report: EventReport
    final_discord: float
    final_eof: float
    error: str


@dataclass
class RunResult:
    trajectory: object
    series: MeasureSeries
    report: EventReport


def measure_series(traj, audit_stride=None):
    """Discord, EoF, and concurrence at every stored sample.

    All three come from the vectorized X-state formulas; non-X samples raise.
    With `audit_stride` set, every audit_stride-th sample is additionally run
    through the measurement-optimization oracle and the absolute discord gap
    stored in gap_x_vs_oracle (NaN at unaudited samples).
    """
    d, _, _ = x_discord_arrays(traj.rho)
    c = x_concurrence_arrays(traj.rho)
    e = eof(c)
    gap = None
    if audit_stride:
        gap = np.full(len(traj.t), np.nan)
        for i in range(0, len(traj.t), int(audit_stride)):
            gap[i] = abs(float(d[i]) - discord_oracle(traj.rho[i]).discord)
    return MeasureSeries(
        t=traj.t, d=np.asarray(d), e=np.asarray(e), c=np.asarray(c),
        gap_x_vs_oracle=gap,
    )


def detect_crossing(s, flank_tol=FLANK_TOL):
    """Sign changes of d - e, ignoring tangential touches.

    A crossing needs |d - e| > flank_tol on both flanks; the crossing time is
    linearly interpolated between the flank samples.  Returns (t_cri, all
    crossings); t_cri is the final sign change, after which one measure stays
    the more robust for the rest of the window, or None without any change.
    """
    g = s.d - s.e
    idx = np.flatnonzero(np.abs(g) > flank_tol)
    crossings = []
    if len(idx) > 1:
        signs = g[idx] > 0
        for m in np.flatnonzero(signs[1:] != signs[:-1]):
            i0, i1 = idx[m], idx[m + 1]
            t0, t1 = s.t[i0], s.t[i1]
            g0, g1 = g[i0], g[i1]
            crossings.append(float(t0 + (t1 - t0) * g0 / (g0 - g1)))
    t_cri = crossings[-1] if crossings else None
    return t_cri, crossings


def detect_esd(s, threshold=1e-5):
    """Time after which the EoF stays below `threshold` for the whole window.

    Sudden death leaves the clamped concurrence at exactly zero, while an
    asymptotic exponential tail stays positive; the threshold alone cannot
    tell them apart on a finite window, so the post-threshold tail must
    contain an exact concurrence zero for an event to be reported.  Revivals
    above the threshold postpone the event past them.  Returns None when the
    EoF never drops out or never reaches the threshold at all.
    """
    above = np.flatnonzero(s.e >= threshold)
    if len(above) == 0:
        return None
    last = int(above[-1])
    if last == len(s.e) - 1:
        return None
    if not np.any(s.c[last + 1 :] == 0.0):
        return None
    e0, e1 = s.e[last], s.e[last + 1]
    t0, t1 = s.t[last], s.t[last + 1]
    return float(t0 + (t1 - t0) * (e0 - threshold) / (e0 - e1))


def event_report(s, esd_threshold=1e-5):
    t_cri, crossings = detect_crossing(s)
    t_esd = detect_esd(s, threshold=esd_threshold)
    return EventReport(
        t_cri=t_cri,
        t_esd=t_esd,
        crossings=crossings,
        esd_threshold=esd_threshold,
        window_end=float(s.t[-1]),
    )


def run_config(cfg):
    """Integrate a RunConfig and extract measures and events."""
    traj = integrate(
        cfg.initial_state_obj(), cfg.reservoir_params(), cfg.integrator_config()
    )
    stride = cfg.oracle_audit_stride
    series = measure_series(traj, audit_stride=stride if stride else None)
    report = event_report(series, esd_threshold=cfg.esd_threshold)
    return RunResult(trajectory=traj, series=series, report=report)


_VARY_FIELDS = {
    "lambda": "lam",
    "lam": "lam",
    "delta": "delta",
    "omega0": "omega0",
    "theta": "theta",
    "dt": "dt",
    "t_max": "t_max",
}


def sweep(base, vary, values):
    """One run per parameter value, failures isolated per row.

    `base` is a RunConfig; `vary` names one of lambda, delta, omega0, theta,
    dt, t_max.  Rows keep the input order; a failing row records the error
    message and leaves its results as None/NaN without stopping the sweep.
    """
    if vary not in _VARY_FIELDS:
        raise ConfigError(f"cannot sweep over {vary!r}; one of {sorted(set(_VARY_FIELDS))}")
    field = _VARY_FIELDS[vary]
    rows = []
    for value in values:
        try:
            cfg = dataclasses.replace(base, **{field: float(value)})
            res = run_config(cfg)
            rows.append(
                SweepRow(
                    value=float(value),
                    report=res.report,
                    final_discord=float(res.series.d[-1]),
                    final_eof=float(res.series.e[-1]),
                    error=None,
                )
            )
        except Exception as exc:  # per-row isolation is the contract here
            rows.append(
                SweepRow(
                    value=float(value),
                    report=None,
                    final_discord=math.nan,
                    final_eof=math.nan,
                    error=f"{type(exc).__name__}: {exc}",
                )
            )
    return rows
