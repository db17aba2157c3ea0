"""Run configuration: validated schema plus the flat key = value file format."""

from dataclasses import dataclass

import numpy as np

from .dynamics import InitialState, IntegratorConfig, initial_density
from .reservoir import ReservoirParams


class ConfigError(ValueError):
    """A run configuration is malformed or inconsistent."""


@dataclass(frozen=True)
class RunConfig:
    """Everything one simulation needs, in gamma0 units.

    `initial_state` is psi, phi, or customx; the latter takes its matrix from
    the x_rho* fields (diagonal entries plus the two coherences, split into
    real and imaginary parts).  Output paths are optional and used by the
    command-line layer only.
    """

    lam: float
    t_max: float
    initial_state: str = "psi"
    delta: float = 0.0
    omega0: float = 10.0
    theta: float = 0.0
    dt: float = 1e-3
    sample_stride: int = None
    esd_threshold: float = 1e-5
    oracle_audit_stride: int = 100
    richardson_check: bool = True
    output_csv: str = None
    output_events: str = None
    output_plot: str = None
    x_rho11: float = None
    x_rho22: float = None
    x_rho33: float = None
    x_rho44: float = None
    x_rho14_re: float = None
    x_rho14_im: float = None
    x_rho23_re: float = None
    x_rho23_im: float = None

    def __post_init__(self):
        try:
            self.reservoir_params()
            self.integrator_config()
            initial_density(self.initial_state_obj())
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if self.esd_threshold <= 0:
            raise ConfigError(f"esd_threshold must be positive, got {self.esd_threshold}")
        if self.oracle_audit_stride is not None and self.oracle_audit_stride < 0:
            raise ConfigError(
                f"oracle_audit_stride must be >= 0, got {self.oracle_audit_stride}"
            )

    def reservoir_params(self):
        return ReservoirParams(
            lam=self.lam, delta=self.delta, omega0=self.omega0, theta=self.theta
        )

    def integrator_config(self):
        return IntegratorConfig(
            t_max=self.t_max,
            dt=self.dt,
            sample_stride=self.sample_stride,
            richardson_check=self.richardson_check,
        )

    _X_FIELDS = (
        "x_rho11", "x_rho22", "x_rho33", "x_rho44",
        "x_rho14_re", "x_rho14_im", "x_rho23_re", "x_rho23_im",
    )

    def initial_state_obj(self):
        if self.initial_state in ("psi", "phi"):
            for name in self._X_FIELDS:
                if getattr(self, name) is not None:
                    raise ValueError(f"{name} requires initial_state = customx")
            return InitialState(self.initial_state)
        if self.initial_state != "customx":
            raise ValueError(f"unknown initial_state {self.initial_state!r}")
        diag = (self.x_rho11, self.x_rho22, self.x_rho33, self.x_rho44)
        if any(v is None for v in diag):
            raise ValueError("customx requires x_rho11 .. x_rho44")
        m = np.zeros((4, 4), dtype=complex)
        m[0, 0], m[1, 1], m[2, 2], m[3, 3] = diag
        m[0, 3] = complex(self.x_rho14_re or 0.0, self.x_rho14_im or 0.0)
        m[3, 0] = np.conj(m[0, 3])
        m[1, 2] = complex(self.x_rho23_re or 0.0, self.x_rho23_im or 0.0)
        m[2, 1] = np.conj(m[1, 2])
        return InitialState.custom_x(m)


def _parse_bool(raw):
    lowered = raw.lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    if lowered in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"expected a boolean, got {raw!r}")


# config-file key -> (RunConfig attribute, parser)
KEY_TABLE = {
    "initial_state": ("initial_state", str),
    "lambda": ("lam", float),
    "delta": ("delta", float),
    "omega0": ("omega0", float),
    "theta": ("theta", float),
    "dt": ("dt", float),
    "t_max": ("t_max", float),
    "sample_stride": ("sample_stride", int),
    "esd_threshold": ("esd_threshold", float),
    "oracle_audit_stride": ("oracle_audit_stride", int),
    "richardson_check": ("richardson_check", _parse_bool),
    "output_csv": ("output_csv", str),
    "output_events": ("output_events", str),
    "output_plot": ("output_plot", str),
    "x_rho11": ("x_rho11", float),
    "x_rho22": ("x_rho22", float),
    "x_rho33": ("x_rho33", float),
    "x_rho44": ("x_rho44", float),
    "x_rho14_re": ("x_rho14_re", float),
    "x_rho14_im": ("x_rho14_im", float),
    "x_rho23_re": ("x_rho23_re", float),
    "x_rho23_im": ("x_rho23_im", float),
}

REQUIRED_KEYS = ("lambda", "t_max")


def parse_config(path):
    """Read a flat key = value file (UTF-8, # comments) into a RunConfig.

    Unknown keys, duplicate keys, unparsable values, and missing required
    keys (lambda, t_max) are all ConfigError.
    """
    try:
        text = open(path, encoding="utf-8").read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc

    kwargs = {}
    seen = set()
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value, got {line!r}")
        key, _, raw_value = line.partition("=")
        key = key.strip()
        raw_value = raw_value.strip()
        if key not in KEY_TABLE:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        if key in seen:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        seen.add(key)
        attr, parser = KEY_TABLE[key]
        try:
            kwargs[attr] = parser(raw_value)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc

    for key in REQUIRED_KEYS:
        if KEY_TABLE[key][0] not in kwargs:
            raise ConfigError(f"{path}: missing required key {key!r}")
    return RunConfig(**kwargs)
