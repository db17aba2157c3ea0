"""Reservoir correlation functions for a Lorentzian coupling spectrum.

Closed forms for the thermal correlation pair (k(t), f(t)) that drives the
time-local generator, plus a numerical quadrature of the underlying spectral
integral used as an independent cross-check.  All frequencies and rates are
expressed in units of the spontaneous rate gamma0, times in 1/gamma0.
"""

import cmath
from dataclasses import dataclass

import numpy as np
from scipy import integrate as _quadlib

# real part of the Bose-factor argument beyond which the occupation underflows
_EXP_CUTOFF = 700.0


@dataclass(frozen=True)
class ReservoirParams:
    """Physical parameters of one reservoir (both atoms see identical copies).

    lam     spectral width lambda (gamma0 units)
    delta   detuning of the spectrum peak from the atomic frequency
    omega0  atomic transition frequency
    theta   dimensionless temperature k_B T / (hbar omega0); 0 means T = 0
    gamma0  decay-rate unit, kept explicit but fixed to 1 in practice
    """

    lam: float
    delta: float = 0.0
    omega0: float = 10.0
    theta: float = 0.0
    gamma0: float = 1.0

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")
        if not self.omega0 > 0:
            raise ValueError(f"omega0 must be positive, got {self.omega0}")
        if self.theta < 0:
            raise ValueError(f"theta must be nonnegative, got {self.theta}")
        if not self.gamma0 > 0:
            raise ValueError(f"gamma0 must be positive, got {self.gamma0}")

    @property
    def is_markovian(self):
        return self.lam > 2.0 * self.gamma0

    def regime(self):
        if self.lam > 2.0 * self.gamma0:
            return "markovian"
        if self.lam < 2.0 * self.gamma0:
            return "non-markovian"
        return "boundary"


@dataclass(frozen=True)
class CorrelationCoefficients:
    k: complex
    f: complex


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to converge within the node budget."""


def thermal_weight(p):
    """Bose occupation evaluated at the complex pole frequency.

    The argument is (omega0 - delta - i lam) / (omega0 theta); at theta = 0
    the occupation is identically zero (dedicated branch, no overflow).
    """
    if p.theta == 0.0:
        return 0.0j
    z = complex(p.omega0 - p.delta, -p.lam) / (p.omega0 * p.theta)
    if z.real > _EXP_CUTOFF:
        return 0.0j
    return 1.0 / (cmath.exp(z) - 1.0)


def _base(t, p):
    # gamma0 lam (1 - e^{(i delta - lam) t}) / (2 (lam - i delta))
    return (
        p.gamma0
        * p.lam
        * (1.0 - cmath.exp(complex(-p.lam, p.delta) * t))
        / (2.0 * complex(p.lam, -p.delta))
    )


def correlation_k(t, p):
    """Thermal correlation coefficient k(t); identically zero at theta = 0."""
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    if p.theta == 0.0:
        return 0.0j
    return _base(t, p) * thermal_weight(p)


def correlation_f(t, p):
    """Correlation coefficient f(t); thermal factor is n_c + 1."""
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    return _base(t, p) * (thermal_weight(p) + 1.0)


def correlation_kf(t, p):
    """Both coefficients at once (shares the common prefactor)."""
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    base = _base(t, p)
    nc = thermal_weight(p)
    return CorrelationCoefficients(k=base * nc, f=base * (nc + 1.0))


def spectral_density(omega, p):
    """Lorentzian coupling spectrum peaked at omega0 - delta with width lam."""
    return (
        p.gamma0
        * p.lam**2
        / (2.0 * np.pi)
        / ((p.omega0 - omega - p.delta) ** 2 + p.lam**2)
    )


def thermal_occupation(omega, p):
    """Real-frequency Bose occupation (zero everywhere at theta = 0)."""
    if p.theta == 0.0:
        return 0.0
    return 1.0 / np.expm1(omega / (p.omega0 * p.theta))


def _time_kernel(omega, t, p):
    # i (1 - e^{i (omega0 - omega) t}) / (omega0 - omega), with the removable
    # singularity at omega = omega0 replaced by its series
    x = p.omega0 - omega
    if abs(x) < 1e-6:
        return t + 0.5j * x * t**2 - x**2 * t**3 / 6.0
    return 1j * (1.0 - cmath.exp(1j * x * t)) / x


def correlation_quadrature(t, p, which="f", lower=None, upper=None, limit=400):
    """Quadrature of the spectral integral behind k(t) or f(t).

    Integrates J(omega) * occupation * kernel over omega, where the
    occupation factor is n(omega) for `which="k"` and n(omega) + 1 for
    `which="f"`.  Returns (value, estimated_error).

    Window defaults.  At theta = 0 the window is centered on the full
    effective support of the Lorentzian, extending below omega = 0 when the
    line is broad; this is what the closed form corresponds to, and
    restricting to physical frequencies [0, inf) leaves a documented
    truncation gap (pass lower=0.0 to measure it).  At theta > 0 the window
    is the physical one, with a small positive floor because the occupation
    diverges as 1/omega at zero frequency and the half-line integral is
    logarithmically divergent there; the reported value refers to that
    floored window.
    """
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    if which not in ("k", "f"):
        raise ValueError(f"which must be 'k' or 'f', got {which!r}")

    reach = 50.0 * p.lam + 50.0 / max(t, 1e-3)
    center = p.omega0 - p.delta
    if upper is None:
        upper = p.omega0 + reach
    if lower is None:
        lower = center - reach if p.theta == 0.0 else 1e-8

    def integrand(omega):
        occ = thermal_occupation(omega, p)
        if which == "f":
            occ = occ + 1.0
        if occ == 0.0:
            return 0.0j
        return spectral_density(omega, p) * occ * _time_kernel(omega, t, p)

    points = [x for x in (center, p.omega0) if lower < x < upper]
    parts = []
    error = 0.0
    for component in (np.real, np.imag):
        res = _quadlib.quad(
            lambda w: float(component(integrand(w))),
            lower,
            upper,
            points=points or None,
            limit=limit,
            full_output=1,
        )
        if len(res) > 3:
            raise QuadratureError(f"quadrature did not converge: {res[3]}")
        parts.append(res[0])
        error += res[1]
    return complex(parts[0], parts[1]), float(error)
