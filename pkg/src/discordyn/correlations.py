"""Discord, concurrence, and entanglement of formation for two-qubit states.

Two routes to discord are provided.  `discord_x` evaluates the analytic
X-state expression (minimum of two measurement branches Q1, Q2) and is
vectorized over stacked states so whole trajectories evaluate in one call.
`discord_oracle` makes no structural assumption: it optimizes the classical
correlation over all rank-1 projective measurements on atom B with a coarse
angle grid plus golden-section refinement, and serves as the reference the
X-state shortcut is audited against.  Entropies are in bits (log base 2).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .qmat import (
    SIGMA_Y,
    general_eigenvalues,
    hermitian_eigen,
    hermiticity_defect,
    tensor2,
)
from .dynamics import X_MASK

LN2 = math.log(2.0)
_YY = tensor2(SIGMA_Y, SIGMA_Y)


class NonXStateError(ValueError):
    """Input density matrix has weight outside the X positions."""


@dataclass
class CorrelationMeasures:
    """Bundle of correlation quantities; fields a route does not compute stay None."""

    discord: float
    eof: float = None
    concurrence: float = None
    mutual_information: float = None
    classical_correlation: float = None
    q1: float = None
    q2: float = None


@dataclass(frozen=True)
class MeasurementBasis:
    """Rank-1 projective measurement on atom B, parameterized by two angles."""

    theta: float
    phi: float

    def vectors(self):
        ct = math.cos(self.theta / 2.0)
        st = math.sin(self.theta / 2.0)
        ph = complex(math.cos(self.phi), math.sin(self.phi))
        v = np.array([ct, ph * st], dtype=complex)
        w = np.array([st, -ph * ct], dtype=complex)
        return v, w

    def projectors(self):
        v, w = self.vectors()
        return np.outer(v, np.conj(v)), np.outer(w, np.conj(w))


def binary_entropy(x):
    """h(x) = -x log2 x - (1-x) log2(1-x), with 0 log 0 = 0; vectorized."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < -1e-12) or np.any(arr > 1.0 + 1e-12):
        raise ValueError(f"binary_entropy argument outside [0, 1]: {x}")
    arr = np.clip(arr, 0.0, 1.0)
    h = -(xlogy(arr, arr) + xlogy(1.0 - arr, 1.0 - arr)) / LN2 + 0.0  # kill -0.0
    return float(h) if h.ndim == 0 else h


def von_neumann_entropy(rho):
    """-Tr(rho log2 rho) for a 2x2 or 4x4 density matrix.

    Eigenvalues in [-1e-4, 0) are treated as integrator noise and clamped
    to zero; anything more negative is rejected.
    """
    m = np.asarray(rho, dtype=complex)
    if m.shape not in ((2, 2), (4, 4)):
        raise ValueError(f"expected a 2x2 or 4x4 matrix, got shape {m.shape}")
    tr = abs(np.trace(m).real - 1.0)
    if tr > 1e-9:
        raise ValueError(f"trace off by {tr:.3e}")
    w = np.array([ev for ev, _ in hermitian_eigen(m)])
    if w.min() < -1e-4:
        raise ValueError(f"eigenvalue {w.min():.3e} below the -1e-4 floor")
    w = np.clip(w, 0.0, None)
    return float(-np.sum(xlogy(w, w)) / LN2)


def x_components(rho, tol=1e-10):
    """Split X-shaped states into populations and coherences.

    Accepts a single 4x4 matrix or any stack (..., 4, 4); raises
    NonXStateError when weight outside the X positions exceeds `tol`.
    """
    r = np.asarray(rho, dtype=complex)
    if r.shape[-2:] != (4, 4):
        raise ValueError(f"expected (..., 4, 4), got shape {r.shape}")
    off = np.abs(r[..., ~X_MASK])
    worst = float(off.max()) if off.size else 0.0
    if worst > tol:
        raise NonXStateError(f"off-X weight {worst:.3e} exceeds {tol:.1e}")
    diag = np.real(np.einsum("...ii->...i", r))
    return diag[..., 0], diag[..., 1], diag[..., 2], diag[..., 3], r[..., 0, 3], r[..., 1, 2]


def _sum_lam_log(*lams):
    total = 0.0
    for lam in lams:
        lam = np.clip(lam, 0.0, None)
        total = total + xlogy(lam, lam)
    return total / LN2


def x_discord_arrays(rho):
    """Vectorized X-state discord; returns (discord, q1, q2) arrays."""
    p11, p22, p33, p44, c14, c23 = x_components(rho)
    z14 = np.abs(c14)
    z23 = np.abs(c23)

    # eigenvalues of the two 2x2 blocks of the X matrix
    mid_o = (p11 + p44) / 2.0
    rad_o = np.sqrt(((p11 - p44) / 2.0) ** 2 + z14**2)
    mid_i = (p22 + p33) / 2.0
    rad_i = np.sqrt(((p22 - p33) / 2.0) ** 2 + z23**2)
    lamlog = _sum_lam_log(mid_o + rad_o, mid_o - rad_o, mid_i + rad_i, mid_i - rad_i)

    h1 = binary_entropy(np.clip(p11 + p33, 0.0, 1.0))
    tau = 0.5 * (
        1.0 + np.sqrt((1.0 - 2.0 * (p33 + p44)) ** 2 + 4.0 * (z14 + z23) ** 2)
    )
    d1 = binary_entropy(np.clip(tau, 0.0, 1.0))
    d2 = -_sum_lam_log(p11, p22, p33, p44) - h1
    q1 = h1 + lamlog + d1
    q2 = h1 + lamlog + d2
    disc = np.clip(np.minimum(q1, q2), 0.0, 1.0)
    return disc, q1, q2


def discord_x(rho):
    """Analytic X-state discord for one state; see x_discord_arrays for stacks."""
    disc, q1, q2 = x_discord_arrays(np.asarray(rho, dtype=complex))
    return CorrelationMeasures(discord=float(disc), q1=float(q1), q2=float(q2))


def x_concurrence_arrays(rho):
    """Vectorized X-state concurrence."""
    p11, p22, p33, p44, c14, c23 = x_components(rho)
    via_outer = np.abs(c14) - np.sqrt(np.clip(p22 * p33, 0.0, None))
    via_inner = np.abs(c23) - np.sqrt(np.clip(p11 * p44, 0.0, None))
    return np.minimum(2.0 * np.maximum(0.0, np.maximum(via_outer, via_inner)), 1.0)


def concurrence_x(rho):
    return float(x_concurrence_arrays(np.asarray(rho, dtype=complex)))


def _validate_density(rho):
    m = np.asarray(rho, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    defect = hermiticity_defect(m)
    if defect > 1e-10:
        raise ValueError(f"not Hermitian: defect {defect:.3e}")
    tr = abs(np.trace(m).real - 1.0)
    if tr > 1e-9:
        raise ValueError(f"trace off by {tr:.3e}")
    return m


def concurrence_general(rho):
    """Wootters concurrence via the spin-flipped product, no X assumption."""
    m = _validate_density(rho)
    w = general_eigenvalues(m @ _YY @ np.conj(m) @ _YY)
    if np.max(np.abs(w.imag)) > 1e-6:
        raise ValueError(
            f"spin-flip spectrum has imaginary part {np.max(np.abs(w.imag)):.3e}"
        )
    re = w.real
    if re.min() < -1e-8:
        raise ValueError(f"spin-flip eigenvalue {re.min():.3e} below -1e-8")
    s = np.sort(np.sqrt(np.clip(re, 0.0, None)))[::-1]
    return float(max(0.0, s[0] - s[1] - s[2] - s[3]))


def eof(c):
    """Entanglement of formation from a concurrence value; vectorized."""
    arr = np.asarray(c, dtype=float)
    if np.any(arr < -1e-12) or np.any(arr > 1.0 + 1e-12):
        raise ValueError(f"concurrence outside [0, 1]: {c}")
    arr = np.clip(arr, 0.0, 1.0)
    val = binary_entropy((1.0 + np.sqrt(1.0 - arr**2)) / 2.0)
    return float(val) if np.ndim(val) == 0 else val


def _reduced_a(rho4d):
    return np.einsum("abcb->ac", rho4d)


def _reduced_b(rho4d):
    return np.einsum("abad->bd", rho4d)


def _entropy2_sub(p, det):
    """p * S(rho/p) for subnormalized 2x2 blocks given trace p and det; vectorized."""
    disc = np.sqrt(np.clip(p**2 - 4.0 * det, 0.0, None))
    mu1 = np.clip((p + disc) / 2.0, 0.0, None)
    mu2 = np.clip((p - disc) / 2.0, 0.0, None)
    safe_p = np.where(p > 1e-12, p, 1.0)
    nu1 = np.clip(mu1 / safe_p, 0.0, 1.0)
    nu2 = np.clip(mu2 / safe_p, 0.0, 1.0)
    ent = -(xlogy(nu1, nu1) + xlogy(nu2, nu2)) / LN2
    return np.where(p > 1e-12, p * ent, 0.0)


def _measurement_vectors(thetas, phis):
    ct = np.cos(thetas / 2.0)[:, None]
    st = np.sin(thetas / 2.0)[:, None]
    ph = np.exp(1j * phis)[None, :]
    v = np.stack([np.broadcast_to(ct + 0j, ct.shape[:1] + ph.shape[1:]), ph * st], axis=-1)
    w = np.stack([np.broadcast_to(st + 0j, st.shape[:1] + ph.shape[1:]), -ph * ct], axis=-1)
    return v, w


def _cond_entropy_grid(rho4d, thetas, phis):
    """Average post-measurement entropy of atom A over a (theta, phi) grid."""
    v, w = _measurement_vectors(thetas, phis)
    total = 0.0
    for m in (v, w):
        sub = np.einsum("abcd,xyb,xyd->xyac", rho4d, np.conj(m), m)
        p = np.real(sub[..., 0, 0] + sub[..., 1, 1])
        det = np.real(
            sub[..., 0, 0] * sub[..., 1, 1] - sub[..., 0, 1] * sub[..., 1, 0]
        )
        total = total + _entropy2_sub(p, det)
    return total


def _cond_entropy_point(rho4d, theta, phi):
    basis = MeasurementBasis(theta, phi)
    total = 0.0
    for m in basis.vectors():
        sub = np.einsum("abcd,b,d->ac", rho4d, np.conj(m), m)
        p = float(np.real(sub[0, 0] + sub[1, 1]))
        if p < 1e-12:
            continue  # zero-probability outcome contributes nothing
        det = float(np.real(sub[0, 0] * sub[1, 1] - sub[0, 1] * sub[1, 0]))
        total += float(_entropy2_sub(np.array(p), np.array(det)))
    return total


def _golden_min(fn, lo, hi, iters=40):
    gr = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - gr * (b - a)
    d = a + gr * (b - a)
    fc = fn(c)
    fd = fn(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - gr * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + gr * (b - a)
            fd = fn(d)
    return (c, fc) if fc < fd else (d, fd)


def discord_oracle(rho, grid=(64, 128)):
    """Measurement-optimized discord with no X-structure assumption.

    Mutual information minus the classical correlation, the latter maximized
    over rank-1 projective measurements on atom B: coarse (theta, phi) grid
    of `grid` points, then golden-section refinement of each angle (40
    iterations) inside the winning cell.  Grid ties resolve to the lowest
    (theta, phi) pair.  Fills every field of CorrelationMeasures except the
    X-route branches q1/q2.
    """
    m = _validate_density(rho)
    rho4d = m.reshape(2, 2, 2, 2)
    s_a = von_neumann_entropy(_reduced_a(rho4d))
    s_b = von_neumann_entropy(_reduced_b(rho4d))
    s_ab = von_neumann_entropy(m)
    mutual = s_a + s_b - s_ab

    ntheta, nphi = grid
    thetas = np.linspace(0.0, math.pi, ntheta)
    phis = np.linspace(0.0, 2.0 * math.pi, nphi, endpoint=False)
    cond = _cond_entropy_grid(rho4d, thetas, phis)
    i, j = np.unravel_index(int(np.argmin(cond)), cond.shape)
    best_theta = float(thetas[i])
    best_phi = float(phis[j])
    best = float(cond[i, j])

    dth = math.pi / (ntheta - 1)
    dph = 2.0 * math.pi / nphi
    th, val = _golden_min(
        lambda a: _cond_entropy_point(rho4d, a, best_phi),
        max(0.0, best_theta - dth),
        min(math.pi, best_theta + dth),
    )
    if val < best:
        best_theta, best = th, val
    ph, val = _golden_min(
        lambda a: _cond_entropy_point(rho4d, best_theta, a),
        best_phi - dph,
        best_phi + dph,
    )
    if val < best:
        best = val

    classical = s_a - best
    discord = mutual - classical
    if -1e-9 < discord < 0.0:
        discord = 0.0
    conc = concurrence_general(m)
    return CorrelationMeasures(
        discord=discord,
        eof=eof(conc),
        concurrence=conc,
        mutual_information=mutual,
        classical_correlation=classical,
    )
