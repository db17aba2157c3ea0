"""Time-local master equation for two atoms in independent reservoirs.

The generator acts separately on each atom with identical coefficients,

    d rho / dt = sum_j  f(t) [S_j^- rho, S_j^+] + f*(t) [S_j^-, rho S_j^+]
                      + k*(t) [S_j^+ rho, S_j^-] + k(t) [S_j^+, rho S_j^-]

so the evolution is trace preserving and Hermiticity preserving by
construction, and X-shaped states stay X-shaped.  Integration is classical
fixed-step RK4 on the vectorized density matrix with the generator assembled
from four constant superoperator matrices.
"""

import math
from dataclasses import dataclass

import numpy as np

from .qmat import OPS, IDENTITY4, hermiticity_defect
from .reservoir import correlation_kf

# positions that may be nonzero in an X-shaped matrix
X_MASK = np.zeros((4, 4), dtype=bool)
for _i, _j in ((0, 0), (1, 1), (2, 2), (3, 3), (0, 3), (3, 0), (1, 2), (2, 1)):
    X_MASK[_i, _j] = True

TRACE_ABORT = 1e-7
EIG_ABORT = -1e-4
RICHARDSON_TOL = 1e-8


class IntegrationError(RuntimeError):
    """Integration aborted because a state invariant broke down."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class StepSizeError(IntegrationError):
    """Half-step cross-check disagreed with the nominal step size."""


@dataclass(frozen=True, eq=False)
class InitialState:
    """Initial two-qubit state: a named Bell state or an explicit X matrix."""

    tag: str
    x: np.ndarray = None

    def __post_init__(self):
        if self.tag not in ("psi", "phi", "customx"):
            raise ValueError(f"unknown initial state tag {self.tag!r}")
        if self.tag == "customx" and self.x is None:
            raise ValueError("customx initial state requires an explicit matrix")

    @classmethod
    def psi(cls):
        return cls("psi")

    @classmethod
    def phi(cls):
        return cls("phi")

    @classmethod
    def custom_x(cls, m):
        return cls("customx", np.asarray(m, dtype=complex))


def _validate_x_density(m):
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    defect = hermiticity_defect(m)
    if defect > 1e-10:
        raise ValueError(f"initial matrix not Hermitian: defect {defect:.3e}")
    tr = abs(np.trace(m) - 1.0)
    if tr > 1e-9:
        raise ValueError(f"initial matrix trace off by {tr:.3e}")
    off = float(np.max(np.abs(m[~X_MASK])))
    if off > 1e-10:
        raise ValueError(f"initial matrix is not X-shaped: off-X entry {off:.3e}")
    mineig = float(np.linalg.eigvalsh((m + np.conj(m.T)) / 2.0)[0])
    if mineig < -1e-6:
        raise ValueError(f"initial matrix not positive: min eigenvalue {mineig:.3e}")
    return m


def initial_density(s):
    """Density matrix for an InitialState, validated against the invariants."""
    rho = np.zeros((4, 4), dtype=complex)
    if s.tag == "psi":
        # (|11> + |00>) / sqrt(2), outer coherence block
        rho[0, 0] = rho[3, 3] = rho[0, 3] = rho[3, 0] = 0.5
    elif s.tag == "phi":
        # (|10> + |01>) / sqrt(2), inner coherence block
        rho[1, 1] = rho[2, 2] = rho[1, 2] = rho[2, 1] = 0.5
    else:
        rho = _validate_x_density(np.array(s.x, dtype=complex))
    return rho


def liouvillian_apply(rho, t, p):
    """Right-hand side d rho / dt written as the literal commutator sum."""
    rho = np.asarray(rho, dtype=complex)
    co = correlation_kf(t, p)
    fc = np.conj(co.f)
    kc = np.conj(co.k)
    out = np.zeros((4, 4), dtype=complex)
    for sp, sm in ((OPS.s_plus_a, OPS.s_minus_a), (OPS.s_plus_b, OPS.s_minus_b)):
        smr_sp = sm @ rho @ sp
        spr_sm = sp @ rho @ sm
        out += co.f * (smr_sp - sp @ sm @ rho)
        out += fc * (smr_sp - rho @ sp @ sm)
        out += kc * (spr_sm - sm @ sp @ rho)
        out += co.k * (spr_sm - rho @ sm @ sp)
    return out


def _superoperator_terms():
    """The four constant 16x16 matrices multiplying f, f*, k*, k.

    Row-major vectorization: vec(A rho B) = kron(A, B^T) vec(rho).
    """
    mf = np.zeros((16, 16), dtype=complex)
    mfc = np.zeros((16, 16), dtype=complex)
    mkc = np.zeros((16, 16), dtype=complex)
    mk = np.zeros((16, 16), dtype=complex)
    eye = IDENTITY4
    for sp, sm in ((OPS.s_plus_a, OPS.s_minus_a), (OPS.s_plus_b, OPS.s_minus_b)):
        sandwich_down = np.kron(sm, sp.T)
        sandwich_up = np.kron(sp, sm.T)
        mf += sandwich_down - np.kron(sp @ sm, eye)
        mfc += sandwich_down - np.kron(eye, (sp @ sm).T)
        mkc += sandwich_up - np.kron(sm @ sp, eye)
        mk += sandwich_up - np.kron(eye, (sm @ sp).T)
    return mf, mfc, mkc, mk


_MF, _MFC, _MKC, _MK = _superoperator_terms()


def generator_matrix(t, p):
    """Full 16x16 generator at time t (matches liouvillian_apply exactly)."""
    co = correlation_kf(t, p)
    return co.f * _MF + np.conj(co.f) * _MFC + np.conj(co.k) * _MKC + co.k * _MK


@dataclass(frozen=True)
class IntegratorConfig:
    """Fixed-step RK4 settings; times in 1/gamma0."""

    t_max: float
    dt: float = 1e-3
    sample_stride: int = None
    richardson_check: bool = True

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.t_max < self.dt:
            raise ValueError(f"t_max must be at least dt, got {self.t_max}")
        if self.sample_stride is not None and self.sample_stride < 1:
            raise ValueError(f"sample_stride must be >= 1, got {self.sample_stride}")

    @property
    def n_steps(self):
        return max(1, int(round(self.t_max / self.dt)))

    @property
    def resolved_stride(self):
        if self.sample_stride is not None:
            return self.sample_stride
        # keep at most ~1e5 stored samples
        return max(1, math.ceil((self.n_steps + 1) / 100_000))


@dataclass
class Trajectory:
    """Stored samples (t, rho) with per-sample diagnostics."""

    t: np.ndarray
    rho: np.ndarray
    trace_error: np.ndarray
    hermiticity_error: np.ndarray
    min_eigenvalue: np.ndarray
    params: object
    config: IntegratorConfig

    def __len__(self):
        return len(self.t)


def _rk4_run(v0, n, dt, p):
    v = v0.copy()
    l_next = generator_matrix(0.0, p)
    for i in range(n):
        t = i * dt
        l1 = l_next
        lm = generator_matrix(t + 0.5 * dt, p)
        l_next = generator_matrix(t + dt, p)
        k1 = l1 @ v
        k2 = lm @ (v + (0.5 * dt) * k1)
        k3 = lm @ (v + (0.5 * dt) * k2)
        k4 = l_next @ (v + dt * k3)
        v = v + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return v


def integrate(s, p, cfg):
    """Integrate the initial state over [0, t_max] and return a Trajectory.

    The generator is evaluated exactly at the RK4 substep times.  When
    cfg.richardson_check is set, the first 10% of the window is also run at
    dt/2 and the two results must agree to 1e-8 per entry, otherwise the
    run aborts with a step-size diagnostic.  Stored samples are checked
    against the state invariants; trace drift beyond 1e-7 or an eigenvalue
    below -1e-4 aborts with the offending time.
    """
    rho0 = initial_density(s)
    dt = cfg.dt
    n = cfg.n_steps
    stride = cfg.resolved_stride
    v = rho0.reshape(16).astype(complex)

    check_at = max(1, round(0.1 * n)) if cfg.richardson_check else None
    v_half = None
    if check_at is not None:
        v_half = _rk4_run(v, 2 * check_at, dt / 2.0, p)

    sample_steps = list(range(0, n + 1, stride))
    if sample_steps[-1] != n:
        sample_steps.append(n)
    out = np.empty((len(sample_steps), 16), dtype=complex)
    out[0] = v
    write = 1
    next_sample = sample_steps[1] if len(sample_steps) > 1 else None

    l_next = generator_matrix(0.0, p)
    for i in range(n):
        t = i * dt
        l1 = l_next
        lm = generator_matrix(t + 0.5 * dt, p)
        l_next = generator_matrix(t + dt, p)
        k1 = l1 @ v
        k2 = lm @ (v + (0.5 * dt) * k1)
        k3 = lm @ (v + (0.5 * dt) * k2)
        k4 = l_next @ (v + dt * k3)
        v = v + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if check_at is not None and i + 1 == check_at:
            gap = float(np.max(np.abs(v - v_half)))
            if gap > RICHARDSON_TOL:
                raise StepSizeError(
                    f"half-step check failed at t={(i + 1) * dt:.6g}: "
                    f"max entry gap {gap:.3e} > {RICHARDSON_TOL:.1e}; reduce dt",
                    t=(i + 1) * dt,
                )
        if next_sample is not None and i + 1 == next_sample:
            out[write] = v
            write += 1
            next_sample = (
                sample_steps[write] if write < len(sample_steps) else None
            )

    rhos = out.reshape(-1, 4, 4)
    times = np.array([k * dt for k in sample_steps])
    trace_error = np.abs(np.einsum("nii->n", rhos) - 1.0)
    herm_error = np.max(np.abs(rhos - np.conj(np.swapaxes(rhos, 1, 2))), axis=(1, 2))
    sym = (rhos + np.conj(np.swapaxes(rhos, 1, 2))) / 2.0
    min_eig = np.linalg.eigvalsh(sym)[:, 0]

    if trace_error.max() > TRACE_ABORT:
        bad = int(np.argmax(trace_error > TRACE_ABORT))
        raise IntegrationError(
            f"trace drift {trace_error[bad]:.3e} at t={times[bad]:.6g}",
            t=float(times[bad]),
        )
    if min_eig.min() < EIG_ABORT:
        bad = int(np.argmax(min_eig < EIG_ABORT))
        raise IntegrationError(
            f"eigenvalue {min_eig[bad]:.3e} at t={times[bad]:.6g}",
            t=float(times[bad]),
        )

    return Trajectory(
        t=times,
        rho=rhos,
        trace_error=trace_error,
        hermiticity_error=herm_error,
        min_eigenvalue=min_eig,
        params=p,
        config=cfg,
    )
