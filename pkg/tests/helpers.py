"""State factories shared across the test modules."""

import numpy as np


def bell_psi():
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[3, 3] = rho[0, 3] = rho[3, 0] = 0.5
    return rho


def bell_phi():
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = rho[2, 2] = rho[1, 2] = rho[2, 1] = 0.5
    return rho


def maximally_mixed():
    return np.eye(4, dtype=complex) / 4.0


def werner(p=0.5):
    return p * bell_psi() + (1.0 - p) * maximally_mixed()


def rand_x_state(rng):
    """Random valid X state: Dirichlet populations, coherences inside the caps."""
    d = rng.dirichlet(np.ones(4))
    r14 = np.sqrt(d[0] * d[3]) * rng.uniform() * np.exp(2j * np.pi * rng.uniform())
    r23 = np.sqrt(d[1] * d[2]) * rng.uniform() * np.exp(2j * np.pi * rng.uniform())
    m = np.diag(d).astype(complex)
    m[0, 3], m[3, 0] = r14, np.conj(r14)
    m[1, 2], m[2, 1] = r23, np.conj(r23)
    return m


def rand_pure_state(rng):
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    v /= np.linalg.norm(v)
    return np.outer(v, np.conj(v))


def rand_product_pure(rng):
    a = rng.normal(size=2) + 1j * rng.normal(size=2)
    b = rng.normal(size=2) + 1j * rng.normal(size=2)
    v = np.kron(a / np.linalg.norm(a), b / np.linalg.norm(b))
    return np.outer(v, np.conj(v))


def rand_unitary2(rng):
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def rand_hermitian4(rng):
    z = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    return (z + np.conj(z.T)) / 2.0
