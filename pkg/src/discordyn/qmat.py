"""Small complex linear algebra for the fixed two-qubit setting.

Everything is dense numpy on 2x2 and 4x4 complex matrices.  The two-qubit
basis is ordered (|11>, |10>, |01>, |00>), first slot atom A, second atom B,
with |1> the excited level.  So rho[0, 0] is the doubly excited population,
rho[3, 3] the doubly ground one, and rho[0, 3] / rho[1, 2] the outer and
inner coherences of an X-shaped state.
"""

from dataclasses import dataclass

import numpy as np

BASIS_LABELS = ("11", "10", "01", "00")

# single-qubit operators in the (|1>, |0>) ordering
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z_HALF = np.array([[0.5, 0.0], [0.0, -0.5]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)
IDENTITY4 = np.eye(4, dtype=complex)


class EigenConvergenceError(RuntimeError):
    """Eigenvalue iteration failed to converge within the backend's bound."""

    def __init__(self, message, iterations=None):
        super().__init__(message)
        self.iterations = iterations


def adjoint(m):
    return np.conj(np.asarray(m)).T


def mat_close(a, b, tol):
    """Entrywise comparison with an explicit absolute tolerance."""
    return bool(np.max(np.abs(np.asarray(a) - np.asarray(b))) <= tol)


def hermiticity_defect(m):
    m = np.asarray(m)
    return float(np.max(np.abs(m - np.conj(m.T))))


def is_hermitian(m, tol=1e-10):
    return hermiticity_defect(m) <= tol


def tensor2(a, b):
    """Kronecker product of two 2x2 matrices in the fixed basis ordering."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise ValueError(f"tensor2 expects 2x2 factors, got {a.shape} and {b.shape}")
    return np.kron(a, b)


def hermitian_eigen(m, tol=1e-10):
    """Eigendecomposition of a Hermitian matrix.

    Returns a list of (eigenvalue, eigenvector) pairs with real eigenvalues
    in ascending order and orthonormal eigenvectors.  Inputs that are not
    Hermitian within `tol` (max entry of m - m^dagger) are rejected.
    """
    m = np.asarray(m, dtype=complex)
    defect = hermiticity_defect(m)
    if defect > tol:
        raise ValueError(
            f"matrix is not Hermitian: max |m - m^dagger| = {defect:.3e} > {tol:.1e}"
        )
    w, v = np.linalg.eigh((m + np.conj(m.T)) / 2.0)
    return [(float(w[i]), v[:, i].copy()) for i in range(len(w))]


def general_eigenvalues(m):
    """Eigenvalues of a general (possibly non-normal) 4x4 complex matrix.

    Backed by the LAPACK QR iteration, which caps its internal sweep count;
    a non-converged factorization is surfaced as EigenConvergenceError.
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    try:
        return np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise EigenConvergenceError(
            f"eigenvalue iteration did not converge: {exc}", iterations=30 * 4
        ) from exc


def _readonly(m):
    m.setflags(write=False)
    return m


@dataclass(frozen=True)
class QubitOperators:
    """Raising/lowering and inversion operators for the two atoms."""

    s_plus_a: np.ndarray
    s_minus_a: np.ndarray
    s_plus_b: np.ndarray
    s_minus_b: np.ndarray
    s_z_a: np.ndarray
    s_z_b: np.ndarray
    identity4: np.ndarray


def _build_operators():
    return QubitOperators(
        s_plus_a=_readonly(tensor2(SIGMA_PLUS, IDENTITY2)),
        s_minus_a=_readonly(tensor2(SIGMA_MINUS, IDENTITY2)),
        s_plus_b=_readonly(tensor2(IDENTITY2, SIGMA_PLUS)),
        s_minus_b=_readonly(tensor2(IDENTITY2, SIGMA_MINUS)),
        s_z_a=_readonly(tensor2(SIGMA_Z_HALF, IDENTITY2)),
        s_z_b=_readonly(tensor2(IDENTITY2, SIGMA_Z_HALF)),
        identity4=_readonly(IDENTITY4.copy()),
    )


OPS = _build_operators()
