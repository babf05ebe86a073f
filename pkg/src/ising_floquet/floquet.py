"""
Floquet operator of the kicked all-to-all Ising model,

    U = exp(-i J tau Sum_{l<l'} sz_l sz_l') exp(-i tau Sum_l sy_l),

built in the Dicke basis and split into its two parity blocks. Powers of U
are taken from the block eigenphases, never by repeated multiplication.
"""

import math
import threading
from dataclasses import dataclass

import numpy as np
from scipy.linalg import schur

from .exceptions import NumericalStabilityError
from .symspace import SymmetricState, collective_sy_matrix, parity_basis

STRUCTURAL_TOL = 1e-10


@dataclass(frozen=True)
class ModelParams:
    n_qubits: int
    coupling: float = 0.5
    kick_period: float = math.pi / 4

    def __post_init__(self):
        if int(self.n_qubits) != self.n_qubits or self.n_qubits < 1:
            raise ValueError(f"invalid system size N={self.n_qubits}")
        if not (math.isfinite(self.coupling) and math.isfinite(self.kick_period)):
            raise ValueError("coupling and kick_period must be finite")
        object.__setattr__(self, "n_qubits", int(self.n_qubits))


class _BlockEigensystem:
    """Complex Schur form of one unitary block; for a normal matrix T is diagonal."""

    def __init__(self, block):
        t, z = schur(block, output="complex")
        phases = np.diag(t)
        self.angles = np.angle(phases)
        self.vectors = z
        self.off_diagonal = float(np.abs(np.triu(t, 1)).max()) if len(t) > 1 else 0.0
        self.modulus_error = float(np.abs(np.abs(phases) - 1).max())

    def power(self, n):
        return (self.vectors * np.exp(1j * n * self.angles)) @ self.vectors.conj().T

    def apply_powers(self, coeffs, ns):
        """Rows are block^n @ coeffs for each n in ns."""
        proj = self.vectors.conj().T @ coeffs
        ph = np.exp(1j * np.outer(ns, self.angles))
        return (ph * proj) @ self.vectors.T


class FloquetOperator:
    """
    One-period unitary in the Dicke basis with cached parity blocks.

    Immutable after construction; the block eigensystem is computed on first
    use under a lock and shared afterwards.
    """

    def __init__(self, params, matrix, basis, block_plus, block_minus):
        self.params = params
        self.matrix = matrix
        self.basis = basis
        self.block_plus = block_plus
        self.block_minus = block_minus
        for a in (matrix, block_plus, block_minus):
            a.setflags(write=False)
        self._eig = None
        self._lock = threading.Lock()

    @property
    def n_qubits(self):
        return self.params.n_qubits

    @property
    def dimension(self):
        return self.params.n_qubits + 1

    @property
    def eigensystem(self):
        if self._eig is None:
            with self._lock:
                if self._eig is None:
                    eig = (_BlockEigensystem(self.block_plus), _BlockEigensystem(self.block_minus))
                    worst = max(max(e.off_diagonal, e.modulus_error) for e in eig)
                    if worst > STRUCTURAL_TOL:
                        raise NumericalStabilityError(
                            f"block Schur form is not diagonal/unimodular (residual {worst:.3e})",
                            worst,
                        )
                    self._eig = eig
        return self._eig

    def eigenangles(self):
        plus, minus = self.eigensystem
        return np.concatenate([plus.angles, minus.angles])

    def __repr__(self):
        p = self.params
        return f"FloquetOperator(N={p.n_qubits}, J={p.coupling!r}, tau={p.kick_period!r})"


def ising_phases(n_qubits, coupling, kick_period):
    """Diagonal of exp(-i J tau Sum_{l<l'} sz sz) on Dicke states."""
    k = np.arange(n_qubits + 1)
    # Sum_{l<l'} sz_l sz_l' = ((N - 2k)^2 - N) / 2, an exact integer
    pair_sum = ((n_qubits - 2 * k) ** 2 - n_qubits) // 2
    return np.exp(-1j * coupling * kick_period * pair_sum)


def kick_matrix(n_qubits, kick_period):
    """exp(-i tau Sum_l sy_l) from the eigendecomposition of the Hermitian generator."""
    w, v = np.linalg.eigh(collective_sy_matrix(n_qubits))
    return (v * np.exp(-1j * kick_period * w)) @ v.conj().T


def build_floquet(params):
    n = params.n_qubits
    matrix = ising_phases(n, params.coupling, params.kick_period)[:, None] * kick_matrix(
        n, params.kick_period
    )
    eye = np.eye(n + 1)
    unitarity = float(np.abs(matrix.conj().T @ matrix - eye).max())
    if unitarity > STRUCTURAL_TOL:
        raise NumericalStabilityError(f"Floquet matrix not unitary (residual {unitarity:.3e})", unitarity)

    basis = parity_basis(n)
    rotated = basis.transform.conj().T @ matrix @ basis.transform
    dp = basis.dim_plus
    leak = max(np.abs(rotated[:dp, dp:]).max(initial=0.0), np.abs(rotated[dp:, :dp]).max(initial=0.0))
    if leak > STRUCTURAL_TOL:
        raise NumericalStabilityError(f"parity blocks leak (off-block residual {leak:.3e})", leak)
    return FloquetOperator(
        params, matrix, basis, rotated[:dp, :dp].copy(), rotated[dp:, dp:].copy()
    )


def _check_state(op, state):
    if state.n_qubits != op.n_qubits:
        raise ValueError(f"state has N={state.n_qubits}, operator has N={op.n_qubits}")


def evolve_series(op, state, ns):
    """
    Dicke coefficients of U^n |state> for every n in ``ns``, one row per n.

    Each row is computed independently from the eigenphases, so the cost
    does not grow with n and rows may be evaluated in any order.
    """
    _check_state(op, state)
    ns = np.atleast_1d(np.asarray(ns))
    if np.any(ns < 0):
        raise ValueError("powers must be non-negative")
    plus, minus = op.eigensystem
    b = op.basis
    a = b.to_parity(state.coeffs)
    rows = np.concatenate(
        [plus.apply_powers(a[: b.dim_plus], ns), minus.apply_powers(a[b.dim_plus :], ns)], axis=1
    )
    return rows @ b.transform.T


def evolve(op, state, n):
    if n == 0:
        _check_state(op, state)
        return state
    coeffs = evolve_series(op, state, [n])[0]
    return SymmetricState(op.n_qubits, coeffs)


def _block_powers(op, n):
    plus, minus = op.eigensystem
    return plus.power(n), minus.power(n)


def operator_power(op, n):
    """U^n in the Dicke basis."""
    if n < 0:
        raise ValueError("n must be non-negative")
    up, um = _block_powers(op, n)
    t = op.basis.transform
    dp = op.basis.dim_plus
    return t[:, :dp] @ up @ t[:, :dp].conj().T + t[:, dp:] @ um @ t[:, dp:].conj().T


def block_power(op, n, sector):
    """U_+^n (sector=+1) or U_-^n (sector=-1) in the parity basis."""
    up, um = _block_powers(op, n)
    return up if sector > 0 else um


def deviation(op, n):
    """delta(n) = ||U^n - U||_F^2 / 2N."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return 0.0
    up, um = _block_powers(op, n)
    # the parity transform is unitary, so the Frobenius norm can be taken blockwise
    diff = np.sum(np.abs(up - op.block_plus) ** 2) + np.sum(np.abs(um - op.block_minus) ** 2)
    return float(diff) / (2 * op.n_qubits)


def frobenius_deviation(u, u_n, n_qubits):
    """delta for explicit matrices, e.g. a conjugated operator G U G^dagger."""
    return float(np.sum(np.abs(np.asarray(u_n) - np.asarray(u)) ** 2)) / (2 * n_qubits)


@dataclass(frozen=True, eq=False)
class DeviationSeries:
    n: np.ndarray
    delta: np.ndarray

    def zeros(self, tol=1e-9):
        """Values of n > 1 at which delta vanishes within tol."""
        mask = (self.delta < tol) & (self.n > 1)
        return self.n[mask]


def deviation_series(op, n_max):
    ns = np.arange(1, int(n_max) + 1)
    return DeviationSeries(ns, np.array([deviation(op, int(n)) for n in ns]))


def find_period(op, t_max=1000, tol=1e-9):
    """
    Smallest T <= t_max with ||U^T - I||_F < tol, or None.

    U^T - I = Z (e^{iT theta} - 1) Z^dagger, so the norm is evaluated from the
    eigenphases alone.
    """
    if t_max < 1 or tol <= 0:
        raise ValueError("need t_max >= 1 and tol > 0")
    theta = op.eigenangles()
    for T in range(1, int(t_max) + 1):
        if np.sqrt(np.sum(np.abs(np.exp(1j * T * theta) - 1) ** 2)) < tol:
            return T
    return None
