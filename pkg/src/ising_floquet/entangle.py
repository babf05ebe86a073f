"""
One- and two-qubit reduced density matrices of symmetric states and the
entanglement measures built on them.

The RDMs are assembled directly from Dicke amplitudes in O(N), so nothing of
size 2^N is ever formed. Two-qubit RDMs use the basis (|00>, |01>, |10>, |11>).
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import NumericalStabilityError
from .floquet import evolve_series
from .symspace import SymmetricState

_SY_SY = np.array([[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex)
EIG_CLAMP = 1e-12
INVALID_EIG = -1e-8


def _coeffs(state):
    if isinstance(state, SymmetricState):
        return state.n_qubits, state.coeffs
    c = np.asarray(state, dtype=complex)
    return len(c) - 1, c


def rdm1(state):
    """Single-qubit reduced density matrix."""
    n, c = _coeffs(state)
    k = np.arange(n + 1)
    p = np.abs(c) ** 2
    k1 = k[:-1]
    # <0|rho|1> collects c_k conj(c_{k+1})
    hop = np.sum(c[:-1] * np.conj(c[1:]) * np.sqrt((k1 + 1.0) * (n - k1))) / n
    rho = np.empty((2, 2), dtype=complex)
    rho[0, 0] = np.sum(p * (n - k)) / n
    rho[1, 1] = np.sum(p * k) / n
    rho[0, 1] = hop
    rho[1, 0] = np.conj(hop)
    return rho


def rdm2(state):
    """Two-qubit reduced density matrix of any pair (all pairs are equivalent)."""
    n, c = _coeffs(state)
    if n < 2:
        raise ValueError("two-qubit RDM needs N >= 2")
    norm = n * (n - 1.0)
    k = np.arange(n + 1)
    p = np.abs(c) ** 2
    pop_00 = np.sum(p * (n - k) * (n - k - 1)) / norm
    pop_mix = np.sum(p * k * (n - k)) / norm
    pop_11 = np.sum(p * k * (k - 1)) / norm

    k1 = k[:-1]
    one = c[:-1] * np.conj(c[1:]) * np.sqrt((k1 + 1.0) * (n - k1))
    hop_0 = np.sum(one * (n - k1 - 1)) / norm  # <00|rho|01>
    hop_1 = np.sum(one * k1) / norm  # <01|rho|11>
    k2 = k[:-2]
    two = np.sum(
        c[:-2] * np.conj(c[2:]) * np.sqrt((k2 + 1.0) * (k2 + 2) * (n - k2) * (n - k2 - 1))
    ) / norm  # <00|rho|11>

    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = pop_00
    rho[1:3, 1:3] = pop_mix
    rho[3, 3] = pop_11
    rho[0, 1] = rho[0, 2] = hop_0
    rho[1, 3] = rho[2, 3] = hop_1
    rho[0, 3] = two
    lower = np.tril_indices(4, -1)
    rho[lower] = np.conj(rho.T[lower])
    return rho


def purity(rho):
    return float(np.sum(np.abs(rho) ** 2))


def linear_entropy(rho):
    """1 - tr(rho^2)."""
    return 1.0 - purity(rho)


def von_neumann_entropy(rho):
    """-tr(rho ln rho) in nats."""
    lam = np.clip(np.linalg.eigvalsh(rho), 0.0, 1.0)
    lam = lam[lam > 0]
    return float(-np.sum(lam * np.log(lam)))


def _check_rdm2(rho):
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got {rho.shape}")
    herm = np.abs(rho - rho.conj().T).max()
    if herm > 1e-10:
        raise NumericalStabilityError(f"RDM is not Hermitian (residual {herm:.3e})", herm)
    return rho


def _spin_flip_singular_values(rho):
    """
    Square roots of the eigenvalues of R = rho (sy sy) rho* (sy sy), descending.

    With rho = V V^dagger (V holds the scaled eigenvectors) these are the
    singular values of V^T (sy sy) V, which stays accurate when rho is rank
    deficient, unlike sqrt of tiny eigenvalues of R.
    """
    p, e = np.linalg.eigh(rho)
    if p.min() < INVALID_EIG:
        raise NumericalStabilityError(f"RDM has negative eigenvalue {p.min():.3e}", p.min())
    keep = p > EIG_CLAMP * max(1.0, p.max())
    v = e[:, keep] * np.sqrt(p[keep])
    s = np.linalg.svd(v.T @ _SY_SY @ v, compute_uv=False) if keep.any() else np.zeros(0)
    out = np.zeros(4)
    out[: len(s)] = np.sort(s)[::-1]
    return out


def concurrence_eigenvalues(rho):
    """
    Eigenvalues of (sy x sy) rho (sy x sy) rho*, descending.

    Raises when the direct eigenvalues of that product have a real part below
    -1e-8, which no physical state produces.
    """
    rho = _check_rdm2(rho)
    direct = np.linalg.eigvals(_SY_SY @ rho @ _SY_SY @ rho.conj())
    if direct.real.min() < INVALID_EIG:
        raise NumericalStabilityError(
            f"spin-flip product has eigenvalue {direct.real.min():.3e}; invalid RDM",
            direct.real.min(),
        )
    return _spin_flip_singular_values(rho) ** 2


def concurrence(rho):
    """Wootters concurrence max(0, s1 - s2 - s3 - s4)."""
    s = np.sqrt(concurrence_eigenvalues(rho))
    return float(max(0.0, s[0] - s[1] - s[2] - s[3]))


def concurrence_direct(rho):
    """Same quantity from clamped eigenvalues of the non-Hermitian product (reference route)."""
    rho = _check_rdm2(rho)
    lam = np.linalg.eigvals(_SY_SY @ rho @ _SY_SY @ rho.conj()).real
    lam = np.sort(np.where(lam < EIG_CLAMP, 0.0, lam))[::-1]
    s = np.sqrt(lam)
    return float(max(0.0, s[0] - s[1] - s[2] - s[3]))


@dataclass(frozen=True)
class EntanglementRecord:
    n: int
    linear_entropy: float
    von_neumann: float
    concurrence: float


def record_from_coeffs(n, coeffs):
    r1 = rdm1(coeffs)
    conc = concurrence(rdm2(coeffs)) if len(coeffs) > 2 else 0.0
    return EntanglementRecord(int(n), linear_entropy(r1), von_neumann_entropy(r1), conc)


def entanglement_series(op, state0, n_max):
    """Records for n = 0..n_max."""
    ns = np.arange(int(n_max) + 1)
    rows = evolve_series(op, state0, ns)
    return [record_from_coeffs(n, row) for n, row in zip(ns, rows)]
