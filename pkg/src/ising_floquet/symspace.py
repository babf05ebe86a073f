"""
Permutation-symmetric (Dicke) representation of N qubits.

Dicke states are indexed by k = number of qubits in |1>, ascending, so the
collective spin is j = N/2 and the Dicke state |k> has Sum_l sigma^z_l = N - 2k.
"""

from dataclasses import dataclass

import numpy as np
from scipy.stats import binom

NORM_TOL = 1e-10


def _check_n_qubits(n_qubits):
    if int(n_qubits) != n_qubits or n_qubits < 1:
        raise ValueError(f"invalid system size N={n_qubits}; need a positive integer")
    return int(n_qubits)


def _readonly(a):
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class DickeIndex:
    n_qubits: int
    k: int

    def __post_init__(self):
        _check_n_qubits(self.n_qubits)
        if not 0 <= self.k <= self.n_qubits:
            raise ValueError(f"k={self.k} outside [0, {self.n_qubits}]")

    @property
    def dimension(self):
        return self.n_qubits + 1

    @property
    def spin(self):
        return self.n_qubits / 2

    @property
    def partner(self):
        """Index of the bit-flipped Dicke state, k -> N - k."""
        return DickeIndex(self.n_qubits, self.n_qubits - self.k)


@dataclass(frozen=True, eq=False)
class SymmetricState:
    """Unit-norm vector of Dicke amplitudes c_k, k = 0..N."""

    n_qubits: int
    coeffs: np.ndarray

    def __post_init__(self):
        n = _check_n_qubits(self.n_qubits)
        coeffs = _readonly(self.coeffs)
        if coeffs.shape != (n + 1,):
            raise ValueError(f"expected {n + 1} Dicke coefficients, got shape {coeffs.shape}")
        norm = np.vdot(coeffs, coeffs).real
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: sum |c_k|^2 = {norm!r}")
        object.__setattr__(self, "n_qubits", n)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_coeffs(cls, coeffs, normalize=True):
        coeffs = np.asarray(coeffs, dtype=complex)
        if normalize:
            coeffs = coeffs / np.linalg.norm(coeffs)
        return cls(len(coeffs) - 1, coeffs)

    @property
    def dimension(self):
        return self.n_qubits + 1

    def norm(self):
        return float(np.linalg.norm(self.coeffs))

    def overlap(self, other):
        """<self|other>."""
        return complex(np.vdot(self.coeffs, other.coeffs))


@dataclass(frozen=True, eq=False)
class ParityBasis:
    """Columns of ``transform`` are the +1 parity states followed by the -1 ones."""

    n_qubits: int
    transform: np.ndarray
    dim_plus: int
    dim_minus: int

    @property
    def plus(self):
        return self.transform[:, : self.dim_plus]

    @property
    def minus(self):
        return self.transform[:, self.dim_plus :]

    def to_parity(self, coeffs):
        """Dicke coefficients -> parity-basis coefficients."""
        return self.transform.conj().T @ coeffs

    def from_parity(self, coeffs):
        return self.transform @ coeffs


def coherent_state(n_qubits, theta0, phi0):
    """
    SU(2) coherent state, every qubit in cos(theta0/2)|0> + e^{-i phi0} sin(theta0/2)|1>.

    |c_k|^2 is the Binomial(N, sin^2(theta0/2)) mass at k; taking it from the
    binomial pmf keeps the norm at machine precision for N in the thousands.
    """
    n = _check_n_qubits(n_qubits)
    k = np.arange(n + 1)
    c, s = np.cos(theta0 / 2), np.sin(theta0 / 2)
    mag = np.sqrt(binom.pmf(k, n, s * s))
    sign = np.where(c < 0, (-1.0) ** (n - k), 1.0) * np.where(s < 0, (-1.0) ** k, 1.0)
    return SymmetricState(n, sign * mag * np.exp(-1j * phi0 * k))


def dicke_state(n_qubits, k):
    idx = DickeIndex(n_qubits, k)
    coeffs = np.zeros(idx.dimension, dtype=complex)
    coeffs[k] = 1.0
    return SymmetricState(n_qubits, coeffs)


def random_symmetric_state(n_qubits, rng=None):
    """Haar-random state of the (N+1)-dimensional symmetric subspace."""
    rng = np.random.default_rng(rng)
    n = _check_n_qubits(n_qubits)
    v = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    return SymmetricState.from_coeffs(v)


def collective_sz_eigenvalues(n_qubits):
    """Eigenvalue N - 2k of Sum_l sigma^z_l on each Dicke state."""
    n = _check_n_qubits(n_qubits)
    return (n - 2 * np.arange(n + 1)).astype(float)


def collective_sy_matrix(n_qubits):
    """
    Sum_l sigma^y_l restricted to the Dicke basis.

    sigma^y|0> = i|1>, so the raising entries <k+1|.|k> = i sqrt((k+1)(N-k)).
    """
    n = _check_n_qubits(n_qubits)
    k = np.arange(n)
    amp = np.sqrt((k + 1.0) * (n - k))
    m = np.zeros((n + 1, n + 1), dtype=complex)
    m[k + 1, k] = 1j * amp
    m[k, k + 1] = -1j * amp
    return m


def parity_operator(n_qubits):
    """(x)_l sigma^y_l in the Dicke basis: |k> -> i^N (-1)^k |N-k>."""
    n = _check_n_qubits(n_qubits)
    k = np.arange(n + 1)
    m = np.zeros((n + 1, n + 1), dtype=complex)
    m[n - k, k] = (1j**n) * (-1.0) ** k
    return m


def parity_basis(n_qubits):
    """
    Basis of +/-1 eigenvectors of the parity operator built from pairs |q>, |N-q>.

    Odd N:  (|q> +/- i^{N-2q} |N-q>)/sqrt2 for q < N/2.
    Even N: (|r> +/- (-1)^{N/2-r} |N-r>)/sqrt2 for r < N/2, plus the unpaired
    half-filling state |N/2> with parity +1 and phase +1.
    """
    n = _check_n_qubits(n_qubits)
    dim = n + 1
    n_pairs = (n + 1) // 2
    if n % 2:
        phases = [1j ** (n - 2 * q) for q in range(n_pairs)]
    else:
        phases = [(-1.0) ** (n // 2 - r) for r in range(n_pairs)]
    plus, minus = [], []
    for q, ph in enumerate(phases):
        for sign, bucket in ((1, plus), (-1, minus)):
            col = np.zeros(dim, dtype=complex)
            col[q] = 1 / np.sqrt(2)
            col[n - q] = sign * ph / np.sqrt(2)
            bucket.append(col)
    if n % 2 == 0:
        mid = np.zeros(dim, dtype=complex)
        mid[n // 2] = 1.0
        plus.append(mid)
    transform = np.column_stack(plus + minus)
    transform.setflags(write=False)
    return ParityBasis(n, transform, len(plus), len(minus))
