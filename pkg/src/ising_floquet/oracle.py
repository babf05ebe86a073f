"""
Brute-force reference in the full 2^N Hilbert space (N <= 12).

Nothing here uses the Dicke-basis machinery: operators are Kronecker products
of Pauli matrices and reduced density matrices come from reshaping the full
amplitude tensor. Qubit 0 is the most significant bit of a basis index and
bit value 0 means |0> (sigma^z = +1).
"""

from dataclasses import dataclass
from functools import reduce
from math import comb

import numpy as np

from .symspace import SymmetricState

MAX_QUBITS = 12

PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _guard(n_qubits):
    if int(n_qubits) != n_qubits or n_qubits < 1:
        raise ValueError(f"invalid system size N={n_qubits}")
    if n_qubits > MAX_QUBITS:
        raise ValueError(f"oracle limited to N <= {MAX_QUBITS} qubits, got {n_qubits}")
    return int(n_qubits)


def _bits(n_qubits):
    """(2^N, N) array of bit values, column l = qubit l."""
    idx = np.arange(2**n_qubits)
    return (idx[:, None] >> np.arange(n_qubits - 1, -1, -1)) & 1


@dataclass(frozen=True, eq=False)
class FullState:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        n = _guard(self.n_qubits)
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (2**n,):
            raise ValueError(f"expected {2**n} amplitudes, got {amps.shape}")
        if abs(np.vdot(amps, amps).real - 1) > 1e-10:
            raise ValueError("full state is not normalized")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def random(cls, n_qubits, rng=None):
        rng = np.random.default_rng(rng)
        v = rng.standard_normal(2**n_qubits) + 1j * rng.standard_normal(2**n_qubits)
        return cls(n_qubits, v / np.linalg.norm(v))


def symmetric_projector(n_qubits):
    """
    (N+1) x 2^N real matrix whose row k is the Dicke state with k ones.

    Its transpose maps Dicke coefficients to full amplitudes.
    """
    n = _guard(n_qubits)
    weight = _bits(n).sum(axis=1)
    proj = np.zeros((n + 1, 2**n))
    proj[weight, np.arange(2**n)] = 1.0
    return proj / np.sqrt([comb(n, k) for k in range(n + 1)])[:, None]


def embed_symmetric(state):
    proj = symmetric_projector(state.n_qubits)
    return FullState(state.n_qubits, proj.T @ state.coeffs)


def project_symmetric(full):
    """
    Split a full state into its normalized symmetric part and the leakage norm.

    Returns (SymmetricState, leakage) with leakage = ||psi - P_sym psi||.
    """
    proj = symmetric_projector(full.n_qubits)
    coeffs = proj @ full.amplitudes
    leakage = float(np.linalg.norm(full.amplitudes - proj.T @ coeffs))
    kept = np.linalg.norm(coeffs)
    if kept < 1e-14:
        raise ValueError("state has no weight in the symmetric subspace")
    return SymmetricState(full.n_qubits, coeffs / kept), leakage


def ising_pair_sum(n_qubits):
    """Sum_{l<l'} z_l z_l' for every computational basis state."""
    z = 1 - 2 * _bits(_guard(n_qubits))
    tot = z.sum(axis=1)
    return (tot * tot - n_qubits) // 2


def full_floquet(params):
    """exp(-i J tau Sum_{l<l'} sz sz) (x)_l exp(-i tau sy), as a dense 2^N matrix."""
    n = _guard(params.n_qubits)
    tau = params.kick_period
    # exp(-i tau sy) = cos(tau) 1 - i sin(tau) sy
    rot = np.array([[np.cos(tau), -np.sin(tau)], [np.sin(tau), np.cos(tau)]], dtype=complex)
    kick = reduce(np.kron, [rot] * n)
    kick *= np.exp(-1j * params.coupling * tau * ising_pair_sum(n))[:, None]
    return kick


def apply_floquet(params, amplitudes):
    """
    Full Floquet operator applied qubit by qubit, without forming the 2^N matrix.

    Accepts a (2^N,) vector or a (2^N, m) block of column vectors.
    """
    n = _guard(params.n_qubits)
    tau = params.kick_period
    rot = np.array([[np.cos(tau), -np.sin(tau)], [np.sin(tau), np.cos(tau)]], dtype=complex)
    out = np.asarray(amplitudes, dtype=complex)
    for l in range(n):
        out = apply_local(out, rot, l, n)
    phase = np.exp(-1j * params.coupling * tau * ising_pair_sum(n))
    return phase.reshape((-1,) + (1,) * (out.ndim - 1)) * out


def apply_local(amplitudes, op, qubit, n_qubits):
    """Apply a 2x2 operator to one qubit of a (2^N,) or (2^N, m) array."""
    a = np.asarray(amplitudes)
    tail = a.shape[1:]
    t = a.reshape((2,) * n_qubits + tail)
    t = np.moveaxis(np.tensordot(op, t, axes=([1], [qubit])), 0, qubit)
    return t.reshape(a.shape)


def apply_pauli_sum(amplitudes, axis, n_qubits):
    """Sum_l sigma^axis_l applied to full amplitudes."""
    return sum(apply_local(amplitudes, PAULI[axis], l, n_qubits) for l in range(n_qubits))


def apply_pauli_string(amplitudes, axis, n_qubits):
    """(x)_l sigma^axis_l applied to full amplitudes."""
    out = np.asarray(amplitudes, dtype=complex)
    for l in range(n_qubits):
        out = apply_local(out, PAULI[axis], l, n_qubits)
    return out


def projected_operator(apply, n_qubits):
    """P_sym A P_sym^dagger for an operator given by its action on full vectors."""
    proj = symmetric_projector(n_qubits)
    return proj @ apply(proj.T.astype(complex))


def full_evolve(u_full, full, n):
    """n steps of brute-force evolution; u_full is a dense matrix or a ModelParams."""
    amps = full.amplitudes
    for _ in range(n):
        amps = u_full @ amps if isinstance(u_full, np.ndarray) else apply_floquet(u_full, amps)
    return FullState(full.n_qubits, amps)


def partial_trace(full, keep):
    """
    Reduced density matrix of the qubits in ``keep`` (1 or 2 of them), in the
    order given, e.g. keep=(0, 1) yields the (|00>, |01>, |10>, |11>) basis.
    """
    n = full.n_qubits
    keep = list(keep)
    if len(keep) not in (1, 2) or len(set(keep)) != len(keep):
        raise ValueError(f"keep must name 1 or 2 distinct qubits, got {keep}")
    if any(not 0 <= q < n for q in keep):
        raise ValueError(f"qubit index out of range for N={n}: {keep}")
    rest = [q for q in range(n) if q not in keep]
    t = np.transpose(full.amplitudes.reshape((2,) * n), keep + rest)
    m = t.reshape(2 ** len(keep), -1)
    return m @ m.conj().T
