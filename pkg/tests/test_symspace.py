import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ising_floquet import (
    DickeIndex,
    SymmetricState,
    coherent_state,
    collective_sy_matrix,
    collective_sz_eigenvalues,
    parity_basis,
    parity_operator,
    random_symmetric_state,
)
from ising_floquet.symspace import dicke_state


def test_dicke_index_partner_and_bounds():
    idx = DickeIndex(6, 2)
    assert idx.partner.k == 4
    assert idx.dimension == 7
    assert idx.spin == 3.0
    with pytest.raises(ValueError):
        DickeIndex(6, 7)
    with pytest.raises(ValueError):
        DickeIndex(0, 0)


def test_state_validation():
    with pytest.raises(ValueError, match="normalized"):
        SymmetricState(2, [1, 1, 0])
    with pytest.raises(ValueError, match="3 Dicke"):
        SymmetricState(2, [1, 0])
    s = SymmetricState.from_coeffs([1, 1j, 0])
    assert math.isclose(s.norm(), 1.0)
    with pytest.raises(ValueError):
        s.coeffs[0] = 0


def test_coherent_state_poles():
    np.testing.assert_allclose(coherent_state(5, 0, 0).coeffs, dicke_state(5, 0).coeffs)
    np.testing.assert_allclose(coherent_state(5, math.pi, 0).coeffs, dicke_state(5, 5).coeffs, atol=1e-15)


def test_coherent_state_product_structure():
    # every qubit in (|0> + i|1>)/sqrt2
    n = 4
    c = coherent_state(n, math.pi / 2, -math.pi / 2).coeffs
    k = np.arange(n + 1)
    expected = np.sqrt([math.comb(n, j) for j in k]) * (1j**k) / 2 ** (n / 2)
    np.testing.assert_allclose(c, expected, atol=1e-15)


@pytest.mark.parametrize("n", [1, 10, 100, 1000, 1024])
def test_coherent_state_norm_large_n(n):
    for theta in (0.3, 1.1, math.pi / 2, 2.9, -1.0):
        s = coherent_state(n, theta, 0.7)
        assert abs(s.norm() - 1) < 1e-12


def test_collective_operators():
    n = 5
    sy = collective_sy_matrix(n)
    np.testing.assert_allclose(sy, sy.conj().T)
    np.testing.assert_allclose(collective_sz_eigenvalues(n), [5, 3, 1, -1, -3, -5])
    # spectrum of 2 S_y is the same as 2 S_z
    np.testing.assert_allclose(np.linalg.eigvalsh(sy), np.sort(collective_sz_eigenvalues(n)), atol=1e-12)


@pytest.mark.parametrize("n", range(1, 14))
def test_parity_basis_diagonalizes_parity(n):
    basis = parity_basis(n)
    t = basis.transform
    np.testing.assert_allclose(t.conj().T @ t, np.eye(n + 1), atol=1e-14)
    d = t.conj().T @ parity_operator(n) @ t
    expected = np.diag([1.0] * basis.dim_plus + [-1.0] * basis.dim_minus)
    np.testing.assert_allclose(d, expected, atol=1e-14)
    assert basis.dim_plus == n // 2 + 1


def test_parity_round_trip(rng):
    s = random_symmetric_state(9, rng)
    b = parity_basis(9)
    np.testing.assert_allclose(b.from_parity(b.to_parity(s.coeffs)), s.coeffs, atol=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 40), st.floats(-4, 4), st.floats(-4, 4))
def test_coherent_state_always_normalized(n, theta, phi):
    assert abs(coherent_state(n, theta, phi).norm() - 1) < 1e-12


@pytest.mark.parametrize("n", [3, 6, 11, 200])
def test_plus_y_state_has_positive_parity(n):
    b = parity_basis(n)
    a = b.to_parity(coherent_state(n, math.pi / 2, -math.pi / 2).coeffs)
    assert np.linalg.norm(a[b.dim_plus :]) < 1e-12
