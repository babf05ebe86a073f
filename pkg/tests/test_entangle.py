import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ising_floquet import (
    NumericalStabilityError,
    concurrence,
    concurrence_eigenvalues,
    entanglement_series,
    linear_entropy,
    random_symmetric_state,
    rdm1,
    rdm2,
    von_neumann_entropy,
)
from ising_floquet.entangle import concurrence_direct
from ising_floquet.symspace import SymmetricState, dicke_state

from conftest import floquet, initial_state

BELL = np.zeros((4, 4), dtype=complex)
BELL[np.ix_([0, 3], [0, 3])] = 0.5


def test_entropy_bounds_at_maximal_mixing():
    rho = np.eye(2) / 2
    assert linear_entropy(rho) == pytest.approx(0.5)
    assert von_neumann_entropy(rho) == pytest.approx(math.log(2))


def test_w_state_concurrence():
    # a single excitation shared by N qubits: C = 2/N
    for n in (3, 5, 8):
        assert concurrence(rdm2(dicke_state(n, 1))) == pytest.approx(2 / n, abs=1e-12)


def test_bell_and_product_concurrence():
    assert concurrence(BELL) == pytest.approx(1.0)
    prod = np.zeros((4, 4))
    prod[0, 0] = 1
    assert concurrence(prod) == 0.0
    np.testing.assert_allclose(concurrence_eigenvalues(np.eye(4) / 4), [1 / 16] * 4)


def test_invalid_rdm_is_rejected():
    bad = np.diag([1.2, -0.2, 0, 0]).astype(complex)
    with pytest.raises(NumericalStabilityError):
        concurrence(bad)
    with pytest.raises(NumericalStabilityError):
        concurrence(np.triu(np.ones((4, 4))) / 4)
    with pytest.raises(ValueError):
        concurrence(np.eye(2))


def test_rdms_are_states(rng):
    for n in (2, 3, 11, 40):
        s = random_symmetric_state(n, rng)
        for rho in (rdm1(s), rdm2(s)):
            np.testing.assert_allclose(rho, rho.conj().T, atol=1e-15)
            assert np.trace(rho).real == pytest.approx(1.0)
            assert np.linalg.eigvalsh(rho).min() > -1e-12


def test_rdm2_marginal_is_rdm1(rng):
    s = random_symmetric_state(7, rng)
    r2 = rdm2(s).reshape(2, 2, 2, 2)
    np.testing.assert_allclose(np.einsum("ijkj->ik", r2), rdm1(s), atol=1e-14)


def test_series_layout():
    recs = entanglement_series(floquet(6), initial_state(6, "zero"), 16)
    assert [r.n for r in recs] == list(range(17))
    assert recs[0].concurrence < 1e-12 and recs[0].linear_entropy < 1e-12


@pytest.mark.parametrize(
    "n,state,period",
    [(6, "zero", 8), (10, "zero", 8), (8, "zero", 24), (12, "zero", 24),
     (6, "plus", 4), (10, "plus", 4), (8, "plus", 12), (12, "plus", 12)],
)
def test_entanglement_periods(n, state, period):
    recs = entanglement_series(floquet(n), initial_state(n, state), 3 * period)
    for a, b in zip(recs, recs[period:]):
        assert abs(a.linear_entropy - b.linear_entropy) < 1e-9
        assert abs(a.von_neumann - b.von_neumann) < 1e-9
        assert abs(a.concurrence - b.concurrence) < 1e-9


@pytest.mark.parametrize("n", [6, 8, 10, 12])
def test_odd_even_pairing(n):
    recs = entanglement_series(floquet(n), initial_state(n, "zero"), 60)
    for k in range(1, 31):
        assert abs(recs[2 * k - 1].linear_entropy - recs[2 * k].linear_entropy) < 1e-9
        assert abs(recs[2 * k - 1].concurrence - recs[2 * k].concurrence) < 1e-9


def test_two_concurrence_routes_agree(rng):
    for n in (2, 4, 9, 30):
        for _ in range(10):
            rho = rdm2(random_symmetric_state(n, rng))
            assert abs(concurrence(rho) - concurrence_direct(rho)) < 1e-9


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 30), st.integers(0, 2**32 - 1))
def test_measure_ranges(n, seed):
    s = random_symmetric_state(n, seed)
    r1 = rdm1(s)
    assert -1e-12 <= linear_entropy(r1) <= 0.5 + 1e-12
    assert -1e-12 <= von_neumann_entropy(r1) <= math.log(2) + 1e-12
    assert 0 <= concurrence(rdm2(s)) <= 1


def test_accepts_raw_coefficients():
    c = np.zeros(5, dtype=complex)
    c[2] = 1
    np.testing.assert_allclose(rdm1(c), rdm1(SymmetricState(4, c)))


# Printed eigenvalues at these steps differ from their odd/even partner, which
# the pairing symmetry forbids; the printed concurrence (0) is still correct.
TABLE_ERRATA = {("8zero", 8), ("8zero", 32)}


def test_table_eigenvalues(concurrence_tables):
    from ising_floquet.floquet import evolve_series

    for key, table in concurrence_tables.items():
        n = table["n_qubits"]
        rows = evolve_series(floquet(n), initial_state(n, table["state"]), [r["n"] for r in table["rows"]])
        for row, coeffs in zip(table["rows"], rows):
            got = concurrence_eigenvalues(rdm2(SymmetricState(n, coeffs)))
            if (key, row["n"]) in TABLE_ERRATA:
                partner = evolve_series(floquet(n), initial_state(n, table["state"]), [row["n"] - 1])[0]
                np.testing.assert_allclose(got, concurrence_eigenvalues(rdm2(partner)), atol=1e-12)
                continue
            np.testing.assert_allclose(got, sorted(row["eigenvalues"], reverse=True), atol=1e-9, err_msg=f"{key} n={row['n']}")
