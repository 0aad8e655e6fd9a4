import json
import math

import numpy as np
import pytest

from skewmum.mum import (
    PositivityError,
    build_gell_mann_basis,
    build_mum_set,
    build_mum_set_kappa,
    check_sum_squares,
    completeness_residual,
    grid_operators,
    kappa_of_t,
    loo_gram_residual,
    max_positive_t,
    min_effect_eigenvalue,
    sum_f_residual,
    t_of_kappa,
    trace_condition_residual,
    validate_loo_basis,
)
from skewmum.reports import matrix_from_json, mum_effects_from_dict, mum_to_dict

from conftest import SX, SY, SZ

QUBIT_T = 1 / (math.sqrt(2) * (1 + math.sqrt(2)))


def test_gell_mann_qubit_is_pauli():
    basis = build_gell_mann_basis(2)
    for f, sigma in zip(basis, (SX, SY, SZ)):
        np.testing.assert_allclose(f, sigma / math.sqrt(2), atol=1e-15)


@pytest.mark.parametrize("d", [2, 3, 4, 5, 7])
def test_gell_mann_count_and_gram(d):
    basis = build_gell_mann_basis(d)
    assert len(basis) == d * d - 1
    gram = np.array([[np.trace(a @ b) for b in basis] for a in basis])
    assert np.max(np.abs(gram - np.eye(d * d - 1))) <= 1e-10
    validate_loo_basis(basis, d)


def test_gell_mann_spans_hermitian(rng):
    # together with I/sqrt(d) the basis reconstructs any Hermitian operator
    d = 4
    basis = build_gell_mann_basis(d) + [np.eye(d) / math.sqrt(d)]
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    h = g + g.conj().T
    recon = sum(np.trace(f @ h).real * f for f in basis)
    np.testing.assert_allclose(recon, h, atol=1e-12)


def test_gell_mann_rejects_small_d():
    with pytest.raises(ValueError):
        build_gell_mann_basis(1)


def test_qubit_at_max_t_is_pauli_mubs():
    mum = build_mum_set(2, QUBIT_T)
    assert mum.kappa == pytest.approx(1.0, abs=1e-14)
    for b, sigma in enumerate((SX, SY, SZ)):
        got = {tuple(np.round(mum.effects[b, n], 12).ravel()) for n in range(2)}
        want = {tuple(np.round((np.eye(2) + sign * sigma) / 2, 12).ravel()) for sign in (1, -1)}
        assert got == want


def test_qubit_max_t_matches_closed_form():
    t = max_positive_t(2)
    assert t == pytest.approx(QUBIT_T, abs=1e-12)
    assert t <= QUBIT_T + 1e-15


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_max_t_bisection_contract(d):
    t = max_positive_t(d)
    f = grid_operators(d)
    assert min_effect_eigenvalue(f, d, t)[0] >= -1e-10
    assert min_effect_eigenvalue(f, d, t * (1 + 1e-6))[0] < -1e-10
    # independent closed form: t_max = 1 / (d |lambda_min(F)|) over all grid operators
    lam = min(np.linalg.eigvalsh(f[b, n])[0] for b in range(d + 1) for n in range(d))
    assert t == pytest.approx(1 / (d * abs(lam)), rel=1e-12)


def test_qutrit_kappa_below_one():
    mum = build_mum_set(3, max_positive_t(3))
    assert 1 / 3 < mum.kappa < 1


def test_kappa_of_t_anchor():
    assert kappa_of_t(2, QUBIT_T) == pytest.approx(1.0, abs=1e-15)
    assert kappa_of_t(5, 1e-9) == pytest.approx(0.2, abs=1e-12)


@pytest.mark.parametrize("d", [2, 3, 4, 5, 8])
@pytest.mark.parametrize("frac", [0.01, 0.3, 0.77, 1.0])
def test_kappa_round_trip(d, frac):
    t = frac * max_positive_t(d)
    assert t_of_kappa(d, kappa_of_t(d, t)) == pytest.approx(t, abs=1e-12)


def test_t_of_kappa_rejects_small_kappa():
    with pytest.raises(ValueError):
        t_of_kappa(3, 1 / 3)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_kappa_monotone_in_t(d):
    ts = np.linspace(1e-4, max_positive_t(d), 50)
    ks = [build_mum_set(d, t).kappa for t in ts]
    assert np.all(np.diff(ks) > 0)


def test_qutrit_small_t():
    t = 0.05
    mum = build_mum_set(3, t)
    assert np.min([np.linalg.eigvalsh(mum.effects[b, n])[0] for b, n in mum.pairs()]) >= 0
    assert mum.kappa == pytest.approx(1 / 3 + t**2 * (1 + math.sqrt(3)) ** 2 * 2, abs=1e-12)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
@pytest.mark.parametrize("scale", [1.0, 0.5])
def test_mum_conditions(d, scale):
    mum = build_mum_set(d, scale * max_positive_t(d))
    assert trace_condition_residual(mum) <= 1e-10
    assert completeness_residual(mum) <= 1e-10
    assert sum_f_residual(mum) <= 1e-10
    assert check_sum_squares(mum) <= 1e-10


def test_trace_conditions_by_hand():
    # explicit double loop, independent of the vectorized residual
    d = 3
    mum = build_mum_set(d, 0.08)
    for b, n in mum.pairs():
        assert np.trace(mum.effects[b, n]).real == pytest.approx(1, abs=1e-12)
        for b2, n2 in mum.pairs():
            got = np.trace(mum.effects[b, n] @ mum.effects[b2, n2]).real
            if b != b2:
                want = 1 / d
            elif n == n2:
                want = mum.kappa
            else:
                want = (1 - mum.kappa) / (d - 1)
            assert got == pytest.approx(want, abs=1e-12)


def test_sum_squares_qubit_equals_three():
    mum = build_mum_set(2, QUBIT_T)
    total = sum(mum.effects[b, n] @ mum.effects[b, n] for b, n in mum.pairs())
    np.testing.assert_allclose(total, 3 * np.eye(2), atol=1e-14)


def test_positivity_error_names_effect():
    with pytest.raises(PositivityError) as info:
        build_mum_set(3, 1.0)
    assert info.value.min_eig < 0
    assert 0 <= info.value.b <= 3 and 0 <= info.value.n < 3
    assert "P_" in str(info.value)


def test_rejects_nonpositive_t():
    with pytest.raises(ValueError):
        build_mum_set(2, 0.0)


def test_custom_basis_rotated(rng):
    d = 3
    q, _ = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    basis = [q @ f @ q.conj().T for f in build_gell_mann_basis(d)]
    t = 0.5 * max_positive_t(d, basis)
    mum = build_mum_set(d, t, basis)
    assert trace_condition_residual(mum) <= 1e-10
    assert check_sum_squares(mum) <= 1e-10


def test_bad_basis_rejected():
    basis = build_gell_mann_basis(3)
    basis[0] = 2 * basis[0]
    assert loo_gram_residual(basis) > 1
    with pytest.raises(ValueError):
        build_mum_set(3, 0.05, basis)


def test_effects_immutable():
    mum = build_mum_set(2, 0.1)
    with pytest.raises(ValueError):
        mum.effects[0, 0, 0, 0] = 5


def test_json_round_trip():
    mum = build_mum_set_kappa(3, 0.5)
    doc = json.loads(json.dumps(mum_to_dict(mum)))
    assert doc["d"] == 3 and doc["kappa"] == pytest.approx(0.5)
    assert len(doc["effects"]) == 4 and len(doc["effects"][0]) == 3
    # row-major [re, im] pairs
    assert doc["effects"][0][0][0][1] == [mum.effects[0, 0, 0, 1].real, mum.effects[0, 0, 0, 1].imag]
    np.testing.assert_array_equal(mum_effects_from_dict(doc), mum.effects)
    np.testing.assert_array_equal(matrix_from_json(doc["effects"][2][1]), mum.effects[2, 1])
