import numpy as np
import pytest

from conftest import random_density, wootters_textbook
from monolab.errors import InputError
from monolab.measures import MeasureId
from monolab.roof import convex_roof


def test_reconstruction_is_exact():
    rho = random_density(np.random.default_rng(0), 4, 2)
    res = convex_roof(rho, "CONCURRENCE", restarts=2)
    assert np.allclose(res.reconstruct(), rho, atol=1e-8)
    assert res.weights.sum() == pytest.approx(1.0, abs=1e-10)
    assert np.allclose(np.linalg.norm(res.states, axis=0), 1.0)
    assert res.status in ("converged", "budget-exhausted")


def test_rank_one_returns_pure_value():
    psi = np.array([0.6, 0, 0, 0.8])
    res = convex_roof(np.outer(psi, psi), "CONCURRENCE")
    assert res.value == pytest.approx(0.96)
    assert res.evaluations == 1


def test_separable_mixture_has_zero_roof():
    rho = np.diag([0.5, 0, 0, 0.5]).astype(complex)
    assert convex_roof(rho, "CONCURRENCE", restarts=4).value == pytest.approx(0, abs=1e-6)


@pytest.mark.parametrize("seed", range(5))
def test_matches_wootters(seed):
    rho = random_density(np.random.default_rng(100 + seed), 4, 2)
    value = convex_roof(rho, "CONCURRENCE", seed=seed).value
    oracle = wootters_textbook(rho)
    assert -1e-6 <= value - oracle <= 1e-3


def test_never_exceeds_eigen_ensemble():
    rho = random_density(np.random.default_rng(7), 4, 3)
    w, v = np.linalg.eigh(rho)
    eig_avg = sum(wi * 2 * abs(vi[0] * vi[3] - vi[1] * vi[2]) for wi, vi in zip(w, v.T))
    assert convex_roof(rho, "CONCURRENCE", restarts=1, max_evals=10).value <= eig_avg + 1e-12


def test_callable_measure_matches_builtin():
    rho = random_density(np.random.default_rng(3), 4, 2)

    def conc(v):
        return 2 * abs(v[0] * v[3] - v[1] * v[2])

    a = convex_roof(rho, conc, restarts=2, seed=1).value
    b = convex_roof(rho, MeasureId("CONCURRENCE"), restarts=2, seed=1).value
    assert a == pytest.approx(b, abs=1e-9)


def test_tangle_roof_on_qubit_qutrit_is_upper_bound():
    rho = random_density(np.random.default_rng(4), 6, 2)
    res = convex_roof(rho, "TANGLE", dims=(2, 3), restarts=2)
    assert 0 <= res.value <= 1
    assert np.allclose(res.reconstruct(), rho, atol=1e-8)


def test_input_limits():
    with pytest.raises(InputError):
        convex_roof(np.eye(32) / 32, "TANGLE", dims=(2, 16))
    with pytest.raises(InputError):
        convex_roof(np.eye(4) / 4, "TANGLE", k=2)
