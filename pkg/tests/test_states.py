import json
import math

import numpy as np
import pytest
from scipy.stats import unitary_group

from monolab.errors import DimensionCapError, InputError
from monolab.linalg import partial_trace
from monolab.measures import tangle_pure
from monolab.states import (
    PureState,
    SchmidtParams,
    haar_random_pure,
    named_state,
    random_schmidt_params,
    schmidt_state,
    state_from_spec,
    tensor_power,
)


def test_w3_amplitudes():
    w = named_state("W3")
    expected = np.zeros(8)
    expected[[1, 2, 4]] = 1 / np.sqrt(3)
    assert np.allclose(w.amplitudes, expected)
    assert w.dims == (2, 2, 2)


def test_qutrit_antisymmetric_sign_pattern():
    s = named_state("QUTRIT_ANTISYM")
    t = s.amplitudes.reshape(3, 3, 3) * np.sqrt(6)
    for (a, b, c), sign in [((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                            ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)]:
        assert t[a, b, c] == pytest.approx(sign)
    # antisymmetric under exchange of any two parties
    assert np.allclose(t, -t.transpose(1, 0, 2))
    assert np.allclose(t, -t.transpose(0, 2, 1))
    rho_a, _ = s.reduced([0])
    assert np.allclose(rho_a, np.eye(3) / 3)


def test_ghz_class():
    s = named_state("GHZ_CLASS(4)")
    assert s.dims == (2,) * 4
    assert np.allclose(s.amplitudes[[0, 15]], 1 / np.sqrt(2))
    assert np.count_nonzero(s.amplitudes) == 2
    s3 = named_state("GHZ_CLASS(3,3)")
    assert np.allclose(s3.amplitudes[[0, 13, 26]], 1 / np.sqrt(3))
    skew = named_state("GHZ_CLASS", weights=[0.6, 0.8], n=3)
    assert np.allclose(skew.amplitudes[[0, 7]], [0.6, 0.8])
    with pytest.raises(InputError):
        named_state("GHZ_CLASS", weights=[1, 1], n=3)


def test_unknown_label():
    with pytest.raises(InputError, match="unknown state label"):
        named_state("BELL")


def test_pure_state_validation():
    with pytest.raises(InputError, match="not normalized"):
        PureState(np.array([1.0, 1.0]), (2,))
    with pytest.raises(InputError):
        PureState(np.array([1.0, 0, 0]), (2,))
    s = PureState(np.array([1.0, 0]), (2,))
    with pytest.raises(ValueError):
        s.amplitudes[0] = 0


def test_haar_determinism_and_seed_sensitivity():
    a = haar_random_pure((2, 2, 2), 7)
    b = haar_random_pure((2, 2, 2), 7)
    c = haar_random_pure((2, 2, 2), 8)
    assert np.array_equal(a.amplitudes, b.amplitudes)
    assert not np.allclose(a.amplitudes, c.amplitudes)


def test_haar_marginal_purity_ensemble():
    # E Tr rho_A^2 = (dA + dB) / (dA dB + 1) = 4/5 for two qubits
    n = 4000
    ours = np.array([_purity(haar_random_pure((2, 2), i).amplitudes) for i in range(n)])
    oracle = np.array([_purity(unitary_group.rvs(4, random_state=i)[:, 0]) for i in range(n)])
    for sample in (ours, oracle):
        se = sample.std(ddof=1) / np.sqrt(n)
        assert abs(sample.mean() - 0.8) < 3 * se


def _purity(psi):
    m = psi.reshape(2, 2)
    rho = m @ m.conj().T
    return float(np.trace(rho @ rho).real)


def test_haar_dimension_cap(monkeypatch):
    monkeypatch.setenv("MONOLAB_DIM_CAP", "4")
    with pytest.raises(DimensionCapError):
        haar_random_pure((2, 2, 2), 0)


def test_schmidt_state_support_and_phase():
    p = SchmidtParams((0.5, 0.5, 0.5, 0.3, math.sqrt(0.16)), phi=0.7)
    s = schmidt_state(p)
    assert np.flatnonzero(s.amplitudes).tolist() == [0, 4, 5, 6, 7]
    assert s.amplitudes[4] == pytest.approx(0.5 * np.exp(0.7j))


def test_schmidt_params_validation():
    with pytest.raises(InputError):
        SchmidtParams((1.0, 0, 0, 0))
    with pytest.raises(InputError):
        SchmidtParams((1.0, -0.0001, 0, 0, 0))
    with pytest.raises(InputError, match="not normalized"):
        SchmidtParams((1.0, 0.1, 0, 0, 0))
    assert not SchmidtParams((0, 0, 0, 0.6, 0.8)).is_canonical


def test_random_schmidt_params_canonical():
    rng = np.random.default_rng(3)
    for _ in range(200):
        p = random_schmidt_params(rng)
        assert p.is_canonical
        assert 0 <= p.phi < 2 * np.pi


def test_tau_a_bc_formula_on_schmidt_family():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        p = random_schmidt_params(rng)
        l0 = p.lambdas[0]
        s = schmidt_state(p)
        # rho_A has eigenvalues l0^2 and 1 - l0^2 up to the l0 l1 coherence
        rho = np.outer(s.amplitudes, s.amplitudes.conj())
        rho_a = partial_trace(rho, (2, 2, 2), [0])
        oracle = 2 * (1 - np.trace(rho_a @ rho_a).real)
        assert tangle_pure(s) == pytest.approx(oracle, abs=1e-12)
        l2, l3, l4 = p.lambdas[2:]
        assert tangle_pure(s) == pytest.approx(4 * l0**2 * (l2**2 + l3**2 + l4**2), abs=1e-12)


def test_tensor_power_layout():
    bell = PureState(np.array([1, 0, 0, 1]) / np.sqrt(2), (2, 2))
    sq = tensor_power(bell, 2)
    assert sq.dims == (2, 2, 2, 2)
    assert sq.parties == ((0, 2), (1, 3))
    assert np.allclose(sq.amplitudes, np.kron(bell.amplitudes, bell.amplitudes))
    rho_a, dims = sq.reduced([0])
    assert dims == (2, 2)
    assert np.allclose(rho_a, np.eye(4) / 4)
    with pytest.raises(InputError):
        tensor_power(bell, 0)


def test_tensor_power_marginals_are_powers():
    s = haar_random_pure((2, 3), 5)
    p = tensor_power(s, 3)
    rho_a, _ = s.reduced([0])
    rho_a3, _ = p.reduced([0])
    assert np.allclose(rho_a3, np.kron(np.kron(rho_a, rho_a), rho_a))


def test_state_spec_forms(tmp_path):
    w = named_state("W3")
    assert state_from_spec("named:W3") == w
    assert state_from_spec({"kind": "named", "label": "W3"}) == w
    assert state_from_spec('{"kind": "named", "label": "W3"}') == w
    path = tmp_path / "w.json"
    path.write_text(json.dumps({"kind": "named", "label": "W3"}))
    assert state_from_spec(f"@{path}") == w
    assert state_from_spec("haar:2,2,2:9") == haar_random_pure((2, 2, 2), 9)
    s = state_from_spec("schmidt:0.6,0,0.8,0,0:0.5")
    assert s.amplitudes[5] == pytest.approx(0.8)
    power = state_from_spec({"kind": "tensor_power", "base": "named:W3", "m": 2})
    assert power.dims == (2,) * 6
    explicit = state_from_spec({"kind": "explicit", "dims": [2],
                                "amplitudes": [[0.6, 0], [0, 0.8]]})
    assert explicit.amplitudes[1] == pytest.approx(0.8j)


@pytest.mark.parametrize("spec", [
    "nonsense", "haar:2,x:1", "schmidt:1,0", '{"kind": ', {"kind": "named"},
    {"kind": "teleport"}, "@/nonexistent/file.json", [1, 2],
])
def test_state_spec_errors(spec):
    with pytest.raises(InputError):
        state_from_spec(spec)
