import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from monolab.errors import InputError
from monolab.monogamy import (
    Ordering,
    Region,
    alpha_threshold,
    analyze_state,
    ckw_check,
    compare_measures,
    monogamy_weight,
    region_classify,
    weight_c_schmidt,
    weight_tau_schmidt,
)
from monolab.states import (
    SchmidtParams,
    haar_random_pure,
    named_state,
    random_schmidt_params,
    schmidt_state,
)

unit = st.floats(0.01, 0.99)


def test_w_concurrence_triple():
    r = monogamy_weight(2 * math.sqrt(2) / 3, 2 / 3, 2 / 3)
    assert r.mu == pytest.approx(math.sqrt(2) - 1, abs=1e-12)
    assert r.region is Region.YELLOW
    assert r.k_tradeoff == pytest.approx(r.e_total / (1 + r.mu))


@pytest.mark.parametrize("triple,mu,region", [
    ((1.0, 0.5, 0.5), 1.0, Region.BLUE),
    ((0.9, 0.5, 0.3), 4 / 3, Region.BLUE),
    ((0.75, 0.5, 0.5), 0.5, Region.ORANGE),
    ((0.6, 0.3, 0.3), 1.0, Region.BLUE),
    ((0.5, 0.5, 0.5), 0.0, Region.BOUNDARY_NONMONOGAMOUS),
])
def test_weight_examples(triple, mu, region):
    r = monogamy_weight(*triple)
    assert r.mu == pytest.approx(mu, abs=1e-12)
    assert r.region is region
    small, large = sorted(triple[1:])
    assert r.mu * small + large == pytest.approx(triple[0], abs=1e-12)


def test_degenerate_triples():
    r = monogamy_weight(1.0, 0.0, 1.0)
    assert r.region is Region.DEGENERATE_TRIVIAL and math.isinf(r.mu)
    assert "zero_pair" in r.flags and "saturated" in r.flags
    assert math.isinf(r.alpha_min)
    zero = monogamy_weight(0.0, 0.0, 0.0)
    assert zero.region is Region.DEGENERATE_TRIVIAL and "zero_total" in zero.flags
    ghz = analyze_state(named_state("GHZ3"), "CONCURRENCE")
    assert ghz.region is Region.DEGENERATE_TRIVIAL
    assert ghz.alpha_min == 0.0


def test_rejects_non_triples():
    with pytest.raises(InputError, match="not an entanglement triple"):
        monogamy_weight(0.5, 0.7, 0.1)
    with pytest.raises(InputError):
        monogamy_weight(0.5, -0.1, 0.1)


@pytest.mark.parametrize("mu,region", [
    (1.0, Region.BLUE), (0.5, Region.ORANGE), (1 / 3, Region.YELLOW),
    (0.2, Region.WHITE), (0.0, Region.BOUNDARY_NONMONOGAMOUS),
    (math.inf, Region.DEGENERATE_TRIVIAL),
])
def test_region_boundaries(mu, region):
    assert region_classify(mu)[0] is region


@pytest.mark.parametrize("edge,above,below", [
    (1.0, Region.BLUE, Region.ORANGE),
    (0.5, Region.ORANGE, Region.YELLOW),
    (1 / 3, Region.YELLOW, Region.WHITE),
])
def test_regions_left_closed(edge, above, below):
    eps = 1e-12
    assert region_classify(edge + eps)[0] is above
    assert region_classify(edge - eps)[0] is below
    assert region_classify(eps)[0] is Region.WHITE


def test_region_rejects_negative():
    with pytest.raises(InputError):
        region_classify(-0.1)


def test_ckw_examples():
    assert ckw_check(1.0, 0.5, 0.5) == (True, 0.0)
    holds, slack = ckw_check(0.5, 0.4, 0.4)
    assert not holds and slack == pytest.approx(-0.3)
    assert ckw_check(0.5, 0.4, 0.4, alpha=4)[0]
    assert not ckw_check(0.5, 0.4, 0.4, alpha=3)[0]


def test_alpha_threshold_values():
    assert alpha_threshold(0.5, 0.5) == pytest.approx(1.0, abs=1e-9)
    x = math.sqrt(3) / 2
    assert alpha_threshold(x, x) == pytest.approx(math.log(2) / math.log(2 / math.sqrt(3)), abs=1e-9)
    assert alpha_threshold(1.0, 0.3) == math.inf
    assert alpha_threshold(0.0, 0.9) == 0.0
    with pytest.raises(InputError):
        alpha_threshold(1.2, 0.1)


@settings(max_examples=100, deadline=None)
@given(x1=unit, x2=unit, bump=st.floats(0.0, 0.5))
def test_alpha_threshold_properties(x1, x2, bump):
    g = alpha_threshold(x1, x2)
    assert x1**g + x2**g <= 1 + 1e-9
    if g > 1e-6:
        h = g * (1 - 1e-6)
        assert x1**h + x2**h >= 1 - 1e-6
    # larger ratios need a larger power
    assert alpha_threshold(min(x1 + bump, 0.99), x2) >= g - 1e-9


def test_closed_form_weights():
    p = SchmidtParams((0.5, 0, 0.5, 0.5, 0.5))
    assert weight_c_schmidt(p) == pytest.approx(math.sqrt(3) - 1, abs=1e-14)
    assert weight_tau_schmidt(p) == pytest.approx(2.0, abs=1e-14)
    flat = SchmidtParams((0.6, 0, 0.8, 0, 0))
    with pytest.raises(InputError, match="zero denominator"):
        weight_tau_schmidt(flat)
    with pytest.raises(InputError):
        weight_c_schmidt(SchmidtParams((0, 0, 0.6, 0.8, 0)))


def test_closed_form_stable_for_large_ratio():
    l3 = 1e-7
    l2 = math.sqrt(1 - 0.25 - l3**2)
    p = SchmidtParams((0.5, 0, l2, l3, 0))
    x = l2 / l3
    exact = 1 / (math.hypot(1, x) + x)
    assert weight_c_schmidt(p) == pytest.approx(exact, rel=1e-12)


def test_pipeline_matches_closed_forms():
    rng = np.random.default_rng(2)
    for _ in range(200):
        p = random_schmidt_params(rng)
        s = schmidt_state(p)
        assert analyze_state(s, "TANGLE").mu == pytest.approx(weight_tau_schmidt(p), abs=1e-8)
        assert analyze_state(s, "CONCURRENCE").mu == pytest.approx(weight_c_schmidt(p), abs=1e-8)


def test_reconstruction_on_haar_states():
    for i in range(50):
        r = analyze_state(haar_random_pure((2, 2, 2), i), "NEGATIVITY")
        if math.isfinite(r.mu):
            small, large = sorted((r.e_ab, r.e_ac))
            assert r.mu * small + large == pytest.approx(r.e_total, abs=1e-9)


def test_pair_override_provenance():
    r = analyze_state(named_state("QUTRIT_ANTISYM"), "CONCURRENCE", pair_override=(1, 1))
    assert r.provenance["pairs"] == "override"
    assert r.alpha_min_integer == 5
    t = analyze_state(named_state("QUTRIT_ANTISYM"), "TANGLE", pair_override=(1, 1))
    assert t.mu == pytest.approx(1 / 3, abs=1e-12)
    assert t.region is Region.YELLOW


def test_analyze_requires_three_parties():
    with pytest.raises(InputError):
        analyze_state(haar_random_pure((2, 2), 0), "TANGLE")


def test_compare_measures():
    w = named_state("W3")
    tau = analyze_state(w, "TANGLE").mu
    c = analyze_state(w, "CONCURRENCE").mu
    assert compare_measures(("tangle", tau), ("concurrence", c)) is Ordering.A_HIGHER
    assert compare_measures(("a", 0.5), ("b", 0.5 + 1e-12)) is Ordering.EQUIVALENT
    assert compare_measures(("a", 0.1), ("b", 0.2)) is Ordering.B_HIGHER
    with pytest.raises(InputError, match="incomparable"):
        compare_measures(("a", math.inf), ("b", 1.0))
