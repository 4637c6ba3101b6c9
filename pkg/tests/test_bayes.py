import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from trustinfer.bayes import (
    Posterior,
    batch_posterior,
    map_hypothesis,
    posterior,
    predictive,
    sequential_update,
)
from trustinfer.core import BehaviorProfile, Hypothesis, HypothesisSet, Observation
from trustinfer.errors import MissingPriors, ZeroEvidence

from conftest import ABCD


def test_posterior_table_pair(pair):
    post = posterior(pair, "d")
    # oracle: .5 * .9 / (.5 * .9 + .5 * .01)
    expected = (0.5 * 0.9) / (0.5 * 0.9 + 0.5 * 0.01)
    assert post.weights[1] == pytest.approx(expected, abs=1e-15)
    assert post.weights[1] == pytest.approx(0.989011, abs=1e-6)
    assert post.evidence == pytest.approx(0.455)


def test_posterior_identical_profiles_returns_prior(p0):
    hset = HypothesisSet((Hypothesis("x", p0, 0.3), Hypothesis("y", p0, 0.7)))
    assert posterior(hset, "b").weights == pytest.approx((0.3, 0.7), abs=1e-15)


def test_posterior_degenerate_prior(p0, p1):
    hset = HypothesisSet((Hypothesis("0", p0, 1.0), Hypothesis("1", p1, 0.0)))
    assert posterior(hset, "d").weights == (1.0, 0.0)


def test_posterior_errors(p0, p1):
    with pytest.raises(MissingPriors):
        posterior(HypothesisSet((Hypothesis("0", p0), Hypothesis("1", p1))), "a")
    point = BehaviorProfile(ABCD, (1.0, 0.0, 0.0, 0.0))
    hset = HypothesisSet((Hypothesis("0", point, 0.5), Hypothesis("1", p1, 0.5)))
    one_sided = HypothesisSet((Hypothesis("0", point, 1.0), Hypothesis("1", p1, 0.0)))
    with pytest.raises(ZeroEvidence):
        posterior(one_sided, "d")
    with pytest.raises(ZeroEvidence):
        sequential_update(one_sided, ["a", "d"])
    # a hypothesis ruled out by the data keeps its slot with weight exactly 0
    assert sequential_update(hset, ["a", "d"]).weights[0] == 0.0


def test_sequential_empty_stream_is_prior(pair):
    assert sequential_update(pair, []).weights == (0.5, 0.5)


def test_sequential_matches_folded_posterior(pair):
    folded = posterior(posterior(pair, "d").hset, "d")
    seq = sequential_update(pair, ["d", "d"])
    for a, b in zip(folded.weights, seq.weights):
        assert a == pytest.approx(b, abs=1e-12)


def test_sequential_hundred_a(pair):
    post = sequential_update(pair, ["a"] * 100)
    # oracle: batch log-likelihood difference 100 * log2(.98 / .098) bits
    diff = 100 * math.log2(0.98 / 0.098)
    assert post.weights[0] == pytest.approx(1 / (1 + 2.0 ** -diff), abs=1e-12)
    assert post.weights[0] > 0.999


def test_long_stream_does_not_underflow(pair):
    post = sequential_update(pair, ["a"] * 10**5 + ["d"] * 10**4)
    assert math.fsum(post.weights) == pytest.approx(1.0, abs=1e-9)
    assert math.isfinite(post.log2_evidence)


def test_map_hypothesis(pair):
    assert map_hypothesis(posterior(pair, "d")).id == "1"
    assert map_hypothesis(Posterior(pair, 0.0)).id == "0"
    single = HypothesisSet((Hypothesis("only", pair[0].profile, 1.0),))
    assert map_hypothesis(posterior(single, "a")).id == "only"


def test_predictive(pair, p0):
    mix = predictive(pair).as_dict()
    for s, v in {"a": 0.539, "b": 0.003, "c": 0.003, "d": 0.455}.items():
        assert mix[s] == pytest.approx(v, abs=1e-15)
    assert predictive(HypothesisSet((Hypothesis("0", p0, 1.0),))) == p0


def test_posterior_json_round_trip(pair):
    post = sequential_update(pair, ["d", "a", "d"])
    assert Posterior.from_dict(post.to_dict(), pair) == post


@st.composite
def hsets(draw):
    n = draw(st.integers(1, 5))
    hyps = []
    raw_priors = draw(st.lists(st.integers(1, 100), min_size=n, max_size=n))
    for i in range(n):
        w = draw(st.lists(st.integers(1, 50), min_size=4, max_size=4))
        hyps.append(Hypothesis(str(i), BehaviorProfile(ABCD, tuple(v / sum(w) for v in w)),
                               raw_priors[i] / sum(raw_priors)))
    return HypothesisSet(tuple(hyps)), raw_priors


streams = st.lists(st.sampled_from("abcd"), max_size=200)


@settings(max_examples=100)
@given(hsets(), streams, st.integers(1, 1000))
def test_prior_scale_invariance(hs, stream, scale):
    hset, raw = hs
    rescaled = hset.with_priors([scale * r / (scale * sum(raw)) for r in raw])
    a, b = sequential_update(hset, stream), sequential_update(rescaled, stream)
    assert a.weights == pytest.approx(b.weights, abs=1e-15)
    assert map_hypothesis(a).id == map_hypothesis(b).id


@settings(max_examples=100)
@given(hsets(), streams, st.randoms(use_true_random=False))
def test_order_and_batch_invariance(hs, stream, rnd):
    hset, _ = hs
    shuffled = stream[:]
    rnd.shuffle(shuffled)
    a = sequential_update(hset, stream)
    b = sequential_update(hset, shuffled)
    c = batch_posterior(hset, Observation.from_events(stream, ABCD))
    assert np.max(np.abs(np.subtract(a.weights, b.weights))) < 1e-12
    assert np.max(np.abs(np.subtract(a.weights, c.weights))) < 1e-9
    assert math.fsum(a.weights) == pytest.approx(1.0, abs=1e-9)
