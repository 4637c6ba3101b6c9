"""Posterior updating over a finite hypothesis set."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .core import (
    BehaviorProfile,
    Hypothesis,
    HypothesisSet,
    Observation,
    _check_same,
)
from .errors import MissingPriors, ZeroEvidence


@dataclass(frozen=True)
class Posterior:
    """Hypotheses re-weighted by the data.

    ``log2_evidence`` is the base-2 log of the prior-predictive probability of
    the conditioning data; the linear ``evidence`` underflows to 0.0 for long
    streams, the log does not.
    """

    hset: HypothesisSet
    log2_evidence: float

    @property
    def weights(self) -> tuple[float, ...]:
        return self.hset.priors

    @property
    def evidence(self) -> float:
        return 2.0 ** self.log2_evidence

    def weight(self, hid: str) -> float:
        for h in self.hset:
            if h.id == hid:
                return h.prior
        raise KeyError(hid)

    def to_dict(self) -> dict:
        return {
            "weights": {h.id: h.prior for h in self.hset},
            "log2_evidence": self.log2_evidence,
            "map": map_hypothesis(self).id,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: Mapping, template: HypothesisSet) -> "Posterior":
        weights = [float(d["weights"][h.id]) for h in template]
        return cls(template.with_priors(weights), float(d["log2_evidence"]))


def _require_priors(hset: HypothesisSet):
    if not hset.has_priors:
        raise MissingPriors("Bayesian updating needs a prior on every hypothesis")


def _log2(x: float) -> float:
    return math.log2(x) if x > 0.0 else -math.inf


def _normalize(hset: HypothesisSet, log_scores: Sequence[float]) -> Posterior:
    top = max(log_scores)
    if top == -math.inf:
        raise ZeroEvidence("the data are impossible under every positively weighted hypothesis")
    rel = [2.0 ** (s - top) if s > -math.inf else 0.0 for s in log_scores]
    z = math.fsum(rel)
    weights = [r / z for r in rel]
    return Posterior(hset.with_priors(weights), top + math.log2(z))


def posterior(hset: HypothesisSet, x: str) -> Posterior:
    _require_priors(hset)
    joint = [h.profile[x] * h.prior for h in hset]
    evidence = math.fsum(joint)
    if evidence == 0.0:
        raise ZeroEvidence(f"{x!r} is impossible under every positively weighted hypothesis")
    return Posterior(hset.with_priors([j / evidence for j in joint]), math.log2(evidence))


def sequential_update(hset: HypothesisSet, stream: Iterable[str]) -> Posterior:
    """Fold the stream event by event in log space, normalizing once at the end."""
    _require_priors(hset)
    alphabet = hset.alphabet
    logp = np.array([[_log2(p) for p in h.profile.probs] for h in hset])
    acc = np.array([_log2(h.prior) for h in hset])
    idx = np.fromiter((alphabet.index(e) for e in stream), dtype=np.int64)
    if idx.size:
        acc = acc + logp[:, idx].sum(axis=1)
    return _normalize(hset, acc.tolist())


def batch_posterior(hset: HypothesisSet, obs: Observation) -> Posterior:
    """Posterior from total counts; agrees with `sequential_update` on any ordering."""
    _require_priors(hset)
    _check_same(hset.alphabet, obs.alphabet)
    scores = []
    for h in hset:
        terms = [_log2(h.prior)]
        for p, c in zip(h.profile.probs, obs.counts):
            if c:
                terms.append(c * _log2(p))
        scores.append(-math.inf if -math.inf in terms else math.fsum(terms))
    return _normalize(hset, scores)


def map_hypothesis(p: Posterior) -> Hypothesis:
    """Highest-weight hypothesis; the first declared wins a tie."""
    best = p.hset[0]
    for h in p.hset.hypotheses[1:]:
        if h.prior > best.prior:
            best = h
    return best


def predictive(hset: HypothesisSet) -> BehaviorProfile:
    _require_priors(hset)
    mix = [math.fsum(h.prior * h.profile.probs[i] for h in hset) for i in range(len(hset.alphabet))]
    return BehaviorProfile(hset.alphabet, tuple(mix))
