"""Seeded simulation, Monte Carlo error rates and regression searches.

Randomness is pinned to numpy's PCG64 seeded through SeedSequence. A stream
with seed ``s`` draws from ``PCG64(SeedSequence(s))``. Monte Carlo trial ``i``
under master seed ``m`` takes its uniforms from
``SeedSequence(m, spawn_key=(i,)).generate_state(4, uint64)``, so each trial
depends only on ``(m, i)`` and never on execution order.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np
from scipy.stats import binomtest

from .core import BehaviorProfile, Hypothesis, HypothesisSet, Observation
from .errors import BothZero, TrustError
from .mdl import QuantizedFamily, formulate_null
from .testing import np_decide, np_rejection_map

SEED_MASK = 2**64 - 1
# Entries (null, alternative) that must all reject for a cyclic-rejection fixture.
CYCLE_PATTERN = ((0, 1), (1, 2), (2, 1))


def _generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed & SEED_MASK)))


def _inverse_cdf(profile: BehaviorProfile, u: np.ndarray) -> np.ndarray:
    probs = np.asarray(profile.probs)
    cdf = np.cumsum(probs)
    # close the cdf at the last symbol with positive mass so rounding never lands past it
    last = int(np.flatnonzero(probs)[-1])
    cdf[last:] = 1.0
    return np.searchsorted(cdf, u, side="right")


@dataclass(frozen=True)
class StreamSpec:
    profile: BehaviorProfile
    length: int
    seed: int

    def __post_init__(self):
        if self.length < 1:
            raise TrustError("stream length must be at least 1")


def simulate_stream(spec: StreamSpec) -> tuple[list[str], Observation]:
    u = _generator(spec.seed).random(spec.length)
    idx = _inverse_cdf(spec.profile, u)
    symbols = spec.profile.alphabet.symbols
    events = [symbols[i] for i in idx]
    counts = np.bincount(idx, minlength=len(symbols))
    return events, Observation(spec.profile.alphabet, tuple(int(c) for c in counts))


def trial_uniforms(master_seed: int, trials: int, width: int = 4) -> np.ndarray:
    """``(trials, width)`` uniforms in [0, 1), row ``i`` derived from (master_seed, i) alone."""
    out = np.empty((trials, width))
    entropy = master_seed & SEED_MASK
    for i in range(trials):
        words = np.random.SeedSequence(entropy, spawn_key=(i,)).generate_state(width, np.uint64)
        out[i] = (words >> np.uint64(11)) * 2.0**-53
    return out


def wilson_halfwidth(successes: int, trials: int, confidence: float = 0.95) -> float:
    ci = binomtest(successes, trials).proportion_ci(confidence_level=confidence, method="wilson")
    return (ci.high - ci.low) / 2


@dataclass(frozen=True)
class ErrorRateReport:
    fpr_hat: float
    fnr_hat: float
    trials: int
    alpha_requested: float
    wilson_halfwidth: float

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: Mapping) -> "ErrorRateReport":
        return cls(float(d["fpr_hat"]), float(d["fnr_hat"]), int(d["trials"]),
                   float(d["alpha_requested"]), float(d["wilson_halfwidth"]))


def monte_carlo_error_rates(p0: BehaviorProfile, p1: BehaviorProfile, alpha: float,
                            trials: int, seed: int,
                            variant: str = "deterministic") -> ErrorRateReport:
    """Empirical size and miss rate of the NP test on single-event observations.

    Each trial draws one event under each hypothesis and, for the randomized
    variant, one boundary coin per draw. ``wilson_halfwidth`` is the 95% Wilson
    interval half-width of ``fpr_hat``.
    """
    if trials < 1:
        raise TrustError("at least one trial is required")
    if variant not in ("deterministic", "randomized"):
        raise TrustError(f"unknown variant {variant!r}")
    rejection = np_rejection_map(p0, p1, alpha, randomized=variant == "randomized")
    reject_prob = np.array([rejection[s] for s in p0.alphabet])
    u = trial_uniforms(seed, trials)
    x0 = _inverse_cdf(p0, u[:, 0])
    x1 = _inverse_cdf(p1, u[:, 2])
    # u < 1 always, so probability-1 symbols always reject and probability-0 never do
    false_pos = int(np.count_nonzero(u[:, 1] < reject_prob[x0]))
    misses = int(np.count_nonzero(u[:, 3] >= reject_prob[x1]))
    return ErrorRateReport(false_pos / trials, misses / trials, trials, alpha,
                           wilson_halfwidth(false_pos, trials))


def _random_grid_profile(rng: np.random.Generator, alphabet, k: int,
                         concentration: float = 0.25) -> BehaviorProfile:
    # a sparse Dirichlet favors peaked profiles with a few rare symbols
    nums = rng.multinomial(2**k, rng.dirichlet(np.full(len(alphabet), concentration)))
    return BehaviorProfile(alphabet, tuple(int(m) / 2**k for m in nums))


def shows_cycle(hset: HypothesisSet, alpha: float, x: str) -> bool:
    """True when every CYCLE_PATTERN entry of the pairwise NP matrix rejects on ``x``."""
    try:
        return all(np_decide(hset[i].profile, hset[j].profile, alpha, x).decision.rejected
                   for i, j in CYCLE_PATTERN)
    except BothZero:
        return False


def find_cyclic_rejection(alpha: float, seed: int, attempts: int,
                          alphabet: Sequence[str] = ("a", "b", "c"), k: int = 6):
    """Random search for three hypotheses and an event rejecting along CYCLE_PATTERN.

    Returns ``(hypothesis_set, event)``, or None once the attempts run out.
    """
    from .core import BehaviorAlphabet

    alphabet = BehaviorAlphabet(tuple(alphabet))
    rng = _generator(seed)
    for _ in range(attempts):
        hset = HypothesisSet(tuple(
            Hypothesis(str(i), _random_grid_profile(rng, alphabet, k)) for i in range(3)
        ))
        for x in alphabet:
            if shows_cycle(hset, alpha, x):
                return hset, x
    return None


def mdl_recovery_experiment(true_profile: BehaviorProfile, family: QuantizedFamily,
                            n: int, seeds: Iterable[int]) -> float:
    """Fraction of seeds for which MDL on ``n`` simulated events returns the generator."""
    target = family.numerators(true_profile)
    hits = total = 0
    for s in seeds:
        _, obs = simulate_stream(StreamSpec(true_profile, n, s))
        hits += family.numerators(formulate_null(obs, family).profile) == target
        total += 1
    return hits / total
