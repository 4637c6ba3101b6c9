"""Fisher significance tests and Neyman-Pearson most-powerful tests on single events.

Conventions: rejection comparisons are strict (``< alpha`` for probabilities and
p-values, ``> eta`` for likelihood ratios); p-values count ties as "at least as
unlikely". The deterministic NP test is the default; the randomized variant
flips a seeded coin on the boundary level set so its size equals alpha.
"""
from __future__ import annotations

import bisect
import enum
import json
import math
from dataclasses import asdict, dataclass
from typing import Mapping, Optional

import numpy as np

from .core import BehaviorProfile, HypothesisSet, _check_same
from .errors import AlphaOutOfRange, BothZero, MissingSeed, OutOfRange, UnknownSymbol

# Likelihood ratios within this relative distance are treated as one level set.
LEVEL_TOL = 1e-12
# Slack on "size <= alpha" comparisons of summed probabilities.
SIZE_TOL = 1e-12


class Verdict(str, enum.Enum):
    RETAIN = "retain"
    REJECT = "reject"


@dataclass(frozen=True)
class Decision:
    verdict: Verdict
    # 1 or 0 for deterministic verdicts; gamma on the randomized NP boundary.
    rejection_probability: float

    @property
    def rejected(self) -> bool:
        return self.verdict is Verdict.REJECT

    @classmethod
    def of(cls, reject: bool) -> "Decision":
        return cls(Verdict.REJECT if reject else Verdict.RETAIN, 1.0 if reject else 0.0)


@dataclass(frozen=True)
class NPThreshold:
    eta: float
    boundary_gamma: float
    achieved_alpha: float
    randomized: bool = False


@dataclass(frozen=True)
class TestReport:
    __test__ = False  # not a pytest class

    decision: Decision
    statistic_value: float
    threshold: float
    size: float
    power: Optional[float]

    def to_dict(self) -> dict:
        return {
            "verdict": self.decision.verdict.value,
            "rejection_probability": self.decision.rejection_probability,
            "statistic": self.statistic_value,
            "threshold": self.threshold,
            "size": self.size,
            "power": self.power,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: Mapping) -> "TestReport":
        decision = Decision(Verdict(d["verdict"]), float(d.get("rejection_probability",
                                                                 1.0 if d["verdict"] == "reject" else 0.0)))
        power = d.get("power")
        return cls(decision, float(d["statistic"]), float(d["threshold"]), float(d["size"]),
                   None if power is None else float(power))

    @classmethod
    def from_json(cls, text: str) -> "TestReport":
        return cls.from_dict(json.loads(text))


def _check_alpha(alpha: float):
    if not (0.0 < alpha < 1.0):
        raise AlphaOutOfRange(f"alpha must lie strictly between 0 and 1, got {alpha!r}")


# -- Fisher-style significance ------------------------------------------------

def point_significance(p0: BehaviorProfile, x: str, alpha: float) -> Decision:
    """Reject when the observed event itself has null probability below alpha."""
    _check_alpha(alpha)
    return Decision.of(p0[x] < alpha)


def p_value(p0: BehaviorProfile, x: str) -> float:
    """Total null probability of the events no more likely than ``x``."""
    px = p0[x]
    ordered = sorted(p0.probs)
    return math.fsum(ordered[:bisect.bisect_right(ordered, px)])


def fisher_decide(p0: BehaviorProfile, x: str, alpha: float,
                  p1: Optional[BehaviorProfile] = None) -> TestReport:
    _check_alpha(alpha)
    pv = p_value(p0, x)
    region = {y: 1.0 if p_value(p0, y) < alpha else 0.0 for y in p0.alphabet}
    size, power = _region_size_power(p0, p1, region)
    return TestReport(Decision.of(pv < alpha), pv, alpha, size, power)


def point_decide(p0: BehaviorProfile, x: str, alpha: float,
                 p1: Optional[BehaviorProfile] = None) -> TestReport:
    """`point_significance` wrapped in a report carrying the region's size."""
    decision = point_significance(p0, x, alpha)
    region = {y: 1.0 if p0[y] < alpha else 0.0 for y in p0.alphabet}
    size, power = _region_size_power(p0, p1, region)
    return TestReport(decision, p0[x], alpha, size, power)


def _region_size_power(p0, p1, region):
    if p1 is None:
        size, _ = test_size_and_power(p0, p0, region)
        return size, None
    return test_size_and_power(p0, p1, region)


# -- Neyman-Pearson -----------------------------------------------------------

def likelihood_ratio(p0: BehaviorProfile, p1: BehaviorProfile, x: str) -> float:
    _check_same(p0.alphabet, p1.alphabet)
    a, b = p0[x], p1[x]
    if a == 0.0:
        if b == 0.0:
            raise BothZero(f"{x!r} has probability 0 under both hypotheses")
        return math.inf
    return b / a


def _levels(p0: BehaviorProfile, p1: BehaviorProfile):
    """Group symbols into likelihood-ratio level sets, highest ratio first.

    Returns a list of ``(ratio, symbols, null_mass)``. Symbols impossible under
    both hypotheses are left out; they carry no mass either way.
    """
    _check_same(p0.alphabet, p1.alphabet)
    ratios = []
    for s, a, b in zip(p0.alphabet, p0.probs, p1.probs):
        if a == 0.0 and b == 0.0:
            continue
        ratios.append((math.inf if a == 0.0 else b / a, s))
    ratios.sort(key=lambda t: -t[0])
    levels = []
    for r, s in ratios:
        if levels and (r == levels[-1][0] or math.isclose(r, levels[-1][0], rel_tol=LEVEL_TOL, abs_tol=0.0)):
            levels[-1][1].append(s)
        else:
            levels.append((r, [s]))
    return [(r, tuple(syms), math.fsum(p0[s] for s in syms)) for r, syms in levels]


def np_threshold(p0: BehaviorProfile, p1: BehaviorProfile, alpha: float,
                 randomized: bool = False) -> NPThreshold:
    threshold, _ = _np_region(p0, p1, alpha, randomized)
    return threshold


def _np_region(p0, p1, alpha, randomized):
    _check_alpha(alpha)
    levels = _levels(p0, p1)
    above = 0.0
    above_terms = []
    for ratio, symbols, mass in levels:
        if above + mass > alpha + SIZE_TOL:
            gamma = (alpha - above) / mass if randomized else 0.0
            gamma = min(max(gamma, 0.0), 1.0)
            rejection = {s: 0.0 for s in p0.alphabet}
            for r2, syms2, _ in levels:
                if r2 > ratio:
                    rejection.update(dict.fromkeys(syms2, 1.0))
            rejection.update(dict.fromkeys(symbols, gamma))
            achieved = math.fsum(above_terms + [gamma * mass])
            return NPThreshold(ratio, gamma, achieved, randomized), (rejection, symbols)
        above_terms.append(mass)
        above = math.fsum(above_terms)
    # unreachable for valid profiles and alpha < 1: the total null mass is 1
    rejection = {s: 1.0 for s in p0.alphabet}
    return NPThreshold(0.0, 0.0, above, randomized), (rejection, ())


def np_rejection_map(p0: BehaviorProfile, p1: BehaviorProfile, alpha: float,
                     randomized: bool = False) -> dict[str, float]:
    """Per-symbol rejection probability of the NP test at level alpha."""
    _, (rejection, _) = _np_region(p0, p1, alpha, randomized)
    return rejection


def np_decide(p0: BehaviorProfile, p1: BehaviorProfile, alpha: float, x: str,
              randomized: bool = False, seed: Optional[int] = None) -> TestReport:
    threshold, (rejection, boundary) = _np_region(p0, p1, alpha, randomized)
    ratio = likelihood_ratio(p0, p1, x)
    size, power = test_size_and_power(p0, p1, rejection)
    gamma = rejection[x]
    if x in boundary and 0.0 < gamma < 1.0:
        if seed is None:
            raise MissingSeed("the randomized test landed on the boundary level; a seed is required")
        u = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed & (2**64 - 1)))).random()
        decision = Decision(Verdict.REJECT if u < gamma else Verdict.RETAIN, gamma)
    else:
        decision = Decision.of(gamma == 1.0)
    return TestReport(decision, ratio, threshold.eta, size, power)


def test_size_and_power(p0: BehaviorProfile, p1: BehaviorProfile,
                        rejection: Mapping[str, float]) -> tuple[float, float]:
    """Exact size (null rejection probability) and power of a per-symbol rejection rule."""
    _check_same(p0.alphabet, p1.alphabet)
    for s, r in rejection.items():
        if s not in p0.alphabet:
            raise UnknownSymbol(f"{s!r} is not in the alphabet")
        if not (0.0 <= r <= 1.0):
            raise OutOfRange(f"rejection probability {r!r} for {s!r} outside [0, 1]")
    size = math.fsum(r * p0[s] for s, r in rejection.items())
    power = math.fsum(r * p1[s] for s, r in rejection.items())
    return min(size, 1.0), min(power, 1.0)


test_size_and_power.__test__ = False


def pairwise_np_matrix(hset: HypothesisSet, alpha: float, x: str,
                       randomized: bool = False, seed: Optional[int] = None):
    """Entry ``[i][j]`` tests null ``i`` against alternative ``j``; the diagonal is None."""
    if len(hset) < 2:
        raise ValueError("pairwise testing needs at least two hypotheses")
    n = len(hset)
    matrix = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                report = np_decide(hset[i].profile, hset[j].profile, alpha, x, randomized, seed)
                matrix[i][j] = report.decision
    return matrix
