"""Domain types shared by every inference module.

A trust profile is a probability distribution over a finite, ordered set of
observable behaviors. Observations are count vectors over the same set. All
types are frozen; values are stored as tuples aligned with the alphabet's
declaration order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    AlphabetMismatch,
    EmptyObservation,
    MissingPriors,
    MissingSymbol,
    NonUnitSum,
    OutOfRange,
    TrustError,
    UnknownSymbol,
)

# Tolerance on every "sums to one" check (profiles, priors, posteriors).
SUM_TOL = 1e-9


@dataclass(frozen=True)
class BehaviorAlphabet:
    symbols: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        symbols = tuple(self.symbols)
        if not symbols:
            raise TrustError("alphabet must be nonempty")
        if any(not isinstance(s, str) for s in symbols):
            raise TrustError("behavior labels must be strings")
        if len(set(symbols)) != len(symbols):
            raise TrustError(f"duplicate behavior labels in {symbols!r}")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(symbols)})

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._index

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise UnknownSymbol(f"{symbol!r} is not in the alphabet {self.symbols!r}") from None


def _as_alphabet(alphabet) -> BehaviorAlphabet:
    if isinstance(alphabet, BehaviorAlphabet):
        return alphabet
    return BehaviorAlphabet(tuple(alphabet))


@dataclass(frozen=True)
class BehaviorProfile:
    """A distribution over the alphabet. Build through `validate_profile`."""

    alphabet: BehaviorAlphabet
    probs: tuple[float, ...]

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probs)
        if len(probs) != len(self.alphabet):
            raise MissingSymbol("one probability per alphabet symbol is required")
        for s, p in zip(self.alphabet, probs):
            if not (0.0 <= p <= 1.0):
                raise OutOfRange(f"probability of {s!r} is {p}, outside [0, 1]")
        total = math.fsum(probs)
        if abs(total - 1.0) > SUM_TOL:
            raise NonUnitSum(f"probabilities sum to {total!r}")
        object.__setattr__(self, "probs", probs)

    def __getitem__(self, symbol: str) -> float:
        return self.probs[self.alphabet.index(symbol)]

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.alphabet.symbols, self.probs))


@dataclass(frozen=True)
class Observation:
    """Counts of observed behaviors; `total == 1` is a single-event observation."""

    alphabet: BehaviorAlphabet
    counts: tuple[int, ...]

    def __post_init__(self):
        counts = []
        for c in self.counts:
            if isinstance(c, float) and c.is_integer():
                c = int(c)
            if not isinstance(c, int) or isinstance(c, bool):
                raise TrustError(f"counts must be integers, got {c!r}")
            if c < 0:
                raise OutOfRange(f"negative count {c}")
            counts.append(c)
        if len(counts) != len(self.alphabet):
            raise MissingSymbol("one count per alphabet symbol is required")
        object.__setattr__(self, "counts", tuple(counts))

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __getitem__(self, symbol: str) -> int:
        return self.counts[self.alphabet.index(symbol)]

    def __add__(self, other: "Observation") -> "Observation":
        _check_same(self.alphabet, other.alphabet)
        return Observation(self.alphabet, tuple(a + b for a, b in zip(self.counts, other.counts)))

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.alphabet.symbols, self.counts))

    @classmethod
    def from_counts(cls, counts: Mapping[str, int], alphabet) -> "Observation":
        alphabet = _as_alphabet(alphabet)
        for s in counts:
            alphabet.index(s)
        return cls(alphabet, tuple(counts.get(s, 0) for s in alphabet))

    @classmethod
    def from_events(cls, events: Iterable[str], alphabet) -> "Observation":
        alphabet = _as_alphabet(alphabet)
        counts = [0] * len(alphabet)
        for e in events:
            counts[alphabet.index(e)] += 1
        return cls(alphabet, tuple(counts))

    @classmethod
    def single(cls, symbol: str, alphabet) -> "Observation":
        return cls.from_events([symbol], alphabet)


@dataclass(frozen=True)
class Hypothesis:
    id: str
    profile: BehaviorProfile
    prior: Optional[float] = None
    role: Optional[str] = None

    def __post_init__(self):
        if self.prior is not None:
            if not (0.0 <= self.prior <= 1.0):
                raise OutOfRange(f"prior of {self.id!r} is {self.prior}, outside [0, 1]")
            object.__setattr__(self, "prior", float(self.prior))


@dataclass(frozen=True)
class HypothesisSet:
    hypotheses: tuple[Hypothesis, ...]

    def __post_init__(self):
        hyps = tuple(self.hypotheses)
        if not hyps:
            raise TrustError("a hypothesis set needs at least one hypothesis")
        alphabet = hyps[0].profile.alphabet
        for h in hyps[1:]:
            _check_same(alphabet, h.profile.alphabet)
        ids = [h.id for h in hyps]
        if len(set(ids)) != len(ids):
            raise TrustError(f"duplicate hypothesis ids in {ids!r}")
        priors = [h.prior for h in hyps]
        if any(p is not None for p in priors):
            if any(p is None for p in priors):
                raise MissingPriors("either every hypothesis has a prior or none does")
            total = math.fsum(priors)
            if abs(total - 1.0) > SUM_TOL:
                raise NonUnitSum(f"priors sum to {total!r}")
        object.__setattr__(self, "hypotheses", hyps)

    @property
    def alphabet(self) -> BehaviorAlphabet:
        return self.hypotheses[0].profile.alphabet

    @property
    def has_priors(self) -> bool:
        return self.hypotheses[0].prior is not None

    @property
    def priors(self) -> tuple[float, ...]:
        if not self.has_priors:
            raise MissingPriors("hypothesis set carries no priors")
        return tuple(h.prior for h in self.hypotheses)

    def __len__(self):
        return len(self.hypotheses)

    def __iter__(self):
        return iter(self.hypotheses)

    def __getitem__(self, i) -> Hypothesis:
        return self.hypotheses[i]

    def with_priors(self, priors: Sequence[float]) -> "HypothesisSet":
        return HypothesisSet(tuple(
            Hypothesis(h.id, h.profile, float(p), h.role) for h, p in zip(self.hypotheses, priors)
        ))


def _check_same(a: BehaviorAlphabet, b: BehaviorAlphabet):
    if a.symbols != b.symbols:
        raise AlphabetMismatch(f"alphabets differ: {a.symbols!r} vs {b.symbols!r}")


def validate_profile(raw: Mapping[str, float], alphabet) -> BehaviorProfile:
    alphabet = _as_alphabet(alphabet)
    for s in raw:
        if s not in alphabet:
            raise UnknownSymbol(f"{s!r} is not in the alphabet {alphabet.symbols!r}")
    missing = [s for s in alphabet if s not in raw]
    if missing:
        raise MissingSymbol(f"no probability given for {missing!r}")
    values = []
    for s in alphabet:
        v = raw[s]
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise OutOfRange(f"probability of {s!r} is not a number: {v!r}")
        values.append(float(v))
    return BehaviorProfile(alphabet, tuple(values))


def empirical_profile(obs: Observation) -> BehaviorProfile:
    total = obs.total
    if total == 0:
        raise EmptyObservation("cannot form frequencies from an empty observation")
    return BehaviorProfile(obs.alphabet, tuple(c / total for c in obs.counts))


def log_likelihood(profile: BehaviorProfile, obs: Observation) -> float:
    """Base-2 log-probability of the counts; -inf if any observed symbol has probability 0."""
    _check_same(profile.alphabet, obs.alphabet)
    terms = []
    for p, c in zip(profile.probs, obs.counts):
        if c == 0:
            continue
        if p == 0.0:
            return -math.inf
        terms.append(c * math.log2(p))
    return math.fsum(terms)
