"""Two-part minimum description length selection of a trust hypothesis.

The hypothesis space is the quantized simplex: every profile whose
probabilities are multiples of ``2**-k``, with a uniform prior. A member costs
``log2 |family|`` bits to name and ``-log2 Pr(data)`` bits to encode the data,
so with the uniform prior the minimum two-part length is the grid's
maximum-likelihood point. Ties go to the lexicographically smallest vector.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from . import lz78
from .core import (
    BehaviorAlphabet,
    BehaviorProfile,
    Hypothesis,
    Observation,
    _as_alphabet,
    _check_same,
    log_likelihood,
)
from .errors import (
    EmptyObservation,
    FamilyTooLarge,
    NotInFamily,
    OutOfRange,
    TrustError,
    UnknownMethod,
)

DEFAULT_RESOLUTION = 8
DEFAULT_MAX_MEMBERS = 10**7
# Members whose two-part lengths differ by less than this (relative) tie.
TIE_TOL = 1e-12
NULL_ROLE = "null/trustworthy"


def family_size(n_symbols: int, k: int) -> int:
    """Number of compositions of ``2**k`` into ``n_symbols`` nonnegative parts."""
    return math.comb(2**k + n_symbols - 1, n_symbols - 1)


@lru_cache(maxsize=4)
def _compositions(total: int, parts: int) -> np.ndarray:
    """All nonnegative integer vectors of length ``parts`` summing to ``total``, lexicographically ascending."""
    memo: dict[tuple[int, int], np.ndarray] = {}

    def build(t: int, p: int) -> np.ndarray:
        if p == 1:
            return np.array([[t]], dtype=np.int32)
        if (t, p) not in memo:
            blocks = []
            for first in range(t + 1):
                rest = build(t - first, p - 1)
                blocks.append(np.hstack([np.full((len(rest), 1), first, dtype=np.int32), rest]))
            memo[(t, p)] = np.vstack(blocks)
        return memo[(t, p)]

    grid = build(total, parts)
    grid.setflags(write=False)
    return grid


@dataclass(frozen=True)
class CodeLength:
    bits: float

    def __post_init__(self):
        if not (self.bits >= 0.0):
            raise OutOfRange(f"code length must be nonnegative, got {self.bits!r}")

    def __float__(self):
        return self.bits

    def __add__(self, other: "CodeLength") -> "CodeLength":
        return CodeLength(self.bits + other.bits)

    @property
    def finite(self) -> bool:
        return math.isfinite(self.bits)


@dataclass(frozen=True)
class QuantizedFamily:
    alphabet: BehaviorAlphabet
    resolution: int = DEFAULT_RESOLUTION
    max_members: int = DEFAULT_MAX_MEMBERS
    _size: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", _as_alphabet(self.alphabet))
        if self.resolution < 0:
            raise OutOfRange("grid resolution must be nonnegative")
        object.__setattr__(self, "_size", family_size(len(self.alphabet), self.resolution))

    @property
    def denominator(self) -> int:
        return 2**self.resolution

    def __len__(self):
        return self._size

    @property
    def hypothesis_bits(self) -> float:
        return math.log2(self._size)

    def grid(self) -> np.ndarray:
        """Integer numerators of every member, one row each, in lexicographic order."""
        if self._size > self.max_members:
            raise FamilyTooLarge(
                f"{self._size} members for |B|={len(self.alphabet)}, k={self.resolution}; "
                f"the bound is {self.max_members}"
            )
        return _compositions(self.denominator, len(self.alphabet))

    def numerators(self, profile: BehaviorProfile) -> tuple[int, ...]:
        """Grid coordinates of ``profile``; raises NotInFamily when it is off the grid."""
        _check_same(self.alphabet, profile.alphabet)
        nums = []
        for p in profile.probs:
            m = round(p * self.denominator)
            if abs(m - p * self.denominator) > 1e-9:
                raise NotInFamily(f"{profile.as_dict()} is not on the 2^-{self.resolution} grid")
            nums.append(m)
        if sum(nums) != self.denominator:
            raise NotInFamily("grid numerators do not sum to the denominator")
        return tuple(nums)

    def member(self, numerators: Sequence[int]) -> Hypothesis:
        nums = tuple(int(m) for m in numerators)
        if len(nums) != len(self.alphabet) or sum(nums) != self.denominator or min(nums) < 0:
            raise NotInFamily(f"{nums} is not a member of the 2^-{self.resolution} grid")
        probs = tuple(m / self.denominator for m in nums)
        hid = "grid[" + ",".join(map(str, nums)) + f"]/{self.denominator}"
        return Hypothesis(hid, BehaviorProfile(self.alphabet, probs), 1.0 / self._size)


def round_to_grid(profile: BehaviorProfile, k: int) -> BehaviorProfile:
    """Nearest grid profile by largest remainders; ties go to the earlier symbol."""
    denom = 2**k
    scaled = [p * denom for p in profile.probs]
    nums = [math.floor(x) for x in scaled]
    short = denom - sum(nums)
    order = sorted(range(len(scaled)), key=lambda i: (-(scaled[i] - nums[i]), i))
    for i in order[:short]:
        nums[i] += 1
    return BehaviorProfile(profile.alphabet, tuple(m / denom for m in nums))


def data_code_length(profile: BehaviorProfile, obs: Observation) -> CodeLength:
    return CodeLength(-log_likelihood(profile, obs) + 0.0)


def hypothesis_code_length(family: QuantizedFamily, h: Hypothesis) -> CodeLength:
    family.numerators(h.profile)
    return CodeLength(family.hypothesis_bits)


def two_part_length(family: QuantizedFamily, h: Hypothesis, obs: Observation) -> CodeLength:
    return hypothesis_code_length(family, h) + data_code_length(h.profile, obs)


def _data_bits_over_grid(grid: np.ndarray, denom: int, counts: Sequence[int]) -> np.ndarray:
    # log2 of every possible numerator, looked up instead of recomputed per member
    table = np.full(denom + 1, -np.inf)
    table[1:] = np.log2(np.arange(1, denom + 1) / denom)
    ll = np.zeros(len(grid))
    for b, c in enumerate(counts):
        if c:
            ll += c * table[grid[:, b]]
    return -ll


def mdl_select(family: QuantizedFamily, obs: Observation, chunk: int = 1 << 20) -> Hypothesis:
    """The member with the shortest two-part code for ``obs``.

    Lengths are computed chunk by chunk to bound temporaries; the winner is the
    first member (in lexicographic order) within TIE_TOL of the global minimum,
    so it does not depend on ``chunk``.
    """
    _check_same(family.alphabet, obs.alphabet)
    if obs.total == 0:
        raise EmptyObservation("model selection needs at least one event")
    grid = family.grid()
    bits = np.empty(len(grid))
    for start in range(0, len(grid), chunk):
        bits[start:start + chunk] = _data_bits_over_grid(
            grid[start:start + chunk], family.denominator, obs.counts)
    bits += family.hypothesis_bits
    best = bits.min()
    if not np.isfinite(best):
        raise TrustError("no member of the family can encode the data")
    i = int(np.argmax(bits <= best + TIE_TOL * max(1.0, abs(best))))
    return family.member(grid[i])


def formulate_null(obs: Observation, family: QuantizedFamily) -> Hypothesis:
    """MDL choice on baseline data, tagged as the trustworthy null hypothesis."""
    h = mdl_select(family, obs)
    return Hypothesis(h.id, h.profile, h.prior, NULL_ROLE)


# -- compression-based length estimates ---------------------------------------

Compressor = Callable[[Sequence[int], int], int]


def _lz78_bits(indices: Sequence[int], alphabet_size: int) -> int:
    return lz78.code_length(indices, alphabet_size)


def _stdlib_coder(module_name: str) -> Compressor:
    import importlib

    module = importlib.import_module(module_name)

    def bits(indices: Sequence[int], alphabet_size: int) -> int:
        if not indices:
            return 0
        if alphabet_size > 256:
            raise TrustError(f"{module_name} coder handles at most 256 symbols")
        return 8 * len(module.compress(bytes(indices)))

    return bits


COMPRESSORS: dict[str, Compressor] = {
    "lz78": _lz78_bits,
    "zlib": _stdlib_coder("zlib"),
    "bz2": _stdlib_coder("bz2"),
    "lzma": _stdlib_coder("lzma"),
}


def register_compressor(name: str, coder: Compressor):
    """Add a coder taking (symbol indices, alphabet size) and returning a length in bits."""
    COMPRESSORS[name] = coder


def compressor_length_estimate(obs: Observation, serialization: Sequence[str],
                               method: str = "lz78") -> CodeLength:
    try:
        coder = COMPRESSORS[method]
    except KeyError:
        raise UnknownMethod(f"unknown compressor {method!r}; have {sorted(COMPRESSORS)}") from None
    events = list(serialization)
    if Observation.from_events(events, obs.alphabet) != obs:
        raise TrustError("serialized stream does not match the observation counts")
    indices = [obs.alphabet.index(e) for e in events]
    return CodeLength(float(coder(indices, len(obs.alphabet))))


# -- reporting ----------------------------------------------------------------

@dataclass(frozen=True)
class MDLReport:
    selected: dict
    two_part_bits: float
    data_bits: float
    hypothesis_bits: float
    family_size: int
    compressor_bits: Optional[float] = None

    def to_dict(self) -> dict:
        d = {
            "selected": self.selected,
            "two_part_bits": self.two_part_bits,
            "data_bits": self.data_bits,
            "hypothesis_bits": self.hypothesis_bits,
            "family_size": self.family_size,
        }
        if self.compressor_bits is not None:
            d["compressor_bits"] = self.compressor_bits
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: Mapping) -> "MDLReport":
        return cls(dict(d["selected"]), float(d["two_part_bits"]), float(d["data_bits"]),
                   float(d["hypothesis_bits"]), int(d["family_size"]),
                   None if d.get("compressor_bits") is None else float(d["compressor_bits"]))


def mdl_report(family: QuantizedFamily, obs: Observation,
               serialization: Optional[Sequence[str]] = None,
               method: Optional[str] = None) -> MDLReport:
    h = formulate_null(obs, family)
    data = data_code_length(h.profile, obs).bits
    hyp = hypothesis_code_length(family, h).bits
    comp = None
    if method is not None:
        if serialization is None:
            raise TrustError("a compressor estimate needs the ordered event stream")
        comp = compressor_length_estimate(obs, serialization, method).bits
    return MDLReport(h.profile.as_dict(), data + hyp, data, hyp, len(family), comp)
