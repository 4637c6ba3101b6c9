"""Readers and writers for profile, hypothesis-set and observation files.

Profile:        {"alphabet": [...], "probs": {symbol: number}}
Hypothesis set: {"alphabet": [...], "hypotheses": [{"id", "prior", "probs"}, ...]}
Observation:    newline-delimited symbol labels, or a JSON counts object
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Sequence, Union

from .core import (
    BehaviorAlphabet,
    BehaviorProfile,
    Hypothesis,
    HypothesisSet,
    Observation,
    validate_profile,
)
from .errors import ParseError, TrustError

PathLike = Union[str, Path]


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{what}: invalid JSON ({e})") from None


def _alphabet(doc, what) -> BehaviorAlphabet:
    if not isinstance(doc, dict) or not isinstance(doc.get("alphabet"), list):
        raise ParseError(f"{what}: expected an object with an \"alphabet\" list")
    try:
        return BehaviorAlphabet(tuple(doc["alphabet"]))
    except TrustError as e:
        raise ParseError(f"{what}: {e}") from None


def parse_profile(text: str, what: str = "profile") -> BehaviorProfile:
    doc = _load_json(text, what)
    alphabet = _alphabet(doc, what)
    if not isinstance(doc.get("probs"), dict):
        raise ParseError(f"{what}: expected a \"probs\" object")
    return validate_profile(doc["probs"], alphabet)


def profile_to_json(profile: BehaviorProfile) -> str:
    return json.dumps({"alphabet": list(profile.alphabet), "probs": profile.as_dict()}, indent=2)


def parse_hypothesis_set(text: str, what: str = "hypothesis set") -> HypothesisSet:
    doc = _load_json(text, what)
    alphabet = _alphabet(doc, what)
    entries = doc.get("hypotheses")
    if not isinstance(entries, list) or not entries:
        raise ParseError(f"{what}: expected a nonempty \"hypotheses\" array")
    hyps = []
    for i, e in enumerate(entries):
        if not isinstance(e, dict) or "probs" not in e:
            raise ParseError(f"{what}: hypothesis #{i} needs \"probs\"")
        profile = validate_profile(e["probs"], alphabet)
        hyps.append(Hypothesis(str(e.get("id", i)), profile, e.get("prior")))
    return HypothesisSet(tuple(hyps))


def hypothesis_set_to_json(hset: HypothesisSet, **extra) -> str:
    doc = {
        "alphabet": list(hset.alphabet),
        "hypotheses": [
            {"id": h.id, "prior": h.prior, "probs": h.profile.as_dict()} for h in hset
        ],
    }
    doc.update(extra)
    return json.dumps(doc, indent=2)


def parse_events(text: str, alphabet: Optional[BehaviorAlphabet] = None):
    """Parse an observation file.

    Returns ``(events, observation)``; ``events`` is None for a counts object.
    Without an alphabet, symbols are declared in order of first appearance
    (or key order for a counts object).
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        doc = _load_json(stripped, "observation")
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in doc.values()):
            raise ParseError("observation: counts must be integers")
        if alphabet is None:
            alphabet = BehaviorAlphabet(tuple(doc))
        unknown = [s for s in doc if s not in alphabet]
        if unknown:
            raise ParseError(f"observation: unknown symbols {unknown!r}")
        return None, Observation.from_counts(doc, alphabet)
    events = [line.strip() for line in text.splitlines() if line.strip()]
    if alphabet is None:
        if not events:
            raise ParseError("observation: empty stream and no alphabet to define it")
        alphabet = BehaviorAlphabet(tuple(dict.fromkeys(events)))
    unknown = sorted({e for e in events if e not in alphabet})
    if unknown:
        raise ParseError(f"observation: unknown symbols {unknown!r}")
    return events, Observation.from_events(events, alphabet)


def events_to_text(events: Sequence[str]) -> str:
    return "".join(e + "\n" for e in events)


def read_text(path: PathLike) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
