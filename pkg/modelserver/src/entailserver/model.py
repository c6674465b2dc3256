"""Deterministic lexical NLI classifier.

The model scores a (premise, hypothesis) pair into entailment,
contradiction, and neutral percentages by running a small set of lexical
overlap features through a per-label linear layer and a softmax. The layer
weights live in a JSON file, so swapping the model means swapping the
weights file; inference has no randomness and identical requests always
produce identical responses.

Feature intuition: a hypothesis whose words are covered by the premise is
entailed; an opposite-direction word pair (on/off, opened/closed) signals
contradiction; words the premise never mentioned push toward neutral.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

LABELS = ("entailment", "contradiction", "neutral")

DEFAULT_WEIGHTS_PATH = Path(__file__).parent / "weights.json"

_WORD = re.compile(r"[a-z0-9']+")

# Articles and copulas only: direction-bearing words like "on" or "up"
# must stay visible to the conflict feature.
_STOPWORDS = frozenset(
    "a an the is are was were be been being to of and or it this that".split()
)

_ANTONYM_PAIRS: tuple[tuple[str, str], ...] = (
    ("on", "off"),
    ("open", "close"),
    ("opened", "closed"),
    ("opens", "closes"),
    ("start", "stop"),
    ("starts", "stops"),
    ("started", "stopped"),
    ("enter", "exit"),
    ("enters", "exits"),
    ("arrives", "leaves"),
    ("inside", "outside"),
    ("above", "below"),
    ("up", "down"),
    ("day", "night"),
    ("sunrise", "sunset"),
    ("connected", "disconnected"),
    ("locked", "unlocked"),
    ("rises", "drops"),
    ("increased", "decreased"),
)

_OPPOSITE = {word: other for pair in _ANTONYM_PAIRS for word, other in (pair, pair[::-1])}


class ModelLoadError(RuntimeError):
    """The weights file is missing or does not describe a usable model."""


def tokenize(text: str) -> list[str]:
    return [w for w in _WORD.findall(text.lower()) if w not in _STOPWORDS]


def _conflict(premise: Iterable[str], hypothesis: Iterable[str]) -> float:
    hypothesis_set = set(hypothesis)
    for word in premise:
        other = _OPPOSITE.get(word)
        if other is not None and other in hypothesis_set:
            return 1.0
    return 0.0


def _features(premise: str, hypothesis: str) -> dict[str, float]:
    p = tokenize(premise)
    h = tokenize(hypothesis)
    shared = len(set(p) & set(h))
    coverage = shared / len(set(h)) if h else 0.0
    reverse = shared / len(set(p)) if p else 0.0
    balance = min(len(p), len(h)) / max(len(p), len(h)) if p and h else 0.0
    return {
        "bias": 1.0,
        "coverage": coverage,
        "reverse": reverse,
        "conflict": _conflict(p, h),
        "novelty": 1.0 - coverage,
        "balance": balance,
    }


KNOWN_FEATURES = frozenset(_features("", ""))


@dataclass(frozen=True)
class NliWeights:
    """A loaded model: feature order plus one weight vector per label."""

    version: str
    features: tuple[str, ...]
    logits: dict[str, tuple[float, ...]]

    def __post_init__(self):
        unknown = set(self.features) - KNOWN_FEATURES
        if unknown:
            raise ModelLoadError(f"unknown features in weights file: {sorted(unknown)}")
        for label in LABELS:
            if label not in self.logits:
                raise ModelLoadError(f"weights file missing label: {label}")
            vector = self.logits[label]
            if len(vector) != len(self.features):
                raise ModelLoadError(
                    f"{label} weight vector has {len(vector)} entries, "
                    f"expected {len(self.features)}"
                )
            if not all(isinstance(w, (int, float)) and math.isfinite(w) for w in vector):
                raise ModelLoadError(f"{label} weight vector has a non-finite entry")


class LexicalNliModel:
    """Inference over loaded weights. Stateless after construction, so one
    instance can serve concurrent requests read-only."""

    def __init__(self, weights: NliWeights):
        self.weights = weights

    @property
    def version(self) -> str:
        return self.weights.version

    def predict(self, premise: str, hypothesis: str) -> dict[str, float]:
        """Class percentages for one pair. Components are positive and sum
        to 100 up to float rounding; the neutral component absorbs the
        rounding remainder so the sum stays exact by construction."""
        features = _features(premise, hypothesis)
        vector = [features[name] for name in self.weights.features]
        logits = {
            label: sum(w * f for w, f in zip(self.weights.logits[label], vector))
            for label in LABELS
        }
        peak = max(logits.values())
        exps = {label: math.exp(value - peak) for label, value in logits.items()}
        total = sum(exps.values())
        entailment = exps["entailment"] / total * 100.0
        contradiction = exps["contradiction"] / total * 100.0
        # Clamp guards the degenerate case where the other two components
        # round up to a hair above 100 between them.
        neutral = max(0.0, 100.0 - entailment - contradiction)
        return {
            "entailment": entailment,
            "contradiction": contradiction,
            "neutral": neutral,
        }

    def predict_batch(self, pairs: Sequence[tuple[str, str]]) -> list[dict[str, float]]:
        return [self.predict(premise, hypothesis) for premise, hypothesis in pairs]


def load_model(path: str | Path | None = None) -> LexicalNliModel:
    """Read a weights file and build the model; ModelLoadError on any
    problem with the file so the server can answer 503 instead of dying."""
    weights_path = Path(path) if path is not None else DEFAULT_WEIGHTS_PATH
    try:
        payload = json.loads(weights_path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ModelLoadError(f"cannot read weights file {weights_path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ModelLoadError(f"weights file {weights_path} is not valid JSON") from exc
    if not isinstance(payload, dict):
        raise ModelLoadError(f"weights file {weights_path} must hold a JSON object")
    try:
        weights = NliWeights(
            version=str(payload["version"]),
            features=tuple(payload["features"]),
            logits={
                label: tuple(vector)
                for label, vector in dict(payload["logits"]).items()
            },
        )
    except (KeyError, TypeError) as exc:
        raise ModelLoadError(f"weights file {weights_path} is malformed: {exc}") from exc
    return LexicalNliModel(weights)
