#!/usr/bin/env python3
"""Regenerate tests/fixtures/vectors_16d.txt.

Deterministic toy word vectors for the test suite: tokens are grouped into
concept clusters, each vector is its cluster center plus small noise, and
antonym pairs are pushed apart along a per-pair polarity axis so opposites
stay distinguishable. Every center shares a common component so unrelated
phrases land at a moderate baseline similarity instead of near zero.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

DIM = 16
SEED = 20240518
NOISE = 0.10
SHARED_WEIGHT = 0.35
POLARITY = 0.85

CLUSTERS: dict[str, list[str]] = {
    "power": ["turn", "turned", "turns", "switch", "switched", "power", "on", "off",
              "start", "starts", "started", "stop", "stops", "stopped"],
    "device": ["device", "appliance", "a", "c", "air", "conditioner", "heater",
               "lamp", "light", "tv", "speaker", "sensor"],
    "temperature": ["temperature", "degrees", "heat", "warm", "cold", "rises",
                    "drops", "above", "below", "threshold", "adjust",
                    "increased", "decreased"],
    "motion": ["motion", "movement", "detected", "detects", "presence"],
    "door": ["door", "window", "opened", "open", "closed", "close", "lock",
             "locked", "unlock"],
    "message": ["message", "send", "sent", "receive", "received", "text", "sms",
                "mail", "email", "notification"],
    "feed": ["new", "item", "feed", "matches", "update", "post", "shared",
             "profile", "photo", "upload"],
    "music": ["music", "play", "plays", "song", "audio", "sound"],
    "time": ["time", "sunset", "sunrise", "sun", "evening", "morning", "day",
             "night", "every"],
    "generic": ["any", "event", "events", "thing", "happens", "when", "if",
                "then", "in", "the", "at", "of", "to"],
}

# (cluster, positive token stems, negative token stems): both sides move
# POLARITY apart along one axis drawn per pair.
ANTONYM_AXES = [
    ("power", ["on"], ["off"]),
    ("power", ["start", "starts", "started"], ["stop", "stops", "stopped"]),
    ("temperature", ["above", "rises", "increased"], ["below", "drops", "decreased"]),
    ("door", ["opened", "open", "unlock"], ["closed", "close", "lock", "locked"]),
]


def generate() -> dict[str, np.ndarray]:
    rng = np.random.default_rng(SEED)
    shared = rng.normal(size=DIM)
    shared /= np.linalg.norm(shared)

    centers: dict[str, np.ndarray] = {}
    for cluster in CLUSTERS:
        center = rng.normal(size=DIM)
        center /= np.linalg.norm(center)
        centers[cluster] = (1.0 - SHARED_WEIGHT) * center + SHARED_WEIGHT * shared

    offsets: dict[str, np.ndarray] = {}
    for cluster, positives, negatives in ANTONYM_AXES:
        axis = rng.normal(size=DIM)
        axis /= np.linalg.norm(axis)
        for token in positives:
            offsets[token] = POLARITY * axis
        for token in negatives:
            offsets[token] = -POLARITY * axis

    vectors: dict[str, np.ndarray] = {}
    for cluster, tokens in CLUSTERS.items():
        for token in tokens:
            vec = centers[cluster] + NOISE * rng.normal(size=DIM)
            vec = vec + offsets.get(token, 0.0)
            vectors[token] = vec
    return vectors


def main() -> None:
    vectors = generate()
    out = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "vectors_16d.txt"
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8") as fh:
        fh.write(f"{len(vectors)} {DIM}\n")
        for token, vec in vectors.items():
            values = " ".join(f"{v:.6f}" for v in vec)
            fh.write(f"{token} {values}\n")
    print(f"wrote {len(vectors)} vectors to {out}")


if __name__ == "__main__":
    main()
