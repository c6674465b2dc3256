"""Scorer contract and the three scorer backends.

An embedding scorer maps a (source, candidate) name pair to a similarity in
[0, 1]; an entailment scorer maps a (premise, hypothesis) pair to an
(entailment, contradiction, neutral) percentage triple summing to 100. The
remote entailment backend speaks the wire protocol:

    POST /entail        {"premise": str, "hypothesis": str}
                        -> {"entailment": n, "contradiction": n, "neutral": n}
    POST /entail/batch  {"pairs": [{"premise": str, "hypothesis": str}, ...]}
                        -> {"results": [triple, ...]}  (same order)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import requests

from .embedvec import VectorStore, cosine, embed, tokenize
from .errors import ScorerUnavailableError

TRIPLE_SUM_TOLERANCE = 0.01

# Token-level opposite pairs for the lexical proxy's conflict check. Bigram
# opposites like "turned on"/"turned off" reduce to their distinguishing token.
DEFAULT_ANTONYM_PAIRS: tuple[tuple[str, str], ...] = (
    ("on", "off"),
    ("above", "below"),
    ("rises", "drops"),
    ("increased", "decreased"),
    ("start", "stop"),
    ("open", "close"),
)


@dataclass(frozen=True)
class EmbeddingScore:
    """Cosine similarity clamped at 0 for ranking, plus a degeneracy flag."""

    value: float
    degenerate: bool = False

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0 + 1e-12:
            raise ValueError(f"embedding score out of range: {self.value}")


@dataclass(frozen=True)
class EntailmentTriple:
    """Entailment/contradiction/neutral percentages summing to 100."""

    entailment: float
    contradiction: float
    neutral: float

    def __post_init__(self):
        validate_triple(self.entailment, self.contradiction, self.neutral)

    def as_dict(self) -> dict[str, float]:
        return {
            "entailment": self.entailment,
            "contradiction": self.contradiction,
            "neutral": self.neutral,
        }


def validate_triple(entailment: float, contradiction: float, neutral: float) -> None:
    """Enforce the triple invariant: components >= 0 and summing to 100 within
    TRIPLE_SUM_TOLERANCE. Raises ValueError otherwise."""
    for label, component in (
        ("entailment", entailment),
        ("contradiction", contradiction),
        ("neutral", neutral),
    ):
        if not isinstance(component, (int, float)) or component != component:
            raise ValueError(f"{label} component is not a number: {component!r}")
        if component < 0:
            raise ValueError(f"{label} component is negative: {component}")
    total = entailment + contradiction + neutral
    if abs(total - 100.0) > TRIPLE_SUM_TOLERANCE:
        raise ValueError(f"triple components sum to {total}, expected 100")


# Scorer signatures used throughout the pipeline.
EmbeddingScorer = Callable[[str, str], EmbeddingScore]
EntailmentScorer = Callable[[str, str], EntailmentTriple]


def embedding_score(source: str, candidate: str, store: VectorStore) -> EmbeddingScore:
    """Similarity of two term names: cosine of their mean token vectors,
    clamped at 0. Degenerate when either side has no in-vocabulary token."""
    doc_a = embed(source, store)
    doc_b = embed(candidate, store)
    value = max(0.0, cosine(doc_a, doc_b))
    return EmbeddingScore(value=value, degenerate=doc_a.degenerate or doc_b.degenerate)


def make_embedding_scorer(store: VectorStore) -> EmbeddingScorer:
    def scorer(source: str, candidate: str) -> EmbeddingScore:
        return embedding_score(source, candidate, store)

    return scorer


def proxy_entailment(
    premise: str,
    hypothesis: str,
    antonym_pairs: Sequence[tuple[str, str]] = DEFAULT_ANTONYM_PAIRS,
) -> EntailmentTriple:
    """Deterministic lexical stand-in for a model-backed entailment scorer.

    Entailment is 100 times the fraction of hypothesis tokens covered by the
    premise (set semantics). The remainder splits into contradiction and
    neutral: 60% of it is contradiction when a configured opposite pair spans
    premise and hypothesis, 10% otherwise.

    Raises:
        ValueError: hypothesis has no tokens.
    """
    hyp_tokens = set(tokenize(hypothesis))
    if not hyp_tokens:
        raise ValueError(f"hypothesis has no tokens: {hypothesis!r}")
    prem_tokens = set(tokenize(premise))

    coverage = len(prem_tokens & hyp_tokens) / len(hyp_tokens)
    entailment = 100.0 * coverage
    remainder = 100.0 - entailment

    conflict = any(
        (x in prem_tokens and y in hyp_tokens) or (y in prem_tokens and x in hyp_tokens)
        for x, y in antonym_pairs
    )
    contradiction = (0.6 if conflict else 0.1) * remainder
    neutral = remainder - contradiction
    return EntailmentTriple(entailment=entailment, contradiction=contradiction, neutral=neutral)


class RemoteEntailmentClient:
    """Client for the entailment wire protocol with idempotent retries.

    Responses failing the triple invariant are rejected and surfaced as
    scorer-unavailable, as are transport failures.
    """

    def __init__(
        self,
        endpoint: str,
        timeout: float = 10.0,
        retries: int = 2,
        session: requests.Session | None = None,
    ):
        self.endpoint = endpoint.rstrip("/")
        self.timeout = timeout
        self.retries = retries
        self._session = session or requests.Session()

    def score(self, premise: str, hypothesis: str) -> EntailmentTriple:
        payload = {"premise": premise, "hypothesis": hypothesis}
        body = self._post("/entail", payload)
        return self._parse_triple(body)

    def score_batch(self, pairs: Sequence[tuple[str, str]]) -> list[EntailmentTriple]:
        payload = {"pairs": [{"premise": p, "hypothesis": h} for p, h in pairs]}
        body = self._post("/entail/batch", payload)
        results = body.get("results") if isinstance(body, dict) else None
        if not isinstance(results, list) or len(results) != len(pairs):
            raise ScorerUnavailableError(
                f"malformed batch response from {self.endpoint}: expected {len(pairs)} results"
            )
        return [self._parse_triple(item) for item in results]

    def _post(self, route: str, payload: dict) -> dict:
        url = self.endpoint + route
        last_error: Exception | None = None
        for _ in range(self.retries + 1):
            try:
                response = self._session.post(url, json=payload, timeout=self.timeout)
            except requests.RequestException as exc:
                last_error = exc
                continue
            if response.status_code != 200:
                raise ScorerUnavailableError(
                    f"entailment service at {url} returned HTTP {response.status_code}"
                )
            try:
                return response.json()
            except ValueError as exc:
                raise ScorerUnavailableError(f"non-JSON response from {url}") from exc
        raise ScorerUnavailableError(f"entailment service unreachable at {url}: {last_error}")

    @staticmethod
    def _parse_triple(body: dict) -> EntailmentTriple:
        if not isinstance(body, dict):
            raise ScorerUnavailableError(f"malformed entailment response: {body!r}")
        try:
            return EntailmentTriple(
                entailment=body["entailment"],
                contradiction=body["contradiction"],
                neutral=body["neutral"],
            )
        except (KeyError, TypeError) as exc:
            raise ScorerUnavailableError(f"malformed entailment response: {body!r}") from exc
        except ValueError as exc:
            raise ScorerUnavailableError(f"invalid entailment triple: {exc}") from exc
