"""Nested-loop translation of proprietary terms to ontology terms.

Implements the three ranked methods (embedding, entailment, combined), the
similarity threshold, deterministic ordering, the combined averaging formula,
and human-review override pinning.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Callable, Protocol

from .catalog import CatalogTerm, OntologyCatalog, ProprietaryCatalog
from .errors import RuleBridgeError, ScorerUnavailableError
from .scoring import EmbeddingScorer, EntailmentScorer, EntailmentTriple

EMBEDDING = "embedding"
ENTAILMENT = "entailment"
COMBINED = "combined"
METHODS = (EMBEDDING, ENTAILMENT, COMBINED)

DEFAULT_THRESHOLD = 0.55
DEFAULT_TOP_N = 5

COMBINED_MEAN_TOLERANCE = 1e-9


@dataclass(frozen=True)
class PipelineConfig:
    threshold: float = DEFAULT_THRESHOLD
    top_n: int = DEFAULT_TOP_N
    method: str = COMBINED
    entailment_backend: str = "proxy"

    def __post_init__(self):
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError(f"threshold out of range: {self.threshold}")
        if self.top_n < 1:
            raise ValueError(f"top_n must be >= 1: {self.top_n}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method: {self.method!r}")
        if self.entailment_backend not in ("proxy", "remote"):
            raise ValueError(f"unknown entailment backend: {self.entailment_backend!r}")


@dataclass(frozen=True)
class ScoredCandidate:
    """One (source term, ontology term) pairing with its method scores."""

    source_name: str
    kind: str
    candidate_name: str
    rank: int = 1
    embedding_value: float | None = None
    entailment_triple: EntailmentTriple | None = None
    combined_pct: float | None = None
    pinned_by_review: bool = False

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be >= 1")
        both = self.embedding_value is not None and self.entailment_triple is not None
        if (self.combined_pct is not None) != both:
            raise ValueError("combined_pct must be present iff both component scores are")
        if self.combined_pct is not None:
            expected = (self.embedding_pct + self.entailment_triple.entailment) / 2.0
            if abs(self.combined_pct - expected) > COMBINED_MEAN_TOLERANCE:
                raise ValueError(
                    f"combined_pct {self.combined_pct} is not the mean of its components "
                    f"(expected {expected})"
                )

    @property
    def embedding_pct(self) -> float | None:
        """Embedding similarity on the 0-100 percent scale."""
        if self.embedding_value is None:
            return None
        return 100.0 * self.embedding_value


@dataclass(frozen=True)
class TranslationResult:
    """Ranked candidates for one source term under one method.

    ``candidates`` holds the full ranked list; presentation and evaluation
    use the first ``top_n`` entries (see ``presented``).
    """

    source_name: str
    kind: str
    method: str
    candidates: tuple[ScoredCandidate, ...]
    top_n: int = DEFAULT_TOP_N
    diagnostic: str | None = None
    advisory_candidates: tuple[ScoredCandidate, ...] = ()

    @property
    def no_result(self) -> bool:
        return not self.candidates

    def presented(self) -> tuple[ScoredCandidate, ...]:
        return self.candidates[:self.top_n]


def sort_key_value(method: str, candidate: ScoredCandidate) -> float:
    """The score a method ranks by (descending)."""
    if method == EMBEDDING:
        return candidate.embedding_value if candidate.embedding_value is not None else 0.0
    if method == ENTAILMENT:
        return candidate.entailment_triple.entailment if candidate.entailment_triple else 0.0
    if method == COMBINED:
        return candidate.combined_pct if candidate.combined_pct is not None else 0.0
    raise ValueError(f"unknown method: {method!r}")


def _ranked(method: str, candidates: list[ScoredCandidate]) -> tuple[ScoredCandidate, ...]:
    """Sort descending by the method's key, ties by ascending candidate name,
    and assign ranks 1..k."""
    ordered = sorted(candidates, key=lambda c: (-sort_key_value(method, c), c.candidate_name))
    return tuple(dataclasses.replace(c, rank=i) for i, c in enumerate(ordered, start=1))


def translate_embedding(
    source: CatalogTerm,
    ontology: OntologyCatalog,
    cfg: PipelineConfig,
    embed_scorer: EmbeddingScorer,
) -> TranslationResult:
    """Score the source against every ontology term of its kind, drop scores
    below the threshold, and rank the survivors descending."""
    terms = ontology.terms(source.kind)
    if not terms:
        raise RuleBridgeError(f"ontology has no {source.kind} terms")

    scores = [(term, embed_scorer(source.name, term.name)) for term in terms]
    if all(s.degenerate and s.value == 0.0 for _, s in scores):
        return TranslationResult(
            source_name=source.name,
            kind=source.kind,
            method=EMBEDDING,
            candidates=(),
            top_n=cfg.top_n,
            diagnostic="source has no in-vocabulary tokens",
        )

    survivors = [
        ScoredCandidate(
            source_name=source.name,
            kind=source.kind,
            candidate_name=term.name,
            embedding_value=score.value,
        )
        for term, score in scores
        if score.value >= cfg.threshold
    ]
    return TranslationResult(
        source_name=source.name,
        kind=source.kind,
        method=EMBEDDING,
        candidates=_ranked(EMBEDDING, survivors),
        top_n=cfg.top_n,
    )


def translate_entailment(
    source: CatalogTerm,
    ontology: OntologyCatalog,
    cfg: PipelineConfig,
    entail_scorer: EntailmentScorer,
) -> TranslationResult:
    """Score every ontology term with the entailment backend (premise = source,
    hypothesis = candidate) and rank descending by the entailment component.
    No threshold applies to this method."""
    terms = ontology.terms(source.kind)
    if not terms:
        raise RuleBridgeError(f"ontology has no {source.kind} terms")

    candidates = [
        ScoredCandidate(
            source_name=source.name,
            kind=source.kind,
            candidate_name=term.name,
            entailment_triple=entail_scorer(source.name, term.name),
        )
        for term in terms
    ]
    return TranslationResult(
        source_name=source.name,
        kind=source.kind,
        method=ENTAILMENT,
        candidates=_ranked(ENTAILMENT, candidates),
        top_n=cfg.top_n,
    )


def translate_combined(
    source: CatalogTerm,
    ontology: OntologyCatalog,
    cfg: PipelineConfig,
    embed_scorer: EmbeddingScorer,
    entail_scorer: EntailmentScorer,
) -> TranslationResult:
    """Re-rank the threshold-filtered embedding survivors by the mean of the
    embedding percentage and the entailment percentage.

    The candidate pool is every embedding survivor (not only the top five);
    entailment runs with premise = source and hypothesis = candidate.
    """
    preliminary = translate_embedding(source, ontology, cfg, embed_scorer)
    if preliminary.no_result:
        return dataclasses.replace(preliminary, method=COMBINED)

    rescored = []
    for candidate in preliminary.candidates:
        triple = entail_scorer(source.name, candidate.candidate_name)
        combined_pct = (100.0 * candidate.embedding_value + triple.entailment) / 2.0
        rescored.append(
            dataclasses.replace(
                candidate,
                entailment_triple=triple,
                combined_pct=combined_pct,
            )
        )
    return TranslationResult(
        source_name=source.name,
        kind=source.kind,
        method=COMBINED,
        candidates=_ranked(COMBINED, rescored),
        top_n=cfg.top_n,
    )


def translate_one(
    source: CatalogTerm,
    ontology: OntologyCatalog,
    cfg: PipelineConfig,
    embed_scorer: EmbeddingScorer | None = None,
    entail_scorer: EntailmentScorer | None = None,
    method: str | None = None,
) -> TranslationResult:
    """Dispatch to the configured method, validating the scorers it needs."""
    method = method or cfg.method
    if method == EMBEDDING:
        if embed_scorer is None:
            raise ScorerUnavailableError("embedding method requires an embedding scorer")
        return translate_embedding(source, ontology, cfg, embed_scorer)
    if method == ENTAILMENT:
        if entail_scorer is None:
            raise ScorerUnavailableError("entailment method requires an entailment scorer")
        return translate_entailment(source, ontology, cfg, entail_scorer)
    if method == COMBINED:
        if embed_scorer is None or entail_scorer is None:
            raise ScorerUnavailableError("combined method requires both scorers")
        return translate_combined(source, ontology, cfg, embed_scorer, entail_scorer)
    raise RuleBridgeError(f"unknown method: {method!r}")


@dataclass(frozen=True)
class BatchError:
    source_name: str
    kind: str
    message: str


@dataclass(frozen=True)
class BatchOutcome:
    results: tuple[TranslationResult, ...]
    errors: tuple[BatchError, ...] = ()


def translate_batch(
    catalog: ProprietaryCatalog,
    ontology: OntologyCatalog,
    cfg: PipelineConfig,
    embed_scorer: EmbeddingScorer | None = None,
    entail_scorer: EntailmentScorer | None = None,
) -> BatchOutcome:
    """Translate every distinct trigger and action in the catalog, preserving
    input order. Per-term failures are collected without aborting the batch."""
    results: list[TranslationResult] = []
    errors: list[BatchError] = []
    for term in (*catalog.triggers, *catalog.actions):
        try:
            results.append(
                translate_one(term, ontology, cfg, embed_scorer, entail_scorer)
            )
        except Exception as exc:  # noqa: BLE001 - aggregated per contract
            errors.append(BatchError(source_name=term.name, kind=term.kind, message=str(exc)))
    return BatchOutcome(results=tuple(results), errors=tuple(errors))


class ReviewLike(Protocol):
    """The slice of a review record the pipeline needs for override pinning."""

    verdict: str
    candidate: str | None


ReviewLookup = Callable[[str, str], "ReviewLike | None"]


def apply_review_overrides(result: TranslationResult, reviews: ReviewLookup) -> TranslationResult:
    """Pin a human-chosen candidate at rank 1, or mark the result no_result
    when the review verdict is that nothing suits.

    A chosen candidate absent from the list is inserted (score-less) at rank 1;
    the relative order of the remaining candidates is preserved. For a
    "none suitable" verdict the original candidates move to the advisory field.
    """
    review = reviews(result.source_name, result.kind)
    if review is None:
        return result

    if review.verdict == "none_suitable":
        return dataclasses.replace(
            result,
            candidates=(),
            advisory_candidates=result.candidates,
            diagnostic="review verdict: no suitable translation",
        )

    if review.verdict != "chosen" or not review.candidate:
        return result

    chosen_name = review.candidate
    chosen = next((c for c in result.candidates if c.candidate_name == chosen_name), None)
    if chosen is None:
        chosen = ScoredCandidate(
            source_name=result.source_name,
            kind=result.kind,
            candidate_name=chosen_name,
        )
    rest = [c for c in result.candidates if c.candidate_name != chosen_name]
    reordered = [dataclasses.replace(chosen, rank=1, pinned_by_review=True)]
    reordered.extend(dataclasses.replace(c, rank=i) for i, c in enumerate(rest, start=2))
    return dataclasses.replace(result, candidates=tuple(reordered))
