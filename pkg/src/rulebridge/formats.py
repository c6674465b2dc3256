"""Result serializers.

Canonical records keep the legacy field names of the original result dumps
(ifttt_name, eupont_hypothesis, spacy_similarity, allen_nlp_entailment,
allen_nlp_contradiction, allen_nlp_neutral, combined_similarity) bit-exact.
Embedding-only results can additionally render in the keyed-object shape
({candidateName: {ifttt_name, similarity}}) behind the legacy-shapes flag.
"""

from __future__ import annotations

import json
from typing import Iterable

from .pipeline import COMBINED, EMBEDDING, ENTAILMENT, ScoredCandidate, TranslationResult

LEGACY_FIELDS = (
    "ifttt_name",
    "eupont_hypothesis",
    "spacy_similarity",
    "allen_nlp_entailment",
    "allen_nlp_contradiction",
    "allen_nlp_neutral",
    "combined_similarity",
)


def candidate_record(candidate: ScoredCandidate, method: str) -> dict:
    """One candidate as a legacy-named record. Methods contribute only the
    fields they computed; a score-less pinned candidate carries just names."""
    record: dict = {
        "ifttt_name": candidate.source_name,
        "eupont_hypothesis": candidate.candidate_name,
    }
    if method in (EMBEDDING, COMBINED) and candidate.embedding_value is not None:
        record["spacy_similarity"] = candidate.embedding_pct
    if method in (ENTAILMENT, COMBINED) and candidate.entailment_triple is not None:
        triple = candidate.entailment_triple
        record["allen_nlp_entailment"] = triple.entailment
        record["allen_nlp_contradiction"] = triple.contradiction
        record["allen_nlp_neutral"] = triple.neutral
    if method == COMBINED and candidate.combined_pct is not None:
        record["combined_similarity"] = candidate.combined_pct
    if candidate.pinned_by_review:
        record["pinned_by_review"] = True
    return record


def result_records(result: TranslationResult, presented_only: bool = False) -> list[dict]:
    candidates = result.presented() if presented_only else result.candidates
    return [candidate_record(c, result.method) for c in candidates]


def flat_records(result: TranslationResult) -> list[dict]:
    """The flat per-term record array shape of the original combined and
    entailment result dumps (presented candidates only)."""
    return result_records(result, presented_only=True)


def keyed_object_records(result: TranslationResult) -> list[dict]:
    """The keyed-object shape of the original embedding result dumps:
    one {candidateName: {ifttt_name, similarity}} object per candidate,
    similarity on the 0-1 scale."""
    if result.method != EMBEDDING:
        raise ValueError("keyed-object shape applies to embedding results only")
    return [
        {
            c.candidate_name: {
                "ifttt_name": c.source_name,
                "similarity": c.embedding_value,
            }
        }
        for c in result.presented()
    ]


def result_to_dict(result: TranslationResult) -> dict:
    """Engine-native result shape: metadata plus the full candidate list."""
    payload: dict = {
        "source_name": result.source_name,
        "kind": result.kind,
        "method": result.method,
        "no_result": result.no_result,
        "top_n": result.top_n,
        "candidates": result_records(result),
    }
    if result.diagnostic is not None:
        payload["diagnostic"] = result.diagnostic
    if result.advisory_candidates:
        payload["advisory_candidates"] = [
            candidate_record(c, result.method) for c in result.advisory_candidates
        ]
    return payload


def dumps_canonical(payload) -> str:
    """Deterministic JSON rendering: two-space indent, full float precision,
    insertion-ordered keys, trailing newline."""
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def batch_to_json(results: Iterable[TranslationResult], legacy_shapes: bool = False) -> str:
    """Serialize a batch run to canonical JSON. With legacy_shapes, embedding
    results render in the keyed-object shape instead of legacy records."""
    results = list(results)
    body = []
    for result in results:
        if legacy_shapes and result.method == EMBEDDING:
            candidates = keyed_object_records(result)
        else:
            candidates = result_records(result)
        entry = {
            "source_name": result.source_name,
            "kind": result.kind,
            "method": result.method,
            "no_result": result.no_result,
            "candidates": candidates,
        }
        body.append(entry)
    return dumps_canonical({"results": body})
