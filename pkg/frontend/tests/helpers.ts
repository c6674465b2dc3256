/** Shared builders for wire-shaped fixtures used across the test files. */

import type {
  CandidateRecord,
  MethodName,
  ReviewDto,
  TermKind,
  TranslationResponse,
} from "../src/types.js";

/** A candidate record carrying the score fields its method would emit. */
export function record(
  method: MethodName,
  source: string,
  candidate: string,
  score: number,
  pinned = false,
): CandidateRecord {
  const base: CandidateRecord = { ifttt_name: source, eupont_hypothesis: candidate };
  if (method === "embedding") {
    base.spacy_similarity = score;
  } else if (method === "entailment") {
    base.allen_nlp_entailment = score;
    base.allen_nlp_contradiction = (100 - score) / 2;
    base.allen_nlp_neutral = (100 - score) / 2;
  } else {
    base.spacy_similarity = score / 100;
    base.allen_nlp_entailment = score;
    base.allen_nlp_contradiction = (100 - score) / 2;
    base.allen_nlp_neutral = (100 - score) / 2;
    base.combined_similarity = score;
  }
  if (pinned) {
    base.pinned_by_review = true;
  }
  return base;
}

export function translation(
  method: MethodName,
  source: string,
  candidates: CandidateRecord[],
  options: { kind?: TermKind; noResult?: boolean; diagnostic?: string } = {},
): TranslationResponse {
  const response: TranslationResponse = {
    source_name: source,
    kind: options.kind ?? "trigger",
    method,
    no_result: options.noResult ?? candidates.length === 0,
    top_n: 5,
    candidates,
  };
  if (options.diagnostic !== undefined) {
    response.diagnostic = options.diagnostic;
  }
  return response;
}

export function reviewDto(overrides: Partial<ReviewDto> = {}): ReviewDto {
  return {
    source_name: "Any event starts",
    kind: "trigger",
    verdict: "chosen",
    candidate: "Started Activity",
    accuracy: "accurate",
    reviewer: "tester",
    created_at: "2024-01-01T00:00:00.000000Z",
    ...overrides,
  };
}
