/**
 * Wire types for the rulebridge HTTP API.
 *
 * Field names follow the service responses verbatim, including the legacy
 * snake_case candidate record fields, so a response object can be used
 * without any mapping layer in between.
 */

export type TermKind = "trigger" | "action";

export type MethodName = "embedding" | "entailment" | "combined";

export const METHODS: readonly MethodName[] = ["embedding", "entailment", "combined"];

export const KINDS: readonly TermKind[] = ["trigger", "action"];

/** The four-point accuracy scale, least to most accurate. */
export const ACCURACY_SCALE = ["not_at_all", "low", "accurate", "very_accurate"] as const;

export type AccuracyLabel = (typeof ACCURACY_SCALE)[number];

/** Human-readable captions for the accuracy scale, same order. */
export const ACCURACY_CAPTIONS: Record<AccuracyLabel, string> = {
  not_at_all: "Not at all",
  low: "Low",
  accurate: "Accurate",
  very_accurate: "Very accurate",
};

/**
 * One ranked candidate as the API serializes it. Which score fields are
 * present depends on the method that produced the record; a candidate pinned
 * by a review can carry no scores at all.
 */
export interface CandidateRecord {
  ifttt_name: string;
  eupont_hypothesis: string;
  spacy_similarity?: number;
  allen_nlp_entailment?: number;
  allen_nlp_contradiction?: number;
  allen_nlp_neutral?: number;
  combined_similarity?: number;
  pinned_by_review?: boolean;
}

export interface TranslationResponse {
  source_name: string;
  kind: TermKind;
  method: MethodName;
  no_result: boolean;
  top_n: number;
  candidates: CandidateRecord[];
  diagnostic?: string;
  advisory_candidates?: CandidateRecord[];
}

export interface CatalogTermDto {
  name: string;
  usage_count: number;
}

export interface CatalogResponse {
  kind: TermKind;
  terms: CatalogTermDto[];
}

export type Verdict = "chosen" | "none_suitable";

export interface ReviewDto {
  source_name: string;
  kind: TermKind;
  verdict: Verdict;
  candidate: string | null;
  accuracy: AccuracyLabel | null;
  reviewer: string;
  created_at: string;
}

/**
 * Body for POST /api/reviews. The accuracy key is omitted entirely for an
 * N/A verdict rather than sent as null.
 */
export interface ReviewPayload {
  source_name: string;
  kind: TermKind;
  verdict: Verdict;
  candidate?: string;
  accuracy?: AccuracyLabel;
  reviewer: string;
}

export interface HealthResponse {
  status: string;
  version: string;
  triggers: number;
  actions: number;
  ontology_triggers: number;
  ontology_actions: number;
  method: MethodName;
}

export interface ApiErrorEnvelope {
  error: {
    code: string;
    message: string;
    detail?: unknown;
  };
}
