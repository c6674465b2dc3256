import { describe, expect, it } from "vitest";

import {
  NO_RESULT_LABEL,
  applyFilter,
  buildDetail,
  buildReviewPayload,
  canSubmit,
  displayScore,
  emptyForm,
  formatScore,
  indexReviews,
  makeTerms,
  reviewKey,
} from "../src/queue.js";
import type { CatalogResponse } from "../src/types.js";
import { record, reviewDto, translation } from "./helpers.js";

const SOURCE = "Any event starts";

describe("buildDetail", () => {
  it("mirrors the API candidate order exactly, even when scores look unsorted", () => {
    // Deliberately not in score order: the client must not re-rank.
    const shuffled = [
      record("combined", SOURCE, "Time", 66.2),
      record("combined", SOURCE, "Started Activity", 73.6),
      record("combined", SOURCE, "Device Turned On", 68.3),
    ];
    const detail = buildDetail([translation("combined", SOURCE, shuffled)]);
    expect(detail.columns[0]?.candidates).toBe(shuffled);
    expect(detail.rows.map((r) => r.candidate)).toEqual([
      "Time",
      "Started Activity",
      "Device Turned On",
    ]);
  });

  it("never truncates a list, even past the usual top five", () => {
    const six = ["A", "B", "C", "D", "E", "F"].map((name, i) =>
      record("embedding", SOURCE, name, 0.9 - i * 0.05),
    );
    const detail = buildDetail([translation("embedding", SOURCE, six)]);
    expect(detail.rows).toHaveLength(6);
    expect(detail.rows.map((r) => r.label)).toEqual(["A", "B", "C", "D", "E", "F"]);
  });

  it("renders a no-result method as one non-selectable verbatim row", () => {
    const detail = buildDetail([
      translation("embedding", SOURCE, [record("embedding", SOURCE, "Shared Profile Update", 0.7)]),
      translation("entailment", SOURCE, [], { noResult: true }),
      translation("combined", SOURCE, [record("combined", SOURCE, "Shared Post", 71.0)]),
    ]);
    expect(detail.rows).toHaveLength(3);
    const noResult = detail.rows[1];
    expect(noResult?.label).toBe(NO_RESULT_LABEL);
    expect(noResult?.label).toBe("No Result");
    expect(noResult?.selectable).toBe(false);
    expect(noResult?.candidate).toBeNull();
    expect(noResult?.method).toBe("entailment");
  });

  it("renders a duplicate candidate once per method, each row recording its method", () => {
    const detail = buildDetail([
      translation("embedding", SOURCE, [record("embedding", SOURCE, "Time", 0.67)]),
      translation("entailment", SOURCE, [record("entailment", SOURCE, "Time", 65.1)]),
      translation("combined", SOURCE, [record("combined", SOURCE, "Time", 66.2)]),
    ]);
    const timeRows = detail.rows.filter((r) => r.candidate === "Time");
    expect(timeRows).toHaveLength(3);
    expect(timeRows.map((r) => r.method)).toEqual(["embedding", "entailment", "combined"]);
  });

  it("numbers rows consecutively across method columns", () => {
    const detail = buildDetail([
      translation("embedding", SOURCE, [
        record("embedding", SOURCE, "A", 0.9),
        record("embedding", SOURCE, "B", 0.8),
      ]),
      translation("entailment", SOURCE, [], { noResult: true }),
      translation("combined", SOURCE, [record("combined", SOURCE, "C", 70.0)]),
    ]);
    expect(detail.rows.map((r) => r.index)).toEqual([0, 1, 2, 3]);
  });

  it("flags pinned candidates and gives scoreless pins a null score", () => {
    const pinned = { ifttt_name: SOURCE, eupont_hypothesis: "Time", pinned_by_review: true };
    const detail = buildDetail([translation("combined", SOURCE, [pinned])]);
    expect(detail.rows[0]?.pinned).toBe(true);
    expect(detail.rows[0]?.score).toBeNull();
  });

  it("keeps the method diagnostic on its column", () => {
    const detail = buildDetail([
      translation("embedding", SOURCE, [], {
        noResult: true,
        diagnostic: "source has no in-vocabulary tokens",
      }),
    ]);
    expect(detail.columns[0]?.diagnostic).toBe("source has no in-vocabulary tokens");
  });
});

describe("displayScore and formatScore", () => {
  it("picks the method's headline score field", () => {
    expect(displayScore("embedding", record("embedding", SOURCE, "X", 0.7475))).toBe(0.7475);
    expect(displayScore("entailment", record("entailment", SOURCE, "X", 85.81))).toBe(85.81);
    expect(displayScore("combined", record("combined", SOURCE, "X", 73.6))).toBe(73.6);
  });

  it("formats unit-interval and percentage scores differently", () => {
    expect(formatScore("embedding", 0.74747727)).toBe("0.7475");
    expect(formatScore("combined", 73.6013596738614)).toBe("73.60");
    expect(formatScore("entailment", null)).toBe("");
  });
});

describe("terms and filtering", () => {
  const catalog: CatalogResponse = {
    kind: "trigger",
    terms: [
      { name: "Any event starts", usage_count: 4 },
      { name: "Door opened", usage_count: 2 },
    ],
  };

  it("attaches existing reviews by (name, kind) key", () => {
    const reviews = indexReviews([reviewDto()]);
    const terms = makeTerms(catalog, reviews);
    expect(terms[0]?.review?.candidate).toBe("Started Activity");
    expect(terms[1]?.review).toBeNull();
  });

  it("does not match a review of the same name but other kind", () => {
    const reviews = indexReviews([reviewDto({ kind: "action" })]);
    const terms = makeTerms(catalog, reviews);
    expect(terms[0]?.review).toBeNull();
  });

  it("hides reviewed terms under the unreviewed filter only", () => {
    const terms = makeTerms(catalog, indexReviews([reviewDto()]));
    expect(applyFilter(terms, "unreviewed").map((t) => t.sourceName)).toEqual(["Door opened"]);
    expect(applyFilter(terms, "all")).toHaveLength(2);
  });

  it("keys are distinct across kinds for the same name", () => {
    expect(reviewKey("Door opened", "trigger")).not.toBe(reviewKey("Door opened", "action"));
  });
});

describe("form state and payloads", () => {
  const term = {
    sourceName: SOURCE,
    kind: "trigger" as const,
    usageCount: 1,
    review: null,
    detail: null,
  };

  it("requires a selection plus an accuracy rating, or N/A alone", () => {
    const form = emptyForm();
    expect(canSubmit(form)).toBe(false);
    form.selected = { method: "combined", candidate: "Time" };
    expect(canSubmit(form)).toBe(false);
    form.accuracy = "accurate";
    expect(canSubmit(form)).toBe(true);
    const naForm = emptyForm();
    naForm.na = true;
    expect(canSubmit(naForm)).toBe(true);
  });

  it("builds a chosen payload carrying candidate and accuracy", () => {
    const form = emptyForm();
    form.selected = { method: "combined", candidate: "Time" };
    form.accuracy = "very_accurate";
    expect(buildReviewPayload(term, form, "tester")).toEqual({
      source_name: SOURCE,
      kind: "trigger",
      verdict: "chosen",
      candidate: "Time",
      accuracy: "very_accurate",
      reviewer: "tester",
    });
  });

  it("omits the accuracy key entirely for an N/A verdict", () => {
    const form = emptyForm();
    form.na = true;
    const payload = buildReviewPayload(term, form, "tester");
    expect(payload.verdict).toBe("none_suitable");
    expect("accuracy" in payload).toBe(false);
    expect("candidate" in payload).toBe(false);
  });

  it("refuses to build a payload from an incomplete form", () => {
    expect(() => buildReviewPayload(term, emptyForm(), "tester")).toThrow();
  });
});
