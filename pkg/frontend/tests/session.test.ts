import { describe, expect, it } from "vitest";

import { ServiceUnreachableError } from "../src/api.js";
import { buildDetail, QueueTerm } from "../src/queue.js";
import { PAGE_SIZE, ReviewGateway, ReviewSession } from "../src/session.js";
import type { ReviewDto, ReviewPayload, TermKind } from "../src/types.js";
import { record, reviewDto, translation } from "./helpers.js";

function term(
  name: string,
  kind: TermKind = "trigger",
  review: ReviewDto | null = null,
): QueueTerm {
  return { sourceName: name, kind, usageCount: 1, review, detail: null };
}

/** Detail with two combined candidates so tests can select either. */
function detailFor(name: string) {
  return buildDetail([
    translation("combined", name, [
      record("combined", name, "Started Activity", 73.6),
      record("combined", name, "Time", 66.2),
    ]),
  ]);
}

type GatewayMode = "ok" | "unreachable" | "rejected";

class FakeGateway implements ReviewGateway {
  calls: ReviewPayload[] = [];
  mode: GatewayMode = "ok";

  async submitReview(payload: ReviewPayload): Promise<ReviewDto> {
    this.calls.push(payload);
    if (this.mode === "unreachable") {
      throw new ServiceUnreachableError("connection refused");
    }
    if (this.mode === "rejected") {
      throw new Error("validation-error: bad review");
    }
    return {
      source_name: payload.source_name,
      kind: payload.kind,
      verdict: payload.verdict,
      candidate: payload.candidate ?? null,
      accuracy: payload.accuracy ?? null,
      reviewer: payload.reviewer,
      created_at: "2024-06-01T12:00:00.000000Z",
    };
  }
}

function seededSession(): { session: ReviewSession; terms: QueueTerm[] } {
  const terms = [term("T One"), term("T Two"), term("T Three"), term("A One", "action")];
  const session = new ReviewSession("tester");
  session.setTerms(terms);
  for (const t of terms) {
    session.attachDetail(session.keyOf(t), detailFor(t.sourceName));
  }
  return { session, terms };
}

function fillForm(session: ReviewSession, t: QueueTerm, candidate = "Time"): string {
  const key = session.keyOf(t);
  const row = t.detail?.rows.find((r) => r.candidate === candidate);
  if (row === undefined || row.candidate === null) {
    throw new Error(`no row for ${candidate}`);
  }
  session.selectOption(key, { method: row.method, candidate: row.candidate });
  session.setAccuracy(key, "accurate");
  return key;
}

describe("submit flow", () => {
  it("applies the review optimistically, then keeps the server copy", async () => {
    const { session, terms } = seededSession();
    const gateway = new FakeGateway();
    const t1 = terms[0]!;
    fillForm(session, t1);

    const pending = session.submitCurrent(gateway);
    // Optimistic: the review is visible before the gateway resolves.
    expect(t1.review).not.toBeNull();
    expect(t1.review?.candidate).toBe("Time");

    await expect(pending).resolves.toBe(true);
    expect(t1.review?.created_at).toBe("2024-06-01T12:00:00.000000Z");
    expect(gateway.calls).toHaveLength(1);
    expect(gateway.calls[0]).toMatchObject({
      source_name: "T One",
      verdict: "chosen",
      candidate: "Time",
      accuracy: "accurate",
      reviewer: "tester",
    });
  });

  it("moves focus to the next queue item after submitting", async () => {
    const { session } = seededSession();
    const gateway = new FakeGateway();
    fillForm(session, session.current()!);
    await session.submitCurrent(gateway);
    // Under the unreviewed filter the reviewed item leaves the queue and
    // its successor takes the focus slot.
    expect(session.current()?.sourceName).toBe("T Two");
    expect(session.visible().map((t) => t.sourceName)).toEqual(["T Two", "T Three"]);
  });

  it("clears the form after a submit so the next item starts clean", async () => {
    const { session } = seededSession();
    const gateway = new FakeGateway();
    const key = fillForm(session, session.current()!);
    await session.submitCurrent(gateway);
    const form = session.form(key);
    expect(form.selected).toBeNull();
    expect(form.accuracy).toBeNull();
  });

  it("rolls back the review and restores the form when the service is down", async () => {
    const { session, terms } = seededSession();
    const gateway = new FakeGateway();
    gateway.mode = "unreachable";
    const t1 = terms[0]!;
    const key = fillForm(session, t1);

    await expect(session.submitCurrent(gateway)).resolves.toBe(false);
    expect(t1.review).toBeNull();
    const form = session.form(key);
    expect(form.selected).toEqual({ method: "combined", candidate: "Time" });
    expect(form.accuracy).toBe("accurate");
    expect(session.getBanner()).toContain("Service unreachable");
    // Focus returns to the failed item so the reviewer can retry at once.
    expect(session.current()).toBe(t1);
  });

  it("keeps the previous review when re-reviewing fails", async () => {
    const existing = reviewDto({ source_name: "T One", candidate: "Started Activity" });
    const terms = [term("T One", "trigger", existing)];
    const session = new ReviewSession("tester");
    session.setTerms(terms);
    session.setFilter("all");
    session.attachDetail(session.keyOf(terms[0]!), detailFor("T One"));
    const gateway = new FakeGateway();
    gateway.mode = "rejected";
    fillForm(session, terms[0]!);

    await expect(session.submitCurrent(gateway)).resolves.toBe(false);
    expect(terms[0]!.review).toBe(existing);
    expect(session.getBanner()).toContain("bad review");
  });

  it("submits none_suitable without an accuracy key for N/A", async () => {
    const { session } = seededSession();
    const gateway = new FakeGateway();
    const current = session.current()!;
    session.selectNa(session.keyOf(current));
    await expect(session.submitCurrent(gateway)).resolves.toBe(true);
    expect(gateway.calls[0]?.verdict).toBe("none_suitable");
    expect("accuracy" in gateway.calls[0]!).toBe(false);
    expect(current.review?.verdict).toBe("none_suitable");
  });

  it("refuses an incomplete form and an empty queue", async () => {
    const { session } = seededSession();
    const gateway = new FakeGateway();
    await expect(session.submitCurrent(gateway)).resolves.toBe(false);
    expect(gateway.calls).toHaveLength(0);

    const empty = new ReviewSession();
    empty.setTerms([]);
    await expect(empty.submitCurrent(gateway)).resolves.toBe(false);
  });

  it("guards against a second submit while one is in flight", async () => {
    const { session } = seededSession();
    let release: (dto: ReviewDto) => void = () => {};
    const slowGateway: ReviewGateway = {
      submitReview: (payload) => {
        calls.push(payload);
        return new Promise<ReviewDto>((resolve) => {
          release = resolve;
        });
      },
    };
    const calls: ReviewPayload[] = [];
    const t1 = session.current()!;
    fillForm(session, t1);

    const first = session.submitCurrent(slowGateway);
    // Refill the form and aim at the same item: the in-flight submission
    // must block the repeat even though the form looks complete.
    session.setFilter("all");
    session.moveCursor(-session.cursorIndex());
    fillForm(session, t1, "Started Activity");
    const second = await session.submitCurrent(slowGateway);
    expect(second).toBe(false);
    expect(calls).toHaveLength(1);

    release(reviewDto({ source_name: "T One" }));
    await expect(first).resolves.toBe(true);
  });

  it("lets a later review supersede an earlier one", async () => {
    const { session, terms } = seededSession();
    const gateway = new FakeGateway();
    session.setFilter("all");
    const t1 = terms[0]!;
    fillForm(session, t1, "Time");
    await session.submitCurrent(gateway);

    session.moveCursor(-session.cursorIndex());
    expect(session.current()).toBe(t1);
    fillForm(session, t1, "Started Activity");
    await session.submitCurrent(gateway);

    expect(gateway.calls).toHaveLength(2);
    expect(t1.review?.candidate).toBe("Started Activity");
  });
});

describe("queue view state", () => {
  it("filters to the active kind and reports progress per kind", () => {
    const { session } = seededSession();
    expect(session.visible().map((t) => t.sourceName)).toEqual(["T One", "T Two", "T Three"]);
    session.setKind("action");
    expect(session.visible().map((t) => t.sourceName)).toEqual(["A One"]);
    expect(session.progress()).toEqual({ reviewed: 0, total: 1 });
  });

  it("shows an empty queue when everything is reviewed under unreviewed", () => {
    const reviewed = [
      term("T One", "trigger", reviewDto({ source_name: "T One" })),
      term("T Two", "trigger", reviewDto({ source_name: "T Two" })),
    ];
    const session = new ReviewSession();
    session.setTerms(reviewed);
    expect(session.visible()).toHaveLength(0);
    expect(session.current()).toBeNull();
    expect(session.progress()).toEqual({ reviewed: 2, total: 2 });
    session.setFilter("all");
    expect(session.visible()).toHaveLength(2);
  });

  it("keeps focus on the same item across a filter flip when possible", () => {
    const { session } = seededSession();
    session.moveCursor(1);
    const focused = session.current();
    session.toggleFilter();
    expect(session.getFilter()).toBe("all");
    expect(session.current()).toBe(focused);
  });

  it("clamps cursor movement to the queue bounds", () => {
    const { session } = seededSession();
    session.moveCursor(-5);
    expect(session.cursorIndex()).toBe(0);
    session.moveCursor(99);
    expect(session.cursorIndex()).toBe(2);
  });

  it("pages by a fixed size and follows the cursor", () => {
    const many = Array.from({ length: PAGE_SIZE * 2 + 3 }, (_, i) => term(`T ${i}`));
    const session = new ReviewSession();
    session.setTerms(many);
    expect(session.pageInfo().pageCount).toBe(3);
    expect(session.pageInfo().items).toHaveLength(PAGE_SIZE);
    session.movePage(1);
    expect(session.pageInfo().page).toBe(1);
    expect(session.current()?.sourceName).toBe(`T ${PAGE_SIZE}`);
    session.movePage(5);
    expect(session.pageInfo().page).toBe(2);
    expect(session.pageInfo().items).toHaveLength(3);
  });

  it("drops stale detail on request so it can be refetched", () => {
    const { session, terms } = seededSession();
    const key = session.keyOf(terms[0]!);
    expect(terms[0]!.detail).not.toBeNull();
    session.clearDetail(key);
    expect(terms[0]!.detail).toBeNull();
  });
});
