/**
 * Review session state: the queue, the active filter and kind, per-item
 * form state, and the optimistic submit flow.
 *
 * All mutations go through methods that end in notify(), so the renderer
 * can redraw from a single subscription. The session never talks to the
 * DOM; it is driven by the page and exercised directly by tests.
 */

import type { ReviewDto, ReviewPayload, TermKind } from "./types.js";
import {
  FormState,
  ItemDetail,
  QueueFilter,
  QueueTerm,
  applyFilter,
  buildReviewPayload,
  canSubmit,
  emptyForm,
  optimisticReview,
  reviewKey,
} from "./queue.js";

export const PAGE_SIZE = 8;

/** The slice of the API the submit flow needs; tests substitute a fake. */
export interface ReviewGateway {
  submitReview(payload: ReviewPayload): Promise<ReviewDto>;
}

export interface PageInfo {
  page: number;
  pageCount: number;
  start: number;
  items: QueueTerm[];
}

export class ReviewSession {
  readonly reviewer: string;

  private terms: QueueTerm[] = [];
  private filter: QueueFilter = "unreviewed";
  private kind: TermKind = "trigger";
  private cursor = 0;
  private forms = new Map<string, FormState>();
  private pending = new Set<string>();
  private banner: string | null = null;
  private listeners: Array<() => void> = [];

  constructor(reviewer = "review-ui") {
    this.reviewer = reviewer;
  }

  // -- subscriptions -------------------------------------------------------

  subscribe(listener: () => void): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private notify(): void {
    for (const listener of this.listeners) {
      listener();
    }
  }

  // -- queue content -------------------------------------------------------

  setTerms(terms: QueueTerm[]): void {
    this.terms = terms;
    this.cursor = 0;
    this.notify();
  }

  attachDetail(key: string, detail: ItemDetail): void {
    const term = this.findByKey(key);
    if (term !== null) {
      term.detail = detail;
      this.notify();
    }
  }

  /** Drop a term's detail so stale rankings are refetched on next view. */
  clearDetail(key: string): void {
    const term = this.findByKey(key);
    if (term !== null && term.detail !== null) {
      term.detail = null;
      this.notify();
    }
  }

  private findByKey(key: string): QueueTerm | null {
    return this.terms.find((t) => reviewKey(t.sourceName, t.kind) === key) ?? null;
  }

  keyOf(term: QueueTerm): string {
    return reviewKey(term.sourceName, term.kind);
  }

  // -- view state ----------------------------------------------------------

  getFilter(): QueueFilter {
    return this.filter;
  }

  getKind(): TermKind {
    return this.kind;
  }

  getBanner(): string | null {
    return this.banner;
  }

  setBanner(message: string | null): void {
    this.banner = message;
    this.notify();
  }

  setKind(kind: TermKind): void {
    if (kind !== this.kind) {
      this.kind = kind;
      this.cursor = 0;
      this.notify();
    }
  }

  setFilter(filter: QueueFilter): void {
    if (filter !== this.filter) {
      const focused = this.current();
      this.filter = filter;
      // Keep focus on the same item when it survives the filter change.
      if (focused !== null) {
        const index = this.visible().indexOf(focused);
        this.cursor = index >= 0 ? index : 0;
      } else {
        this.cursor = 0;
      }
      this.notify();
    }
  }

  toggleFilter(): void {
    this.setFilter(this.filter === "unreviewed" ? "all" : "unreviewed");
  }

  /** Terms of the active kind that pass the active filter, queue order. */
  visible(): QueueTerm[] {
    const ofKind = this.terms.filter((t) => t.kind === this.kind);
    return applyFilter(ofKind, this.filter);
  }

  /** Count of reviewed terms of the active kind, for the progress line. */
  progress(): { reviewed: number; total: number } {
    const ofKind = this.terms.filter((t) => t.kind === this.kind);
    const reviewed = ofKind.filter((t) => t.review !== null).length;
    return { reviewed, total: ofKind.length };
  }

  current(): QueueTerm | null {
    return this.visible()[this.cursor] ?? null;
  }

  cursorIndex(): number {
    return this.cursor;
  }

  moveCursor(delta: number): void {
    const count = this.visible().length;
    if (count === 0) {
      return;
    }
    const next = Math.min(Math.max(this.cursor + delta, 0), count - 1);
    if (next !== this.cursor) {
      this.cursor = next;
      this.notify();
    }
  }

  /** The page the cursor is on; rendering shows only this slice. */
  pageInfo(): PageInfo {
    const items = this.visible();
    const pageCount = Math.max(1, Math.ceil(items.length / PAGE_SIZE));
    const page = Math.min(Math.floor(this.cursor / PAGE_SIZE), pageCount - 1);
    const start = page * PAGE_SIZE;
    return { page, pageCount, start, items: items.slice(start, start + PAGE_SIZE) };
  }

  movePage(delta: number): void {
    this.moveCursor(delta * PAGE_SIZE);
  }

  // -- form state ----------------------------------------------------------

  form(key: string): FormState {
    let form = this.forms.get(key);
    if (form === undefined) {
      form = emptyForm();
      this.forms.set(key, form);
    }
    return form;
  }

  selectOption(key: string, selection: FormState["selected"]): void {
    const form = this.form(key);
    form.selected = selection;
    form.na = false;
    this.notify();
  }

  selectNa(key: string): void {
    const form = this.form(key);
    form.na = true;
    form.selected = null;
    form.accuracy = null;
    this.notify();
  }

  setAccuracy(key: string, accuracy: FormState["accuracy"]): void {
    const form = this.form(key);
    form.accuracy = accuracy;
    form.na = false;
    this.notify();
  }

  isPending(key: string): boolean {
    return this.pending.has(key);
  }

  // -- submit flow ---------------------------------------------------------

  /**
   * Submit the focused item's form: record the review optimistically, move
   * focus to the next queue item, then confirm against the service. On
   * failure the optimistic review is rolled back and the form restored
   * exactly as it was. Resolves true when the review was persisted.
   */
  async submitCurrent(gateway: ReviewGateway): Promise<boolean> {
    const term = this.current();
    if (term === null) {
      return false;
    }
    const key = this.keyOf(term);
    const form = this.forms.get(key) ?? emptyForm();
    if (!canSubmit(form) || this.pending.has(key)) {
      return false;
    }

    const payload = buildReviewPayload(term, form, this.reviewer);
    const previousReview = term.review;

    term.review = optimisticReview(payload);
    this.forms.delete(key);
    this.pending.add(key);
    this.focusAfterSubmit(term);
    this.notify();

    try {
      const saved = await gateway.submitReview(payload);
      term.review = saved;
      return true;
    } catch (err) {
      term.review = previousReview;
      this.forms.set(key, form);
      this.refocus(term);
      this.banner =
        err instanceof Error && err.name === "ServiceUnreachableError"
          ? "Service unreachable. Your review was not saved; retry when the service is back."
          : `Review was not saved: ${err instanceof Error ? err.message : String(err)}`;
      return false;
    } finally {
      this.pending.delete(key);
      this.notify();
    }
  }

  /**
   * After an optimistic submit the reviewed item may leave the visible list
   * (unreviewed filter); in both cases focus lands on the next queue item.
   */
  private focusAfterSubmit(submitted: QueueTerm): void {
    const items = this.visible();
    const index = items.indexOf(submitted);
    if (index === -1) {
      // Item dropped out; the cursor already points at its successor.
      this.cursor = Math.min(this.cursor, Math.max(items.length - 1, 0));
    } else {
      this.cursor = Math.min(index + 1, items.length - 1);
    }
  }

  private refocus(term: QueueTerm): void {
    const index = this.visible().indexOf(term);
    if (index >= 0) {
      this.cursor = index;
    }
  }
}
