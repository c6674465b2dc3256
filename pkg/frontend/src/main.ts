/**
 * Page wiring: renders the review queue from session state and translates
 * DOM events into session calls. All queue and submit logic lives in the
 * session/queue modules; this file only draws and dispatches.
 */

import { ApiClient, ServiceUnreachableError } from "./api.js";
import { keyToAction } from "./keyboard.js";
import { QueueLoader } from "./loader.js";
import { ReviewSession } from "./session.js";
import {
  FormState,
  NO_RESULT_LABEL,
  OptionRow,
  QueueTerm,
  formatScore,
  indexReviews,
  makeTerms,
} from "./queue.js";
import { ACCURACY_CAPTIONS, ACCURACY_SCALE, KINDS, ReviewDto, TermKind } from "./types.js";

type Child = Node | string;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: Child[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [name, value] of Object.entries(attrs)) {
    node.setAttribute(name, value);
  }
  for (const child of children) {
    node.append(child);
  }
  return node;
}

class App {
  private readonly root: HTMLElement;
  private readonly api: ApiClient;
  private readonly loader: QueueLoader;
  private readonly session: ReviewSession;
  private retryAction: (() => void) | null = null;
  private loadErrors = new Set<string>();

  constructor(root: HTMLElement, api: ApiClient) {
    this.root = root;
    this.api = api;
    this.loader = new QueueLoader(api);
    this.session = new ReviewSession();
    this.session.subscribe(() => this.render());
    document.addEventListener("keydown", (event) => this.onKeydown(event));
  }

  async boot(): Promise<void> {
    this.session.setBanner(null);
    try {
      await this.api.health();
      const [triggers, actions, reviews] = await Promise.all([
        this.api.catalog("trigger"),
        this.api.catalog("action"),
        this.api.listReviews(),
      ]);
      const byKey = indexReviews(reviews);
      this.session.setTerms([...makeTerms(triggers, byKey), ...makeTerms(actions, byKey)]);
      this.retryAction = null;
      void this.ensureDetails();
    } catch (err) {
      this.showUnreachable(err, () => void this.boot());
    }
  }

  private showUnreachable(err: unknown, retry: () => void): void {
    this.retryAction = retry;
    const message =
      err instanceof ServiceUnreachableError
        ? "Service unreachable."
        : `Request failed: ${err instanceof Error ? err.message : String(err)}`;
    this.session.setBanner(message);
  }

  /** Fetch translations for current-page items that have none yet. */
  private async ensureDetails(): Promise<void> {
    const page = this.session.pageInfo();
    for (const term of page.items) {
      if (term.detail !== null) {
        continue;
      }
      const key = this.session.keyOf(term);
      try {
        const detail = await this.loader.load(term);
        this.loadErrors.delete(key);
        this.session.attachDetail(key, detail);
      } catch (err) {
        this.loadErrors.add(key);
        this.showUnreachable(err, () => void this.ensureDetails());
        return;
      }
    }
  }

  private onKeydown(event: KeyboardEvent): void {
    const action = keyToAction(event.key);
    if (action === null) {
      return;
    }
    event.preventDefault();
    const current = this.session.current();
    const key = current === null ? null : this.session.keyOf(current);
    switch (action.type) {
      case "move":
        this.session.moveCursor(action.delta);
        void this.ensureDetails();
        break;
      case "page":
        this.session.movePage(action.delta);
        void this.ensureDetails();
        break;
      case "select": {
        const row = current?.detail?.rows[action.index];
        if (key !== null && row !== undefined && row.selectable && row.candidate !== null) {
          this.session.selectOption(key, { method: row.method, candidate: row.candidate });
        }
        break;
      }
      case "na":
        if (key !== null) {
          this.session.selectNa(key);
        }
        break;
      case "accuracy": {
        const label = ACCURACY_SCALE[action.index];
        if (key !== null && label !== undefined) {
          this.session.setAccuracy(key, label);
        }
        break;
      }
      case "submit":
        void this.submit();
        break;
      case "toggle-filter":
        this.session.toggleFilter();
        void this.ensureDetails();
        break;
    }
  }

  private async submit(): Promise<void> {
    const current = this.session.current();
    if (current === null) {
      return;
    }
    const key = this.session.keyOf(current);
    const saved = await this.session.submitCurrent(this.api);
    if (saved) {
      // The pin changes this term's ranking; refetch next time it shows.
      this.loader.invalidate(key);
      this.session.clearDetail(key);
      void this.ensureDetails();
    }
  }

  // -- rendering -----------------------------------------------------------

  private render(): void {
    this.root.replaceChildren(this.renderToolbar(), this.renderBanner(), this.renderQueue(), this.renderFooter());
    const focused = this.root.querySelector<HTMLElement>(".item.focused");
    focused?.focus();
  }

  private renderToolbar(): HTMLElement {
    const progress = this.session.progress();
    const tabs = KINDS.map((kind) => {
      const button = el(
        "button",
        { class: this.session.getKind() === kind ? "tab active" : "tab" },
        [kind === "trigger" ? "Triggers" : "Actions"],
      );
      button.addEventListener("click", () => {
        this.session.setKind(kind as TermKind);
        void this.ensureDetails();
      });
      return button;
    });
    const filterButton = el("button", { class: "filter" }, [
      this.session.getFilter() === "unreviewed" ? "Showing: unreviewed" : "Showing: all",
    ]);
    filterButton.addEventListener("click", () => {
      this.session.toggleFilter();
      void this.ensureDetails();
    });
    return el("nav", { class: "toolbar" }, [
      el("h1", {}, ["Translation Review"]),
      el("div", { class: "tabs" }, tabs),
      filterButton,
      el("span", { class: "progress" }, [`${progress.reviewed} of ${progress.total} reviewed`]),
    ]);
  }

  private renderBanner(): HTMLElement {
    const message = this.session.getBanner();
    if (message === null) {
      return el("div", { class: "banner", hidden: "" });
    }
    const banner = el("div", { class: "banner", role: "alert" }, [el("span", {}, [message])]);
    if (this.retryAction !== null) {
      const retry = el("button", { class: "retry" }, ["Retry"]);
      const action = this.retryAction;
      retry.addEventListener("click", () => {
        this.session.setBanner(null);
        action();
      });
      banner.append(retry);
    }
    const dismiss = el("button", { class: "dismiss" }, ["Dismiss"]);
    dismiss.addEventListener("click", () => this.session.setBanner(null));
    banner.append(dismiss);
    return banner;
  }

  private renderQueue(): HTMLElement {
    const page = this.session.pageInfo();
    if (page.items.length === 0) {
      const progress = this.session.progress();
      const message =
        this.session.getFilter() === "unreviewed" && progress.total > 0
          ? `All ${progress.total} ${this.session.getKind()}s are reviewed. Switch the filter to revisit them.`
          : "No terms loaded.";
      return el("main", { class: "queue" }, [el("p", { class: "empty-state" }, [message])]);
    }
    const items = page.items.map((term, offset) =>
      this.renderItem(term, page.start + offset === this.session.cursorIndex()),
    );
    return el("main", { class: "queue" }, items);
  }

  private renderItem(term: QueueTerm, focused: boolean): HTMLElement {
    const key = this.session.keyOf(term);
    const form = this.session.form(key);
    const classes = ["item"];
    if (focused) {
      classes.push("focused");
    }
    if (term.review !== null) {
      classes.push("reviewed");
    }
    const article = el("article", { class: classes.join(" "), tabindex: "-1", "data-key": key }, [
      el("header", {}, [
        el("h2", {}, [term.sourceName]),
        el("small", {}, [`${term.kind}, used ${term.usageCount}x`]),
      ]),
    ]);
    article.addEventListener("click", () => {
      const index = this.session.visible().indexOf(term);
      if (index >= 0) {
        this.session.moveCursor(index - this.session.cursorIndex());
      }
    });
    if (term.review !== null) {
      article.append(this.renderReviewBadge(term.review));
    }
    if (term.detail === null) {
      const note = this.loadErrors.has(key) ? "Could not load candidates." : "Loading candidates...";
      article.append(el("p", { class: "loading" }, [note]));
      return article;
    }
    article.append(this.renderOptions(term, form, key));
    article.append(this.renderAccuracy(form, key));
    article.append(this.renderSubmit(form, key));
    return article;
  }

  private renderReviewBadge(review: ReviewDto): HTMLElement {
    const text =
      review.verdict === "chosen"
        ? `Reviewed: "${review.candidate}" (${review.accuracy ?? "unrated"})`
        : "Reviewed: N/A (none suitable)";
    return el("p", { class: "badge" }, [text]);
  }

  private renderOptions(term: QueueTerm, form: FormState, key: string): HTMLElement {
    const list = el("ol", { class: "options" });
    for (const row of term.detail?.rows ?? []) {
      list.append(this.renderOptionRow(row, form, key));
    }
    const naSelected = form.na ? " selected" : "";
    const naRow = el("li", { class: `option na${naSelected}` }, [
      el("kbd", {}, ["n"]),
      el("span", { class: "label" }, ["N/A (none suitable)"]),
    ]);
    naRow.addEventListener("click", () => this.session.selectNa(key));
    list.append(naRow);
    return list;
  }

  private renderOptionRow(row: OptionRow, form: FormState, key: string): HTMLElement {
    const selected =
      form.selected !== null &&
      form.selected.method === row.method &&
      form.selected.candidate === row.candidate;
    const classes = ["option"];
    if (!row.selectable) {
      classes.push("no-result");
    }
    if (selected) {
      classes.push("selected");
    }
    if (row.pinned) {
      classes.push("pinned");
    }
    const item = el("li", { class: classes.join(" ") }, [
      el("kbd", {}, [row.index < 9 ? String(row.index + 1) : ""]),
      el("span", { class: "method" }, [row.method]),
      el("span", { class: "label" }, [row.selectable ? row.label : NO_RESULT_LABEL]),
      el("span", { class: "score" }, [formatScore(row.method, row.score)]),
    ]);
    if (row.selectable && row.candidate !== null) {
      const candidate = row.candidate;
      item.addEventListener("click", (event) => {
        event.stopPropagation();
        this.session.selectOption(key, { method: row.method, candidate });
      });
    }
    return item;
  }

  private renderAccuracy(form: FormState, key: string): HTMLElement {
    const fieldset = el("fieldset", { class: "accuracy" }, [el("legend", {}, ["Accuracy"])]);
    for (const label of ACCURACY_SCALE) {
      const active = form.accuracy === label ? " active" : "";
      const button = el("button", { class: `accuracy-choice${active}`, "data-accuracy": label }, [
        ACCURACY_CAPTIONS[label],
      ]);
      button.addEventListener("click", (event) => {
        event.stopPropagation();
        this.session.setAccuracy(key, label);
      });
      fieldset.append(button);
    }
    if (form.na) {
      fieldset.append(el("small", {}, ["not needed for N/A"]));
    }
    return fieldset;
  }

  private renderSubmit(form: FormState, key: string): HTMLElement {
    const ready = form.na || (form.selected !== null && form.accuracy !== null);
    const attrs: Record<string, string> = { class: "submit" };
    if (!ready || this.session.isPending(key)) {
      attrs.disabled = "";
    }
    const button = el("button", attrs, ["Submit review"]);
    button.addEventListener("click", (event) => {
      event.stopPropagation();
      void this.submit();
    });
    return button;
  }

  private renderFooter(): HTMLElement {
    const page = this.session.pageInfo();
    return el("footer", { class: "pager" }, [
      el("span", {}, [`Page ${page.page + 1} of ${page.pageCount}`]),
      el("span", { class: "keys" }, [
        "keys: j/k move, 1-9 pick, n = N/A, q/w/e/r rate, Enter submit, f filter, PgUp/PgDn page",
      ]),
    ]);
  }
}

const rootElement = document.getElementById("app");
if (rootElement !== null) {
  const app = new App(rootElement, new ApiClient());
  void app.boot();
}
