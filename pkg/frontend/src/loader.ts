/**
 * Lazy translation loading. Translating every catalog term up front costs
 * three requests per term, so details are fetched only for the terms on
 * the current page and cached. A submitted review re-ranks that term's
 * future translations, so its cache entry is dropped after a submit.
 */

import type { ApiClient } from "./api.js";
import type { TranslationResponse } from "./types.js";
import { ItemDetail, QueueTerm, buildDetail, reviewKey } from "./queue.js";
import { METHODS } from "./types.js";

export class QueueLoader {
  private readonly api: Pick<ApiClient, "translate">;
  private readonly top: number;
  private cache = new Map<string, Promise<ItemDetail>>();

  constructor(api: Pick<ApiClient, "translate">, top = 5) {
    this.api = api;
    this.top = top;
  }

  /**
   * Fetch one response per method, in the fixed method order, and build the
   * item detail. Concurrent calls for the same term share one in-flight
   * promise; a failed load is evicted so a retry refetches.
   */
  load(term: Pick<QueueTerm, "sourceName" | "kind">): Promise<ItemDetail> {
    const key = reviewKey(term.sourceName, term.kind);
    const cached = this.cache.get(key);
    if (cached !== undefined) {
      return cached;
    }
    const loading = this.fetchDetail(term).catch((err) => {
      this.cache.delete(key);
      throw err;
    });
    this.cache.set(key, loading);
    return loading;
  }

  private async fetchDetail(
    term: Pick<QueueTerm, "sourceName" | "kind">,
  ): Promise<ItemDetail> {
    const translations: TranslationResponse[] = [];
    for (const method of METHODS) {
      translations.push(await this.api.translate(term.sourceName, term.kind, method, this.top));
    }
    return buildDetail(translations);
  }

  invalidate(key: string): void {
    this.cache.delete(key);
  }
}
