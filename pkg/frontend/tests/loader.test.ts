import { describe, expect, it, vi } from "vitest";

import { QueueLoader } from "../src/loader.js";
import { reviewKey } from "../src/queue.js";
import type { MethodName, TermKind } from "../src/types.js";
import { record, translation } from "./helpers.js";

function fakeTranslate() {
  return vi.fn(async (name: string, kind: TermKind, method: MethodName, top?: number) => {
    void top;
    return translation(method, name, [record(method, name, `${method} hit`, 0.9)], { kind });
  });
}

describe("QueueLoader", () => {
  it("fetches one response per method, in the fixed method order", async () => {
    const translate = fakeTranslate();
    const loader = new QueueLoader({ translate });
    const detail = await loader.load({ sourceName: "Door opened", kind: "trigger" });
    expect(translate.mock.calls.map((c) => c[2])).toEqual(["embedding", "entailment", "combined"]);
    expect(detail.columns.map((c) => c.method)).toEqual(["embedding", "entailment", "combined"]);
    // Each call asks for the loader's top-N.
    expect(translate.mock.calls.every((c) => c[3] === 5)).toBe(true);
  });

  it("caches per term until invalidated", async () => {
    const translate = fakeTranslate();
    const loader = new QueueLoader({ translate });
    const term = { sourceName: "Door opened", kind: "trigger" as const };
    await loader.load(term);
    await loader.load(term);
    expect(translate).toHaveBeenCalledTimes(3);
    loader.invalidate(reviewKey(term.sourceName, term.kind));
    await loader.load(term);
    expect(translate).toHaveBeenCalledTimes(6);
  });

  it("shares one in-flight load between concurrent callers", async () => {
    const translate = fakeTranslate();
    const loader = new QueueLoader({ translate });
    const term = { sourceName: "Door opened", kind: "trigger" as const };
    const [a, b] = await Promise.all([loader.load(term), loader.load(term)]);
    expect(a).toBe(b);
    expect(translate).toHaveBeenCalledTimes(3);
  });

  it("evicts a failed load so a retry can refetch", async () => {
    let failures = 1;
    const translate = vi.fn(async (name: string, kind: TermKind, method: MethodName) => {
      if (failures > 0) {
        failures -= 1;
        throw new Error("connection refused");
      }
      return translation(method, name, [record(method, name, "Hit", 0.9)], { kind });
    });
    const loader = new QueueLoader({ translate });
    const term = { sourceName: "Door opened", kind: "trigger" as const };
    await expect(loader.load(term)).rejects.toThrow("connection refused");
    const detail = await loader.load(term);
    expect(detail.columns).toHaveLength(3);
  });
});
