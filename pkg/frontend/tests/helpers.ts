// Test plumbing: a fake fetch backed by payloads captured from the real
// analytics API (tools/make_ui_fixtures.py regenerates them).

import raw from "./fixtures/api-fixtures.json";
import type { FetchLike, ResponseLike } from "../src/api.js";

export const FIXTURES = raw as Record<string, unknown>;

/** Same normalization as the capture script: path|k=v|... sorted, decoded. */
export function normalize(url: string): string {
  const parsed = new URL(url, "http://dashboard.test");
  const pairs = [...parsed.searchParams.entries()];
  pairs.sort(([ka, va], [kb, vb]) => (ka < kb ? -1 : ka > kb ? 1 : va < vb ? -1 : va > vb ? 1 : 0));
  return [parsed.pathname, ...pairs.map(([k, v]) => `${k}=${v}`)].join("|");
}

export function fixture(url: string): unknown {
  const key = normalize(url);
  if (!(key in FIXTURES)) {
    throw new Error(`no fixture captured for: ${key}`);
  }
  return structuredClone(FIXTURES[key]);
}

export interface FakeFetch extends FetchLike {
  requests: string[];
}

export function fakeFetch(overrides: Record<string, ResponseLike> = {}): FakeFetch {
  const requests: string[] = [];
  const fetchFn = async (url: string): Promise<ResponseLike> => {
    requests.push(url);
    const key = normalize(url);
    if (key in overrides) return overrides[key];
    return {
      ok: true,
      status: 200,
      json: async () => fixture(url),
    };
  };
  fetchFn.requests = requests;
  return fetchFn as FakeFetch;
}

export const failingResponse: ResponseLike = {
  ok: false,
  status: 500,
  json: async () => ({ detail: "boom" }),
};

export function click(element: Element): void {
  element.dispatchEvent(new MouseEvent("click", { bubbles: true }));
}

export function setChecked(box: HTMLInputElement, checked: boolean): void {
  box.checked = checked;
  box.dispatchEvent(new Event("change", { bubbles: true }));
}

export async function flush(): Promise<void> {
  // Let pending promise chains settle.
  for (let i = 0; i < 5; i += 1) {
    await Promise.resolve();
  }
  await new Promise((resolve) => setTimeout(resolve, 0));
}
