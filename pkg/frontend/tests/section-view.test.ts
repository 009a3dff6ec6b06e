// Section view: the matrix renders captured payload numbers verbatim, rows
// obey the partition law, and cell clicks load the matching comments.

import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { DashboardApp } from "../src/app.js";
import { renderSectionView } from "../src/charts.js";
import { DIMENSIONS, defaultState } from "../src/state.js";
import type { ReviewersPayload, SectionsPayload } from "../src/types.js";
import { click, fakeFetch, fixture, flush } from "./helpers.js";

const sectionsPayload = fixture("/api/articles/a1/sections") as SectionsPayload;
const reviewersPayload = fixture("/api/articles/a1/reviewers") as ReviewersPayload;

async function startSectionApp() {
  const fetchFn = fakeFetch();
  const root = document.createElement("div");
  document.body.appendChild(root);
  const state = defaultState();
  state.view = "section";
  const app = new DashboardApp(root, new ApiClient(fetchFn), state);
  await app.start();
  await flush();
  return { app, root, fetchFn };
}

beforeEach(() => {
  document.body.innerHTML = "";
});

describe("section view", () => {
  it("renders one row per top-level section plus the article-level bucket", async () => {
    const { root } = await startSectionApp();
    const rows = [...root.querySelectorAll("tbody tr")] as HTMLElement[];
    expect(rows.map((r) => r.dataset.section)).toEqual(
      sectionsPayload.rows.map((r) => r.section ?? "article-level"),
    );
    expect(rows[rows.length - 1].dataset.section).toBe("article-level");
  });

  it("every cell equals the payload number", async () => {
    const { root } = await startSectionApp();
    const cells = [...root.querySelectorAll("td.matrix-cell")] as HTMLElement[];
    expect(cells.length).toBe(sectionsPayload.rows.length * 7);
    for (const cell of cells) {
      const row = sectionsPayload.rows.find(
        (r) => (r.section ?? "article-level") === cell.dataset.section,
      )!;
      const dimension = cell.dataset.dimension as (typeof DIMENSIONS)[number];
      expect(Number(cell.dataset.count)).toBe(row[dimension][cell.dataset.class!]);
      expect(cell.textContent).toBe(String(row[dimension][cell.dataset.class!]));
    }
  });

  it("row totals and coverage columns come straight from the payload", async () => {
    const { root } = await startSectionApp();
    const rows = [...root.querySelectorAll("tbody tr")] as HTMLElement[];
    rows.forEach((tr, i) => {
      const row = sectionsPayload.rows[i];
      expect(Number((tr.querySelector(".meta-cell.total") as HTMLElement).dataset.total)).toBe(row.total);
      expect(Number((tr.querySelector(".meta-cell.paragraphs") as HTMLElement).dataset.paragraphs)).toBe(row.paragraphs);
      expect(Number((tr.querySelector(".meta-cell.covered") as HTMLElement).dataset.covered)).toBe(row.covered);
    });
  });

  it("row sums equal the reviewer view totals (partition law)", () => {
    const sectionSum = sectionsPayload.rows.reduce((acc, r) => acc + r.total, 0);
    const reviewerSum = reviewersPayload.rows.reduce((acc, r) => acc + r.total, 0);
    expect(sectionSum).toBe(reviewerSum);
    expect(sectionSum).toBe(85);
  });

  it("clicking a cell loads exactly the matching /api/comments response", async () => {
    const { root } = await startSectionApp();
    const cell = [...root.querySelectorAll("td.matrix-cell")].find(
      (c) => Number((c as HTMLElement).dataset.count) > 0 && (c as HTMLElement).dataset.class === "negative",
    ) as HTMLElement;
    click(cell);
    await flush();

    const expected = fixture(
      `/api/comments?article=a1&section=${encodeURIComponent(cell.dataset.section!)}&positivity=negative`,
    ) as { count: number; comments: { uri: string }[] };
    const cards = [...root.querySelectorAll(".comment-card")] as HTMLElement[];
    expect(cards.map((c) => c.dataset.uri)).toEqual(expected.comments.map((c) => c.uri));
    expect(Number((root.querySelector(".detail-count") as HTMLElement).dataset.count)).toBe(expected.count);
    expect(expected.count).toBe(Number(cell.dataset.count));
  });

  it("clicking the article-level row label loads the article-level comments", async () => {
    const { root } = await startSectionApp();
    const lastRow = [...root.querySelectorAll("tbody tr")].pop() as HTMLElement;
    click(lastRow.querySelector(".section-label")!);
    await flush();

    const expected = fixture("/api/comments?article=a1&section=article-level") as { count: number };
    expect(Number((root.querySelector(".detail-count") as HTMLElement).dataset.count)).toBe(expected.count);
  });

  it("renders an all-zero matrix for an article without reviews", () => {
    const empty: SectionsPayload = {
      article: "aX",
      article_uri: "https://ex.org/aX",
      rows: [
        {
          section: "https://ex.org/aX#s1",
          label: "Section 1",
          total: 0,
          positivity: { positive: 0, negative: 0, neutral: 0 },
          aspect: { content: 0, presentation: 0 },
          actionability: { suggestion: 0, compulsory: 0 },
          impact: { "1": 0, "2": 0, "3": 0, "4": 0, "5": 0 },
          paragraphs: 4,
          covered: 0,
        },
        {
          section: null,
          label: "(article-level)",
          total: 0,
          positivity: { positive: 0, negative: 0, neutral: 0 },
          aspect: { content: 0, presentation: 0 },
          actionability: { suggestion: 0, compulsory: 0 },
          impact: { "1": 0, "2": 0, "3": 0, "4": 0, "5": 0 },
          paragraphs: 0,
          covered: 0,
        },
      ],
      uncovered: ["https://ex.org/aX#p1"],
    };
    const container = document.createElement("div");
    renderSectionView(container, empty, defaultState(), () => {});
    const cells = [...container.querySelectorAll("td.matrix-cell")] as HTMLElement[];
    expect(cells.length).toBe(14);
    expect(cells.every((c) => c.textContent === "0")).toBe(true);
  });
});
