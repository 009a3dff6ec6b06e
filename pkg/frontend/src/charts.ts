// DOM renderers: stacked bar chart, section matrix, detail pane, legend.
// Every count shown comes verbatim from an API payload; the only arithmetic
// here is pixel scaling.

import { CLASSES, DIMENSIONS, type Dimension, type PaletteName, type Selection, type ViewState } from "./state.js";
import type { CommentsPayload, DimensionCounts, ReviewersPayload, SectionsPayload } from "./types.js";

export const PALETTES: Record<PaletteName, Record<string, string>> = {
  default: {
    positive: "#2e7d32",
    negative: "#c62828",
    neutral: "#757575",
    content: "#1565c0",
    presentation: "#7b1fa2",
    suggestion: "#00838f",
    compulsory: "#ef6c00",
  },
  // Okabe-Ito hues for the colorblind-safe toggle.
  colorblind: {
    positive: "#009e73",
    negative: "#d55e00",
    neutral: "#999999",
    content: "#0072b2",
    presentation: "#cc79a7",
    suggestion: "#56b4e9",
    compulsory: "#e69f00",
  },
};

const SVG_NS = "http://www.w3.org/2000/svg";
const BAR_WIDTH = 26;
const BAR_GAP = 14;
const CHART_HEIGHT = 140;

export type SegmentHandler = (selection: Selection) => void;

function shortName(uri: string): string {
  const tail = uri.split("/").filter(Boolean).pop() ?? uri;
  return tail;
}

function svgElement(name: string): SVGElement {
  return document.createElementNS(SVG_NS, name);
}

function stackedBar(
  svg: SVGElement,
  x: number,
  counts: DimensionCounts,
  order: string[],
  scale: number,
  palette: Record<string, string>,
  enabled: Set<string>,
  segmentData: (cls: string, count: number) => Record<string, string>,
  onClick: ((cls: string) => void) | null,
): void {
  let y = CHART_HEIGHT;
  for (const cls of order) {
    if (!enabled.has(cls)) continue;
    const count = counts[cls] ?? 0;
    if (count === 0) continue;
    const height = Math.max(1, count * scale);
    y -= height;
    const rect = svgElement("rect");
    rect.setAttribute("x", String(x));
    rect.setAttribute("y", String(y));
    rect.setAttribute("width", String(BAR_WIDTH));
    rect.setAttribute("height", String(height));
    rect.setAttribute("fill", palette[cls]);
    rect.classList.add("segment");
    for (const [key, value] of Object.entries(segmentData(cls, count))) {
      rect.setAttribute(`data-${key}`, value);
    }
    const title = svgElement("title");
    title.textContent = `${cls}: ${count}`;
    rect.appendChild(title);
    if (onClick) {
      rect.addEventListener("click", () => onClick(cls));
    }
    svg.appendChild(rect);
  }
}

export function renderReviewerView(
  container: HTMLElement,
  payload: ReviewersPayload,
  state: ViewState,
  onSelect: SegmentHandler,
): void {
  container.innerHTML = "";
  container.classList.add("reviewer-view");
  const palette = PALETTES[state.palette];
  const maxTotal = Math.max(1, ...payload.rows.map((row) => row.total));
  const scale = (CHART_HEIGHT - 4) / maxTotal;

  for (const row of payload.rows) {
    const group = document.createElement("div");
    group.className = "reviewer-group";
    group.dataset.reviewer = row.reviewer;
    group.dataset.total = String(row.total);

    const label = document.createElement("div");
    label.className = "group-label";
    const name = document.createElement("a");
    name.href = row.reviewer;
    name.textContent = shortName(row.reviewer);
    name.title = row.reviewer;
    label.appendChild(name);
    const total = document.createElement("span");
    total.className = "bar-total";
    total.textContent = `${row.total} comments`;
    total.addEventListener("click", () => onSelect({ scope: "reviewer", key: row.reviewer, cls: null }));
    label.appendChild(total);

    const svg = svgElement("svg");
    const width = DIMENSIONS.length * (BAR_WIDTH + BAR_GAP);
    svg.setAttribute("width", String(width));
    svg.setAttribute("height", String(CHART_HEIGHT + 16));
    svg.setAttribute("viewBox", `0 0 ${width} ${CHART_HEIGHT + 16}`);

    DIMENSIONS.forEach((dimension, i) => {
      const x = i * (BAR_WIDTH + BAR_GAP) + BAR_GAP / 2;
      stackedBar(
        svg,
        x,
        row[dimension],
        CLASSES[dimension],
        scale,
        palette,
        state.enabled,
        (cls, count) => ({
          reviewer: row.reviewer,
          dimension,
          class: cls,
          count: String(count),
        }),
        (cls) => onSelect({ scope: "reviewer", key: row.reviewer, cls }),
      );
      const tick = svgElement("text");
      tick.setAttribute("x", String(x + BAR_WIDTH / 2));
      tick.setAttribute("y", String(CHART_HEIGHT + 12));
      tick.setAttribute("text-anchor", "middle");
      tick.classList.add("axis-label");
      tick.textContent = dimension.slice(0, 3);
      svg.appendChild(tick);
    });

    group.appendChild(svg);
    group.appendChild(label);
    container.appendChild(group);
  }
}

export function renderSectionView(
  container: HTMLElement,
  payload: SectionsPayload,
  state: ViewState,
  onSelect: SegmentHandler,
): void {
  container.innerHTML = "";
  container.classList.add("section-view");
  const palette = PALETTES[state.palette];
  const columns: Array<{ dimension: Dimension; cls: string }> = [];
  for (const dimension of DIMENSIONS) {
    for (const cls of CLASSES[dimension]) {
      if (state.enabled.has(cls)) columns.push({ dimension, cls });
    }
  }

  const table = document.createElement("table");
  table.className = "section-matrix";

  const head = table.createTHead().insertRow();
  const first = document.createElement("th");
  first.textContent = "Section";
  head.appendChild(first);
  for (const column of columns) {
    const th = document.createElement("th");
    th.textContent = column.cls;
    th.style.color = palette[column.cls];
    head.appendChild(th);
  }
  for (const extra of ["total", "paragraphs", "covered"]) {
    const th = document.createElement("th");
    th.textContent = extra;
    head.appendChild(th);
  }

  const body = table.createTBody();
  for (const row of payload.rows) {
    const key = row.section ?? "article-level";
    const tr = body.insertRow();
    tr.dataset.section = key;

    const th = document.createElement("th");
    th.scope = "row";
    const label = document.createElement("span");
    label.className = "section-label";
    label.textContent = row.label;
    label.addEventListener("click", () => onSelect({ scope: "section", key, cls: null }));
    th.appendChild(label);
    tr.appendChild(th);

    for (const column of columns) {
      const td = tr.insertCell();
      const count = row[column.dimension][column.cls] ?? 0;
      td.textContent = String(count);
      td.className = "matrix-cell";
      td.dataset.section = key;
      td.dataset.dimension = column.dimension;
      td.dataset.class = column.cls;
      td.dataset.count = String(count);
      td.addEventListener("click", () => onSelect({ scope: "section", key, cls: column.cls }));
    }

    const totals: Array<[string, number]> = [
      ["total", row.total],
      ["paragraphs", row.paragraphs],
      ["covered", row.covered],
    ];
    for (const [name, value] of totals) {
      const td = tr.insertCell();
      td.textContent = String(value);
      td.className = `meta-cell ${name}`;
      td.dataset[name] = String(value);
    }
  }

  container.appendChild(table);

  const note = document.createElement("p");
  note.className = "uncovered-note";
  note.textContent = `${payload.uncovered.length} paragraphs have no comments`;
  container.appendChild(note);
}

export function renderDetail(container: HTMLElement, payload: CommentsPayload | null, heading: string): void {
  container.innerHTML = "";
  container.classList.add("detail-pane");
  const title = document.createElement("h2");
  title.textContent = heading;
  container.appendChild(title);

  if (payload === null || payload.comments.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-note";
    empty.textContent = payload === null ? "Click a bar segment or matrix cell to see its comments." : "No comments match.";
    container.appendChild(empty);
    return;
  }

  const count = document.createElement("p");
  count.className = "detail-count";
  count.dataset.count = String(payload.count);
  count.textContent = `${payload.count} comments`;
  container.appendChild(count);

  const list = document.createElement("ul");
  list.className = "comment-list";
  for (const comment of payload.comments) {
    const item = document.createElement("li");
    item.className = "comment-card";
    item.dataset.uri = comment.uri;

    const text = document.createElement("p");
    text.className = "comment-text";
    text.textContent = comment.text;
    item.appendChild(text);

    const badges = document.createElement("p");
    badges.className = "comment-badges";
    for (const cls of [comment.positivity, comment.aspect, comment.actionability]) {
      const badge = document.createElement("span");
      badge.className = `badge badge-${cls}`;
      badge.textContent = cls;
      badges.appendChild(badge);
    }
    const impact = document.createElement("span");
    impact.className = "badge badge-impact";
    impact.textContent = `impact ${comment.impact}`;
    badges.appendChild(impact);
    item.appendChild(badges);

    const meta = document.createElement("p");
    meta.className = "comment-meta";
    meta.textContent = `on ${comment.target_kind} (${comment.granularity}) by ${shortName(comment.reviewer)}`;
    item.appendChild(meta);

    list.appendChild(item);
  }
  container.appendChild(list);
}

export interface LegendHandlers {
  onToggleClass(cls: string, enabled: boolean): void;
  onImpactMin(value: number | null): void;
  onPalette(palette: PaletteName): void;
}

export function renderLegend(container: HTMLElement, state: ViewState, handlers: LegendHandlers): void {
  container.innerHTML = "";
  container.classList.add("legend");
  const palette = PALETTES[state.palette];

  for (const dimension of DIMENSIONS) {
    const group = document.createElement("fieldset");
    group.className = "legend-group";
    const legend = document.createElement("legend");
    legend.textContent = dimension;
    group.appendChild(legend);
    for (const cls of CLASSES[dimension]) {
      const label = document.createElement("label");
      label.className = "legend-item";
      const box = document.createElement("input");
      box.type = "checkbox";
      box.checked = state.enabled.has(cls);
      box.dataset.class = cls;
      box.addEventListener("change", () => handlers.onToggleClass(cls, box.checked));
      label.appendChild(box);
      const swatch = document.createElement("span");
      swatch.className = "swatch";
      swatch.style.backgroundColor = palette[cls];
      label.appendChild(swatch);
      label.appendChild(document.createTextNode(cls));
      group.appendChild(label);
    }
    container.appendChild(group);
  }

  const impact = document.createElement("label");
  impact.className = "impact-filter";
  impact.appendChild(document.createTextNode("min impact "));
  const select = document.createElement("select");
  for (const option of ["any", "1", "2", "3", "4", "5"]) {
    const el = document.createElement("option");
    el.value = option;
    el.textContent = option;
    select.appendChild(el);
  }
  select.value = state.impactMin === null ? "any" : String(state.impactMin);
  select.addEventListener("change", () => {
    handlers.onImpactMin(select.value === "any" ? null : Number(select.value));
  });
  impact.appendChild(select);
  container.appendChild(impact);

  const paletteLabel = document.createElement("label");
  paletteLabel.className = "palette-toggle";
  const paletteBox = document.createElement("input");
  paletteBox.type = "checkbox";
  paletteBox.checked = state.palette === "colorblind";
  paletteBox.addEventListener("change", () => {
    handlers.onPalette(paletteBox.checked ? "colorblind" : "default");
  });
  paletteLabel.appendChild(paletteBox);
  paletteLabel.appendChild(document.createTextNode("colorblind-safe colors"));
  container.appendChild(paletteLabel);
}

export function renderError(container: HTMLElement, message: string | null): void {
  container.innerHTML = "";
  if (message === null) {
    container.classList.remove("visible");
    return;
  }
  container.classList.add("error-banner", "visible");
  container.textContent = message;
}
