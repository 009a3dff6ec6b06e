// View state, encoded in the URL query string so every view is deep-linkable.

export type Dimension = "positivity" | "aspect" | "actionability";
export type ViewKind = "reviewer" | "section";
export type PaletteName = "default" | "colorblind";

export const DIMENSIONS: Dimension[] = ["positivity", "aspect", "actionability"];

export const CLASSES: Record<Dimension, string[]> = {
  positivity: ["positive", "negative", "neutral"],
  aspect: ["content", "presentation"],
  actionability: ["suggestion", "compulsory"],
};

export const ALL_CLASSES: string[] = DIMENSIONS.flatMap((d) => CLASSES[d]);

export function dimensionOf(cls: string): Dimension {
  for (const dimension of DIMENSIONS) {
    if (CLASSES[dimension].includes(cls)) return dimension;
  }
  throw new Error(`unknown class: ${cls}`);
}

export interface Selection {
  scope: "reviewer" | "section";
  key: string; // reviewer URI, section URI, or "article-level"
  cls: string | null; // clicked class; null means the whole row
}

export interface ViewState {
  article: string;
  view: ViewKind;
  enabled: Set<string>;
  impactMin: number | null;
  palette: PaletteName;
  selection: Selection | null;
}

export function defaultState(): ViewState {
  return {
    article: "a1",
    view: "reviewer",
    enabled: new Set(ALL_CLASSES),
    impactMin: null,
    palette: "default",
    selection: null,
  };
}

export function encodeState(state: ViewState): string {
  const params = new URLSearchParams();
  params.set("article", state.article);
  params.set("view", state.view);
  if (state.enabled.size !== ALL_CLASSES.length) {
    params.set("classes", ALL_CLASSES.filter((c) => state.enabled.has(c)).join(","));
  }
  if (state.impactMin !== null) params.set("impact_min", String(state.impactMin));
  if (state.palette !== "default") params.set("palette", state.palette);
  if (state.selection !== null) params.set("sel", JSON.stringify(state.selection));
  return params.toString();
}

export function decodeState(query: string): ViewState {
  const state = defaultState();
  const params = new URLSearchParams(query.startsWith("?") ? query.slice(1) : query);

  const article = params.get("article");
  if (article) state.article = article;
  const view = params.get("view");
  if (view === "reviewer" || view === "section") state.view = view;

  const classes = params.get("classes");
  if (classes !== null) {
    state.enabled = new Set(classes.split(",").filter((c) => ALL_CLASSES.includes(c)));
  }
  const impactMin = params.get("impact_min");
  if (impactMin !== null && /^[1-5]$/.test(impactMin)) state.impactMin = Number(impactMin);
  if (params.get("palette") === "colorblind") state.palette = "colorblind";

  const sel = params.get("sel");
  if (sel !== null) {
    try {
      const parsed = JSON.parse(sel);
      if (
        (parsed.scope === "reviewer" || parsed.scope === "section") &&
        typeof parsed.key === "string" &&
        (parsed.cls === null || ALL_CLASSES.includes(parsed.cls))
      ) {
        state.selection = { scope: parsed.scope, key: parsed.key, cls: parsed.cls };
      }
    } catch {
      // ignore malformed selections in shared links
    }
  }
  return state;
}
