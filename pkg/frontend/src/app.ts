// Dashboard wiring: state transitions, data loading, and URL sync.
// The detail pane always shows the /api/comments response for the current
// selection; it never recomputes anything client-side.

import { ApiClient, SequenceGate, type CommentQuery } from "./api.js";
import {
  renderDetail,
  renderError,
  renderLegend,
  renderReviewerView,
  renderSectionView,
} from "./charts.js";
import {
  decodeState,
  dimensionOf,
  encodeState,
  type PaletteName,
  type Selection,
  type ViewKind,
  type ViewState,
} from "./state.js";
import type { ArticlesPayload, ReviewersPayload, SectionsPayload } from "./types.js";

export class DashboardApp {
  state: ViewState;
  private viewGate = new SequenceGate();
  private paneGate = new SequenceGate();
  private viewPayload: ReviewersPayload | SectionsPayload | null = null;
  private articles: ArticlesPayload | null = null;

  private chrome!: {
    articleSelect: HTMLSelectElement;
    viewButtons: Record<ViewKind, HTMLButtonElement>;
    legend: HTMLElement;
    error: HTMLElement;
    view: HTMLElement;
    detail: HTMLElement;
  };

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
    initial?: ViewState,
    private syncUrl: (query: string) => void = () => {},
  ) {
    this.state = initial ?? decodeState("");
    this.buildChrome();
  }

  private buildChrome(): void {
    this.root.innerHTML = "";
    const header = document.createElement("header");
    header.className = "toolbar";

    const articleSelect = document.createElement("select");
    articleSelect.className = "article-select";
    articleSelect.addEventListener("change", () => {
      void this.setArticle(articleSelect.value);
    });
    header.appendChild(articleSelect);

    const viewButtons = {} as Record<ViewKind, HTMLButtonElement>;
    for (const kind of ["reviewer", "section"] as ViewKind[]) {
      const button = document.createElement("button");
      button.type = "button";
      button.textContent = kind === "reviewer" ? "Reviewer view" : "Section view";
      button.dataset.view = kind;
      button.addEventListener("click", () => {
        void this.setView(kind);
      });
      viewButtons[kind] = button;
      header.appendChild(button);
    }

    const error = document.createElement("div");
    error.setAttribute("role", "alert");

    const legend = document.createElement("aside");
    const view = document.createElement("section");
    view.className = "view-area";
    const detail = document.createElement("section");

    this.root.append(header, error, legend, view, detail);
    this.chrome = { articleSelect, viewButtons, legend, error, view, detail };
  }

  async start(): Promise<void> {
    try {
      this.articles = await this.api.articles();
    } catch (exc) {
      renderError(this.chrome.error, `Cannot reach the analytics API: ${exc}`);
      return;
    }
    this.renderChrome();
    await this.refresh();
  }

  private renderChrome(): void {
    const select = this.chrome.articleSelect;
    select.innerHTML = "";
    for (const article of this.articles?.articles ?? []) {
      const option = document.createElement("option");
      option.value = article.id;
      option.textContent = `${article.title} (${article.comments} comments)`;
      select.appendChild(option);
    }
    select.value = this.state.article;
    for (const [kind, button] of Object.entries(this.chrome.viewButtons)) {
      button.classList.toggle("active", kind === this.state.view);
    }
    renderLegend(this.chrome.legend, this.state, {
      onToggleClass: (cls, enabled) => {
        void this.toggleClass(cls, enabled);
      },
      onImpactMin: (value) => {
        void this.setImpactMin(value);
      },
      onPalette: (palette) => {
        this.setPalette(palette);
      },
    });
  }

  private pushUrl(): void {
    this.syncUrl(encodeState(this.state));
  }

  async refresh(): Promise<void> {
    await Promise.all([this.refreshView(), this.refreshPane()]);
  }

  private async refreshView(): Promise<void> {
    const seq = this.viewGate.issue();
    const { article, view } = this.state;
    try {
      const payload =
        view === "reviewer" ? await this.api.reviewers(article) : await this.api.sections(article);
      if (!this.viewGate.accept(seq)) return;
      this.viewPayload = payload;
      renderError(this.chrome.error, null);
      this.renderView();
    } catch (exc) {
      if (!this.viewGate.accept(seq)) return;
      this.viewPayload = null;
      this.chrome.view.innerHTML = "";
      renderError(this.chrome.error, `Failed to load the ${view} view: ${exc}`);
    }
  }

  private renderView(): void {
    if (this.viewPayload === null) return;
    const onSelect = (selection: Selection) => {
      void this.select(selection);
    };
    if (this.state.view === "reviewer") {
      renderReviewerView(this.chrome.view, this.viewPayload as ReviewersPayload, this.state, onSelect);
    } else {
      renderSectionView(this.chrome.view, this.viewPayload as SectionsPayload, this.state, onSelect);
    }
  }

  selectionQuery(): CommentQuery | null {
    const selection = this.state.selection;
    if (selection === null || this.state.enabled.size === 0) return null;
    if (selection.cls !== null && !this.state.enabled.has(selection.cls)) return null;
    const query: CommentQuery = { article: this.state.article };
    if (selection.scope === "reviewer") query.reviewer = selection.key;
    else query.section = selection.key;
    if (selection.cls !== null) {
      query[dimensionOf(selection.cls)] = selection.cls;
    }
    if (this.state.impactMin !== null) query.impact_min = this.state.impactMin;
    return query;
  }

  private paneHeading(): string {
    const selection = this.state.selection;
    if (selection === null) return "Comments";
    const what = selection.cls === null ? "all comments" : `${selection.cls} comments`;
    return `${what} · ${selection.scope} ${selection.key.split("/").pop()}`;
  }

  private async refreshPane(): Promise<void> {
    const seq = this.paneGate.issue();
    const query = this.selectionQuery();
    if (query === null) {
      if (this.paneGate.accept(seq)) renderDetail(this.chrome.detail, null, "Comments");
      return;
    }
    try {
      const payload = await this.api.comments(query);
      if (!this.paneGate.accept(seq)) return;
      renderDetail(this.chrome.detail, payload, this.paneHeading());
    } catch (exc) {
      if (!this.paneGate.accept(seq)) return;
      renderDetail(this.chrome.detail, null, "Comments");
      renderError(this.chrome.error, `Failed to load comments: ${exc}`);
    }
  }

  // --- state transitions --------------------------------------------------

  async select(selection: Selection): Promise<void> {
    this.state.selection = selection;
    this.pushUrl();
    await this.refreshPane();
  }

  async toggleClass(cls: string, enabled: boolean): Promise<void> {
    if (enabled) this.state.enabled.add(cls);
    else this.state.enabled.delete(cls);
    if (this.state.selection?.cls != null && !this.state.enabled.has(this.state.selection.cls)) {
      this.state.selection = null;
    }
    if (this.state.enabled.size === 0) this.state.selection = null;
    this.pushUrl();
    this.renderChrome();
    this.renderView();
    await this.refreshPane();
  }

  async setImpactMin(value: number | null): Promise<void> {
    this.state.impactMin = value;
    this.pushUrl();
    await this.refreshPane();
  }

  setPalette(palette: PaletteName): void {
    this.state.palette = palette;
    this.pushUrl();
    this.renderChrome();
    this.renderView();
  }

  async setView(view: ViewKind): Promise<void> {
    this.state.view = view;
    this.pushUrl();
    this.renderChrome();
    await this.refreshView();
  }

  async setArticle(article: string): Promise<void> {
    this.state.article = article;
    this.state.selection = null;
    this.pushUrl();
    this.renderChrome();
    await this.refresh();
  }
}
