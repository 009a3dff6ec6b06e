// Thin client for the analytics API. The fetch function is injectable so
// tests can intercept requests at this seam.

import type {
  ArticlesPayload,
  CommentsPayload,
  ReviewersPayload,
  SectionsPayload,
} from "./types.js";

export interface ResponseLike {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (url: string) => Promise<ResponseLike>;

export class ApiError extends Error {
  constructor(public url: string, public status: number) {
    super(`API request failed (${status}): ${url}`);
  }
}

export interface CommentQuery {
  article: string;
  reviewer?: string;
  positivity?: string;
  aspect?: string;
  actionability?: string;
  impact_min?: number;
  section?: string;
}

export function commentsUrl(query: CommentQuery): string {
  const params = new URLSearchParams();
  params.set("article", query.article);
  if (query.reviewer !== undefined) params.set("reviewer", query.reviewer);
  if (query.positivity !== undefined) params.set("positivity", query.positivity);
  if (query.aspect !== undefined) params.set("aspect", query.aspect);
  if (query.actionability !== undefined) params.set("actionability", query.actionability);
  if (query.impact_min !== undefined) params.set("impact_min", String(query.impact_min));
  if (query.section !== undefined) params.set("section", query.section);
  return `/api/comments?${params.toString()}`;
}

export class ApiClient {
  constructor(private fetchFn: FetchLike = (url) => fetch(url)) {}

  private async getJson<T>(url: string): Promise<T> {
    const response = await this.fetchFn(url);
    if (!response.ok) throw new ApiError(url, response.status);
    return (await response.json()) as T;
  }

  articles(): Promise<ArticlesPayload> {
    return this.getJson("/api/articles");
  }

  reviewers(article: string): Promise<ReviewersPayload> {
    return this.getJson(`/api/articles/${article}/reviewers`);
  }

  sections(article: string): Promise<SectionsPayload> {
    return this.getJson(`/api/articles/${article}/sections`);
  }

  comments(query: CommentQuery): Promise<CommentsPayload> {
    return this.getJson(commentsUrl(query));
  }
}

/** Drops responses that arrive after a newer one has been applied. */
export class SequenceGate {
  private issued = 0;
  private applied = 0;

  issue(): number {
    return ++this.issued;
  }

  accept(seq: number): boolean {
    if (seq < this.applied) return false;
    this.applied = seq;
    return true;
  }
}
