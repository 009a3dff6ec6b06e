// Payload shapes of the analytics API. Field names are part of the API
// contract; the dashboard renders these numbers verbatim.

export interface ArticleInfo {
  id: string;
  uri: string;
  title: string;
  reviews: number;
  comments: number;
  sections: number;
  paragraphs: number;
}

export interface ArticlesPayload {
  articles: ArticleInfo[];
}

export type DimensionCounts = Record<string, number>;

export interface ReviewerRow {
  reviewer: string;
  total: number;
  positivity: DimensionCounts;
  aspect: DimensionCounts;
  actionability: DimensionCounts;
  impact: DimensionCounts;
}

export interface ReviewersPayload {
  article: string;
  article_uri: string;
  rows: ReviewerRow[];
}

export interface SectionRow {
  section: string | null;
  label: string;
  total: number;
  positivity: DimensionCounts;
  aspect: DimensionCounts;
  actionability: DimensionCounts;
  impact: DimensionCounts;
  paragraphs: number;
  covered: number;
}

export interface SectionsPayload {
  article: string;
  article_uri: string;
  rows: SectionRow[];
  uncovered: string[];
}

export interface CommentItem {
  uri: string;
  text: string;
  positivity: string;
  aspect: string;
  actionability: string;
  impact: number;
  target: string;
  target_kind: string;
  granularity: string;
  section: string | null;
  reviewer: string;
  review: string;
}

export interface CommentsPayload {
  article: string;
  count: number;
  comments: CommentItem[];
}
