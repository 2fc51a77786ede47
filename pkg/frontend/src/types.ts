/** Wire types for the plume-doc/1 schema and the HTTP API payloads. */

export type TextRole =
  | "label"
  | "insight"
  | "context"
  | "encoding"
  | "interaction"
  | "metadata"
  | "annotation";

export type SnippetState = "placeholder" | "generated" | "locked";

export type FormatClass =
  | "heading_large"
  | "heading_section"
  | "body"
  | "note"
  | "footnote"
  | "overlay_annotation";

export interface Geometry {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface Frame {
  id: string;
  parent: string | null;
  geometry: Geometry;
  children: string[];
  chart_ids: string[];
  snippet_ids: string[];
}

export interface Chart {
  id: string;
  spec: unknown;
  rendered_svg: string | null;
  title_hint: string | null;
}

export interface Styling {
  format_class: FormatClass;
  prominence: "high" | "medium" | "low";
}

export interface Snippet {
  id: string;
  frame: string;
  role: TextRole;
  state: SnippetState;
  content: string;
  styling: Styling;
  created_by: "user" | "suggestion" | "generation";
}

export interface DashboardDocument {
  schema_version: string;
  id: string;
  root: string;
  frames: Record<string, Frame>;
  charts: Record<string, Chart>;
  snippets: Record<string, Snippet>;
  suggestions: SuggestionRecord[];
  user_facts: Record<string, string>;
}

export interface SuggestionRecord {
  id: string;
  kind: string;
  title: string;
  description: string;
  status: "pending" | "accepted" | "dismissed";
}

export interface SuggestionView {
  id: string;
  kind: string;
  title: string;
  description: string;
  status: string;
  is_advisory: boolean;
}

export interface MetricsResponse {
  report: {
    word_count: number;
    sentence_count: number;
    syllable_count: number;
    lexical_density: number;
    fk_grade: number;
    provenance: Record<string, string>;
  };
  guideline: {
    role: TextRole;
    word_range: [number, number];
    fk_range: [number, number];
    density_range: [number, number];
    advisory: string;
  };
  conformance: {
    word_count: ConformanceStatus;
    fk_grade: ConformanceStatus;
    lexical_density: ConformanceStatus;
  };
}

export type ConformanceStatus = "below" | "within" | "above";

export interface GenerateResponse {
  generated: string[];
  failed: Record<string, string>;
  plan: { order: string[]; levels: string[][] };
}

export interface ProblemResponse {
  code: string;
  message: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}
