/** Thin typed client for the plume HTTP API. Tracks the document revision
 * from response headers and sends it back on mutations, so a concurrent
 * editor surfaces as a 409 instead of a silent overwrite. */

import {
  ApiError,
  DashboardDocument,
  GenerateResponse,
  Geometry,
  MetricsResponse,
  Snippet,
  SuggestionView,
} from "./types.js";

async function problem(response: Response): Promise<never> {
  let code = "unknown-error";
  let message = response.statusText;
  try {
    const body = await response.json();
    code = body.code ?? code;
    message = body.message ?? message;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(response.status, code, message);
}

export class PlumeClient {
  revision = 0;

  constructor(
    readonly baseUrl: string,
    readonly documentId: string,
  ) {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  private track(response: Response): void {
    const header = response.headers.get("X-Document-Revision");
    if (header !== null) this.revision = Number(header);
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    withRevision = false,
  ): Promise<T> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["Content-Type"] = "application/json";
    if (withRevision) headers["X-Document-Revision"] = String(this.revision);
    const response = await fetch(this.url(path), {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) await problem(response);
    this.track(response);
    return (await response.json()) as T;
  }

  async getDocument(): Promise<DashboardDocument> {
    return this.request<DashboardDocument>("GET", `/documents/${this.documentId}`);
  }

  async putDocument(doc: DashboardDocument): Promise<DashboardDocument> {
    return this.request<DashboardDocument>("PUT", `/documents/${this.documentId}`, doc, true);
  }

  async suggestions(): Promise<SuggestionView[]> {
    const body = await this.request<{ suggestions: SuggestionView[] }>(
      "GET",
      `/documents/${this.documentId}/suggestions`,
    );
    return body.suggestions;
  }

  async acceptSuggestion(suggestionId: string): Promise<string[]> {
    const body = await this.request<{ created_snippet_ids: string[] }>(
      "POST",
      `/suggestions/${suggestionId}/accept?document_id=${this.documentId}`,
    );
    return body.created_snippet_ids;
  }

  async dismissSuggestion(suggestionId: string): Promise<void> {
    await this.request("POST", `/suggestions/${suggestionId}/dismiss?document_id=${this.documentId}`);
  }

  async acceptAll(): Promise<string[]> {
    const body = await this.request<{ created_snippet_ids: string[] }>(
      "POST",
      "/suggestions/accept-all",
      { document_id: this.documentId },
    );
    return body.created_snippet_ids;
  }

  async highlight(snippetId: string): Promise<string[]> {
    const body = await this.request<{ frame_ids: string[] }>(
      "GET",
      `/snippets/${snippetId}/highlight?document_id=${this.documentId}`,
    );
    return body.frame_ids;
  }

  async metrics(snippetId: string): Promise<MetricsResponse> {
    return this.request<MetricsResponse>(
      "GET",
      `/snippets/${snippetId}/metrics?document_id=${this.documentId}`,
    );
  }

  async patchSnippet(
    snippetId: string,
    patch: Partial<{
      content: string;
      locked: boolean;
      role: string;
      format_class: string;
      prominence: string;
      facts: string;
    }>,
  ): Promise<Snippet> {
    return this.request<Snippet>(
      "PATCH",
      `/snippets/${snippetId}?document_id=${this.documentId}`,
      patch,
      true,
    );
  }

  async deleteSnippet(snippetId: string): Promise<void> {
    await this.request(
      "DELETE",
      `/snippets/${snippetId}?document_id=${this.documentId}`,
      undefined,
      true,
    );
  }

  async patchFrameGeometry(frameId: string, geometry: Geometry): Promise<void> {
    await this.request(
      "PATCH",
      `/frames/${frameId}?document_id=${this.documentId}`,
      { geometry },
      true,
    );
  }

  async generate(targets: string[] | null, dryRun = false): Promise<GenerateResponse> {
    return this.request<GenerateResponse>("POST", `/documents/${this.documentId}/generate`, {
      targets,
      dry_run: dryRun,
    });
  }

  async refine(snippetId: string, kind: "regenerate" | "shorten" | "simplify"): Promise<string> {
    const body = await this.request<{ content: string }>(
      "POST",
      `/snippets/${snippetId}/refine?document_id=${this.documentId}`,
      { kind },
    );
    return body.content;
  }
}
