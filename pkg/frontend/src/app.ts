/** The authoring surface: canvas with visible frames, suggestion sidebar,
 * and the per-snippet dropdown. The server document is the only source of
 * text truth; every mutation is one API call followed by a reload, so a
 * hard refresh always reproduces the same canvas. */

import { PlumeClient } from "./api.js";
import { domainFor, renderDotPlot } from "./dotplot.js";
import { absoluteGeometry, movedBy } from "./geometry.js";
import {
  ApiError,
  DashboardDocument,
  Geometry,
  MetricsResponse,
  Snippet,
  SuggestionView,
} from "./types.js";

const CANVAS_SCALE = 0.6; // canvas units -> px

const FORMAT_CLASSES = [
  "heading_large",
  "heading_section",
  "body",
  "note",
  "footnote",
  "overlay_annotation",
];

const ROLES = [
  "label",
  "insight",
  "context",
  "encoding",
  "interaction",
  "metadata",
  "annotation",
];

interface DragState {
  frameId: string;
  startX: number;
  startY: number;
  original: Geometry;
}

export class App {
  doc: DashboardDocument | null = null;
  suggestions: SuggestionView[] = [];
  highlighted = new Set<string>();
  dropdownFor: string | null = null;
  dropdownMetrics: MetricsResponse | null = null;
  previewMode = false;
  lastError: string | null = null;
  private drag: DragState | null = null;
  private pending = 0;
  private waiters: (() => void)[] = [];

  constructor(
    readonly root: HTMLElement,
    readonly client: PlumeClient,
  ) {
    root.addEventListener("mouseover", (event) => this.onHover(event));
    root.addEventListener("mouseout", (event) => this.onUnhover(event));
    root.addEventListener("click", (event) => this.onClick(event));
    root.addEventListener("change", (event) => this.onChange(event));
    root.addEventListener("mousedown", (event) => this.onMouseDown(event));
    root.addEventListener("mousemove", (event) => this.onMouseMove(event));
    root.addEventListener("mouseup", (event) => this.onMouseUp(event));
  }

  /** Resolves once every in-flight API interaction has finished. */
  settled(): Promise<void> {
    if (this.pending === 0) return Promise.resolve();
    return new Promise((resolve) => this.waiters.push(resolve));
  }

  private track<T>(work: Promise<T>): Promise<T> {
    this.pending += 1;
    const done = () => {
      this.pending -= 1;
      if (this.pending === 0) {
        const waiters = this.waiters;
        this.waiters = [];
        for (const wake of waiters) wake();
      }
    };
    work.then(done, done);
    return work;
  }

  async load(): Promise<void> {
    await this.track(this.reload());
  }

  private async reload(): Promise<void> {
    this.doc = await this.client.getDocument();
    this.suggestions = await this.client.suggestions();
    this.render();
  }

  private failure(error: unknown): void {
    if (error instanceof ApiError && error.code === "stale-revision") {
      this.lastError = "Document changed elsewhere; reloading.";
      void this.track(this.reload());
      return;
    }
    this.lastError = error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
    this.renderToast();
  }

  // ------------------------------------------------------------------ events

  private snippetIdAt(target: EventTarget | null): string | null {
    const el = (target as HTMLElement | null)?.closest?.("[data-snippet-id]");
    return el?.getAttribute("data-snippet-id") ?? null;
  }

  private onHover(event: Event): void {
    const sid = this.snippetIdAt(event.target);
    if (sid) void this.track(this.hoverSnippet(sid));
  }

  private onUnhover(event: Event): void {
    if (this.snippetIdAt(event.target)) this.clearHighlight();
  }

  private onClick(event: Event): void {
    const el = event.target as HTMLElement;
    const accept = el.closest("[data-accept]");
    if (accept) {
      void this.track(this.acceptSuggestion(accept.getAttribute("data-accept")!));
      return;
    }
    const dismiss = el.closest("[data-dismiss]");
    if (dismiss) {
      void this.track(this.dismissSuggestion(dismiss.getAttribute("data-dismiss")!));
      return;
    }
    if (el.closest("[data-accept-all]")) {
      void this.track(this.acceptAll());
      return;
    }
    if (el.closest("[data-generate-all]")) {
      void this.track(this.generateAll());
      return;
    }
    if (el.closest("[data-preview-toggle]")) {
      this.previewMode = !this.previewMode;
      this.render();
      return;
    }
    const action = el.closest("[data-action]");
    if (action && this.dropdownFor) {
      const kind = action.getAttribute("data-action")!;
      void this.track(this.runSnippetAction(this.dropdownFor, kind));
      return;
    }
    const generate = el.closest("[data-generate-snippet]");
    if (generate) {
      void this.track(this.generateOne(generate.getAttribute("data-generate-snippet")!));
      return;
    }
    const lock = el.closest("[data-lock-toggle]");
    if (lock) {
      void this.track(this.toggleLock(lock.getAttribute("data-lock-toggle")!));
      return;
    }
    const sid = this.snippetIdAt(event.target);
    if (sid) {
      void this.track(this.openDropdown(sid));
      return;
    }
    if (this.dropdownFor && !el.closest(".dropdown")) {
      this.dropdownFor = null;
      this.dropdownMetrics = null;
      this.render();
    }
  }

  private onChange(event: Event): void {
    const el = event.target as HTMLSelectElement;
    if (!this.dropdownFor) return;
    if (el.matches("[data-role-select]")) {
      void this.track(this.patchAndReload(this.dropdownFor, { role: el.value }));
    } else if (el.matches("[data-format-select]")) {
      void this.track(this.patchAndReload(this.dropdownFor, { format_class: el.value }));
    }
  }

  private onMouseDown(event: Event): void {
    if (this.previewMode) return;
    const mouse = event as MouseEvent;
    const handle = (mouse.target as HTMLElement).closest?.("[data-drag-frame]");
    if (!handle || !this.doc) return;
    const frameId = handle.getAttribute("data-drag-frame")!;
    this.drag = {
      frameId,
      startX: mouse.clientX,
      startY: mouse.clientY,
      original: { ...this.doc.frames[frameId]!.geometry },
    };
  }

  private onMouseMove(event: Event): void {
    if (!this.drag || !this.doc) return;
    const mouse = event as MouseEvent;
    const dx = (mouse.clientX - this.drag.startX) / CANVAS_SCALE;
    const dy = (mouse.clientY - this.drag.startY) / CANVAS_SCALE;
    this.doc.frames[this.drag.frameId]!.geometry = movedBy(this.drag.original, dx, dy);
    this.render();
  }

  private onMouseUp(_event: Event): void {
    if (!this.drag || !this.doc) return;
    const { frameId, original } = this.drag;
    const proposed = this.doc.frames[frameId]!.geometry;
    this.drag = null;
    void this.track(this.commitGeometry(frameId, proposed, original));
  }

  // ----------------------------------------------------------------- actions

  async hoverSnippet(snippetId: string): Promise<void> {
    try {
      this.highlighted = new Set(await this.client.highlight(snippetId));
    } catch (error) {
      this.failure(error);
      return;
    }
    this.applyHighlight();
  }

  clearHighlight(): void {
    this.highlighted = new Set();
    this.applyHighlight();
  }

  async acceptSuggestion(suggestionId: string): Promise<void> {
    try {
      await this.client.acceptSuggestion(suggestionId);
      await this.reload();
    } catch (error) {
      this.failure(error);
    }
  }

  async dismissSuggestion(suggestionId: string): Promise<void> {
    try {
      await this.client.dismissSuggestion(suggestionId);
      await this.reload();
    } catch (error) {
      this.failure(error);
    }
  }

  async acceptAll(): Promise<void> {
    try {
      await this.client.acceptAll();
      await this.reload();
    } catch (error) {
      this.failure(error);
    }
  }

  async generateAll(): Promise<void> {
    try {
      await this.client.generate(null);
      await this.reload();
    } catch (error) {
      this.failure(error);
    }
  }

  async generateOne(snippetId: string): Promise<void> {
    try {
      await this.client.generate([snippetId]);
      await this.reload();
    } catch (error) {
      this.failure(error);
    }
  }

  async toggleLock(snippetId: string): Promise<void> {
    const snippet = this.doc?.snippets[snippetId];
    if (!snippet) return;
    try {
      await this.client.patchSnippet(snippetId, { locked: snippet.state !== "locked" });
      await this.reload();
    } catch (error) {
      this.failure(error);
    }
  }

  async openDropdown(snippetId: string): Promise<void> {
    this.dropdownFor = snippetId;
    this.dropdownMetrics = null;
    const snippet = this.doc?.snippets[snippetId];
    if (snippet && snippet.state !== "placeholder") {
      try {
        this.dropdownMetrics = await this.client.metrics(snippetId);
      } catch {
        this.dropdownMetrics = null; // e.g. empty text; dropdown still opens
      }
    }
    this.render();
  }

  async runSnippetAction(snippetId: string, kind: string): Promise<void> {
    try {
      if (kind === "delete") {
        await this.client.deleteSnippet(snippetId);
        this.dropdownFor = null;
        this.dropdownMetrics = null;
      } else if (kind === "regenerate" || kind === "shorten" || kind === "simplify") {
        await this.client.refine(snippetId, kind);
      }
      await this.reload();
      if (this.dropdownFor === snippetId) await this.openDropdown(snippetId);
    } catch (error) {
      this.failure(error);
    }
  }

  async patchAndReload(
    snippetId: string,
    patch: Parameters<PlumeClient["patchSnippet"]>[1],
  ): Promise<void> {
    try {
      await this.client.patchSnippet(snippetId, patch);
      await this.reload();
    } catch (error) {
      this.failure(error);
    }
  }

  private async commitGeometry(
    frameId: string,
    proposed: Geometry,
    original: Geometry,
  ): Promise<void> {
    try {
      await this.client.patchFrameGeometry(frameId, proposed);
      await this.reload();
    } catch (error) {
      // rejected edits snap back
      if (this.doc) this.doc.frames[frameId]!.geometry = original;
      this.failure(error);
      this.render();
    }
  }

  // --------------------------------------------------------------- rendering

  render(): void {
    if (!this.doc) return;
    this.root.innerHTML =
      `<div class="layout ${this.previewMode ? "preview" : ""}">` +
      `<aside class="sidebar">${this.renderSidebar()}</aside>` +
      `<main class="canvas" data-canvas>${this.renderFrame(this.doc.root)}</main>` +
      `<aside class="inspector">${this.renderDropdown()}</aside>` +
      `</div>` +
      `<div class="toast" data-toast>${this.lastError ?? ""}</div>`;
    this.applyHighlight();
  }

  private renderToast(): void {
    const toast = this.root.querySelector("[data-toast]");
    if (toast) toast.textContent = this.lastError ?? "";
    else this.render();
  }

  private applyHighlight(): void {
    for (const el of this.root.querySelectorAll("[data-frame-id]")) {
      el.classList.toggle(
        "highlighted",
        this.highlighted.has(el.getAttribute("data-frame-id")!),
      );
    }
  }

  private renderSidebar(): string {
    const items = this.suggestions
      .map((sug) => {
        const buttons = sug.is_advisory
          ? `<button data-dismiss="${sug.id}">Dismiss</button>`
          : `<button data-accept="${sug.id}">Accept</button>` +
            `<button data-dismiss="${sug.id}">Dismiss</button>`;
        return (
          `<li class="suggestion" data-suggestion-id="${sug.id}">` +
          `<strong>${escapeHtml(sug.title)}</strong>` +
          `<p>${escapeHtml(sug.description)}</p>${buttons}</li>`
        );
      })
      .join("");
    return (
      `<h2>Suggestions</h2><ul class="suggestion-list">${items}</ul>` +
      `<button data-accept-all>Accept all</button>` +
      `<button data-generate-all>Generate all</button>` +
      `<button data-preview-toggle>${this.previewMode ? "Exit preview" : "Preview"}</button>`
    );
  }

  private renderFrame(frameId: string): string {
    const doc = this.doc!;
    const frame = doc.frames[frameId]!;
    const geometry = frame.parent === null ? absoluteGeometry(doc, frameId) : frame.geometry;
    const style =
      `left:${geometry.x * CANVAS_SCALE}px;top:${geometry.y * CANVAS_SCALE}px;` +
      `width:${geometry.width * CANVAS_SCALE}px;height:${geometry.height * CANVAS_SCALE}px;`;
    const controls = this.previewMode
      ? ""
      : `<span class="frame-handle" data-drag-frame="${frameId}">${frameId}</span>`;
    const snippets = frame.snippet_ids.map((sid) => this.renderSnippet(sid)).join("");
    const charts = frame.chart_ids
      .map((cid) => {
        const svg = doc.charts[cid]?.rendered_svg;
        return `<figure class="chart" data-chart-id="${cid}">${svg ?? "<em>chart</em>"}</figure>`;
      })
      .join("");
    const children = frame.children.map((child) => this.renderFrame(child)).join("");
    return (
      `<div class="frame" data-frame-id="${frameId}" style="${style}">` +
      `${controls}${snippets}${charts}${children}</div>`
    );
  }

  private renderSnippet(snippetId: string): string {
    const snippet = this.doc!.snippets[snippetId]!;
    const lockMark = snippet.state === "locked" ? " 🔒" : "";
    const controls =
      this.previewMode || snippet.state === "placeholder"
        ? this.previewMode
          ? ""
          : `<button data-generate-snippet="${snippetId}" title="Generate">✦</button>`
        : `<button data-lock-toggle="${snippetId}" title="Lock in">✓</button>`;
    return (
      `<div class="snippet ${snippet.state} ${snippet.styling.format_class}" ` +
      `data-snippet-id="${snippetId}" data-role="${snippet.role}" data-state="${snippet.state}">` +
      `<span class="snippet-content">${escapeHtml(snippet.content)}</span>${lockMark}${controls}</div>`
    );
  }

  private renderDropdown(): string {
    if (!this.dropdownFor || !this.doc) return "";
    const snippet = this.doc.snippets[this.dropdownFor];
    if (!snippet) return "";
    return (
      `<div class="dropdown" data-dropdown-for="${snippet.id}">` +
      `<h3>Snippet ${snippet.id}</h3>` +
      this.renderSelectors(snippet) +
      this.renderGuidance(snippet) +
      this.renderActions(snippet) +
      `</div>`
    );
  }

  private renderSelectors(snippet: Snippet): string {
    const roleOptions = ROLES.map(
      (role) =>
        `<option value="${role}" ${role === snippet.role ? "selected" : ""}>${role}</option>`,
    ).join("");
    const formatOptions = FORMAT_CLASSES.map(
      (fc) =>
        `<option value="${fc}" ${fc === snippet.styling.format_class ? "selected" : ""}>${fc}</option>`,
    ).join("");
    return (
      `<label>Role <select data-role-select>${roleOptions}</select></label>` +
      `<label>Format <select data-format-select>${formatOptions}</select></label>`
    );
  }

  private renderGuidance(snippet: Snippet): string {
    const metrics = this.dropdownMetrics;
    if (!metrics) {
      return snippet.state === "placeholder"
        ? `<p class="guidance">Placeholder text: write or generate it, then metrics appear.</p>`
        : "";
    }
    const { report, guideline, conformance } = metrics;
    const plots = [
      {
        label: "word count",
        value: report.word_count,
        band: guideline.word_range,
        status: conformance.word_count,
      },
      {
        label: "word variety",
        value: report.lexical_density,
        band: guideline.density_range,
        status: conformance.lexical_density,
      },
      {
        label: "readability",
        value: report.fk_grade,
        band: guideline.fk_range,
        status: conformance.fk_grade,
      },
    ]
      .map(({ label, value, band, status }) => {
        const [lo, hi] = domainFor(band[0], band[1], value);
        return (
          `<div class="metric-row"><span>${label}</span>` +
          renderDotPlot({
            label,
            value,
            bandLow: band[0],
            bandHigh: band[1],
            domainLow: lo,
            domainHigh: hi,
            status,
          }) +
          `</div>`
        );
      })
      .join("");
    return `<p class="guidance">${escapeHtml(guideline.advisory)}</p>${plots}`;
  }

  private renderActions(snippet: Snippet): string {
    const refinable = snippet.state === "generated";
    const refine = refinable
      ? `<button data-action="regenerate">Regenerate</button>` +
        `<button data-action="shorten">Shorten</button>` +
        `<button data-action="simplify">Simplify</button>`
      : "";
    return `<div class="actions">${refine}<button data-action="delete">Delete</button></div>`;
  }
}

function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}
