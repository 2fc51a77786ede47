/** Dot plots for the snippet dropdown: a shaded guideline band with the
 * snippet's value as a dot, one plot per metric. Pure string-in, SVG-out so
 * the geometry is unit-testable. */

export interface DotPlotSpec {
  label: string;
  value: number;
  bandLow: number;
  bandHigh: number;
  /** Plot domain; widened around the band so out-of-band dots stay visible. */
  domainLow: number;
  domainHigh: number;
  status: "below" | "within" | "above";
}

export const PLOT_WIDTH = 220;
export const PLOT_HEIGHT = 26;

export function scale(value: number, lo: number, hi: number): number {
  if (hi <= lo) return 0;
  const clamped = Math.min(Math.max(value, lo), hi);
  return ((clamped - lo) / (hi - lo)) * PLOT_WIDTH;
}

export function domainFor(bandLow: number, bandHigh: number, value: number): [number, number] {
  const pad = Math.max((bandHigh - bandLow) * 0.5, 1);
  return [Math.min(bandLow - pad, value), Math.max(bandHigh + pad, value)];
}

export function renderDotPlot(spec: DotPlotSpec): string {
  const bandX = scale(spec.bandLow, spec.domainLow, spec.domainHigh);
  const bandW = scale(spec.bandHigh, spec.domainLow, spec.domainHigh) - bandX;
  const dotX = scale(spec.value, spec.domainLow, spec.domainHigh);
  const mid = PLOT_HEIGHT / 2;
  return (
    `<svg class="dotplot" data-metric="${spec.label}" data-status="${spec.status}" ` +
    `width="${PLOT_WIDTH}" height="${PLOT_HEIGHT}" role="img">` +
    `<line x1="0" y1="${mid}" x2="${PLOT_WIDTH}" y2="${mid}" class="dotplot-axis"/>` +
    `<rect class="dotplot-band" x="${bandX.toFixed(1)}" y="4" ` +
    `width="${bandW.toFixed(1)}" height="${PLOT_HEIGHT - 8}" rx="3"/>` +
    `<circle class="dotplot-dot" cx="${dotX.toFixed(1)}" cy="${mid}" r="5" ` +
    `data-value="${spec.value}"/>` +
    `</svg>`
  );
}
