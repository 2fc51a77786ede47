/** Geometry helpers for dragging and resizing frames on the canvas. All in
 * canvas units; the canvas element maps units to pixels with one scale
 * factor, so deltas divide by it. */

import { DashboardDocument, Geometry } from "./types.js";

export function absoluteGeometry(doc: DashboardDocument, frameId: string): Geometry {
  const frame = doc.frames[frameId];
  if (!frame) throw new Error(`unknown frame ${frameId}`);
  let { x, y } = frame.geometry;
  let parent = frame.parent;
  while (parent !== null) {
    const up = doc.frames[parent];
    if (!up) break;
    x += up.geometry.x;
    y += up.geometry.y;
    parent = up.parent;
  }
  return { x, y, width: frame.geometry.width, height: frame.geometry.height };
}

export function movedBy(geometry: Geometry, dxUnits: number, dyUnits: number): Geometry {
  return { ...geometry, x: geometry.x + dxUnits, y: geometry.y + dyUnits };
}

export function resizedBy(geometry: Geometry, dwUnits: number, dhUnits: number): Geometry {
  return {
    ...geometry,
    width: Math.max(geometry.width + dwUnits, 1),
    height: Math.max(geometry.height + dhUnits, 1),
  };
}
