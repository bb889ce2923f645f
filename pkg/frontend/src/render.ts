/**
 * Render model computation: which template a unitary diagram uses, the
 * contour geometry, and the style of every combinatorially possible zone.
 *
 * Pure functions only; the DOM layer lives in svg.ts.  Diagrams with up to
 * three contours use overlapping circles, four contours use the classic
 * four-ellipse Venn arrangement, and anything larger falls back to a zone
 * table.  Missing zones are rendered cross-hatched (a deliberate deviation
 * from paper conventions, documented in the UI legend) so a diagram's full
 * information content is always visible.
 */

import type { UnitaryPayload, ZoneLabels } from './types.js';

export type TemplateId = 'venn1' | 'venn2' | 'venn3' | 'venn4' | 'table';
export type ZoneStyle = 'normal' | 'shaded' | 'missing';

export interface ContourShape {
  label: string;
  cx: number;
  cy: number;
  rx: number;
  ry: number;
  /** SVG rotation in degrees about the centre; 0 for circles. */
  rotation: number;
}

export interface ZoneRegion {
  key: string;
  inSet: string[];
  style: ZoneStyle;
}

export interface RenderModel {
  template: TemplateId;
  width: number;
  height: number;
  contours: ContourShape[];
  /** One entry per zone of the full Venn form over the contours. */
  regions: ZoneRegion[];
}

export const CANVAS = { width: 400, height: 320 };

/** Canonical key for a zone: sorted labels joined by '|'; '' is background. */
export function zoneKey(labels: ZoneLabels): string {
  return [...labels].sort().join('|');
}

export function keyToLabels(key: string): string[] {
  return key === '' ? [] : key.split('|');
}

function powerset(labels: string[]): string[][] {
  let out: string[][] = [[]];
  for (const label of labels) {
    out = out.concat(out.map((s) => [...s, label]));
  }
  return out;
}

function circle(label: string, cx: number, cy: number, r: number): ContourShape {
  return { label, cx, cy, rx: r, ry: r, rotation: 0 };
}

/** Contour geometry per template; all 2^n overlaps are realizable. */
function contourShapes(labels: string[]): ContourShape[] {
  const { width: w, height: h } = CANVAS;
  const [a, b, c, d] = labels;
  switch (labels.length) {
    case 0:
      return [];
    case 1:
      return [circle(a, w / 2, h / 2, 95)];
    case 2:
      return [circle(a, w / 2 - 48, h / 2, 90), circle(b, w / 2 + 48, h / 2, 90)];
    case 3:
      return [
        circle(a, w / 2, h / 2 - 45, 82),
        circle(b, w / 2 - 48, h / 2 + 38, 82),
        circle(c, w / 2 + 48, h / 2 + 38, 82),
      ];
    case 4:
      // four congruent ellipses; verified to produce all 16 regions
      return [
        { label: a, cx: 0.35 * w, cy: 0.6 * h, rx: 0.36 * w, ry: 0.225 * h, rotation: -140 },
        { label: b, cx: 0.45 * w, cy: 0.5 * h, rx: 0.36 * w, ry: 0.225 * h, rotation: -140 },
        { label: c, cx: 0.544 * w, cy: 0.5 * h, rx: 0.36 * w, ry: 0.225 * h, rotation: -40 },
        { label: d, cx: 0.644 * w, cy: 0.6 * h, rx: 0.36 * w, ry: 0.225 * h, rotation: -40 },
      ];
    default:
      return [];
  }
}

function templateFor(count: number): TemplateId {
  if (count <= 1) return 'venn1';
  if (count === 2) return 'venn2';
  if (count === 3) return 'venn3';
  if (count === 4) return 'venn4';
  return 'table';
}

function compareZones(a: string[], b: string[]): number {
  if (a.length !== b.length) return a.length - b.length;
  const ka = a.join('|');
  const kb = b.join('|');
  return ka < kb ? -1 : ka > kb ? 1 : 0;
}

/**
 * Compute the render model for a unitary diagram payload.
 *
 * Every zone of venn_zones(contours) gets exactly one region whose style
 * mirrors the payload: shaded zones solid, missing zones cross-hatched,
 * other present zones plain.
 */
export function renderModel(diagram: UnitaryPayload): RenderModel {
  const labels = [...diagram.contours].sort();
  const shaded = new Set(diagram.shaded.map(zoneKey));
  const missing = new Set(diagram.missing.map(zoneKey));
  const regions: ZoneRegion[] = powerset(labels)
    .sort(compareZones)
    .map((inSet) => {
      const key = zoneKey(inSet);
      const style: ZoneStyle = shaded.has(key) ? 'shaded' : missing.has(key) ? 'missing' : 'normal';
      return { key, inSet, style };
    });
  return {
    template: templateFor(labels.length),
    width: CANVAS.width,
    height: CANVAS.height,
    contours: contourShapes(labels),
    regions,
  };
}

export function insideShape(shape: ContourShape, x: number, y: number): boolean {
  const t = (shape.rotation * Math.PI) / 180;
  const dx = x - shape.cx;
  const dy = y - shape.cy;
  const u = dx * Math.cos(t) + dy * Math.sin(t);
  const v = -dx * Math.sin(t) + dy * Math.cos(t);
  return (u / shape.rx) ** 2 + (v / shape.ry) ** 2 <= 1;
}

/** The zone key under a canvas point. */
export function classifyPoint(model: RenderModel, x: number, y: number): string {
  const inSet = model.contours.filter((s) => insideShape(s, x, y)).map((s) => s.label);
  return zoneKey(inSet);
}

/** The contour whose outline passes near the point, if any. */
export function contourNear(
  model: RenderModel,
  x: number,
  y: number,
  tolerance = 0.08,
): string | null {
  for (const shape of model.contours) {
    const t = (shape.rotation * Math.PI) / 180;
    const dx = x - shape.cx;
    const dy = y - shape.cy;
    const u = dx * Math.cos(t) + dy * Math.sin(t);
    const v = -dx * Math.sin(t) + dy * Math.cos(t);
    const r = Math.sqrt((u / shape.rx) ** 2 + (v / shape.ry) ** 2);
    if (Math.abs(r - 1) <= tolerance) {
      return shape.label;
    }
  }
  return null;
}

/**
 * Sample the canvas on a grid and report which zone keys are visible.
 * Used by tests to prove every region of the template is drawable.
 */
export function visibleZoneKeys(model: RenderModel, step = 2): Set<string> {
  const seen = new Set<string>();
  for (let x = step / 2; x < model.width; x += step) {
    for (let y = step / 2; y < model.height; y += step) {
      seen.add(classifyPoint(model, x, y));
    }
  }
  return seen;
}
