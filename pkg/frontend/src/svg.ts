/**
 * DOM construction for diagrams: SVG for the venn templates, an HTML
 * table for five or more contours.  Zones are painted by clipping a rect
 * to the in-set shapes and masking out the out-set shapes, so each zone's
 * visible area is exactly its region; clicks are resolved geometrically
 * through render.ts rather than by event target.
 */

import {
  CANVAS,
  classifyPoint,
  contourNear,
  RenderModel,
  renderModel,
  zoneKey,
} from './render.js';
import type { UnitaryPayload } from './types.js';

const SVG_NS = 'http://www.w3.org/2000/svg';

export interface PickHandlers {
  onZone?: (inSet: string[]) => void;
  onContour?: (label: string) => void;
}

let idCounter = 0;

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) {
    el.setAttribute(k, String(v));
  }
  return el;
}

const STYLE_FILL: Record<string, string> = {
  normal: '#ffffff',
  shaded: '#8a919c',
};

function shapeEl(shape: { cx: number; cy: number; rx: number; ry: number; rotation: number }) {
  const el = svgEl('ellipse', { cx: shape.cx, cy: shape.cy, rx: shape.rx, ry: shape.ry });
  if (shape.rotation) {
    el.setAttribute('transform', `rotate(${shape.rotation} ${shape.cx} ${shape.cy})`);
  }
  return el;
}

function crosshatchPattern(id: string): SVGPatternElement {
  const pattern = svgEl('pattern', {
    id,
    width: 8,
    height: 8,
    patternUnits: 'userSpaceOnUse',
  });
  pattern.appendChild(svgEl('rect', { width: 8, height: 8, fill: '#f3f4f6' }));
  for (const d of ['M0 8 L8 0', 'M-2 2 L2 -2', 'M6 10 L10 6']) {
    const path = svgEl('path', { d, stroke: '#6b7280', 'stroke-width': 1 });
    pattern.appendChild(path);
  }
  return pattern;
}

function renderVennSvg(model: RenderModel, handlers: PickHandlers): SVGSVGElement {
  const uid = `dg${idCounter++}`;
  const svg = svgEl('svg', {
    viewBox: `0 0 ${model.width} ${model.height}`,
    width: model.width,
    height: model.height,
  });
  svg.classList.add('diagram');
  const defs = svgEl('defs');
  svg.appendChild(defs);
  const hatchId = `${uid}-hatch`;
  defs.appendChild(crosshatchPattern(hatchId));

  for (const shape of model.contours) {
    const clip = svgEl('clipPath', { id: `${uid}-clip-${shape.label}` });
    clip.appendChild(shapeEl(shape));
    defs.appendChild(clip);
  }

  const zonesGroup = svgEl('g');
  svg.appendChild(zonesGroup);
  for (const region of model.regions) {
    const outSet = model.contours.filter((s) => !region.inSet.includes(s.label));
    const fill = STYLE_FILL[region.style] ?? `url(#${hatchId})`;
    const rect = svgEl('rect', {
      x: 0,
      y: 0,
      width: model.width,
      height: model.height,
      fill,
    });
    rect.setAttribute('data-zone', region.key);
    rect.setAttribute('data-style', region.style);
    let node: SVGElement = rect;
    if (outSet.length > 0) {
      const mask = svgEl('mask', { id: `${uid}-mask-${region.key.replace(/\|/g, '_') || 'bg'}` });
      mask.appendChild(
        svgEl('rect', { x: 0, y: 0, width: model.width, height: model.height, fill: '#fff' }),
      );
      for (const shape of outSet) {
        const hole = shapeEl(shape);
        hole.setAttribute('fill', '#000');
        mask.appendChild(hole);
      }
      defs.appendChild(mask);
      rect.setAttribute('mask', `url(#${mask.id})`);
    }
    for (const label of region.inSet) {
      const wrapper = svgEl('g', { 'clip-path': `url(#${uid}-clip-${label})` });
      wrapper.appendChild(node);
      node = wrapper;
    }
    zonesGroup.appendChild(node);
  }

  const outlines = svgEl('g');
  svg.appendChild(outlines);
  for (const shape of model.contours) {
    const outline = shapeEl(shape);
    outline.setAttribute('fill', 'none');
    outline.setAttribute('stroke', '#1f2937');
    outline.setAttribute('stroke-width', '1.6');
    outlines.appendChild(outline);
    const label = svgEl('text', {
      x: shape.cx,
      y: shape.cy - (shape.rotation === 0 ? shape.ry : Math.max(shape.rx, shape.ry) * 0.72) - 6,
      'text-anchor': 'middle',
    });
    label.textContent = shape.label;
    label.classList.add('contour-label');
    outlines.appendChild(label);
  }

  const overlay = svgEl('rect', {
    x: 0,
    y: 0,
    width: model.width,
    height: model.height,
    fill: 'transparent',
  });
  overlay.style.cursor = 'pointer';
  overlay.addEventListener('click', (event) => {
    const rect = svg.getBoundingClientRect();
    const x = ((event.clientX - rect.left) / rect.width) * model.width;
    const y = ((event.clientY - rect.top) / rect.height) * model.height;
    const label = contourNear(model, x, y);
    if (label !== null && handlers.onContour) {
      handlers.onContour(label);
      return;
    }
    if (handlers.onZone) {
      const key = classifyPoint(model, x, y);
      handlers.onZone(key === '' ? [] : key.split('|'));
    }
  });
  svg.appendChild(overlay);
  return svg;
}

function renderTable(
  model: RenderModel,
  diagram: UnitaryPayload,
  handlers: PickHandlers,
): HTMLElement {
  const table = document.createElement('table');
  table.className = 'zone-table diagram';
  const head = table.createTHead().insertRow();
  for (const text of ['zone', 'status']) {
    const th = document.createElement('th');
    th.textContent = text;
    head.appendChild(th);
  }
  const contourRow = table.createTHead().insertRow();
  const cell = document.createElement('th');
  cell.colSpan = 2;
  cell.textContent = `contours: ${diagram.contours.join(' ')}`;
  contourRow.appendChild(cell);
  const body = table.createTBody();
  for (const region of model.regions) {
    const row = body.insertRow();
    row.dataset.zone = region.key;
    row.dataset.style = region.style;
    row.insertCell().textContent = region.inSet.length ? `(${region.inSet.join(' ')})` : '()';
    const status = row.insertCell();
    status.textContent = region.style;
    status.className = `zone-${region.style}`;
    row.addEventListener('click', () => handlers.onZone?.(region.inSet));
  }
  return table;
}

/** Build a clickable DOM element showing one unitary diagram. */
export function renderUnitary(diagram: UnitaryPayload, handlers: PickHandlers = {}): HTMLElement {
  const model = renderModel(diagram);
  const holder = document.createElement('div');
  holder.className = 'unitary';
  if (model.template === 'table') {
    holder.appendChild(renderTable(model, diagram, handlers));
  } else {
    holder.appendChild(renderVennSvg(model, handlers) as unknown as HTMLElement);
  }
  return holder;
}

export { renderModel, zoneKey, CANVAS };
