/**
 * DOM wiring for the proof assistant: theorem entry, proof trace with
 * per-state clutter, subgoal rendering with clickable zones/contours,
 * the move menu with its level toggle, and the metrics panel.
 */

import { ApiClient } from './api.js';
import { describeError, ProofController } from './controller.js';
import { renderUnitary } from './svg.js';
import type { DiagramPayload, MovePayload, UnitaryPayload } from './types.js';

const EXAMPLES: Record<string, string> = {
  'flat benchmark':
    '(({contours: B C; zones: () (B) (B C); shaded:} & {contours: B D; zones: () (B) (D); shaded:})' +
    ' & ({contours: A E; zones: () (A) (A E); shaded:} & {contours: A E; zones: () (A) (E); shaded:}))' +
    ' |- {contours: C D E; zones: () (C) (D) (E); shaded: (E)}',
  'deep benchmark':
    '(({contours: B C; zones: () (B) (B C); shaded:} & ({contours: A E; zones: () (A) (A E); shaded:}' +
    ' & {contours: B D; zones: () (B) (D); shaded:})) & {contours: A E; zones: () (A) (E); shaded:})' +
    ' |- {contours: C D E; zones: () (C) (D) (E); shaded: (E)}',
  'subset chain':
    '({contours: A B; zones: () (B) (A B); shaded:} & {contours: B C; zones: () (C) (B C); shaded:})' +
    ' |- {contours: A C; zones: () (C) (A C); shaded:}',
};

const controller = new ProofController(new ApiClient(''));

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className = '',
  text = '',
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

function renderDiagramTree(d: DiagramPayload): HTMLElement {
  if (d.kind === 'unitary') {
    return renderUnitary(d, {
      onZone: (inSet) => {
        controller.pickZone(inSet);
        draw();
      },
      onContour: (label) => {
        controller.pickContour(label);
        draw();
      },
    });
  }
  const holder = el('div', 'conjunction');
  holder.appendChild(renderDiagramTree(d.left));
  holder.appendChild(el('div', 'connective', '∧'));
  holder.appendChild(renderDiagramTree(d.right));
  return holder;
}

function describeMove(move: MovePayload): string {
  if (move.kind === 'discharge') return `discharge goal ${move.goal_index}`;
  if (move.kind === 'tactic') return move.name ?? 'tactic';
  const where = move.path && move.path !== '-' ? ` @ ${move.path}` : '';
  const dir = move.direction ? ` ${move.direction}` : '';
  return `${move.name}${where}${dir}`;
}

function describeSchema(move: MovePayload): string {
  const schema = move.args_schema;
  if (!schema) return '';
  if (schema.type === 'contour' && schema.fresh) return 'type a fresh contour name';
  if (schema.type === 'contour') return 'click a contour';
  if (schema.type === 'zone') return 'click a zone';
  return 'click zones to toggle them';
}

function buildTrace(root: HTMLElement): void {
  const session = controller.session;
  if (!session) return;
  const list = el('ol', 'trace');
  session.states.forEach((state, i) => {
    const item = el('li', i === session.states.length - 1 ? 'current' : '');
    const button = el('button', 'trace-state');
    button.textContent =
      `state ${i} · ${state.subgoals.length} open · clutter ${state.clutter}` +
      (i > 0 ? ` · ${session.steps[i - 1].text}` : '');
    button.addEventListener('click', () => {
      void controller.undoTo(i).then(draw);
    });
    item.appendChild(button);
    list.appendChild(item);
  });
  root.appendChild(list);
}

function buildGoals(root: HTMLElement): void {
  const session = controller.session;
  if (!session) return;
  const state = session.states[session.states.length - 1];
  if (state.subgoals.length === 0) {
    const done = el('div', 'finished', '✓ proof finished');
    root.appendChild(done);
    return;
  }
  state.subgoals.forEach((goal, i) => {
    const panel = el('section', 'goal' + (i === controller.currentGoal ? ' selected' : ''));
    const head = el('header', '', `subgoal ${i}`);
    head.addEventListener('click', () => {
      void controller.setGoal(i).then(draw);
    });
    panel.appendChild(head);
    const sides = el('div', 'goal-sides');
    sides.appendChild(renderDiagramTree(goal.antecedent));
    sides.appendChild(el('div', 'connective turnstile', '⊢'));
    sides.appendChild(renderDiagramTree(goal.consequent));
    panel.appendChild(sides);
    root.appendChild(panel);
  });
}

function buildMoves(root: HTMLElement): void {
  const menu = el('div', 'moves');
  const toggle = el('label', 'level-toggle');
  const box = el('input') as HTMLInputElement;
  box.type = 'checkbox';
  box.checked = controller.level === 'all';
  box.addEventListener('change', () => {
    void controller.setLevel(box.checked ? 'all' : 'high').then(draw);
  });
  toggle.appendChild(box);
  toggle.appendChild(document.createTextNode(' show low-level tactics'));
  menu.appendChild(toggle);

  for (const move of controller.moves) {
    const row = el('div', 'move');
    const button = el('button', 'move-name', describeMove(move));
    button.addEventListener('click', () => {
      if (move.args_schema) {
        controller.selectMove(move);
        draw();
      } else {
        void controller.applyDirect(move).then(draw);
      }
    });
    row.appendChild(button);
    if (move.kind === 'tactic' && move.summary) {
      row.appendChild(el('span', 'summary', move.summary));
    }
    menu.appendChild(row);
  }
  root.appendChild(menu);
}

function buildSelection(root: HTMLElement): void {
  const sel = controller.selection;
  if (!sel) return;
  const panel = el('div', 'selection');
  panel.appendChild(el('strong', '', describeMove(sel.move)));
  panel.appendChild(el('span', 'hint', ' — ' + describeSchema(sel.move)));
  const schema = sel.move.args_schema;
  if (schema?.type === 'contour' && schema.fresh) {
    const input = el('input') as HTMLInputElement;
    input.placeholder = 'new contour label';
    input.value = sel.args.contour ?? '';
    input.addEventListener('input', () => controller.pickContour(input.value));
    panel.appendChild(input);
  }
  const picked = el('span', 'picked');
  if (sel.args.contour) picked.textContent = ` contour: ${sel.args.contour}`;
  if (sel.args.zone) picked.textContent = ` zone: (${sel.args.zone.join(' ')})`;
  if (sel.args.zones?.length) {
    picked.textContent = ' zones: ' + sel.args.zones.map((z) => `(${z.join(' ')})`).join(' ');
  }
  panel.appendChild(picked);
  const submit = el('button', 'submit', 'apply');
  submit.disabled = !controller.canSubmit();
  submit.addEventListener('click', () => {
    void controller.submit().then(draw);
  });
  panel.appendChild(submit);
  root.appendChild(panel);
}

function buildMetrics(root: HTMLElement): void {
  const session = controller.session;
  if (!session) return;
  const m = session.metrics;
  const avg = (m.average_clutter.num / m.average_clutter.den).toFixed(1);
  root.appendChild(
    el(
      'div',
      'metrics',
      `length ${m.length} · total clutter ${m.total_clutter} · ` +
        `average clutter ${avg} · max velocity ${m.max_velocity}`,
    ),
  );
}

function draw(): void {
  const root = document.getElementById('app');
  if (!root) return;
  root.textContent = '';

  const entry = el('div', 'entry');
  const select = el('select') as HTMLSelectElement;
  select.appendChild(new Option('— examples —', ''));
  for (const name of Object.keys(EXAMPLES)) {
    select.appendChild(new Option(name, name));
  }
  const input = el('textarea') as HTMLTextAreaElement;
  input.rows = 3;
  input.placeholder = 'diagram |- unitary diagram';
  input.id = 'theorem-input';
  select.addEventListener('change', () => {
    if (select.value) input.value = EXAMPLES[select.value];
  });
  const start = el('button', 'submit', 'start proof');
  start.addEventListener('click', () => {
    void controller
      .create(input.value)
      .catch((err) => {
        controller.error = describeError(err);
      })
      .then(draw);
  });
  entry.appendChild(select);
  entry.appendChild(input);
  entry.appendChild(start);
  root.appendChild(entry);

  if (controller.error) {
    root.appendChild(el('div', 'error', controller.error));
  }

  if (controller.session) {
    const layout = el('div', 'layout');
    const left = el('div', 'left');
    buildTrace(left);
    buildMetrics(left);
    layout.appendChild(left);
    const middle = el('div', 'middle');
    buildGoals(middle);
    layout.appendChild(middle);
    const right = el('div', 'right');
    buildMoves(right);
    buildSelection(right);
    layout.appendChild(right);
    root.appendChild(layout);
  }

  const legend = el('div', 'legend');
  legend.appendChild(el('span', 'legend-shaded', 'shaded = empty region'));
  legend.appendChild(el('span', 'legend-missing', 'cross-hatched = missing zone (also empty)'));
  root.appendChild(legend);
}

document.addEventListener('DOMContentLoaded', draw);
