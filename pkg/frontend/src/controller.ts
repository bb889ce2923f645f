/**
 * Session controller: the UI's state machine, independent of the DOM.
 *
 * Holds the current session snapshot, the move menu, and the selection
 * being assembled (a chosen move plus the arguments collected from zone
 * and contour clicks).  A move can be submitted only once its argument
 * schema is satisfied.  All mutations quote the session revision; a stale
 * revision surfaces as a "proof changed" error rather than a silent retry.
 */

import { ApiClient, ApiError } from './api.js';
import { zoneKey } from './render.js';
import type {
  MoveArgs,
  MovePayload,
  SessionDetail,
  ZoneLabels,
} from './types.js';

export type MenuLevel = 'high' | 'all';

export interface Selection {
  move: MovePayload;
  args: MoveArgs;
}

export class ProofController {
  session: SessionDetail | null = null;
  moves: MovePayload[] = [];
  level: MenuLevel = 'high';
  currentGoal = 0;
  selection: Selection | null = null;
  error: string | null = null;
  busy = false;

  constructor(private api: ApiClient) {}

  get finished(): boolean {
    return this.session?.finished ?? false;
  }

  async create(theorem: string): Promise<void> {
    this.error = null;
    const summary = await this.api.createSession(theorem);
    await this.load(summary.id);
  }

  async load(id: string): Promise<void> {
    this.session = await this.api.getSession(id);
    this.currentGoal = 0;
    this.selection = null;
    await this.refreshMoves();
  }

  async refresh(): Promise<void> {
    if (this.session) {
      await this.load(this.session.id);
    }
  }

  async refreshMoves(): Promise<void> {
    if (!this.session) {
      this.moves = [];
      return;
    }
    const open = this.session.states[this.session.states.length - 1].subgoals.length;
    if (open === 0) {
      this.moves = [];
      return;
    }
    if (this.currentGoal >= open) {
      this.currentGoal = 0;
    }
    this.moves = await this.api.getMoves(this.session.id, this.currentGoal, this.level);
  }

  async setLevel(level: MenuLevel): Promise<void> {
    this.level = level;
    await this.refreshMoves();
  }

  async setGoal(index: number): Promise<void> {
    this.currentGoal = index;
    this.selection = null;
    await this.refreshMoves();
  }

  selectMove(move: MovePayload): void {
    this.error = null;
    this.selection = { move, args: move.args_schema?.type === 'zone_set' ? { zones: [] } : {} };
  }

  /** Record a zone click against the pending selection. */
  pickZone(inSet: ZoneLabels): void {
    const sel = this.selection;
    const schema = sel?.move.args_schema;
    if (!sel || !schema) return;
    if (schema.type === 'zone') {
      sel.args.zone = inSet;
    } else if (schema.type === 'zone_set') {
      const key = zoneKey(inSet);
      const existing = sel.args.zones ?? [];
      const kept = existing.filter((z) => zoneKey(z) !== key);
      sel.args.zones = kept.length === existing.length ? [...existing, inSet] : kept;
    }
  }

  /** Record a contour click (or a typed fresh label) against the selection. */
  pickContour(label: string): void {
    const sel = this.selection;
    if (sel?.move.args_schema?.type === 'contour') {
      sel.args.contour = label;
    }
  }

  canSubmit(): boolean {
    const sel = this.selection;
    if (!sel) return false;
    const schema = sel.move.args_schema;
    if (!schema) return true;
    switch (schema.type) {
      case 'contour':
        return typeof sel.args.contour === 'string' && sel.args.contour.length > 0;
      case 'zone':
        return sel.args.zone !== undefined;
      case 'zone_set':
        return (sel.args.zones ?? []).length > 0;
      default:
        return false;
    }
  }

  async submit(): Promise<void> {
    if (!this.session || !this.selection || !this.canSubmit() || this.busy) return;
    const { move, args } = this.selection;
    this.busy = true;
    this.error = null;
    try {
      await this.api.applyMove(this.session.id, move, args, this.session.revision);
      await this.load(this.session.id);
    } catch (err) {
      this.error = describeError(err);
    } finally {
      this.busy = false;
    }
  }

  /** Apply a move that needs no arguments (tactics, discharge, combine...). */
  async applyDirect(move: MovePayload): Promise<void> {
    this.selectMove(move);
    if (this.canSubmit()) {
      await this.submit();
    }
  }

  async undoTo(stateIndex: number): Promise<void> {
    if (!this.session || this.busy) return;
    this.busy = true;
    this.error = null;
    try {
      await this.api.undoTo(this.session.id, stateIndex, this.session.revision);
      await this.load(this.session.id);
    } catch (err) {
      this.error = describeError(err);
    } finally {
      this.busy = false;
    }
  }
}

export function describeError(err: unknown): string {
  if (err instanceof ApiError) {
    if (err.status === 409) {
      return 'proof changed, refresh';
    }
    return err.body.message ?? `request failed (${err.status})`;
  }
  return err instanceof Error ? err.message : String(err);
}
