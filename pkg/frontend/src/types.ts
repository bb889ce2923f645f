/**
 * JSON payload types exchanged with the proof service.
 *
 * Zones travel as sorted arrays of contour labels; the empty array is the
 * background zone.  Diagrams carry both structured fields and their
 * canonical text form.
 */

export type ZoneLabels = string[];

export interface UnitaryPayload {
  kind: 'unitary';
  contours: string[];
  zones: ZoneLabels[];
  shaded: ZoneLabels[];
  missing: ZoneLabels[];
  text: string;
}

export interface ConjunctionPayload {
  kind: 'conjunction';
  left: DiagramPayload;
  right: DiagramPayload;
  text: string;
}

export type DiagramPayload = UnitaryPayload | ConjunctionPayload;

export interface GoalPayload {
  antecedent: DiagramPayload;
  consequent: UnitaryPayload;
  text: string;
}

export interface StatePayload {
  index: number;
  subgoals: GoalPayload[];
  clutter: number;
}

export interface MetricsPayload {
  length: number;
  total_clutter: number;
  average_clutter: { num: number; den: number };
  max_velocity: number;
}

export interface SessionSummary {
  id: string;
  revision: number;
  finished: boolean;
  state: StatePayload;
  metrics: MetricsPayload;
}

export interface StepPayload {
  index: number;
  text: string;
  provenance: string | null;
}

export interface SessionDetail {
  id: string;
  name: string;
  revision: number;
  finished: boolean;
  states: StatePayload[];
  steps: StepPayload[];
  metrics: MetricsPayload;
}

export type ArgsSchema =
  | { type: 'contour'; choices?: string[]; fresh?: boolean; excluded?: string[] }
  | { type: 'zone'; choices: ZoneLabels[] }
  | { type: 'zone_set'; choices: ZoneLabels[] }
  | null;

export interface MovePayload {
  kind: 'rule' | 'tactic' | 'discharge';
  name?: string;
  goal_index: number;
  path?: string;
  direction?: string | null;
  args_schema?: ArgsSchema;
  level?: string;
  summary?: string;
}

/** Arguments collected from the user for one move submission. */
export interface MoveArgs {
  contour?: string;
  zone?: ZoneLabels;
  zones?: ZoneLabels[];
}
