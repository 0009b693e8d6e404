// Wire types for the waydirector JSON API and the session-record schema.

export type Style = "landmark" | "skeletal";

export interface MapNodeView {
  id: string;
  kind: "room" | "corridor" | "junction";
  label: string | null;
  room_number: number | null;
  x: number | null;
  y: number | null;
}

export interface MapEdgeView {
  from: string;
  to: string;
  action: "left" | "right" | "straight" | "enter";
  landmark: string | null;
  length_m: number | null;
}

export interface MapModel {
  name: string;
  start: string;
  nodes: MapNodeView[];
  edges: MapEdgeView[];
}

export interface SegmentView {
  kind: string;
  direction: "left" | "right" | null;
  landmark: string | null;
  follow_hops: number;
}

export interface RouteResponse {
  sentences: string[];
  style: Style;
  seed: number;
  route: string[];
  segments: SegmentView[];
  trace: { ok: boolean; visited: string[]; outcome: string; outcome_node: string };
}

export interface IntentResponse {
  kind: "navigate" | "repeat" | "switch_style" | "help" | "quit" | "unknown";
  destination: string | null;
  node_id: string | null;
  unresolved: string | null;
  style: Style | null;
  raw: string;
}

export interface StatsResponse {
  participant_count: number;
  complete_count: number;
  report: { n: number } | null;
  detail: string | null;
}

export interface ConditionData {
  animacy: number[];
  intelligence: number[];
  task_success: boolean[];
  task_rooms: number[];
}

export interface SessionEvent {
  t: number;
  type: string;
  [key: string]: unknown;
}

export interface SessionRecordJson {
  participant_id: string;
  complete: boolean;
  condition_order: [Style, Style];
  order_seed: number | null;
  nars?: number[];
  ptt?: number[];
  conditions?: Partial<Record<Style, ConditionData>>;
  clarification_count: number;
  events: SessionEvent[];
}
