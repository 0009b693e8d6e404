// Collects what the participant does into the same session-record shape the
// dialogue module writes, so an exported file feeds `waydirector analyze`.

import type {
  ConditionData,
  SessionEvent,
  SessionRecordJson,
  Style,
} from "./types.js";

export const TASK_ROOMS = [5, 3, 7];
export const SCALE_SIZES = { nars: 14, ptt: 6, animacy: 6, intelligence: 5 } as const;

export class SessionBuilder {
  readonly events: SessionEvent[] = [];
  nars: number[] = [];
  ptt: number[] = [];
  clarifications = 0;
  private conditions: Partial<Record<Style, ConditionData>> = {};
  private tasks: Record<Style, { room: number; success: boolean }[]> = {
    landmark: [],
    skeletal: [],
  };

  constructor(
    readonly participantId: string,
    readonly conditionOrder: [Style, Style],
    private clock: () => number = () => Date.now(),
  ) {
    this.event("session_start", { participant_id: participantId });
  }

  event(type: string, data: Record<string, unknown> = {}): void {
    this.events.push({ t: this.clock(), type, ...data });
  }

  clarification(text: string): void {
    this.clarifications += 1;
    this.event("clarification", { text });
  }

  setScale(name: "nars" | "ptt", values: number[]): void {
    const expected = SCALE_SIZES[name];
    if (values.length !== expected) {
      throw new Error(`${name} expects ${expected} items, got ${values.length}`);
    }
    for (const value of values) {
      if (!Number.isInteger(value) || value < 1 || value > 5) {
        throw new Error(`${name} items must be integers 1..5`);
      }
    }
    this[name] = [...values];
    this.event("scale_recorded", { scale: name });
  }

  recordTask(style: Style, room: number, success: boolean): void {
    this.tasks[style].push({ room, success });
    this.event("task_result", { style, room, success });
  }

  setGodspeed(style: Style, animacy: number[], intelligence: number[]): void {
    if (animacy.length !== SCALE_SIZES.animacy) {
      throw new Error(`animacy expects ${SCALE_SIZES.animacy} items`);
    }
    if (intelligence.length !== SCALE_SIZES.intelligence) {
      throw new Error(`intelligence expects ${SCALE_SIZES.intelligence} items`);
    }
    const success = TASK_ROOMS.map((room) => {
      const attempt = this.tasks[style].filter((t) => t.room === room).pop();
      return attempt !== undefined ? attempt.success : false;
    });
    this.conditions[style] = {
      animacy: [...animacy],
      intelligence: [...intelligence],
      task_success: success,
      task_rooms: [...TASK_ROOMS],
    };
    this.event("condition_recorded", { style });
  }

  isComplete(): boolean {
    return (
      this.nars.length === SCALE_SIZES.nars &&
      this.ptt.length === SCALE_SIZES.ptt &&
      this.conditions.landmark !== undefined &&
      this.conditions.skeletal !== undefined
    );
  }

  toRecord(): SessionRecordJson {
    const record: SessionRecordJson = {
      participant_id: this.participantId,
      complete: this.isComplete(),
      condition_order: this.conditionOrder,
      order_seed: null,
      clarification_count: this.clarifications,
      events: [...this.events],
    };
    if (this.nars.length > 0) {
      record.nars = [...this.nars];
    }
    if (this.ptt.length > 0) {
      record.ptt = [...this.ptt];
    }
    if (this.conditions.landmark || this.conditions.skeletal) {
      record.conditions = { ...this.conditions };
    }
    return record;
  }
}

/** Client-side mirror of the server schema's structural rules; returns the
 * list of problems so the export control can explain itself. */
export function recordProblems(record: SessionRecordJson): string[] {
  const problems: string[] = [];
  if (!record.participant_id) {
    problems.push("participant id is empty");
  }
  const likertOk = (values: number[] | undefined, n: number, name: string) => {
    if (values === undefined) {
      if (record.complete) {
        problems.push(`${name} missing on a complete record`);
      }
      return;
    }
    if (values.length !== n) {
      problems.push(`${name} has ${values.length} items, expected ${n}`);
    }
    if (values.some((v) => !Number.isInteger(v) || v < 1 || v > 5)) {
      problems.push(`${name} items must be integers 1..5`);
    }
  };
  likertOk(record.nars, SCALE_SIZES.nars, "nars");
  likertOk(record.ptt, SCALE_SIZES.ptt, "ptt");
  for (const style of ["landmark", "skeletal"] as const) {
    const condition = record.conditions?.[style];
    if (condition === undefined) {
      if (record.complete) {
        problems.push(`condition ${style} missing on a complete record`);
      }
      continue;
    }
    likertOk(condition.animacy, SCALE_SIZES.animacy, `${style} animacy`);
    likertOk(condition.intelligence, SCALE_SIZES.intelligence, `${style} intelligence`);
    if (condition.task_success.length !== 3) {
      problems.push(`${style} task_success must have 3 entries`);
    }
  }
  for (const event of record.events) {
    if (typeof event.t !== "number" || typeof event.type !== "string") {
      problems.push("events must carry numeric t and string type");
      break;
    }
  }
  return problems;
}

export function recordToDownload(record: SessionRecordJson): Blob {
  return new Blob([JSON.stringify(record, null, 2) + "\n"], {
    type: "application/json",
  });
}
