// DOM wiring: chat on the left, SVG map in the middle, study panel on the
// right.  All navigation semantics come from the HTTP API; this file only
// moves state between the widgets and the pure modules.

import { WaydirectorClient, ApiError } from "./api.js";
import {
  ViewState,
  applyAssistantNote,
  applyNetworkError,
  applyRoute,
  beginTurn,
  initialState,
  planTurn,
  remainingSentences,
  revealRoute,
  showNextSentence,
  toggleStyle,
} from "./state.js";
import { SCALE_SIZES, SessionBuilder, TASK_ROOMS, recordProblems, recordToDownload } from "./session.js";
import { renderMap } from "./svgmap.js";
import type { MapModel, Style } from "./types.js";

const client = new WaydirectorClient("");
let state: ViewState = initialState();
let mapModel: MapModel | null = null;
let session: SessionBuilder | null = null;
let taskCursor = 0; // index into the 2 x TASK_ROOMS sequence

const $ = <T extends HTMLElement>(selector: string): T => {
  const node = document.querySelector(selector);
  if (node === null) {
    throw new Error(`missing element ${selector}`);
  }
  return node as T;
};

function conditionOrder(): [Style, Style] {
  return state.style === "landmark" ? ["landmark", "skeletal"] : ["skeletal", "landmark"];
}

function currentTask(): { style: Style; room: number } | null {
  if (session === null || taskCursor >= 2 * TASK_ROOMS.length) {
    return null;
  }
  const style = session.conditionOrder[Math.floor(taskCursor / TASK_ROOMS.length)]!;
  const room = TASK_ROOMS[taskCursor % TASK_ROOMS.length]!;
  return { style, room };
}

function redraw(): void {
  const transcript = $("#transcript");
  transcript.replaceChildren(
    ...state.transcript.map((message) => {
      const row = document.createElement("div");
      row.className = `msg msg-${message.role}`;
      row.textContent = message.text;
      return row;
    }),
  );
  transcript.scrollTop = transcript.scrollHeight;

  $("#style-toggle").textContent = `style: ${state.style}`;
  const next = $("#next-sentence") as HTMLButtonElement;
  next.disabled = remainingSentences(state) === 0;
  next.textContent = `next sentence (${remainingSentences(state)})`;
  ($("#reveal") as HTMLButtonElement).disabled = state.lastRoute === null;

  if (mapModel !== null) {
    $("#map").replaceChildren(renderMap(mapModel, state.highlight));
  }

  const task = currentTask();
  $("#task-label").textContent =
    session === null
      ? "start a session to run the study protocol"
      : task === null
        ? "all six tasks done; fill the Godspeed forms and export"
        : `task ${taskCursor + 1}/6: reach room ${task.room} (${task.style} condition)`;
  const exportButton = $("#export") as HTMLButtonElement;
  exportButton.disabled = session === null || session.events.length <= 1;
}

async function handleUtterance(utterance: string): Promise<void> {
  if (utterance.trim() === "") {
    return;
  }
  state = beginTurn(state, utterance);
  const turn = state.turn;
  redraw();
  session?.event("utterance", { text: utterance });
  try {
    const intent = await client.getIntent(utterance);
    const plan = planTurn(state, intent);
    if (plan.kind === "toggle_then_note") {
      state = toggleStyle(state);
      state = applyAssistantNote(state, turn, `${plan.text} Now: ${state.style}.`);
    } else if (plan.kind === "note") {
      if (intent.kind === "navigate" && intent.destination === null) {
        session?.clarification(utterance);
      }
      state = applyAssistantNote(state, turn, plan.text);
    } else {
      const response = await client.getRoute(plan.destination, state.style, plan.seed);
      state = applyRoute(state, turn, plan.destination, response);
      session?.event("instructions", {
        destination: plan.destination,
        style: response.style,
        seed: response.seed,
        sentences: response.sentences,
      });
    }
  } catch (error) {
    const message =
      error instanceof ApiError ? `${error.code}: ${error.message}` : "network failure; try again";
    state = applyNetworkError(state, turn, message);
  }
  redraw();
}

function scaleForm(container: HTMLElement, name: string, count: number): HTMLInputElement[] {
  const inputs: HTMLInputElement[] = [];
  const wrapper = document.createElement("div");
  wrapper.className = "scale-form";
  for (let index = 0; index < count; index += 1) {
    const input = document.createElement("input");
    input.type = "number";
    input.min = "1";
    input.max = "5";
    input.value = "3";
    input.title = `${name} item ${index + 1}`;
    inputs.push(input);
    wrapper.appendChild(input);
  }
  container.appendChild(wrapper);
  return inputs;
}

function readScale(inputs: HTMLInputElement[]): number[] {
  return inputs.map((input) => Number(input.value));
}

function wireStudyPanel(): void {
  const narsInputs = scaleForm($("#nars-form"), "NARS", SCALE_SIZES.nars);
  const pttInputs = scaleForm($("#ptt-form"), "PTT", SCALE_SIZES.ptt);
  const godspeed: Record<Style, { animacy: HTMLInputElement[]; intelligence: HTMLInputElement[] }> = {
    landmark: {
      animacy: scaleForm($("#landmark-animacy"), "landmark animacy", SCALE_SIZES.animacy),
      intelligence: scaleForm($("#landmark-intelligence"), "landmark intelligence", SCALE_SIZES.intelligence),
    },
    skeletal: {
      animacy: scaleForm($("#skeletal-animacy"), "skeletal animacy", SCALE_SIZES.animacy),
      intelligence: scaleForm($("#skeletal-intelligence"), "skeletal intelligence", SCALE_SIZES.intelligence),
    },
  };

  $("#start-session").addEventListener("click", () => {
    const participant = ($("#participant") as HTMLInputElement).value.trim();
    if (participant === "") {
      $("#study-note").textContent = "enter a participant id first";
      return;
    }
    session = new SessionBuilder(participant, conditionOrder());
    taskCursor = 0;
    $("#study-note").textContent = `session ${participant} started (${session.conditionOrder.join(" then ")})`;
    redraw();
  });

  $("#save-scales").addEventListener("click", () => {
    if (session === null) {
      $("#study-note").textContent = "start a session first";
      return;
    }
    try {
      session.setScale("nars", readScale(narsInputs));
      session.setScale("ptt", readScale(pttInputs));
      $("#study-note").textContent = "questionnaires recorded";
    } catch (error) {
      $("#study-note").textContent = String(error);
    }
  });

  const markTask = (success: boolean) => {
    const task = currentTask();
    if (session === null || task === null) {
      return;
    }
    session.recordTask(task.style, task.room, success);
    taskCursor += 1;
    redraw();
  };
  $("#task-yes").addEventListener("click", () => markTask(true));
  $("#task-no").addEventListener("click", () => markTask(false));

  $("#save-godspeed").addEventListener("click", () => {
    if (session === null) {
      return;
    }
    try {
      for (const style of ["landmark", "skeletal"] as const) {
        session.setGodspeed(
          style,
          readScale(godspeed[style].animacy),
          readScale(godspeed[style].intelligence),
        );
      }
      $("#study-note").textContent = session.isComplete()
        ? "ratings recorded; the session is complete"
        : "ratings recorded (session still incomplete)";
    } catch (error) {
      $("#study-note").textContent = String(error);
    }
  });

  $("#export").addEventListener("click", async () => {
    if (session === null) {
      return;
    }
    session.event("session_export");
    const record = session.toRecord();
    const problems = recordProblems(record);
    if (problems.length > 0) {
      $("#study-note").textContent = `not exportable: ${problems[0]}`;
      return;
    }
    const url = URL.createObjectURL(recordToDownload(record));
    const anchor = document.createElement("a");
    anchor.href = url;
    anchor.download = `${record.participant_id}.json`;
    anchor.click();
    URL.revokeObjectURL(url);
    try {
      await client.postSession(record.participant_id, [], record);
      const stats = await client.getStats();
      $("#study-note").textContent =
        `exported and uploaded; server now has ${stats.participant_count} participant(s)`;
    } catch {
      $("#study-note").textContent = "exported locally; upload failed (server offline?)";
    }
  });
}

async function boot(): Promise<void> {
  wireStudyPanel();
  $("#say").addEventListener("click", () => {
    const input = $("#utterance") as HTMLInputElement;
    void handleUtterance(input.value);
    input.value = "";
  });
  ($("#utterance") as HTMLInputElement).addEventListener("keydown", (event) => {
    if (event.key === "Enter") {
      const input = event.target as HTMLInputElement;
      void handleUtterance(input.value);
      input.value = "";
    }
  });
  $("#style-toggle").addEventListener("click", () => {
    state = toggleStyle(state);
    redraw();
  });
  $("#next-sentence").addEventListener("click", () => {
    state = showNextSentence(state);
    redraw();
  });
  $("#reveal").addEventListener("click", () => {
    if (mapModel !== null) {
      state = revealRoute(state, mapModel);
      redraw();
    }
  });

  try {
    mapModel = await client.getMap();
    $("#map-title").textContent = `map: ${mapModel.name}`;
  } catch {
    state = applyNetworkError({ ...state, turn: 0 }, 0, "cannot reach the server");
  }
  redraw();
}

void boot();
