// Pure view-state transitions; every function returns a fresh state object so
// the chat flow is unit-testable without a DOM and stale responses are easy
// to discard (each user turn bumps a counter, late replies for older turns
// are ignored).

import type { IntentResponse, MapModel, RouteResponse, Style } from "./types.js";

export interface ChatMessage {
  role: "user" | "assistant" | "system" | "error";
  text: string;
}

export interface ViewState {
  style: Style;
  transcript: ChatMessage[];
  lastRoute: RouteResponse | null;
  lastDestination: string | null;
  shownSentences: number;
  highlight: string[];
  turn: number;
  pending: boolean;
}

export function initialState(style: Style = "landmark"): ViewState {
  return {
    style,
    transcript: [],
    lastRoute: null,
    lastDestination: null,
    shownSentences: 0,
    highlight: [],
    turn: 0,
    pending: false,
  };
}

function say(state: ViewState, role: ChatMessage["role"], text: string): ViewState {
  return { ...state, transcript: [...state.transcript, { role, text }] };
}

export function beginTurn(state: ViewState, utterance: string): ViewState {
  return {
    ...say(state, "user", utterance),
    turn: state.turn + 1,
    pending: true,
  };
}

/** Sentences arrive; replies to superseded turns are dropped whole. */
export function applyRoute(
  state: ViewState,
  turn: number,
  destination: string,
  response: RouteResponse,
): ViewState {
  if (turn !== state.turn) {
    return state;
  }
  const first = response.sentences[0];
  const next = say(
    { ...state, pending: false },
    "assistant",
    first !== undefined ? first : "You are already at the starting point.",
  );
  return {
    ...next,
    lastRoute: response,
    lastDestination: destination,
    shownSentences: Math.min(1, response.sentences.length),
    highlight: [],
  };
}

/** The sentence-by-sentence "next" control. */
export function showNextSentence(state: ViewState): ViewState {
  const route = state.lastRoute;
  if (route === null || state.shownSentences >= route.sentences.length) {
    return state;
  }
  const sentence = route.sentences[state.shownSentences];
  if (sentence === undefined) {
    return state;
  }
  return {
    ...say(state, "assistant", sentence),
    shownSentences: state.shownSentences + 1,
  };
}

export function remainingSentences(state: ViewState): number {
  return state.lastRoute === null
    ? 0
    : state.lastRoute.sentences.length - state.shownSentences;
}

export function applyAssistantNote(state: ViewState, turn: number, text: string): ViewState {
  if (turn !== state.turn) {
    return state;
  }
  return say({ ...state, pending: false }, "assistant", text);
}

/** Network or server failure: a non-blocking banner line, transcript intact. */
export function applyNetworkError(state: ViewState, turn: number, message: string): ViewState {
  if (turn !== state.turn) {
    return state;
  }
  return say({ ...state, pending: false }, "error", message);
}

export function toggleStyle(state: ViewState): ViewState {
  const style: Style = state.style === "landmark" ? "skeletal" : "landmark";
  return { ...state, style };
}

export function isConnectedWalk(map: MapModel, nodes: string[]): boolean {
  if (nodes.length === 0) {
    return false;
  }
  if (nodes[0] !== map.start) {
    return false;
  }
  const links = new Set(map.edges.map((e) => `${e.from}->${e.to}`));
  for (let i = 0; i + 1 < nodes.length; i += 1) {
    if (!links.has(`${nodes[i]}->${nodes[i + 1]}`)) {
      return false;
    }
  }
  return true;
}

/** The "reveal" step; refuses to highlight anything that is not a connected
 * walk from the start, which would indicate a mangled server reply. */
export function revealRoute(state: ViewState, map: MapModel): ViewState {
  if (state.lastRoute === null) {
    return state;
  }
  const walk = state.lastRoute.route;
  if (!isConnectedWalk(map, walk)) {
    return say(state, "error", "route reply is not a connected walk; not drawing it");
  }
  return { ...state, highlight: [...walk] };
}

export type TurnPlan =
  | { kind: "route"; destination: string; seed?: number }
  | { kind: "note"; text: string }
  | { kind: "toggle_then_note"; text: string };

/** Decide what a recognized intent means for the next request. */
export function planTurn(state: ViewState, intent: IntentResponse): TurnPlan {
  switch (intent.kind) {
    case "navigate":
      if (intent.destination !== null) {
        return { kind: "route", destination: intent.destination };
      }
      return {
        kind: "note",
        text: `I do not know "${intent.unresolved ?? "that"}". Which room number do you need?`,
      };
    case "repeat":
      if (state.lastDestination === null || state.lastRoute === null) {
        return { kind: "note", text: "Nothing to repeat yet." };
      }
      if (state.lastRoute.style === state.style) {
        return { kind: "note", text: state.lastRoute.sentences.join(" ") || "(empty route)" };
      }
      // style was toggled since: re-render the same destination, same seed
      return {
        kind: "route",
        destination: state.lastDestination,
        seed: state.lastRoute.seed,
      };
    case "switch_style":
      return { kind: "toggle_then_note", text: "Switched style." };
    case "help":
      return {
        kind: "note",
        text: 'Ask for a room ("where is room 5"), say "repeat", or toggle the style.',
      };
    case "quit":
      return { kind: "note", text: "Session controls are in the side panel." };
    default:
      return { kind: "note", text: "Sorry, I did not catch that. Which room do you need?" };
  }
}
