// Thin fetch client; the UI never computes routes itself.

import type {
  IntentResponse,
  MapModel,
  RouteResponse,
  SessionEvent,
  SessionRecordJson,
  StatsResponse,
  Style,
} from "./types.js";

export class ApiError extends Error {
  constructor(public code: string, message: string, public status: number) {
    super(message);
  }
}

async function request<T>(base: string, path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(base + path, init);
  const body = await response.json().catch(() => null);
  if (!response.ok) {
    const code = body && typeof body.code === "string" ? body.code : "error";
    const message = body && typeof body.message === "string" ? body.message : response.statusText;
    throw new ApiError(code, message, response.status);
  }
  return body as T;
}

function post<T>(base: string, path: string, payload: unknown): Promise<T> {
  return request<T>(base, path, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(payload),
  });
}

export class WaydirectorClient {
  constructor(private base: string = "") {}

  getMap(): Promise<MapModel> {
    return request<MapModel>(this.base, "/api/map");
  }

  getRoute(destination: string, style: Style, seed?: number): Promise<RouteResponse> {
    return post<RouteResponse>(this.base, "/api/route", {
      destination,
      style,
      ...(seed !== undefined ? { seed } : {}),
    });
  }

  getIntent(utterance: string): Promise<IntentResponse> {
    return post<IntentResponse>(this.base, "/api/intent", { utterance });
  }

  postSession(
    participantId: string,
    events: SessionEvent[],
    record?: SessionRecordJson,
  ): Promise<{ participant_id: string; stored_record: boolean }> {
    return post(this.base, "/api/session/events", {
      participant_id: participantId,
      events,
      ...(record ? { record } : {}),
    });
  }

  getStats(): Promise<StatsResponse> {
    return request<StatsResponse>(this.base, "/api/stats");
  }
}
