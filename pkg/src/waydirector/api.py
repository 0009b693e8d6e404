"""HTTP service for the web client and scripted callers.

Serves the map with its display hints, routes with verified instructions,
intent recognition, session-event persistence, and the running study
analysis.  The service refuses to start on a map that fails validation or
is not safe for both instruction styles, so every route it returns carries
a passing round-trip trace.
"""

import json
import random
import threading
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .dialogue import load_sessions, recognize_intent, validate_session_dict
from .mapcore import IndoorMap, parse_map, validate_map
from .navsim import check_template_injectivity, verify_roundtrip
from .nlg import STYLES, TemplateSet, load_templates
from .router import UnknownRoomError, UnreachableRoomError, shortest_path
from .stats import DegenerateDataError, analyze_sessions


@dataclass(frozen=True)
class ApiConfig:
    map_path: Path
    template_path: Path
    session_dir: Path | None = None
    host: str = "127.0.0.1"
    port: int = 8080
    cors_origins: tuple[str, ...] = ("*",)
    ui_dir: Path | None = None

    def __post_init__(self):
        if not 0 < self.port < 65536:
            raise ValueError(f"port out of range: {self.port}")
        for path in (self.map_path, self.template_path):
            if not Path(path).exists():
                raise FileNotFoundError(path)
        if self.ui_dir is not None and not Path(self.ui_dir).is_dir():
            raise FileNotFoundError(self.ui_dir)


class RouteRequest(BaseModel):
    destination: str
    style: str = "landmark"
    seed: int | None = None
    include_arrival: bool = False


class IntentRequest(BaseModel):
    utterance: str


class SessionEventsRequest(BaseModel):
    participant_id: str
    events: list[dict] = []
    record: dict | None = None


def _error(status: int, code: str, message: str) -> HTTPException:
    return HTTPException(status_code=status, detail={"code": code, "message": message})


def create_app(
    indoor_map: IndoorMap,
    templates: TemplateSet,
    session_dir: Path | None = None,
    cors_origins: tuple[str, ...] = ("*",),
    ui_dir: Path | None = None,
) -> FastAPI:
    report = validate_map(indoor_map)
    if not report.ok:
        raise ValueError(f"map fails validation: {report.violations}")
    if not (report.skeletal_safe and report.landmark_safe):
        raise ValueError("map is not safe for both instruction styles")
    vocabulary = indoor_map.landmark_vocabulary()
    for style in STYLES:
        problems = check_template_injectivity(templates, style, vocabulary)
        if problems:
            raise ValueError(f"{style} templates are not invertible: {problems[0]}")

    app = FastAPI(title="waydirector", version="0.1.0")
    if cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )
    session_lock = threading.Lock()

    @app.exception_handler(HTTPException)
    async def http_error(_req: Request, exc: HTTPException):
        detail = exc.detail
        if not isinstance(detail, dict):
            detail = {"code": "error", "message": str(detail)}
        return JSONResponse(status_code=exc.status_code, content=detail)

    @app.exception_handler(Exception)
    async def internal_error(_req: Request, _exc: Exception):
        return JSONResponse(
            status_code=500,
            content={"code": "internal_error", "message": "internal server error"},
        )

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.get("/api/map")
    def get_map():
        return {
            "name": indoor_map.name,
            "start": indoor_map.start,
            "nodes": [
                {
                    "id": n.id, "kind": n.kind, "label": n.label,
                    "room_number": n.room_number, "x": n.x, "y": n.y,
                }
                for n in sorted(indoor_map.nodes.values(), key=lambda n: n.id)
            ],
            "edges": [
                {
                    "from": e.src, "to": e.dst, "action": e.action,
                    "landmark": e.landmark, "length_m": e.length_m,
                }
                for e in indoor_map.edges
            ],
        }

    @app.post("/api/route")
    def post_route(request: RouteRequest):
        if request.style not in STYLES:
            raise _error(400, "bad_style", f"style must be one of {STYLES}")
        try:
            route = shortest_path(indoor_map, request.destination)
        except UnknownRoomError as exc:
            raise _error(400, "unknown_room", str(exc)) from None
        except UnreachableRoomError as exc:
            raise _error(422, "unreachable", str(exc)) from None
        seed = request.seed if request.seed is not None else random.getrandbits(32)
        result = verify_roundtrip(
            indoor_map, request.destination, request.style, seed, templates,
            include_arrival=request.include_arrival,
        )
        if not result.ok:
            # cannot happen on a validated, style-safe map; refuse rather than serve
            raise _error(500, "unverifiable", "instructions failed round-trip verification")
        return {
            "sentences": list(result.script.sentences),
            "style": request.style,
            "seed": seed,
            "route": route.node_sequence(indoor_map.start),
            "segments": [
                {
                    "kind": s.kind, "direction": s.direction,
                    "landmark": s.landmark, "follow_hops": s.follow_hops,
                }
                for s in result.script.source_segments
            ],
            "trace": {
                "ok": result.ok,
                "visited": list(result.trace.visited),
                "outcome": result.trace.outcome.kind,
                "outcome_node": result.trace.outcome.node,
            },
        }

    @app.post("/api/intent")
    def post_intent(request: IntentRequest):
        intent = recognize_intent(request.utterance, indoor_map)
        return {
            "kind": intent.kind,
            "destination": intent.destination,
            "node_id": intent.node_id,
            "unresolved": intent.unresolved,
            "style": intent.style,
            "raw": intent.raw,
        }

    @app.post("/api/session/events")
    def post_session_events(request: SessionEventsRequest):
        if session_dir is None:
            raise _error(400, "no_session_dir", "service started without a session directory")
        if not request.participant_id.strip():
            raise _error(400, "bad_participant", "participant_id must be non-empty")
        with session_lock:
            session_dir.mkdir(parents=True, exist_ok=True)
            stored_events = 0
            if request.events:
                events_path = session_dir / f"{request.participant_id}.events.jsonl"
                with events_path.open("a", encoding="utf-8") as handle:
                    for event in request.events:
                        handle.write(json.dumps(event, sort_keys=True) + "\n")
                        stored_events += 1
            if request.record is not None:
                try:
                    validate_session_dict(request.record)
                except Exception as exc:
                    raise _error(422, "bad_record", f"record fails schema: {exc}") from None
                if request.record["participant_id"] != request.participant_id:
                    raise _error(422, "bad_record", "participant_id mismatch")
                record_path = session_dir / f"{request.participant_id}.json"
                record_path.write_text(
                    json.dumps(request.record, indent=2, sort_keys=True) + "\n",
                    encoding="utf-8",
                )
        return {"participant_id": request.participant_id,
                "stored_events": stored_events,
                "stored_record": request.record is not None}

    @app.get("/api/stats")
    def get_stats():
        if session_dir is None or not session_dir.exists():
            return {"participant_count": 0, "complete_count": 0,
                    "report": None, "detail": "no sessions recorded"}
        records = load_sessions(session_dir)
        complete = [r for r in records if r.complete]
        detail = None
        report_dict = None
        if len(complete) >= 2:
            try:
                report_dict = analyze_sessions(complete).to_dict()
            except DegenerateDataError as exc:
                detail = str(exc)
        else:
            detail = "need at least 2 complete sessions"
        return {
            "participant_count": len(records),
            "complete_count": len(complete),
            "report": report_dict,
            "detail": detail,
        }

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def create_app_from_config(config: ApiConfig) -> FastAPI:
    indoor_map = parse_map(Path(config.map_path).read_text(encoding="utf-8"))
    templates = load_templates(Path(config.template_path).read_text(encoding="utf-8"))
    return create_app(
        indoor_map, templates,
        session_dir=Path(config.session_dir) if config.session_dir else None,
        cors_origins=config.cors_origins,
        ui_dir=config.ui_dir,
    )


def serve(config: ApiConfig) -> None:
    import uvicorn

    uvicorn.run(create_app_from_config(config), host=config.host, port=config.port)
