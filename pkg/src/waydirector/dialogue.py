"""Rule-based intent recognition and the interactive study session over text.

The session loop mirrors the study protocol: pre-interaction questionnaires,
then two counterbalanced instruction-style conditions of three navigation
tasks each, each followed by the Godspeed animacy and intelligence items.
Everything the participant does is timestamped into an append-only event log
and persisted as one JSON document per participant.
"""

import json
import random
import re
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, TextIO

import jsonschema

from .defaults import load_schema
from .mapcore import IndoorMap
from .nlg import InstructionScript, TemplateSet, generate
from .router import (
    NUMBER_WORDS,
    RoutingError,
    resolve_destination,
    segment_route,
    shortest_path,
)
from .stats import (
    ANIMACY_SCALE,
    INTELLIGENCE_SCALE,
    NARS_SCALE,
    PTT_SCALE,
    ScaleDefinition,
)

INTENT_KINDS = ("navigate", "repeat", "switch_style", "help", "quit", "unknown")


@dataclass(frozen=True)
class Intent:
    kind: str
    raw: str
    destination: str | None = None  # canonical name when resolved ("room 5", "reception")
    node_id: str | None = None
    unresolved: str | None = None   # named destination that does not exist on the map
    style: str | None = None        # switch_style target when one was named


_QUIT_WORDS = {"quit", "exit", "bye", "goodbye", "stop"}
_REPEAT_WORDS = {"repeat", "again", "pardon"}

_NAV_PATTERNS = [
    re.compile(r"where is (?:the )?(?P<dest>.+)"),
    re.compile(r"how do i (?:get|go) to (?:the )?(?P<dest>.+)"),
    re.compile(r"(?:take|bring|guide|walk|lead) me to (?:the )?(?P<dest>.+)"),
    re.compile(r"(?:navigate|direction|directions|go|get) to (?:the )?(?P<dest>.+)"),
    re.compile(r"(?:i want to go to|i need to find|find|show me) (?:the )?(?P<dest>.+)"),
]
_ROOM_PHRASE = re.compile(r"room (?:number )?(\d+|[a-z]+)")


def _normalize(utterance: str) -> str:
    text = utterance.lower()
    text = re.sub(r"[^a-z0-9\s-]", " ", text)
    return re.sub(r"\s+", " ", text).strip()


def _canonical_destination(indoor_map: IndoorMap, node_id: str) -> str:
    node = indoor_map.nodes[node_id]
    if node.room_number is not None:
        return f"room {node.room_number}"
    return (node.label or node.id).lower()


def _resolve_phrase(indoor_map: IndoorMap, phrase: str) -> tuple[str | None, str | None]:
    """Return (canonical destination, node id), or (None, None) if not on the map."""
    m = _ROOM_PHRASE.fullmatch(phrase)
    if m is not None:
        token = m.group(1)
        number = int(token) if token.isdigit() else NUMBER_WORDS.get(token)
        if number is not None:
            room = indoor_map.room_by_number(number)
            if room is None:
                return None, None
            return f"room {number}", room.id
    try:
        node_id = resolve_destination(indoor_map, phrase)
    except RoutingError:
        return None, None
    return _canonical_destination(indoor_map, node_id), node_id


def recognize_intent(utterance: str, indoor_map: IndoorMap) -> Intent:
    """Map any utterance to exactly one Intent; unknown is a value, not an error."""
    text = _normalize(utterance)
    words = set(text.split())

    if words & _QUIT_WORDS or text in ("i am done", "im done", "done"):
        return Intent(kind="quit", raw=utterance)
    if "help" in words or "what can you do" in text:
        return Intent(kind="help", raw=utterance)
    if words & _REPEAT_WORDS or "one more time" in text or "come again" in text:
        return Intent(kind="repeat", raw=utterance)
    if "switch" in words or "other style" in text or re.search(
        r"\b(landmark|skeletal)\b.*\b(style|mode|instructions)\b", text
    ) or re.search(r"\b(style|mode)\b.*\b(landmark|skeletal)\b", text):
        style = None
        if "landmark" in words:
            style = "landmark"
        elif "skeletal" in words:
            style = "skeletal"
        return Intent(kind="switch_style", raw=utterance, style=style)

    for pattern in _NAV_PATTERNS:
        m = pattern.fullmatch(text)
        if m is not None:
            phrase = m.group("dest").strip()
            destination, node_id = _resolve_phrase(indoor_map, phrase)
            if node_id is not None:
                return Intent(kind="navigate", raw=utterance,
                              destination=destination, node_id=node_id)
            return Intent(kind="navigate", raw=utterance, unresolved=phrase)

    # a bare destination ("room 5", "reception") counts as a navigation request
    destination, node_id = _resolve_phrase(indoor_map, text)
    if node_id is not None:
        return Intent(kind="navigate", raw=utterance,
                      destination=destination, node_id=node_id)
    if _ROOM_PHRASE.fullmatch(text):
        return Intent(kind="navigate", raw=utterance, unresolved=text)
    return Intent(kind="unknown", raw=utterance)


# --- session protocol --------------------------------------------------------


@dataclass(frozen=True)
class ProtocolConfig:
    task_rooms: tuple[int, int, int] = (5, 3, 7)
    nars: ScaleDefinition = NARS_SCALE
    ptt: ScaleDefinition = PTT_SCALE
    animacy: ScaleDefinition = ANIMACY_SCALE
    intelligence: ScaleDefinition = INTELLIGENCE_SCALE
    nlg_seed: int = 0
    include_arrival: bool = False


@dataclass
class SessionRecord:
    participant_id: str
    condition_order: tuple[str, str]
    order_seed: int | None = None
    complete: bool = False
    nars: list[int] = field(default_factory=list)
    ptt: list[int] = field(default_factory=list)
    conditions: dict[str, dict] = field(default_factory=dict)
    clarification_count: int = 0
    events: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        out: dict = {
            "participant_id": self.participant_id,
            "condition_order": list(self.condition_order),
            "order_seed": self.order_seed,
            "complete": self.complete,
            "clarification_count": self.clarification_count,
            "events": self.events,
        }
        if self.nars:
            out["nars"] = self.nars
        if self.ptt:
            out["ptt"] = self.ptt
        if self.conditions:
            out["conditions"] = self.conditions
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "SessionRecord":
        validate_session_dict(data)
        return cls(
            participant_id=data["participant_id"],
            condition_order=tuple(data["condition_order"]),
            order_seed=data.get("order_seed"),
            complete=data["complete"],
            nars=list(data.get("nars", [])),
            ptt=list(data.get("ptt", [])),
            conditions=data.get("conditions", {}),
            clarification_count=data.get("clarification_count", 0),
            events=list(data.get("events", [])),
        )


def validate_session_dict(data: dict) -> None:
    jsonschema.validate(data, load_schema("session"))


def save_session(record: SessionRecord, out_dir: str | Path) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    data = record.to_dict()
    validate_session_dict(data)
    path = out_dir / f"{record.participant_id}.json"
    path.write_text(record.to_json(), encoding="utf-8")
    return path


def load_session(path: str | Path) -> SessionRecord:
    return SessionRecord.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def load_sessions(directory: str | Path) -> list[SessionRecord]:
    records = []
    for path in sorted(Path(directory).glob("*.json")):
        records.append(load_session(path))
    return records


class SessionAborted(Exception):
    """Participant quit or the input stream ended mid-session."""


def run_session(
    indoor_map: IndoorMap,
    templates: TemplateSet,
    participant_id: str,
    order_seed: int = 0,
    config: ProtocolConfig = ProtocolConfig(),
    input_stream: TextIO | None = None,
    output_stream: TextIO | None = None,
    out_dir: str | Path | None = None,
    clock: Callable[[], int] | None = None,
) -> SessionRecord:
    """Run the full two-condition protocol over the given text streams.

    The initial condition comes from a coin flip seeded with order_seed.  An
    aborted session (quit, or input exhausted) still persists a partial record
    flagged incomplete.  Events are appended to <participant>.events.jsonl as
    they happen when out_dir is given; the full record lands in
    <participant>.json at the end.
    """
    stdin = input_stream if input_stream is not None else sys.stdin
    stdout = output_stream if output_stream is not None else sys.stdout
    now = clock if clock is not None else (lambda: int(time.time() * 1000))

    first = ("landmark", "skeletal")[random.Random(order_seed).getrandbits(1)]
    order = (first, "skeletal" if first == "landmark" else "landmark")
    record = SessionRecord(
        participant_id=participant_id, condition_order=order, order_seed=order_seed
    )

    events_file = None
    if out_dir is not None:
        out_path = Path(out_dir)
        out_path.mkdir(parents=True, exist_ok=True)
        events_file = (out_path / f"{participant_id}.events.jsonl").open(
            "w", encoding="utf-8"
        )

    def emit(event_type: str, **data) -> None:
        event = {"t": now(), "type": event_type, **data}
        record.events.append(event)
        if events_file is not None:
            events_file.write(json.dumps(event, sort_keys=True) + "\n")
            events_file.flush()

    def say(text: str) -> None:
        print(text, file=stdout)

    def ask(prompt: str) -> str:
        say(prompt)
        line = stdin.readline()
        if line == "":
            raise SessionAborted("input stream ended")
        return line.strip()

    def ask_likert(prompt: str, likert_max: int) -> int:
        while True:
            text = ask(prompt)
            if text.isdigit() and 1 <= int(text) <= likert_max:
                return int(text)
            say(f"Please answer with a number from 1 to {likert_max}.")

    def ask_scale(scale: ScaleDefinition, title: str) -> list[int]:
        say(f"-- {title} ({scale.item_count} items, 1-{scale.likert_max}) --")
        values = []
        for index in range(1, scale.item_count + 1):
            value = ask_likert(f"{scale.name} {index}/{scale.item_count}:", scale.likert_max)
            emit("scale_response", scale=scale.name, item=index, value=value)
            values.append(value)
        return values

    def ask_yes_no(prompt: str) -> bool:
        while True:
            text = ask(prompt).lower()
            if text in ("y", "yes"):
                return True
            if text in ("n", "no"):
                return False
            say("Please answer y or n.")

    try:
        emit("session_start", participant_id=participant_id,
             condition_order=list(order), order_seed=order_seed)
        say(f"Welcome, participant {participant_id}.")
        record.nars = ask_scale(config.nars, "Attitudes toward robots (NARS)")
        record.ptt = ask_scale(config.ptt, "Propensity to trust technology (PTT)")

        for style in order:
            emit("condition_start", style=style)
            say(f"== Condition: {style} directions ==")
            say("Ask me the way to each room; I will describe the route.")
            successes: list[bool] = []
            for room in config.task_rooms:
                emit("task_start", room=room, style=style)
                say(f"Task: you need to reach room {room}. Ask me for directions.")
                last_script: InstructionScript | None = None
                while True:
                    utterance = ask(">")
                    intent = recognize_intent(utterance, indoor_map)
                    emit("utterance", text=utterance, intent=intent.kind,
                         destination=intent.destination, unresolved=intent.unresolved)
                    if intent.kind == "quit":
                        raise SessionAborted("participant quit")
                    if intent.kind == "help":
                        say('Ask for a room ("where is room 5"), say "repeat" to hear '
                            'the directions again, or "quit" to stop.')
                        continue
                    if intent.kind == "repeat":
                        say(last_script.text if last_script and last_script.sentences
                            else "Nothing to repeat yet.")
                        continue
                    if intent.kind == "switch_style":
                        say("The instruction style is fixed during this part of the study.")
                        continue
                    if intent.kind == "navigate" and intent.node_id is not None:
                        try:
                            route = shortest_path(indoor_map, intent.node_id)
                        except RoutingError as exc:
                            record.clarification_count += 1
                            emit("clarification", reason=str(exc))
                            say(f"I cannot route you there: {exc}")
                            continue
                        script = generate(
                            segment_route(route), style, templates,
                            config.nlg_seed, include_arrival=config.include_arrival,
                        )
                        last_script = script
                        say(script.text if script.sentences
                            else "You are already at the starting point.")
                        emit("instructions", destination=intent.destination, style=style,
                             seed=script.seed, sentences=list(script.sentences))
                        success = ask_yes_no("Did you reach your destination? (y/n)")
                        successes.append(success)
                        emit("task_result", room=room, success=success)
                        break
                    # unresolved navigation or unrecognized input: ask again
                    record.clarification_count += 1
                    emit("clarification", text=utterance)
                    if intent.kind == "navigate":
                        say(f'I do not know "{intent.unresolved}". Which room number do you need?')
                    else:
                        say("Sorry, I did not catch that. Which room do you need?")

            animacy = ask_scale(config.animacy, f"Godspeed animacy ({style})")
            intelligence = ask_scale(config.intelligence, f"Godspeed intelligence ({style})")
            record.conditions[style] = {
                "animacy": animacy,
                "intelligence": intelligence,
                "task_success": successes,
                "task_rooms": list(config.task_rooms),
            }
            emit("condition_end", style=style)

        record.complete = True
        emit("session_end", complete=True)
        say("That is the end of the study. Thank you!")
    except SessionAborted as exc:
        emit("session_end", complete=False, reason=str(exc))
        say("Session ended early; partial data kept.")
    finally:
        if events_file is not None:
            events_file.close()

    if out_dir is not None:
        save_session(record, out_dir)
    return record
