"""Execute generated instructions on the map to verify they reach their target.

parse_instructions inverts the template grammar sentence by sentence;
simulate walks the graph from the start, matching each action against the
outgoing edges the way a reader of the instructions would.  verify_roundtrip
chains generate -> parse -> simulate and reports whether the walk ends at the
requested destination.
"""

import difflib
import re
from dataclasses import dataclass, field

from .mapcore import IndoorMap
from .nlg import (
    GenerationError,
    InstructionScript,
    Template,
    TemplateSet,
    generate,
)
from .router import Segment, segment_route, shortest_path

_DIR_PATTERN = r"(?P<dir>left|right)"
_LANDMARK_PATTERN = r"(?P<landmark>[A-Za-z][A-Za-z0-9 -]*?)"
_HOPS_PATTERN = r"(?P<hops>\d+)"


class InstructionParseError(Exception):
    """A sentence does not match exactly one template of the style."""

    def __init__(self, message: str, sentence_index: int, sentence: str):
        super().__init__(f"sentence {sentence_index + 1} ({sentence!r}): {message}")
        self.sentence_index = sentence_index
        self.sentence = sentence


@dataclass(frozen=True)
class NavAction:
    """One executable step recovered from a sentence.

    turn/go carry a direction (go is the skeletal phrasing of the same move);
    follow advances along straight corridor edges, either a fixed number of
    hops or until its continuation applies; arrive takes an enter edge.
    """

    verb: str
    direction: str | None = None
    landmark: str | None = None
    hops: int | None = None


@dataclass(frozen=True)
class SimOutcome:
    kind: str  # arrived | ambiguous | no_match
    node: str
    action: NavAction | None = None


@dataclass(frozen=True)
class SimTrace:
    visited: tuple[str, ...]
    matched: tuple[tuple[str, str], ...]
    outcome: SimOutcome


@dataclass(frozen=True)
class RoundTripResult:
    ok: bool
    script: InstructionScript | None
    trace: SimTrace | None
    diagnostics: str | None = None


def _template_regex(template: Template) -> re.Pattern:
    parts = []
    pos = 0
    for m in re.finditer(r"\{(dir|landmark|hops)\}", template.text):
        parts.append(re.escape(template.text[pos:m.start()]))
        parts.append({
            "dir": _DIR_PATTERN,
            "landmark": _LANDMARK_PATTERN,
            "hops": _HOPS_PATTERN,
        }[m.group(1)])
        pos = m.end()
    parts.append(re.escape(template.text[pos:]))
    return re.compile("".join(parts))


@dataclass
class _CompiledStyle:
    templates: list[Template]
    regexes: list[re.Pattern] = field(default_factory=list)

    def __post_init__(self):
        self.regexes = [_template_regex(t) for t in self.templates]


def _compile_style(templates: TemplateSet, style: str) -> _CompiledStyle:
    flat = [t for (st, _), ts in sorted(templates.entries.items()) for t in ts if st == style]
    return _CompiledStyle(templates=flat)


def _actions_for(kind: str, style: str, direction, landmark, hops) -> list[NavAction]:
    turn_verb = "turn" if style == "landmark" else "go"
    if kind == "depart":
        return []
    if kind == "decision":
        return [NavAction(verb=turn_verb, direction=direction, landmark=landmark)]
    if kind == "follow_decision":
        return [
            NavAction(verb="follow", hops=hops),
            NavAction(verb=turn_verb, direction=direction, landmark=landmark),
        ]
    if kind == "follow_arrive":
        return [NavAction(verb="follow", hops=hops)]
    return [NavAction(verb="arrive", landmark=landmark)]


def split_sentences(text: str) -> list[str]:
    return [s for s in re.split(r"(?<=\.)\s+", text.strip()) if s]


def parse_instructions(text: str, templates: TemplateSet, style: str) -> list[NavAction]:
    """Invert the template grammar: each sentence must match exactly one template."""
    compiled = _compile_style(templates, style)
    actions: list[NavAction] = []
    for index, sentence in enumerate(split_sentences(text)):
        bindings: list[tuple[str, str | None, str | None, int | None]] = []
        for template, regex in zip(compiled.templates, compiled.regexes):
            m = regex.fullmatch(sentence)
            if m is None:
                continue
            groups = m.groupdict()
            landmark = None
            if groups.get("landmark") is not None:
                landmark = templates.landmark_token(groups["landmark"])
            binding = (
                template.kind,
                groups.get("dir"),
                landmark,
                int(groups["hops"]) if groups.get("hops") is not None else None,
            )
            if binding not in bindings:
                bindings.append(binding)
        if not bindings:
            closest = difflib.get_close_matches(
                sentence, [t.text for t in compiled.templates], n=1, cutoff=0.0
            )
            hint = f"; nearest template: {closest[0]!r}" if closest else ""
            raise InstructionParseError(f"matches no {style} template{hint}", index, sentence)
        if len(bindings) > 1:
            raise InstructionParseError(
                f"ambiguous: matches {len(bindings)} distinct template bindings",
                index, sentence,
            )
        kind, direction, landmark, hops = bindings[0]
        actions.extend(_actions_for(kind, style, direction, landmark, hops))
    return actions


def flatten_to_actions(segments: list[Segment], style: str) -> list[NavAction]:
    """The NavAction reading of a segment list; parse_instructions(generate(...))
    equals this whenever the selected templates carry no {hops} slot."""
    actions: list[NavAction] = []
    for segment in segments:
        landmark = segment.landmark if style == "landmark" else None
        actions.extend(
            _actions_for(segment.kind, style, segment.direction, landmark, None)
        )
    return actions


def _matching_edges(indoor_map: IndoorMap, node: str, action: NavAction, style: str):
    if action.verb in ("turn", "go"):
        candidates = [e for e in indoor_map.out_edges(node) if e.action == action.direction]
    elif action.verb == "arrive":
        candidates = [e for e in indoor_map.out_edges(node) if e.action == "enter"]
    else:
        return []
    if style == "landmark" and action.landmark is not None:
        candidates = [e for e in candidates if e.landmark == action.landmark]
    return candidates


def simulate(indoor_map: IndoorMap, actions: list[NavAction], style: str) -> SimTrace:
    """Walk the map from the start under the given actions.

    Directions must match exactly one outgoing edge (landmark style matches
    (direction, landmark), skeletal matches direction alone).  A follow with a
    hop count takes exactly that many straight edges; without one it advances
    along straight edges until its following action applies, the way a reader
    walks a corridor watching for the described turn.  When the actions are
    exhausted at a doorway whose only edge is enter, that room is entered:
    spoken directions commonly stop at the final turn.
    """
    node = indoor_map.start
    visited = [node]
    matched: list[tuple[str, str]] = []

    def move(edge) -> None:
        nonlocal node
        node = edge.dst
        visited.append(node)
        matched.append((edge.src, edge.dst))

    def finish(kind: str, action: NavAction | None) -> SimTrace:
        return SimTrace(
            visited=tuple(visited), matched=tuple(matched),
            outcome=SimOutcome(kind=kind, node=node, action=action),
        )

    index = 0
    while index < len(actions):
        action = actions[index]
        if action.verb in ("turn", "go", "arrive"):
            candidates = _matching_edges(indoor_map, node, action, style)
            if not candidates:
                return finish("no_match", action)
            if len(candidates) > 1:
                return finish("ambiguous", action)
            move(candidates[0])
        elif action.verb == "follow":
            nxt = actions[index + 1] if index + 1 < len(actions) else None
            hops_left = action.hops
            while True:
                if hops_left is not None:
                    if hops_left == 0:
                        break
                elif nxt is not None and _matching_edges(indoor_map, node, nxt, style):
                    break
                straights = [e for e in indoor_map.out_edges(node) if e.action == "straight"]
                if len(straights) > 1:
                    return finish("ambiguous", action)
                if not straights:
                    if hops_left is not None:
                        return finish("no_match", action)
                    break
                move(straights[0])
                if hops_left is not None:
                    hops_left -= 1
        else:
            return finish("no_match", action)
        index += 1

    if indoor_map.nodes[node].kind == "room":
        return finish("arrived", None)
    out = indoor_map.out_edges(node)
    if len(out) == 1 and out[0].action == "enter":
        move(out[0])
        return finish("arrived", None)
    return finish("no_match", None)


def verify_roundtrip(
    indoor_map: IndoorMap,
    destination: str,
    style: str,
    seed: int,
    templates: TemplateSet,
    include_arrival: bool = False,
) -> RoundTripResult:
    """generate -> parse -> simulate; ok iff the walk arrives at the destination."""
    route = shortest_path(indoor_map, destination)
    segments = segment_route(route)
    try:
        script = generate(segments, style, templates, seed, include_arrival=include_arrival)
    except GenerationError as exc:
        return RoundTripResult(ok=False, script=None, trace=None, diagnostics=str(exc))
    try:
        actions = parse_instructions(script.text, templates, style)
    except InstructionParseError as exc:
        return RoundTripResult(ok=False, script=script, trace=None, diagnostics=str(exc))
    trace = simulate(indoor_map, actions, style)
    dest_id = route.destination if route.steps else indoor_map.start
    ok = trace.outcome.kind == "arrived" and trace.outcome.node == dest_id
    diagnostics = None
    if not ok:
        diagnostics = (
            f"walk ended at {trace.outcome.node!r} with {trace.outcome.kind}, "
            f"expected arrival at {dest_id!r}"
        )
    return RoundTripResult(ok=ok, script=script, trace=trace, diagnostics=diagnostics)


def check_template_injectivity(
    templates: TemplateSet,
    style: str,
    vocabulary: set[str],
    hops_range: tuple[int, ...] = (1, 2, 3),
) -> list[str]:
    """Enumerate every template over the finite slot domains and report any two
    that render identically with different meanings; empty result means the
    parser inverse is well defined for maps using this vocabulary."""
    compiled = _compile_style(templates, style)
    seen: dict[str, tuple] = {}
    problems: list[str] = []
    landmarks: list[str | None] = sorted(vocabulary) + [None]
    for template in compiled.templates:
        slots = set(template.slots())
        dirs = ["left", "right"] if "dir" in slots else [None]
        lms = landmarks if "landmark" in slots else [None]
        hops = list(hops_range) if "hops" in slots else [0]
        for d in dirs:
            for lm in lms:
                if "landmark" in slots and lm is None:
                    continue
                surface = templates.landmark_surface(lm) if lm is not None else None
                for h in hops:
                    rendered = template.fill(d, surface, h)
                    meaning = (template.kind, d, lm, h if "hops" in slots else None)
                    if rendered in seen and seen[rendered] != meaning:
                        problems.append(
                            f"{rendered!r} is produced by both {seen[rendered]} and {meaning}"
                        )
                    else:
                        seen[rendered] = meaning
    return problems
