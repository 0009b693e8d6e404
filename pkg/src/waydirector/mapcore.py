"""Indoor map knowledge base: a line-oriented DSL parsed into an immutable graph.

Nodes are rooms, corridors, and junctions.  Directed edges carry the action a
navigator performs when traversing them (left, right, straight, enter) plus an
optional landmark marking the decision point in that direction of travel.
"""

from dataclasses import dataclass, field
import re

NODE_KINDS = ("room", "corridor", "junction")
ACTIONS = ("left", "right", "straight", "enter")
TURN_ACTIONS = ("left", "right")

_LANDMARK_TOKEN = re.compile(r"^[a-z][a-z0-9-]*$")


class MapError(Exception):
    """Base class for map parsing and semantic errors."""


class MapSyntaxError(MapError):
    """Raised on malformed DSL input, with 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class MapNode:
    id: str
    kind: str
    label: str | None = None
    room_number: int | None = None
    x: float | None = None
    y: float | None = None


@dataclass(frozen=True)
class MapEdge:
    src: str
    dst: str
    action: str
    landmark: str | None = None
    length_m: float | None = None


@dataclass(frozen=True)
class Violation:
    code: str
    ref: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]
    skeletal_safe: bool
    landmark_safe: bool

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class IndoorMap:
    """Immutable map graph; safe to share across concurrent readers."""

    name: str
    nodes: dict[str, MapNode]
    edges: tuple[MapEdge, ...]
    start: str
    _adjacency: dict[str, tuple[MapEdge, ...]] = field(
        repr=False, compare=False, default_factory=dict
    )

    def __post_init__(self):
        adj: dict[str, list[MapEdge]] = {nid: [] for nid in self.nodes}
        for edge in self.edges:
            adj[edge.src].append(edge)
        object.__setattr__(
            self, "_adjacency", {nid: tuple(es) for nid, es in adj.items()}
        )

    def out_edges(self, node_id: str) -> tuple[MapEdge, ...]:
        return self._adjacency[node_id]

    def node(self, node_id: str) -> MapNode:
        return self.nodes[node_id]

    def rooms(self) -> list[MapNode]:
        return [n for n in self.nodes.values() if n.kind == "room"]

    def room_by_number(self, number: int) -> MapNode | None:
        for node in self.nodes.values():
            if node.kind == "room" and node.room_number == number:
                return node
        return None

    def landmark_vocabulary(self) -> set[str]:
        return {e.landmark for e in self.edges if e.landmark is not None}

    def uses_lengths(self) -> bool:
        """True when every edge carries a metric length (else routing is hop count)."""
        return all(e.length_m is not None for e in self.edges)


# --- DSL parsing ---------------------------------------------------------

_TOKEN = re.compile(
    r"""(?P<key>[A-Za-z_][\w-]*)=(?P<val>"(?:[^"\\]|\\.)*"|[^\s"#]+)"""
    r"""|(?P<quoted>"(?:[^"\\]|\\.)*")"""
    r"""|(?P<word>[^\s"#]+)"""
)


def _tokenize(line: str, lineno: int) -> list[tuple[str, str | None, int]]:
    """Split a DSL line into (text, attr_key, column) tokens, honoring quotes and #."""
    tokens = []
    pos = 0
    while pos < len(line):
        ch = line[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch == "#":
            break
        m = _TOKEN.match(line, pos)
        if m is None:
            raise MapSyntaxError(f"unexpected character {line[pos]!r}", lineno, pos + 1)
        col = pos + 1
        if m.group("key") is not None:
            tokens.append((_unquote(m.group("val")), m.group("key"), col))
        elif m.group("quoted") is not None:
            tokens.append((_unquote(m.group("quoted")), None, col))
        else:
            tokens.append((m.group("word"), None, col))
        pos = m.end()
    return tokens


def _unquote(text: str) -> str:
    if text.startswith('"') and text.endswith('"') and len(text) >= 2:
        return text[1:-1].replace('\\"', '"').replace("\\\\", "\\")
    return text


def _attr_dict(
    tokens: list[tuple[str, str | None, int]],
    allowed: dict[str, str],
    lineno: int,
    directive: str,
) -> dict[str, str]:
    attrs: dict[str, str] = {}
    for text, key, col in tokens:
        if key is None:
            raise MapSyntaxError(
                f"unexpected bare token {text!r} in {directive} directive", lineno, col
            )
        if key not in allowed:
            raise MapSyntaxError(
                f"unknown {directive} attribute {key!r}", lineno, col
            )
        if key in attrs:
            raise MapSyntaxError(f"duplicate attribute {key!r}", lineno, col)
        attrs[key] = text
    return attrs


def _parse_float(value: str, what: str, lineno: int, positive: bool = True) -> float:
    try:
        out = float(value)
    except ValueError:
        raise MapSyntaxError(f"{what} must be a number, got {value!r}", lineno) from None
    if positive and out <= 0:
        raise MapSyntaxError(f"{what} must be positive, got {value!r}", lineno)
    return out


def parse_map(text: str) -> IndoorMap:
    """Parse a map-DSL document into an IndoorMap.

    Structural problems (bad syntax, duplicate ids, dangling edge endpoints,
    missing start, duplicate room numbers) raise; semantic safety properties
    are the job of validate_map.
    """
    name: str | None = None
    start: str | None = None
    start_line = 0
    nodes: dict[str, MapNode] = {}
    edges: list[MapEdge] = []
    edge_lines: list[int] = []
    room_numbers: dict[int, str] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(raw, lineno)
        if not tokens:
            continue
        head, head_key, head_col = tokens[0]
        if head_key is not None:
            raise MapSyntaxError("line must begin with a directive", lineno, head_col)
        rest = tokens[1:]

        if head == "map":
            if name is not None:
                raise MapSyntaxError("duplicate map directive", lineno)
            if len(rest) != 1 or rest[0][1] is not None:
                raise MapSyntaxError("expected: map <name>", lineno)
            name = rest[0][0]
        elif head == "start":
            if start is not None:
                raise MapSyntaxError("duplicate start directive", lineno)
            if len(rest) != 1 or rest[0][1] is not None:
                raise MapSyntaxError("expected: start <node-id>", lineno)
            start, start_line = rest[0][0], lineno
        elif head == "node":
            if not rest or rest[0][1] is not None:
                raise MapSyntaxError("expected: node <id> kind=...", lineno)
            node_id = rest[0][0]
            if node_id in nodes:
                raise MapSyntaxError(f"duplicate node id {node_id!r}", lineno)
            attrs = _attr_dict(
                rest[1:], {"kind": "", "label": "", "room": "", "x": "", "y": ""},
                lineno, "node",
            )
            kind = attrs.get("kind")
            if kind not in NODE_KINDS:
                raise MapSyntaxError(
                    f"node kind must be one of {NODE_KINDS}, got {kind!r}", lineno
                )
            room_number = None
            if "room" in attrs:
                try:
                    room_number = int(attrs["room"])
                except ValueError:
                    raise MapSyntaxError(
                        f"room number must be an integer, got {attrs['room']!r}", lineno
                    ) from None
                if room_number <= 0:
                    raise MapSyntaxError("room number must be positive", lineno)
                if room_number in room_numbers:
                    raise MapSyntaxError(
                        f"duplicate room number {room_number} "
                        f"(already on {room_numbers[room_number]!r})",
                        lineno,
                    )
                room_numbers[room_number] = node_id
            nodes[node_id] = MapNode(
                id=node_id,
                kind=kind,
                label=attrs.get("label"),
                room_number=room_number,
                x=_parse_float(attrs["x"], "x", lineno, positive=False) if "x" in attrs else None,
                y=_parse_float(attrs["y"], "y", lineno, positive=False) if "y" in attrs else None,
            )
        elif head == "edge":
            if len(rest) < 2 or rest[0][1] is not None or rest[1][1] is not None:
                raise MapSyntaxError("expected: edge <from> <to> action=...", lineno)
            src, dst = rest[0][0], rest[1][0]
            attrs = _attr_dict(
                rest[2:],
                {"action": "", "landmark": "", "length": "", "back": "", "back_landmark": ""},
                lineno, "edge",
            )
            action = attrs.get("action")
            if action not in ACTIONS:
                raise MapSyntaxError(
                    f"edge action must be one of {ACTIONS}, got {action!r}", lineno
                )
            length = _parse_float(attrs["length"], "length", lineno) if "length" in attrs else None
            edges.append(
                MapEdge(src=src, dst=dst, action=action,
                        landmark=attrs.get("landmark"), length_m=length)
            )
            edge_lines.append(lineno)
            if "back" in attrs:
                back = attrs["back"]
                if back not in ACTIONS:
                    raise MapSyntaxError(
                        f"back action must be one of {ACTIONS}, got {back!r}", lineno
                    )
                edges.append(
                    MapEdge(src=dst, dst=src, action=back,
                            landmark=attrs.get("back_landmark"), length_m=length)
                )
                edge_lines.append(lineno)
            elif "back_landmark" in attrs:
                raise MapSyntaxError("back_landmark requires back=<action>", lineno)
        else:
            raise MapSyntaxError(f"unknown directive {head!r}", lineno, head_col)

    if name is None:
        raise MapSyntaxError("missing map directive", 1)
    if start is None:
        raise MapSyntaxError("missing start directive", 1)
    if start not in nodes:
        raise MapSyntaxError(f"start node {start!r} is not declared", start_line)
    for edge, lineno in zip(edges, edge_lines):
        for endpoint in (edge.src, edge.dst):
            if endpoint not in nodes:
                raise MapSyntaxError(
                    f"edge endpoint {endpoint!r} is not a declared node", lineno
                )
    return IndoorMap(name=name, nodes=nodes, edges=tuple(edges), start=start)


# --- validation ----------------------------------------------------------


def validate_map(indoor_map: IndoorMap) -> ValidationReport:
    """Check every semantic invariant; problems become report entries, not raises.

    skeletal_safe: at every node the outgoing actions are pairwise distinct,
    so a direction alone identifies one edge.  landmark_safe: the
    (action, landmark) pairs are distinct.  skeletal_safe implies landmark_safe.
    """
    violations: list[Violation] = []
    start_node = indoor_map.nodes[indoor_map.start]
    if start_node.kind != "room":
        violations.append(Violation(
            "START_NOT_ROOM", indoor_map.start,
            f"start node {indoor_map.start!r} has kind {start_node.kind!r}, expected room",
        ))

    for node in indoor_map.nodes.values():
        if node.room_number is not None and node.kind != "room":
            violations.append(Violation(
                "ROOM_NUMBER_ON_NONROOM", node.id,
                f"node {node.id!r} of kind {node.kind!r} carries room number {node.room_number}",
            ))

    skeletal_safe = True
    landmark_safe = True
    for node_id in indoor_map.nodes:
        seen_actions: dict[str, MapEdge] = {}
        seen_pairs: dict[tuple[str, str | None], MapEdge] = {}
        for edge in indoor_map.out_edges(node_id):
            if edge.action in seen_actions:
                skeletal_safe = False
            else:
                seen_actions[edge.action] = edge
            pair = (edge.action, edge.landmark)
            if pair in seen_pairs:
                landmark_safe = False
                violations.append(Violation(
                    "DUPLICATE_ACTION_LANDMARK", node_id,
                    f"node {node_id!r} has two outgoing edges with action={edge.action!r} "
                    f"landmark={edge.landmark!r}",
                ))
            else:
                seen_pairs[pair] = edge

    for edge in indoor_map.edges:
        if edge.action == "enter" and indoor_map.nodes[edge.dst].kind != "room":
            violations.append(Violation(
                "ENTER_TO_NONROOM", f"{edge.src}->{edge.dst}",
                f"enter edge ends at {edge.dst!r} of kind {indoor_map.nodes[edge.dst].kind!r}",
            ))
        if edge.landmark is not None and not _LANDMARK_TOKEN.match(edge.landmark):
            violations.append(Violation(
                "LANDMARK_FORMAT", f"{edge.src}->{edge.dst}",
                f"landmark {edge.landmark!r} is not a lowercase token",
            ))

    reachable = reachable_from(indoor_map, indoor_map.start)
    for node in indoor_map.nodes.values():
        if node.kind == "room" and node.id not in reachable:
            violations.append(Violation(
                "UNREACHABLE", node.id,
                f"room {node.id!r} cannot be reached from {indoor_map.start!r}",
            ))

    return ValidationReport(
        violations=tuple(violations),
        skeletal_safe=skeletal_safe,
        landmark_safe=landmark_safe,
    )


def reachable_from(indoor_map: IndoorMap, origin: str) -> set[str]:
    seen = {origin}
    stack = [origin]
    while stack:
        for edge in indoor_map.out_edges(stack.pop()):
            if edge.dst not in seen:
                seen.add(edge.dst)
                stack.append(edge.dst)
    return seen


# --- serialization -------------------------------------------------------


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _fmt_num(value: float) -> str:
    return repr(int(value)) if float(value).is_integer() else repr(value)


def serialize_map(indoor_map: IndoorMap) -> str:
    """Emit a canonical DSL document: nodes by id, edges by (from, to, action).

    parse_map(serialize_map(m)) equals m up to original declaration order.
    """
    lines = [f"map {indoor_map.name}", f"start {indoor_map.start}"]
    for node in sorted(indoor_map.nodes.values(), key=lambda n: n.id):
        parts = [f"node {node.id}", f"kind={node.kind}"]
        if node.label is not None:
            parts.append(f"label={_quote(node.label)}")
        if node.room_number is not None:
            parts.append(f"room={node.room_number}")
        if node.x is not None:
            parts.append(f"x={_fmt_num(node.x)}")
        if node.y is not None:
            parts.append(f"y={_fmt_num(node.y)}")
        lines.append(" ".join(parts))
    for edge in sorted(indoor_map.edges, key=lambda e: (e.src, e.dst, e.action)):
        parts = [f"edge {edge.src} {edge.dst}", f"action={edge.action}"]
        if edge.landmark is not None:
            parts.append(f"landmark={_quote(edge.landmark)}")
        if edge.length_m is not None:
            parts.append(f"length={_fmt_num(edge.length_m)}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"
