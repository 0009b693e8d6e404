"""Shortest-path extraction and compression into verbalizable segments.

A route is the ordered edge traversal from the map's start to a requested
room.  Segmentation collapses straight runs into the follow prefix of the
next turn (or of arrival), producing one segment per future sentence.
"""

import heapq
from dataclasses import dataclass

from .mapcore import IndoorMap, MapEdge

SEGMENT_KINDS = ("depart", "decision", "follow_decision", "follow_arrive", "arrive")

NUMBER_WORDS = {
    "one": 1, "two": 2, "three": 3, "four": 4, "five": 5,
    "six": 6, "seven": 7, "eight": 8, "nine": 9, "ten": 10,
    "eleven": 11, "twelve": 12, "thirteen": 13, "fourteen": 14, "fifteen": 15,
    "sixteen": 16, "seventeen": 17, "eighteen": 18, "nineteen": 19, "twenty": 20,
}
WORDS_FOR_NUMBER = {v: k for k, v in NUMBER_WORDS.items()}


class RoutingError(Exception):
    """Base class for routing failures."""


class UnknownRoomError(RoutingError):
    """The destination does not name a room on this map."""


class UnreachableRoomError(RoutingError):
    """The destination room has no directed path from the start."""


@dataclass(frozen=True)
class RouteStep:
    src: str
    dst: str
    action: str
    landmark: str | None = None
    length_m: float | None = None


@dataclass(frozen=True)
class Route:
    steps: tuple[RouteStep, ...]

    @property
    def destination(self) -> str | None:
        return self.steps[-1].dst if self.steps else None

    def node_sequence(self, start: str) -> list[str]:
        return [start] + [s.dst for s in self.steps]

    def actions(self) -> list[str]:
        return [s.action for s in self.steps]


@dataclass(frozen=True)
class Segment:
    """One verbalizable unit: an optional straight run plus a decision or arrival."""

    kind: str
    direction: str | None = None
    landmark: str | None = None
    follow_hops: int = 0


def resolve_destination(indoor_map: IndoorMap, destination: str) -> str:
    """Resolve 'room 4', 'room four', a node id, or a node label to a room node id."""
    text = destination.strip().lower()
    if not text:
        raise UnknownRoomError("empty destination")

    node = indoor_map.nodes.get(text)
    if node is not None and node.kind == "room":
        return node.id

    words = text.split()
    if len(words) == 2 and words[0] == "room":
        number = None
        if words[1].isdigit():
            number = int(words[1])
        elif words[1] in NUMBER_WORDS:
            number = NUMBER_WORDS[words[1]]
        if number is not None:
            room = indoor_map.room_by_number(number)
            if room is None:
                raise UnknownRoomError(f"no room numbered {number} on map {indoor_map.name!r}")
            return room.id

    for node in indoor_map.nodes.values():
        if node.kind == "room" and node.label is not None and node.label.lower() == text:
            return node.id
    raise UnknownRoomError(f"cannot resolve destination {destination!r}")


def shortest_path(indoor_map: IndoorMap, destination: str,
                  origin: str | None = None) -> Route:
    """Cheapest route from the start to the destination room.

    Cost is the sum of edge lengths when every edge has one, else hop count.
    Ties break on the lexicographically smallest node-id sequence, so the
    result is independent of edge declaration order.  Passing an origin node
    id routes from there instead of the map start; the study protocol itself
    always departs from the start.
    """
    dest_id = resolve_destination(indoor_map, destination)
    if origin is not None and origin not in indoor_map.nodes:
        raise UnknownRoomError(f"origin {origin!r} is not a node on this map")
    start = indoor_map.start if origin is None else origin
    if dest_id == start:
        return Route(steps=())

    use_lengths = indoor_map.uses_lengths()

    def edge_cost(edge: MapEdge) -> float:
        return edge.length_m if use_lengths else 1.0

    # Heap entries are (cost, node-id path, push counter, steps); tuple
    # ordering gives the lexicographic tie-break for free.  Parallel edges
    # between the same node pair share cost and path, so the counter settles
    # them by push order, which the sorted adjacency scan makes deterministic.
    best_seen: set[str] = set()
    counter = 0
    heap: list[tuple[float, tuple[str, ...], int, tuple[RouteStep, ...]]] = [
        (0.0, (start,), 0, ())
    ]
    while heap:
        cost, path, _, steps = heapq.heappop(heap)
        node = path[-1]
        if node in best_seen:
            continue
        best_seen.add(node)
        if node == dest_id:
            return Route(steps=steps)
        for edge in sorted(
            indoor_map.out_edges(node), key=lambda e: (e.dst, e.action, e.landmark or "")
        ):
            if edge.dst in best_seen:
                continue
            step = RouteStep(
                src=edge.src, dst=edge.dst, action=edge.action,
                landmark=edge.landmark, length_m=edge.length_m,
            )
            counter += 1
            heapq.heappush(
                heap,
                (cost + edge_cost(edge), path + (edge.dst,), counter, steps + (step,)),
            )
    raise UnreachableRoomError(f"room {destination!r} is unreachable from {start!r}")


def segment_route(route: Route) -> list[Segment]:
    """Compress a route into segments: straight runs attach to the next turn or arrival.

    Concatenating the segments (see flatten_segments) reconstructs the
    route's action sequence exactly.
    """
    segments: list[Segment] = []
    pending_straight = 0
    for step in route.steps:
        if step.action == "straight":
            pending_straight += 1
        elif step.action in ("left", "right"):
            if pending_straight:
                segments.append(Segment(
                    kind="follow_decision", direction=step.action,
                    landmark=step.landmark, follow_hops=pending_straight,
                ))
                pending_straight = 0
            else:
                segments.append(Segment(
                    kind="decision", direction=step.action, landmark=step.landmark,
                ))
        else:  # enter: always terminal in a valid route
            if pending_straight:
                segments.append(Segment(kind="follow_arrive", follow_hops=pending_straight))
                pending_straight = 0
            segments.append(Segment(kind="arrive", landmark=step.landmark))
    if pending_straight:
        # a route may end on a straight edge into the destination
        segments.append(Segment(kind="follow_arrive", follow_hops=pending_straight))
    return segments


def flatten_segments(segments: list[Segment]) -> list[str]:
    """Inverse of segment_route at the action level."""
    actions: list[str] = []
    for segment in segments:
        actions.extend(["straight"] * segment.follow_hops)
        if segment.kind in ("decision", "follow_decision"):
            actions.append(segment.direction)
        elif segment.kind == "arrive":
            actions.append("enter")
    return actions
