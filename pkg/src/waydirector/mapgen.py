"""Seeded random indoor maps for property tests and sweeps.

generate_corridor_map builds office-like maps from corridor chains with
pass-through doorway junctions, branch junctions, and end-of-corridor rooms.
The family keeps hop-free instructions unambiguous in both styles: interior
doorways on a corridor never share a direction with each other or with the
turns at the corridor's terminal junction, so a reader following "go on and
turn left" can never take a wrong door first.

generate_digraph_map builds small unconstrained digraphs for exercising the
router against exhaustive path enumeration.
"""

import random

from .mapcore import IndoorMap, MapEdge, MapNode

LANDMARKS = ("sofa", "tv", "plant", "fire-extinguisher", "clock", "poster",
             "printer", "vending-machine")


class _Builder:
    def __init__(self, rng: random.Random, max_nodes: int, with_lengths: bool):
        self.rng = rng
        self.max_nodes = max_nodes
        self.with_lengths = with_lengths
        self.nodes: dict[str, MapNode] = {}
        self.edges: list[MapEdge] = []
        self.counter = 0
        self.room_count = 0

    def budget(self) -> int:
        return self.max_nodes - len(self.nodes)

    def _nid(self, prefix: str) -> str:
        self.counter += 1
        return f"{prefix}{self.counter}"

    def add_node(self, prefix: str, kind: str, **kwargs) -> str:
        node_id = self._nid(prefix)
        self.nodes[node_id] = MapNode(id=node_id, kind=kind, **kwargs)
        return node_id

    def add_edge(self, src: str, dst: str, action: str, landmark: str | None = None):
        length = round(self.rng.uniform(1.0, 9.0), 1) if self.with_lengths else None
        self.edges.append(MapEdge(src=src, dst=dst, action=action,
                                  landmark=landmark, length_m=length))

    def landmark(self) -> str:
        return self.rng.choice(LANDMARKS)

    def add_room(self, via: str) -> str:
        """Attach a numbered room entered from `via`."""
        self.room_count += 1
        room = self.add_node("room", "room", room_number=self.room_count,
                             label=f"Room {self.room_count}")
        self.add_edge(via, room, "enter")
        return room

    def doorway_room(self, junction: str, direction: str) -> None:
        ante = self.add_node("a", "corridor")
        self.add_edge(junction, ante, direction, landmark=self.landmark())
        self.add_room(ante)

    def corridor(self, entry: str, rooms_left: int) -> None:
        """Grow one corridor from `entry` (the node the entering turn lands on)."""
        rng = self.rng
        node = entry
        for _ in range(rng.randint(0, 2)):  # plain corridor stretch
            if self.budget() < 8:
                break
            nxt = self.add_node("c", "corridor")
            self.add_edge(node, nxt, "straight")
            node = nxt

        door_sides: list[str] = []
        n_doors = rng.choice((0, 0, 1, 1, 2)) if rooms_left > 1 else 1
        if n_doors >= 1 and self.budget() >= 6:
            side = rng.choice(("left", "right"))
            door_sides.append(side)
            junction = self.add_node("d", "junction")
            self.add_edge(node, junction, "straight")
            self.doorway_room(junction, side)
            node = junction
        if n_doors == 2 and self.budget() >= 6:
            other = "left" if door_sides[0] == "right" else "right"
            door_sides.append(other)
            junction = self.add_node("d", "junction")
            self.add_edge(node, junction, "straight")
            self.doorway_room(junction, other)
            node = junction

        rooms_left = max(0, rooms_left - len(door_sides))
        allowed = [d for d in ("left", "right") if d not in door_sides]
        if rooms_left == 0 or not allowed or self.budget() < 8:
            # end-of-corridor room, entered straight ahead
            end = self.add_node("a", "corridor")
            self.add_edge(node, end, "straight")
            self.add_room(end)
            return

        terminal = self.add_node("j", "junction")
        self.add_edge(node, terminal, "straight")
        branches = allowed if (len(allowed) == 2 and rooms_left >= 2
                               and self.budget() >= 16 and rng.random() < 0.6) else [rng.choice(allowed)]
        share = max(1, rooms_left // len(branches))
        for direction in branches:
            if rooms_left <= 0 or self.budget() < 6:
                self.doorway_room(terminal, direction) if self.budget() >= 3 else None
                continue
            if rng.random() < 0.3 or self.budget() < 10:
                self.doorway_room(terminal, direction)
                rooms_left -= 1
            else:
                head = self.add_node("c", "corridor")
                self.add_edge(terminal, head, direction, landmark=self.landmark())
                take = min(share, rooms_left)
                self.corridor(head, take)
                rooms_left -= take


def generate_corridor_map(
    seed: int,
    rooms: int | None = None,
    max_nodes: int = 30,
    with_lengths: bool = False,
) -> IndoorMap:
    """A random validated, style-safe office map; pure function of the seed."""
    rng = random.Random(seed)
    builder = _Builder(rng, max_nodes=max_nodes, with_lengths=with_lengths)
    reception = "reception"
    builder.nodes[reception] = MapNode(id=reception, kind="room", label="Reception")
    if rooms is None:
        rooms = rng.randint(3, 8)

    wings = ("right", "left") if rooms > 2 and rng.random() < 0.7 else (rng.choice(("left", "right")),)
    per_wing = max(1, rooms // len(wings))
    for direction in wings:
        head = builder.add_node("c", "corridor")
        builder.add_edge(reception, head, direction, landmark=builder.landmark())
        builder.corridor(head, per_wing)

    return IndoorMap(
        name=f"generated-{seed}",
        nodes=builder.nodes,
        edges=tuple(builder.edges),
        start=reception,
    )


def generate_digraph_map(seed: int, max_nodes: int = 12) -> IndoorMap:
    """A small random digraph (possibly cyclic, parallel routes) for router tests.

    Valid as an IndoorMap but not necessarily style-safe; every node is
    reachable from the start by construction.
    """
    rng = random.Random(seed)
    n = rng.randint(4, max_nodes)
    nodes: dict[str, MapNode] = {}
    names = [f"n{i:02d}" for i in range(n)]
    rng.shuffle(names)
    start = names[0]
    nodes[start] = MapNode(id=start, kind="room", label="Start")
    room_no = 0
    for name in names[1:]:
        if rng.random() < 0.5:
            room_no += 1
            nodes[name] = MapNode(id=name, kind="room", room_number=room_no)
        else:
            nodes[name] = MapNode(id=name, kind=rng.choice(("corridor", "junction")))

    with_lengths = rng.random() < 0.5
    edges: list[MapEdge] = []
    used: set[tuple[str, str, str | None]] = set()

    def add(src: str, dst: str) -> None:
        actions = ["left", "right", "straight"]
        if nodes[dst].kind == "room":
            actions.append("enter")
        rng.shuffle(actions)
        for action in actions:
            landmark = rng.choice(LANDMARKS) if rng.random() < 0.5 else None
            if (src, action, landmark) not in used:
                used.add((src, action, landmark))
                length = round(rng.uniform(1.0, 9.0), 1) if with_lengths else None
                edges.append(MapEdge(src=src, dst=dst, action=action,
                                     landmark=landmark, length_m=length))
                return

    # spanning arborescence first, then extra edges for alternative routes
    connected = [start]
    for name in names[1:]:
        add(rng.choice(connected), name)
        connected.append(name)
    for _ in range(rng.randint(n // 2, 2 * n)):
        src, dst = rng.choice(names), rng.choice(names)
        if src != dst:
            add(src, dst)

    return IndoorMap(name=f"digraph-{seed}", nodes=nodes, edges=tuple(edges), start=start)
