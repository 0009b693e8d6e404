"""Round-trip verification: parse the generated wording back into actions and
walk the map with them.

Also demonstrates a failure: after the TV landmark disappears from the map,
the landmark-style wording can no longer be executed.
"""

from waydirector import load_default_map, load_default_templates
from waydirector.mapcore import IndoorMap, MapEdge
from waydirector.mapgen import generate_corridor_map
from waydirector.navsim import parse_instructions, simulate, verify_roundtrip
from waydirector.nlg import generate
from waydirector.router import segment_route, shortest_path

indoor_map = load_default_map()
templates = load_default_templates()

script = generate(segment_route(shortest_path(indoor_map, "room 4")),
                  "landmark", templates, seed=0)
print("wording:   ", script.text)
actions = parse_instructions(script.text, templates, "landmark")
print("parsed back:", [(a.verb, a.direction, a.landmark) for a in actions])
trace = simulate(indoor_map, actions, "landmark")
print("walk:      ", " -> ".join(trace.visited))
print("outcome:   ", trace.outcome.kind, trace.outcome.node)

print("\nsweeping the bundled map, both styles, seeds 0..19:")
cells = sum(
    verify_roundtrip(indoor_map, room.id, style, seed, templates).ok
    for room in indoor_map.rooms()
    for style in ("landmark", "skeletal")
    for seed in range(20)
)
print(f"  {cells} / {len(indoor_map.rooms()) * 2 * 20} round trips ok")

print("\nrandom generated maps behave the same:")
for map_seed in (0, 1, 2):
    generated = generate_corridor_map(map_seed)
    ok = sum(
        verify_roundtrip(generated, room.id, style, seed, templates).ok
        for room in generated.rooms()
        for style in ("landmark", "skeletal")
        for seed in (0, 1)
    )
    total = len(generated.rooms()) * 4
    print(f"  map seed {map_seed}: {len(generated.nodes)} nodes, {ok}/{total} ok")

# sabotage: strip the tv landmark; the old wording now fails mid-corridor
mutated = IndoorMap(
    name=indoor_map.name,
    nodes=indoor_map.nodes,
    edges=tuple(
        MapEdge(e.src, e.dst, e.action, None, e.length_m)
        if (e.src, e.dst) == ("ds1", "a4") else e
        for e in indoor_map.edges
    ),
    start=indoor_map.start,
)
trace = simulate(mutated, actions, "landmark")
print(f"\nafter removing the tv landmark: {trace.outcome.kind} at "
      f"{trace.outcome.node!r} (walked {' -> '.join(trace.visited)})")
