"""Shortest paths, discourse segments, and both instruction styles.

Reproduces the room-4 example wording at seed 0, then shows how seeds vary
the phrasing while the route stays fixed.
"""

from waydirector import load_default_map, load_default_templates
from waydirector.nlg import generate
from waydirector.router import segment_route, shortest_path

indoor_map = load_default_map()
templates = load_default_templates()

route = shortest_path(indoor_map, "room 4")
print("route to room 4:", " -> ".join(route.node_sequence(indoor_map.start)))
print("actions:", route.actions())

segments = segment_route(route)
print("\nsegments:")
for segment in segments:
    print(f"  {segment.kind:16s} dir={segment.direction} "
          f"landmark={segment.landmark} hops={segment.follow_hops}")

print("\nseed 0 (the published example wording):")
for style in ("landmark", "skeletal"):
    script = generate(segments, style, templates, seed=0)
    print(f"  {style:9s} {script.text}")

print("\nother seeds draw other templates:")
for seed in (1, 2, 3):
    script = generate(segments, "landmark", templates, seed=seed)
    print(f"  seed {seed}: {script.text}")

print("\na harder destination (room 7), with the arrival sentence enabled:")
segments7 = segment_route(shortest_path(indoor_map, "room 7"))
script7 = generate(segments7, "landmark", templates, seed=0, include_arrival=True)
for sentence in script7.sentences:
    print("  ", sentence)
