"""Tour of the map DSL and the in-memory knowledge base.

Parses the bundled office map, inspects nodes and edges, runs the validator,
and shows that serialization round-trips.
"""

from waydirector import (
    default_map_text,
    load_default_map,
    parse_map,
    serialize_map,
    validate_map,
)

indoor_map = load_default_map()
print(f"map {indoor_map.name!r}: {len(indoor_map.nodes)} nodes, "
      f"{len(indoor_map.edges)} edges, start = {indoor_map.start!r}")

rooms = sorted(indoor_map.rooms(), key=lambda n: n.room_number or 0)
print("rooms:", ", ".join(f"{n.room_number or n.label}" for n in rooms))
print("landmark vocabulary:", ", ".join(sorted(indoor_map.landmark_vocabulary())))

print("\nedges leaving the reception:")
for edge in indoor_map.out_edges(indoor_map.start):
    print(f"  {edge.action:6s} -> {edge.dst:6s} landmark={edge.landmark}")

report = validate_map(indoor_map)
print(f"\nvalidation: {len(report.violations)} violations, "
      f"skeletal_safe={report.skeletal_safe}, landmark_safe={report.landmark_safe}")

# the DSL is plain text: one directive per line
print("\nfirst lines of the bundled DSL file:")
for line in default_map_text().splitlines()[2:8]:
    print(" ", line)

# serialization is canonical and re-parses to an identical graph
again = parse_map(serialize_map(indoor_map))
print("\nserialize -> parse round trip:",
      "identical" if again.nodes == indoor_map.nodes
      and sorted(again.edges, key=repr) == sorted(indoor_map.edges, key=repr)
      else "MISMATCH")

# a broken document is reported with line and column
try:
    parse_map("map demo\nstart a\nnode a kind=room\nedge a ghost action=left\n")
except Exception as exc:
    print("\nexpected parse failure:", exc)
