"""waydirector: indoor route directions with landmark and skeletal styles.

Pipeline: parse a map DSL into a graph knowledge base, extract the shortest
path to a room, compress it into segments, verbalize them from seeded
templates, and verify the wording by parsing it back and walking the map.
The stats module carries the study's analysis procedures; the api module
serves everything over HTTP for the browser client.
"""

from .defaults import (
    default_map_text,
    default_templates_text,
    load_default_map,
    load_default_templates,
)
from .mapcore import (
    IndoorMap,
    MapEdge,
    MapNode,
    MapError,
    MapSyntaxError,
    ValidationReport,
    parse_map,
    serialize_map,
    validate_map,
)
from .nlg import (
    GenerationError,
    InstructionScript,
    SplitMix64,
    TemplateError,
    TemplateSet,
    generate,
    load_templates,
)
from .navsim import (
    InstructionParseError,
    NavAction,
    RoundTripResult,
    SimTrace,
    check_template_injectivity,
    parse_instructions,
    simulate,
    verify_roundtrip,
)
from .router import (
    Route,
    RouteStep,
    Segment,
    UnknownRoomError,
    UnreachableRoomError,
    resolve_destination,
    segment_route,
    shortest_path,
)

__version__ = "0.1.0"

__all__ = [
    "IndoorMap", "MapEdge", "MapNode", "MapError", "MapSyntaxError",
    "ValidationReport", "parse_map", "serialize_map", "validate_map",
    "Route", "RouteStep", "Segment", "UnknownRoomError", "UnreachableRoomError",
    "resolve_destination", "segment_route", "shortest_path",
    "GenerationError", "InstructionScript", "SplitMix64", "TemplateError",
    "TemplateSet", "generate", "load_templates",
    "InstructionParseError", "NavAction", "RoundTripResult", "SimTrace",
    "check_template_injectivity", "parse_instructions", "simulate", "verify_roundtrip",
    "default_map_text", "default_templates_text", "load_default_map",
    "load_default_templates",
    "__version__",
]
