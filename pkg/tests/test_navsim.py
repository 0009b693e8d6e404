import pytest

from waydirector.mapcore import IndoorMap, MapEdge
from waydirector.mapgen import generate_corridor_map
from waydirector.navsim import (
    InstructionParseError,
    NavAction,
    check_template_injectivity,
    flatten_to_actions,
    parse_instructions,
    simulate,
    verify_roundtrip,
)
from waydirector.nlg import generate, load_templates
from waydirector.router import segment_route, shortest_path

HOPS_TPL = (
    'style landmark segment=depart "Go."\n'
    'style landmark segment=decision "Turn {dir} at the {landmark}."\n'
    'style landmark segment=follow_decision "Walk {hops} doors and turn {dir} at the {landmark}."\n'
    'style landmark segment=follow_arrive "Walk {hops} doors to the end."\n'
    'style landmark segment=arrive "Done."\n'
    'style skeletal segment=depart "Go."\n'
    'style skeletal segment=decision "Turn {dir}."\n'
    'style skeletal segment=follow_decision "Walk {hops} doors and turn {dir}."\n'
    'style skeletal segment=follow_arrive "Walk {hops} doors to the end."\n'
    'style skeletal segment=arrive "Done."\n'
)


class TestParseInstructions:
    def test_paper_landmark_sentence(self, templates):
        actions = parse_instructions(
            "Turn right in the corridor at the sofa.", templates, "landmark"
        )
        assert actions == [NavAction(verb="turn", direction="right", landmark="sofa")]

    def test_paper_skeletal_sentence(self, templates):
        actions = parse_instructions("Go right in the corridor.", templates, "skeletal")
        assert actions == [NavAction(verb="go", direction="right")]

    def test_follow_decision_expands_to_two_actions(self, templates):
        actions = parse_instructions(
            "Follow the corridor and turn right at the TV.", templates, "landmark"
        )
        assert actions == [
            NavAction(verb="follow"),
            NavAction(verb="turn", direction="right", landmark="tv"),
        ]

    def test_unparseable_sentence_names_nearest_template(self, templates):
        with pytest.raises(InstructionParseError) as err:
            parse_instructions("Turn right in the corridor at sofa.", templates, "landmark")
        assert "nearest template" in str(err.value)

    def test_ambiguous_parse_detected(self):
        tset = load_templates(
            'style skeletal segment=depart "Go."\n'
            'style skeletal segment=decision "Go {dir}."\n'
            'style skeletal segment=follow_decision "Go {dir}."\n'
            'style skeletal segment=follow_arrive "Go to the end."\n'
            'style skeletal segment=arrive "Done."\n'
            'style landmark segment=depart "Go."\n'
            'style landmark segment=decision "Turn {dir} at the {landmark}."\n'
            'style landmark segment=follow_decision "Go on and turn {dir} at the {landmark}."\n'
            'style landmark segment=follow_arrive "Go to the end."\n'
            'style landmark segment=arrive "Done."\n'
        )
        with pytest.raises(InstructionParseError, match="ambiguous"):
            parse_instructions("Go left.", tset, "skeletal")

    def test_hops_recovered_as_integers(self):
        tset = load_templates(HOPS_TPL)
        actions = parse_instructions("Walk 3 doors and turn left.", tset, "skeletal")
        assert actions == [
            NavAction(verb="follow", hops=3),
            NavAction(verb="go", direction="left"),
        ]

    def test_multi_word_landmark_round_trips(self, templates):
        actions = parse_instructions(
            "At the fire extinguisher, turn left.", templates, "landmark"
        )
        assert actions == [
            NavAction(verb="turn", direction="left", landmark="fire-extinguisher")
        ]

    @pytest.mark.parametrize("map_seed", range(25))
    def test_parse_inverts_generate(self, map_seed, templates):
        m = generate_corridor_map(map_seed)
        for room in m.rooms():
            segments = segment_route(shortest_path(m, room.id))
            for style in ("landmark", "skeletal"):
                for seed in range(5):
                    for include_arrival in (False, True):
                        script = generate(segments, style, templates, seed,
                                          include_arrival=include_arrival)
                        actions = parse_instructions(script.text, templates, style)
                        expected = flatten_to_actions(segments, style)
                        if not include_arrival:
                            expected = [a for a in expected if a.verb != "arrive"]
                        assert actions == expected


class TestSimulate:
    def test_room4_landmark_script_arrives(self, office_map, templates):
        segments = segment_route(shortest_path(office_map, "room 4"))
        script = generate(segments, "landmark", templates, 0)
        actions = parse_instructions(script.text, templates, "landmark")
        trace = simulate(office_map, actions, "landmark")
        assert trace.outcome.kind == "arrived"
        assert trace.outcome.node == "room4"

    def test_empty_actions_at_start(self, office_map):
        trace = simulate(office_map, [], "landmark")
        assert trace.outcome.kind == "arrived"
        assert trace.outcome.node == office_map.start
        assert trace.visited == (office_map.start,)

    def test_visited_is_connected_walk(self, office_map, templates):
        for room in office_map.rooms():
            segments = segment_route(shortest_path(office_map, room.id))
            script = generate(segments, "landmark", templates, 1, include_arrival=True)
            actions = parse_instructions(script.text, templates, "landmark")
            trace = simulate(office_map, actions, "landmark")
            edges = {(e.src, e.dst) for e in office_map.edges}
            assert trace.visited[0] == office_map.start
            for src, dst in zip(trace.visited, trace.visited[1:]):
                assert (src, dst) in edges

    def test_skeletal_ambiguity_outcome(self):
        nodes = {
            "a": dict(kind="room"),
            "b": dict(kind="room", room_number=1),
            "c": dict(kind="room", room_number=2),
        }
        from waydirector.mapcore import MapNode
        m = IndoorMap(
            name="amb",
            nodes={nid: MapNode(id=nid, **attrs) for nid, attrs in nodes.items()},
            edges=(
                MapEdge("a", "b", "left", "sofa"),
                MapEdge("a", "c", "left", "tv"),
                MapEdge("b", "a", "enter"),
            ),
            start="a",
        )
        trace = simulate(m, [NavAction(verb="go", direction="left")], "skeletal")
        assert trace.outcome.kind == "ambiguous"
        assert trace.outcome.node == "a"

    def test_landmark_removal_causes_no_match(self, office_map, templates):
        segments = segment_route(shortest_path(office_map, "room 4"))
        script = generate(segments, "landmark", templates, 0)
        actions = parse_instructions(script.text, templates, "landmark")
        mutated_edges = tuple(
            MapEdge(e.src, e.dst, e.action, None, e.length_m)
            if (e.src, e.dst) == ("ds1", "a4") else e
            for e in office_map.edges
        )
        mutated = IndoorMap(name=office_map.name, nodes=office_map.nodes,
                            edges=mutated_edges, start=office_map.start)
        trace = simulate(mutated, actions, "landmark")
        # the follow walks the whole corridor looking for the missing TV and
        # fails at its end, never entering room 4
        assert trace.outcome.kind == "no_match"
        assert trace.outcome.node == "as9"
        assert "room4" not in trace.visited

    def test_explicit_hops_followed_exactly(self, office_map):
        tset = load_templates(HOPS_TPL)
        segments = segment_route(shortest_path(office_map, "room 2"))
        script = generate(segments, "skeletal", tset, 0)
        actions = parse_instructions(script.text, tset, "skeletal")
        assert any(a.verb == "follow" and a.hops for a in actions)
        trace = simulate(office_map, actions, "skeletal")
        assert trace.outcome.kind == "arrived"
        assert trace.outcome.node == "room2"

    def test_wrong_hop_count_fails(self, office_map):
        tset = load_templates(HOPS_TPL)
        actions = parse_instructions(
            "Turn right. Walk 9 doors and turn right.", tset, "skeletal"
        )
        trace = simulate(office_map, actions, "skeletal")
        assert trace.outcome.kind == "no_match"


class TestVerifyRoundtrip:
    def test_destination_equals_start(self, office_map, templates):
        result = verify_roundtrip(office_map, "reception", "landmark", 0, templates)
        assert result.ok
        assert result.script.sentences == ()

    def test_mutated_map_fails(self, office_map, templates):
        mutated_edges = tuple(
            MapEdge(e.src, e.dst, e.action, "vase", e.length_m)
            if (e.src, e.dst) == ("ds1", "a4") else e
            for e in office_map.edges
        )
        mutated = IndoorMap(name=office_map.name, nodes=office_map.nodes,
                            edges=mutated_edges, start=office_map.start)
        # regenerating on the mutated map works; executing the original wording fails
        segments = segment_route(shortest_path(office_map, "room 4"))
        script = generate(segments, "landmark", templates, 0)
        actions = parse_instructions(script.text, templates, "landmark")
        trace = simulate(mutated, actions, "landmark")
        assert trace.outcome.kind == "no_match"

    def test_generation_error_reported_not_raised(self, templates):
        from waydirector.mapcore import MapNode
        m = IndoorMap(
            name="bare",
            nodes={
                "a": MapNode(id="a", kind="room"),
                "b": MapNode(id="b", kind="corridor"),
                "c": MapNode(id="c", kind="room", room_number=1),
            },
            edges=(MapEdge("a", "b", "left", None), MapEdge("b", "c", "enter")),
            start="a",
        )
        result = verify_roundtrip(m, "room 1", "landmark", 0, templates)
        assert not result.ok
        assert result.diagnostics


class TestInjectivity:
    def test_bundled_templates_invertible_over_office_vocabulary(
        self, office_map, templates
    ):
        for style in ("landmark", "skeletal"):
            assert check_template_injectivity(
                templates, style, office_map.landmark_vocabulary()
            ) == []

    def test_colliding_templates_reported(self):
        tset = load_templates(
            'style skeletal segment=depart "Move."\n'
            'style skeletal segment=decision "Go {dir}."\n'
            'style skeletal segment=follow_decision "Go {dir}."\n'
            'style skeletal segment=follow_arrive "Go on."\n'
            'style skeletal segment=arrive "Done."\n'
            'style landmark segment=depart "Move."\n'
            'style landmark segment=decision "Turn {dir} at the {landmark}."\n'
            'style landmark segment=follow_decision "Go on, turn {dir} at the {landmark}."\n'
            'style landmark segment=follow_arrive "Go on."\n'
            'style landmark segment=arrive "Done."\n'
        )
        assert check_template_injectivity(tset, "skeletal", {"sofa"}) != []
