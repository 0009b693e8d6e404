import io
import itertools
import json
from pathlib import Path

import jsonschema
import pytest
from hypothesis import given, strategies as st

from conftest import scripted_session_lines
from waydirector.dialogue import (
    INTENT_KINDS,
    ProtocolConfig,
    SessionRecord,
    load_session,
    recognize_intent,
    run_session,
    save_session,
    validate_session_dict,
)
from waydirector.router import NUMBER_WORDS, WORDS_FOR_NUMBER

GOLDEN = Path(__file__).parent / "data" / "golden_session.json"


def run_scripted(office_map, templates, lines, participant="P01", order_seed=0,
                 out_dir=None):
    stdin = io.StringIO("\n".join(lines) + "\n")
    stdout = io.StringIO()
    counter = itertools.count()
    record = run_session(
        office_map, templates, participant,
        order_seed=order_seed,
        config=ProtocolConfig(),
        input_stream=stdin,
        output_stream=stdout,
        out_dir=out_dir,
        clock=lambda: next(counter),
    )
    return record, stdout.getvalue()


class TestIntentRecognition:
    @pytest.mark.parametrize("utterance,kind,destination", [
        ("where is room 5", "navigate", "room 5"),
        ("Where is Room 5?", "navigate", "room 5"),
        ("where is room five", "navigate", "room 5"),
        ("take me to room 7", "navigate", "room 7"),
        ("how do i get to the reception", "navigate", "reception"),
        ("room 3", "navigate", "room 3"),
        ("reception", "navigate", "reception"),
        ("could you say that again", "repeat", None),
        ("repeat", "repeat", None),
        ("switch to skeletal style", "switch_style", None),
        ("help", "help", None),
        ("what can you do", "help", None),
        ("quit", "quit", None),
        ("goodbye", "quit", None),
        ("blorp fizz", "unknown", None),
    ])
    def test_rule_table(self, office_map, utterance, kind, destination):
        intent = recognize_intent(utterance, office_map)
        assert intent.kind == kind
        assert intent.destination == destination

    def test_unresolvable_room_keeps_name(self, office_map):
        intent = recognize_intent("take me to room twelve", office_map)
        assert intent.kind == "navigate"
        assert intent.destination is None
        assert intent.unresolved == "room twelve"

    def test_switch_style_extracts_target(self, office_map):
        intent = recognize_intent("switch to landmark mode", office_map)
        assert intent.kind == "switch_style"
        assert intent.style == "landmark"

    @given(st.text(max_size=60))
    def test_recognition_is_total(self, text):
        from waydirector import load_default_map
        intent = recognize_intent(text, load_default_map())
        assert intent.kind in INTENT_KINDS
        assert intent.raw == text
        if intent.kind == "navigate":
            assert intent.destination is not None or intent.unresolved is not None
        else:
            assert intent.destination is None

    def test_number_words_bijective(self):
        for word, number in NUMBER_WORDS.items():
            assert WORDS_FOR_NUMBER[number] == word
        assert len(WORDS_FOR_NUMBER) == len(NUMBER_WORDS)


class TestRunSession:
    def test_constant_threes_fixture(self, office_map, templates):
        record, _ = run_scripted(office_map, templates, scripted_session_lines())
        assert record.complete
        assert sum(record.nars) / len(record.nars) == 3.0
        assert len(record.nars) == 14 and len(record.ptt) == 6
        total_success = sum(
            sum(record.conditions[style]["task_success"])
            for style in record.condition_order
        )
        assert total_success == 6
        for style in record.condition_order:
            condition = record.conditions[style]
            assert len(condition["animacy"]) == 6
            assert len(condition["intelligence"]) == 5
            assert condition["task_rooms"] == [5, 3, 7]

    def test_order_seed_is_deterministic(self, office_map, templates):
        a, _ = run_scripted(office_map, templates, scripted_session_lines(), order_seed=0)
        b, _ = run_scripted(office_map, templates, scripted_session_lines(), order_seed=0)
        assert a.condition_order == b.condition_order
        c, _ = run_scripted(office_map, templates, scripted_session_lines(), order_seed=1)
        assert c.condition_order != a.condition_order  # seeds 0 and 1 flip differently

    def test_replay_is_byte_identical(self, office_map, templates):
        a, _ = run_scripted(office_map, templates, scripted_session_lines())
        b, _ = run_scripted(office_map, templates, scripted_session_lines())
        assert a.to_json() == b.to_json()

    def test_replay_matches_golden_file(self, office_map, templates):
        record, _ = run_scripted(office_map, templates, scripted_session_lines())
        assert record.to_json() == GOLDEN.read_text(encoding="utf-8")

    def test_aborted_session_is_partial_but_persisted(self, office_map, templates,
                                                      tmp_path):
        lines = ["3"] * 10  # input ends mid-questionnaire
        record, _ = run_scripted(office_map, templates, lines, out_dir=tmp_path)
        assert not record.complete
        saved = load_session(tmp_path / "P01.json")
        assert saved.complete is False
        assert saved.events[-1]["type"] == "session_end"

    def test_quit_intent_aborts(self, office_map, templates):
        lines = scripted_session_lines()[:20] + ["quit"]
        record, _ = run_scripted(office_map, templates, lines)
        assert not record.complete

    def test_clarification_counted_and_reprompted(self, office_map, templates):
        lines = scripted_session_lines()
        lines.insert(20, "take me to room twelve")  # before the first task utterance
        record, transcript = run_scripted(office_map, templates, lines)
        assert record.complete
        assert record.clarification_count == 1
        assert "room twelve" in transcript

    def test_repeat_and_help_and_switch_paths(self, office_map, templates):
        lines = scripted_session_lines()
        lines[20:20] = ["help", "repeat", "switch to landmark style"]
        record, transcript = run_scripted(office_map, templates, lines)
        assert record.complete
        assert record.clarification_count == 0
        assert "Nothing to repeat yet." in transcript
        assert "fixed during this part" in transcript

    def test_instructions_rendered_in_condition_style(self, office_map, templates):
        record, transcript = run_scripted(office_map, templates,
                                          scripted_session_lines())
        instruction_events = [e for e in record.events if e["type"] == "instructions"]
        assert len(instruction_events) == 6
        first_style = record.condition_order[0]
        assert all(e["style"] == first_style for e in instruction_events[:3])

    def test_likert_bounds_reprompt(self, office_map, templates):
        lines = ["9", "0", "x"] + scripted_session_lines()
        record, transcript = run_scripted(office_map, templates, lines)
        assert record.complete
        assert "number from 1 to 5" in transcript

    def test_events_log_flushed_per_event(self, office_map, templates, tmp_path):
        record, _ = run_scripted(office_map, templates, scripted_session_lines(),
                                 out_dir=tmp_path)
        jsonl = (tmp_path / "P01.events.jsonl").read_text().splitlines()
        assert len(jsonl) == len(record.events)
        assert json.loads(jsonl[0])["type"] == "session_start"


class TestSessionPersistence:
    def test_save_load_round_trip(self, office_map, templates, tmp_path):
        record, _ = run_scripted(office_map, templates, scripted_session_lines(),
                                 out_dir=tmp_path)
        loaded = load_session(tmp_path / "P01.json")
        assert loaded.to_json() == record.to_json()

    def test_schema_rejects_wrong_item_counts(self):
        data = {
            "participant_id": "P02",
            "complete": True,
            "condition_order": ["landmark", "skeletal"],
            "events": [],
            "nars": [3] * 15,
            "ptt": [3] * 6,
            "conditions": {
                "landmark": {"animacy": [3] * 6, "intelligence": [3] * 5,
                             "task_success": [True] * 3, "task_rooms": [5, 3, 7]},
                "skeletal": {"animacy": [3] * 6, "intelligence": [3] * 5,
                             "task_success": [True] * 3, "task_rooms": [5, 3, 7]},
            },
        }
        with pytest.raises(jsonschema.ValidationError):
            validate_session_dict(data)

    def test_schema_rejects_out_of_bounds_likert(self):
        data = {
            "participant_id": "P02",
            "complete": False,
            "condition_order": ["landmark", "skeletal"],
            "events": [],
            "nars": [6] * 14,
        }
        with pytest.raises(jsonschema.ValidationError):
            validate_session_dict(data)

    def test_complete_record_requires_questionnaires(self):
        data = {
            "participant_id": "P02",
            "complete": True,
            "condition_order": ["landmark", "skeletal"],
            "events": [],
        }
        with pytest.raises(jsonschema.ValidationError):
            validate_session_dict(data)

    def test_filename_is_participant_id(self, office_map, templates, tmp_path):
        record, _ = run_scripted(office_map, templates, scripted_session_lines(),
                                 participant="P42", out_dir=tmp_path)
        assert (tmp_path / "P42.json").exists()
