"""Intent recognition and a fully scripted study session.

The session runs the two-condition protocol (questionnaires, three tasks per
condition to rooms 5, 3, 7, Godspeed ratings) against canned input, the way
the test harness drives it; run `waydirector repl --participant YOU` to take
it interactively.
"""

import io
import itertools

from waydirector import load_default_map, load_default_templates
from waydirector.dialogue import ProtocolConfig, recognize_intent, run_session

indoor_map = load_default_map()
templates = load_default_templates()

print("intent recognition:")
for utterance in (
    "where is room 5",
    "take me to room seven",
    "how do I get to the reception?",
    "could you say that again",
    "switch to skeletal style",
    "take me to room twelve",
    "ehh what",
):
    intent = recognize_intent(utterance, indoor_map)
    extra = intent.destination or intent.unresolved or ""
    print(f"  {utterance!r:38s} -> {intent.kind:12s} {extra}")

# scripted participant: all questionnaire answers 4, every task succeeds
lines = ["4"] * 20
for _ in range(2):
    for room in (5, 3, 7):
        lines += [f"where is room {room}", "y"]
    lines += ["4"] * 11
counter = itertools.count()
record = run_session(
    indoor_map, templates, "DEMO",
    order_seed=1,
    config=ProtocolConfig(),
    input_stream=io.StringIO("\n".join(lines) + "\n"),
    output_stream=io.StringIO(),
    clock=lambda: next(counter),
)

print(f"\nscripted session: complete={record.complete}, "
      f"order={record.condition_order}")
for style in record.condition_order:
    condition = record.conditions[style]
    print(f"  {style:9s} successes={sum(condition['task_success'])}/3 "
          f"animacy={condition['animacy']} intelligence={condition['intelligence']}")
print(f"  events logged: {len(record.events)}, "
      f"clarifications: {record.clarification_count}")
