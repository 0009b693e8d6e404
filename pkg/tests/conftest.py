import pytest

from waydirector import load_default_map, load_default_templates


@pytest.fixture(scope="session")
def office_map():
    return load_default_map()


@pytest.fixture(scope="session")
def templates():
    return load_default_templates()


def scripted_session_lines(rooms=(5, 3, 7), likert="3", success="y"):
    """Input lines for a full two-condition session."""
    lines = [likert] * 14 + [likert] * 6
    for _ in range(2):
        for room in rooms:
            lines.append(f"where is room {room}")
            lines.append(success)
        lines += [likert] * 6 + [likert] * 5
    return lines
