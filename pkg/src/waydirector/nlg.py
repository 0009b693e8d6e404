"""Template-based instruction generation in landmark and skeletal styles.

Each segment is verbalized by drawing a template with a seeded SplitMix64
stream (one draw per emitted sentence, in segment order), then filling the
{dir}, {landmark}, and {hops} slots.  Identical inputs give bit-identical
output on every platform.
"""

import re
from dataclasses import dataclass

from .router import Segment, SEGMENT_KINDS

STYLES = ("landmark", "skeletal")
SLOT_NAMES = ("dir", "landmark", "hops")

# Slot rules per segment kind: {dir} marks the turn direction and is required
# exactly once on decision kinds; {landmark} is required once on landmark-style
# decision kinds, optional on landmark arrive kinds, forbidden everywhere in
# skeletal; {hops} may only appear where a straight run exists.
_DIR_KINDS = ("decision", "follow_decision")
_HOPS_KINDS = ("follow_decision", "follow_arrive")

# Surface forms for landmark tokens that should not render verbatim.
DEFAULT_DISPLAY_CASE = {"tv": "TV"}

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    """The standard 64-bit SplitMix generator (Steele, Lea & Flood)."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_below(self, bound: int) -> int:
        return self.next_u64() % bound


class TemplateError(Exception):
    """Raised for malformed or incomplete template files."""


class GenerationError(Exception):
    """Raised when a segment cannot be verbalized with the given templates."""


_SLOT = re.compile(r"\{([a-z_]*)\}")


@dataclass(frozen=True)
class Template:
    style: str
    kind: str
    text: str

    def slots(self) -> list[str]:
        return _SLOT.findall(self.text)

    def fill(self, direction: str | None, landmark_surface: str | None, hops: int) -> str:
        out = self.text
        if "{dir}" in out:
            out = out.replace("{dir}", direction)
        if "{landmark}" in out:
            out = out.replace("{landmark}", landmark_surface)
        if "{hops}" in out:
            out = out.replace("{hops}", str(hops))
        return out


@dataclass(frozen=True)
class TemplateSet:
    entries: dict[tuple[str, str], tuple[Template, ...]]
    display_case: dict[str, str]

    def options(self, style: str, kind: str) -> tuple[Template, ...]:
        return self.entries[(style, kind)]

    def landmark_surface(self, token: str) -> str:
        if token in self.display_case:
            return self.display_case[token]
        return token.replace("-", " ")

    def landmark_token(self, surface: str) -> str:
        folded = surface.lower()
        for token, shown in self.display_case.items():
            if shown.lower() == folded:
                return token
        return folded.replace(" ", "-")


def _check_template(template: Template) -> None:
    slots = template.slots()
    for slot in slots:
        if slot not in SLOT_NAMES:
            raise TemplateError(
                f"unknown slot {{{slot}}} in {template.style}/{template.kind} "
                f"template {template.text!r}"
            )
    if template.kind in _DIR_KINDS:
        if slots.count("dir") != 1:
            raise TemplateError(
                f"{template.style}/{template.kind} template must use {{dir}} exactly "
                f"once: {template.text!r}"
            )
    elif "dir" in slots:
        raise TemplateError(
            f"{{dir}} is not allowed in {template.kind} templates: {template.text!r}"
        )
    if template.style == "skeletal" and "landmark" in slots:
        raise TemplateError(
            f"skeletal templates must not use {{landmark}}: {template.text!r}"
        )
    if template.style == "landmark" and template.kind in _DIR_KINDS:
        if slots.count("landmark") != 1:
            raise TemplateError(
                f"landmark/{template.kind} template must use {{landmark}} exactly "
                f"once: {template.text!r}"
            )
    if "hops" in slots and template.kind not in _HOPS_KINDS:
        raise TemplateError(
            f"{{hops}} is only allowed in follow templates: {template.text!r}"
        )


def load_templates(text: str) -> TemplateSet:
    """Parse a template file and enforce coverage and slot rules.

    Lines are `style <landmark|skeletal> segment=<kind> "<text>"` plus optional
    `display <token> "<Surface>"` entries overriding landmark display casing.
    """
    entries: dict[tuple[str, str], list[Template]] = {}
    display = dict(DEFAULT_DISPLAY_CASE)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("display "):
            m = re.fullmatch(r'display\s+(\S+)\s+"([^"]*)"', line)
            if m is None:
                raise TemplateError(f'line {lineno}: expected: display <token> "<Surface>"')
            display[m.group(1)] = m.group(2)
            continue
        m = re.fullmatch(r'style\s+(\S+)\s+segment=(\S+)\s+"([^"]*)"', line)
        if m is None:
            raise TemplateError(
                f'line {lineno}: expected: style <style> segment=<kind> "<text>"'
            )
        style, kind, body = m.groups()
        if style not in STYLES:
            raise TemplateError(f"line {lineno}: unknown style {style!r}")
        if kind not in SEGMENT_KINDS:
            raise TemplateError(f"line {lineno}: unknown segment kind {kind!r}")
        if not body:
            raise TemplateError(f"line {lineno}: empty template text")
        template = Template(style=style, kind=kind, text=body)
        _check_template(template)
        entries.setdefault((style, kind), []).append(template)

    for style in STYLES:
        for kind in SEGMENT_KINDS:
            if (style, kind) not in entries:
                raise TemplateError(f"no templates for style={style} segment={kind}")
    return TemplateSet(
        entries={key: tuple(ts) for key, ts in entries.items()},
        display_case=display,
    )


@dataclass(frozen=True)
class InstructionScript:
    style: str
    sentences: tuple[str, ...]
    seed: int
    source_segments: tuple[Segment, ...]

    @property
    def text(self) -> str:
        return " ".join(self.sentences)


def generate(
    segments: list[Segment],
    style: str,
    templates: TemplateSet,
    seed: int,
    include_arrival: bool = False,
) -> InstructionScript:
    """Render segments into sentences; a pure function of its arguments.

    Arrival segments are skipped by default so the output stops at the final
    turn the way spoken directions usually do; pass include_arrival=True to
    verbalize them too.
    """
    if style not in STYLES:
        raise GenerationError(f"unknown style {style!r}")
    rng = SplitMix64(seed)
    sentences: list[str] = []
    for segment in segments:
        if segment.kind == "arrive" and not include_arrival:
            continue
        options = templates.options(style, segment.kind)
        if style == "landmark" and segment.kind in _DIR_KINDS and segment.landmark is None:
            usable = [t for t in options if "landmark" not in t.slots()]
            if not usable:
                raise GenerationError(
                    f"segment {segment.kind} has no landmark but every "
                    f"landmark-style template requires one"
                )
            options = tuple(usable)
        template = options[rng.next_below(len(options))]
        surface = None
        if segment.landmark is not None and style == "landmark":
            surface = templates.landmark_surface(segment.landmark)
        sentences.append(template.fill(segment.direction, surface, segment.follow_hops))
    return InstructionScript(
        style=style,
        sentences=tuple(sentences),
        seed=seed,
        source_segments=tuple(segments),
    )
