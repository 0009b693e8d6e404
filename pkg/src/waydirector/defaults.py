"""Bundled office map, template set, and JSON schemas."""

import json
from importlib import resources

from .mapcore import IndoorMap, parse_map
from .nlg import TemplateSet, load_templates


def default_map_text() -> str:
    return resources.files("waydirector").joinpath("data/office.map").read_text("utf-8")


def default_templates_text() -> str:
    return resources.files("waydirector").joinpath("data/default.tpl").read_text("utf-8")


def load_default_map() -> IndoorMap:
    return parse_map(default_map_text())


def load_default_templates() -> TemplateSet:
    return load_templates(default_templates_text())


def load_schema(name: str) -> dict:
    text = resources.files("waydirector").joinpath(
        f"schemas/{name}.schema.json"
    ).read_text("utf-8")
    return json.loads(text)
