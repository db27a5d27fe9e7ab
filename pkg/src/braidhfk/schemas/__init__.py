"""JSON schemas for the CLI reports."""

import json
from importlib import resources


def load(name: str) -> dict:
    return json.loads(resources.files(__package__).joinpath(f"{name}.json").read_text())
