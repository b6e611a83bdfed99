"""Reading and validating JSON input documents."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .catalog import get_group
from .csl import FiniteCsl, MalformedTableError
from .groups import FiniteGroup, GroupTableError
from .lattices import FiniteLattice, NotALatticeError
from .rings import NARing, RingError

KINDS = ("group", "naring", "csl", "lattice")


class InputError(ValueError):
    """Unreadable, malformed or structurally invalid input."""


@dataclass
class InputDocument:
    kind: str
    payload: Any
    raw: dict
    source: str

    @property
    def digest(self) -> str:
        blob = json.dumps(self.raw, sort_keys=True, separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()


def _load_json(source: str) -> tuple[dict, str]:
    text, label = source, "<text>"
    stripped = source.lstrip()
    if not stripped.startswith(("{", "[")):
        path = Path(source)
        try:
            text = path.read_text()
        except OSError as exc:
            raise InputError(f"{source}: cannot read: {exc.strerror}") from exc
        label = str(path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{label}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise InputError(f"{label}: top level must be a JSON object")
    return doc, label


def _infer_kind(doc: dict, label: str) -> str:
    kind = doc.get("kind")
    if kind is None:
        if "sc" in doc:
            kind = "naring"
        elif "table" in doc:
            kind = "group"
        elif "meet" in doc:
            kind = "lattice"
        elif "dot" in doc:
            kind = "csl"
    if kind not in KINDS:
        raise InputError(f"{label}: field 'kind' must be one of {', '.join(KINDS)}, got {kind!r}")
    return kind


def _require(doc: dict, label: str, *fields: str) -> None:
    for f in fields:
        if f not in doc:
            raise InputError(f"{label}: missing field {f!r}")


def parse_input(source: str) -> InputDocument:
    """Parse a path, a JSON string, or ``catalog:NAME`` into a validated document."""
    if source.startswith("catalog:"):
        name = source.split(":", 1)[1]
        try:
            G = get_group(name)
        except KeyError as exc:
            raise InputError(str(exc.args[0])) from exc
        return InputDocument("group", G, G.to_json(), source)
    doc, label = _load_json(source)
    kind = _infer_kind(doc, label)
    try:
        if kind == "group":
            _require(doc, label, "table")
            payload = FiniteGroup.from_json(doc)
        elif kind == "naring":
            _require(doc, label, "sc")
            payload = NARing.from_json(doc)
        elif kind == "csl":
            _require(doc, label, "n", "join", "dot", "bottom")
            payload = FiniteCsl.from_json(doc)
        else:
            _require(doc, label, "join", "meet")
            payload = FiniteLattice.from_json(doc)
    except (GroupTableError, RingError, MalformedTableError, NotALatticeError) as exc:
        raise InputError(f"{label}: {exc}") from exc
    except (TypeError, ValueError, KeyError) as exc:
        raise InputError(f"{label}: invalid {kind} document: {exc}") from exc
    return InputDocument(kind, payload, doc, label)


def parse_json_object(source: str) -> dict:
    return _load_json(source)[0]
