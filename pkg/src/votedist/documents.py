"""Election files: a small JSON schema with a kind tag and version field.

A document looks like::

    {
      "schema": 1,
      "kind": "line",
      "beta": 1.0,
      "voters": [1.5, -0.25],
      "metadata": {"title": "example"}
    }

``kind`` is ``line`` (voters are positions) or ``metric`` (voters are
``[d_left, d_right]`` distance pairs).  Parsing is strict: unknown keys,
out-of-range beta and triangle-inequality violations are all rejected with
the offending field named.  ``parse_election(serialize_election(doc))``
returns an equal document.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .metric import MetricElection
from .model import LineElection

__all__ = [
    "SCHEMA_VERSION",
    "DocumentError",
    "ElectionDocument",
    "parse_election",
    "serialize_election",
]

SCHEMA_VERSION = 1

_KINDS = ("line", "metric")


class DocumentError(ValueError):
    """An election document failed to parse or validate."""


@dataclass(frozen=True)
class ElectionDocument:
    """Parsed election file: kind, beta, voters and free-form metadata."""

    kind: str
    beta: float
    voters: tuple
    metadata: dict = field(default_factory=dict)

    def to_line(self) -> LineElection:
        if self.kind != "line":
            raise DocumentError(f"expected a line election, got kind {self.kind!r}")
        return LineElection(self.voters)

    def to_metric(self) -> MetricElection:
        if self.kind != "metric":
            raise DocumentError(f"expected a metric election, got kind {self.kind!r}")
        return MetricElection(self.voters)

    @classmethod
    def for_line(cls, e: LineElection, beta: float, metadata: dict | None = None):
        return cls("line", beta, tuple(e.positions), dict(metadata or {}))

    @classmethod
    def for_metric(cls, m: MetricElection, beta: float, metadata: dict | None = None):
        return cls("metric", beta, tuple(m.pairs), dict(metadata or {}))


def _require_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DocumentError(f"{where}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise DocumentError(f"{where}: must be finite, got {value!r}")
    return value


def parse_election(text: str) -> ElectionDocument:
    """Parse and validate an election document from JSON text."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as err:
        raise DocumentError(
            f"invalid document syntax: {err.msg} (line {err.lineno}, column {err.colno})"
        ) from None
    if not isinstance(raw, dict):
        raise DocumentError("document root must be an object")

    unknown = set(raw) - {"schema", "kind", "beta", "voters", "metadata"}
    if unknown:
        raise DocumentError(f"unknown field(s): {', '.join(sorted(unknown))}")
    for key in ("schema", "kind", "beta", "voters"):
        if key not in raw:
            raise DocumentError(f"missing required field {key!r}")

    if raw["schema"] != SCHEMA_VERSION:
        raise DocumentError(
            f"schema: unsupported version {raw['schema']!r}, expected {SCHEMA_VERSION}"
        )
    kind = raw["kind"]
    if kind not in _KINDS:
        raise DocumentError(f"kind: must be one of {_KINDS}, got {kind!r}")
    beta = _require_number(raw["beta"], "beta")
    if not 0.0 <= beta <= 1.0:
        raise DocumentError(f"beta: out of range [0, 1]: {beta}")

    voters = raw["voters"]
    if not isinstance(voters, list) or not voters:
        raise DocumentError("voters: expected a non-empty list")
    if kind == "line":
        parsed = tuple(
            _require_number(v, f"voters[{i}]") for i, v in enumerate(voters)
        )
        LineElection(parsed)  # re-checks, raises only on internal inconsistency
    else:
        pairs = []
        for i, v in enumerate(voters):
            if not isinstance(v, list) or len(v) != 2:
                raise DocumentError(
                    f"voters[{i}]: expected a [d_left, d_right] pair, got {v!r}"
                )
            pairs.append(
                (
                    _require_number(v[0], f"voters[{i}][0]"),
                    _require_number(v[1], f"voters[{i}][1]"),
                )
            )
        try:
            MetricElection(pairs)
        except ValueError as err:
            raise DocumentError(f"voters: {err}") from None
        parsed = tuple(pairs)

    metadata = raw.get("metadata", {})
    if not isinstance(metadata, dict):
        raise DocumentError("metadata: expected an object")
    for key, value in metadata.items():
        if not isinstance(key, str) or not isinstance(value, str):
            raise DocumentError(f"metadata[{key!r}]: keys and values must be strings")

    return ElectionDocument(kind, beta, parsed, dict(metadata))


def serialize_election(doc: ElectionDocument) -> str:
    """Render a document as JSON; the inverse of :func:`parse_election`."""
    payload = {
        "schema": SCHEMA_VERSION,
        "kind": doc.kind,
        "beta": doc.beta,
        "voters": [list(v) if isinstance(v, tuple) else v for v in doc.voters],
    }
    if doc.metadata:
        payload["metadata"] = dict(doc.metadata)
    return json.dumps(payload, indent=2) + "\n"
