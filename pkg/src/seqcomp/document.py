"""JSON interchange documents for sequence families.

A document looks like::

    {
      "schema_version": "1",
      "q": 3,
      "role": "zccs",
      "claimed_params": {"M": 9, "N": 3, "L": 27, "Z": 9},
      "metadata": {...},
      "sets": [[[0, 1, 2, ...], ...], ...]
    }

``claimed_params`` may be null; ``Z`` is omitted for roles without a zone.
Output is byte-stable: keys are written in a fixed order and every row sits
on its own line.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

from .core import SetFamily
from .errors import SeqCompError

SCHEMA_VERSION = "1"
ROLES = ("css", "escss", "zccs", "mocss", "ccc", "gcp", "raw")


class DocumentError(SeqCompError, ValueError):
    """Malformed or inconsistent family document."""


@dataclass(frozen=True)
class FamilyDocument:
    q: int
    role: str
    sets: list
    claimed_params: dict | None = None
    metadata: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def __post_init__(self):
        if self.schema_version != SCHEMA_VERSION:
            raise DocumentError(f"unsupported schema_version {self.schema_version!r}")
        if self.role not in ROLES:
            raise DocumentError(f"role must be one of {ROLES}, got {self.role!r}")
        if not isinstance(self.q, int) or isinstance(self.q, bool) or self.q < 2:
            raise DocumentError(f"q must be an integer >= 2, got {self.q!r}")
        _check_sets(self.sets, self.q)
        if self.claimed_params is not None:
            _check_claim(self.claimed_params, self.shape)

    @property
    def shape(self) -> tuple[int, int, int]:
        return (len(self.sets), len(self.sets[0]), len(self.sets[0][0]))

    @classmethod
    def from_family(cls, F: SetFamily, role: str, claimed_params=None, metadata=None):
        return cls(
            q=F.q,
            role=role,
            sets=F.tolist(),
            claimed_params=claimed_params,
            metadata=dict(metadata or {}),
        )

    def to_family(self) -> SetFamily:
        return SetFamily.from_array(self.q, self.sets)

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "q": self.q,
            "role": self.role,
            "claimed_params": self.claimed_params,
            "metadata": self.metadata,
            "sets": self.sets,
        }

    def to_json(self) -> str:
        head = {k: v for k, v in self.to_dict().items() if k != "sets"}
        lines = ["{"]
        for key, value in head.items():
            lines.append(f"  {json.dumps(key)}: {json.dumps(value, sort_keys=True)},")
        lines.append('  "sets": [')
        for si, s in enumerate(self.sets):
            lines.append("    [")
            for ri, row in enumerate(s):
                sep = "," if ri < len(s) - 1 else ""
                lines.append(f"      {json.dumps(row)}{sep}")
            lines.append("    ]" + ("," if si < len(self.sets) - 1 else ""))
        lines.append("  ]")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        L = self.shape[2]
        writer.writerow(["set_index", "row_index"] + [f"s{i}" for i in range(L)])
        for si, s in enumerate(self.sets):
            for ri, row in enumerate(s):
                writer.writerow([si, ri] + list(row))
        return buf.getvalue()


def _check_sets(sets, q: int):
    if not isinstance(sets, list) or not sets:
        raise DocumentError("'sets' must be a non-empty list of matrices")
    shape = None
    for si, s in enumerate(sets):
        if not isinstance(s, list) or not s:
            raise DocumentError(f"set {si} must be a non-empty list of rows")
        for ri, row in enumerate(s):
            if not isinstance(row, list) or not row:
                raise DocumentError(f"set {si} row {ri} must be a non-empty list")
            for ci, v in enumerate(row):
                if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < q:
                    raise DocumentError(f"set {si} row {ri} entry {ci} = {v!r} is not in [0, {q})")
        this = (len(s), len(s[0]))
        if any(len(row) != this[1] for row in s):
            raise DocumentError(f"set {si} is not rectangular")
        if shape is None:
            shape = this
        elif this != shape:
            raise DocumentError(f"set {si} has shape {this}, expected {shape}")


def _check_claim(claim: dict, shape):
    if not isinstance(claim, dict):
        raise DocumentError("claimed_params must be an object")
    for key, actual in zip("MNL", shape):
        if key in claim and claim[key] != actual:
            raise DocumentError(f"claimed {key}={claim[key]} but the document has {key}={actual}")
    if "Z" in claim and not 1 <= claim["Z"] <= shape[2]:
        raise DocumentError(f"claimed Z={claim['Z']} outside [1, L={shape[2]}]")


def parse_document(text: str) -> FamilyDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise DocumentError("document must be a JSON object")
    missing = {"q", "role", "sets"} - raw.keys()
    if missing:
        raise DocumentError(f"missing keys {sorted(missing)}")
    return FamilyDocument(
        q=raw["q"],
        role=raw["role"],
        sets=raw["sets"],
        claimed_params=raw.get("claimed_params"),
        metadata=raw.get("metadata") or {},
        schema_version=raw.get("schema_version", SCHEMA_VERSION),
    )


def load_document(path) -> FamilyDocument:
    return parse_document(Path(path).read_text(encoding="utf-8"))
