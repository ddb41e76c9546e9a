"""Alignment and label-list file parsing and writing.

Two alignment formats are supported: a simple TSV format used for fixtures
and tests, and the subset of the Alignment XML interchange format that OAEI
tools emit (``Cell`` elements with ``entity1``/``entity2`` resources).
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import List, Tuple

from .errors import (
    ConfidenceOutOfRange,
    DuplicateId,
    MalformedLine,
    MissingEntity,
    XmlSyntax,
)
from .model import Alignment, Correspondence, canonicalize_alignment


@dataclass(frozen=True)
class LabelTable:
    """Ordered (id, label) rows for one ontology's concepts."""

    rows: Tuple[Tuple[str, str], ...]

    def __len__(self) -> int:
        return len(self.rows)


def _data_lines(data: bytes):
    """Yield (line_no, text) for non-blank, non-comment lines."""
    text = data.decode("utf-8")
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield line_no, line.rstrip("\n")


def parse_alignment_tsv(data: bytes, system_name: str) -> Alignment:
    """Parse ``source<TAB>target[<TAB>relation[<TAB>confidence]]`` lines."""
    out = []
    for line_no, line in _data_lines(data):
        fields = line.split("\t")
        if len(fields) < 2:
            raise MalformedLine(line_no, "expected >=2 tab-separated fields")
        if len(fields) > 4:
            raise MalformedLine(line_no, "expected <=4 tab-separated fields")
        source, target = fields[0], fields[1]
        relation = fields[2] if len(fields) >= 3 else "="
        if len(fields) == 4:
            try:
                confidence = float(fields[3])
            except ValueError:
                raise MalformedLine(line_no, f"bad confidence {fields[3]!r}")
            if not 0.0 <= confidence <= 1.0:
                raise ConfidenceOutOfRange(line_no, confidence)
        else:
            confidence = 1.0
        if not source.strip() or not target.strip():
            raise MalformedLine(line_no, "empty source or target")
        out.append(Correspondence(source, target, relation, confidence))
    return canonicalize_alignment(out, system_name)


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _resource(elem) -> str | None:
    for key, value in elem.attrib.items():
        if _local(key) == "resource":
            return value
    return None


def parse_alignment_xml(data: bytes, system_name: str) -> Alignment:
    """Parse the Alignment-format subset: Cell/entity1/entity2/measure/relation."""
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise XmlSyntax(exc.position, str(exc)) from exc
    out = []
    cell_index = 0
    for elem in root.iter():
        if _local(elem.tag) != "Cell":
            continue
        entity1 = entity2 = None
        measure = 1.0
        relation = "="
        for child in elem:
            name = _local(child.tag)
            if name == "entity1":
                entity1 = _resource(child)
            elif name == "entity2":
                entity2 = _resource(child)
            elif name == "measure":
                measure = float(child.text.strip())
            elif name == "relation":
                relation = (child.text or "=").strip()
        if not entity1 or not entity2:
            raise MissingEntity(cell_index)
        out.append(Correspondence(entity1, entity2, relation, measure))
        cell_index += 1
    return canonicalize_alignment(out, system_name)


def parse_label_list(data: bytes) -> LabelTable:
    """Parse ``id<TAB>label`` lines into an ordered table with unique ids."""
    rows: List[Tuple[str, str]] = []
    seen = set()
    for line_no, line in _data_lines(data):
        fields = line.split("\t")
        if len(fields) != 2:
            raise MalformedLine(line_no, "expected exactly 2 tab-separated fields")
        id_, label = fields[0].strip(), fields[1].strip()
        if not id_ or not label:
            raise MalformedLine(line_no, "empty id or label")
        if id_ in seen:
            raise DuplicateId(id_)
        seen.add(id_)
        rows.append((id_, label))
    return LabelTable(rows=tuple(rows))


def _format_confidence(value: float) -> str:
    if value == int(value):
        return str(int(value))
    return repr(value)


def write_alignment_tsv(alignment: Alignment) -> bytes:
    """Serialize an alignment; inverse of parse_alignment_tsv on canonical input."""
    lines = []
    for c in sorted(alignment, key=lambda c: (c.source, c.target)):
        lines.append(
            f"{c.source}\t{c.target}\t{c.relation}\t{_format_confidence(c.confidence)}\n"
        )
    return "".join(lines).encode("utf-8")
