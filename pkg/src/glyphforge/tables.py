"""Stroke and component count tables.

Each table maps a character to a 32-dimensional count vector: one dimension
per basic stroke class (Chinese) or per basic Korean component (24 classes,
zero-padded to 32). Tables are stored as UTF-8 TSV: optional ``#``-prefixed
header rows, then one row per character with the character followed by the
integer counts.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from . import hangul
from .errors import TableParseError

COUNT_DIMS = 32
COMPONENT_DIMS = 24

# Basic stroke class inventory, in table-column order. The shipped TSV is the
# source of truth for per-character counts; this tuple names its columns.
STROKE_CLASSES = (
    "heng", "ti", "shu", "shugou", "pie", "dian", "na", "henggou",
    "hengzhe", "hengzhegou", "hengpie", "hengzheti", "hengzhewan",
    "hengzhewangou", "hengxiegou", "hengzhezhe", "hengzhezhepie",
    "hengpiewangou", "hengzhezhezhegou", "hengzhezhezhe", "shuti",
    "shuzhe", "shuwan", "shuwangou", "shuzhepie", "shuzhezhegou",
    "shuzhezhe", "piedian", "piezhe", "wangou", "xiegou", "wogou",
)

CountVector = tuple[int, ...]


def _validate_counts(counts: Iterable[int], dims: int) -> CountVector:
    vec = tuple(int(c) for c in counts)
    if len(vec) != dims:
        raise ValueError(f"expected {dims} counts, got {len(vec)}")
    if any(c < 0 for c in vec):
        raise ValueError("counts must be non-negative")
    if not any(vec):
        raise ValueError("at least one count must be positive")
    return vec


@dataclass(frozen=True)
class CountTable:
    """Association from codepoint to a 32-dim count vector."""

    entries: Mapping[int, CountVector]
    kind: str = "stroke"
    source: str | None = field(default=None, compare=False)

    def __contains__(self, codepoint: int) -> bool:
        return codepoint in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def counts(self, codepoint: int) -> CountVector:
        try:
            return self.entries[codepoint]
        except KeyError:
            raise KeyError(f"U+{codepoint:04X} not in {self.kind} table") from None

    def total(self, codepoint: int) -> int:
        return sum(self.counts(codepoint))

    def codepoints(self) -> list[int]:
        return sorted(self.entries)


class StrokeTable(CountTable):
    pass


class ComponentTable(CountTable):
    pass


def _parse_rows(path: str | Path, value_dims: int):
    rows: dict[int, CountVector] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != value_dims + 1:
            raise TableParseError(
                f"expected 1 character + {value_dims} counts, got {len(cols)} columns",
                line=lineno,
            )
        char = cols[0]
        if len(char) != 1:
            raise TableParseError(f"first column must be a single character, got {char!r}", line=lineno)
        try:
            counts = [int(c) for c in cols[1:]]
        except ValueError:
            raise TableParseError(f"non-integer count in row for {char!r}", line=lineno) from None
        codepoint = ord(char)
        if codepoint in rows:
            raise TableParseError(f"duplicate character {char!r}", line=lineno)
        try:
            rows[codepoint] = _validate_counts(counts, value_dims)
        except ValueError as exc:
            raise TableParseError(str(exc), line=lineno) from None
    return rows


def load_stroke_table(path: str | Path) -> StrokeTable:
    """Parse a 32-column stroke count TSV."""
    rows = _parse_rows(path, COUNT_DIMS)
    return StrokeTable(entries=rows, kind="stroke", source=str(path))


def load_component_table(path: str | Path) -> ComponentTable:
    """Parse a 24-column component count TSV; entries are zero-padded to 32 dims."""
    rows = _parse_rows(path, COMPONENT_DIMS)
    padding = (0,) * (COUNT_DIMS - COMPONENT_DIMS)
    padded = {cp: vec + padding for cp, vec in rows.items()}
    return ComponentTable(entries=padded, kind="component", source=str(path))


def load_table(path: str | Path) -> CountTable:
    """Load a table, inferring stroke vs. component layout from the column count."""
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        ncols = len(line.split("\t"))
        if ncols == COUNT_DIMS + 1:
            return load_stroke_table(path)
        if ncols == COMPONENT_DIMS + 1:
            return load_component_table(path)
        raise TableParseError(f"unrecognized column count {ncols}")
    raise TableParseError("table has no data rows")


def build_component_table(codepoints: Iterable[int]) -> ComponentTable:
    """Derive a component table for Hangul syllables from Unicode arithmetic."""
    padding = (0,) * (COUNT_DIMS - COMPONENT_DIMS)
    entries = {cp: hangul.component_counts(cp) + padding for cp in codepoints}
    return ComponentTable(entries=entries, kind="component", source=None)


def save_table(table: CountTable, path: str | Path, header: str | None = None) -> None:
    dims = COMPONENT_DIMS if table.kind == "component" else COUNT_DIMS
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    for cp in table.codepoints():
        counts = table.entries[cp][:dims]
        lines.append("\t".join([chr(cp), *map(str, counts)]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def bundled_table_path(name: str) -> Path:
    """Path of a table shipped with the package (``chinese_strokes_32.tsv`` or
    ``korean_components_24.tsv``)."""
    resource = importlib.resources.files("glyphforge.resources") / name
    return Path(str(resource))
