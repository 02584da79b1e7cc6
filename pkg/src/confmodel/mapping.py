"""Specification item / syntax element mapping tables.

A table is an 8-column TSV (header required)::

    subtree_root  parent  target  presence  original  replaced  group  item

Lines starting with ``#`` are comments.  Rows keep their file order.
"""
from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Pattern, Sequence, Tuple

from .metamodel import Metamodel, builtin_metamodel, vendor_of_group

COLUMNS = ("subtree_root", "parent", "target", "presence", "original", "replaced", "group", "item")
PRESENCE = ("Present", "Absent")

_DATA = Path(__file__).with_name("data")


@dataclass(frozen=True)
class MappingRule:
    subtree_root: str
    parent: str
    target: str
    presence: str
    original: str
    replaced: str
    group: str
    item: str
    line: int = field(default=0, compare=False)

    @property
    def key(self) -> Tuple[str, str, str]:
        return (self.subtree_root, self.parent, self.target)

    @property
    def pattern(self) -> Optional[Pattern]:
        return re.compile(self.original) if self.original else None

    def rewrite(self, text: str) -> str:
        """Apply the rule's full-match substitution; no ``original`` passes text through."""
        if not self.original:
            return text
        m = re.fullmatch(self.original, text)
        return m.expand(self.replaced) if m else text


@dataclass(frozen=True)
class MappingTable:
    rules: Tuple[MappingRule, ...]
    vendor: str = "cisco"

    def roots(self) -> Dict[str, str]:
        """Subtree root rule name -> the group it opens (first row wins)."""
        out: Dict[str, str] = {}
        for r in self.rules:
            out.setdefault(r.subtree_root, r.group)
        return out

    def rules_for(self, root: str, parent: str) -> List[MappingRule]:
        return [r for r in self.rules if r.subtree_root == root and r.parent == parent]


class MappingError(ValueError):
    def __init__(self, diagnostics: Sequence[str], source: str = ""):
        self.diagnostics = list(diagnostics)
        prefix = f"{source}: " if source else ""
        super().__init__(prefix + "; ".join(self.diagnostics))


def validate_rules(rules: Sequence[MappingRule], mm: Metamodel) -> List[str]:
    diags: List[str] = []
    for r in rules:
        at = f"at line {r.line}"
        if r.presence not in PRESENCE:
            diags.append(f"bad presence {r.presence!r} {at} (expected Present or Absent)")
        if r.presence == "Present" and bool(r.original) != bool(r.replaced):
            diags.append(f"Present rule needs both or neither of original/replaced {at}")
        if r.presence == "Absent" and not r.replaced:
            diags.append(f"Absent rule needs a replacement value {at}")
        if r.original:
            try:
                re.compile(r.original)
            except re.error as exc:
                diags.append(f"bad regex {r.original!r} {at}: {exc}")
        if not mm.has_group(r.group):
            diags.append(f"unknown specification item group {r.group!r} {at}")
        elif r.item not in mm.items(r.group):
            diags.append(f"unknown specification item {r.item!r} in group {r.group!r} {at}")

    seen: Dict[Tuple[Tuple[str, str, str], str], int] = {}
    for r in rules:
        k = (r.key, r.presence)
        if k in seen:
            diags.append(f"duplicate {r.presence} rule for {'/'.join(r.key)} at line {r.line} "
                         f"(first at line {seen[k]})")
        else:
            seen[k] = r.line
    for r in rules:
        if r.presence == "Absent" and (r.key, "Present") not in seen:
            diags.append(f"orphan Absent rule for {'/'.join(r.key)} at line {r.line}")

    opened: Dict[str, MappingRule] = {}
    for r in rules:
        first = opened.setdefault(r.subtree_root, r)
        if first.group != r.group:
            diags.append(f"subtree root {r.subtree_root!r} maps to {r.group!r} at line {r.line} "
                         f"but to {first.group!r} at line {first.line}")
    return diags


def loads_mapping(text: str, vendor: Optional[str] = None, mm: Optional[Metamodel] = None,
                  source: str = "") -> MappingTable:
    mm = mm or builtin_metamodel()
    diags: List[str] = []
    rules: List[MappingRule] = []
    header_seen = False
    reader = csv.reader(io.StringIO(text), delimiter="\t", quoting=csv.QUOTE_NONE)
    for lineno, row in enumerate(reader, 1):
        if not row or not "".join(row).strip() or row[0].startswith("#"):
            continue
        if not header_seen:
            if tuple(c.strip() for c in row) != COLUMNS:
                diags.append(f"bad header at line {lineno}: expected {' '.join(COLUMNS)}")
            header_seen = True
            continue
        if len(row) != len(COLUMNS):
            diags.append(f"bad column count {len(row)} at line {lineno} (expected {len(COLUMNS)})")
            continue
        rules.append(MappingRule(*(c.strip() for c in row), line=lineno))
    if not header_seen:
        diags.append("missing header row")
    diags.extend(validate_rules(rules, mm))
    if diags:
        raise MappingError(diags, source)
    if vendor is None:
        vendors = {vendor_of_group(r.group) for r in rules} - {None}
        vendor = vendors.pop() if len(vendors) == 1 else "cisco"
    return MappingTable(tuple(rules), vendor)


def load_mapping(path, vendor: Optional[str] = None, mm: Optional[Metamodel] = None) -> MappingTable:
    path = Path(path)
    return loads_mapping(path.read_text(encoding="utf-8"), vendor, mm, source=str(path))


def dump_mapping(table: MappingTable) -> str:
    out = io.StringIO()
    out.write("\t".join(COLUMNS) + "\n")
    for r in table.rules:
        out.write("\t".join((r.subtree_root, r.parent, r.target, r.presence,
                             r.original, r.replaced, r.group, r.item)) + "\n")
    return out.getvalue()


_BUILTIN_TABLES: Dict[str, MappingTable] = {}


def builtin_table(vendor: str) -> MappingTable:
    if vendor not in _BUILTIN_TABLES:
        _BUILTIN_TABLES[vendor] = load_mapping(_DATA / f"{vendor}_mapping.tsv", vendor)
    return _BUILTIN_TABLES[vendor]


def builtin_cisco_table() -> MappingTable:
    return builtin_table("cisco")


def builtin_yamaha_table() -> MappingTable:
    return builtin_table("yamaha")
