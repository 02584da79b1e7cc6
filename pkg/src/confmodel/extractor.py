"""Extract a device configuration model from a parse tree.

The tree is walked depth-first in pre-order.  Reaching a subtree root named
in the mapping table opens a new group value (linked to the group value of
the nearest enclosing root); reaching a target's parent applies the rules
for that (root, parent, target) key to the parent's direct children.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .mapping import MappingRule, MappingTable, builtin_table
from .metamodel import DeviceModel, GroupValue, Metamodel, builtin_metamodel
from .parser import Node, ParseTree, RuleNode, TokenLeaf, parse_text

log = logging.getLogger(__name__)


class ExtractionError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(where + message)


class SlotConflict(ExtractionError):
    def __init__(self, group_value: str, item: str, old: str, new: str, line=None, column=None):
        self.group_value, self.item, self.old, self.new = group_value, item, old, new
        super().__init__(f"slot {group_value}.{item} already holds {old!r}, refusing {new!r}",
                         line, column)


class NoOpenGroup(ExtractionError):
    def __init__(self, rule: MappingRule, line=None, column=None):
        self.rule = rule
        super().__init__(f"rule {'/'.join(rule.key)} ({rule.presence}) fired with no open "
                         f"{rule.group} group value", line, column)


def _position(node: Node) -> Tuple[Optional[int], Optional[int]]:
    tok = node.token if isinstance(node, TokenLeaf) else node.first_token()
    return (tok.line, tok.column) if tok else (None, None)


def _node_text(node: Node) -> str:
    # multi-word tokens ("dynamic auto") are stored with single blanks
    return " ".join(node.text.split())


@dataclass
class ExtractionContext:
    # (rule name, group value name) of each open subtree root, innermost last
    active_roots: List[Tuple[str, str]] = field(default_factory=list)
    name_counters: Dict[str, int] = field(default_factory=dict)
    pending_absence: Set[Tuple[int, Tuple[str, str, str]]] = field(default_factory=set)
    group_values: Dict[str, GroupValue] = field(default_factory=dict)
    links: List[Tuple[str, str]] = field(default_factory=list)


class Extractor:
    def __init__(self, table: MappingTable, mm: Optional[Metamodel] = None):
        self.table = table
        self.mm = mm or builtin_metamodel()
        self.roots = table.roots()
        self.by_parent: Dict[str, List[MappingRule]] = {}
        for rule in table.rules:
            self.by_parent.setdefault(rule.parent, []).append(rule)

    def extract(self, tree: ParseTree) -> DeviceModel:
        ctx = ExtractionContext()
        self._visit(tree.root, ctx, is_root=True)
        gvs = tuple(GroupValue(gv.name, gv.group, gv.slots) for gv in ctx.group_values.values())
        return DeviceModel(gvs, tuple(ctx.links))

    def _new_group_value(self, group: str, ctx: ExtractionContext) -> GroupValue:
        abbrev = self.mm.group(group).abbrev or group
        n = ctx.name_counters.get(group, 0) + 1
        ctx.name_counters[group] = n
        gv = GroupValue(f"{abbrev}{n}", group, {})
        ctx.group_values[gv.name] = gv
        return gv

    def _open(self, node: RuleNode, ctx: ExtractionContext, is_root: bool) -> bool:
        if is_root:
            group = "Config"
        elif node.name in self.roots:
            group = self.roots[node.name]
        else:
            return False
        if any(name == node.name for name, _ in ctx.active_roots):
            raise ExtractionError(f"subtree root {node.name!r} nested inside itself",
                                  *_position(node))
        gv = self._new_group_value(group, ctx)
        if ctx.active_roots:
            ctx.links.append((ctx.active_roots[-1][1], gv.name))
        ctx.active_roots.append((node.name, gv.name))
        return True

    def _store(self, rule: MappingRule, value: str, node: Node, ctx: ExtractionContext):
        owner = next((gv for name, gv in reversed(ctx.active_roots) if name == rule.subtree_root),
                     None)
        if owner is None or ctx.group_values[owner].group != rule.group:
            raise NoOpenGroup(rule, *_position(node))
        slots = ctx.group_values[owner].slots
        old = slots.get(rule.item)
        if old is not None and old != value:
            raise SlotConflict(owner, rule.item, old, value, *_position(node))
        slots[rule.item] = value

    def _visit(self, node: Node, ctx: ExtractionContext, is_root: bool = False):
        if isinstance(node, TokenLeaf):
            return
        opened = self._open(node, ctx, is_root)
        open_names = {name for name, _ in ctx.active_roots}

        absent: List[MappingRule] = []
        for rule in self.by_parent.get(node.name, ()):
            if rule.subtree_root not in open_names:
                continue
            matches = [c for c in node.children if c.name == rule.target]
            if rule.presence == "Present":
                for child in matches:
                    self._store(rule, rule.rewrite(_node_text(child)), child, ctx)
            elif not matches:
                # resolved once the parent's subtree has been searched
                ctx.pending_absence.add((id(node), rule.key))
                absent.append(rule)

        for child in node.children:
            self._visit(child, ctx)

        for rule in absent:
            ctx.pending_absence.discard((id(node), rule.key))
            self._store(rule, rule.replaced, node, ctx)
        if opened:
            ctx.active_roots.pop()


def extract(tree: ParseTree, table: Optional[MappingTable] = None,
            mm: Optional[Metamodel] = None) -> DeviceModel:
    """Extract the device configuration model of one parse tree."""
    table = table or builtin_table(tree.vendor)
    return Extractor(table, mm).extract(tree)


def extract_text(text: str, vendor: str = "cisco", table: Optional[MappingTable] = None,
                 mm: Optional[Metamodel] = None) -> DeviceModel:
    return extract(parse_text(text, vendor), table, mm)


def device_name(model: DeviceModel, fallback: str) -> str:
    for gv in model.by_group("Hostname"):
        if gv.slots.get("name"):
            return gv.slots["name"]
    return fallback


@dataclass
class ExtractResult:
    path: str
    vendor: str
    name: str
    model: Optional[DeviceModel] = None
    error: Optional[Exception] = None

    @property
    def ok(self) -> bool:
        return self.error is None


def extract_multi(inputs: Iterable[Tuple[str, str]], table: Optional[MappingTable] = None,
                  mm: Optional[Metamodel] = None, max_workers: Optional[int] = None
                  ) -> List[ExtractResult]:
    """Extract one model per (path, vendor) input; failures are reported per file."""
    inputs = [(str(p), v) for p, v in inputs]

    def run(item):
        path, vendor = item
        stem = Path(path).stem
        try:
            text = Path(path).read_text(encoding="utf-8")
            model = extract_text(text, vendor, table, mm)
        except (OSError, UnicodeDecodeError, ValueError) as exc:
            log.debug("extraction failed for %s: %s", path, exc)
            return ExtractResult(path, vendor, stem, None, exc)
        return ExtractResult(path, vendor, device_name(model, stem), model)

    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(run, inputs))


def model_stats(m: DeviceModel, mm: Optional[Metamodel] = None) -> Dict[str, int]:
    """Slot, item-kind, group value and link counts of one model.

    Item kinds are resolved through the group lineage, so an inherited item
    counts once no matter which subgroup populated it.
    """
    mm = mm or builtin_metamodel()
    return {
        "slotValueCount": sum(len(gv.slots) for gv in m.group_values),
        "distinctItemKinds": len(item_kinds(m, mm)),
        "groupValueCount": len(m.group_values),
        "linkCount": len(m.links),
    }


def item_kinds(m: DeviceModel, mm: Optional[Metamodel] = None) -> Set[Tuple[str, str]]:
    mm = mm or builtin_metamodel()
    kinds = set()
    for gv in m.group_values:
        for item in gv.slots:
            owner = mm.item_owner(gv.group, item) if mm.has_group(gv.group) else None
            kinds.add((owner or gv.group, item))
    return kinds


def aggregate_stats(models: Sequence[DeviceModel], mm: Optional[Metamodel] = None) -> Dict[str, int]:
    mm = mm or builtin_metamodel()
    kinds: Set[Tuple[str, str]] = set()
    for m in models:
        kinds |= item_kinds(m, mm)
    per = [model_stats(m, mm) for m in models]
    return {
        "deviceCount": len(models),
        "slotValueCount": sum(s["slotValueCount"] for s in per),
        "distinctItemKinds": len(kinds),
        "groupValueCount": sum(s["groupValueCount"] for s in per),
        "linkCount": sum(s["linkCount"] for s in per),
    }
