"""Canonical naming and slot-level comparison of device models."""
from __future__ import annotations

from typing import Dict, List, Optional, Set, Tuple

from .metamodel import DeviceModel, GroupValue, Metamodel, builtin_metamodel


def _build(name: str, m: DeviceModel, slots: Dict[str, Dict[str, str]], visited: Set[str],
           parent: Optional[str]) -> Tuple[tuple, List[Tuple[str, Optional[str]]]]:
    """Signature of the subtree under ``name`` and its nodes in canonical pre-order."""
    kids = [k for k in m.neighbours(name) if k not in visited and k in slots]
    visited.update(kids)
    built = sorted((_build(k, m, slots, visited, name) for k in kids), key=lambda b: b[0])
    group = m.get(name).group
    sig = (group, tuple(sorted(slots[name].items())), tuple(b[0] for b in built))
    order: List[Tuple[str, Optional[str]]] = [(name, parent)]
    for _, sub in built:
        order.extend(sub)
    return sig, order


def canonicalize(m: DeviceModel, mm: Optional[Metamodel] = None,
                 configurable_only: bool = True) -> DeviceModel:
    """Rename group values deterministically from their content.

    Starting from Config, linked group values are ordered by a content
    signature (group, slots, linked descendants) and renamed
    ``<abbrev><n>``; links are re-oriented parent to child.  With
    ``configurable_only``, inventory items no command can set (such as the
    hardware model) are dropped.
    """
    mm = mm or builtin_metamodel()
    slots: Dict[str, Dict[str, str]] = {}
    for gv in m.group_values:
        keep = dict(gv.slots)
        if configurable_only and mm.has_group(gv.group):
            closure = mm.items(gv.group)
            keep = {k: v for k, v in keep.items() if k not in closure or closure[k].configurable}
        slots[gv.name] = keep

    visited: Set[str] = set()
    trees = []
    for gv in sorted(m.group_values, key=lambda g: g.group != "Config"):
        if gv.name not in visited:
            visited.add(gv.name)
            trees.append(_build(gv.name, m, slots, visited, None))
    # Config first, then any unreachable group values by content
    trees = trees[:1] + sorted(trees[1:], key=lambda t: t[0])

    counters: Dict[str, int] = {}
    renamed: Dict[str, str] = {}
    out_gvs: List[GroupValue] = []
    out_links: List[Tuple[str, str]] = []
    for _, order in trees:
        for name, parent in order:
            gv = m.get(name)
            abbrev = mm.group(gv.group).abbrev if mm.has_group(gv.group) else ""
            counters[gv.group] = counters.get(gv.group, 0) + 1
            renamed[name] = f"{abbrev or gv.group}{counters[gv.group]}"
            out_gvs.append(GroupValue(renamed[name], gv.group, slots[name]))
            if parent is not None:
                out_links.append((renamed[parent], renamed[name]))
    return DeviceModel(tuple(out_gvs), tuple(out_links)).normalized()


def models_equal(a: DeviceModel, b: DeviceModel, mm: Optional[Metamodel] = None) -> bool:
    return canonicalize(a, mm) == canonicalize(b, mm)


def diff_models(a: DeviceModel, b: DeviceModel, mm: Optional[Metamodel] = None) -> List[str]:
    """Slot-level differences between two models after canonical renaming."""
    ca, cb = canonicalize(a, mm), canonicalize(b, mm)
    ga = {gv.name: gv for gv in ca.group_values}
    gb = {gv.name: gv for gv in cb.group_values}
    out: List[str] = []
    for name in sorted(set(ga) | set(gb)):
        x, y = ga.get(name), gb.get(name)
        if x is None or y is None:
            present = x or y
            side = "first" if x else "second"
            out.append(f"{name}:{present.group} only in {side} model")
            continue
        if x.group != y.group:
            out.append(f"{name}: group {x.group} != {y.group}")
            continue
        for item in sorted(set(x.slots) | set(y.slots)):
            if x.slots.get(item) != y.slots.get(item):
                out.append(f"{name}.{item}: {x.slots.get(item)!r} != {y.slots.get(item)!r}")
    for link in sorted(set(ca.links) ^ set(cb.links)):
        side = "first" if link in ca.links else "second"
        out.append(f"link {link[0]}-{link[1]} only in {side} model")
    return out
