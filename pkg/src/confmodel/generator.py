"""Generate device configuration commands from a device model.

Each concrete group has an :class:`EmitTemplate` made of blocks (a mode
entry line, body lines, an optional ``exit``).  A line is a sequence of
clauses; a clause renders only when every slot it mentions is populated, so
empty optional slots drop their clause instead of failing the whole
command.
"""
from __future__ import annotations

import re
import string
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Tuple, Union

from .compare import diff_models, models_equal
from .extractor import extract_text
from .mapping import MappingTable
from .metamodel import (DeviceModel, GroupValue, Metamodel, builtin_metamodel, natural_key,
                        validate_model, vendor_of_group)

Slots = Mapping[str, str]


class GenerationError(ValueError):
    pass


class MissingRequiredSlot(GenerationError):
    def __init__(self, group_value: str, item: str):
        self.group_value, self.item = group_value, item
        super().__init__(f"{group_value} lacks required specification item {item!r}")


class UnknownGroup(GenerationError):
    def __init__(self, group_value: str, group: str):
        self.group_value, self.group = group_value, group
        super().__init__(f"no emit template for group {group!r} ({group_value})")


def _placeholders(pattern: str) -> Tuple[str, ...]:
    return tuple(f for _, f, _, _ in string.Formatter().parse(pattern) if f)


@dataclass(frozen=True)
class Clause:
    pattern: str
    unless: Tuple[str, ...] = ()
    when: Optional[Callable[[Slots], bool]] = field(default=None, compare=False)

    @property
    def items(self) -> Tuple[str, ...]:
        return _placeholders(self.pattern)

    def render(self, slots: Slots) -> Optional[str]:
        if any(u in slots for u in self.unless):
            return None
        if any(i not in slots for i in self.items):
            return None
        if self.when is not None and not self.when(slots):
            return None
        return self.pattern.format(**slots)


@dataclass(frozen=True)
class Switch:
    """Maps one slot's value to a fixed text (``true`` -> ``shutdown``)."""
    item: str
    texts: Tuple[Tuple[str, str], ...]

    @property
    def items(self) -> Tuple[str, ...]:
        return (self.item,)

    def render(self, slots: Slots) -> Optional[str]:
        return dict(self.texts).get(slots.get(self.item))


@dataclass(frozen=True)
class Choice:
    """First alternative that renders."""
    options: Tuple[Clause, ...]

    @property
    def items(self) -> Tuple[str, ...]:
        return tuple(dict.fromkeys(i for o in self.options for i in o.items))

    def render(self, slots: Slots) -> Optional[str]:
        for option in self.options:
            text = option.render(slots)
            if text is not None:
                return text
        return None


Part = Union[Clause, Switch, Choice]


@dataclass(frozen=True)
class Line:
    """The head part must render for the line to appear; the rest are optional clauses."""
    parts: Tuple[Part, ...]

    @classmethod
    def of(cls, *parts) -> "Line":
        return cls(tuple(Clause(p) if isinstance(p, str) else p for p in parts))

    @property
    def items(self) -> Tuple[str, ...]:
        return tuple(dict.fromkeys(i for p in self.parts for i in p.items))

    def render(self, slots: Slots) -> Optional[str]:
        head = self.parts[0].render(slots)
        if head is None:
            return None
        return head + "".join(t for t in (p.render(slots) for p in self.parts[1:]) if t)


@dataclass(frozen=True)
class Block:
    category: str
    entry: Optional[Line] = None
    body: Tuple[Line, ...] = ()
    children: Tuple[str, ...] = ()
    closes: bool = False
    when: Optional[Callable[[Slots], bool]] = field(default=None, compare=False)


@dataclass(frozen=True)
class EmitTemplate:
    group: str
    required: Tuple[str, ...]
    optional: Tuple[str, ...]
    blocks: Tuple[Block, ...]

    def lines(self) -> List[Line]:
        return [ln for b in self.blocks for ln in ((b.entry,) if b.entry else ()) + b.body]


@dataclass(frozen=True)
class CommandScript:
    lines: Tuple[str, ...]
    vendor: str = "cisco"

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


# -- built-in templates ----------------------------------------------------------

_SHUTDOWN = Switch("shutdown", (("true", "shutdown"), ("false", "no shutdown")))
_CVS_INTERFACE_ITEMS = ("shutdown", "ipAddress", "subnetMask", "accessListNumber",
                        "accessListDirection")


def _cvs_is_interface(slots: Slots) -> bool:
    return any(i in slots for i in _CVS_INTERFACE_ITEMS)


def _yamaha_default_route(slots: Slots) -> bool:
    return slots.get("destination") == "0.0.0.0" and slots.get("mask") in ("0", "0.0.0.0")


CISCO_CATEGORIES = ("hostname", "vlan_decl", "interface", "static_route", "stp", "ospf", "acl")
YAMAHA_CATEGORIES = ("vlan_decl", "address", "static_route")

CISCO_TEMPLATES: Dict[str, EmitTemplate] = {t.group: t for t in (
    EmitTemplate("Hostname", ("name",), (), (
        Block("hostname", body=(Line.of("hostname {name}"),)),
    )),
    EmitTemplate(
        "CiscoEthernetSetting", ("port",),
        ("stack", "slot", "shutdown", "ipAddress", "subnetMask", "mode", "accessVlan",
         "accessListNumber", "accessListDirection"),
        (Block("interface",
               entry=Line.of("interface fastethernet ", Clause("{stack}/{slot}/"),
                             Clause("{slot}/", unless=("stack",)), "{port}"),
               body=(Line.of(_SHUTDOWN),
                     Line.of("ip address {ipAddress} {subnetMask}"),
                     Line.of("switchport mode {mode}"),
                     Line.of("switchport access vlan {accessVlan}"),
                     Line.of("ip access-group {accessListNumber} {accessListDirection}")),
               closes=True),),
    ),
    EmitTemplate(
        "CiscoVlanSetting", ("vlanNum",), ("vlanName",) + _CVS_INTERFACE_ITEMS,
        (Block("vlan_decl", entry=Line.of("vlan {vlanNum}"), body=(Line.of("name {vlanName}"),),
               closes=True,
               when=lambda s: "vlanName" in s or not _cvs_is_interface(s)),
         Block("interface", entry=Line.of("interface vlan {vlanNum}"),
               body=(Line.of(_SHUTDOWN),
                     Line.of("ip address {ipAddress} {subnetMask}"),
                     Line.of("ip access-group {accessListNumber} {accessListDirection}")),
               closes=True, when=_cvs_is_interface)),
    ),
    EmitTemplate(
        "CiscoStaticRouteSetting", ("destination", "mask", "nextHop"), ("distance",),
        (Block("static_route",
               body=(Line.of("ip route {destination} {mask} {nextHop}", " {distance}"),)),),
    ),
    EmitTemplate(
        "CiscoStpSetting", (), ("mode", "vlanNum", "priority"),
        (Block("stp", body=(Line.of("spanning-tree mode {mode}"),
                            Line.of("spanning-tree vlan {vlanNum} priority {priority}"))),),
    ),
    EmitTemplate(
        "CiscoOspfSetting", ("processId",), ("routerId",),
        (Block("ospf", entry=Line.of("router ospf {processId}"),
               body=(Line.of("router-id {routerId}"),),
               children=("OspfVirtualLink", "OspfNetwork"), closes=True),),
    ),
    EmitTemplate(
        "OspfVirtualLink", ("area", "routerId"), (),
        (Block("ospf", body=(Line.of("area {area} virtual-link {routerId}"),)),),
    ),
    EmitTemplate(
        "OspfNetwork", ("address", "wildcard", "area"), (),
        (Block("ospf", body=(Line.of("network {address} {wildcard} area {area}"),)),),
    ),
    EmitTemplate(
        "CiscoAccessList",
        ("number", "action", "protocol", "sourceAddress", "destinationAddress"),
        ("sourceWildcard", "destinationWildcard", "portOperator", "portNumber"),
        (Block("acl", body=(Line.of(
            "access-list {number} {action} {protocol}",
            " {sourceAddress}", " {sourceWildcard}",
            " {destinationAddress}", " {destinationWildcard}",
            " {portOperator} {portNumber}"),)),),
    ),
)}

YAMAHA_TEMPLATES: Dict[str, EmitTemplate] = {t.group: t for t in (
    EmitTemplate(
        "YamahaEthernetSetting", ("port",), ("ipAddress", "subnetMask"),
        (Block("address", body=(Line.of("ip lan{port} address {ipAddress}/{subnetMask}"),)),),
    ),
    EmitTemplate(
        "YamahaVlanSetting", ("interfaceName",), ("vlanNum", "ipAddress", "subnetMask"),
        (Block("vlan_decl", body=(Line.of("vlan {interfaceName} 802.1q vid={vlanNum}"),)),
         Block("address",
               body=(Line.of("ip {interfaceName} address {ipAddress}/{subnetMask}"),))),
    ),
    EmitTemplate(
        "YamahaStaticRouteSetting", ("destination", "mask", "nextHop"), (),
        (Block("static_route", body=(Line.of(
            "ip route ",
            Choice((Clause("default", when=_yamaha_default_route),
                    Clause("{destination}/{mask}"))),
            " gateway {nextHop}"),)),),
    ),
)}

TEMPLATES = {"cisco": CISCO_TEMPLATES, "yamaha": YAMAHA_TEMPLATES}
CATEGORIES = {"cisco": CISCO_CATEGORIES, "yamaha": YAMAHA_CATEGORIES}
CISCO_PROLOGUE = ("enable", "configure terminal")
CISCO_EPILOGUE = ("exit", "copy running-config startup-config")


def model_vendor(m: DeviceModel) -> str:
    vendors = {vendor_of_group(gv.group) for gv in m.group_values} - {None}
    if len(vendors) > 1:
        raise GenerationError(f"model mixes vendors: {sorted(vendors)}")
    return vendors.pop() if vendors else "cisco"


class Generator:
    def __init__(self, mm: Optional[Metamodel] = None,
                 templates: Optional[Mapping[str, Mapping[str, EmitTemplate]]] = None):
        self.mm = mm or builtin_metamodel()
        self.templates = templates or TEMPLATES

    def _template(self, gv: GroupValue, vendor: str) -> EmitTemplate:
        tpl = self.templates[vendor].get(gv.group)
        if tpl is None:
            raise UnknownGroup(gv.name, gv.group)
        for item in tpl.required:
            if not gv.slots.get(item):
                raise MissingRequiredSlot(gv.name, item)
        return tpl

    def _render_block(self, block: Block, gv: GroupValue, m: DeviceModel, vendor: str,
                      parent: str) -> List[str]:
        lines: List[str] = []
        if block.entry is not None:
            lines.append(block.entry.render(gv.slots))
        lines.extend(t for t in (ln.render(gv.slots) for ln in block.body) if t is not None)
        if block.children:
            kids = [m.get(n) for n in m.neighbours(gv.name) if n != parent]
            for group in block.children:
                for kid in sorted((k for k in kids if k.group == group),
                                  key=lambda k: natural_key(k.name)):
                    tpl = self._template(kid, vendor)
                    for kb in tpl.blocks:
                        lines.extend(self._render_block(kb, kid, m, vendor, gv.name))
        if block.closes:
            lines.append("exit")
        return lines

    def generate(self, m: DeviceModel) -> CommandScript:
        violations = validate_model(m, self.mm)
        if violations:
            raise GenerationError("invalid model: " + "; ".join(map(str, violations)))
        vendor = model_vendor(m)
        config = m.config
        order = {c: i for i, c in enumerate(CATEGORIES[vendor])}
        chunks = []
        for name in m.neighbours(config.name):
            gv = m.get(name)
            tpl = self._template(gv, vendor)
            for bi, block in enumerate(tpl.blocks):
                if block.when is not None and not block.when(gv.slots):
                    continue
                rendered = self._render_block(block, gv, m, vendor, config.name)
                if rendered:
                    key = (order[block.category], gv.group, natural_key(gv.name), bi)
                    chunks.append((key, rendered))
        body = [line for _, lines in sorted(chunks, key=lambda c: c[0]) for line in lines]
        if vendor == "cisco":
            body = list(CISCO_PROLOGUE) + body + list(CISCO_EPILOGUE)
        return CommandScript(tuple(body), vendor)


def generate(m: DeviceModel, mm: Optional[Metamodel] = None,
             templates: Optional[Mapping[str, Mapping[str, EmitTemplate]]] = None) -> CommandScript:
    """Command script for a valid device model, in fixed category order."""
    return Generator(mm, templates).generate(m)


_MODE_ENTRY = re.compile(r"^(configure terminal|interface |router |vlan \d)")


def mode_balanced(script: CommandScript) -> bool:
    """Every mode entered is exited before a sibling mode opens; all modes close."""
    depth = 0
    for line in script.lines:
        if _MODE_ENTRY.match(line):
            if line != "configure terminal" and depth != 1:
                return False
            depth += 1
        elif line == "exit":
            depth -= 1
            if depth < 0:
                return False
    return depth == 0


@dataclass
class RoundTripResult:
    equal: bool
    diff: List[str]
    first: DeviceModel
    second: DeviceModel
    script: CommandScript


def roundtrip_check(config_text: str, vendor: str = "cisco", table: Optional[MappingTable] = None,
                    mm: Optional[Metamodel] = None,
                    templates: Optional[Mapping[str, Mapping[str, EmitTemplate]]] = None
                    ) -> RoundTripResult:
    """extract, generate, re-extract, and compare the two models."""
    first = extract_text(config_text, vendor, table, mm)
    script = generate(first, mm, templates)
    second = extract_text(script.text(), vendor, table, mm)
    equal = models_equal(first, second, mm)
    return RoundTripResult(equal, [] if equal else diff_models(first, second, mm),
                           first, second, script)
