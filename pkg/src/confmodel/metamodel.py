"""Network configuration metamodel and device configuration models.

The metamodel is the class-level schema: specification item groups, their
items, vendor generalizations and associations.  A :class:`DeviceModel` is
one device's instance model (group values, slot values and links).
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

VALUE_KINDS = ("string", "integer", "boolean", "ip-address", "ip-mask")

_DOTTED = re.compile(r"^(\d{1,3})\.(\d{1,3})\.(\d{1,3})\.(\d{1,3})$")


def _is_dotted_quad(value: str) -> bool:
    m = _DOTTED.match(value)
    return bool(m) and all(int(octet) <= 255 for octet in m.groups())


def value_conforms(kind: str, value: str) -> bool:
    """Lexical check of a slot value against a value kind."""
    if kind == "string":
        return value != ""
    if kind == "integer":
        return value.isdigit()
    if kind == "boolean":
        return value in ("true", "false")
    if kind == "ip-address":
        return _is_dotted_quad(value)
    if kind == "ip-mask":
        # dotted masks/wildcards, or a prefix length ("/24" style vendors)
        if value.isdigit():
            return int(value) <= 32
        return _is_dotted_quad(value)
    raise ValueError(f"unknown value kind {kind!r}")


@dataclass(frozen=True)
class ItemDef:
    name: str
    kind: str = "string"
    # Inventory facts (e.g. the hardware model) have no configuration command.
    configurable: bool = True

    def __post_init__(self):
        if self.kind not in VALUE_KINDS:
            raise ValueError(f"item {self.name!r}: unknown value kind {self.kind!r}")


@dataclass(frozen=True)
class GroupDef:
    name: str
    items: Tuple[ItemDef, ...] = ()
    abstract: bool = False
    abbrev: str = ""


@dataclass(frozen=True)
class Association:
    group_a: str
    group_b: str
    multiplicity_a: str = "1"
    multiplicity_b: str = "0..*"


@dataclass(frozen=True)
class Metamodel:
    groups: Tuple[GroupDef, ...]
    generalizations: Tuple[Tuple[str, str], ...] = ()
    associations: Tuple[Association, ...] = ()

    def __post_init__(self):
        names = [g.name for g in self.groups]
        dup = {n for n in names if names.count(n) > 1}
        if dup:
            raise ValueError(f"duplicate group names: {sorted(dup)}")
        known = set(names)
        for sub, sup in self.generalizations:
            if sub not in known or sup not in known:
                raise ValueError(f"generalization ({sub}, {sup}) references an undefined group")
        for assoc in self.associations:
            for end in (assoc.group_a, assoc.group_b):
                if end not in known:
                    raise ValueError(f"association endpoint {end!r} is not a defined group")
        for group in names:
            self.lineage(group)  # raises on cycles
        for group in self.groups:
            seen: Dict[str, str] = {}
            for owner in self.lineage(group.name):
                for item in self.group(owner).items:
                    if item.name in seen:
                        raise ValueError(
                            f"item {item.name!r} of {group.name} defined in both "
                            f"{seen[item.name]} and {owner}"
                        )
                    seen[item.name] = owner

    @cached_property
    def _by_name(self) -> Dict[str, GroupDef]:
        return {g.name: g for g in self.groups}

    def has_group(self, name: str) -> bool:
        return name in self._by_name

    def group(self, name: str) -> GroupDef:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"unknown specification item group {name!r}") from None

    def supergroups(self, name: str) -> List[str]:
        return [sup for sub, sup in self.generalizations if sub == name]

    def lineage(self, name: str) -> List[str]:
        """The group followed by all its (transitive) supergroups, nearest first."""
        order: List[str] = []
        stack = [(name, ())]
        while stack:
            current, path = stack.pop()
            if current in path:
                raise ValueError(f"generalization cycle through {current!r}")
            if current not in order:
                order.append(current)
            for sup in reversed(self.supergroups(current)):
                stack.append((sup, path + (current,)))
        return order

    def items(self, name: str) -> Dict[str, ItemDef]:
        """Item closure of a group, inherited items included."""
        closure: Dict[str, ItemDef] = {}
        for owner in self.lineage(name):
            for item in self.group(owner).items:
                closure.setdefault(item.name, item)
        return closure

    def item_owner(self, group: str, item: str) -> Optional[str]:
        """Name of the group in ``group``'s lineage that defines ``item``."""
        for owner in self.lineage(group):
            if any(i.name == item for i in self.group(owner).items):
                return owner
        return None

    def associated(self, group_a: str, group_b: str) -> bool:
        lin_a, lin_b = set(self.lineage(group_a)), set(self.lineage(group_b))
        for assoc in self.associations:
            if assoc.group_a in lin_a and assoc.group_b in lin_b:
                return True
            if assoc.group_a in lin_b and assoc.group_b in lin_a:
                return True
        return False


@dataclass(frozen=True)
class GroupValue:
    name: str
    group: str
    slots: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "slots", dict(self.slots))

    def __str__(self):
        return f"{self.name}:{self.group}"


def natural_key(name: str):
    return [int(part) if part.isdigit() else part for part in re.split(r"(\d+)", name)]


@dataclass(frozen=True)
class DeviceModel:
    group_values: Tuple[GroupValue, ...] = ()
    links: Tuple[Tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "group_values", tuple(self.group_values))
        object.__setattr__(self, "links", tuple(tuple(link) for link in self.links))

    def get(self, name: str) -> GroupValue:
        for gv in self.group_values:
            if gv.name == name:
                return gv
        raise KeyError(name)

    def by_group(self, group: str) -> List[GroupValue]:
        return [gv for gv in self.group_values if gv.group == group]

    @property
    def config(self) -> Optional[GroupValue]:
        configs = self.by_group("Config")
        return configs[0] if configs else None

    def neighbours(self, name: str) -> List[str]:
        out = []
        for a, b in self.links:
            if a == name:
                out.append(b)
            elif b == name:
                out.append(a)
        return out

    def normalized(self) -> "DeviceModel":
        """Same model with group values ordered by name and links sorted."""
        gvs = sorted(self.group_values, key=lambda gv: natural_key(gv.name))
        links = sorted(self.links, key=lambda l: (natural_key(l[0]), natural_key(l[1])))
        return DeviceModel(tuple(gvs), tuple(links))


# -- validation ---------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    code: str
    element: str
    message: str

    def __str__(self):
        return f"{self.code}({self.element}): {self.message}"


def validate_model(m: DeviceModel, mm: Metamodel) -> List[Violation]:
    """Check every model-level invariant; an empty list means valid."""
    out: List[Violation] = []
    counts: Dict[str, int] = {}
    for gv in m.group_values:
        counts[gv.name] = counts.get(gv.name, 0) + 1
    for name, n in counts.items():
        if n > 1:
            out.append(Violation("DuplicateGroupValueName", name,
                                 f"group value name {name!r} used {n} times"))

    configs = m.by_group("Config")
    if len(configs) != 1:
        out.append(Violation("ConfigCount", "Config",
                             f"expected exactly one Config group value, found {len(configs)}"))

    groups: Dict[str, str] = {}
    for gv in m.group_values:
        groups.setdefault(gv.name, gv.group)
        if not mm.has_group(gv.group):
            out.append(Violation("UnknownGroup", gv.name,
                                 f"unknown specification item group {gv.group!r}"))
            continue
        if mm.group(gv.group).abstract:
            out.append(Violation("AbstractGroup", gv.name,
                                 f"group {gv.group!r} is abstract and cannot be instantiated"))
        closure = mm.items(gv.group)
        for item, value in gv.slots.items():
            if item not in closure:
                out.append(Violation("UnknownItem", gv.name,
                                     f"{gv.group} has no specification item {item!r}"))
            elif not isinstance(value, str) or not value_conforms(closure[item].kind, value):
                out.append(Violation("BadSlotValue", gv.name,
                                     f"{item}={value!r} is not a valid {closure[item].kind}"))

    for a, b in m.links:
        label = f"{a}-{b}"
        missing = [n for n in (a, b) if n not in groups]
        if missing:
            out.append(Violation("DanglingLink", label,
                                 f"link endpoint {missing[0]!r} names no group value"))
            continue
        ga, gb = groups[a], groups[b]
        if not (mm.has_group(ga) and mm.has_group(gb)) or not mm.associated(ga, gb):
            out.append(Violation("IllegalLink", label,
                                 f"no association between {ga} and {gb}"))
    return out


# -- serialization --------------------------------------------------------------

class ModelFormatError(ValueError):
    """Malformed or schema-violating model document."""

    def __init__(self, reason: str, line: Optional[int] = None,
                 column: Optional[int] = None, path: str = ""):
        self.reason = reason
        self.line = line
        self.column = column
        self.path = path
        where = f"{line}:{column}: " if line is not None else ""
        at = f" at {path}" if path else ""
        super().__init__(f"{where}{reason}{at}")


def model_to_dict(m: DeviceModel) -> dict:
    n = m.normalized()
    return {
        "groupValues": [
            {"name": gv.name, "group": gv.group, "slots": dict(sorted(gv.slots.items()))}
            for gv in n.group_values
        ],
        "links": [list(link) for link in n.links],
    }


def serialize_model(m: DeviceModel) -> str:
    return json.dumps(model_to_dict(m), indent=2, ensure_ascii=False) + "\n"


def _expect(cond: bool, reason: str, path: str):
    if not cond:
        raise ModelFormatError(reason, path=path)


def model_from_dict(doc, mm: Optional[Metamodel] = None) -> DeviceModel:
    mm = mm or builtin_metamodel()
    _expect(isinstance(doc, dict), "model document must be an object", "$")
    extra = set(doc) - {"groupValues", "links"}
    _expect(not extra, f"unexpected keys {sorted(extra)}", "$")
    _expect(isinstance(doc.get("groupValues"), list), "'groupValues' must be an array", "$.groupValues")
    _expect(isinstance(doc.get("links", []), list), "'links' must be an array", "$.links")
    gvs = []
    for i, raw in enumerate(doc["groupValues"]):
        path = f"$.groupValues[{i}]"
        _expect(isinstance(raw, dict), "group value must be an object", path)
        _expect(isinstance(raw.get("name"), str) and raw["name"], "missing 'name'", path)
        _expect(isinstance(raw.get("group"), str), "missing 'group'", path)
        if not mm.has_group(raw["group"]):
            raise ModelFormatError(f"unknown specification item group {raw['group']!r}",
                                   path=path + ".group")
        slots = raw.get("slots", {})
        _expect(isinstance(slots, dict), "'slots' must be an object", path + ".slots")
        for k, v in slots.items():
            _expect(isinstance(v, str), f"slot {k!r} must be a string", path + ".slots")
        gvs.append(GroupValue(raw["name"], raw["group"], slots))
    links = []
    for i, raw in enumerate(doc.get("links", [])):
        _expect(isinstance(raw, list) and len(raw) == 2 and all(isinstance(x, str) for x in raw),
                "link must be a [nameA, nameB] pair", f"$.links[{i}]")
        links.append((raw[0], raw[1]))
    return DeviceModel(tuple(gvs), tuple(links))


def deserialize_model(text: str, mm: Optional[Metamodel] = None) -> DeviceModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(exc.msg, exc.lineno, exc.colno) from None
    return model_from_dict(doc, mm)


# -- the built-in metamodel -------------------------------------------------------

def _g(name, abbrev="", *items, abstract=False) -> GroupDef:
    return GroupDef(name, tuple(ItemDef(*i) if isinstance(i, tuple) else ItemDef(i) for i in items),
                    abstract=abstract, abbrev=abbrev)


_TOP_LEVEL = ("Hostname", "EthernetSetting", "VlanSetting", "StaticRouteSetting",
              "StpSetting", "OspfSetting", "AccessListSetting")

_BUILTIN: Optional[Metamodel] = None


def builtin_metamodel() -> Metamodel:
    """The fixed metamodel for the supported Cisco and Yamaha settings."""
    global _BUILTIN
    if _BUILTIN is not None:
        return _BUILTIN
    groups = (
        _g("Config", "Cf", ("deviceModel", "string", False)),
        _g("Hostname", "Hn", "name"),
        _g("EthernetSetting", "", ("port", "integer"), ("shutdown", "boolean"),
           ("ipAddress", "ip-address"), ("subnetMask", "ip-mask"), abstract=True),
        _g("CiscoEthernetSetting", "CES", ("stack", "integer"), ("slot", "integer"), "mode",
           ("accessVlan", "integer"), ("accessListNumber", "integer"), "accessListDirection"),
        _g("YamahaEthernetSetting", "YES"),
        _g("VlanSetting", "", ("vlanNum", "integer"), ("ipAddress", "ip-address"),
           ("subnetMask", "ip-mask"), ("shutdown", "boolean"), abstract=True),
        _g("CiscoVlanSetting", "CVS", "vlanName", ("accessListNumber", "integer"),
           "accessListDirection"),
        _g("YamahaVlanSetting", "YVS", "interfaceName"),
        _g("StaticRouteSetting", "", ("destination", "ip-address"), ("mask", "ip-mask"),
           ("nextHop", "ip-address"), abstract=True),
        _g("CiscoStaticRouteSetting", "CSR", ("distance", "integer")),
        _g("YamahaStaticRouteSetting", "YSR"),
        _g("StpSetting", "", ("vlanNum", "integer"), ("priority", "integer"), abstract=True),
        _g("CiscoStpSetting", "CST", "mode"),
        _g("OspfSetting", "", ("routerId", "ip-address"), abstract=True),
        _g("CiscoOspfSetting", "COS", ("processId", "integer")),
        _g("OspfNetwork", "ON", ("address", "ip-address"), ("wildcard", "ip-mask"),
           ("area", "integer")),
        _g("OspfVirtualLink", "OVL", ("area", "integer"), ("routerId", "ip-address")),
        _g("AccessListSetting", "", "action", "protocol", "sourceAddress", "destinationAddress",
           ("portNumber", "integer"), "direction", abstract=True),
        _g("CiscoAccessList", "CAL", ("number", "integer"), ("sourceWildcard", "ip-mask"),
           ("destinationWildcard", "ip-mask"), "portOperator"),
    )
    generalizations = (
        ("CiscoEthernetSetting", "EthernetSetting"),
        ("YamahaEthernetSetting", "EthernetSetting"),
        ("CiscoVlanSetting", "VlanSetting"),
        ("YamahaVlanSetting", "VlanSetting"),
        ("CiscoStaticRouteSetting", "StaticRouteSetting"),
        ("YamahaStaticRouteSetting", "StaticRouteSetting"),
        ("CiscoStpSetting", "StpSetting"),
        ("CiscoOspfSetting", "OspfSetting"),
        ("CiscoAccessList", "AccessListSetting"),
    )
    associations = tuple(
        Association("Config", g, "1", "0..1" if g == "Hostname" else "0..*") for g in _TOP_LEVEL
    ) + (
        Association("OspfSetting", "OspfNetwork", "1", "0..*"),
        Association("OspfSetting", "OspfVirtualLink", "1", "0..*"),
    )
    _BUILTIN = Metamodel(groups, generalizations, associations)
    return _BUILTIN


def vendor_of_group(name: str) -> Optional[str]:
    if name.startswith("Cisco"):
        return "cisco"
    if name.startswith("Yamaha"):
        return "yamaha"
    return None


def iter_slots(m: DeviceModel) -> Iterable[Tuple[GroupValue, str, str]]:
    for gv in m.group_values:
        for item, value in gv.slots.items():
            yield gv, item, value


__all__ = [
    "VALUE_KINDS", "ItemDef", "GroupDef", "Association", "Metamodel", "GroupValue",
    "DeviceModel", "Violation", "ModelFormatError", "builtin_metamodel", "validate_model",
    "serialize_model", "deserialize_model", "model_to_dict", "model_from_dict",
    "value_conforms", "vendor_of_group", "iter_slots",
]
