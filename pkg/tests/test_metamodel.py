import json

import pytest
from hypothesis import given, settings, strategies as st

from confmodel.metamodel import (
    Association, DeviceModel, GroupDef, GroupValue, ItemDef, Metamodel, ModelFormatError,
    builtin_metamodel, deserialize_model, serialize_model, validate_model, value_conforms,
)


def codes(violations):
    return {v.code for v in violations}


def list1_model():
    return DeviceModel(
        (GroupValue("Cf1", "Config"),
         GroupValue("Hn1", "Hostname", {"name": "Router"}),
         GroupValue("CES1", "CiscoEthernetSetting",
                    {"port": "3", "shutdown": "true", "mode": "access", "accessVlan": "10"}),
         GroupValue("CVS1", "CiscoVlanSetting",
                    {"vlanNum": "10", "shutdown": "false", "ipAddress": "192.168.100.1",
                     "subnetMask": "255.255.255.0"})),
        (("Cf1", "Hn1"), ("Cf1", "CES1"), ("Cf1", "CVS1")),
    )


def test_builtin_groups(mm):
    assert {"port", "shutdown", "mode", "accessVlan"} <= set(mm.items("CiscoEthernetSetting"))
    assert "deviceModel" in mm.items("Config")
    assert ("CiscoVlanSetting", "VlanSetting") in mm.generalizations
    for group in ("EthernetSetting", "VlanSetting", "StaticRouteSetting", "StpSetting",
                  "OspfSetting", "AccessListSetting"):
        assert mm.group(group).abstract


def test_vendor_items_live_in_subgroups(mm):
    assert mm.item_owner("CiscoEthernetSetting", "port") == "EthernetSetting"
    assert mm.item_owner("CiscoEthernetSetting", "accessVlan") == "CiscoEthernetSetting"
    assert mm.item_owner("YamahaVlanSetting", "vlanNum") == "VlanSetting"
    assert mm.item_owner("Hostname", "port") is None


def test_inherited_closure_duplicate_free(mm):
    for group in mm.groups:
        owners = [i.name for g in mm.lineage(group.name) for i in mm.group(g).items]
        assert len(owners) == len(set(owners)), group.name


def test_associations_reach_through_generalization(mm):
    assert mm.associated("Config", "CiscoEthernetSetting")
    assert mm.associated("CiscoOspfSetting", "OspfNetwork")
    assert not mm.associated("Hostname", "CiscoVlanSetting")


def test_metamodel_rejects_duplicate_groups():
    with pytest.raises(ValueError, match="duplicate group"):
        Metamodel((GroupDef("A"), GroupDef("A")))


def test_metamodel_rejects_generalization_cycle():
    with pytest.raises(ValueError, match="cycle"):
        Metamodel((GroupDef("A"), GroupDef("B")), (("A", "B"), ("B", "A")))


def test_metamodel_rejects_undefined_ends():
    with pytest.raises(ValueError, match="undefined"):
        Metamodel((GroupDef("A"),), (("A", "Z"),))
    with pytest.raises(ValueError, match="not a defined group"):
        Metamodel((GroupDef("A"),), (), (Association("A", "Z"),))


def test_metamodel_rejects_redefined_item():
    with pytest.raises(ValueError, match="defined in both"):
        Metamodel((GroupDef("A", (ItemDef("x"),)), GroupDef("B", (ItemDef("x"),))),
                  (("B", "A"),))


def test_unknown_value_kind():
    with pytest.raises(ValueError):
        ItemDef("x", "float")


@pytest.mark.parametrize("kind,value,ok", [
    ("string", "abc", True), ("string", "", False),
    ("integer", "42", True), ("integer", "4a", False), ("integer", "-1", False),
    ("boolean", "true", True), ("boolean", "false", True), ("boolean", "yes", False),
    ("ip-address", "192.168.100.1", True), ("ip-address", "256.1.1.1", False),
    ("ip-address", "1.2.3", False),
    ("ip-mask", "255.255.255.0", True), ("ip-mask", "24", True), ("ip-mask", "33", False),
])
def test_value_conforms(kind, value, ok):
    assert value_conforms(kind, value) is ok


def test_list1_model_is_valid(mm):
    assert validate_model(list1_model(), mm) == []


def test_duplicate_name_detected(mm):
    m = DeviceModel((GroupValue("Cf1", "Config"), GroupValue("Cf1", "Config")))
    vs = validate_model(m, mm)
    assert any(v.code == "DuplicateGroupValueName" and v.element == "Cf1" for v in vs)


def test_illegal_link_detected(mm):
    m = list1_model()
    m = DeviceModel(m.group_values, m.links + (("Hn1", "CVS1"),))
    assert [v.code for v in validate_model(m, mm)] == ["IllegalLink"]


def test_config_count_and_abstract_group(mm):
    assert "ConfigCount" in codes(validate_model(DeviceModel(), mm))
    m = DeviceModel((GroupValue("Cf1", "Config"), GroupValue("E1", "EthernetSetting")),
                    (("Cf1", "E1"),))
    assert codes(validate_model(m, mm)) == {"AbstractGroup"}


def test_bad_slot_value(mm):
    m = list1_model()
    gvs = [GroupValue(g.name, g.group, {**g.slots, "shutdown": "maybe"})
           if g.name == "CES1" else g for g in m.group_values]
    assert codes(validate_model(DeviceModel(gvs, m.links), mm)) == {"BadSlotValue"}


# -- mutation kinds -----------------------------------------------------------------

def mutate_duplicate_name(m, choose):
    gv = choose(m.group_values[1:])
    other = m.group_values[0]
    gvs = [GroupValue(other.name, g.group, g.slots) if g is gv else g for g in m.group_values]
    return DeviceModel(gvs, m.links), "DuplicateGroupValueName"


def mutate_unknown_group(m, choose):
    gv = choose(m.group_values)
    gvs = [GroupValue(g.name, "NoSuchGroup", g.slots) if g is gv else g for g in m.group_values]
    return DeviceModel(gvs, m.links), "UnknownGroup"


def mutate_unknown_item(m, choose):
    gv = choose(m.group_values)
    gvs = [GroupValue(g.name, g.group, {**g.slots, "noSuchItem": "1"}) if g is gv else g
           for g in m.group_values]
    return DeviceModel(gvs, m.links), "UnknownItem"


def mutate_dangling_link(m, choose):
    gv = choose(m.group_values)
    return DeviceModel(m.group_values, m.links + ((gv.name, "Ghost99"),)), "DanglingLink"


def mutate_illegal_link(m, choose):
    hn = m.by_group("Hostname")[0]
    target = choose([g for g in m.group_values if g.group != "Config"])
    return DeviceModel(m.group_values, m.links + ((hn.name, target.name),)), "IllegalLink"


MUTATIONS = [mutate_duplicate_name, mutate_unknown_group, mutate_unknown_item,
             mutate_dangling_link, mutate_illegal_link]


@pytest.mark.parametrize("mutation", MUTATIONS, ids=lambda f: f.__name__)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_mutation_detected(mutation, data, fixture_models, mm):
    base = data.draw(st.sampled_from(sorted(
        k for k, m in fixture_models.items() if m.by_group("Hostname"))))
    model = fixture_models[base]
    assert validate_model(model, mm) == []
    mutated, code = mutation(model, lambda seq: data.draw(st.sampled_from(seq)))
    assert code in codes(validate_model(mutated, mm))


# -- serialization ------------------------------------------------------------------

def test_empty_model_roundtrips_byte_identical(mm):
    text = serialize_model(DeviceModel((GroupValue("Cf1", "Config"),)))
    assert serialize_model(deserialize_model(text, mm)) == text


def test_list1_model_roundtrips(mm):
    m = list1_model()
    assert deserialize_model(serialize_model(m), mm) == m.normalized()


def test_serialized_shape():
    doc = json.loads(serialize_model(list1_model()))
    assert set(doc) == {"groupValues", "links"}
    assert doc["groupValues"][0] == {"name": "CES1", "group": "CiscoEthernetSetting",
                                     "slots": {"accessVlan": "10", "mode": "access",
                                               "port": "3", "shutdown": "true"}}


def test_unknown_group_names_group(mm):
    text = '{"groupValues": [{"name": "B1", "group": "Bogus", "slots": {}}], "links": []}'
    with pytest.raises(ModelFormatError, match="'Bogus'") as err:
        deserialize_model(text, mm)
    assert err.value.path == "$.groupValues[0].group"


def test_malformed_json_has_position(mm):
    with pytest.raises(ModelFormatError) as err:
        deserialize_model('{"groupValues": [\n  {"name": }\n]}', mm)
    assert (err.value.line, err.value.column) == (2, 12)


@pytest.mark.parametrize("doc,path", [
    ([], "$"),
    ({"groupValues": {}}, "$.groupValues"),
    ({"groupValues": [{"group": "Config"}]}, "$.groupValues[0]"),
    ({"groupValues": [{"name": "Cf1", "group": "Config", "slots": {"deviceModel": 1}}]},
     "$.groupValues[0].slots"),
    ({"groupValues": [], "links": [["a"]]}, "$.links[0]"),
    ({"groupValues": [], "extra": 1}, "$"),
])
def test_schema_errors_carry_path(doc, path, mm):
    with pytest.raises(ModelFormatError) as err:
        deserialize_model(json.dumps(doc), mm)
    assert err.value.path == path


LEAF_SLOTS = {
    "Hostname": {"name": st.sampled_from(["core", "edge1", "Router"])},
    "CiscoEthernetSetting": {
        "port": st.integers(0, 48).map(str), "shutdown": st.sampled_from(["true", "false"]),
        "mode": st.sampled_from(["access", "trunk"]), "accessVlan": st.integers(1, 4094).map(str)},
    "CiscoStaticRouteSetting": {
        "destination": st.just("10.0.0.0"), "mask": st.just("255.0.0.0"),
        "nextHop": st.just("10.0.0.1")},
}


@st.composite
def valid_models(draw):
    gvs = [GroupValue("Cf1", "Config", draw(st.dictionaries(
        st.just("deviceModel"), st.sampled_from(["1812-J", "892J"]), max_size=1)))]
    links = []
    counters = {}
    for group in draw(st.lists(st.sampled_from(sorted(LEAF_SLOTS)), max_size=6)):
        counters[group] = counters.get(group, 0) + 1
        name = f"{builtin_metamodel().group(group).abbrev}{counters[group]}"
        slots = draw(st.fixed_dictionaries({}, optional=LEAF_SLOTS[group]))
        gvs.append(GroupValue(name, group, slots))
        links.append(("Cf1", name))
    order = draw(st.permutations(range(len(gvs))))
    return DeviceModel([gvs[i] for i in order], links)


@settings(max_examples=100, deadline=None)
@given(valid_models())
def test_serialization_roundtrip_property(m):
    mm = builtin_metamodel()
    assert validate_model(m, mm) == []
    assert deserialize_model(serialize_model(m), mm) == m.normalized()
