import pytest

from confmodel.mapping import (COLUMNS, MappingError, MappingRule, builtin_cisco_table,
                               builtin_yamaha_table, dump_mapping, load_mapping, loads_mapping)

HEADER = "\t".join(COLUMNS) + "\n"

# the eleven reference rows, in order
REFERENCE_ROWS = [
    ("hostname", "hostname", "any", "Present", "", "", "Hostname", "name"),
    ("ethernet", "port", "NUM", "Present", "", "", "CiscoEthernetSetting", "port"),
    ("ethernet", "interface_setting", "SHUTDOWN", "Present", ".+", "true",
     "CiscoEthernetSetting", "shutdown"),
    ("ethernet", "interface_setting", "SHUTDOWN", "Absent", ".*", "false",
     "CiscoEthernetSetting", "shutdown"),
    ("ethernet", "access_vlan", "MODE_SETTING", "Present", "", "", "CiscoEthernetSetting", "mode"),
    ("ethernet", "vlan_num", "NUM", "Present", "", "", "CiscoEthernetSetting", "accessVlan"),
    ("if_vlan", "if_vlan", "NUM", "Present", "", "", "CiscoVlanSetting", "vlanNum"),
    ("if_vlan", "interface_setting", "SHUTDOWN", "Present", ".+", "true",
     "CiscoVlanSetting", "shutdown"),
    ("if_vlan", "interface_setting", "SHUTDOWN", "Absent", ".*", "false",
     "CiscoVlanSetting", "shutdown"),
    ("if_vlan", "ip_address", "IP_ADDRESS_NUM", "Present", "", "", "CiscoVlanSetting", "ipAddress"),
    ("if_vlan", "subnet_mask", "IP_ADDRESS_NUM", "Present", "", "",
     "CiscoVlanSetting", "subnetMask"),
]


def as_tuple(rule):
    return (rule.subtree_root, rule.parent, rule.target, rule.presence, rule.original,
            rule.replaced, rule.group, rule.item)


def test_reference_rows_present_in_order():
    rows = [as_tuple(r) for r in builtin_cisco_table().rules]
    assert rows[:11] == REFERENCE_ROWS


def test_reconstructed_rows_cover_completed_grammar():
    rows = {as_tuple(r)[:3] + as_tuple(r)[6:] for r in builtin_cisco_table().rules}
    assert ("ospf", "ospf", "NUM", "CiscoOspfSetting", "processId") in rows
    assert ("acl", "acl", "NUM", "CiscoAccessList", "number") in rows
    for item, parent in (("destination", "route_destination"), ("mask", "route_mask"),
                         ("nextHop", "next_hop")):
        assert ("static_route", parent, "IP_ADDRESS_NUM", "CiscoStaticRouteSetting", item) in rows


def test_yamaha_table_targets_yamaha_groups():
    groups = {r.group for r in builtin_yamaha_table().rules}
    assert groups == {"YamahaEthernetSetting", "YamahaVlanSetting", "YamahaStaticRouteSetting"}
    assert builtin_yamaha_table().vendor == "yamaha"


def test_load_present_rewrite_row():
    table = loads_mapping(HEADER + "ethernet\tinterface_setting\tSHUTDOWN\tPresent\t.+\ttrue\t"
                                   "CiscoEthernetSetting\tshutdown\n")
    rule = table.rules[0]
    assert rule.rewrite("shutdown") == "true"
    assert table.vendor == "cisco"


def test_pass_through_row():
    rule = loads_mapping(HEADER + "hostname\thostname\tany\tPresent\t\t\tHostname\tname\n").rules[0]
    assert rule.original == "" and rule.rewrite("Router") == "Router"


def test_rewrite_is_full_match():
    rule = MappingRule("r", "p", "T", "Present", "a+", "x", "Hostname", "name")
    assert rule.rewrite("aaa") == "x"
    assert rule.rewrite("aab") == "aab"
    groups = MappingRule("r", "p", "T", "Present", r"(\d+)/(\d+)", r"\2-\1", "Hostname", "name")
    assert groups.rewrite("1/2") == "2-1"


def test_row_order_preserved():
    text = HEADER + "".join("\t".join(r) + "\n" for r in reversed(REFERENCE_ROWS))
    assert [as_tuple(r) for r in loads_mapping(text).rules] == list(reversed(REFERENCE_ROWS))


@pytest.mark.parametrize("row,message", [
    ("hostname\thostname\tany\tPresent\t\t\tBogus\tname",
     "unknown specification item group 'Bogus' at line 2"),
    ("hostname\thostname\tany\tPresent\t\t\tHostname\tcolour",
     "unknown specification item 'colour'"),
    ("hostname\thostname\tany\tPresent\t([\tx\tHostname\tname", "bad regex"),
    ("hostname\thostname\tany\tMaybe\t\t\tHostname\tname", "bad presence"),
    ("hostname\thostname\tany\tPresent\t.+\t\tHostname\tname", "needs both or neither"),
    ("hostname\thostname\tany\tPresent\t\t\tHostname", "bad column count 7 at line 2"),
    ("hostname\thostname\tany\tAbsent\t.*\tx\tHostname\tname", "orphan Absent"),
])
def test_row_diagnostics(row, message):
    with pytest.raises(MappingError) as err:
        loads_mapping(HEADER + row + "\n")
    assert any(message in d for d in err.value.diagnostics), err.value.diagnostics


def test_absent_needs_replacement():
    text = (HEADER + "ethernet\tinterface_setting\tSHUTDOWN\tPresent\t.+\ttrue\t"
            "CiscoEthernetSetting\tshutdown\n"
            "ethernet\tinterface_setting\tSHUTDOWN\tAbsent\t.*\t\tCiscoEthernetSetting\tshutdown\n")
    with pytest.raises(MappingError, match="needs a replacement"):
        loads_mapping(text)


def test_duplicate_key():
    row = "hostname\thostname\tany\tPresent\t\t\tHostname\tname\n"
    with pytest.raises(MappingError, match="duplicate Present rule .* at line 3 .first at line 2"):
        loads_mapping(HEADER + row + row)


def test_inconsistent_root_group():
    text = (HEADER + "hostname\thostname\tany\tPresent\t\t\tHostname\tname\n"
            "hostname\tx\tNUM\tPresent\t\t\tConfig\tdeviceModel\n")
    with pytest.raises(MappingError, match="subtree root 'hostname' maps to 'Config'"):
        loads_mapping(text)


def test_header_required():
    with pytest.raises(MappingError, match="bad header"):
        loads_mapping("a\tb\n")
    with pytest.raises(MappingError, match="missing header"):
        loads_mapping("# only a comment\n")


def test_comments_and_blank_lines_skipped():
    text = "# c\n\n" + HEADER + "# row\nhostname\thostname\tany\tPresent\t\t\tHostname\tname\n"
    assert len(loads_mapping(text).rules) == 1


def test_error_names_source(tmp_path):
    path = tmp_path / "bad.tsv"
    path.write_text(HEADER + "x\ty\tz\tPresent\t\t\tBogus\tname\n")
    with pytest.raises(MappingError, match=str(path)):
        load_mapping(path)


@pytest.mark.parametrize("table", [builtin_cisco_table(), builtin_yamaha_table()],
                         ids=["cisco", "yamaha"])
def test_dump_load_roundtrip(table, tmp_path):
    path = tmp_path / "t.tsv"
    path.write_text(dump_mapping(table))
    assert load_mapping(path, table.vendor) == table


def test_every_rule_resolves(mm):
    for table in (builtin_cisco_table(), builtin_yamaha_table()):
        for rule in table.rules:
            assert rule.item in mm.items(rule.group)


def test_roots_open_first_group():
    roots = builtin_cisco_table().roots()
    assert roots["ethernet"] == "CiscoEthernetSetting"
    assert roots["ospf_network"] == "OspfNetwork"
    assert roots["file"] == "Config"
