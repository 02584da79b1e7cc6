import pytest
from hypothesis import given, strategies as st

from confmodel.lexer import LexError, normalize_lines, token_signature, tokenize


def kinds(text, vendor="cisco"):
    return [t.kind for t in tokenize(text, vendor)]


def test_ip_address_line():
    toks = tokenize("ip address 192.168.100.1 255.255.255.0")
    assert [(t.kind, t.text) for t in toks] == [
        ("IP", "ip"), ("ADDRESS", "address"),
        ("IP_ADDRESS_NUM", "192.168.100.1"), ("IP_ADDRESS_NUM", "255.255.255.0")]


def test_switchport_access_vlan():
    toks = tokenize("switchport access vlan 10")
    assert [(t.kind, t.text) for t in toks] == [
        ("SWITCHPORT", "switchport"), ("MODE_SETTING", "access"), ("VLAN", "vlan"), ("NUM", "10")]


def test_interface_vlan_keyword_beats_char():
    assert [(t.kind, t.text) for t in tokenize("interface Vlan10")] == [
        ("INTERFACE", "interface"), ("IF_VLAN", "Vlan"), ("NUM", "10")]


def test_longest_match_prefers_longer_char_run():
    # "interfaces" is longer than the INTERFACE keyword, so CHAR wins
    assert kinds("interfaces") == ["CHAR"]
    assert kinds("router-id") == ["ROUTER_ID"]
    assert kinds("access-list") == ["ACCESS_LIST"]


def test_multi_word_tokens():
    toks = tokenize("switchport mode dynamic   desirable")
    assert toks[-1].kind == "MODE_SETTING"
    assert token_signature(toks)[-1] == ("MODE_SETTING", "dynamic desirable")
    assert kinds("ip route 0.0.0.0 0.0.0.0 10.0.0.1")[0] == "IP_ROUTE"
    # "ip routex" is not the multi-word keyword
    assert kinds("ip routex") == ["IP", "CHAR"]


def test_positions_are_one_based():
    toks = tokenize("hostname Router\n!\ninterface FastEthernet3\n shutdown\n")
    assert [(t.text, t.line, t.column) for t in toks] == [
        ("hostname", 1, 1), ("Router", 1, 10), ("interface", 3, 1),
        ("FastEthernet", 3, 11), ("3", 3, 23), ("shutdown", 4, 2)]


def test_comments_and_crlf():
    assert kinds("! comment\r\nhostname a\r\n") == ["HOSTNAME", "CHAR"]
    assert kinds("# note\nvlan lan1/1 802.1q vid=2\n", "yamaha") == [
        "VLAN", "LAN", "NUM", "SLASH", "NUM", "DOT1Q", "VID", "EQUALS", "NUM"]


def test_lex_error_position():
    with pytest.raises(LexError) as err:
        tokenize("hostname a\n description to-core\n")
    assert (err.value.line, err.value.column, err.value.text) == (2, 16, "-core")


def test_unknown_vendor():
    with pytest.raises(ValueError):
        tokenize("hostname a", "juniper")


SHOW_VERSION = """\
r1#show version
Cisco IOS Software, C181X Software (C181X-ADVIPSERVICESK9-M), Version 12.4(24)T8
ROM: System Bootstrap, Version 12.4(22r)YB5, RELEASE SOFTWARE (fc1)
Cisco 1812-J (MPC8500) processor (revision 0x400) with 118784K/12288K bytes of memory.
Configuration register is 0x2102
hostname r1
"""


def test_show_version_keeps_device_model_only():
    toks = tokenize(SHOW_VERSION)
    assert [(t.kind, t.text, t.line) for t in toks] == [
        ("PLATFORM", "Cisco", 4), ("DEVICE_MODEL", "1812-J", 4),
        ("HOSTNAME", "hostname", 6), ("CHAR", "r", 6), ("NUM", "1", 6)]


def test_unterminated_show_version():
    with pytest.raises(LexError) as err:
        tokenize("Cisco IOS Software, C181X Software\nhostname r1\n")
    assert err.value.line == 1


def test_show_vlan_switch_rows_become_declarations():
    text = ("VLAN Name                             Status    Ports\n"
            "---- -------------------------------- --------- ------\n"
            "1    default                          active    Fa2\n"
            "20   VLAN0020                         active    Fa3\n"
            "1002 fddi-default                     act/unsup\n"
            "\n"
            "VLAN Type  SAID       MTU\n"
            "20   enet  100020     1500\n"
            "\n"
            "hostname x\n")
    lines = normalize_lines(text, "cisco")
    assert len(lines) == len(text.split("\n"))
    assert [ln for ln in lines if ln] == ["vlan 20 name VLAN0020", "hostname x"]


def test_running_config_preamble_dropped():
    text = "Building configuration...\n\nCurrent configuration : 99 bytes\nversion 12.4\nend\n"
    assert kinds(text) == ["END"]


WORDS = ["interface", "FastEthernet", "Vlan", "vlan", "ip", "address", "shutdown", "no",
         "switchport", "access", "trunk", "10", "3", "192.168.1.1", "abc", "/", "router",
         "ospf", "area", "network", "any", "eq", "permit", "tcp"]


@given(st.lists(st.lists(st.sampled_from(WORDS), min_size=1, max_size=8), max_size=6))
def test_full_coverage(lines):
    text = "\n".join(" ".join(words) for words in lines)
    toks = tokenize(text)
    rebuilt = {}
    for t in toks:
        rebuilt.setdefault(t.line, []).append(t.text)
    for i, words in enumerate(lines, 1):
        assert "".join(rebuilt.get(i, [])) == "".join(words)
