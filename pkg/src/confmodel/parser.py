"""Recursive-descent parsers producing parse trees for device configurations.

Each vendor grammar is written out in ``data/<vendor>.grammar``; the parser
methods below mirror those productions one to one.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple, Union

from .lexer import VENDORS, LexError, Token, tokenize


@dataclass(frozen=True)
class TokenLeaf:
    token: Token

    @property
    def name(self) -> str:
        return self.token.kind

    @property
    def text(self) -> str:
        return self.token.text

    def leaves(self) -> Iterator["TokenLeaf"]:
        yield self


@dataclass(frozen=True)
class RuleNode:
    name: str
    children: Tuple["Node", ...] = ()

    @property
    def text(self) -> str:
        """Concatenated text of the node's leaves."""
        return "".join(leaf.token.text for leaf in self.leaves())

    def leaves(self) -> Iterator[TokenLeaf]:
        for child in self.children:
            yield from child.leaves()

    def first_token(self) -> Optional[Token]:
        return next((leaf.token for leaf in self.leaves()), None)


Node = Union[RuleNode, TokenLeaf]


@dataclass(frozen=True)
class ParseTree:
    root: RuleNode
    vendor: str = "cisco"

    def tokens(self) -> List[Token]:
        return [leaf.token for leaf in self.root.leaves()]

    def walk(self) -> Iterator[Tuple[Node, int]]:
        """Pre-order traversal yielding (node, depth)."""
        stack: List[Tuple[Node, int]] = [(self.root, 0)]
        while stack:
            node, depth = stack.pop()
            yield node, depth
            if isinstance(node, RuleNode):
                stack.extend((c, depth + 1) for c in reversed(node.children))

    def rule_names(self) -> set:
        return {n.name for n, _ in self.walk() if isinstance(n, RuleNode)}


class ParseError(ValueError):
    def __init__(self, line: int, column: int, expected: FrozenSet[str], found: Optional[Token]):
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        self.found = found
        got = f"{found.kind} {found.text!r}" if found else "end of input"
        super().__init__(f"{line}:{column}: expected {' | '.join(sorted(self.expected))}, found {got}")


class _Parser:
    """Token cursor plus helpers shared by the vendor grammars."""

    def __init__(self, tokens: Sequence[Token]):
        self.tokens = list(tokens)
        self.pos = 0

    def peek(self, k: int = 0) -> Optional[Token]:
        i = self.pos + k
        return self.tokens[i] if i < len(self.tokens) else None

    def at(self, *kinds: str, k: int = 0) -> bool:
        tok = self.peek(k)
        return tok is not None and tok.kind in kinds

    def error(self, expected) -> ParseError:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            line = last.line if last else 1
            col = last.column + len(last.text) if last else 1
            return ParseError(line, col, frozenset(expected), None)
        return ParseError(tok.line, tok.column, frozenset(expected), tok)

    def expect(self, kind: str) -> TokenLeaf:
        if not self.at(kind):
            raise self.error({kind})
        tok = self.tokens[self.pos]
        self.pos += 1
        return TokenLeaf(tok)

    def wrap(self, name: str, kind: str) -> RuleNode:
        return RuleNode(name, (self.expect(kind),))

    def parse_file(self) -> RuleNode:
        categories = []
        while self.peek() is not None:
            categories.append(self.category())
        if not categories:
            raise self.error({"category"})
        return RuleNode("file", tuple(categories))

    def category(self) -> RuleNode:
        tok = self.peek()
        rule = self.CATEGORY_STARTS.get(tok.kind)
        if rule is None:
            raise self.error({"category"})
        return RuleNode("category", (getattr(self, rule)(),))


class CiscoParser(_Parser):
    CATEGORY_STARTS = {
        "HOSTNAME": "hostname", "INTERFACE": "interface", "IP_ROUTE": "static_route",
        "SPANNING_TREE": "stp", "ROUTER": "ospf", "ACCESS_LIST": "acl", "VLAN": "vlan_decl",
        "PLATFORM": "version_info", "ENABLE": "session_cmd", "CONFIGURE": "session_cmd",
        "EXIT": "session_cmd", "END": "session_cmd", "COPY": "session_cmd",
    }

    def hostname(self):
        kw = self.expect("HOSTNAME")
        return RuleNode("hostname", (kw, self.any(kw.token.line)))

    def any(self, line: int):
        # bounded to the command's own line so a hostname never eats the next command
        parts = []
        while self.at("NUM", "CHAR") and self.peek().line == line:
            parts.append(self.expect(self.peek().kind))
        if not parts:
            raise self.error({"NUM", "CHAR"})
        return RuleNode("any", tuple(parts))

    def interface(self):
        kw = self.expect("INTERFACE")
        if self.at("ETHERNET"):
            name = self.ethernet()
        elif self.at("IF_VLAN", "VLAN"):
            name = self.if_vlan()
        else:
            raise self.error({"ETHERNET", "IF_VLAN", "VLAN"})
        return RuleNode("interface", (kw, RuleNode("interface_name", (name,))))

    def ethernet(self):
        children = [self.expect("ETHERNET")]
        nums = [self.expect("NUM")]
        slashes = []
        while self.at("SLASH") and len(nums) < 3:
            slashes.append(self.expect("SLASH"))
            nums.append(self.expect("NUM"))
        names = ("stack", "slot", "port")[3 - len(nums):]
        for i, (name, num) in enumerate(zip(names, nums)):
            children.append(RuleNode(name, (num,)))
            if i < len(slashes):
                children.append(slashes[i])
        children.append(self.interface_setting())
        return RuleNode("ethernet", tuple(children))

    def if_vlan(self):
        kw = self.expect("IF_VLAN" if self.at("IF_VLAN") else "VLAN")
        return RuleNode("if_vlan", (kw, self.expect("NUM"), self.interface_setting()))

    def interface_setting(self):
        children = []
        while True:
            if self.at("IP") and self.at("ADDRESS", k=1):
                children.append(self.if_ip_address())
            elif self.at("IP") and self.at("ACCESS_GROUP", k=1):
                children.append(self.access_group())
            elif self.at("NO") and self.at("SHUTDOWN", k=1):
                children.append(RuleNode("no_shutdown", (self.expect("NO"), self.expect("SHUTDOWN"))))
            elif self.at("NO") and self.at("IP", k=1):
                children.append(RuleNode("no_ip_address", (
                    self.expect("NO"), self.expect("IP"), self.expect("ADDRESS"))))
            elif self.at("SWITCHPORT"):
                children.append(self.switchport_setting())
            elif self.at("SHUTDOWN"):
                children.append(self.expect("SHUTDOWN"))
            else:
                break
        return RuleNode("interface_setting", tuple(children))

    def if_ip_address(self):
        return RuleNode("if_ip_address", (
            self.expect("IP"), self.expect("ADDRESS"),
            self.wrap("ip_address", "IP_ADDRESS_NUM"),
            self.wrap("subnet_mask", "IP_ADDRESS_NUM"),
        ))

    def access_group(self):
        return RuleNode("access_group", (
            self.expect("IP"), self.expect("ACCESS_GROUP"),
            self.wrap("acl_number", "NUM"), self.expect("DIRECTION"),
        ))

    def switchport_setting(self):
        kw = self.expect("SWITCHPORT")
        if self.at("MODE"):
            body = RuleNode("port_mode", (self.expect("MODE"), self.expect("MODE_SETTING")))
        elif self.at("MODE_SETTING"):
            body = RuleNode("access_vlan", (self.expect("MODE_SETTING"), self.vlan_num()))
        else:
            raise self.error({"MODE", "MODE_SETTING"})
        return RuleNode("switchport_setting", (kw, body))

    def vlan_num(self):
        return RuleNode("vlan_num", (self.expect("VLAN"), self.expect("NUM")))

    def static_route(self):
        children = [
            self.expect("IP_ROUTE"),
            self.wrap("route_destination", "IP_ADDRESS_NUM"),
            self.wrap("route_mask", "IP_ADDRESS_NUM"),
            self.wrap("next_hop", "IP_ADDRESS_NUM"),
        ]
        if self.at("NUM"):
            children.append(self.wrap("distance", "NUM"))
        return RuleNode("static_route", tuple(children))

    def stp(self):
        kw = self.expect("SPANNING_TREE")
        if self.at("VLAN"):
            body = RuleNode("stp_vlan", (
                self.vlan_num(),
                RuleNode("priority", (self.expect("PRIORITY"), self.expect("NUM"))),
            ))
        elif self.at("MODE"):
            body = RuleNode("stp_mode", (self.expect("MODE"), self.expect("STP_MODE")))
        else:
            raise self.error({"VLAN", "MODE"})
        return RuleNode("stp", (kw, body))

    def ospf(self):
        children = [self.expect("ROUTER"), self.expect("OSPF"), self.expect("NUM")]
        while True:
            if self.at("ROUTER_ID"):
                children.append(RuleNode("router_id", (
                    self.expect("ROUTER_ID"), self.expect("IP_ADDRESS_NUM"))))
            elif self.at("NETWORK"):
                children.append(RuleNode("ospf_network", (
                    self.expect("NETWORK"),
                    self.wrap("network_address", "IP_ADDRESS_NUM"),
                    self.wrap("network_wildcard", "IP_ADDRESS_NUM"),
                    self.expect("AREA"),
                    self.wrap("area_id", "NUM"),
                )))
            elif self.at("AREA"):
                children.append(RuleNode("ospf_virtual_link", (
                    self.expect("AREA"),
                    self.wrap("area_id", "NUM"),
                    self.expect("VIRTUAL_LINK"),
                    self.expect("IP_ADDRESS_NUM"),
                )))
            else:
                break
        return RuleNode("ospf", tuple(children))

    def acl(self):
        children = [self.expect("ACCESS_LIST"), self.expect("NUM"), self.expect("ACTION")]
        if not self.at("IP", "PROTOCOL"):
            raise self.error({"IP", "PROTOCOL"})
        children.append(RuleNode("protocol", (self.expect(self.peek().kind),)))
        children.append(self.acl_endpoint("acl_source", "source"))
        children.append(self.acl_endpoint("acl_destination", "destination"))
        if self.at("PORT_OPERATOR"):
            children.append(RuleNode("port_match", (
                self.expect("PORT_OPERATOR"), self.expect("NUM"))))
        return RuleNode("acl", tuple(children))

    def acl_endpoint(self, name: str, prefix: str):
        if self.at("ANY"):
            return RuleNode(name, (self.expect("ANY"),))
        return RuleNode(name, (
            self.wrap(f"{prefix}_address", "IP_ADDRESS_NUM"),
            self.wrap(f"{prefix}_wildcard", "IP_ADDRESS_NUM"),
        ))

    def vlan_decl(self):
        kw = self.expect("VLAN")
        children = [kw, self.expect("NUM")]
        if self.at("NAME"):
            name_kw = self.expect("NAME")
            children.append(RuleNode("vlan_name", (name_kw, self.any(name_kw.token.line))))
        return RuleNode("vlan_decl", tuple(children))

    def version_info(self):
        return RuleNode("version_info", (self.expect("PLATFORM"), self.expect("DEVICE_MODEL")))

    def session_cmd(self):
        if self.at("CONFIGURE"):
            children = (self.expect("CONFIGURE"), self.expect("TERMINAL"))
        elif self.at("COPY"):
            children = (self.expect("COPY"), self.expect("RUNNING_CONFIG"),
                        self.expect("STARTUP_CONFIG"))
        else:
            children = (self.expect(self.peek().kind),)
        return RuleNode("session_cmd", children)


class YamahaParser(_Parser):
    CATEGORY_STARTS = {"IP_ROUTE": "yamaha_route", "IP": "yamaha_ip", "VLAN": "yamaha_vlan"}

    def yamaha_route(self):
        kw = self.expect("IP_ROUTE")
        if self.at("DEFAULT"):
            dest = RuleNode("route_destination", (self.wrap("default_destination", "DEFAULT"),))
        else:
            dest = RuleNode("route_destination", (
                self.wrap("destination_address", "IP_ADDRESS_NUM"),
                self.expect("SLASH"),
                self.wrap("prefix_length", "NUM"),
            ))
        return RuleNode("yamaha_route", (
            kw, dest, self.expect("GATEWAY"), self.wrap("next_hop", "IP_ADDRESS_NUM")))

    def yamaha_ip(self):
        kw = self.expect("IP")
        # lanN is a port, lanN/M a VLAN interface
        if self.at("LAN") and self.at("NUM", k=1) and self.at("SLASH", k=2):
            body = RuleNode("lan_vlan_address", (self.lan_interface(),) + self.address_tail())
        elif self.at("LAN"):
            port = (self.expect("LAN"), self.wrap("port", "NUM"))
            body = RuleNode("lan_port_address", port + self.address_tail())
        else:
            raise self.error({"LAN"})
        return RuleNode("yamaha_ip", (kw, body))

    def address_tail(self):
        return (
            self.expect("ADDRESS"),
            self.wrap("ip_address", "IP_ADDRESS_NUM"),
            self.expect("SLASH"),
            self.wrap("subnet_mask", "NUM"),
        )

    def lan_interface(self):
        return RuleNode("lan_interface", (
            self.expect("LAN"), self.expect("NUM"), self.expect("SLASH"), self.expect("NUM")))

    def yamaha_vlan(self):
        return RuleNode("yamaha_vlan", (
            self.expect("VLAN"), self.lan_interface(), self.expect("DOT1Q"),
            self.expect("VID"), self.expect("EQUALS"), self.wrap("vid", "NUM"),
        ))


_PARSERS = {"cisco": CiscoParser, "yamaha": YamahaParser}


def parse(tokens: Sequence[Token], vendor: str = "cisco") -> ParseTree:
    """Build the parse tree; stops with :class:`ParseError` at the first error."""
    if vendor not in VENDORS:
        raise ValueError(f"unknown vendor {vendor!r}")
    return ParseTree(_PARSERS[vendor](tokens).parse_file(), vendor)


def parse_text(text: str, vendor: str = "cisco") -> ParseTree:
    return parse(tokenize(text, vendor), vendor)


def parse_file(path, vendor: str = "cisco") -> ParseTree:
    text = Path(path).read_text(encoding="utf-8")
    return parse_text(text, vendor)


def dump_tree(tree: ParseTree, indent: str = "  ") -> str:
    """One node per line: ``rule:`` or ``tok KIND 'text'``, indented by depth."""
    lines = []
    for node, depth in tree.walk():
        if isinstance(node, RuleNode):
            lines.append(f"{indent * depth}{node.name}:")
        else:
            lines.append(f"{indent * depth}tok {node.token.kind} {node.token.text!r}")
    return "\n".join(lines) + "\n"


def print_tree(tree: ParseTree) -> str:
    """Leaf texts joined by single spaces, one category per line."""
    lines = []
    for category in tree.root.children:
        lines.append(" ".join(leaf.text for leaf in category.leaves()))
    return "\n".join(lines) + "\n"


def grammar_path(vendor: str) -> Path:
    return Path(__file__).with_name("data") / f"{vendor}.grammar"


def grammar_rule_names(vendor: str) -> FrozenSet[str]:
    """Rule names declared in the shipped grammar document."""
    names = set()
    for line in grammar_path(vendor).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("//"):
            continue
        head, sep, _ = line.partition(":")
        if sep and head.strip().isidentifier() and head.strip()[0].islower():
            names.add(head.strip())
    return frozenset(names)


__all__ = [
    "Token", "TokenLeaf", "RuleNode", "Node", "ParseTree", "ParseError", "LexError",
    "tokenize", "parse", "parse_text", "parse_file", "dump_tree", "print_tree",
    "grammar_rule_names", "grammar_path",
]
