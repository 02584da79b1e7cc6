"""Longest-match lexer for Cisco and Yamaha configuration text."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

VENDORS = ("cisco", "yamaha")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int

    def __repr__(self):
        return f"{self.kind}({self.text!r}@{self.line}:{self.column})"


class LexError(ValueError):
    def __init__(self, line: int, column: int, text: str):
        self.line = line
        self.column = column
        self.text = text
        super().__init__(f"{line}:{column}: no token matches {text!r}")


def _literal(*words: str) -> str:
    # multi-word literals accept any run of blanks and must end on a word boundary
    alts = sorted(words, key=len, reverse=True)
    parts = []
    for w in alts:
        pat = r"[ \t]+".join(re.escape(p) for p in w.split(" "))
        if " " in w:
            pat += r"(?![A-Za-z])"
        parts.append(pat)
    return "|".join(parts)


# Declaration order matters: on equal match length the earlier rule wins,
# so keyword rules precede CHAR.
CISCO_RULES: Tuple[Tuple[str, str], ...] = (
    ("INTERFACE", _literal("interface")),
    ("ETHERNET", _literal("FastEthernet", "GigabitEthernet", "TenGigabitEthernet",
                          "fastethernet", "gigabitethernet", "tengigabitethernet")),
    ("HOSTNAME", _literal("hostname")),
    ("IP_ROUTE", _literal("ip route")),
    ("IP", _literal("ip")),
    ("ADDRESS", _literal("address")),
    ("SHUTDOWN", _literal("shutdown")),
    ("SWITCHPORT", _literal("switchport")),
    ("NO", _literal("no")),
    ("MODE_SETTING", _literal("access", "trunk", "dynamic auto", "dynamic desirable")),
    ("IF_VLAN", _literal("Vlan")),
    ("VLAN", _literal("vlan")),
    ("MODE", _literal("mode")),
    ("NAME", _literal("name")),
    ("ACCESS_GROUP", _literal("access-group")),
    ("ACCESS_LIST", _literal("access-list")),
    ("DIRECTION", _literal("in", "out")),
    ("ROUTER_ID", _literal("router-id")),
    ("ROUTER", _literal("router")),
    ("OSPF", _literal("ospf")),
    ("NETWORK", _literal("network")),
    ("AREA", _literal("area")),
    ("VIRTUAL_LINK", _literal("virtual-link")),
    ("SPANNING_TREE", _literal("spanning-tree")),
    ("PRIORITY", _literal("priority")),
    ("STP_MODE", _literal("pvst", "rapid-pvst", "mst")),
    ("ACTION", _literal("permit", "deny")),
    ("PROTOCOL", _literal("tcp", "udp", "icmp")),
    ("ANY", _literal("any")),
    ("PORT_OPERATOR", _literal("eq", "neq", "gt", "lt")),
    ("ENABLE", _literal("enable")),
    ("CONFIGURE", _literal("configure")),
    ("TERMINAL", _literal("terminal")),
    ("EXIT", _literal("exit")),
    ("END", _literal("end")),
    ("COPY", _literal("copy")),
    ("RUNNING_CONFIG", _literal("running-config")),
    ("STARTUP_CONFIG", _literal("startup-config")),
    ("IP_ADDRESS_NUM", r"[0-9]+\.[0-9]+\.[0-9]+\.[0-9]+"),
    ("NUM", r"[0-9]+"),
    ("CHAR", r"[a-zA-Z]+"),
    ("SLASH", r"/"),
)

YAMAHA_RULES: Tuple[Tuple[str, str], ...] = (
    ("IP_ROUTE", _literal("ip route")),
    ("IP", _literal("ip")),
    ("ADDRESS", _literal("address")),
    ("GATEWAY", _literal("gateway")),
    ("DEFAULT", _literal("default")),
    ("LAN", _literal("lan")),
    ("VLAN", _literal("vlan")),
    ("DOT1Q", _literal("802.1q")),
    ("VID", _literal("vid")),
    ("EQUALS", r"="),
    ("IP_ADDRESS_NUM", r"[0-9]+\.[0-9]+\.[0-9]+\.[0-9]+"),
    ("NUM", r"[0-9]+"),
    ("CHAR", r"[a-zA-Z]+"),
    ("SLASH", r"/"),
)

_COMPILED = {
    "cisco": [(kind, re.compile(pat)) for kind, pat in CISCO_RULES],
    "yamaha": [(kind, re.compile(pat)) for kind, pat in YAMAHA_RULES],
}
COMMENT_CHAR = {"cisco": "!", "yamaha": "#"}

TOKEN_KINDS = {v: tuple(kind for kind, _ in rules) for v, rules in
               (("cisco", CISCO_RULES + (("PLATFORM", ""), ("DEVICE_MODEL", ""))),
                ("yamaha", YAMAHA_RULES))}

# show running-config preamble lines carrying no settings
_CISCO_PREAMBLE = re.compile(r"^(Building configuration|Current configuration\s*:|version\s)")
# show version: block delimiters and the line naming the hardware model
_PROMPT_ECHO = re.compile(r"^[A-Za-z0-9_.-]+[#>]")
_SHOW_VERSION_START = re.compile(r"^Cisco IOS Software")
_SHOW_VERSION_END = re.compile(r"^Configuration register is")
_PROCESSOR_LINE = re.compile(r"^(Cisco)[ \t]+(\S+)[ \t]+\(.*\)[ \t]+processor")
_VERSION_LINE = re.compile(r"^(Cisco)[ \t]+(\S+)[ \t]*$")
# show vlan-switch tables
_VLAN_TABLE_HEADER = re.compile(r"^VLAN\s+Name\s+Status\s+Ports")
_VLAN_OTHER_HEADER = re.compile(r"^VLAN\s+Type\s+SAID")
_VLAN_ROW = re.compile(r"^(\d+)\s+(\S+)\s+(active|suspend|suspended|act/\S+)\b")
_RESERVED_VLANS = {1, 1002, 1003, 1004, 1005}


def _vlan_row_as_command(line: str) -> str:
    m = _VLAN_ROW.match(line)
    if not m or int(m.group(1)) in _RESERVED_VLANS:
        return ""
    return f"vlan {m.group(1)} name {m.group(2)}"


def normalize_lines(text: str, vendor: str) -> List[str]:
    """Reduce non-configuration output to the lines the grammar understands.

    Line numbering is preserved; dropped lines become empty.  Prompt echo
    lines (``campus1#show version``) are dropped.  Cisco
    ``show vlan-switch`` rows are rewritten to ``vlan N name X`` and the
    ``show version`` output keeps only the ``Cisco <model>`` prefix of its
    processor line.
    """
    lines = text.replace("\r\n", "\n").replace("\r", "\n").split("\n")
    if vendor == "yamaha":
        return lines
    out: List[str] = []
    mode: Optional[str] = None
    block_start = 0
    for lineno, line in enumerate(lines, 1):
        stripped = line.strip()
        if mode == "version":
            m = _PROCESSOR_LINE.match(stripped)
            indent = len(line) - len(line.lstrip())
            out.append(line[: indent + m.end(2)] if m else "")
            if _SHOW_VERSION_END.match(stripped):
                mode = None
            continue
        if mode in ("vlan", "vlan-other"):
            if not stripped:
                mode = None
                out.append("")
            elif mode == "vlan":
                out.append(_vlan_row_as_command(stripped))
            else:
                out.append("")
            continue
        if _SHOW_VERSION_START.match(stripped):
            mode, block_start = "version", lineno
            out.append("")
            continue
        if _VLAN_TABLE_HEADER.match(stripped):
            mode = "vlan"
            out.append("")
            continue
        if _VLAN_OTHER_HEADER.match(stripped):
            mode = "vlan-other"
            out.append("")
            continue
        if _CISCO_PREAMBLE.match(stripped) or _PROMPT_ECHO.match(stripped):
            out.append("")
            continue
        m = _PROCESSOR_LINE.match(line)
        out.append(line[: m.end(2)] if m else line)
    if mode == "version":
        raise LexError(block_start, 1, "show version output without 'Configuration register' line")
    return out


def _lex_line(line: str, lineno: int, rules) -> Iterator[Token]:
    pos = 0
    n = len(line)
    while pos < n:
        ch = line[pos]
        if ch in " \t":
            pos += 1
            continue
        best_kind, best_len = None, 0
        for kind, rx in rules:
            m = rx.match(line, pos)
            if m and m.end() - pos > best_len:
                best_kind, best_len = kind, m.end() - pos
        if best_kind is None:
            end = pos + 1
            while end < n and line[end] not in " \t":
                end += 1
            raise LexError(lineno, pos + 1, line[pos:end])
        yield Token(best_kind, line[pos:pos + best_len], lineno, pos + 1)
        pos += best_len


def tokenize(text: str, vendor: str = "cisco") -> List[Token]:
    """Split configuration text into tokens.

    Comment lines (``!`` for Cisco, ``#`` for Yamaha) are skipped; newlines
    only separate tokens.  Raises :class:`LexError` on the first character no
    rule matches.
    """
    if vendor not in VENDORS:
        raise ValueError(f"unknown vendor {vendor!r}")
    rules = _COMPILED[vendor]
    comment = COMMENT_CHAR[vendor]
    tokens: List[Token] = []
    for lineno, line in enumerate(normalize_lines(text, vendor), 1):
        stripped = line.lstrip(" \t")
        if not stripped or stripped.startswith(comment):
            continue
        if vendor == "cisco":
            m = _VERSION_LINE.match(line.strip())
            if m:
                offset = len(line) - len(stripped)
                tokens.append(Token("PLATFORM", m.group(1), lineno, offset + 1))
                tokens.append(Token("DEVICE_MODEL", m.group(2), lineno,
                                    offset + m.start(2) + 1))
                continue
        tokens.extend(_lex_line(line, lineno, rules))
    return tokens


def token_signature(tokens: Sequence[Token]) -> List[Tuple[str, str]]:
    """(kind, text) pairs with blanks inside multi-word tokens collapsed."""
    return [(t.kind, " ".join(t.text.split())) for t in tokens]
