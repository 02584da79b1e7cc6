"""
Changing the mapping table
==========================

Mapping tables are plain TSV files.  Here the shutdown rows are rewritten to
store "down"/"up" instead of "true"/"false"; the metamodel's boolean check
then flags the model, which shows that extraction and validation are
decoupled.  The Yamaha table is shown at the end.
"""

import tempfile
from pathlib import Path

from confmodel import (builtin_metamodel, builtin_cisco_table, extract_text, generate,
                       load_mapping, validate_model)
from confmodel.mapping import dump_mapping

text = "interface FastEthernet1\n shutdown\ninterface FastEthernet2\n"

tsv = dump_mapping(builtin_cisco_table())
tsv = tsv.replace("\t.+\ttrue\t", "\t.+\tdown\t").replace("\t.*\tfalse\t", "\t.*\tup\t")
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "updown.tsv"
    path.write_text(tsv)
    table = load_mapping(path, "cisco")

m = extract_text(text, table=table)
for gv in m.by_group("CiscoEthernetSetting"):
    print(gv.name, gv.slots)
for v in validate_model(m, builtin_metamodel()):
    print("violation:", v)

yamaha = """\
ip lan1 address 192.168.0.1/24
vlan lan1/1 802.1q vid=10
ip lan1/1 address 192.168.10.1/24
ip route default gateway 192.168.0.254
"""
ym = extract_text(yamaha, "yamaha")
for gv in ym.group_values:
    print(gv, gv.slots)
print(generate(ym).text())
