"""
From a running-config to a model and back
==========================================

Tokenize and parse a small Cisco configuration, extract its device model
through the built-in mapping table, then generate commands from the model.
"""

from confmodel import (builtin_cisco_table, dump_tree, extract, generate, model_stats,
                       parse_text, serialize_model, tokenize)
from confmodel.fixtures.corpus import FIXTURES_DIR

text = (FIXTURES_DIR / "configs" / "list1.cfg").read_text()
print(text)

# tokens carry their kind, text and 1-based position
for tok in tokenize(text)[:6]:
    print(tok)

# the parse tree: one category per top-level command
tree = parse_text(text)
print(dump_tree(tree))

# mapping rows bind (subtree root, parent, target) to a slot
for rule in builtin_cisco_table().rules[:4]:
    print(rule.key, rule.presence, repr(rule.original), "->", rule.group, rule.item)

# the Absent row fills shutdown="false" on the VLAN interface
model = extract(tree)
print(serialize_model(model))
print(model_stats(model))

print(generate(model).text())
