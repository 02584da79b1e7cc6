"""
A nine-router OSPF campus
=========================

Extract every device of the bundled campus network in parallel, summarise
what each model holds, and list the OSPF virtual-links between routers.
"""

from confmodel import aggregate_stats, extract_multi, model_stats, roundtrip_check
from confmodel.fixtures.corpus import devices

results = extract_multi([(f.config_path, f.vendor) for f in devices()])
models = {r.name: r.model for r in results if r.ok}

print(f"{'device':10} {'model':8} {'slots':>5} {'kinds':>5} {'groups':>6}")
for name, m in models.items():
    s = model_stats(m)
    hw = m.config.slots.get("deviceModel", "-")
    print(f"{name:10} {hw:8} {s['slotValueCount']:5} {s['distinctItemKinds']:5} "
          f"{s['groupValueCount']:6}")
print(aggregate_stats(list(models.values())))

# router ids and virtual-link peers
router_ids = {}
for name, m in models.items():
    for ospf in m.by_group("CiscoOspfSetting"):
        router_ids[ospf.slots["routerId"]] = name
for name, m in models.items():
    for vl in m.by_group("OspfVirtualLink"):
        peer = router_ids.get(vl.slots["routerId"], "?")
        print(f"{name} -- area {vl.slots['area']} virtual-link --> {peer}")

# every device survives extract -> generate -> extract unchanged
for f in devices():
    print(f.id, "round trip", "OK" if roundtrip_check(f.text()).equal else "DIFF")
