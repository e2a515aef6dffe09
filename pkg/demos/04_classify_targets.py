"""The harmless/dangerous/harmful trichotomy and the complexity verdict.

Run:  python3 demos/04_classify_targets.py
"""

from coverkit import parse_graph, verdict
from coverkit.gadgets import fw2_target, fw_target, gadget_target, wd_target

targets = {
    "three semi-edges on one vertex": parse_graph(
        "graph f30\nvertex x n\nsemi a e x\nsemi b e x\nsemi c e x\n"
    ),
    "two semi-edges on one vertex": parse_graph(
        "graph f20\nvertex x n\nsemi a e x\nsemi b e x\n"
    ),
    "hub with 2-bundles (standalone)": fw2_target(),
    "hub with 3-bundles": fw_target(3),
    "directed doublet, 2 loops + 1 arc each way": wd_target(2, 1),
    "directed doublet, 1 loop + 1 arc each way": wd_target(1, 1),
    "2-bundle hub + loops on the doublet": gadget_target("dk", 1),
    "complete graph on 4": parse_graph(
        "graph k4\n" + "".join(f"vertex {i} n\n" for i in range(4))
        + "".join(f"edge e{i}{j} e {i} {j}\n" for i in range(4) for j in range(i + 1, 4))
    ),
}

for name, h in targets.items():
    v = verdict(h)
    print(f"{name:45s} -> {v.kind}")
    print(f"{'':45s}    {v.reason}")
