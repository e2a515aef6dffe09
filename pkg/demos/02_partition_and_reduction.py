"""Degree partitions, refinement matrices and the degree-adjusting reduction.

Run:  python3 demos/02_partition_and_reduction.py
"""

from coverkit import degree_adjust, degree_partition, normalize_colours, serialize_graph
from coverkit.gadgets import fw2_target, limping_tripod

lt = limping_tripod()
part, matrix = degree_partition(lt)
print("the limping tripod splits into blocks:")
for i, block in enumerate(part.blocks):
    print(f"  block {i}: {block}")
print("refinement matrix entries (from, to, colour, direction) -> count:")
for key, cnt in sorted(matrix.entries.items()):
    print("  ", key, "->", cnt)

norm = normalize_colours(lt, part)
print("\nnormalized colours:", sorted(norm.vertex_colours()), sorted(norm.edge_colours()))

h = fw2_target()
red, record = degree_adjust(h)
print("\nthe dangerous bundle target reduces to:")
print(serialize_graph(red))
print("both two-edge chains collapsed into loops of one fresh colour,")
print("whose cover problem is plainly polynomial (2-factorizations).")
print("pattern dictionary:", record.path_patterns)
