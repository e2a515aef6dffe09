"""Tour of the graph model: the five edge kinds, degrees, components.

Run:  python3 demos/01_graph_basics.py
"""

from coverkit import (
    classify_component_shape,
    components,
    degree,
    parse_graph,
    serialize_graph,
)

TEXT = """\
graph tour
# one vertex with a dangling semi-edge and a loop
vertex a black
vertex b black
vertex c black
edge  e1 red a b
edge  e2 red b c
loop  l1 red c
semi  s1 red a
arc   d1 blue a c
dloop d2 blue b
"""

g = parse_graph(TEXT)
print(f"parsed graph {g.name!r}: {g.n} vertices, {g.m} edges")
print("round-trips bit-for-bit:", serialize_graph(parse_graph(serialize_graph(g))) == serialize_graph(g))

print("\ndegrees count a semi-edge once and a loop twice:")
for v in g.vertices():
    print(f"  deg_red({v}) = {degree(g, v, 'red')}", end="")
    print(f"   deg_blue_out({v}) = {degree(g, v, 'blue', 'o')}, in = {degree(g, v, 'blue', 'i')}")

print("\ncomponents (semi-edges dangle, they connect nothing):", components(g))

lone = parse_graph("graph stub\nvertex x n\nsemi s1 e x\nsemi s2 e x\n")
print("a lone vertex with two semi-edge stubs is an", classify_component_shape(lone))
ring = parse_graph("graph ring\nvertex u n\nvertex v n\nedge p e u v\nedge q e u v\n")
print("two parallel edges form an", classify_component_shape(ring), "(a cycle of length 2)")
loop = parse_graph("graph tiny\nvertex u n\nloop p e u\n")
print("a loop is an", classify_component_shape(loop), "(a cycle of length 1)")
