"""Coloured mixed multigraphs with loops, directed edges and semi-edges.

The data model underlying the whole package: a graph is a set of coloured
vertices plus five kinds of coloured edges, each a first-class object with
its own id so that parallel edges can be told apart and edge mappings can
be written down explicitly.

Edge kinds (also the keywords of the textual format):

  edge   undirected normal edge between two distinct vertices
  arc    directed normal edge between two distinct vertices
  loop   undirected loop (contributes 2 to the degree)
  dloop  directed loop (contributes 1 to in- and 1 to out-degree)
  semi   semi-edge, a dangling half edge (contributes 1 to the degree)

Colour discipline: vertex colours, directed edge colours and undirected
edge colours come from pairwise disjoint namespaces.  Arcs and directed
loops may share colours; edges, loops and semi-edges may share colours.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator


UND = "u"
OUT = "o"
IN = "i"

EDGE_KINDS = ("edge", "arc", "loop", "dloop", "semi")
_DIRECTED_KINDS = frozenset({"arc", "dloop"})
_BINARY_KINDS = frozenset({"edge", "arc"})


class GraphError(ValueError):
    pass


class ParseError(GraphError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class Edge:
    """One edge of any kind; ``ends`` has two entries for edge/arc, one otherwise."""

    id: str
    kind: str
    colour: str
    ends: tuple[str, ...]

    @property
    def directed(self) -> bool:
        return self.kind in _DIRECTED_KINDS

    @property
    def u(self) -> str:
        return self.ends[0]

    @property
    def v(self) -> str:
        return self.ends[-1]

    @property
    def tail(self) -> str:
        return self.ends[0]

    @property
    def head(self) -> str:
        return self.ends[-1]

    def other_end(self, w: str) -> str:
        if self.kind in _BINARY_KINDS:
            a, b = self.ends
            if w == a:
                return b
            if w == b:
                return a
            raise GraphError(f"vertex {w!r} not an endpoint of edge {self.id!r}")
        if w != self.ends[0]:
            raise GraphError(f"vertex {w!r} not an endpoint of edge {self.id!r}")
        return w


class Graph:
    """A coloured mixed multigraph.

    Construct with ``add_vertex``/``add_edge`` and treat as immutable
    afterwards; every algorithm in the package assumes graphs do not
    change under its feet, which makes concurrent reads safe.
    """

    def __init__(self, name: str = "g"):
        self.name = name
        self._vcolour: dict[str, str] = {}
        self._edges: dict[str, Edge] = {}
        self._inc: dict[str, list[str]] = {}

    # construction -----------------------------------------------------

    def add_vertex(self, v: str, colour: str) -> None:
        v, colour = str(v), str(colour)
        if v in self._vcolour:
            raise GraphError(f"duplicate vertex id {v!r}")
        self._vcolour[v] = colour
        self._inc[v] = []

    def add_edge(self, kind: str, eid: str, colour: str, u: str, v: str | None = None) -> Edge:
        eid, colour, u = str(eid), str(colour), str(u)
        if kind not in EDGE_KINDS:
            raise GraphError(f"unknown edge kind {kind!r}")
        if eid in self._edges:
            raise GraphError(f"duplicate edge id {eid!r}")
        if kind in _BINARY_KINDS:
            if v is None:
                raise GraphError(f"{kind} needs two endpoints")
            v = str(v)
            if u == v:
                raise GraphError(
                    f"{kind} {eid!r} must join two distinct vertices"
                    + (" (directed loop must use dloop)" if kind == "arc" else " (use loop)")
                )
            ends = (u, v)
        else:
            if v is not None and str(v) != u:
                raise GraphError(f"{kind} has a single endpoint")
            ends = (u,)
        for w in ends:
            if w not in self._vcolour:
                raise GraphError(f"edge {eid!r} references unknown vertex {w!r}")
        e = Edge(eid, kind, colour, ends)
        self._edges[eid] = e
        self._inc[ends[0]].append(eid)
        if kind in _BINARY_KINDS:
            self._inc[ends[1]].append(eid)
        return e

    # queries ------------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._vcolour)

    @property
    def m(self) -> int:
        return len(self._edges)

    def vertices(self) -> list[str]:
        return list(self._vcolour)

    def has_vertex(self, v: str) -> bool:
        return v in self._vcolour

    def vertex_colour(self, v: str) -> str:
        return self._vcolour[v]

    def edges(self) -> Iterator[Edge]:
        return iter(self._edges.values())

    def edge(self, eid: str) -> Edge:
        return self._edges[eid]

    def has_edge(self, eid: str) -> bool:
        return eid in self._edges

    def incident(self, v: str) -> list[Edge]:
        return [self._edges[eid] for eid in self._inc[v]]

    def vertex_colours(self) -> set[str]:
        return set(self._vcolour.values())

    def edge_colours(self) -> set[str]:
        return {e.colour for e in self._edges.values()}

    def directed_colours(self) -> set[str]:
        return {e.colour for e in self._edges.values() if e.directed}

    def undirected_colours(self) -> set[str]:
        return {e.colour for e in self._edges.values() if not e.directed}

    def validate(self) -> None:
        """Check the colour-namespace discipline; construction checks the rest."""
        vcols = self.vertex_colours()
        dcols = self.directed_colours()
        ucols = self.undirected_colours()
        for a, b, what in (
            (vcols, dcols, "vertex and directed edge"),
            (vcols, ucols, "vertex and undirected edge"),
            (dcols, ucols, "directed and undirected edge"),
        ):
            clash = a & b
            if clash:
                raise GraphError(f"{what} colours must be disjoint, shared: {sorted(clash)}")

    def copy(self, name: str | None = None) -> "Graph":
        g = Graph(name if name is not None else self.name)
        for v, c in self._vcolour.items():
            g.add_vertex(v, c)
        for e in self._edges.values():
            g.add_edge(e.kind, e.id, e.colour, *e.ends)
        return g


# degrees and darts ------------------------------------------------------


def degree(g: Graph, v: str, colour: str, direction: str = UND) -> int:
    """The colour-degree of ``v``: semi-edges add 1, loops add 2, a directed
    loop adds 1 to both the in- and out-degree."""
    if not g.has_vertex(v):
        raise GraphError(f"unknown vertex {v!r}")
    if direction not in (UND, OUT, IN):
        raise GraphError(f"bad direction {direction!r}")
    total = 0
    for e in g.incident(v):
        if e.colour != colour:
            continue
        if direction == UND:
            if e.kind == "edge":
                total += 1
            elif e.kind == "loop":
                total += 2
            elif e.kind == "semi":
                total += 1
            elif e.directed:
                raise GraphError(f"colour {colour!r} is directed; query In or Out")
        else:
            if e.kind == "dloop":
                total += 1
            elif e.kind == "arc":
                if direction == OUT and e.tail == v:
                    total += 1
                if direction == IN and e.head == v:
                    total += 1
            else:
                raise GraphError(f"colour {colour!r} is undirected; query Undirected")
    return total


def total_degree(g: Graph, v: str) -> int:
    total = 0
    for e in g.incident(v):
        if e.kind in ("edge", "semi"):
            total += 1
        elif e.kind in ("loop", "dloop"):
            total += 2
        elif e.kind == "arc":
            total += 1
    return total


def dart_counts(g: Graph, v: str) -> dict[tuple[str, str], Counter]:
    """Per (colour, direction) counts of darts at ``v`` keyed by the vertex
    they lead to; loops lead back to ``v`` twice, semi-edges once."""
    out: dict[tuple[str, str], Counter] = {}

    def bump(colour, dtag, target, k=1):
        out.setdefault((colour, dtag), Counter())[target] += k

    for e in g.incident(v):
        if e.kind == "edge":
            bump(e.colour, UND, e.other_end(v))
        elif e.kind == "loop":
            bump(e.colour, UND, v, 2)
        elif e.kind == "semi":
            bump(e.colour, UND, v)
        elif e.kind == "dloop":
            bump(e.colour, OUT, v)
            bump(e.colour, IN, v)
        elif e.kind == "arc":
            if e.tail == v:
                bump(e.colour, OUT, e.head)
            if e.head == v:
                bump(e.colour, IN, e.tail)
    return out


# textual format -----------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse the line-based format; see the module docstring for the keywords."""
    g: Graph | None = None
    pending: list[tuple[int, tuple]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kw = tok[0]
        try:
            if kw == "graph":
                if g is not None:
                    raise ParseError("duplicate graph directive", lineno)
                if len(tok) != 2:
                    raise ParseError("graph directive takes one name", lineno)
                g = Graph(tok[1])
            elif kw == "vertex":
                if g is None:
                    raise ParseError("vertex before graph directive", lineno)
                if len(tok) != 3:
                    raise ParseError("vertex <id> <colour>", lineno)
                g.add_vertex(tok[1], tok[2])
            elif kw in ("edge", "arc"):
                if len(tok) != 5:
                    raise ParseError(f"{kw} <id> <colour> <u> <v>", lineno)
                pending.append((lineno, (kw, tok[1], tok[2], tok[3], tok[4])))
            elif kw in ("loop", "dloop", "semi"):
                if len(tok) != 4:
                    raise ParseError(f"{kw} <id> <colour> <u>", lineno)
                pending.append((lineno, (kw, tok[1], tok[2], tok[3], None)))
            else:
                raise ParseError(f"unknown directive {kw!r}", lineno)
        except GraphError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), lineno) from None
    if g is None:
        raise ParseError("missing graph directive")
    for lineno, (kind, eid, colour, u, v) in pending:
        try:
            g.add_edge(kind, eid, colour, u, v)
        except GraphError as exc:
            raise ParseError(str(exc), lineno) from None
    try:
        g.validate()
    except GraphError as exc:
        raise ParseError(str(exc)) from None
    return g


def serialize_graph(g: Graph) -> str:
    lines = [f"graph {g.name}"]
    for v in g.vertices():
        lines.append(f"vertex {v} {g.vertex_colour(v)}")
    for e in g.edges():
        lines.append(f"{e.kind} {e.id} {e.colour} {' '.join(e.ends)}")
    return "\n".join(lines) + "\n"


# structural operations ------------------------------------------------------


def project(g: Graph, vertices: Iterable[str] | None = None, colours: Iterable[str] | None = None) -> Graph:
    """Induced subgraph on ``vertices`` and/or spanning subgraph on ``colours``.

    With both arguments the result keeps the given vertices and exactly the
    edges of the given colours whose endpoints all survive.
    """
    if vertices is None:
        keep_v = set(g.vertices())
    else:
        keep_v = {str(v) for v in vertices}
        unknown = keep_v - set(g.vertices())
        if unknown:
            raise GraphError(f"unknown vertices in subset: {sorted(unknown)}")
    keep_c = None if colours is None else {str(c) for c in colours}
    out = Graph(g.name)
    for v in g.vertices():
        if v in keep_v:
            out.add_vertex(v, g.vertex_colour(v))
    for e in g.edges():
        if keep_c is not None and e.colour not in keep_c:
            continue
        if all(w in keep_v for w in e.ends):
            out.add_edge(e.kind, e.id, e.colour, *e.ends)
    return out


def components(g: Graph) -> list[list[str]]:
    """Connected components under all edges regardless of direction.

    Semi-edges do not connect anything.  Components are returned sorted,
    each as a sorted vertex list.
    """
    seen: set[str] = set()
    comps = []
    adj: dict[str, set[str]] = {v: set() for v in g.vertices()}
    for e in g.edges():
        if len(e.ends) == 2:
            a, b = e.ends
            adj[a].add(b)
            adj[b].add(a)
    for start in g.vertices():
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    comps.sort()
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def is_tree(g: Graph) -> bool:
    """Connected, no loops, no semi-edges, no parallel/opposite pairs, no cycles."""
    if g.n == 0 or not is_connected(g):
        return False
    if any(e.kind in ("loop", "dloop", "semi") for e in g.edges()):
        return False
    return g.m == g.n - 1


OPEN_PATH = "open_path"
EVEN_CYCLE = "even_cycle"
ODD_CYCLE = "odd_cycle"
OTHER = "other"


def classify_component_shape(g: Graph) -> str:
    """Classify a connected monochromatic undirected graph.

    Loops count as cycles of length 1 and a pair of parallel edges as a
    cycle of length 2.  An open path may end in semi-edge stubs, so a lone
    vertex with two semi-edges is an open path of length zero.
    """
    if g.n == 0:
        raise GraphError("empty graph has no shape")
    if not is_connected(g):
        raise GraphError("component shape needs a connected graph")
    if len(g.edge_colours()) > 1:
        raise GraphError("component shape needs a monochromatic graph")
    if any(e.directed for e in g.edges()):
        raise GraphError("component shape is defined for undirected graphs")
    normal = {v: 0 for v in g.vertices()}
    semis = {v: 0 for v in g.vertices()}
    for e in g.edges():
        if e.kind == "edge":
            normal[e.u] += 1
            normal[e.v] += 1
        elif e.kind == "loop":
            normal[e.u] += 2
        elif e.kind == "semi":
            semis[e.u] += 1
    if any(normal[v] + semis[v] > 2 for v in g.vertices()):
        return OTHER
    if all(normal[v] == 2 for v in g.vertices()) and not any(semis.values()):
        return EVEN_CYCLE if g.m % 2 == 0 else ODD_CYCLE
    if any(normal[v] <= 1 for v in g.vertices()):
        return OPEN_PATH
    return OTHER
