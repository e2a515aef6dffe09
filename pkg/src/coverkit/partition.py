"""Degree partitions, colour normalization and the degree-adjusting reduction.

The degree partition is the coarsest equitable partition of the vertex set:
same-block vertices share a colour and have the same number of darts of
every edge colour into every block (loops count twice, semi-edges once,
both towards the own block).  Refinement starts from the vertex colours
and splits blocks by signature until stable; blocks are kept in a
canonical order so that isomorphic graphs produce identical refinement
matrices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .graphs import (
    Graph,
    GraphError,
    IN,
    OUT,
    UND,
    components,
    dart_counts,
    is_connected,
    is_tree,
    total_degree,
)


class ReductionError(GraphError):
    pass


@dataclass
class Partition:
    blocks: list[list[str]]
    block_of: dict[str, int]

    @property
    def k(self) -> int:
        return len(self.blocks)

    def singletons(self) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if len(b) == 1]

    def doublets(self) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if len(b) == 2]


@dataclass
class RefinementMatrix:
    k: int
    entries: dict[tuple[int, int, str, str], int]

    def get(self, i: int, j: int, colour: str, direction: str = UND) -> int:
        return self.entries.get((i, j, colour, direction), 0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RefinementMatrix)
            and self.k == other.k
            and self.entries == other.entries
        )


def _signature(g: Graph, v: str, block_of: dict[str, int]):
    sig = []
    for (colour, dtag), targets in dart_counts(g, v).items():
        per_block: dict[int, int] = {}
        for w, cnt in targets.items():
            b = block_of[w]
            per_block[b] = per_block.get(b, 0) + cnt
        for b, cnt in per_block.items():
            sig.append((colour, dtag, b, cnt))
    sig.sort()
    return tuple(sig)


def degree_partition(g: Graph) -> tuple[Partition, RefinementMatrix]:
    """Coarsest equitable partition in canonical order plus its matrix.

    Canonical order: blocks start as vertex-colour classes sorted by
    colour; each refinement round sorts the parts of a split block by
    their signature, after the parts of earlier blocks.  No vertex
    identity enters a sort key, so relabelling cannot change the result.
    """
    if g.n == 0:
        return Partition([], {}), RefinementMatrix(0, {})
    colours = sorted({g.vertex_colour(v) for v in g.vertices()})
    blocks = [sorted(v for v in g.vertices() if g.vertex_colour(v) == c) for c in colours]
    block_of = {v: i for i, b in enumerate(blocks) for v in b}
    while True:
        new_blocks: list[list[str]] = []
        for block in blocks:
            groups: dict[tuple, list[str]] = {}
            for v in block:
                groups.setdefault(_signature(g, v, block_of), []).append(v)
            for sig in sorted(groups):
                new_blocks.append(sorted(groups[sig]))
        if len(new_blocks) == len(blocks):
            break
        blocks = new_blocks
        block_of = {v: i for i, b in enumerate(blocks) for v in b}
    part = Partition(blocks, block_of)
    entries: dict[tuple[int, int, str, str], int] = {}
    for i, block in enumerate(blocks):
        rep = block[0]
        for (colour, dtag), targets in dart_counts(g, rep).items():
            for w, cnt in targets.items():
                key = (i, block_of[w], colour, dtag)
                entries[key] = entries.get(key, 0) + cnt
    return part, RefinementMatrix(len(blocks), entries)


def is_equitable(g: Graph, part: Partition) -> bool:
    for block in part.blocks:
        if len({g.vertex_colour(v) for v in block}) > 1:
            return False
        sigs = {_signature(g, v, part.block_of) for v in block}
        if len(sigs) > 1:
            return False
    return True


def normalize_colours(g: Graph, part: Partition) -> Graph:
    """Re-colour so blocks are distinguished by vertex colour and every edge
    colour lives within one block or between one block pair.

    Interblock directed edges are de-oriented; the direction survives in
    the fresh colour name (tagged by the tail's block) so cover-equivalence
    is preserved.  Vertex and edge ids are untouched and the degree
    partition of the result equals ``part``.
    """
    if not is_equitable(g, part):
        raise GraphError("partition is not equitable for this graph")
    out = Graph(g.name)
    for v in g.vertices():
        out.add_vertex(v, f"b{part.block_of[v]:03d}")
    for e in g.edges():
        bi = part.block_of[e.ends[0]]
        bj = part.block_of[e.ends[-1]]
        if bi == bj:
            out.add_edge(e.kind, e.id, f"c{bi}.{bi}.{e.colour}", *e.ends)
        else:
            lo, hi = min(bi, bj), max(bi, bj)
            if e.kind == "arc":
                tag = "f" if bi == lo else "b"
                out.add_edge("edge", e.id, f"c{lo}.{hi}.{e.colour}.{tag}", *e.ends)
            else:
                out.add_edge(e.kind, e.id, f"c{lo}.{hi}.{e.colour}", *e.ends)
    out.validate()
    return out


# degree-adjusting reduction -------------------------------------------------


@dataclass
class ReductionRecord:
    """Shared pattern dictionaries of a reduction run.

    Reducing a pair with one record gives identical structures identical
    fresh colours in both graphs, which is what makes the reduction
    preserve cover existence.
    """

    tree_codes: dict = field(default_factory=dict)
    path_patterns: dict = field(default_factory=dict)

    def tree_colour(self, code) -> str:
        if code not in self.tree_codes:
            self.tree_codes[code] = f"t{len(self.tree_codes)}"
        return self.tree_codes[code]

    def pattern_colour(self, key) -> str:
        if key not in self.path_patterns:
            self.path_patterns[key] = f"p{len(self.path_patterns)}"
        return self.path_patterns[key]

    def to_json(self) -> str:
        return json.dumps(
            {
                "tree_codes": {repr(k): v for k, v in self.tree_codes.items()},
                "path_patterns": {repr(k): v for k, v in self.path_patterns.items()},
            },
            indent=2,
            sort_keys=True,
        )


def _core_vertices(g: Graph) -> set[str]:
    # Vertices on cycles, carrying semi-edges, or on paths connecting those:
    # iteratively delete degree-1 vertices without semi-edges.
    deg = {v: 0 for v in g.vertices()}
    semi = {v: False for v in g.vertices()}
    adj: dict[str, list[tuple[str, str]]] = {v: [] for v in g.vertices()}
    for e in g.edges():
        if e.kind == "semi":
            semi[e.u] = True
            deg[e.u] += 1
        elif e.kind in ("loop", "dloop"):
            deg[e.u] += 2
        else:
            deg[e.ends[0]] += 1
            deg[e.ends[1]] += 1
            adj[e.ends[0]].append((e.ends[1], e.id))
            adj[e.ends[1]].append((e.ends[0], e.id))
    alive = set(g.vertices())
    queue = [v for v in alive if deg[v] <= 1 and not semi[v]]
    while queue:
        v = queue.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w, _ in adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] <= 1 and not semi[w]:
                    queue.append(w)
    return alive


def _rooted_code(g: Graph, root: str, branch: set[str]):
    # Canonical code of the pending tree rooted at a core vertex; children
    # are the pruned branch vertices only.
    def code(v, parent):
        kids = []
        for e in g.incident(v):
            if len(e.ends) != 2:
                continue
            w = e.other_end(v)
            if w == parent or w not in branch:
                continue
            if e.kind == "arc":
                rel = OUT if e.tail == v else IN
            else:
                rel = UND
            kids.append((e.colour, rel, code(w, v)))
        kids.sort()
        return (g.vertex_colour(v), tuple(kids))

    return code(root, None)


def _prune_trees(g: Graph, record: ReductionRecord) -> Graph:
    core = _core_vertices(g)
    if not core:
        raise ReductionError("graph reduced to nothing; was it a tree?")
    pruned = set(g.vertices()) - core
    out = Graph(g.name)
    for v in sorted(core):
        code = _rooted_code(g, v, pruned)
        out.add_vertex(v, record.tree_colour(code))
    for e in g.edges():
        if all(w in core for w in e.ends):
            out.add_edge(e.kind, e.id, e.colour, *e.ends)
    return out


def _chain_walks(g: Graph):
    """Decompose all edges into maximal chains through degree-2 vertices.

    Yields 5-tuples (kind, u, w, seq, edge_ids) where kind is 'open'
    (chain between two branch vertices), 'closed' (both ends the same
    branch vertex, covers loops) or 'semi' (chain running into a
    semi-edge).  seq is the colour pattern along the walk: entries
    ('e', colour, dir) and ('v', colour) with dir in {-1, 0, 1} relative
    to the walk direction.  Assumes some vertex has total degree > 2.
    """
    branch = {v for v in g.vertices() if total_degree(g, v) > 2}
    seen: set[frozenset] = set()

    def walk(start, first_edge):
        seq: list[tuple] = []
        ids = [first_edge.id]
        v, e = start, first_edge
        while True:
            if e.kind == "arc":
                seq.append(("e", e.colour, 1 if e.tail == v else -1))
            else:
                seq.append(("e", e.colour, 0))
            w = e.other_end(v)
            if w in branch:
                return ("closed" if w == start else "open", start, w, seq, ids)
            seq.append(("v", g.vertex_colour(w)))
            nxt = [f for f in g.incident(w) if f.id != e.id]
            if len(nxt) != 1:
                raise ReductionError(f"vertex {w!r} is not on a clean chain")
            f = nxt[0]
            if f.kind == "semi":
                ids.append(f.id)
                return ("semi", start, w, seq, ids)
            ids.append(f.id)
            v, e = w, f

    for u in sorted(branch):
        for e in sorted(g.incident(u), key=lambda e: e.id):
            if e.kind == "semi":
                key = frozenset([e.id])
                if key not in seen:
                    seen.add(key)
                    yield ("semi", u, u, [], [e.id])
            elif e.kind in ("loop", "dloop"):
                key = frozenset([e.id])
                if key not in seen:
                    seen.add(key)
                    d = 0 if e.kind == "loop" else 1
                    yield ("closed", u, u, [("e", e.colour, d)], [e.id])
            else:
                item = walk(u, e)
                key = frozenset(item[4])
                if key not in seen:
                    seen.add(key)
                    yield item


def _flip(seq):
    out = []
    for item in reversed(seq):
        if item[0] == "e":
            out.append(("e", item[1], -item[2]))
        else:
            out.append(item)
    return out


def _pattern_key(seq):
    """Canonical dictionary key for a chain pattern.

    A symmetric pattern with an odd number of edges decomposes as
    pi + middle-edge + reversed(pi); such chains share their colour with
    semi-edge chains of pattern (pi, middle colour), because a covering
    projection may fold the symmetric chain onto the dangling one.
    """
    fwd = tuple(seq)
    bwd = tuple(_flip(seq))
    canon = min(fwd, bwd)
    symmetric = fwd == bwd
    n_edges = sum(1 for it in canon if it[0] == "e")
    if symmetric and n_edges % 2 == 1:
        mid = (len(canon) - 1) // 2
        pi = canon[:mid]
        alpha = canon[mid][1]
        return ("semi", pi, alpha), True, canon is fwd
    return ("pat", canon), symmetric, bwd < fwd


def _semi_chain_key(seq, alpha):
    return ("semi", tuple(seq), alpha)


def degree_adjust(g: Graph, record: ReductionRecord | None = None) -> tuple[Graph, ReductionRecord]:
    """The degree-adjusting reduction of a connected non-tree graph.

    Prunes pending trees (recolouring their roots by isomorphism type),
    quits on paths and cycles, otherwise contracts every maximal chain of
    degree-2 vertices into a single pattern-coloured edge, loop or
    semi-edge.  The result is a path, a cycle, a single vertex, or has
    minimum degree greater than 2.
    """
    if record is None:
        record = ReductionRecord()
    if not is_connected(g):
        raise ReductionError("reduction needs a connected graph")
    if is_tree(g):
        raise ReductionError("reduction is undefined for trees")
    g1 = _prune_trees(g, record)
    if all(total_degree(g1, v) <= 2 for v in g1.vertices()):
        return g1, record
    out = Graph(g.name)
    branch = {v for v in g1.vertices() if total_degree(g1, v) > 2}
    for v in sorted(branch):
        out.add_vertex(v, g1.vertex_colour(v))
    counter = 0
    for item in _chain_walks(g1):
        counter += 1
        eid = f"r{counter}"
        kind = item[0]
        if kind == "semi":
            _, u, _, seq, ids = item
            alpha = g1.edge(ids[-1]).colour
            colour = record.pattern_colour(_semi_chain_key(seq, alpha))
            out.add_edge("semi", eid, colour, u)
        else:
            _, u, w, seq, ids = item
            key, symmetric, reverse = _pattern_key(seq)
            colour = record.pattern_colour(key)
            if kind == "closed":
                out.add_edge("loop" if symmetric else "dloop", eid, colour, u)
            elif symmetric:
                out.add_edge("edge", eid, colour, u, w)
            else:
                a, b = (w, u) if reverse else (u, w)
                out.add_edge("arc", eid, colour, a, b)
    out.validate()
    return out, record


def reduce_pair(g: Graph, h: Graph) -> tuple[Graph, Graph, ReductionRecord]:
    """Reduce both graphs with one shared pattern dictionary."""
    record = ReductionRecord()
    gr, _ = degree_adjust(g, record)
    hr, _ = degree_adjust(h, record)
    return gr, hr, record


def is_balanced(h: Graph, part: Partition | None = None) -> bool:
    """Both vertices of every doublet block carry the same number of
    semi-edges of each colour."""
    if part is None:
        part, _ = degree_partition(h)
    for i in part.doublets():
        a, b = part.blocks[i]
        counts = []
        for w in (a, b):
            c: dict[str, int] = {}
            for e in h.incident(w):
                if e.kind == "semi":
                    c[e.colour] = c.get(e.colour, 0) + 1
            counts.append(c)
        if counts[0] != counts[1]:
            return False
    return True
