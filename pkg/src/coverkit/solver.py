"""The polynomial cover-decision algorithm for harmless targets.

Pipeline: degree partitions and refinement matrices must agree; singleton
target blocks are checked directly (component shapes, perfect matchings,
stray semi-edges); doublet blocks with semi-edges are preprocessed into
forced assignments; the remaining freedom is a conjunction of parity
constraints solved as 2-SAT; a satisfying assignment is then completed to
an explicit edge mapping by matching and factorization.

The solver refuses targets it is not specified for: disconnected ones,
blocks of more than two vertices, and targets containing a dangerous or
harmful block graph (use the oracle for those).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import matching as mt
from .classify import (
    DANGEROUS,
    HARMLESS,
    BlockGraph,
    block_shapes,
    classify_shape,
)
from .covers import CoveringProjection, InternalCoverError, verify_cover
from .graphs import Graph, GraphError, classify_component_shape, components, is_connected, project
from .graphs import EVEN_CYCLE, ODD_CYCLE, OPEN_PATH
from .partition import Partition, degree_partition, normalize_colours
from .twosat import TwoSat


class UnsupportedTarget(GraphError):
    pass


@dataclass
class SolveTrace:
    matrix_ok: bool | None = None
    steps: list[dict] = field(default_factory=list)
    units: dict[str, bool] = field(default_factory=dict)
    matchings: dict = field(default_factory=dict)  # (block, colour) -> list of edge ids
    assignment: dict[str, bool] | None = None
    completion: list[str] = field(default_factory=list)
    failure: str | None = None

    def step(self, blocks, colour, subcase, **detail):
        """One entry per (block set, colour); a colour handled by both a
        preprocessing and a clause subcase accumulates its tags."""
        for entry in self.steps:
            if entry["blocks"] == list(blocks) and entry["colour"] == colour:
                entry["subcase"] = f"{entry['subcase']}+{subcase}"
                entry.update(detail)
                return
        self.steps.append({"blocks": list(blocks), "colour": colour, "subcase": subcase, **detail})

    def to_dict(self) -> dict:
        return {
            "matrix_ok": self.matrix_ok,
            "steps": self.steps,
            "units": self.units,
            "matchings": {f"{b}:{c}": ids for (b, c), ids in self.matchings.items()},
            "assignment": self.assignment,
            "completion": self.completion,
            "failure": self.failure,
        }


@dataclass
class SolveResult:
    status: str  # "yes" | "no"
    projection: CoveringProjection | None
    trace: SolveTrace

    @property
    def yes(self) -> bool:
        return self.status == "yes"


def _semis_at(g: Graph, v: str, colour: str) -> int:
    return sum(1 for e in g.incident(v) if e.kind == "semi" and e.colour == colour)


def _loops_at(g: Graph, v: str, colour: str, kind: str = "loop") -> int:
    return sum(1 for e in g.incident(v) if e.kind == kind and e.colour == colour)


def _block_subgraph(g: Graph, verts, colour: str) -> Graph:
    return project(g, vertices=verts, colours=[colour])


def check_singletons(gn: Graph, hn: Graph, pg: Partition, ph: Partition,
                     shapes: list[BlockGraph], trace: SolveTrace) -> bool:
    """Singleton target blocks: semi-edge budgets, component shapes for the
    two-semi-edge target, perfect matchings for the one-semi-edge target."""
    for bg in shapes:
        if len(bg.blocks) != 1:
            continue
        i = bg.blocks[0]
        if len(ph.blocks[i]) != 1:
            continue
        colour = bg.colour
        fam, params = bg.shape.family, bg.shape.params
        fibre = _block_subgraph(gn, pg.blocks[i], colour)
        if fam == "FD" or (fam == "F" and params[0] == 0):
            if any(e.kind == "semi" for e in fibre.edges()):
                trace.step(bg.blocks, colour, "3C", result="stray semi-edge")
                return False
            trace.step(bg.blocks, colour, "3C", result="ok")
        elif fam == "F" and params[0] == 1:
            semi_verts = [v for v in fibre.vertices() if _semis_at(fibre, v, colour) > 0]
            if any(_semis_at(fibre, v, colour) >= 2 for v in fibre.vertices()):
                trace.step(bg.blocks, colour, "3B", result="vertex with two semi-edges")
                return False
            rest = project(fibre, vertices=[v for v in fibre.vertices() if v not in semi_verts])
            matching = mt.general_perfect_matching(rest)
            if matching is None:
                trace.step(bg.blocks, colour, "3B", result="no perfect matching")
                return False
            trace.matchings[(i, colour)] = matching
            trace.step(bg.blocks, colour, "3B", result="ok", matching_size=len(matching))
        elif fam == "F" and params == (2, 0):
            for comp in components(fibre):
                shape = classify_component_shape(project(fibre, vertices=comp))
                if shape not in (OPEN_PATH, EVEN_CYCLE):
                    trace.step(bg.blocks, colour, "3A", result=f"bad component ({shape})")
                    return False
            trace.step(bg.blocks, colour, "3A", result="ok")
        else:
            raise InternalCoverError(f"singleton shape {bg.shape} is not harmless")
    return True


def preprocess_doublets(gn: Graph, hn: Graph, pg: Partition, ph: Partition,
                        shapes: list[BlockGraph], trace: SolveTrace) -> bool:
    """Doublet target blocks with semi-edges force vertex images; the
    semi-edge-free doublet shapes reject stray semi-edges outright."""
    for bg in shapes:
        if len(bg.blocks) != 1:
            continue
        i = bg.blocks[0]
        if len(ph.blocks[i]) != 2:
            continue
        colour = bg.colour
        fam = bg.shape.family
        hb, hc = ph.blocks[i]
        fibre = _block_subgraph(gn, pg.blocks[i], colour)
        if fam == "W":
            k, m, l, p, q = bg.shape.params
            target_semis = {x: _semis_at(hn, x, colour) for x in (hb, hc)}
            if max(target_semis.values()) == 0:
                # doublet analogue of Subcase 3C: no semi-edge may appear
                if any(e.kind == "semi" for e in fibre.edges()):
                    trace.step(bg.blocks, colour, "5A" if l == 0 else "5B", result="stray semi-edge")
                    return False
                continue
            if (k, q) == (2, 2):
                for comp in components(fibre):
                    shape = classify_component_shape(project(fibre, vertices=comp))
                    if shape == ODD_CYCLE:
                        trace.step(bg.blocks, colour, "4A", result="odd cycle component")
                        return False
                trace.step(bg.blocks, colour, "4A", result="ok")
            elif (k, m, l, p, q) == (2, 0, 0, 1, 0):
                semi_side = hb if target_semis[hb] == 2 else hc
                loop_side = hc if semi_side == hb else hb
                for comp in components(fibre):
                    shape = classify_component_shape(project(fibre, vertices=comp))
                    if shape == OPEN_PATH:
                        side = semi_side
                    elif shape == ODD_CYCLE:
                        side = loop_side
                    else:
                        continue
                    for v in comp:
                        val = side == hb
                        if trace.units.get(v, val) != val:
                            trace.step(bg.blocks, colour, "4B", result="conflicting forced images")
                            return False
                        trace.units[v] = val
                trace.step(bg.blocks, colour, "4B", result="ok")
            elif (k, q) == (1, 1) and l == 0:
                if any(_semis_at(fibre, v, colour) >= 2 for v in fibre.vertices()):
                    trace.step(bg.blocks, colour, "4C", result="vertex with two semi-edges")
                    return False
                semi_verts = {v for v in fibre.vertices() if _semis_at(fibre, v, colour) > 0}
                rest = project(fibre, vertices=[v for v in fibre.vertices() if v not in semi_verts])
                matching = mt.general_perfect_matching(rest)
                if matching is None:
                    trace.step(bg.blocks, colour, "4C", result="no perfect matching")
                    return False
                trace.matchings[(i, colour)] = matching
                trace.step(bg.blocks, colour, "4C", result="ok", matching_size=len(matching))
            elif (k, m, l, p, q) == (1, 0, 1, 0, 1):
                if any(_semis_at(fibre, v, colour) >= 2 for v in fibre.vertices()):
                    trace.step(bg.blocks, colour, "4D", result="vertex with two semi-edges")
                    return False
                trace.step(bg.blocks, colour, "4D", result="ok")
            else:
                raise InternalCoverError(f"doublet shape {bg.shape} is not harmless")
    return True


def _neighbour_list(g: Graph, v: str, colour: str, direction: str | None = None) -> list[str]:
    """Adjacent vertices with multiplicity; loops list the vertex itself
    twice (directed loops once per direction)."""
    out = []
    for e in g.incident(v):
        if e.colour != colour:
            continue
        if e.kind == "edge" and direction is None:
            out.append(e.other_end(v))
        elif e.kind == "loop" and direction is None:
            out.extend([v, v])
        elif e.kind == "arc" and direction == "out" and e.tail == v:
            out.append(e.head)
        elif e.kind == "arc" and direction == "in" and e.head == v:
            out.append(e.tail)
        elif e.kind == "dloop" and direction in ("out", "in"):
            out.append(v)
    return out


def build_2sat(gn: Graph, hn: Graph, pg: Partition, ph: Partition,
               shapes: list[BlockGraph], trace: SolveTrace) -> TwoSat:
    """Emit the parity constraints of the harmless block graphs.

    Truth convention: the variable of a doublet-block vertex is true when
    it maps onto the lexicographically first target vertex of its block.
    """
    sat = TwoSat()
    for bg in shapes:
        colour = bg.colour
        if len(bg.blocks) == 1:
            i = bg.blocks[0]
            if len(ph.blocks[i]) != 2:
                continue
            fam = bg.shape.family
            fibre = _block_subgraph(gn, pg.blocks[i], colour)
            if fam == "W":
                k, m, l, p, q = bg.shape.params
                if (k, m, l, p, q) == (1, 0, 1, 0, 1):
                    for v in fibre.vertices():
                        nbrs = _neighbour_list(fibre, v, colour)
                        if len(nbrs) == 1:
                            sat.add_antivalence(v, nbrs[0])
                        elif len(nbrs) == 2:
                            sat.add_antivalence(nbrs[0], nbrs[1])
                        else:
                            raise InternalCoverError("degree drift in subcase 5C")
                    trace.step(bg.blocks, colour, "5C", clauses=len(sat.clauses))
                elif l == 0:
                    for e in fibre.edges():
                        if e.kind == "edge":
                            sat.add_equivalence(e.u, e.v)
                    trace.step(bg.blocks, colour, "5A", clauses=len(sat.clauses))
                else:
                    # connected bipartite uniblock graph: l-bundle between the two
                    for e in fibre.edges():
                        if e.kind == "edge":
                            sat.add_antivalence(e.u, e.v)
                        elif e.kind == "loop":
                            sat.add_antivalence(e.u, e.u)
                    trace.step(bg.blocks, colour, "5B", clauses=len(sat.clauses))
            elif fam == "WD":
                m, l, _ = bg.shape.params
                if (m, l) == (1, 1):
                    for v in fibre.vertices():
                        for direction in ("out", "in"):
                            nbrs = _neighbour_list(fibre, v, colour, direction)
                            if len(nbrs) != 2:
                                raise InternalCoverError("degree drift in subcase 5D")
                            sat.add_antivalence(nbrs[0], nbrs[1])
                    trace.step(bg.blocks, colour, "5D", clauses=len(sat.clauses))
                elif l == 0:
                    for e in fibre.edges():
                        if e.kind == "arc":
                            sat.add_equivalence(e.tail, e.head)
                    trace.step(bg.blocks, colour, "5A", clauses=len(sat.clauses))
                else:
                    for e in fibre.edges():
                        if e.kind == "arc":
                            sat.add_antivalence(e.tail, e.head)
                        elif e.kind == "dloop":
                            sat.add_antivalence(e.u, e.u)
                    trace.step(bg.blocks, colour, "5B", clauses=len(sat.clauses))
        else:
            i, j = bg.blocks
            fam = bg.shape.family
            sub = project(gn, vertices=pg.blocks[i] + pg.blocks[j], colours=[colour])
            if fam == "FF":
                trace.step(bg.blocks, colour, "6", note="forced at edge completion")
                continue
            if fam == "FW":
                if bg.shape.params[0] == 0:
                    continue
                if bg.shape.params[0] != 1:
                    raise InternalCoverError(f"interblock shape {bg.shape} is not harmless")
                hub_block = i if len(ph.blocks[i]) == 1 else j
                for v in pg.blocks[hub_block]:
                    nbrs = _neighbour_list(sub, v, colour)
                    if len(nbrs) != 2:
                        raise InternalCoverError("degree drift in subcase 5E")
                    sat.add_antivalence(nbrs[0], nbrs[1])
                trace.step(bg.blocks, colour, "5E", clauses=len(sat.clauses))
            elif fam == "WW":
                hi, lo = bg.shape.params
                if (hi, lo) == (1, 1):
                    for v in sub.vertices():
                        nbrs = _neighbour_list(sub, v, colour)
                        if len(nbrs) != 2:
                            raise InternalCoverError("degree drift in subcase 5F")
                        sat.add_antivalence(nbrs[0], nbrs[1])
                    trace.step(bg.blocks, colour, "5F", clauses=len(sat.clauses))
                elif lo == 0:
                    bi, bj = ph.blocks[i][0], ph.blocks[j][0]
                    parallel = any(
                        e.colour == colour and set(e.ends) == {bi, bj} for e in hn.edges()
                    )
                    for e in sub.edges():
                        u, v = (e.u, e.v) if pg.block_of[e.u] == i else (e.v, e.u)
                        if parallel:
                            sat.add_equivalence(u, v)
                        else:
                            sat.add_antivalence(u, v)
                    trace.step(bg.blocks, colour, "5G", parallel=parallel, clauses=len(sat.clauses))
                else:
                    raise InternalCoverError(f"interblock shape {bg.shape} is not harmless")
    for v, val in trace.units.items():
        sat.add_unit(v, val)
    return sat


def _alternation_assignment(fibre: Graph, colour: str, semi_ids: list[str]) -> dict[str, str]:
    """Distribute the edges of a union of open paths and even cycles over
    the two target semi-edges so images alternate at every vertex."""
    s0, s1 = semi_ids
    fe: dict[str, str] = {}
    for comp in components(fibre):
        sub = project(fibre, vertices=comp)
        incid = {v: [e for e in sub.incident(v)] for v in comp}
        start = None
        for v in comp:
            if any(e.kind == "semi" for e in incid[v]) or len(incid[v]) == 1:
                start = v
                break
        toggle = 0
        v = comp[0] if start is None else start
        if start is not None:
            first_semi = next((e for e in sub.incident(v) if e.kind == "semi"), None)
            if first_semi is not None:
                fe[first_semi.id] = s0
                toggle = 1
        while True:
            pend = [e for e in sub.incident(v) if e.id not in fe]
            if not pend:
                break
            e = pend[0]
            fe[e.id] = s1 if toggle else s0
            toggle ^= 1
            if e.kind == "semi":
                break
            v = e.other_end(v)
    return fe


def complete_edge_mapping(gn: Graph, hn: Graph, fv: dict[str, str],
                          matchings: dict | None = None,
                          ph: Partition | None = None,
                          trace: SolveTrace | None = None) -> dict[str, str]:
    """Extend a degree-obedient vertex mapping to a full edge mapping.

    Forced where the target edge is unique; parallel bundles between two
    fibres via bipartite factorization; loop bundles via 2-factorization;
    semi-edge classes via the recorded (or recomputed) matchings and
    alternation.  Inconsistencies raise InternalCoverError since they mean
    the earlier phases let something slip."""
    if ph is None:
        ph, _ = degree_partition(hn)
    matchings = matchings or {}
    fe: dict[str, str] = {}
    pair_groups: dict = {}
    intra_und: dict = {}
    intra_dir: dict = {}
    for e in gn.edges():
        if e.kind == "edge":
            x, y = fv[e.u], fv[e.v]
            if x != y:
                pair_groups.setdefault(("edge", e.colour, frozenset((x, y))), []).append(e)
            else:
                intra_und.setdefault((e.colour, x), []).append(e)
        elif e.kind == "arc":
            x, y = fv[e.tail], fv[e.head]
            if x != y:
                pair_groups.setdefault(("arc", e.colour, (x, y)), []).append(e)
            else:
                intra_dir.setdefault((e.colour, x), []).append(e)
        elif e.kind in ("loop", "semi"):
            intra_und.setdefault((e.colour, fv[e.u]), []).append(e)
        else:
            intra_dir.setdefault((e.colour, fv[e.u]), []).append(e)

    h_by: dict = {}
    for e in hn.edges():
        if e.kind == "edge":
            h_by.setdefault(("edge", e.colour, frozenset(e.ends)), []).append(e.id)
        elif e.kind == "arc":
            h_by.setdefault(("arc", e.colour, (e.tail, e.head)), []).append(e.id)
        else:
            h_by.setdefault((e.kind, e.colour, e.u), []).append(e.id)
    for ids in h_by.values():
        ids.sort()

    def log(msg):
        if trace is not None:
            trace.completion.append(msg)

    for key in sorted(pair_groups, key=repr):
        kind, colour, loc = key
        group = pair_groups[key]
        h_ids = h_by.get(key, [])
        if not h_ids:
            raise InternalCoverError(f"no target edge for group {key}")
        if len(h_ids) == 1:
            for e in group:
                fe[e.id] = h_ids[0]
            log(f"forced {len(group)} edges onto {h_ids[0]}")
            continue
        if kind == "edge":
            x = sorted(loc)[0]
            items = [
                (e.id, ("L", e.u if fv[e.u] == x else e.v), ("R", e.v if fv[e.u] == x else e.u))
                for e in group
            ]
        else:
            items = [(e.id, ("L", e.tail), ("R", e.head)) for e in group]
        try:
            parts = mt.bipartite_peel(items, len(h_ids))
        except mt.MatchingError as exc:
            raise InternalCoverError(f"fibre-pair group {key} not factorizable: {exc}") from exc
        for he, part in zip(h_ids, parts):
            for eid in part:
                fe[eid] = he
        log(f"factorized {len(group)} edges into {len(h_ids)} bundles at {key}")

    for (colour, x), group in sorted(intra_dir.items()):
        h_ids = h_by.get(("dloop", colour, x), [])
        if not h_ids:
            raise InternalCoverError(f"no directed loop target at {x} for colour {colour}")
        sub = Graph("fibre")
        verts = sorted(w for w, img in fv.items() if img == x)
        for w in verts:
            sub.add_vertex(w, "f")
        for e in group:
            sub.add_edge(e.kind, e.id, colour, *e.ends)
        try:
            factors = mt.directed_cycle_cover_decomposition(sub, len(h_ids))
        except mt.MatchingError as exc:
            raise InternalCoverError(f"directed fibre at {x} not decomposable: {exc}") from exc
        for he, factor in zip(h_ids, factors):
            for eid in factor:
                fe[eid] = he
        log(f"directed decomposition of {len(group)} arcs at fibre {x}")

    for (colour, x), group in sorted(intra_und.items()):
        semi_ids = h_by.get(("semi", colour, x), [])
        loop_ids = h_by.get(("loop", colour, x), [])
        verts = sorted(w for w, img in fv.items() if img == x)
        s = len(semi_ids)
        if s == 0:
            if any(e.kind == "semi" for e in group):
                raise InternalCoverError(f"semi-edge over a semi-free fibre {x}")
            residual = group
        elif s == 1:
            block_idx = ph.block_of[x]
            rec = matchings.get((block_idx, colour))
            g_semis = [e for e in group if e.kind == "semi"]
            semi_verts = {e.u for e in g_semis}
            if rec is None:
                rest_vs = [w for w in verts if w not in semi_verts]
                rest = project(gn, vertices=rest_vs, colours=[colour])
                rec_local = mt.general_perfect_matching(rest)
                if rec_local is None:
                    raise InternalCoverError(f"no completion matching in fibre {x}")
            else:
                in_fibre = {e.id for e in group}
                rec_local = [eid for eid in rec if eid in in_fibre]
            for e in g_semis:
                fe[e.id] = semi_ids[0]
            for eid in rec_local:
                fe[eid] = semi_ids[0]
            covered = set(semi_verts)
            for eid in rec_local:
                covered.update(gn.edge(eid).ends)
            if covered != set(verts):
                raise InternalCoverError(f"semi-edge class does not span fibre {x}")
            residual = [e for e in group if e.id not in fe]
        elif s == 2 and not loop_ids:
            fibre = Graph("fibre")
            for w in verts:
                fibre.add_vertex(w, "f")
            for e in group:
                fibre.add_edge(e.kind, e.id, colour, *e.ends)
            fe.update(_alternation_assignment(fibre, colour, semi_ids))
            residual = []
        else:
            raise InternalCoverError(f"unexpected semi-edge structure at fibre {x}")
        if residual or loop_ids:
            sub = Graph("fibre")
            for w in verts:
                sub.add_vertex(w, "f")
            for e in residual:
                sub.add_edge(e.kind, e.id, colour, *e.ends)
            try:
                factors = mt.two_factorization(sub, len(loop_ids))
            except mt.MatchingError as exc:
                raise InternalCoverError(f"fibre at {x} not 2-factorizable: {exc}") from exc
            for he, factor in zip(loop_ids, factors):
                for eid in factor:
                    fe[eid] = he
        log(f"fibre {x} colour {colour}: {len(group)} edges distributed")
    return fe


def companion_mapping(h: Graph, part: Partition, fv: dict[str, str]) -> dict[str, str]:
    """Swap the two target vertices of every doublet block in a vertex map."""
    swap = {}
    for i in part.doublets():
        a, b = part.blocks[i]
        swap[a], swap[b] = b, a
    return {u: swap.get(x, x) for u, x in fv.items()}


def solve_cover(g: Graph, h: Graph) -> SolveResult:
    """Decide whether g covers h for a connected all-harmless target and
    produce a verified certificate if so."""
    trace = SolveTrace()
    if h.n == 0 or not is_connected(h):
        raise UnsupportedTarget("target must be non-empty and connected")
    ph, mh = degree_partition(h)
    if any(len(b) > 2 for b in ph.blocks):
        raise UnsupportedTarget("target has a degree-partition block of more than 2 vertices")
    hn = normalize_colours(h, ph)
    phn, _ = degree_partition(hn)
    shapes = block_shapes(hn, phn)
    for bg in shapes:
        cls = classify_shape(bg.shape)
        if cls != HARMLESS:
            hint = " (use the oracle)" if cls == DANGEROUS else " (NP-complete target; use the oracle)"
            raise UnsupportedTarget(f"target contains a {cls} block graph {bg.shape}{hint}")
    pg, mg = degree_partition(g)
    if pg.k != ph.k or mg != mh:
        trace.matrix_ok = False
        trace.failure = "degree refinement matrices differ"
        return SolveResult("no", None, trace)
    trace.matrix_ok = True
    gn = normalize_colours(g, pg)

    if not check_singletons(gn, hn, pg, phn, shapes, trace):
        trace.failure = "singleton block check failed"
        return SolveResult("no", None, trace)
    if not preprocess_doublets(gn, hn, pg, phn, shapes, trace):
        trace.failure = "doublet preprocessing failed"
        return SolveResult("no", None, trace)
    sat = build_2sat(gn, hn, pg, phn, shapes, trace)
    assignment = sat.solve()
    if assignment is None:
        trace.failure = "2-SAT unsatisfiable"
        return SolveResult("no", None, trace)
    trace.assignment = assignment
    fv: dict[str, str] = {}
    for i, block in enumerate(pg.blocks):
        target = phn.blocks[i]
        if len(target) == 1:
            for u in block:
                fv[u] = target[0]
        else:
            b_i, c_i = target
            for u in block:
                fv[u] = b_i if assignment.get(u, True) else c_i
    fe = complete_edge_mapping(gn, hn, fv, trace.matchings, phn, trace)
    projection = CoveringProjection(fv, fe)
    check = verify_cover(g, h, projection)
    if not check.ok:
        raise InternalCoverError(f"solver built an invalid certificate: {check.violations}")
    return SolveResult("yes", projection, trace)
