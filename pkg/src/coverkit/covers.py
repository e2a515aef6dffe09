"""Covering projections: verification, exhaustive oracle, partial covers.

A covering projection is a pair of colour-preserving maps (vertices and
edges) that is a local bijection on darts: around every vertex of the
source, the incident edge-ends map one-to-one onto the edge-ends at the
image vertex.  Semi-edges contribute one dart, loops two, directed loops
one in- and one out-dart.  For disconnected targets all vertex fibres
must additionally have the same size (equitable covers).

The oracle here is the package's ground truth: a complete backtracking
search over block-respecting vertex maps with capacity propagation,
followed by an exact per-fibre edge assignment.  It is deliberately
independent of the polynomial solver's decision logic.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from . import matching as mt
from .graphs import Graph, GraphError, IN, OUT, UND, is_connected, project
from .partition import degree_partition

DEFAULT_BUDGET = 1_000_000


class BudgetExhausted(Exception):
    pass


class InternalCoverError(RuntimeError):
    """A constructed certificate failed verification; indicates a bug."""


@dataclass
class CoveringProjection:
    fv: dict[str, str]
    fe: dict[str, str]

    def to_json(self) -> str:
        return json.dumps({"fv": self.fv, "fe": self.fe}, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "CoveringProjection":
        data = json.loads(text)
        return cls(dict(data["fv"]), dict(data["fe"]))


@dataclass
class VerifyResult:
    ok: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class OracleResult:
    status: str  # "yes" | "no" | "unknown"
    projection: CoveringProjection | None = None
    nodes: int = 0

    @property
    def yes(self) -> bool:
        return self.status == "yes"

    @property
    def no(self) -> bool:
        return self.status == "no"


# indexes ---------------------------------------------------------------------


def _h_edge_index(h: Graph) -> dict:
    by: dict = {}
    for e in h.edges():
        if e.kind == "edge":
            key = ("edge", e.colour, frozenset(e.ends))
        elif e.kind == "arc":
            key = ("arc", e.colour, (e.tail, e.head))
        else:
            key = (e.kind, e.colour, e.u)
        by.setdefault(key, []).append(e.id)
    for ids in by.values():
        ids.sort()
    return by


def _candidates_for(e, fv, by) -> list[str]:
    """Target edges an edge may map to: colour-preserving and compatible
    with the vertex images.  Encodes which kinds may fold onto which:
    edges may land on loops or semi-edges of the same fibre, arcs on
    directed loops, loops only on loops, semi-edges only on semi-edges."""
    a = e.colour
    x = fv[e.ends[0]]
    if e.kind == "edge":
        y = fv[e.ends[1]]
        if x != y:
            return by.get(("edge", a, frozenset((x, y))), [])
        return by.get(("loop", a, x), []) + by.get(("semi", a, x), [])
    if e.kind == "arc":
        y = fv[e.head]
        if x != y:
            return by.get(("arc", a, (x, y)), [])
        return by.get(("dloop", a, x), [])
    return by.get((e.kind, a, x), [])


def _dart_tags(e, v):
    """(dtag, count) pairs contributed by edge e at endpoint v."""
    if e.kind == "edge" or e.kind == "semi":
        return ((UND, 1),)
    if e.kind == "loop":
        return ((UND, 2),)
    if e.kind == "dloop":
        return ((OUT, 1), (IN, 1))
    tags = []
    if e.tail == v:
        tags.append((OUT, 1))
    if e.head == v:
        tags.append((IN, 1))
    return tuple(tags)


def _target_caps(h: Graph):
    """Per target vertex: dart capacities keyed (colour, dtag, other-vertex),
    plus separate semi/loop/directed-loop counts per colour."""
    caps: dict[str, Counter] = {x: Counter() for x in h.vertices()}
    semis: dict[str, Counter] = {x: Counter() for x in h.vertices()}
    loops: dict[str, Counter] = {x: Counter() for x in h.vertices()}
    dloops: dict[str, Counter] = {x: Counter() for x in h.vertices()}
    for e in h.edges():
        a = e.colour
        if e.kind == "edge":
            caps[e.u][(a, UND, e.v)] += 1
            caps[e.v][(a, UND, e.u)] += 1
        elif e.kind == "arc":
            caps[e.tail][(a, OUT, e.head)] += 1
            caps[e.head][(a, IN, e.tail)] += 1
        elif e.kind == "loop":
            caps[e.u][(a, UND, e.u)] += 2
            loops[e.u][a] += 1
        elif e.kind == "semi":
            caps[e.u][(a, UND, e.u)] += 1
            semis[e.u][a] += 1
        elif e.kind == "dloop":
            caps[e.u][(a, OUT, e.u)] += 1
            caps[e.u][(a, IN, e.u)] += 1
            dloops[e.u][a] += 1
    return caps, semis, loops, dloops


def _vertex_data(g: Graph):
    """Per source vertex: normal-edge darts grouped by (colour, dtag) as
    neighbour counters, plus semi/loop/directed-loop counts per colour."""
    cross: dict[str, dict] = {u: {} for u in g.vertices()}
    semis: dict[str, Counter] = {u: Counter() for u in g.vertices()}
    loops: dict[str, Counter] = {u: Counter() for u in g.vertices()}
    dloops: dict[str, Counter] = {u: Counter() for u in g.vertices()}
    for e in g.edges():
        a = e.colour
        if e.kind == "edge":
            cross[e.u].setdefault((a, UND), Counter())[e.v] += 1
            cross[e.v].setdefault((a, UND), Counter())[e.u] += 1
        elif e.kind == "arc":
            cross[e.tail].setdefault((a, OUT), Counter())[e.head] += 1
            cross[e.head].setdefault((a, IN), Counter())[e.tail] += 1
        elif e.kind == "loop":
            loops[e.u][a] += 1
        elif e.kind == "semi":
            semis[e.u][a] += 1
        elif e.kind == "dloop":
            dloops[e.u][a] += 1
    return cross, semis, loops, dloops


def fibre_sizes(h: Graph, fv: dict[str, str]) -> dict[str, int]:
    sizes = {x: 0 for x in h.vertices()}
    for x in fv.values():
        sizes[x] += 1
    return sizes


# verification ---------------------------------------------------------------


def verify_cover(g: Graph, h: Graph, f: CoveringProjection) -> VerifyResult:
    """Check all preimage clauses plus equitability; violations are data."""
    violations: list[str] = []
    for v in g.vertices():
        if v not in f.fv:
            violations.append(f"vertex {v} has no image")
        elif not h.has_vertex(f.fv[v]):
            violations.append(f"vertex {v} maps to unknown vertex {f.fv[v]}")
        elif h.vertex_colour(f.fv[v]) != g.vertex_colour(v):
            violations.append(f"vertex {v} changes colour")
    if violations:
        return VerifyResult(False, violations)
    if g.n == 0 and h.n > 0:
        return VerifyResult(False, ["empty graph does not cover a non-empty graph"])
    by = _h_edge_index(h)
    for e in g.edges():
        if e.id not in f.fe:
            violations.append(f"edge {e.id} has no image")
        elif not h.has_edge(f.fe[e.id]):
            violations.append(f"edge {e.id} maps to unknown edge {f.fe[e.id]}")
        elif f.fe[e.id] not in _candidates_for(e, f.fv, by):
            violations.append(f"edge {e.id} -> {f.fe[e.id]} breaks colour or incidence")
    if violations:
        return VerifyResult(False, violations)
    for u in g.vertices():
        got: Counter = Counter()
        for e in g.incident(u):
            for tag, cnt in _dart_tags(e, u):
                got[(f.fe[e.id], tag)] += cnt
        want: Counter = Counter()
        for e in h.incident(f.fv[u]):
            for tag, cnt in _dart_tags(e, f.fv[u]):
                want[(e.id, tag)] += cnt
        if got != want:
            violations.append(f"local bijection broken at vertex {u}")
    sizes = fibre_sizes(h, f.fv)
    if len(set(sizes.values())) > 1:
        violations.append(
            "fibre sizes differ: " + ", ".join(f"{x}:{c}" for x, c in sorted(sizes.items()))
        )
    return VerifyResult(not violations, violations)


def is_degree_obedient(g: Graph, h: Graph, fv: dict[str, str]) -> bool:
    """Counting conditions a vertex map must satisfy to possibly extend:
    cross-fibre edge counts match the target multiplicities exactly, and
    within a fibre the semi-edge/loop budget t <= s, 2k + n + t = 2l + s
    holds per colour (analogously for directed colours)."""
    caps, hsemis, hloops, hdloops = _target_caps(h)
    cross, gsemis, gloops, gdloops = _vertex_data(g)
    for u in g.vertices():
        x = fv[u]
        if g.vertex_colour(u) != h.vertex_colour(x):
            return False
        per_target: dict = {}
        for (a, d), ctr in cross[u].items():
            for w, cnt in ctr.items():
                key = (a, d, fv[w])
                per_target[key] = per_target.get(key, 0) + cnt
        keys = set(per_target) | set(caps[x])
        for a, d, y in keys:
            n_cnt = per_target.get((a, d, y), 0)
            cap = caps[x].get((a, d, y), 0)
            if y != x:
                if n_cnt != cap:
                    return False
                continue
            if d == UND:
                t, k = gsemis[u][a], gloops[u][a]
                s, l = hsemis[x][a], hloops[x][a]
                if t > s or 2 * k + n_cnt + t != 2 * l + s:
                    return False
            elif d == OUT:
                if gdloops[u][a] + n_cnt != hdloops[x][a]:
                    return False
            else:
                if gdloops[u][a] + n_cnt != hdloops[x][a]:
                    return False
        for a in set(gsemis[u]) | set(gloops[u]) | set(gdloops[u]):
            if (a, UND, x) in keys or (a, OUT, x) in keys or (a, IN, x) in keys:
                continue
            t, k, dl = gsemis[u][a], gloops[u][a], gdloops[u][a]
            s, l, hd = hsemis[x][a], hloops[x][a], hdloops[x][a]
            if t or k:
                if t > s or 2 * k + t != 2 * l + s:
                    return False
            if dl != hd:
                return False
    return True


# generic edge-map search ------------------------------------------------------


def _edge_map_search(g: Graph, h: Graph, fv: dict[str, str], budget_box) -> dict[str, str] | None:
    """Assign every source edge a target edge so the map is locally
    injective around every vertex: backtracking over per-vertex dart-slot
    capacities.  Local bijectivity then follows wherever degrees are full."""
    by = _h_edge_index(h)
    capv: dict = {}
    for v in g.vertices():
        x = fv[v]
        for e in h.incident(x):
            for tag, cnt in _dart_tags(e, x):
                key = (v, e.id, tag)
                capv[key] = capv.get(key, 0) + cnt

    edges = list(g.edges())
    cand = {}
    for e in edges:
        c = _candidates_for(e, fv, by)
        if not c:
            return None
        cand[e.id] = c

    def consumption(e, he):
        if e.kind == "edge":
            return ((e.u, he, UND, 1), (e.v, he, UND, 1))
        if e.kind == "loop":
            return ((e.u, he, UND, 2),)
        if e.kind == "semi":
            return ((e.u, he, UND, 1),)
        if e.kind == "dloop":
            return ((e.u, he, OUT, 1), (e.u, he, IN, 1))
        return ((e.tail, he, OUT, 1), (e.head, he, IN, 1))

    def feasible(e):
        out = []
        for he in cand[e.id]:
            if all(capv.get((v, he2, tag), 0) >= cnt for v, he2, tag, cnt in consumption(e, he)):
                out.append(he)
        return out

    assignment: dict[str, str] = {}
    todo = set(range(len(edges)))

    def rec():
        if budget_box[0] <= 0:
            raise BudgetExhausted()
        if not todo:
            return True
        best, best_f = None, None
        for i in list(todo):
            f = feasible(edges[i])
            if best_f is None or len(f) < len(best_f):
                best, best_f = i, f
                if not f:
                    return False
                if len(f) == 1:
                    break
        e = edges[best]
        todo.discard(best)
        for he in best_f:
            budget_box[0] -= 1
            for v, he2, tag, cnt in consumption(e, he):
                capv[(v, he2, tag)] -= cnt
            assignment[e.id] = he
            if rec():
                return True
            del assignment[e.id]
            for v, he2, tag, cnt in consumption(e, he):
                capv[(v, he2, tag)] += cnt
        todo.add(best)
        return False

    if rec():
        return dict(assignment)
    return None


# naive exhaustive search (test oracle for the oracle) -------------------------


def naive_cover(g: Graph, h: Graph, node_limit: int = 5_000_000) -> CoveringProjection | None:
    """Brute force over all colour-preserving vertex maps and all
    compatible edge maps, filtered by verify_cover.  Deliberately free of
    any pruning cleverness; only usable for very small graphs."""
    import itertools

    gv = g.vertices()
    domains = []
    for v in gv:
        dom = [x for x in h.vertices() if h.vertex_colour(x) == g.vertex_colour(v)]
        if not dom:
            return None
        domains.append(dom)
    if g.n == 0:
        if h.n == 0:
            return CoveringProjection({}, {})
        return None
    by = _h_edge_index(h)
    eids = [e.id for e in g.edges()]
    work = 0
    for combo in itertools.product(*domains):
        fv = dict(zip(gv, combo))
        if len(set(fibre_sizes(h, fv).values())) > 1:
            continue
        cand_lists = []
        ok = True
        for e in g.edges():
            c = _candidates_for(e, fv, by)
            if not c:
                ok = False
                break
            cand_lists.append(c)
        if not ok:
            continue
        for fe_combo in itertools.product(*cand_lists):
            work += 1
            if work > node_limit:
                raise BudgetExhausted("naive search too large")
            f = CoveringProjection(fv, dict(zip(eids, fe_combo)))
            if verify_cover(g, h, f).ok:
                return f
    return None


# backtracking vertex-map search ----------------------------------------------


class _VertexSearch:
    """Backtracking over vertex images with capacity propagation.

    Domains are supplied by the caller (block-restricted for the oracle,
    colour/degree-restricted for partial covers).  An optional fibre cap
    enforces equitability; for connected targets the caller may drop it,
    since a fully capacity-consistent assignment is automatically
    equitable there.  Capacities mirror degree obedience: the darts a
    vertex sends towards any fibre may never exceed the target's
    multiplicities, and once a capacity is saturated the remaining
    unassigned neighbours lose that image.

    Without fibre caps all constraints are local (an edge, or a shared
    assigned neighbour), so when the residual constraint graph falls into
    independent components each is solved on its own and the solutions
    are combined, instead of rediscovering one component's failures once
    per assignment of the others.
    """

    DECOMPOSE_MIN = 9
    DECOMPOSE_CAP = 20_000

    def __init__(self, g, h, domains, fibre_cap, budget_box, blocks=None, decompose=None,
                 anchor_order=1):
        self.g = g
        self.h = h
        self.budget = budget_box
        self.caps, self.hsemis, self.hloops, self.hdloops = _target_caps(h)
        cross, gsemis, gloops, gdloops = _vertex_data(g)
        self.cross = cross
        self.gsemis, self.gloops, self.gdloops = gsemis, gloops, gdloops
        self.fibre_cap = fibre_cap
        self.order = list(g.vertices())
        self.index = {u: i for i, u in enumerate(self.order)}
        self.domains = {u: set(domains[u]) for u in self.order}
        self.assign: dict[str, str | None] = {u: None for u in self.order}
        self.used: dict[str, Counter] = {u: Counter() for u in self.order}
        self.fibre: Counter = Counter()
        self.blockmates = self._blockmates(blocks)
        # locality bookkeeping: a recency stack plus touch counts keep the
        # search inside one gadget region until it is finished, which is
        # what makes clause/variable instances tractable
        self.touch: Counter = Counter()
        self.recent: list[str] = []
        self.nbrs = {
            u: sorted({w for ctr in cross[u].values() for w in ctr}, reverse=anchor_order < 0)
            for u in self.order
        }
        self.decompose = (fibre_cap is None) if decompose is None else decompose

    def _blockmates(self, blocks):
        if blocks is not None:
            mates = {}
            for block in blocks:
                for u in block:
                    mates[u] = [w for w in block if w != u]
            return mates
        groups: dict[frozenset, list[str]] = {}
        key_of = {}
        for u in self.order:
            key = frozenset(self.domains[u])
            key_of[u] = key
            groups.setdefault(key, []).append(u)
        return {u: [w for w in groups[key_of[u]] if w != u] for u in self.order}

    # one undo log entry: ("dom", u, x) / ("used", u, key, delta) / ("fibre", x) / ("assign", u)

    def _undo(self, ops):
        for op in reversed(ops):
            if op[0] == "dom":
                self.domains[op[1]].add(op[2])
            elif op[0] == "used":
                self.used[op[1]][op[2]] -= op[3]
            elif op[0] == "fibre":
                self.fibre[op[1]] -= 1
            elif op[0] == "touch":
                self.touch[op[1]] -= 1
            else:
                self.assign[op[1]] = None

    def _bump(self, a, key, delta, ops):
        xa = self.assign[a]
        cap = self.caps[xa].get(key, 0)
        cur = self.used[a][key] + delta
        if cur > cap:
            return False
        self.used[a][key] = cur
        ops.append(("used", a, key, delta))
        return True

    def _try_assign(self, u, x):
        ops: list = []
        dirty: set[str] = set()
        failed = False

        def remove(w, y):
            nonlocal failed
            dom = self.domains[w]
            if y not in dom:
                return
            dom.discard(y)
            ops.append(("dom", w, y))
            if not dom:
                failed = True
                return
            for z in self.nbrs[w]:
                if self.assign[z] is not None:
                    dirty.add(z)

        self.assign[u] = x
        ops.append(("assign", u))
        if self.fibre_cap is not None:
            self.fibre[x] += 1
            ops.append(("fibre", x))
            if self.fibre[x] > self.fibre_cap:
                self._undo(ops)
                return None
            if self.fibre[x] == self.fibre_cap:
                for w in self.blockmates[u]:
                    if self.assign[w] is None:
                        remove(w, x)
                        if failed:
                            self._undo(ops)
                            return None
        # self darts (loops, semi-edges, directed loops)
        for a, k in self.gloops[u].items():
            if not self._bump(u, (a, UND, x), 2 * k, ops):
                self._undo(ops)
                return None
        for a, t in self.gsemis[u].items():
            if not self._bump(u, (a, UND, x), t, ops):
                self._undo(ops)
                return None
        for a, dl in self.gdloops[u].items():
            if not (self._bump(u, (a, OUT, x), dl, ops) and self._bump(u, (a, IN, x), dl, ops)):
                self._undo(ops)
                return None
        # darts towards assigned neighbours, both directions of bookkeeping
        for (a, d), ctr in self.cross[u].items():
            for w, cnt in ctr.items():
                y = self.assign[w]
                if y is None:
                    continue
                dw = UND if d == UND else (IN if d == OUT else OUT)
                if not (self._bump(u, (a, d, y), cnt, ops) and self._bump(w, (a, dw, x), cnt, ops)):
                    self._undo(ops)
                    return None
                dirty.add(w)
        dirty.add(u)
        # counting propagation: for an assigned vertex and every image y,
        # the outstanding need must fit the unassigned neighbours that can
        # still take y; equality forces them, deficits fail, and a
        # neighbour whose multiplicity overshoots the need loses y
        while dirty and not failed:
            a_vertex = dirty.pop()
            xa = self.assign[a_vertex]
            capa = self.caps[xa]
            useda = self.used[a_vertex]
            for (a, d), ctr in self.cross[a_vertex].items():
                unassigned = [(w, m) for w, m in ctr.items() if self.assign[w] is None]
                if not unassigned:
                    continue
                targets = set()
                for w, _ in unassigned:
                    targets |= self.domains[w]
                for y in targets:
                    needed = capa.get((a, d, y), 0) - useda[(a, d, y)]
                    avail = 0
                    holders = []
                    for w, m in unassigned:
                        if y in self.domains[w]:
                            if m > needed:
                                remove(w, y)
                                if failed:
                                    break
                            else:
                                avail += m
                                holders.append(w)
                    if failed:
                        break
                    if needed > avail:
                        failed = True
                        break
                    if needed and needed == avail:
                        for w in holders:
                            if len(self.domains[w]) > 1:
                                for y2 in [v for v in self.domains[w] if v != y]:
                                    remove(w, y2)
                                    if failed:
                                        break
                            if failed:
                                break
                    if failed:
                        break
                if failed:
                    break
        if failed:
            self._undo(ops)
            return None
        # locality bookkeeping for the branching heuristic
        for w in self.nbrs[u]:
            if self.assign[w] is None:
                self.touch[w] += 1
                ops.append(("touch", w))
                self.recent.append(w)
            for z in self.nbrs[w]:
                if self.assign[z] is None:
                    self.touch[z] += 1
                    ops.append(("touch", z))
                    self.recent.append(z)
        return ops

    def _choose(self, todo):
        best, best_key = None, None
        todo_set = None
        for u in todo:
            if self.assign[u] is not None:
                continue
            size = len(self.domains[u])
            if size <= 1:
                return u
            key = (size, -self.touch[u], self.index[u])
            if best_key is None or key < best_key:
                best, best_key = u, key
        # prefer finishing the region the search is already inside
        while self.recent:
            w = self.recent[-1]
            if self.assign[w] is not None:
                self.recent.pop()
                continue
            if todo_set is None:
                todo_set = set(todo)
            if w not in todo_set:
                self.recent.pop()
                continue
            if len(self.domains[w]) == best_key[0]:
                return w
            break
        return best

    def _components(self, todo):
        """Partition unassigned vertices into groups with no constraint
        between them: direct edges and shared assigned neighbours couple."""
        todo_set = set(todo)
        parent = {v: v for v in todo}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        anchor: dict[str, str] = {}
        for v in todo:
            for w in self.nbrs[v]:
                if w in todo_set:
                    union(v, w)
                elif self.assign[w] is not None:
                    if w in anchor:
                        union(v, anchor[w])
                    else:
                        anchor[w] = v
        comps: dict[str, list[str]] = {}
        for v in todo:
            comps.setdefault(find(v), []).append(v)
        return list(comps.values())

    def solutions(self):
        for _ in self._branch(self.order):
            yield dict(self.assign)

    def _branch(self, scope):
        todo = [v for v in scope if self.assign[v] is None]
        if not todo:
            yield True
            return
        u = self._choose(todo)
        if (
            self.decompose
            and len(self.domains[u]) > 1
            and len(todo) >= self.DECOMPOSE_MIN
        ):
            # only genuine branch points pay for the component check; unit
            # propagation chains fall straight through
            comps = self._components(todo)
            if len(comps) > 1:
                done = yield from self._branch_components(comps)
                if done:
                    return
        for x in sorted(self.domains[u]):
            self.budget[0] -= 1
            if self.budget[0] <= 0:
                raise BudgetExhausted()
            ops = self._try_assign(u, x)
            if ops is None:
                continue
            try:
                yield from self._branch(todo)
            finally:
                self._undo(ops)

    def _branch_components(self, comps):
        """Solve independent components separately.

        Any infeasible component kills the whole node at once (returns
        True without yielding), which is the point: its refutation is
        found once instead of once per assignment of the other
        components.  If every component is solvable, their first
        solutions combine into one emitted assignment; should the caller
        need further solutions, plain branching takes over (return value
        False), which keeps the enumeration complete."""
        first: list[dict] = []
        for comp in sorted(comps, key=len):
            sol = None
            gen = self._branch(comp)
            for _ in gen:
                sol = {v: self.assign[v] for v in comp}
                break
            gen.close()
            if sol is None:
                return True
            first.append(sol)
        opslist = []
        try:
            for comp_sol in first:
                for v, x in sorted(comp_sol.items()):
                    if self.assign[v] is not None:
                        continue
                    ops = self._try_assign(v, x)
                    if ops is None:
                        raise InternalCoverError(
                            "independent component solutions failed to recombine"
                        )
                    opslist.append(ops)
            yield True
        finally:
            for ops in reversed(opslist):
                self._undo(ops)
        return False


# the oracle -------------------------------------------------------------------


def _realize_edges(g: Graph, h: Graph, fv: dict[str, str], budget_box) -> dict[str, str] | None:
    """Exact per-group edge assignment for a complete degree-obedient
    vertex map.  Cross-fibre groups are regular bipartite and always
    decompose; within-fibre groups over loop/semi-edge targets are decided
    by an exact dart assignment (they can be genuinely hard)."""
    by = _h_edge_index(h)
    fe: dict[str, str] = {}
    pair_groups: dict = {}
    intra_und: dict = {}
    intra_dir: dict = {}
    for e in g.edges():
        a = e.colour
        if e.kind == "edge":
            x, y = fv[e.u], fv[e.v]
            if x != y:
                pair_groups.setdefault(("edge", a, frozenset((x, y))), []).append(e)
            else:
                intra_und.setdefault((a, x), []).append(e)
        elif e.kind == "arc":
            x, y = fv[e.tail], fv[e.head]
            if x != y:
                pair_groups.setdefault(("arc", a, (x, y)), []).append(e)
            else:
                intra_dir.setdefault((a, x), []).append(e)
        elif e.kind in ("loop", "semi"):
            intra_und.setdefault((a, fv[e.u]), []).append(e)
        else:
            intra_dir.setdefault((a, fv[e.u]), []).append(e)

    for key in sorted(pair_groups, key=repr):
        kind, a, loc = key
        group = pair_groups[key]
        h_ids = by.get(key, [])
        if not h_ids:
            return None
        if len(h_ids) == 1:
            for e in group:
                fe[e.id] = h_ids[0]
            continue
        if kind == "edge":
            x = sorted(loc)[0]
            items = [(e.id, e.u if fv[e.u] == x else e.v, e.v if fv[e.u] == x else e.u) for e in group]
        else:
            items = [(e.id, e.tail, e.head) for e in group]
        try:
            parts = mt.bipartite_peel([(i, ("L", l), ("R", r)) for i, l, r in items], len(h_ids))
        except mt.MatchingError:
            return None
        for he, part in zip(h_ids, parts):
            for eid in part:
                fe[eid] = he

    for (a, x), group in sorted(intra_dir.items()):
        h_ids = by.get(("dloop", a, x), [])
        if not h_ids:
            return None
        items = []
        for e in group:
            t = e.tail
            hd = e.head if e.kind == "arc" else e.tail
            items.append((e.id, ("out", t), ("in", hd)))
        try:
            parts = mt.bipartite_peel(items, len(h_ids))
        except mt.MatchingError:
            return None
        for he, part in zip(h_ids, parts):
            for eid in part:
                fe[eid] = he

    for (a, x), group in sorted(intra_und.items()):
        semi_ids = by.get(("semi", a, x), [])
        loop_ids = by.get(("loop", a, x), [])
        if not semi_ids and not loop_ids:
            return None
        if not semi_ids:
            if any(e.kind == "semi" for e in group):
                return None
            sub = Graph("fibre")
            verts = {w for w, img in fv.items() if img == x}
            for w in verts:
                sub.add_vertex(w, "f")
            for e in group:
                sub.add_edge(e.kind, e.id, "c", *e.ends)
            try:
                factors = mt.two_factorization(sub, len(loop_ids))
            except mt.MatchingError:
                return None
            for he, factor in zip(loop_ids, factors):
                for eid in factor:
                    fe[eid] = he
            continue
        # loop/semi mixture: exact dart assignment against a one-vertex target
        target = Graph("t")
        target.add_vertex("x", h.vertex_colour(x))
        for i, _ in enumerate(semi_ids):
            target.add_edge("semi", f"s{i}", a, "x")
        for i, _ in enumerate(loop_ids):
            target.add_edge("loop", f"l{i}", a, "x")
        sub = Graph("fibre")
        verts = {w for w, img in fv.items() if img == x}
        for w in verts:
            sub.add_vertex(w, h.vertex_colour(x))
        for e in group:
            sub.add_edge(e.kind, e.id, a, *e.ends)
        sub_fv = {w: "x" for w in verts}
        sub_fe = _edge_map_search(sub, target, sub_fv, budget_box)
        if sub_fe is None:
            return None
        rename = {f"s{i}": he for i, he in enumerate(semi_ids)}
        rename.update({f"l{i}": he for i, he in enumerate(loop_ids)})
        for eid, the in sub_fe.items():
            fe[eid] = rename[the]
    return fe


def oracle_cover(g: Graph, h: Graph, budget: int = DEFAULT_BUDGET) -> OracleResult:
    """Complete within budget: 'yes' with a verified certificate, 'no', or
    'unknown' when the node budget ran out."""
    if h.n == 0:
        if g.n == 0:
            return OracleResult("yes", CoveringProjection({}, {}))
        return OracleResult("no")
    if g.n == 0:
        return OracleResult("no")
    pg, mg = degree_partition(g)
    ph, mh = degree_partition(h)
    if pg.k != ph.k or mg != mh:
        return OracleResult("no")
    if g.n % h.n != 0:
        return OracleResult("no")
    r = g.n // h.n
    for i in range(pg.k):
        if len(pg.blocks[i]) != r * len(ph.blocks[i]):
            return OracleResult("no")
    _, hsemis, hloops, hdloops = _target_caps(h)
    _, gsemis, gloops, gdloops = _vertex_data(g)
    domains = {}
    for i, block in enumerate(pg.blocks):
        for u in block:
            dom = set()
            for x in ph.blocks[i]:
                if all(gsemis[u][a] <= hsemis[x][a] for a in gsemis[u]) and all(
                    gloops[u][a] <= hloops[x][a] for a in gloops[u]
                ) and all(gdloops[u][a] <= hdloops[x][a] for a in gdloops[u]):
                    dom.add(x)
            if not dom:
                return OracleResult("no")
            domains[u] = dom
    connected = is_connected(h)

    def run_pass(slice_budget, anchor_order):
        # returns ("yes", proj) / ("no", None) / ("unknown", None)
        budget_box = [slice_budget]
        if connected:
            # fibre equality is implied for connected targets, so the caps
            # can go, which in turn lets the search decompose into
            # independent components
            search = _VertexSearch(g, h, domains, None, budget_box, anchor_order=anchor_order)
        else:
            search = _VertexSearch(g, h, domains, r, budget_box, blocks=pg.blocks,
                                   decompose=False, anchor_order=anchor_order)
        try:
            for fv in search.solutions():
                fe = _realize_edges(g, h, fv, budget_box)
                if fe is None:
                    continue
                proj = CoveringProjection(fv, fe)
                check = verify_cover(g, h, proj)
                if not check.ok:
                    raise InternalCoverError(
                        f"oracle built an invalid certificate: {check.violations}"
                    )
                return ("yes", proj, slice_budget - budget_box[0])
            return ("no", None, slice_budget - budget_box[0])
        except BudgetExhausted:
            return ("unknown", None, slice_budget)

    # a deterministic portfolio: the branching order that tames one gadget
    # family can be hopeless on another, so probe both anchor orders with
    # small slices of the budget before committing the rest
    slices = [
        (budget // 16, 1), (budget // 16, -1),
        (budget * 3 // 16, 1), (budget * 3 // 16, -1),
        (budget * 4 // 16, 1), (budget * 4 // 16, -1),
    ]
    slices = [(b, o) for b, o in slices if b > 0] or [(budget, 1)]
    spent = 0
    for slice_budget, order in slices:
        status, proj, used = run_pass(slice_budget, order)
        spent += used
        if status == "yes":
            return OracleResult("yes", proj, spent)
        if status == "no":
            return OracleResult("no", None, spent)
    return OracleResult("unknown", None, budget)


# partial covering projections --------------------------------------------------


def partial_covers(g: Graph, h: Graph, fix: dict[str, str] | None = None,
                   budget: int = DEFAULT_BUDGET, vertex_maps_only: bool = False):
    """Enumerate partial covering projections: total colour-preserving maps
    whose edge assignment is locally injective around every vertex.

    Yields CoveringProjection objects (one witness edge map per vertex
    map).  ``fix`` pins chosen vertex images.  With ``vertex_maps_only``
    the edge map search is still run, but only the vertex map dict is
    yielded.  Raises BudgetExhausted when the node budget runs out.
    """
    caps, hsemis, hloops, hdloops = _target_caps(h)
    cross, gsemis, gloops, gdloops = _vertex_data(g)
    fix = fix or {}
    domains = {}
    for u in g.vertices():
        dom = set()
        for x in h.vertices():
            if h.vertex_colour(x) != g.vertex_colour(u):
                continue
            if any(gsemis[u][a] > hsemis[x][a] for a in gsemis[u]):
                continue
            if any(gloops[u][a] > hloops[x][a] for a in gloops[u]):
                continue
            if any(gdloops[u][a] > hdloops[x][a] for a in gdloops[u]):
                continue
            ok = True
            for (a, d), ctr in cross[u].items():
                total = sum(ctr.values())
                have = sum(c for (aa, dd, _), c in caps[x].items() if aa == a and dd == d)
                own_extra = 0
                if d == UND:
                    own_extra = 2 * gloops[u][a] + gsemis[u][a]
                elif d in (OUT, IN):
                    own_extra = gdloops[u][a]
                if total + own_extra > have:
                    ok = False
                    break
            if ok:
                dom.add(x)
        if u in fix:
            dom &= {fix[u]}
        if not dom:
            return
        domains[u] = dom
    budget_box = [budget]
    search = _VertexSearch(g, h, domains, None, budget_box)
    for fv in search.solutions():
        fe = _edge_map_search(g, h, fv, budget_box)
        if fe is None:
            continue
        if vertex_maps_only:
            yield dict(fv)
        else:
            yield CoveringProjection(dict(fv), fe)
