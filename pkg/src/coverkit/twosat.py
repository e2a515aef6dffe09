"""A small 2-SAT engine: implication graph plus Tarjan SCC condensation.

Every constraint the cover solver emits is an equivalence, an antivalence
or a unit, each encoded as a pair of 2-clauses.  The engine stays a
general 2-SAT solver anyway, which keeps degenerate emissions such as
x <=> not x (from a vertex adjacent twice to the same neighbour) correct
for free.
"""

from __future__ import annotations


class TwoSat:
    def __init__(self):
        self._index: dict[str, int] = {}
        self._names: list[str] = []
        self.clauses: list[tuple[tuple[str, bool], tuple[str, bool]]] = []

    def _var(self, name: str) -> int:
        if name not in self._index:
            self._index[name] = len(self._names)
            self._names.append(name)
        return self._index[name]

    def add_clause(self, a: str, a_pos: bool, b: str, b_pos: bool) -> None:
        self._var(a)
        self._var(b)
        self.clauses.append(((a, a_pos), (b, b_pos)))

    def add_equivalence(self, a: str, b: str) -> None:
        self.add_clause(a, True, b, False)
        self.add_clause(a, False, b, True)

    def add_antivalence(self, a: str, b: str) -> None:
        self.add_clause(a, True, b, True)
        self.add_clause(a, False, b, False)

    def add_unit(self, a: str, value: bool) -> None:
        self.add_clause(a, value, a, value)

    def variables(self) -> list[str]:
        return list(self._names)

    def solve(self) -> dict[str, bool] | None:
        """A satisfying assignment, or None.  Variables mentioned only by
        name (never in a clause) do not exist; add a trivial clause first."""
        n = len(self._names)
        if n == 0:
            return {}
        # literal node: 2*i for x_i true, 2*i+1 for x_i false
        adj: list[list[int]] = [[] for _ in range(2 * n)]

        def node(var: int, pos: bool) -> int:
            return 2 * var + (0 if pos else 1)

        for (a, ap), (b, bp) in self.clauses:
            ia, ib = self._index[a], self._index[b]
            adj[node(ia, not ap)].append(node(ib, bp))
            adj[node(ib, not bp)].append(node(ia, ap))

        comp = _tarjan_scc(adj)
        out: dict[str, bool] = {}
        for i, name in enumerate(self._names):
            if comp[2 * i] == comp[2 * i + 1]:
                return None
            # Tarjan emits components in reverse topological order, so a
            # smaller component id means later in topological order.
            out[name] = comp[2 * i] < comp[2 * i + 1]
        return out


def _tarjan_scc(adj: list[list[int]]) -> list[int]:
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            while pi < len(adj[v]):
                w = adj[v][pi]
                pi += 1
                if index[w] == -1:
                    work[-1] = (v, pi)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
    return comp
