import random

import pytest

from coverkit import (
    CoveringProjection,
    Graph,
    is_degree_obedient,
    naive_cover,
    oracle_cover,
    partial_covers,
    verify_cover,
)

from conftest import (
    complete_graph,
    cycle,
    disjoint_union,
    one_vertex,
    random_multigraph,
    two_vertex_w,
)


def w2_target():
    # two vertices joined by two parallel edges
    return two_vertex_w(0, 0, 2, 0, 0)


def test_verify_c4_onto_double_edge():
    g = cycle(4)
    h = w2_target()
    fv = {"v0": "x", "v1": "y", "v2": "x", "v3": "y"}
    fe = {"e0": "c0", "e1": "c1", "e2": "c0", "e3": "c1"}
    res = verify_cover(g, h, CoveringProjection(fv, fe))
    assert res.ok, res.violations


def test_verify_detects_local_bijection_break():
    g = cycle(4)
    h = w2_target()
    fv = {"v0": "x", "v1": "y", "v2": "x", "v3": "y"}
    fe = {"e0": "c0", "e1": "c0", "e2": "c0", "e3": "c1"}
    res = verify_cover(g, h, CoveringProjection(fv, fe))
    assert not res.ok
    assert any("local bijection" in v for v in res.violations)


def test_verify_detects_unequal_fibres():
    g = cycle(3)
    h = disjoint_union(cycle(3), cycle(3))
    fv = {f"v{i}": f"0.v{i}" for i in range(3)}
    fe = {f"e{i}": f"0.e{i}" for i in range(3)}
    res = verify_cover(g, h, CoveringProjection(fv, fe))
    assert not res.ok
    assert any("fibre sizes differ" in v for v in res.violations)


def test_verify_colour_and_incidence():
    g = cycle(4, colour="red")
    h = w2_target()
    fv = {"v0": "x", "v1": "y", "v2": "x", "v3": "y"}
    fe = {"e0": "c0", "e1": "c1", "e2": "c0", "e3": "c1"}
    res = verify_cover(g, h, CoveringProjection(fv, fe))
    assert not res.ok


def test_oracle_k4_covers_f11():
    res = oracle_cover(complete_graph(4), one_vertex(semis=1, loops=1))
    assert res.yes
    assert verify_cover(complete_graph(4), one_vertex(semis=1, loops=1), res.projection).ok


def test_oracle_parity_f20():
    f20 = one_vertex(semis=2)
    assert oracle_cover(cycle(3), f20).no
    assert oracle_cover(cycle(4), f20).yes


def test_oracle_even_cycles_onto_w2():
    assert oracle_cover(cycle(6), w2_target()).yes
    assert oracle_cover(cycle(5), w2_target()).no


def test_oracle_loops_vs_semis():
    # a loop cannot be mapped onto a semi-edge pair
    g = one_vertex(loops=1)
    assert oracle_cover(g, one_vertex(semis=2)).no
    assert oracle_cover(g, one_vertex(loops=1)).yes


def test_oracle_budget_unknown():
    res = oracle_cover(cycle(12), cycle(3), budget=2)
    assert res.status == "unknown"
    assert oracle_cover(cycle(12), cycle(3)).yes


def test_oracle_directed():
    g = Graph("dc6")
    for i in range(6):
        g.add_vertex(f"v{i}", "n")
    for i in range(6):
        g.add_edge("arc", f"a{i}", "d", f"v{i}", f"v{(i + 1) % 6}")
    h = Graph("dc3")
    for i in range(3):
        h.add_vertex(f"w{i}", "n")
    for i in range(3):
        h.add_edge("arc", f"b{i}", "d", f"w{i}", f"w{(i + 1) % 3}")
    assert oracle_cover(g, h).yes
    rev = Graph("dc3r")
    for i in range(3):
        rev.add_vertex(f"w{i}", "n")
    for i in range(3):
        rev.add_edge("arc", f"b{i}", "d", f"w{(i + 1) % 3}", f"w{i}")
    assert oracle_cover(g, rev).yes  # isomorphic either way around


def test_oracle_disconnected_target_equitable():
    h = disjoint_union(cycle(3), cycle(3))
    # a connected graph lands in one component, starving the other fibre
    assert oracle_cover(cycle(6), h).no
    assert oracle_cover(disjoint_union(cycle(3), cycle(3)), h).yes
    # 2 copies worth of fibres can split 6 + 3 + 3
    assert oracle_cover(disjoint_union(cycle(6), cycle(3), cycle(3)), h).yes
    assert oracle_cover(disjoint_union(cycle(6), cycle(6)), h).yes
    assert oracle_cover(disjoint_union(cycle(5), cycle(7)), h).no


def test_degree_obedient_examples():
    g, h = cycle(4), w2_target()
    fv = {"v0": "x", "v1": "y", "v2": "x", "v3": "y"}
    assert is_degree_obedient(g, h, fv)
    # all-to-one map of an odd cycle onto the two-semi-edge vertex is
    # count-wise obedient even though no cover exists
    f20 = one_vertex(semis=2)
    fv2 = {v: "x" for v in cycle(3).vertices()}
    assert is_degree_obedient(cycle(3), f20, fv2)
    assert oracle_cover(cycle(3), f20).no
    # collapsing a degree-3 vertex onto a degree-2 target is not obedient
    fv3 = {v: "x" for v in complete_graph(4).vertices()}
    assert not is_degree_obedient(complete_graph(4), f20, fv3)


def test_oracle_matches_naive_on_random_pairs():
    rng = random.Random(77)
    agree = 0
    for trial in range(160):
        g = random_multigraph(rng.randrange(1, 5), rng.randrange(0, 4), seed=rng.randrange(10**6))
        h = random_multigraph(rng.randrange(1, 4), rng.randrange(0, 4), seed=rng.randrange(10**6))
        if g.m > 8 or h.m > 8:
            continue
        want = naive_cover(g, h)
        got = oracle_cover(g, h, budget=200_000)
        assert got.status in ("yes", "no")
        assert got.yes == (want is not None), (g.name, h.name, trial)
        agree += 1
    assert agree > 100


def test_oracle_matches_naive_on_lifts():
    # random 2-lifts of small multigraphs always cover, and the vertex
    # part of any valid projection is degree-obedient
    rng = random.Random(31)
    for trial in range(40):
        h = random_multigraph(rng.randrange(1, 4), rng.randrange(1, 4), seed=rng.randrange(10**6))
        g = random_lift(h, 2, rng)
        res = oracle_cover(g, h, budget=500_000)
        assert res.yes
        assert verify_cover(g, h, res.projection).ok
        assert is_degree_obedient(g, h, res.projection.fv)


def random_lift(h, k, rng):
    g = Graph(f"lift{k}-{h.name}")
    for v in h.vertices():
        for i in range(k):
            g.add_vertex(f"{v}.{i}", h.vertex_colour(v))
    for e in h.edges():
        if e.kind in ("edge", "arc"):
            perm = list(range(k))
            rng.shuffle(perm)
            for i in range(k):
                g.add_edge(e.kind, f"{e.id}.{i}", e.colour, f"{e.u}.{i}", f"{e.v}.{perm[i]}")
        elif e.kind in ("loop", "dloop"):
            # lift a loop to a cycle over the fibre (or fixed points)
            perm = list(range(k))
            rng.shuffle(perm)
            used = set()
            for i in range(k):
                if i in used:
                    continue
                # follow the cycle of the permutation
                cyc = [i]
                j = perm[i]
                while j != i:
                    cyc.append(j)
                    j = perm[j]
                used.update(cyc)
                if len(cyc) == 1:
                    g.add_edge(e.kind, f"{e.id}.{i}", e.colour, f"{e.u}.{i}")
                else:
                    kind = "edge" if e.kind == "loop" else "arc"
                    for t, a in enumerate(cyc):
                        b = cyc[(t + 1) % len(cyc)]
                        g.add_edge(kind, f"{e.id}.{a}.{b}", e.colour, f"{e.u}.{a}", f"{e.u}.{b}")
        else:
            for i in range(k):
                g.add_edge("semi", f"{e.id}.{i}", e.colour, f"{e.u}.{i}")
    return g


def test_empty_graph_convention():
    g = Graph("empty")
    h = one_vertex(loops=1)
    assert oracle_cover(g, h).no
    res = verify_cover(g, h, CoveringProjection({}, {}))
    assert not res.ok


def test_partial_covers_tripod():
    from coverkit.gadgets import fw2_target, limping_tripod

    lt = limping_tripod()
    h = fw2_target()
    seen_uv = set()
    count = 0
    for fv in partial_covers(lt, h, vertex_maps_only=True):
        count += 1
        assert fv["p1"] == fv["p2"] == "p"
        seen_uv.add((fv["u"], fv["v"]))
    assert count > 0
    # the two pendant ports always share their image, and both images occur
    assert seen_uv == {("r", "r"), ("g", "g")}


def test_partial_cover_fix():
    from coverkit.gadgets import fw2_target, limping_tripod

    lt = limping_tripod()
    h = fw2_target()
    found = list(partial_covers(lt, h, fix={"u": "r", "v": "g"}, vertex_maps_only=True))
    assert found == []
    found_rr = list(partial_covers(lt, h, fix={"u": "r", "v": "r"}, vertex_maps_only=True))
    assert found_rr


def test_verify_catches_corrupted_certificates():
    # mutate valid certificates in ways that must break them
    from coverkit.covers import _candidates_for, _h_edge_index

    rng = random.Random(99)
    checked = 0
    for trial in range(25):
        h = random_multigraph(rng.randrange(1, 4), rng.randrange(1, 4), seed=rng.randrange(10**6))
        g = random_lift(h, 2, rng)
        res = oracle_cover(g, h, budget=300_000)
        assert res.yes
        fv, fe = dict(res.projection.fv), dict(res.projection.fe)
        # drop one edge image: totality violation
        if fe:
            broken = dict(fe)
            broken.pop(sorted(broken)[0])
            assert not verify_cover(g, h, CoveringProjection(fv, broken)).ok
        # redirect one edge image outside its candidate set
        by = _h_edge_index(h)
        for e in g.edges():
            cands = set(_candidates_for(e, fv, by))
            others = [x.id for x in h.edges() if x.id not in cands]
            if others:
                broken = dict(fe)
                broken[e.id] = others[0]
                assert not verify_cover(g, h, CoveringProjection(fv, broken)).ok
                checked += 1
                break
    assert checked >= 5


def test_partial_covers_budget():
    from coverkit import BudgetExhausted
    from coverkit.gadgets import fw2_target, limping_tripod

    with pytest.raises(BudgetExhausted):
        list(partial_covers(limping_tripod(), fw2_target(), budget=2))


def test_oracle_vs_naive_bounded_exhaustive():
    # systematic mini-universe: every subset of a small edge-slot menu on
    # up to three vertices, against a fixed family of targets
    import itertools as it

    from coverkit import Graph

    def build(n, slots):
        g = Graph("mini")
        for i in range(1, n + 1):
            g.add_vertex(str(i), "n")
        for idx, (kind, ends) in enumerate(slots):
            g.add_edge(kind, f"e{idx}", "e", *ends)
        return g

    menu3 = [
        ("edge", ("1", "2")), ("edge", ("1", "2")), ("edge", ("2", "3")),
        ("loop", ("1",)), ("semi", ("1",)), ("semi", ("3",)),
    ]
    targets = [
        one_vertex(semis=2, name="f20"),
        one_vertex(semis=1, loops=1, name="f11"),
        disjoint_union(one_vertex(loops=1), one_vertex(loops=1), name="2loops"),
        cycle(3),
    ]
    checked = 0
    for n, menu in ((3, menu3), (2, menu3[:2] + menu3[3:5])):
        for k in range(0, 5):
            for combo in it.combinations(range(len(menu)), k):
                slots = [menu[i] for i in combo]
                if any(int(v) > n for _, ends in slots for v in ends):
                    continue
                g = build(n, slots)
                for h in targets:
                    want = naive_cover(g, h)
                    got = oracle_cover(g, h, budget=100_000)
                    assert got.status in ("yes", "no")
                    assert got.yes == (want is not None), (n, combo, h.name)
                    checked += 1
    assert checked >= 300
