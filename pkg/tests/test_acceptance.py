"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Every tolerance here is exact (integer equality / boolean checks); the random
suites are fully seeded and deterministic.
"""

import itertools
import random

from digraph_minors.core import (
    Digraph,
    Subdigraph,
    contract,
    gen_family,
    gen_random_tournament,
    gen_stability_two,
    gen_super_tournament,
    gen_transitive,
    induced_strongly_connected,
)
from digraph_minors.connectivity import find_k_triple
from digraph_minors.pathdecomp import (
    build_linked,
    exact_pathwidth,
    transform_under_contraction,
    verify,
)
from digraph_minors.minor import (
    find_minor,
    find_subdigraph_embedding,
    minor_of_triple,
    verify_mapping,
)
from digraph_minors.labeled import (
    classify_qmk,
    decompose_links,
    decompose_windows,
    flag_extension,
    higman_leq,
    peel_noncontractible,
    window_vertices,
)
from digraph_minors.experiments import (
    all_semi_complete,
    has_two_disjoint_cycles,
    oracle_equivalence,
    pathwidth_brute_force,
)

from qmk_instances import THREE_CHAIN, instance_pool, noncontractible_instance
from test_labeled import brute_force_higman


def report(number, name, passed):
    print(f"ACCEPTANCE {number} ({name}): {'PASS' if passed else 'FAIL'}")
    assert passed, f"criterion {number} ({name}) failed"


def test_criterion_1_pathwidth_ground_truth():
    ok = True
    for n in range(1, 11):
        pw, p = exact_pathwidth(gen_transitive(n))
        ok = ok and pw == 0 and verify(gen_transitive(n), p).valid
    rng = random.Random(101)
    for _ in range(100):
        n = rng.randrange(1, 7)
        g = gen_random_tournament(n, seed=rng.randrange(10**9))
        pw, p = exact_pathwidth(g)
        ok = ok and pw == pathwidth_brute_force(g) and verify(g, p).valid
    for _ in range(100):
        n = rng.randrange(1, 7)
        g = gen_family("random_digraph", n, seed=rng.randrange(10**9))
        pw, p = exact_pathwidth(g)
        ok = ok and pw == pathwidth_brute_force(g) and verify(g, p).valid
    report(1, "path-width ground truth", ok)


def test_criterion_2_linked_construction():
    ok = True
    rng = random.Random(202)
    for _ in range(200):
        n = rng.randrange(1, 13)
        g = gen_random_tournament(n, seed=rng.randrange(10**9))
        _, p = exact_pathwidth(g)
        lp = build_linked(g, p, frozenset(), frozenset())
        rep = verify(g, lp, check_linked=True)
        ok = ok and rep.valid
        ok = ok and rep.linked.increment_ok
        ok = ok and rep.linked.cardinality_ok
        ok = ok and rep.linked.linked_ok
        ok = ok and lp.first == frozenset() and lp.last == frozenset()
        ok = ok and lp.max_bag <= p.max_bag
        ok = ok and lp.r - 1 == 2 * (n - lp.min_bag)
    report(2, "linked construction", ok)


def test_criterion_3_minor_definitional_equivalence():
    rep = oracle_equivalence(n=4, samples=50, seed=20260808)
    report(3, "minor definitional equivalence", rep["aggregate"]["all_pass"])


def test_criterion_4_triple_construction():
    ok = True
    for k in range(1, 5):
        edges = []
        for a in range(k):
            for b in range(k, 2 * k):
                edges.append((a, b))
        for b in range(k, 2 * k):
            for c in range(2 * k, 3 * k):
                edges.append((b, c))
        edges += [(2 * k + i, i) for i in range(k)]
        host = Digraph(3 * k, tuple(edges))
        triple = find_k_triple(host, k)
        ok = ok and triple is not None
        for h in all_semi_complete(k):
            mapping = minor_of_triple(h, host, triple)
            ok = ok and verify_mapping(h, host, mapping).ok
    report(4, "k-triple realizes all semi-complete patterns", ok)


def test_criterion_5_contraction_transform():
    ok = True
    rng = random.Random(505)
    done = 0
    while done < 100:
        n = rng.randrange(3, 9)
        if done % 2:
            g = gen_random_tournament(n, seed=rng.randrange(10**9))
        else:
            g = gen_family("random_digraph", n, seed=rng.randrange(10**9))
        subsets = [
            s
            for r in range(2, n + 1)
            for s in itertools.combinations(range(n), r)
            if induced_strongly_connected(g, s)
        ]
        if not subsets:
            continue
        h = Subdigraph.induced(g, subsets[rng.randrange(len(subsets))])
        _, p = exact_pathwidth(g)
        q = transform_under_contraction(g, p, h)
        g2, _ = contract(g, h)
        ok = ok and verify(g2, q).valid and q.width <= p.width
        done += 1
    report(5, "contraction transform preserves validity and width", ok)


def test_criterion_6_super_tournament_family():
    ok = True
    for i in range(3, 6):
        for j in range(i, 6):
            mapping = find_minor(
                gen_super_tournament(i), gen_super_tournament(j), budget=None
            )
            if i == j:
                ok = ok and mapping is not None
            else:
                ok = ok and mapping is None
    report(6, "super-tournament family pairwise non-containment", ok)


def test_criterion_7_stability_two_family():
    small = gen_stability_two(2)
    big = gen_stability_two(3)
    ok = find_subdigraph_embedding(small, big) is None
    n = big.vertex_count
    for mask in range(1, 1 << n):
        vs = [v for v in range(n) if mask >> v & 1]
        if len(vs) < 2 or not induced_strongly_connected(big, vs):
            continue
        contracted, _ = contract(big, Subdigraph.induced(big, vs))
        ok = ok and not has_two_disjoint_cycles(contracted)
    report(7, "stability-two family structural route", ok)


def test_criterion_8_higman_agreement():
    base = THREE_CHAIN
    ok = True
    seqs = [
        tuple(s)
        for length in range(4)
        for s in itertools.product((0, 1, 2), repeat=length)
    ]
    for p in seqs:
        for q in seqs:
            ok = ok and higman_leq(p, q, base) == brute_force_higman(p, q, base)
            if len(p) >= 2 and len(q) >= 2:
                ok = ok and higman_leq(p, q, base, pinned=True) == brute_force_higman(
                    p, q, base, pinned=True
                )
    rng = random.Random(808)
    for _ in range(2000):
        a = rng.randrange(0, 9)
        b = rng.randrange(0, 9)
        p = tuple(rng.randrange(3) for _ in range(a))
        q = tuple(rng.randrange(3) for _ in range(b))
        ok = ok and higman_leq(p, q, base) == brute_force_higman(p, q, base)
        if a >= 2 and b >= 2:
            ok = ok and higman_leq(p, q, base, pinned=True) == brute_force_higman(
                p, q, base, pinned=True
            )
    report(8, "subsequence order agrees with brute force", ok)


def test_criterion_9_link_decomposition():
    pool = instance_pool(
        100,
        9,
        seed=909,
        max_m=2,
        max_k=4,
        order=THREE_CHAIN,
        require=lambda d, c: not c.trivial,
    )
    ok = len(pool) == 100
    for d, _ in pool:
        windows = decompose_windows(d)
        factors = decompose_links(d)
        for f in factors[:-1]:
            ok = ok and classify_qmk(f).link
        last = classify_qmk(factors[-1])
        ok = ok and (last.link or last.non_contractible_member)
        rebuilt = []
        for (lo, hi), f in zip(windows, factors):
            names = window_vertices(d, lo, hi)
            fb = [frozenset(names[x] for x in bag) for bag in f.p.bags]
            rebuilt.extend(fb if not rebuilt else fb[1:])
        ok = ok and tuple(rebuilt) == d.p.bags
    report(9, "link decomposition factors and refolds", ok)


def test_criterion_10_peel_round_trip():
    ok = True
    rng = random.Random(1010)
    for idx in range(100):
        n = rng.randrange(4, 8)
        d, (u, v) = noncontractible_instance(
            n, seed=rng.randrange(10**9), label_seed=rng.randrange(10**9)
        )
        peeled = peel_noncontractible(d)
        ok = ok and (peeled.m, peeled.k) == (d.m - 1, d.k - 1)
        ok = ok and peeled.q == flag_extension(d.q)
        order = [w for w in range(d.g.vertex_count) if w not in (u, v)]
        rebuilt = set()
        for new_id, old in enumerate(order):
            base, x, y = peeled.labels[new_id]
            ok = ok and base == d.labels[old]
            if x in (0, 2):
                rebuilt.add((old, u))
            if x in (1, 2):
                rebuilt.add((u, old))
            if y in (0, 2):
                rebuilt.add((old, v))
            if y in (1, 2):
                rebuilt.add((v, old))
        incident = {
            e for e in d.g.edges if (e[0] in (u, v)) != (e[1] in (u, v))
        }
        ok = ok and rebuilt == incident
        internal = {e for e in d.g.edges if e[0] in (u, v) and e[1] in (u, v)}
        ok = ok and internal == {(u, v)}
    report(10, "peel validates and labels reconstruct the removed pair", ok)
