"""Shared fixtures, seeded generators, and independent brute-force oracles."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

from pathminor import Edge, Graph, Polynomial, SourceSinkSpec, Walk
from pathminor.families import permutation_sign
from pathminor.graph import canonical_cycle, is_self_avoiding, walk_vertices
from pathminor.poly import monomial_from_edges


def feedback_graph() -> Graph:
    """Golden 8-edge graph: two sources feed a 3-cycle with two exits.

    Unique cycle b,d,e on vertices p,q,r; paths a,b,d,f,h (v1 to v3),
    a,b,c (v1 to v4) and g,h (v2 to v3); no path v2 to v4.
    """
    return Graph(
        ["v1", "v2", "v3", "v4", "p", "q", "r", "s"],
        [
            Edge("a", "v1", "p"),
            Edge("b", "p", "q"),
            Edge("c", "q", "v4"),
            Edge("d", "q", "r"),
            Edge("e", "r", "p"),
            Edge("f", "r", "s"),
            Edge("g", "v2", "s"),
            Edge("h", "s", "v3"),
        ],
    )


def loop_graph() -> Graph:
    """v1 -> p -> v3 with a loop x at p."""
    return Graph(
        ["v1", "p", "v3"],
        [Edge("a", "v1", "p"), Edge("x", "p", "p"), Edge("h", "p", "v3")],
    )


def two_loop_graph() -> Graph:
    """Two loops on separate vertices: two cyclic-core components."""
    return Graph(
        ["u", "w"],
        [Edge("x", "u", "u"), Edge("y", "w", "w")],
    )


def two_cycle_graph() -> Graph:
    return Graph(
        ["u", "w"],
        [Edge("x", "u", "w"), Edge("y", "w", "u")],
    )


def var(name: str) -> Polynomial:
    return Polynomial.variable(name)


def mono(*names: str) -> Polynomial:
    """Product of edge variables, e.g. mono('b','d','e')."""
    return Polynomial.from_monomial(monomial_from_edges(names))


def random_multigraph(rng: random.Random, max_vertices=6, max_edges=10) -> Graph:
    """Random directed multigraph; loops and parallel edges happen freely."""
    n = rng.randint(1, max_vertices)
    vertices = [f"v{i}" for i in range(1, n + 1)]
    m = rng.randint(0, max_edges)
    edges = [
        Edge(f"e{idx:02d}", rng.choice(vertices), rng.choice(vertices))
        for idx in range(m)
    ]
    return Graph(vertices, edges)


def random_dag(rng: random.Random, max_vertices=6, max_edges=10) -> Graph:
    """Random DAG: edges only go from lower to higher vertex index."""
    n = rng.randint(2, max_vertices)
    vertices = [f"v{i}" for i in range(1, n + 1)]
    m = rng.randint(0, max_edges)
    edges = []
    for idx in range(m):
        i = rng.randint(0, n - 2)
        j = rng.randint(i + 1, n - 1)
        edges.append(Edge(f"e{idx:02d}", vertices[i], vertices[j]))
    return Graph(vertices, edges)


def random_spec(rng: random.Random, g: Graph, k: int) -> SourceSinkSpec:
    sources = tuple(rng.sample(g.vertices, k))
    sinks = tuple(rng.sample(g.vertices, k))
    return SourceSinkSpec(sources, sinks)


def random_polynomial(
    rng: random.Random,
    variables=("a", "b", "c"),
    max_terms=6,
    max_exp=3,
    coeff_bound=9,
) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        width = rng.randint(0, len(variables))
        chosen = rng.sample(variables, width)
        key = tuple(sorted((v, rng.randint(1, max_exp)) for v in chosen))
        coeff = rng.randint(-coeff_bound, coeff_bound)
        terms[key] = terms.get(key, 0) + coeff
    return Polynomial(terms)


def random_assignment(rng: random.Random, variables) -> dict[str, Fraction]:
    return {
        v: Fraction(rng.randint(-4, 4), rng.randint(1, 5)) for v in variables
    }


# ---------------------------------------------------------------------------
# Independent brute-force oracles (deliberately different algorithms from
# the package internals).

def brute_force_cycles(g: Graph, max_len: int) -> set:
    """Every closed walk of length <= max_len, filtered for all-distinct
    tails and deduplicated by rotation.  Finds every self-avoiding cycle
    when max_len >= |V|; the enumeration itself is blind DFS."""
    found = set()

    def walk(start, at, edges):
        if edges and at == start:
            tails = [g.edge(i).tail for i in edges]
            if len(set(tails)) == len(tails):
                found.add(canonical_cycle(g, tuple(edges)))
        if len(edges) == max_len:
            return
        for e in g.out_edges(at):
            edges.append(e.id)
            walk(start, e.head, edges)
            edges.pop()

    for v in g.vertices:
        walk(v, v, [])
    return found


def brute_force_walk_polynomial(g: Graph, tail: str, head: str, max_len: int) -> Polynomial:
    """Sum of walk weights over all walks tail -> head with <= max_len edges,
    enumerated by plain DFS."""
    contributions = []

    def dfs(at, edges):
        if at == head:
            contributions.append((monomial_from_edges(edges), 1))
        if len(edges) == max_len:
            return
        for e in g.out_edges(at):
            edges.append(e.id)
            dfs(e.head, edges)
            edges.pop()

    dfs(tail, [])
    return Polynomial.from_pairs(contributions)


def _all_simple_paths(g: Graph, start: str, end: str) -> list[Walk]:
    out = []

    def dfs(at, edges, seen):
        if at == end:
            out.append(Walk(start, tuple(edges)))
            return
        for e in g.out_edges(at):
            if e.head in seen:
                continue
            edges.append(e.id)
            seen.add(e.head)
            dfs(e.head, edges, seen)
            seen.remove(e.head)
            edges.pop()

    dfs(start, [], {start})
    return out


def brute_force_signed_path_sum(g: Graph, spec: SourceSinkSpec) -> Polynomial:
    """Signed sum over vertex-disjoint self-avoiding path systems, built by
    trying every sink permutation and every simple-path combination."""
    k = spec.k
    contributions = []
    for perm in permutations(range(k)):
        options = [
            _all_simple_paths(g, spec.sources[i], spec.sinks[perm[i]])
            for i in range(k)
        ]

        def combine(i, chosen, used):
            if i == k:
                weight = monomial_from_edges(
                    e for w in chosen for e in w.edges
                )
                contributions.append((weight, permutation_sign(perm)))
                return
            for w in options[i]:
                verts = set(walk_vertices(g, w))
                if not is_self_avoiding(g, w):
                    continue
                if used & verts:
                    continue
                combine(i + 1, chosen + [w], used | verts)

        combine(0, [], set())
    return Polynomial.from_pairs(contributions)


def gauss_jordan_inverse(matrix: list[list[Fraction]]) -> list[list[Fraction]]:
    """Plain exact-rational inverse, used to cross-check the fraction-free
    minor computation."""
    n = len(matrix)
    a = [row[:] for row in matrix]
    inv = [
        [Fraction(1) if i == j else Fraction(0) for j in range(n)]
        for i in range(n)
    ]
    for col in range(n):
        pivot = next(
            (r for r in range(col, n) if a[r][col] != 0), None
        )
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[pivot] = a[pivot], a[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        scale = a[col][col]
        a[col] = [value / scale for value in a[col]]
        inv[col] = [value / scale for value in inv[col]]
        for r in range(n):
            if r == col or a[r][col] == 0:
                continue
            factor = a[r][col]
            a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
            inv[r] = [x - factor * y for x, y in zip(inv[r], inv[col])]
    return inv
