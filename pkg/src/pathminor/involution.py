"""The sign-reversing, weight-preserving pairing of non-flow pairs.

A pair consists of walks P_1..P_k joining the ordered sources to the sinks
in some permutation (self-intersections allowed) plus a vertex-disjoint
cycle collection.  Pairs that fail to be flows cancel in the determinant
expansion; `cancel_partner` produces the partner a pair cancels against:

* pick the smallest walk index i that self-intersects or meets the
  collection or a later walk;
* along P_i, pick the smallest position q whose vertex witnesses one of
  those intersections;
* if the vertex at q lies on a later walk, swap the two walk suffixes
  there (flipping the sink permutation by a transposition);
* otherwise either detach the first cycle P_i completes into the
  collection, or splice the first collection cycle P_i touches into P_i,
  whichever happens earlier along the walk (changing the collection size
  by one).

Positions run from 1 to m+1 for a walk with m edges: position p <= m is
the tail of edge p, and the extra position m+1 is the terminal vertex,
which can carry an intersection that no edge tail sees.  All traces use
this 1-based indexing.

`cancellation_audit` partitions the non-flow pairs of bounded degree into
orbits of size two and checks that the total signed weight equals the
signed weight of the flows alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .families import (
    DEFAULT_OBJECT_CAP,
    EnumerationLimitError,
    elementary_cycles,
    permutation_sign,
)
from .graph import (
    CanonicalCycle,
    Graph,
    SourceSinkSpec,
    Walk,
    canonical_cycle,
    check_spec,
    walk_vertices,
)
from .poly import Monomial, Polynomial, monomial_from_edges


class InvolutionError(RuntimeError):
    """Precondition violation or a failed pairing during an audit."""


@dataclass(frozen=True)
class InvolutionPair:
    """Walks joining sources to sinks plus a disjoint cycle collection.

    Equality and hashing ignore the graph and spec, so enumerated pairs
    from the same query can be collected into sets.
    """

    graph: Graph = field(compare=False)
    spec: SourceSinkSpec = field(compare=False)
    walks: tuple[Walk, ...] = ()
    cycles: tuple[CanonicalCycle, ...] = ()


@dataclass(frozen=True)
class InvolutionTrace:
    """Which move fired and at which 1-based positions."""

    case: str  # "tail_swap" | "path_to_cycles" | "cycles_to_path"
    i: int
    i_prime: int | None = None
    q: int | None = None
    q_prime: int | None = None
    s: int | None = None
    t: int | None = None
    u: int | None = None
    moved_cycle: CanonicalCycle | None = None


def _sorted_cycles(cycles) -> tuple[CanonicalCycle, ...]:
    return tuple(sorted(cycles, key=lambda c: (c.vertices, c.edges)))


def make_pair(
    g: Graph,
    spec: SourceSinkSpec,
    walks: Sequence[Walk],
    cycles: Sequence[CanonicalCycle] = (),
) -> InvolutionPair:
    """Validate and build a pair: walk i runs from source i to a distinct
    sink, and the cycles are canonical and pairwise vertex-disjoint."""
    check_spec(g, spec)
    if len(walks) != spec.k:
        raise InvolutionError(
            f"expected {spec.k} walks, got {len(walks)}"
        )
    hit_sinks = set()
    for i, w in enumerate(walks):
        if w.start != spec.sources[i]:
            raise InvolutionError(
                f"walk {i} starts at {w.start!r}, not {spec.sources[i]!r}"
            )
        end = walk_vertices(g, w)[-1]
        if end not in spec.sinks:
            raise InvolutionError(f"walk {i} ends off the sink list: {end!r}")
        if end in hit_sinks:
            raise InvolutionError(f"two walks end at sink {end!r}")
        hit_sinks.add(end)
    seen: set[str] = set()
    for c in cycles:
        if canonical_cycle(g, c.edges) != c:
            raise InvolutionError(f"cycle {c.edges} is not canonical")
        if not seen.isdisjoint(c.vertices):
            raise InvolutionError("cycle collection is not vertex-disjoint")
        seen.update(c.vertices)
    return InvolutionPair(g, spec, tuple(walks), _sorted_cycles(cycles))


def pair_permutation(pair: InvolutionPair) -> tuple[int, ...]:
    """Sink index reached by each walk, in walk order."""
    sink_pos = {v: j for j, v in enumerate(pair.spec.sinks)}
    return tuple(
        sink_pos[walk_vertices(pair.graph, w)[-1]] for w in pair.walks
    )


def pair_sign(pair: InvolutionPair) -> int:
    sign = permutation_sign(pair_permutation(pair))
    return -sign if len(pair.cycles) % 2 else sign


def pair_weight(pair: InvolutionPair) -> Monomial:
    edges = [e for w in pair.walks for e in w.edges]
    edges.extend(e for c in pair.cycles for e in c.edges)
    return monomial_from_edges(edges)


def pair_degree(pair: InvolutionPair) -> int:
    return sum(len(w.edges) for w in pair.walks) + sum(
        len(c) for c in pair.cycles
    )


def is_flow(pair: InvolutionPair) -> bool:
    """True iff all walks are self-avoiding and everything is disjoint."""
    g = pair.graph
    seen = {v for c in pair.cycles for v in c.vertices}
    for w in pair.walks:
        vs = walk_vertices(g, w)
        if len(set(vs)) != len(vs):
            return False
        if not seen.isdisjoint(vs):
            return False
        seen.update(vs)
    return True


def _offending_index(pair: InvolutionPair) -> int | None:
    """Smallest walk index that self-intersects or meets the collection or
    a later walk; None when the pair is a flow."""
    g = pair.graph
    verts = [walk_vertices(g, w) for w in pair.walks]
    sets = [set(vs) for vs in verts]
    on_cycles = {v for c in pair.cycles for v in c.vertices}
    for i in range(len(pair.walks)):
        if len(sets[i]) != len(verts[i]):
            return i
        if not sets[i].isdisjoint(on_cycles):
            return i
        if any(not sets[i].isdisjoint(sets[j]) for j in range(i + 1, len(sets))):
            return i
    return None


def _rotated_edges(cycle: CanonicalCycle, start_vertex: str) -> tuple[str, ...]:
    pos = cycle.vertices.index(start_vertex)
    return cycle.edges[pos:] + cycle.edges[:pos]


def cancel_partner(
    pair: InvolutionPair,
) -> tuple[InvolutionPair, InvolutionTrace]:
    """Apply the pairing move to a non-flow pair.

    Returns the partner pair and a trace of the move.  Raises
    InvolutionError when called on a flow.
    """
    g = pair.graph
    i = _offending_index(pair)
    if i is None:
        raise InvolutionError("pair is a flow; no partner exists")
    walks = pair.walks
    verts = walk_vertices(g, walks[i])  # position p has vertex verts[p-1]
    top = len(verts)  # == m + 1

    cycle_at: dict[str, CanonicalCycle] = {}
    for c in pair.cycles:
        for v in c.vertices:
            cycle_at[v] = c
    later = [
        (j, set(walk_vertices(g, walks[j])))
        for j in range(i + 1, len(walks))
    ]

    q = None
    for p in range(1, top + 1):
        v = verts[p - 1]
        if (
            v in cycle_at
            or any(v in vs for _, vs in later)
            or v in verts[p:]
        ):
            q = p
            break
    assert q is not None  # i is offending, so some position witnesses it
    v_q = verts[q - 1]

    swap_targets = [j for j, vs in later if v_q in vs]
    if swap_targets:
        # Tail swap with the smallest later walk through v_q.  The swap
        # point on that walk is its first visit to v_q.
        ip = swap_targets[0]
        other = walks[ip]
        other_verts = walk_vertices(g, other)
        qp = other_verts.index(v_q) + 1
        new_i = Walk(walks[i].start, walks[i].edges[: q - 1] + other.edges[qp - 1 :])
        new_ip = Walk(other.start, other.edges[: qp - 1] + walks[i].edges[q - 1 :])
        swapped = list(walks)
        swapped[i] = new_i
        swapped[ip] = new_ip
        trace = InvolutionTrace(
            "tail_swap", i + 1, i_prime=ip + 1, q=q, q_prime=qp
        )
        return (
            InvolutionPair(g, pair.spec, tuple(swapped), pair.cycles),
            trace,
        )

    # Cycle move: t ends the first cycle P_i completes (s starts it),
    # u is the first position on a collection cycle; exactly the earlier
    # of the two events fires, and they can never coincide.
    first_pos: dict[str, int] = {}
    s = t = None
    for p in range(1, top + 1):
        v = verts[p - 1]
        if v in first_pos:
            s, t = first_pos[v], p
            break
        first_pos[v] = p
    u = None
    for p in range(1, top + 1):
        if verts[p - 1] in cycle_at:
            u = p
            break

    if t is not None and (u is None or t < u):
        loop = canonical_cycle(g, walks[i].edges[s - 1 : t - 1])
        new_i = Walk(walks[i].start, walks[i].edges[: s - 1] + walks[i].edges[t - 1 :])
        new_walks = list(walks)
        new_walks[i] = new_i
        trace = InvolutionTrace(
            "path_to_cycles", i + 1, s=s, t=t, moved_cycle=loop
        )
        return (
            InvolutionPair(
                g,
                pair.spec,
                tuple(new_walks),
                _sorted_cycles(pair.cycles + (loop,)),
            ),
            trace,
        )

    moved = cycle_at[verts[u - 1]]
    spliced = (
        walks[i].edges[: u - 1]
        + _rotated_edges(moved, verts[u - 1])
        + walks[i].edges[u - 1 :]
    )
    new_walks = list(walks)
    new_walks[i] = Walk(walks[i].start, spliced)
    remaining = tuple(c for c in pair.cycles if c != moved)
    trace = InvolutionTrace("cycles_to_path", i + 1, u=u, moved_cycle=moved)
    return (
        InvolutionPair(g, pair.spec, tuple(new_walks), remaining),
        trace,
    )


@dataclass(frozen=True)
class InvolutionCheck:
    """Outcome of verifying the pairing on one non-flow pair."""

    ok: bool
    involutive: bool
    sign_reversed: bool
    weight_preserved: bool
    index_preserved: bool
    image_is_non_flow: bool
    image: InvolutionPair
    trace: InvolutionTrace
    back_trace: InvolutionTrace | None


def check_involution(pair: InvolutionPair, phi_fn=cancel_partner) -> InvolutionCheck:
    """Verify the four pairing obligations on one non-flow pair.

    Failures are reported, not raised.  `phi_fn` is injectable so a
    deliberately broken map can be shown to fail.
    """
    image, trace = phi_fn(pair)
    image_is_non_flow = not is_flow(image)
    back_trace = None
    involutive = False
    if image_is_non_flow:
        back, back_trace = phi_fn(image)
        involutive = back == pair
    sign_reversed = pair_sign(image) == -pair_sign(pair)
    weight_preserved = pair_weight(image) == pair_weight(pair)
    index_preserved = _offending_index(image) == _offending_index(pair)
    ok = (
        involutive
        and sign_reversed
        and weight_preserved
        and index_preserved
        and image_is_non_flow
    )
    return InvolutionCheck(
        ok,
        involutive,
        sign_reversed,
        weight_preserved,
        index_preserved,
        image_is_non_flow,
        image,
        trace,
        back_trace,
    )


def _bounded_walks(g: Graph, start: str, end: str, max_len: int) -> list[Walk]:
    """All walks from start to end with at most max_len edges, revisits
    allowed, in lexicographic edge order."""
    out: list[Walk] = []
    acc: list[str] = []

    def dfs(at: str):
        if at == end:
            out.append(Walk(start, tuple(acc)))
        if len(acc) == max_len:
            return
        for e in g.out_edges(at):
            acc.append(e.id)
            dfs(e.head)
            acc.pop()

    dfs(start)
    return out


def _bounded_collections(cycles, budget: int) -> list[tuple[CanonicalCycle, ...]]:
    """Vertex-disjoint cycle subsets with total edge count <= budget."""
    out: list[tuple[CanonicalCycle, ...]] = []

    def extend(start: int, chosen: list, used: set[str], size: int):
        out.append(tuple(chosen))
        for idx in range(start, len(cycles)):
            cand = cycles[idx]
            if size + len(cand) > budget:
                continue
            if used.isdisjoint(cand.vertices):
                chosen.append(cand)
                used.update(cand.vertices)
                extend(idx + 1, chosen, used, size + len(cand))
                used.difference_update(cand.vertices)
                chosen.pop()

    extend(0, [], set(), 0)
    return out


def enumerate_pairs(
    g: Graph,
    spec: SourceSinkSpec,
    max_degree: int,
    *,
    max_objects: int = DEFAULT_OBJECT_CAP,
) -> list[InvolutionPair]:
    """All pairs of total weight degree at most max_degree.

    Walks are assigned source by source, sinks in list order, walks per
    endpoint pair in lexicographic order; each walk assignment is then
    combined with every cycle collection fitting the remaining budget.
    """
    check_spec(g, spec)
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    cycles = elementary_cycles(g)
    k = spec.k
    walk_cache: dict[tuple[str, str], list[Walk]] = {}

    def walks_between(a: str, b: str) -> list[Walk]:
        key = (a, b)
        if key not in walk_cache:
            walk_cache[key] = _bounded_walks(g, a, b, max_degree)
        return walk_cache[key]

    pairs: list[InvolutionPair] = []
    taken = [False] * k
    chosen: list[Walk] = []

    def assign(i: int, budget: int):
        if i == k:
            base = tuple(chosen)
            for coll in _bounded_collections(cycles, budget):
                if len(pairs) >= max_objects:
                    raise EnumerationLimitError(
                        f"more than {max_objects} pairs"
                    )
                pairs.append(InvolutionPair(g, spec, base, coll))
            return
        for j in range(k):
            if taken[j]:
                continue
            taken[j] = True
            for w in walks_between(spec.sources[i], spec.sinks[j]):
                if len(w.edges) > budget:
                    continue
                chosen.append(w)
                assign(i + 1, budget - len(w.edges))
                chosen.pop()
            taken[j] = False

    assign(0, max_degree)
    return pairs


@dataclass(frozen=True)
class AuditReport:
    """Cancellation audit outcome: per-degree signed sums and orbit counts."""

    max_degree: int
    pair_count: int
    flow_count: int
    orbit_count: int
    degree_sums: tuple[tuple[int, Polynomial, Polynomial], ...]
    passed: bool

    def to_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "pair_count": self.pair_count,
            "flow_count": self.flow_count,
            "orbit_count": self.orbit_count,
            "degree_sums": [
                {
                    "degree": d,
                    "pair_sum": str(ps),
                    "flow_sum": str(fs),
                    "equal": ps == fs,
                }
                for d, ps, fs in self.degree_sums
            ],
            "status": "pass" if self.passed else "fail",
        }


def cancellation_audit(
    g: Graph,
    spec: SourceSinkSpec,
    max_degree: int,
    *,
    max_objects: int = DEFAULT_OBJECT_CAP,
) -> AuditReport:
    """Pair up all non-flow pairs of degree <= max_degree and show the
    signed sums telescope down to the flows, degree by degree.

    An unpaired non-flow pair raises InvolutionError: the map is wrong and
    no report could be trusted.
    """
    pairs = enumerate_pairs(g, spec, max_degree, max_objects=max_objects)
    flow_pairs: list[InvolutionPair] = []
    non_flows: list[InvolutionPair] = []
    for p in pairs:
        (flow_pairs if is_flow(p) else non_flows).append(p)

    available = set(non_flows)
    visited: set[InvolutionPair] = set()
    orbits = 0
    for p in non_flows:
        if p in visited:
            continue
        image, _ = cancel_partner(p)
        if image not in available:
            raise InvolutionError("image of a non-flow pair was not enumerated")
        if image == p:
            raise InvolutionError("pairing fixed a non-flow pair")
        back, _ = cancel_partner(image)
        if back != p:
            raise InvolutionError("pairing is not an involution on this orbit")
        if pair_weight(image) != pair_weight(p):
            raise InvolutionError("orbit does not preserve weight")
        if pair_sign(image) != -pair_sign(p):
            raise InvolutionError("orbit does not reverse sign")
        visited.add(p)
        visited.add(image)
        orbits += 1

    by_degree: dict[int, tuple[list, list]] = {}
    for p in pairs:
        slot = by_degree.setdefault(pair_degree(p), ([], []))
        slot[0].append((pair_weight(p), pair_sign(p)))
    for p in flow_pairs:
        by_degree[pair_degree(p)][1].append((pair_weight(p), pair_sign(p)))

    degree_sums = []
    passed = True
    for d in sorted(by_degree):
        pair_sum = Polynomial.from_pairs(by_degree[d][0])
        flow_sum = Polynomial.from_pairs(by_degree[d][1])
        if pair_sum != flow_sum:
            passed = False
        degree_sums.append((d, pair_sum, flow_sum))

    return AuditReport(
        max_degree,
        len(pairs),
        len(flow_pairs),
        orbits,
        tuple(degree_sums),
        passed,
    )
