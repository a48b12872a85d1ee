"""Exhaustive enumeration of the combinatorial families behind the formula.

Four objects are enumerated, always in a documented deterministic order:
elementary (self-avoiding) cycles, vertex-disjoint cycle collections,
vertex-disjoint self-avoiding path systems joining ordered sources to
ordered sinks, and flows (a path system plus a disjoint cycle collection).
The cyclic core -- the subgraph of edges on at least one cycle -- is also
computed here, split into weakly connected components.

Everything is fully materialized; a hard object cap guards against
accidental exponential blow-ups on non-desk-scale inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import (
    CanonicalCycle,
    Graph,
    SourceSinkSpec,
    Walk,
    check_spec,
    walk_vertices,
)
from .poly import Monomial, monomial_from_edges, monomial_mul

DEFAULT_OBJECT_CAP = 10_000_000


class EnumerationLimitError(RuntimeError):
    """Raised when an enumeration would materialize too many objects."""


def permutation_sign(perm: Sequence[int]) -> int:
    """Parity sign of a permutation given as an image tuple."""
    inversions = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class CycleCollection:
    """A set of pairwise vertex-disjoint cycles, kept in canonical order."""

    cycles: tuple[CanonicalCycle, ...] = ()

    @property
    def sign(self) -> int:
        return -1 if len(self.cycles) % 2 else 1

    @property
    def weight(self) -> Monomial:
        return monomial_from_edges(e for c in self.cycles for e in c.edges)

    @property
    def vertices(self) -> frozenset[str]:
        return frozenset(v for c in self.cycles for v in c.vertices)


@dataclass(frozen=True)
class PathSystem:
    """Vertex-disjoint self-avoiding paths P_i: source i -> sink perm[i]."""

    paths: tuple[Walk, ...]
    permutation: tuple[int, ...]

    @property
    def sign(self) -> int:
        return permutation_sign(self.permutation)

    @property
    def weight(self) -> Monomial:
        return monomial_from_edges(e for p in self.paths for e in p.edges)


def path_system_vertices(g: Graph, system: PathSystem) -> frozenset[str]:
    return frozenset(
        v for p in system.paths for v in walk_vertices(g, p)
    )


@dataclass(frozen=True)
class Flow:
    """A path system together with a vertex-disjoint cycle collection."""

    system: PathSystem
    cycles: CycleCollection

    @property
    def sign(self) -> int:
        return self.system.sign * self.cycles.sign

    @property
    def weight(self) -> Monomial:
        return monomial_mul(self.system.weight, self.cycles.weight)


@dataclass(frozen=True)
class CyclicCore:
    """Edges lying on at least one cycle, split into weak components.

    Components are edge-id tuples sorted internally and ordered by their
    smallest edge id.
    """

    edges: frozenset[str]
    components: tuple[tuple[str, ...], ...]


def elementary_cycles(g: Graph) -> list[CanonicalCycle]:
    """All self-avoiding directed cycles, each once, canonically sorted.

    Backtracking search rooted at each vertex in name order: a cycle is
    found exactly once, rooted at its lexicographically smallest vertex,
    so the emitted edge sequence is already the canonical rotation.
    Parallel edges yield distinct cycles; loops are length-1 cycles.
    """
    order = {v: i for i, v in enumerate(sorted(g.vertices))}
    found: list[CanonicalCycle] = []

    def search(root: str, at: str, edge_path: list[str], on_path: list[str]):
        for e in g.out_edges(at):
            if e.head == root:
                found.append(
                    CanonicalCycle(tuple(edge_path) + (e.id,), tuple(on_path))
                )
            elif order[e.head] > order[root] and e.head not in on_path:
                edge_path.append(e.id)
                on_path.append(e.head)
                search(root, e.head, edge_path, on_path)
                on_path.pop()
                edge_path.pop()

    for root in sorted(g.vertices):
        search(root, root, [], [root])
    found.sort(key=lambda c: (c.vertices, c.edges))
    return found


def cycle_collections(
    g: Graph,
    forbidden: Iterable[str] = (),
    *,
    cycles: Sequence[CanonicalCycle] | None = None,
    max_objects: int = DEFAULT_OBJECT_CAP,
) -> list[CycleCollection]:
    """All pairwise vertex-disjoint cycle collections avoiding `forbidden`.

    Includes the empty collection.  Order: subsets of the canonical cycle
    list in lexicographic-by-inclusion order, smaller collections first
    along each branch.
    """
    banned = frozenset(forbidden)
    if cycles is None:
        cycles = elementary_cycles(g)
    eligible = [c for c in cycles if banned.isdisjoint(c.vertices)]
    collections: list[CycleCollection] = []

    def extend(start: int, chosen: list[CanonicalCycle], used: set[str]):
        if len(collections) >= max_objects:
            raise EnumerationLimitError(
                f"more than {max_objects} cycle collections"
            )
        collections.append(CycleCollection(tuple(chosen)))
        for idx in range(start, len(eligible)):
            cand = eligible[idx]
            if used.isdisjoint(cand.vertices):
                chosen.append(cand)
                used.update(cand.vertices)
                extend(idx + 1, chosen, used)
                used.difference_update(cand.vertices)
                chosen.pop()

    extend(0, [], set())
    return collections


def path_systems(
    g: Graph,
    spec: SourceSinkSpec,
    *,
    max_objects: int = DEFAULT_OBJECT_CAP,
) -> list[PathSystem]:
    """All vertex-disjoint self-avoiding path systems for the given spec.

    Paths are grown depth-first, source by source, with out-edges in
    sorted order.  In a valid system no path may pass through any sink
    (every sink is the endpoint of exactly one path and the paths are
    vertex-disjoint), so a walk reaching an open sink always terminates
    there; this prunes without losing systems.
    """
    check_spec(g, spec)
    k = spec.k
    sink_pos = {v: j for j, v in enumerate(spec.sinks)}
    sink_taken = [False] * k
    used: set[str] = set()
    paths: list[Walk] = []
    perm: list[int] = []
    systems: list[PathSystem] = []

    def place(i: int):
        if i == k:
            if len(systems) >= max_objects:
                raise EnumerationLimitError(
                    f"more than {max_objects} path systems"
                )
            systems.append(PathSystem(tuple(paths), tuple(perm)))
            return
        source = spec.sources[i]
        if source in used:
            return
        used.add(source)
        edge_acc: list[str] = []

        def grow(at: str):
            j = sink_pos.get(at)
            if j is not None:
                if not sink_taken[j]:
                    sink_taken[j] = True
                    paths.append(Walk(source, tuple(edge_acc)))
                    perm.append(j)
                    place(i + 1)
                    perm.pop()
                    paths.pop()
                    sink_taken[j] = False
                return
            for e in g.out_edges(at):
                if e.head in used:
                    continue
                used.add(e.head)
                edge_acc.append(e.id)
                grow(e.head)
                edge_acc.pop()
                used.remove(e.head)

        grow(source)
        used.remove(source)

    place(0)
    return systems


def flows(
    g: Graph,
    spec: SourceSinkSpec,
    *,
    max_objects: int = DEFAULT_OBJECT_CAP,
) -> list[Flow]:
    """All (path system, cycle collection) pairs that are vertex-disjoint.

    Built per path system by re-running the collection enumeration with
    the system's vertices forbidden.
    """
    all_cycles = elementary_cycles(g)
    result: list[Flow] = []
    for system in path_systems(g, spec, max_objects=max_objects):
        occupied = path_system_vertices(g, system)
        for coll in cycle_collections(
            g, occupied, cycles=all_cycles, max_objects=max_objects
        ):
            if len(result) >= max_objects:
                raise EnumerationLimitError(f"more than {max_objects} flows")
            result.append(Flow(system, coll))
    return result


def cyclic_core(g: Graph) -> CyclicCore:
    """Union of all cycle edges, partitioned into weakly connected components."""
    cycles = elementary_cycles(g)
    core_edges = {e for c in cycles for e in c.edges}
    parent: dict[str, str] = {}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(a: str, b: str):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for edge_id in core_edges:
        e = g.edge(edge_id)
        parent.setdefault(e.tail, e.tail)
        parent.setdefault(e.head, e.head)
        union(e.tail, e.head)

    grouped: dict[str, list[str]] = {}
    for edge_id in core_edges:
        root = find(g.edge(edge_id).tail)
        grouped.setdefault(root, []).append(edge_id)
    components = sorted(tuple(sorted(ids)) for ids in grouped.values())
    return CyclicCore(frozenset(core_edges), tuple(components))


def component_vertices(g: Graph, component: Iterable[str]) -> frozenset[str]:
    """Vertex set spanned by a component's edges."""
    verts = set()
    for edge_id in component:
        e = g.edge(edge_id)
        verts.add(e.tail)
        verts.add(e.head)
    return frozenset(verts)
