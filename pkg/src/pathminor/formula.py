"""Minors of the weighted path matrix as exact rational expressions.

A minor with rows taken from the ordered sources A and columns from the
ordered sinks B equals

    (signed sum over flows connecting A to B) /
    (signed sum over vertex-disjoint cycle collections),

where a flow's sign is the path permutation's parity times (-1)^{number of
cycles}.  The denominator factors over the weakly connected components of
the cyclic core, and the factor of a component cancels from the fraction
exactly when no path system touches that component.  Cancellation is
performed by exact polynomial division, which must succeed; a remainder
would mean a bug, never a wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .families import (
    CyclicCore,
    component_vertices,
    cycle_collections,
    cyclic_core,
    elementary_cycles,
    flows,
    path_system_vertices,
    path_systems,
    permutation_sign,
)
from .graph import Graph, SourceSinkSpec, SpecError, check_spec
from .poly import Polynomial, RationalExpr, monomial_mul

DEFAULT_DET_DIM_CAP = 8


class CyclicGraphError(ValueError):
    """Raised when an acyclic-only operation meets a directed cycle."""


@dataclass(frozen=True)
class RationalMinor:
    """A minor before and after component-wise cancellation.

    The raw and reduced fractions are equal as rational functions:
    raw_numerator * reduced_denominator == reduced_numerator *
    raw_denominator.  `canceled_components` are indices into the
    component list of `cyclic_core` (equivalently `component_factors`).
    """

    raw_numerator: Polynomial
    raw_denominator: Polynomial
    reduced_numerator: Polynomial
    reduced_denominator: Polynomial
    canceled_components: tuple[int, ...]

    def raw(self) -> RationalExpr:
        return RationalExpr(self.raw_numerator, self.raw_denominator)

    def reduced(self) -> RationalExpr:
        return RationalExpr(self.reduced_numerator, self.reduced_denominator)

    def to_dict(self) -> dict:
        return {
            "raw_numerator": str(self.raw_numerator),
            "raw_denominator": str(self.raw_denominator),
            "reduced_numerator": str(self.reduced_numerator),
            "reduced_denominator": str(self.reduced_denominator),
            "canceled_components": list(self.canceled_components),
        }


def denominator(g: Graph) -> Polynomial:
    """Signed weight sum over all vertex-disjoint cycle collections.

    The empty collection contributes +1, so the constant term is +1.
    """
    return Polynomial.from_pairs(
        (coll.weight, coll.sign) for coll in cycle_collections(g)
    )


def numerator(g: Graph, spec: SourceSinkSpec) -> Polynomial:
    """Signed weight sum over all flows connecting the sources to the sinks."""
    return Polynomial.from_pairs(
        (flow.weight, flow.sign) for flow in flows(g, spec)
    )


def component_factors(g: Graph) -> list[Polynomial]:
    """Denominator factor of each cyclic-core component, in component order.

    The factor of a component is the signed collection sum over that
    component alone; the product of all factors is the full denominator.
    """
    cycles = elementary_cycles(g)
    core = cyclic_core(g)
    return _component_factors(g, cycles, core)


def _component_factors(g, cycles, core: CyclicCore) -> list[Polynomial]:
    factors = []
    for component in core.components:
        edge_set = set(component)
        local = [c for c in cycles if set(c.edges) <= edge_set]
        factors.append(
            Polynomial.from_pairs(
                (coll.weight, coll.sign)
                for coll in cycle_collections(g, cycles=local)
            )
        )
    return factors


def minor(g: Graph, spec: SourceSinkSpec) -> RationalMinor:
    """The minor for the given ordered sources and sinks, raw and reduced.

    For k = 0 the minor is the empty determinant: the raw fraction is
    denominator/denominator and everything cancels to 1/1.  When no path
    system exists the numerator is zero and the result reduces to 0/1.
    """
    check_spec(g, spec)
    cycles = elementary_cycles(g)
    systems = path_systems(g, spec)
    collections = cycle_collections(g, cycles=cycles)
    raw_den = Polynomial.from_pairs((c.weight, c.sign) for c in collections)

    contributions = []
    touched: set[int] = set()
    core = cyclic_core(g)
    factors = _component_factors(g, cycles, core)
    comp_verts = [component_vertices(g, comp) for comp in core.components]
    for system in systems:
        occupied = path_system_vertices(g, system)
        for idx, verts in enumerate(comp_verts):
            if idx not in touched and not verts.isdisjoint(occupied):
                touched.add(idx)
        for coll in cycle_collections(g, occupied, cycles=cycles):
            flow_sign = system.sign * coll.sign
            contributions.append(
                (monomial_mul(system.weight, coll.weight), flow_sign)
            )
    raw_num = Polynomial.from_pairs(contributions)

    canceled = tuple(
        idx for idx in range(len(factors)) if idx not in touched
    )
    reduced_num = raw_num
    for idx in canceled:
        reduced_num = reduced_num.exact_div(factors[idx])
    reduced_den = Polynomial.one()
    for idx in range(len(factors)):
        if idx not in canceled:
            reduced_den = reduced_den * factors[idx]
    return RationalMinor(raw_num, raw_den, reduced_num, reduced_den, canceled)


def entry(g: Graph, source: str, sink: str) -> RationalMinor:
    """Single entry of the path matrix: the 1x1 minor from source to sink."""
    for name in (source, sink):
        if not g.has_vertex(name):
            raise SpecError(f"unknown vertex {name!r}")
    return minor(g, SourceSinkSpec((source,), (sink,)))


def weighted_adjacency(g: Graph) -> list[list[Polynomial]]:
    """Symbolic adjacency: entry (i, j) sums the variables of edges i -> j."""
    n = g.n
    matrix = [[Polynomial.zero() for _ in range(n)] for _ in range(n)]
    for e in g.edges:
        i = g.vertex_index(e.tail)
        j = g.vertex_index(e.head)
        matrix[i][j] = matrix[i][j] + Polynomial.variable(e.id)
    return matrix


def leibniz_det(
    matrix: list[list[Polynomial]],
    *,
    max_dim: int = DEFAULT_DET_DIM_CAP,
    max_degree: int | None = None,
) -> Polynomial:
    """Determinant as the signed sum over permutations, computed exactly.

    Optionally truncates every partial product at max_degree, which keeps
    the determinant of a degree-truncated matrix exact up to that degree.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    if n > max_dim:
        raise ValueError(f"dimension {n} exceeds cap {max_dim}")
    total = Polynomial.zero()
    for perm in permutations(range(n)):
        prod = Polynomial.one()
        for i in range(n):
            cell = matrix[i][perm[i]]
            if cell.is_zero:
                prod = Polynomial.zero()
                break
            if max_degree is None:
                prod = prod * cell
            else:
                prod = prod.mul_truncated(cell, max_degree)
        if prod.is_zero:
            continue
        if permutation_sign(perm) > 0:
            total = total + prod
        else:
            total = total - prod
    return total


def acyclic_minor(g: Graph, spec: SourceSinkSpec) -> Polynomial:
    """Signed path-system sum; the whole minor when the graph is acyclic.

    On an acyclic graph there are no cycle collections besides the empty
    one, so the minor is this polynomial over 1.
    """
    if elementary_cycles(g):
        raise CyclicGraphError("graph has a directed cycle")
    return Polynomial.from_pairs(
        (system.weight, system.sign) for system in path_systems(g, spec)
    )
