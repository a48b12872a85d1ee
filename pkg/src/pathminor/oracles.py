"""Independent verification of computed minors.

Two oracles, neither of which shares code paths with the flow/collection
enumeration:

* series: the path matrix is built directly from its definition as
  I + A + A^2 + ... + A^N with symbolic adjacency A, truncated at total
  degree N.  A k x k minor of degree-N-exact entries is exact below degree
  N+1 as long as every product is truncated at N, so the identity
  numerator == minor * denominator is checked at degree N.
* numeric: edge weights are specialized to exact rationals small enough
  that I - A is strictly diagonally dominant; the minor of (I - A)^{-1} is
  computed fraction-free (integer Bareiss determinants combined through
  the complementary-minor identity) and compared for exact equality with
  the evaluated rational expression.  No floating point anywhere.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from . import formula
from .graph import Graph, SourceSinkSpec, check_spec
from .poly import Polynomial, render_monomial, term_sort_key

_ASSIGNMENT_STEPS = 8


class SingularMatrixError(ArithmeticError):
    """I - A is singular for the given assignment; pick a smaller one."""


@dataclass(frozen=True)
class TruncatedMatrix:
    """Path-matrix entries with every term above `order` dropped."""

    order: int
    vertices: tuple[str, ...]
    entries: tuple[tuple[Polynomial, ...], ...]

    def entry(self, tail: str, head: str) -> Polynomial:
        i = self.vertices.index(tail)
        j = self.vertices.index(head)
        return self.entries[i][j]


@dataclass(frozen=True)
class SeriesReport:
    status: str  # "match" | "mismatch"
    order: int
    first_mismatch: str | None

    @property
    def matched(self) -> bool:
        return self.status == "match"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "order": self.order,
            "first_mismatch": self.first_mismatch,
        }


@dataclass(frozen=True)
class NumericReport:
    status: str  # "match" | "mismatch"
    inverse_value: Fraction
    raw_value: Fraction
    reduced_value: Fraction

    @property
    def matched(self) -> bool:
        return self.status == "match"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "inverse_value": str(self.inverse_value),
            "raw_value": str(self.raw_value),
            "reduced_value": str(self.reduced_value),
        }


def truncated_path_matrix(g: Graph, order: int) -> TruncatedMatrix:
    """I + A + A^2 + ... + A^order with all products truncated at `order`.

    Entry (i, j) is exactly the sum of walk weights over all walks from
    v_i to v_j with at most `order` edges, because every edge variable is
    degree 1.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    n = g.n
    adjacency = formula.weighted_adjacency(g)
    one = Polynomial.one()
    zero = Polynomial.zero()
    total = [[one if i == j else zero for j in range(n)] for i in range(n)]
    power = [row[:] for row in total]
    for _ in range(order):
        power = _mat_mul_truncated(power, adjacency, order)
        if all(cell.is_zero for row in power for cell in row):
            break
        for i in range(n):
            for j in range(n):
                total[i][j] = total[i][j] + power[i][j]
    return TruncatedMatrix(
        order, g.vertices, tuple(tuple(row) for row in total)
    )


def _mat_mul_truncated(a, b, max_degree):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = Polynomial.zero()
            for l in range(n):
                if a[i][l].is_zero or b[l][j].is_zero:
                    continue
                acc = acc + a[i][l].mul_truncated(b[l][j], max_degree)
            row.append(acc)
        out.append(row)
    return out


def verify_minor_series(
    g: Graph,
    spec: SourceSinkSpec,
    order: int = 10,
    *,
    minor_result: "formula.RationalMinor | None" = None,
    matrix: TruncatedMatrix | None = None,
) -> SeriesReport:
    """Check numerator == (series minor) * denominator up to degree `order`.

    A mismatch is a report outcome, not an exception; the report carries
    the smallest offending monomial.  `minor_result` and `matrix` may be
    passed in to reuse work (or, in tests, to inject corrupted values).
    """
    check_spec(g, spec)
    rm = minor_result if minor_result is not None else formula.minor(g, spec)
    tm = matrix if matrix is not None else truncated_path_matrix(g, order)
    if tm.order != order:
        raise ValueError(f"matrix is truncated at {tm.order}, not {order}")
    sub = [
        [tm.entry(a, b) for b in spec.sinks]
        for a in spec.sources
    ]
    series_minor = formula.leibniz_det(sub, max_degree=order)
    lhs = rm.raw_numerator.truncate(order)
    rhs = series_minor.mul_truncated(rm.raw_denominator, order)
    diff = lhs - rhs
    if diff.is_zero:
        return SeriesReport("match", order, None)
    first = min(diff.terms, key=term_sort_key)
    return SeriesReport("mismatch", order, render_monomial(first))


def max_out_multiplicity(g: Graph) -> int:
    """Largest number of edges (counting parallels) leaving one vertex."""
    counts = {v: 0 for v in g.vertices}
    for e in g.edges:
        counts[e.tail] += 1
    return max(counts.values(), default=0)


def contraction_assignment(g: Graph, seed: int = 0) -> dict[str, Fraction]:
    """Seeded positive rational weights making every row sum of A below 1/2.

    Each weight is at most 1/(2 * max out-multiplicity), which keeps
    I - A strictly diagonally dominant, hence invertible.
    """
    rng = random.Random(seed)
    bound = Fraction(1, 2 * max(1, max_out_multiplicity(g)))
    return {
        e.id: bound * Fraction(rng.randint(1, _ASSIGNMENT_STEPS), _ASSIGNMENT_STEPS)
        for e in g.edges
    }


def verify_minor_numeric(
    g: Graph,
    spec: SourceSinkSpec,
    assignment: Mapping[str, Fraction | int] | None = None,
    seed: int = 0,
    *,
    minor_result: "formula.RationalMinor | None" = None,
) -> NumericReport:
    """Compare the evaluated minor against the inverse-matrix minor, exactly.

    With no explicit assignment a seeded contraction assignment is drawn.
    Both the raw and the reduced fraction must agree with the value read
    off (I - A)^{-1}.
    """
    check_spec(g, spec)
    if assignment is None:
        assignment = contraction_assignment(g, seed)
    rm = minor_result if minor_result is not None else formula.minor(g, spec)
    x = _identity_minus_adjacency(g, assignment)
    rows = [g.vertex_index(a) for a in spec.sources]
    cols = [g.vertex_index(b) for b in spec.sinks]
    inverse_value = inverse_minor(x, rows, cols)
    raw_value = rm.raw().evaluate(assignment)
    reduced_value = rm.reduced().evaluate(assignment)
    status = (
        "match"
        if raw_value == inverse_value == reduced_value
        else "mismatch"
    )
    return NumericReport(status, inverse_value, raw_value, reduced_value)


def _identity_minus_adjacency(g, assignment) -> list[list[Fraction]]:
    n = g.n
    x = [
        [Fraction(1) if i == j else Fraction(0) for j in range(n)]
        for i in range(n)
    ]
    for e in g.edges:
        i = g.vertex_index(e.tail)
        j = g.vertex_index(e.head)
        x[i][j] -= Fraction(assignment[e.id])
    return x


def bareiss_det(matrix: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix (Bareiss algorithm)."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [row[:] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for swap in range(k + 1, n):
                if m[swap][k] != 0:
                    m[k], m[swap] = m[swap], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse_minor(
    x: list[list[Fraction]], rows: list[int], cols: list[int]
) -> Fraction:
    """det of the submatrix of x^{-1} with the given rows and columns.

    Uses the complementary-minor identity
        det(inv(X)[R, S]) = (-1)^{sum(R) + sum(S)} det(X[S^c, R^c]) / det(X)
    on index *sets*, corrected by the parities of the input orderings, so
    the inverse itself is never formed.  Determinants are computed by
    integer Bareiss elimination after clearing denominators.
    """
    n = len(x)
    if len(rows) != len(cols):
        raise ValueError("row and column lists must have equal length")
    if sorted(set(rows)) != sorted(rows) or sorted(set(cols)) != sorted(cols):
        raise ValueError("row and column lists must not repeat")
    k = len(rows)

    scale = 1
    for row in x:
        for value in row:
            scale = scale * value.denominator // math.gcd(
                scale, value.denominator
            )
    y = [[int(value * scale) for value in row] for row in x]
    det_y = bareiss_det(y)
    if det_y == 0:
        raise SingularMatrixError("I - A is singular for this assignment")

    row_set = sorted(rows)
    col_set = sorted(cols)
    row_comp = [i for i in range(n) if i not in set(rows)]
    col_comp = [j for j in range(n) if j not in set(cols)]
    complement = [[y[i][j] for j in row_comp] for i in col_comp]
    det_comp = bareiss_det(complement)

    # 1-based index sums shift by k for rows and k for columns, which
    # cancels mod 2, so 0-based sums give the same parity.
    parity = sum(row_set) + sum(col_set)
    reorder = permutation_parity_of_sort(rows) * permutation_parity_of_sort(cols)
    sign = -1 if parity % 2 else 1
    return Fraction(sign * reorder * det_comp * scale**k, det_y)


def permutation_parity_of_sort(indices: list[int]) -> int:
    """Sign of the permutation that sorts the given distinct indices."""
    sign = 1
    order = list(indices)
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            if order[i] > order[j]:
                sign = -sign
    return sign
