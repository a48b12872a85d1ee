"""Exact sparse multivariate polynomial arithmetic over the integers.

Variables are edge-id strings, one per edge of a graph, and monomials are
tuples of (variable, exponent) pairs sorted by variable name.  Coefficients
are Python ints, so signed sums of exponentially many terms cannot
overflow.  The zero polynomial has an empty term dict; no zero coefficient
or zero exponent is ever stored, which makes dict equality a canonical
polynomial equality.

The term-level inner loops live in a small kernel with two interchangeable
implementations: the compiled `_speedups` extension and the pure-Python
`_kernel_py` fallback.  The compiled one is used when importable unless
``PATHMINOR_PURE_PYTHON`` is set in the environment.
"""

from __future__ import annotations

import os
from collections import Counter
from fractions import Fraction
from typing import Iterable, Mapping

if os.environ.get("PATHMINOR_PURE_PYTHON"):
    from . import _kernel_py as _kernel

    KERNEL_BACKEND = "python"
else:
    try:
        from . import _speedups as _kernel  # type: ignore[no-redef]

        KERNEL_BACKEND = "compiled"
    except ImportError:
        from . import _kernel_py as _kernel  # type: ignore[no-redef]

        KERNEL_BACKEND = "python"

Monomial = tuple[tuple[str, int], ...]

UNIT_MONOMIAL: Monomial = ()

monomial_degree = _kernel.monomial_degree
monomial_mul = _kernel.monomial_mul


class MissingVariableError(ValueError):
    """Raised when an evaluation assignment does not cover a variable."""

    def __init__(self, variable: str):
        super().__init__(f"assignment does not cover variable {variable!r}")
        self.variable = variable


class InexactDivisionError(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


class ZeroDenominatorError(ZeroDivisionError):
    """Raised when a rational expression is evaluated at a denominator zero."""


def monomial(exponents: Mapping[str, int] | Iterable[tuple[str, int]]) -> Monomial:
    """Build a monomial from a variable -> exponent association.

    Zero exponents are dropped; negative exponents are rejected.
    """
    items = exponents.items() if isinstance(exponents, Mapping) else exponents
    merged: Counter[str] = Counter()
    for var, exp in items:
        if exp < 0:
            raise ValueError(f"negative exponent for variable {var!r}")
        merged[var] += exp
    return tuple(sorted((v, e) for v, e in merged.items() if e))


def monomial_from_edges(edge_ids: Iterable[str]) -> Monomial:
    """Monomial of a traversal: one factor per edge, counting repeats."""
    counts = Counter(edge_ids)
    return tuple(sorted(counts.items()))


def render_monomial(m: Monomial) -> str:
    """Render as `*`-joined var^exp factors; the unit monomial is `1`."""
    if not m:
        return "1"
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


def term_sort_key(m: Monomial) -> tuple[int, Monomial]:
    # Display order: grade by total degree, then by the name-sorted
    # (variable, exponent) sequence.  Deterministic, but not a division
    # order; exact_div uses a true graded-lex order internally.
    return (monomial_degree(m), m)


class Polynomial:
    """Immutable polynomial; supports +, -, *, ** and integer operands."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self._terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def _wrap(cls, terms: dict) -> "Polynomial":
        p = object.__new__(cls)
        p._terms = terms
        return p

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._wrap({})

    @classmethod
    def one(cls) -> "Polynomial":
        return cls._wrap({UNIT_MONOMIAL: 1})

    @classmethod
    def constant(cls, value: int) -> "Polynomial":
        return cls._wrap({UNIT_MONOMIAL: value} if value else {})

    @classmethod
    def variable(cls, name: str) -> "Polynomial":
        return cls._wrap({((name, 1),): 1})

    @classmethod
    def from_monomial(cls, m: Monomial, coeff: int = 1) -> "Polynomial":
        return cls._wrap({m: coeff} if coeff else {})

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Monomial, int]]) -> "Polynomial":
        """Sum of (monomial, coefficient) contributions, merging duplicates."""
        terms: dict[Monomial, int] = {}
        for m, c in pairs:
            v = terms.get(m, 0) + c
            if v:
                terms[m] = v
            elif m in terms:
                del terms[m]
        return cls._wrap(terms)

    @property
    def terms(self) -> dict[Monomial, int]:
        """The canonical term dict.  Treat as read-only."""
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Max total degree over all terms; 0 for the zero polynomial."""
        if not self._terms:
            return 0
        return max(monomial_degree(m) for m in self._terms)

    def constant_term(self) -> int:
        return self._terms.get(UNIT_MONOMIAL, 0)

    def variables(self) -> set[str]:
        return {v for m in self._terms for v, _ in m}

    def truncate(self, max_degree: int) -> "Polynomial":
        """Drop every term of total degree above max_degree."""
        if max_degree < 0:
            raise ValueError("max_degree must be nonnegative")
        return Polynomial._wrap(_kernel.truncate_terms(self._terms, max_degree))

    def evaluate(self, assignment: Mapping[str, Fraction | int]) -> Fraction:
        """Exact rational value at the given variable assignment.

        Every variable appearing in the polynomial must be covered;
        otherwise MissingVariableError names the first uncovered one.
        """
        total = Fraction(0)
        for m, coeff in self._terms.items():
            value = Fraction(coeff)
            for var, exp in m:
                if var not in assignment:
                    raise MissingVariableError(var)
                value *= Fraction(assignment[var]) ** exp
            total += value
        return total

    def exact_div(self, divisor: "Polynomial") -> "Polynomial":
        """Quotient self / divisor when the division is exact over Z.

        Raises InexactDivisionError if the divisor does not divide self with
        integer coefficients.
        """
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero:
            return Polynomial.zero()
        return _exact_div(self, divisor)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Polynomial._wrap(_kernel.add_terms(self._terms, other._terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Polynomial._wrap(_kernel.sub_terms(self._terms, other._terms))

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Polynomial._wrap(_kernel.sub_terms(other._terms, self._terms))

    def __neg__(self):
        return Polynomial._wrap(_kernel.neg_terms(self._terms))

    def __mul__(self, other):
        if isinstance(other, int):
            return Polynomial._wrap(_kernel.scale_terms(self._terms, other))
        if not isinstance(other, Polynomial):
            return NotImplemented
        return Polynomial._wrap(_kernel.mul_terms(self._terms, other._terms))

    __rmul__ = __mul__

    def mul_truncated(self, other: "Polynomial", max_degree: int) -> "Polynomial":
        """Product with every term above max_degree pruned during the loop."""
        return Polynomial._wrap(
            _kernel.mul_terms(self._terms, other._terms, max_degree)
        )

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self._terms == ({UNIT_MONOMIAL: other} if other else {})
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # mutable-free but unhashable, like dict

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        if not self._terms:
            return "0"
        parts: list[str] = []
        for m in sorted(self._terms, key=term_sort_key):
            coeff = self._terms[m]
            mono = render_monomial(m)
            mag = abs(coeff)
            if m == UNIT_MONOMIAL:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"


def _coerce(value) -> "Polynomial":
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, int):
        return Polynomial.constant(value)
    return NotImplemented


def _exact_div(p: Polynomial, d: Polynomial) -> Polynomial:
    # Single-divisor multivariate division under graded lex over the union
    # of variables.  For a principal ideal the reduction is canonical, so a
    # nonzero remainder proves the division was not exact.
    variables = sorted(p.variables() | d.variables())
    index = {v: i for i, v in enumerate(variables)}
    width = len(variables)

    def vector(m: Monomial) -> tuple[int, ...]:
        exps = [0] * width
        for v, e in m:
            exps[index[v]] = e
        return tuple(exps)

    def key(vec: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
        return (sum(vec), vec)

    remainder = {vector(m): c for m, c in p.terms.items()}
    divisor = {vector(m): c for m, c in d.terms.items()}
    lead_d = max(divisor, key=key)
    lead_dc = divisor[lead_d]
    quotient: dict[tuple[int, ...], int] = {}

    while remainder:
        lead_r = max(remainder, key=key)
        shift = tuple(r - s for r, s in zip(lead_r, lead_d))
        if any(e < 0 for e in shift):
            raise InexactDivisionError("leading monomial not divisible")
        qc, residue = divmod(remainder[lead_r], lead_dc)
        if residue:
            raise InexactDivisionError("leading coefficient not divisible")
        quotient[shift] = qc
        for vec, coeff in divisor.items():
            target = tuple(a + b for a, b in zip(vec, shift))
            c = remainder.get(target, 0) - qc * coeff
            if c:
                remainder[target] = c
            elif target in remainder:
                del remainder[target]

    def unvector(vec: tuple[int, ...]) -> Monomial:
        return tuple((variables[i], e) for i, e in enumerate(vec) if e)

    return Polynomial._wrap({unvector(v): c for v, c in quotient.items() if c})


class RationalExpr:
    """A numerator/denominator pair of polynomials.

    The denominator must have constant term exactly +1 (the empty cycle
    collection always contributes 1), which in particular rules out a zero
    denominator.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: Polynomial, denominator: Polynomial):
        if denominator.constant_term() != 1:
            raise ValueError("denominator must have constant term +1")
        self.numerator = numerator
        self.denominator = denominator

    def evaluate(self, assignment: Mapping[str, Fraction | int]) -> Fraction:
        """Exact rational value; raises ZeroDenominatorError when undefined."""
        den = self.denominator.evaluate(assignment)
        if den == 0:
            raise ZeroDenominatorError("denominator evaluates to zero")
        return self.numerator.evaluate(assignment) / den

    def __eq__(self, other):
        if not isinstance(other, RationalExpr):
            return NotImplemented
        return (
            self.numerator == other.numerator
            and self.denominator == other.denominator
        )

    __hash__ = None

    def __str__(self):
        return f"{_wrap_sum(self.numerator)} / {_wrap_sum(self.denominator)}"

    def __repr__(self):
        return f"RationalExpr({self})"


def _wrap_sum(p: Polynomial) -> str:
    text = str(p)
    return f"({text})" if len(p.terms) > 1 else text
