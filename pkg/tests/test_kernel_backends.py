"""The compiled kernel and the pure-Python fallback must agree exactly."""

from __future__ import annotations

import random

import pytest

from helpers import random_polynomial
from pathminor import _kernel_py

compiled = pytest.importorskip("pathminor._speedups")


def _random_terms(rng):
    return random_polynomial(rng, max_terms=8, max_exp=4).terms


def test_backends_agree_on_random_inputs():
    rng = random.Random(41)
    for _ in range(200):
        a = _random_terms(rng)
        b = _random_terms(rng)
        assert compiled.add_terms(a, b) == _kernel_py.add_terms(a, b)
        assert compiled.sub_terms(a, b) == _kernel_py.sub_terms(a, b)
        assert compiled.neg_terms(a) == _kernel_py.neg_terms(a)
        assert compiled.mul_terms(a, b) == _kernel_py.mul_terms(a, b)
        for bound in (0, 2, 5):
            assert compiled.mul_terms(a, b, bound) == _kernel_py.mul_terms(
                a, b, bound
            )
            assert compiled.truncate_terms(a, bound) == _kernel_py.truncate_terms(
                a, bound
            )


def test_monomial_primitives_agree():
    rng = random.Random(43)
    for _ in range(200):
        m = next(iter(_random_terms(rng) or {(): 1}))
        n = next(iter(_random_terms(rng) or {(): 1}))
        assert compiled.monomial_mul(m, n) == _kernel_py.monomial_mul(m, n)
        assert compiled.monomial_degree(m) == _kernel_py.monomial_degree(m)


def test_scaling_matches():
    rng = random.Random(47)
    for factor in (-3, -1, 0, 1, 2, 10**30):
        a = _random_terms(rng)
        assert compiled.scale_terms(a, factor) == _kernel_py.scale_terms(
            a, factor
        )


def test_big_coefficients_survive_compiled_path():
    huge = 10**40
    a = {(("x", 1),): huge}
    out = compiled.mul_terms(a, a)
    assert out == {(("x", 2),): huge * huge}
