"""Pure-Python term kernel for sparse polynomial arithmetic.

Mirrors the interface of the compiled `_speedups` extension; `poly` picks
whichever is available at import time.  A term dict maps a monomial -- a
tuple of (variable, exponent) pairs sorted by variable name -- to a nonzero
Python int, so coefficient arithmetic never overflows.
"""

from __future__ import annotations


def monomial_degree(m):
    """Total degree of a monomial (0 for the unit monomial)."""
    total = 0
    for _, exp in m:
        total += exp
    return total


def monomial_mul(m, n):
    """Merge two sorted monomials, adding exponents of shared variables."""
    if not m:
        return n
    if not n:
        return m
    out = []
    i = j = 0
    lm = len(m)
    ln = len(n)
    while i < lm and j < ln:
        vm, em = m[i]
        vn, en = n[j]
        if vm == vn:
            out.append((vm, em + en))
            i += 1
            j += 1
        elif vm < vn:
            out.append(m[i])
            i += 1
        else:
            out.append(n[j])
            j += 1
    out.extend(m[i:])
    out.extend(n[j:])
    return tuple(out)


def add_terms(a, b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for mono, coeff in b.items():
        c = out.get(mono, 0) + coeff
        if c:
            out[mono] = c
        elif mono in out:
            del out[mono]
    return out


def sub_terms(a, b):
    if not b:
        return dict(a)
    out = dict(a)
    for mono, coeff in b.items():
        c = out.get(mono, 0) - coeff
        if c:
            out[mono] = c
        elif mono in out:
            del out[mono]
    return out


def neg_terms(a):
    return {mono: -coeff for mono, coeff in a.items()}


def scale_terms(a, factor):
    if factor == 0:
        return {}
    return {mono: coeff * factor for mono, coeff in a.items()}


def mul_terms(a, b, max_degree=-1):
    """Distributed product of two term dicts.

    With max_degree >= 0 the product is truncated: term pairs whose combined
    degree exceeds the bound are skipped rather than computed and dropped.
    """
    if not a or not b:
        return {}
    out = {}
    if max_degree < 0:
        for ma, ca in a.items():
            for mb, cb in b.items():
                key = monomial_mul(ma, mb)
                c = out.get(key, 0) + ca * cb
                if c:
                    out[key] = c
                elif key in out:
                    del out[key]
        return out
    graded_b = sorted(
        (monomial_degree(mb), mb, cb) for mb, cb in b.items()
    )
    for ma, ca in a.items():
        da = monomial_degree(ma)
        if da > max_degree:
            continue
        for db, mb, cb in graded_b:
            if da + db > max_degree:
                break
            key = monomial_mul(ma, mb)
            c = out.get(key, 0) + ca * cb
            if c:
                out[key] = c
            elif key in out:
                del out[key]
    return out


def truncate_terms(a, max_degree):
    return {
        mono: coeff
        for mono, coeff in a.items()
        if monomial_degree(mono) <= max_degree
    }
