# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term kernel for sparse polynomial arithmetic.

Same interface as `_kernel_py`; coefficients stay Python ints so there is
no overflow, the speedup comes from doing the merge loops at C level.
"""


cpdef long monomial_degree(tuple m):
    cdef long total = 0
    cdef Py_ssize_t i
    for i in range(len(m)):
        total += <long> (<tuple> m[i])[1]
    return total


cpdef tuple monomial_mul(tuple m, tuple n):
    if not m:
        return n
    if not n:
        return m
    cdef Py_ssize_t i = 0, j = 0, lm = len(m), ln = len(n)
    cdef list out = []
    cdef tuple pm, pn
    while i < lm and j < ln:
        pm = <tuple> m[i]
        pn = <tuple> n[j]
        if pm[0] == pn[0]:
            out.append((pm[0], pm[1] + pn[1]))
            i += 1
            j += 1
        elif pm[0] < pn[0]:
            out.append(pm)
            i += 1
        else:
            out.append(pn)
            j += 1
    while i < lm:
        out.append(m[i])
        i += 1
    while j < ln:
        out.append(n[j])
        j += 1
    return tuple(out)


def add_terms(dict a, dict b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    cdef dict out = dict(a)
    cdef object mono, coeff, c
    for mono, coeff in b.items():
        c = out.get(mono)
        if c is None:
            out[mono] = coeff
        else:
            c = c + coeff
            if c:
                out[mono] = c
            else:
                del out[mono]
    return out


def sub_terms(dict a, dict b):
    if not b:
        return dict(a)
    cdef dict out = dict(a)
    cdef object mono, coeff, c
    for mono, coeff in b.items():
        c = out.get(mono)
        if c is None:
            out[mono] = -coeff
        else:
            c = c - coeff
            if c:
                out[mono] = c
            else:
                del out[mono]
    return out


def neg_terms(dict a):
    cdef dict out = {}
    cdef object mono, coeff
    for mono, coeff in a.items():
        out[mono] = -coeff
    return out


def scale_terms(dict a, factor):
    if factor == 0:
        return {}
    cdef dict out = {}
    cdef object mono, coeff
    for mono, coeff in a.items():
        out[mono] = coeff * factor
    return out


def mul_terms(dict a, dict b, long max_degree=-1):
    if not a or not b:
        return {}
    cdef dict out = {}
    cdef object ma, ca, mb, cb, c
    cdef tuple key, item
    cdef list graded
    cdef long da, db
    cdef Py_ssize_t idx, nb
    if max_degree < 0:
        for ma, ca in a.items():
            for mb, cb in b.items():
                key = monomial_mul(<tuple> ma, <tuple> mb)
                c = out.get(key)
                if c is None:
                    out[key] = ca * cb
                else:
                    c = c + ca * cb
                    if c:
                        out[key] = c
                    else:
                        del out[key]
        return out
    graded = sorted(
        (monomial_degree(<tuple> mb), mb, cb) for mb, cb in b.items()
    )
    nb = len(graded)
    for ma, ca in a.items():
        da = monomial_degree(<tuple> ma)
        if da > max_degree:
            continue
        for idx in range(nb):
            item = <tuple> graded[idx]
            db = <long> item[0]
            if da + db > max_degree:
                break
            mb = item[1]
            cb = item[2]
            key = monomial_mul(<tuple> ma, <tuple> mb)
            c = out.get(key)
            if c is None:
                out[key] = ca * cb
            else:
                c = c + ca * cb
                if c:
                    out[key] = c
                else:
                    del out[key]
    return out


def truncate_terms(dict a, long max_degree):
    cdef dict out = {}
    cdef object mono, coeff
    for mono, coeff in a.items():
        if monomial_degree(<tuple> mono) <= max_degree:
            out[mono] = coeff
    return out
