# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels. Must stay float-for-float identical to _pure:
same arithmetic, same operation order, same dict/tuple structures out.
"""

from libc.math cimport log10 as c_log10

from cpython.dict cimport PyDict_GetItem, PyDict_Next
from cpython.list cimport PyList_GET_ITEM, PyList_GET_SIZE
from cpython.object cimport PyObject
from cpython.ref cimport Py_INCREF
from cpython.tuple cimport (
    PyTuple_GET_SIZE,
    PyTuple_GetSlice,
    PyTuple_New,
    PyTuple_SET_ITEM,
)


cdef inline void _incr(dict d, tuple key):
    cdef PyObject* cur = PyDict_GetItem(d, key)
    if cur == NULL:
        d[key] = 1
    else:
        d[key] = <object>cur + 1


cdef inline tuple _window(list ids, Py_ssize_t start, Py_ssize_t length):
    cdef tuple t = PyTuple_New(length)
    cdef Py_ssize_t j
    cdef object item
    for j in range(length):
        item = <object>PyList_GET_ITEM(ids, start + j)
        Py_INCREF(item)
        PyTuple_SET_ITEM(t, j, item)
    return t


def accumulate_counts(list tables, list ids, Py_ssize_t order, bint bounded):
    cdef Py_ssize_t n = PyList_GET_SIZE(ids)
    cdef Py_ssize_t i, k, upper
    cdef dict top = <dict>PyList_GET_ITEM(tables, order - 1)
    if order == 1:
        for i in range(1 if bounded else 0, n):
            _incr(top, _window(ids, i, 1))
        return
    for i in range(n - order + 1):
        _incr(top, _window(ids, i, order))
    if bounded:
        upper = order - 1 if order - 1 < n else n
        for k in range(2, upper + 1):
            _incr(<dict>PyList_GET_ITEM(tables, k - 1), _window(ids, 0, k))


def tally_suffixes(dict higher):
    cdef dict out = {}
    cdef PyObject* pkey
    cdef PyObject* pval
    cdef Py_ssize_t pos = 0
    cdef object key, suf
    while PyDict_Next(higher, &pos, &pkey, &pval):
        key = <object>pkey
        suf = PyTuple_GetSlice(key, 1, PyTuple_GET_SIZE(<tuple>key))
        _incr(out, <tuple>suf)
    return out


def context_stats(dict table):
    cdef dict out = {}
    cdef PyObject* pkey
    cdef PyObject* pval
    cdef PyObject* cur
    cdef Py_ssize_t pos = 0
    cdef Py_ssize_t c
    cdef object key, ctx
    cdef list st
    while PyDict_Next(table, &pos, &pkey, &pval):
        key = <object>pkey
        c = <object>pval
        ctx = PyTuple_GetSlice(key, 0, PyTuple_GET_SIZE(<tuple>key) - 1)
        cur = PyDict_GetItem(out, ctx)
        if cur == NULL:
            st = [0, 0, 0, 0]
            out[ctx] = st
        else:
            st = <list>cur
        st[0] = st[0] + c
        if c == 1:
            st[1] = st[1] + 1
        elif c == 2:
            st[2] = st[2] + 1
        else:
            st[3] = st[3] + 1
    return out


def interpolate_grams(
    dict table,
    list extras,
    dict stats,
    double d1,
    double d2,
    double d3p,
    dict lower,
):
    cdef dict out = {}
    cdef PyObject* pkey
    cdef PyObject* pval
    cdef PyObject* pst
    cdef PyObject* plw
    cdef Py_ssize_t pos = 0
    cdef Py_ssize_t size
    cdef double c, d, tot, n1, n2, n3p, pseudo, gamma
    cdef object key, ctx, suf
    cdef list st
    while PyDict_Next(table, &pos, &pkey, &pval):
        key = <object>pkey
        c = <object>pval
        size = PyTuple_GET_SIZE(<tuple>key)
        ctx = PyTuple_GetSlice(key, 0, size - 1)
        suf = PyTuple_GetSlice(key, 1, size)
        pst = PyDict_GetItem(stats, ctx)
        if pst == NULL:
            raise KeyError(ctx)
        st = <list><object>pst
        tot = <object>PyList_GET_ITEM(st, 0)
        n1 = <object>PyList_GET_ITEM(st, 1)
        n2 = <object>PyList_GET_ITEM(st, 2)
        n3p = <object>PyList_GET_ITEM(st, 3)
        d = d1 if c == 1.0 else (d2 if c == 2.0 else d3p)
        pseudo = (c - d) / tot if c > d else 0.0
        gamma = (d1 * n1 + d2 * n2 + d3p * n3p) / tot
        plw = PyDict_GetItem(lower, suf)
        if plw == NULL:
            raise KeyError(suf)
        out[key] = pseudo + gamma * <double><object>plw
    for key in extras:
        size = PyTuple_GET_SIZE(<tuple>key)
        ctx = PyTuple_GetSlice(key, 0, size - 1)
        suf = PyTuple_GetSlice(key, 1, size)
        plw = PyDict_GetItem(lower, suf)
        if plw == NULL:
            raise KeyError(suf)
        pst = PyDict_GetItem(stats, ctx)
        if pst == NULL:
            out[key] = <object>plw
        else:
            st = <list><object>pst
            tot = <object>PyList_GET_ITEM(st, 0)
            n1 = <object>PyList_GET_ITEM(st, 1)
            n2 = <object>PyList_GET_ITEM(st, 2)
            n3p = <object>PyList_GET_ITEM(st, 3)
            out[key] = (d1 * n1 + d2 * n2 + d3p * n3p) / tot * <double><object>plw
    return out


def backoff_weights(dict stats, double d1, double d2, double d3p):
    cdef dict out = {}
    cdef PyObject* pkey
    cdef PyObject* pval
    cdef Py_ssize_t pos = 0
    cdef double tot, n1, n2, n3p, gamma
    cdef object ctx
    cdef list st
    while PyDict_Next(stats, &pos, &pkey, &pval):
        ctx = <object>pkey
        st = <list><object>pval
        tot = <object>PyList_GET_ITEM(st, 0)
        n1 = <object>PyList_GET_ITEM(st, 1)
        n2 = <object>PyList_GET_ITEM(st, 2)
        n3p = <object>PyList_GET_ITEM(st, 3)
        gamma = (d1 * n1 + d2 * n2 + d3p * n3p) / tot
        if gamma <= 0.0:
            raise ValueError("zero back-off mass for a stored context")
        out[ctx] = c_log10(gamma)
    return out


def log10_values(dict table):
    # Replacing values for existing keys is safe under PyDict_Next.
    cdef PyObject* pkey
    cdef PyObject* pval
    cdef Py_ssize_t pos = 0
    cdef object key
    cdef double v
    while PyDict_Next(table, &pos, &pkey, &pval):
        key = <object>pkey
        v = <object>pval
        table[key] = c_log10(v)


def score_sequence_ids(
    list prob_tables,
    list bo_tables,
    list ids,
    Py_ssize_t order,
    bint skip_first,
):
    cdef double total = 0.0
    cdef double acc
    cdef Py_ssize_t n = PyList_GET_SIZE(ids)
    cdef Py_ssize_t i, k
    cdef PyObject* p
    cdef PyObject* bo
    cdef tuple key
    cdef object ctx
    for i in range(1 if skip_first else 0, n):
        k = order - 1 if i >= order - 1 else i
        acc = 0.0
        p = NULL
        while k > 0:
            key = _window(ids, i - k, k + 1)
            p = PyDict_GetItem(<dict>PyList_GET_ITEM(prob_tables, k), key)
            if p != NULL:
                break
            ctx = PyTuple_GetSlice(key, 0, k)
            bo = PyDict_GetItem(<dict>PyList_GET_ITEM(bo_tables, k - 1), ctx)
            if bo != NULL:
                acc += <double><object>bo
            k -= 1
        if p == NULL:
            key = _window(ids, i, 1)
            p = PyDict_GetItem(<dict>PyList_GET_ITEM(prob_tables, 0), key)
            if p == NULL:
                raise KeyError(key)
        total += acc + <double><object>p
    return total
