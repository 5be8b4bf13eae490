# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: modular elimination and Groebner reduction.

Mirrors ``_pykernels`` exactly; only five variables are supported here.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, int32_t

from ._pykernels import degree_table

BACKEND = "cython"

cdef enum:
    NV = 5
    DMAX = 64

cdef int64_t T4[DMAX][DMAX]
cdef int64_t T3[DMAX][DMAX]
cdef int64_t T2[DMAX][DMAX]


cdef int64_t _binom(int64_t n, int64_t k):
    cdef int64_t r = 1, i
    if k < 0 or n < k:
        return 0
    for i in range(k):
        r = r * (n - i) // (i + 1)
    return r


cdef void _init_tables():
    cdef int n, j
    for n in range(DMAX):
        T4[n][0] = 0
        T3[n][0] = 0
        T2[n][0] = 0
        for j in range(1, DMAX):
            T4[n][j] = T4[n][j - 1] + _binom(n - (j - 1) + 3, 3)
            T3[n][j] = T3[n][j - 1] + _binom(n - (j - 1) + 2, 2)
            T2[n][j] = T2[n][j - 1] + (n - (j - 1) + 1 if n - (j - 1) >= 0 else 0)


_init_tables()


cdef inline int64_t _position(int d, int e1, int e2, int e3, int e4) nogil:
    # rank of a degree-d monomial in descending grevlex order
    return T4[d][e4] + T3[d - e4][e3] + T2[d - e4 - e3][e2] + e1


def position(int d, e):
    return _position(d, e[1], e[2], e[3], e[4])


# ---------------------------------------------------------------------------
# modular elimination


def rref_mod_p(rows, p):
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t n = len(rows[0]) if m else 0
    if m == 0 or n == 0:
        return [], []
    cdef cnp.ndarray[int64_t, ndim=2] A = np.array([[int(x) % p for x in row] for row in rows], dtype=np.int64)
    cdef int64_t P = p
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t inv, f, tmp
    pivots = []
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(n):
                tmp = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = tmp
        inv = pow(int(A[r, c]), -1, p)
        for j in range(n):
            A[r, j] = A[r, j] * inv % P
        for i in range(m):
            if i != r:
                f = A[i, c]
                if f:
                    for j in range(n):
                        A[i, j] = (A[i, j] - f * A[r, j]) % P
                        if A[i, j] < 0:
                            A[i, j] += P
        pivots.append(c)
        r += 1
    return [[int(x) for x in A[i]] for i in range(r)], pivots


def rank_mod_p(rows, p):
    return len(rref_mod_p(rows, p)[1])


# ---------------------------------------------------------------------------
# Groebner reduction store


cdef class _Table:
    cdef public object mons
    cdef int32_t[:, :] mv
    cdef int32_t[:] red
    cdef int32_t[:] upto
    cdef Py_ssize_t n

    def __init__(self, int d):
        mons, _ = degree_table(NV, d)
        self.mons = mons
        self.n = len(mons)
        self.mv = np.array(mons, dtype=np.int32).reshape(self.n, NV)
        self.red = np.full(self.n, -1, dtype=np.int32)
        self.upto = np.zeros(self.n, dtype=np.int32)


cdef class ReductionStore:
    cdef public int64_t p
    cdef public int nvars
    cdef list exps          # per poly: int32[:, :] (nterms x NV)
    cdef list coeffs        # per poly: int64[:]
    cdef int32_t[:, :] lms
    cdef cnp.uint8_t[:] act
    cdef Py_ssize_t count
    cdef dict tables

    def __init__(self, p, nvars=5):
        if nvars != NV:
            raise ValueError("compiled kernel supports five variables only")
        self.p = p
        self.nvars = nvars
        self.exps = []
        self.coeffs = []
        self.lms = np.zeros((16, NV), dtype=np.int32)
        self.act = np.zeros(16, dtype=np.uint8)
        self.count = 0
        self.tables = {}

    def __len__(self):
        return self.count

    cdef _Table _table(self, int d):
        t = self.tables.get(d)
        if t is None:
            if d >= DMAX:
                raise ValueError("degree too large for the compiled kernel")
            t = _Table(d)
            self.tables[d] = t
        return <_Table>t

    @property
    def active(self):
        return [bool(self.act[i]) for i in range(self.count)]

    def add(self, terms):
        if not terms or terms[0][1] % self.p != 1:
            raise AssertionError("reducers must be monic")
        cdef Py_ssize_t k
        if self.count == self.lms.shape[0]:
            cap = 2 * self.count
            nl = np.zeros((cap, NV), dtype=np.int32)
            nl[: self.count] = np.asarray(self.lms)[: self.count]
            na = np.zeros(cap, dtype=np.uint8)
            na[: self.count] = np.asarray(self.act)[: self.count]
            self.lms = nl
            self.act = na
        e = np.array([t[0] for t in terms], dtype=np.int32).reshape(len(terms), NV)
        c = np.array([t[1] % self.p for t in terms], dtype=np.int64)
        self.exps.append(e)
        self.coeffs.append(c)
        for k in range(NV):
            self.lms[self.count, k] = e[0, k]
        self.act[self.count] = 1
        self.count += 1
        return self.count - 1

    def set_active(self, Py_ssize_t i, flag):
        if flag and not self.act[i]:
            for t in self.tables.values():
                (<_Table>t).red[:] = -1
                (<_Table>t).upto[:] = 0
        self.act[i] = 1 if flag else 0

    def poly(self, Py_ssize_t i):
        e = self.exps[i]
        c = self.coeffs[i]
        return [(tuple(int(x) for x in e[j]), int(c[j])) for j in range(len(c))]

    def replace(self, Py_ssize_t i, terms):
        self.exps[i] = np.array([t[0] for t in terms], dtype=np.int32).reshape(len(terms), NV)
        self.coeffs[i] = np.array([t[1] % self.p for t in terms], dtype=np.int64)

    cdef Py_ssize_t _find_reducer(self, _Table tab, Py_ssize_t i):
        cdef Py_ssize_t r = tab.red[i]
        cdef Py_ssize_t k, v, start
        cdef bint ok
        if r >= 0 and self.act[r]:
            return r
        start = tab.upto[i] if r < 0 else 0
        for k in range(start, self.count):
            if not self.act[k]:
                continue
            ok = True
            for v in range(NV):
                if self.lms[k, v] > tab.mv[i, v]:
                    ok = False
                    break
            if ok:
                tab.red[i] = k
                tab.upto[i] = k
                return k
        tab.red[i] = -1
        tab.upto[i] = self.count
        return -1

    cdef list _reduce_acc(self, int d, int64_t[:] acc):
        cdef _Table tab = self._table(d)
        cdef int64_t P = self.p
        cdef Py_ssize_t i, k, j, nt
        cdef int64_t c, negc
        cdef int32_t s0, s1, s2, s3, s4
        cdef int32_t[:, :] ge
        cdef int64_t[:] gc
        for i in range(tab.n):
            c = acc[i] % P
            if c < 0:
                c += P
            acc[i] = c
            if c == 0:
                continue
            k = self._find_reducer(tab, i)
            if k < 0:
                continue
            ge = self.exps[k]
            gc = self.coeffs[k]
            nt = gc.shape[0]
            s1 = tab.mv[i, 1] - ge[0, 1]
            s2 = tab.mv[i, 2] - ge[0, 2]
            s3 = tab.mv[i, 3] - ge[0, 3]
            s4 = tab.mv[i, 4] - ge[0, 4]
            negc = P - c
            acc[i] = 0
            with nogil:
                for j in range(1, nt):
                    acc[_position(d, ge[j, 1] + s1, ge[j, 2] + s2, ge[j, 3] + s3, ge[j, 4] + s4)] += negc * gc[j]
        mons = tab.mons
        return [(mons[i], int(acc[i])) for i in range(tab.n) if acc[i]]

    def reduce(self, terms):
        if not terms:
            return []
        cdef int d = sum(terms[0][0])
        self._table(d)
        acc = np.zeros(_binom(d + 4, 4), dtype=np.int64)
        for e, c in terms:
            acc[_position(d, e[1], e[2], e[3], e[4])] += int(c) % self.p
        return self._reduce_acc(d, acc)

    def spoly_reduce(self, Py_ssize_t i, Py_ssize_t j):
        cdef int32_t[:, :] fe = self.exps[i]
        cdef int32_t[:, :] ge = self.exps[j]
        cdef int64_t[:] fc = self.coeffs[i]
        cdef int64_t[:] gc = self.coeffs[j]
        cdef int32_t l[NV]
        cdef int32_t sf[NV]
        cdef int32_t sg[NV]
        cdef int v, d = 0
        cdef Py_ssize_t t
        cdef int64_t P = self.p
        for v in range(NV):
            l[v] = fe[0, v] if fe[0, v] > ge[0, v] else ge[0, v]
            sf[v] = l[v] - fe[0, v]
            sg[v] = l[v] - ge[0, v]
            d += l[v]
        self._table(d)
        acc_arr = np.zeros(_binom(d + 4, 4), dtype=np.int64)
        cdef int64_t[:] acc = acc_arr
        for t in range(fc.shape[0]):
            acc[_position(d, fe[t, 1] + sf[1], fe[t, 2] + sf[2], fe[t, 3] + sf[3], fe[t, 4] + sf[4])] += fc[t]
        for t in range(gc.shape[0]):
            acc[_position(d, ge[t, 1] + sg[1], ge[t, 2] + sg[2], ge[t, 3] + sg[3], ge[t, 4] + sg[4])] += P - gc[t]
        return self._reduce_acc(d, acc)
