"""Pure-Python hot kernels.

Same API as the compiled ``_ckernels`` extension; :mod:`quintic_witness.kernels`
picks one at import time.
"""
from __future__ import annotations

from itertools import combinations_with_replacement

BACKEND = "python"


def rref_mod_p(rows, p):
    """Reduced row echelon form over F_p; returns (nonzero rows, pivot columns)."""
    M = [[x % p for x in r] for r in rows]
    m = len(M)
    n = len(M[0]) if m else 0
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        pr = [x * inv % p for x in M[r]]
        M[r] = pr
        for i in range(m):
            if i != r:
                f = M[i][c]
                if f:
                    row = M[i]
                    M[i] = [(x - f * y) % p for x, y in zip(row, pr)]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank_mod_p(rows, p):
    return len(rref_mod_p(rows, p)[1])


def degree_table(nvars, degree):
    """Monomials of a degree in descending grevlex order, plus their index map."""
    mons = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        mons.append(tuple(e))
    mons.sort(key=lambda e: tuple(-x for x in reversed(e)), reverse=True)
    return mons, {e: i for i, e in enumerate(mons)}


class ReductionStore:
    """Monic homogeneous polynomials over F_p used as reducers.

    Polynomials are lists of ``(exponent tuple, coefficient)`` sorted in
    descending grevlex order.  Reduction runs on a dense accumulator indexed
    by the monomials of the working degree.
    """

    def __init__(self, p: int, nvars: int = 5):
        self.p = p
        self.nvars = nvars
        self.polys = []
        self.active = []
        self._tables = {}

    def __len__(self):
        return len(self.polys)

    def _table(self, d):
        t = self._tables.get(d)
        if t is None:
            mons, index = degree_table(self.nvars, d)
            t = self._tables[d] = (mons, index, [-1] * len(mons), [0] * len(mons))
        return t

    def add(self, terms):
        assert terms and terms[0][1] % self.p == 1, "reducers must be monic"
        self.polys.append([(tuple(e), c % self.p) for e, c in terms])
        self.active.append(True)
        return len(self.polys) - 1

    def set_active(self, i, flag):
        if flag and not self.active[i]:
            # cached "irreducible" verdicts may now be stale
            for _, _, red, upto in self._tables.values():
                red[:] = [-1] * len(red)
                upto[:] = [0] * len(upto)
        self.active[i] = bool(flag)

    def poly(self, i):
        return list(self.polys[i])

    def replace(self, i, terms):
        self.polys[i] = [(tuple(e), c % self.p) for e, c in terms]

    def _find_reducer(self, table, i, mon):
        _, _, red, upto = table
        r = red[i]
        if r >= 0 and self.active[r]:
            return r
        start = upto[i] if r < 0 else 0
        n = len(self.polys)
        nv = self.nvars
        for k in range(start, n):
            if not self.active[k]:
                continue
            lm = self.polys[k][0][0]
            if all(lm[v] <= mon[v] for v in range(nv)):
                red[i] = k
                upto[i] = k
                return k
        red[i] = -1
        upto[i] = n
        return -1

    def _reduce_acc(self, d, acc):
        p = self.p
        table = self._table(d)
        mons, index = table[0], table[1]
        nv = self.nvars
        for i in range(len(mons)):
            c = acc[i] % p
            acc[i] = c
            if not c:
                continue
            mon = mons[i]
            k = self._find_reducer(table, i, mon)
            if k < 0:
                continue
            g = self.polys[k]
            lm = g[0][0]
            shift = [mon[v] - lm[v] for v in range(nv)]
            for e, gc in g:
                j = index[tuple(e[v] + shift[v] for v in range(nv))]
                acc[j] = (acc[j] - c * gc) % p
        return [(mons[i], acc[i]) for i in range(len(mons)) if acc[i]]

    def reduce(self, terms):
        """Full normal form of a homogeneous polynomial modulo the active reducers."""
        if not terms:
            return []
        d = sum(terms[0][0])
        mons, index, _, _ = self._table(d)
        acc = [0] * len(mons)
        for e, c in terms:
            acc[index[tuple(e)]] += c
        return self._reduce_acc(d, acc)

    def spoly_reduce(self, i, j):
        """Normal form of the S-polynomial of reducers i and j."""
        f, g = self.polys[i], self.polys[j]
        lf, lg = f[0][0], g[0][0]
        lcm = tuple(max(a, b) for a, b in zip(lf, lg))
        d = sum(lcm)
        mons, index, _, _ = self._table(d)
        acc = [0] * len(mons)
        sf = [a - b for a, b in zip(lcm, lf)]
        sg = [a - b for a, b in zip(lcm, lg)]
        for e, c in f:
            acc[index[tuple(x + y for x, y in zip(e, sf))]] += c
        for e, c in g:
            acc[index[tuple(x + y for x, y in zip(e, sg))]] -= c
        return self._reduce_acc(d, acc)
