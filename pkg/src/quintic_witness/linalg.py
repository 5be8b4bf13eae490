"""Exact dense linear algebra over Q and F_p.

Over Q the rank is computed with fraction-free (Bareiss) elimination on an
integer copy of the matrix; over F_p with ordinary Gauss-Jordan.  Kernel
bases are returned in the canonical form attached to the reduced row echelon
form (one vector per free column, 1 in that column, 0 in the other free
columns), so they are reproducible byte for byte.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from . import kernels


@dataclass(frozen=True)
class ExactMatrix:
    """m x n matrix over Q (``modulus is None``) or F_p.

    Column j holds the coordinates of the image of the j-th domain basis
    vector.
    """

    rows: tuple
    ncols: int
    modulus: int | None = None
    row_labels: tuple | None = field(default=None, compare=False)
    col_labels: tuple | None = field(default=None, compare=False)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], modulus: int | None = None, ncols: int | None = None,
                  row_labels=None, col_labels=None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix without rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        if modulus is None:
            conv = tuple(tuple(Fraction(x) for x in r) for r in rows)
        else:
            conv = tuple(tuple(_modp(x, modulus) for x in r) for r in rows)
        return cls(conv, ncols, modulus,
                   tuple(row_labels) if row_labels else None,
                   tuple(col_labels) if col_labels else None)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int, modulus: int | None = None,
                     col_labels=None) -> "ExactMatrix":
        if any(len(c) != nrows for c in cols):
            raise ValueError("column length mismatch")
        rows = [[c[i] for c in cols] for i in range(nrows)]
        return cls.from_rows(rows, modulus, ncols=len(cols), col_labels=col_labels)

    @classmethod
    def identity(cls, n: int, modulus: int | None = None) -> "ExactMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], modulus, ncols=n)

    @classmethod
    def zeros(cls, m: int, n: int, modulus: int | None = None) -> "ExactMatrix":
        return cls.from_rows([[0] * n for _ in range(m)], modulus, ncols=n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_rows(self.columns(), self.modulus, ncols=self.nrows) if self.ncols else \
            ExactMatrix.zeros(0, self.nrows, self.modulus)

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row-count mismatch")
        if self.modulus != other.modulus:
            raise ValueError("fields differ")
        return ExactMatrix.from_rows([list(a) + list(b) for a, b in zip(self.rows, other.rows)],
                                     self.modulus, ncols=self.ncols + other.ncols)

    def select_columns(self, idx: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix.from_rows([[r[j] for j in idx] for r in self.rows], self.modulus, ncols=len(idx))

    def apply(self, v: Sequence) -> list:
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        out = [sum(a * b for a, b in zip(r, v)) for r in self.rows]
        if self.modulus is not None:
            out = [x % self.modulus for x in out]
        return out

    def reduce_mod(self, p: int) -> "ExactMatrix":
        if self.modulus is not None:
            raise ValueError("already modular")
        return ExactMatrix.from_rows(self.rows, p, ncols=self.ncols)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)


def _modp(x, p):
    if isinstance(x, Fraction):
        if x.denominator % p == 0:
            from .poly import BadPrimeError

            raise BadPrimeError(f"denominator divisible by {p}")
        return x.numerator * pow(x.denominator, -1, p) % p
    return int(x) % p


@dataclass(frozen=True)
class KernelBasis:
    vectors: tuple
    ambient_dim: int

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)


# ---------------------------------------------------------------------------
# elimination


def integer_rows(M: ExactMatrix) -> list[list[int]]:
    """Clear denominators row by row (row scaling keeps rank and kernel)."""
    out = []
    for r in M.rows:
        den = 1
        for x in r:
            den = den * x.denominator // gcd(den, x.denominator)
        out.append([int(x * den) for x in r])
    return out


def bareiss_echelon(A: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of an integer matrix.

    Returns the eliminated matrix and the pivot columns.  Every division is
    exact; this is asserted.
    """
    M = [list(r) for r in A]
    m = len(M)
    n = len(M[0]) if m else 0
    prev = 1
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if M[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            M[r], M[piv] = M[piv], M[r]
        pr = M[r]
        a = pr[c]
        for i in range(r + 1, m):
            row = M[i]
            b = row[c]
            for j in range(c + 1, n):
                q, rem = divmod(a * row[j] - b * pr[j], prev)
                assert rem == 0, "Bareiss division not exact"
                row[j] = q
            row[c] = 0
        # rows above the pivot stay untouched; rows below have been scaled
        prev = a
        pivots.append(c)
        r += 1
    return M, pivots


def rank(M: ExactMatrix) -> int:
    if M.nrows == 0 or M.ncols == 0:
        return 0
    if M.modulus is not None:
        return kernels.rank_mod_p([list(r) for r in M.rows], M.modulus)
    return len(bareiss_echelon(integer_rows(M))[1])


def rref(M: ExactMatrix) -> tuple[list[list], list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    if M.nrows == 0 or M.ncols == 0:
        return [], []
    if M.modulus is not None:
        R, piv = kernels.rref_mod_p([list(r) for r in M.rows], M.modulus)
        return R, piv
    E, piv = bareiss_echelon(integer_rows(M))
    R = [[Fraction(x) for x in E[i]] for i in range(len(piv))]
    for i, c in enumerate(piv):
        inv = 1 / R[i][c]
        R[i] = [x * inv for x in R[i]]
    for i in range(len(piv) - 1, -1, -1):
        c = piv[i]
        for k in range(i):
            f = R[k][c]
            if f:
                R[k] = [x - f * y for x, y in zip(R[k], R[i])]
    return R, piv


def kernel_basis(M: ExactMatrix) -> KernelBasis:
    """Canonical basis of the null space; each vector is checked by multiplication."""
    n = M.ncols
    R, piv = rref(M)
    pivset = set(piv)
    one = Fraction(1) if M.modulus is None else 1
    vecs = []
    for f in range(n):
        if f in pivset:
            continue
        v = [0 * one] * n
        v[f] = one
        for i, c in enumerate(piv):
            v[c] = -R[i][f]
            if M.modulus is not None:
                v[c] %= M.modulus
        vecs.append(tuple(v))
    for v in vecs:
        assert all(x == 0 for x in M.apply(v)), "kernel vector not annihilated"
    return KernelBasis(tuple(vecs), n)


def column_space_contains(A: ExactMatrix, B: ExactMatrix) -> bool:
    """True iff every column of B lies in the column space of A."""
    if A.nrows != B.nrows:
        raise ValueError(f"row-count mismatch: {A.nrows} vs {B.nrows}")
    return rank(A.hstack(B)) == rank(A)


def solve(A: ExactMatrix, b: Sequence) -> list | None:
    """Some exact solution of ``A x = b``, or ``None`` when inconsistent."""
    if len(b) != A.nrows:
        raise ValueError("right-hand side length mismatch")
    aug = ExactMatrix.from_rows([list(r) + [x] for r, x in zip(A.rows, b)], A.modulus, ncols=A.ncols + 1)
    R, piv = rref(aug)
    if piv and piv[-1] == A.ncols:
        return None
    zero = Fraction(0) if A.modulus is None else 0
    x = [zero] * A.ncols
    for i, c in enumerate(piv):
        x[c] = R[i][A.ncols]
    bb = [Fraction(v) for v in b] if A.modulus is None else [int(v) % A.modulus for v in b]
    assert A.apply(x) == bb, "solution failed re-verification"
    return x


def span_rank(vectors: Sequence[Sequence], modulus: int | None = None) -> int:
    """Rank of a list of equal-length vectors."""
    if not vectors:
        return 0
    return rank(ExactMatrix.from_rows(vectors, modulus))
