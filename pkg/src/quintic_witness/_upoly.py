"""Dense univariate polynomials over Q (or F_p), ascending coefficient lists."""
from __future__ import annotations

from fractions import Fraction
from math import gcd


def trim(a: list) -> list:
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def is_zero(a) -> bool:
    return all(c == 0 for c in a)


def degree(a) -> int:
    a = trim(a)
    return -1 if is_zero(a) else len(a) - 1


def _inv(c, modulus):
    return Fraction(1) / c if modulus is None else pow(int(c), -1, modulus)


def _norm(a, modulus):
    if modulus is None:
        return [Fraction(c) for c in a]
    return [int(c) % modulus for c in a]


def upoly_divmod(a, b, modulus: int | None = None):
    a = trim(_norm(a, modulus))
    b = trim(_norm(b, modulus))
    if is_zero(b):
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    inv = _inv(b[-1], modulus)
    if is_zero(a) or len(a) - 1 < db:
        return [0 * inv], a
    q = [0 * inv] * (len(a) - db)
    r = list(a)
    for k in range(len(a) - 1 - db, -1, -1):
        c = r[k + db] * inv
        if modulus is not None:
            c %= modulus
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                r[k + j] -= c * bj
                if modulus is not None:
                    r[k + j] %= modulus
    return q, trim(r[:db] if db > 0 else [r[0] * 0])


def monic(a, modulus: int | None = None):
    a = trim(_norm(a, modulus))
    if is_zero(a):
        return a
    inv = _inv(a[-1], modulus)
    out = [c * inv for c in a]
    return [c % modulus for c in out] if modulus is not None else out


def upoly_gcd(a, b, modulus: int | None = None):
    """Monic gcd (leading x-coefficient 1)."""
    a = trim(_norm(a, modulus))
    b = trim(_norm(b, modulus))
    while not is_zero(b):
        _, r = upoly_divmod(a, b, modulus)
        a, b = b, r
    if is_zero(a):
        return a
    return monic(a, modulus)


def mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def derivative(a):
    return trim([k * a[k] for k in range(1, len(a))] or [Fraction(0)])


def evaluate(a, x):
    v = Fraction(0)
    for c in reversed(a):
        v = v * x + c
    return v


def squarefree_part(a):
    a = trim([Fraction(c) for c in a])
    if degree(a) <= 0:
        return a
    g = upoly_gcd(a, derivative(a))
    q, r = upoly_divmod(a, g)
    assert is_zero(r)
    return monic(q)


def interpolate(xs, ys):
    """Lagrange interpolation through (xs[i], ys[i]) with exact rationals."""
    n = len(xs)
    out = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        den = Fraction(1)
        for j in range(n):
            if j != i:
                basis = mul(basis, [Fraction(-xs[j]), Fraction(1)])
                den *= xs[i] - xs[j]
        scale = Fraction(ys[i]) / den
        for k, c in enumerate(basis):
            out[k] += c * scale
    return trim(out)


def primitive_integer(a):
    """Integral, content-free multiple of a rational polynomial."""
    a = trim([Fraction(c) for c in a])
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return ints
    if ints[-1] < 0:
        g = -g
    return [v // g for v in ints]


def rational_roots(a) -> list[Fraction]:
    """All distinct rational roots of a nonzero polynomial.

    Candidates come from a floating-point root finder and are confirmed by
    exact evaluation; every confirmed root is divided out.  Roots that the
    float step misses stay inside the residual returned by
    :func:`split_rational_roots`, so they are never silently dropped.
    """
    return split_rational_roots(a)[0]


def split_rational_roots(a):
    """Return (rational roots, residual squarefree factor without them)."""
    import numpy as np

    f = squarefree_part(a)
    roots: list[Fraction] = []
    if degree(f) <= 0:
        return roots, f
    # roots at zero first: exact
    while degree(f) > 0 and f[0] == 0:
        roots.append(Fraction(0))
        f = trim(f[1:])
    changed = True
    while changed and degree(f) > 0:
        changed = False
        ints = primitive_integer(f)
        lead, const = abs(ints[-1]), abs(ints[0])
        approx = np.roots([float(c) for c in reversed(ints)])
        for z in approx:
            if abs(z.imag) > 1e-6 * max(1.0, abs(z)):
                continue
            for cand in _candidates(z.real, lead, const):
                if evaluate(f, cand) == 0:
                    roots.append(cand)
                    f, r = upoly_divmod(f, [-cand, Fraction(1)])
                    assert is_zero(r)
                    f = trim(f)
                    changed = True
                    break
            if changed:
                break
    return sorted(set(roots)), f


def _candidates(x: float, lead: int, const: int):
    out = []
    for den_bound in (1, 10, 1000, max(lead, 1)):
        c = Fraction(x).limit_denominator(den_bound)
        if c not in out:
            out.append(c)
    return out
