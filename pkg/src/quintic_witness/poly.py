"""Exact homogeneous polynomials.

Two representations live here:

* :class:`MultiPoly` -- sparse homogeneous forms in ``z0..z4`` (dict of
  exponent tuple -> coefficient).
* :class:`BinaryForm` -- dense forms ``sum a_k s^(m-k) t^k`` in ``s, t``.

Coefficients are :class:`fractions.Fraction` over Q, or ints in ``[0, p)``
when a ``modulus`` is attached.  Values are immutable.
"""
from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, gcd
from typing import Iterable, Sequence

NVARS = 5
VARS5 = ("z0", "z1", "z2", "z3", "z4")
VARS2 = ("s", "t")


class PolySyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NonHomogeneousError(ValueError):
    def __init__(self, deg_a: int, deg_b: int):
        super().__init__(f"non-homogeneous polynomial (degrees {deg_a} and {deg_b})")
        self.degrees = (deg_a, deg_b)


class DegreeMismatchError(ValueError):
    pass


class BadPrimeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# scalars


def _coerce(c, modulus: int | None):
    if modulus is None:
        return c if isinstance(c, Fraction) else Fraction(c)
    if isinstance(c, Fraction):
        if c.denominator % modulus == 0:
            raise BadPrimeError(f"denominator {c.denominator} divisible by {modulus}")
        return c.numerator * pow(c.denominator, -1, modulus) % modulus
    return int(c) % modulus


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# monomials


def grevlex_key(e: Sequence[int]) -> tuple:
    """Sort key: larger key means larger monomial in grevlex, z0 > ... > z4."""
    return (sum(e), tuple(-x for x in reversed(e)))


def monomial_basis(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All monomials of ``degree`` in ``nvars`` variables, descending grevlex."""
    if nvars not in (2, 5):
        raise ValueError("nvars must be 2 or 5")
    if degree < 0:
        raise ValueError("degree must be non-negative")
    mons = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        mons.append(tuple(e))
    mons.sort(key=grevlex_key, reverse=True)
    assert len(mons) == comb(degree + nvars - 1, nvars - 1)
    return mons


def monomial_str(e: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _coeff_str(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def _format_terms(items, names) -> str:
    """items: iterable of (exponent, coeff) in print order."""
    out = []
    for e, c in items:
        neg = c < 0
        a = -c if neg else c
        mono = monomial_str(e, names)
        if not mono:
            body = _coeff_str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_coeff_str(a)}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) if out else "0"


# ---------------------------------------------------------------------------
# MultiPoly


class MultiPoly:
    """Sparse homogeneous form in five variables.

    ``degree`` is ``None`` for an untagged zero polynomial; arithmetic treats
    every zero as equal.
    """

    __slots__ = ("terms", "modulus", "_degree", "_hash")

    def __init__(self, terms=None, modulus: int | None = None, degree: int | None = None):
        clean: dict[tuple[int, ...], object] = {}
        deg = None
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != NVARS or min(e) < 0:
                raise ValueError(f"bad exponent vector {e}")
            c = _coerce(c, modulus)
            if c == 0:
                continue
            d = sum(e)
            if deg is None:
                deg = d
            elif d != deg:
                raise NonHomogeneousError(deg, d)
            clean[e] = clean.get(e, 0) + c
        if modulus is not None:
            clean = {e: c % modulus for e, c in clean.items()}
        clean = {e: c for e, c in clean.items() if c != 0}
        if clean:
            deg = sum(next(iter(clean)))
            if degree is not None and degree != deg:
                raise DegreeMismatchError(f"declared degree {degree}, terms have degree {deg}")
        else:
            deg = degree
        self.terms = clean
        self.modulus = modulus
        self._degree = deg
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, degree: int | None = None, modulus: int | None = None) -> "MultiPoly":
        return cls({}, modulus, degree)

    @classmethod
    def monomial(cls, e: Sequence[int], coeff=1, modulus: int | None = None) -> "MultiPoly":
        return cls({tuple(e): coeff}, modulus)

    @classmethod
    def variable(cls, i: int, modulus: int | None = None) -> "MultiPoly":
        e = [0] * NVARS
        e[i] = 1
        return cls({tuple(e): 1}, modulus)

    @classmethod
    def parse(cls, text: str) -> "MultiPoly":
        return parse_poly(text, "z")

    @property
    def degree(self) -> int | None:
        return self._degree

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        return sorted(self.terms.items(), key=lambda kv: grevlex_key(kv[0]), reverse=True)

    def leading_term(self):
        return self.sorted_terms()[0] if self.terms else None

    def variables_used(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    # arithmetic
    def _check_field(self, other: "MultiPoly"):
        if self.modulus != other.modulus:
            raise ValueError("coefficient fields differ")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_field(other)
        if self.terms and other.terms and self.degree != other.degree:
            raise DegreeMismatchError(f"cannot add degrees {self.degree} and {other.degree}")
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        deg = self.degree if self.degree is not None else other.degree
        return _tagged(MultiPoly(out, self.modulus), deg)

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self.terms.items()}, self.modulus, self._degree)

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "MultiPoly":
        c = _coerce(c, self.modulus)
        return MultiPoly({e: c * v for e, v in self.terms.items()}, self.modulus, self._degree)

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            self._check_field(other)
            out: dict = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, 0) + c1 * c2
            deg = None
            if self.degree is not None and other.degree is not None:
                deg = self.degree + other.degree
            return _tagged(MultiPoly(out, self.modulus), deg)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MultiPoly({(0,) * NVARS: 1}, self.modulus)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.modulus == other.modulus and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.modulus, frozenset(self.terms.items())))
        return self._hash

    def diff(self, i: int) -> "MultiPoly":
        """Formal partial derivative with respect to ``z_i``."""
        if not 0 <= i < NVARS:
            raise ValueError("variable index out of range")
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        deg = self.degree - 1 if self.degree else None
        return MultiPoly(out, self.modulus, deg)

    def gradient(self) -> list["MultiPoly"]:
        return [self.diff(i) for i in range(NVARS)]

    def evaluate(self, point: Sequence):
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x**k
            total += v
        if self.modulus is not None:
            return _coerce(total, self.modulus)
        return Fraction(total)

    def restrict(self, zero_vars: Iterable[int]) -> "MultiPoly":
        """Set the listed variables to zero."""
        zs = set(zero_vars)
        return MultiPoly({e: c for e, c in self.terms.items() if not any(e[i] for i in zs)},
                         self.modulus, self.degree)

    def reduce_mod(self, p: int) -> "MultiPoly":
        return reduce_mod_p(self, p)

    def clear_denominators(self) -> "MultiPoly":
        """Integral, content-free scalar multiple with positive leading coefficient."""
        if self.modulus is not None:
            raise ValueError("only defined over Q")
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        ints = {e: int(c * den) for e, c in self.terms.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        lead = ints[self.leading_term()[0]]
        if lead < 0:
            g = -g
        return MultiPoly({e: Fraction(v, g) for e, v in ints.items()}, None, self.degree)

    def height(self) -> int:
        return max((abs(int(c)) for c in self.terms.values()), default=0)

    def to_str(self) -> str:
        return _format_terms(((e, c) for e, c in self.sorted_terms()), VARS5)

    __str__ = to_str

    def __repr__(self):
        return f"MultiPoly({self.to_str()!r})"


def _tagged(f: MultiPoly, degree):
    if not f.terms:
        f._degree = degree
    return f


def reduce_mod_p(f: MultiPoly, p: int) -> MultiPoly:
    """Coefficient-wise image of ``f`` in F_p[z0..z4].

    Raises :class:`BadPrimeError` when a denominator is divisible by ``p``.
    """
    if f.modulus is not None:
        if f.modulus == p:
            return f
        raise ValueError("polynomial already lives over another prime field")
    return MultiPoly(dict(f.terms), p, f.degree)


# ---------------------------------------------------------------------------
# BinaryForm


class BinaryForm:
    """Dense form ``sum_k coeffs[k] * s^(m-k) * t^k`` of explicit degree m."""

    __slots__ = ("degree", "coeffs", "modulus")

    def __init__(self, degree: int, coeffs: Sequence, modulus: int | None = None):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        if len(coeffs) != degree + 1:
            raise ValueError(f"expected {degree + 1} coefficients, got {len(coeffs)}")
        self.degree = degree
        self.coeffs = tuple(_coerce(c, modulus) for c in coeffs)
        self.modulus = modulus

    @classmethod
    def zero(cls, degree: int, modulus: int | None = None) -> "BinaryForm":
        return cls(degree, [0] * (degree + 1), modulus)

    @classmethod
    def monomial(cls, degree: int, k: int, coeff=1, modulus: int | None = None) -> "BinaryForm":
        """``coeff * s^(degree-k) * t^k``."""
        c = [0] * (degree + 1)
        c[k] = coeff
        return cls(degree, c, modulus)

    @classmethod
    def s(cls, modulus=None):
        return cls(1, [1, 0], modulus)

    @classmethod
    def t(cls, modulus=None):
        return cls(1, [0, 1], modulus)

    @classmethod
    def parse(cls, text: str) -> "BinaryForm":
        return parse_poly(text, "st")

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: "BinaryForm"):
        if self.modulus != other.modulus:
            raise ValueError("coefficient fields differ")

    def __add__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        self._check(other)
        if self.is_zero() and self.degree != other.degree:
            return other
        if other.is_zero() and self.degree != other.degree:
            return self
        if self.degree != other.degree:
            raise DegreeMismatchError(f"cannot add degrees {self.degree} and {other.degree}")
        return BinaryForm(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.modulus)

    def __neg__(self):
        return BinaryForm(self.degree, [-a for a in self.coeffs], self.modulus)

    def __sub__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "BinaryForm":
        c = _coerce(c, self.modulus)
        return BinaryForm(self.degree, [c * a for a in self.coeffs], self.modulus)

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            self._check(other)
            out = [0] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        if b:
                            out[i + j] += a * b
            return BinaryForm(self.degree + other.degree, out, self.modulus)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = BinaryForm(0, [1], self.modulus)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        if self.modulus != other.modulus:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        if self.is_zero():
            return hash((self.modulus, "zero"))
        return hash((self.modulus, self.degree, self.coeffs))

    def __call__(self, s, t):
        m = self.degree
        total = sum(a * s ** (m - k) * t**k for k, a in enumerate(self.coeffs) if a)
        if self.modulus is not None:
            return _coerce(total, self.modulus)
        return Fraction(total)

    def ds(self) -> "BinaryForm":
        m = self.degree
        if m == 0:
            return BinaryForm(0, [0], self.modulus)
        return BinaryForm(m - 1, [(m - k) * self.coeffs[k] for k in range(m)], self.modulus)

    def dt(self) -> "BinaryForm":
        m = self.degree
        if m == 0:
            return BinaryForm(0, [0], self.modulus)
        return BinaryForm(m - 1, [k * self.coeffs[k] for k in range(1, m + 1)], self.modulus)

    def compose(self, a, b, c, d) -> "BinaryForm":
        """Substitute ``s -> a*s + b*t``, ``t -> c*s + d*t``."""
        ls = BinaryForm(1, [a, b], self.modulus)
        lt = BinaryForm(1, [c, d], self.modulus)
        out = BinaryForm.zero(self.degree, self.modulus)
        for k, coef in enumerate(self.coeffs):
            if coef:
                out = out + (ls ** (self.degree - k)) * (lt**k) * coef
        return out

    def reduce_mod(self, p: int) -> "BinaryForm":
        if self.modulus is not None:
            raise ValueError("already reduced")
        return BinaryForm(self.degree, self.coeffs, p)

    def to_str(self) -> str:
        m = self.degree
        items = [((m - k, k), a) for k, a in enumerate(self.coeffs) if a]
        return _format_terms(items, VARS2)

    __str__ = to_str

    def __repr__(self):
        return f"BinaryForm({self.degree}, {self.to_str()!r})"


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"\s*(?:(\d+)|(z[0-4]|s|t)|(\^)|(\*)|(/)|(\+)|(-))")


def _tokenize(text: str, alphabet: str):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group(1):
            toks.append(("nat", int(m.group(1)), start))
        elif m.group(2):
            name = m.group(2)
            if (alphabet == "z") != name.startswith("z"):
                raise PolySyntaxError(f"variable {name!r} not in alphabet", start)
            toks.append(("var", name, start))
        else:
            toks.append(("op", m.group(0).strip(), start))
        pos = m.end()
    toks.append(("end", None, n))
    return toks


def parse_poly(text: str, alphabet: str = "z"):
    """Parse ``text`` into a MultiPoly (alphabet ``"z"``) or BinaryForm (``"st"``)."""
    if alphabet not in ("z", "st"):
        raise ValueError("alphabet must be 'z' or 'st'")
    names = VARS5 if alphabet == "z" else VARS2
    nv = len(names)
    toks = _tokenize(text, alphabet)
    i = 0

    def peek():
        return toks[i]

    def take(kind, value=None):
        nonlocal i
        tok = toks[i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            raise PolySyntaxError(f"expected {want}", tok[2])
        i += 1
        return tok

    terms: dict[tuple[int, ...], Fraction] = {}
    first_deg = None
    sign = 1
    if peek()[:2] == ("op", "-"):
        take("op")
        sign = -1
    elif peek()[:2] == ("op", "+"):
        take("op")
    while True:
        coeff = Fraction(sign)
        e = [0] * nv
        saw_factor = False
        tok = peek()
        if tok[0] == "nat":
            num = take("nat")[1]
            den = 1
            if peek()[:2] == ("op", "/"):
                take("op")
                den = take("nat")[1]
                if den == 0:
                    raise PolySyntaxError("zero denominator", toks[i - 1][2])
            coeff *= Fraction(num, den)
            if peek()[:2] == ("op", "*"):
                take("op")
                tok = peek()
                if tok[0] != "var":
                    raise PolySyntaxError("expected variable", tok[2])
            else:
                tok = peek()
        if tok[0] == "var":
            while True:
                name = take("var")[1]
                k = 1
                if peek()[:2] == ("op", "^"):
                    take("op")
                    k = take("nat")[1]
                e[names.index(name)] += k
                saw_factor = True
                if peek()[:2] == ("op", "*"):
                    take("op")
                    if peek()[0] != "var":
                        raise PolySyntaxError("expected variable", peek()[2])
                    continue
                break
        elif toks[i - 1][0] != "nat" or i == 0:
            raise PolySyntaxError("expected term", tok[2])
        del saw_factor
        d = sum(e)
        if coeff != 0:
            if first_deg is None:
                first_deg = d
            elif d != first_deg:
                raise NonHomogeneousError(first_deg, d)
        else:
            first_deg = d if first_deg is None else first_deg
        key = tuple(e)
        terms[key] = terms.get(key, Fraction(0)) + coeff
        tok = peek()
        if tok[0] == "end":
            break
        if tok[:2] == ("op", "+"):
            take("op")
            sign = 1
        elif tok[:2] == ("op", "-"):
            take("op")
            sign = -1
        else:
            raise PolySyntaxError("expected '+' or '-'", tok[2])

    if alphabet == "z":
        nonzero = {k: v for k, v in terms.items() if v}
        return MultiPoly(nonzero, None, None if nonzero else (first_deg or None))
    deg = first_deg or 0
    coeffs = [Fraction(0)] * (deg + 1)
    for (a, b), c in terms.items():
        coeffs[b] += c
    return BinaryForm(deg, coeffs)


def binary_gcd(a: BinaryForm, b: BinaryForm) -> BinaryForm:
    """Greatest common divisor of two binary forms over Q.

    Normalised so that the coefficient of the highest s-power present is 1.
    """
    from ._upoly import upoly_gcd

    if a.modulus is not None or b.modulus is not None:
        raise ValueError("binary_gcd works over Q")
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero forms is undefined")
    if a.is_zero():
        return normalize_form(b)
    if b.is_zero():
        return normalize_form(a)
    ta, sa, ua = _split_form(a)
    tb, sb, ub = _split_form(b)
    g = upoly_gcd(ua, ub)
    tp, sp = min(ta, tb), min(sa, sb)
    dg = len(g) - 1
    deg = tp + sp + dg
    coeffs = [Fraction(0)] * (deg + 1)
    # f = s^sp t^tp * sum g_j (t/s)^j s^dg
    for j, c in enumerate(g):
        coeffs[tp + j] = c
    return normalize_form(BinaryForm(deg, coeffs))


def _split_form(f: BinaryForm):
    """Return (t-power, s-power, univariate coefficients in x = t/s)."""
    nz = [k for k, c in enumerate(f.coeffs) if c]
    lo, hi = nz[0], nz[-1]
    return lo, f.degree - hi, [Fraction(c) for c in f.coeffs[lo:hi + 1]]


def normalize_form(f: BinaryForm) -> BinaryForm:
    if f.is_zero():
        return f
    lead = next(c for c in f.coeffs if c)
    inv = 1 / Fraction(lead) if f.modulus is None else pow(lead, -1, f.modulus)
    return f.scale(inv)


def form_exact_div(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Quotient ``f / g`` of binary forms; raises ValueError unless g divides f."""
    from ._upoly import upoly_divmod

    if g.is_zero():
        raise ZeroDivisionError("division by zero form")
    qdeg = f.degree - g.degree
    if qdeg < 0:
        raise ValueError("divisor has larger degree")
    if f.is_zero():
        return BinaryForm.zero(qdeg, f.modulus)
    quo, _ = upoly_divmod(_trim(list(f.coeffs)), _trim(list(g.coeffs)), f.modulus)
    if len(quo) > qdeg + 1:
        raise ValueError("not an exact division")
    q = BinaryForm(qdeg, list(quo) + [0] * (qdeg + 1 - len(quo)), f.modulus)
    if q * g != f:
        raise ValueError("not an exact division")
    return q


def _trim(c):
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c
