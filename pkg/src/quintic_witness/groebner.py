"""Buchberger's algorithm over F_p and the Jacobian smoothness certificate.

Orders are grevlex with z0 > ... > z4 throughout.  Ideals are homogeneous,
which lets every reduction run on a dense accumulator of a single degree
(see :class:`quintic_witness.kernels.ReductionStore`).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

import numpy as np

from . import kernels
from .poly import NVARS, BadPrimeError, MultiPoly, grevlex_key, is_prime, reduce_mod_p

log = logging.getLogger(__name__)

ORDER = "grevlex(z0>z1>z2>z3>z4)"


@dataclass(frozen=True)
class IdealGenerators:
    polys: tuple
    modulus: int
    order: str = ORDER

    def __post_init__(self):
        if not self.polys:
            raise ValueError("empty generator list")
        for f in self.polys:
            if f.modulus != self.modulus:
                raise ValueError("generators must live over the same prime field")
            if f.is_zero():
                raise ValueError("zero generator")


@dataclass(frozen=True)
class GroebnerBasis:
    polys: tuple
    modulus: int
    order: str = ORDER

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [f.leading_term()[0] for f in self.polys]

    def __len__(self):
        return len(self.polys)


def _terms(f: MultiPoly):
    return [(e, c) for e, c in f.sorted_terms()]


def _monic_terms(terms, p):
    inv = pow(terms[0][1], -1, p)
    return [(e, c * inv % p) for e, c in terms]


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _pair_key(lcm):
    return (sum(lcm), tuple(-x for x in reversed(lcm)))


def normal_form(f: MultiPoly, G: GroebnerBasis) -> MultiPoly:
    """Remainder of ``f`` after full reduction by ``G``."""
    if f.modulus != G.modulus:
        raise ValueError("field mismatch")
    if f.is_zero():
        return f
    store = kernels.ReductionStore(G.modulus)
    for g in G.polys:
        store.add(_monic_terms(_terms(g), G.modulus))
    rem = store.reduce(_terms(f))
    return MultiPoly(dict(rem), G.modulus, f.degree)


def buchberger(gens: IdealGenerators, verify: bool = True) -> GroebnerBasis:
    """Reduced Groebner basis of a homogeneous ideal over F_p.

    Normal selection strategy with the Gebauer-Moeller pair update (product
    and chain criteria).  With ``verify`` the returned basis is re-checked by
    :func:`verify_groebner`.
    """
    p = gens.modulus
    for f in gens.polys:
        if any(sum(e) != f.degree for e in f.terms):
            raise ValueError("generators must be homogeneous")
    store = kernels.ReductionStore(p)
    G: list[int] = []
    B: dict[tuple[int, int], tuple] = {}
    lms: list[tuple] = []

    def update(h: int):
        nonlocal G, B
        lh = lms[h]
        L = np.array([lms[g] for g in G], dtype=np.int32).reshape(len(G), NVARS)
        lcms = np.maximum(L, np.array(lh, dtype=np.int32))
        coprime = ((L == 0) | (np.array(lh) == 0)).all(axis=1)
        # keep (h, g1) unless another pending pair's lcm properly divides it
        D: list[int] = []
        remaining = list(range(len(G)))
        while remaining:
            a = remaining.pop()
            if coprime[a]:
                D.append(a)
                continue
            others = remaining + D
            if others and (lcms[others] <= lcms[a]).all(axis=1).any():
                continue
            D.append(a)
        E = {}
        for a in D:
            if not coprime[a]:
                g = G[a]
                E[(min(g, h), max(g, h))] = tuple(int(x) for x in lcms[a])
        newB = {}
        for (a, b), l in B.items():
            if _divides(lh, l) and _lcm(lms[a], lh) != l and _lcm(lms[b], lh) != l:
                continue
            newB[(a, b)] = l
        newB.update(E)
        keep = []
        for g in G:
            if _divides(lh, lms[g]):
                store.set_active(g, False)
            else:
                keep.append(g)
        keep.append(h)
        G, B = keep, newB

    # seed with the generators, reduced against what is already there
    for f in sorted(gens.polys, key=lambda f: (f.degree, grevlex_key(f.leading_term()[0]))):
        rem = store.reduce(_terms(f))
        if not rem:
            continue
        rem = _monic_terms(rem, p)
        h = store.add(rem)
        lms.append(rem[0][0])
        update(h)

    processed = 0
    while B:
        pair = min(B, key=lambda k: (_pair_key(B[k]), k))
        del B[pair]
        rem = store.spoly_reduce(*pair)
        processed += 1
        if not rem:
            continue
        rem = _monic_terms(rem, p)
        h = store.add(rem)
        lms.append(rem[0][0])
        update(h)
    log.debug("buchberger: %d pairs reduced, %d basis elements", processed, len(G))

    # inter-reduce the minimal basis; a leading monomial never divides a
    # smaller monomial of the same degree, so g cannot touch its own tail
    out = []
    for g in sorted(G, key=lambda g: grevlex_key(lms[g])):
        terms = store.poly(g)
        tail = store.reduce(terms[1:]) if len(terms) > 1 else []
        new = [terms[0]] + tail
        store.replace(g, new)
        out.append(MultiPoly(dict(new), p))
    # by degree, then descending leading monomial within a degree
    out.sort(key=lambda f: (f.degree, tuple(reversed(f.leading_term()[0]))))
    basis = GroebnerBasis(tuple(out), p)
    if verify:
        if not verify_groebner(basis):
            raise AssertionError("Buchberger postcondition failed")
    return basis


def verify_groebner(G: GroebnerBasis) -> bool:
    """Check that ``G`` is a reduced Groebner basis.

    Every S-polynomial is reduced to zero unless it is covered by the product
    criterion or by a chain ``k`` whose two lcms are proper divisors of the
    pair's lcm (those pairs are checked themselves, so the argument is
    well-founded).
    """
    p = G.modulus
    store = kernels.ReductionStore(p)
    lms = []
    for g in G.polys:
        t = _terms(g)
        if t[0][1] != 1:
            return False
        store.add(t)
        lms.append(t[0][0])
    n = len(lms)
    L = np.array(lms, dtype=np.int32).reshape(n, NVARS)
    for i, g in enumerate(G.polys):
        # minimality and reduced tails: no leading monomial divides any term
        # other than the element's own leading monomial
        E = np.array(list(g.terms), dtype=np.int32).reshape(len(g.terms), NVARS)
        hits = (L[None, :, :] <= E[:, None, :]).all(axis=2)
        own = (E == L[i]).all(axis=1)
        hits[own, i] = False
        if hits.any():
            return False
    for i in range(n):
        for j in range(i + 1, n):
            if _coprime(lms[i], lms[j]):
                continue
            l = np.maximum(L[i], L[j])
            cand = (L <= l).all(axis=1)
            cand[i] = cand[j] = False
            if cand.any():
                ks = np.nonzero(cand)[0]
                li = np.maximum(L[ks], L[i])
                lj = np.maximum(L[ks], L[j])
                proper = ~(li == l).all(axis=1) & ~(lj == l).all(axis=1)
                if proper.any():
                    continue
            if store.spoly_reduce(i, j):
                return False
    return True


def standard_monomial_count(lms: Sequence[tuple], nvars: int = NVARS) -> int | None:
    """Number of monomials outside the initial ideal; ``None`` if infinite."""
    pure = [None] * nvars
    for m in lms:
        nz = [i for i, x in enumerate(m) if x]
        if len(nz) == 1:
            v = nz[0]
            pure[v] = m[v] if pure[v] is None else min(pure[v], m[v])
    if any(k is None for k in pure):
        return None
    top = sum(k - 1 for k in pure)
    count = 0
    for d in range(top + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for v in combo:
                e[v] += 1
            if not any(_divides(m, e) for m in lms):
                count += 1
    return count


# ---------------------------------------------------------------------------
# smoothness


@dataclass
class SmoothnessVerdict:
    prime: int | None
    smooth_mod_p: bool
    witnesses: list | None = None
    failing_variable: int | None = None
    conclusion_over_Q: str = "undetermined"
    justification: str = ""
    staircase: int | None = None
    basis_size: int | None = None
    primes_tried: list = field(default_factory=list)

    @property
    def smooth_over_Q(self) -> bool:
        return self.conclusion_over_Q == "smooth"

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "smooth_mod_p": self.smooth_mod_p,
            "witnesses": self.witnesses,
            "failing_variable": self.failing_variable,
            "conclusion_over_Q": self.conclusion_over_Q,
            "justification": self.justification,
            "staircase": self.staircase,
            "primes_tried": self.primes_tried,
        }


def jacobian_ideal(f: MultiPoly) -> IdealGenerators:
    parts = [g for g in f.gradient() if not g.is_zero()]
    return IdealGenerators(tuple(parts), f.modulus)


def is_smooth_hypersurface_mod_p(f: MultiPoly, p: int) -> SmoothnessVerdict:
    """Jacobian criterion for ``div(f)`` over the algebraic closure of F_p.

    The cone of singular points is ``{0}`` iff the leading terms of a Groebner
    basis of the partials contain a pure power of every variable.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not a prime")
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.modulus is None:
        fp = reduce_mod_p(f, p)  # may raise BadPrimeError
    else:
        fp = f
    if fp.is_zero() or fp.degree != f.degree:
        raise BadPrimeError(f"reduction mod {p} drops the polynomial")
    grads = [g for g in fp.gradient() if not g.is_zero()]
    if not grads:
        return SmoothnessVerdict(p, False, None, 0)
    G = buchberger(IdealGenerators(tuple(grads), p))
    lms = G.leading_monomials()
    witnesses = []
    failing = None
    for v in range(NVARS):
        ks = [m[v] for m in lms if m[v] and sum(m) == m[v]]
        if ks:
            witnesses.append(min(ks))
        elif failing is None:
            failing = v
    smooth = failing is None
    return SmoothnessVerdict(
        prime=p,
        smooth_mod_p=smooth,
        witnesses=witnesses if smooth else None,
        failing_variable=failing,
        staircase=standard_monomial_count(lms) if smooth else None,
        basis_size=len(G),
    )


def integral_model(f: MultiPoly) -> MultiPoly:
    return f.clear_denominators()


def certify_smooth_over_Q(f: MultiPoly, primes: Sequence[int]) -> SmoothnessVerdict:
    """Smoothness of ``div(f)`` over Q from one good prime fibre.

    The singular locus of the integral model is closed over Spec Z; if the
    fibre at a good prime is smooth, so is the generic fibre.  A non-smooth
    fibre proves nothing, so the next prime is tried.
    """
    if not primes:
        raise ValueError("empty prime list")
    if f.modulus is not None or f.is_zero():
        raise ValueError("expected a nonzero polynomial over Q")
    F = integral_model(f)
    tried = []
    last = None
    for p in primes:
        try:
            v = is_smooth_hypersurface_mod_p(F, p)
        except BadPrimeError:
            tried.append({"prime": p, "result": "bad prime"})
            continue
        tried.append({"prime": p, "result": "smooth" if v.smooth_mod_p else "singular"})
        last = v
        if v.smooth_mod_p:
            v.conclusion_over_Q = "smooth"
            v.justification = (
                f"integral content-free model is smooth mod {p}; the singular locus is "
                "closed over Z, so the fibre over Q is smooth"
            )
            v.primes_tried = tried
            return v
    if last is None:
        last = SmoothnessVerdict(None, False)
    last.conclusion_over_Q = "undetermined"
    last.justification = "no supplied prime gave a smooth fibre; undetermined by supplied primes"
    last.primes_tried = tried
    return last


def _as_fraction(c):
    return Fraction(c)
