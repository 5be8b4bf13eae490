"""Rational curves in P^4 given by five binary forms.

Pullbacks of forms, the pullback matrix in fixed monomial bases,
implicitisation of plane cubics, identification pairs (points of P^1 with the
same image), the immersion test and the GL(2) orbit tangent frame.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import _upoly
from .linalg import ExactMatrix, kernel_basis, rank
from .poly import (
    NVARS,
    BinaryForm,
    MultiPoly,
    binary_gcd,
    form_exact_div,
    monomial_basis,
    parse_poly,
)


class CurveError(ValueError):
    pass


class ImplicitizationError(CurveError):
    pass


class NotPlaneCubicError(ImplicitizationError):
    pass


class InfiniteIdentificationsError(CurveError):
    pass


class NotSingularError(ValueError):
    pass


@dataclass(frozen=True)
class RationalCurveMap:
    """Parametrisation ``(s:t) -> (p0(s,t) : ... : p4(s,t))``."""

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if len(comps) != NVARS:
            raise CurveError("a curve in P^4 needs five components")
        degs = {c.degree for c in comps}
        mods = {c.modulus for c in comps}
        if len(degs) != 1:
            raise CurveError(f"components have different degrees {sorted(degs)}")
        if len(mods) != 1:
            raise CurveError("components live over different fields")
        if comps[0].degree < 1:
            raise CurveError("degree must be at least 1")
        if all(c.is_zero() for c in comps):
            raise CurveError("all components are zero")
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_strings(cls, texts: Sequence[str]) -> "RationalCurveMap":
        forms = [parse_poly(t, "st") for t in texts]
        d = max(f.degree for f in forms)
        forms = [f if not f.is_zero() else BinaryForm.zero(d) for f in forms]
        return cls(tuple(forms))

    @classmethod
    def from_file_text(cls, text: str) -> "RationalCurveMap":
        lines = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if line:
                lines.append(line)
        if len(lines) != NVARS:
            raise CurveError(f"curve file needs 5 component lines, found {len(lines)}")
        return cls.from_strings(lines)

    @property
    def degree(self) -> int:
        return self.components[0].degree

    @property
    def modulus(self):
        return self.components[0].modulus

    def to_strings(self) -> list[str]:
        return [c.to_str() for c in self.components]

    def __call__(self, s, t) -> tuple:
        return tuple(c(s, t) for c in self.components)

    def compose(self, a, b, c, d) -> "RationalCurveMap":
        """Reparametrise by ``(s, t) -> (a s + b t, c s + d t)``."""
        return RationalCurveMap(tuple(p.compose(a, b, c, d) for p in self.components))

    def reduce_mod(self, p: int) -> "RationalCurveMap":
        return RationalCurveMap(tuple(c.reduce_mod(p) for c in self.components))

    def base_locus(self) -> BinaryForm:
        """gcd of the nonzero components (1 for a base-point-free map)."""
        g = None
        for c in self.components:
            if c.is_zero():
                continue
            g = c if g is None else binary_gcd(g, c)
        return binary_gcd(g, BinaryForm.zero(0))

    def is_base_point_free(self) -> bool:
        return self.base_locus().degree == 0


def _power_cache(c: RationalCurveMap, top: int):
    one = BinaryForm(0, [1], c.modulus)
    cache = []
    for comp in c.components:
        powers = [one]
        for _ in range(top):
            powers.append(powers[-1] * comp)
        cache.append(powers)
    return cache


def pullback(c: RationalCurveMap, f: MultiPoly) -> BinaryForm:
    """Substitute ``z_i <- p_i(s, t)``; the result has degree ``deg f * d``."""
    if f.modulus != c.modulus:
        if f.modulus is None and c.modulus is not None:
            f = f.reduce_mod(c.modulus)
        else:
            raise ValueError("field mismatch between curve and polynomial")
    n = f.degree or 0
    d = c.degree
    out = [0] * (n * d + 1)
    if f.is_zero():
        return BinaryForm(n * d, out, c.modulus)
    cache = _power_cache(c, max(max(e) for e in f.terms))
    for e, coef in f.terms.items():
        term = None
        for i, k in enumerate(e):
            if k:
                term = cache[i][k] if term is None else term * cache[i][k]
        for j, a in enumerate(term.coeffs):
            if a:
                out[j] += coef * a
    return BinaryForm(n * d, out, c.modulus)


def pullback_matrix(c: RationalCurveMap, n: int, monomials=None) -> ExactMatrix:
    """Matrix of ``f -> c^*(f)`` on degree-n forms.

    Columns follow ``monomials`` (default: all degree-n monomials in
    descending grevlex order); rows are ascending t-power coordinates.
    """
    if n < 1:
        raise ValueError("degree must be at least 1")
    mons = monomials if monomials is not None else monomial_basis(5, n)
    cache = _power_cache(c, n)
    nrows = n * c.degree + 1
    cols = []
    for e in mons:
        term = None
        for i, k in enumerate(e):
            if k:
                term = cache[i][k] if term is None else term * cache[i][k]
        cols.append(list(term.coeffs))
    return ExactMatrix.from_columns(cols, nrows, c.modulus, col_labels=mons)


def plane_monomials(n: int) -> list[tuple[int, ...]]:
    """Degree-n monomials in z2, z3, z4 (descending grevlex)."""
    return [e for e in monomial_basis(5, n) if e[0] == 0 and e[1] == 0]


def implicitize_plane_cubic(c: RationalCurveMap) -> MultiPoly:
    """Equation of the image of a degree-3 map into the plane z0 = z1 = 0."""
    if c.modulus is not None:
        raise ValueError("implicitisation works over Q")
    if c.degree != 3:
        raise NotPlaneCubicError(f"expected a cubic parametrisation, got degree {c.degree}")
    if not (c.components[0].is_zero() and c.components[1].is_zero()):
        raise NotPlaneCubicError("curve does not lie in the plane z0 = z1 = 0")
    lin = pullback_matrix(c, 1, plane_monomials(1))
    if rank(lin) != 3:
        raise NotPlaneCubicError("image is contained in a line")
    mons = plane_monomials(3)
    M = pullback_matrix(c, 3, mons)
    K = kernel_basis(M)
    if len(K) != 1:
        detail = "" if c.is_base_point_free() else f"; base locus {c.base_locus()}"
        raise ImplicitizationError(
            f"kernel dimension {len(K)} != 1 (map is not birational onto a cubic{detail})"
        )
    g = MultiPoly(dict(zip(mons, K.vectors[0]))).clear_denominators()
    assert pullback(c, g).is_zero()
    return g


# ---------------------------------------------------------------------------
# identification pairs


def normalize_point(s, t) -> tuple[Fraction, Fraction]:
    s, t = Fraction(s), Fraction(t)
    if s == 0 and t == 0:
        raise ValueError("(0:0) is not a point")
    if s != 0:
        return (Fraction(1), t / s)
    return (Fraction(0), Fraction(1))


def normalize_projective(v: Sequence) -> tuple:
    v = [Fraction(x) for x in v]
    piv = next(x for x in v if x != 0)
    return tuple(x / piv for x in v)


def _deflated_minors(c: RationalCurveMap, a) -> list[BinaryForm]:
    """The forms ``(p_i(a) p_j - p_j(a) p_i) / (s_a t - t_a s)`` in the second point."""
    va = c(*a)
    lin = BinaryForm(1, [-a[1], a[0]])
    out = []
    for i, j in combinations(range(NVARS), 2):
        pi, pj = c.components[i], c.components[j]
        if pi.is_zero() and pj.is_zero():
            continue
        m = pj.scale(va[i]) - pi.scale(va[j])
        out.append(form_exact_div(m, lin))
    return out


def _det(rows) -> Fraction:
    M = [[Fraction(x) for x in r] for r in rows]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            if f:
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return det


def form_resultant(F: BinaryForm, G: BinaryForm) -> Fraction:
    """Homogeneous resultant with formal degrees (Sylvester determinant)."""
    m, n = F.degree, G.degree
    if m == 0 and n == 0:
        return Fraction(1)
    size = m + n
    rows = []
    for k in range(n):
        rows.append([0] * k + list(F.coeffs) + [0] * (size - m - 1 - k))
    for k in range(m):
        rows.append([0] * k + list(G.coeffs) + [0] * (size - n - 1 - k))
    return _det(rows)


def _form_roots(f: BinaryForm):
    """Rational roots on P^1 of a nonzero form, and the degree left unresolved."""
    roots = []
    coeffs = list(f.coeffs)
    m = f.degree
    # multiplicity of (0:1) is the number of vanishing top t-coefficients
    top = max(k for k, a in enumerate(coeffs) if a)
    if top < m:
        roots.append((Fraction(0), Fraction(1)))
    uni = [Fraction(a) for a in coeffs[: top + 1]]
    if len(uni) > 1:
        rat, residual = _upoly.split_rational_roots(uni)
        roots.extend((Fraction(1), y) for y in rat)
        unresolved = max(_upoly.degree(residual), 0)
    else:
        unresolved = 0
    return roots, unresolved


@dataclass
class SingularityReport:
    pairs: list = field(default_factory=list)
    image_points: list = field(default_factory=list)
    unresolved_degree: int = 0
    ramification_points: list = field(default_factory=list)
    immersion: bool | None = None
    node_classes: list = field(default_factory=list)

    @property
    def exact(self) -> bool:
        """All identifications accounted for by the rational pairs listed."""
        return self.unresolved_degree == 0

    def pair_strings(self) -> list[str]:
        return [
            " ~ ".join(f"({a[0]}:{a[1]})" for a in pair) for pair in self.pairs
        ]


def identification_pairs(c: RationalCurveMap) -> SingularityReport:
    """Unordered pairs a != b of P^1 with c(a) = c(b) projectively.

    The 2x2 minors of ``[c(a); c(b)]`` are divided by the diagonal factor and
    the first point is eliminated with resultants in the second point.
    Rational pairs are listed; the degree of the part of the elimination
    polynomial without rational roots is reported as ``unresolved_degree``.
    """
    if c.modulus is not None:
        raise ValueError("identification pairs are computed over Q")
    if not c.is_base_point_free():
        raise CurveError("parametrisation has base points")
    d = c.degree
    report = SingularityReport()
    if d == 1:
        return report
    # elimination polynomial in x for a = (1 : x)
    nres = (2 * d - 2) * (d - 1) + 1
    xs = list(range(nres))
    samples = [_deflated_minors(c, (Fraction(1), Fraction(x))) for x in xs]
    nforms = len(samples[0])
    combos = [(i, j) for i, j in combinations(range(nforms), 2)]
    resultants = []
    for i, j in combos:
        vals = [form_resultant(S[i], S[j]) for S in samples]
        poly = _upoly.interpolate(xs, vals)
        if not _upoly.is_zero(poly):
            resultants.append(poly)
    if nforms >= 2:
        # generic combinations guard against pairwise common factors
        for w1, w2 in (((1, 2), (3, 5)), ((2, 7), (5, 1))):
            vals = []
            for S in samples:
                A = S[0].scale(0)
                B = S[0].scale(0)
                for k, F in enumerate(S):
                    A = A + F.scale(w1[0] + w1[1] * k)
                    B = B + F.scale(w2[0] + w2[1] * k * k)
                vals.append(form_resultant(A, B))
            poly = _upoly.interpolate(xs, vals)
            if not _upoly.is_zero(poly):
                resultants.append(poly)
    if not resultants:
        if nforms == 1 and samples[0][0].degree == 0:
            return report
        raise InfiniteIdentificationsError("infinitely many identifications (multiple cover?)")
    R = resultants[0]
    for poly in resultants[1:]:
        R = _upoly.upoly_gcd(R, poly)
    unresolved = 0
    candidates = [(Fraction(0), Fraction(1))]
    if _upoly.degree(R) > 0:
        rat, residual = _upoly.split_rational_roots(R)
        candidates += [(Fraction(1), x) for x in rat]
        unresolved += max(_upoly.degree(residual), 0)
    seen = set()
    for a in candidates:
        forms = [F for F in _deflated_minors(c, a) if not F.is_zero()]
        if not forms:
            raise InfiniteIdentificationsError(f"every point is identified with {a}")
        g = forms[0]
        for F in forms[1:]:
            g = binary_gcd(g, F)
        if g.degree == 0:
            continue
        roots, unres = _form_roots(g)
        unresolved += unres
        for b in roots:
            b = normalize_point(*b)
            if b == a:
                report.ramification_points.append(a)
                continue
            key = frozenset((a, b))
            if key not in seen:
                seen.add(key)
                report.pairs.append(tuple(sorted((a, b))))
                report.image_points.append(normalize_projective(c(*a)))
    report.unresolved_degree = unresolved
    return report


# ---------------------------------------------------------------------------
# immersion and nodes


@dataclass(frozen=True)
class ImmersionResult:
    immersed: bool
    common_factor: BinaryForm

    def __bool__(self):
        return self.immersed


def jacobian_minors(c: RationalCurveMap) -> list[BinaryForm]:
    ds = [p.ds() for p in c.components]
    dt = [p.dt() for p in c.components]
    out = []
    for i, j in combinations(range(NVARS), 2):
        out.append(ds[i] * dt[j] - ds[j] * dt[i])
    return out


def check_immersion(c: RationalCurveMap) -> ImmersionResult:
    """Immersion iff the 2x2 minors of ``[dc/ds; dc/dt]`` have no common zero."""
    if c.modulus is not None:
        raise ValueError("immersion test works over Q")
    minors = [m for m in jacobian_minors(c) if not m.is_zero()]
    if not minors:
        return ImmersionResult(False, BinaryForm.zero(2 * c.degree - 2))
    g = minors[0]
    for m in minors[1:]:
        g = binary_gcd(g, m)
    from .poly import normalize_form

    g = normalize_form(g)
    return ImmersionResult(g.degree == 0, g)


def classify_node(g2: MultiPoly, point: Sequence) -> str:
    """``"node"`` or ``"worse"`` for a singular point of a plane curve in z2, z3, z4.

    ``point`` is ``(z2, z3, z4)`` or a full five-tuple with z0 = z1 = 0.
    """
    pt = [Fraction(x) for x in point]
    if len(pt) == 3:
        pt = [Fraction(0), Fraction(0)] + pt
    if len(pt) != 5 or pt[0] or pt[1]:
        raise ValueError("point must lie on the plane z0 = z1 = 0")
    if all(x == 0 for x in pt[2:]):
        raise ValueError("(0:0:0) is not a point")
    plane = (2, 3, 4)
    if g2.evaluate(pt) != 0 or any(g2.diff(i).evaluate(pt) != 0 for i in plane):
        raise NotSingularError(f"{tuple(pt[2:])} is not a singular point")
    j = next(i for i in plane if pt[i] != 0)
    u, v = [i for i in plane if i != j]
    h = [[g2.diff(a).diff(b).evaluate(pt) for b in (u, v)] for a in (u, v)]
    det = h[0][0] * h[1][1] - h[0][1] * h[1][0]
    return "node" if det != 0 else "worse"


# ---------------------------------------------------------------------------
# GL(2) orbit


def flatten_md(vec: Sequence[BinaryForm]) -> list:
    """Coordinates in M_d, slot-major then ascending t-power."""
    out = []
    for f in vec:
        out.extend(f.coeffs)
    return out


def unflatten_md(coords: Sequence, d: int, modulus=None) -> tuple:
    return tuple(BinaryForm(d, coords[i * (d + 1):(i + 1) * (d + 1)], modulus) for i in range(NVARS))


@dataclass(frozen=True)
class OrbitTangentFrame:
    vectors: tuple
    rank: int

    @property
    def independent(self) -> bool:
        return self.rank == 4

    def coordinates(self) -> list[list]:
        return [flatten_md(v) for v in self.vectors]


def orbit_tangent(c: RationalCurveMap) -> OrbitTangentFrame:
    """The vectors s dc/ds, t dc/ds, s dc/dt, t dc/dt in M_d."""
    s, t = BinaryForm.s(c.modulus), BinaryForm.t(c.modulus)
    ds = [p.ds() for p in c.components]
    dt = [p.dt() for p in c.components]
    vecs = (
        tuple(s * f for f in ds),
        tuple(t * f for f in ds),
        tuple(s * f for f in dt),
        tuple(t * f for f in dt),
    )
    # Euler: s dc/ds + t dc/dt = d c
    for i, p in enumerate(c.components):
        assert vecs[0][i] + vecs[3][i] == p.scale(c.degree)
    r = rank(ExactMatrix.from_rows([flatten_md(v) for v in vecs], c.modulus))
    return OrbitTangentFrame(vecs, r)


STANDARD_NODAL_CUBIC = ("0", "0", "s*t^2 - s^3", "t^3 - s^2*t", "s^3")


def standard_nodal_cubic() -> RationalCurveMap:
    return RationalCurveMap.from_strings(STANDARD_NODAL_CUBIC)
