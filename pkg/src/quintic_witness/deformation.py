"""Linear maps attached to a rational curve on a quintic.

``Phi`` sends ``alpha in M_d = H^0(O(d))^5`` to ``sum_i alpha_i * c^*(df/dz_i)``;
its cokernel is ``H^1`` of the normal sheaf and its kernel contains the
4-dimensional GL(2) orbit tangent.  ``M_mu`` is the pullback of quintics.
The surjectivity condition is the containment ``image(M_mu) <= image(Phi)``: the tangent
space of the incidence variety maps onto the space of quintics because
``(0, f)`` is itself tangent (``c^*f = 0``) and covers the Euler direction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .curves import (
    CurveError,
    RationalCurveMap,
    check_immersion,
    flatten_md,
    identification_pairs,
    orbit_tangent,
    pullback,
    pullback_matrix,
    unflatten_md,
)
from .linalg import ExactMatrix, column_space_contains, kernel_basis, rank
from .poly import NVARS, BinaryForm, DegreeMismatchError, MultiPoly

PLANE = (2, 3, 4)


class IncidenceError(ValueError):
    def __init__(self, remainder: BinaryForm):
        super().__init__(f"incidence violated: pullback is {remainder.to_str()}")
        self.remainder = remainder


class WitnessError(ValueError):
    pass


@dataclass(frozen=True)
class IncidencePair:
    curve: RationalCurveMap
    quintic: MultiPoly

    def __post_init__(self):
        if self.quintic.degree != 5:
            raise DegreeMismatchError(f"expected a quintic, got degree {self.quintic.degree}")
        if self.quintic.modulus != self.curve.modulus:
            raise ValueError("curve and quintic over different fields")

    @property
    def d(self) -> int:
        return self.curve.degree

    def remainder(self) -> BinaryForm:
        return pullback(self.curve, self.quintic)

    @property
    def incident(self) -> bool:
        return self.remainder().is_zero()


@dataclass
class DeformationReport:
    d: int
    rank_phi: int
    ker_phi_dim: int
    rank_mu: int
    condition01: bool
    h0: int | None
    h1: int | None
    orbit_in_kernel: bool
    orbit_rank: int
    image_equality: bool
    scenario_strict: bool
    formulas_applicable: bool = True
    notes: list = field(default_factory=list)

    def __post_init__(self):
        assert self.rank_phi + self.ker_phi_dim == NVARS * (self.d + 1)
        if self.h0 is not None:
            assert self.h1 == 5 * self.d + 1 - self.rank_phi
            assert self.h0 == self.ker_phi_dim - self.orbit_rank
            assert self.h0 == self.h1

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "rank_phi": self.rank_phi,
            "ker_phi_dim": self.ker_phi_dim,
            "rank_mu": self.rank_mu,
            "condition01": self.condition01,
            "h0": self.h0,
            "h1": self.h1,
            "orbit_in_kernel": self.orbit_in_kernel,
            "orbit_rank": self.orbit_rank,
            "image_equality": self.image_equality,
            "scenario_strict": self.scenario_strict,
            "formulas_applicable": self.formulas_applicable,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class WitnessVector:
    beta: tuple
    slot1_zero: bool
    residual: BinaryForm

    @property
    def residual_zero(self) -> bool:
        return self.residual.is_zero()

    def coordinates(self) -> list:
        return flatten_md(self.beta)

    def strings(self) -> list[str]:
        return [b.to_str() for b in self.beta]


def _shift_columns(form: BinaryForm, d: int) -> list[list]:
    """Coordinates of ``s^(d-k) t^k * form`` for k = 0..d."""
    n = form.degree + d + 1
    cols = []
    for k in range(d + 1):
        col = [0] * n
        for j, a in enumerate(form.coeffs):
            col[j + k] = a
        cols.append(col)
    return cols


def phi_generators(pair: IncidencePair) -> list[BinaryForm]:
    """``c^*(df/dz_i)`` for i = 0..4 (degree 4d forms)."""
    return [pullback(pair.curve, g) for g in _gradient(pair.quintic)]


def _gradient(f: MultiPoly) -> list[MultiPoly]:
    out = []
    for i in range(NVARS):
        g = f.diff(i)
        if g.degree is None:
            g = MultiPoly({}, f.modulus, f.degree - 1)
        out.append(g)
    return out


def assemble_phi(pair: IncidencePair) -> ExactMatrix:
    """``(5d+1) x 5(d+1)`` matrix, columns slot-major then ascending t-power."""
    d = pair.d
    cols = []
    for gen in phi_generators(pair):
        if gen.degree != 4 * d:
            gen = BinaryForm.zero(4 * d) if gen.modulus is None else BinaryForm(4 * d, [0] * (4 * d + 1), gen.modulus)
        cols.extend(_shift_columns(gen, d))
    return ExactMatrix.from_columns(cols, 5 * d + 1, pair.curve.modulus)


def apply_phi(pair: IncidencePair, beta) -> BinaryForm:
    """``sum_i beta_i * c^*(df/dz_i)`` computed by polynomial multiplication."""
    gens = phi_generators(pair)
    total = None
    for b, g in zip(beta, gens):
        term = b * g
        total = term if total is None else total + term
    return total


def assemble_mu(pair: IncidencePair) -> ExactMatrix:
    return pullback_matrix(pair.curve, 5)


def assemble_lambda(c: RationalCurveMap, g0: MultiPoly, g1: MultiPoly, g2: MultiPoly, q: MultiPoly) -> ExactMatrix:
    """Phi restricted to tuples of pullbacks of linear forms on the plane.

    Columns: slot i = 0..4, then generator z2, z3, z4.  Slots 0 and 1 multiply
    ``c^*(g_i)``; slots 2..4 multiply ``c^*(q) c^*(dg2/dz_i)``.
    """
    for name, f, deg in (("g0", g0, 4), ("g1", g1, 4), ("g2", g2, 3), ("q", q, 2)):
        if f.degree != deg:
            raise DegreeMismatchError(f"{name} must have degree {deg}, got {f.degree}")
    for name, f in (("g2", g2), ("q", q)):
        if any(e[0] or e[1] for e in f.terms):
            raise DegreeMismatchError(f"{name} must only involve z2, z3, z4")
    d = c.degree
    gens = [c.components[i] for i in PLANE]
    cq = pullback(c, q)
    factors = [pullback(c, g0.restrict((0, 1))), pullback(c, g1.restrict((0, 1)))]
    for i in PLANE:
        factors.append(cq * pullback(c, g2.diff(i)))
    cols = []
    for fac in factors:
        for ell in gens:
            cols.append(list((ell * fac).coeffs))
    return ExactMatrix.from_columns(cols, 5 * d + 1, c.modulus)


def node_functional(coords, node=((1, 1), (1, -1))) -> Fraction:
    """``w(a) - w(b)`` for a form given by ascending t-power coordinates."""
    (s1, t1), (s2, t2) = node
    m = len(coords) - 1
    va = sum(Fraction(x) * s1 ** (m - k) * t1 ** k for k, x in enumerate(coords))
    vb = sum(Fraction(x) * s2 ** (m - k) * t2 ** k for k, x in enumerate(coords))
    return va - vb


def _geometry_ok(curve: RationalCurveMap) -> tuple[bool, list[str]]:
    notes = []
    if curve.modulus is not None:
        notes.append("immersion and birationality are checked over Q only")
        return True, notes
    ok = True
    if not check_immersion(curve):
        notes.append("curve is not immersed")
        ok = False
    try:
        identification_pairs(curve)
    except CurveError as exc:
        notes.append(f"curve is not birational onto its image ({exc})")
        ok = False
    return ok, notes


def analyze(pair: IncidencePair, check_geometry: bool = True) -> DeformationReport:
    """Ranks of Phi and M_mu, the surjectivity condition and ``h^0, h^1`` of the normal sheaf.

    ``h^1 = coker Phi``.  ``h^0 = ker Phi - 4`` needs an independent orbit
    frame and an immersed birational curve; otherwise only raw ranks are
    reported and ``formulas_applicable`` is false.
    """
    rem = pair.remainder()
    if not rem.is_zero():
        raise IncidenceError(rem)
    d = pair.d
    Phi = assemble_phi(pair)
    Mu = assemble_mu(pair)
    r_phi = rank(Phi)
    ker = NVARS * (d + 1) - r_phi
    r_mu = rank(Mu)
    cond = column_space_contains(Phi, Mu)
    equal = cond and column_space_contains(Mu, Phi)
    frame = orbit_tangent(pair.curve)
    in_kernel = all(apply_phi(pair, v).is_zero() for v in frame.vectors)
    notes = []
    applicable = frame.independent and in_kernel
    if not frame.independent:
        notes.append(f"orbit frame has rank {frame.rank} < 4")
    if check_geometry:
        ok, extra = _geometry_ok(pair.curve)
        notes.extend(extra)
        applicable = applicable and ok
    h1 = 5 * d + 1 - r_phi if applicable else None
    h0 = ker - frame.rank if applicable else None
    return DeformationReport(
        d=d,
        rank_phi=r_phi,
        ker_phi_dim=ker,
        rank_mu=r_mu,
        condition01=cond,
        h0=h0,
        h1=h1,
        orbit_in_kernel=in_kernel,
        orbit_rank=frame.rank,
        image_equality=equal,
        scenario_strict=r_phi < 5 * d + 1,
        formulas_applicable=applicable,
        notes=notes,
    )


def _check_witness(pair: IncidencePair, coords, frame_rows) -> WitnessVector:
    d = pair.d
    beta = unflatten_md(coords, d, pair.curve.modulus)
    residual = apply_phi(pair, beta)
    if not residual.is_zero():
        raise AssertionError("witness is not in the kernel")
    if rank(ExactMatrix.from_rows(frame_rows + [list(coords)], pair.curve.modulus)) != len(frame_rows) + 1:
        raise WitnessError("witness lies in the orbit span")
    return WitnessVector(beta, beta[1].is_zero(), residual)


def extract_witness(pair: IncidencePair, report: DeformationReport) -> WitnessVector:
    """A kernel vector of Phi outside the orbit span."""
    if report.ker_phi_dim < 5 or report.orbit_rank != 4:
        raise WitnessError("needs dim ker Phi >= 5 and an independent orbit frame")
    frame = orbit_tangent(pair.curve).coordinates()
    K = kernel_basis(assemble_phi(pair))
    for v in K.vectors:
        if rank(ExactMatrix.from_rows(frame + [list(v)], pair.curve.modulus)) == 5:
            return _check_witness(pair, v, frame)
    raise WitnessError("no kernel vector outside the orbit span")


def extract_split_witness(pair: IncidencePair, g0: MultiPoly, g2: MultiPoly, q: MultiPoly) -> WitnessVector:
    """Kernel vector with beta_1 = 0 and beta_0 != 0 for ``f = z0 g0 + z1 g1 + g2 q``.

    Solves ``beta_0 c^*(g0) + c^*(q) sum_{i>=2} beta_i c^*(dg2/dz_i) = 0`` via
    the kernel of the square matrix on (beta_0, beta_2, beta_3, beta_4).
    """
    c = pair.curve
    d = c.degree
    cq = pullback(c, q)
    factors = [pullback(c, g0)] + [cq * pullback(c, g2.diff(i)) for i in PLANE]
    cols = []
    for fac in factors:
        cols.extend(_shift_columns(fac, d))
    A = ExactMatrix.from_columns(cols, 5 * d + 1, c.modulus)
    K = kernel_basis(A)
    frame = orbit_tangent(c).coordinates()
    zero = [0] * (d + 1)
    for v in K.vectors:
        v = list(v)
        if not any(v[: d + 1]):
            continue
        coords = v[: d + 1] + zero + v[d + 1:]
        w = _check_witness(pair, coords, frame)
        if w.slot1_zero and not w.beta[0].is_zero():
            return w
    # a combination might still have beta_0 != 0 only if some basis vector does
    raise WitnessError("no witness with beta_1 = 0 and beta_0 != 0")
