"""Seeded construction of a nodal plane cubic on a quintic, with certification.

Every open ("generic") condition is replaced by random sampling followed by
an exact check; attempts repeat until all checks hold or the budget runs out.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Sequence

from .curves import (
    RationalCurveMap,
    check_immersion,
    classify_node,
    identification_pairs,
    implicitize_plane_cubic,
    normalize_point,
    pullback,
    standard_nodal_cubic,
)
from .deformation import (
    DeformationReport,
    IncidencePair,
    WitnessError,
    WitnessVector,
    analyze,
    assemble_lambda,
    extract_split_witness,
)
from .groebner import SmoothnessVerdict, certify_smooth_over_Q
from .linalg import ExactMatrix, kernel_basis, rank, rref
from .poly import DegreeMismatchError, MultiPoly, is_prime, monomial_basis

log = logging.getLogger(__name__)

NODE_PREIMAGES = ((Fraction(1), Fraction(1)), (Fraction(1), Fraction(-1)))
DEFAULT_POINTS = ((1, 0), (0, 1), (1, 2))
MASK64 = (1 << 64) - 1


class ConfigError(ValueError):
    pass


class SamplingError(RuntimeError):
    pass


class SplitMix64:
    """The splitmix64 generator (Steele, Lea, Flood), state advanced by a Weyl step."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def uniform(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)


@dataclass(frozen=True)
class ConstructionConfig:
    seed: int = 42
    height: int = 10
    points: tuple = DEFAULT_POINTS
    max_attempts: int = 32
    prime: int = 32003

    def __post_init__(self):
        if not 0 <= self.seed <= MASK64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if self.height < 1:
            raise ConfigError("height bound must be at least 1")
        if self.max_attempts < 1:
            raise ConfigError("need at least one attempt")
        if not is_prime(self.prime):
            raise ConfigError(f"{self.prime} is not a prime")
        if len(self.points) != 3:
            raise ConfigError("exactly three common points are required")
        pts = [normalize_point(*p) for p in self.points]
        if len(set(pts)) != 3:
            raise ConfigError("common points must be pairwise distinct")
        for p in pts:
            if p in NODE_PREIMAGES:
                raise ConfigError(f"point ({p[0]}:{p[1]}) is a node preimage")
        object.__setattr__(self, "points", tuple(tuple(int(x) for x in p) for p in self.points))

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "height": self.height,
            "points": [list(p) for p in self.points],
            "max_attempts": self.max_attempts,
            "prime": self.prime,
        }


# ---------------------------------------------------------------------------
# lattice helpers


def _evaluation_rows(c: RationalCurveMap, points, mons) -> list[list[Fraction]]:
    rows = []
    for p in points:
        img = c(*p)
        rows.append([MultiPoly({e: 1}).evaluate(img) for e in mons])
    return rows


def box_solutions(rows: Sequence[Sequence], height: int) -> list[tuple[int, ...]]:
    """All nonzero integer vectors in ``[-H, H]^n`` annihilated by ``rows``.

    The free coordinates of the echelon form are enumerated; the pivot
    coordinates are then determined and kept when integral and in range.
    """
    n = len(rows[0])
    R, piv = rref(ExactMatrix.from_rows(rows))
    free = [j for j in range(n) if j not in set(piv)]
    if len(free) > 4:
        raise ValueError("box enumeration is limited to four free coordinates")
    out = []
    for vals in product(range(-height, height + 1), repeat=len(free)):
        v = [Fraction(0)] * n
        for j, x in zip(free, vals):
            v[j] = Fraction(x)
        ok = True
        for i, c in enumerate(piv):
            x = -sum(R[i][j] * v[j] for j in free)
            if x.denominator != 1 or abs(x) > height:
                ok = False
                break
            v[c] = x
        if ok and any(v):
            out.append(tuple(int(x) for x in v))
    return out


def lll_reduce(basis: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> list[list[int]]:
    """Textbook LLL reduction with exact rational Gram-Schmidt."""
    b = [list(map(int, v)) for v in basis]
    n = len(b)

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    def gram_schmidt():
        bs, mu = [], [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = Fraction(dot(b[i], bs[j])) / dot(bs[j], bs[j])
                v = [x - mu[i][j] * y for x, y in zip(v, bs[j])]
            bs.append(v)
        return bs, mu

    bs, mu = gram_schmidt()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            r = round(mu[k][j])
            if r:
                b[k] = [x - r * y for x, y in zip(b[k], b[j])]
                bs, mu = gram_schmidt()
        if dot(bs[k], bs[k]) >= (delta - mu[k][k - 1] ** 2) * dot(bs[k - 1], bs[k - 1]):
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            bs, mu = gram_schmidt()
            k = max(k - 1, 1)
    return b


def integer_kernel(rows: Sequence[Sequence]) -> list[list[int]]:
    """LLL-reduced basis of the lattice of integer vectors annihilated by ``rows``.

    Reduces ``[I | W A^T]`` for a large weight W; the reduced rows whose
    weighted part vanishes form a basis of the saturated kernel lattice.
    """
    A = [[Fraction(x) for x in r] for r in rows]
    ints = []
    for r in A:
        den = 1
        for x in r:
            den = den * x.denominator // gcd(den, x.denominator)
        ints.append([int(x * den) for x in r])
    n = len(ints[0])
    weight = 1 + sum(abs(x) for r in ints for x in r) * n
    aug = [[int(i == j) for j in range(n)] + [weight * r[i] for r in ints] for i in range(n)]
    red = lll_reduce(aug)
    basis = [v[:n] for v in red if not any(v[n:])]
    expected = n - rank(ExactMatrix.from_rows(ints))
    assert len(basis) == expected, "kernel lattice basis has the wrong rank"
    return basis


# ---------------------------------------------------------------------------
# samplers


def sample_q(c: RationalCurveMap, points, rng: SplitMix64, height: int = 10) -> MultiPoly:
    """Uniform integer conic in z2, z3, z4 through the images of ``points``."""
    mons = [e for e in monomial_basis(5, 2) if e[0] == 0 and e[1] == 0]
    sols = box_solutions(_evaluation_rows(c, points, mons), height)
    if not sols:
        raise SamplingError("no nonzero conic within the height bound")
    q = MultiPoly(dict(zip(mons, sols[rng.below(len(sols))])))
    cq = pullback(c, q)
    assert not cq.is_zero() and all(cq(*p) == 0 for p in points)
    return q


class G0Sampler:
    """Quartics whose pullback vanishes at the common points.

    Monomials containing z0 or z1 pull back to zero and are drawn uniformly
    in ``[-H, H]``.  The plane part is a small random combination of an
    LLL-reduced integer basis of the constraint lattice, rejected above H.
    """

    def __init__(self, c: RationalCurveMap, points, height: int = 10):
        self.c = c
        self.points = points
        self.height = height
        mons = monomial_basis(5, 4)
        self.plane = [e for e in mons if e[0] == 0 and e[1] == 0]
        self.ambient = [e for e in mons if e[0] or e[1]]
        self.basis = integer_kernel(_evaluation_rows(c, points, self.plane))
        self.dimension = len(self.basis) + len(self.ambient)

    def sample(self, rng: SplitMix64, tries: int = 1000) -> MultiPoly:
        H = self.height
        for _ in range(tries):
            v = [0] * len(self.plane)
            for b in self.basis:
                r = rng.uniform(-1, 1)
                if r:
                    v = [x + r * y for x, y in zip(v, b)]
            if max(abs(x) for x in v) > H:
                continue
            terms = dict(zip(self.plane, v))
            for e in self.ambient:
                terms[e] = rng.uniform(-H, H)
            g0 = MultiPoly(terms)
            cg = pullback(self.c, g0)
            if cg.is_zero():
                continue
            assert all(cg(*p) == 0 for p in self.points)
            return g0
        raise SamplingError("could not sample g0 within the height bound")


def sample_g0(c: RationalCurveMap, points, rng: SplitMix64, height: int = 10) -> MultiPoly:
    return G0Sampler(c, points, height).sample(rng)


def sample_g1(rng: SplitMix64, height: int = 10) -> MultiPoly:
    mons = monomial_basis(5, 4)
    while True:
        g1 = MultiPoly({e: rng.uniform(-height, height) for e in mons})
        if not g1.is_zero():
            return g1


def assemble_f0(g0: MultiPoly, g1: MultiPoly, g2: MultiPoly, q: MultiPoly) -> MultiPoly:
    for name, f, deg in (("g0", g0, 4), ("g1", g1, 4), ("g2", g2, 3), ("q", q, 2)):
        if f.degree != deg:
            raise DegreeMismatchError(f"{name} must have degree {deg}, got {f.degree}")
    for name, f in (("g2", g2), ("q", q)):
        if any(e[0] or e[1] for e in f.terms):
            raise DegreeMismatchError(f"{name} must only involve z2, z3, z4")
    z0, z1 = MultiPoly.variable(0), MultiPoly.variable(1)
    f0 = z0 * g0 + z1 * g1 + g2 * q
    assert (f0 - z0 * g0 - z1 * g1 - g2 * q).is_zero()
    return f0


# ---------------------------------------------------------------------------
# the builder


@dataclass
class CurveChecks:
    """Checks that depend on the curve alone."""

    g2: MultiPoly
    pairs: list
    unresolved_degree: int
    node_classification: str
    immersion: bool

    @property
    def pair_count(self) -> int:
        return len(self.pairs)


def curve_checks(c: RationalCurveMap) -> CurveChecks:
    g2 = implicitize_plane_cubic(c)
    rep = identification_pairs(c)
    classes = [classify_node(g2, pt[2:]) for pt in rep.image_points]
    if not classes:
        node = "none"
    elif all(x == "node" for x in classes) and len(set(rep.image_points)) == len(classes):
        node = "node"
    else:
        node = "worse"
    return CurveChecks(g2, rep.pairs, rep.unresolved_degree, node, bool(check_immersion(c)))


@dataclass
class Attempt:
    index: int
    q: MultiPoly
    g0: MultiPoly
    g1: MultiPoly
    f0: MultiPoly
    report: DeformationReport
    rank_lambda: int
    witness: WitnessVector | None
    smooth: SmoothnessVerdict | None = None
    failed: list = field(default_factory=list)


@dataclass
class ConstructionResult:
    config: ConstructionConfig
    curve: RationalCurveMap
    curve_info: CurveChecks
    g0: MultiPoly
    g1: MultiPoly
    g2: MultiPoly
    q: MultiPoly
    f0: MultiPoly
    report: DeformationReport
    rank_lambda: int
    witness: WitnessVector | None
    smooth: SmoothnessVerdict
    attempts: int
    certified: bool
    log: list = field(default_factory=list)
    failure_counts: dict = field(default_factory=dict)

    def __post_init__(self):
        # re-check the type invariants instead of trusting the sampler
        assert (self.f0 - assemble_f0(self.g0, self.g1, self.g2, self.q)).is_zero()
        assert pullback(self.curve, self.f0).is_zero()
        for p in self.config.points:
            assert pullback(self.curve, self.q)(*p) == 0
            assert pullback(self.curve, self.g0)(*p) == 0


def attempt_failures(cc: CurveChecks, a: Attempt) -> list[str]:
    r = a.report
    failed = []
    if cc.pair_count != 1 or cc.unresolved_degree:
        failed.append("identification_pair_count")
    if cc.node_classification != "node":
        failed.append("node_classification")
    if not cc.immersion:
        failed.append("immersion")
    if a.rank_lambda != 15:
        failed.append("rank_lambda")
    if r.rank_phi != 15:
        failed.append("rank_phi")
    if r.ker_phi_dim != 5:
        failed.append("ker_phi_dim")
    if not r.condition01:
        failed.append("condition01")
    if a.witness is None:
        failed.append("witness")
    if a.smooth is not None and not a.smooth.smooth_over_Q:
        failed.append("smooth")
    return failed


def _score(a: Attempt) -> tuple:
    # fewest failed checks first, earliest attempt on ties
    return (len(a.failed), a.index)


def build_example(config: ConstructionConfig | None = None) -> ConstructionResult:
    """Sample and certify until every check holds or the attempts run out.

    The expensive smoothness test runs only for attempts that pass every
    other check.  If none does, the best attempt (fewest failing checks) is
    returned with ``certified`` false and its smoothness computed as well.
    """
    cfg = config or ConstructionConfig()
    rng = SplitMix64(cfg.seed)
    c = standard_nodal_cubic()
    cc = curve_checks(c)
    g2 = cc.g2
    sampler = G0Sampler(c, cfg.points, cfg.height)
    counts: Counter = Counter()
    lines = []
    best: Attempt | None = None
    chosen: Attempt | None = None
    for k in range(1, cfg.max_attempts + 1):
        q = sample_q(c, cfg.points, rng, cfg.height)
        g0 = sampler.sample(rng)
        g1 = sample_g1(rng, cfg.height)
        f0 = assemble_f0(g0, g1, g2, q)
        pair = IncidencePair(c, f0)
        report = analyze(pair)
        rl = rank(assemble_lambda(c, g0, g1, g2, q))
        try:
            w = extract_split_witness(pair, g0, g2, q)
        except WitnessError:
            w = None
        a = Attempt(k, q, g0, g1, f0, report, rl, w)
        a.failed = attempt_failures(cc, a)
        if not a.failed:
            a.smooth = certify_smooth_over_Q(f0, [cfg.prime])
            a.failed = attempt_failures(cc, a)
        counts.update(a.failed)
        lines.append(f"attempt {k}: " + ("all checks pass" if not a.failed else "failed " + ", ".join(a.failed)))
        log.info(lines[-1])
        if best is None or _score(a) < _score(best):
            best = a
        if not a.failed:
            chosen = a
            break
    attempts = k
    if chosen is None:
        chosen = best
        if chosen.smooth is None:
            chosen.smooth = certify_smooth_over_Q(chosen.f0, [cfg.prime])
            chosen.failed = attempt_failures(cc, chosen)
        worst = ", ".join(f"{name} ({n}/{attempts})" for name, n in counts.most_common())
        lines.append(f"attempts exhausted; failing checks: {worst}; reporting attempt {chosen.index}")
    return ConstructionResult(
        config=cfg,
        curve=c,
        curve_info=cc,
        g0=chosen.g0,
        g1=chosen.g1,
        g2=g2,
        q=chosen.q,
        f0=chosen.f0,
        report=chosen.report,
        rank_lambda=chosen.rank_lambda,
        witness=chosen.witness,
        smooth=chosen.smooth,
        attempts=attempts,
        certified=not chosen.failed,
        log=lines,
        failure_counts=dict(counts),
    )
