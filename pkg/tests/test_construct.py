from __future__ import annotations

import pytest

from quintic_witness.construct import (
    DEFAULT_POINTS,
    ConfigError,
    ConstructionConfig,
    G0Sampler,
    SplitMix64,
    _evaluation_rows,
    assemble_f0,
    box_solutions,
    integer_kernel,
    lll_reduce,
    sample_g0,
    sample_g1,
    sample_q,
)
from quintic_witness.curves import pullback
from quintic_witness.linalg import ExactMatrix, rank
from quintic_witness.poly import DegreeMismatchError, MultiPoly, monomial_basis

P = MultiPoly.parse


def test_splitmix64_reference_values():
    rng = SplitMix64(0)
    assert [rng.next_u64() for _ in range(3)] == [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F,
    ]


def test_rng_bounds_and_determinism():
    a, b = SplitMix64(9), SplitMix64(9)
    xs = [a.uniform(-3, 3) for _ in range(200)]
    assert xs == [b.uniform(-3, 3) for _ in range(200)]
    assert set(xs) == set(range(-3, 4))


def test_q_constraints(c0):
    images = [c0(*p) for p in DEFAULT_POINTS]
    assert images == [(0, 0, -1, 0, 1), (0, 0, 0, 1, 0), (0, 0, 3, 6, 1)]
    example = P("z2^2 + z2*z4 - 2*z3*z4")
    assert all(example.evaluate(x) == 0 for x in images)
    mons = [e for e in monomial_basis(5, 2) if e[0] == 0 and e[1] == 0]
    sols = box_solutions(_evaluation_rows(c0, DEFAULT_POINTS, mons), 10)
    assert tuple(example.terms.get(e, 0) for e in mons) in sols
    z3sq = mons.index((0, 0, 0, 2, 0))
    assert all(v[z3sq] == 0 for v in sols)
    rng = SplitMix64(5)
    for _ in range(10):
        q = sample_q(c0, DEFAULT_POINTS, rng)
        assert q.height() <= 10 and not pullback(c0, q).is_zero()
        assert all(q.evaluate(x) == 0 for x in images)


def test_g0_constraints(c0):
    mons = monomial_basis(5, 4)
    rows = _evaluation_rows(c0, DEFAULT_POINTS, mons)
    assert rank(ExactMatrix.from_rows(rows)) == 3
    assert G0Sampler(c0, DEFAULT_POINTS).dimension == 67
    assert pullback(c0, P("z4^4"))(1, 0) == 1
    rng = SplitMix64(17)
    for _ in range(5):
        g0 = sample_g0(c0, DEFAULT_POINTS, rng)
        cg = pullback(c0, g0)
        assert g0.degree == 4 and g0.height() <= 10
        assert not cg.is_zero() and all(cg(*p) == 0 for p in DEFAULT_POINTS)


def test_g1():
    a, b = sample_g1(SplitMix64(1)), sample_g1(SplitMix64(2))
    assert a.degree == b.degree == 4 and a != b and not a.is_zero()


def test_assemble_f0(c0, g2):
    q = P("z2^2 + z2*z4 - 2*z3*z4")
    g0, g1 = P("z0^4 + z2*z3^3"), P("z1^4 - z4^4")
    f0 = assemble_f0(g0, g1, g2, q)
    assert f0.degree == 5
    assert pullback(c0, f0).is_zero()
    assert f0.restrict((0, 1)) == g2 * q
    with pytest.raises(DegreeMismatchError):
        assemble_f0(P("z0^5"), g1, g2, q)
    with pytest.raises(DegreeMismatchError):
        assemble_f0(g0, g1, g2, P("z0*z2"))


def test_config_validation():
    with pytest.raises(ConfigError, match="node preimage"):
        ConstructionConfig(points=((1, 0), (0, 1), (1, 1)))
    with pytest.raises(ConfigError, match="node preimage"):
        ConstructionConfig(points=((1, 0), (0, 1), (-2, 2)))
    with pytest.raises(ConfigError, match="distinct"):
        ConstructionConfig(points=((1, 0), (2, 0), (1, 2)))
    with pytest.raises(ConfigError, match="not a prime"):
        ConstructionConfig(prime=6)
    with pytest.raises(ConfigError):
        ConstructionConfig(height=0)


def test_lll_and_integer_kernel():
    red = lll_reduce([[1, 0, 0, 1345], [0, 1, 0, 35], [0, 0, 1, 154]])
    assert max(abs(x) for v in red for x in v) < 30
    K = integer_kernel([[1, 2, 3], [0, 1, 4]])
    assert K == [[5, -4, 1]] or K == [[-5, 4, -1]]


def test_flagship_invariants(flagship, c0):
    r = flagship
    assert r.curve == c0
    assert (r.f0 - assemble_f0(r.g0, r.g1, r.g2, r.q)).is_zero()
    assert pullback(c0, r.f0).is_zero()
    for p in r.config.points:
        assert pullback(c0, r.q)(*p) == 0 and pullback(c0, r.g0)(*p) == 0
    assert 1 <= r.attempts <= r.config.max_attempts
    assert r.curve_info.pair_count == 1 and r.curve_info.node_classification == "node"
    assert r.smooth.smooth_over_Q and r.smooth.staircase == 1024
