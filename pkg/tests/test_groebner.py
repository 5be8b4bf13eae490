from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quintic_witness.groebner import (
    IdealGenerators,
    buchberger,
    certify_smooth_over_Q,
    is_smooth_hypersurface_mod_p,
    normal_form,
    standard_monomial_count,
    verify_groebner,
)
from quintic_witness.poly import BadPrimeError, MultiPoly, monomial_basis, reduce_mod_p


def Pp(text, p=32003):
    return reduce_mod_p(MultiPoly.parse(text), p)


def gb(texts, p=32003):
    return buchberger(IdealGenerators(tuple(Pp(t, p) for t in texts), p))


def test_normal_form_examples():
    G = gb(["z0"])
    assert normal_form(Pp("z0^2"), G).is_zero()
    assert normal_form(Pp("z1"), G) == Pp("z1")


def test_buchberger_examples():
    pure = ["z0^4", "z1^4", "z2^4", "z3^4", "z4^4"]
    assert [f.to_str() for f in gb(pure).polys] == pure
    G = gb(["z0 - z1", "z1^2"])
    assert list(G.polys) == [Pp("z0 - z1"), Pp("z1^2")]


def test_staircase_of_squares():
    G = gb([f"z{i}^2" for i in range(5)])
    assert standard_monomial_count(G.leading_monomials()) == 32


def test_staircase_infinite():
    assert standard_monomial_count([(2, 0, 0, 0, 0)]) is None


def test_fermat_smooth():
    v = is_smooth_hypersurface_mod_p(MultiPoly.parse("z0^5+z1^5+z2^5+z3^5+z4^5"), 32003)
    assert v.smooth_mod_p and v.witnesses == [4, 4, 4, 4, 4] and v.staircase == 1024


def test_missing_variable_never_smooth():
    f = MultiPoly.parse("z1^5 + z2^5 + z3^5 + z4^5")
    v = is_smooth_hypersurface_mod_p(f, 32003)
    assert not v.smooth_mod_p and v.failing_variable == 0


def test_certify_over_Q():
    fermat = MultiPoly.parse("z0^5+z1^5+z2^5+z3^5+z4^5")
    assert certify_smooth_over_Q(fermat, [32003]).conclusion_over_Q == "smooth"
    v = certify_smooth_over_Q(MultiPoly.parse("z0^3*z1^2"), [7, 11, 32003])
    assert v.conclusion_over_Q == "undetermined"
    assert [t["result"] for t in v.primes_tried] == ["singular"] * 3


def test_bad_primes():
    with pytest.raises(ValueError):
        is_smooth_hypersurface_mod_p(MultiPoly.parse("z0^5"), 6)
    with pytest.raises(BadPrimeError):
        is_smooth_hypersurface_mod_p(MultiPoly.parse("1/5*z0^5 + z1^5"), 5)
    # 5 is bad for the Fermat quintic (all partials vanish); the next prime decides
    v = certify_smooth_over_Q(MultiPoly.parse("z0^5+z1^5+z2^5+z3^5+z4^5"), [5, 7])
    assert v.smooth_over_Q and v.prime == 7


def _random_form(rng, d, p, n):
    mons = monomial_basis(5, d)
    return MultiPoly({mons[rng.randrange(len(mons))]: rng.randrange(1, p) for _ in range(n)}, p)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_buchberger_postconditions(seed):
    rng = random.Random(seed)
    p = 101
    gens = [_random_form(rng, rng.choice([2, 3]), p, 4) for _ in range(3)]
    G = buchberger(IdealGenerators(tuple(gens), p))
    assert verify_groebner(G)
    for f in gens:
        assert normal_form(f, G).is_zero()
    h = _random_form(rng, 4, p, 6)
    r = normal_form(h, G)
    assert normal_form(r, G) == r


def test_verify_rejects_non_basis():
    from quintic_witness.groebner import GroebnerBasis

    p = 32003
    assert not verify_groebner(GroebnerBasis((Pp("z0 - z1"), Pp("z0 - z2")), p))
