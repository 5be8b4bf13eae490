from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quintic_witness import _pykernels, kernels

try:
    from quintic_witness import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")
    if _ckernels is not None:
        assert kernels.BACKEND == "cython"


def test_degree_table_order():
    mons, index = _pykernels.degree_table(5, 3)
    assert len(mons) == 35
    assert mons[0] == (3, 0, 0, 0, 0) and mons[-1] == (0, 0, 0, 0, 3)
    assert all(index[m] == i for i, m in enumerate(mons))


@needs_c
@pytest.mark.parametrize("d", [0, 1, 2, 5, 9])
def test_compiled_position_formula(d):
    mons, index = _pykernels.degree_table(5, d)
    assert [_ckernels.position(d, m) for m in mons] == list(range(len(mons)))


@needs_c
@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.integers(0, 100), min_size=7, max_size=7), min_size=1, max_size=6))
def test_rref_backends_agree(rows):
    assert _ckernels.rref_mod_p(rows, 101) == _pykernels.rref_mod_p(rows, 101)


def _random_homogeneous(rng, d, p, n=8):
    mons, _ = _pykernels.degree_table(5, d)
    picks = sorted(set(rng.randrange(len(mons)) for _ in range(n)))
    terms = [(mons[i], rng.randrange(1, p)) for i in picks]
    inv = pow(terms[0][1], -1, p)
    return [(e, c * inv % p) for e, c in terms]


@needs_c
def test_reduction_backends_agree():
    rng = random.Random(7)
    p = 32003
    stores = [_pykernels.ReductionStore(p), _ckernels.ReductionStore(p)]
    for _ in range(6):
        g = _random_homogeneous(rng, 2, p)
        for s in stores:
            s.add(g)
    for _ in range(30):
        f = _random_homogeneous(rng, 4, p, 12)
        assert stores[0].reduce(f) == stores[1].reduce(f)
    for i in range(5):
        assert stores[0].spoly_reduce(i, i + 1) == stores[1].spoly_reduce(i, i + 1)


def test_reducers_must_be_monic():
    s = kernels.ReductionStore(7)
    with pytest.raises(AssertionError):
        s.add([((1, 0, 0, 0, 0), 3)])


def test_pure_python_fallback_switch():
    import os
    import subprocess
    import sys

    code = (
        "from quintic_witness import kernels\n"
        "from quintic_witness.groebner import is_smooth_hypersurface_mod_p\n"
        "from quintic_witness.poly import MultiPoly\n"
        "v = is_smooth_hypersurface_mod_p(MultiPoly.parse('z0^5+z1^5+z2^5+z3^5+z4^5'), 32003)\n"
        "print(kernels.BACKEND, v.staircase)\n"
    )
    env = dict(os.environ, QW_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "1024"]
