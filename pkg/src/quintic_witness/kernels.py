"""Backend selection for the hot kernels.

The compiled extension ``_ckernels`` is used when it imports; otherwise the
pure-Python twin in ``_pykernels``.  Set ``QW_PURE_PYTHON=1`` to force the
fallback.
"""
from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("QW_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND
rank_mod_p = _impl.rank_mod_p
rref_mod_p = _impl.rref_mod_p
ReductionStore = _impl.ReductionStore

python_backend = _pykernels
