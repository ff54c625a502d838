"""Backend selection for the hot kernels.

The compiled extension is used when present; SIGNEDNU_BACKEND=python or
SIGNEDNU_BACKEND=compiled forces a choice.  Both backends implement the same
enumeration in the same order, so results are interchangeable byte for byte.
"""

from __future__ import annotations

import os

from . import _pykernels
from ._pykernels import EXHAUSTED, FOUND, OVER_BUDGET  # noqa: F401

try:
    from . import _speedups
except ImportError:
    _speedups = None

_forced = os.environ.get("SIGNEDNU_BACKEND")
if _forced == "python":
    _active = _pykernels
elif _forced == "compiled":
    if _speedups is None:
        raise ImportError("SIGNEDNU_BACKEND=compiled but no compiled kernels")
    _active = _speedups
elif _forced:
    raise ImportError(f"unknown SIGNEDNU_BACKEND {_forced!r}")
else:
    _active = _speedups if _speedups is not None else _pykernels


def backend_name() -> str:
    return _active.BACKEND


def have_compiled() -> bool:
    return _speedups is not None


def min_encoding(n, even, odd, groups) -> bytes:
    return _active.min_encoding(n, even, odd, groups)


def search_embedding(nv, m, head, eodd, vstart, vdarts, max_odd, budget):
    return _active.search_embedding(nv, m, head, eodd, vstart, vdarts,
                                    max_odd, budget)
