"""Backend selection for the enumeration kernels.

The compiled extension ``sgon._kernels`` is used when it was built; the numpy
fallback otherwise.  Setting ``SGON_PURE_PYTHON=1`` forces the fallback.
Both backends return identical arrays in identical order.
"""
from __future__ import annotations

import math
import os
from types import ModuleType

import numpy as np

from . import _kernels_py
from .errors import BoxTooLarge

DEFAULT_BUDGET = 20_000_000
_INT64_SAFE = 2**62


def _load() -> tuple[ModuleType, str]:
    if os.environ.get("SGON_PURE_PYTHON"):
        return _kernels_py, "python"
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        return _kernels_py, "python"
    return _kernels, "cython"


_impl, BACKEND = _load()


def backend(name: str | None = None) -> ModuleType:
    """Return a backend module by name (``"cython"`` / ``"python"``), default the active one."""
    if name is None:
        return _impl
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _kernels  # type: ignore[attr-defined]
        return _kernels
    raise ValueError(f"unknown backend {name!r}")


def has_compiled() -> bool:
    try:
        backend("cython")
    except ImportError:
        return False
    return True


def box_nodes(bounds) -> int:
    return math.prod(2 * int(b) + 1 for b in bounds)


def _check(nodes: int, magnitude: int, budget: int) -> None:
    if nodes > budget:
        raise BoxTooLarge(f"enumeration box has {nodes} nodes, budget is {budget}")
    if magnitude >= _INT64_SAFE:
        raise BoxTooLarge("enumeration values would overflow 64-bit integers")


def box_enumerate(basis, bounds, max_sup, budget=DEFAULT_BUDGET, impl=None):
    """Nonzero lattice vectors ``c @ basis`` with ``|c_i| <= bounds[i]`` and sup-norm ``<= max_sup``.

    Only coefficient vectors whose first nonzero entry is positive are
    reported.  Returns ``(coefficients, vectors)`` as int64 arrays.
    """
    B = np.array(basis, dtype=object)
    mag = int(sum(int(b) * max((abs(int(x)) for x in row), default=0) for b, row in zip(bounds, B)))
    _check(box_nodes(bounds), mag, budget)
    return (impl or _impl).box_enumerate(np.array(basis, dtype=np.int64),
                                         np.array(bounds, dtype=np.int64), int(max_sup))


def sparse_scan(F, row_of, A, ybound, k, radius, budget=DEFAULT_BUDGET, impl=None):
    """Integer preimages ``y`` (half box ``|y_i| <= ybound``) whose image ``A y`` is
    ``k``-sparse, the zero pattern read exactly from the integer matrix ``F``,
    with floating sup-norm at most ``radius`` (plus a relative 1e-9 slack)."""
    n = len(A)
    mag = int(ybound) * n * max((abs(int(x)) for r in F for x in r), default=0)
    _check(box_nodes([ybound] * n), mag, budget)
    return (impl or _impl).sparse_scan(np.array(F, dtype=np.int64).reshape(-1, n),
                                       np.array(row_of, dtype=np.int64),
                                       np.array(A, dtype=np.float64), int(ybound), int(k),
                                       float(radius))


def support_gram(F, row_of, n, ybound, budget=DEFAULT_BUDGET, impl=None):
    """Per zero-pattern Gram sums ``sum y y^T`` over the half box ``|y_i| <= ybound``.

    Entry ``G[mask]`` collects the preimages whose image has nonzero
    coordinates exactly at the bits of ``mask``.
    """
    nodes = box_nodes([ybound] * n)
    mag = max(int(ybound) * n * max((abs(int(x)) for r in F for x in r), default=0),
              nodes * int(ybound) ** 2)
    _check(nodes, mag, budget)
    return (impl or _impl).support_gram(np.array(F, dtype=np.int64).reshape(-1, n),
                                        np.array(row_of, dtype=np.int64), int(n), int(ybound))
