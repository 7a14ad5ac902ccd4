"""Backend selection for the table kernels.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
numpy versions in ``_pykernels`` are used. ``PMAXCLASS_BACKEND=python`` forces
the fallback.
"""
from __future__ import annotations

import os
from contextlib import contextmanager

import numpy as np

from pmaxclass import _pykernels

try:
    from pmaxclass import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

_impl = _pykernels
BACKEND = "python"


def set_backend(name: str) -> None:
    global _impl, BACKEND
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} unavailable (have {sorted(BACKENDS)})")
    _impl = BACKENDS[name]
    BACKEND = name


@contextmanager
def backend(name: str):
    previous = BACKEND
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


if os.environ.get("PMAXCLASS_BACKEND", "").lower() != "python" and _ckernels is not None:
    set_backend("cython")


def _idx(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.int64).reshape(-1)


def closure(table: np.ndarray, seed, gens) -> np.ndarray:
    """Boolean mask of the closure of ``seed | {identity}`` under right products by ``gens``."""
    return _impl.closure(table, _idx(seed), _idx(gens))


def extend_hom(src: np.ndarray, tgt: np.ndarray, gens, imgs):
    """Extend ``gens[k] -> imgs[k]`` to a homomorphism, or return None if impossible."""
    return _impl.extend_hom(src, tgt, _idx(gens), _idx(imgs))


def element_orders(table: np.ndarray) -> np.ndarray:
    return _impl.element_orders(table)


def find_nonassociative(table: np.ndarray):
    return _impl.find_nonassociative(table)


def conjugacy_class_ids(table: np.ndarray, inv: np.ndarray) -> np.ndarray:
    return _impl.conjugacy_class_ids(table, _idx(inv))
