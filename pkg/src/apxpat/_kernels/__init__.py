"""Kernel backend selection.

The hot loops (dart throwing, separation audits, cell binning, pairwise
scans) exist twice: a compiled Cython core and a pure-Python fallback with
identical semantics.  The compiled module is preferred when importable;
``APXPAT_PURE=1`` forces the fallback.  Routing also falls back per call
when a compiled path would need an unreasonably large flat grid.
"""

import math
import os

from . import _fallback

if os.environ.get("APXPAT_PURE"):
    _core = None
else:
    try:
        from . import _core as _core  # type: ignore[no-redef]
    except ImportError:
        _core = None

BACKEND = _core.BACKEND if _core is not None else _fallback.BACKEND

# Flat grids in the compiled paths are capped at 512 MB of long slots.
_GRID_CAP = 1 << 26
_MAX_COMPILED_DIM = 16

splitmix64_next = (_core or _fallback).splitmix64_next
unit_from_bits = (_core or _fallback).unit_from_bits
bin_cells = (_core or _fallback).bin_cells
min_pairwise_sq = (_core or _fallback).min_pairwise_sq
max_pairwise_sq = (_core or _fallback).max_pairwise_sq


def dart_throw(dim, length, delta, target, seed, max_attempts):
    if _core is not None and dim <= _MAX_COMPILED_DIM:
        cell = delta * (1.0 - 1e-9) / math.sqrt(dim)
        ncells = int(length / cell) + 2
        if ncells**dim <= _GRID_CAP:
            return _core.dart_throw(dim, length, delta, target, seed, max_attempts)
    return _fallback.dart_throw(dim, length, delta, target, seed, max_attempts)


def has_close_pair(flat, dim, threshold):
    if _core is not None and dim <= _MAX_COMPILED_DIM and flat and threshold > 0.0:
        cell = threshold * (1.0 - 1e-9) / math.sqrt(dim)
        ncells = 0
        for a in range(dim):
            axis = flat[a::dim]
            ncells = max(ncells, int((max(axis) - min(axis)) / cell) + 2)
        if ncells**dim <= _GRID_CAP:
            return _core.has_close_pair(flat, dim, threshold)
    return _fallback.has_close_pair(flat, dim, threshold)
