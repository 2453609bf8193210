"""Kernel selection: compiled extension when available, numpy fallback otherwise.

Set RAMWALK_PURE=1 in the environment to force the fallback (used by the
benchmark and the kernel-equality tests).
"""

from __future__ import annotations

import os

from . import _core_py

if os.environ.get("RAMWALK_PURE"):
    _impl = _core_py
    HAVE_EXTENSION = False
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        HAVE_EXTENSION = True
    except ImportError:
        _impl = _core_py
        HAVE_EXTENSION = False

IMPLEMENTATION = "compiled" if HAVE_EXTENSION else "python"

jacobi_sweeps = _impl.jacobi_sweeps
nb_walk_table = _impl.nb_walk_table
bfs_distances = _impl.bfs_distances
girth_scan = _impl.girth_scan


def thread_count() -> int:
    """Worker cap for the per-start parallel loops (RCW_THREADS env var)."""
    raw = os.environ.get("RCW_THREADS", "")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1
