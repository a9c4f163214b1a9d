"""Kernel selection: compiled extension if available, pure Python otherwise.

Set MAPCELLS_PURE=1 to force the fallback (used by the equivalence tests and
the benchmark).  Both backends implement the same functions with identical
outputs; only speed differs.
"""

from __future__ import annotations

import os

from . import pure as _pure

if os.environ.get("MAPCELLS_PURE"):
    _impl = _pure
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pure

BACKEND: str = _impl.BACKEND

rotate_to_dyck = _impl.rotate_to_dyck
tree_corner_tables = _impl.tree_corner_tables
closure_edges = _impl.closure_edges
adjacency_csr = _impl.adjacency_csr
bfs_distances = _impl.bfs_distances
nearest_cell_counts = _impl.nearest_cell_counts
polygon_gluing_genus_counts = _impl.polygon_gluing_genus_counts
trivalent_one_face_pairings = _impl.trivalent_one_face_pairings

__all__ = [
    "BACKEND",
    "rotate_to_dyck",
    "tree_corner_tables",
    "closure_edges",
    "adjacency_csr",
    "bfs_distances",
    "nearest_cell_counts",
    "polygon_gluing_genus_counts",
    "trivalent_one_face_pairings",
]
