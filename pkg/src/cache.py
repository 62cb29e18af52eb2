"""
Caching layer for thetaprism.

=============================================================================
WHAT GETS CACHED
=============================================================================

Two searches are exact, deterministic and expensive enough to keep:

1. TREEWIDTH CACHE (30 days)
   - Key: md5 of the canonical graph6 encoding of the graph
   - Value: TreewidthResult.to_dict() (width, bounds, decomposition)
   - Only exact results are stored; bounds above the cap are recomputed

2. RAMSEY CACHE (365 days)
   - Key: md5 of the argument tuple, e.g. ("ramsey", 3, 4)
   - Value: Quantity.to_dict()
   - Only exact values are stored

The TTLs bound disk use; a cached value never differs from a fresh one, so
cached and uncached runs print the same bytes.
=============================================================================
"""

import hashlib
import os
from pathlib import Path
from typing import Optional, Tuple

from diskcache import Cache

from .config import CACHE_DIR, RAMSEY_CACHE_TTL_DAYS, TREEWIDTH_CACHE_TTL_DAYS
from .graph import Graph
from .graph_io import encode_graph6

DAY_SECONDS = 24 * 3600


class CacheManager:
    """
    Disk caches for exact treewidth and Ramsey values.

    Uses diskcache, so results persist between runs.
    """

    def __init__(self, cache_dir: Optional[str] = None):
        self.cache_dir = cache_dir or CACHE_DIR
        self.treewidth_cache = Cache(os.path.join(self.cache_dir, "treewidth"))
        self.ramsey_cache = Cache(os.path.join(self.cache_dir, "ramsey"))
        self.stats = {
            "treewidth_hits": 0,
            "treewidth_misses": 0,
            "ramsey_hits": 0,
            "ramsey_misses": 0,
        }

    # =========================================================================
    # TREEWIDTH
    # =========================================================================

    def _make_treewidth_key(self, G: Graph) -> str:
        return hashlib.md5(f"treewidth:{encode_graph6(G)}".encode()).hexdigest()

    def get_treewidth(self, G: Graph) -> Optional[dict]:
        result = self.treewidth_cache.get(self._make_treewidth_key(G))
        if result is not None:
            self.stats["treewidth_hits"] += 1
            return result
        self.stats["treewidth_misses"] += 1
        return None

    def set_treewidth(self, G: Graph, result: dict) -> None:
        """Store an exact result; `result` is TreewidthResult.to_dict()."""
        if not result.get("exact"):
            return
        self.treewidth_cache.set(
            self._make_treewidth_key(G), result, expire=TREEWIDTH_CACHE_TTL_DAYS * DAY_SECONDS
        )

    # =========================================================================
    # RAMSEY VALUES
    # =========================================================================

    def _make_ramsey_key(self, key: Tuple) -> str:
        return hashlib.md5(("ramsey:" + ":".join(str(part) for part in key)).encode()).hexdigest()

    def get_ramsey(self, key: Tuple) -> Optional[dict]:
        result = self.ramsey_cache.get(self._make_ramsey_key(key))
        if result is not None:
            self.stats["ramsey_hits"] += 1
            return result
        self.stats["ramsey_misses"] += 1
        return None

    def set_ramsey(self, key: Tuple, value: dict) -> None:
        self.ramsey_cache.set(self._make_ramsey_key(key), value, expire=RAMSEY_CACHE_TTL_DAYS * DAY_SECONDS)

    # =========================================================================
    # CACHE MANAGEMENT
    # =========================================================================

    def get_stats(self) -> dict:
        """Hit/miss counters per cache and the size on disk."""
        stats = {}
        for name in ("treewidth", "ramsey"):
            hits = self.stats[f"{name}_hits"]
            misses = self.stats[f"{name}_misses"]
            total = hits + misses
            stats[name] = {"hits": hits, "misses": misses, "hit_rate": hits / total if total > 0 else 0}
        stats["cache_size_mb"] = self._get_cache_size_mb()
        return stats

    def _get_cache_size_mb(self) -> float:
        total_bytes = 0
        cache_path = Path(self.cache_dir)
        if cache_path.exists():
            for file in cache_path.rglob("*"):
                if file.is_file():
                    total_bytes += file.stat().st_size
        return round(total_bytes / (1024 * 1024), 2)

    def clear_all(self) -> None:
        self.treewidth_cache.clear()
        self.ramsey_cache.clear()
        self.stats = {k: 0 for k in self.stats}

    def close(self) -> None:
        self.treewidth_cache.close()
        self.ramsey_cache.close()
