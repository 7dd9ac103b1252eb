"""Small shared value types."""

from __future__ import annotations


class Infinity:
    """The distinguished index value ``infinity`` (never a sentinel integer)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return isinstance(other, Infinity)

    def __hash__(self):
        return hash("univalens-infinity")

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()


def is_inf(value) -> bool:
    return isinstance(value, Infinity)


def worker_count(default: int = 4) -> int:
    """Worker cap from ``UNIVALENS_THREADS`` (at least one)."""
    import os

    try:
        return max(1, int(os.environ.get("UNIVALENS_THREADS", default)))
    except ValueError:
        return default


def parallel_map(fn, items):
    """Apply ``fn`` concurrently; results are returned in input order."""
    from concurrent.futures import ThreadPoolExecutor

    items = list(items)
    n = min(worker_count(), len(items))
    if n <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
