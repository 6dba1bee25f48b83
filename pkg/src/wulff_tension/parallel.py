"""Worker-count policy and an order-preserving parallel map."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

THREADS_ENV = "WULFF_TENSION_THREADS"


def worker_count(requested: int | None = None) -> int:
    """Number of workers, capped by ``WULFF_TENSION_THREADS`` when set."""
    n = requested if requested is not None else (os.cpu_count() or 1)
    cap = os.environ.get(THREADS_ENV)
    if cap:
        n = min(n, int(cap))
    return max(1, int(n))


def ordered_map(fn, items, workers: int | None = None) -> list:
    """``[fn(i) for i in items]`` evaluated concurrently, results in input order."""
    items = list(items)
    n = worker_count(workers)
    if n == 1 or len(items) <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
