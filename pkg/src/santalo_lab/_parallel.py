"""Ordered thread-pool map used for direction and ray sweeps.

Each item is computed independently and results are collected in input
order, so the output never depends on the thread count.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager

_state = {"threads": max(1, int(os.environ.get("SANTALO_THREADS", "1")))}


def get_threads() -> int:
    return _state["threads"]


def set_threads(n: int) -> None:
    _state["threads"] = max(1, int(n))


@contextmanager
def threads(n: int):
    old = get_threads()
    set_threads(n)
    try:
        yield
    finally:
        set_threads(old)


def max_threads() -> int:
    return os.cpu_count() or 1


def parallel_map(fn, items):
    items = list(items)
    n = get_threads()
    if n <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
