"""Bounded, order-preserving worker pool."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Iterator, Optional, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

WORKERS_ENV = "SPEXGRAPH_WORKERS"


def default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _iter_pool(fn, items: Sequence, workers: int, chunksize: int) -> Iterator:
    with ProcessPoolExecutor(max_workers=workers) as ex:
        yield from ex.map(fn, items, chunksize=chunksize)


def parallel_map(
    fn: Callable[[T], R],
    items: Iterable[T],
    workers: Optional[int] = 1,
    lazy: bool = False,
    chunksize: Optional[int] = None,
):
    """``map(fn, items)`` over ``workers`` processes; results keep input order.

    With one worker everything runs in-process, which is also what makes
    output independent of the worker count: the merge order is always the
    input order.
    """
    workers = default_workers() if workers is None else workers
    if workers <= 1:
        it = map(fn, items)
        return it if lazy else list(it)
    items = list(items)
    if chunksize is None:
        chunksize = max(1, len(items) // (workers * 8))
    it = _iter_pool(fn, items, workers, chunksize)
    return it if lazy else list(it)
