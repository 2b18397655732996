"""Fan-out of independent chunks of work using noodles.

The work is always split into the same chunks whatever the number of workers,
and the partial results are returned in chunk order, so every merge performed
by the callers is deterministic.

API
---
.. autofunction:: run_chunks
.. autofunction:: chunk_items

"""

__all__ = ["run_chunks", "chunk_items"]

import logging
from typing import Any, Callable, Iterable, List, Sequence, Tuple, TypeVar

from more_itertools import chunked
from noodles import gather, run_parallel, schedule

# Starting logger
logger = logging.getLogger(__name__)

T = TypeVar('T')


def run_chunks(function: Callable[..., T], arguments: Sequence[Tuple[Any, ...]],
               workers: int = 1) -> List[T]:
    """Call ``function(*args)`` for every entry of ``arguments``.

    Parameters
    ----------
    function
        Pure function evaluating one chunk.
    arguments
        Positional arguments of each chunk.
    workers
        Number of threads used by the noodles runner; ``1`` runs the chunks
        sequentially in the calling thread.

    Returns
    -------
    list
        Results in the order of ``arguments``.

    """
    if workers < 1:
        raise ValueError(f"the number of workers must be positive, got {workers}")
    if workers == 1 or len(arguments) <= 1:
        return [function(*args) for args in arguments]

    scheduled = schedule(function)
    promises = gather(*[scheduled(*args) for args in arguments])
    logger.debug(f"scheduling {len(arguments)} chunks on {workers} threads")
    return list(run_parallel(promises, n_threads=workers))


def chunk_items(items: Iterable[T], size: int) -> List[List[T]]:
    """Split ``items`` into consecutive chunks of ``size`` elements."""
    return [list(xs) for xs in chunked(items, size)]

