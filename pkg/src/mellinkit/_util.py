"""Small shared helpers."""

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import config


def map_blocks(fn, array, block, out_dtype=complex):
    """Apply ``fn`` to consecutive blocks of a 1-d array, concatenated in
    order.  Uses a thread pool when MELLIN_KIT_THREADS allows more than one
    worker; results are independent of the schedule because blocks are
    disjoint and reassembled positionally."""
    array = np.atleast_1d(array)
    blocks = [array[lo : lo + block] for lo in range(0, len(array), block)]
    if not blocks:
        return np.empty(0, dtype=out_dtype)
    workers = min(config.thread_count(), len(blocks))
    if workers <= 1:
        parts = [fn(b) for b in blocks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(fn, blocks))
    return np.concatenate(parts)
