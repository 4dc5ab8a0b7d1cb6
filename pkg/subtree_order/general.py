"""Helpers shared by all modules: exact ratios, rendering, chunking and
worker pools."""
import concurrent.futures
import logging
import os
from collections import deque
from fractions import Fraction
from itertools import zip_longest


_LOGGER = logging.getLogger(__name__)
DECIMAL_PLACES = 6

#: Exact quotient of two arbitrary-precision integers in lowest terms;
#: every mean, density and defect is one.
ExactRatio = Fraction


def grouper(iterable, block_size, fillvalue=None) -> list:
    """Group an iterable into chunks of block_size.

    Adapted from
    https://docs.python.org/3/library/itertools.html#itertools-recipes.

    :param list iterable:  list to break into chunks
    :param int block_size:  chunk size
    :param fillvalue:  fill in chunks without values
    :returns:  list of chunks
    """
    args = [iter(iterable)] * block_size
    return zip_longest(*args, fillvalue=fillvalue)


def chunked(iterable, block_size):
    """Group an iterable into lists of at most block_size items.

    Unlike :func:`grouper`, the last chunk is not padded.

    :param iterable:  items to group
    :param int block_size:  chunk size
    :returns:  generator of lists
    """
    if block_size < 1:
        err = f"Chunk size must be positive, got {block_size}."
        raise ValueError(err)
    sentinel = object()
    for block in grouper(iterable, block_size, fillvalue=sentinel):
        yield [item for item in block if item is not sentinel]


def format_ratio(value, places=DECIMAL_PLACES) -> str:
    """Render an exact ratio as ``num/den (~decimal)``.

    :param Fraction value:  value to render
    :param int places:  digits after the decimal point
    :returns:  formatted string
    """
    value = Fraction(value)
    return (
        f"{value.numerator}/{value.denominator} "
        f"(~{float(value):.{places}f})"
    )


def format_exact(value) -> str:
    """Render an exact ratio as ``num/den`` with no decimal.

    :param Fraction value:  value to render
    :returns:  formatted string
    """
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def popcount(mask) -> int:
    """Number of set bits of a nonnegative integer."""
    return bin(mask).count("1")


def resolve_jobs(jobs) -> int:
    """Worker count: ``None`` means every available CPU."""
    if jobs is None:
        return os.cpu_count() or 1
    if int(jobs) != jobs or jobs < 1:
        err = f"Worker count must be a positive integer, got {jobs}."
        raise ValueError(err)
    return int(jobs)


def parallel_map(function, items, jobs=1):
    """Apply a picklable function to items, yielding results in order.

    With one worker everything runs in-process.  Otherwise items go to a
    :class:`concurrent.futures.ProcessPoolExecutor` with a bounded number
    of pending futures.

    :param function:  module-level callable
    :param items:  iterable of arguments
    :param int jobs:  worker count, None for all CPUs
    :returns:  generator of results in submission order
    """
    jobs = resolve_jobs(jobs)
    if jobs == 1:
        for item in items:
            yield function(item)
        return
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as executor:
        pending = deque()
        for item in items:
            pending.append(executor.submit(function, item))
            if len(pending) >= 4 * jobs:
                yield pending.popleft().result()
        while pending:
            yield pending.popleft().result()
