"""Huffman coding over frequency tuples with positional code assignment.

The algorithm works on a pool of work items, each a tuple whose first
entry is the accumulated frequency, whose middle entries are per-merge
depth accumulators, and whose last entry is the tuple of original
positions it covers.  Codewords are grown by prepending one bit per merge,
so entry i of the result always corresponds to frequency i of the input.

Tie-breaking is fully deterministic: when several pool entries share the
smallest totals, the later positions merge first.  Encoder and decoder
must run the identical rule to regenerate identical codewords.
"""

from __future__ import annotations

from typing import Sequence

from .bitstream import BitString


def append(p: tuple, q) -> tuple:
    """Append element q to tuple p."""
    return (*p, q)


def remove_at(p: tuple, i: int) -> tuple:
    """Remove the i-th element (1-based) from tuple p."""
    if not 1 <= i <= len(p):
        raise IndexError(f"index {i} out of range for tuple of length {len(p)}")
    return p[: i - 1] + p[i:]


def concat(u: tuple, v: tuple) -> tuple:
    """Concatenate two tuples."""
    return u + v


def merge(m: tuple, n: tuple) -> tuple:
    """Combine two work items: totals summed, every depth accumulator
    incremented, member position tuples concatenated."""
    return (
        m[0] + n[0],
        *(d + 1 for d in m[1:-1]),
        *(d + 1 for d in n[1:-1]),
        concat(m[-1], n[-1]),
    )


def _smallest_pair(pool: Sequence[tuple]) -> tuple[int, int]:
    # two entries with the smallest totals; equal totals prefer the later
    # position (required to match the published per-context codes)
    best1 = best2 = None
    for q, item in enumerate(pool):
        key = (item[0], -q)
        if best1 is None or key < best1:
            best1, best2 = key, best1
        elif best2 is None or key < best2:
            best2 = key
    i, j = sorted((-best1[1], -best2[1]))
    return i, j


def code_pairs(freqs: Sequence[int]) -> list[tuple[int, int]]:
    """Codewords as (value, length) integer pairs, positionally aligned.

    The raw form of `huffman` used on hot paths where wrapping every
    codeword in a BitString would dominate.
    """
    k = len(freqs)
    if k == 0:
        raise ValueError("frequency tuple must not be empty")
    if any(f < 1 for f in freqs):
        raise ValueError("frequencies must be >= 1")

    if k == 1:
        return [(0, 1)]
    if k == 2:
        return [(0, 1), (1, 1)]  # single merge, position order
    codes = [(0, 0)] * k  # (value, length), bits prepended at the front
    pool = [(f, 0, (q,)) for q, f in enumerate(freqs)]
    while len(pool) > 1:
        i, j = _smallest_pair(pool)
        for x in pool[i][-1]:
            value, length = codes[x]
            codes[x] = (value, length + 1)
        for x in pool[j][-1]:
            value, length = codes[x]
            codes[x] = ((1 << length) | value, length + 1)
        merged = merge(pool[i], pool[j])
        del pool[j]
        del pool[i]
        pool.append(merged)
    return codes


def huffman(freqs: Sequence[int]) -> tuple[tuple[BitString, int], ...]:
    """Build a prefix code for a tuple of positive frequencies.

    Returns one (codeword, length) pair per input frequency, positionally
    aligned.  A single frequency gets the one-bit codeword "0".  The total
    cost sum(f_i * l_i) is minimal over all prefix codes.
    """
    return tuple(
        (BitString.from_int(value, length), length)
        for value, length in code_pairs(freqs)
    )
