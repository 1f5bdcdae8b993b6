"""Bidirectional ballot sequences: predicates, enumeration and exact counting.

A word b_1..b_n is a BBS when every prefix and every suffix holds strictly more
ones than zeros, i.e. its height path has a unique minimum at the start and a
unique maximum at the end.
"""

from __future__ import annotations

import functools
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import accumulate, product

import numpy as np

from ballotope.core.exceptions import PreconditionError
from ballotope.core.models import BitSequence, HeightPath, SumsetReport
from ballotope.core.utils import require_positive
from ballotope.decorators import log_action, within_cap

logger = logging.getLogger(__name__)

_SCAN_CHUNK = 1 << 16


def _as_sequence(b: BitSequence | str) -> BitSequence:
    return b if isinstance(b, BitSequence) else BitSequence.parse(b)


def bbs_to_path(b: BitSequence | str) -> HeightPath:
    """Heights of the lattice path: '1' steps up, '0' steps down."""
    seq = _as_sequence(b)
    return HeightPath(tuple(accumulate((1 if x else -1 for x in seq.bits), initial=0)))


def path_to_bbs(path: HeightPath) -> BitSequence:
    """Inverse of bbs_to_path."""
    h = path.heights
    if path.length < 1:
        raise PreconditionError("a path of length 0 has no bit sequence")
    return BitSequence(tuple(1 if h[t + 1] > h[t] else 0 for t in range(path.length)))


def has_strict_endpoint_extrema(path: HeightPath) -> bool:
    """Unique minimum at index 0 and unique maximum at the last index."""
    h = path.heights
    return all(x > h[0] for x in h[1:]) and all(x < h[-1] for x in h[:-1])


def is_bbs(b: BitSequence | str) -> bool:
    """Every prefix and every suffix has strictly more ones than zeros."""
    return has_strict_endpoint_extrema(bbs_to_path(b))


def append_one(b: BitSequence | str) -> BitSequence:
    """Append a trailing 1; maps B_l injectively into B_(l+1)."""
    seq = _as_sequence(b)
    return BitSequence((*seq.bits, 1))


def _scan_chunk(n: int, start: int, stop: int) -> np.ndarray:
    """Integers in [start, stop) whose n-bit words (b_1 = MSB) are BBS."""
    words = np.arange(start, stop, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    bits = (words[:, None] >> shifts[None, :]) & 1
    heights = np.cumsum(2 * bits - 1, axis=1)
    ok = np.all(heights > 0, axis=1) & np.all(heights[:, :-1] < heights[:, -1:], axis=1)
    return words[ok]


def _scan(n: int, threads: int) -> list[np.ndarray]:
    total = 1 << n
    ranges = [(s, min(s + _SCAN_CHUNK, total)) for s in range(0, total, _SCAN_CHUNK)]
    if threads <= 1 or len(ranges) == 1:
        return [_scan_chunk(n, a, b) for a, b in ranges]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        # map() keeps chunk order, so the result does not depend on threads
        return list(pool.map(lambda r: _scan_chunk(n, *r), ranges))


@log_action("ENUMERATE_BBS")
@within_cap("brutecap")
def enumerate_bbs(n: int, *, cap: int | None = None, threads: int = 1) -> list[BitSequence]:
    """All BBS of length n in lexicographic order (2^n scan).

    Raises:
        CapExceededError: If n is above the brute-force cap (default 22).
    """
    require_positive(n, "n")
    found = np.concatenate(_scan(n, threads))
    return [
        BitSequence(tuple(int(ch) for ch in format(int(x), f"0{n}b"))) for x in found
    ]


@log_action("COUNT_BBS_BRUTE")
@within_cap("brutecap")
def count_bbs_brute(n: int, *, cap: int | None = None, threads: int = 1) -> int:
    """|enumerate_bbs(n)| without materialising the words."""
    require_positive(n, "n")
    return int(sum(len(chunk) for chunk in _scan(n, threads)))


def _strip_step(cur: np.ndarray) -> np.ndarray:
    nxt = np.zeros(len(cur), dtype=object)
    nxt[1:] += cur[:-1]
    nxt[:-1] += cur[1:]
    return nxt


def _strip_start(h: int) -> np.ndarray:
    # heights 1..h-1 are indices 0..h-2; the first step always lands on 1
    cur = np.zeros(h - 1, dtype=object)
    cur[0] = 1
    return cur


def count_bbs(n: int) -> int:
    """B_n exactly, by the banded strip DP.

    Paths ending at height h with every interior height strictly inside (0, h)
    are counted per h (h = n mod 2) and summed.
    """
    require_positive(n, "n")
    if n == 1:
        return 1
    total = 0
    for h in range(2 if n % 2 == 0 else 3, n + 1, 2):
        cur = _strip_start(h)
        for _ in range(n - 2):
            cur = _strip_step(cur)
        total += int(cur[h - 2])
    return total


@functools.lru_cache(maxsize=8)
def _table(upto: int) -> tuple[int, ...]:
    counts = [0] * (upto + 1)
    counts[1] = 1
    for h in range(2, upto + 1):
        cur = _strip_start(h)
        for s in range(upto - 1):
            counts[s + 2] += int(cur[h - 2])
            if s + 2 == upto:
                break
            cur = _strip_step(cur)
    return tuple(counts)


@log_action("COUNT_BBS_TABLE")
def count_bbs_table(upto: int) -> list[int]:
    """[B_1, ..., B_upto] in one pass over strip heights."""
    require_positive(upto, "upto")
    return list(_table(upto)[1:])


def sumset_fullness(b: BitSequence | str) -> SumsetReport:
    """Check A+A = {2..2n} and A-A = {-(n-1)..n-1} for A = {i : b_i = 1}."""
    seq = _as_sequence(b)
    n = len(seq)
    a = sorted(seq.ones())
    sums = frozenset(x + y for x, y in product(a, repeat=2))
    diffs = frozenset(x - y for x, y in product(a, repeat=2))
    return SumsetReport(
        sumset_full=sums == frozenset(range(2, 2 * n + 1)),
        diffset_full=diffs == frozenset(range(-(n - 1), n)),
        sumset=sums,
        diffset=diffs,
    )


def ratio(n: int) -> Fraction:
    """n * B_n / 2^n exactly."""
    require_positive(n, "n")
    return Fraction(n * count_bbs(n), 2**n)


def ratio_table(n_min: int, n_max: int) -> list[tuple[int, Fraction]]:
    """(n, n * B_n / 2^n) for n_min <= n <= n_max."""
    require_positive(n_min, "n_min")
    if n_max < n_min:
        raise PreconditionError(f"n_max={n_max} is below n_min={n_min}")
    counts = count_bbs_table(n_max)
    return [(n, Fraction(n * counts[n - 1], 2**n)) for n in range(n_min, n_max + 1)]
