"""The bidirectional ballot cone and polytope over exact rationals.

Coordinates are gap vectors [l_1, g_1, ..., l_n] in dimension m = 2n - 1. The
cone B_n is cut out by the 2(n-1) left/right ballot vectors; the polytope P_n
is its intersection with the unit cube. Rotations are always left-rotations
by an explicit amount k.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import accumulate

import numpy as np

from ballotope.core.exceptions import CheckFailedError, PreconditionError
from ballotope.core.models import (
    BallotVector,
    CutReport,
    GapVector,
    IntervalFamily,
    MembershipReport,
    PartitionReport,
    VolumeReport,
)
from ballotope.core.utils import require_positive
from ballotope.decorators import log_action
from ballotope.infra.settings import settings

logger = logging.getLogger(__name__)

MC_BLOCK = 1 << 16


def ballot_vectors(n: int) -> list[BallotVector]:
    """L_n (by depth) followed by R_n (by depth); empty for n = 1."""
    require_positive(n, "n")
    m = 2 * n - 1
    left = [
        BallotVector((1, -1) * k + (0,) * (m - 2 * k), "left", k) for k in range(1, n)
    ]
    right = [
        BallotVector((0,) * (m - 2 * k) + (-1, 1) * k, "right", k) for k in range(1, n)
    ]
    return left + right


def ballot_dots(v: GapVector) -> list[Fraction]:
    """v . w for every w in ballot_vectors(v.n), in the same order.

    Left depth k pairs with the alternating prefix of length 2k, right depth
    k with the alternating suffix of length 2k.
    """
    m, n = v.m, v.n
    signed = [x if i % 2 == 0 else -x for i, x in enumerate(v.entries)]
    prefix = list(accumulate(signed, initial=Fraction(0)))
    total = prefix[-1]
    left = [prefix[2 * k] for k in range(1, n)]
    right = [total - prefix[m - 2 * k] for k in range(1, n)]
    return left + right


def membership(v: GapVector) -> MembershipReport:
    """Exact cone / cone-interior / polytope membership of v."""
    dots = ballot_dots(v)
    vectors = ballot_vectors(v.n)
    low = min(dots) if dots else None
    in_cone = low is None or low >= 0
    return MembershipReport(
        in_cone=in_cone,
        in_polytope=in_cone and v.in_unit_cube(),
        in_cone_interior=low is None or low > 0,
        min_ballot_dot=low,
        violated=tuple(w for w, d in zip(vectors, dots, strict=True) if d < 0),
    )


def in_cone(v: GapVector) -> bool:
    return all(d >= 0 for d in ballot_dots(v))


def min_ballot_dot(v: GapVector) -> Fraction | None:
    dots = ballot_dots(v)
    return min(dots) if dots else None


def gaps_from_intervals(family: IntervalFamily) -> GapVector:
    """[b_1 - a_1, a_2 - b_1, b_2 - a_2, ..., b_n - a_n]."""
    pts = family.endpoints
    return GapVector(tuple(pts[i + 1] - pts[i] for i in range(len(pts) - 1)))


def intervals_from_gaps(v: GapVector) -> IntervalFamily:
    """Endpoints as partial sums of v, starting at 0."""
    if not v.is_nonnegative():
        raise PreconditionError(f"gap vector has a negative entry: {v.to_payload()}")
    return IntervalFamily(tuple(accumulate(v.entries, initial=Fraction(0))))


def _measure_in(family: IntervalFamily, lo: Fraction, hi: Fraction) -> Fraction:
    total = Fraction(0)
    for a, b in family.intervals:
        overlap = min(b, hi) - max(a, lo)
        if overlap > 0:
            total += overlap
    return total


def is_gerrymander_measure(family: IntervalFamily) -> bool:
    """mu(A n [0,t]) >= t/2 and mu(A n [b-t,b]) >= t/2 for all t in [0,b].

    Both measures are piecewise linear in t with breakpoints at endpoints, so
    the endpoints (forward and mirrored) are the only t that need checking.
    """
    b = family.right_end
    forward = set(family.endpoints)
    backward = {b - x for x in family.endpoints}
    for t in forward:
        if 2 * _measure_in(family, Fraction(0), t) < t:
            return False
    for t in backward:
        if 2 * _measure_in(family, b - t, b) < t:
            return False
    return True


def rotate(v: GapVector, k: int) -> GapVector:
    """Left-rotation by k (taken mod m): result_i = v_((i - 1 + k) mod m) + 1."""
    k %= v.m
    return GapVector(v.entries[k:] + v.entries[:k])


def scale(v: GapVector, alpha: Fraction | int) -> GapVector:
    """alpha * v for alpha > 0."""
    a = Fraction(alpha)
    if a <= 0:
        raise PreconditionError(f"scale factor must be positive, got {a}")
    return GapVector(tuple(a * x for x in v.entries))


def generator_vectors(n: int) -> list[tuple[int, ...]]:
    """w_k = sum_{i<=k} tau^i(w) for 0 <= k <= 2n-2.

    w = [1, -1, 0, ..., 0] and tau moves every entry two places to the right
    (cyclically). The first 2n-2 vectors are V_n; the last one is zero.
    """
    require_positive(n, "n")
    m = 2 * n - 1
    acc = [0] * m
    out: list[tuple[int, ...]] = []
    for i in range(m):
        acc[(2 * i) % m] += 1
        acc[(2 * i + 1) % m] -= 1
        out.append(tuple(acc))
    return out


def argmin_cut(v: GapVector) -> int:
    """Rotation found by minimising v . w_l over the generator vectors.

    With l the smallest minimiser, v lies in the region cut out by
    tau^(l+1)(V_n), i.e. rotate(v, 2(l+1) mod m) is in the cone.
    """
    m = v.m
    dots = [
        sum((c * x for c, x in zip(w, v.entries, strict=True) if c), Fraction(0))
        for w in generator_vectors(v.n)
    ]
    ell = dots.index(min(dots))
    return (2 * (ell + 1)) % m


def necklace_inequalities(v: GapVector) -> bool:
    """Pairwise prefix and suffix sums of a laid-out necklace are all >= 0.

    sum_{i<=k} (v_{2i-1} - v_{2i}) >= 0 and
    sum_{i<=k} (v_{2n-(2i-1)} - v_{2n-2i}) >= 0 for 1 <= k <= n-1.
    """
    x = (Fraction(0), *v.entries)  # 1-indexed
    n = v.n
    front = Fraction(0)
    back = Fraction(0)
    for i in range(1, n):
        front += x[2 * i - 1] - x[2 * i]
        back += x[2 * n - (2 * i - 1)] - x[2 * n - 2 * i]
        if front < 0 or back < 0:
            return False
    return True


def _require_nonnegative(v: GapVector) -> None:
    if not v.is_nonnegative():
        raise PreconditionError(f"necklace entries must be >= 0: {v.to_payload()}")


def cut_necklace(v: GapVector) -> CutReport:
    """Every rotation of v landing in the cone, plus the argmin construction.

    Raises:
        PreconditionError: If an entry is negative.
        CheckFailedError: If no cut exists or the argmin cut is not valid.
    """
    _require_nonnegative(v)
    cuts = tuple(k for k in range(v.m) if in_cone(rotate(v, k)))
    if not cuts:
        raise CheckFailedError("partition-cover", f"no rotation of {v.to_payload()} is in the cone")
    via_argmin = argmin_cut(v)
    if via_argmin not in cuts:
        raise CheckFailedError(
            "necklace-argmin",
            f"argmin rotation {via_argmin} is not among the cuts {list(cuts)}",
        )
    return CutReport(
        cuts=cuts,
        canonical=cuts[0],
        unique=len(cuts) == 1,
        argmin_cut=via_argmin,
        rotated=rotate(v, cuts[0]),
    )


def strict_regions(v: GapVector) -> tuple[int, ...]:
    """Rotations k whose min ballot dot is strictly positive."""
    out = []
    for k in range(v.m):
        low = min_ballot_dot(rotate(v, k))
        if low is None or low > 0:
            out.append(k)
    return tuple(out)


def classify_partition(v: GapVector) -> PartitionReport:
    """Regions of the cube partition {rotate^-k(P_n)} containing v.

    Raises:
        PreconditionError: If an entry lies outside [0, 1].
    """
    if not v.in_unit_cube():
        raise PreconditionError(f"point must lie in [0,1]^m: {v.to_payload()}")
    regions = tuple(k for k in range(v.m) if in_cone(rotate(v, k)))
    generic = len(regions) == 1 and strict_regions(v) == regions
    return PartitionReport(regions=regions, generic=generic)


def cone_dots_array(points: np.ndarray) -> np.ndarray:
    """Row-wise ballot dots of an (N, m) array, columns ordered as ballot_vectors."""
    m = points.shape[1]
    signs = np.where(np.arange(m) % 2 == 0, 1, -1).astype(points.dtype)
    cs = np.cumsum(points * signs, axis=1)
    left = cs[:, 1 : m - 1 : 2]
    right = cs[:, -1:] - cs[:, m - 3 :: -2] if m >= 3 else cs[:, :0]
    return np.concatenate([left, right], axis=1)


def _float_hits(points: np.ndarray) -> int:
    dots = cone_dots_array(points)
    return int(np.count_nonzero(np.all(dots >= 0, axis=1)))


def _block_hits(n: int, seed: int, block: int, size: int) -> int:
    stream = np.random.SeedSequence(entropy=seed, spawn_key=(block,))
    rng = np.random.Generator(np.random.Philox(stream))
    return _float_hits(rng.random((size, 2 * n - 1)))


@log_action("MC_VOLUME", verbose=True)
def mc_volume(
    n: int,
    samples: int,
    seed: int | None = None,
    *,
    threads: int = 1,
) -> VolumeReport:
    """Monte-Carlo estimate of Vol(P_n) from uniform points of [0,1]^m.

    Sample i belongs to block i // MC_BLOCK, and block b is drawn from its own
    Philox stream keyed by (seed, b). Threads only decide which worker draws
    a block, so the estimate depends on (n, samples, seed) alone.
    """
    require_positive(n, "n")
    require_positive(samples, "samples")
    seed = settings.get_int("seed") if seed is None else seed
    if seed < 0:
        raise PreconditionError(f"seed must be non-negative, got {seed}")
    jobs = [
        (b, min(MC_BLOCK, samples - b * MC_BLOCK))
        for b in range(math.ceil(samples / MC_BLOCK))
    ]

    def run(job: tuple[int, int]) -> int:
        return _block_hits(n, seed, *job)

    if threads <= 1 or len(jobs) == 1:
        hits = sum(run(j) for j in jobs)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            hits = sum(pool.map(run, jobs))

    p = hits / samples
    return VolumeReport(
        n=n,
        samples=samples,
        seed=seed,
        hits=hits,
        estimate=p,
        stderr=math.sqrt(p * (1 - p) / samples),
    )
