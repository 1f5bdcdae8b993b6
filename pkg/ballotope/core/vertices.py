"""Vertices of the ballot polytope and their ballot-sequence bijections.

Every vertex of P_n is a 0/1 vector, so Q_n is found by filtering the cube
vertices. Q_n corresponds to BBS of length 2n+3 through the padded slope
path, and the cone-interior vertices T_n to BBS of length 2n-1 directly.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import accumulate

import numpy as np

from ballotope.core.exceptions import (
    CheckFailedError,
    NotABallotSequenceError,
    NotAVertexError,
    NotInteriorError,
    PreconditionError,
)
from ballotope.core.geometry import cone_dots_array, membership
from ballotope.core.models import (
    BitSequence,
    BoundRow,
    CoverReport,
    GapVector,
    SlopePath,
    VertexSet,
)
from ballotope.core.sequences import count_bbs_table, is_bbs
from ballotope.core.utils import format_rational, require_positive
from ballotope.decorators import log_action, within_cap

logger = logging.getLogger(__name__)


def pad_alpha(v: GapVector) -> GapVector:
    """[1, 0, v_1, ..., v_m, 0, 1]."""
    one, zero = Fraction(1), Fraction(0)
    return GapVector((one, zero, *v.entries, zero, one))


def slope_vector(v: GapVector) -> SlopePath:
    """lambda_i = (-1)^(i-1) (2 v_i - 1) and f(t) = lambda_1 + ... + lambda_t."""
    slopes = tuple(
        (2 * x - 1) if i % 2 == 0 else (1 - 2 * x) for i, x in enumerate(v.entries)
    )
    return SlopePath(slopes, tuple(accumulate(slopes, initial=Fraction(0))))


def path_band(v: GapVector) -> bool:
    """f(0) - 1 <= f(t) <= f(m) + 1 at every integer t of the slope path."""
    values = slope_vector(v).values
    return all(values[0] - 1 <= f <= values[-1] + 1 for f in values)


def _cube_bits(m: int) -> np.ndarray:
    words = np.arange(1 << m, dtype=np.int64)
    shifts = np.arange(m - 1, -1, -1, dtype=np.int64)
    return (words[:, None] >> shifts[None, :]) & 1


@log_action("ENUMERATE_VERTICES")
@within_cap("vertexcap")
def enumerate_vertices(n: int, *, cap: int | None = None) -> VertexSet:
    """Q_n by scanning all 2^(2n-1) cube vertices, lexicographically sorted.

    Raises:
        CapExceededError: If n is above the vertex cap (default 10).
    """
    require_positive(n, "n")
    bits = _cube_bits(2 * n - 1)
    dots = cone_dots_array(bits)
    keep = np.all(dots >= 0, axis=1)
    interior = np.all(dots > 0, axis=1)[keep]
    vertices = tuple(GapVector(tuple(Fraction(int(x)) for x in row)) for row in bits[keep])
    logger.info("vertices_enumerated", extra={"n": n, "count": len(vertices)})
    return VertexSet(n=n, vertices=vertices, interior_flags=tuple(bool(f) for f in interior))


def _require_vertex(v: GapVector) -> None:
    if not v.is_cube_vertex():
        raise NotAVertexError(
            f"{v.to_payload()} is not a vertex of P_{v.n}: coordinates must be 0 or 1"
        )
    report = membership(v)
    if not report.in_cone:
        raise NotAVertexError(
            f"{v.to_payload()} is not a vertex of P_{v.n}: negative dot with "
            f"{[w.to_payload() for w in report.violated]}"
        )


def _bits_from_signs(path: SlopePath) -> BitSequence:
    signs = path.signs()
    if any(s == 0 for s in signs):
        raise CheckFailedError("slope-signs", "a zero slope has no bit")
    return BitSequence(tuple(1 if s > 0 else 0 for s in signs))


def vertex_to_bbs(v: GapVector) -> BitSequence:
    """v in Q_n to the BBS of length 2n+3 read off the slopes of alpha(v).

    Raises:
        NotAVertexError: If v is not a 0/1 point of P_n.
    """
    _require_vertex(v)
    return _bits_from_signs(slope_vector(pad_alpha(v)))


def _require_bbs(b: BitSequence, *, min_length: int) -> None:
    if len(b) < min_length or len(b) % 2 == 0:
        raise NotABallotSequenceError(
            str(b), f"length must be odd and >= {min_length}, got {len(b)}"
        )
    if not is_bbs(b):
        raise NotABallotSequenceError(str(b), "a prefix or suffix has too many zeros")


def bbs_to_vertex(b: BitSequence | str) -> GapVector:
    """Inverse of vertex_to_bbs: w_j = 1 iff j = b_(j+2) (mod 2), 1 <= j <= 2n-1."""
    seq = b if isinstance(b, BitSequence) else BitSequence.parse(b)
    _require_bbs(seq, min_length=5)
    m = len(seq) - 4
    w = GapVector(tuple(Fraction(int(j % 2 == seq.at(j + 2) % 2)) for j in range(1, m + 1)))
    if not membership(w).in_polytope:
        raise CheckFailedError("vertex-bijection", f"{seq} maps outside P_{w.n}")
    return w


def interior_vertex_to_bbs(v: GapVector) -> BitSequence:
    """v in T_n (n >= 2) to the BBS of length 2n-1 read off its own slopes.

    Raises:
        PreconditionError: If n = 1 (no ballot vectors, the map is not defined).
        NotAVertexError: If v is not in Q_n.
        NotInteriorError: If v lies on the boundary of the cone.
    """
    if v.n < 2:
        raise PreconditionError("the interior bijection needs n >= 2")
    _require_vertex(v)
    report = membership(v)
    if not report.in_cone_interior:
        low = report.min_ballot_dot
        raise NotInteriorError(
            f"{v.to_payload()} is on the cone boundary "
            f"(min ballot dot {format_rational(low) if low is not None else 'none'})"
        )
    return _bits_from_signs(slope_vector(v))


def bbs_to_interior_vertex(b: BitSequence | str) -> GapVector:
    """Inverse of interior_vertex_to_bbs: v_j = b_j for odd j, 1 - b_j for even j."""
    seq = b if isinstance(b, BitSequence) else BitSequence.parse(b)
    _require_bbs(seq, min_length=3)
    v = GapVector(
        tuple(Fraction(x if j % 2 else 1 - x) for j, x in enumerate(seq.bits, start=1))
    )
    if not membership(v).in_cone_interior:
        raise CheckFailedError("interior-bijection", f"{seq} maps outside T_{v.n}")
    return v


@log_action("CUBE_COVER")
@within_cap("vertexcap")
def cube_cover_counts(n: int, *, cap: int | None = None) -> CoverReport:
    """Count cube vertices per rotated copy of P_n (and of its cone interior)."""
    require_positive(n, "n")
    m = 2 * n - 1
    bits = _cube_bits(m)
    covered = np.zeros(len(bits), dtype=np.int64)
    strict = np.zeros(len(bits), dtype=np.int64)
    per_shift: list[int] = []
    interior_per_shift: list[int] = []
    for k in range(m):
        dots = cone_dots_array(np.roll(bits, -k, axis=1))
        inside = np.all(dots >= 0, axis=1)
        inner = np.all(dots > 0, axis=1)
        covered += inside
        strict += inner
        per_shift.append(int(np.count_nonzero(inside)))
        interior_per_shift.append(int(np.count_nonzero(inner)))
    return CoverReport(
        n=n,
        vertices_total=1 << m,
        per_shift=tuple(per_shift),
        interior_per_shift=tuple(interior_per_shift),
        uncovered=int(np.count_nonzero(covered == 0)),
        multiply_interior=int(np.count_nonzero(strict > 1)),
    )


@log_action("VERIFY_BOUNDS")
def verify_bounds(l_min: int, l_max: int) -> list[BoundRow]:
    """2^l / (16 (l-4)) <= B_l <= 2^l / l for every odd l in [l_min, l_max].

    The lower bound is only asserted from l = 5 on.
    """
    require_positive(l_min, "l_min")
    if l_max < l_min:
        raise PreconditionError(f"l_max={l_max} is below l_min={l_min}")
    counts = count_bbs_table(l_max)
    rows: list[BoundRow] = []
    for ell in range(l_min + (l_min % 2 == 0), l_max + 1, 2):
        count = counts[ell - 1]
        lower = Fraction(2**ell, 16 * (ell - 4)) if ell >= 5 else None
        upper = Fraction(2**ell, ell)
        rows.append(
            BoundRow(
                ell=ell,
                count=count,
                lower=lower,
                upper=upper,
                lower_ok=lower is None or lower <= count,
                upper_ok=count <= upper,
            )
        )
    return rows
