"""Domain models: sequences, gap vectors, interval families and reports.

All models are immutable values; exact quantities are Fractions or ints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Literal

from ballotope.core.exceptions import PreconditionError
from ballotope.core.utils import format_rational, parse_bits, require_odd_length


def _vec(entries: tuple[Fraction, ...]) -> list[str]:
    return [format_rational(x) for x in entries]


@dataclass(frozen=True)
class BitSequence:
    """Finite 0/1 word b_1..b_n (stored 0-based, read 1-based)."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.bits) < 1:
            raise PreconditionError("a bit sequence has length >= 1")
        if any(b not in (0, 1) for b in self.bits):
            raise PreconditionError(f"bits must be 0 or 1, got {self.bits!r}")

    @classmethod
    def parse(cls, raw: str) -> BitSequence:
        """Build from a string over {'0','1'}."""
        return cls(parse_bits(raw))

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)

    def at(self, j: int) -> int:
        """Return b_j (1-indexed)."""
        if not 1 <= j <= len(self.bits):
            raise IndexError(f"b_{j} is out of range for length {len(self.bits)}")
        return self.bits[j - 1]

    def ones(self) -> frozenset[int]:
        """A = {i : b_i = 1}."""
        return frozenset(i for i, b in enumerate(self.bits, start=1) if b == 1)


@dataclass(frozen=True)
class HeightPath:
    """Standard lattice path given by its heights, heights[0] = 0."""

    heights: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.heights or self.heights[0] != 0:
            raise PreconditionError("a height path starts at height 0")
        for t in range(len(self.heights) - 1):
            if abs(self.heights[t + 1] - self.heights[t]) != 1:
                raise PreconditionError(f"step {t + 1} of the path is not +1/-1")

    @property
    def length(self) -> int:
        """Number of steps."""
        return len(self.heights) - 1


@dataclass(frozen=True)
class GapVector:
    """Alternating interval lengths and gaps [l_1, g_1, ..., l_n]."""

    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        require_odd_length(self.entries, "a gap vector")
        object.__setattr__(self, "entries", tuple(Fraction(x) for x in self.entries))

    @classmethod
    def of(cls, *values: Fraction | int | str) -> GapVector:
        """Shorthand: GapVector.of(1, "1/2", 0)."""
        return cls(tuple(Fraction(v) for v in values))

    @property
    def m(self) -> int:
        """Dimension 2n-1."""
        return len(self.entries)

    @property
    def n(self) -> int:
        """Number of intervals."""
        return (len(self.entries) + 1) // 2

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for x in self.entries)

    def in_unit_cube(self) -> bool:
        return all(0 <= x <= 1 for x in self.entries)

    def is_cube_vertex(self) -> bool:
        return all(x in (0, 1) for x in self.entries)

    def to_payload(self) -> list[str]:
        return _vec(self.entries)


@dataclass(frozen=True)
class IntervalFamily:
    """Endpoints a_1 <= b_1 <= a_2 <= ... <= b_n with a_1 = 0.

    Degenerate intervals (a_j = b_j) are allowed.
    """

    endpoints: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        pts = tuple(Fraction(x) for x in self.endpoints)
        if len(pts) < 2 or len(pts) % 2:
            raise PreconditionError("an interval family has 2n endpoints, n >= 1")
        if pts[0] != 0:
            raise PreconditionError("the first interval must start at 0")
        if any(pts[i] > pts[i + 1] for i in range(len(pts) - 1)):
            raise PreconditionError("endpoints must be weakly increasing")
        object.__setattr__(self, "endpoints", pts)

    @classmethod
    def from_pairs(
        cls, pairs: list[tuple[Fraction | int | str, Fraction | int | str]]
    ) -> IntervalFamily:
        """Build from [(a_1, b_1), ..., (a_n, b_n)]."""
        return cls(tuple(Fraction(x) for pair in pairs for x in pair))

    @property
    def n(self) -> int:
        return len(self.endpoints) // 2

    @property
    def intervals(self) -> list[tuple[Fraction, Fraction]]:
        pts = self.endpoints
        return [(pts[2 * j], pts[2 * j + 1]) for j in range(self.n)]

    @property
    def right_end(self) -> Fraction:
        """b, the right endpoint of the last interval."""
        return self.endpoints[-1]

    def to_payload(self) -> list[list[str]]:
        return [[format_rational(a), format_rational(b)] for a, b in self.intervals]


@dataclass(frozen=True)
class BallotVector:
    """Left or right ballot vector of depth k in dimension m."""

    entries: tuple[int, ...]
    kind: Literal["left", "right"]
    depth: int

    def dot(self, values: tuple[Fraction, ...]) -> Fraction:
        return sum(
            (w * x for w, x in zip(self.entries, values, strict=True) if w),
            Fraction(0),
        )

    def to_payload(self) -> list[int]:
        return list(self.entries)


@dataclass(frozen=True)
class MembershipReport:
    """Exact cone / polytope membership of one gap vector."""

    in_cone: bool
    in_polytope: bool
    in_cone_interior: bool
    min_ballot_dot: Fraction | None
    violated: tuple[BallotVector, ...]

    def to_payload(self) -> dict[str, Any]:
        return {
            "in_cone": self.in_cone,
            "in_polytope": self.in_polytope,
            "in_cone_interior": self.in_cone_interior,
            "min_ballot_dot": (
                None if self.min_ballot_dot is None else format_rational(self.min_ballot_dot)
            ),
            "violated": [w.to_payload() for w in self.violated],
        }


@dataclass(frozen=True)
class SumsetReport:
    """Sumset / difference set of A = {i : b_i = 1}."""

    sumset_full: bool
    diffset_full: bool
    sumset: frozenset[int]
    diffset: frozenset[int]

    def to_payload(self) -> dict[str, Any]:
        return {
            "sumset_full": self.sumset_full,
            "diffset_full": self.diffset_full,
            "sumset": sorted(self.sumset),
            "diffset": sorted(self.diffset),
        }


@dataclass(frozen=True)
class CutReport:
    """All valid necklace cuts (left-rotation amounts) of a vector."""

    cuts: tuple[int, ...]
    canonical: int
    unique: bool
    argmin_cut: int
    rotated: GapVector

    def to_payload(self) -> dict[str, Any]:
        return {
            "cuts": list(self.cuts),
            "canonical": self.canonical,
            "unique": self.unique,
            "argmin_cut": self.argmin_cut,
            "rotated": self.rotated.to_payload(),
        }


@dataclass(frozen=True)
class PartitionReport:
    """Rotation regions of the cube partition containing a point."""

    regions: tuple[int, ...]
    generic: bool

    def to_payload(self) -> dict[str, Any]:
        return {"regions": list(self.regions), "generic": self.generic}


@dataclass(frozen=True)
class VolumeReport:
    """Monte-Carlo estimate of Vol(P_n)."""

    n: int
    samples: int
    seed: int
    hits: int
    estimate: float
    stderr: float

    @property
    def expected(self) -> Fraction:
        return Fraction(1, 2 * self.n - 1)

    def to_payload(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "hits": self.hits,
            "estimate": self.estimate,
            "stderr": self.stderr,
            "expected": format_rational(self.expected),
        }


@dataclass(frozen=True)
class SlopePath:
    """Slope vector and its piecewise-linear integral sampled at integers."""

    slopes: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.values) != len(self.slopes) + 1 or self.values[0] != 0:
            raise PreconditionError("values must be f(0)=0, ..., f(m)")
        for t, slope in enumerate(self.slopes, start=1):
            if self.values[t] - self.values[t - 1] != slope:
                raise PreconditionError(f"f({t}) - f({t - 1}) differs from slope {t}")

    def signs(self) -> tuple[int, ...]:
        return tuple((s > 0) - (s < 0) for s in self.slopes)

    def to_payload(self) -> dict[str, Any]:
        return {"slopes": _vec(self.slopes), "values": _vec(self.values)}


@dataclass(frozen=True)
class VertexSet:
    """Vertices Q_n of P_n with interior (T_n) flags."""

    n: int
    vertices: tuple[GapVector, ...]
    interior_flags: tuple[bool, ...]

    @property
    def interior(self) -> tuple[GapVector, ...]:
        return tuple(v for v, f in zip(self.vertices, self.interior_flags, strict=True) if f)


@dataclass(frozen=True)
class BoundRow:
    """Exact comparison of B_l against both bounds for one odd l."""

    ell: int
    count: int
    lower: Fraction | None
    upper: Fraction
    lower_ok: bool
    upper_ok: bool

    @property
    def passed(self) -> bool:
        return self.lower_ok and self.upper_ok

    def to_payload(self) -> dict[str, Any]:
        return {
            "l": self.ell,
            "count": self.count,
            "lower": None if self.lower is None else format_rational(self.lower),
            "upper": format_rational(self.upper),
            "lower_ok": self.lower_ok,
            "upper_ok": self.upper_ok,
        }


@dataclass(frozen=True)
class ConstraintSystem:
    """Rows and right-hand side of rows . x >= rhs describing P_n."""

    n: int
    rows: tuple[tuple[int, ...], ...]
    rhs: tuple[int, ...]
    labels: tuple[str, ...] = field(default=())

    @property
    def m(self) -> int:
        return 2 * self.n - 1


@dataclass(frozen=True)
class EliminationTrace:
    """Intermediate matrices of a ±1-only Gauss-Jordan elimination."""

    steps: tuple[tuple[tuple[Fraction, ...], ...], ...]
    all_flat: bool
    determinant: int
    singular: bool
    cross_check_determinant: int

    def to_payload(self) -> dict[str, Any]:
        return {
            "steps": [[[format_rational(x) for x in row] for row in mat] for mat in self.steps],
            "all_flat": self.all_flat,
            "determinant": self.determinant,
            "singular": self.singular,
            "cross_check_determinant": self.cross_check_determinant,
        }


@dataclass(frozen=True)
class UnimodularityReport:
    """Aggregate of flat_elimination over all m-row subsets."""

    n: int
    submatrices_tested: int
    invertible_count: int
    all_unimodular: bool
    all_flat: bool
    all_integral: bool
    failures: tuple[tuple[int, ...], ...] = ()

    def to_payload(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "submatrices_tested": self.submatrices_tested,
            "invertible_count": self.invertible_count,
            "all_unimodular": self.all_unimodular,
            "all_flat": self.all_flat,
            "all_integral": self.all_integral,
            "failures": [list(f) for f in self.failures],
        }


@dataclass(frozen=True)
class CoverReport:
    """How the cube vertices split over the rotated copies of P_n."""

    n: int
    vertices_total: int
    per_shift: tuple[int, ...]
    interior_per_shift: tuple[int, ...]
    uncovered: int
    multiply_interior: int

    @property
    def m(self) -> int:
        return 2 * self.n - 1

    def to_payload(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "vertices_total": self.vertices_total,
            "per_shift": list(self.per_shift),
            "interior_per_shift": list(self.interior_per_shift),
            "uncovered": self.uncovered,
            "multiply_interior": self.multiply_interior,
        }


@dataclass(frozen=True)
class SuiteResult:
    """Outcome of one verification suite."""

    name: str
    passed: bool
    detail: dict[str, Any]
    duration_ms: int = 0

    def to_payload(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "duration_ms": self.duration_ms,
        }


@dataclass(frozen=True)
class VerificationReport:
    """All suites run by one `verify` invocation."""

    level: Literal["quick", "full"]
    suites: tuple[SuiteResult, ...]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    @property
    def failed(self) -> list[str]:
        return [s.name for s in self.suites if not s.passed]

    def to_payload(self) -> dict[str, Any]:
        return {
            "level": self.level,
            "passed": self.passed,
            "failed": self.failed,
            "suites": [s.to_payload() for s in self.suites],
        }
