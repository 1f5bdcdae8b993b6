"""Usecases: commands and the verification suites behind `verify`.

Rules:
- CLI does not contain domain logic; it calls these usecases.
- Every usecase returns a CommandResult: the envelope payload, optional
  tabular rows (for tsv/table output) and whether its checks passed.
- Regression fixtures are read from data/fixtures.json via FileStorage.
"""

from __future__ import annotations

import logging
import math
import time
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction
from itertools import pairwise, product
from typing import Any, Literal

import numpy as np

from ballotope.core.exceptions import BallotError, CheckFailedError
from ballotope.core.geometry import (
    classify_partition,
    cone_dots_array,
    cut_necklace,
    gaps_from_intervals,
    in_cone,
    intervals_from_gaps,
    is_gerrymander_measure,
    mc_volume,
    membership,
    necklace_inequalities,
    rotate,
    scale,
    strict_regions,
)
from ballotope.core.linalg import (
    basic_feasible_solutions,
    constraint_system,
    flat_elimination,
    system_holds,
    verify_unimodularity,
)
from ballotope.core.models import (
    BitSequence,
    GapVector,
    IntervalFamily,
    SuiteResult,
    VerificationReport,
)
from ballotope.core.plotting import plot_bbs, plot_vector
from ballotope.core.sequences import (
    append_one,
    bbs_to_path,
    count_bbs,
    count_bbs_brute,
    count_bbs_table,
    enumerate_bbs,
    is_bbs,
    ratio,
    ratio_table,
    sumset_fullness,
)
from ballotope.core.utils import format_rational, parse_rational
from ballotope.core.vertices import (
    bbs_to_interior_vertex,
    bbs_to_vertex,
    cube_cover_counts,
    enumerate_vertices,
    interior_vertex_to_bbs,
    pad_alpha,
    path_band,
    slope_vector,
    vertex_to_bbs,
    verify_bounds,
)
from ballotope.decorators import log_action
from ballotope.infra.settings import settings
from ballotope.infra.storage import storage

logger = logging.getLogger(__name__)

RATIO_BAND = (Fraction(1, 4), Fraction(51, 200))
RATIO_STRIDE = 10


@dataclass(frozen=True)
class CommandResult:
    """Payload of one command plus optional rows for tabular output."""

    result: Any
    rows: list[dict[str, Any]] | None = None
    ok: bool = True


class SequencesUsecase:
    """count / check / sumset / ratio / bounds."""

    @log_action("COUNT")
    def count(
        self, n: int, method: str = "dp", *, cap: int | None = None, threads: int = 1
    ) -> CommandResult:
        """B_n by the strip DP, by brute force, or both (which must agree)."""
        result: dict[str, Any] = {"n": n}
        if method in ("dp", "both"):
            result["dp"] = count_bbs(n)
        if method in ("brute", "both"):
            result["brute"] = count_bbs_brute(n, cap=cap, threads=threads)
        ok = method != "both" or result["dp"] == result["brute"]
        result["count"] = result.get("dp", result.get("brute"))
        result["agree"] = ok
        return CommandResult(result, ok=ok)

    def check(self, bits: str) -> CommandResult:
        seq = BitSequence.parse(bits)
        return CommandResult(
            {
                "bits": str(seq),
                "length": len(seq),
                "is_bbs": is_bbs(seq),
                "heights": list(bbs_to_path(seq).heights),
            }
        )

    def sumset(self, bits: str) -> CommandResult:
        seq = BitSequence.parse(bits)
        return CommandResult({"bits": str(seq), **sumset_fullness(seq).to_payload()})

    def ratio(self, n: int, n_max: int | None = None) -> CommandResult:
        """n B_n / 2^n for one n, or a table up to n_max."""
        pairs = ratio_table(n, n_max) if n_max is not None else [(n, ratio(n))]
        rows = [{"n": k, "ratio": format_rational(r)} for k, r in pairs]
        result: dict[str, Any] = {"ratios": rows}
        return CommandResult(result, rows=rows)

    def bounds(self, l_min: int, l_max: int) -> CommandResult:
        table = verify_bounds(l_min, l_max)
        rows = [r.to_payload() for r in table]
        ok = all(r.passed for r in table)
        return CommandResult({"rows": rows, "all_pass": ok}, rows=rows, ok=ok)


class GeometryUsecase:
    """member / cut / classify / volume."""

    def member(self, v: GapVector) -> CommandResult:
        report = membership(v)
        family = intervals_from_gaps(v) if v.is_nonnegative() else None
        return CommandResult(
            {
                "vector": v.to_payload(),
                **report.to_payload(),
                "intervals": family.to_payload() if family else None,
                "gerrymander": is_gerrymander_measure(family) if family else None,
            }
        )

    def cut(self, v: GapVector) -> CommandResult:
        report = cut_necklace(v)
        rows = [
            {"k": k, "rotated": ",".join(rotated.to_payload())}
            for k, rotated in ((k, rotate(v, k)) for k in report.cuts)
        ]
        return CommandResult({"necklace": v.to_payload(), **report.to_payload()}, rows=rows)

    def classify(self, v: GapVector) -> CommandResult:
        return CommandResult({"vector": v.to_payload(), **classify_partition(v).to_payload()})

    def volume(
        self, n: int, samples: int, seed: int | None = None, *, threads: int = 1
    ) -> CommandResult:
        report = mc_volume(n, samples, seed, threads=threads)
        deviation = abs(report.estimate - float(report.expected))
        within = deviation <= 4 * report.stderr
        return CommandResult({**report.to_payload(), "within_4_stderr": within})


class VerticesUsecase:
    """vertices / bfs / unimodular."""

    def vertices(
        self,
        n: int,
        *,
        interior: bool = False,
        with_bbs: bool = False,
        cap: int | None = None,
    ) -> CommandResult:
        vset = enumerate_vertices(n, cap=cap)
        rows: list[dict[str, Any]] = []
        for v, flag in zip(vset.vertices, vset.interior_flags, strict=True):
            if interior and not flag:
                continue
            row: dict[str, Any] = {"vertex": ",".join(v.to_payload()), "interior": flag}
            if with_bbs:
                row["bbs"] = str(vertex_to_bbs(v))
                row["interior_bbs"] = (
                    str(interior_vertex_to_bbs(v)) if flag and n >= 2 else None
                )
            rows.append(row)
        result = {
            "n": n,
            "count": len(vset.vertices),
            "interior_count": len(vset.interior),
            "vertices": rows,
        }
        return CommandResult(result, rows=rows)

    def bfs(self, n: int, *, cap: int | None = None) -> CommandResult:
        found = basic_feasible_solutions(n, cap=cap)
        expected = set(enumerate_vertices(n).vertices)
        ok = set(found) == expected
        rows = [{"vertex": ",".join(v.to_payload())} for v in found]
        return CommandResult(
            {"n": n, "count": len(found), "matches_vertices": ok, "solutions": rows},
            rows=rows,
            ok=ok,
        )

    def unimodular(self, n: int, *, cap: int | None = None, threads: int = 1) -> CommandResult:
        report = verify_unimodularity(n, cap=cap, threads=threads)
        ok = report.all_unimodular and report.all_flat and report.all_integral
        return CommandResult(report.to_payload(), ok=ok)


class PlotUsecase:
    """plot."""

    def plot(
        self,
        out: str,
        *,
        bits: str | None = None,
        vector: GapVector | None = None,
        padded: bool = False,
    ) -> CommandResult:
        if bits is not None:
            return CommandResult(plot_bbs(bits, out))
        assert vector is not None
        return CommandResult(plot_vector(vector, out, padded=padded))


@dataclass(frozen=True)
class Level:
    """Sizes used by one verification level."""

    name: Literal["quick", "full"]
    dp_brute_max: int
    words_max: int
    sumset_max: int
    append_max: int
    monotone_upto: int
    ratio_from: int
    random_points: int
    partition_points: int
    necklaces: int
    mc_samples: int
    vertex_max: int
    roundtrip_max: int
    unimodular_max: int
    bfs_max: int


LEVELS: dict[str, Level] = {
    "quick": Level(
        name="quick",
        dp_brute_max=14,
        words_max=10,
        sumset_max=12,
        append_max=11,
        monotone_upto=200,
        ratio_from=100,
        random_points=1_000,
        partition_points=10_000,
        necklaces=300,
        mc_samples=200_000,
        vertex_max=5,
        roundtrip_max=4,
        unimodular_max=3,
        bfs_max=3,
    ),
    "full": Level(
        name="full",
        dp_brute_max=18,
        words_max=14,
        sumset_max=14,
        append_max=15,
        monotone_upto=200,
        ratio_from=10,
        random_points=10_000,
        partition_points=100_000,
        necklaces=10_000,
        mc_samples=1_000_000,
        vertex_max=6,
        roundtrip_max=5,
        unimodular_max=4,
        bfs_max=3,
    ),
}


def _require(invariant: str, condition: bool, detail: str) -> None:
    if not condition:
        raise CheckFailedError(invariant, detail)


def _direct_bbs(word: tuple[int, ...]) -> bool:
    """Count ones and zeros of every prefix and suffix directly."""
    for part in (word, word[::-1]):
        ones = zeros = 0
        for x in part:
            ones += x
            zeros += 1 - x
            if ones <= zeros:
                return False
    return True


class VerificationUsecase:
    """Runs every invariant suite at a given level.

    A suite passes when it returns; it fails when it raises a BallotError
    (CheckFailedError names the invariant). Fixture-backed suites read the
    fixtures file themselves, so a corrupted fixture fails exactly the suites
    that consume it.
    """

    def __init__(self, fixtures_path: str | None = None, *, threads: int = 1) -> None:
        self.fixtures_path = fixtures_path or str(settings.get("fixturesfile"))
        self.threads = threads
        self.seed = settings.get_int("seed")

    def _fixture(self, key: str) -> Any:
        data = storage.read_obj(self.fixtures_path)
        if key not in data:
            raise CheckFailedError(f"fixture-{key}", f"missing in {self.fixtures_path}")
        return data[key]

    def _rng(self, salt: int) -> np.random.Generator:
        stream = np.random.SeedSequence(entropy=self.seed, spawn_key=(1000 + salt,))
        return np.random.Generator(np.random.Philox(stream))

    def suites(self) -> list[tuple[str, Callable[[Level], dict[str, Any]]]]:
        return [
            ("seq-dp-vs-brute", self.dp_vs_brute),
            ("seq-monotone", self.monotone),
            ("seq-path-characterization", self.path_characterization),
            ("seq-sumset-fullness", self.sumset_fullness),
            ("seq-ratio", self.ratio_trend),
            ("geom-measure-equivalence", self.measure_equivalence),
            ("geom-partition", self.partition),
            ("geom-necklace", self.necklace),
            ("geom-volume", self.volume),
            ("vertex-bijection-counts", self.bijection_counts),
            ("vertex-roundtrips", self.roundtrips),
            ("vertex-slopes", self.slopes),
            ("vertex-bounds", self.bounds),
            ("linalg-constraints", self.constraints),
            ("linalg-unimodularity", self.unimodularity),
            ("linalg-bfs", self.bfs),
        ]

    @log_action("VERIFY")
    def run(
        self,
        level: Literal["quick", "full"] = "quick",
        *,
        only: list[str] | None = None,
        timed: bool = True,
    ) -> VerificationReport:
        params = LEVELS[level]
        results: list[SuiteResult] = []
        for name, suite in self.suites():
            if only is not None and name not in only:
                continue
            started = time.perf_counter()
            try:
                detail = suite(params)
                passed = True
            except CheckFailedError as e:
                passed = False
                detail = {"invariant": e.invariant, "error": str(e)}
            except BallotError as e:
                passed = False
                detail = {"error_type": type(e).__name__, "error": str(e)}
            elapsed = int((time.perf_counter() - started) * 1000) if timed else 0
            logger.info(
                "suite_finished",
                extra={"suite": name, "passed": passed, "duration_ms": elapsed},
            )
            results.append(SuiteResult(name, passed, detail, elapsed))
        return VerificationReport(level=level, suites=tuple(results))

    # ballot sequences

    def dp_vs_brute(self, p: Level) -> dict[str, Any]:
        table = count_bbs_table(p.dp_brute_max)
        for n in range(1, p.dp_brute_max + 1):
            brute = count_bbs_brute(n, threads=self.threads)
            _require("dp-brute", table[n - 1] == brute, f"n={n}: dp {table[n - 1]} != brute {brute}")
            _require("dp-table", count_bbs(n) == brute, f"n={n}: count_bbs disagrees")
        anchors = self._fixture("bbs_counts")
        for key, expected in sorted(anchors.items(), key=lambda kv: int(kv[0])):
            got = count_bbs(int(key))
            _require("fixture-bbs_counts", got == expected, f"B_{key} = {got}, fixture says {expected}")
        return {"max_n": p.dp_brute_max, "counts": table, "anchors": len(anchors)}

    def monotone(self, p: Level) -> dict[str, Any]:
        table = count_bbs_table(p.monotone_upto)
        drops = [n for n in range(1, p.monotone_upto) if table[n] < table[n - 1]]
        _require("monotone", not drops, f"B_(n+1) < B_n at n={drops[:5]}")
        checked = 0
        for n in range(1, p.append_max + 1):
            for b in enumerate_bbs(n, threads=self.threads):
                _require("append-one", is_bbs(append_one(b)), f"{b}1 is not a BBS")
                checked += 1
        return {"upto": p.monotone_upto, "append_checked": checked}

    def path_characterization(self, p: Level) -> dict[str, Any]:
        words = 0
        for n in range(1, p.words_max + 1):
            direct: list[str] = []
            for word in product((0, 1), repeat=n):
                seq = BitSequence(word)
                expected = _direct_bbs(word)
                _require("path-extrema", is_bbs(seq) == expected, f"{seq}: is_bbs != prefix/suffix counts")
                if expected:
                    direct.append(str(seq))
                words += 1
            listed = [str(b) for b in enumerate_bbs(n, threads=self.threads)]
            _require("enumeration", listed == direct, f"n={n}: enumerate_bbs differs from direct scan")
            _require(
                "ends-with-one",
                all(w[0] == "1" and w[-1] == "1" for w in listed),
                f"n={n}: a BBS does not start and end with 1",
            )
        return {"words_checked": words}

    def sumset_fullness(self, p: Level) -> dict[str, Any]:
        checked = 0
        for n in range(1, p.sumset_max + 1):
            for b in enumerate_bbs(n, threads=self.threads):
                report = sumset_fullness(b)
                _require("sumset-full", report.sumset_full and report.diffset_full, f"{b}")
                checked += 1
        return {"max_n": p.sumset_max, "sequences": checked}

    def ratio_trend(self, p: Level) -> dict[str, Any]:
        low, high = RATIO_BAND
        r100 = ratio(100)
        _require("ratio-band", low <= r100 <= high, f"ratio(100) = {format_rational(r100)}")
        table = dict(ratio_table(min(p.ratio_from, 100), 200))
        grid = [table[n] for n in range(100, 201, RATIO_STRIDE)]
        _require(
            "ratio-decreasing",
            all(a > b > low for a, b in pairwise(grid)),
            f"every {RATIO_STRIDE}th ratio over 100..200: {[float(r) for r in grid]}",
        )
        return {
            "band": [format_rational(low), format_rational(high)],
            "ratio_100": format_rational(r100),
            "stride": RATIO_STRIDE,
            "ratios": {str(n): format_rational(r) for n, r in table.items() if n >= p.ratio_from},
        }

    # cone and polytope

    def _random_vector(self, rng: np.random.Generator, m: int, top: int, den: int) -> GapVector:
        return GapVector(tuple(Fraction(int(x), den) for x in rng.integers(0, top + 1, size=m)))

    def measure_equivalence(self, p: Level) -> dict[str, Any]:
        rng = self._rng(1)
        checked = 0
        for n in range(2, 7):
            m = 2 * n - 1
            for _ in range(p.random_points):
                v = self._random_vector(rng, m, 12, 6)
                family = intervals_from_gaps(v)
                cone = in_cone(v)
                _require("measure-equivalence", is_gerrymander_measure(family) == cone, f"{v.to_payload()}")
                _require("gap-roundtrip", gaps_from_intervals(family) == v, f"{v.to_payload()}")
                _require("necklace-inequalities", necklace_inequalities(v) == cone, f"{v.to_payload()}")
                alpha = Fraction(int(rng.integers(1, 10)), int(rng.integers(1, 10)))
                _require("scaling", in_cone(scale(v, alpha)) == cone, f"{v.to_payload()} * {alpha}")
                if cone and v.in_unit_cube():
                    _require("path-band", path_band(v), f"{v.to_payload()}")
                checked += 1
        degenerate = IntervalFamily.from_pairs([(0, 0), (1, 1)])
        _require("measure-degenerate", not is_gerrymander_measure(degenerate), "(0,0),(1,1)")
        return {"families": checked}

    def partition(self, p: Level) -> dict[str, Any]:
        rng = self._rng(2)
        detail: dict[str, Any] = {}
        for n in range(2, 6):
            m = 2 * n - 1
            pts = rng.random((p.partition_points, m))
            regions = np.zeros(len(pts), dtype=np.int64)
            strict = np.zeros(len(pts), dtype=np.int64)
            for k in range(m):
                dots = cone_dots_array(np.roll(pts, -k, axis=1))
                regions += np.all(dots >= 0, axis=1)
                strict += np.all(dots > 0, axis=1)
            uncovered = int(np.count_nonzero(regions == 0))
            overlap = int(np.count_nonzero((strict >= 1) & (regions > 1)))
            _require("partition-cover", uncovered == 0, f"n={n}: {uncovered} points in no region")
            _require("partition-interiors", overlap == 0, f"n={n}: {overlap} points in two regions")
            detail[str(n)] = {"points": len(pts), "uncovered": uncovered, "overlap": overlap}
        for _ in range(200):
            v = self._random_vector(rng, 5, 8, 8)
            report = classify_partition(v)
            _require("partition-cover", len(report.regions) >= 1, f"{v.to_payload()}")
            _require("partition-interiors", len(strict_regions(v)) <= 1, f"{v.to_payload()}")
        for n in range(1, 6):
            cover = cube_cover_counts(n)
            _require("partition-cube-vertices", cover.uncovered == 0, f"n={n}: {cover.uncovered} uncovered")
            _require(
                "partition-interiors",
                cover.multiply_interior == 0,
                f"n={n}: {cover.multiply_interior} vertices in two interiors",
            )
        return detail

    def necklace(self, p: Level) -> dict[str, Any]:
        fx = self._fixture("necklace")
        v = GapVector(tuple(parse_rational(x) for x in fx["input"]))
        expected = GapVector(tuple(parse_rational(x) for x in fx["rotated"]))
        report = cut_necklace(v)
        _require(
            "fixture-necklace",
            report.rotated == expected and report.unique == fx["unique"],
            f"got {report.rotated.to_payload()} unique={report.unique}",
        )
        rng = self._rng(3)
        generic = skipped = 0
        for m in range(3, 12, 2):
            for _ in range(p.necklaces):
                w = GapVector(tuple(Fraction(int(x)) for x in rng.integers(1, 10**6, size=m)))
                cuts = cut_necklace(w).cuts
                if len(strict_regions(w)) != 1:
                    skipped += 1
                    continue
                _require("necklace-unique", len(cuts) == 1, f"{w.to_payload()} has cuts {list(cuts)}")
                generic += 1
        return {"generic": generic, "skipped": skipped}

    def volume(self, p: Level) -> dict[str, Any]:
        one = mc_volume(1, 1000, self.seed)
        _require("volume", one.estimate == 1.0, f"n=1 estimate {one.estimate}")
        detail: dict[str, Any] = {}
        for n in range(2, 6):
            r = mc_volume(n, p.mc_samples, self.seed, threads=self.threads)
            gap = abs(r.estimate - 1 / (2 * n - 1))
            _require("volume", gap <= 4 * r.stderr, f"n={n}: {r.estimate} vs 1/{2 * n - 1}")
            detail[str(n)] = {"estimate": r.estimate, "stderr": r.stderr}
        if p.name == "full":
            est = detail["2"]["estimate"]
            _require("volume-analytic", abs(est - 1 / 3) < 0.005, f"n=2 estimate {est}")
        return detail

    # vertices

    def bijection_counts(self, p: Level) -> dict[str, Any]:
        detail: dict[str, Any] = {}
        for n in range(1, p.vertex_max + 1):
            vset = enumerate_vertices(n)
            q, t = len(vset.vertices), len(vset.interior)
            _require("vertex-bijection", q == count_bbs(2 * n + 3), f"|Q_{n}| = {q}")
            if n >= 2:
                _require("interior-bijection", t == count_bbs(2 * n - 1), f"|T_{n}| = {t}")
            _require(
                "vertex-coordinates",
                all(v.is_cube_vertex() and path_band(v) for v in vset.vertices),
                f"n={n}",
            )
            detail[str(n)] = {"Q": q, "T": t}
        for n in range(1, 5):
            m = 2 * n - 1
            for word in product((0, 1), repeat=m):
                v = GapVector(tuple(Fraction(x) for x in word))
                _require("path-band", path_band(v) == in_cone(v), f"{v.to_payload()}")
        return detail

    def roundtrips(self, p: Level) -> dict[str, Any]:
        fx = self._fixture("worked_pair")
        v = GapVector(tuple(parse_rational(x) for x in fx["vertex"]))
        _require("fixture-worked_pair", str(vertex_to_bbs(v)) == fx["bbs"], f"{v.to_payload()}")
        _require("fixture-worked_pair", bbs_to_vertex(fx["bbs"]) == v, fx["bbs"])
        for n in range(1, p.roundtrip_max + 1):
            vset = enumerate_vertices(n)
            images = set()
            for w in vset.vertices:
                b = vertex_to_bbs(w)
                _require("vertex-roundtrip", bbs_to_vertex(b) == w, f"{w.to_payload()}")
                images.add(str(b))
            all_bbs = {str(b) for b in enumerate_bbs(2 * n + 3)}
            _require("vertex-roundtrip", images == all_bbs, f"n={n}: image is not B_{2 * n + 3}")
            if n < 2:
                continue
            inner = set()
            for w in vset.interior:
                b = interior_vertex_to_bbs(w)
                _require("interior-roundtrip", bbs_to_interior_vertex(b) == w, f"{w.to_payload()}")
                inner.add(str(b))
            all_short = {str(b) for b in enumerate_bbs(2 * n - 1)}
            _require("interior-roundtrip", inner == all_short, f"n={n}: image is not B_{2 * n - 1}")
        return {"max_n": p.roundtrip_max}

    def slopes(self, p: Level) -> dict[str, Any]:
        fx = self._fixture("slope_example")
        v = GapVector(tuple(parse_rational(x) for x in fx["vector"]))
        path = slope_vector(v)
        _require(
            "fixture-slope_example",
            path.slopes == tuple(parse_rational(x) for x in fx["slopes"])
            and path.values == tuple(parse_rational(x) for x in fx["values"]),
            f"got {path.to_payload()}",
        )
        rng = self._rng(4)
        checked = 0
        for n in range(1, 6):
            for _ in range(p.random_points // 10):
                w = self._random_vector(rng, 2 * n - 1, 12, 12)
                base = slope_vector(w).values
                padded = slope_vector(pad_alpha(w)).values
                _require(
                    "shift-identity",
                    all(padded[k + 2] == base[k] + 2 for k in range(len(base))),
                    f"{w.to_payload()}",
                )
                checked += 1
        return {"vectors": checked}

    def bounds(self, p: Level) -> dict[str, Any]:
        rows = verify_bounds(5, 29)
        bad = [r.ell for r in rows if not r.passed]
        _require("counting-bounds", not bad, f"bounds fail at l={bad}")
        for n in range(1, 6):
            cover = cube_cover_counts(n)
            q, t = cover.per_shift[0], cover.interior_per_shift[0]
            _require("cover-lower", cover.m * q >= cover.vertices_total, f"n={n}")
            _require("cover-upper", cover.m * t <= cover.vertices_total, f"n={n}")
        return {"rows": [r.to_payload() for r in rows]}

    # constraint system

    def constraints(self, p: Level) -> dict[str, Any]:
        rng = self._rng(5)
        for n in range(1, 6):
            system = constraint_system(n)
            _require(
                "constraint-flat",
                all(x in (-1, 0, 1) for row in system.rows for x in row),
                f"n={n}",
            )
            if n >= 2:
                _require("constraint-rows", len(system.rows) == 3 * system.m - 1, f"n={n}")
            for _ in range(200):
                x = GapVector(
                    tuple(Fraction(int(k) - 2, 8) for k in rng.integers(0, 13, size=system.m))
                )
                _require(
                    "constraint-membership",
                    system_holds(system, x) == membership(x).in_polytope,
                    f"{x.to_payload()}",
                )
        return {"max_n": 5}

    def unimodularity(self, p: Level) -> dict[str, Any]:
        fx = self._fixture("elimination_example")
        trace = flat_elimination(fx["matrix"], swap=False)
        expected_steps = tuple(tuple(tuple(row) for row in step) for step in fx.get("steps", []))
        _require(
            "fixture-elimination_example",
            trace.all_flat
            and abs(trace.determinant) == fx["abs_determinant"]
            and trace.determinant == trace.cross_check_determinant,
            f"flat={trace.all_flat} det={trace.determinant}",
        )
        mismatch = next(
            (i for i, (a, b) in enumerate(zip(trace.steps, expected_steps)) if a != b), None
        )
        _require(
            "fixture-elimination_steps",
            trace.steps == expected_steps,
            f"{len(trace.steps)} steps, first mismatch at step {mismatch}",
        )
        detail: dict[str, Any] = {}
        for n in range(2, p.unimodular_max + 1):
            report = verify_unimodularity(n, threads=self.threads)
            m = 2 * n - 1
            _require(
                "unimodular-subsets",
                report.submatrices_tested == math.comb(3 * m - 1, m),
                f"n={n}: {report.submatrices_tested} tested",
            )
            _require(
                "unimodular",
                report.all_unimodular and report.all_flat and report.all_integral,
                f"n={n}: failures {list(report.failures)}",
            )
            detail[str(n)] = report.to_payload()
        return detail

    def bfs(self, p: Level) -> dict[str, Any]:
        detail: dict[str, int] = {}
        for n in range(1, p.bfs_max + 1):
            found = basic_feasible_solutions(n)
            expected = set(enumerate_vertices(n).vertices)
            _require("bfs-vertices", set(found) == expected, f"n={n}")
            _require("bfs-integral", all(v.is_cube_vertex() for v in found), f"n={n}")
            detail[str(n)] = len(found)
        return detail
