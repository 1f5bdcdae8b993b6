"""H-representation of P_n, basic feasible solutions and flat elimination.

Everything here is exact: integer rows, Fraction elimination, sympy for the
independent determinant and linear solves. No floating point.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import combinations

from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from ballotope.core.exceptions import PreconditionError
from ballotope.core.geometry import ballot_vectors
from ballotope.core.models import (
    ConstraintSystem,
    EliminationTrace,
    GapVector,
    UnimodularityReport,
)
from ballotope.core.utils import require_positive
from ballotope.decorators import log_action, within_cap
from ballotope.infra.settings import settings

logger = logging.getLogger(__name__)

_MAX_REPORTED_FAILURES = 20

Matrix2D = Sequence[Sequence[int]]


def constraint_system(n: int) -> ConstraintSystem:
    """Cube rows (+e_i, -e_i per coordinate), then left and right ballot rows.

    x satisfies rows . x >= rhs exactly when x is in P_n.
    """
    require_positive(n, "n")
    m = 2 * n - 1
    rows: list[tuple[int, ...]] = []
    rhs: list[int] = []
    labels: list[str] = []
    for i in range(m):
        unit = tuple(int(j == i) for j in range(m))
        rows += [unit, tuple(-x for x in unit)]
        rhs += [0, -1]
        labels += [f"+e{i + 1}", f"-e{i + 1}"]
    for w in ballot_vectors(n):
        rows.append(w.entries)
        rhs.append(0)
        labels.append(f"{'L' if w.kind == 'left' else 'R'}{w.depth}")
    return ConstraintSystem(n=n, rows=tuple(rows), rhs=tuple(rhs), labels=tuple(labels))


def system_holds(system: ConstraintSystem, x: GapVector) -> bool:
    """rows . x >= rhs for every row."""
    if x.m != system.m:
        raise PreconditionError(f"point has dimension {x.m}, system has {system.m}")
    return all(
        sum((a * v for a, v in zip(row, x.entries, strict=True) if a), Fraction(0)) >= b
        for row, b in zip(system.rows, system.rhs, strict=True)
    )


def _snapshot(mat: list[list[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(row) for row in mat)


def _is_flat(mat: Sequence[Sequence[Fraction]]) -> bool:
    return all(x in (-1, 0, 1) for row in mat for x in row)


def _domain_det(matrix: Matrix2D) -> int:
    size = len(matrix)
    if size == 0:
        return 1
    dm = DomainMatrix([[ZZ(int(x)) for x in row] for row in matrix], (size, size), ZZ)
    return int(dm.det())


def _permutation_sign(order: Sequence[int]) -> int:
    inversions = sum(1 for i, j in combinations(range(len(order)), 2) if order[i] > order[j])
    return -1 if inversions % 2 else 1


def _gauss_jordan(
    matrix: Matrix2D, rhs: Sequence[int] | None = None, *, swap: bool = True
) -> tuple[EliminationTrace, list[Fraction] | None]:
    """Gauss-Jordan elimination recording every intermediate matrix.

    With `swap`, the pivot for column c is the first row at or below c with a
    non-zero entry there, and it is swapped into position c; the run ends at
    the identity. Without it, the pivot is the first row not yet used as a
    pivot, rows stay in place and the run ends at a permutation matrix.
    Pivot rows are negated or have another row subtracted; any other scaling
    is applied exactly but breaks flatness.
    """
    size = len(matrix)
    if any(len(row) != size for row in matrix):
        raise PreconditionError("flat elimination needs a square matrix")
    mat = [[Fraction(x) for x in row] for row in matrix]
    col_b = [Fraction(x) for x in rhs] if rhs is not None else None
    steps = [_snapshot(mat)]
    sign = 1
    scale = Fraction(1)
    singular = False
    pivots: list[int] = []

    for col in range(size):
        if swap:
            candidates = range(col, size)
        else:
            candidates = (r for r in range(size) if r not in pivots)
        pivot = next((r for r in candidates if mat[r][col] != 0), None)
        if pivot is None:
            singular = True
            break
        if swap and pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            if col_b is not None:
                col_b[col], col_b[pivot] = col_b[pivot], col_b[col]
            sign = -sign
            pivot = col
        pivots.append(pivot)
        p = mat[pivot][col]
        if p == -1:
            mat[pivot] = [-x for x in mat[pivot]]
            if col_b is not None:
                col_b[pivot] = -col_b[pivot]
            sign = -sign
        elif p != 1:
            mat[pivot] = [x / p for x in mat[pivot]]
            if col_b is not None:
                col_b[pivot] /= p
            scale *= p
        for r in range(size):
            f = mat[r][col]
            if r == pivot or f == 0:
                continue
            mat[r] = [a - f * b for a, b in zip(mat[r], mat[pivot], strict=True)]
            if col_b is not None:
                col_b[r] -= f * col_b[pivot]
        steps.append(_snapshot(mat))

    if singular:
        det = Fraction(0)
    else:
        det = sign * scale * _permutation_sign(pivots)
    trace = EliminationTrace(
        steps=tuple(steps),
        all_flat=all(_is_flat(s) for s in steps),
        determinant=int(det),
        singular=singular,
        cross_check_determinant=_domain_det(matrix),
    )
    if singular or col_b is None:
        return trace, None
    return trace, [col_b[row] for row in pivots]


def flat_elimination(matrix: Matrix2D, *, swap: bool = True) -> EliminationTrace:
    """Eliminate a square integer matrix and report flatness and determinant.

    `swap=False` keeps rows in place and pivots on the first unused row; the
    last step is then a permutation matrix. The determinant is also computed
    fraction-free (sympy DomainMatrix over ZZ) as `cross_check_determinant`.
    """
    trace, _ = _gauss_jordan(matrix, swap=swap)
    return trace


def solve_exact(rows: Matrix2D, rhs: Sequence[int]) -> GapVector | None:
    """Exact rational solution of a square system, None when singular."""
    size = len(rows)
    if _domain_det(rows) == 0:
        return None
    a = DomainMatrix([[QQ(int(x)) for x in r] for r in rows], (size, size), QQ)
    b = DomainMatrix([[QQ(int(y))] for y in rhs], (size, 1), QQ)
    x = a.lu_solve(b).to_Matrix()
    return GapVector(tuple(Fraction(int(e.p), int(e.q)) for e in x))


def _check_subsets(
    n: int, subsets: Sequence[tuple[int, ...]]
) -> tuple[int, int, bool, bool, bool, list[tuple[int, ...]]]:
    system = constraint_system(n)
    invertible = 0
    unimodular = flat = integral = True
    failures: list[tuple[int, ...]] = []
    for subset in subsets:
        trace, x = _gauss_jordan(
            [system.rows[i] for i in subset], [system.rhs[i] for i in subset]
        )
        if trace.singular:
            continue
        invertible += 1
        ok_det = abs(trace.determinant) == 1 and trace.determinant == trace.cross_check_determinant
        ok_int = x is not None and all(v.denominator == 1 for v in x)
        unimodular &= ok_det
        flat &= trace.all_flat
        integral &= ok_int
        if not (ok_det and trace.all_flat and ok_int) and len(failures) < _MAX_REPORTED_FAILURES:
            failures.append(subset)
    return len(subsets), invertible, unimodular, flat, integral, failures


def _slices(items: list[tuple[int, ...]], parts: int) -> list[list[tuple[int, ...]]]:
    step = max(1, -(-len(items) // parts))
    return [items[i : i + step] for i in range(0, len(items), step)]


@log_action("VERIFY_UNIMODULARITY")
@within_cap("unimodularcap")
def verify_unimodularity(
    n: int,
    *,
    cap: int | None = None,
    threads: int = 1,
    progress: Callable[[int, int], None] | None = None,
) -> UnimodularityReport:
    """Run flat_elimination on every m-row subset of constraint_system(n).

    Subsets are visited in lexicographic order of row indices. Progress is
    logged every `progressevery` subsets (or per finished slice when running
    in worker processes) and forwarded to `progress(done, total)`.

    Raises:
        CapExceededError: If n is above the unimodularity cap (default 4).
    """
    require_positive(n, "n")
    system = constraint_system(n)
    subsets = list(combinations(range(len(system.rows)), system.m))
    total = len(subsets)
    every = max(1, settings.get_int("progressevery"))

    def report(done: int) -> None:
        logger.info("unimodularity_progress", extra={"n": n, "done": done, "total": total})
        if progress is not None:
            progress(done, total)

    parts: list[tuple[int, int, bool, bool, bool, list[tuple[int, ...]]]] = []
    if threads <= 1:
        for start in range(0, total, every):
            parts.append(_check_subsets(n, subsets[start : start + every]))
            report(min(start + every, total))
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = _slices(subsets, threads * 4)
            done = 0
            for part, chunk in zip(
                pool.map(_check_subsets, [n] * len(chunks), chunks), chunks, strict=True
            ):
                parts.append(part)
                done += len(chunk)
                report(done)

    failures = sorted(f for p in parts for f in p[5])[:_MAX_REPORTED_FAILURES]
    return UnimodularityReport(
        n=n,
        submatrices_tested=sum(p[0] for p in parts),
        invertible_count=sum(p[1] for p in parts),
        all_unimodular=all(p[2] for p in parts),
        all_flat=all(p[3] for p in parts),
        all_integral=all(p[4] for p in parts),
        failures=tuple(failures),
    )


@log_action("BASIC_FEASIBLE_SOLUTIONS")
@within_cap("bfscap")
def basic_feasible_solutions(n: int, *, cap: int | None = None) -> list[GapVector]:
    """Vertices of P_n as basic feasible solutions, sorted lexicographically.

    Every invertible m-row subsystem is solved with its constraints active;
    solutions satisfying all constraints are kept once.

    Raises:
        CapExceededError: If n is above the BFS cap (default 3).
    """
    require_positive(n, "n")
    system = constraint_system(n)
    found: set[GapVector] = set()
    for subset in combinations(range(len(system.rows)), system.m):
        x = solve_exact([system.rows[i] for i in subset], [system.rhs[i] for i in subset])
        if x is not None and system_holds(system, x):
            found.add(x)
    return sorted(found, key=lambda v: v.entries)
