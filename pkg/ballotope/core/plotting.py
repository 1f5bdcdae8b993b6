"""Static SVG figures of lattice paths and slope paths.

Figures are drawn with matplotlib's Agg/SVG backend through the object API,
so no pyplot global state is touched and calls are safe from worker threads.
Output is byte-stable for a fixed input and matplotlib version.
"""

from __future__ import annotations

import io
import logging
import math
from collections.abc import Sequence
from fractions import Fraction
from typing import Any

import matplotlib

matplotlib.use("Agg")

from matplotlib import rc_context  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

from ballotope.core.models import BitSequence, GapVector  # noqa: E402
from ballotope.core.sequences import bbs_to_path  # noqa: E402
from ballotope.core.utils import format_rational  # noqa: E402
from ballotope.core.vertices import pad_alpha, slope_vector  # noqa: E402
from ballotope.decorators import log_action  # noqa: E402
from ballotope.infra.storage import storage  # noqa: E402

logger = logging.getLogger(__name__)

WIDTH_PX = 800
HEIGHT_PX = 500
_DPI = 72

_RC = {
    "svg.hashsalt": "ballotope",
    "svg.fonttype": "none",
    "font.size": 11,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def path_svg(
    values: Sequence[Fraction | int],
    *,
    title: str = "",
    labels: bool = False,
    guides: tuple[int, int] | None = None,
) -> str:
    """Render f(0), ..., f(m) as a polyline over the integer grid.

    Args:
        values: Path values at t = 0..m.
        title: Figure title.
        labels: Annotate every node with its exact value.
        guides: x positions of two dotted vertical guide lines.

    Returns:
        The SVG document as text.
    """
    xs = list(range(len(values)))
    ys = [float(y) for y in values]
    with rc_context(_RC):
        fig = Figure(figsize=(WIDTH_PX / _DPI, HEIGHT_PX / _DPI), dpi=_DPI)
        ax = fig.subplots()
        ax.plot(xs, ys, color="black", linewidth=1.5, marker="o", markersize=4)
        ax.axhline(0, color="grey", linewidth=0.8)
        ax.set_xticks(xs)
        low, high = min(ys), max(ys)
        ax.set_yticks(range(math.floor(low), math.ceil(high) + 1))
        ax.grid(True, color="#dddddd", linewidth=0.6)
        ax.set_xlim(-0.5, max(xs) + 0.5)
        if guides is not None:
            for x in guides:
                ax.axvline(x, color="black", linestyle=":", linewidth=1)
        if labels:
            for x, y in zip(xs, values, strict=True):
                ax.annotate(
                    str(Fraction(y)),
                    (x, float(y)),
                    textcoords="offset points",
                    xytext=(0, 7),
                    ha="center",
                )
        if title:
            ax.set_title(title)
        buf = io.BytesIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue().decode("utf-8")


@log_action("PLOT")
def plot_bbs(b: BitSequence | str, out: str) -> dict[str, Any]:
    """Write the height path of a bit sequence to `out`."""
    seq = b if isinstance(b, BitSequence) else BitSequence.parse(b)
    path = bbs_to_path(seq)
    svg = path_svg(path.heights, title=str(seq))
    storage.write_text(out, svg)
    logger.info("figure_written", extra={"out": out, "points": len(path.heights)})
    return {"out": out, "kind": "height_path", "points": len(path.heights)}


@log_action("PLOT")
def plot_vector(v: GapVector, out: str, *, padded: bool = False) -> dict[str, Any]:
    """Write the slope path of v (or of its alpha padding) to `out`.

    With `padded`, the original path sits between dotted guides at x = 2 and
    x = m + 2.
    """
    target = pad_alpha(v) if padded else v
    path = slope_vector(target)
    svg = path_svg(
        path.values,
        title=", ".join(str(x) for x in v.entries),
        labels=True,
        guides=(2, v.m + 2) if padded else None,
    )
    storage.write_text(out, svg)
    logger.info("figure_written", extra={"out": out, "points": len(path.values)})
    return {
        "out": out,
        "kind": "slope_path",
        "padded": padded,
        "points": len(path.values),
        "values": [format_rational(x) for x in path.values],
    }
