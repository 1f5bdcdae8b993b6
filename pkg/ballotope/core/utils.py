"""Utility helpers (validation + parsing)."""

from __future__ import annotations

from collections.abc import Iterable
from fractions import Fraction

from ballotope.core.exceptions import ParseError, PreconditionError


def parse_bits(raw: str) -> tuple[int, ...]:
    """Parse a word over {'0','1'}.

    Rules:
    - Non-empty after stripping surrounding whitespace
    - Only the characters '0' and '1'; anything else is an error, never skipped

    Args:
        raw: Bit string from user input, e.g. "11011".

    Returns:
        Tuple of ints b_1..b_n.

    Raises:
        ParseError: If the string is empty or has a foreign character.
    """
    if not isinstance(raw, str) or not raw.strip():
        raise ParseError("bit string must be a non-empty string")
    text = raw.strip()
    for pos, ch in enumerate(text, start=1):
        if ch not in "01":
            raise ParseError(f"invalid character {ch!r} at position {pos} in '{text}'")
    return tuple(int(ch) for ch in text)


def parse_rational(value: str | int | Fraction) -> Fraction:
    """Parse "p/q", an integer or a finite decimal exactly.

    "1.78" becomes 89/50; floats are rejected because they are not exact.

    Raises:
        ParseError: If the value is not an exact rational literal.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"'{value}' is not an exact rational literal")
    if isinstance(value, Fraction | int):
        return Fraction(value)
    text = str(value).strip()
    if not text:
        raise ParseError("empty rational literal")
    if "e" in text.lower():
        raise ParseError(f"'{text}': exponent notation is not accepted")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"'{text}' is not a rational (use p/q or a finite decimal)") from e


def parse_vector(raw: str) -> tuple[Fraction, ...]:
    """Parse a comma separated list of rationals, e.g. "3/4,1/3,1/2"."""
    if not isinstance(raw, str) or not raw.strip():
        raise ParseError("vector must be a non-empty comma separated list")
    parts = [p for p in (s.strip() for s in raw.strip().strip("[]").split(","))]
    if any(not p for p in parts):
        raise ParseError(f"empty entry in vector '{raw}'")
    return tuple(parse_rational(p) for p in parts)


def format_rational(value: Fraction | int) -> str:
    """Render an exact rational as "p/q" (integers too: 1 -> "1/1")."""
    q = Fraction(value)
    return f"{q.numerator}/{q.denominator}"


def require_odd_length(entries: Iterable[object], what: str = "vector") -> int:
    """Return the length of entries, failing unless it is odd and >= 1."""
    m = len(list(entries))
    if m < 1 or m % 2 == 0:
        raise PreconditionError(f"{what} must have odd length >= 1, got {m}")
    return m


def require_positive(value: int, name: str) -> int:
    """Validate a positive integer parameter."""
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise PreconditionError(f"'{name}' must be a positive integer, got {value!r}")
    return value
