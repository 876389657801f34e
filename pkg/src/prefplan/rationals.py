"""Exact cost arithmetic.

Costs are kept as ``int`` when integral and ``fractions.Fraction`` otherwise,
so that equality checks on Pareto fronts never suffer rounding.  ``INF`` is the
float infinity and compares correctly against both.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Union

Cost = Union[int, Fraction]
INF = math.inf


def as_rational(value) -> Cost:
    """Coerce ``value`` (int, Fraction, float, or "p/q" string) to an exact cost."""
    if isinstance(value, bool):
        raise TypeError(f"not a number: {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, Rational):
        frac = Fraction(value)
    elif isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"not a finite number: {value!r}")
        # repr gives the shortest round-tripping decimal, so 0.1 -> 1/10
        frac = Fraction(repr(value))
    elif isinstance(value, str):
        try:
            frac = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a rational number: {value!r}") from None
    else:
        raise TypeError(f"not a number: {value!r}")
    return frac.numerator if frac.denominator == 1 else frac


def parse_bound(value) -> Cost | float:
    """Like :func:`as_rational` but also accepts ``inf``/``"inf"``."""
    if isinstance(value, float) and math.isinf(value) and value > 0:
        return INF
    if isinstance(value, str) and value.strip().lower() in ("inf", "+inf", "infinity"):
        return INF
    return as_rational(value)


def format_rational(value) -> str:
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        value = as_rational(value)
    if isinstance(value, Fraction) and value.denominator != 1:
        return f"{value.numerator}/{value.denominator}"
    return str(int(value))


def to_json_number(value):
    """JSON-friendly form: ints stay ints, proper fractions become "p/q" strings."""
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else format_rational(value)
    return value
