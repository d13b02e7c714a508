"""Lightweight run counters: recursion depth watermark and bound checks.

The evaluation schemes assert two running bounds (the accumulator of the
segmented summation stays under 2, the chained block product under 2^(i-1)).
Violations raise; the counters let tests prove the checks actually ran.
Reading or resetting never affects computed values.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvariantViolation


@dataclass
class Counters:
    max_split_depth: int = 0
    unit_bound_checks: int = 0
    growth_bound_checks: int = 0


_state = Counters()


def reset() -> None:
    _state.max_split_depth = 0
    _state.unit_bound_checks = 0
    _state.growth_bound_checks = 0


def snapshot() -> Counters:
    return Counters(_state.max_split_depth, _state.unit_bound_checks,
                    _state.growth_bound_checks)


def note_depth(depth: int) -> None:
    if depth > _state.max_split_depth:
        _state.max_split_depth = depth


def check_unit_bound(value, where: str) -> None:
    """Assert |value| < 2 (componentwise for complex values)."""
    _state.unit_bound_checks += 1
    parts = (value,) if hasattr(value, "abs_lt_pow2") else (value.re, value.im)
    for part in parts:
        if not part.abs_lt_pow2(1):
            raise InvariantViolation(f"|h| < 2 violated in {where}")


def check_growth_bound(value, index: int, where: str) -> None:
    """Assert |value| < 2^(index-1) (componentwise for complex values)."""
    _state.growth_bound_checks += 1
    parts = (value,) if hasattr(value, "abs_lt_pow2") else (value.re, value.im)
    for part in parts:
        if not part.abs_lt_pow2(index - 1):
            raise InvariantViolation(f"|h| < 2^{index - 1} violated in {where}")
