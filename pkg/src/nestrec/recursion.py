"""Memoized evaluation of nested recursions with guarded self-referential indices.

A spec with arity k and order p defines

    R(n) = sum over i of R(n - a_i - sum over t of R(n - b_it))

and is evaluated bottom-up from explicit initial conditions.  Whenever an
index escapes the range of already-defined values the sequence "dies" and
the evaluator reports where and why instead of guessing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from .frequency import FrequencySequence

MAX_VALUE = 2**63 - 1


@dataclass(frozen=True)
class RecursionSpec:
    arity: int
    order: int
    outer_offsets: tuple[int, ...]
    inner_offsets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.arity < 1 or self.order < 1:
            raise ValueError("arity and order must be at least 1")
        if len(self.outer_offsets) != self.arity:
            raise ValueError("need one outer offset per summand")
        if len(self.inner_offsets) != self.arity:
            raise ValueError("need one inner offset row per summand")
        for row in self.inner_offsets:
            if len(row) != self.order:
                raise ValueError("every summand needs `order` inner offsets")
            if any(b < 1 for b in row):
                raise ValueError("inner offsets must be positive")
        if any(a < 0 for a in self.outer_offsets):
            raise ValueError("outer offsets cannot be negative")


class DeadReason(enum.Enum):
    INNER_INDEX_NONPOSITIVE = "inner_index_nonpositive"
    OUTER_INDEX_NONPOSITIVE = "outer_index_nonpositive"
    OUTER_INDEX_NOT_YET_DEFINED = "outer_index_not_yet_defined"


@dataclass(frozen=True)
class EvalResult:
    values: tuple[int, ...]
    dead_at: Optional[int] = None
    reason: Optional[DeadReason] = None

    @property
    def alive(self) -> bool:
        return self.dead_at is None


def evaluate(spec: RecursionSpec, initial: Sequence[int], n_max: int) -> EvalResult:
    """Evaluate R(1..n_max) from the given initial conditions.

    Returns all n_max values when the recursion stays defined, or the values
    up to the death index otherwise.  Values are capped at 2^63 - 1; going
    past that is a hard error rather than silent wraparound.
    """
    if not initial:
        raise ValueError("at least one initial condition is required")
    if any(v < 1 for v in initial):
        raise ValueError("initial conditions must be positive")
    if n_max < len(initial):
        return EvalResult(tuple(initial[: max(0, n_max)]), None, None)
    values = [0] * (n_max + 1)  # 1-indexed
    values[1 : len(initial) + 1] = list(initial)
    offsets = tuple(zip(spec.outer_offsets, spec.inner_offsets))
    for n in range(len(initial) + 1, n_max + 1):
        total = 0
        for a, row in offsets:
            idx = n - a
            for b in row:
                t = n - b
                if t <= 0:
                    return EvalResult(tuple(values[1:n]), n, DeadReason.INNER_INDEX_NONPOSITIVE)
                idx -= values[t]
            if idx <= 0:
                return EvalResult(tuple(values[1:n]), n, DeadReason.OUTER_INDEX_NONPOSITIVE)
            if idx >= n:
                return EvalResult(tuple(values[1:n]), n, DeadReason.OUTER_INDEX_NOT_YET_DEFINED)
            total += values[idx]
        if total > MAX_VALUE:
            raise OverflowError(f"R({n}) exceeds 2^63 - 1")
        values[n] = total
    return EvalResult(tuple(values[1:]))


def slowness_violation(values: Sequence[int]) -> Optional[int]:
    """1-based index of the first term breaking slowness, or None if slow.

    Slow means the sequence starts at a positive value and every consecutive
    difference is 0 or 1.
    """
    if not values:
        return None
    if values[0] < 1:
        return 1
    for i in range(1, len(values)):
        if values[i] - values[i - 1] not in (0, 1):
            return i + 1
    return None


def is_slow(values: Sequence[int]) -> bool:
    return slowness_violation(values) is None


def frequency_of(values: Sequence[int]) -> FrequencySequence:
    """Occurrence counts of each value, dropping the possibly unfinished last run.

    The input must be slow and start at 1 so that every value up to the
    final one occurs at least once.
    """
    if slowness_violation(values) is not None:
        raise ValueError("frequency counting needs a slow sequence")
    if not values or values[0] != 1:
        raise ValueError("frequency counting needs a slow sequence starting at 1")
    entries: dict[int, int] = {}
    last = values[-1]
    for v in values:
        if v < last:
            entries[v] = entries.get(v, 0) + 1
    return FrequencySequence(entries=entries, source="empirical")


@dataclass(frozen=True)
class ProbeReport:
    survived_to: int
    dead_at: Optional[int] = None
    reason: Optional[DeadReason] = None


def death_probe(spec: RecursionSpec, initial: Sequence[int], n_max: int) -> ProbeReport:
    """Run the evaluator and report how far the sequence stays defined."""
    result = evaluate(spec, initial, n_max)
    if result.alive:
        return ProbeReport(survived_to=n_max)
    return ProbeReport(survived_to=result.dead_at - 1, dead_at=result.dead_at, reason=result.reason)


def to_document(spec: RecursionSpec, initial: Sequence[int]) -> dict:
    return {
        "arity": spec.arity,
        "order": spec.order,
        "a": list(spec.outer_offsets),
        "b": [list(row) for row in spec.inner_offsets],
        "ic": list(initial),
    }


def from_document(doc: dict) -> tuple[RecursionSpec, list[int]]:
    try:
        spec = RecursionSpec(
            arity=int(doc["arity"]),
            order=int(doc["order"]),
            outer_offsets=tuple(int(a) for a in doc["a"]),
            inner_offsets=tuple(tuple(int(b) for b in row) for row in doc["b"]),
        )
        return spec, [int(v) for v in doc["ic"]]
    except KeyError as missing:
        raise ValueError(f"recursion document is missing field {missing}") from None
