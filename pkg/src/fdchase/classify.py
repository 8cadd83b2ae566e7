"""Four-valued classification of tuples from a chase result."""

from __future__ import annotations

import enum
from collections.abc import Iterable
from itertools import combinations

from .chase import ChaseResult, chase, chase_table
from .core import FD, Delta, LowerClosureIndex, Tuple
from .semantics import scheme_closure

__all__ = [
    "TruthValue",
    "IncSet",
    "inc_set",
    "truth_value",
    "Classifier",
    "is_consistent",
    "conflict_degree",
    "truth_from_flags",
]


class TruthValue(enum.Enum):
    TRUE = "true"
    INC = "inc"
    UNKN = "unkn"
    FALSE = "false"

    def __str__(self) -> str:
        return self.value


def truth_from_flags(derivable: bool, potentially_false: bool) -> TruthValue:
    if derivable:
        return TruthValue.INC if potentially_false else TruthValue.TRUE
    return TruthValue.FALSE if potentially_false else TruthValue.UNKN


class IncSet(frozenset):
    """The set of inconsistent tuples."""

    def __repr__(self) -> str:
        return f"IncSet({sorted(map(repr, self))})"


def inc_set(result: ChaseResult, fds: Iterable[FD] | None = None) -> IncSet:
    """All inconsistent tuples.

    For each chased row ``t`` and each FD ``X -> A`` inside ``sch(t)`` whose
    ``t.X`` is a recorded conflict, every restriction ``t.Q`` with
    ``X`` in the scheme closure of ``Q`` is inconsistent.
    """
    fds = tuple(result.fds if fds is None else fds)
    out: set[Tuple] = set()
    for t in result.dstar:
        conflicted = [fd for fd in fds if fd.attributes <= t.schema and t.restrict(fd.lhs) in result.inc.inc(fd)]
        if not conflicted:
            continue
        attrs = sorted(t.schema)
        for k in range(1, len(attrs) + 1):
            for q in combinations(attrs, k):
                closure = scheme_closure(fds, q).attributes
                if any(fd.lhs <= closure for fd in conflicted):
                    out.add(t.restrict(q))
    return IncSet(out)


def truth_value(t: Tuple, result: ChaseResult, incs: IncSet | None = None, fds: Iterable[FD] | None = None) -> TruthValue:
    """Truth value of ``t``; falsity is decided by chasing ``dstar`` with ``t`` added."""
    fds = tuple(result.fds if fds is None else fds)
    if incs is None:
        incs = inc_set(result, fds)
    if any(t.issubtuple(r) for r in result.dstar):
        return TruthValue.INC if t in incs else TruthValue.TRUE
    extended = chase_table(result.dstar | {t}, fds)
    return TruthValue.FALSE if t in inc_set(extended, fds) else TruthValue.UNKN


class Classifier:
    """Chase once, then answer many truth-value queries against the same data."""

    def __init__(self, delta: Delta, result: ChaseResult | None = None):
        self.delta = delta
        self.result = result if result is not None else chase(delta)
        self.incs = inc_set(self.result, delta.fds)
        self._index = LowerClosureIndex(self.result.dstar)

    def __call__(self, t: Tuple) -> TruthValue:
        if t in self._index:
            return TruthValue.INC if t in self.incs else TruthValue.TRUE
        extended = chase_table(self.result.dstar | {t}, self.delta.fds)
        return TruthValue.FALSE if t in inc_set(extended, self.delta.fds) else TruthValue.UNKN

    def derives(self, t: Tuple) -> bool:
        return t in self._index

    def true_rows(self) -> list[Tuple]:
        return [r for r in self.result.dstar if r not in self.incs]


def is_consistent(delta: Delta, result: ChaseResult | None = None) -> bool:
    if result is None:
        result = chase(delta)
    return not inc_set(result, delta.fds)


def conflict_degree(result: ChaseResult) -> int:
    """Largest number of competing right-hand values for any recorded conflict; 1 if none."""
    best = 1
    for fd, xs in result.inc.nonempty().items():
        for x in xs:
            values = {r[fd.rhs] for r in result.dstar if fd.rhs in r and x.issubtuple(r)}
            best = max(best, len(values))
    return best
