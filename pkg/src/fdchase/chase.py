"""The extended chase.

Unlike the textbook chase this one never stops on a violated dependency.  When
two rows agree on ``X`` but carry different ``A`` values, each row's ``A`` value
is grafted onto the other row and ``x`` is recorded as a conflict for
``X -> A``.  Rows hold sets of values so grafts on one row combine.  The result is a reduced table ``dstar`` whose lower closure is
exactly the set of derivable tuples, plus the per-FD conflict ledger.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from itertools import product

from .core import FD, Delta, Tuple, reduce_table

__all__ = ["ChaseResult", "ChaseStats", "IncMap", "chase", "chase_table", "chase_literal"]


class IncMap(Mapping):
    """Conflict ledger: for each FD ``X -> A`` the ``x`` values seen with two ``A`` values."""

    def __init__(self, fds: Iterable[FD], entries: Mapping[FD, Iterable[Tuple]] | None = None):
        self._fds = tuple(fds)
        entries = entries or {}
        self._data = {fd: frozenset(entries.get(fd, ())) for fd in self._fds}

    def __getitem__(self, fd: FD) -> frozenset[Tuple]:
        return self._data[fd]

    def __iter__(self):
        return iter(self._fds)

    def __len__(self) -> int:
        return len(self._fds)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IncMap):
            return self.nonempty() == other.nonempty()
        return NotImplemented

    def __repr__(self) -> str:
        body = ", ".join(f"{fd}: {sorted(map(repr, xs))}" for fd, xs in self.nonempty().items())
        return f"IncMap({{{body}}})"

    def inc(self, fd: FD) -> frozenset[Tuple]:
        return self._data.get(fd, frozenset())

    def nonempty(self) -> dict[FD, frozenset[Tuple]]:
        return {fd: xs for fd, xs in self._data.items() if xs}

    def is_empty(self) -> bool:
        return not any(self._data.values())


@dataclass(frozen=True)
class ChaseStats:
    iterations: int
    peak_working_set: int
    pairs_examined: int


@dataclass(frozen=True)
class ChaseResult:
    dstar: frozenset[Tuple]
    inc: IncMap
    fds: tuple[FD, ...]
    stats: ChaseStats = field(compare=False)


def chase(delta: Delta) -> ChaseResult:
    return chase_table(delta.table, delta.fds)


def chase_table(rows: Iterable[Tuple], fds: Iterable[FD]) -> ChaseResult:
    """Chase ``rows`` under ``fds`` to a fixpoint.

    Every input row keeps one set of values per attribute.  Completion
    and the conflict cross-product both amount to "a row holding ``x``
    receives every ``A`` value seen next to ``x``", so that is the only
    rule applied; it is re-run only for the ``x`` values whose rows or
    ``A`` values changed in the previous round.  The output rows are the
    per-row cross-products, reduced.

    Grafting single values onto single-valued rows, as ``chase_literal``
    does, forgets that two grafted copies describe the same source row.
    When conflicts on two dependencies land on one row the combinations
    of their values are then never generated, although every model
    derives them.
    """
    fds = tuple(dict.fromkeys(fds))
    lhs = [tuple(sorted(fd.lhs)) for fd in fds]
    cells: list[dict[str, set]] = [{a: {v} for a, v in t.items()} for t in dict.fromkeys(rows)]
    seen: list[dict[tuple, set]] = [{} for _ in fds]       # x -> A values next to x
    holders: list[dict[tuple, set[int]]] = [{} for _ in fds]  # x -> rows holding x

    dirty = set(range(len(cells)))
    rounds = pairs = 0
    while dirty:
        rounds += 1
        touched: list[set[tuple]] = [set() for _ in fds]
        for r in sorted(dirty):
            row = cells[r]
            for k, fd in enumerate(fds):
                for x in _keys(row, lhs[k]):
                    members = holders[k].setdefault(x, set())
                    vals = seen[k].setdefault(x, set())
                    new = row.get(fd.rhs, set()) - vals
                    if r not in members or new:
                        members.add(r)
                        vals |= new
                        touched[k].add(x)
        dirty = set()
        for k, fd in enumerate(fds):
            for x in touched[k]:
                vals = seen[k][x]
                if not vals:
                    continue
                for r in holders[k][x]:
                    pairs += 1
                    cur = cells[r].setdefault(fd.rhs, set())
                    if not vals <= cur:
                        cur |= vals
                        dirty.add(r)

    expanded = set()
    for row in cells:
        attrs = sorted(row)
        for combo in product(*(sorted(row[a], key=repr) for a in attrs)):
            expanded.add(Tuple(zip(attrs, combo)))
    inc = {
        fd: {Tuple(zip(lhs[k], x)) for x, vals in seen[k].items() if len(vals) > 1}
        for k, fd in enumerate(fds)
    }
    stats = ChaseStats(iterations=rounds, peak_working_set=len(expanded), pairs_examined=pairs)
    return ChaseResult(reduce_table(expanded), IncMap(fds, inc), fds, stats)


def _keys(row: Mapping[str, set], attrs: tuple[str, ...]) -> Iterable[tuple]:
    if not all(a in row for a in attrs):
        return ()
    return product(*(row[a] for a in attrs))


def chase_literal(rows: Iterable[Tuple], fds: Iterable[FD]) -> ChaseResult:
    """Direct transcription of the while-loop: rescans every pair until nothing changes.

    Quadratic per pass and without any pruning; kept as a reference for tests.
    """
    fds = tuple(dict.fromkeys(fds))
    work: set[Tuple] = set(rows)
    inc: dict[FD, set[Tuple]] = {fd: set() for fd in fds}
    rounds = 0
    peak = len(work)
    pairs = 0
    changed = True
    while changed:
        changed = False
        rounds += 1
        for fd in fds:
            xa = fd.attributes
            for t1 in list(work):
                if not xa <= t1.schema:
                    continue
                x = t1.restrict(fd.lhs)
                for t2 in list(work):
                    if not fd.lhs <= t2.schema or t2.restrict(fd.lhs) != x:
                        continue
                    pairs += 1
                    a1 = t1[fd.rhs]
                    if fd.rhs not in t2:
                        new = t2.with_value(fd.rhs, a1)
                    elif t2[fd.rhs] != a1:
                        new = t2.with_value(fd.rhs, a1)
                        inc[fd].add(x)
                    else:
                        continue
                    if new not in work:
                        work.add(new)
                        changed = True
        peak = max(peak, len(work))
    dstar = reduce_table(work)
    return ChaseResult(dstar, IncMap(fds, inc), fds, ChaseStats(rounds, peak, pairs))
