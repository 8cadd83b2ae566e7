"""Set-theoretic semantics: T-mappings, the least fixpoint, and closures.

A T-mapping sends every constant to a set of tuple identifiers.  Here those
sets are stored as Python ints used as bitsets (bit ``i`` stands for the row
with identifier ``i + 1``); constants that are absent map to the empty set.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .chase import ChaseResult, chase_table
from .core import FD, Constant, Delta, LowerClosureIndex, Tuple

__all__ = [
    "TMapping",
    "TupleClosure",
    "SchemeClosure",
    "initial_mapping",
    "mu_star",
    "tmap_satisfies_fd",
    "tmap_satisfies_delta",
    "is_interpretation",
    "derives",
    "derives_meet",
    "tuple_closure",
    "scheme_closure",
    "pot_false",
]


class TMapping(Mapping):
    """Constant -> set of identifiers, extended to tuples by intersection."""

    def __init__(self, bits: Mapping[Constant, int] | None = None, *, universe_ids: int = 0):
        self._bits = {c: b for c, b in (bits or {}).items() if b}
        self._ids = universe_ids

    @classmethod
    def from_sets(cls, images: Mapping[Constant, Iterable[int]]) -> TMapping:
        bits = {}
        for c, ids in images.items():
            b = 0
            for i in ids:
                b |= 1 << (i - 1)
            bits[c] = b
        return cls(bits)

    def __getitem__(self, c: Constant) -> frozenset[int]:
        return _ids(self._bits.get(c, 0))

    def __iter__(self) -> Iterator[Constant]:
        return iter(self._bits)

    def __len__(self) -> int:
        return len(self._bits)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TMapping):
            return self._bits == other._bits
        return NotImplemented

    def __repr__(self) -> str:
        body = ", ".join(f"{a}={v!r}: {sorted(self[(a, v)])}" for a, v in sorted(self._bits, key=repr))
        return f"TMapping({body})"

    def bits(self, c: Constant) -> int:
        return self._bits.get(c, 0)

    def image_bits(self, t: Tuple | Iterable[Constant]) -> int:
        cs = t.constants if isinstance(t, Tuple) else t
        acc = -1
        for c in cs:
            acc &= self._bits.get(c, 0)
            if not acc:
                return 0
        return acc if acc != -1 else 0

    def image(self, t: Tuple) -> frozenset[int]:
        return _ids(self.image_bits(t))

    def constants_of(self, attr: str) -> list[Constant]:
        return [c for c in self._bits if c[0] == attr]


def _ids(b: int) -> frozenset[int]:
    out = []
    i = 1
    while b:
        if b & 1:
            out.append(i)
        b >>= 1
        i += 1
    return frozenset(out)


def initial_mapping(rows: Iterable[Tuple]) -> TMapping:
    """Identifiers assigned 1, 2, ... in iteration order of ``rows``."""
    bits: dict[Constant, int] = {}
    for i, t in enumerate(rows):
        for c in t.constants:
            bits[c] = bits.get(c, 0) | (1 << i)
    return TMapping(bits)


def _lhs_candidates(mu: TMapping, lhs: tuple[str, ...]) -> Iterator[tuple[tuple[Constant, ...], int]]:
    """Every x over ``lhs`` built from constants with nonempty images, with mu(x) != {}."""
    per_attr = [mu.constants_of(a) for a in lhs]
    for combo in product(*per_attr):
        b = mu.image_bits(combo)
        if b:
            yield combo, b


def mu_star(delta: Delta | tuple[Iterable[Tuple], Iterable[FD]], order: Iterable[Tuple] | None = None) -> TMapping:
    """Least T-mapping satisfying ``delta``: widen ``mu(a)`` by ``mu(x)`` until every FD holds.

    ``order`` fixes the identifier assignment; by default rows are numbered in
    the order they are given (or sorted by repr for a frozenset table).
    """
    rows, fds = _rows_fds(delta)
    if order is not None:
        rows = list(order)
    mu = dict(initial_mapping(rows)._bits)
    fds = list(fds)
    changed = True
    while changed:
        changed = False
        for fd in fds:
            lhs = tuple(sorted(fd.lhs))
            view = TMapping(mu)
            targets = view.constants_of(fd.rhs)
            for _x, xb in list(_lhs_candidates(view, lhs)):
                for a in targets:
                    ab = mu.get(a, 0)
                    if xb & ab and (xb & ~ab):
                        mu[a] = ab | xb
                        changed = True
    return TMapping(mu)


def _rows_fds(delta) -> tuple[list[Tuple], tuple[FD, ...]]:
    if isinstance(delta, Delta):
        table, fds = delta.table, delta.fds
    else:
        table, fds = delta
    rows = list(table)
    if isinstance(table, (set, frozenset)):
        rows.sort(key=repr)
    return rows, tuple(fds)


def tmap_satisfies_fd(mu: TMapping, fd: FD) -> bool:
    lhs = tuple(sorted(fd.lhs))
    for _x, xb in _lhs_candidates(mu, lhs):
        for a in mu.constants_of(fd.rhs):
            ab = mu.bits(a)
            if xb & ab and xb & ~ab:
                return False
    return True


def tmap_satisfies_delta(mu: TMapping, delta: Delta) -> bool:
    return all(mu.image_bits(t) for t in delta.table) and all(tmap_satisfies_fd(mu, fd) for fd in delta.fds)


def is_interpretation(mu: TMapping) -> bool:
    """Partition constraint: distinct values of one attribute have disjoint images."""
    seen: dict[str, int] = {}
    for (attr, _v), b in mu._bits.items():
        acc = seen.get(attr, 0)
        if acc & b:
            return False
        seen[attr] = acc | b
    return True


def derives(delta: Delta, t: Tuple, result: ChaseResult | None = None) -> bool:
    """``delta |- t``: t is a sub-tuple of some row of the chased table."""
    if result is None:
        result = chase_table(delta.table, delta.fds)
    return any(t.issubtuple(r) for r in result.dstar)


def derives_meet(delta: Delta, t1: Tuple, t2: Tuple, mu: TMapping | None = None) -> bool:
    """``delta |- (t1 meet t2)``: every model gives t1 and t2 a common identifier."""
    if mu is None:
        mu = mu_star(delta)
    return bool(mu.image_bits(t1) & mu.image_bits(t2))


@dataclass(frozen=True)
class TupleClosure:
    base: Tuple
    constants: frozenset[Constant]

    def __contains__(self, c: object) -> bool:
        return c in self.constants

    def values(self, attr: str) -> set:
        return {v for a, v in self.constants if a == attr}

    def has_clash(self) -> bool:
        attrs = [a for a, _ in self.constants]
        return len(attrs) != len(set(attrs))


def tuple_closure(delta: Delta, t: Tuple, result: ChaseResult | None = None) -> TupleClosure:
    """Constants ``a`` with ``delta |- (t <= a)``.

    ``t`` is added to the table and the result chased once; a constant ``a``
    of attribute ``A`` joins the closure when some FD ``X -> A`` has a chased
    row whose ``X`` constants are all already in the closure.  When a chase
    of ``delta`` is supplied its table stands in for ``delta.table``, and is
    used unchanged if ``t`` is already derivable.
    """
    if result is not None:
        base_rows = result.dstar
        if any(t.issubtuple(r) for r in base_rows):
            rows = base_rows
        else:
            rows = chase_table(base_rows | {t}, delta.fds).dstar
    else:
        rows = chase_table(delta.table | {t}, delta.fds).dstar
    return TupleClosure(t, saturate(t.constants, rows, delta.fds))


def saturate(seed: Iterable[Constant], rows: Iterable[Tuple], fds: Iterable[FD]) -> frozenset[Constant]:
    closure = set(seed)
    rows = list(rows)
    fds = list(fds)
    changed = True
    while changed:
        changed = False
        for fd in fds:
            for r in rows:
                if fd.rhs not in r or not fd.lhs <= r.schema:
                    continue
                c = (fd.rhs, r[fd.rhs])
                if c in closure:
                    continue
                if all((b, r[b]) in closure for b in fd.lhs):
                    closure.add(c)
                    changed = True
    return frozenset(closure)


@dataclass(frozen=True)
class SchemeClosure:
    base: frozenset[str]
    attributes: frozenset[str]

    def __contains__(self, attr: object) -> bool:
        return attr in self.attributes


def scheme_closure(fds: Iterable[FD], attrs: Iterable[str]) -> SchemeClosure:
    base = frozenset(attrs)
    if not base:
        raise ValueError("scheme closure of an empty attribute set")
    return SchemeClosure(base, _closure(tuple(fds), base))


@lru_cache(maxsize=4096)
def _closure(fds: tuple[FD, ...], base: frozenset[str]) -> frozenset[str]:
    out = set(base)
    changed = True
    while changed:
        changed = False
        for fd in fds:
            if fd.rhs not in out and fd.lhs <= out:
                out.add(fd.rhs)
                changed = True
    return frozenset(out)


def pot_false(delta: Delta, t: Tuple, result: ChaseResult | None = None) -> bool:
    """``delta |~ t``: the closure of t holds two values of one attribute."""
    return tuple_closure(delta, t, result).has_clash()


def derivable_index(result: ChaseResult) -> LowerClosureIndex:
    return LowerClosureIndex(result.dstar)
