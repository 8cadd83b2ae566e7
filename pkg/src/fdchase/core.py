"""Tuples, tables and universes.

A tuple is a partial map from attribute names to values; an attribute that is
not bound is a null.  Constants are identified by ``(attribute, value)`` pairs,
so values of different attributes never collide even when the attributes share
a domain.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from itertools import combinations
from numbers import Number
from typing import Any

__all__ = [
    "Universe",
    "Tuple",
    "FD",
    "Delta",
    "Table",
    "make_table",
    "subtuple",
    "restrict",
    "reduce_table",
    "in_lower_closure",
    "lower_closure",
    "canonical_sort",
]

Constant = tuple  # (attribute, value)


class Tuple(Mapping):
    """Immutable, hashable partial tuple.

    >>> t = Tuple(A="a", B="b")
    >>> sorted(t.schema)
    ['A', 'B']
    >>> t.restrict({"A"}) <= t
    True
    """

    __slots__ = ("_data", "_key", "_hash")

    def __init__(self, data: Mapping[str, Any] | Iterable[tuple[str, Any]] = (), /, **kwargs: Any):
        d = dict(data, **kwargs)
        if not d:
            raise ValueError("a tuple must bind at least one attribute")
        self._data = d
        self._key = frozenset(d.items())
        self._hash = hash(self._key)

    # Mapping protocol
    def __getitem__(self, attr: str) -> Any:
        return self._data[attr]

    def __iter__(self) -> Iterator[str]:
        return iter(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def __contains__(self, attr: object) -> bool:
        return attr in self._data

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Tuple):
            return self._hash == other._hash and self._key == other._key
        return NotImplemented

    def __le__(self, other: Tuple) -> bool:
        return self.issubtuple(other)

    def __lt__(self, other: Tuple) -> bool:
        return len(self._data) < len(other._data) and self.issubtuple(other)

    def __repr__(self) -> str:
        inner = ", ".join(f"{a}={v!r}" for a, v in sorted(self._data.items(), key=lambda kv: kv[0]))
        return f"Tuple({inner})"

    @property
    def schema(self) -> frozenset[str]:
        return frozenset(self._data)

    @property
    def constants(self) -> frozenset[Constant]:
        """The constants of the tuple as ``(attribute, value)`` pairs."""
        return self._key

    def issubtuple(self, other: Tuple) -> bool:
        if len(self._data) > len(other._data):
            return False
        return self._key <= other._key

    def restrict(self, attrs: Iterable[str]) -> Tuple:
        attrs = set(attrs)
        if not attrs:
            raise ValueError("cannot restrict a tuple to an empty schema")
        missing = attrs - self._data.keys()
        if missing:
            raise ValueError(f"attributes {sorted(missing)} are not in the tuple's schema")
        return Tuple({a: self._data[a] for a in attrs})

    def project(self, attrs: Iterable[str]) -> Tuple | None:
        """Restriction to ``attrs``, or ``None`` when some attribute is null."""
        try:
            return Tuple({a: self._data[a] for a in attrs})
        except KeyError:
            return None

    def with_value(self, attr: str, value: Any) -> Tuple:
        d = dict(self._data)
        d[attr] = value
        return Tuple(d)

    def without(self, attr: str) -> Tuple | None:
        d = {a: v for a, v in self._data.items() if a != attr}
        return Tuple(d) if d else None

    def subtuples(self) -> Iterator[Tuple]:
        """All nonempty sub-tuples, including the tuple itself."""
        items = list(self._data.items())
        for k in range(1, len(items) + 1):
            for combo in combinations(items, k):
                yield Tuple(combo)


Table = frozenset  # frozenset[Tuple]; duplicate-free by construction


def make_table(rows: Iterable[Tuple | Mapping[str, Any]]) -> frozenset[Tuple]:
    return frozenset(r if isinstance(r, Tuple) else Tuple(r) for r in rows)


@dataclass(frozen=True)
class Universe:
    """Ordered attributes with a domain tag each.

    Two attributes may be compared in a condition only when they share a
    domain tag; ``<`` and friends additionally need the tag to be ordered.
    """

    attributes: tuple[str, ...]
    domains: Mapping[str, str] = field(default_factory=dict)
    ordered: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        attrs = tuple(self.attributes)
        if not attrs:
            raise ValueError("a universe needs at least one attribute")
        if len(set(attrs)) != len(attrs):
            raise ValueError("attribute names must be unique")
        domains = {a: self.domains.get(a, a) for a in attrs}
        extra = set(self.domains) - set(attrs)
        if extra:
            raise ValueError(f"domain given for unknown attributes {sorted(extra)}")
        object.__setattr__(self, "attributes", attrs)
        object.__setattr__(self, "domains", _FrozenDict(domains))
        object.__setattr__(self, "ordered", frozenset(self.ordered))

    @classmethod
    def of(cls, *names: str) -> Universe:
        """Universe where every attribute has its own unordered domain."""
        if len(names) == 1 and not isinstance(names[0], str):
            names = tuple(names[0])
        return cls(tuple(names))

    def __contains__(self, attr: object) -> bool:
        return attr in self.domains

    def __iter__(self) -> Iterator[str]:
        return iter(self.attributes)

    def __len__(self) -> int:
        return len(self.attributes)

    def index(self, attr: str) -> int:
        return self.attributes.index(attr)

    def domain(self, attr: str) -> str:
        return self.domains[attr]

    def is_ordered(self, attr: str) -> bool:
        return self.domains[attr] in self.ordered

    def comparable(self, a: str, b: str) -> bool:
        return self.domains[a] == self.domains[b]

    def sort_attrs(self, attrs: Iterable[str]) -> list[str]:
        pos = {a: i for i, a in enumerate(self.attributes)}
        return sorted(attrs, key=pos.__getitem__)

    def check_tuple(self, t: Tuple) -> None:
        unknown = t.schema - self.domains.keys()
        if unknown:
            raise ValueError(f"tuple {t!r} uses attributes {sorted(unknown)} not in the universe")


class _FrozenDict(dict):
    def __hash__(self) -> int:  # type: ignore[override]
        return hash(frozenset(self.items()))

    def _immutable(self, *args: Any, **kwargs: Any) -> None:
        raise TypeError("immutable mapping")

    __setitem__ = __delitem__ = update = pop = popitem = clear = setdefault = _immutable  # type: ignore[assignment]


@dataclass(frozen=True)
class FD:
    """Functional dependency ``lhs -> rhs`` with a single right-hand attribute."""

    lhs: frozenset[str]
    rhs: str

    def __post_init__(self) -> None:
        lhs = frozenset([self.lhs] if isinstance(self.lhs, str) else self.lhs)
        if not lhs:
            raise ValueError("an FD needs a nonempty left-hand side")
        if self.rhs in lhs:
            raise ValueError(f"trivial FD: {self.rhs} occurs in its own left-hand side")
        object.__setattr__(self, "lhs", lhs)

    @classmethod
    def parse(cls, text: str) -> FD:
        """``FD.parse("A B -> C")``; attributes separated by spaces or commas."""
        left, sep, right = text.partition("->")
        if not sep:
            raise ValueError(f"not an FD: {text!r}")
        lhs = left.replace(",", " ").split()
        rhs = right.split()
        if len(rhs) != 1:
            raise ValueError(f"FD must have exactly one right-hand attribute: {text!r}")
        return cls(frozenset(lhs), rhs[0])

    @property
    def attributes(self) -> frozenset[str]:
        return self.lhs | {self.rhs}

    def __str__(self) -> str:
        return f"{' '.join(sorted(self.lhs))} -> {self.rhs}"

    def format(self, universe: Universe) -> str:
        return f"{' '.join(universe.sort_attrs(self.lhs))} -> {self.rhs}"


@dataclass(frozen=True)
class Delta:
    """A table together with the FDs imposed on it."""

    universe: Universe
    table: frozenset[Tuple]
    fds: tuple[FD, ...] = ()

    def __post_init__(self) -> None:
        table = make_table(self.table)
        fds = tuple(dict.fromkeys(self.fds))
        for t in table:
            self.universe.check_tuple(t)
        for fd in fds:
            unknown = fd.attributes - set(self.universe.attributes)
            if unknown:
                raise ValueError(f"FD {fd} mentions attributes {sorted(unknown)} not in the universe")
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "fds", fds)

    def with_table(self, table: Iterable[Tuple]) -> Delta:
        return Delta(self.universe, make_table(table), self.fds)

    def constants(self) -> frozenset[Constant]:
        out: set[Constant] = set()
        for t in self.table:
            out |= t.constants
        return frozenset(out)

    def values_by_attribute(self) -> dict[str, set[Any]]:
        out: dict[str, set[Any]] = {a: set() for a in self.universe.attributes}
        for t in self.table:
            for a, v in t.items():
                out[a].add(v)
        return out


def subtuple(t1: Tuple, t2: Tuple) -> bool:
    return t1.issubtuple(t2)


def restrict(t: Tuple, attrs: Iterable[str]) -> Tuple:
    return t.restrict(attrs)


def reduce_table(rows: Iterable[Tuple]) -> frozenset[Tuple]:
    """Keep only the rows that are not strict sub-tuples of another row."""
    rows = set(rows)
    by_size = sorted(rows, key=len, reverse=True)
    postings: dict[Constant, list[Tuple]] = {}
    kept: list[Tuple] = []
    for t in by_size:
        if not _covered(t, postings):
            kept.append(t)
            for c in t.constants:
                postings.setdefault(c, []).append(t)
    return frozenset(kept)


def _covered(t: Tuple, postings: Mapping[Constant, list[Tuple]]) -> bool:
    # Is t a sub-tuple of some indexed tuple?  Scan the shortest posting list.
    best = None
    for c in t.constants:
        lst = postings.get(c)
        if not lst:
            return False
        if best is None or len(lst) < len(best):
            best = lst
    return any(t.issubtuple(r) for r in best or ())


def in_lower_closure(rows: Iterable[Tuple], t: Tuple) -> bool:
    return any(t.issubtuple(r) for r in rows)


def lower_closure(rows: Iterable[Tuple]) -> frozenset[Tuple]:
    out: set[Tuple] = set()
    for r in rows:
        out.update(r.subtuples())
    return frozenset(out)


class LowerClosureIndex:
    """Repeated membership tests against the lower closure of a fixed table."""

    def __init__(self, rows: Iterable[Tuple]):
        self.rows = frozenset(rows)
        self._postings: dict[Constant, list[Tuple]] = {}
        for r in self.rows:
            for c in r.constants:
                self._postings.setdefault(c, []).append(r)

    def __contains__(self, t: Tuple) -> bool:
        return _covered(t, self._postings)

    def rows_containing(self, t: Tuple) -> list[Tuple]:
        best = None
        for c in t.constants:
            lst = self._postings.get(c)
            if not lst:
                return []
            if best is None or len(lst) < len(best):
                best = lst
        return [r for r in best or () if t.issubtuple(r)]


def _value_key(v: Any) -> tuple:
    if isinstance(v, Number) and not isinstance(v, bool):
        return (0, v, "")
    return (1, 0, str(v))


def canonical_key(t: Tuple, universe: Universe) -> tuple:
    n = len(universe.attributes)
    mask = 0
    values = []
    for i, a in enumerate(universe.attributes):
        if a in t:
            mask |= 1 << (n - 1 - i)
            values.append(_value_key(t[a]))
    return (-mask, tuple(values))


def canonical_sort(rows: Iterable[Tuple], universe: Universe) -> list[Tuple]:
    """Deterministic order: wider schemas first (bitmask in universe order, descending), then values."""
    return sorted(rows, key=lambda t: canonical_key(t, universe))
