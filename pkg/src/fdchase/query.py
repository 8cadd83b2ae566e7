"""Single-table queries ``SELECT X [WHERE cond]`` and their consistent answers."""

from __future__ import annotations

import operator
import re
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Union

from .chase import ChaseResult
from .classify import Classifier, TruthValue
from .core import FD, Tuple, Universe

__all__ = [
    "QueryError",
    "QuerySyntaxError",
    "QueryTypeError",
    "RepairCapExceeded",
    "Attr",
    "Const",
    "Compare",
    "Not",
    "And",
    "Or",
    "Condition",
    "Query",
    "AnswerSet",
    "parse_condition",
    "parse_query",
    "check_condition",
    "eval_condition",
    "condition_attributes",
    "plain_answer",
    "consistent_answer",
    "repair_answers",
    "repairs_by_choice",
    "repair_choice_count",
    "satisfies_fds",
    "annotate",
]


class QueryError(ValueError):
    pass


class QuerySyntaxError(QueryError):
    pass


class QueryTypeError(QueryError):
    """Condition compares incomparable attributes or uses an unknown attribute."""


class RepairCapExceeded(RuntimeError):
    def __init__(self, size: int, cap: int):
        super().__init__(f"repair choice product has {size} combinations, above the cap of {cap}")
        self.size = size
        self.cap = cap


@dataclass(frozen=True)
class Attr:
    name: str


@dataclass(frozen=True)
class Const:
    value: Any


@dataclass(frozen=True)
class Compare:
    left: str
    op: str
    right: Attr | Const


@dataclass(frozen=True)
class Not:
    arg: Condition


@dataclass(frozen=True)
class And:
    left: Condition
    right: Condition


@dataclass(frozen=True)
class Or:
    left: Condition
    right: Condition


Condition = Union[Compare, Not, And, Or]

_OPS = {
    "=": operator.eq,
    "!=": operator.ne,
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
}
_ORDERED_OPS = {"<", "<=", ">", ">="}


def condition_attributes(cond: Condition) -> frozenset[str]:
    if isinstance(cond, Compare):
        out = {cond.left}
        if isinstance(cond.right, Attr):
            out.add(cond.right.name)
        return frozenset(out)
    if isinstance(cond, Not):
        return condition_attributes(cond.arg)
    return condition_attributes(cond.left) | condition_attributes(cond.right)


def check_condition(cond: Condition, universe: Universe) -> None:
    """Raise ``QueryTypeError`` for unknown attributes or ill-typed comparisons."""
    if isinstance(cond, Not):
        check_condition(cond.arg, universe)
        return
    if isinstance(cond, (And, Or)):
        check_condition(cond.left, universe)
        check_condition(cond.right, universe)
        return
    if cond.left not in universe:
        raise QueryTypeError(f"unknown attribute {cond.left!r}")
    if cond.op not in _OPS:
        raise QueryTypeError(f"unknown comparison {cond.op!r}")
    if isinstance(cond.right, Attr):
        other = cond.right.name
        if other not in universe:
            raise QueryTypeError(f"unknown attribute {other!r}")
        if not universe.comparable(cond.left, other):
            raise QueryTypeError(f"{cond.left} and {other} have different domains")
    if cond.op in _ORDERED_OPS and not universe.is_ordered(cond.left):
        raise QueryTypeError(f"{cond.op} needs an ordered domain, {cond.left} is unordered")


def eval_condition(t: Tuple, cond: Condition, universe: Universe | None = None) -> bool:
    """Two-valued evaluation over a partial tuple.

    An atom on an attribute missing from ``t`` is false and ``AND``/``OR``
    are classical; ``NOT phi`` holds only when every attribute of ``phi`` is
    bound in ``t`` and ``phi`` is false, so negation never succeeds on a null.
    """
    if universe is not None:
        check_condition(cond, universe)
    return _eval(t, cond)


def _eval(t: Tuple, cond: Condition) -> bool:
    if isinstance(cond, Compare):
        if cond.left not in t:
            return False
        if isinstance(cond.right, Attr):
            if cond.right.name not in t:
                return False
            rhs = t[cond.right.name]
        else:
            rhs = cond.right.value
        try:
            return _OPS[cond.op](t[cond.left], rhs)
        except TypeError:
            return False
    if isinstance(cond, Not):
        return condition_attributes(cond.arg) <= t.schema and not _eval(t, cond.arg)
    if isinstance(cond, And):
        return _eval(t, cond.left) and _eval(t, cond.right)
    return _eval(t, cond.left) or _eval(t, cond.right)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(
    r"""\s*(?:
        (?P<str>'(?:[^']|'')*'|"(?:[^"]|"")*")
      | (?P<num>-?\d+(?:\.\d+)?(?![\w.]))
      | (?P<op><=|>=|!=|<>|≠|≤|≥|=|<|>)
      | (?P<punct>[(),¬∧∨])
      | (?P<word>[A-Za-z_][\w.']*)
    )""",
    re.VERBOSE,
)
_KEYWORDS = {"SELECT", "WHERE", "AND", "OR", "NOT"}
_OP_ALIASES = {"<>": "!=", "≠": "!=", "≤": "<=", "≥": ">="}
_PUNCT_ALIASES = {"¬": "NOT", "∧": "AND", "∨": "OR"}


def _tokenize(text: str) -> list[tuple[str, Any]]:
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise QuerySyntaxError(f"unexpected input at position {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        kind = m.lastgroup
        val = m.group(kind)
        if kind == "str":
            q = val[0]
            out.append(("const", val[1:-1].replace(q + q, q)))
        elif kind == "num":
            out.append(("const", float(val) if "." in val else int(val)))
        elif kind == "op":
            out.append(("op", _OP_ALIASES.get(val, val)))
        elif kind == "punct" and val in _PUNCT_ALIASES:
            out.append(("kw", _PUNCT_ALIASES[val]))
        elif kind == "punct":
            out.append(("punct", val))
        elif val.upper() in _KEYWORDS:
            out.append(("kw", val.upper()))
        else:
            out.append(("name", val))
    return out


class _Parser:
    def __init__(self, tokens: list[tuple[str, Any]]):
        self.toks = tokens
        self.i = 0

    def peek(self) -> tuple[str, Any] | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self) -> tuple[str, Any]:
        tok = self.peek()
        if tok is None:
            raise QuerySyntaxError("unexpected end of query")
        self.i += 1
        return tok

    def accept(self, kind: str, value: Any = None) -> bool:
        tok = self.peek()
        if tok is not None and tok[0] == kind and (value is None or tok[1] == value):
            self.i += 1
            return True
        return False

    def expect(self, kind: str, value: Any = None) -> Any:
        tok = self.next()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            raise QuerySyntaxError(f"expected {want}, got {tok[1]!r}")
        return tok[1]

    def done(self) -> None:
        if self.peek() is not None:
            raise QuerySyntaxError(f"trailing input starting at {self.peek()[1]!r}")

    # or_expr := and_expr (OR and_expr)*
    def or_expr(self) -> Condition:
        node = self.and_expr()
        while self.accept("kw", "OR"):
            node = Or(node, self.and_expr())
        return node

    def and_expr(self) -> Condition:
        node = self.not_expr()
        while self.accept("kw", "AND"):
            node = And(node, self.not_expr())
        return node

    def not_expr(self) -> Condition:
        if self.accept("kw", "NOT"):
            return Not(self.not_expr())
        if self.accept("punct", "("):
            node = self.or_expr()
            self.expect("punct", ")")
            return node
        return self.atom()

    def atom(self) -> Condition:
        left = self.expect("name")
        op = self.expect("op")
        kind, val = self.next()
        if kind == "name":
            return Compare(left, op, Attr(val))
        if kind == "const":
            return Compare(left, op, Const(val))
        raise QuerySyntaxError(f"expected an attribute or a constant after {op}, got {val!r}")


def parse_condition(text: str, universe: Universe | None = None) -> Condition:
    p = _Parser(_tokenize(text))
    cond = p.or_expr()
    p.done()
    if universe is not None:
        cond = _coerce(cond, universe)
        check_condition(cond, universe)
    return cond


def _coerce(cond: Condition, universe: Universe) -> Condition:
    """Quoted constants compared against ordered attributes become numbers when they parse as such."""
    if isinstance(cond, Not):
        return Not(_coerce(cond.arg, universe))
    if isinstance(cond, And):
        return And(_coerce(cond.left, universe), _coerce(cond.right, universe))
    if isinstance(cond, Or):
        return Or(_coerce(cond.left, universe), _coerce(cond.right, universe))
    if isinstance(cond.right, Const) and cond.left in universe:
        v = cond.right.value
        if universe.is_ordered(cond.left) and isinstance(v, str):
            try:
                v = int(v)
            except ValueError:
                try:
                    v = float(v)
                except ValueError:
                    pass
        elif not universe.is_ordered(cond.left) and not isinstance(v, str):
            v = str(cond.right.value)
        return Compare(cond.left, cond.op, Const(v))
    return cond


@dataclass(frozen=True)
class Query:
    select: tuple[str, ...]
    where: Condition | None = None

    def __post_init__(self) -> None:
        sel = (self.select,) if isinstance(self.select, str) else tuple(self.select)
        if not sel:
            raise QuerySyntaxError("SELECT needs at least one attribute")
        if len(set(sel)) != len(sel):
            raise QuerySyntaxError("duplicate attribute in SELECT")
        object.__setattr__(self, "select", sel)

    @property
    def attrs(self) -> frozenset[str]:
        return frozenset(self.select)

    def check(self, universe: Universe) -> None:
        for a in self.select:
            if a not in universe:
                raise QueryTypeError(f"unknown attribute {a!r} in SELECT")
        if self.where is not None:
            check_condition(self.where, universe)

    def matches(self, t: Tuple) -> bool:
        if not self.attrs <= t.schema:
            return False
        return self.where is None or eval_condition(t, self.where)


def parse_query(text: str, universe: Universe | None = None) -> Query:
    p = _Parser(_tokenize(text))
    p.expect("kw", "SELECT")
    attrs = [p.expect("name")]
    while p.accept("punct", ","):
        attrs.append(p.expect("name"))
    where = None
    if p.accept("kw", "WHERE"):
        where = p.or_expr()
    p.done()
    if universe is not None and where is not None:
        where = _coerce(where, universe)
    q = Query(tuple(attrs), where)
    if universe is not None:
        q.check(universe)
    return q


# ---------------------------------------------------------------- answers


@dataclass(frozen=True)
class AnswerSet:
    schema: tuple[str, ...]
    tuples: frozenset[Tuple]
    mode: str = "plain"
    labels: dict[Tuple, TruthValue] | None = field(default=None, compare=False)

    def __iter__(self) -> Iterator[Tuple]:
        return iter(self.tuples)

    def __len__(self) -> int:
        return len(self.tuples)

    def __contains__(self, t: object) -> bool:
        return t in self.tuples

    def rows(self) -> list[tuple]:
        """Answer tuples as plain value tuples in SELECT order, sorted."""
        return sorted((tuple(t[a] for a in self.schema) for t in self.tuples), key=lambda r: tuple(map(str, r)))


def _rows(q: Query, result: ChaseResult) -> Iterator[Tuple]:
    for t in result.dstar:
        if q.matches(t):
            yield t


def _conflicted(t: Tuple, fd: FD, result: ChaseResult) -> bool:
    return t.restrict(fd.lhs) in result.inc.inc(fd)


def plain_answer(q: Query, result: ChaseResult) -> AnswerSet:
    return AnswerSet(q.select, frozenset(t.restrict(q.attrs) for t in _rows(q, result)), "plain")


def consistent_answer(q: Query, result: ChaseResult, fds: Iterable[FD] | None = None) -> AnswerSet:
    """Projections of rows that hit no recorded conflict of an FD lying inside ``X``."""
    fds = tuple(result.fds if fds is None else fds)
    local = [fd for fd in fds if fd.attributes <= q.attrs]
    out = set()
    for t in _rows(q, result):
        if not any(_conflicted(t, fd, result) for fd in local):
            out.add(t.restrict(q.attrs))
    return AnswerSet(q.select, frozenset(out), "consistent")


def repair_answers(q: Query, result: ChaseResult, fds: Iterable[FD] | None = None) -> tuple[AnswerSet, AnswerSet]:
    """Lower and upper repair-based answers computed straight from the chase."""
    fds = tuple(result.fds if fds is None else fds)
    lower, upper = set(), set()
    for t in _rows(q, result):
        hits = [fd for fd in fds if fd.attributes <= t.schema and _conflicted(t, fd, result)]
        x = t.restrict(q.attrs)
        if not hits:
            lower.add(x)
        if not any(fd.rhs in q.attrs for fd in hits):
            upper.add(x)
    return AnswerSet(q.select, frozenset(lower), "lower"), AnswerSet(q.select, frozenset(upper), "upper")


def annotate(answer: AnswerSet, classifier: Classifier) -> AnswerSet:
    """Attach each answer tuple's truth value in the whole database."""
    labels = {t: classifier(t) for t in answer.tuples}
    return AnswerSet(answer.schema, answer.tuples, answer.mode, labels)


# ---------------------------------------------------------------- repairs


def satisfies_fds(rows: Iterable[Tuple], fds: Iterable[FD]) -> bool:
    """Relational FD satisfaction; rows lacking some attribute of an FD are ignored for it."""
    rows = list(rows)
    for fd in fds:
        seen: dict[Tuple, Any] = {}
        for r in rows:
            if not fd.attributes <= r.schema:
                continue
            x = r.restrict(fd.lhs)
            if seen.setdefault(x, r[fd.rhs]) != r[fd.rhs]:
                return False
    return True


def _choices(result: ChaseResult) -> list[tuple[FD, Tuple, list[Any]]]:
    out = []
    for fd in result.fds:
        for x in sorted(result.inc.inc(fd), key=repr):
            vals = {r[fd.rhs] for r in result.dstar if fd.rhs in r and x.issubtuple(r)}
            out.append((fd, x, sorted(vals, key=repr)))
    return out


def repair_choice_count(result: ChaseResult) -> int:
    n = 1
    for _fd, _x, vals in _choices(result):
        n *= max(len(vals), 1)
    return n


def repairs_by_choice(result: ChaseResult, cap: int | None = None) -> set[frozenset[Tuple]]:
    """Pick one surviving right-hand value per conflict and drop the rows that disagree."""
    choices = _choices(result)
    size = repair_choice_count(result)
    if cap is not None and size > cap:
        raise RepairCapExceeded(size, cap)
    out: set[frozenset[Tuple]] = set()
    for pick in product(*(vals for _fd, _x, vals in choices)):
        dropped = set()
        for (fd, x, _vals), a in zip(choices, pick):
            for r in result.dstar:
                if fd.rhs in r and x.issubtuple(r) and r[fd.rhs] != a:
                    dropped.add(r)
        out.add(result.dstar - dropped)
    return out


def project_answers(q: Query, rows: Iterable[Tuple]) -> frozenset[Tuple]:
    return frozenset(t.restrict(q.attrs) for t in rows if q.matches(t))


def intersect_all(sets: Sequence[frozenset]) -> frozenset:
    if not sets:
        return frozenset()
    acc = set(sets[0])
    for s in sets[1:]:
        acc &= s
    return frozenset(acc)
