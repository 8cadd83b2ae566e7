"""Belnap's four values, their connectives, and merging of sources."""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import reduce

from .chase import chase
from .classify import Classifier, TruthValue
from .core import Delta, Tuple

__all__ = [
    "FourValue",
    "h",
    "h_inv",
    "neg4",
    "and4",
    "or4",
    "oplus",
    "otimes",
    "oplus_bar",
    "knowledge_le",
    "truth_le",
    "merge_sources",
    "ProbeReport",
    "merged_truth_report",
    "default_probes",
]


class FourValue(enum.Enum):
    T = "t"
    B = "b"
    N = "n"
    F = "f"

    def __str__(self) -> str:
        return self.value


T, B, N, F = FourValue.T, FourValue.B, FourValue.N, FourValue.F
_ORDER = (T, B, N, F)


def _table(rows: str) -> dict[tuple[FourValue, FourValue], FourValue]:
    # rows/columns in the order t b n f
    out = {}
    for v1, row in zip(_ORDER, rows.split()):
        for v2, ch in zip(_ORDER, row):
            out[v1, v2] = FourValue(ch)
    return out


_NEG = {T: F, B: B, N: N, F: T}
_OR = _table("tttt tbtb ttnn tbnf")
_AND = _table("tbnf bbff nfnf ffff")
_OPLUS = _table("tbtb bbbb tbnf bbff")
_OTIMES = _table("ttnn tbnf nnnn nfnf")


def neg4(v: FourValue) -> FourValue:
    return _NEG[v]


def or4(v1: FourValue, v2: FourValue) -> FourValue:
    return _OR[v1, v2]


def and4(v1: FourValue, v2: FourValue) -> FourValue:
    return _AND[v1, v2]


def oplus(v1: FourValue, v2: FourValue) -> FourValue:
    return _OPLUS[v1, v2]


def otimes(v1: FourValue, v2: FourValue) -> FourValue:
    return _OTIMES[v1, v2]


_H = {TruthValue.TRUE: T, TruthValue.INC: B, TruthValue.UNKN: N, TruthValue.FALSE: F}
_H_INV = {v: k for k, v in _H.items()}


def h(v: TruthValue) -> FourValue:
    return _H[v]


def h_inv(v: FourValue) -> TruthValue:
    return _H_INV[v]


def oplus_bar(v1: TruthValue, v2: TruthValue) -> TruthValue:
    return h_inv(oplus(h(v1), h(v2)))


# knowledge: n below t and f, both below b.  truth: f below n and b, both below t.
_K_UP = {N: {N, T, F, B}, T: {T, B}, F: {F, B}, B: {B}}
_T_UP = {F: {F, N, B, T}, N: {N, T}, B: {B, T}, T: {T}}


def knowledge_le(v1, v2) -> bool:
    """Knowledge order; accepts either ``TruthValue`` or ``FourValue``."""
    a = h(v1) if isinstance(v1, TruthValue) else v1
    b = h(v2) if isinstance(v2, TruthValue) else v2
    return b in _K_UP[a]


def truth_le(v1, v2) -> bool:
    a = h(v1) if isinstance(v1, TruthValue) else v1
    b = h(v2) if isinstance(v2, TruthValue) else v2
    return b in _T_UP[a]


def merge_sources(sources: Sequence[Delta]) -> Delta:
    """Union of the tables and of the FD sets; all sources must share one universe."""
    if not sources:
        raise ValueError("nothing to merge")
    universe = sources[0].universe
    for s in sources[1:]:
        if s.universe != universe:
            raise ValueError("cannot merge sources over different universes")
    rows = frozenset().union(*(s.table for s in sources))
    fds = tuple(dict.fromkeys(fd for s in sources for fd in s.fds))
    return Delta(universe, rows, fds)


@dataclass(frozen=True)
class ProbeReport:
    tuple: Tuple
    per_source: tuple[TruthValue, ...]
    fold: TruthValue
    merged: TruthValue

    @property
    def equal(self) -> bool:
        return self.fold == self.merged

    @property
    def knowledge_increases(self) -> bool:
        return knowledge_le(self.fold, self.merged)


def default_probes(sources: Sequence[Delta], merged: Delta | None = None) -> set[Tuple]:
    """Sub-tuples of the merged chase plus every single constant of the sources."""
    if merged is None:
        merged = merge_sources(sources)
    probes: set[Tuple] = set()
    for r in chase(merged).dstar:
        probes.update(r.subtuples())
    for s in sources:
        for a, v in s.constants():
            probes.add(Tuple({a: v}))
    return probes


def merged_truth_report(sources: Sequence[Delta], probes: Iterable[Tuple] | None = None) -> list[ProbeReport]:
    merged = merge_sources(sources)
    if probes is None:
        probes = default_probes(sources, merged)
    per_source = [Classifier(s) for s in sources]
    whole = Classifier(merged)
    out = []
    for t in probes:
        vals = tuple(c(t) for c in per_source)
        fold = reduce(oplus_bar, vals)
        out.append(ProbeReport(t, vals, fold, whole(t)))
    return out
