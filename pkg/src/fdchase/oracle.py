"""Brute-force references that share no saturation code with the chase.

Derivability here comes from the least T-mapping fixpoint, repairs from a
search for maximal FD-satisfying subsets, and truth values from the
four-case definition applied to derivability and potential falsity.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from itertools import product

from .chase import ChaseResult
from .classify import TruthValue, truth_from_flags
from .core import FD, Delta, Tuple, Universe
from .query import Query, intersect_all, project_answers
from .semantics import TMapping, mu_star

__all__ = [
    "RandomInstanceSpec",
    "BruteForceLimit",
    "generate_instance",
    "all_tuples",
    "repairs_brute",
    "answers_from_repairs",
    "derives_by_fixpoint",
    "closure_by_fixpoint",
    "truth_value_def",
]

MAX_BRUTE_ROWS = 64


class BruteForceLimit(RuntimeError):
    pass


@dataclass(frozen=True)
class RandomInstanceSpec:
    max_attributes: int = 4
    max_domain: int = 3
    max_rows: int = 6
    max_fds: int = 3
    null_prob: float = 0.3
    seed: int = 0

    def __post_init__(self) -> None:
        if not 1 <= self.max_attributes <= 4:
            raise ValueError("max_attributes must be in 1..4")
        if not 1 <= self.max_domain <= 3:
            raise ValueError("max_domain must be in 1..3")
        if not 1 <= self.max_rows <= 6:
            raise ValueError("max_rows must be in 1..6")
        if not 0 <= self.max_fds <= 3:
            raise ValueError("max_fds must be in 0..3")
        if not 0.0 <= self.null_prob < 1.0:
            raise ValueError("null_prob must be in [0, 1)")


def generate_instance(spec: RandomInstanceSpec) -> Delta:
    """Seeded random Delta over exactly ``spec.max_attributes`` attributes."""
    rng = random.Random(spec.seed)
    names = [chr(ord("A") + i) for i in range(spec.max_attributes)]
    universe = Universe(names)
    values = {a: [f"{a.lower()}{j}" for j in range(rng.randint(1, spec.max_domain))] for a in names}

    rows = set()
    for _ in range(rng.randint(1, spec.max_rows)):
        row = {a: rng.choice(values[a]) for a in names if rng.random() >= spec.null_prob}
        if not row:
            a = rng.choice(names)
            row = {a: rng.choice(values[a])}
        rows.add(Tuple(row))

    fds: list[FD] = []
    if len(names) > 1:
        for _ in range(rng.randint(0, spec.max_fds)):
            rhs = rng.choice(names)
            rest = [a for a in names if a != rhs]
            lhs = rng.sample(rest, rng.randint(1, min(2, len(rest))))
            fds.append(FD(frozenset(lhs), rhs))
    return Delta(universe, frozenset(rows), tuple(fds))


def all_tuples(delta: Delta, extra: Iterable[tuple[str, object]] = ()) -> Iterator[Tuple]:
    """Every nonempty tuple built from constants occurring in ``delta`` (plus ``extra``)."""
    per_attr: dict[str, set] = {a: set() for a in delta.universe.attributes}
    for a, v in delta.constants():
        per_attr[a].add(v)
    for a, v in extra:
        per_attr[a].add(v)
    attrs = list(delta.universe.attributes)
    options = [[None, *sorted(per_attr[a], key=repr)] for a in attrs]
    for combo in product(*options):
        bound = {a: v for a, v in zip(attrs, combo) if v is not None}
        if bound:
            yield Tuple(bound)


# ---------------------------------------------------------------- derivability


def derives_by_fixpoint(delta: Delta, t: Tuple, mu: TMapping | None = None) -> bool:
    if mu is None:
        mu = mu_star(delta)
    return mu.image_bits(t) != 0


def closure_by_fixpoint(delta: Delta, t: Tuple) -> frozenset[tuple[str, object]]:
    """Tuple closure with every ``Delta_t |- xa`` test answered by the fixpoint of ``Delta_t``."""
    mu = mu_star((list(delta.table) + [t], delta.fds))
    closure = set(t.constants)
    changed = True
    while changed:
        changed = False
        for fd in delta.fds:
            lhs = sorted(fd.lhs)
            choices = [[c for c in closure if c[0] == a] for a in lhs]
            for x in product(*choices):
                xb = mu.image_bits(x)
                if not xb:
                    continue
                for a in mu.constants_of(fd.rhs):
                    if a not in closure and xb & mu.bits(a):
                        closure.add(a)
                        changed = True
    return frozenset(closure)


def pot_false_by_fixpoint(delta: Delta, t: Tuple) -> bool:
    attrs = [a for a, _ in closure_by_fixpoint(delta, t)]
    return len(attrs) != len(set(attrs))


def truth_value_def(delta: Delta, t: Tuple, mu: TMapping | None = None) -> TruthValue:
    """The four-case table over ``|-`` and ``|~``, both taken from the fixpoint."""
    return truth_from_flags(derives_by_fixpoint(delta, t, mu), pot_false_by_fixpoint(delta, t))


# ---------------------------------------------------------------- repairs


def _conflicts(r: Tuple, s: Tuple, fds: Iterable[FD]) -> bool:
    for fd in fds:
        if fd.attributes <= r.schema and fd.attributes <= s.schema:
            if all(r[b] == s[b] for b in fd.lhs) and r[fd.rhs] != s[fd.rhs]:
                return True
    return False


def repairs_brute(result: ChaseResult, fds: Iterable[FD] | None = None) -> set[frozenset[Tuple]]:
    """Maximal subsets of ``dstar`` that satisfy every FD relationally.

    FD satisfaction is a pairwise condition, so the repairs are the maximal
    independent sets of the conflict graph; they are listed with a plain
    Bron-Kerbosch search on its complement.
    """
    fds = tuple(result.fds if fds is None else fds)
    rows = sorted(result.dstar, key=repr)
    n = len(rows)
    if n > MAX_BRUTE_ROWS:
        raise BruteForceLimit(f"{n} rows is above the brute-force limit of {MAX_BRUTE_ROWS}")
    # compatible[i]: bitmask of rows that may sit next to row i in a repair
    full = (1 << n) - 1
    compatible = [full & ~(1 << i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if _conflicts(rows[i], rows[j], fds):
                compatible[i] &= ~(1 << j)
                compatible[j] &= ~(1 << i)

    found: list[int] = []

    def expand(chosen: int, cand: int, excluded: int) -> None:
        if not cand and not excluded:
            found.append(chosen)
            return
        for i in range(n):
            bit = 1 << i
            if not cand & bit:
                continue
            expand(chosen | bit, cand & compatible[i], excluded & compatible[i])
            cand &= ~bit
            excluded |= bit

    expand(0, full, 0)
    return {frozenset(rows[i] for i in range(n) if m >> i & 1) for m in found}


def answers_from_repairs(q: Query, reps: Iterable[frozenset[Tuple]]) -> tuple[frozenset[Tuple], frozenset[Tuple]]:
    """Lower: query the intersection of all repairs.  Upper: intersect the per-repair answers."""
    reps = list(reps)
    if not reps:
        raise ValueError("no repairs given")
    common = intersect_all(reps)
    lower = project_answers(q, common)
    upper = intersect_all([project_answers(q, r) for r in reps])
    return lower, upper
