"""Randomized cross-checks between the fast algorithms and the brute-force oracle.

Each check takes one generated instance and returns a list of mismatch
descriptions (empty when the check holds).  ``run_suite`` drives them over
many seeds and collects a line-oriented discrepancy report.
"""

from __future__ import annotations

import random
import time
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field

from .chase import ChaseResult, chase, chase_table
from .classify import Classifier, TruthValue, inc_set, is_consistent, truth_value
from .core import Delta, LowerClosureIndex, Tuple
from .fourlogic import knowledge_le, merged_truth_report
from .oracle import (
    RandomInstanceSpec,
    all_tuples,
    answers_from_repairs,
    generate_instance,
    repairs_brute,
    truth_value_def,
)
from .query import (
    And,
    Compare,
    Condition,
    Const,
    Not,
    Or,
    Query,
    consistent_answer,
    plain_answer,
    repair_answers,
    repairs_by_choice,
)
from .semantics import is_interpretation, mu_star, scheme_closure, tuple_closure

__all__ = [
    "Instance",
    "CHECKS",
    "SuiteReport",
    "run_suite",
    "random_query",
    "consistent_answer_by_definition",
]


@dataclass
class Instance:
    seed: int
    delta: Delta
    result: ChaseResult = field(init=False)
    rng: random.Random = field(init=False)

    def __post_init__(self) -> None:
        self.result = chase(self.delta)
        self.rng = random.Random(self.seed ^ 0x5EED)


def _fmt(t: Tuple) -> str:
    return "(" + ",".join(f"{a}={t[a]}" for a in sorted(t)) + ")"


# ---------------------------------------------------------------- a


def check_lower_closure(inst: Instance) -> list[str]:
    """Lower closure of the chase equals the tuples with a nonempty fixpoint image."""
    mu = mu_star(inst.delta)
    index = LowerClosureIndex(inst.result.dstar)
    out = []
    for t in all_tuples(inst.delta):
        if (t in index) != bool(mu.image_bits(t)):
            out.append(f"{_fmt(t)} chase={t in index} fixpoint={bool(mu.image_bits(t))}")
    return out


# ---------------------------------------------------------------- b


def check_consistency_agreement(inc_empty: bool, interp: bool, consistent: bool) -> list[str]:
    if inc_empty == interp == consistent:
        return []
    return [f"Inc empty={inc_empty} interpretation={interp} consistent={consistent}"]


def check_consistency(inst: Instance) -> list[str]:
    return check_consistency_agreement(
        not inc_set(inst.result, inst.delta.fds),
        is_interpretation(mu_star(inst.delta)),
        is_consistent(inst.delta, inst.result),
    )


# ---------------------------------------------------------------- c


def check_truth_values(inst: Instance) -> list[str]:
    """Algorithm-side truth values against the definition, plus the falsity and truth characterizations."""
    delta, result = inst.delta, inst.result
    clf = Classifier(delta, result)
    mu = mu_star(delta)
    incs = clf.incs
    index = LowerClosureIndex(result.dstar)
    out = []
    for t in all_tuples(delta):
        got = clf(t)
        want = truth_value_def(delta, t, mu)
        if got != want:
            out.append(f"{_fmt(t)} algorithm={got} definition={want}")
            continue
        derivable = t in index
        # true tuples are exactly LoCl(D*) minus Inc
        if (got is TruthValue.TRUE) != (derivable and t not in incs):
            out.append(f"{_fmt(t)} true-set mismatch")
        # false iff not derivable and inconsistent once added; here via a chase of D + t
        if not derivable:
            ext = chase_table(delta.table | {t}, delta.fds)
            is_false = t in inc_set(ext, delta.fds)
            if (got is TruthValue.FALSE) != is_false:
                out.append(f"{_fmt(t)} falsity characterization mismatch")
    return out


# ---------------------------------------------------------------- d


def check_closure_vs_scheme(inst: Instance) -> list[str]:
    """For q and a below a derivable t: a in q+ iff A in Q+."""
    delta, result = inst.delta, inst.result
    out = []
    cache: dict[Tuple, frozenset] = {}
    for t in result.dstar:
        for q in t.subtuples():
            if q not in cache:
                cache[q] = tuple_closure(delta, q, result).constants
            qplus = scheme_closure(delta.fds, q.schema).attributes
            for a, v in t.items():
                if ((a, v) in cache[q]) != (a in qplus):
                    out.append(f"t={_fmt(t)} q={_fmt(q)} a={a}={v}")
    return out


# ---------------------------------------------------------------- e


def random_condition(inst: Instance, depth: int = 0) -> Condition:
    rng = inst.rng
    consts = sorted(inst.delta.constants(), key=repr)
    roll = rng.random()
    if depth < 2 and roll < 0.25:
        return And(random_condition(inst, depth + 1), random_condition(inst, depth + 1))
    if depth < 2 and roll < 0.4:
        return Or(random_condition(inst, depth + 1), random_condition(inst, depth + 1))
    if depth < 2 and roll < 0.5:
        return Not(random_condition(inst, depth + 1))
    a, v = rng.choice(consts)
    return Compare(a, rng.choice(["=", "=", "!="]), Const(v))


def random_query(inst: Instance) -> Query:
    rng = inst.rng
    attrs = list(inst.delta.universe.attributes)
    x = rng.sample(attrs, rng.randint(1, len(attrs)))
    where = random_condition(inst) if rng.random() < 0.6 else None
    return Query(tuple(x), where)


def consistent_answer_by_definition(q: Query, result: ChaseResult) -> frozenset[Tuple]:
    """Plain answers whose truth value is true in the projected pair (projected table, FDs inside X)."""
    x = q.attrs
    projected = frozenset(t.restrict(x) for t in result.dstar if x <= t.schema)
    fds = tuple(fd for fd in result.fds if fd.attributes <= x)
    answers = plain_answer(q, result).tuples
    if not projected:
        return frozenset()
    sub = Delta(_sub_universe(x), projected, fds)
    mu = mu_star(sub)
    return frozenset(a for a in answers if truth_value_def(sub, a, mu) is TruthValue.TRUE)


def _sub_universe(attrs: Iterable[str]):
    from .core import Universe

    return Universe(tuple(sorted(attrs)))


def check_answer_chain(inst: Instance, queries: int = 3) -> list[str]:
    """lower <= upper <= consistent, and the consistent answer matches its definition."""
    out = []
    for _ in range(queries):
        q = random_query(inst)
        lower, upper = repair_answers(q, inst.result)
        plus = consistent_answer(q, inst.result)
        if not lower.tuples <= upper.tuples:
            out.append(f"{q} lower not inside upper")
        if not upper.tuples <= plus.tuples:
            out.append(f"{q} upper not inside consistent")
        if plus.tuples != consistent_answer_by_definition(q, inst.result):
            out.append(f"{q} consistent answer differs from its definition")
    return out


def check_lower_vs_repairs(inst: Instance, queries: int = 3) -> list[str]:
    return _vs_repairs(inst, queries, lower=True)


def check_upper_vs_repairs(inst: Instance, queries: int = 3) -> list[str]:
    return _vs_repairs(inst, queries, lower=False)


def _vs_repairs(inst: Instance, queries: int, lower: bool) -> list[str]:
    reps = repairs_brute(inst.result)
    out = []
    for _ in range(queries):
        q = random_query(inst)
        alg = repair_answers(q, inst.result)[0 if lower else 1].tuples
        ref = answers_from_repairs(q, reps)[0 if lower else 1]
        if alg != ref:
            which = "lower" if lower else "upper"
            extra = sorted(map(_fmt, alg - ref))
            missing = sorted(map(_fmt, ref - alg))
            out.append(f"{which} {_describe(q)}: extra={extra} missing={missing}")
    return out


def check_repair_procedure(inst: Instance) -> list[str]:
    """Choice-based repairs against the maximal-subset search (reported, not fatal)."""
    by_choice = repairs_by_choice(inst.result)
    brute = repairs_brute(inst.result)
    if by_choice == brute:
        return []
    return [f"choice procedure gives {len(by_choice)} repairs, maximal-subset search gives {len(brute)}"]


def _describe(q: Query) -> str:
    text = "SELECT " + ",".join(q.select)
    if q.where is not None:
        text += " WHERE " + _cond_text(q.where)
    return text


def _cond_text(c: Condition) -> str:
    if isinstance(c, Compare):
        return f"{c.left}{c.op}{c.right.value}"
    if isinstance(c, Not):
        return f"NOT ({_cond_text(c.arg)})"
    joiner = " AND " if isinstance(c, And) else " OR "
    return f"({_cond_text(c.left)}{joiner}{_cond_text(c.right)})"


# ---------------------------------------------------------------- f


def check_merge_knowledge(inst: Instance) -> list[str]:
    """Random two-way split of the rows; each fold must sit below the merged value."""
    rows = sorted(inst.delta.table, key=repr)
    if len(rows) < 2:
        return []
    rng = inst.rng
    rng.shuffle(rows)
    cut = rng.randint(1, len(rows) - 1)
    fds = list(inst.delta.fds)
    fds1 = [fd for fd in fds if rng.random() < 0.8]
    fds2 = [fd for fd in fds if rng.random() < 0.8]
    u = inst.delta.universe
    sources = [Delta(u, frozenset(rows[:cut]), tuple(fds1)), Delta(u, frozenset(rows[cut:]), tuple(fds2))]
    out = []
    for rep in merged_truth_report(sources):
        if not knowledge_le(rep.fold, rep.merged):
            vals = ",".join(map(str, rep.per_source))
            out.append(f"{_fmt(rep.tuple)} sources={vals} fold={rep.fold} merged={rep.merged}")
    return out


# ---------------------------------------------------------------- g


def check_determinism(inst: Instance, permutations: int = 5) -> list[str]:
    rows = list(inst.delta.table)
    fds = list(inst.delta.fds)
    out = []
    for k in range(permutations):
        inst.rng.shuffle(rows)
        inst.rng.shuffle(fds)
        other = chase_table(rows, fds)
        if other.dstar != inst.result.dstar or other.inc != inst.result.inc:
            out.append(f"permutation {k} changes the chase result")
    return out


CHECKS: dict[str, Callable[[Instance], list[str]]] = {
    "lower-closure": check_lower_closure,
    "consistency": check_consistency,
    "truth-values": check_truth_values,
    "closure-vs-scheme": check_closure_vs_scheme,
    "answer-chain": check_answer_chain,
    "lower-vs-repairs": check_lower_vs_repairs,
    "upper-vs-repairs": check_upper_vs_repairs,
    "merge-knowledge": check_merge_knowledge,
    "determinism": check_determinism,
}
REPORT_ONLY = {"repair-procedure": check_repair_procedure}


@dataclass
class SuiteReport:
    instances: int
    seconds: float
    failures: dict[str, list[str]]
    counts: dict[str, int]
    discrepancies: list[str]

    def passed(self, name: str) -> bool:
        return self.counts.get(name, 0) == 0

    @property
    def ok(self) -> bool:
        return all(v == 0 for v in self.counts.values())

    def lines(self) -> list[str]:
        return [line for name in self.failures for line in self.failures[name]] + self.discrepancies


def run_suite(
    instances: int = 1000,
    seed: int = 0,
    checks: Iterable[str] | None = None,
    spec: RandomInstanceSpec | None = None,
    keep: int = 20,
) -> SuiteReport:
    """Run the named checks over ``instances`` seeds starting at ``seed``.

    ``failures`` keeps up to ``keep`` report lines per check; ``counts`` is
    the number of failing instances per check.
    """
    names = list(CHECKS) if checks is None else list(checks)
    base = spec or RandomInstanceSpec()
    failures: dict[str, list[str]] = {n: [] for n in names}
    counts = {n: 0 for n in names}
    discrepancies: list[str] = []
    start = time.perf_counter()
    for s in range(seed, seed + instances):
        inst_spec = RandomInstanceSpec(
            base.max_attributes, base.max_domain, base.max_rows, base.max_fds, base.null_prob, s
        )
        inst = Instance(s, generate_instance(inst_spec))
        for name in names:
            fn = CHECKS.get(name) or REPORT_ONLY[name]
            problems = fn(inst)
            if problems:
                counts[name] += 1
                if len(failures[name]) < keep:
                    failures[name].extend(f"seed={s} {name}: {p}" for p in problems[:2])
        for p in check_repair_procedure(inst):
            discrepancies.append(f"seed={s} repair-procedure: {p}")
    return SuiteReport(instances, time.perf_counter() - start, failures, counts, discrepancies)
