"""Inconsistency-tolerant chase, four-valued tuple classification and consistent answers."""

from .chase import ChaseResult, ChaseStats, IncMap, chase, chase_table
from .classify import Classifier, IncSet, TruthValue, conflict_degree, inc_set, is_consistent, truth_value
from .core import FD, Delta, Tuple, Universe, canonical_sort, in_lower_closure, reduce_table, restrict, subtuple
from .fourlogic import FourValue, knowledge_le, merge_sources, merged_truth_report, oplus, oplus_bar, truth_le
from .query import (
    AnswerSet,
    Query,
    consistent_answer,
    eval_condition,
    parse_condition,
    parse_query,
    plain_answer,
    repair_answers,
    repairs_by_choice,
)
from .semantics import (
    TMapping,
    derives,
    derives_meet,
    is_interpretation,
    mu_star,
    pot_false,
    scheme_closure,
    tmap_satisfies_delta,
    tmap_satisfies_fd,
    tuple_closure,
)

__all__ = [
    "AnswerSet", "ChaseResult", "ChaseStats", "Classifier", "Delta", "FD", "FourValue", "IncMap", "IncSet",
    "Query", "TMapping", "TruthValue", "Tuple", "Universe",
    "canonical_sort", "chase", "chase_table", "conflict_degree", "consistent_answer", "derives", "derives_meet",
    "eval_condition", "in_lower_closure", "inc_set", "is_consistent", "is_interpretation", "knowledge_le",
    "merge_sources", "merged_truth_report", "mu_star", "oplus", "oplus_bar", "parse_condition", "parse_query",
    "plain_answer", "pot_false", "reduce_table", "repair_answers", "repairs_by_choice", "restrict",
    "scheme_closure", "subtuple", "tmap_satisfies_delta", "tmap_satisfies_fd", "truth_le", "truth_value",
    "tuple_closure",
]
