import random

import pytest

from fdchase import FD, Delta, Universe, chase, chase_table, conflict_degree, mu_star
from fdchase.chase import chase_literal
from fdchase.core import LowerClosureIndex, in_lower_closure, reduce_table
from fdchase.oracle import RandomInstanceSpec, generate_instance

from .conftest import D, D1, D1STAR, D2, D2STAR, DSTAR, OBJ_FDS, fds, table, tup


def test_merged_objects_chase_to_seven_rows(objects):
    r = chase(objects)
    assert r.dstar == DSTAR
    id_k, id_c = OBJ_FDS
    assert r.inc.inc(id_k) == set()
    assert r.inc.inc(id_c) == {tup("Id=i2")}


def test_chain_discovers_a_hidden_conflict(chain):
    r = chase(chain)
    assert r.dstar == table("A=a,B=b,C=c", "A=a,B=b,C=c'")
    assert r.inc.nonempty() == {fds("B -> C")[0]: frozenset({tup("B=b")})}


def test_no_fds_only_reduces():
    rows = table("A=a,B=b", "A=a,B=b,C=c", "B=b'")
    r = chase_table(rows, ())
    assert r.dstar == reduce_table(rows)
    assert r.inc.is_empty()


def test_source_tables_chase_without_conflicts():
    r1, r2 = chase_table(D1, OBJ_FDS), chase_table(D2, OBJ_FDS)
    assert r1.dstar == D1STAR and len(r1.dstar) == 5
    assert r2.dstar == D2STAR and len(r2.dstar) == 3
    assert r1.inc.is_empty() and r2.inc.is_empty()


def test_chase_never_aborts_on_direct_violation():
    r = chase_table(table("A=a,B=b", "A=a,B=b'"), fds("A -> B"))
    assert r.dstar == table("A=a,B=b", "A=a,B=b'")
    assert r.inc.inc(fds("A -> B")[0]) == {tup("A=a")}


def test_chase_completes_nulls():
    r = chase_table(table("A=a,B=b", "A=a,C=c"), fds("A -> B"))
    assert r.dstar == table("A=a,B=b,C=c")


def test_stats_are_recorded(objects):
    s = chase(objects).stats
    assert s.iterations >= 1 and s.peak_working_set >= len(D) and s.pairs_examined > 0


def test_conflict_degree(objects, chain, chain_consistent):
    assert conflict_degree(chase(objects)) == 2
    assert conflict_degree(chase(chain)) == 2
    assert conflict_degree(chase(chain_consistent)) == 1


def test_conflict_degree_three():
    r = chase_table(table("A=a,B=b1", "A=a,B=b2", "A=a,B=b3"), fds("A -> B"))
    assert conflict_degree(r) == 3


def test_literal_transcription_agrees_on_running_example():
    fast, slow = chase_table(D, OBJ_FDS), chase_literal(D, OBJ_FDS)
    assert fast.dstar == slow.dstar and fast.inc == slow.inc


@pytest.mark.parametrize("seed", range(150))
def test_literal_loop_is_sound_but_may_miss_rows(seed):
    delta = generate_instance(RandomInstanceSpec(seed=seed))
    fast, slow = chase(delta), chase_literal(delta.table, delta.fds)
    index = LowerClosureIndex(fast.dstar)
    assert all(t in index for t in slow.dstar)
    for fd in delta.fds:
        assert slow.inc[fd] <= fast.inc[fd]


def test_conflicts_on_two_fds_combine_on_one_row():
    # AC -> D puts d0 and d1 on the a0 c0 rows; D -> A then puts a1 on every d0 row,
    # so a1 and d1 describe the same rows in every model
    u = Universe(("A", "B", "C", "D"))
    rows = table("A=a0,B=b2,C=c0,D=d1", "A=a0,C=c0,D=d0", "A=a0", "A=a1,B=b1,C=c0,D=d0")
    delta = Delta(u, rows, fds("A C -> D", "D -> A"))
    fast, slow = chase(delta), chase_literal(delta.table, delta.fds)
    assert mu_star(delta).image_bits(tup("A=a1,D=d1"))
    assert tup("A=a1,B=b2,C=c0,D=d1") in fast.dstar
    assert tup("A=a1,D=d1") not in LowerClosureIndex(slow.dstar)
    assert fast.inc[FD.parse("A C -> D")] == {tup("A=a0,C=c0"), tup("A=a1,C=c0")}


@pytest.mark.parametrize("seed", range(100))
def test_chase_output_invariants(seed):
    delta = generate_instance(RandomInstanceSpec(seed=seed))
    r = chase(delta)
    assert reduce_table(r.dstar) == r.dstar
    consts = delta.constants()
    for t in r.dstar:
        assert t.constants <= consts
    # iteration bound: number of tuples over the constants of the input
    per_attr = delta.values_by_attribute()
    bound = 1
    for vs in per_attr.values():
        bound *= len(vs) + 1
    assert r.stats.iterations <= bound
    # every recorded conflict is witnessed by two chased rows, and vice versa
    for fd in delta.fds:
        witnessed = set()
        for t in r.dstar:
            if fd.attributes <= t.schema:
                x = t.restrict(fd.lhs)
                if any(fd.rhs in s and x.issubtuple(s) and s[fd.rhs] != t[fd.rhs] for s in r.dstar):
                    witnessed.add(x)
        assert r.inc.inc(fd) == witnessed


@pytest.mark.parametrize("seed", range(100))
def test_chase_is_order_independent(seed):
    delta = generate_instance(RandomInstanceSpec(seed=seed))
    base = chase(delta)
    rng = random.Random(seed)
    rows, f = list(delta.table), list(delta.fds)
    for _ in range(5):
        rng.shuffle(rows)
        rng.shuffle(f)
        other = chase_table(rows, f)
        assert other.dstar == base.dstar and other.inc == base.inc


def test_input_rows_stay_derivable():
    delta = generate_instance(RandomInstanceSpec(seed=7))
    r = chase(delta)
    assert all(in_lower_closure(r.dstar, t) for t in delta.table)


def test_inc_map_equality_ignores_empty_entries():
    a = chase_table(table("A=a,B=b"), fds("A -> B"))
    b = chase_table(table("A=a,B=b"), fds("A -> B", "B -> C"))
    assert a.inc == b.inc

