import random
from fractions import Fraction
from itertools import product as cartesian

import pytest
from hypothesis import given, settings, strategies as st

from posmv.algebra import FiniteAlgebra, eval_index
from posmv.checker import (BudgetExceeded, Verdict, cancellation, cancellation_loop, catalogue,
                           check_cancellation, check_mvm, classify, find_violation, holds,
                           mvm_axioms)
from posmv.constructions import (all_subalgebras, boolean2, chang_quotient_witness, luk_chain,
                                 product, subalgebra_generated, trivial)
from posmv.terms import parse_quasi

from helpers import mixed_algebra, random_algebra, random_positive

# Oracle for E1-E7 written as plain functions of the operations, independent
# of the term parser and the kernels.
def oracle_axioms(op, od, jn, mt):
    return [
        lambda x, y, z: (jn(x, y), jn(y, x)),
        lambda x, y, z: (mt(x, mt(y, z)), mt(mt(x, y), z)),
        lambda x, y, z: (jn(x, jn(y, z)), jn(jn(x, y), z)),
        lambda x, y, z: (mt(x, jn(y, z)), jn(mt(x, y), mt(x, z))),
        lambda x, y, z: (jn(x, mt(x, y)), x),
        lambda x, y, z: (op(x, y), op(y, x)),
        lambda x, y, z: (od(x, y), od(y, x)),
        lambda x, y, z: (op(x, op(y, z)), op(op(x, y), z)),
        lambda x, y, z: (od(x, od(y, z)), od(od(x, y), z)),
        lambda x, y, z: (op(x, ZERO), x),
        lambda x, y, z: (od(x, ONE), x),
        lambda x, y, z: (op(x, jn(y, z)), jn(op(x, y), op(x, z))),
        lambda x, y, z: (op(x, mt(y, z)), mt(op(x, y), op(x, z))),
        lambda x, y, z: (od(x, jn(y, z)), jn(od(x, y), od(x, z))),
        lambda x, y, z: (od(x, mt(y, z)), mt(od(x, y), od(x, z))),
        lambda x, y, z: (od(op(x, y), op(od(x, y), z)), op(od(x, op(y, z)), od(y, z))),
        lambda x, y, z: (op(od(x, y), od(op(x, y), z)), od(op(x, od(y, z)), op(y, z))),
        lambda x, y, z: (op(od(x, y), z), jn(od(op(x, y), op(od(x, y), z)), z)),
        lambda x, y, z: (od(op(x, y), z), mt(op(od(x, y), od(op(x, y), z)), z)),
    ]


ZERO, ONE = 0, 1


def _oracle_holds(vals, op, od, jn=max, mt=min):
    return all(l == r for f in oracle_axioms(op, od, jn, mt)
               for x, y, z in cartesian(vals, repeat=3) for l, r in [f(x, y, z)])


def _oracle_mvm_holds_on_chain(n):
    vals = [Fraction(k, n) for k in range(n + 1)]
    return _oracle_holds(vals, lambda x, y: min(x + y, 1), lambda x, y: max(x + y - 1, 0))


# The Chang quotient, encoded 0 < e < 1 as 0 < 0.5 < 1 with its stated rules.
E = Fraction(1, 2)


def _chang_op(x, y):
    if x == 1 or y == 1:
        return 1
    return max(x, y)  # e + e = e, x + 0 = x


def _chang_od(x, y):
    if x == 1:
        return y
    if y == 1:
        return x
    return 0  # e . e = 0, x . 0 = 0


def broken_boolean():
    b = boolean2()
    return FiniteAlgebra(b.elements, b.meet, b.odot, b.join, b.meet, b.zero, b.one)


def test_catalogue_contents():
    ids = list(catalogue())
    assert ids[-1] == "cancellation"
    assert sum(k.startswith("E1.") for k in ids) == 10
    assert sum(k.startswith("E2.") for k in ids) == 6
    assert sum(k.startswith("E3.") for k in ids) == 8
    assert {"E4", "E5", "E6", "E7"} <= set(ids)
    assert len(mvm_axioms()) == len(ids) - 1


def test_e4_on_boolean_matches_oracle():
    e4 = oracle_axioms(lambda x, y: min(x + y, 1), lambda x, y: max(x + y - 1, 0), max, min)[15]
    assert all(l == r for x, y, z in cartesian((0, 1), repeat=3) for l, r in [e4(x, y, z)])
    assert holds(boolean2(), catalogue()["E4"]) is True


def test_chang_cancellation_violation():
    v = holds(chang_quotient_witness(), cancellation())
    assert not v
    assert v.assignment == {"x": "ε", "y": "0", "z": "ε"}


@pytest.mark.parametrize("a", [boolean2(), luk_chain(3), chang_quotient_witness()])
def test_vacuous_premises(a):
    assert holds(a, parse_quasi("0 = 1 => x = y")) is True


def test_one_element_algebra_satisfies_0_eq_1_premise_trivially():
    assert holds(trivial(), parse_quasi("0 = 1 => x = y")) is True


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_check_mvm_luk_chain(n):
    assert _oracle_mvm_holds_on_chain(n)
    assert check_mvm(luk_chain(n)) == []


def test_check_mvm_chang_witness_clean():
    assert _oracle_holds([0, E, 1], _chang_op, _chang_od)
    assert check_mvm(chang_quotient_witness()) == []


def test_broken_algebra_reports_e2_unit():
    bad = check_mvm(broken_boolean())
    unit = [v for v in bad if v.axiom_id == "E2.oplus-unit"]
    assert unit and unit[0].assignment == {"x": "1"}
    assert (unit[0].lhs_value, unit[0].rhs_value) == ("0", "1")


def test_check_cancellation_examples():
    assert check_cancellation(luk_chain(3)) is None
    v = check_cancellation(chang_quotient_witness())
    assert v.assignment == {"x": "ε", "y": "0", "z": "ε"}
    assert check_cancellation(trivial()) is None


def test_classify_examples():
    assert classify(luk_chain(2)).verdict is Verdict.POSITIVE_MV
    assert classify(luk_chain(2)).violations == ()
    r = classify(chang_quotient_witness())
    assert r.verdict is Verdict.MVM_ONLY
    assert r.violations[0].assignment == {"x": "ε", "y": "0", "z": "ε"}
    assert classify(broken_boolean()).verdict is Verdict.NOT_MVM


def test_verdict_exit_codes():
    assert [v.exit_code for v in Verdict] == [3, 2, 0]


def test_budget_guard():
    with pytest.raises(BudgetExceeded, match="instance too large"):
        find_violation(luk_chain(9), catalogue()["E4"], budget=999)
    assert find_violation(luk_chain(9), catalogue()["E4"], budget=1000) is None


def _reproduces(a, q, v):
    env = [a.index(v.assignment[q.var_name(i)]) for i in range(q.arity)]
    prem = all(eval_index(a, p.lhs, env) == eval_index(a, p.rhs, env) for p in q.premises)
    l, r = eval_index(a, q.conclusion.lhs, env), eval_index(a, q.conclusion.rhs, env)
    return prem and l != r and (a.elements[l], a.elements[r]) == (v.lhs_value, v.rhs_value)


@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_violations_are_sound(seed):
    a = mixed_algebra(random.Random(seed))
    cat = catalogue()
    for v in check_mvm(a):
        assert _reproduces(a, cat[v.axiom_id], v)
    v = check_cancellation(a)
    if v is not None:
        assert _reproduces(a, cat["cancellation"], v)


def test_first_violation_is_least():
    # brute-force oracle for the enumeration order on random tables
    rng = random.Random(7)
    q = catalogue()["E2.oplus-assoc"]
    for _ in range(30):
        a = random_algebra(rng, rng.randint(2, 4))
        n = len(a)
        first = None
        for z, y, x in cartesian(range(n), repeat=3):
            if a.oplus[a.oplus[x][y]][z] != a.oplus[x][a.oplus[y][z]]:
                first = {"x": a.elements[x], "y": a.elements[y], "z": a.elements[z]}
                break
        v = find_violation(a, q)
        assert (v.assignment if v is not None else None) == first


@pytest.mark.parametrize("seed", range(120))
def test_engine_agrees_with_triple_loop(seed):
    a = mixed_algebra(random.Random(seed), max_size=5)
    v1, v2 = check_cancellation(a), cancellation_loop(a)
    assert (v1 is None) == (v2 is None)
    if v1 is not None:
        assert v1.assignment == v2.assignment


@pytest.mark.parametrize("seed", range(15))
def test_product_closure(seed):
    rng = random.Random(seed)
    a, b = random_positive(rng, 3), random_positive(rng, 4)
    assert classify(a).verdict is Verdict.POSITIVE_MV
    assert classify(product(a, b)).verdict is Verdict.POSITIVE_MV


@pytest.mark.parametrize("seed", range(15))
def test_subalgebra_closure(seed):
    a = random_positive(random.Random(seed))
    for s in all_subalgebras(a):
        assert classify(s).verdict is Verdict.POSITIVE_MV


def test_quotient_is_not_variety_witness():
    assert classify(chang_quotient_witness()).verdict is Verdict.MVM_ONLY
    # a positive algebra whose subalgebra generated by ε-free seeds stays positive
    assert classify(subalgebra_generated(luk_chain(4), ["1/2"])).verdict is Verdict.POSITIVE_MV


def test_violation_is_falsy_and_serializes():
    v = check_cancellation(chang_quotient_witness())
    assert not v
    assert v.to_dict() == {"axiom": "cancellation", "assignment": {"x": "ε", "y": "0", "z": "ε"},
                           "lhs": "ε", "rhs": "0"}
