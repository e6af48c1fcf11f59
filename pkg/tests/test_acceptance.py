"""Acceptance criteria, one test each; the terminal summary prints one
PASS/FAIL line per criterion."""

import random
import time

import pytest

from posmv.algebra import algebra_fingerprint
from posmv.checker import (Verdict, cancellation_loop, check_cancellation, check_mvm,
                           classify)
from posmv.constructions import (EPS, all_subalgebras, chang_quotient_witness, congruences,
                                 find_embedding, luk_chain, mv_chain, mv_product,
                                 positive_reduct, product, quotient)
from posmv.lmonoid import WindowedLMonoid, check_cancellativity_equivalence, gamma
from posmv.mcnaughton import enumerate_free, grid_dedup_counts, is_nondecreasing, safe_denominator

from helpers import mixed_algebra, random_positive

POSITIVE = Verdict.POSITIVE_MV


@pytest.mark.acceptance(1, "luk_chain(1..12) classify PositiveMV, each under 10 s")
def test_criterion_1_chains_positive():
    for n in range(1, 13):
        t0 = time.perf_counter()
        report = classify(luk_chain(n))
        elapsed = time.perf_counter() - t0
        assert report.verdict is POSITIVE, n
        assert elapsed < 10, (n, elapsed)


@pytest.mark.acceptance(2, "Chang witness is MVMOnly with witness (x=ε, y=0, z=ε)")
def test_criterion_2_witness():
    w = chang_quotient_witness()
    assert w.elements == ("0", EPS, "1")
    assert w.op("+", EPS, EPS) == EPS
    assert w.op(".", EPS, EPS) == "0"
    assert check_mvm(w) == []
    report = classify(w)
    assert report.verdict is Verdict.MVM_ONLY
    (v,) = report.violations
    assert v.axiom_id == "cancellation"
    assert v.assignment == {"x": EPS, "y": "0", "z": EPS}


@pytest.mark.acceptance(3, "Γ of the window (1/n)Z, N=2 has the fingerprint of luk_chain(n), n=1..12")
def test_criterion_3_gamma():
    for n in range(1, 13):
        g = gamma(WindowedLMonoid(n, 2))
        assert algebra_fingerprint(g) == algebra_fingerprint(luk_chain(n)), n


@pytest.mark.acceptance(4, "cancellativity reports consistent on windows d=1..8, N in {2,3}")
def test_criterion_4_cancellativity_sweep():
    bad = []
    for d in range(1, 9):
        for radius in (2, 3):
            r = check_cancellativity_equivalence(WindowedLMonoid(d, radius))
            if not (r.cond_unit_interval == r.cond_gamma and r.cond_general):
                bad.append((d, radius, r.to_dict()))
    assert bad == []


@pytest.mark.acceptance(5, "free algebra to depth 4: under 60 s, all non-decreasing, grid count agrees")
def test_criterion_5_free_algebra():
    t0 = time.perf_counter()
    e = enumerate_free(1, 4)
    elapsed = time.perf_counter() - t0
    assert elapsed < 60, elapsed
    assert all(is_nondecreasing(f) for f in e.functions)
    exact = [e.distinct(d) for d in range(5)]
    grid = grid_dedup_counts(4, safe_denominator(4), max_point_denominator=2 ** 4)
    assert grid == exact


def _cross_validate(generator):
    reduct = positive_reduct(generator)
    disagreements = []
    for s in all_subalgebras(reduct, max_size=5):
        if classify(s).verdict is not POSITIVE:
            disagreements.append((s.elements, "verdict"))
            continue
        emb = find_embedding(s, reduct)
        if emb is None or not emb.is_inclusion() or not emb.is_valid():
            disagreements.append((s.elements, "embedding"))
    return disagreements


@pytest.mark.acceptance(6, "small subalgebras of L6 and L2xL3 are PositiveMV and embed by inclusion")
def test_criterion_6_oracle_cross_validation():
    l6 = mv_chain(6)
    l2l3 = mv_product(mv_chain(2), mv_chain(3))
    assert positive_reduct(l6).to_dict() == luk_chain(6).to_dict()
    assert positive_reduct(l2l3).to_dict() == product(luk_chain(2), luk_chain(3)).to_dict()
    assert _cross_validate(l6) == []
    assert _cross_validate(l2l3) == []


@pytest.mark.acceptance(7, "products, subalgebras and quotients of 200 random PositiveMV pairs")
def test_criterion_7_closure():
    rng = random.Random(20240607)
    failures = []
    for _ in range(200):
        a, b = random_positive(rng), random_positive(rng)
        assert classify(a).verdict is POSITIVE and classify(b).verdict is POSITIVE
        p = product(a, b)
        if classify(p).verdict is not POSITIVE:
            failures.append(("product", a.elements, b.elements))
        # factors: every seed; product: seeds of at most two elements
        subs = all_subalgebras(a) + all_subalgebras(b) + all_subalgebras(p, max_seed=2)
        for s in subs:
            if classify(s).verdict is not POSITIVE:
                failures.append(("subalgebra", s.elements))
        for alg in (a, b, p) if len(p) <= 8 else (a, b):
            for c in congruences(alg):
                if check_mvm(quotient(alg, c)):
                    failures.append(("quotient", alg.elements, c.blocks))
    assert failures == []


@pytest.mark.acceptance(8, "engine and hand-written cancellation loop agree on 500 random algebras")
def test_criterion_8_engine_equivalence():
    rng = random.Random(8)
    mismatches = []
    for i in range(500):
        a = mixed_algebra(rng, max_size=4)
        engine, loop = check_cancellation(a), cancellation_loop(a)
        same_verdict = (engine is None) == (loop is None)
        same_witness = engine is None or loop is None or engine.to_dict() == loop.to_dict()
        if not (same_verdict and same_witness):
            mismatches.append((i, engine, loop))
    assert mismatches == []
