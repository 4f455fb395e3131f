from __future__ import annotations

import random

import pytest

from thetanulls.errors import DomainError, MalformedInputError, ResourceCapError
from thetanulls.f2core import F2Vector, basis_e, basis_f, transvection
from thetanulls.orbits import (
    OrbitClass,
    Quadruple,
    apply_map,
    census,
    census_report,
    classify,
    classify_by_delta,
    delta_parities,
    differences,
    orbit_bfs,
    random_quadruple,
)
from thetanulls.quadforms import QuadraticForm, evaluate


def quad(g, *bits):
    return Quadruple(g, tuple(F2Vector(g, b) for b in bits))


def shifts_quad(g, vectors):
    return Quadruple(g, tuple(vectors))


Z6 = F2Vector.zero(6)
E = [basis_e(6, i) for i in range(6)]
F = [basis_f(6, i) for i in range(6)]

A1_Q = shifts_quad(6, [Z6, E[0], E[1], E[0] + E[1]])
A2_Q = shifts_quad(6, [Z6, E[0], E[1], E[2]])
A3_Q = shifts_quad(6, [Z6, E[0], F[0], E[1]])
A4_Q = shifts_quad(6, [Z6, E[0], F[0], E[0] + F[0] + E[1] + F[1]])


def test_quadruple_validation():
    with pytest.raises(MalformedInputError):
        quad(2, 0, 1, 2, 2)  # duplicate
    with pytest.raises(MalformedInputError):
        Quadruple(2, tuple(F2Vector(2, b) for b in (0, 1, 2)))
    with pytest.raises(DomainError):
        quad(1, 0, 1, 2, 3)  # bits 3 = e1+f1 is odd
    with pytest.raises(MalformedInputError):
        Quadruple(2, (F2Vector(2, 0), F2Vector(3, 1), F2Vector(2, 2),
                      F2Vector(2, 4)))


def test_quadruple_equality_is_unordered():
    a = quad(2, 0, 1, 2, 12)
    b = quad(2, 12, 2, 1, 0)
    assert a == b
    assert hash(a) == hash(b)
    assert a != quad(2, 0, 1, 2, 4)


def test_json_roundtrip():
    q = A3_Q
    assert Quadruple.from_json_dict(q.to_json_dict()) == q
    with pytest.raises(MalformedInputError):
        Quadruple.from_json_dict({"g": 2, "chars": [[0, 0, 0]]})


def test_differences_example():
    a1, a2, a3 = differences(A2_Q, 1)
    assert (a1, a2, a3) == (E[0], E[1], E[2])
    for base in (1, 2, 3, 4):
        diffs = differences(A2_Q, base)
        assert all(not a.is_zero() for a in diffs)
        q_base = QuadraticForm(6, A2_Q.chars[base - 1])
        assert all(evaluate(q_base, a) == 0 for a in diffs)


def test_classify_examples():
    assert classify(A1_Q) == OrbitClass.A1
    assert classify(A2_Q) == OrbitClass.A2
    assert classify(A3_Q) == OrbitClass.A3
    assert classify(A4_Q) == OrbitClass.A4


def test_classify_base_and_order_invariance():
    rng = random.Random(43)
    for _ in range(300):
        q = random_quadruple(6, rng)
        cls = classify(q, verify_bases=True)
        perm = list(q.chars)
        rng.shuffle(perm)
        assert classify(Quadruple(6, tuple(perm)), verify_bases=True) == cls


def test_delta_parities_signatures():
    assert delta_parities(A2_Q) == (0, 0, 0, 0)
    assert sorted(delta_parities(A3_Q)) == [0, 0, 1, 1]
    assert delta_parities(A4_Q) == (1, 1, 1, 1)
    assert delta_parities(A1_Q) == (0, 0, 0, 0)


def test_delta_multiset_base_independent():
    rng = random.Random(47)
    for _ in range(200):
        q = random_quadruple(6, rng)
        sig = sorted(delta_parities(q))
        perm = list(q.chars)
        rng.shuffle(perm)
        assert sorted(delta_parities(Quadruple(6, tuple(perm)))) == sig


def test_classifiers_agree_exhaustive_g2():
    from itertools import combinations
    from thetanulls.orbits import _even_char_bits
    evens = _even_char_bits(2)
    assert len(evens) == 10
    seen = 0
    for ks in combinations(evens, 4):
        q = quad(2, *ks)
        assert classify(q) == classify_by_delta(q)
        seen += 1
    assert seen == 210


def test_classifiers_agree_random_g6():
    rng = random.Random(53)
    for _ in range(2000):
        q = random_quadruple(6, rng)
        assert classify(q) == classify_by_delta(q)


def test_classify_invariant_under_transport():
    rng = random.Random(59)
    for _ in range(100):
        q = random_quadruple(6, rng)
        cls = classify(q)
        m = None
        from thetanulls.f2core import SymplecticMap
        m = SymplecticMap.identity(6)
        for _ in range(rng.randint(1, 20)):
            m = transvection(F2Vector(6, rng.randrange(1, 1 << 12))) @ m
        assert classify(apply_map(q, m)) == cls


def test_orbit_bfs_contains_start_and_guard():
    q = quad(2, 0, 1, 2, 12)
    orbit = orbit_bfs(q)
    assert q in orbit
    with pytest.raises(ResourceCapError):
        orbit_bfs(random_quadruple(4, random.Random(0)))


def test_census_g2_counts():
    counts = census(2)
    assert counts == {OrbitClass.A1: 15, OrbitClass.A2: 0,
                      OrbitClass.A3: 180, OrbitClass.A4: 15}
    assert sum(counts.values()) == 210


def test_census_report_g2_consistent():
    report = census_report(2)
    assert report["total"] == 210
    assert report["orbit_consistent"]
    assert report["orbit_sizes"] == {"A1": 15, "A3": 180, "A4": 15}


def test_census_g3_counts():
    counts = census(3)
    assert counts == {OrbitClass.A1: 945, OrbitClass.A2: 7560,
                      OrbitClass.A3: 45360, OrbitClass.A4: 5040}
    assert sum(counts.values()) == 58905


def test_census_guard():
    with pytest.raises(ResourceCapError):
        census(4)
