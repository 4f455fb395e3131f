from __future__ import annotations

import random
from fractions import Fraction

import pytest

from thetanulls.errors import DomainError, MalformedInputError, ResourceCapError
from thetanulls.transversal import (
    NodeSet,
    basis_polys,
    quadratic_differential_divisor,
    rank,
    transversality_report,
)


def unit_nodes(g):
    return NodeSet.from_values(g, range(1, 2 * g + 3))


def horner(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def test_nodeset_validation():
    with pytest.raises(MalformedInputError):
        NodeSet.from_values(3, range(1, 8))
    with pytest.raises(DomainError):
        NodeSet.from_values(3, [1, 2, 3, 4, 5, 6, 7, 1])
    with pytest.raises(ResourceCapError):
        unit_nodes(33)


def test_nodeset_json_roundtrip():
    ns = NodeSet.from_values(3, ["1/2", "3", "-7/5", 2, 5, -1, 9, "11/3"])
    back = NodeSet.from_json_dict(ns.to_json_dict())
    assert back == ns
    assert back.nodes[0] == Fraction(1, 2)
    with pytest.raises(MalformedInputError):
        NodeSet.from_json_dict({"g": 3, "nodes": ["1/0"] * 8})
    with pytest.raises(MalformedInputError):
        NodeSet.from_json_dict({"g": 3})


def test_divisor_example_g6():
    ns = unit_nodes(6)
    div = quadratic_differential_divisor(ns, [1, 2, 3, 4], 1)
    assert div[1] == 1
    assert div[2] == div[3] == div[4] == 3
    assert all(div[i] == 1 for i in range(5, 15))
    assert sum(div.values()) == 4 * 6 - 4


def test_divisor_symmetric_and_degree():
    for g in (3, 5, 8):
        ns = unit_nodes(g)
        s = list(range(1, g - 1))
        div = quadratic_differential_divisor(ns, s, max(s))
        assert sum(div.values()) == 4 * g - 4
        assert div[max(s)] == 1


def test_divisor_k_not_in_s():
    ns = unit_nodes(6)
    with pytest.raises(DomainError):
        quadratic_differential_divisor(ns, [1, 2, 3, 4], 5)


def test_basis_polys_explicit_g6():
    ns = unit_nodes(6)
    polys = basis_polys(ns, [1, 2, 3, 4])
    # G_1 = (x-2)(x-3)(x-4) = x^3 - 9x^2 + 26x - 24
    assert polys[0] == [Fraction(-24), Fraction(26), Fraction(-9), Fraction(1)]
    for p in polys:
        assert len(p) == 6 - 3 + 1


def test_basis_polys_vanishing_pattern():
    g = 7
    ns = unit_nodes(g)
    s = [2, 4, 6, 8, 10]
    polys = basis_polys(ns, s)
    for poly, k in zip(polys, s):
        assert horner(poly, ns.nodes[k - 1]) != 0
        for j in s:
            if j != k:
                assert horner(poly, ns.nodes[j - 1]) == 0


def test_rank_examples():
    ns = unit_nodes(6)
    polys = basis_polys(ns, [1, 2, 3, 4])
    assert rank(polys) == 4
    assert rank([[Fraction(1)]]) == 1
    assert rank(polys + [polys[0]]) == 4
    with pytest.raises(DomainError):
        rank([])


def test_rank_g3_single_poly():
    ns = unit_nodes(3)
    polys = basis_polys(ns, [5])
    assert polys == [[Fraction(1)]]
    assert rank(polys) == 1


def test_report_unit_nodes_g3_to_g8():
    for g in range(3, 9):
        ns = unit_nodes(g)
        s = list(range(1, g - 1))
        report = transversality_report(ns, s)
        assert report["pass"]
        assert report["rank"] == g - 2
        assert len(report["chars"]) == g - 2
        assert all(v == 2 for v in report["h0"])
        assert all(sum(d.values()) == 4 * g - 4 for d in report["divisors"])


def test_report_random_rational_nodes_g6():
    rng = random.Random(83)
    for _ in range(20):
        nodes = set()
        while len(nodes) < 14:
            nodes.add(Fraction(rng.randint(-300, 300), rng.randint(1, 100)))
        ns = NodeSet(6, tuple(nodes))
        s = sorted(rng.sample(range(1, 15), 4))
        assert transversality_report(ns, s)["pass"]


def test_rank_invariant_under_affine_rescaling():
    rng = random.Random(89)
    g = 6
    ns = unit_nodes(g)
    s = [3, 6, 9, 12]
    base_rank = rank(basis_polys(ns, s))
    for _ in range(10):
        a = Fraction(rng.randint(1, 40), rng.randint(1, 40))
        b = Fraction(rng.randint(-40, 40), rng.randint(1, 40))
        moved = NodeSet(g, tuple(a * x + b for x in ns.nodes))
        assert rank(basis_polys(moved, s)) == base_rank


def test_report_needs_g_at_least_3():
    with pytest.raises(DomainError):
        transversality_report(unit_nodes(2), [])
