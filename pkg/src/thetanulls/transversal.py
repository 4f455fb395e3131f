"""Exact rank certificate for the transversal-intersection configuration.

For 2g+2 distinct rational nodes and a set S of g-2 of them, the relevant
quadratic differentials are encoded by the polynomials
G_k(x) = prod_{i in S, i != k} (x - x_i) of degree g-3.  Transversality
reduces to the coefficient matrix of the G_k having rank g-2, which only
needs the nodes to be distinct: evaluating at the other points of S kills
coefficients one at a time (the evaluation matrix on S is diagonal).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, MalformedInputError, ResourceCapError
from .hyperelliptic import char_to_partition, h0, std_labeling, trans_config

_MAX_G = 32


@dataclass(frozen=True)
class NodeSet:
    g: int
    nodes: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.g < 2:
            raise DomainError(f"g must be >= 2, got {self.g}")
        if self.g > _MAX_G:
            raise ResourceCapError(f"g capped at {_MAX_G}, got {self.g}")
        if len(self.nodes) != 2 * self.g + 2:
            raise MalformedInputError(
                f"need 2g+2 = {2 * self.g + 2} nodes, got {len(self.nodes)}")
        if any(not isinstance(x, Fraction) for x in self.nodes):
            raise MalformedInputError("nodes must be Fractions")
        if len(set(self.nodes)) != len(self.nodes):
            raise DomainError("nodes must be pairwise distinct")

    @classmethod
    def from_values(cls, g: int, values: Iterable) -> "NodeSet":
        return cls(g, tuple(Fraction(v) for v in values))

    def to_json_dict(self) -> dict:
        return {"g": self.g, "nodes": [str(x) for x in self.nodes]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "NodeSet":
        if not isinstance(data, dict) or set(data) != {"g", "nodes"}:
            raise MalformedInputError('NodeSet JSON needs exactly "g" and "nodes"')
        g, nodes = data["g"], data["nodes"]
        if not isinstance(g, int) or not isinstance(nodes, list):
            raise MalformedInputError("bad NodeSet JSON field types")
        try:
            vals = tuple(Fraction(str(x)) for x in nodes)
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInputError(f"bad rational node: {exc}") from exc
        return cls(g, vals)


def _check_s(ns: NodeSet, s: Sequence[int]) -> list[int]:
    labels = list(s)
    if len(labels) != ns.g - 2:
        raise MalformedInputError(
            f"S needs exactly g-2 = {ns.g - 2} indices, got {len(labels)}")
    if len(set(labels)) != len(labels):
        raise MalformedInputError("duplicate indices in S")
    for idx in labels:
        if not isinstance(idx, int) or not 1 <= idx <= 2 * ns.g + 2:
            raise MalformedInputError(f"index {idx!r} outside 1..{2 * ns.g + 2}")
    return sorted(labels)


def quadratic_differential_divisor(ns: NodeSet, s: Sequence[int],
                                   k: int) -> dict[int, int]:
    """Multiplicity 1 at every node, plus 2 at each node of S minus k;
    total degree 4g-4."""
    labels = _check_s(ns, s)
    if k not in labels:
        raise DomainError(f"k={k} is not in S")
    div = {i: 1 for i in range(1, 2 * ns.g + 3)}
    for idx in labels:
        if idx != k:
            div[idx] += 2
    return div


def _poly_mul_linear(coeffs: list[Fraction], root: Fraction) -> list[Fraction]:
    # multiply by (x - root); coefficients ascending
    out = [Fraction(0)] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        out[i] -= c * root
        out[i + 1] += c
    return out


def basis_polys(ns: NodeSet, s: Sequence[int]) -> list[list[Fraction]]:
    """G_k(x) = prod_{i in S, i != k} (x - x_i), ascending coefficients."""
    labels = _check_s(ns, s)
    polys = []
    for k in labels:
        coeffs = [Fraction(1)]
        for idx in labels:
            if idx != k:
                coeffs = _poly_mul_linear(coeffs, ns.nodes[idx - 1])
        polys.append(coeffs)
    return polys


def rank(polys: Sequence[Sequence[Fraction]]) -> int:
    """Rank of the coefficient matrix over the rationals."""
    if not polys:
        raise DomainError("rank needs at least one polynomial")
    width = max(len(p) for p in polys)
    rows = [list(p) + [Fraction(0)] * (width - len(p)) for p in polys]
    r = 0
    for c in range(width):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def transversality_report(ns: NodeSet, s: Sequence[int]) -> dict:
    """Characteristics, divisors, exact rank and the pass verdict."""
    if ns.g < 3:
        raise DomainError("the configuration needs g >= 3")
    labels = _check_s(ns, s)
    label = std_labeling(ns.g)
    chars = trans_config(label, labels)
    polys = basis_polys(ns, labels)
    rk = rank(polys)
    return {
        "g": ns.g,
        "S": labels,
        "chars": [k.to_list() for k in chars],
        "partitions": [list(char_to_partition(k, label).labels)
                       for k in chars],
        "h0": [h0(char_to_partition(k, label)) for k in chars],
        "divisors": [quadratic_differential_divisor(ns, labels, k)
                     for k in labels],
        "rank": rk,
        "expected_rank": ns.g - 2,
        "pass": rk == ns.g - 2,
    }
