"""Orbit classification of quadruples of distinct even characteristics.

A quadruple determines difference vectors a_i = k_i + k_base; the class is
read off the span dimension d of (a_1, a_2, a_3) and the number n of
noncommuting pairs:

    A1: d <= 2 (equivalently a_1 + a_2 + a_3 = 0 for distinct inputs)
    A2: d = 3, n = 0
    A3: d = 3, n in {1, 2}
    A4: d = 3, n = 3

Changing the base can swap n between 1 and 2 but never crosses these
buckets, so the class is well defined; delta_parities gives the matching
parity signature and classify_by_delta the cross-check classifier.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DomainError, MalformedInputError, ResourceCapError
from .f2core import F2Vector, SymplecticMap, _pair_int, _q0_int, _rank_int, serial_key
from .quadforms import _transvect_char_int, act_on_char, parity


class OrbitClass(enum.Enum):
    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    A4 = "A4"


@dataclass(frozen=True, eq=False)
class Quadruple:
    """Four distinct even characteristics; input order is kept for the
    positional operations, equality and hashing are order-free."""

    g: int
    chars: tuple[F2Vector, F2Vector, F2Vector, F2Vector]

    def __post_init__(self) -> None:
        if len(self.chars) != 4:
            raise MalformedInputError("a quadruple needs exactly 4 characteristics")
        if any(k.g != self.g for k in self.chars):
            raise MalformedInputError("characteristic length does not match g")
        if len({k.bits for k in self.chars}) != 4:
            raise MalformedInputError("characteristics must be pairwise distinct")
        for k in self.chars:
            if parity(k) != 0:
                raise DomainError("characteristics must all be even")
        object.__setattr__(self, "chars", tuple(self.chars))

    @classmethod
    def from_chars(cls, chars: Iterable[F2Vector]) -> "Quadruple":
        chars = tuple(chars)
        if not chars:
            raise MalformedInputError("a quadruple needs exactly 4 characteristics")
        return cls(chars[0].g, chars)

    def canonical(self) -> tuple[F2Vector, ...]:
        return tuple(sorted(self.chars, key=serial_key))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Quadruple):
            return NotImplemented
        return self.g == other.g and \
            {k.bits for k in self.chars} == {k.bits for k in other.chars}

    def __hash__(self) -> int:
        return hash((self.g, frozenset(k.bits for k in self.chars)))

    def to_json_dict(self) -> dict:
        return {"g": self.g, "chars": [k.to_list() for k in self.chars]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Quadruple":
        if not isinstance(data, dict) or set(data) != {"g", "chars"}:
            raise MalformedInputError('quadruple JSON needs exactly "g" and "chars"')
        g, chars = data["g"], data["chars"]
        if not isinstance(g, int) or not isinstance(chars, list):
            raise MalformedInputError("bad quadruple JSON field types")
        if any(not isinstance(c, list) or len(c) != 2 * g for c in chars):
            raise MalformedInputError("characteristic arrays must have length 2g")
        return cls(g, tuple(F2Vector.from_list(c) for c in chars))


def differences(q: Quadruple, base: int) -> tuple[F2Vector, F2Vector, F2Vector]:
    """a_i = k_i + k_base over the non-base positions, in input order.

    base is 1-based (1..4).
    """
    if base not in (1, 2, 3, 4):
        raise DomainError("base must be in 1..4")
    b = q.chars[base - 1]
    rest = [k for i, k in enumerate(q.chars) if i != base - 1]
    return (rest[0] + b, rest[1] + b, rest[2] + b)


def _classify_diffs(a1: int, a2: int, a3: int, g: int) -> OrbitClass:
    d = _rank_int((a1, a2, a3))
    if d <= 2:
        return OrbitClass.A1
    n = _pair_int(a1, a2, g) + _pair_int(a1, a3, g) + _pair_int(a2, a3, g)
    if n == 0:
        return OrbitClass.A2
    if n == 3:
        return OrbitClass.A4
    return OrbitClass.A3


def _classify_ints(ks: Sequence[int], g: int, base_idx: int) -> OrbitClass:
    b = ks[base_idx]
    rest = [k ^ b for i, k in enumerate(ks) if i != base_idx]
    return _classify_diffs(rest[0], rest[1], rest[2], g)


def classify(q: Quadruple, verify_bases: bool = False) -> OrbitClass:
    """Orbit class of the quadruple.

    The default base is the lexicographically largest serialized
    characteristic; with verify_bases=True all four base choices are
    evaluated and must agree.
    """
    ks = [k.bits for k in q.chars]
    base_idx = max(range(4), key=lambda i: serial_key(q.chars[i]))
    result = _classify_ints(ks, q.g, base_idx)
    if verify_bases:
        for i in range(4):
            if _classify_ints(ks, q.g, i) != result:
                raise AssertionError("classification depends on the base")
    return result


def delta_parities(q: Quadruple) -> tuple[int, int, int, int]:
    """Parities (d1, d2, d3, d4) computed with base = position 4.

    d_i for i < 4 is the pairing of the two differences not involving i;
    d4 is the sum of all three pairings.  As an unordered multiset the
    result is base-independent.
    """
    g = q.g
    a1, a2, a3 = (v.bits for v in differences(q, 4))
    p12 = _pair_int(a1, a2, g)
    p13 = _pair_int(a1, a3, g)
    p23 = _pair_int(a2, a3, g)
    return (p23, p13, p12, p12 ^ p13 ^ p23)


def classify_by_delta(q: Quadruple) -> OrbitClass:
    """Classify through the parity signature; must agree with classify."""
    a1, a2, a3 = (v.bits for v in differences(q, 4))
    if _rank_int((a1, a2, a3)) <= 2:
        return OrbitClass.A1
    evens = sum(1 for d in delta_parities(q) if d == 0)
    if evens == 4:
        return OrbitClass.A2
    if evens == 2:
        return OrbitClass.A3
    if evens == 0:
        return OrbitClass.A4
    raise AssertionError(f"impossible parity signature with {evens} even deltas")


def apply_map(q: Quadruple, m: SymplecticMap) -> Quadruple:
    """Transport the quadruple along a symplectic map (char-level action)."""
    return Quadruple(q.g, tuple(act_on_char(m, k) for k in q.chars))


_BFS_MAX_G = 3


def _transvection_tables(g: int) -> list[list[int] | None]:
    n = 1 << (2 * g)
    tables: list[list[int] | None] = [None] * n
    for v in range(1, n):
        tables[v] = [_transvect_char_int(v, k, g) for k in range(n)]
    return tables


def orbit_bfs(q: Quadruple) -> set[Quadruple]:
    """Closure of {q} under simultaneous transvection action on all four
    characteristics; equals the full symplectic orbit."""
    g = q.g
    if g > _BFS_MAX_G:
        raise ResourceCapError(f"orbit_bfs supports g <= {_BFS_MAX_G}, got {g}")
    tables = _transvection_tables(g)
    start = tuple(sorted(k.bits for k in q.chars))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for node in frontier:
            for tab in tables[1:]:
                moved = tuple(sorted((tab[k] for k in node)))
                if moved not in seen:
                    seen.add(moved)
                    nxt.append(moved)
        frontier = nxt
    return {Quadruple(g, tuple(F2Vector(g, k) for k in node)) for node in seen}


def _even_char_bits(g: int) -> list[int]:
    return [k for k in range(1 << (2 * g)) if _q0_int(k, g) == 0]


def census(g: int) -> dict[OrbitClass, int]:
    """Class counts over every 4-subset of the even characteristics."""
    if g > _BFS_MAX_G:
        raise ResourceCapError(f"census supports g <= {_BFS_MAX_G}, got {g}")
    counts = {c: 0 for c in OrbitClass}
    for ks in combinations(_even_char_bits(g), 4):
        counts[_classify_ints(ks, g, 3)] += 1
    return counts


def census_report(g: int) -> dict:
    """Census counts plus a BFS orbit-consistency check.

    Consistency means: for each nonempty class, the BFS orbit of the first
    representative found has exactly the class count, so each class is one
    symplectic orbit and the orbits partition the quadruple space.
    """
    if g > _BFS_MAX_G:
        raise ResourceCapError(f"census supports g <= {_BFS_MAX_G}, got {g}")
    counts = {c: 0 for c in OrbitClass}
    reps: dict[OrbitClass, tuple[int, int, int, int]] = {}
    for ks in combinations(_even_char_bits(g), 4):
        cls = _classify_ints(ks, g, 3)
        counts[cls] += 1
        reps.setdefault(cls, ks)
    consistent = True
    orbit_sizes: dict[str, int] = {}
    for cls, rep in sorted(reps.items(), key=lambda kv: kv[0].value):
        quad = Quadruple(g, tuple(F2Vector(g, k) for k in rep))
        size = len(orbit_bfs(quad))
        orbit_sizes[cls.value] = size
        if size != counts[cls]:
            consistent = False
    total = sum(counts.values())
    return {
        "g": g,
        "counts": {c.value: counts[c] for c in OrbitClass},
        "total": total,
        "orbit_sizes": orbit_sizes,
        "orbit_consistent": consistent,
    }


def random_quadruple(g: int, rng) -> Quadruple:
    """Uniform random quadruple of distinct even characteristics."""
    seen: set[int] = set()
    chars = []
    while len(chars) < 4:
        k = rng.randrange(1 << (2 * g))
        if _q0_int(k, g) == 0 and k not in seen:
            seen.add(k)
            chars.append(F2Vector(g, k))
    return Quadruple(g, tuple(chars))
