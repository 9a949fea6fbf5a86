"""Finite abelian groups as direct products of cyclic groups.

Elements are tuples of reduced coordinates, one per cyclic factor.  A
single canonical total order (row-major mixed radix over the factor list
as given) underlies every lexicographic comparison in the package.  For
rank-1 groups, plain ints are accepted anywhere an element is expected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod
from typing import Iterable, Iterator

GroupElement = tuple[int, ...]


def units(v: int) -> list[int]:
    """All a in [1, v) with gcd(a, v) = 1, ascending."""
    if v < 1:
        raise ValueError(f"units wants v >= 1, got {v}")
    return [a for a in range(1, v) if gcd(a, v) == 1]


@dataclass(frozen=True)
class GroupSpec:
    """Z_{n1} x ... x Z_{nr} with the presentation preserved as given."""

    orders: tuple[int, ...]
    v: int = field(init=False)

    def __init__(self, orders: Iterable[int]):
        orders = tuple(int(n) for n in orders)
        if not orders or any(n < 2 for n in orders):
            raise ValueError(f"factor orders must all be >= 2, got {orders}")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "v", prod(orders))

    @property
    def rank(self) -> int:
        return len(self.orders)

    def is_cyclic(self) -> bool:
        """True iff the direct product is cyclic (pairwise coprime orders)."""
        n = len(self.orders)
        return all(
            gcd(self.orders[i], self.orders[j]) == 1
            for i in range(n)
            for j in range(i + 1, n)
        )

    def coerce(self, x) -> GroupElement:
        """Normalize an element: int shorthand for rank 1, tuple otherwise."""
        if isinstance(x, int):
            if len(self.orders) != 1:
                raise ValueError(f"int element {x} in rank-{self.rank} group")
            return (x % self.orders[0],)
        el = tuple(int(c) for c in x)
        if len(el) != len(self.orders):
            raise ValueError(f"element {el} has wrong arity for {self.orders}")
        if any(not 0 <= c < n for c, n in zip(el, self.orders)):
            raise ValueError(f"element {el} not reduced modulo {self.orders}")
        return el

    def coerce_set(self, elems) -> list[GroupElement]:
        out = [self.coerce(x) for x in elems]
        if len(set(out)) != len(out):
            raise ValueError("duplicate elements in set")
        return out

    def identity(self) -> GroupElement:
        return (0,) * len(self.orders)

    def add(self, a, b) -> GroupElement:
        a, b = self.coerce(a), self.coerce(b)
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def sub(self, a, b) -> GroupElement:
        a, b = self.coerce(a), self.coerce(b)
        return tuple((x - y) % n for x, y, n in zip(a, b, self.orders))

    def neg(self, a) -> GroupElement:
        a = self.coerce(a)
        return tuple((-x) % n for x, n in zip(a, self.orders))

    def double(self, a) -> GroupElement:
        a = self.coerce(a)
        return tuple((2 * x) % n for x, n in zip(a, self.orders))

    def index_of(self, a) -> int:
        """Row-major mixed-radix index in [0, v)."""
        a = self.coerce(a)
        idx = 0
        for c, n in zip(a, self.orders):
            idx = idx * n + c
        return idx

    def element_at(self, i: int) -> GroupElement:
        if not 0 <= i < self.v:
            raise ValueError(f"index {i} out of range [0, {self.v})")
        coords = []
        for n in reversed(self.orders):
            i, c = divmod(i, n)
            coords.append(c)
        return tuple(reversed(coords))

    def elements(self) -> Iterator[GroupElement]:
        for i in range(self.v):
            yield self.element_at(i)

    def to_json(self) -> list[int]:
        return list(self.orders)

    def element_to_json(self, a):
        """Scalars for rank-1 groups, coordinate arrays otherwise."""
        a = self.coerce(a)
        return a[0] if len(self.orders) == 1 else list(a)

    def __str__(self) -> str:
        return "x".join(f"Z{n}" for n in self.orders)


def is_subgroup(G: GroupSpec, elems) -> bool:
    """True if the given elements form a subgroup of G."""
    sub = set(G.coerce_set(elems))
    if G.identity() not in sub:
        return False
    return all(G.sub(a, b) in sub for a in sub for b in sub)
