"""Finite spectra: a finite poset with a least element under the Zariski topology.

Closed sets are the up-sets (``V(I)`` grows under specialization), open sets
the down-sets.  Sets are bitmasks over the points sorted by name.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .base import Space, SpaceError


@dataclass(frozen=True, order=True)
class Bits:
    mask: int


class FinitePoset(Space):
    kind = "poset"
    set_type = Bits

    def __init__(self, points, relations=(), name: str | None = None):
        pts = sorted(set(points) | {x for rel in relations for x in rel})
        if not pts:
            raise SpaceError("a poset needs at least one point")
        self.points: tuple[str, ...] = tuple(pts)
        self.index = {p: i for i, p in enumerate(self.points)}
        self.name = name
        n = len(pts)
        le = [[i == j for j in range(n)] for i in range(n)]
        for a, b in relations:
            le[self.index[a]][self.index[b]] = True
        for k in range(n):
            for i in range(n):
                if le[i][k]:
                    for j in range(n):
                        if le[k][j]:
                            le[i][j] = True
        for i in range(n):
            for j in range(i + 1, n):
                if le[i][j] and le[j][i]:
                    raise SpaceError(f"order is not antisymmetric: {pts[i]} and {pts[j]}")
        self._up = tuple(sum(1 << j for j in range(n) if le[i][j]) for i in range(n))
        self._down = tuple(sum(1 << j for j in range(n) if le[j][i]) for i in range(n))
        mins = [i for i in range(n) if self._down[i] == 1 << i]
        if len(mins) != 1:
            raise SpaceError("a spectrum poset needs a unique minimum (the generic point)")
        self._generic = mins[0]
        self._all = (1 << n) - 1
        self._max = sum(1 << i for i in range(n) if self._up[i] == 1 << i)

    # identity is the order, not the name
    def _key(self):
        return (self.points, self._up)

    def __eq__(self, other):
        return isinstance(other, FinitePoset) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self) -> str:
        return f"FinitePoset({self.name or ''}{list(self.points)}, {self.relations()})"

    def __len__(self) -> int:
        return len(self.points)

    def relations(self) -> list[tuple[str, str]]:
        """Covering pairs ``(lower, upper)``."""
        out = []
        for i, j in itertools.permutations(range(len(self.points)), 2):
            if self.lt(i, j):
                between = self._up[i] & self._down[j] & ~((1 << i) | (1 << j))
                if not between:
                    out.append((self.points[i], self.points[j]))
        return sorted(out)

    def lt(self, i: int, j: int) -> bool:
        return i != j and bool(self._up[i] >> j & 1)

    # -- masks
    def mask_of(self, names) -> int:
        try:
            return sum(1 << self.index[p] for p in set(names))
        except KeyError as exc:
            raise SpaceError(f"unknown point {exc.args[0]!r}") from None

    def names(self, a: Bits) -> tuple[str, ...]:
        return tuple(p for i, p in enumerate(self.points) if a.mask >> i & 1)

    def bits(self, *names) -> Bits:
        return Bits(self.mask_of(names))

    def up_mask(self, m: int) -> int:
        out = 0
        i = 0
        while m:
            if m & 1:
                out |= self._up[i]
            m >>= 1
            i += 1
        return out

    def down_mask(self, m: int) -> int:
        out = 0
        i = 0
        while m:
            if m & 1:
                out |= self._down[i]
            m >>= 1
            i += 1
        return out

    def min_mask(self, m: int) -> int:
        out = 0
        for i in range(len(self.points)):
            if m >> i & 1 and not (self._down[i] & m & ~(1 << i)):
                out |= 1 << i
        return out

    def strictly_below(self, point: str) -> Bits:
        i = self.index[point]
        return Bits(self._down[i] & ~(1 << i))

    @property
    def all_mask(self) -> int:
        return self._all

    @property
    def generic_index(self) -> int:
        return self._generic

    def closed_masks(self, proper: bool = True):
        """All up-sets, in increasing mask order."""
        limit = self._all
        for m in range(limit + 1):
            if self.up_mask(m) == m and not (proper and m >> self._generic & 1):
                yield m

    def down_masks(self):
        for m in range(self._all + 1):
            if self.down_mask(m) == m:
                yield m

    # -- Space API
    def empty(self):
        return Bits(0)

    def full(self):
        return Bits(self._all)

    def max_part(self):
        return Bits(self._max)

    def generic_set(self):
        return Bits(1 << self._generic)

    @property
    def generic_point(self):
        return self.points[self._generic]

    def union(self, a, b):
        self.check(a, b)
        return Bits(a.mask | b.mask)

    def intersect(self, a, b):
        self.check(a, b)
        return Bits(a.mask & b.mask)

    def complement(self, a):
        self.check(a)
        return Bits(self._all & ~a.mask)

    def is_empty(self, a) -> bool:
        return a.mask == 0

    def contains(self, a, point) -> bool:
        return bool(a.mask >> self.index[point] & 1)

    def singleton(self, point):
        return Bits(1 << self.index[point])

    def closure(self, a):
        self.check(a)
        return Bits(self.up_mask(a.mask))

    def generizations(self, a):
        self.check(a)
        return Bits(self.down_mask(a.mask))

    def minimal_points(self, c):
        self.check(c)
        return Bits(self.min_mask(c.mask))

    def isolated(self, s):
        # {x} is open in s iff no point of s lies strictly below x
        return self.minimal_points(s)

    def representative(self, a):
        if not a.mask:
            raise SpaceError("empty set has no representative")
        return self.points[(a.mask & -a.mask).bit_length() - 1]

    def render(self, a) -> str:
        return "points {" + ",".join(self.names(a)) + "}"

    def render_point(self, p) -> str:
        return str(p)

    def piece_count(self, a) -> int:
        return bin(a.mask).count("1")
