"""Reference semantics on finite posets by exhaustive enumeration.

Ideals are seen through their descriptors ``(C, sharp)``; the universe is
every proper closed ``C`` with every admissible ``sharp`` plus one formal
entry for the zero ideal.  An F-table is the membership bit vector of an
operation over that universe.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .prufer import PruferDescriptor, StableOpPair, stable_member
from .spaces import Bits, FinitePoset
from .spectral import IdealDescriptor

MAX_ENUMERATION_POINTS = 12

V3 = FinitePoset("opq", [("o", "p"), ("o", "q")], name="V3")
DIAMOND = FinitePoset("opqm", [("o", "p"), ("o", "q"), ("p", "m"), ("q", "m")], name="DIAMOND")
CHAIN2 = FinitePoset("om", [("o", "m")], name="CHAIN2")
FIXTURES = {"V3": V3, "DIAMOND": DIAMOND, "CHAIN2": CHAIN2}


class OracleError(RuntimeError):
    """A scan found no bound or several: the structure would not be a lattice."""


# -- catalog

def _strict_orders(m: int):
    pairs = [(i, j) for i in range(m) for j in range(m) if i != j]
    for chosen in range(1 << len(pairs)):
        rel = {pairs[k] for k in range(len(pairs)) if chosen >> k & 1}
        if any((j, i) in rel for i, j in rel):
            continue
        if all((i, k) in rel for i, j in rel for j2, k in rel if j == j2):
            yield frozenset(rel)


def _canonical(rel, m: int) -> tuple:
    return min(tuple(sorted((perm[i], perm[j]) for i, j in rel)) for perm in itertools.permutations(range(m)))


def poset_catalog(max_points: int = 5) -> list[FinitePoset]:
    """Every finite poset with a least element on at most ``max_points`` points, up to isomorphism.

    The least element is ``o``; the others are ``a, b, c, ...``.
    """
    out = []
    for n in range(1, max_points + 1):
        m = n - 1
        names = "abcdefghijk"[:m]
        seen = set()
        for rel in _strict_orders(m):
            key = _canonical(rel, m)
            if key in seen:
                continue
            seen.add(key)
            relations = [("o", x) for x in names] + [(names[i], names[j]) for i, j in key]
            out.append(FinitePoset("o" + names, relations, name=f"P{n}-{len(seen)}"))
    return out


def flag_patterns(space: FinitePoset):
    """All idempotency patterns on the nonzero points (branched left at its default)."""
    nonzero = [p for p in space.points if p != space.generic_point]
    for r in range(len(nonzero) + 1):
        for chosen in itertools.combinations(nonzero, r):
            yield PruferDescriptor(space, space.bits(*chosen))


def _as_descriptor(d) -> PruferDescriptor:
    if isinstance(d, FinitePoset):
        return PruferDescriptor(d, d.empty())
    return d


# -- ideal universe and tables

@lru_cache(maxsize=None)
def ideal_universe(descriptor: PruferDescriptor) -> tuple[IdealDescriptor, ...]:
    sp = descriptor.space
    if not isinstance(sp, FinitePoset):
        raise TypeError("the oracle universe exists for finite posets only")
    out = [IdealDescriptor.zero(sp)]
    for m in sp.closed_masks(proper=True):
        room = sp.min_mask(m) & descriptor.branched.mask
        sub = room
        subs = []
        while True:
            subs.append(sub)
            if sub == 0:
                break
            sub = (sub - 1) & room
        for s in sorted(subs):
            out.append(IdealDescriptor(sp, Bits(m), Bits(s)))
    return tuple(out)


@dataclass(frozen=True)
class FTable:
    universe: tuple
    bits: int

    def __getitem__(self, i: int) -> bool:
        return bool(self.bits >> i & 1)

    def __le__(self, other: FTable) -> bool:
        return self.bits & ~other.bits == 0

    def members(self) -> list[IdealDescriptor]:
        return [d for i, d in enumerate(self.universe) if self[i]]


def table_of(universe, member) -> FTable:
    return FTable(tuple(universe), sum(1 << i for i, d in enumerate(universe) if member(d)))


def f_table(pair: StableOpPair) -> FTable:
    return table_of(ideal_universe(pair.descriptor), lambda d: stable_member(pair, d))


def enumerate_pairs(descriptor) -> list[StableOpPair]:
    d = _as_descriptor(descriptor)
    sp = d.space
    if not isinstance(sp, FinitePoset):
        raise TypeError("pairs are enumerated on finite posets only")
    if len(sp.points) > MAX_ENUMERATION_POINTS:
        raise ValueError(f"enumeration is limited to {MAX_ENUMERATION_POINTS} points")
    out = []
    for dm in sp.down_masks():
        free = [i for i in range(len(sp.points))
                if d.admissible.mask >> i & 1 and not dm >> i & 1
                and sp.strictly_below(sp.points[i]).mask & ~dm == 0]
        for r in range(len(free) + 1):
            for chosen in itertools.combinations(free, r):
                out.append(StableOpPair(d, Bits(dm), Bits(sum(1 << i for i in chosen))))
    out.sort(key=lambda p: (sp.names(p.delta), sp.names(p.pi)))
    return out


class LatticeScan:
    """Bounds under F-table containment, cached by the table they are taken against."""

    def __init__(self, pairs):
        self.pairs = list(pairs)
        self.tables = [f_table(p).bits for p in self.pairs]
        self.index = {p: i for i, p in enumerate(self.pairs)}
        self._glb: dict[int, StableOpPair] = {}
        self._lub: dict[int, StableOpPair] = {}

    def _greatest_below(self, t: int) -> StableOpPair:
        if t not in self._glb:
            cands = [i for i, u in enumerate(self.tables) if u & ~t == 0]
            tops = [i for i in cands if all(self.tables[j] & ~self.tables[i] == 0 for j in cands)]
            if len(tops) != 1:
                raise OracleError(f"{len(tops)} greatest lower bounds")
            self._glb[t] = self.pairs[tops[0]]
        return self._glb[t]

    def _least_above(self, t: int) -> StableOpPair:
        if t not in self._lub:
            cands = [i for i, u in enumerate(self.tables) if t & ~u == 0]
            bottoms = [i for i in cands if all(self.tables[i] & ~self.tables[j] == 0 for j in cands)]
            if len(bottoms) != 1:
                raise OracleError(f"{len(bottoms)} least upper bounds")
            self._lub[t] = self.pairs[bottoms[0]]
        return self._lub[t]

    def bounds(self, a: StableOpPair, b: StableOpPair) -> tuple[StableOpPair, StableOpPair]:
        ta, tb = self.tables[self.index[a]], self.tables[self.index[b]]
        return self._greatest_below(ta & tb), self._least_above(ta | tb)

    def leq(self, a: StableOpPair, b: StableOpPair) -> bool:
        return self.tables[self.index[a]] & ~self.tables[self.index[b]] == 0


def lattice_oracle(pairs, a: StableOpPair, b: StableOpPair) -> tuple[StableOpPair, StableOpPair]:
    """(glb, lub) of ``a`` and ``b`` by scanning the full enumeration."""
    return LatticeScan(pairs).bounds(a, b)


def _ideal_le(x: IdealDescriptor, y: IdealDescriptor) -> bool:
    """``x`` describes an ideal contained in the ideal ``y`` describes (descriptor order)."""
    sp = x.space
    return sp.subset(y.C, x.C) and sp.subset(y.sharp, x.sharp)


def localizing_axioms_check(table: FTable) -> bool:
    """Upward closure: I in F and I below J force J in F."""
    u = table.universe
    for i, x in enumerate(u):
        if not table[i]:
            continue
        for j, y in enumerate(u):
            if not table[j] and _ideal_le(x, y):
                return False
    return True


def automorphisms(descriptor) -> list[dict]:
    """Order automorphisms of the poset that fix the idempotent and branched flags."""
    d = _as_descriptor(descriptor)
    sp = d.space
    pts = sp.points
    out = []
    for perm in itertools.permutations(pts):
        m = dict(zip(pts, perm))
        if any(sp.lt(sp.index[x], sp.index[y]) != sp.lt(sp.index[m[x]], sp.index[m[y]])
               for x, y in itertools.product(pts, repeat=2)):
            continue
        if all(sp.bits(*(m[p] for p in sp.names(s))) == s for s in (d.idempotent, d.branched)):
            out.append(m)
    return out
