"""Stable operations on Prüfer models as (quasi-spectrum, pseudo-spectrum) pairs.

Membership of 1 in ``I^*`` for the pair ``(delta, pi)`` only needs the closed
set ``C = V(I)`` and the locus ``sharp`` of minimal primes where ``I`` is a
proper primary: a localization at a prime of ``delta`` keeps ``I`` proper as
soon as ``C`` meets ``delta``; at an idempotent ``Q`` in ``pi`` the local
v-closure keeps a proper ``Q``-primary proper but blows ``Q`` itself up.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import partial
from typing import Callable

from .spaces import (
    BackendMismatch, CantorOneDim, CantorPoint, FinitePoset, OneDimSpace, Space,
    SpaceError, atoms, cantor_point,
)
from .spaces.cantor import normalize_clopen
from .spectral import IdealDescriptor


class PairError(ValueError):
    """A (delta, pi) pair violates one or more well-formedness rules."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(f"{rule}: {detail}" for rule, detail in self.violations))

    @property
    def rules(self) -> list[str]:
        return [rule for rule, _ in self.violations]


class OracleNotStable(ValueError):
    """The membership oracle is not that of a stable operation on the descriptor."""


class MapError(ValueError):
    """A proposed homeomorphism is not order- or flag-preserving."""


@dataclass(frozen=True)
class PruferDescriptor:
    space: Space
    idempotent: object
    branched: object = None
    branched_override: bool = False

    def __post_init__(self):
        sp = self.space
        nonzero = sp.difference(sp.full(), sp.generic_set())
        default = sp.max_part() if isinstance(sp, OneDimSpace) else nonzero
        if self.branched is None:
            object.__setattr__(self, "branched", default)
        sp.check(self.idempotent, self.branched)
        if sp.has_generic(self.idempotent) or sp.has_generic(self.branched):
            raise SpaceError("the generic point carries no idempotent/branched flag")
        if not sp.subset(self.idempotent, nonzero):
            raise SpaceError("idempotent flags must sit on nonzero primes")
        if self.branched != default:
            if isinstance(sp, OneDimSpace):
                raise SpaceError("maximal primes of a one-dimensional model are always branched")
            if not self.branched_override:
                raise SpaceError("shrinking the branched locus needs branched_override=True")
            if not sp.subset(self.branched, default):
                raise SpaceError("branched flags must sit on nonzero primes")

    @property
    def admissible(self):
        """Where pseudo-spectrum points may live: idempotent and branched."""
        return self.space.intersect(self.idempotent, self.branched)

    def describe(self) -> str:
        sp = self.space
        return f"prufer{{idempotent: {sp.render(self.idempotent)}, branched: {sp.render(self.branched)}}}"


@dataclass(frozen=True)
class StableOpPair:
    descriptor: PruferDescriptor
    delta: object
    pi: object

    @property
    def space(self) -> Space:
        return self.descriptor.space

    def describe(self) -> str:
        sp = self.space
        return f"stable(delta={sp.render(self.delta)}, pi={sp.render(self.pi)})"


def _lower_missing(sp: Space, delta, pi) -> list:
    """Points of ``pi`` with some strictly smaller prime outside ``delta``."""
    if isinstance(sp, FinitePoset):
        return [p for p in sp.names(pi) if not sp.subset(sp.strictly_below(p), delta)]
    if not sp.is_empty(pi) and not sp.has_generic(delta):
        return [sp.representative(pi)]
    return []


def pair_violations(descriptor: PruferDescriptor, delta, pi) -> list[tuple[str, str]]:
    sp = descriptor.space
    sp.check(delta, pi)
    out = []

    def bad(rule, s):
        if not sp.is_empty(s):
            out.append((rule, sp.render(s)))

    bad("pi-not-idempotent", sp.difference(pi, descriptor.idempotent))
    bad("pi-not-branched", sp.difference(pi, descriptor.branched))
    bad("pi-inside-delta", sp.intersect(pi, delta))
    for p in _lower_missing(sp, delta, pi):
        out.append(("lower-prime-missing", sp.render_point(p)))
    return out


def validate_pair(descriptor: PruferDescriptor, delta, pi) -> StableOpPair:
    """Canonicalize ``delta`` to its down-closure and check the pair rules."""
    sp = descriptor.space
    sp.check(delta, pi)
    delta = sp.generizations(delta)
    violations = pair_violations(descriptor, delta, pi)
    if violations:
        raise PairError(violations)
    return StableOpPair(descriptor, delta, pi)


def _same(a: StableOpPair, b: StableOpPair) -> PruferDescriptor:
    if a.descriptor != b.descriptor:
        raise BackendMismatch("pairs belong to different descriptors")
    return a.descriptor


def stable_member(op: StableOpPair, ideal: IdealDescriptor) -> bool:
    sp = op.space
    if ideal.space != sp:
        raise BackendMismatch("ideal and pair live on different spaces")
    if not sp.subset(ideal.sharp, op.descriptor.branched):
        raise SpaceError("sharp locus outside the branched primes")
    if not sp.is_empty(sp.intersect(ideal.C, op.delta)):
        return False
    return sp.is_empty(sp.intersect(sp.intersect(ideal.C, op.pi), ideal.sharp))


def stable_leq(a: StableOpPair, b: StableOpPair) -> bool:
    sp = _same(a, b).space
    return sp.subset(b.delta, a.delta) and sp.subset(b.pi, sp.union(a.delta, a.pi))


def stable_meet(a: StableOpPair, b: StableOpPair) -> StableOpPair:
    d = _same(a, b)
    sp = d.space
    delta = sp.union(a.delta, b.delta)
    pi = sp.difference(sp.union(a.pi, b.pi), delta)
    return validate_pair(d, delta, pi)


def stable_join(a: StableOpPair, b: StableOpPair) -> StableOpPair:
    d = _same(a, b)
    sp = d.space
    delta = sp.intersect(a.delta, b.delta)
    pi = sp.difference(sp.intersect(sp.union(a.delta, a.pi), sp.union(b.delta, b.pi)), delta)
    # ill-founded points (a lower prime dropped out of delta) cannot stay in pi
    missing = _lower_missing(sp, delta, pi)
    if missing:
        pi = sp.difference(pi, sp.bits(*missing) if isinstance(sp, FinitePoset) else pi)
    return validate_pair(d, delta, pi)


def is_radical_stable(a: StableOpPair) -> bool:
    return a.space.is_empty(a.pi)


# -- normalization

def _probe_cells(descriptor: PruferDescriptor, probes) -> dict:
    """Nonzero cells on which membership data is constant, keyed by a representative point."""
    sp = descriptor.space
    if isinstance(sp, FinitePoset):
        return {p: sp.singleton(p) for p in sp.points if p != sp.generic_point}
    sets = [descriptor.idempotent, descriptor.branched, *probes]
    return {sp.representative(cell): cell for cell in atoms(sp, sets, within=sp.max_part())}


def stable_normalize(descriptor: PruferDescriptor, member_oracle: Callable, probes=()) -> StableOpPair:
    """Rebuild ``(qspec, psspec)`` from a membership oracle.

    On one-dimensional models the oracle is probed once per atom of the
    algebra generated by the flags and ``probes`` (the defining sets of the
    operation); membership must be constant on those atoms.
    """
    sp = descriptor.space
    delta = sp.empty() if member_oracle(IdealDescriptor.zero(sp)) else sp.generic_set()
    pi = sp.empty()
    cells = _probe_cells(descriptor, probes)
    for p, cell in cells.items():
        if not member_oracle(IdealDescriptor.at_point(sp, p)):
            delta = sp.union(delta, cell)
    for p, cell in cells.items():
        if (sp.contains(descriptor.admissible, p) and not sp.contains(delta, p)
                and not member_oracle(IdealDescriptor.at_point(sp, p, primary=True))):
            pi = sp.union(pi, cell)
    try:
        return validate_pair(descriptor, delta, pi)
    except PairError as exc:
        raise OracleNotStable(f"reconstructed pair is invalid ({exc})") from None


def normalize_pair(pair: StableOpPair) -> StableOpPair:
    """Round trip through the membership oracle of ``pair``."""
    return stable_normalize(pair.descriptor, partial(stable_member, pair), probes=(pair.delta, pair.pi))


# -- homeomorphisms

@dataclass(frozen=True)
class IdentityMap:
    source: PruferDescriptor

    @property
    def target(self) -> PruferDescriptor:
        return self.source

    def apply(self, s):
        return s

    def inverse(self) -> IdentityMap:
        return self


def _check_flags(phi) -> None:
    for flag in ("idempotent", "branched"):
        if phi.apply(getattr(phi.source, flag)) != getattr(phi.target, flag):
            raise MapError(f"map does not carry the {flag} flags onto the target's")


@dataclass(frozen=True)
class PosetIsomorphism:
    source: PruferDescriptor
    target: PruferDescriptor
    mapping: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(sorted(dict(self.mapping).items())))
        src, dst = self.source.space, self.target.space
        if not (isinstance(src, FinitePoset) and isinstance(dst, FinitePoset)):
            raise MapError("poset isomorphisms need finite poset descriptors")
        m = dict(self.mapping)
        if sorted(m) != list(src.points) or sorted(m.values()) != list(dst.points):
            raise MapError("map must be a bijection between the point sets")
        for x, y in itertools.product(src.points, repeat=2):
            if src.lt(src.index[x], src.index[y]) != dst.lt(dst.index[m[x]], dst.index[m[y]]):
                raise MapError(f"order not preserved at {x} < {y}")
        _check_flags(self)

    def apply(self, s):
        m = dict(self.mapping)
        return self.target.space.bits(*(m[p] for p in self.source.space.names(s)))

    def inverse(self) -> PosetIsomorphism:
        return PosetIsomorphism(self.target, self.source, tuple((y, x) for x, y in self.mapping))


def _relabel_point(perm: dict, n: int, p: CantorPoint) -> CantorPoint:
    if n <= len(p.prefix):
        return cantor_point(perm[p.prefix[:n]] + p.prefix[n:], p.period)
    k = (n - len(p.prefix)) % len(p.period)
    return cantor_point(perm[p.head(n)], p.period[k:] + p.period[:k])


@dataclass(frozen=True)
class CantorRelabel:
    """Permutes the depth-``n`` cylinders: ``w y -> perm(w) y``."""

    source: PruferDescriptor
    target: PruferDescriptor
    perm: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(sorted(dict(self.perm).items())))
        if not (isinstance(self.source.space, CantorOneDim) and isinstance(self.target.space, CantorOneDim)):
            raise MapError("cylinder relabelings act on the Cantor model only")
        m = dict(self.perm)
        lengths = {len(w) for w in m} | {len(w) for w in m.values()}
        if len(lengths) > 1:
            raise MapError("relabeling words must share one length")
        n = lengths.pop() if lengths else 0
        words = {format(i, f"0{n}b") if n else "" for i in range(1 << n)}
        if set(m) != words or set(m.values()) != words:
            raise MapError(f"relabeling must permute all words of length {n}")
        _check_flags(self)

    @property
    def depth(self) -> int:
        return len(self.perm[0][0]) if self.perm else 0

    def apply(self, s):
        sp = self.target.space
        m, n = dict(self.perm), self.depth
        words = []
        for w in s.clopen:
            if len(w) >= n:
                words.append(m[w[:n]] + w[n:])
            else:
                words.extend(m[w + format(i, f"0{n - len(w)}b")] for i in range(1 << (n - len(w))))
        plus = [_relabel_point(m, n, p) for p in s.plus]
        minus = [_relabel_point(m, n, p) for p in s.minus]
        return sp.make(normalize_clopen(words), plus=plus, minus=minus, generic=s.generic)

    def inverse(self) -> CantorRelabel:
        return CantorRelabel(self.target, self.source, tuple((y, x) for x, y in self.perm))


def transfer_pair(phi, a: StableOpPair) -> StableOpPair:
    if a.descriptor != phi.source:
        raise BackendMismatch("pair does not live on the map's source descriptor")
    return validate_pair(phi.target, phi.apply(a.delta), phi.apply(a.pi))


__all__ = [
    "CantorRelabel", "IdentityMap", "MapError", "OracleNotStable", "PairError",
    "PosetIsomorphism", "PruferDescriptor", "StableOpPair", "is_radical_stable", "normalize_pair",
    "pair_violations", "stable_join", "stable_leq", "stable_meet", "stable_member",
    "stable_normalize", "transfer_pair", "validate_pair",
]
