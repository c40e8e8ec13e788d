"""Seeded random sets, ideals and operations for each backend."""

from __future__ import annotations

import random

from .ordinal import OrdinalCNF
from .prufer import PruferDescriptor, StableOpPair, validate_pair
from .spaces import Bits, CantorOneDim, FinitePoset, OrdinalOneDim, Space, cantor_point
from .spectral import IdealDescriptor, SpectralOp, canonicalize_delta


def random_ordinal(rng: random.Random, bound: OrdinalCNF) -> OrdinalCNF:
    """An ordinal ``<= bound`` with small coefficients, biased towards limits."""
    top = bound.terms[0][0] if bound.terms else 0
    terms = []
    for e in range(top, -1, -1):
        if rng.random() < 0.5:
            terms.append((e, rng.randint(1, 3)))
    x = OrdinalCNF(tuple(terms))
    return x if x <= bound else bound


def _random_ordinal_set(rng: random.Random, sp: OrdinalOneDim):
    out = sp.empty()
    for _ in range(rng.randint(1, 3)):
        a, b = sorted((random_ordinal(rng, sp.max_top), random_ordinal(rng, sp.max_top)))
        cell = sp.interval(a, b, nu_min=rng.randint(0, 2), exact=rng.random() < 0.3,
                           lo_open=rng.random() < 0.3, hi_open=rng.random() < 0.3)
        out = sp.union(out, cell)
    if rng.random() < 0.2:
        out = sp.difference(sp.max_part(), out)
    return out


def _random_word(rng: random.Random, max_len: int) -> str:
    return "".join(rng.choice("01") for _ in range(rng.randint(0, max_len)))


def random_cantor_point(rng: random.Random):
    period = "".join(rng.choice("01") for _ in range(rng.randint(1, 2)))
    return cantor_point(_random_word(rng, 3), period)


def _random_cantor_set(rng: random.Random, sp: CantorOneDim):
    words = [_random_word(rng, 3) for _ in range(rng.randint(0, 2))]
    words = [w for w in words if w or rng.random() < 0.2]
    plus = [random_cantor_point(rng) for _ in range(rng.randint(0, 2))]
    minus = [random_cantor_point(rng) for _ in range(rng.randint(0, 2))]
    return sp.make(words, plus=plus, minus=minus)


def random_set(rng: random.Random, sp: Space, generic: bool | None = None):
    """Random definable set; the generic point is included with probability 1/2 unless fixed."""
    if isinstance(sp, FinitePoset):
        s = Bits(rng.getrandbits(len(sp.points)))
        if generic is not None:
            s = sp.union(s, sp.generic_set()) if generic else sp.difference(s, sp.generic_set())
        return s
    if isinstance(sp, OrdinalOneDim):
        s = _random_ordinal_set(rng, sp)
    elif isinstance(sp, CantorOneDim):
        s = _random_cantor_set(rng, sp)
    else:
        raise TypeError(f"no sampler for {type(sp).__name__}")
    if generic is None:
        generic = rng.random() < 0.5
    return sp.with_generic(s) if generic else s


def random_closed(rng: random.Random, sp: Space):
    """Random proper closed set (may be empty)."""
    return sp.closure(random_set(rng, sp, generic=False))


def random_ideal(rng: random.Random, sp: Space, branched=None) -> IdealDescriptor:
    c = random_closed(rng, sp)
    room = sp.minimal_points(c)
    if branched is not None:
        room = sp.intersect(room, branched)
    sharp = sp.intersect(room, random_set(rng, sp, generic=False)) if rng.random() < 0.5 else sp.empty()
    return IdealDescriptor(sp, c, sharp)


def random_spectral(rng: random.Random, sp: Space) -> SpectralOp:
    return canonicalize_delta(sp, random_set(rng, sp))


def random_family(rng: random.Random, sp: Space, size: int | None = None) -> list[SpectralOp]:
    return [random_spectral(rng, sp) for _ in range(size or rng.randint(1, 3))]


def random_descriptor(rng: random.Random, sp: Space) -> PruferDescriptor:
    idem = sp.difference(random_set(rng, sp, generic=False), sp.generic_set())
    return PruferDescriptor(sp, idem)


def random_pair(rng: random.Random, descriptor: PruferDescriptor) -> StableOpPair:
    """Random valid pair: pi drawn from admissible points outside delta."""
    sp = descriptor.space
    delta = sp.generizations(random_set(rng, sp))
    room = sp.difference(descriptor.admissible, delta)
    if isinstance(sp, FinitePoset):
        keep = [p for p in sp.names(room) if sp.subset(sp.strictly_below(p), delta) and rng.random() < 0.6]
        pi = sp.bits(*keep)
    elif sp.has_generic(delta):
        pi = sp.intersect(room, random_set(rng, sp, generic=False))
    else:
        pi = sp.empty()
    return validate_pair(descriptor, delta, pi)
