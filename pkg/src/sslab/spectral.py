"""Spectral operations ``s_Delta`` stored by their down-closed set, and ideal descriptors."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .spaces import BackendMismatch, NotClosed, Space, SpaceError


@dataclass(frozen=True)
class IdealDescriptor:
    """What the membership tests can see of a nonzero ideal I.

    ``C`` is V(I), a proper closed set; ``sharp`` is the part of Min(C) where I
    is locally a proper primary ideal (strictly inside the local maximal
    ideal).  The zero ideal is modelled only by :meth:`zero`.
    """

    space: Space
    C: object
    sharp: object = None

    def __post_init__(self):
        sp = self.space
        if self.sharp is None:
            object.__setattr__(self, "sharp", sp.empty())
        sp.check(self.C, self.sharp)
        if sp.has_generic(self.C):
            if self.C != sp.full() or not sp.is_empty(self.sharp):
                raise SpaceError("only the zero ideal contains the generic point")
            return
        if not sp.is_closed(self.C):
            raise NotClosed(f"ideal support {sp.render(self.C)} is not closed")
        if not sp.subset(self.sharp, sp.minimal_points(self.C)):
            raise SpaceError("sharp locus must lie in Min(C)")

    @classmethod
    def zero(cls, space: Space) -> IdealDescriptor:
        return cls(space, space.full(), space.empty())

    @classmethod
    def at_point(cls, space: Space, point, primary: bool = False) -> IdealDescriptor:
        """The prime ideal at ``point`` (or a proper primary ideal for it)."""
        c = space.closure(space.singleton(point))
        return cls(space, c, space.singleton(point) if primary else space.empty())

    @property
    def is_zero(self) -> bool:
        return self.space.has_generic(self.C)

    def describe(self) -> str:
        if self.is_zero:
            return "ideal(zero)"
        sp = self.space
        return f"ideal(C={sp.render(self.C)}, sharp={sp.render(self.sharp)})"


@dataclass(frozen=True)
class SpectralOp:
    space: Space
    delta_down: object

    def __post_init__(self):
        self.space.check(self.delta_down)
        if not self.space.is_down_closed(self.delta_down):
            raise SpaceError("spectral operation needs a down-closed set; use canonicalize_delta")

    def describe(self) -> str:
        return f"spectral({self.space.render(self.delta_down)})"


def canonicalize_delta(space: Space, delta) -> SpectralOp:
    return SpectralOp(space, space.generizations(delta))


def _same_space(*items) -> Space:
    sp = items[0].space
    for it in items[1:]:
        if it.space != sp:
            raise BackendMismatch("operands live on different spaces")
    return sp


def spectral_member(op: SpectralOp, ideal: IdealDescriptor) -> bool:
    """1 lies in I^{s_Delta} iff no prime of Delta contains I."""
    sp = _same_space(op, ideal)
    return sp.is_empty(sp.intersect(ideal.C, op.delta_down))


def spectral_leq(a: SpectralOp, b: SpectralOp) -> bool:
    sp = _same_space(a, b)
    return sp.subset(b.delta_down, a.delta_down)


def spectral_inf(fam) -> SpectralOp:
    fam = list(fam)
    if not fam:
        raise ValueError("infimum of an empty family")
    sp = _same_space(*fam)
    return SpectralOp(sp, reduce(sp.union, (f.delta_down for f in fam)))


def spectral_sup(fam) -> SpectralOp:
    """Supremum inside the spectral lattice (not the semistar supremum)."""
    fam = list(fam)
    if not fam:
        raise ValueError("supremum of an empty family")
    sp = _same_space(*fam)
    return SpectralOp(sp, reduce(sp.intersect, (f.delta_down for f in fam)))
