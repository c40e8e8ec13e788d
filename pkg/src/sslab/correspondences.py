"""Stable operations, localizing systems and singular length functions side by side.

All three views share one membership predicate on ideal descriptors.  A
singular length function is kept only through its colength ``tau``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import partial
from typing import Callable

from .oracle import ideal_universe
from .prufer import StableOpPair, stable_member, stable_normalize
from .radical import Join, Meet, Punctured, radical_member
from .spaces import CantorOneDim, FinitePoset, SpaceError, atoms
from .spectral import IdealDescriptor, SpectralOp, spectral_member

INFINITY = math.inf


class SharpMismatch(ValueError):
    """The rebuilt length function differs from the original on some ideal."""

    def __init__(self, ideal: IdealDescriptor, original: bool, rebuilt: bool):
        self.ideal = ideal
        super().__init__(f"{ideal.describe()}: original member={original}, rebuilt member={rebuilt}")


def _membership(source) -> Callable[[IdealDescriptor], bool]:
    if isinstance(source, StableOpPair):
        return partial(stable_member, source)
    if isinstance(source, SpectralOp):
        return partial(spectral_member, source)
    if isinstance(source, (Join, Punctured, Meet)):
        # the zero ideal is never in the system of a radical view
        return lambda ideal: False if ideal.is_zero else radical_member(source, ideal)
    raise TypeError(f"no membership for {type(source).__name__}")


@dataclass(frozen=True)
class LocalizingSystemView:
    source: object

    @property
    def membership(self) -> Callable[[IdealDescriptor], bool]:
        return _membership(self.source)

    def __contains__(self, ideal: IdealDescriptor) -> bool:
        return self.membership(ideal)


@dataclass(frozen=True)
class SingularLengthView:
    system: LocalizingSystemView

    def tau(self, ideal: IdealDescriptor) -> float:
        return 0 if ideal in self.system else INFINITY


def localizing_view(source) -> LocalizingSystemView:
    return LocalizingSystemView(source)


def length_view(source) -> SingularLengthView:
    return SingularLengthView(LocalizingSystemView(source))


def colength_tau(view: SingularLengthView, ideal: IdealDescriptor) -> float:
    return view.tau(ideal)


def is_radical_ls(view: LocalizingSystemView) -> bool:
    src = view.source
    if isinstance(src, StableOpPair):
        return src.space.is_empty(src.pi)
    if isinstance(src, (SpectralOp, Join, Punctured, Meet)):
        return True
    raise TypeError(f"no radicality test for {type(src).__name__}")


def radical_witness(pair: StableOpPair) -> tuple[IdealDescriptor, IdealDescriptor] | None:
    """Two ideals with one radical, only the non-radical one in the system."""
    sp = pair.space
    if sp.is_empty(pair.pi):
        return None
    q = sp.representative(pair.pi)
    return IdealDescriptor.at_point(sp, q, primary=True), IdealDescriptor.at_point(sp, q)


def sigma_support(pair: StableOpPair):
    sp = pair.space
    return sp.difference(sp.union(pair.delta, pair.pi), sp.generic_set())


def _poset_localized(pair: StableOpPair, sigma, ideal: IdealDescriptor) -> bool:
    sp = pair.space
    ok = True
    for p in sp.names(sigma):
        below = sp.generizations(sp.singleton(p))
        c = sp.closure(sp.intersect(ideal.C, below))
        ok &= stable_member(pair, IdealDescriptor(sp, c, sp.intersect(ideal.sharp, below)))
    return ok


def _onedim_localized(pair: StableOpPair, sigma, ideal: IdealDescriptor) -> bool:
    sp = pair.space
    d = pair.descriptor
    where = sp.intersect(ideal.C, sigma)
    cells = atoms(sp, [pair.delta, pair.pi, d.idempotent, d.branched, ideal.sharp], within=where)
    for cell in cells:
        p = sp.representative(cell)
        if not stable_member(pair, IdealDescriptor.at_point(sp, p, primary=sp.contains(ideal.sharp, p))):
            return False
    return True


def sharp_membership(pair: StableOpPair) -> Callable[[IdealDescriptor], bool]:
    """Membership of the sum of the localizations of the length function over its support."""
    sp = pair.space
    if isinstance(sp, CantorOneDim):
        raise SpaceError("sharp rebuild needs a min-scattered model; the Cantor model is not")
    sigma = sigma_support(pair)
    local = _poset_localized if isinstance(sp, FinitePoset) else _onedim_localized
    original = partial(stable_member, pair)

    def member(ideal: IdealDescriptor) -> bool:
        if ideal.is_zero:
            return original(ideal)
        return local(pair, sigma, ideal)

    return member


def _check_universe(pair: StableOpPair):
    sp = pair.space
    if isinstance(sp, FinitePoset):
        return ideal_universe(pair.descriptor)
    d = pair.descriptor
    out = [IdealDescriptor(sp, sp.empty())]
    for cell in atoms(sp, [pair.delta, pair.pi, d.idempotent, d.branched], within=sp.max_part()):
        p = sp.representative(cell)
        out.append(IdealDescriptor.at_point(sp, p))
        out.append(IdealDescriptor.at_point(sp, p, primary=True))
        out.append(IdealDescriptor(sp, sp.closure(cell)))
    return out


def sharp_rebuild(pair: StableOpPair) -> StableOpPair:
    rebuilt = sharp_membership(pair)
    for ideal in _check_universe(pair):
        a, b = stable_member(pair, ideal), rebuilt(ideal)
        if a != b:
            raise SharpMismatch(ideal, a, b)
    return stable_normalize(pair.descriptor, rebuilt, probes=(pair.delta, pair.pi))
