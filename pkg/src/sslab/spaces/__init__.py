"""Decidable spectra, their definable-set algebra, and derived-set tools."""

from __future__ import annotations

from dataclasses import dataclass

from .base import GENERIC, BackendMismatch, NotClosed, Space, SpaceError
from .cantor import CantorOneDim, CantorPoint, Simple, cantor_point, parse_point
from .onedim import OneDimSpace
from .ordinal_line import OrdCells, OrdinalOneDim
from .poset import Bits, FinitePoset

__all__ = [
    "GENERIC", "NOT_SCATTERED", "BackendMismatch", "Bits", "CantorOneDim", "CantorPoint",
    "FinitePoset", "NotClosed", "OneDimSpace", "OrdCells", "OrdinalOneDim", "PerfectReport",
    "Simple", "Space", "SpaceError", "atoms", "boolean_combine", "cantor_point", "cb_rank",
    "closure_of", "derived_set_in", "generizations_of", "is_dense_in", "isolated_points_in",
    "minimal_points", "parse_point", "perfect_report",
]


class _NotScattered:
    __slots__ = ()

    def __repr__(self) -> str:
        return "NOT_SCATTERED"


NOT_SCATTERED = _NotScattered()


def boolean_combine(space: Space, op: str, a, b=None):
    if op == "complement":
        if b is not None:
            raise SpaceError("complement takes one operand")
        return space.complement(a)
    if b is None:
        raise SpaceError(f"{op} takes two operands")
    if op == "union":
        return space.union(a, b)
    if op == "intersect":
        return space.intersect(a, b)
    if op == "difference":
        return space.difference(a, b)
    raise SpaceError(f"unknown boolean operation {op!r}")


def closure_of(space: Space, a):
    return space.closure(a)


def generizations_of(space: Space, a):
    return space.generizations(a)


def minimal_points(space: Space, c):
    space.check(c)
    if not space.is_closed(c):
        raise NotClosed("minimal_points needs a Zariski-closed set")
    return space.minimal_points(c)


def isolated_points_in(space: Space, s):
    return space.isolated(s)


def derived_set_in(space: Space, s):
    return space.derived(s)


def is_dense_in(space: Space, a, c) -> bool:
    """Whether ``a`` meets the closed set ``c`` in a dense subset of ``c``."""
    space.check(a, c)
    if not space.is_closed(c):
        raise NotClosed("density is tested against a closed set")
    return space.subset(c, space.closure(space.intersect(a, c)))


def cb_rank(space: Space, s):
    """Cantor-Bendixson rank: least m with the m-th derived set empty."""
    space.check(s)
    if isinstance(space, CantorOneDim) and space.without_generic(s).clopen:
        return NOT_SCATTERED
    rank = 0
    cur = s
    # Every derivation strictly raises the least nu level (ordinal) or empties the set.
    for _ in range(64):
        if space.is_empty(cur):
            return rank
        nxt = space.derived(cur)
        if nxt == cur:
            return NOT_SCATTERED
        cur = nxt
        rank += 1
    raise SpaceError("derived-set iteration did not stabilise")


@dataclass(frozen=True)
class PerfectReport:
    is_scattered: bool
    is_perfect: bool
    witness_isolated: object = None


def perfect_report(space: Space, s) -> PerfectReport:
    """Scattered/perfect status; the empty set is reported as both."""
    rank = cb_rank(space, s)
    perfect = space.derived(s) == s
    witness = None
    if not space.is_empty(s) and not perfect:
        witness = space.representative(space.isolated(s))
    return PerfectReport(rank is not NOT_SCATTERED, perfect, witness)


def atoms(space: Space, sets, within=None) -> list:
    """Nonempty cells of the partition of ``within`` (default Spec) cut out by ``sets``."""
    regions = [space.full() if within is None else within]
    for s in sets:
        nxt = []
        for r in regions:
            for part in (space.intersect(r, s), space.difference(r, s)):
                if not space.is_empty(part):
                    nxt.append(part)
        regions = nxt
    return regions
