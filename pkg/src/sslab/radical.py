"""Radical operations as suprema of spectral families.

A closed set ``c = V(J)`` (J radical, nonzero) is *quasi-closed* for an
operation when ``J = J^* n D``.  For a spectral member ``s_Delta`` this holds
exactly when ``Delta n c`` is dense in ``c``; a supremum of a family keeps
``J`` quasi-closed iff every member does; for a finite infimum the largest
quasi-closed subsets are united.  ``V(J^* n D)`` is the largest quasi-closed
closed subset of ``V(J)``, so ``1 in J^*`` iff that subset is empty.  The
largest subset is the greatest fixpoint of

    T(c) = intersection over members of closure(member_delta n c),

reached by iterating from ``V(J)`` downwards.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import reduce
from typing import NamedTuple, Union

from .ordinal import TOP
from .spaces import (
    BackendMismatch, CantorOneDim, FinitePoset, NotClosed, OrdinalOneDim, Space, SpaceError,
    is_dense_in,
)
from .spectral import IdealDescriptor, SpectralOp

#: Closed sets tried by the Cantor spectrality search before it is truncated.
SEARCH_BUDGET = 1 << 14


class RadicalFormError(ValueError):
    """An operation was given in a form the requested algorithm does not accept."""


class FixpointCapExceeded(RuntimeError):
    """The descending iteration ran past the atom bound of its generated algebra."""


@dataclass(frozen=True)
class Punctured:
    """The family ``{s_{(M minus P)} : P in S}`` (denotes its supremum)."""

    space: Space
    M: object
    S: object

    def __post_init__(self):
        sp = self.space
        sp.check(self.M, self.S)
        if not sp.subset(self.M, sp.max_part()):
            raise SpaceError("punctured family: M must consist of maximal points")
        if not sp.subset(self.S, self.M):
            raise SpaceError("punctured family: S must lie inside M")

    def expand(self) -> list[SpectralOp]:
        """Explicit members; finite posets only."""
        sp = self.space
        if not isinstance(sp, FinitePoset):
            raise RadicalFormError("only finite punctured families can be expanded")
        return [SpectralOp(sp, sp.generizations(sp.difference(self.M, sp.singleton(p))))
                for p in sp.names(self.S)]

    def describe(self) -> str:
        sp = self.space
        return f"join-punctured(M={sp.render(self.M)}, S={sp.render(self.S)})"


@dataclass(frozen=True)
class Join:
    """Supremum of spectral operations and punctured families."""

    fam: tuple

    def __post_init__(self):
        if not self.fam:
            raise ValueError("a join needs at least one member")
        object.__setattr__(self, "fam", tuple(self.fam))
        sp = self.fam[0].space
        for part in self.fam:
            if not isinstance(part, (SpectralOp, Punctured)):
                raise RadicalFormError(f"join member must be spectral or punctured, got {type(part).__name__}")
            if part.space != sp:
                raise BackendMismatch("join members live on different spaces")

    @property
    def space(self) -> Space:
        return self.fam[0].space

    def describe(self) -> str:
        return "join(" + ", ".join(p.describe() for p in self.fam) + ")"


@dataclass(frozen=True)
class Meet:
    """Pointwise infimum of finitely many radical operations."""

    args: tuple

    def __post_init__(self):
        if not self.args:
            raise ValueError("a meet needs at least one argument")
        object.__setattr__(self, "args", tuple(self.args))
        sp = self.args[0].space
        if any(a.space != sp for a in self.args):
            raise BackendMismatch("meet arguments live on different spaces")

    @property
    def space(self) -> Space:
        return self.args[0].space

    def describe(self) -> str:
        return "meet(" + ", ".join(a.describe() for a in self.args) + ")"


RadicalOp = Union[Join, Punctured, Meet]


def as_radical(op) -> RadicalOp:
    if isinstance(op, SpectralOp):
        return Join((op,))
    if isinstance(op, (Join, Punctured, Meet)):
        return op
    raise RadicalFormError(f"not a radical operation: {type(op).__name__}")


def _parts(op) -> tuple:
    if isinstance(op, Join):
        return op.fam
    if isinstance(op, Punctured):
        return (op,)
    raise RadicalFormError("expected a join or punctured family")


def _defining_sets(op) -> list:
    if isinstance(op, Meet):
        return [s for a in op.args for s in _defining_sets(a)]
    out = []
    for part in _parts(op):
        if isinstance(part, SpectralOp):
            out.append(part.delta_down)
        else:
            out.extend((part.M, part.S))
    return out


def _check_query(sp: Space, c, allow_empty: bool = True) -> None:
    sp.check(c)
    if sp.has_generic(c):
        raise SpaceError("the zero ideal is excluded from density procedures")
    if not sp.is_closed(c):
        raise NotClosed(f"{sp.render(c)} is not closed")
    if not allow_empty and sp.is_empty(c):
        raise SpaceError("quasi-closedness is tested on nonempty closed sets")


# -- fixpoint machinery

def fixpoint_cap(op, c0) -> int:
    """Bound on strictly descending iterations inside the generated algebra."""
    env = os.environ.get("SSLAB_MAX_ATOMS")
    if env:
        return int(env)
    sp = op.space
    pieces = 1 + sp.piece_count(c0) + sum(sp.piece_count(s) for s in _defining_sets(op))
    if isinstance(sp, FinitePoset):
        return len(sp.points) + 1
    if isinstance(sp, OrdinalOneDim):
        return pieces * (TOP + 1) ** 2
    return 4 * pieces + 4


def _step_part(part, c):
    sp = part.space
    if isinstance(part, SpectralOp):
        return sp.closure(sp.intersect(part.delta_down, c))
    if sp.is_empty(part.S):
        return c
    if isinstance(sp, FinitePoset):
        return reduce(sp.intersect, (_step_part(m, c) for m in part.expand()))
    # Removing a point P from A keeps closure(A) unless P is isolated in A.
    a = sp.intersect(part.M, c)
    return sp.difference(sp.closure(a), sp.intersect(part.S, sp.isolated(a)))


def _step(parts, c):
    sp = parts[0].space
    return reduce(sp.intersect, (_step_part(p, c) for p in parts))


def greatest_quasi_closed(op, c0):
    """Largest quasi-closed closed subset of ``c0``."""
    op = as_radical(op)
    sp = op.space
    _check_query(sp, c0)
    if isinstance(op, Meet):
        return reduce(sp.union, (greatest_quasi_closed(a, c0) for a in op.args))
    parts = _parts(op)
    cap = fixpoint_cap(op, c0)
    c = c0
    for _ in range(cap + 1):
        nxt = _step(parts, c)
        if nxt == c:
            return c
        c = nxt
    raise FixpointCapExceeded(f"no fixpoint after {cap} iterations (set SSLAB_MAX_ATOMS to raise the cap)")


def _part_dense(part, c) -> bool:
    sp = part.space
    if isinstance(part, SpectralOp):
        return is_dense_in(sp, part.delta_down, c)
    if sp.is_empty(part.S):
        return True
    if isinstance(sp, FinitePoset):
        return all(is_dense_in(sp, m.delta_down, c) for m in part.expand())
    return is_dense_in(sp, part.M, c) and sp.is_empty(sp.intersect(part.S, sp.isolated(c)))


def quasi_closed_test(op, c) -> bool:
    op = as_radical(op)
    sp = op.space
    _check_query(sp, c, allow_empty=False)
    if isinstance(op, Meet):
        return sp.closure(reduce(sp.union, (greatest_quasi_closed(a, c) for a in op.args))) == c
    return all(_part_dense(p, c) for p in _parts(op))


def radical_member(op, ideal: IdealDescriptor) -> bool:
    """Whether 1 lies in I^*; depends on V(I) only."""
    op = as_radical(op)
    if ideal.space != op.space:
        raise BackendMismatch("ideal and operation live on different spaces")
    if ideal.is_zero:
        raise SpaceError("the zero ideal is excluded from density procedures")
    return ideal.space.is_empty(greatest_quasi_closed(op, ideal.C))


def _qspec_max(op):
    sp = op.space
    if isinstance(op, Meet):
        return reduce(sp.union, (_qspec_max(a) for a in op.args))
    out = sp.max_part()
    for part in _parts(op):
        if isinstance(part, SpectralOp):
            piece = sp.intersect(part.delta_down, sp.max_part())
        elif sp.is_empty(part.S):
            piece = sp.max_part()
        else:
            piece = sp.difference(part.M, part.S)
        out = sp.intersect(out, piece)
    return out


def radical_qspec(op):
    """Generic point plus every P whose closure V(P) keeps a nonempty quasi-closed part."""
    op = as_radical(op)
    sp = op.space
    if isinstance(sp, FinitePoset):
        mask = 1 << sp.generic_index
        for i, _ in enumerate(sp.points):
            if i == sp.generic_index:
                continue
            up = sp.closure(sp.singleton(sp.points[i]))
            if not sp.is_empty(greatest_quasi_closed(op, up)):
                mask |= 1 << i
        return type(sp.empty())(mask)
    # On {generic} U Max, V(P) = {P}: quasi-closed iff P survives every member.
    return sp.with_generic(_qspec_max(op))


class SpectralityResult(NamedTuple):
    answer: bool
    witness: object
    provenance: str


def _consistent(op, qspec, c) -> bool:
    sp = op.space
    return greatest_quasi_closed(op, c) == sp.closure(sp.intersect(qspec, c))


def _cantor_candidates(sp: CantorOneDim, sets):
    depth = sp.word_depth(*sets)
    points = sorted(sp.mentioned_points(*sets))
    cylinders = [format(i, f"0{depth}b") if depth else "" for i in range(1 << depth)]
    total = (1 << len(cylinders)) * (1 << len(points))
    if total <= SEARCH_BUDGET:
        clopens = [c for r in range(len(cylinders) + 1) for c in itertools.combinations(cylinders, r)]
        pointsets = [p for r in range(len(points) + 1) for p in itertools.combinations(points, r)]
        truncated = False
    else:
        clopens = [()] + [(c,) for c in cylinders] + [tuple(cylinders)]
        pointsets = [()] + [(p,) for p in points]
        truncated = True
    seen = set()
    for words in clopens:
        for pts in pointsets:
            cand = sp.make(words, plus=pts)
            if cand not in seen and not sp.is_empty(cand):
                seen.add(cand)
                yield cand
    if truncated:
        yield None


def radical_is_spectral(op) -> SpectralityResult:
    op = as_radical(op)
    sp = op.space
    if isinstance(sp, OrdinalOneDim):
        return SpectralityResult(True, None, "theorem fast path: scattered min-spectra")
    qspec = radical_qspec(op)
    if isinstance(sp, FinitePoset):
        for m in sp.closed_masks(proper=True):
            c = type(sp.empty())(m)
            if not _consistent(op, qspec, c):
                return SpectralityResult(False, c, "exhaustive over closed sets")
        return SpectralityResult(True, None, "exhaustive over closed sets")
    if isinstance(sp, CantorOneDim):
        truncated = False
        for cand in _cantor_candidates(sp, _defining_sets(op)):
            if cand is None:
                truncated = True
                break
            if not _consistent(op, qspec, cand):
                return SpectralityResult(False, cand, "witness in generated algebra")
        note = "relative to generated algebra" + (" (search truncated)" if truncated else "")
        return SpectralityResult(True, None, note)
    raise RadicalFormError(f"no spectrality procedure for {sp.kind} spaces")


def radical_join(a, b) -> RadicalOp:
    a, b = as_radical(a), as_radical(b)
    if isinstance(a, Meet) or isinstance(b, Meet):
        raise RadicalFormError("join of meet nodes is not supported; distribute first")
    if a.space != b.space:
        raise BackendMismatch("join operands live on different spaces")
    sp = a.space
    out: list = []
    for part in _parts(a) + _parts(b):
        if isinstance(part, Punctured):
            for i, prev in enumerate(out):
                if isinstance(prev, Punctured) and prev.M == part.M:
                    out[i] = Punctured(sp, prev.M, sp.union(prev.S, part.S))
                    break
            else:
                out.append(part)
        elif part not in out:
            out.append(part)
    if len(out) == 1 and isinstance(out[0], Punctured):
        return out[0]
    return Join(tuple(out))


def radical_meet(a, b) -> Meet:
    a, b = as_radical(a), as_radical(b)
    if a.space != b.space:
        raise BackendMismatch("meet operands live on different spaces")
    return Meet((a, b))
