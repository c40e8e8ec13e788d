"""One-dimensional spectrum whose maximal points form the ordinal interval [0, max_top].

Sets are stored by exact-nu level: level ``r`` holds the points whose least
CNF exponent is exactly ``r`` (level ``TOP`` holds only the ordinal 0), as a
list of half-open runs ``[lo, hi)`` where both ends are level-``r`` points (or
the level's universe bound).  With endpoints snapped to the level, the run
list of a set is unique, and closure and derived sets stay inside the algebra:
a level-``r`` run ``[lo, hi)`` accumulates exactly at the points of higher
level strictly between ``lo`` and ``hi``.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

from ..ordinal import END, TOP, ZERO, OrdinalCNF, cnf_parse, cnf_render, next_with_nu
from .base import GENERIC, SpaceError
from .onedim import OneDimSpace

LEVELS = range(TOP + 1)

Runs = tuple  # tuple[tuple[OrdinalCNF, OrdinalCNF], ...]


@dataclass(frozen=True)
class OrdCells:
    levels: tuple  # one Runs per level 0..TOP
    generic: bool = False

    def __repr__(self) -> str:
        body = {r: [(str(a), str(b)) for a, b in runs] for r, runs in enumerate(self.levels) if runs}
        return f"OrdCells({body}, generic={self.generic})"


def _as_ord(x) -> OrdinalCNF:
    if isinstance(x, OrdinalCNF):
        return x
    if isinstance(x, int):
        return OrdinalCNF.nat(x)
    return cnf_parse(str(x))


def _coalesce(runs) -> Runs:
    if not runs:
        return ()
    merged = sorted(runs)
    out = [list(merged[0])]
    for lo, hi in merged[1:]:
        if lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1][1] = hi
        else:
            out.append([lo, hi])
    return tuple((a, b) for a, b in out)


def _runs_union(x: Runs, y: Runs) -> Runs:
    if not x:
        return y
    if not y:
        return x
    return _coalesce(x + y)


def _runs_intersect(x: Runs, y: Runs) -> Runs:
    out = []
    i = j = 0
    while i < len(x) and j < len(y):
        lo = max(x[i][0], y[j][0])
        hi = min(x[i][1], y[j][1])
        if lo < hi:
            out.append((lo, hi))
        if x[i][1] < y[j][1]:
            i += 1
        else:
            j += 1
    return tuple(out)


def _runs_complement(x: Runs, ulo, uhi) -> Runs:
    out = []
    cur = ulo
    for lo, hi in x:
        if cur < lo:
            out.append((cur, lo))
        cur = hi
    if cur < uhi:
        out.append((cur, uhi))
    return tuple(out)


class OrdinalOneDim(OneDimSpace):
    kind = "ordinal"
    set_type = OrdCells

    def __init__(self, max_top, name: str | None = None):
        self.max_top = _as_ord(max_top)
        self.name = name
        past = self.max_top.successor()
        self._ulo = tuple(next_with_nu(ZERO, r) for r in LEVELS)
        self._uhi = tuple(next_with_nu(past, r) if r < TOP else END for r in LEVELS)
        self._universe = tuple(((lo, hi),) if lo < hi else () for lo, hi in zip(self._ulo, self._uhi))
        self._live = tuple(r for r in range(TOP) if self._universe[r])
        self._acc_memo: dict = {}

    def __eq__(self, other):
        return isinstance(other, OrdinalOneDim) and other.max_top == self.max_top

    def __hash__(self):
        return hash(("ordinal", self.max_top))

    def __repr__(self) -> str:
        return f"OrdinalOneDim({cnf_render(self.max_top)})"

    # -- construction
    def _snap(self, lo, hi, r):
        a = max(next_with_nu(lo, r), self._ulo[r])
        b = min(next_with_nu(hi, r), self._uhi[r])
        return (a, b) if a < b else None

    def interval(self, lo, hi, *, nu_min: int = 0, exact: bool = False,
                 lo_open: bool = False, hi_open: bool = False, generic: bool = False) -> OrdCells:
        """``{x in lo..hi : nu(x) >= nu_min}`` (or ``== nu_min`` when exact), bounds closed by default."""
        lo, hi = _as_ord(lo), _as_ord(hi)
        if not 0 <= nu_min <= TOP:
            raise SpaceError(f"nu bound {nu_min} outside 0..{TOP}")
        start = lo.successor() if lo_open else lo
        stop = hi if hi_open else hi.successor()
        wanted = [nu_min] if exact else range(nu_min, TOP + 1)
        levels = [()] * (TOP + 1)
        for r in wanted:
            run = self._snap(start, stop, r)
            if run:
                levels[r] = (run,)
        return OrdCells(tuple(levels), generic)

    def _make(self, m, generic):
        return OrdCells(m, bool(generic))

    def _split(self, a):
        return a.levels, a.generic

    # -- Max-part primitives
    def _m_empty(self):
        return ((),) * (TOP + 1)

    def _m_full(self):
        return self._universe

    def _m_union(self, a, b):
        return tuple(_runs_union(x, y) for x, y in zip(a, b))

    def _m_intersect(self, a, b):
        return tuple(_runs_intersect(x, y) for x, y in zip(a, b))

    def _m_complement(self, a):
        return tuple(_runs_complement(x, lo, hi) for x, lo, hi in zip(a, self._ulo, self._uhi))

    def _accumulation(self, a):
        hit = self._acc_memo.get(a)
        if hit is not None:
            return hit
        extra = [[] for _ in LEVELS]
        for r in self._live:
            for lo, hi in a[r]:
                nxt = lo.successor()
                for s in self._live:
                    if s > r:
                        run = self._snap(nxt, hi, s)
                        if run:
                            extra[s].append(run)
        out = tuple(_coalesce(runs) for runs in extra)
        if len(self._acc_memo) > 50000:
            self._acc_memo.clear()
        self._acc_memo[a] = out
        return out

    def _m_closure(self, a):
        return self._m_union(a, self._accumulation(a))

    def _m_isolated(self, a):
        acc = self._accumulation(a)
        return tuple(_runs_intersect(x, _runs_complement(y, lo, hi))
                     for x, y, lo, hi in zip(a, acc, self._ulo, self._uhi))

    def _m_derived(self, a):
        return self._m_intersect(a, self._accumulation(a))

    def _m_contains(self, a, point) -> bool:
        x = _as_ord(point)
        if x > self.max_top:
            return False
        runs = a[x.nu]
        i = bisect_right(runs, (x, END)) - 1
        return i >= 0 and runs[i][0] <= x < runs[i][1]

    # -- points
    def singleton(self, point):
        x = _as_ord(point)
        if x > self.max_top:
            raise SpaceError(f"{cnf_render(x)} exceeds max_top {cnf_render(self.max_top)}")
        return self.interval(x, x)

    def derived(self, s):
        self.check(s)
        if s.generic:
            return self.without_generic(s)
        return OrdCells(self._m_derived(s.levels), False)

    def representative(self, a):
        """The least maximal point of ``a`` (generic only if that is all there is)."""
        best = None
        for runs in a.levels:
            if runs and (best is None or runs[0][0] < best):
                best = runs[0][0]
        if best is None:
            if a.generic:
                return GENERIC
            raise SpaceError("empty set has no representative")
        return best

    def render(self, a) -> str:
        pieces = []
        for r, runs in enumerate(a.levels):
            for lo, hi in runs:
                if r == TOP:
                    pieces.append("[0,0]")
                    continue
                if hi == self._uhi[r]:
                    upper = f"{cnf_render(self.max_top)}]"
                else:
                    upper = f"{cnf_render(hi)})"
                pieces.append(f"[{cnf_render(lo)},{upper} nu={r}")
        text = "cells[" + "; ".join(pieces) + "]" if pieces else "empty"
        if a.generic:
            text = "generic" if not pieces else text + " +generic"
        return text

    def render_point(self, p) -> str:
        return cnf_render(p) if isinstance(p, OrdinalCNF) else repr(p)

    def piece_count(self, a) -> int:
        return sum(len(runs) for runs in a.levels) + int(a.generic)
