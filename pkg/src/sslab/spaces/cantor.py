"""One-dimensional spectrum whose maximal points form the Cantor space {0,1}^N.

A set is ``(clopen \\ minus) U plus``: a clopen part given by its maximal
cylinders, plus finitely many eventually periodic points outside it, minus
finitely many inside it.  Nonempty clopens are infinite, so this
decomposition is unique.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple

from .base import SpaceError
from .onedim import OneDimSpace


class CantorPoint(NamedTuple):
    """The infinite word ``prefix + period + period + ...``."""

    prefix: str
    period: str

    def __str__(self) -> str:
        return f"{self.prefix}({self.period})"

    def head(self, n: int) -> str:
        word = self.prefix
        while len(word) < n:
            word += self.period
        return word[:n]


def _primitive(v: str) -> str:
    n = len(v)
    for d in range(1, n + 1):
        if n % d == 0 and v[:d] * (n // d) == v:
            return v[:d]
    return v


def cantor_point(prefix: str, period: str) -> CantorPoint:
    if not period or set(prefix + period) - {"0", "1"}:
        raise SpaceError(f"bad eventually periodic point {prefix}({period})")
    period = _primitive(period)
    while prefix and prefix[-1] == period[-1]:
        prefix = prefix[:-1]
        period = period[-1] + period[:-1]
    return CantorPoint(prefix, period)


_POINT_RE = re.compile(r"([01]*)\(([01]+)\)")


def parse_point(text: str) -> CantorPoint:
    m = _POINT_RE.fullmatch(text.strip())
    if m is None:
        raise SpaceError(f"malformed point literal {text!r}; expected u(v)")
    return cantor_point(m.group(1), m.group(2))


# -- clopen algebra on prefix-free word sets

def normalize_clopen(words) -> tuple[str, ...]:
    """Maximal cylinders contained in the union of ``words``."""
    ws = set(words)
    for w in ws:
        if set(w) - {"0", "1"}:
            raise SpaceError(f"bad cylinder word {w!r}")
    while True:
        pruned = {w for w in ws if not any(w[:i] in ws for i in range(len(w)))}
        merged = set()
        for w in pruned:
            if w and (w[:-1] + ("1" if w[-1] == "0" else "0")) in pruned:
                merged.add(w[:-1])
            else:
                merged.add(w)
        if merged == ws:
            return tuple(sorted(ws, key=lambda w: (len(w), w)))
        ws = merged


def in_clopen(words, p: CantorPoint) -> bool:
    return any(p.head(len(w)) == w for w in words)


def clopen_intersect(a, b) -> tuple[str, ...]:
    out = []
    for u in a:
        for v in b:
            if v.startswith(u):
                out.append(v)
            elif u.startswith(v):
                out.append(u)
    return normalize_clopen(out)


def clopen_complement(words) -> tuple[str, ...]:
    def rec(ws: list[str], prefix: str) -> list[str]:
        if "" in ws:
            return []
        if not ws:
            return [prefix]
        zero = [w[1:] for w in ws if w[0] == "0"]
        one = [w[1:] for w in ws if w[0] == "1"]
        return rec(zero, prefix + "0") + rec(one, prefix + "1")

    return normalize_clopen(rec(list(words), ""))


def clopen_union(a, b) -> tuple[str, ...]:
    return normalize_clopen(tuple(a) + tuple(b))


@dataclass(frozen=True)
class Simple:
    clopen: tuple = ()
    plus: tuple = ()
    minus: tuple = ()
    generic: bool = False

    def __repr__(self) -> str:
        return (f"Simple(clopen={list(self.clopen)}, plus={[str(p) for p in self.plus]}, "
                f"minus={[str(p) for p in self.minus]}, generic={self.generic})")


def _member(m, p: CantorPoint) -> bool:
    clopen, plus, minus = m
    if p in plus:
        return True
    if p in minus:
        return False
    return in_clopen(clopen, p)


def _build(clopen, candidates, member) -> tuple:
    plus, minus = set(), set()
    for p in candidates:
        inside = in_clopen(clopen, p)
        want = member(p)
        if want and not inside:
            plus.add(p)
        elif inside and not want:
            minus.add(p)
    return clopen, tuple(sorted(plus)), tuple(sorted(minus))


class CantorOneDim(OneDimSpace):
    kind = "cantor"
    set_type = Simple

    def __init__(self, name: str | None = None):
        self.name = name

    def __eq__(self, other):
        return isinstance(other, CantorOneDim)

    def __hash__(self):
        return hash("cantor")

    def __repr__(self) -> str:
        return "CantorOneDim()"

    @property
    def min_scattered(self) -> bool:
        return False

    # -- construction
    def make(self, clopen=(), plus=(), minus=(), generic: bool = False) -> Simple:
        """Canonical set ``(cyl(clopen) \\ minus) U plus``."""
        words = normalize_clopen(clopen)
        plus = {p if isinstance(p, CantorPoint) else parse_point(p) for p in plus}
        minus = {p if isinstance(p, CantorPoint) else parse_point(p) for p in minus}
        m = _build(words, plus | minus, lambda p: p in plus or (p not in minus and in_clopen(words, p)))
        return self._make(m, generic)

    def cylinder(self, word: str) -> Simple:
        return self.make((word,))

    def _make(self, m, generic):
        clopen, plus, minus = m
        return Simple(tuple(clopen), tuple(plus), tuple(minus), bool(generic))

    def _split(self, a):
        return (a.clopen, a.plus, a.minus), a.generic

    # -- Max-part primitives
    def _m_empty(self):
        return ((), (), ())

    def _m_full(self):
        return (("",), (), ())

    def _combine(self, a, b, clopen, op):
        cand = set(a[1]) | set(a[2]) | set(b[1]) | set(b[2])
        return _build(clopen, cand, lambda p: op(_member(a, p), _member(b, p)))

    def _m_union(self, a, b):
        return self._combine(a, b, clopen_union(a[0], b[0]), lambda x, y: x or y)

    def _m_intersect(self, a, b):
        return self._combine(a, b, clopen_intersect(a[0], b[0]), lambda x, y: x and y)

    def _m_complement(self, a):
        clopen = clopen_complement(a[0])
        return _build(clopen, set(a[1]) | set(a[2]), lambda p: not _member(a, p))

    def _m_closure(self, a):
        return (a[0], a[1], ())

    def _m_isolated(self, a):
        return ((), a[1], ())

    def _m_contains(self, a, point) -> bool:
        p = point if isinstance(point, CantorPoint) else parse_point(point)
        return _member(a, p)

    def singleton(self, point):
        p = point if isinstance(point, CantorPoint) else parse_point(point)
        return self.make(plus=(p,))

    def representative(self, a):
        if a.plus:
            return a.plus[0]
        if a.clopen:
            word = a.clopen[0]
            n = 0
            while True:
                for bits in range(1 << n):
                    tail = format(bits, f"0{n}b") if n else ""
                    for period in ("0", "1"):
                        p = cantor_point(word + tail, period)
                        if p not in a.minus:
                            return p
                n += 1
        if a.generic:
            return self.generic_point
        raise SpaceError("empty set has no representative")

    def render(self, a) -> str:
        parts = []
        if a.clopen == ("",):
            parts.append("max")
        elif a.clopen:
            parts.append(" | ".join(f'cyl "{w}"' for w in a.clopen))
        for p in a.plus:
            parts.append(f'pt "{p}"')
        text = " | ".join(parts)
        if a.minus:
            text = f"({text})" if len(parts) > 1 else text
            text += "".join(f' - pt "{p}"' for p in a.minus)
        if a.generic:
            text = "generic" if not text else f"({text}) +generic" if len(parts) > 1 or a.minus else text + " +generic"
        return text or "empty"

    def render_point(self, p) -> str:
        return f'pt "{p}"' if isinstance(p, CantorPoint) else repr(p)

    def piece_count(self, a) -> int:
        return len(a.clopen) + len(a.plus) + len(a.minus) + int(a.generic)

    def mentioned_points(self, *sets) -> set[CantorPoint]:
        out = set()
        for s in sets:
            out |= set(s.plus) | set(s.minus)
        return out

    def word_depth(self, *sets) -> int:
        return max((len(w) for s in sets for w in s.clopen), default=0)
