"""Shared behaviour of the one-dimensional spectra ``{generic} U Max``.

Closed sets of Spec are Spec itself and the closed subsets of Max (Max
carries a prescribed Hausdorff topology).  Every nonempty open set therefore
contains the generic point: inside a subspace holding the generic point, that
point is isolated and no maximal point is.
"""

from __future__ import annotations

from abc import abstractmethod

from .base import GENERIC, Space, SpaceError


class OneDimSpace(Space):
    # Max-part primitives; the flag carried by sets is ignored/preserved by the wrappers below.
    @abstractmethod
    def _m_empty(self): ...

    @abstractmethod
    def _m_full(self): ...

    @abstractmethod
    def _m_union(self, a, b): ...

    @abstractmethod
    def _m_intersect(self, a, b): ...

    @abstractmethod
    def _m_complement(self, a): ...

    @abstractmethod
    def _m_closure(self, a): ...

    @abstractmethod
    def _m_isolated(self, a): ...

    @abstractmethod
    def _m_contains(self, a, point) -> bool: ...

    @abstractmethod
    def _make(self, m, generic: bool): ...

    @abstractmethod
    def _split(self, a):
        """Return ``(max_part_data, generic_flag)``."""

    # -- Space API
    def empty(self):
        return self._make(self._m_empty(), False)

    def full(self):
        return self._make(self._m_full(), True)

    def max_part(self):
        return self._make(self._m_full(), False)

    def generic_set(self):
        return self._make(self._m_empty(), True)

    @property
    def generic_point(self):
        return GENERIC

    def without_generic(self, a):
        m, _ = self._split(a)
        return self._make(m, False)

    def with_generic(self, a):
        m, _ = self._split(a)
        return self._make(m, True)

    def union(self, a, b):
        self.check(a, b)
        (ma, ga), (mb, gb) = self._split(a), self._split(b)
        return self._make(self._m_union(ma, mb), ga or gb)

    def intersect(self, a, b):
        self.check(a, b)
        (ma, ga), (mb, gb) = self._split(a), self._split(b)
        return self._make(self._m_intersect(ma, mb), ga and gb)

    def complement(self, a):
        self.check(a)
        m, g = self._split(a)
        return self._make(self._m_complement(m), not g)

    def contains(self, a, point) -> bool:
        m, g = self._split(a)
        if point is GENERIC:
            return g
        return self._m_contains(m, point)

    def closure(self, a):
        self.check(a)
        m, g = self._split(a)
        if g:
            return self.full()
        return self._make(self._m_closure(m), False)

    def generizations(self, a):
        self.check(a)
        m, g = self._split(a)
        if m == self._m_empty():
            return a
        return self._make(m, True)

    def minimal_points(self, c):
        self.check(c)
        if not self.is_closed(c):
            raise SpaceError("minimal_points needs a closed set")
        m, g = self._split(c)
        if g:
            return self.generic_set()
        return c

    def isolated(self, s):
        self.check(s)
        m, g = self._split(s)
        if g:
            return self.generic_set()
        return self._make(self._m_isolated(m), False)

    def is_closed(self, a) -> bool:
        m, g = self._split(a)
        if g:
            return a == self.full()
        return self._m_closure(m) == m

    def maximal_singleton(self, point):
        if point is GENERIC:
            raise SpaceError("generic point is not maximal")
        return self.singleton(point)
