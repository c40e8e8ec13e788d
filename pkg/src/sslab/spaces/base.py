from __future__ import annotations

from abc import ABC, abstractmethod


class SpaceError(ValueError):
    """Operand does not belong to the space, or a precondition on a set failed."""


class BackendMismatch(SpaceError):
    pass


class NotClosed(SpaceError):
    pass


class _Generic:
    __slots__ = ()

    def __repr__(self) -> str:
        return "generic"

    def __reduce__(self):
        return "GENERIC"


#: The generic point (zero ideal) of a one-dimensional spectrum.
GENERIC = _Generic()


class Space(ABC):
    """A decidable model of a prime spectrum with its Zariski topology.

    Sets are immutable canonical values; equality of sets is equality of the
    Python values.  Every operation here is total on sets of this space and
    raises :class:`BackendMismatch` on foreign operands.
    """

    kind: str = "abstract"
    set_type: type = object

    def check(self, *sets) -> None:
        for s in sets:
            if not isinstance(s, self.set_type):
                raise BackendMismatch(f"{type(s).__name__} is not a set of a {self.kind} space")

    # -- constants
    @abstractmethod
    def empty(self): ...

    @abstractmethod
    def full(self): ...

    @abstractmethod
    def max_part(self):
        """The closed subspace of maximal points."""

    @abstractmethod
    def generic_set(self): ...

    # -- boolean algebra
    @abstractmethod
    def union(self, a, b): ...

    @abstractmethod
    def intersect(self, a, b): ...

    @abstractmethod
    def complement(self, a): ...

    def difference(self, a, b):
        return self.intersect(a, self.complement(b))

    def is_empty(self, a) -> bool:
        return a == self.empty()

    def subset(self, a, b) -> bool:
        return self.is_empty(self.difference(a, b))

    @abstractmethod
    def contains(self, a, point) -> bool: ...

    @abstractmethod
    def singleton(self, point): ...

    def has_generic(self, a) -> bool:
        return self.contains(a, self.generic_point)

    @property
    @abstractmethod
    def generic_point(self): ...

    # -- topology
    @abstractmethod
    def closure(self, a):
        """Zariski closure (specialization closure)."""

    @abstractmethod
    def generizations(self, a): ...

    @abstractmethod
    def minimal_points(self, c): ...

    @abstractmethod
    def isolated(self, s):
        """Points of ``s`` isolated in the subspace topology of ``s``."""

    def derived(self, s):
        return self.difference(s, self.isolated(s))

    def is_closed(self, a) -> bool:
        return self.closure(a) == a

    def is_down_closed(self, a) -> bool:
        return self.generizations(a) == a

    # -- enumeration / sampling helpers
    @abstractmethod
    def representative(self, a):
        """Some point of a nonempty set."""

    @abstractmethod
    def render(self, a) -> str:
        """Document-syntax literal for ``a``."""

    @abstractmethod
    def render_point(self, p) -> str: ...

    def piece_count(self, a) -> int:
        """Rough size of the representation; used to bound fixpoint iteration."""
        return 1

    @property
    def min_scattered(self) -> bool:
        """Whether every closed set of minimal points is scattered in this model."""
        return True
