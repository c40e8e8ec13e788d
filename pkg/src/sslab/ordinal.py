"""Ordinals below w^(K+1) in Cantor normal form.

An ordinal is stored as its CNF term tuple ``((e1, c1), (e2, c2), ...)`` with
strictly decreasing exponents and positive coefficients.  Because the tuple
is canonical, the ordinal order coincides with Python's lexicographic tuple
order, so :class:`OrdinalCNF` subclasses ``tuple`` and inherits fast
comparison and hashing.
"""

from __future__ import annotations

import enum
import re

#: Largest exponent allowed in a term.  Fixed per build.
K = 8

#: nu(0): the zero ordinal is divisible by every power of w.
TOP = K + 1


class OrdinalError(ValueError):
    """Malformed literal, out-of-range exponent or invalid subtraction."""


class Cmp(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


class OrdinalCNF(tuple):
    __slots__ = ()

    def __new__(cls, terms=()):
        norm = []
        prev = None
        for exp, coef in terms:
            exp, coef = int(exp), int(coef)
            if coef < 1:
                raise OrdinalError(f"coefficient must be positive in term {_term_str(exp, coef)}")
            if not 0 <= exp <= K:
                raise OrdinalError(f"exponent exceeds bound K={K} in term {_term_str(exp, coef)}")
            if prev is not None and exp >= prev:
                raise OrdinalError(f"non-canonical term order at {_term_str(exp, coef)}")
            prev = exp
            norm.append((exp, coef))
        return tuple.__new__(cls, norm)

    @classmethod
    def _raw(cls, terms) -> OrdinalCNF:
        return tuple.__new__(cls, terms)

    @classmethod
    def nat(cls, n: int) -> OrdinalCNF:
        if n < 0:
            raise OrdinalError("negative natural")
        return cls._raw(((0, n),) if n else ())

    @classmethod
    def omega_power(cls, exp: int, coef: int = 1) -> OrdinalCNF:
        return cls(((exp, coef),))

    @property
    def terms(self) -> tuple:
        return tuple(self)

    @property
    def nu(self) -> int:
        return self[-1][0] if self else TOP

    @property
    def is_limit(self) -> bool:
        return bool(self) and self[-1][0] >= 1

    def successor(self) -> OrdinalCNF:
        if self and self[-1][0] == 0:
            return OrdinalCNF._raw(self[:-1] + ((0, self[-1][1] + 1),))
        return OrdinalCNF._raw(tuple(self) + ((0, 1),))

    def __add__(self, other):  # ordinal sum, not tuple concatenation
        if not isinstance(other, OrdinalCNF):
            return NotImplemented
        return ordinal_add(self, other)

    def __mul__(self, other):
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self) -> str:
        return cnf_render(self)

    def __repr__(self) -> str:
        return f"OrdinalCNF({cnf_render(self)!r})"


ZERO = OrdinalCNF()
ONE = OrdinalCNF.nat(1)
OMEGA = OrdinalCNF.omega_power(1)

#: w^(K+1): strictly above every representable ordinal; used as an open upper bound.
END = OrdinalCNF._raw(((K + 1, 1),))


def _term_str(exp: int, coef: int) -> str:
    if exp == 0:
        return str(coef)
    base = "w" if exp == 1 else f"w^{exp}"
    return base if coef == 1 else f"{base}*{coef}"


def cnf_render(a: OrdinalCNF) -> str:
    if not a:
        return "0"
    return "+".join(_term_str(e, c) for e, c in a)


_TERM_RE = re.compile(r"w\^(\d+)(?:\*(\d+))?|w(?:\*(\d+))?|(\d+)")


def cnf_parse(text: str) -> OrdinalCNF:
    """Parse a literal such as ``w^2*3+w+4``."""
    src = text.replace(" ", "")
    if not src:
        raise OrdinalError("empty ordinal literal")
    if src == "0":
        return ZERO
    terms = []
    for raw in src.split("+"):
        m = _TERM_RE.fullmatch(raw)
        if m is None:
            raise OrdinalError(f"malformed term {raw!r} in {text!r}")
        if m.group(1) is not None:
            exp, coef = int(m.group(1)), int(m.group(2) or 1)
        elif m.group(4) is not None:
            exp, coef = 0, int(m.group(4))
        else:
            exp, coef = 1, int(m.group(3) or 1)
        if coef == 0:
            raise OrdinalError(f"zero coefficient in term {raw!r}")
        if exp > K:
            raise OrdinalError(f"exponent exceeds bound K={K} in term {raw!r}")
        if terms and exp >= terms[-1][0]:
            raise OrdinalError(f"non-canonical term order at {raw!r} in {text!r}")
        terms.append((exp, coef))
    return OrdinalCNF(terms)


def cnf_compare(a: OrdinalCNF, b: OrdinalCNF) -> Cmp:
    if a == b:
        return Cmp.EQ
    return Cmp.LT if a < b else Cmp.GT


def ordinal_add(a: OrdinalCNF, b: OrdinalCNF) -> OrdinalCNF:
    if not b:
        return a
    lead, coef = b[0]
    head = [t for t in a if t[0] > lead]
    same = [c for e, c in a if e == lead]
    if same:
        return OrdinalCNF._raw(tuple(head) + ((lead, same[0] + coef),) + tuple(b[1:]))
    return OrdinalCNF._raw(tuple(head) + tuple(b))


def left_subtract(a: OrdinalCNF, b: OrdinalCNF) -> OrdinalCNF:
    """The unique ``c`` with ``a + c == b``; requires ``a <= b``."""
    if a > b:
        raise OrdinalError(f"underflow: {cnf_render(a)} > {cnf_render(b)}")
    i = 0
    while i < len(a) and a[i] == b[i]:
        i += 1
    if i == len(a):
        return OrdinalCNF._raw(tuple(b[i:]))
    (ea, ca), (eb, cb) = a[i], b[i]
    if eb > ea:
        return OrdinalCNF._raw(tuple(b[i:]))
    return OrdinalCNF._raw(((eb, cb - ca),) + tuple(b[i + 1:]))


def cnf_add_sub(a: OrdinalCNF, b: OrdinalCNF, mode: str = "add") -> OrdinalCNF:
    if mode == "add":
        return ordinal_add(a, b)
    if mode == "left_subtract":
        return left_subtract(a, b)
    raise ValueError(f"unknown mode {mode!r}")


def cnf_classify(a: OrdinalCNF) -> tuple[bool, int, OrdinalCNF]:
    """Return ``(is_limit, nu, successor)``; ``nu(0)`` is :data:`TOP`."""
    return a.is_limit, a.nu, a.successor()


def next_with_nu(c: OrdinalCNF, r: int) -> OrdinalCNF:
    """Least ``x >= c`` whose least exponent is exactly ``r`` (``r == TOP`` means ``x == 0``)."""
    if r >= TOP:
        return ZERO if not c else END
    head = tuple(t for t in c if t[0] > r)
    at = 0
    below = False
    for e, coef in c:
        if e == r:
            at = coef
        elif e < r:
            below = True
    if at and not below:
        return c
    return OrdinalCNF._raw(head + ((r, at + 1),))
