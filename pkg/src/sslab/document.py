"""Declarative documents: spaces, sets, descriptors, operations, maps and queries.

One statement per line (brackets may span lines), ``#`` starts a comment::

    space V = poset { o < p, o < q }
    prufer D on V { idempotent: points {p}, branched: all }
    op S = stable(D, delta=points {o}, pi=points {p})
    query m = member(S, ideal(C=points {p}, sharp=points {p}))

Names must be defined before they are used.
"""

from __future__ import annotations

import re
from bisect import bisect_right
from dataclasses import dataclass, field

from .ordinal import OrdinalError, cnf_parse
from .prufer import (
    CantorRelabel, IdentityMap, MapError, PairError, PosetIsomorphism, PruferDescriptor,
    StableOpPair, stable_join, stable_meet, validate_pair,
)
from .radical import Meet, Punctured, RadicalFormError, as_radical, radical_join
from .spaces import (
    CantorOneDim, FinitePoset, OrdinalOneDim, Space, SpaceError, parse_point,
)
from .spectral import IdealDescriptor, SpectralOp, canonicalize_delta, spectral_inf, spectral_sup


class DocumentError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        self.message, self.line, self.col = message, line, col
        super().__init__(f"line {line}, column {col}: {message}")


_WS = re.compile(r"(?:\s|#[^\n]*)*")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*(?:-[A-Za-z][A-Za-z0-9_]*)*")
_STRING = re.compile(r'"([^"\n]*)"')
_ORD = re.compile(r"[0-9w][0-9w^*+]*")
_INT = re.compile(r"[0-9]+")


class Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.last = 0  # end of the most recently consumed token
        self._starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def where(self, pos: int | None = None) -> tuple[int, int]:
        pos = self.pos if pos is None else pos
        i = bisect_right(self._starts, pos) - 1
        return i + 1, pos - self._starts[i] + 1

    def error(self, message: str, pos: int | None = None) -> DocumentError:
        return DocumentError(message, *self.where(pos))

    def skip(self) -> None:
        self.pos = _WS.match(self.text, self.pos).end()

    def mark(self) -> int:
        """Position of the next token."""
        self.skip()
        return self.pos

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def peek(self, tok: str) -> bool:
        self.skip()
        if not self.text.startswith(tok, self.pos):
            return False
        if tok[-1].isalnum():
            m = _IDENT.match(self.text, self.pos)
            return m is not None and m.group() == tok
        return True

    def accept(self, tok: str) -> bool:
        if self.peek(tok):
            self.pos += len(tok)
            self.last = self.pos
            return True
        return False

    def expect(self, tok: str) -> None:
        if not self.accept(tok):
            raise self.error(f"expected {tok!r}, found {self._found()}")

    def _found(self) -> str:
        self.skip()
        if self.pos >= len(self.text):
            return "end of input"
        return repr(self.text[self.pos:self.pos + 12].split("\n")[0])

    def _match(self, rx: re.Pattern, what: str):
        self.skip()
        m = rx.match(self.text, self.pos)
        if m is None:
            raise self.error(f"expected {what}, found {self._found()}")
        self.pos = self.last = m.end()
        return m

    def ident(self) -> str:
        return self._match(_IDENT, "a name").group()

    def peek_ident(self) -> str | None:
        self.skip()
        m = _IDENT.match(self.text, self.pos)
        return m.group() if m else None

    def string(self) -> str:
        return self._match(_STRING, "a quoted string").group(1)

    def ordinal(self):
        start = self.pos
        text = self._match(_ORD, "an ordinal literal").group()
        try:
            return cnf_parse(text)
        except OrdinalError as exc:
            raise self.error(str(exc), start) from None

    def integer(self) -> int:
        return int(self._match(_INT, "an integer").group())


# -- set expression AST (evaluated once the space is known)

@dataclass(frozen=True)
class SetNode:
    kind: str
    pos: int
    data: tuple = ()
    space: Space | None = None  # fixed by qualified names and named sets


_SET_FUNCS = ("closure", "derived", "isolated", "min", "down", "complement")
_CONSTS = ("max", "spec", "empty", "generic")


@dataclass
class Query:
    name: str
    kind: str
    args: tuple
    line: int


@dataclass
class Document:
    spaces: dict = field(default_factory=dict)
    sets: dict = field(default_factory=dict)
    descriptors: dict = field(default_factory=dict)
    ops: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    queries: list = field(default_factory=list)
    lines: dict = field(default_factory=dict)

    def summary(self) -> dict:
        return {"spaces": len(self.spaces), "sets": len(self.sets), "descriptors": len(self.descriptors),
                "ops": len(self.ops), "maps": len(self.maps), "queries": len(self.queries)}


# argument shapes per query kind: op, ideal, set, prufer, map
QUERY_KINDS = {
    "member": ("op", "ideal"), "tau": ("op", "ideal"), "leq": ("op", "op"),
    "qspec": ("op",), "is-spectral": ("op",), "gqc": ("op", "set"), "quasi-closed": ("op", "set"),
    "is-radical": ("op",), "sigma": ("op",), "sharp-rebuild": ("op",), "normalize": ("op",),
    "transfer": ("map", "op"), "enumerate": ("prufer",), "validate": ("prufer", "delta", "pi"),
    "cb-rank": ("set",), "derived": ("set",), "isolated": ("set",), "closure": ("set",),
    "perfect": ("set",), "min": ("set",), "dense": ("set", "set"), "show": ("set",),
}


class Parser:
    def __init__(self, text: str):
        self.s = Scanner(text)
        self.doc = Document()

    # -- entry
    def parse(self) -> Document:
        s = self.s
        while not s.at_end():
            start = s.pos
            kw = s.ident()
            handler = getattr(self, f"_stmt_{kw}", None)
            if handler is None:
                raise s.error(f"unknown statement kind {kw!r}", start)
            handler(start)
            if not s.at_end() and "\n" not in s.text[s.last:s.pos]:
                raise s.error("expected end of line after statement")
        return self.doc

    def _define(self, name: str, pos: int) -> None:
        if name in self.doc.lines:
            first = self.doc.lines[name]
            raise self.s.error(f"duplicate name {name!r} (first defined on line {first}, again on line "
                               f"{self.s.where(pos)[0]})", pos)
        self.doc.lines[name] = self.s.where(pos)[0]

    def _name(self, table: dict, what: str):
        s = self.s
        pos = s.mark()
        name = s.ident()
        if name not in table:
            kinds = [k for k, t in (("space", self.doc.spaces), ("set", self.doc.sets),
                                    ("descriptor", self.doc.descriptors), ("op", self.doc.ops),
                                    ("map", self.doc.maps)) if name in t]
            hint = f" ({name!r} is a {kinds[0]})" if kinds else ""
            raise s.error(f"unknown {what} {name!r}{hint}", pos)
        return table[name]

    # -- statements
    def _stmt_space(self, start: int) -> None:
        s = self.s
        name = s.ident()
        self._define(name, start)
        s.expect("=")
        kind_pos = s.mark()
        kind = s.ident()
        try:
            if kind == "poset":
                s.expect("{")
                points, rels = set(), []
                while True:
                    chain = [s.ident()]
                    while s.accept("<"):
                        chain.append(s.ident())
                    points.update(chain)
                    rels.extend(zip(chain, chain[1:]))
                    if not s.accept(","):
                        break
                s.expect("}")
                sp = FinitePoset(points, rels, name=name)
            elif kind == "ordinal":
                s.expect("(")
                top = s.ordinal()
                s.expect(")")
                sp = OrdinalOneDim(top, name=name)
            elif kind == "cantor":
                sp = CantorOneDim(name=name)
            else:
                raise s.error(f"unknown space kind {kind!r}; expected poset, ordinal or cantor", kind_pos)
        except SpaceError as exc:
            raise s.error(str(exc), kind_pos) from None
        self.doc.spaces[name] = sp

    def _stmt_set(self, start: int) -> None:
        s = self.s
        name = s.ident()
        self._define(name, start)
        s.expect("on")
        sp = self._name(self.doc.spaces, "space")
        s.expect("=")
        self.doc.sets[name] = (sp, self.set_value(sp))

    def _stmt_prufer(self, start: int) -> None:
        s = self.s
        name = s.ident()
        self._define(name, start)
        s.expect("on")
        sp = self._name(self.doc.spaces, "space")
        s.expect("{")
        fields = {}
        while not s.peek("}"):
            key_pos = s.mark()
            key = s.ident()
            s.expect(":")
            if key == "branched" and s.accept("all"):
                fields[key] = None
            elif key in ("idempotent", "branched"):
                fields[key] = self.set_value(sp)
            elif key == "override":
                fields[key] = s.ident() in ("yes", "true")
            else:
                raise s.error(f"unknown descriptor field {key!r}", key_pos)
            if not s.accept(","):
                break
        s.expect("}")
        try:
            self.doc.descriptors[name] = PruferDescriptor(
                sp, fields.get("idempotent", sp.empty()), fields.get("branched"), fields.get("override", False))
        except SpaceError as exc:
            raise s.error(str(exc), start) from None

    def _stmt_op(self, start: int) -> None:
        s = self.s
        name = s.ident()
        self._define(name, start)
        s.expect("=")
        self.doc.ops[name] = self.op_expr()

    def _stmt_map(self, start: int) -> None:
        s = self.s
        name = s.ident()
        self._define(name, start)
        s.expect(":")
        src = self._name(self.doc.descriptors, "descriptor")
        s.expect("->")
        dst = self._name(self.doc.descriptors, "descriptor")
        s.expect("{")
        pairs = []
        identity = False
        while not s.peek("}"):
            if s.accept("identity"):
                identity = True
            else:
                a = s.string() if s.peek('"') else s.ident()
                s.expect("->")
                b = s.string() if s.peek('"') else s.ident()
                pairs.append((a, b))
            if not s.accept(","):
                break
        s.expect("}")
        try:
            if identity:
                if pairs or src != dst:
                    raise MapError("identity maps a descriptor to itself and takes no pairs")
                phi = IdentityMap(src)
            elif isinstance(src.space, FinitePoset):
                phi = PosetIsomorphism(src, dst, tuple(pairs))
            elif isinstance(src.space, CantorOneDim):
                phi = CantorRelabel(src, dst, tuple(pairs))
            else:
                raise MapError("only the identity is available on ordinal models")
        except (MapError, SpaceError) as exc:
            raise s.error(str(exc), start) from None
        self.doc.maps[name] = phi

    def _stmt_query(self, start: int) -> None:
        s = self.s
        name = s.ident()
        self._define(name, start)
        s.expect("=")
        kind_pos = s.mark()
        kind = s.ident()
        if kind not in QUERY_KINDS:
            raise s.error(f"unknown query {kind!r}", kind_pos)
        s.expect("(")
        args = []
        ctx: Space | None = None
        for i, shape in enumerate(QUERY_KINDS[kind]):
            if i:
                s.expect(",")
            if shape == "op":
                op = self.op_ref()
                ctx = op.space
                args.append(op)
            elif shape == "ideal":
                args.append(self.ideal(ctx))
            elif shape == "set":
                args.append(self.set_arg(ctx))
            elif shape == "prufer":
                d = self._name(self.doc.descriptors, "descriptor")
                ctx = d.space
                args.append(d)
            elif shape == "map":
                args.append(self._name(self.doc.maps, "map"))
            else:
                s.expect(shape)
                s.expect("=")
                args.append(self.set_value(ctx))
        s.expect(")")
        self.doc.queries.append(Query(name, kind, tuple(args), s.where(start)[0]))

    # -- operations
    def op_ref(self):
        s = self.s
        name = s.peek_ident()
        if name in self.doc.ops:
            s.ident()
            return self.doc.ops[name]
        if name is not None and name.split("-")[0] in ("spectral", "join", "meet", "stable"):
            return self.op_expr()
        pos = s.mark()
        raise s.error(f"unknown op {s.peek_ident() or s._found()!r}", pos)

    def op_expr(self):
        s = self.s
        pos = s.mark()
        kind = s.ident()
        if kind in self.doc.ops:
            return self.doc.ops[kind]
        try:
            return self._op_body(kind, pos)
        except (SpaceError, RadicalFormError, PairError, ValueError) as exc:
            if isinstance(exc, DocumentError):
                raise
            raise s.error(str(exc), pos) from None

    def _op_args(self):
        s = self.s
        s.expect("(")
        out = [self.op_ref()]
        while s.accept(","):
            out.append(self.op_ref())
        s.expect(")")
        return out

    def _op_body(self, kind: str, pos: int):
        s = self.s
        if kind == "spectral":
            s.expect("(")
            sp = self._name(self.doc.spaces, "space")
            s.expect(",")
            delta = self.set_value(sp)
            s.expect(")")
            return canonicalize_delta(sp, delta)
        if kind == "join-punctured":
            s.expect("(")
            sp = self._name(self.doc.spaces, "space")
            s.expect(",")
            s.expect("M")
            s.expect("=")
            m = self.set_value(sp)
            s.expect(",")
            s.expect("S")
            s.expect("=")
            sset = self.set_value(sp)
            s.expect(")")
            return Punctured(sp, m, sset)
        if kind == "stable":
            s.expect("(")
            d = self._name(self.doc.descriptors, "descriptor")
            s.expect(",")
            s.expect("delta")
            s.expect("=")
            delta = self.set_value(d.space)
            s.expect(",")
            s.expect("pi")
            s.expect("=")
            pi = self.set_value(d.space)
            s.expect(")")
            return validate_pair(d, delta, pi)
        if kind in ("join", "meet"):
            args = self._op_args()
            if any(isinstance(a, StableOpPair) for a in args):
                raise s.error(f"{kind} takes spectral or radical operations; use stable-{kind} for pairs", pos)
            if kind == "meet":
                return Meet(tuple(as_radical(a) for a in args))
            out = as_radical(args[0])
            for a in args[1:]:
                out = radical_join(out, a)
            return out
        if kind in ("stable-meet", "stable-join"):
            args = self._op_args()
            if not all(isinstance(a, StableOpPair) for a in args):
                raise s.error(f"{kind} takes stable pairs", pos)
            f = stable_meet if kind == "stable-meet" else stable_join
            out = args[0]
            for a in args[1:]:
                out = f(out, a)
            return out
        if kind in ("spectral-inf", "spectral-sup"):
            args = self._op_args()
            if not all(isinstance(a, SpectralOp) for a in args):
                raise s.error(f"{kind} takes spectral operations", pos)
            return (spectral_inf if kind == "spectral-inf" else spectral_sup)(args)
        raise s.error(f"unknown operation {kind!r}", pos)

    def ideal(self, sp: Space) -> IdealDescriptor:
        s = self.s
        pos = s.mark()
        s.expect("ideal")
        s.expect("(")
        if s.accept("zero"):
            s.expect(")")
            return IdealDescriptor.zero(sp)
        s.expect("C")
        s.expect("=")
        c = self.set_value(sp)
        sharp = sp.empty()
        if s.accept(","):
            s.expect("sharp")
            s.expect("=")
            sharp = self.set_value(sp)
        s.expect(")")
        try:
            ideal = IdealDescriptor(sp, c, sharp)
        except SpaceError as exc:
            raise s.error(str(exc), pos) from None
        if ideal.is_zero:
            raise s.error("C contains the generic point; write ideal(zero) for the zero ideal", pos)
        return ideal

    # -- sets
    def set_arg(self, ctx: Space | None):
        """A set argument, optionally preceded by ``SPACE,`` to fix its space."""
        s = self.s
        save = s.pos
        name = s.peek_ident()
        if name in self.doc.spaces:
            s.ident()
            if s.accept(","):
                return self.doc.spaces[name], self.set_value(self.doc.spaces[name])
            s.pos = save
        node = self.set_expr()
        sp = ctx or self._infer(node)
        return sp, self._eval(node, sp)

    def set_value(self, sp: Space | None):
        node = self.set_expr()
        sp = sp or self._infer(node)
        return self._eval(node, sp)

    def set_expr(self) -> SetNode:
        s = self.s
        left = self._set_and()
        while True:
            pos = s.mark()
            if s.accept("|"):
                left = SetNode("union", pos, (left, self._set_and()))
            elif s.accept("\\") or (s.peek("-") and not s.peek("->") and s.accept("-")):
                left = SetNode("difference", pos, (left, self._set_and()))
            else:
                return left

    def _set_and(self) -> SetNode:
        s = self.s
        left = self._set_postfix()
        while True:
            pos = s.mark()
            if s.accept("&"):
                left = SetNode("intersect", pos, (left, self._set_postfix()))
            else:
                return left

    def _set_postfix(self) -> SetNode:
        s = self.s
        node = self._set_atom()
        while True:
            pos = s.mark()
            if s.text.startswith("+generic", pos):
                s.pos = s.last = pos + len("+generic")
                node = SetNode("union", pos, (node, SetNode("const", pos, ("generic",))))
            else:
                return node

    def _set_atom(self) -> SetNode:
        s = self.s
        pos = s.mark()
        if s.accept("("):
            node = self.set_expr()
            s.expect(")")
            return node
        word = s.ident()
        if word == "points":
            s.expect("{")
            names = []
            while not s.peek("}"):
                names.append(s.ident())
                if not s.accept(","):
                    break
            s.expect("}")
            return SetNode("points", pos, tuple(names))
        if word == "cells":
            return SetNode("cells", pos, self._cells())
        if word in ("cyl", "pt"):
            return SetNode(word, pos, (s.string(),))
        if word in _CONSTS:
            return SetNode("const", pos, (word,))
        if word in _SET_FUNCS and s.peek("("):
            s.expect("(")
            arg = self.set_expr()
            s.expect(")")
            return SetNode("func", pos, (word, arg))
        if word in self.doc.spaces and s.accept("."):
            const = s.ident()
            if const not in _CONSTS:
                raise s.error(f"expected one of {', '.join(_CONSTS)} after {word}.", pos)
            return SetNode("const", pos, (const,), self.doc.spaces[word])
        if word in self.doc.sets:
            sp, value = self.doc.sets[word]
            return SetNode("value", pos, (value,), sp)
        raise s.error(f"unknown set {word!r}", pos)

    def _cells(self) -> tuple:
        s = self.s
        s.expect("[")
        items = []
        while not s.peek("]"):
            pos = s.mark()
            if s.accept("["):
                lo_open = False
            elif s.accept("("):
                lo_open = True
            else:
                raise s.error("expected '[' or '(' to open a cell", pos)
            lo = s.ordinal()
            s.expect(",")
            hi = s.ordinal()
            if s.accept("]"):
                hi_open = False
            elif s.accept(")"):
                hi_open = True
            else:
                raise s.error("expected ']' or ')' to close a cell")
            nu, exact = 0, False
            if s.accept("nu"):
                if s.accept(">="):
                    nu = s.integer()
                else:
                    s.expect("=")
                    nu, exact = s.integer(), True
            items.append((pos, lo, hi, lo_open, hi_open, nu, exact))
            if not s.accept(";"):
                break
        s.expect("]")
        return tuple(items)

    def _infer(self, node: SetNode) -> Space:
        found = self._find_space(node)
        if found is None:
            raise self.s.error("cannot tell which space this set lives on; name a set or write SPACE.max", node.pos)
        return found

    def _find_space(self, node: SetNode):
        if node.space is not None:
            return node.space
        for child in node.data:
            if isinstance(child, SetNode):
                found = self._find_space(child)
                if found is not None:
                    return found
        return None

    def _eval(self, node: SetNode, sp: Space):
        s = self.s
        if node.space is not None and node.space != sp:
            raise s.error(f"set lives on another space than {getattr(sp, 'name', None) or sp!r}", node.pos)
        try:
            return self._eval_node(node, sp)
        except (SpaceError, KeyError) as exc:
            if isinstance(exc, DocumentError):
                raise
            raise s.error(str(exc), node.pos) from None

    def _eval_node(self, node: SetNode, sp: Space):
        s = self.s
        k = node.kind
        if k in ("union", "intersect", "difference"):
            a, b = (self._eval(c, sp) for c in node.data)
            return getattr(sp, k)(a, b)
        if k == "value":
            return node.data[0]
        if k == "const":
            return {"max": sp.max_part, "spec": sp.full, "empty": sp.empty, "generic": sp.generic_set}[node.data[0]]()
        if k == "func":
            fname, arg = node.data
            v = self._eval(arg, sp)
            if fname == "min":
                if not sp.is_closed(v):
                    raise s.error("min() needs a closed set", node.pos)
                return sp.minimal_points(v)
            return {"closure": sp.closure, "derived": sp.derived, "isolated": sp.isolated,
                    "down": sp.generizations, "complement": sp.complement}[fname](v)
        if k == "points":
            if not isinstance(sp, FinitePoset):
                raise s.error("points {...} literals belong to poset spaces", node.pos)
            return sp.bits(*node.data)
        if k == "cells":
            if not isinstance(sp, OrdinalOneDim):
                raise s.error("cells[...] literals belong to ordinal spaces", node.pos)
            out = sp.empty()
            for pos, lo, hi, lo_open, hi_open, nu, exact in node.data:
                if hi < lo:
                    raise s.error("cell bounds are reversed", pos)
                out = sp.union(out, sp.interval(lo, hi, nu_min=nu, exact=exact, lo_open=lo_open, hi_open=hi_open))
            return out
        if k in ("cyl", "pt"):
            if not isinstance(sp, CantorOneDim):
                raise s.error(f"{k} literals belong to cantor spaces", node.pos)
            text = node.data[0]
            if k == "cyl":
                if set(text) - {"0", "1"}:
                    raise s.error(f"bad cylinder word {text!r}", node.pos)
                return sp.cylinder(text)
            return sp.singleton(parse_point(text))
        raise s.error(f"cannot evaluate {k}", node.pos)


def parse_document(text: str) -> Document:
    return Parser(text).parse()


__all__ = ["Document", "DocumentError", "Parser", "Query", "QUERY_KINDS", "parse_document"]
