"""Concrete syntax: a recursive-descent parser and a round-tripping printer.

    formula := quant | iff
    quant   := ('forall' | 'exists') IDENT ['<' term] '.' formula
    iff     := imp ['<->' iff]
    imp     := or ['->' imp]
    or      := and ('|' and)*
    and     := unary ('&' unary)*
    unary   := '~' unary | quant | '(' formula ')' | IDENT '(' terms ')' | term '=' term
    term    := prod ('+' prod)*
    prod    := base ('*' base)*
    base    := '0' | DIGITS | 'S' '(' term ')' | IDENT | '(' term ')'

Decimal literals are numerals; the printer writes small numerals as S(...)
chains and switches to decimals above ``NUMERAL_CHAIN_LIMIT``.
"""
from __future__ import annotations

import re

from .formula import (
    Add, And, Atom, BExists, BForall, Eq, Exists, Forall, Formula, Iff, Implies,
    Mul, Not, Num, Or, PropVar, Succ, Term, Var, FormulaError,
)

NUMERAL_CHAIN_LIMIT = 16

_TOKEN_RE = re.compile(r"\s*(?:(<->|->|[()~&|=+*.,<])|(\d+)|([A-Za-z_][A-Za-z0-9_]*))")


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def tokenize(text: str) -> list:
    toks = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("op", m.group(1), start))
        elif m.group(2):
            toks.append(("num", m.group(2), start))
        else:
            toks.append(("id", m.group(3), start))
        pos = m.end()
    toks.append(("eof", "", n))
    return toks


class _Parser:
    def __init__(self, text, registry, templates):
        self.toks = tokenize(text)
        self.i = 0
        self.registry = registry
        self.templates = templates

    # -- helpers
    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, value, k=0):
        kind, v, _ = self.peek(k)
        return kind != "eof" and v == value and kind in ("op", "id")

    def expect(self, value):
        kind, v, pos = self.peek()
        if v != value or kind == "eof":
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos)
        self.i += 1

    def ident(self):
        kind, v, pos = self.peek()
        if kind != "id" or v in ("forall", "exists", "S"):
            raise ParseError(f"expected identifier, found {v or 'end of input'!r}", pos)
        self.i += 1
        return v

    # -- formulas
    def formula(self) -> Formula:
        if self.at("forall") or self.at("exists"):
            return self.quant()
        return self.iff()

    def quant(self):
        kw = self.peek()[1]
        self.i += 1
        pos = self.peek()[2]
        var = self.ident()
        bound = None
        if self.at("<"):
            self.i += 1
            bound = self.term()
        self.expect(".")
        body = self.formula()
        try:
            if bound is None:
                return (Forall if kw == "forall" else Exists)(var, body)
            return (BForall if kw == "forall" else BExists)(var, bound, body)
        except FormulaError as exc:
            raise ParseError(str(exc), pos) from None

    def iff(self):
        left = self.imp()
        if self.at("<->"):
            self.i += 1
            return Iff(left, self.iff())
        return left

    def imp(self):
        left = self.disj()
        if self.at("->"):
            self.i += 1
            return Implies(left, self.imp())
        return left

    def disj(self):
        left = self.conj()
        while self.at("|"):
            self.i += 1
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.at("&"):
            self.i += 1
            left = And(left, self.unary())
        return left

    def unary(self):
        if self.at("~"):
            self.i += 1
            return Not(self.unary())
        if self.at("forall") or self.at("exists"):
            return self.quant()
        kind, v, pos = self.peek()
        if kind == "id" and v != "S" and self.at("(", 1):
            return self.atom()
        if kind == "id" and self.templates and v != "S" and not self._term_continues(1):
            self.i += 1
            return PropVar(v)
        if self.at("("):
            save = self.i
            try:
                return self.equation()
            except ParseError:
                self.i = save
            self.i += 1
            f = self.formula()
            self.expect(")")
            return f
        return self.equation()

    def _term_continues(self, k):
        return any(self.at(op, k) for op in ("=", "+", "*"))

    def atom(self):
        kind, sym, pos = self.peek()
        self.i += 1
        self.expect("(")
        args = []
        if not self.at(")"):
            args.append(self.term())
            while self.at(","):
                self.i += 1
                args.append(self.term())
        self.expect(")")
        from .registry import REGISTRY, RegistryError

        reg = self.registry if self.registry is not None else REGISTRY
        try:
            spec = reg.get(sym)
        except RegistryError:
            raise ParseError(f"unknown defined atom {sym!r}", pos) from None
        if spec.arity != len(args):
            raise ParseError(f"atom {sym} takes {spec.arity} arguments, got {len(args)}", pos)
        return Atom(sym, tuple(args), spec.declared_class)

    def equation(self):
        left = self.term()
        self.expect("=")
        return Eq(left, self.term())

    # -- terms
    def term(self) -> Term:
        left = self.prod()
        while self.at("+"):
            self.i += 1
            left = Add(left, self.prod())
        return left

    def prod(self):
        left = self.base()
        while self.at("*"):
            self.i += 1
            left = Mul(left, self.base())
        return left

    def base(self):
        kind, v, pos = self.peek()
        if kind == "num":
            self.i += 1
            if len(v) > 1 and v[0] == "0":
                raise ParseError("numerals have no leading zeros", pos)
            return Num(int(v))
        if kind == "id" and v == "S":
            self.i += 1
            self.expect("(")
            t = self.term()
            self.expect(")")
            return Succ(t)
        if kind == "id":
            return Var(self.ident())
        if self.at("("):
            self.i += 1
            t = self.term()
            self.expect(")")
            return t
        raise ParseError(f"expected a term, found {v or 'end of input'!r}", pos)


def parse(text: str, registry=None) -> Formula:
    """Parse one formula; defined atoms take their declared class from ``registry``."""
    p = _Parser(text, registry, templates=False)
    f = p.formula()
    kind, v, pos = p.peek()
    if kind != "eof":
        raise ParseError(f"trailing input {v!r}", pos)
    return f


def parse_template(text: str) -> Formula:
    """Parse a propositional template such as ``~p1 & ~p2``."""
    from .formula import check_template

    p = _Parser(text, None, templates=True)
    f = p.formula()
    kind, v, pos = p.peek()
    if kind != "eof":
        raise ParseError(f"trailing input {v!r}", pos)
    try:
        check_template(f)
    except FormulaError as exc:
        raise ParseError(str(exc), 0) from None
    return f


def parse_term(text: str) -> Term:
    p = _Parser(text, None, templates=False)
    t = p.term()
    kind, v, pos = p.peek()
    if kind != "eof":
        raise ParseError(f"trailing input {v!r}", pos)
    return t


# ---------------------------------------------------------------------------
# printing

_TERM_PREC = {Add: 1, Mul: 2}
_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_OPS = {Iff: "<->", Implies: "->", Or: "|", And: "&"}


def print_term(t: Term) -> str:
    if isinstance(t, Num):
        if t.value <= NUMERAL_CHAIN_LIMIT:
            return "S(" * t.value + "0" + ")" * t.value
        return str(t.value)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Succ):
        return f"S({print_term(t.arg)})"
    prec = _TERM_PREC[type(t)]
    op = " + " if isinstance(t, Add) else " * "
    left = print_term(t.left)
    if _TERM_PREC.get(type(t.left), 9) < prec:
        left = f"({left})"
    right = print_term(t.right)
    if _TERM_PREC.get(type(t.right), 9) <= prec:
        right = f"({right})"
    return left + op + right


def _quantified(f):
    return isinstance(f, (Forall, Exists, BForall, BExists))


def to_text(f: Formula) -> str:
    if isinstance(f, Eq):
        return f"{print_term(f.left)} = {print_term(f.right)}"
    if isinstance(f, Atom):
        return f"{f.symbol}({', '.join(print_term(a) for a in f.args)})"
    if isinstance(f, PropVar):
        return f.name
    if isinstance(f, Not):
        inner = to_text(f.body)
        if isinstance(f.body, (Eq,) + tuple(_PREC)) or _quantified(f.body):
            inner = f"({inner})"
        return "~" + inner
    if isinstance(f, (Forall, Exists)):
        kw = "forall" if isinstance(f, Forall) else "exists"
        return f"{kw} {f.var}. {to_text(f.body)}"
    if isinstance(f, (BForall, BExists)):
        kw = "forall" if isinstance(f, BForall) else "exists"
        return f"{kw} {f.var} < {print_term(f.bound)}. {to_text(f.body)}"
    prec = _PREC[type(f)]
    right_assoc = isinstance(f, (Iff, Implies))
    left, right = to_text(f.left), to_text(f.right)
    lp = _PREC.get(type(f.left), 9)
    rp = _PREC.get(type(f.right), 9)
    if _quantified(f.left) or (lp <= prec if right_assoc else lp < prec):
        left = f"({left})"
    if _quantified(f.right) or (rp < prec if right_assoc else rp <= prec):
        right = f"({right})"
    return f"{left} {_OPS[type(f)]} {right}"


def print_formula(f: Formula) -> str:
    return to_text(f)
