"""Goedel numbering of formulas, the diagonal function, and context transforms.

A formula is serialised in prefix (Polish) notation as a bit string: short
prefix-free node tags, Elias-gamma coded naturals, 6-bit name characters. The
bit string is read as a bijective binary numeral, so every natural number is
the code of exactly one bit string, and the code of a formula is linear in its
size. A number is a *valid* code when its bit string parses as a formula.

Cantor pairing is used for proof sequences (see ``encode_sequence``), where
codes must be dense so that proofs can be enumerated by brute force.
"""
from __future__ import annotations

import functools
from math import isqrt

from .formula import (
    Add, And, Atom, BExists, BForall, Eq, Exists, Forall, Formula, HierarchyClass,
    Iff, Implies, Mul, Not, Num, Or, PropVar, Succ, Term, Var, FormulaError,
    check_template, substitute_all_free, substitute_props, template_vars, Delta0,
)

CODEC_VERSION = 1

TERM_TAGS = {"Num": "00", "Var": "01", "Succ": "100", "Add": "101", "Mul": "110"}
FORMULA_TAGS = {
    "Eq": "000", "Not": "001", "And": "010", "Or": "011", "Implies": "100", "Iff": "101",
    "Forall": "1100", "Exists": "1101", "BForall": "11100", "BExists": "11101", "Atom": "11110",
}
NAME_CHARS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_"
_CHAR_BITS = {ch: format(i, "06b") for i, ch in enumerate(NAME_CHARS)}

_TERM_CLS = {"Num": Num, "Var": Var, "Succ": Succ, "Add": Add, "Mul": Mul}
_FORMULA_CLS = {
    "Eq": Eq, "Not": Not, "And": And, "Or": Or, "Implies": Implies, "Iff": Iff,
    "Forall": Forall, "Exists": Exists, "BForall": BForall, "BExists": BExists, "Atom": Atom,
}
_TERM_BY_BITS = {v: k for k, v in TERM_TAGS.items()}
_FORMULA_BY_BITS = {v: k for k, v in FORMULA_TAGS.items()}


class InvalidCode(ValueError):
    pass


# ---------------------------------------------------------------------------
# bit strings <-> numbers


def bits_to_int(bits: str) -> int:
    """Bijective binary: the empty string is 0, ``b`` is ``int('1' + b, 2) - 1``."""
    return int("1" + bits, 2) - 1


def int_to_bits(c: int) -> str:
    if c < 0:
        raise InvalidCode(f"codes are natural numbers, got {c}")
    return bin(c + 1)[3:]


def _gamma(n: int) -> str:
    # Elias gamma of n >= 1
    b = bin(n)[2:]
    return "0" * (len(b) - 1) + b


def _natural(n: int) -> str:
    return _gamma(n + 1)


def _name(s: str) -> str:
    return _gamma(len(s)) + "".join(_CHAR_BITS[ch] for ch in s)


# ---------------------------------------------------------------------------
# serialisation


def _ser_term(t: Term, out: list) -> None:
    if isinstance(t, Num):
        out.append(TERM_TAGS["Num"] + _natural(t.value))
    elif isinstance(t, Var):
        out.append(TERM_TAGS["Var"] + _name(t.name))
    elif isinstance(t, Succ):
        out.append(TERM_TAGS["Succ"])
        _ser_term(t.arg, out)
    else:
        out.append(TERM_TAGS[type(t).__name__])
        _ser_term(t.left, out)
        _ser_term(t.right, out)


def _ser_class(c: HierarchyClass) -> str:
    if c.kind == "delta0":
        return "0"
    return ("10" if c.kind == "sigma" else "11") + _gamma(c.n)


def _ser(f: Formula, out: list) -> None:
    if isinstance(f, PropVar):
        raise FormulaError("propositional variables have no Goedel code")
    tag = FORMULA_TAGS.get(type(f).__name__)
    if tag is None:
        raise TypeError(f"not a formula: {f!r}")
    out.append(tag)
    if isinstance(f, Eq):
        _ser_term(f.left, out)
        _ser_term(f.right, out)
    elif isinstance(f, Not):
        _ser(f.body, out)
    elif isinstance(f, (And, Or, Implies, Iff)):
        _ser(f.left, out)
        _ser(f.right, out)
    elif isinstance(f, (Forall, Exists)):
        out.append(_name(f.var))
        _ser(f.body, out)
    elif isinstance(f, (BForall, BExists)):
        out.append(_name(f.var))
        _ser_term(f.bound, out)
        _ser(f.body, out)
    else:
        out.append(_name(f.symbol) + _ser_class(f.declared_class) + _natural(len(f.args)))
        for a in f.args:
            _ser_term(a, out)


def serialize(f: Formula) -> str:
    """The prefix bit string of ``f``."""
    out = []
    _ser(f, out)
    return "".join(out)


class _Reader:
    def __init__(self, bits: str):
        self.b = bits
        self.i = 0

    def read(self, k: int) -> str:
        if self.i + k > len(self.b):
            raise InvalidCode("bit string ends early")
        s = self.b[self.i:self.i + k]
        self.i += k
        return s

    def tag(self, table: dict) -> str:
        acc = ""
        while len(acc) < 5:
            acc += self.read(1)
            if acc in table:
                return table[acc]
        raise InvalidCode(f"no node has tag {acc}")

    def gamma(self) -> int:
        j = self.b.find("1", self.i)
        if j < 0:
            raise InvalidCode("unterminated gamma code")
        zeros = j - self.i
        self.i = j
        return int(self.read(zeros + 1), 2)

    def natural(self) -> int:
        return self.gamma() - 1

    def name(self) -> str:
        n = self.gamma()
        chars = []
        for _ in range(n):
            k = int(self.read(6), 2)
            if k >= len(NAME_CHARS):
                raise InvalidCode("bad name character")
            chars.append(NAME_CHARS[k])
        return "".join(chars)

    def term(self) -> Term:
        kind = self.tag(_TERM_BY_BITS)
        if kind == "Num":
            return Num(self.natural())
        if kind == "Var":
            return Var(self.name())
        if kind == "Succ":
            arg = self.term()
            if isinstance(arg, Num):
                raise InvalidCode("successor of a numeral is not canonical")
            return Succ(arg)
        return _TERM_CLS[kind](self.term(), self.term())

    def hclass(self) -> HierarchyClass:
        if self.read(1) == "0":
            return Delta0
        kind = "sigma" if self.read(1) == "0" else "pi"
        return HierarchyClass(kind, self.gamma())

    def formula(self) -> Formula:
        kind = self.tag(_FORMULA_BY_BITS)
        cls = _FORMULA_CLS[kind]
        if kind == "Eq":
            return Eq(self.term(), self.term())
        if kind == "Not":
            return Not(self.formula())
        if kind in ("And", "Or", "Implies", "Iff"):
            return cls(self.formula(), self.formula())
        if kind in ("Forall", "Exists"):
            var = self.name()
            Var(var)
            return cls(var, self.formula())
        if kind in ("BForall", "BExists"):
            var = self.name()
            Var(var)
            bound = self.term()
            return cls(var, bound, self.formula())
        sym = self.name()
        hc = self.hclass()
        arity = self.natural()
        return Atom(sym, tuple(self.term() for _ in range(arity)), hc)


def deserialize(bits: str) -> Formula:
    r = _Reader(bits)
    try:
        f = r.formula()
    except InvalidCode:
        raise
    except (FormulaError, ValueError) as exc:
        raise InvalidCode(str(exc)) from None
    if r.i != len(bits):
        raise InvalidCode("trailing bits after formula")
    return f


# ---------------------------------------------------------------------------
# public coding API


def encode_formula(f: Formula) -> int:
    return bits_to_int(serialize(f))


@functools.lru_cache(maxsize=4096)
def decode_formula(c: int) -> Formula:
    """Inverse of ``encode_formula``; raises ``InvalidCode`` outside its image.

    0 is the empty bit string and never a valid code.
    """
    if not isinstance(c, int) or c <= 0:
        raise InvalidCode(f"{c!r} is not a formula code")
    return deserialize(int_to_bits(c))


def is_valid_code(c: int) -> bool:
    try:
        decode_formula(c)
    except InvalidCode:
        return False
    return True


def is_sentence_code(c: int) -> bool:
    from .formula import is_sentence

    try:
        return is_sentence(decode_formula(c))
    except InvalidCode:
        return False


def goedel_numeral(f: Formula) -> Term:
    return Num(encode_formula(f))


@functools.lru_cache(maxsize=4096)
def diag(c: int) -> int:
    """Code of the formula coded by ``c`` with the numeral of ``c`` put for its free variables."""
    return encode_formula(substitute_all_free(decode_formula(c), Num(c)))


def context_transform(context: Formula, c: int) -> int:
    """Code of ``context`` with the formula coded by ``c`` plugged into its one propositional variable."""
    check_template(context)
    names = template_vars(context)
    if len(names) != 1:
        raise FormulaError(f"a context has exactly one propositional variable, got {names}")
    return encode_formula(substitute_props(context, {names[0]: decode_formula(c)}))


# ---------------------------------------------------------------------------
# Cantor pairing and sequences


def cantor_pair(x: int, y: int) -> int:
    return (x + y) * (x + y + 1) // 2 + y


def cantor_unpair(z: int) -> tuple:
    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def encode_sequence(items) -> int:
    """0 codes the empty list, ``1 + pair(head, code(tail))`` a non-empty one."""
    c = 0
    for x in reversed(list(items)):
        c = 1 + cantor_pair(x, c)
    return c


def decode_sequence(c: int) -> list:
    out = []
    while c:
        x, c = cantor_unpair(c - 1)
        out.append(x)
    return out


def codec_spec() -> str:
    lines = [
        f"selfref codec version {CODEC_VERSION}",
        "",
        "formula code = bijective binary value of its prefix bit string b:",
        "  code(b) = int('1' + b, 2) - 1; the empty string (code 0) is not a formula",
        "naturals n: Elias gamma of n + 1 (gamma(m) = (len(bin m) - 1) zeros, then bin m)",
        f"names: gamma(length), then 6 bits per character, index into {NAME_CHARS}",
        "classes: 0 = delta0, 10 gamma(n) = sigma n, 11 gamma(n) = pi n",
        "",
        "term tags:",
    ]
    for node, bits in TERM_TAGS.items():
        lines.append(f"  {bits:<6} {node}")
    lines.append("formula tags:")
    for node, bits in FORMULA_TAGS.items():
        lines.append(f"  {bits:<6} {node}")
    lines += [
        "layouts:",
        "  Num n | Var name | Succ t (t never a numeral) | Add t t | Mul t t",
        "  Eq t t | Not f | And/Or/Implies/Iff f f | Forall/Exists name f",
        "  BForall/BExists name t f | Atom symbol class arity t*arity",
        "",
        "Cantor pairing (proof sequences of calculus theories):",
        "  pair(x, y) = (x + y)(x + y + 1)/2 + y",
        "  seq([]) = 0,  seq([h] + t) = 1 + pair(h, seq(t))",
        "  derivation step: axiom i -> 2i,  modus ponens from lines j, k -> 2*pair(j, k) + 1",
    ]
    return "\n".join(lines) + "\n"
