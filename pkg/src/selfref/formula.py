"""Terms and formulas of first-order arithmetic over {0, S, +, *, =}.

Everything here is an immutable value. Numerals are stored compactly as
``Num(k)``; ``Succ`` applied to a numeral folds into the next numeral so that
``Succ(Succ(Zero)) == numeral(2)`` holds structurally.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
KEYWORDS = frozenset({"forall", "exists", "S"})


class FormulaError(ValueError):
    pass


# ---------------------------------------------------------------------------
# hierarchy classes


@dataclass(frozen=True, order=False)
class HierarchyClass:
    """Delta0, Sigma(n) or Pi(n) with n >= 1."""

    kind: str  # 'delta0' | 'sigma' | 'pi'
    n: int = 0

    def __post_init__(self):
        if self.kind == "delta0":
            if self.n != 0:
                raise FormulaError("Delta0 carries no level")
        elif self.kind in ("sigma", "pi"):
            if self.n < 1:
                raise FormulaError(f"{self.kind} level must be >= 1, got {self.n}")
        else:
            raise FormulaError(f"unknown hierarchy kind {self.kind!r}")

    def __le__(self, other: HierarchyClass) -> bool:
        if self.kind == "delta0":
            return True
        if other.kind == "delta0":
            return False
        if self.kind == other.kind:
            return self.n <= other.n
        return self.n < other.n

    def __lt__(self, other: HierarchyClass) -> bool:
        return self <= other and self != other

    def dual(self) -> HierarchyClass:
        if self.kind == "delta0":
            return self
        return HierarchyClass("pi" if self.kind == "sigma" else "sigma", self.n)

    def __str__(self) -> str:
        if self.kind == "delta0":
            return "delta0"
        return f"{self.kind}{self.n}"

    @classmethod
    def parse(cls, text: str) -> HierarchyClass:
        m = re.fullmatch(r"(delta0|sigma|pi)(\d*)", text.strip().lower())
        if not m or (m.group(1) == "delta0") == bool(m.group(2)):
            raise FormulaError(f"bad hierarchy class {text!r}")
        return cls(m.group(1), int(m.group(2) or 0))


Delta0 = HierarchyClass("delta0")


def Sigma(n: int) -> HierarchyClass:
    return HierarchyClass("sigma", n)


def Pi(n: int) -> HierarchyClass:
    return HierarchyClass("pi", n)


def join(a: HierarchyClass, b: HierarchyClass) -> HierarchyClass:
    """Least upper bound; incomparable Sigma(n)/Pi(n) follow the left operand.

    Prenexing ``A op B`` left to right puts A's quantifier block outermost,
    hence Sigma(n) with Pi(n) is Sigma(n+1) and Pi(n) with Sigma(n) is Pi(n+1).
    """
    if a <= b:
        return b
    if b <= a:
        return a
    return HierarchyClass(a.kind, a.n + 1)


# ---------------------------------------------------------------------------
# terms


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Num(Term):
    value: int

    def __post_init__(self):
        if not isinstance(self.value, int) or self.value < 0:
            raise FormulaError(f"numeral must be a natural number, got {self.value!r}")


@dataclass(frozen=True)
class Var(Term):
    name: str

    def __post_init__(self):
        if not IDENT_RE.match(self.name) or self.name in KEYWORDS:
            raise FormulaError(f"bad variable name {self.name!r}")


@dataclass(frozen=True)
class Succ(Term):
    arg: Term

    def __new__(cls, arg):
        if isinstance(arg, Num):
            return Num(arg.value + 1)
        return super().__new__(cls)


@dataclass(frozen=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term


Zero = Num(0)


def numeral(n: int) -> Term:
    return Num(n)


# ---------------------------------------------------------------------------
# formulas


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class BForall(Formula):
    var: str
    bound: Term
    body: Formula

    def __post_init__(self):
        if self.var in term_vars(self.bound):
            raise FormulaError(f"bound term mentions its own variable {self.var}")


@dataclass(frozen=True)
class BExists(Formula):
    var: str
    bound: Term
    body: Formula

    def __post_init__(self):
        if self.var in term_vars(self.bound):
            raise FormulaError(f"bound term mentions its own variable {self.var}")


@dataclass(frozen=True)
class Atom(Formula):
    """A defined atom; its meaning lives in a semantics registry."""

    symbol: str
    args: tuple
    declared_class: HierarchyClass = Delta0

    def __post_init__(self):
        if not IDENT_RE.match(self.symbol) or self.symbol in KEYWORDS:
            raise FormulaError(f"bad atom symbol {self.symbol!r}")
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class PropVar(Formula):
    name: str


BINARY = (And, Or, Implies, Iff)
QUANTIFIERS = (Forall, Exists)
BOUNDED = (BForall, BExists)

TermOrFormula = Union[Term, Formula]


# ---------------------------------------------------------------------------
# variables and substitution


def term_vars(t: Term) -> frozenset:
    if isinstance(t, Var):
        return frozenset({t.name})
    if isinstance(t, Num):
        return frozenset()
    if isinstance(t, Succ):
        return term_vars(t.arg)
    return term_vars(t.left) | term_vars(t.right)


def free_vars(f: Formula) -> frozenset:
    if isinstance(f, Eq):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, BINARY):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, QUANTIFIERS):
        return free_vars(f.body) - {f.var}
    if isinstance(f, BOUNDED):
        return term_vars(f.bound) | (free_vars(f.body) - {f.var})
    if isinstance(f, Atom):
        out = frozenset()
        for a in f.args:
            out |= term_vars(a)
        return out
    if isinstance(f, PropVar):
        return frozenset()
    raise TypeError(f"not a formula: {f!r}")


def all_vars(f: Formula) -> frozenset:
    """Free and bound variable names."""
    if isinstance(f, (QUANTIFIERS, BOUNDED)):
        extra = term_vars(f.bound) if isinstance(f, BOUNDED) else frozenset()
        return all_vars(f.body) | extra | {f.var}
    if isinstance(f, Not):
        return all_vars(f.body)
    if isinstance(f, BINARY):
        return all_vars(f.left) | all_vars(f.right)
    return free_vars(f)


def prop_vars(f: Formula) -> frozenset:
    if isinstance(f, PropVar):
        return frozenset({f.name})
    if isinstance(f, Not):
        return prop_vars(f.body)
    if isinstance(f, BINARY):
        return prop_vars(f.left) | prop_vars(f.right)
    if isinstance(f, (QUANTIFIERS, BOUNDED)):
        return prop_vars(f.body)
    return frozenset()


def is_sentence(f: Formula) -> bool:
    return not free_vars(f) and not prop_vars(f)


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    avoid = set(avoid)
    if base not in avoid:
        return base
    stem = base.rstrip("0123456789_") or "v"
    for k in itertools.count(1):
        cand = f"{stem}_{k}"
        if cand not in avoid:
            return cand


def subst_term(t: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Num):
        return t
    if isinstance(t, Succ):
        return Succ(subst_term(t.arg, mapping))
    return type(t)(subst_term(t.left, mapping), subst_term(t.right, mapping))


def _subst(f: Formula, mapping: dict) -> Formula:
    if not mapping:
        return f
    if isinstance(f, Eq):
        return Eq(subst_term(f.left, mapping), subst_term(f.right, mapping))
    if isinstance(f, Atom):
        return Atom(f.symbol, tuple(subst_term(a, mapping) for a in f.args), f.declared_class)
    if isinstance(f, PropVar):
        return f
    if isinstance(f, Not):
        return Not(_subst(f.body, mapping))
    if isinstance(f, BINARY):
        return type(f)(_subst(f.left, mapping), _subst(f.right, mapping))
    if isinstance(f, (QUANTIFIERS, BOUNDED)):
        bound = subst_term(f.bound, mapping) if isinstance(f, BOUNDED) else None
        inner = {k: v for k, v in mapping.items() if k != f.var}
        body_free = free_vars(f.body)
        inner = {k: v for k, v in inner.items() if k in body_free}
        var, body = f.var, f.body
        incoming = set()
        for t in inner.values():
            incoming |= term_vars(t)
        if var in incoming:
            # capture: rename the bound variable first
            avoid = incoming | all_vars(f.body) | set(inner)
            new = fresh_name(var, avoid)
            body = _subst(body, {var: Var(new)})
            var = new
        body = _subst(body, inner)
        if isinstance(f, BOUNDED):
            return type(f)(var, bound, body)
        return type(f)(var, body)
    raise TypeError(f"not a formula: {f!r}")


def substitute(f: Formula, v: str, t: Term) -> Formula:
    """Replace free occurrences of ``v`` by ``t``, renaming bound variables to avoid capture."""
    return _subst(f, {v: t})


def substitute_all_free(f: Formula, t: Term) -> Formula:
    """Simultaneously replace every free variable of ``f`` by the closed term ``t``."""
    if term_vars(t):
        raise FormulaError("substitute_all_free needs a closed term")
    return _subst(f, {v: t for v in free_vars(f)})


def substitute_props(f: Formula, mapping: Mapping[str, Formula]) -> Formula:
    if isinstance(f, PropVar):
        if f.name not in mapping:
            raise FormulaError(f"no formula for propositional variable {f.name}")
        return mapping[f.name]
    if isinstance(f, Not):
        return Not(substitute_props(f.body, mapping))
    if isinstance(f, BINARY):
        return type(f)(substitute_props(f.left, mapping), substitute_props(f.right, mapping))
    if prop_vars(f):
        raise FormulaError("propositional variables under quantifiers are not templates")
    return f


# ---------------------------------------------------------------------------
# classification


def classify(f: Formula) -> HierarchyClass:
    if isinstance(f, Eq):
        return Delta0
    if isinstance(f, Atom):
        return f.declared_class
    if isinstance(f, PropVar):
        raise FormulaError("propositional templates are not classifiable")
    if isinstance(f, Not):
        return classify(f.body).dual()
    if isinstance(f, (And, Or)):
        return join(classify(f.left), classify(f.right))
    if isinstance(f, Implies):
        return join(classify(f.left).dual(), classify(f.right))
    if isinstance(f, Iff):
        a, b = classify(f.left), classify(f.right)
        return join(join(a.dual(), b), join(b.dual(), a))
    if isinstance(f, BOUNDED):
        return classify(f.body)
    if isinstance(f, Exists):
        c = classify(f.body)
        if c.kind == "delta0":
            return Sigma(1)
        return c if c.kind == "sigma" else Sigma(c.n + 1)
    if isinstance(f, Forall):
        c = classify(f.body)
        if c.kind == "delta0":
            return Pi(1)
        return c if c.kind == "pi" else Pi(c.n + 1)
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# propositional templates


def template_vars(b: Formula) -> list:
    """Propositional variables of a template, p1 < p2 < ... ordering by numeric suffix."""

    def key(name):
        m = re.fullmatch(r"(.*?)(\d+)", name)
        return (m.group(1), int(m.group(2))) if m else (name, -1)

    return sorted(prop_vars(b), key=key)


def check_template(b: Formula) -> None:
    if isinstance(b, PropVar):
        return
    if isinstance(b, Not):
        return check_template(b.body)
    if isinstance(b, BINARY):
        check_template(b.left)
        check_template(b.right)
        return
    raise FormulaError(f"templates use only propositional variables and connectives: {b!r}")


def eval_template(b: Formula, assignment: Mapping[str, bool]) -> bool:
    if isinstance(b, PropVar):
        try:
            return bool(assignment[b.name])
        except KeyError:
            raise FormulaError(f"assignment misses {b.name}") from None
    if isinstance(b, Not):
        return not eval_template(b.body, assignment)
    if isinstance(b, And):
        return eval_template(b.left, assignment) & eval_template(b.right, assignment)
    if isinstance(b, Or):
        return eval_template(b.left, assignment) | eval_template(b.right, assignment)
    if isinstance(b, Implies):
        return (not eval_template(b.left, assignment)) | eval_template(b.right, assignment)
    if isinstance(b, Iff):
        return eval_template(b.left, assignment) == eval_template(b.right, assignment)
    raise FormulaError(f"not a propositional template: {b!r}")
