"""Seeded random generators for terms, formulas and propositional templates.

Used by the acceptance run and the experiment scripts; the test suite has its
own hypothesis strategies.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .formula import (
    Add, And, BExists, BForall, Eq, Exists, Forall, Formula, Iff, Implies, Mul, Not, Num, Or,
    PropVar, Succ, Term, Var, free_vars, substitute,
)


@dataclass(frozen=True)
class GenConfig:
    max_depth: int = 4
    max_num: int = 4
    var_names: tuple = ("x", "y", "z", "u")
    unbounded: bool = True
    max_bound: int = 4


def random_term(rng: random.Random, cfg: GenConfig, scope, depth: int = 2) -> Term:
    leaves = ["num"] + (["var"] if scope else [])
    kinds = leaves if depth <= 0 else leaves + ["succ", "add", "mul"]
    k = rng.choice(kinds)
    if k == "num":
        return Num(rng.randint(0, cfg.max_num))
    if k == "var":
        return Var(rng.choice(sorted(scope)))
    if k == "succ":
        return Succ(random_term(rng, cfg, scope, depth - 1))
    cls = Add if k == "add" else Mul
    return cls(random_term(rng, cfg, scope, depth - 1), random_term(rng, cfg, scope, depth - 1))


def random_formula(rng: random.Random, cfg: GenConfig = GenConfig(), scope=frozenset(),
                   depth: int = None) -> Formula:
    """A formula whose free variables lie in ``scope``."""
    depth = cfg.max_depth if depth is None else depth
    if depth <= 0:
        return Eq(random_term(rng, cfg, scope), random_term(rng, cfg, scope))
    kinds = ["eq", "not", "and", "or", "implies", "iff", "bforall", "bexists"]
    if cfg.unbounded:
        kinds += ["forall", "exists"]
    k = rng.choice(kinds)
    sub = lambda s=scope: random_formula(rng, cfg, s, depth - 1)
    if k == "eq":
        return Eq(random_term(rng, cfg, scope), random_term(rng, cfg, scope))
    if k == "not":
        return Not(sub())
    if k in ("and", "or", "implies", "iff"):
        cls = {"and": And, "or": Or, "implies": Implies, "iff": Iff}[k]
        return cls(sub(), sub())
    v = rng.choice(cfg.var_names)
    body = sub(scope | {v})
    if k == "forall":
        return Forall(v, body)
    if k == "exists":
        return Exists(v, body)
    bound = Num(rng.randint(0, cfg.max_bound))
    return (BForall if k == "bforall" else BExists)(v, bound, body)


def random_sentence(rng: random.Random, cfg: GenConfig = GenConfig()) -> Formula:
    return random_formula(rng, cfg, frozenset())


def random_one_var(rng: random.Random, cfg: GenConfig = GenConfig(), var: str = "x") -> Formula:
    """A formula with exactly one free variable, ``var``."""
    f = random_formula(rng, cfg, frozenset({var}))
    for v in free_vars(f) - {var}:
        f = substitute(f, v, Num(rng.randint(0, cfg.max_num)))
    if var not in free_vars(f):
        f = And(f, Eq(Var(var), Var(var)))
    return f


def random_template(rng: random.Random, n_vars: int, depth: int = 3) -> Formula:
    """A propositional template over p1..p<n_vars> mentioning each of them."""
    names = [f"p{i}" for i in range(1, n_vars + 1)]

    def go(d):
        if d <= 0 or rng.random() < 0.25:
            return PropVar(rng.choice(names))
        k = rng.choice(["not", "and", "or", "implies", "iff"])
        if k == "not":
            return Not(go(d - 1))
        cls = {"and": And, "or": Or, "implies": Implies, "iff": Iff}[k]
        return cls(go(d - 1), go(d - 1))

    b = go(depth)
    for name in names:
        b = And(b, Or(PropVar(name), Not(PropVar(name))))
    return b
