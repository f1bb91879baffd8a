"""Diagonal-lemma constructors and the named self-referential sentences."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .coding import context_transform, diag, encode_formula, InvalidCode
from .formula import (
    Atom, Exists, Forall, Formula, FormulaError, HierarchyClass, Implies, And, Not, Num, Pi,
    Sigma, Var, all_vars, classify, eval_template, fresh_name, free_vars, check_template,
    substitute, substitute_all_free, substitute_props, template_vars,
)
from .grammar import parse_template, to_text
from .registry import REGISTRY, AtomSpec, Registry
from .theory import DELTA, Theory, delta_atom, pr_formula, rosser_pr_formula


class ClassError(FormulaError):
    """The formula is above the requested hierarchy class."""


@dataclass(frozen=True)
class FixedPointReport:
    theta: Formula
    alpha: Formula
    alpha_code: int
    diag_of_alpha: int
    theta_code: int
    declared_class: HierarchyClass
    psi: Formula = None
    mode: str = "pi"

    @property
    def identity_holds(self) -> bool:
        return self.diag_of_alpha == self.theta_code

    def psi_at_theta(self) -> Formula:
        """Psi applied to the numeral of theta's own code."""
        return substitute_all_free(self.psi, Num(self.theta_code))

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "class": str(self.declared_class),
            "actual_class": str(classify(self.theta)),
            "psi": to_text(self.psi),
            "alpha": to_text(self.alpha),
            "alpha_code": self.alpha_code,
            "diag_of_alpha": self.diag_of_alpha,
            "theta_code": self.theta_code,
            "identity": self.identity_holds,
            "theta": to_text(self.theta),
        }


def _free_var(psi: Formula) -> str:
    fv = free_vars(psi)
    if len(fv) != 1:
        raise FormulaError(f"expected exactly one free variable, found {sorted(fv) or 'none'}")
    return next(iter(fv))


def _construct(psi, n, mode, registry):
    v = _free_var(psi)
    target = Pi(n) if mode == "pi" else Sigma(n)
    if not classify(psi) <= target:
        raise ClassError(f"{to_text(psi)} is {classify(psi)}, not within {target}")
    delta_atom(registry)
    y = fresh_name("y", all_vars(psi) | {"x"})
    guard = Atom(DELTA, (Var("x"), Var(y)), Sigma(1))
    psi_y = substitute(psi, v, Var(y))
    if mode == "pi":
        alpha = Forall(y, Implies(guard, psi_y))
    else:
        alpha = Exists(y, And(guard, psi_y))
    a = encode_formula(alpha)
    theta = substitute_all_free(alpha, Num(a))
    return FixedPointReport(theta, alpha, a, diag(a), encode_formula(theta), target, psi, mode)


def fixed_point_pi(psi: Formula, n: int = 1, registry: Registry = REGISTRY) -> FixedPointReport:
    """theta = alpha(#alpha) for alpha(x) = forall y. delta(x, y) -> psi(y)."""
    return _construct(psi, n, "pi", registry)


def fixed_point_sigma(psi: Formula, n: int = 1, registry: Registry = REGISTRY) -> FixedPointReport:
    """theta = eta(#eta) for eta(x) = exists y. delta(x, y) & psi(y)."""
    return _construct(psi, n, "sigma", registry)


def fixed_point(psi: Formula, registry: Registry = REGISTRY) -> FixedPointReport:
    """Pick the construction matching psi's class (Delta0 goes through the Pi1 shape)."""
    c = classify(psi)
    if c.kind == "sigma":
        return fixed_point_sigma(psi, c.n, registry)
    return fixed_point_pi(psi, max(c.n, 1), registry)


def goedel_sentence(T: Theory, registry: Registry = REGISTRY) -> FixedPointReport:
    return fixed_point_pi(Not(pr_formula(T, registry)), 1, registry)


def rosser_sentence(T: Theory, registry: Registry = REGISTRY) -> FixedPointReport:
    return fixed_point_pi(Not(rosser_pr_formula(T, registry)), 1, registry)


def henkin_sentence(T: Theory, rosser: bool = False, registry: Registry = REGISTRY) -> FixedPointReport:
    pr = rosser_pr_formula(T, registry) if rosser else pr_formula(T, registry)
    return fixed_point_sigma(pr, 1, registry)


# ---------------------------------------------------------------------------
# pseudo-Goedelian sentences

PSEUDO_P = ("~p1 & ~p2", ("p", "~p"))
PSEUDO_R = ("p1 -> ~p2", ("p", "~p"))


def prctx_atom(T: Theory, context: Formula, registry: Registry = REGISTRY) -> str:
    """Register ``prctx_<T>_<i>(x)``: T proves context(formula coded by x).

    ``i`` counts the distinct contexts registered for T, in first-seen order.
    """
    check_template(context)
    key = ("prctx", T, context)

    def holds(x):
        try:
            c = context_transform(context, x)
        except InvalidCode:
            return False
        return T.proves(c)

    i = 0
    while True:
        sym = f"prctx_{T.name}_{i}"
        if sym not in registry:
            registry.register(AtomSpec(sym, 1, Sigma(1), holds, None, key=key))
            return sym
        if registry.get(sym).key == key:
            return sym
        i += 1


def pseudo_psi(T: Theory, B: Formula, contexts: Sequence[Formula], registry: Registry = REGISTRY) -> Formula:
    check_template(B)
    names = template_vars(B)
    if len(names) != len(contexts):
        raise FormulaError(f"template has {len(names)} variables but {len(contexts)} contexts were given")
    atoms = {}
    for name, ctx in zip(names, contexts):
        sym = prctx_atom(T, ctx, registry)
        atoms[name] = Atom(sym, (Var("x"),), Sigma(1))
    return substitute_props(B, atoms)


def pseudo_goedelian(T: Theory, B, contexts, registry: Registry = REGISTRY) -> FixedPointReport:
    """Fixed point of B(Pr_T[#C_1(x)], ..., Pr_T[#C_n(x)]); B and contexts may be given as text."""
    if isinstance(B, str):
        B = parse_template(B)
    contexts = [parse_template(c) if isinstance(c, str) else c for c in contexts]
    return fixed_point(pseudo_psi(T, B, contexts, registry), registry)


@dataclass(frozen=True)
class Decided:
    """``positive``: U proves psi; otherwise U refutes it."""

    positive: bool


def pseudo_goedelian_decide(B) -> Decided:
    """With every Pr_U statement provable in U, psi collapses to B(T, ..., T)."""
    if isinstance(B, str):
        B = parse_template(B)
    check_template(B)
    return Decided(eval_template(B, {p: True for p in template_vars(B)}))
