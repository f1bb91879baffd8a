"""Fuel-bounded evaluation in the standard model, with certificates, and audits.

Verdicts are three-valued. True and False are never wrong; Unknown is returned
whenever a search runs out of fuel or an atom cannot decide. Unbounded
quantifiers are decided exactly when the body carries a *guard*: an equation
``v = t`` or a registered atom that can list every value of ``v`` for which it
holds (proof indices of a finite theory, the diagonal of a code, ...).
Otherwise the search runs over ``0..witness_bound``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .coding import encode_formula
from .diagonal import FixedPointReport
from .formula import (
    Add, And, Atom, BExists, BForall, Eq, Exists, Forall, Formula, FormulaError, HierarchyClass,
    Iff, Implies, Mul, Not, Num, Or, PropVar, Sigma, Succ, Term, Var, classify, free_vars,
    prop_vars, substitute, substitute_all_free, term_vars,
)
from .grammar import to_text
from .registry import REGISTRY, Registry
from .theory import Theory, negation_code, rosser_pr_formula


class EvaluationError(ValueError):
    pass


@dataclass(frozen=True)
class Fuel:
    witness_bound: int = 10000
    depth_bound: int = 64

    def __post_init__(self):
        if self.witness_bound < 1 or self.depth_bound < 1:
            raise ValueError("fuel bounds must be positive")

    def to_dict(self):
        return {"witness_bound": self.witness_bound, "depth_bound": self.depth_bound}


@dataclass(frozen=True)
class TruthValue:
    """``value`` is True, False or None (unknown).

    ``certificate`` lists the witnesses (for a true existential prefix) or
    counterexamples (for a false universal prefix) chosen along the leading
    quantifiers, as ``(variable, value)`` pairs.
    """

    value: Optional[bool]
    certificate: tuple = ()
    reason: str = ""

    @property
    def verdict(self) -> str:
        return {True: "true", False: "false", None: "unknown"}[self.value]

    @property
    def decided(self) -> bool:
        return self.value is not None

    def to_dict(self) -> dict:
        d = {"verdict": self.verdict, "certificate": [[v, n] for v, n in self.certificate]}
        if self.reason:
            d["reason"] = self.reason
        return d

    def __str__(self):
        if self.value is None:
            return f"unknown ({self.reason})"
        cert = ", ".join(f"{v}={n}" for v, n in self.certificate)
        return self.verdict + (f" [{cert}]" if cert else "")


def _true(cert=()):
    return TruthValue(True, tuple(cert))


def _false(cert=()):
    return TruthValue(False, tuple(cert))


def _unknown(reason):
    return TruthValue(None, (), reason)


class _Open(Exception):
    pass


def _conjuncts(f):
    if isinstance(f, And):
        return _conjuncts(f.left) + _conjuncts(f.right)
    return [f]


def _guards_exists(body):
    return _conjuncts(body)


def _guards_forall(body):
    if isinstance(body, Implies):
        return _conjuncts(body.left)
    if isinstance(body, Not):
        return _conjuncts(body.body)
    if isinstance(body, Or):
        out, stack = [], [body]
        while stack:
            g = stack.pop()
            if isinstance(g, Or):
                stack += [g.right, g.left]
            elif isinstance(g, Not):
                out += _conjuncts(g.body)
        return out
    return []


class Evaluator:
    def __init__(self, fuel: Fuel = Fuel(), registry: Registry = REGISTRY):
        self.fuel = fuel
        self.registry = registry

    # -- terms
    def term(self, t: Term, env: dict) -> int:
        if isinstance(t, Num):
            return t.value
        if isinstance(t, Var):
            try:
                return env[t.name]
            except KeyError:
                raise _Open(t.name) from None
        if isinstance(t, Succ):
            return self.term(t.arg, env) + 1
        if isinstance(t, Add):
            return self.term(t.left, env) + self.term(t.right, env)
        if isinstance(t, Mul):
            return self.term(t.left, env) * self.term(t.right, env)
        raise TypeError(f"not a term: {t!r}")

    # -- guards
    def candidates(self, var: str, guards: list, env: dict) -> Optional[list]:
        v = Var(var)
        for g in guards:
            if isinstance(g, Eq):
                for a, b in ((g.left, g.right), (g.right, g.left)):
                    if a == v and var not in term_vars(b):
                        try:
                            return [self.term(b, env)]
                        except _Open:
                            pass
            elif isinstance(g, Atom):
                spec = self.registry.get(g.symbol)
                if spec.candidates is None:
                    continue
                for pos, arg in enumerate(g.args):
                    if arg != v:
                        continue
                    others = [a for i, a in enumerate(g.args) if i != pos]
                    if any(var in term_vars(a) for a in others):
                        continue
                    try:
                        args = [None if i == pos else self.term(a, env) for i, a in enumerate(g.args)]
                    except _Open:
                        continue
                    found = spec.candidates(pos, args)
                    if found is not None:
                        return sorted(set(found))
        return None

    # -- formulas
    def ev(self, f: Formula, env: dict, depth: int = 0, path: str = "") -> TruthValue:
        if isinstance(f, Eq):
            return TruthValue(self.term(f.left, env) == self.term(f.right, env))
        if isinstance(f, Atom):
            spec = self.registry.get(f.symbol)
            if spec.arity != len(f.args):
                raise EvaluationError(f"atom {f.symbol} takes {spec.arity} arguments")
            r = spec.holds(*(self.term(a, env) for a in f.args))
            if r is None:
                return _unknown(f"atom {f.symbol} undecided at {path or 'top'}")
            return TruthValue(bool(r))
        if isinstance(f, Not):
            r = self.ev(f.body, env, depth, path)
            if r.value is None:
                return r
            return TruthValue(not r.value, r.certificate)
        if isinstance(f, And):
            a = self.ev(f.left, env, depth, path)
            if a.value is False:
                return _false()
            b = self.ev(f.right, env, depth, path)
            if b.value is False:
                return _false()
            return _true() if a.value and b.value else (a if a.value is None else b)
        if isinstance(f, Or):
            a = self.ev(f.left, env, depth, path)
            if a.value is True:
                return _true()
            b = self.ev(f.right, env, depth, path)
            if b.value is True:
                return _true()
            return _false() if a.value is False and b.value is False else (a if a.value is None else b)
        if isinstance(f, Implies):
            a = self.ev(f.left, env, depth, path)
            if a.value is False:
                return _true()
            b = self.ev(f.right, env, depth, path)
            if b.value is True:
                return _true()
            return _false() if a.value and b.value is False else (a if a.value is None else b)
        if isinstance(f, Iff):
            a = self.ev(f.left, env, depth, path)
            if a.value is None:
                return a
            b = self.ev(f.right, env, depth, path)
            if b.value is None:
                return b
            return TruthValue(a.value == b.value)
        if isinstance(f, (Exists, Forall, BExists, BForall)):
            return self.quantifier(f, env, depth, path)
        if isinstance(f, PropVar):
            raise EvaluationError("propositional variables cannot be evaluated")
        raise TypeError(f"not a formula: {f!r}")

    def quantifier(self, f, env, depth, path):
        existential = isinstance(f, (Exists, BExists))
        kw = "exists" if existential else "forall"
        path = f"{path} > {kw} {f.var}" if path else f"{kw} {f.var}"
        if depth >= self.fuel.depth_bound:
            return _unknown(f"depth bound {self.fuel.depth_bound} reached at {path}")
        bound = None
        if isinstance(f, (BExists, BForall)):
            bound = self.term(f.bound, env)
        # a witness for an existential, a counterexample for a universal
        decisive = existential
        guards = _guards_exists(f.body) if existential else _guards_forall(f.body)
        cands = self.candidates(f.var, guards, env)
        if cands is None and f.var not in free_vars(f.body):
            cands = [0]
        exact = cands is not None
        if cands is None:
            if bound is not None and bound > self.fuel.witness_bound + 1:
                return _unknown(f"bound {bound} exceeds witness bound at {path}")
            limit = bound if bound is not None else self.fuel.witness_bound + 1
            cands = range(limit)
        unknown = None
        for c in cands:
            if bound is not None and c >= bound:
                break
            r = self.ev(f.body, {**env, f.var: c}, depth + 1, path)
            if r.value is decisive:
                return TruthValue(decisive, ((f.var, c),) + r.certificate)
            if r.value is None and unknown is None:
                unknown = r
        if unknown is not None:
            return unknown
        if exact or bound is not None:
            return TruthValue(not decisive)
        what = "witness" if existential else "counterexample"
        return _unknown(f"no {what} for {f.var} in 0..{self.fuel.witness_bound} at {path}")


def evaluate(phi: Formula, fuel: Fuel = Fuel(), registry: Registry = REGISTRY) -> TruthValue:
    """Truth value of the sentence ``phi`` in the standard model."""
    if prop_vars(phi):
        raise EvaluationError("propositional variables cannot be evaluated")
    fv = free_vars(phi)
    if fv:
        raise EvaluationError(f"not a sentence; free variables {sorted(fv)}")
    return Evaluator(fuel, registry).ev(phi, {})


def replay_certificate(phi: Formula, tv: TruthValue, fuel: Fuel = Fuel(), registry: Registry = REGISTRY) -> bool:
    """Instantiate the certificate along phi's leading quantifiers and re-evaluate the rest."""
    if tv.value is None:
        return False
    want = tv.value
    cert = list(tv.certificate)
    f = phi
    ev = Evaluator(fuel, registry)
    while True:
        if isinstance(f, Not):
            f, want = f.body, not want
            continue
        takes = (isinstance(f, (Exists, BExists)) and want) or (isinstance(f, (Forall, BForall)) and not want)
        if cert and takes:
            var, val = cert.pop(0)
            if var != f.var:
                return False
            if isinstance(f, (BExists, BForall)) and not val < ev.term(f.bound, {}):
                return False
            f = substitute(f.body, var, Num(val))
            continue
        break
    if cert:
        return False
    return evaluate(f, fuel, registry).value == want


def eval_sigma1(phi: Formula, bound: int, registry: Registry = REGISTRY) -> TruthValue:
    c = classify(phi)
    if not c <= Sigma(1):
        raise FormulaError(f"expected a Sigma1 sentence, got {c}")
    return evaluate(phi, Fuel(witness_bound=bound), registry)


# ---------------------------------------------------------------------------
# fixed points


@dataclass(frozen=True)
class FixedPointCheck:
    identity: bool
    theta: TruthValue
    psi_at_theta: TruthValue

    @property
    def non_contradictory(self) -> bool:
        vals = {self.theta.value, self.psi_at_theta.value}
        return vals != {True, False}

    @property
    def agree(self) -> Optional[bool]:
        if self.theta.decided and self.psi_at_theta.decided:
            return self.theta.value == self.psi_at_theta.value
        return None

    @property
    def passed(self) -> bool:
        return self.identity and self.non_contradictory and self.agree is not False

    def to_dict(self):
        return {
            "identity": self.identity,
            "theta": self.theta.to_dict(),
            "psi_at_theta": self.psi_at_theta.to_dict(),
            "non_contradictory": self.non_contradictory,
            "agree": self.agree,
        }


def check_fixed_point(report: FixedPointReport, psi: Formula = None, fuel: Fuel = Fuel(),
                      registry: Registry = REGISTRY) -> FixedPointCheck:
    psi = report.psi if psi is None else psi
    identity = report.diag_of_alpha == report.theta_code == encode_formula(report.theta)
    theta_v = evaluate(report.theta, fuel, registry)
    psi_v = evaluate(substitute_all_free(psi, Num(report.theta_code)), fuel, registry)
    return FixedPointCheck(identity, theta_v, psi_v)


def sigma1_goedelian_flag(report: FixedPointReport, fuel: Fuel = Fuel(), registry: Registry = REGISTRY) -> bool:
    """Raised when a Sigma1 fixed point of a negated provability predicate evaluates true.

    For consistent extensions of Q this cannot happen; a True here means a
    true Sigma1 Goedelian (or Rosserian) sentence was found.
    """
    if not classify(report.theta) <= Sigma(1):
        return False
    return evaluate(report.theta, fuel, registry).value is True


# ---------------------------------------------------------------------------
# audits


@dataclass
class SoundnessReport:
    theory: str
    gamma: HierarchyClass
    proof_bound: int
    fuel: Fuel
    verdicts: list = field(default_factory=list)  # (index, sentence, TruthValue)

    @property
    def violations(self) -> list:
        return [(i, f, tv) for i, f, tv in self.verdicts if tv.value is False]

    @property
    def unknowns(self) -> list:
        return [(i, f, tv) for i, f, tv in self.verdicts if tv.value is None]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self):
        def row(i, f, tv):
            return {"index": i, "sentence": to_text(f), **tv.to_dict()}

        return {
            "theory": self.theory,
            "class": str(self.gamma),
            "proof_bound": self.proof_bound,
            "fuel": self.fuel.to_dict(),
            "verdicts": [row(*v) for v in self.verdicts],
            "violations": [v[0] for v in self.violations],
            "unknowns": [v[0] for v in self.unknowns],
            "passed": self.passed,
        }


def soundness_audit(T: Theory, gamma: HierarchyClass, proof_bound: int, fuel: Fuel = Fuel(),
                    registry: Registry = REGISTRY) -> SoundnessReport:
    """Evaluate every theorem with proof index <= proof_bound whose class is within gamma."""
    report = SoundnessReport(T.name, gamma, proof_bound, fuel)
    for y, f in T.theorems_upto(proof_bound):
        if classify(f) <= gamma:
            report.verdicts.append((y, f, evaluate(f, fuel, registry)))
    return report


@dataclass(frozen=True)
class ProofFound:
    index: int


@dataclass(frozen=True)
class RefutationFound:
    index: int


@dataclass(frozen=True)
class NeitherWithinBound:
    exact: bool


def _least_index(T: Theory, x: int, proof_bound: int) -> Optional[int]:
    idx = T.proof_indices(x)
    if idx is not None:
        below = [i for i in idx if i <= proof_bound]
        return below[0] if below else None
    for y in range(proof_bound + 1):
        if T.prf(y, x):
            return y
    return None


def independence_probe(T: Theory, phi: Formula, proof_bound: int):
    """Least proof or refutation of phi with index <= proof_bound, whichever comes first."""
    x = encode_formula(phi)
    nx = negation_code(x)
    m = _least_index(T, x, proof_bound)
    n = _least_index(T, nx, proof_bound)
    if m is not None and (n is None or m < n):
        return ProofFound(m)
    if n is not None:
        return RefutationFound(n)
    return NeitherWithinBound(T.proves(x) is False and T.proves(nx) is False)


def probe_to_dict(result) -> dict:
    if isinstance(result, ProofFound):
        return {"verdict": "proof", "index": result.index}
    if isinstance(result, RefutationFound):
        return {"verdict": "refutation", "index": result.index}
    return {"verdict": "neither", "exact": result.exact}


@dataclass(frozen=True)
class RosserCaseReport:
    m: Optional[int]
    n: Optional[int]
    case: str  # 'I' | 'II' | 'OnlyOne' | 'NoProofs'
    predicted: bool
    rpr_phi: TruthValue

    @property
    def matches(self) -> bool:
        return self.rpr_phi.value is self.predicted

    def to_dict(self):
        return {
            "m": self.m,
            "n": self.n,
            "case": self.case,
            "predicted": self.predicted,
            "rpr_phi": self.rpr_phi.to_dict(),
            "matches": self.matches,
        }


def rosser_case_analysis(T: Theory, phi: Formula, proof_bound: int, fuel: Fuel = Fuel(),
                         registry: Registry = REGISTRY) -> RosserCaseReport:
    """Least proof indices m of phi and n of ~phi, and R.Pr_T(#phi) against the m <= n split."""
    x = encode_formula(phi)
    m = _least_index(T, x, proof_bound)
    n = _least_index(T, negation_code(x), proof_bound)
    if m is not None and n is not None:
        case, predicted = ("I", True) if m <= n else ("II", False)
    elif m is None and n is None:
        case, predicted = "NoProofs", False
    else:
        case, predicted = "OnlyOne", m is not None
    rpr = substitute(rosser_pr_formula(T, registry), "x", Num(x))
    return RosserCaseReport(m, n, case, predicted, evaluate(rpr, fuel, registry))
