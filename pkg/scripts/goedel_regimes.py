"""Truth of canonical Goedel and Rosser sentences across theory regimes.

1. consistent finite theories: the Goedel sentence is true;
2. the all_sentences theory: it is false;
3. an unsound finite theory U with one true and one false Goedel sentence,
   where "sigma is a Goedel sentence of U" means U lists sigma <-> ~Pr_U(#sigma);
4. a consistent finite theory listing its own Rosser sentence: the sentence is
   false, because a finite theory is not closed under Sigma1 consequences.
"""
import argparse

from selfref.coding import encode_formula
from selfref.diagonal import goedel_sentence, rosser_sentence
from selfref.formula import Iff, Not, Num, substitute
from selfref.grammar import parse
from selfref.registry import Registry
from selfref.semantics import Fuel, evaluate
from selfref.theory import EnumeratedTheory, FiniteTheory, delta_atom, pr_formula, register_theory


def fresh_registry():
    reg = Registry()
    delta_atom(reg)
    return reg


def goedel_equivalence(T, sigma, reg):
    return Iff(sigma, Not(substitute(pr_formula(T, reg), "x", Num(encode_formula(sigma)))))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fuel", type=int, default=10000)
    fuel = Fuel(ap.parse_args().fuel)

    for T in (FiniteTheory("Tiny", [parse("0 = 0")]), FiniteTheory("Arith", [parse("forall x. x + 0 = x")])):
        print(f"[consistent] {T.name}: goedel {evaluate(goedel_sentence(T).theta, fuel)}")
    A = EnumeratedTheory("Everything")
    print(f"[all_sentences] goedel {evaluate(goedel_sentence(A).theta, fuel).verdict}")

    # the canonical sentence depends only on the theory's name, so build it first
    r0 = fresh_registry()
    gamma = goedel_sentence(FiniteTheory("Unsound", []), r0).theta
    false_one = parse("0 = S(0)")
    reg = fresh_registry()
    U = FiniteTheory("Unsound", [
        false_one,
        goedel_equivalence(FiniteTheory("Unsound", []), gamma, r0),
        goedel_equivalence(FiniteTheory("Unsound", []), false_one, r0),
    ])
    for label, sigma in (("canonical", gamma), ("0 = S(0)", false_one)):
        listed = goedel_equivalence(U, sigma, reg) in U.theorems
        eq = evaluate(goedel_equivalence(U, sigma, reg), fuel, reg).verdict
        print(f"[unsound] {label}: listed equivalence {listed}, equivalence in N {eq}, "
              f"sentence {evaluate(sigma, fuel, reg).verdict}")

    r1 = fresh_registry()
    rho = rosser_sentence(FiniteTheory("SelfAware", []), r1).theta
    reg = fresh_registry()
    S = FiniteTheory("SelfAware", [rho])
    register_theory(S, reg)
    print(f"[self-listing] consistent {S.is_consistent()}, rosser sentence {evaluate(rho, fuel, reg).verdict}")


if __name__ == "__main__":
    main()
