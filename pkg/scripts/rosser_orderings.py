"""Tabulate R.Pr(#phi) over every ordering of short theorem lists containing phi and ~phi."""
import argparse
import itertools
from collections import Counter

from selfref.formula import Not
from selfref.grammar import parse
from selfref.registry import Registry
from selfref.semantics import rosser_case_analysis
from selfref.theory import FiniteTheory


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--phi", default="0 = S(0)")
    ap.add_argument("--max-len", type=int, default=5)
    args = ap.parse_args()

    phi = parse(args.phi)
    alphabet = [phi, Not(phi), parse("0 = 0")]
    reg = Registry()
    table = Counter()
    mismatches = 0
    k = 0
    for length in range(1, args.max_len + 1):
        for seq in itertools.product(range(len(alphabet)), repeat=length):
            T = FiniteTheory(f"ord{k}", [alphabet[i] for i in seq])
            k += 1
            r = rosser_case_analysis(T, phi, length, registry=reg)
            table[(length, r.case, r.rpr_phi.verdict)] += 1
            mismatches += not r.matches
    print(f"{'len':>3} {'case':<9} {'R.Pr':<7} count")
    for (length, case, verdict), n in sorted(table.items()):
        print(f"{length:>3} {case:<9} {verdict:<7} {n}")
    print(f"theories: {k}, prediction mismatches: {mismatches}")


if __name__ == "__main__":
    main()
