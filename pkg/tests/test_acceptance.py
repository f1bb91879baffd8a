"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line.

Run under pytest (lines appear in the terminal summary) or directly:
``python3 tests/test_acceptance.py``.
"""
import itertools
import json
import random
import sys
import time
from pathlib import Path

import pytest

from selfref.coding import decode_formula, diag, encode_formula
from selfref.diagonal import (
    PSEUDO_P, PSEUDO_R, fixed_point_pi, fixed_point_sigma, goedel_sentence, pseudo_goedelian,
    pseudo_goedelian_decide, rosser_sentence,
)
from selfref.formula import (
    Delta0, Forall, Iff, Not, Num, Pi, Sigma, classify, substitute,
)
from selfref.generate import GenConfig, random_formula, random_one_var, random_sentence, random_template
from selfref.grammar import parse
from selfref.registry import Registry
from selfref.semantics import (
    Fuel, check_fixed_point, evaluate, rosser_case_analysis, soundness_audit,
)
from selfref.theory import FiniteTheory, extend, pr_formula, rosser_pr_formula

sys.path.insert(0, str(Path(__file__).parent))
import catalog  # noqa: E402
from oracles import naive_eval, ref_close, ref_encode, truth_table_at_true  # noqa: E402

GOLDEN = Path(__file__).parent / "fixtures" / "golden_codes.json"
RESULTS = {}


def _pr_at(T, phi, rosser=False):
    base = rosser_pr_formula(T) if rosser else pr_formula(T)
    return substitute(base, "x", Num(encode_formula(phi)))


# ---------------------------------------------------------------------------


def criterion_1():
    rng = random.Random(1)
    t0 = time.perf_counter()
    fails = 0
    for _ in range(200):
        psi = random_one_var(rng, GenConfig(max_depth=3))
        c = classify(psi)
        for ctor, target in ((fixed_point_pi, Pi), (fixed_point_sigma, Sigma)):
            n = next(k for k in itertools.count(1) if c <= target(k))
            r = ctor(psi, n)
            # oracle: close alpha independently, encode independently
            expected = ref_encode(ref_close(r.alpha, r.alpha_code))
            if not (diag(r.alpha_code) == r.theta_code == expected == ref_encode(r.theta)):
                fails += 1
    dt = time.perf_counter() - t0
    return fails == 0 and dt < 10, f"400 constructions, {fails} mismatches, {dt:.2f}s"


def criterion_2():
    rng = random.Random(2)
    fixtures = []
    for _ in range(30):
        psi = random_one_var(rng, GenConfig(max_depth=3, unbounded=False))
        fixtures += [fixed_point_pi(psi, 1), fixed_point_sigma(psi, 1)]
    for T in catalog.all_finite_theories():
        fixtures += [
            fixed_point_pi(Not(pr_formula(T)), 1),
            fixed_point_sigma(pr_formula(T), 1),
            fixed_point_pi(Not(rosser_pr_formula(T)), 1),
            fixed_point_sigma(rosser_pr_formula(T), 1),
        ]
    bad = decided = 0
    for r in fixtures:
        c = check_fixed_point(r)
        if c.agree is not None:
            decided += 1
        if not c.passed:
            bad += 1
    return bad == 0 and decided >= 50, f"{len(fixtures)} fixtures, {decided} fully decided, {bad} failures"


def criterion_3():
    reg = Registry()
    fillers = [parse("0 = 0"), parse("S(0) = S(0)")]
    cases = bad = 0
    for k, phi in enumerate([parse("0 = S(0)"), parse("0 = 0"), parse("forall x. x = 0")]):
        neg = Not(phi)
        alphabet = [phi, neg] + [f for f in fillers if f != phi]
        for length in range(2, 6):
            for seq in itertools.product(range(len(alphabet)), repeat=length):
                if 0 not in seq or 1 not in seq:
                    continue
                T = FiniteTheory(f"bf{k}_{cases}", [alphabet[i] for i in seq])
                m, n = seq.index(0), seq.index(1)
                r = rosser_case_analysis(T, phi, length, registry=reg)
                expected = m <= n
                if (r.m, r.n) != (m, n) or r.rpr_phi.value is not expected or r.case != ("I" if expected else "II"):
                    bad += 1
                cases += 1
    return bad == 0, f"{cases} orderings, {bad} mismatches"


def criterion_4():
    theories = catalog.consistent_theories()
    assert any(not T.theorems for T in theories)
    bad = [T.name for T in theories if evaluate(rosser_sentence(T).theta).value is not True]
    return len(theories) >= 20 and not bad, f"{len(theories)} consistent fixtures, failing: {bad or 'none'}"


def criterion_5():
    theories = catalog.consistent_theories()
    bad = [T.name for T in theories if evaluate(goedel_sentence(T).theta).value is not True]
    A = catalog.ALL_SENTENCES
    g_all = evaluate(goedel_sentence(A).theta).value
    rng = random.Random(5)
    found = 0
    iff_bad = 0
    while found < 10:
        body = random_formula(rng, GenConfig(max_depth=2, unbounded=False), frozenset({"x"}))
        phi = Forall("x", body)
        if classify(phi) != Pi(1) or evaluate(phi).value is not False:
            continue
        found += 1
        if evaluate(Iff(phi, Not(_pr_at(A, phi)))).value is not True:
            iff_bad += 1
    ok = not bad and g_all is False and iff_bad == 0
    return ok, f"consistent failing: {bad or 'none'}; all_sentences verdict {g_all}; false Pi1 regime {10 - iff_bad}/10"


def criterion_6():
    A = catalog.ALL_SENTENCES
    ok = True
    notes = []
    for label, (b, ctx) in (("P", PSEUDO_P), ("R", PSEUDO_R)):
        d = pseudo_goedelian_decide(b)
        v = evaluate(pseudo_goedelian(A, b, ctx).theta).value
        ok &= d.positive is False and v is False
        notes.append(f"{label}: decided {d.positive}, eval {v}")
    rng = random.Random(6)
    mism = 0
    for i in range(20):
        B = random_template(rng, rng.randint(1, 3))
        if pseudo_goedelian_decide(B).positive != truth_table_at_true(B):
            mism += 1
    ok &= mism == 0
    notes.append(f"random templates {20 - mism}/20")
    return ok, "; ".join(notes)


def criterion_7():
    theories = catalog.all_finite_theories()
    probes = {parse(t) for t in catalog.TRUE_SENTENCES + catalog.FALSE_SENTENCES}
    for T in theories:
        probes |= set(T.theorems)
    probes |= {Not(p) for p in list(probes)}
    checks = bad = 0
    for T in theories:
        consistent = T.is_consistent()
        for phi in probes:
            member = phi in T.theorems
            if member != (evaluate(_pr_at(T, phi)).value is True):
                bad += 1
            checks += 1
            if consistent and Not(phi) in T.theorems:
                checks += 1
                if evaluate(_pr_at(T, phi, rosser=True)).value is not False:
                    bad += 1
    return bad == 0, f"{checks} checks over {len(theories)} fixtures, {bad} failures"


def criterion_8():
    planted = [parse("0 = S(0)"), parse("forall x. x = 0")]
    undecided = parse("exists y. y * y = S(S(0))")
    classes = [Delta0, Sigma(1), Pi(1)]
    ok = True
    sound = catalog.sound_theories()
    clean_fail = [T.name for T in sound for g in classes if not soundness_audit(T, g, 50).passed]
    ok &= not clean_fail
    missed = 0
    for T in sound:
        for p in planted:
            U = extend(T, p)
            rep = soundness_audit(U, Pi(1), 50)
            if rep.passed or len(U.theorems) - 1 not in [i for i, _, _ in rep.violations]:
                missed += 1
    ok &= missed == 0
    U = extend(catalog.sound_theories()[0], undecided)
    rep = soundness_audit(U, Sigma(1), 50, Fuel(witness_bound=200))
    unknown_ok = rep.passed and len(rep.unknowns) == 1
    ok &= unknown_ok
    pool = [parse(t) for t in catalog.TRUE_SENTENCES + catalog.FALSE_SENTENCES]
    pool = [p for p in pool if evaluate(p).decided]
    lemma_bad = pairs = 0
    for T in sound:
        for g in classes:
            for phi in pool:
                pairs += 1
                if not (soundness_audit(extend(T, phi), g, 50).passed
                        or soundness_audit(extend(T, Not(phi)), g, 50).passed):
                    lemma_bad += 1
    ok &= lemma_bad == 0
    notes = [f"clean failing {clean_fail or 'none'}", f"planted missed {missed}/{2 * len(sound)}",
             f"unknown-not-violation {unknown_ok}", f"extension lemma {pairs - lemma_bad}/{pairs}"]
    return ok, "; ".join(notes)


def criterion_9():
    data = json.loads(GOLDEN.read_text())
    golden_bad = [fx["formula"] for fx in data["fixtures"]
                  if encode_formula(parse(fx["formula"])) != int(fx["code"])]
    rng = random.Random(9)
    trip_bad = 0
    for _ in range(1000):
        f = random_formula(rng, GenConfig(max_depth=rng.randint(0, 5), max_num=40), frozenset({"x", "w"}))
        if decode_formula(encode_formula(f)) != f:
            trip_bad += 1
    ok = len(data["fixtures"]) >= 5 and not golden_bad and trip_bad == 0
    return ok, f"golden mismatches {golden_bad or 'none'}; round-trip failures {trip_bad}/1000"


def criterion_10():
    rng = random.Random(10)
    cfg = GenConfig(max_depth=4, unbounded=False)
    disagree = undecided = 0
    for _ in range(500):
        phi = random_sentence(rng, cfg)
        tv = evaluate(phi)
        if tv.value is None:
            undecided += 1
        elif tv.value != naive_eval(phi):
            disagree += 1
    ladder = [Fuel(w) for w in (1, 2, 4, 8, 16)]
    flips = 0
    for _ in range(150):
        phi = random_sentence(rng, GenConfig(max_depth=3))
        seen = None
        for fuel in ladder:
            v = evaluate(phi, fuel).value
            if v is not None:
                if seen is not None and v != seen:
                    flips += 1
                    break
                seen = v
    ok = disagree == 0 and undecided == 0 and flips == 0
    return ok, f"500 bounded sentences: {disagree} disagreements, {undecided} undecided; fuel ladder flips {flips}/150"


CRITERIA = {
    1: ("self-reference identity", criterion_1),
    2: ("fixed-point semantic equivalence", criterion_2),
    3: ("Rosser case analysis brute force", criterion_3),
    4: ("Rosserian Pi1 truth", criterion_4),
    5: ("Goedelian regime split", criterion_5),
    6: ("pseudo-Goedelian collapse", criterion_6),
    7: ("convention contracts", criterion_7),
    8: ("soundness audit correctness", criterion_8),
    9: ("codec stability", criterion_9),
    10: ("evaluator oracle equivalence", criterion_10),
}


def run(n):
    title, fn = CRITERIA[n]
    ok, detail = fn()
    line = f"ACCEPTANCE {n:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    RESULTS[n] = line
    print(line)
    return ok


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_acceptance_criterion(n):
    assert run(n), RESULTS[n]


if __name__ == "__main__":
    sys.exit(0 if all([run(n) for n in sorted(CRITERIA)]) else 1)
