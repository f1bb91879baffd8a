import pytest

from selfref.coding import encode_formula
from selfref.formula import Implies, Not, Pi, Sigma, classify
from selfref.grammar import parse
from selfref.registry import AtomSpec, Registry, RegistryError
from selfref.theory import (
    CalculusTheory, EnumeratedTheory, FiniteTheory, TheoryError, con_sentence, extend,
    negation_code, parse_theories, pr_formula, register_theory, rosser_pr_formula,
)
from selfref.coding import encode_sequence, cantor_pair

ZZ = parse("0 = 0")


def test_finite_theory_prf():
    T = FiniteTheory("thA", [ZZ, parse("S(0) = S(0)"), ZZ])
    c = encode_formula(ZZ)
    assert T.prf(0, c) and T.prf(2, c) and not T.prf(1, c) and not T.prf(3, c)
    assert T.proof_indices(c) == [0, 2]
    assert T.proves(c) is True and T.proves(encode_formula(Not(ZZ))) is False


def test_finite_theory_rejects_open_formulas():
    with pytest.raises(TheoryError):
        FiniteTheory("thB", [parse("x = 0")])


def test_consistency():
    assert FiniteTheory("thC", [ZZ]).is_consistent()
    assert not FiniteTheory("thD", [ZZ, Not(ZZ)]).is_consistent()
    assert not FiniteTheory("thE", [Not(ZZ)]).is_consistent()


def test_negation_code():
    f = parse("forall x. x = x")
    assert negation_code(encode_formula(f)) == encode_formula(Not(f))


def test_all_sentences_layout():
    A = EnumeratedTheory("thAll")
    assert A.sentence_at(520) == ZZ
    assert A.sentence_at(519) is None
    assert A.proof_indices(4616) == [4616]
    assert A.proof_indices(encode_formula(parse("x = 0"))) == []
    even = EnumeratedTheory("thEven", "even_codes")
    assert even.proof_indices(520) == [520] and even.proof_indices(4617) == []


def test_enumerated_extend_interleaves():
    A = EnumeratedTheory("thAll2", prepend=(ZZ,))
    B = extend(A, Not(ZZ), name="thAll2b")
    assert A.appended == ()
    assert B.sentence_at(0) == ZZ
    assert B.sentence_at(2) == Not(ZZ)          # first appended, odd offset after the prepend
    assert B.sentence_at(1 + 2 * 520) == ZZ     # generator on even offsets
    assert B.proof_indices(encode_formula(Not(ZZ))) == [2, 1 + 2 * 4616]


def test_extend_finite_is_pure_and_named_by_content():
    T = FiniteTheory("thF", [ZZ])
    U = extend(T, Not(ZZ))
    assert T.theorems == (ZZ,)
    assert U.theorems == (ZZ, Not(ZZ))
    assert U.name == extend(T, Not(ZZ)).name != extend(T, ZZ).name


def test_calculus_theory():
    p, q = parse("0 = 0"), parse("S(0) = 0")
    T = CalculusTheory("thMP", (p, Implies(p, q)))
    assert T.proves(encode_formula(q)) and not T.proves(encode_formula(Not(q)))
    # [ax0, ax1, mp(0, 1)]
    y = encode_sequence([0, 2, 2 * cantor_pair(0, 1) + 1])
    assert T.derivation(y) == [p, Implies(p, q), q]
    assert T.prf(y, encode_formula(q))
    assert T.sentence_at(encode_sequence([2 * cantor_pair(0, 0) + 1])) is None
    found = [y for y in range(2000) if T.prf(y, encode_formula(q))]
    assert found and found[0] <= y


def test_builders_and_classes():
    T = FiniteTheory("thG", [ZZ])
    assert classify(pr_formula(T)) == Sigma(1)
    assert classify(rosser_pr_formula(T)) == Sigma(1)
    assert classify(con_sentence(T)) == Pi(1)


def test_registry_collisions():
    reg = Registry()
    register_theory(FiniteTheory("thH", [ZZ]), reg)
    register_theory(FiniteTheory("thH", [ZZ]), reg)  # same content: no-op
    with pytest.raises(RegistryError):
        register_theory(FiniteTheory("thH", []), reg)
    with pytest.raises(RegistryError):
        reg.get("nope")
    spec = AtomSpec("thing", 1, Sigma(1), lambda x: True)
    reg.register(spec)
    with pytest.raises(RegistryError):
        reg.register(AtomSpec("thing", 1, Sigma(1), lambda x: False))


def test_theory_files():
    text = """
    # a comment
    theory thBase finite
    0 = 0
    theory thOver finite
    @not_con thBase
    S(0) = S(0)   # trailing comment
    """
    base, over = parse_theories(text)
    assert base.theorems == (ZZ,)
    assert over.theorems[0] == Not(con_sentence(base))
    assert [t.name for t in parse_theories("theory thEnum enumerated even_codes")] == ["thEnum"]


@pytest.mark.parametrize("text", [
    "0 = 0",
    "theory bad-name finite",
    "theory thX finite\nx = 0",
    "theory thY finite\n0 = ",
    "theory thZ enumerated nowhere",
    "theory thW finite\n@con missing",
    "",
])
def test_theory_file_errors(text):
    with pytest.raises(TheoryError):
        parse_theories(text)
