"""Theory backends with executable proof relations, and the Pr / R.Pr / Con builders.

Each theory is an immutable value with a stream of theorems indexed by proof
codes: ``prf(y, x)`` holds iff the theorem at index ``y`` has Goedel code
``x``. Three backends:

* ``FiniteTheory``: an explicit finite list. Not an extension of Q; it is the
  test-harness idealisation that makes universal claims about proof indices
  decidable.
* ``EnumeratedTheory``: a named built-in generator (``all_sentences``,
  ``even_codes``, ...) after an optional finite prepend block.
* ``CalculusTheory``: finitely many axioms closed under modus ponens; proof
  codes are Cantor-coded derivations.

No backend computes deductive closure on ``extend``.
"""
from __future__ import annotations

import functools
import hashlib
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterator, Optional

from .coding import (
    InvalidCode, bits_to_int, cantor_unpair, decode_formula, decode_sequence, diag,
    encode_formula, int_to_bits, is_sentence_code, serialize, FORMULA_TAGS,
)
from .formula import (
    IDENT_RE, And, Atom, BForall, Delta0, Eq, Exists, Formula, Implies, Not, Num, Sigma,
    Var, Zero, is_sentence, substitute,
)
from .grammar import ParseError, parse
from .registry import REGISTRY, AtomSpec, Registry


class TheoryError(ValueError):
    pass


def _check_name(name: str) -> None:
    if not IDENT_RE.match(name):
        raise TheoryError(f"theory names must be identifiers, got {name!r}")


def _check_sentences(items) -> tuple:
    items = tuple(items)
    for f in items:
        if not is_sentence(f):
            raise TheoryError(f"theorems must be sentences: {f!r}")
    return items


def negation_code(x: int) -> int:
    """Code of the negation of the formula coded by ``x`` (meaningful for valid ``x``)."""
    return bits_to_int(FORMULA_TAGS["Not"] + int_to_bits(x))


class Theory:
    name: str

    def sentence_at(self, y: int) -> Optional[Formula]:
        raise NotImplementedError

    def code_at(self, y: int) -> Optional[int]:
        f = self.sentence_at(y)
        return None if f is None else encode_formula(f)

    def prf(self, y: int, x: int) -> bool:
        return self.code_at(y) == x

    def proof_indices(self, x: int) -> Optional[list]:
        """All proof indices of ``x`` in ascending order, or None when not finitely known."""
        return None

    def proves(self, x: int) -> Optional[bool]:
        idx = self.proof_indices(x)
        return None if idx is None else bool(idx)

    def theorems_upto(self, bound: int) -> Iterator[tuple]:
        for y in range(bound + 1):
            f = self.sentence_at(y)
            if f is not None:
                yield y, f


@dataclass(frozen=True)
class FiniteTheory(Theory):
    name: str
    theorems: tuple = ()

    def __post_init__(self):
        _check_name(self.name)
        object.__setattr__(self, "theorems", _check_sentences(self.theorems))

    @functools.cached_property
    def _codes(self) -> tuple:
        return tuple(encode_formula(f) for f in self.theorems)

    def sentence_at(self, y):
        return self.theorems[y] if 0 <= y < len(self.theorems) else None

    def code_at(self, y):
        return self._codes[y] if 0 <= y < len(self.theorems) else None

    def proof_indices(self, x):
        return [i for i, c in enumerate(self._codes) if c == x]

    def is_consistent(self) -> bool:
        """No ~(0 = 0) and no pair phi, ~phi among the listed theorems."""
        codes = set(self._codes)
        if encode_formula(Not(Eq(Zero, Zero))) in codes:
            return False
        return not any(negation_code(c) in codes for c in codes)


# ---------------------------------------------------------------------------
# enumerated theories


@dataclass(frozen=True)
class Generator:
    """A built-in theorem stream; ``inverse(x)`` lists every index carrying code ``x``."""

    name: str
    at: Callable[[int], Optional[Formula]]
    inverse: Optional[Callable[[int], list]] = None
    description: str = ""


def _sentence_or_gap(i: int) -> Optional[Formula]:
    try:
        f = decode_formula(i)
    except InvalidCode:
        return None
    return f if is_sentence(f) else None


GENERATORS = {
    g.name: g
    for g in [
        Generator(
            "all_sentences", _sentence_or_gap,
            lambda x: [x] if is_sentence_code(x) else [],
            "index c carries the sentence with code c; every other index is a gap",
        ),
        Generator(
            "even_codes", lambda i: _sentence_or_gap(i) if i % 2 == 0 else None,
            lambda x: [x] if x % 2 == 0 and is_sentence_code(x) else [],
            "as all_sentences, restricted to even codes",
        ),
        Generator(
            "all_sentences_opaque", _sentence_or_gap, None,
            "the all_sentences stream without an inverse: proofs are found by search only",
        ),
        Generator("empty", lambda i: None, lambda x: [], "no theorems"),
    ]
}


def register_generator(gen: Generator) -> None:
    if gen.name in GENERATORS:
        raise TheoryError(f"generator {gen.name!r} exists")
    GENERATORS[gen.name] = gen


@dataclass(frozen=True)
class EnumeratedTheory(Theory):
    """``prepend`` occupies indices ``0..p-1``; after it the generator stream
    runs alone, or, once something is appended, on the even offsets with the
    appended sentences on the odd ones."""

    name: str
    generator: str = "all_sentences"
    prepend: tuple = ()
    appended: tuple = ()

    def __post_init__(self):
        _check_name(self.name)
        if self.generator not in GENERATORS:
            raise TheoryError(f"unknown generator {self.generator!r}")
        object.__setattr__(self, "prepend", _check_sentences(self.prepend))
        object.__setattr__(self, "appended", _check_sentences(self.appended))

    @property
    def gen(self) -> Generator:
        return GENERATORS[self.generator]

    def sentence_at(self, y):
        p = len(self.prepend)
        if y < 0:
            return None
        if y < p:
            return self.prepend[y]
        j = y - p
        if not self.appended:
            return self.gen.at(j)
        if j % 2 == 0:
            return self.gen.at(j // 2)
        k = (j - 1) // 2
        return self.appended[k] if k < len(self.appended) else None

    def proof_indices(self, x):
        if self.gen.inverse is None:
            return None
        p = len(self.prepend)
        out = [i for i, f in enumerate(self.prepend) if encode_formula(f) == x]
        gen_idx = self.gen.inverse(x)
        if not self.appended:
            out += [p + j for j in gen_idx]
        else:
            out += [p + 2 * j for j in gen_idx]
            out += [p + 2 * k + 1 for k, f in enumerate(self.appended) if encode_formula(f) == x]
        return sorted(out)


# ---------------------------------------------------------------------------
# calculus theories


@dataclass(frozen=True)
class CalculusTheory(Theory):
    """Axioms closed under modus ponens.

    A proof code is ``encode_sequence(steps)``; step ``2i`` cites axiom ``i``,
    step ``2*pair(j, k) + 1`` applies modus ponens to earlier lines ``j``
    (the antecedent) and ``k`` (the implication).
    """

    name: str
    axioms: tuple = ()

    def __post_init__(self):
        _check_name(self.name)
        object.__setattr__(self, "axioms", _check_sentences(self.axioms))

    def derivation(self, y: int) -> Optional[list]:
        return _derive(self.axioms, y)

    def sentence_at(self, y):
        lines = self.derivation(y)
        return lines[-1] if lines else None

    @functools.cached_property
    def closure(self) -> frozenset:
        known = set(self.axioms)
        changed = True
        while changed:
            changed = False
            for f in list(known):
                if isinstance(f, Implies) and f.left in known and f.right not in known:
                    known.add(f.right)
                    changed = True
        return frozenset(known)

    def proves(self, x):
        try:
            return decode_formula(x) in self.closure
        except InvalidCode:
            return False


@functools.lru_cache(maxsize=65536)
def _derive(axioms: tuple, y: int) -> Optional[list]:
    if y < 0:
        return None
    lines = []
    for step in decode_sequence(y):
        if step % 2 == 0:
            i = step // 2
            if i >= len(axioms):
                return None
            lines.append(axioms[i])
        else:
            j, k = cantor_unpair((step - 1) // 2)
            if j >= len(lines) or k >= len(lines):
                return None
            imp = lines[k]
            if not (isinstance(imp, Implies) and imp.left == lines[j]):
                return None
            lines.append(imp.right)
    return lines or None


# ---------------------------------------------------------------------------
# registered atoms and formula builders


def prf_symbol(T: Theory) -> str:
    return f"prf_{T.name}"


def prfneg_symbol(T: Theory) -> str:
    return f"prfneg_{T.name}"


def register_theory(T: Theory, registry: Registry = REGISTRY) -> None:
    """Register ``prf_T(y, x)`` and ``prfneg_T(z, x)`` (a proof ``z`` of the negation of ``x``)."""

    def prf_candidates(pos, args):
        if pos == 0:
            return T.proof_indices(args[1])
        c = T.code_at(args[0])
        return [] if c is None else [c]

    def prfneg_candidates(pos, args):
        if pos == 0:
            return T.proof_indices(negation_code(args[1]))
        return None

    registry.register(AtomSpec(prf_symbol(T), 2, Delta0, T.prf, prf_candidates, key=("prf", T)))
    registry.register(AtomSpec(
        prfneg_symbol(T), 2, Delta0,
        lambda z, x: T.prf(z, negation_code(x)), prfneg_candidates, key=("prfneg", T),
    ))


def prf(T: Theory, y: int, x: int) -> bool:
    return T.prf(y, x)


def _prf_atom(T, y, x):
    return Atom(prf_symbol(T), (y, x), Delta0)


def pr_formula(T: Theory, registry: Registry = REGISTRY) -> Formula:
    """``exists y. prf_T(y, x)`` with free variable x."""
    register_theory(T, registry)
    return Exists("y", _prf_atom(T, Var("y"), Var("x")))


def rosser_pr_formula(T: Theory, registry: Registry = REGISTRY) -> Formula:
    """``exists y. prf_T(y, x) & (forall z < y. ~prfneg_T(z, x))``."""
    register_theory(T, registry)
    neg = Atom(prfneg_symbol(T), (Var("z"), Var("x")), Delta0)
    return Exists("y", And(_prf_atom(T, Var("y"), Var("x")), BForall("z", Var("y"), Not(neg))))


FALSUM = Not(Eq(Zero, Zero))


def con_sentence(T: Theory, registry: Registry = REGISTRY) -> Formula:
    return Not(substitute(pr_formula(T, registry), "x", Num(encode_formula(FALSUM))))


def _derived_name(T: Theory, phi: Formula) -> str:
    digest = hashlib.sha1(serialize(phi).encode()).hexdigest()[:8]
    return f"{T.name}_{digest}"


def extend(T: Theory, phi: Formula, name: Optional[str] = None) -> Theory:
    """``T + phi`` as a new theory value; ``T`` itself is untouched."""
    if not is_sentence(phi):
        raise TheoryError("only sentences can be added")
    name = name or _derived_name(T, phi)
    if isinstance(T, FiniteTheory):
        return FiniteTheory(name, T.theorems + (phi,))
    if isinstance(T, EnumeratedTheory):
        return EnumeratedTheory(name, T.generator, T.prepend, T.appended + (phi,))
    raise TheoryError(f"extend does not support {type(T).__name__}")


# ---------------------------------------------------------------------------
# the diagonal atom

DELTA = "delta"


def _delta_holds(m, y):
    try:
        return y == diag(m)
    except InvalidCode:
        return False


def _delta_candidates(pos, args):
    if pos != 1:
        return None
    try:
        return [diag(args[0])]
    except InvalidCode:
        return []


def delta_atom(registry: Registry = REGISTRY) -> AtomSpec:
    """``delta(x, y)``: y is the diagonal of x."""
    return registry.register(AtomSpec(DELTA, 2, Sigma(1), _delta_holds, _delta_candidates, key="delta"))


delta_atom()


# ---------------------------------------------------------------------------
# theory files


def parse_theories(text: str, registry: Registry = REGISTRY) -> list:
    """Parse one or more ``theory <name> finite|enumerated <gen>|calculus`` blocks.

    Each block's atoms are registered before the next block is read, so a
    later theory can mention ``prf_<earlier>``. Inside a block, ``@con T`` and
    ``@not_con T`` stand for Con_T and its negation.
    """
    theories = {}
    order = []
    current = None

    def close():
        if current is None:
            return
        name, kind, gen, items, line = current
        try:
            if kind == "finite":
                T = FiniteTheory(name, items)
            elif kind == "enumerated":
                T = EnumeratedTheory(name, gen, items)
            else:
                T = CalculusTheory(name, items)
        except TheoryError as exc:
            raise TheoryError(f"line {line}: {exc}") from None
        register_theory(T, registry)
        theories[name] = T
        order.append(T)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if words[0] == "theory":
            close()
            if len(words) < 3 or words[2] not in ("finite", "enumerated", "calculus"):
                raise TheoryError(f"line {lineno}: expected 'theory <name> finite|enumerated|calculus'")
            gen = None
            if words[2] == "enumerated":
                if len(words) != 4:
                    raise TheoryError(f"line {lineno}: enumerated theories name a generator")
                gen = words[3]
            elif len(words) != 3:
                raise TheoryError(f"line {lineno}: unexpected {' '.join(words[3:])!r}")
            _check_name(words[1])
            current = (words[1], words[2], gen, [], lineno)
            continue
        if current is None:
            raise TheoryError(f"line {lineno}: sentence before any theory header")
        if words[0] in ("@con", "@not_con"):
            if len(words) != 2 or words[1] not in theories:
                raise TheoryError(f"line {lineno}: {words[0]} needs a previously defined theory")
            con = con_sentence(theories[words[1]], registry)
            current[3].append(con if words[0] == "@con" else Not(con))
            continue
        try:
            f = parse(line, registry)
        except ParseError as exc:
            raise TheoryError(f"line {lineno}: {exc}") from None
        if not is_sentence(f):
            raise TheoryError(f"line {lineno}: not a sentence")
        current[3].append(f)
    close()
    if not order:
        raise TheoryError("no theory defined")
    return order


def load_theory(path, registry: Registry = REGISTRY) -> Theory:
    """Load a theory file; with several blocks the last one is returned."""
    return parse_theories(Path(path).read_text(encoding="utf-8"), registry)[-1]
