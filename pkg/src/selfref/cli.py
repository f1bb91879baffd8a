"""Command-line interface: ``selfref <command> ...``.

Exit codes: 0 success, 1 input error, 2 precondition (class) violation,
3 internal invariant failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from .coding import codec_spec
from .diagonal import (
    PSEUDO_P, PSEUDO_R, ClassError, fixed_point_pi, fixed_point_sigma, goedel_sentence,
    henkin_sentence, pseudo_goedelian, pseudo_goedelian_decide, rosser_sentence,
)
from .formula import FormulaError, HierarchyClass, classify, is_sentence
from .grammar import ParseError, parse, parse_template, to_text
from .registry import RegistryError
from .semantics import (
    EvaluationError, Fuel, check_fixed_point, evaluate, independence_probe, probe_to_dict,
    rosser_case_analysis, soundness_audit,
)
from .theory import TheoryError, load_theory

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_INVARIANT = 0, 1, 2, 3

PRESETS = {"pseudo_p": PSEUDO_P, "pseudo_r": PSEUDO_R}


class InputError(Exception):
    pass


class InvariantFailure(Exception):
    pass


@dataclass(frozen=True)
class ScenarioConfig:
    theory: Optional[str]
    fuel: Fuel
    proof_bound: int
    gamma: Optional[HierarchyClass]
    fmt: str

    @classmethod
    def from_args(cls, args) -> ScenarioConfig:
        try:
            fuel = Fuel(args.fuel, args.depth)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        if args.bound < 0:
            raise InputError("--bound must be non-negative")
        gamma = None
        if getattr(args, "gamma", None):
            try:
                gamma = HierarchyClass.parse(args.gamma)
            except FormulaError as exc:
                raise InputError(str(exc)) from None
        return cls(args.theory, fuel, args.bound, gamma, args.format)

    def load(self):
        if not self.theory:
            raise InputError("this command needs --theory <file>")
        try:
            return load_theory(self.theory)
        except OSError as exc:
            raise InputError(f"cannot read {self.theory}: {exc.strerror or exc}") from None
        except (TheoryError, RegistryError) as exc:
            raise InputError(f"{self.theory}: {exc}") from None


# ---------------------------------------------------------------------------
# rendering


def _render_text(d, indent=0) -> list:
    pad = "  " * indent
    lines = []
    for k, v in d.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines += _render_text(v, indent + 1)
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                sub = _render_text(item, indent + 2)
                sub[0] = pad + "  - " + sub[0].lstrip()
                lines += sub
        else:
            if isinstance(v, bool) or v is None:
                v = {True: "yes", False: "no", None: "-"}[v]
            elif isinstance(v, list):
                v = ", ".join("=".join(map(str, x)) if isinstance(x, list) else str(x) for x in v) or "-"
            lines.append(f"{pad}{k}: {v}")
    return lines


def emit(result: dict, fmt: str, out) -> None:
    if fmt == "structured":
        out.write(json.dumps(result, sort_keys=True, indent=2) + "\n")
    else:
        out.write("\n".join(_render_text(result)) + "\n")


def _parse(text):
    try:
        return parse(text)
    except ParseError as exc:
        raise InputError(f"parse error: {exc}") from None
    except RegistryError as exc:
        raise InputError(str(exc)) from None


def _sentence(text):
    f = _parse(text)
    if not is_sentence(f):
        raise InputError("expected a sentence (no free variables)")
    return f


def _fixed_point_result(report, cfg, evaluate_theta=True) -> dict:
    if not report.identity_holds:
        raise InvariantFailure("diagonal identity failed")
    d = report.to_dict()
    if evaluate_theta:
        chk = check_fixed_point(report, fuel=cfg.fuel)
        if not chk.non_contradictory:
            raise InvariantFailure("theta and psi(#theta) evaluate to opposite values")
        d["verdict"] = chk.theta.verdict
        d["certificate"] = chk.theta.to_dict()["certificate"]
        d["check"] = chk.to_dict()
    d["fuel"] = cfg.fuel.to_dict()
    return d


# ---------------------------------------------------------------------------
# commands


def cmd_diagonalize(args, cfg):
    psi = _parse(args.psi)
    ctor = fixed_point_pi if args.mode == "pi" else fixed_point_sigma
    return _fixed_point_result(ctor(psi, args.n), cfg)


def _named(builder):
    def run(args, cfg):
        T = cfg.load()
        report = builder(T, args)
        d = {"theory": T.name}
        d.update(_fixed_point_result(report, cfg))
        return d

    return run


cmd_goedel = _named(lambda T, a: goedel_sentence(T))
cmd_rosser = _named(lambda T, a: rosser_sentence(T))
cmd_henkin = _named(lambda T, a: henkin_sentence(T, rosser=a.rosser))


def cmd_pseudo(args, cfg):
    if args.preset:
        text, ctx_texts = PRESETS[args.preset]
    else:
        if not args.template:
            raise InputError("give a template or --preset")
        text, ctx_texts = args.template, tuple(args.context)
    try:
        B = parse_template(text)
        contexts = [parse_template(c) for c in ctx_texts]
    except ParseError as exc:
        raise InputError(f"parse error: {exc}") from None
    d = {"template": to_text(B), "contexts": [to_text(c) for c in contexts],
         "decided": "positive" if pseudo_goedelian_decide(B).positive else "negative"}
    if cfg.theory:
        T = cfg.load()
        try:
            report = pseudo_goedelian(T, B, contexts)
        except FormulaError as exc:
            raise InputError(str(exc)) from None
        d["theory"] = T.name
        d.update(_fixed_point_result(report, cfg))
    return d


def cmd_audit(args, cfg):
    T = cfg.load()
    if cfg.gamma is None:
        raise InputError("audit needs --class")
    return soundness_audit(T, cfg.gamma, cfg.proof_bound, cfg.fuel).to_dict()


def cmd_probe(args, cfg):
    T = cfg.load()
    phi = _sentence(args.phi)
    d = {"theory": T.name, "sentence": to_text(phi), "proof_bound": cfg.proof_bound}
    d.update(probe_to_dict(independence_probe(T, phi, cfg.proof_bound)))
    return d


def cmd_rosser_cases(args, cfg):
    T = cfg.load()
    phi = _sentence(args.phi)
    r = rosser_case_analysis(T, phi, cfg.proof_bound, cfg.fuel)
    if not r.matches and r.rpr_phi.decided:
        raise InvariantFailure(f"R.Pr verdict {r.rpr_phi.verdict} contradicts case {r.case}")
    d = {"theory": T.name, "sentence": to_text(phi), "fuel": cfg.fuel.to_dict()}
    d.update(r.to_dict())
    return d


def cmd_eval(args, cfg):
    if cfg.theory:
        cfg.load()
    phi = _sentence(args.phi)
    tv = evaluate(phi, cfg.fuel)
    d = {"sentence": to_text(phi), "fuel": cfg.fuel.to_dict()}
    d.update(tv.to_dict())
    return d


def cmd_classify(args, cfg):
    if cfg.theory:
        cfg.load()
    phi = _parse(args.phi)
    return {"formula": to_text(phi), "class": str(classify(phi))}


COMMANDS = {
    "diagonalize": cmd_diagonalize, "goedel": cmd_goedel, "rosser": cmd_rosser,
    "henkin": cmd_henkin, "pseudo": cmd_pseudo, "audit": cmd_audit, "probe": cmd_probe,
    "rosser-cases": cmd_rosser_cases, "eval": cmd_eval, "classify": cmd_classify
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--theory", help="theory file")
    common.add_argument("--fuel", type=int, default=Fuel.witness_bound, help="witness bound per quantifier")
    common.add_argument("--depth", type=int, default=Fuel.depth_bound, help="quantifier depth bound")
    common.add_argument("--bound", type=int, default=100, help="proof index bound")
    common.add_argument("--class", dest="gamma", help="delta0 | sigmaN | piN")
    common.add_argument("--format", choices=("text", "structured"), default="text")

    p = argparse.ArgumentParser(prog="selfref", description="Self-referential sentences of arithmetic.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("diagonalize", parents=[common], help="fixed point of a one-variable formula")
    s.add_argument("psi")
    s.add_argument("--mode", choices=("pi", "sigma"), default="pi")
    s.add_argument("--n", type=int, default=1)

    for name, desc in (("goedel", "canonical Goedel sentence"), ("rosser", "canonical Rosser sentence")):
        sub.add_parser(name, parents=[common], help=desc)
    s = sub.add_parser("henkin", parents=[common], help="sentence asserting its own provability")
    s.add_argument("--rosser", action="store_true", help="use Rosser provability")

    s = sub.add_parser("pseudo", parents=[common], help="pseudo-Goedelian sentences")
    s.add_argument("template", nargs="?")
    s.add_argument("--context", action="append", default=[], help="one per template variable, in order")
    s.add_argument("--preset", choices=sorted(PRESETS))

    sub.add_parser("audit", parents=[common], help="soundness audit for a class")
    for name in ("probe", "rosser-cases", "eval", "classify"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("phi")
    sub.add_parser("codec-spec", parents=[common], help="print the coding tables")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        cfg = ScenarioConfig.from_args(args)
        if args.command == "codec-spec":
            text = codec_spec()
            if cfg.fmt == "structured":
                emit({"codec": text.splitlines()}, cfg.fmt, out)
            else:
                out.write(text)
            return EXIT_OK
        emit(COMMANDS[args.command](args, cfg), cfg.fmt, out)
        return EXIT_OK
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ClassError as exc:
        print(f"class error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (FormulaError, EvaluationError, RegistryError, TheoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InvariantFailure as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
