"""``gradedproj`` command-line front end.

Reads a JSON problem description, runs one command, prints a human summary
and optionally writes a machine-readable JSON report.  Exit codes: 0 all
verdicts pass, 1 some verdict failed, 2 some verdict inconclusive, 3 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass
from typing import Callable, Dict, Optional

from .abelian import INFINITY, quotient_invariants, torsion_exponent
from .atlas import (
    DEFAULT_DEGREE_BOUND,
    build_atlas,
    closed_immersion_check,
    functoriality_map,
    product_chart_check,
    product_grading,
)
from .graded import GradingError
from .magic import NotRelevantError, find_potion_gen, localization_equiv_potion, open_immersion_certificate, sum_cover_check
from .modules import is_negligible_on_family, twist_generator
from .poly import PolynomialSyntaxError
from .potion import PotionError, make_element
from .problem import InputError, Problem, parse_text
from .sampling import DEFAULT_SAMPLES, DEFAULT_SEED
from .submonoid import SubmonoidError, deg_group, is_maximally_relevant, is_relevant

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3

FAMILY_NOTE = "results are relative to the declared family, not to all relevant submonoids"


@dataclass
class Settings:
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    degree_bound: int = DEFAULT_DEGREE_BOUND


class Report:
    def __init__(self, command: str, problem: Problem, settings: Settings):
        self.command = command
        self.problem = problem
        self.settings = settings
        self.verdicts: list = []
        self.certificates: list = []
        self.warnings: list = []
        self.timings: list = []

    def add(self, check: str, status: str, result: str, seconds: float, **detail):
        assert status in ("pass", "fail", "inconclusive")
        self.verdicts.append({"check": check, "status": status, "result": result, **detail})
        self.timings.append(seconds)

    def certificate(self, check: str, data: dict):
        self.certificates.append({"check": check, **data})

    def warn(self, msg: str):
        if msg not in self.warnings:
            self.warnings.append(msg)

    def exit_code(self) -> int:
        statuses = {v["status"] for v in self.verdicts}
        if "fail" in statuses:
            return EXIT_FAIL
        if "inconclusive" in statuses:
            return EXIT_INCONCLUSIVE
        return EXIT_PASS

    def machine(self) -> dict:
        # timings are left out on purpose: the machine report must be reproducible byte for byte
        return {
            "command": self.command,
            "input_digest": self.problem.digest,
            "seed": self.settings.seed,
            "samples": self.settings.samples,
            "degree_bound": self.settings.degree_bound,
            "verdicts": self.verdicts,
            "certificates": self.certificates,
            "warnings": self.warnings + [w for w in self.problem.warnings if w not in self.warnings],
        }

    def machine_text(self) -> str:
        return json.dumps(self.machine(), indent=2, ensure_ascii=False) + "\n"

    def human_lines(self) -> list:
        lines = [f"{self.command}  seed={self.settings.seed} samples={self.settings.samples}"]
        for v, t in zip(self.verdicts, self.timings):
            lines.append(f"  [{v['status'].upper()}] {v['check']}: {v['result']}  ({t:.3f}s)")
        for w in self.machine()["warnings"]:
            lines.append(f"  warning: {w}")
        return lines


class _Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def _names(prob: Problem, key: str, available: dict) -> list:
    names = prob.params.get(key)
    if names is None:
        return list(available)
    for n in names:
        if n not in available:
            raise InputError(f"params.{key}", f"unknown name {n!r}")
    return names


# ---------------------------------------------------------------------------
# commands


def cmd_check_relevance(prob: Problem, cfg: Settings, rep: Report):
    M = prob.ring.group
    for name in _names(prob, "submonoids", prob.side.submonoids):
        S = prob.side.submonoids[name]
        with _Timer() as t:
            H = deg_group(S.bar())
            free, inv = quotient_invariants(M, H)
            relevant = is_relevant(S)
            maximal = is_maximally_relevant(S)
            exponent = torsion_exponent(M, H)
        result = "maximally relevant" if maximal else "relevant" if relevant else "not relevant"
        rep.add(f"relevance {name}", "pass" if relevant else "fail", result, t.seconds,
                quotient={"rank": free, "invariants": list(inv)},
                torsion_exponent=None if exponent is INFINITY else exponent)


def _fraction(S, block, where):
    try:
        return make_element(S, block["num"], block["witness"])
    except (GradingError, SubmonoidError, PolynomialSyntaxError) as e:
        raise InputError(where, str(e)) from None


def cmd_potion_eq(prob: Problem, cfg: Settings, rep: Report):
    for k, q in enumerate(prob.params.get("potion_eq", [])):
        where = f"params.potion_eq[{k}]"
        S = prob.side.submonoid(q["submonoid"], f"{where}.submonoid")
        a = _fraction(S, q["a"], f"{where}.a")
        b = _fraction(S, q["b"], f"{where}.b")
        with _Timer() as t:
            equal = a == b
        expect = q.get("expect", True)
        rep.add(f"potion_eq #{k} over {S.label()}: {a} vs {b}", "pass" if equal == expect else "fail",
                "equal" if equal else "not equal", t.seconds)


def cmd_magic2(prob: Problem, cfg: Settings, rep: Report):
    for k, q in enumerate(prob.params.get("magic2", [])):
        where = f"params.magic2[{k}]"
        S = prob.side.submonoid(q["S"], f"{where}.S")
        T = prob.side.submonoid(q["T"], f"{where}.T")
        check = f"localization {S.label()} -> {S.label()}{T.label()}"
        with _Timer() as t:
            try:
                G = find_potion_gen(S, T, q.get("n"))
            except NotRelevantError as e:
                rep.add(check, "fail", str(e), 0.0)
                continue
            except PotionError as e:
                raise InputError(f"{where}.n", str(e)) from None
            equiv = localization_equiv_potion(S, T, G)
            cert = open_immersion_certificate(S, T)
            trips = equiv.round_trip_report(cfg.samples, cfg.seed)
        ok = trips["passed"] and cert.verdict == "localization"
        rep.add(check, "pass" if ok else "fail", "localization" if ok else "round trip failed", t.seconds,
                round_trips={k2: v for k2, v in trips.items() if k2 != "passed"})
        rep.certificate(check, {"potion_gen": G.to_dict(), "elements": [str(e) for e in equiv.cert.generators]})


def cmd_magic4(prob: Problem, cfg: Settings, rep: Report):
    for k, q in enumerate(prob.params.get("magic4", [])):
        where = f"params.magic4[{k}]"
        check = f"sum cover {' + '.join(q['elements'])}"
        with _Timer() as t:
            try:
                r = sum_cover_check(prob.ring, q["elements"], cfg.samples, cfg.seed)
            except NotRelevantError as e:
                rep.add(check, "fail", str(e), 0.0)
                continue
            except (GradingError, PotionError, PolynomialSyntaxError) as e:
                raise InputError(where, str(e)) from None
        rep.add(check, "pass" if r.passed else "fail", "compatible" if r.passed else "incompatible", t.seconds,
                pairs=r.pairs)
        rep.certificate(check, {"charts": [c.to_dict() for c in r.certificates]})


def cmd_atlas(prob: Problem, cfg: Settings, rep: Report):
    rep.warn(FAMILY_NOTE)
    try:
        F = prob.family()
    except NotRelevantError as e:
        rep.add("atlas", "fail", str(e), 0.0)
        return
    with _Timer() as t:
        atlas = build_atlas(F, cfg.samples, cfg.seed)
    d = atlas.to_dict()
    rep.add(f"atlas {F.name}", "pass" if atlas.passed else "fail",
            f"{len(atlas.charts)} charts, {atlas.overlap_classes} overlap classes", t.seconds,
            charts=d["charts"], self_overlaps=d["self_overlaps"], symmetry=d["symmetry"], cocycle=d["cocycle"])
    for (i, j), c in sorted(atlas.overlaps.items()):
        rep.certificate(f"overlap {F.members[i].label()} -> {F.members[i].label()}{F.members[j].label()}",
                        c.to_dict())


def _target(prob: Problem):
    if prob.target is None:
        raise InputError("target", "this command needs a target ring and images")
    return prob.target


def cmd_functorial(prob: Problem, cfg: Settings, rep: Report):
    rep.warn(FAMILY_NOTE)
    hom = _target(prob)
    try:
        F = prob.family()
    except NotRelevantError as e:
        rep.add("functoriality", "fail", str(e), 0.0)
        return
    with _Timer() as t:
        r = functoriality_map(hom, F, cfg.samples, cfg.seed)
    for w in r.warnings:
        rep.warn(w)
    d = r.to_dict()
    rep.add(f"functoriality {F.name}", "pass" if r.passed else "fail",
            f"{len(r.maps)} maps, {len(r.dropped)} dropped", t.seconds,
            dropped=d["dropped"], compatibility=d["compatibility"])
    rep.certificate(f"functoriality {F.name}", {"maps": d["maps"]})


def cmd_closed_immersion(prob: Problem, cfg: Settings, rep: Report):
    rep.warn(FAMILY_NOTE)
    hom = _target(prob)
    if not hom.is_surjective_on_variables():
        raise InputError("target.images", "every target variable must be the image of a source variable")
    try:
        F = prob.family()
    except NotRelevantError as e:
        rep.add("closed immersion", "fail", str(e), 0.0)
        return
    for S in F.members:
        with _Timer() as t:
            r = closed_immersion_check(hom, S, cfg.degree_bound, cfg.samples, cfg.seed)
        d = r.to_dict()
        rep.add(f"closed immersion on {S.label()}", "pass" if r.verdict == "surjective" else "inconclusive",
                r.verdict, t.seconds, **{k: v for k, v in d.items() if k not in ("S", "verdict")})


def cmd_product_check(prob: Problem, cfg: Settings, rep: Report):
    if prob.factor is None:
        raise InputError("factor", "product-check needs a second factor")
    grading = product_grading(prob.ring, prob.factor.ring)
    if grading.renamed:
        rep.warn("renamed factor variables: " + ", ".join(f"{a}->{b}" for a, b in grading.renamed.items()))
    for k, q in enumerate(prob.params.get("product_check", [])):
        where = f"params.product_check[{k}]"
        S = prob.side.submonoid(q["S"], f"{where}.S")
        T = prob.factor.submonoid(q["T"], f"{where}.T")
        check = f"product chart {S.label()} x {T.label()}"
        with _Timer() as t:
            try:
                r = product_chart_check(S, T, cfg.samples, cfg.seed, grading)
            except NotRelevantError as e:
                rep.add(check, "fail", str(e), 0.0)
                continue
        rep.add(check, r.verdict, "generated by factor images" if r.verdict == "pass" else "decomposition failed",
                t.seconds, decomposed=f"{r.decomposed}/{r.total}")


def cmd_twist(prob: Problem, cfg: Settings, rep: Report):
    for k, q in enumerate(prob.params.get("twist", [])):
        where = f"params.twist[{k}]"
        S = prob.side.submonoid(q["submonoid"], f"{where}.submonoid")
        if len(q["alpha"]) != prob.ring.group.ngens:
            raise InputError(f"{where}.alpha", f"expected length {prob.ring.group.ngens}")
        check = f"twist {S.label()} alpha={q['alpha']}"
        with _Timer() as t:
            try:
                u = twist_generator(S, q["alpha"], cfg.samples, cfg.seed)
            except PotionError as e:
                rep.add(check, "fail", str(e), 0.0)
                continue
        d = u.to_dict()
        rep.add(check, "pass" if d["passed"] else "fail", f"u = {u}", t.seconds,
                **{k2: v for k2, v in d.items() if k2 in ("inverse_verified", "divide_after_multiply", "multiply_after_divide")})
        rep.certificate(check, {"u": str(u), "deg": d["deg_u"], "s": str(u.num), "s_prime": str(u.den)})
    if prob.families or prob.family_errors:
        try:
            F = prob.family()
        except NotRelevantError:
            return
        maximal = [S.label() for S in F.members if is_maximally_relevant(S)]
        rep.certificate("maximally relevant members", {"family": F.name, "members": maximal})


def cmd_negligible(prob: Problem, cfg: Settings, rep: Report):
    rep.warn(FAMILY_NOTE)
    try:
        F = prob.family()
    except NotRelevantError as e:
        rep.add("negligible", "fail", str(e), 0.0)
        return
    for name in _names(prob, "modules", prob.modules):
        Q = prob.modules[name]
        with _Timer() as t:
            r = is_negligible_on_family(Q, F)
        status = {"negligible": "pass", "not negligible": "fail"}.get(r.verdict, "inconclusive")
        rep.add(f"negligible {name} over {F.name}", status, r.verdict, t.seconds,
                charts=[c.to_dict() for c in r.charts])


COMMANDS: Dict[str, Callable] = {
    "check-relevance": cmd_check_relevance,
    "potion-eq": cmd_potion_eq,
    "magic2": cmd_magic2,
    "magic4": cmd_magic4,
    "atlas": cmd_atlas,
    "functorial": cmd_functorial,
    "closed-immersion": cmd_closed_immersion,
    "product-check": cmd_product_check,
    "twist": cmd_twist,
    "negligible": cmd_negligible,
}


def run(command: str, prob: Problem, cfg: Settings) -> Report:
    rep = Report(command, prob, cfg)
    COMMANDS[command](prob, cfg, rep)
    return rep


def _settings(args, prob: Problem) -> Settings:
    params = prob.params
    seed = args.seed
    if seed is None and os.environ.get("GRADEDPROJ_SEED"):
        try:
            seed = int(os.environ["GRADEDPROJ_SEED"])
        except ValueError:
            raise InputError("GRADEDPROJ_SEED", "not an integer") from None
    if seed is None:
        seed = params.get("seed", DEFAULT_SEED)
    samples = args.samples if args.samples is not None else params.get("samples", DEFAULT_SAMPLES)
    bound = args.degree_bound if args.degree_bound is not None else params.get("degree_bound", DEFAULT_DEGREE_BOUND)
    if seed < 0 or samples < 1 or bound < 0:
        raise InputError("flags", "seed and degree bound must be nonnegative, samples positive")
    return Settings(seed, samples, bound)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gradedproj", description="Checks for multi-graded Proj via potions.")
    p.add_argument("command", nargs="?", choices=sorted(COMMANDS), help="defaults to the document's command field")
    p.add_argument("--input", required=True, help="problem description (JSON); '-' reads stdin")
    p.add_argument("--report", help="write the machine-readable report here")
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--degree-bound", type=int)
    p.add_argument("--quiet", action="store_true", help="suppress the human-readable summary")
    return p


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.ERROR)
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        prob = parse_text(text)
        command = args.command or prob.command
        if command is None:
            raise InputError("command", "no command given on the command line or in the document")
        cfg = _settings(args, prob)
        rep = run(command, prob, cfg)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(rep.machine_text())
    if not args.quiet:
        print("\n".join(rep.human_lines()))
    return rep.exit_code()


if __name__ == "__main__":
    sys.exit(main())
