"""Parsing and validation of JSON problem descriptions."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, Optional

import jsonschema

from .abelian import FgAbelianGroup
from .atlas import RelevantFamily
from .magic import NotRelevantError
from .graded import GradedRing, GradedRingHom, GradingError, graded_hom
from .modules import GradedModule, ModuleError
from .poly import PolynomialSyntaxError
from .submonoid import HomogeneousSubmonoid, SubmonoidError


class InputError(ValueError):
    """Malformed or inconsistent input; ``where`` locates the offending entry."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


def load_schema() -> dict:
    return json.loads(resources.files("gradedproj").joinpath("schema.json").read_text())


def digest(doc: dict) -> str:
    canon = json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(canon.encode()).hexdigest()


@dataclass
class Side:
    """A graded ring with named submonoids."""

    ring: GradedRing
    submonoids: Dict[str, HomogeneousSubmonoid] = field(default_factory=dict)

    def submonoid(self, name: str, where: str) -> HomogeneousSubmonoid:
        if name not in self.submonoids:
            raise InputError(where, f"unknown submonoid {name!r}")
        return self.submonoids[name]


@dataclass
class Problem:
    doc: dict
    digest: str
    side: Side
    families: Dict[str, RelevantFamily] = field(default_factory=dict)
    family_errors: Dict[str, Exception] = field(default_factory=dict)
    modules: Dict[str, GradedModule] = field(default_factory=dict)
    target: Optional[GradedRingHom] = None
    factor: Optional[Side] = None

    @property
    def command(self) -> Optional[str]:
        return self.doc.get("command")

    @property
    def params(self) -> dict:
        return self.doc.get("params", {})

    @property
    def ring(self) -> GradedRing:
        return self.side.ring

    def family(self, where: str = "params.family") -> RelevantFamily:
        name = self.params.get("family")
        if name is None:
            names = [f["name"] for f in self.doc.get("families", [])]
            if not names:
                raise InputError("families", "no family declared")
            name = names[0]
        if name in self.family_errors:
            raise self.family_errors[name]
        if name not in self.families:
            raise InputError(where, f"unknown family {name!r}")
        return self.families[name]

    @property
    def warnings(self) -> list:
        out = []
        for S in self.side.submonoids.values():
            out += S.warnings
        if self.factor:
            for S in self.factor.submonoids.values():
                out += S.warnings
        return list(dict.fromkeys(out))


def _group(block: dict, where: str) -> FgAbelianGroup:
    try:
        return FgAbelianGroup(block["rank"], tuple(block.get("invariants", ())))
    except ValueError as e:
        raise InputError(where, str(e)) from None


def _ring(group: FgAbelianGroup, block: dict, where: str) -> GradedRing:
    variables = []
    for k, v in enumerate(block["variables"]):
        if len(v["degree"]) != group.ngens:
            raise InputError(f"{where}.variables[{k}]",
                             f"degree of {v['name']} has length {len(v['degree'])}, expected {group.ngens}")
        variables.append((v["name"], v["degree"]))
    ideal = block.get("ideal", [])
    try:
        R = GradedRing(group, variables)
    except (GradingError, ValueError) as e:
        raise InputError(f"{where}.variables", str(e)) from None
    polys = []
    for k, text in enumerate(ideal):
        try:
            p = R.poly(text)
        except PolynomialSyntaxError as e:
            raise InputError(f"{where}.ideal[{k}]", str(e)) from None
        if R.is_homogeneous(p) is None:
            raise InputError(f"{where}.ideal[{k}]", f"ideal generator {text!r} is not homogeneous")
        polys.append(p)
    return GradedRing(group, variables, polys)


def _submonoids(R: GradedRing, blocks: list, where: str) -> Dict[str, HomogeneousSubmonoid]:
    out = {}
    for k, b in enumerate(blocks):
        loc = f"{where}[{k}]"
        name = b["name"]
        if name in out:
            raise InputError(loc, f"duplicate submonoid name {name!r}")
        facts = {}
        for i, fl in enumerate(b.get("factorizations", [])):
            if fl is not None:
                facts[i] = [(f["factor"], f.get("multiplicity", 1)) for f in fl]
        try:
            out[name] = HomogeneousSubmonoid(R, b["generators"], facts, name=name)
        except (SubmonoidError, GradingError, PolynomialSyntaxError) as e:
            raise InputError(f"{loc} ({name})", str(e)) from None
    return out


def parse_document(doc: dict) -> Problem:
    try:
        jsonschema.validate(doc, load_schema())
    except jsonschema.ValidationError as e:
        path = ".".join(str(p) for p in e.absolute_path)
        raise InputError(path or "document", e.message) from None
    group = _group(doc["group"], "group")
    R = _ring(group, doc["ring"], "ring")
    side = Side(R, _submonoids(R, doc.get("submonoids", []), "submonoids"))
    prob = Problem(doc, digest(doc), side)
    for k, fb in enumerate(doc.get("families", [])):
        members = [side.submonoid(m, f"families[{k}].members[{j}]") for j, m in enumerate(fb["members"])]
        try:
            prob.families[fb["name"]] = RelevantFamily(R, members, name=fb["name"])
        except NotRelevantError as e:
            # reported as a failed verdict by the commands that need the family
            prob.family_errors[fb["name"]] = e
    for k, mb in enumerate(doc.get("modules", [])):
        loc = f"modules[{k}] ({mb['name']})"
        for j, d in enumerate(mb["generator_degrees"]):
            if len(d) != group.ngens:
                raise InputError(f"{loc}.generator_degrees[{j}]", f"expected length {group.ngens}")
        try:
            prob.modules[mb["name"]] = GradedModule(R, mb["generator_degrees"], mb.get("relations", []), name=mb["name"])
        except (ModuleError, GradingError, PolynomialSyntaxError) as e:
            raise InputError(loc, str(e)) from None
    if "target" in doc:
        tb = doc["target"]
        B = _ring(group, tb["ring"], "target.ring")
        try:
            prob.target = graded_hom(R, B, tb["images"])
        except (GradingError, PolynomialSyntaxError) as e:
            raise InputError("target.images", str(e)) from None
    if "factor" in doc:
        fb = doc["factor"]
        G2 = _group(fb["group"], "factor.group")
        R2 = _ring(G2, fb["ring"], "factor.ring")
        prob.factor = Side(R2, _submonoids(R2, fb.get("submonoids", []), "factor.submonoids"))
    return prob


def parse_text(text: str) -> Problem:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"line {e.lineno} column {e.colno}", e.msg) from None
    if not isinstance(doc, dict):
        raise InputError("document", "top level must be an object")
    return parse_document(doc)
