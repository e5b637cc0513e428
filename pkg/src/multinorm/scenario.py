"""Scenario files and report emission.

A scenario is a YAML document::

    name: bicyclic-p2-n3
    degree: 4                       # permutations act on 0..degree-1
    generators:                     # image arrays or cycle strings
      - "(0 1)(2 3)"
      - [2, 3, 0, 1]
    subgroups:                      # items: generator index or permutation
      H1: [0]
      H2: [1]
      H3: ["(0 3)(1 2)"]
      G: [0, 1]
    tuple: [H1, H2, H3]
    ramified: [H1, H2, H3]
    cover:                          # optional, see below
      kind: permutation
      degree: 4
      generators: ["(0 1 2 3)", "(0 2)"]
      images: ["(0 1)(2 3)", "(0 2)(1 3)"]
    options: {strategy: auto, cap: 32}

A cover is either ``kind: permutation`` (a permutation group plus the images
of its generators in ``G``) or ``kind: pairs`` (``moduli`` and one cocycle
table per modulus; rows and columns follow the elements of ``G`` sorted as
image arrays).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Any

import yaml

from .cover import Cocycle, extension_from_cocycles, extension_from_projection
from .engine import STRATEGIES, ObstructionReport, ScenarioInput
from .errors import ParseError, ValidationError
from .groups import Group, PermCarrier, generate_group, subgroup_generated

_CYCLE_RE = re.compile(r"^\s*(\(\s*(\d+(\s*[ ,]\s*\d+)*)?\s*\)\s*)+$")


# -- YAML with source positions ---------------------------------------------


class _Located:
    """Plain data plus a map from key paths to ``(line, column)``."""

    def __init__(self):
        self.marks: dict[tuple, tuple[int, int]] = {}

    def convert(self, node, path=()):
        self.marks[path] = (node.start_mark.line + 1, node.start_mark.column + 1)
        if isinstance(node, yaml.MappingNode):
            out = {}
            for k, v in node.value:
                if not isinstance(k, yaml.ScalarNode):
                    raise ParseError("mapping keys must be scalars", k.start_mark.line + 1,
                                     k.start_mark.column + 1)
                key = _scalar(k)
                if key in out:
                    raise ParseError(f"duplicate key {key!r}", k.start_mark.line + 1, k.start_mark.column + 1)
                out[key] = self.convert(v, path + (key,))
            return out
        if isinstance(node, yaml.SequenceNode):
            return [self.convert(v, path + (i,)) for i, v in enumerate(node.value)]
        return _scalar(node)


_CONSTRUCTOR = yaml.constructor.SafeConstructor()


def _scalar(node):
    return _CONSTRUCTOR.construct_object(node, deep=True)


def _load(text: str) -> tuple[Any, _Located]:
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        raise ParseError(f"invalid YAML: {exc.problem or exc.context}",
                         mark.line + 1 if mark else None, mark.column + 1 if mark else None) from None
    except yaml.YAMLError as exc:
        raise ParseError(f"invalid YAML: {exc}") from None
    loc = _Located()
    if node is None:
        raise ParseError("empty document", 1, 1)
    return loc.convert(node), loc


# -- permutations ------------------------------------------------------------


def parse_permutation(value, degree: int, where: str = "") -> tuple[int, ...]:
    """Image array or cycle string (0-based) to an image tuple."""
    if isinstance(value, str):
        if not _CYCLE_RE.match(value):
            raise ValidationError(f"{where}malformed cycle string {value!r}")
        img = list(range(degree))
        used: set = set()
        for cyc in re.findall(r"\(([^)]*)\)", value):
            pts = [int(t) for t in re.split(r"[\s,]+", cyc.strip()) if t]
            if any(p >= degree for p in pts):
                raise ValidationError(f"{where}point out of range in {value!r} (degree {degree})")
            if len(set(pts)) != len(pts) or used & set(pts):
                raise ValidationError(f"{where}cycles in {value!r} are not disjoint")
            used |= set(pts)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                img[a] = b
        return tuple(img)
    if isinstance(value, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        if len(value) != degree or sorted(value) != list(range(degree)):
            raise ValidationError(f"{where}{value!r} is not a bijection on 0..{degree - 1}")
        return tuple(value)
    raise ValidationError(f"{where}expected an image array or a cycle string, got {value!r}")


def cycle_string(perm: tuple[int, ...]) -> str:
    seen, parts = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = perm[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


# -- scenario files ----------------------------------------------------------


@dataclass
class ScenarioFile:
    """Structured content of a scenario file, permutations normalized to tuples."""

    degree: int
    generators: list
    subgroups: dict
    tuple: list
    ramified: list = field(default_factory=list)
    name: str | None = None
    cover: dict | None = None
    options: dict = field(default_factory=dict)
    _marks: dict = field(default_factory=dict, repr=False, compare=False)

    def where(self, *path) -> str:
        m = self._marks.get(tuple(path))
        return f"line {m[0]}, column {m[1]}: " if m else ""

    # structured content -> plain data
    def to_data(self) -> dict:
        out: dict = {}
        if self.name is not None:
            out["name"] = self.name
        out["degree"] = self.degree
        out["generators"] = [cycle_string(g) for g in self.generators]
        out["subgroups"] = {k: [v if isinstance(v, int) else cycle_string(v) for v in items]
                            for k, items in self.subgroups.items()}
        out["tuple"] = list(self.tuple)
        out["ramified"] = list(self.ramified)
        if self.cover is not None:
            out["cover"] = _cover_to_data(self.cover)
        if self.options:
            out["options"] = dict(self.options)
        return out

    def to_yaml(self) -> str:
        return dump_yaml(self.to_data())

    def build(self, cover_override: dict | None = None) -> ScenarioInput:
        """Materialize groups and return the engine input."""
        opts = dict(self.options)
        G = generate_group(self.generators, PermCarrier(self.degree), order_cap=opts.get("order_cap", 10000))
        subs: dict[str, Group] = {}
        for name, items in self.subgroups.items():
            elems = [self.generators[v] if isinstance(v, int) else v for v in items]
            for i, x in enumerate(elems):
                if x not in G:
                    raise ValidationError(f"{self.where('subgroups', name, i)}{cycle_string(x)} "
                                          f"in subgroup {name!r} is not an element of G")
            subs[name] = subgroup_generated(G, elems)
        Hs = [subs[k] for k in self.tuple]
        ram = [subs[k] for k in self.ramified]
        cov = cover_override if cover_override is not None else self.cover
        ext = build_cover(cov, G) if cov is not None else None
        return ScenarioInput(G, Hs, ram, h_names=tuple(self.tuple), ramified_names=tuple(self.ramified),
                             strategy=opts.get("strategy", "auto"), cap=opts.get("cap", 32), cover=ext)


def _cover_to_data(cov: dict) -> dict:
    if cov["kind"] == "permutation":
        return {"kind": "permutation", "degree": cov["degree"],
                "generators": [cycle_string(g) for g in cov["generators"]],
                "images": [cycle_string(g) for g in cov["images"]]}
    return {"kind": "pairs", "moduli": list(cov["moduli"]),
            "cocycles": [[list(r) for r in t] for t in cov["cocycles"]]}


def _int(v, what, where) -> int:
    if not isinstance(v, int) or isinstance(v, bool):
        raise ValidationError(f"{where}{what} must be an integer, got {v!r}")
    return v


def _parse_cover(data, loc: _Located, base: tuple, base_degree: int) -> dict:
    def where(*p):
        m = loc.marks.get(base + p)
        return f"line {m[0]}, column {m[1]}: " if m else ""
    if not isinstance(data, dict):
        raise ValidationError(f"{where()}cover must be a mapping")
    kind = data.get("kind")
    if kind == "permutation":
        deg = _int(data.get("degree"), "cover degree", where("degree"))
        gens = data.get("generators") or []
        imgs = data.get("images") or []
        if len(gens) != len(imgs):
            raise ValidationError(f"{where('images')}cover needs one image per generator")
        return {"kind": "permutation", "degree": deg,
                "generators": [parse_permutation(g, deg, where("generators", i)) for i, g in enumerate(gens)],
                "images": [parse_permutation(g, base_degree, where("images", i)) for i, g in enumerate(imgs)]}
    if kind == "pairs":
        moduli = [_int(m, "modulus", where("moduli", i)) for i, m in enumerate(data.get("moduli") or [])]
        tables = data.get("cocycles") or []
        if len(tables) != len(moduli):
            raise ValidationError(f"{where('cocycles')}cover needs one cocycle table per modulus")
        for i, t in enumerate(tables):
            if not (isinstance(t, list) and all(isinstance(r, list) for r in t)):
                raise ValidationError(f"{where('cocycles', i)}cocycle table must be a list of rows")
        return {"kind": "pairs", "moduli": moduli,
                "cocycles": [tuple(tuple(_int(v, "cocycle value", where("cocycles", i)) for v in r) for r in t)
                             for i, t in enumerate(tables)]}
    raise ValidationError(f"{where('kind')}cover kind must be 'permutation' or 'pairs'")


def build_cover(cov: dict, G: Group):
    if cov["kind"] == "permutation":
        Gt = generate_group(cov["generators"], PermCarrier(cov["degree"]))
        for im in cov["images"]:
            if im not in G:
                raise ValidationError(f"cover image {cycle_string(im)} is not in G")
        return extension_from_projection(Gt, G, cov["generators"], cov["images"])
    n = G.order
    cocycles = []
    for m, t in zip(cov["moduli"], cov["cocycles"]):
        if len(t) != n or any(len(r) != n for r in t):
            raise ValidationError(f"cocycle table must be {n} x {n}")
        c = Cocycle(G, m, tuple(tuple(v % m for v in r) for r in t))
        if not c.is_normalized() or not c.is_cocycle():
            raise ValidationError("cover table is not a normalized 2-cocycle")
        cocycles.append(c)
    return extension_from_cocycles(G, cocycles)


def parse_cover(text: str, base_degree: int) -> dict:
    data, loc = _load(text)
    if isinstance(data, dict) and "cover" in data:
        return _parse_cover(data["cover"], loc, ("cover",), base_degree)
    return _parse_cover(data, loc, (), base_degree)


_KEYS = {"name", "degree", "generators", "subgroups", "tuple", "ramified", "cover", "options"}


def parse_scenario(text: str) -> ScenarioFile:
    """Parse and validate scenario text (no group is built yet)."""
    data, loc = _load(text)

    def where(*p):
        m = loc.marks.get(tuple(p))
        return f"line {m[0]}, column {m[1]}: " if m else ""

    if not isinstance(data, dict):
        raise ParseError("a scenario must be a mapping", 1, 1)
    for k in data:
        if k not in _KEYS:
            raise ValidationError(f"{where(k)}unknown key {k!r}")
    for k in ("degree", "generators", "subgroups", "tuple"):
        if k not in data:
            raise ValidationError(f"missing required key {k!r}")
    deg = _int(data["degree"], "degree", where("degree"))
    if deg < 1:
        raise ValidationError(f"{where('degree')}degree must be positive")
    if not isinstance(data["generators"], list):
        raise ValidationError(f"{where('generators')}generators must be a list")
    gens = [parse_permutation(g, deg, where("generators", i)) for i, g in enumerate(data["generators"])]
    if not isinstance(data["subgroups"], dict):
        raise ValidationError(f"{where('subgroups')}subgroups must be a mapping")
    subs = {}
    for name, items in data["subgroups"].items():
        if not isinstance(items, list):
            raise ValidationError(f"{where('subgroups', name)}subgroup {name!r} must be a list")
        parsed = []
        for i, v in enumerate(items):
            w = where("subgroups", name, i)
            if isinstance(v, int) and not isinstance(v, bool):
                if not 0 <= v < len(gens):
                    raise ValidationError(f"{w}generator index {v} out of range")
                parsed.append(v)
            else:
                parsed.append(parse_permutation(v, deg, w))
        subs[str(name)] = parsed
    tup = data["tuple"]
    if not isinstance(tup, list) or not tup:
        raise ValidationError(f"{where('tuple')}tuple must be a non-empty list of subgroup names")
    ram = data.get("ramified") or []
    if not isinstance(ram, list):
        raise ValidationError(f"{where('ramified')}ramified must be a list")
    for key, names in (("tuple", tup), ("ramified", ram)):
        for i, nm in enumerate(names):
            if nm not in subs:
                raise ValidationError(f"{where(key, i)}unknown subgroup {nm!r}")
    opts = data.get("options") or {}
    if not isinstance(opts, dict):
        raise ValidationError(f"{where('options')}options must be a mapping")
    if "strategy" in opts and opts["strategy"] not in STRATEGIES:
        raise ValidationError(f"{where('options', 'strategy')}unknown strategy {opts['strategy']!r}")
    if "cap" in opts:
        _int(opts["cap"], "cap", where("options", "cap"))
    cover = _parse_cover(data["cover"], loc, ("cover",), deg) if data.get("cover") is not None else None
    name = data.get("name")
    return ScenarioFile(deg, gens, subs, [str(t) for t in tup], [str(r) for r in ram],
                        None if name is None else str(name), cover, dict(opts), dict(loc.marks))


def load_scenario(path) -> ScenarioFile:
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(fh.read())


def bundled_scenarios() -> dict[str, str]:
    """Name -> text of the scenario files shipped with the package."""
    root = resources.files("multinorm") / "scenarios"
    return {p.name[:-5]: p.read_text(encoding="utf-8")
            for p in sorted(root.iterdir(), key=lambda p: p.name) if p.name.endswith(".yaml")}


# -- reports -----------------------------------------------------------------


def dump_yaml(data) -> str:
    return yaml.safe_dump(data, sort_keys=False, default_flow_style=None, allow_unicode=True, width=100)


def format_element(x, scenario: ScenarioInput):
    """Permutations as cycle strings, pair elements as base cycle plus coefficients."""
    G = scenario.G
    if isinstance(x, tuple) and len(x) == 2 and isinstance(x[1], tuple):
        return {"base": cycle_string(G.elements[x[0]]), "coeff": list(x[1])}
    return cycle_string(x)


def report_data(command: str, report: ObstructionReport, scenario: ScenarioInput,
                name: str | None = None, hints: list | None = None) -> dict:
    out: dict = {"command": command}
    if name is not None:
        out["scenario"] = name
    out["strategy"] = report.strategy
    out["ambient_order"] = report.ambient_order
    out["groups"] = report.groups()
    if report.places:
        out["places"] = report.places
    if hints is not None:
        out["hints"] = hints
    if report.witnesses is not None:
        out["witnesses"] = [[format_element(h, scenario) for h in w] for w in report.witnesses]
    return out
