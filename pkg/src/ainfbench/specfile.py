"""Strict JSON format for categories, filtrations, and cochains.

The normative layout (see the shipped fixtures for a complete example):

    {
      "field": {"kind": "rationals"}            | {"kind": "prime-field",
                                                   "characteristic": p},
      "objects": ["*"],
      "basis": [{"name": "1", "source": "*", "target": "*", "degree": 0}, ...],
      "units": {"*": "1"},
      "mult": [{"arity": 2, "inputs": ["e", "e"], "output": {"t": "1"}}, ...],
      "filtration": [[{"1": "1"}, ...], ...],       # optional, one-object only
      "cochain": {"arity": 2, "table": [...]},      # optional
      "kappa": 1                                    # optional
    }

Scalars are decimal strings "a/b" (rationals) or integers mod p; no floats
are accepted anywhere.  Omitted multiplication entries mean zero and tables
never store zero vectors.  Unknown fields are rejected.  Serialization is
canonical: serialize(parse(serialize(x))) is byte-identical to serialize(x).
"""

from __future__ import annotations

import json

from .ainf import AInfCategory, CategoryError
from .filtration import Filtration, FiltrationError
from .linalg import GradedSpace, LinAlgError, Subspace
from .scalars import ExactField, FieldError


class SpecError(ValueError):
    pass


def _require_keys(obj: dict, required, optional=(), where="top level"):
    unknown = set(obj) - set(required) - set(optional)
    if unknown:
        raise SpecError(f"unknown fields {sorted(unknown)} at {where}")
    missing = [k for k in required if k not in obj]
    if missing:
        raise SpecError(f"missing fields {missing} at {where}")


class WorkbenchSpec:
    """Parsed and structurally validated input file."""

    def __init__(self, category, filtration, cochain, kappa):
        self.category = category
        self.filtration = filtration
        self.cochain = cochain  # raw dict {"arity": n, "table": {...}} or None
        self.kappa = kappa


def parse_field(obj) -> ExactField:
    if not isinstance(obj, dict):
        raise SpecError("field must be an object")
    _require_keys(obj, ["kind"], ["characteristic"], "field")
    kind = obj["kind"]
    if kind == "rationals":
        if obj.get("characteristic", 0) != 0:
            raise SpecError("rationals have characteristic 0")
        return ExactField(0)
    if kind == "prime-field":
        p = obj.get("characteristic")
        if not isinstance(p, int):
            raise SpecError("prime-field needs an integer characteristic")
        try:
            return ExactField(p)
        except FieldError as exc:
            raise SpecError(str(exc)) from None
    raise SpecError(f"unknown field kind {kind!r}")


def parse_spec_dict(data: dict) -> WorkbenchSpec:
    if not isinstance(data, dict):
        raise SpecError("input must be a JSON object")
    _require_keys(
        data,
        ["field", "objects", "basis", "units", "mult"],
        ["filtration", "cochain", "kappa"],
    )
    field = parse_field(data["field"])

    objects = data["objects"]
    if not isinstance(objects, list) or not all(isinstance(o, str) for o in objects):
        raise SpecError("objects must be a list of strings")

    hom_labels: dict = {}
    hom_degrees: dict = {}
    seen = set()
    if not isinstance(data["basis"], list):
        raise SpecError("basis must be a list")
    for k, row in enumerate(data["basis"]):
        if not isinstance(row, dict):
            raise SpecError(f"basis entry #{k} must be an object")
        _require_keys(row, ["name", "source", "target", "degree"], (), f"basis entry #{k}")
        name, srco, tgto, deg = row["name"], row["source"], row["target"], row["degree"]
        if not isinstance(name, str):
            raise SpecError(f"basis entry #{k}: name must be a string")
        if name in seen:
            raise SpecError(f"duplicate basis label {name!r} (basis entry #{k})")
        seen.add(name)
        if srco not in objects or tgto not in objects:
            raise SpecError(f"basis entry #{k} ({name!r}): unknown source/target object")
        if not isinstance(deg, int):
            raise SpecError(f"basis entry #{k} ({name!r}): degree must be an integer")
        hom_labels.setdefault((srco, tgto), []).append(name)
        hom_degrees.setdefault((srco, tgto), []).append(deg)

    hom = {
        key: GradedSpace(tuple(ls), tuple(hom_degrees[key]))
        for key, ls in hom_labels.items()
    }

    units = data["units"]
    if not isinstance(units, dict):
        raise SpecError("units must be an object mapping object -> basis name")
    for x, u in units.items():
        if x not in objects:
            raise SpecError(f"unit given for unknown object {x!r}")

    if not isinstance(data["mult"], list):
        raise SpecError("mult must be a list of entries")
    mult: dict = {}
    for k, row in enumerate(data["mult"]):
        if not isinstance(row, dict):
            raise SpecError(f"mult entry #{k} must be an object")
        _require_keys(row, ["arity", "inputs", "output"], (), f"mult entry #{k}")
        p, inputs, output = row["arity"], row["inputs"], row["output"]
        if not isinstance(p, int) or p < 1:
            raise SpecError(f"mult entry #{k}: arity must be a positive integer")
        if not isinstance(inputs, list) or len(inputs) != p:
            raise SpecError(f"mult entry #{k}: inputs must list exactly {p} names")
        for lab in inputs:
            if lab not in seen:
                raise SpecError(f"mult entry #{k}: unknown basis name {lab!r}")
        if not isinstance(output, dict):
            raise SpecError(f"mult entry #{k}: output must be an object")
        vec = {}
        for lab, c in output.items():
            if lab not in seen:
                raise SpecError(f"mult entry #{k}: unknown basis name {lab!r} in output")
            try:
                vec[lab] = field.parse(c)
            except FieldError as exc:
                raise SpecError(f"mult entry #{k}: {exc}") from None
        key = tuple(inputs)
        if key in mult.get(p, {}):
            raise SpecError(f"mult entry #{k}: duplicate entry for {key}")
        mult.setdefault(p, {})[key] = vec

    try:
        category = AInfCategory(field, tuple(objects), hom, units, mult)
    except (CategoryError, LinAlgError) as exc:
        raise SpecError(str(exc)) from None

    filtration = None
    if "filtration" in data:
        filtration = _parse_filtration(data["filtration"], category)

    cochain = None
    if "cochain" in data:
        cochain = _parse_cochain(data["cochain"], category)

    kappa = None
    if "kappa" in data:
        kappa = data["kappa"]
        if not isinstance(kappa, int) or kappa < 1:
            raise SpecError("kappa must be a positive integer")

    return WorkbenchSpec(category, filtration, cochain, kappa)


def _parse_filtration(levels, category: AInfCategory) -> Filtration:
    if len(category.objects) != 1:
        raise SpecError("filtration sections require a one-object category")
    obj = category.objects[0]
    space = category.hom[(obj, obj)]
    field = category.field
    if not isinstance(levels, list):
        raise SpecError("filtration must be a list of levels")
    subs = []
    for i, level in enumerate(levels):
        if not isinstance(level, list):
            raise SpecError(f"filtration level #{i} must be a list of combinations")
        vecs = []
        for combo in level:
            if not isinstance(combo, dict):
                raise SpecError(f"filtration level #{i}: combinations are objects")
            v = [field.zero] * space.dim
            for lab, c in combo.items():
                if lab not in space.labels:
                    raise SpecError(f"filtration level #{i}: unknown basis name {lab!r}")
                try:
                    v[space.index(lab)] = field.parse(c)
                except FieldError as exc:
                    raise SpecError(f"filtration level #{i}: {exc}") from None
            vecs.append(tuple(v))
        subs.append(Subspace(space, field, vecs))
    try:
        return Filtration(category, subs)
    except FiltrationError as exc:
        raise SpecError(str(exc)) from None


def _parse_cochain(obj, category: AInfCategory) -> dict:
    if not isinstance(obj, dict):
        raise SpecError("cochain must be an object")
    _require_keys(obj, ["arity", "table"], (), "cochain")
    n = obj["arity"]
    if not isinstance(n, int) or n < 1:
        raise SpecError("cochain arity must be a positive integer")
    if not isinstance(obj["table"], list):
        raise SpecError("cochain table must be a list of entries")
    table = {}
    labels = set(category.all_labels())
    for k, row in enumerate(obj["table"]):
        if not isinstance(row, dict):
            raise SpecError(f"cochain entry #{k} must be an object")
        _require_keys(row, ["inputs", "output"], (), f"cochain entry #{k}")
        inputs = row["inputs"]
        if not isinstance(inputs, list) or len(inputs) != n:
            raise SpecError(f"cochain entry #{k}: inputs must list exactly {n} names")
        for lab in inputs:
            if lab not in labels:
                raise SpecError(f"cochain entry #{k}: unknown basis name {lab!r}")
        vec = {}
        for lab, c in row["output"].items():
            if lab not in labels:
                raise SpecError(f"cochain entry #{k}: unknown basis name {lab!r} in output")
            try:
                vec[lab] = category.field.parse(c)
            except FieldError as exc:
                raise SpecError(f"cochain entry #{k}: {exc}") from None
        table[tuple(inputs)] = vec
    return {"arity": n, "table": table}


def parse_spec(path) -> WorkbenchSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    return parse_spec_dict(data)


# ---------------------------------------------------------------------------
# canonical serialization


def field_to_dict(field: ExactField) -> dict:
    if field.characteristic == 0:
        return {"kind": "rationals"}
    return {"kind": "prime-field", "characteristic": field.characteristic}


def category_to_dict(cat: AInfCategory, filtration: Filtration | None = None,
                     cochain: dict | None = None, kappa: int | None = None) -> dict:
    field = cat.field
    objects = [str(x) for x in cat.objects]
    rename = {x: str(x) for x in cat.objects}
    basis = []
    for x in cat.objects:
        for y in cat.objects:
            sp = cat.hom[(x, y)]
            for lab, d in zip(sp.labels, sp.degrees):
                basis.append(
                    {"name": str(lab), "source": rename[x], "target": rename[y], "degree": d}
                )
    units = {rename[x]: str(u) for x, u in sorted(cat.units.items(), key=lambda kv: str(kv[0]))}
    mult = []
    for p in sorted(cat.mult):
        for key in sorted(cat.mult[p], key=lambda t: [str(l) for l in t]):
            out = {
                str(lab): field.unparse(c)
                for lab, c in sorted(cat.mult[p][key].items(), key=lambda kv: str(kv[0]))
            }
            mult.append({"arity": p, "inputs": [str(l) for l in key], "output": out})
    data = {
        "field": field_to_dict(field),
        "objects": objects,
        "basis": basis,
        "units": units,
        "mult": mult,
    }
    if filtration is not None:
        obj = cat.objects[0]
        space = cat.hom[(obj, obj)]
        levels = []
        for lv in filtration.levels:
            level = []
            for row in lv.rows:
                combo = {
                    str(space.labels[i]): field.unparse(c)
                    for i, c in enumerate(row)
                    if c != 0
                }
                level.append(combo)
            levels.append(level)
        data["filtration"] = levels
    if cochain is not None:
        entries = []
        for key in sorted(cochain["table"], key=lambda t: [str(l) for l in t]):
            out = {
                str(lab): field.unparse(c)
                for lab, c in sorted(cochain["table"][key].items(), key=lambda kv: str(kv[0]))
            }
            entries.append({"inputs": [str(l) for l in key], "output": out})
        data["cochain"] = {"arity": cochain["arity"], "table": entries}
    if kappa is not None:
        data["kappa"] = kappa
    return data


def serialize(data: dict) -> str:
    return json.dumps(data, indent=2) + "\n"


def serialize_category(cat: AInfCategory, **sections) -> str:
    return serialize(category_to_dict(cat, **sections))
