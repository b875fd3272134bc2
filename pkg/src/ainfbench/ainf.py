"""Finite strictly unital A-infinity categories given by structure constants.

Conventions (used consistently by every module in this package):

* ``hom(x, y)`` is the space of morphisms x -> y.  A tuple
  ``(a_1, ..., a_p)`` is composable when ``src(a_u) = tgt(a_{u+1})``;
  ``m_p`` sends it into ``hom(src(a_p), tgt(a_1))``, and ``m_2(f, g) = f o g``
  (the first argument is the outer morphism).
* Each ``m_p`` has degree ``2 - p``: for every nonzero structure constant,
  ``deg(output) = sum of input degrees + 2 - p``.
* The defining relations checked by :func:`check_stasheff` are, for each
  total arity n and composable tuple,

      sum over r + s + t = n, s >= 1 of
          (-1)^(r + s*t) * m_{r+1+t}(id^r (x) m_s (x) id^t) = 0,

  where inserting ``m_s`` past the first r arguments contributes the Koszul
  sign ``(-1)^(s * (|a_1| + ... + |a_r|))`` (from the rule
  ``(f (x) g)(x (x) y) = (-1)^{|g||x|} f(x) (x) g(y)``).
* Strict unitality: ``m_2(1, f) = f = m_2(f, 1)`` and every ``m_p`` with
  ``p != 2`` vanishes as soon as one argument is a unit.
* The opposite category reverses hom-spaces and arguments with the sign
  ``(-1)^sigma``, ``sigma = sum_{u<v} |a_u| |a_v|``; this makes ``opposite``
  an involution on the nose.

Structure constants are stored sparsely: a missing tuple means the zero
vector.  All values are immutable after construction and all operations are
pure, so categories can be shared freely between threads or processes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .linalg import GradedSpace
from .scalars import ExactField


class CategoryError(ValueError):
    pass


# ---------------------------------------------------------------------------
# validation reports


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    witnesses: list = dc_field(default_factory=list)
    required: bool = True

    def to_json(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "witnesses": self.witnesses,
        }


class ValidationReport:
    """Pass/fail per check; every failure carries at least one witness."""

    def __init__(self):
        self.checks: list[CheckResult] = []

    def add(self, name, passed, detail="", witnesses=None, required=True):
        self.checks.append(
            CheckResult(name, passed, detail, sorted_witnesses(witnesses or []), required)
        )

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.required)

    def check(self, name) -> CheckResult | None:
        for c in self.checks:
            if c.name == name:
                return c
        return None

    def to_json(self):
        return {
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }

    def __repr__(self):
        status = "PASS" if self.passed else "FAIL"
        return f"ValidationReport({status}, {len(self.checks)} checks)"


def sorted_witnesses(ws):
    return sorted(ws, key=lambda w: (w.get("arity", 0), tuple(w.get("tuple", ()))))


# ---------------------------------------------------------------------------
# the category


class AInfCategory:
    """Finite A-infinity category: objects, based graded homs, mult tables.

    ``mult[p]`` maps composable basis label tuples to sparse output vectors
    (dicts label -> scalar).  Basis labels are globally unique across all
    hom-spaces; each label knows its source, target and degree.
    """

    def __init__(self, field: ExactField, objects, hom: dict, units: dict, mult: dict):
        self.field = field
        self.objects = tuple(objects)
        if len(set(self.objects)) != len(self.objects):
            raise CategoryError("duplicate object labels")
        self.hom = {}
        self._info = {}
        for x in self.objects:
            for y in self.objects:
                space = hom.get((x, y))
                if space is None:
                    space = GradedSpace((), ())
                self.hom[(x, y)] = space
                for i, lab in enumerate(space.labels):
                    if lab in self._info:
                        raise CategoryError(f"duplicate basis label {lab!r}")
                    self._info[lab] = (x, y, space.degrees[i], i)
        for key in hom:
            if key not in self.hom:
                raise CategoryError(f"hom space attached to unknown objects {key!r}")

        self.units = dict(units)
        for x in self.objects:
            u = self.units.get(x)
            if u is None:
                raise CategoryError(f"object {x!r} has no unit")
            if u not in self._info:
                raise CategoryError(f"unit {u!r} is not a basis label")
            ux, uy, _, _ = self._info[u]
            if ux != x or uy != x:
                raise CategoryError(f"unit {u!r} of {x!r} does not lie in hom({x!r},{x!r})")

        self.mult = {}
        for p, table in mult.items():
            if not isinstance(p, int) or p < 1:
                raise CategoryError(f"bad arity {p!r}")
            clean = {}
            for key, vec in table.items():
                key = tuple(key)
                if len(key) != p:
                    raise CategoryError(f"arity-{p} entry with {len(key)} inputs")
                for lab in key:
                    if lab not in self._info:
                        raise CategoryError(f"unknown basis label {lab!r} in arity-{p} table")
                out = {}
                for lab, c in vec.items():
                    if lab not in self._info:
                        raise CategoryError(
                            f"unknown basis label {lab!r} in output of entry {key}"
                        )
                    if c != 0:
                        out[lab] = c
                if out:
                    clean[key] = out
            if clean:
                self.mult[p] = clean

    # -- basic accessors -------------------------------------------------

    def src(self, label):
        return self._info[label][0]

    def tgt(self, label):
        return self._info[label][1]

    def deg(self, label):
        return self._info[label][2]

    def basis(self, x, y):
        return self.hom[(x, y)].labels

    def all_labels(self):
        for x in self.objects:
            for y in self.objects:
                yield from self.hom[(x, y)].labels

    @property
    def arity_bound(self) -> int:
        return max(self.mult, default=0)

    def total_dim(self) -> int:
        return sum(s.dim for s in self.hom.values())

    def is_unit(self, label) -> bool:
        x = self._info[label][0]
        return self.units.get(x) == label

    def unit_vector(self, x):
        return {self.units[x]: self.field.one}

    # -- element arithmetic ----------------------------------------------

    def apply_labels(self, p: int, labels) -> dict:
        """m_p on a tuple of basis labels (sparse output)."""
        table = self.mult.get(p)
        if table is None:
            return {}
        return dict(table.get(tuple(labels), ()))

    def apply(self, p: int, args) -> dict:
        """m_p on sparse elements, expanded multilinearly."""
        table = self.mult.get(p)
        if table is None:
            return {}
        field = self.field
        out: dict = {}
        for combo in itertools.product(*[list(a.items()) for a in args]):
            key = tuple(lab for lab, _ in combo)
            entry = table.get(key)
            if not entry:
                continue
            coeff = field.one
            for _, c in combo:
                coeff = field.mul(coeff, c)
            if coeff == 0:
                continue
            for lab, c in entry.items():
                v = field.add(out.get(lab, field.zero), field.mul(coeff, c))
                if v == 0:
                    out.pop(lab, None)
                else:
                    out[lab] = v
        return out

    def element_to_coords(self, elem: dict, x, y):
        space = self.hom[(x, y)]
        v = [self.field.zero] * space.dim
        for lab, c in elem.items():
            sx, sy, _, i = self._info[lab]
            if (sx, sy) != (x, y):
                raise CategoryError(f"element has component {lab!r} outside hom({x!r},{y!r})")
            v[i] = c
        return tuple(v)

    def coords_to_element(self, coords, x, y) -> dict:
        space = self.hom[(x, y)]
        return {space.labels[i]: c for i, c in enumerate(coords) if c != 0}

    # -- chains ------------------------------------------------------------

    def composable_tuples(self, n: int):
        """All length-n composable basis tuples, in deterministic order."""
        by_tgt: dict = {x: [] for x in self.objects}
        for lab in self.all_labels():
            by_tgt[self.tgt(lab)].append(lab)

        def extend(chain, src_obj):
            if len(chain) == n:
                yield tuple(chain)
                return
            for lab in by_tgt[src_obj]:
                chain.append(lab)
                yield from extend(chain, self.src(lab))
                chain.pop()

        for first in self.all_labels():
            yield from extend([first], self.src(first))

    # -- equality / copies --------------------------------------------------

    def tables_equal(self, other: "AInfCategory") -> bool:
        return (
            self.objects == other.objects
            and all(self.hom[k].labels == other.hom[k].labels for k in self.hom)
            and all(self.hom[k].degrees == other.hom[k].degrees for k in self.hom)
            and self.units == other.units
            and self.mult == other.mult
        )


# ---------------------------------------------------------------------------
# constructors


def category(field, objects, hom, units, mult) -> AInfCategory:
    return AInfCategory(field, objects, hom, units, mult)


def algebra(field, basis, unit, mult, obj="*") -> AInfCategory:
    """One-object category from a flat basis list [(label, degree), ...]."""
    labels = tuple(lab for lab, _ in basis)
    degrees = tuple(d for _, d in basis)
    return AInfCategory(
        field,
        (obj,),
        {(obj, obj): GradedSpace(labels, degrees)},
        {obj: unit},
        mult,
    )


# ---------------------------------------------------------------------------
# structural validation


def validate_structure(c: AInfCategory) -> ValidationReport:
    """Degree bookkeeping, composability, strict unitality, minimality flag."""
    report = ValidationReport()
    field = c.field

    degree_bad = []
    compos_bad = []
    for p, table in sorted(c.mult.items()):
        for key in sorted(table):
            ok = all(c.src(key[u]) == c.tgt(key[u + 1]) for u in range(p - 1))
            if not ok:
                compos_bad.append({"arity": p, "tuple": list(key), "reason": "inputs not composable"})
                continue
            out_pair = (c.src(key[-1]), c.tgt(key[0]))
            want = sum(c.deg(l) for l in key) + 2 - p
            for lab, coeff in sorted(table[key].items()):
                lx, ly, ld, _ = c._info[lab]
                if (lx, ly) != out_pair:
                    compos_bad.append(
                        {"arity": p, "tuple": list(key), "reason": f"output {lab} in wrong hom-space"}
                    )
                elif ld != want:
                    degree_bad.append(
                        {"arity": p, "tuple": list(key),
                         "reason": f"output {lab} has degree {ld}, expected {want}"}
                    )
    report.add("degrees", not degree_bad, witnesses=degree_bad)
    report.add("composability", not compos_bad, witnesses=compos_bad)

    unit_bad = []
    for x in c.objects:
        ud = c.deg(c.units[x])
        if ud != 0:
            unit_bad.append({"arity": 0, "tuple": [c.units[x]], "reason": f"unit degree {ud}"})
    for (x, y), space in sorted(c.hom.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1]))):
        for lab in space.labels:
            left = c.apply_labels(2, (c.units[y], lab))
            if left != {lab: field.one}:
                unit_bad.append({"arity": 2, "tuple": [c.units[y], lab], "reason": "m_2(1,f) != f"})
            right = c.apply_labels(2, (lab, c.units[x]))
            if right != {lab: field.one}:
                unit_bad.append({"arity": 2, "tuple": [lab, c.units[x]], "reason": "m_2(f,1) != f"})
    for p, table in sorted(c.mult.items()):
        if p == 2:
            continue
        for key in sorted(table):
            if any(c.is_unit(lab) for lab in key):
                unit_bad.append(
                    {"arity": p, "tuple": list(key), "reason": "higher product nonzero on a unit"}
                )
    report.add("units", not unit_bad, witnesses=unit_bad)

    minimal = 1 not in c.mult
    report.add("minimality", minimal, detail="m_1 = 0" if minimal else "m_1 != 0", required=False)
    return report


# ---------------------------------------------------------------------------
# the defining relations


def stasheff_defect(c: AInfCategory, labels) -> dict:
    """Value of the total arity-n relation on one composable basis tuple."""
    field = c.field
    n = len(labels)
    degs = [c.deg(l) for l in labels]
    out: dict = {}
    for r in range(n):
        pre_deg = sum(degs[:r])
        for s in range(1, n - r + 1):
            t = n - r - s
            outer_arity = r + 1 + t
            inner = c.apply_labels(s, labels[r:r + s])
            if not inner:
                continue
            if outer_arity not in c.mult:
                continue
            exp = (r + s * t + s * pre_deg) % 2
            sign = field.one if exp == 0 else field.neg(field.one)
            outer_table = c.mult[outer_arity]
            for lab, coeff in inner.items():
                key = labels[:r] + (lab,) + labels[r + s:]
                entry = outer_table.get(tuple(key))
                if not entry:
                    continue
                factor = field.mul(sign, coeff)
                for olab, oc in entry.items():
                    v = field.add(out.get(olab, field.zero), field.mul(factor, oc))
                    if v == 0:
                        out.pop(olab, None)
                    else:
                        out[olab] = v
    return out


def _stasheff_chunk(c: AInfCategory, chunk) -> list:
    witnesses = []
    for n, labels in chunk:
        defect = stasheff_defect(c, labels)
        if defect:
            witnesses.append(
                {
                    "arity": n,
                    "tuple": list(labels),
                    "defect": {lab: c.field.unparse(v) for lab, v in sorted(defect.items())},
                }
            )
    return witnesses


def check_stasheff(c: AInfCategory, n_max: int | None = None, jobs: int = 1) -> ValidationReport:
    """Evaluate the defining relations on every composable tuple up to n_max.

    The default bound 2*arity_bound - 1 is sharp: above it every insertion
    term vanishes identically.  With ``jobs > 1`` the sweep is split across
    worker processes; the report is assembled deterministically either way.
    """
    report = ValidationReport()
    bound = c.arity_bound
    if n_max is None:
        n_max = max(2 * bound - 1, 1)
    work = [(n, labels) for n in range(1, n_max + 1) for labels in c.composable_tuples(n)]
    if jobs > 1 and len(work) > 1:
        from concurrent.futures import ProcessPoolExecutor

        size = max(1, -(-len(work) // jobs))
        chunks = [work[i:i + size] for i in range(0, len(work), size)]
        witnesses = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_stasheff_chunk, itertools.repeat(c), chunks):
                witnesses.extend(part)
    else:
        witnesses = _stasheff_chunk(c, work)

    by_arity: dict = {n: [] for n in range(1, n_max + 1)}
    for w in witnesses:
        by_arity[w["arity"]].append(w)
    for n in range(1, n_max + 1):
        report.add(f"stasheff_n{n}", not by_arity[n], witnesses=by_arity[n])
    return report


# ---------------------------------------------------------------------------
# opposites and subcategories


def opposite(c: AInfCategory) -> AInfCategory:
    """Reverse all hom-spaces; arguments reversed with sign sum_{u<v}|a_u||a_v|."""
    field = c.field
    hom = {(x, y): c.hom[(y, x)] for x in c.objects for y in c.objects}
    mult: dict = {}
    for p, table in c.mult.items():
        new = {}
        for key, vec in table.items():
            degs = [c.deg(l) for l in key]
            sigma = sum(degs[u] * degs[v] for u in range(p) for v in range(u + 1, p)) % 2
            out = vec if sigma == 0 else {lab: field.neg(co) for lab, co in vec.items()}
            new[tuple(reversed(key))] = out
        mult[p] = new
    return AInfCategory(field, c.objects, hom, dict(c.units), mult)


def full_subcategory(c: AInfCategory, objs) -> AInfCategory:
    objs = tuple(objs)
    if not objs:
        raise CategoryError("object subset must be nonempty")
    for x in objs:
        if x not in c.objects:
            raise CategoryError(f"unknown object label {x!r}")
    keep = set(objs)
    hom = {(x, y): c.hom[(x, y)] for x in objs for y in objs}
    units = {x: c.units[x] for x in objs}
    mult: dict = {}
    for p, table in c.mult.items():
        new = {}
        for key, vec in table.items():
            if all(c.src(l) in keep and c.tgt(l) in keep for l in key):
                new[key] = dict(vec)
        if new:
            mult[p] = new
    return AInfCategory(c.field, objs, hom, units, mult)


