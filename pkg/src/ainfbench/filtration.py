"""Decreasing filtrations of finite A-infinity algebras.

A filtration is a chain F^0 = R >= F^1 >= ... >= F^n = 0 of graded subspaces
compatible with all products: m_p(F^{i_1} (x) ... (x) F^{i_p}) lies in
F^{i_1 + ... + i_p} (indices above n read as n, where F^n = 0).

Included here: the compatibility checker, the filtration by cohomological
degree of a non-positively graded minimal algebra, Jacobson radicals of
finite-dimensional associative algebras in characteristic zero via the trace
pairing of left-multiplication operators, and the explicit filtration of an
algebra concentrated in degrees {0, -kappa} built from radical powers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .ainf import AInfCategory, ValidationReport
from .linalg import GradedSpace, Subspace, quotient_space


class FiltrationError(ValueError):
    pass


def _one_object(r: AInfCategory):
    if len(r.objects) != 1:
        raise FiltrationError("filtrations are defined for one-object categories")
    obj = r.objects[0]
    return obj, r.hom[(obj, obj)]


def full_subspace(r: AInfCategory) -> Subspace:
    _, space = _one_object(r)
    f = r.field
    rows = [
        tuple(f.one if i == j else f.zero for i in range(space.dim))
        for j in range(space.dim)
    ]
    return Subspace(space, f, rows)


def zero_subspace(r: AInfCategory) -> Subspace:
    _, space = _one_object(r)
    return Subspace(space, r.field, ())


def subspace_product(r: AInfCategory, s: Subspace, t: Subspace) -> Subspace:
    """Span of m_2(s, t) over spanning vectors."""
    obj, space = _one_object(r)
    vecs = []
    for u in s.rows:
        eu = r.coords_to_element(u, obj, obj)
        for v in t.rows:
            ev = r.coords_to_element(v, obj, obj)
            out = r.apply(2, [eu, ev])
            if out:
                vecs.append(r.element_to_coords(out, obj, obj))
    return Subspace(space, r.field, vecs)


class Filtration:
    """Levels F^0, ..., F^n of the underlying space of a one-object algebra."""

    def __init__(self, algebra: AInfCategory, levels):
        _one_object(algebra)
        self.algebra = algebra
        self.levels = tuple(levels)
        if len(self.levels) < 2:
            raise FiltrationError("a filtration needs at least the levels F^0 and F^n = 0")
        space = algebra.hom[(algebra.objects[0],) * 2]
        for lv in self.levels:
            if lv.ambient != space:
                raise FiltrationError("level subspace has the wrong ambient space")

    @property
    def n(self) -> int:
        return len(self.levels) - 1

    def level(self, p: int) -> Subspace:
        """F^p, reading every index above n as n."""
        return self.levels[min(p, self.n)]

    def dims(self):
        return tuple(lv.dim for lv in self.levels)


def check_filtration(r: AInfCategory, filt: Filtration) -> ValidationReport:
    """Type invariants plus product compatibility, checked on spanning vectors.

    Index tuples with sum above n are implied by monotonicity (every factor
    may be raised until the sum hits n, where the target is 0), so the sweep
    runs over tuples with i_1 + ... + i_p <= n only.
    """
    report = ValidationReport()
    obj, space = _one_object(r)
    n = filt.n
    field = r.field

    full = full_subspace(r)
    f0_ok = filt.levels[0] == full
    report.add("f0_full", f0_ok,
               detail=f"dim F^0 = {filt.levels[0].dim}, dim R = {space.dim}",
               witnesses=[] if f0_ok else [{"arity": 0, "tuple": [0], "reason": "F^0 != R"}])
    fn_ok = filt.levels[n].dim == 0
    report.add("fn_zero", fn_ok,
               detail=f"dim F^{n} = {filt.levels[n].dim}",
               witnesses=[] if fn_ok else [{"arity": 0, "tuple": [n], "reason": f"F^{n} != 0"}])

    bad_decreasing = []
    for p in range(n):
        if not filt.levels[p].contains_subspace(filt.levels[p + 1]):
            bad_decreasing.append({"arity": 0, "tuple": [p], "reason": f"F^{p+1} not inside F^{p}"})
    report.add("decreasing", not bad_decreasing, witnesses=bad_decreasing)

    not_graded = [
        {"arity": 0, "tuple": [p], "reason": "level not spanned by homogeneous vectors"}
        for p in range(n + 1)
        if not filt.levels[p].graded
    ]
    report.add("graded", not not_graded, witnesses=not_graded)

    bad_compat = []
    for p in sorted(r.mult):
        for indices in itertools.product(range(n), repeat=p):
            total = sum(indices)
            if total > n:
                continue
            target = filt.level(total)
            spans = [filt.levels[i].rows for i in indices]
            for combo in itertools.product(*spans):
                args = [r.coords_to_element(v, obj, obj) for v in combo]
                out = r.apply(p, args)
                if not out:
                    continue
                vec = r.element_to_coords(out, obj, obj)
                if not target.contains(vec):
                    bad_compat.append(
                        {
                            "arity": p,
                            "tuple": list(indices),
                            "reason": f"m_{p}(F^{list(indices)}) escapes F^{total}",
                            "vector": {lab: field.unparse(c) for lab, c in sorted(out.items())},
                        }
                    )
    report.add("compatibility", not bad_compat, witnesses=bad_compat)
    return report


# ---------------------------------------------------------------------------
# degree filtration


def degree_filtration(r: AInfCategory) -> Filtration:
    """F^p spanned by the basis elements of degree <= -p; needs a minimal
    algebra concentrated in degrees <= 0."""
    obj, space = _one_object(r)
    if 1 in r.mult:
        raise FiltrationError("degree filtration requires a minimal algebra (m_1 = 0)")
    if any(d > 0 for d in space.degrees):
        raise FiltrationError("degree filtration requires degrees <= 0")
    field = r.field
    n = 1 + max((-d for d in space.degrees), default=0)
    levels = []
    for p in range(n + 1):
        rows = []
        for i, d in enumerate(space.degrees):
            if d <= -p:
                rows.append(tuple(field.one if j == i else field.zero for j in range(space.dim)))
        levels.append(Subspace(space, field, rows))
    return Filtration(r, levels)


# ---------------------------------------------------------------------------
# quotients by A-infinity ideals


def quotient_by_ideal(r: AInfCategory, ideal: Subspace, prefix: str = "q"):
    """Quotient algebra R/I with induced products; verifies I is an ideal.

    Returns (quotient category, quotient presentation).  The class of the
    unit is seeded as the first basis vector of the quotient.
    """
    obj, space = _one_object(r)
    field = r.field
    full = full_subspace(r)
    if not full.contains_subspace(ideal):
        raise FiltrationError("ideal is not a subspace of the algebra")

    for p in sorted(r.mult):
        for pos in range(p):
            for iv in ideal.rows:
                others = [full.rows for _ in range(p)]
                for combo in itertools.product(*[
                    [iv] if k == pos else full.rows for k in range(p)
                ]):
                    args = [r.coords_to_element(v, obj, obj) for v in combo]
                    out = r.apply(p, args)
                    if out and not ideal.contains(r.element_to_coords(out, obj, obj)):
                        raise FiltrationError(
                            f"subspace is not an ideal: m_{p} escapes it (slot {pos})"
                        )

    unit_vec = r.element_to_coords(r.unit_vector(obj), obj, obj)
    q = quotient_space(full, ideal, preferred=[unit_vec] if not ideal.contains(unit_vec) else [])
    labels = []
    for rep in q.reps:
        lead = next(i for i, a in enumerate(rep) if a != 0)
        labels.append(f"{prefix}:{space.labels[lead]}")
    degrees = tuple(q.degrees)
    qspace = GradedSpace(tuple(labels), degrees)

    mult: dict = {}
    for p in sorted(r.mult):
        table = {}
        for key in itertools.product(range(q.dim), repeat=p):
            args = [r.coords_to_element(q.reps[i], obj, obj) for i in key]
            out = r.apply(p, args)
            if not out:
                continue
            coords = q.project(r.element_to_coords(out, obj, obj))
            entry = {labels[i]: c for i, c in enumerate(coords) if c != 0}
            if entry:
                table[tuple(labels[i] for i in key)] = entry
        if table:
            mult[p] = table

    unit_class = q.project(unit_vec)
    unit_idx = [i for i, c in enumerate(unit_class) if c != 0]
    if len(unit_idx) != 1 or unit_class[unit_idx[0]] != field.one:
        raise FiltrationError("class of the unit is not a quotient basis vector")
    quotient = AInfCategory(
        field,
        (obj,),
        {(obj, obj): qspace},
        {obj: labels[unit_idx[0]]},
        mult,
    )
    return quotient, q


def filtration_quotient_algebra(r: AInfCategory, filt: Filtration, prefix: str = "rbar"):
    """R/F^1 with its induced structure (an honest quotient by compatibility)."""
    return quotient_by_ideal(r, filt.levels[1], prefix=prefix)


# ---------------------------------------------------------------------------
# radicals (characteristic zero)


def radical(a: AInfCategory) -> Subspace:
    """Jacobson radical via the trace pairing of left multiplications.

    Kernel of (x, y) -> trace(L_{xy}), iterated to a fixed point (in
    characteristic zero the first kernel already is the radical; the loop
    verifies that).  The result is checked to be a nilpotent ideal.
    """
    obj, space = _one_object(a)
    field = a.field
    if field.characteristic != 0:
        raise FiltrationError("radical computation requires characteristic zero")
    if any(p != 2 for p in a.mult):
        raise FiltrationError("radical requires an associative algebra with only m_2")
    if any(d != 0 for d in space.degrees):
        raise FiltrationError("radical requires the algebra concentrated in degree 0")

    current = a
    lifts = None  # chain of quotient presentations back to `a`
    j_rows: list = []
    while True:
        kernel = _trace_kernel(current)
        if not kernel:
            break
        # pull the kernel back through the quotients taken so far
        vecs = kernel
        if lifts is not None:
            vecs = [lifts.lift(v) for v in vecs]
        grew = False
        amb = space
        base = Subspace(amb, field, j_rows)
        for v in vecs:
            if not base.contains(v):
                j_rows.append(v)
                base = Subspace(amb, field, j_rows)
                grew = True
        if not grew:
            break
        current, lifts = quotient_by_ideal(a, base, prefix="rq")

    j = Subspace(space, field, j_rows)
    power = j
    nil = j.dim == 0
    for _ in range(space.dim + 1):
        if power.dim == 0:
            nil = True
            break
        power = subspace_product(a, power, j)
    if not nil and power.dim != 0:
        raise FiltrationError("trace kernel failed to be nilpotent (invalid input algebra)")
    return j


def _trace_kernel(a: AInfCategory):
    obj, space = _one_object(a)
    field = a.field
    d = space.dim
    if d == 0:
        return []
    # trace of left multiplication by each basis element
    tr = []
    for k, lab in enumerate(space.labels):
        t = field.zero
        for j, labj in enumerate(space.labels):
            out = a.apply_labels(2, (lab, labj))
            t = field.add(t, out.get(labj, field.zero))
        tr.append(t)
    # T[i][j] = trace(L_{b_i b_j}); equations sum_i x_i T[i][j] = 0
    rows = []
    for j in range(d):
        row = []
        for i in range(d):
            out = a.apply_labels(2, (space.labels[i], space.labels[j]))
            val = field.zero
            for lab, c in out.items():
                val = field.add(val, field.mul(c, tr[space.index(lab)]))
            row.append(val)
        rows.append(tuple(row))
    from .linalg import nullspace

    return list(nullspace(field, tuple(rows), d))


def nilpotency_index(r: AInfCategory, j: Subspace) -> int:
    """Least a with J^a = 0 (a = 1 when J = 0)."""
    if j.dim == 0:
        return 1
    power = j
    a = 1
    while power.dim > 0:
        power = subspace_product(r, power, j)
        a += 1
        if a > j.ambient.dim + 1:
            raise FiltrationError("subspace is not nilpotent")
    return a


# ---------------------------------------------------------------------------
# the two-degree construction


@dataclass
class AppendixParams:
    kappa: int
    radical: Subspace
    nil_index: int
    big_n: int


def appendix_filtration(r: AInfCategory, kappa: int):
    """Filtration of a minimal algebra concentrated in degrees {0, -kappa}.

    With J the radical of the degree-0 part, a its nilpotency index and
    N = (kappa+2)(a-1): levels J^p + R_{-kappa} for p <= N, then
    sum_{u+v=q} J^u R_{-kappa} J^v at level N+q, truncated at the first
    vanishing level.  Sums of subspaces, not direct sums: summands may meet.
    When a = 1 and R_{-kappa} != 0 the minimal N = 0 would make the two level
    families collide, so N is raised to 1 (any N >= (kappa+2)(a-1) works).
    """
    obj, space = _one_object(r)
    field = r.field
    if field.characteristic != 0:
        raise FiltrationError("the construction requires characteristic zero")
    if kappa < 1:
        raise FiltrationError("kappa must be a positive integer")
    if 1 in r.mult:
        raise FiltrationError("the construction requires a minimal algebra")
    bad = sorted({d for d in space.degrees if d not in (0, -kappa)})
    if bad:
        raise FiltrationError(f"grading must be concentrated in {{0, {-kappa}}}, found {bad}")

    def graded_part(deg):
        rows = [
            tuple(field.one if j == i else field.zero for j in range(space.dim))
            for i, d in enumerate(space.degrees)
            if d == deg
        ]
        return Subspace(space, field, rows)

    r0 = graded_part(0)
    rk = graded_part(-kappa)

    # the degree-zero part as a standalone associative algebra
    labels0 = tuple(l for l, d in zip(space.labels, space.degrees) if d == 0)
    space0 = GradedSpace(labels0, (0,) * len(labels0))
    m2_0 = {}
    for key, vec in r.mult.get(2, {}).items():
        if all(lab in labels0 for lab in key):
            out = {lab: c for lab, c in vec.items() if lab in labels0}
            if out:
                m2_0[key] = out
    unit = r.units[obj]
    if unit not in labels0:
        raise FiltrationError("unit does not lie in degree 0")
    a0 = AInfCategory(field, (obj,), {(obj, obj): space0}, {obj: unit}, {2: m2_0})
    j0 = radical(a0)

    # embed the radical back into R's coordinates
    j_rows = []
    for row in j0.rows:
        v = [field.zero] * space.dim
        for i, c in enumerate(row):
            v[space.index(labels0[i])] = c
        j_rows.append(tuple(v))
    j = Subspace(space, field, j_rows)

    a = nilpotency_index(r, j)
    big_n = (kappa + 2) * (a - 1)
    if a == 1 and rk.dim > 0 and big_n < 1:
        big_n = 1

    j_powers = [full_subspace(r), j]
    while j_powers[-1].dim > 0:
        j_powers.append(subspace_product(r, j_powers[-1], j))

    def j_power(u):
        return j_powers[min(u, len(j_powers) - 1)]

    levels = []
    for p in range(big_n + 1):
        lv = j_power(p).sum(rk) if p > 0 else full_subspace(r)
        levels.append(lv)
        if lv.dim == 0:
            break
    else:
        q = 1
        while True:
            lv = zero_subspace(r)
            for u in range(q + 1):
                v = q - u
                term = subspace_product(r, j_power(u), rk) if u else rk
                term = subspace_product(r, term, j_power(v)) if v else term
                lv = lv.sum(term)
            levels.append(lv)
            if lv.dim == 0 or q > 2 * (a + 1):
                break
            q += 1

    if levels[-1].dim != 0:
        raise FiltrationError("filtration did not terminate at zero")
    # truncate at the first vanishing level
    first_zero = next(i for i, lv in enumerate(levels) if lv.dim == 0)
    levels = levels[: first_zero + 1]

    filt = Filtration(r, levels)
    params = AppendixParams(kappa=kappa, radical=j, nil_index=a, big_n=big_n)
    return filt, params
