"""Hochschild cochains, square-zero extensions, and cocycle deformations.

A bimodule M over a finite category C assigns a graded space M(x, y) to each
object pair, with action tables in the same sparse format as multiplication
tables (each key holds exactly one M-label).  The square-zero extension
C + M[shift] is an honest category of the same kind: products of two
M-components vanish by definition, so a degree-n normalized cochain eta with
values in M can be added to m_n on pure-C inputs.  The extended structure
satisfies the defining relations iff the Hochschild differential of eta
vanishes; that equivalence is the content of the deformation operation and is
what the test suite quantifies over.

The differential is the arity-(n+1) component of the graded commutator of the
cochain with the structure maps, normalized so that on an associative algebra
in degree 0 it is the classical alternating sum

    (d phi)(a_1, ..., a_{n+1}) = a_1 phi(a_2, ...) - phi(a_1 a_2, ...)
        + phi(a_1, a_2 a_3, ...) - ... + (-1)^(n+1) phi(a_1, ..., a_n) a_{n+1}.

On associative bases the commutator has no other components, so d o d = 0 and
the deformation equivalence are exact there; for bases with higher products
the remaining components are not captured by a single-arity cochain and the
structure checker remains the judge of a deformation.
"""

from __future__ import annotations

import itertools

from .ainf import AInfCategory
from .linalg import GradedSpace


class HochschildError(ValueError):
    pass


# ---------------------------------------------------------------------------
# bimodules


class Bimodule:
    """Graded value spaces per object pair plus action tables.

    Action tables map mixed tuples (exactly one M-label among C-labels) to
    M-valued sparse vectors; arity 2 gives the left/right actions, higher
    arities are optional.  M-labels must not collide with base labels.
    """

    def __init__(self, base: AInfCategory, spaces: dict, action: dict):
        self.base = base
        self.spaces = {}
        self._info = {}
        for x in base.objects:
            for y in base.objects:
                sp = spaces.get((x, y), GradedSpace((), ()))
                self.spaces[(x, y)] = sp
                for i, lab in enumerate(sp.labels):
                    if lab in self._info or lab in base._info:
                        raise HochschildError(f"duplicate or colliding label {lab!r}")
                    self._info[lab] = (x, y, sp.degrees[i])
        self.action = {}
        for p, table in action.items():
            clean = {}
            for key, vec in table.items():
                key = tuple(key)
                m_slots = [i for i, lab in enumerate(key) if lab in self._info]
                if len(m_slots) != 1:
                    raise HochschildError(
                        f"action entry {key} must contain exactly one module label"
                    )
                for lab in key:
                    if lab not in self._info and lab not in base._info:
                        raise HochschildError(f"unknown label {lab!r} in action table")
                out = {}
                for lab, c in vec.items():
                    if lab not in self._info:
                        raise HochschildError(f"action output {lab!r} is not a module label")
                    if c != 0:
                        out[lab] = c
                if out:
                    clean[key] = out
            if clean:
                self.action[p] = clean

    def src(self, label):
        return self._info[label][0]

    def tgt(self, label):
        return self._info[label][1]

    def deg(self, label):
        return self._info[label][2]

    def total_dim(self) -> int:
        return sum(sp.dim for sp in self.spaces.values())


def diagonal_bimodule(c: AInfCategory, prefix: str = "M") -> Bimodule:
    """The category acting on a relabeled copy of itself; every product table
    entry yields one action entry per argument slot."""
    spaces = {}
    rename = {}
    for (x, y), sp in c.hom.items():
        labels = tuple(f"{prefix}.{lab}" for lab in sp.labels)
        for old, new in zip(sp.labels, labels):
            rename[old] = new
        spaces[(x, y)] = GradedSpace(labels, sp.degrees)
    action: dict = {}
    for p, table in c.mult.items():
        tbl = action.setdefault(p, {})
        for key, vec in table.items():
            out = {rename[lab]: co for lab, co in vec.items()}
            for slot in range(p):
                new_key = tuple(
                    rename[lab] if i == slot else lab for i, lab in enumerate(key)
                )
                tbl[new_key] = dict(out)
    return Bimodule(c, spaces, action)


def zero_bimodule(c: AInfCategory) -> Bimodule:
    return Bimodule(c, {}, {})


def bimodule_direct_sum(m1: Bimodule, m2: Bimodule) -> Bimodule:
    if m1.base is not m2.base and not m1.base.tables_equal(m2.base):
        raise HochschildError("bimodules over different bases")
    spaces = {}
    for key in m1.spaces:
        a, b = m1.spaces[key], m2.spaces[key]
        spaces[key] = GradedSpace(a.labels + b.labels, a.degrees + b.degrees)
    action: dict = {}
    for src in (m1, m2):
        for p, table in src.action.items():
            tbl = action.setdefault(p, {})
            for key, vec in table.items():
                tbl[key] = dict(vec)
    return Bimodule(m1.base, spaces, action)


# ---------------------------------------------------------------------------
# square-zero extensions


def square_zero_extension(c: AInfCategory, m: Bimodule, shift: int) -> AInfCategory:
    """The category C + M[shift]: module labels lowered in degree by the
    shift, action entries twisted by the Koszul sign of sliding the shift
    line past the arguments, products of two module elements zero."""
    if m.base is not c and not m.base.tables_equal(c):
        raise HochschildError("bimodule is not over the given category")
    field = c.field
    hom = {}
    for (x, y), sp in c.hom.items():
        msp = m.spaces[(x, y)]
        hom[(x, y)] = GradedSpace(
            sp.labels + msp.labels,
            sp.degrees + tuple(d - shift for d in msp.degrees),
        )
    mult: dict = {}
    for p, table in c.mult.items():
        mult[p] = {key: dict(vec) for key, vec in table.items()}
    for p, table in m.action.items():
        tbl = mult.setdefault(p, {})
        for key, vec in table.items():
            slot = next(i for i, lab in enumerate(key) if lab in m._info)
            prefix_deg = sum(c.deg(lab) for lab in key[:slot])
            exp = (shift * (p + prefix_deg)) % 2
            if exp:
                vec = {lab: field.neg(co) for lab, co in vec.items()}
            tbl[key] = dict(vec)
    return AInfCategory(field, c.objects, hom, dict(c.units), mult)


# ---------------------------------------------------------------------------
# cochains


class HochschildCochain:
    """Multilinear normalized map from composable n-tuples into a bimodule.

    ``table`` maps composable tuples of base basis labels to sparse module
    vectors; for arity 0 it maps object labels to vectors in M(x, x).  The
    internal degree (output degree minus the sum of input degrees) must be
    constant across the table.
    """

    def __init__(self, base: AInfCategory, module: Bimodule, arity: int,
                 table: dict, internal_degree: int | None = None,
                 enforce_normalized: bool = True):
        if arity < 0:
            raise HochschildError("cochain arity must be >= 0")
        self.base = base
        self.module = module
        self.arity = arity
        clean = {}
        seen_internal = set()
        for key, vec in table.items():
            out = {lab: c for lab, c in vec.items() if c != 0}
            if not out:
                continue
            if arity == 0:
                if key not in base.objects:
                    raise HochschildError(f"arity-0 cochain keyed by unknown object {key!r}")
                for lab in out:
                    if (module.src(lab), module.tgt(lab)) != (key, key):
                        raise HochschildError(f"arity-0 value {lab!r} not in M({key!r},{key!r})")
                    seen_internal.add(module.deg(lab))
                clean[key] = out
                continue
            key = tuple(key)
            if len(key) != arity:
                raise HochschildError(f"key {key} has wrong arity")
            for lab in key:
                if lab not in base._info:
                    raise HochschildError(f"unknown base label {lab!r} in cochain")
            if any(base.src(key[u]) != base.tgt(key[u + 1]) for u in range(arity - 1)):
                raise HochschildError(f"cochain key {key} is not composable")
            if enforce_normalized and any(base.is_unit(lab) for lab in key):
                raise HochschildError(f"cochain not normalized: unit argument in {key}")
            pair = (base.src(key[-1]), base.tgt(key[0]))
            in_deg = sum(base.deg(lab) for lab in key)
            for lab in out:
                if (module.src(lab), module.tgt(lab)) != pair:
                    raise HochschildError(f"cochain output {lab!r} in wrong module slot")
                seen_internal.add(module.deg(lab) - in_deg)
            clean[key] = out
        if len(seen_internal) > 1:
            raise HochschildError(f"cochain has mixed internal degrees {sorted(seen_internal)}")
        if internal_degree is None:
            internal_degree = seen_internal.pop() if seen_internal else 0
        elif seen_internal and seen_internal != {internal_degree}:
            raise HochschildError("declared internal degree does not match the table")
        self.internal_degree = internal_degree
        self.table = clean
        self.normalized = all(
            not any(base.is_unit(lab) for lab in key)
            for key in clean
            if arity > 0
        )

    def is_zero(self) -> bool:
        return not self.table

    def apply(self, args) -> dict:
        """Multilinear evaluation on sparse base elements (arity >= 1)."""
        if self.arity == 0:
            raise HochschildError("arity-0 cochains are indexed by objects")
        field = self.base.field
        out: dict = {}
        for combo in itertools.product(*[list(a.items()) for a in args]):
            key = tuple(lab for lab, _ in combo)
            entry = self.table.get(key)
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

    def value_at_object(self, x) -> dict:
        if self.arity != 0:
            raise HochschildError("not an arity-0 cochain")
        return dict(self.table.get(x, {}))


# ---------------------------------------------------------------------------
# the differential


def hochschild_differential(phi: HochschildCochain) -> HochschildCochain:
    """Arity-(n+1) component of the commutator with the structure maps.

    Signs follow the same (-1)^(r+st) and Koszul conventions as the relation
    checker, the cochain slot counting as an operator of parity n + d; the
    overall sign is chosen so that degree-0 associative inputs reproduce the
    classical alternating formula.  The module-side products go through the
    square-zero extension at the shift n - 2 used by deformations.
    """
    base = phi.base
    module = phi.module
    field = base.field
    n = phi.arity
    d = phi.internal_degree
    ext = square_zero_extension(base, module, n - 2)
    phi_parity = (n + d) % 2

    table: dict = {}
    for labels in base.composable_tuples(n + 1):
        if any(base.is_unit(lab) for lab in labels):
            continue
        degs = [base.deg(lab) for lab in labels]
        total: dict = {}

        def acc(vec, exp):
            sgn = field.one if exp % 2 == 0 else field.neg(field.one)
            for lab, c in vec.items():
                v = field.add(total.get(lab, field.zero), field.mul(sgn, c))
                if v == 0:
                    total.pop(lab, None)
                else:
                    total[lab] = v

        if n >= 1:
            # inner m_2 window, outer cochain: r + 2 + t = n + 2, outer arity n
            for r in range(n):
                t = n - 1 - r
                inner = base.apply_labels(2, labels[r:r + 2])
                if not inner:
                    continue
                exp = r + 2 * t + 2 * sum(degs[:r])
                args = (
                    [{lab: field.one} for lab in labels[:r]]
                    + [inner]
                    + [{lab: field.one} for lab in labels[r + 2:]]
                )
                acc(phi.apply(args), exp)
            # inner cochain (window size n), outer m_2 of the extension
            # (r, t) = (0, 1)
            win = phi.apply([{lab: field.one} for lab in labels[:n]])
            if win:
                term = ext.apply(2, [win, {labels[n]: field.one}])
                acc(term, 0 + n * 1)
            # (r, t) = (1, 0)
            win = phi.apply([{lab: field.one} for lab in labels[1:]])
            if win:
                term = ext.apply(2, [{labels[0]: field.one}, win])
                acc(term, 1 + phi_parity * degs[0])
        else:
            # arity-0 cochain inserted into m_2 at either slot
            lab = labels[0]
            left = phi.value_at_object(base.tgt(lab))
            if left:
                acc(ext.apply(2, [left, {lab: field.one}]), 0)
            right = phi.value_at_object(base.src(lab))
            if right:
                acc(ext.apply(2, [{lab: field.one}, right]), 1 + phi_parity * degs[0])

        if total:
            # overall sign: minus the raw commutator defect
            table[labels] = {lab: field.neg(c) for lab, c in total.items()}

    return HochschildCochain(
        base, module, n + 1, table, internal_degree=d, enforce_normalized=False
    )


def is_cocycle(phi: HochschildCochain) -> bool:
    return hochschild_differential(phi).is_zero()


# ---------------------------------------------------------------------------
# deformations


def deform_by_cocycle(c: AInfCategory, m: Bimodule, eta: HochschildCochain) -> AInfCategory:
    """The square-zero extension with m_n augmented by eta on pure-C inputs.

    Requires eta normalized with internal degree 0, so the added component
    has operator degree 2 - n at the shift n - 2.  The result satisfies the
    defining relations iff eta is a Hochschild cocycle.
    """
    if eta.base is not c and not eta.base.tables_equal(c):
        raise HochschildError("cochain is not over the given category")
    if eta.arity < 1:
        raise HochschildError("deformations need cochain arity >= 1")
    if eta.internal_degree != 0:
        raise HochschildError(
            f"cocycle internal degree {eta.internal_degree} does not match the "
            f"shift {eta.arity - 2}"
        )
    if not eta.normalized:
        raise HochschildError("deformation requires a normalized cochain")
    ext = square_zero_extension(c, m, eta.arity - 2)
    mult = {p: {key: dict(vec) for key, vec in table.items()} for p, table in ext.mult.items()}
    tbl = mult.setdefault(eta.arity, {})
    for key, vec in eta.table.items():
        entry = tbl.setdefault(key, {})
        for lab, co in vec.items():
            v = c.field.add(entry.get(lab, c.field.zero), co)
            if v == 0:
                entry.pop(lab, None)
            else:
                entry[lab] = v
        if not entry:
            del tbl[key]
    if not tbl:
        del mult[eta.arity]
    return AInfCategory(ext.field, ext.objects, ext.hom, dict(ext.units), mult)


def deform_unchecked(c: AInfCategory, m: Bimodule, eta: HochschildCochain) -> AInfCategory:
    """Deformation wiring without the normalization gate (for exhibiting how
    non-normalized cochains break strict unitality)."""
    ext = square_zero_extension(c, m, eta.arity - 2)
    mult = {p: {key: dict(vec) for key, vec in table.items()} for p, table in ext.mult.items()}
    tbl = mult.setdefault(eta.arity, {})
    for key, vec in eta.table.items():
        entry = tbl.setdefault(key, {})
        for lab, co in vec.items():
            v = c.field.add(entry.get(lab, c.field.zero), co)
            if v == 0:
                entry.pop(lab, None)
            else:
                entry[lab] = v
    return AInfCategory(ext.field, ext.objects, ext.hom, dict(ext.units), mult)


# ---------------------------------------------------------------------------
# coboundaries deform trivially


def coboundary_trivialization(c: AInfCategory, m: Bimodule, phi: HochschildCochain) -> bool:
    """Verify the explicit change of coordinates killing the deformation by
    d(phi): the functor from the deformed extension to the plain one whose
    first component is the identity and whose component at arity phi.arity
    is (-1)^(arity+1) * phi satisfies the functor equations bit-exactly.
    (For arity 1 the two components merge into the map 1 + phi.)
    """
    eta = hochschild_differential(phi)
    deformed = deform_by_cocycle(c, m, HochschildCochain(
        c, m, eta.arity, eta.table, internal_degree=0))
    plain = square_zero_extension(c, m, eta.arity - 2)
    q = phi.arity
    if q % 2 == 0:
        field = c.field
        phi = HochschildCochain(
            c, m, q,
            {k: {l: field.neg(v) for l, v in e.items()} for k, e in phi.table.items()},
            internal_degree=phi.internal_degree,
        )
    return _verify_functor(deformed, plain, phi, q)


def _bar_exp(degs) -> int:
    p = len(degs)
    return sum((p - u) * (degs[u - 1] - 1) for u in range(1, p)) % 2


def _verify_functor(src: AInfCategory, tgt: AInfCategory, phi: HochschildCochain, q: int) -> bool:
    """Check the suspended functor equations for F = (id, ..., phi at q)."""
    field = src.field
    module = phi.module

    def f_apply(k, labels, degs):
        """Suspended component applied to suspended basis inputs; returns a
        sparse element together with its uniform degree, or None."""
        out: dict = {}
        if k == 1:
            lab = labels[0]
            out[lab] = field.one
            if q == 1:
                for ml, c in phi.table.get((lab,), {}).items():
                    out[ml] = field.add(out.get(ml, field.zero), c)
            return out, degs[0]
        if k != q or q == 1:
            return None
        if any(lab not in src._info or lab not in phi.base._info for lab in labels):
            return None
        val = phi.table.get(tuple(labels))
        if not val:
            return None
        sgn = _bar_exp(degs)
        # the ambient extension places M at shift q - 1 (= eta.arity - 2)
        out_deg = sum(degs) + phi.internal_degree - (q - 1)
        vec = dict(val) if sgn == 0 else {l: field.neg(cc) for l, cc in val.items()}
        return vec, out_deg

    bound = max(src.arity_bound, tgt.arity_bound) + q - 1
    for nn in range(1, bound + 1):
        for labels in src.composable_tuples(nn):
            degs = [src.deg(l) for l in labels]
            lhs: dict = {}
            rhs: dict = {}

            def add(side, vec, exp):
                sgn = field.one if exp % 2 == 0 else field.neg(field.one)
                for lab, cc in vec.items():
                    v = field.add(side.get(lab, field.zero), field.mul(sgn, cc))
                    if v == 0:
                        side.pop(lab, None)
                    else:
                        side[lab] = v

            # LHS: F-hat after one insertion of a source operation
            for r in range(nn):
                for s in range(1, nn - r + 1):
                    t = nn - r - s
                    k = r + 1 + t
                    inner = src.apply_labels(s, tuple(labels[r:r + s]))
                    if not inner:
                        continue
                    inner_deg = sum(degs[r:r + s]) + 2 - s
                    bconv = _bar_exp(degs[r:r + s])
                    koszul = sum(dd - 1 for dd in degs[:r])
                    # expand F-hat_k on (prefix, inner, suffix) multilinearly
                    for ml, mc in inner.items():
                        new_labels = labels[:r] + (ml,) + labels[r + s:]
                        new_degs = degs[:r] + [inner_deg] + degs[r + s:]
                        res = f_apply(k, new_labels, new_degs)
                        if res is None:
                            continue
                        vec, _ = res
                        scaled = {l: field.mul(mc, cc) for l, cc in vec.items()}
                        add(lhs, scaled, bconv + koszul)

            # RHS: a target operation applied to F-hat blocks
            for qq in range(1, nn + 1):
                for sizes in _compositions(nn, qq, {1, q} if q > 1 else {1}):
                    pos = 0
                    blocks = []
                    ok = True
                    for sz in sizes:
                        blk_labels = labels[pos:pos + sz]
                        blk_degs = degs[pos:pos + sz]
                        res = f_apply(sz, list(blk_labels), blk_degs)
                        if res is None:
                            ok = False
                            break
                        blocks.append(res)
                        pos += sz
                    if not ok:
                        continue
                    for combo in itertools.product(*[list(v.items()) for v, _ in blocks]):
                        coeff = field.one
                        for _, cc in combo:
                            coeff = field.mul(coeff, cc)
                        key = tuple(lab for lab, _ in combo)
                        entry = tgt.mult.get(qq, {}).get(key)
                        if not entry:
                            continue
                        block_degs = [dd for _, dd in blocks]
                        bconv = _bar_exp(block_degs)
                        scaled = {l: field.mul(coeff, cc) for l, cc in entry.items()}
                        add(rhs, scaled, bconv)

            if lhs != rhs:
                return False
    return True


def _compositions(total, parts, allowed):
    """All ordered tuples of ``parts`` sizes from ``allowed`` summing to total."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in allowed:
        if first <= total - (parts - 1) * min(allowed):
            for rest in _compositions(total - first, parts - 1, allowed):
                yield (first,) + rest
