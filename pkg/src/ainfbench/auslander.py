"""The quotient A-infinity category of a filtered algebra on objects 0..n-1.

Given a filtered algebra (R, F) with F^n = 0, the category Gamma has objects
the integers 0..n-1 and hom(j -> i) = F^{max(j-i,0)} / F^{n-i}, with all
products induced on the quotients by m_p of R through chosen coset
representatives.  Induced products are independent of the representatives
because of the integer inequalities checked below; the construction verifies
this empirically (strict projections plus randomized lift perturbations)
rather than assuming it.

hom dims satisfy dim Gamma(j,i) = dim F^{max(j-i,0)} - dim F^{n-i}, and
Gamma(0,0) is R itself on the nose: the generator embeds by a basis-level
identification that intertwines every product table bit-exactly.
"""

from __future__ import annotations

import itertools
import random

from .ainf import AInfCategory
from .filtration import Filtration
from .linalg import GradedSpace, quotient_space


class AuslanderError(ValueError):
    pass


class AuslanderCategory:
    """Filtered algebra together with its quotient category on 0..n-1."""

    def __init__(self, base: AInfCategory, filt: Filtration, gamma: AInfCategory, quotients: dict):
        self.base = base
        self.filtration = filt
        self.gamma = gamma
        self.quotients = quotients  # (j, i) -> QuotientPresentation

    @property
    def n(self) -> int:
        return self.filtration.n

    def hom_dims(self):
        n = self.n
        return tuple(
            tuple(self.gamma.hom[(j, i)].dim for j in range(n)) for i in range(n)
        )


def _gamma_label(j, i, lead):
    return f"g{j}>{i}:{lead}"


def build_auslander(r: AInfCategory, filt: Filtration, verify: bool = True) -> AuslanderCategory:
    """Construct Gamma; with ``verify`` the hom dimensions, index inequalities
    for the occurring tuples, and strictness of every projection are checked."""
    obj = r.objects[0]
    space = r.hom[(obj, obj)]
    field = r.field
    n = filt.n
    if n < 1:
        raise AuslanderError("filtration must have n >= 1")

    unit_vec = r.element_to_coords(r.unit_vector(obj), obj, obj)

    quotients = {}
    hom = {}
    labels_by_pair = {}
    unit_labels = {}
    for i in range(n):
        for j in range(n):
            num = filt.level(max(j - i, 0))
            den = filt.level(n - i)
            preferred = []
            if i == j and den.dim > 0:
                preferred = [unit_vec]
            q = quotient_space(num, den, preferred=preferred)
            quotients[(j, i)] = q
            labels = []
            for rep in q.reps:
                lead = next(k for k, a in enumerate(rep) if a != 0)
                labels.append(_gamma_label(j, i, space.labels[lead]))
            if len(set(labels)) != len(labels):
                raise AuslanderError("internal label collision in quotient basis")
            labels_by_pair[(j, i)] = labels
            hom[(j, i)] = GradedSpace(tuple(labels), tuple(q.degrees))
            if i == j:
                if den.dim > 0:
                    unit_labels[i] = labels[0]
                else:
                    cls = q.project(unit_vec)
                    idx = [k for k, c in enumerate(cls) if c != 0]
                    if len(idx) != 1 or cls[idx[0]] != field.one:
                        raise AuslanderError("unit class is not a quotient basis vector")
                    unit_labels[i] = labels[idx[0]]

    if verify:
        for i in range(n):
            for j in range(n):
                want = filt.level(max(j - i, 0)).dim - filt.level(n - i).dim
                if quotients[(j, i)].dim != want:
                    raise AuslanderError(
                        f"hom({j},{i}) dimension {quotients[(j, i)].dim} != {want}"
                    )

    mult: dict = {}
    for p in sorted(r.mult):
        table = {}
        for chain in itertools.product(range(n), repeat=p + 1):
            # chain = (i_1, ..., i_{p+1}); argument u lives in hom(i_{u+1} -> i_u)
            if verify and not index_inequality_telescoping(chain):
                raise AuslanderError(f"index inequality fails for {chain}")
            if verify and not index_inequality_denominators(chain, n):
                raise AuslanderError(f"denominator inequality fails for {chain}")
            pairs = [(chain[u + 1], chain[u]) for u in range(p)]
            out_q = quotients[(chain[p], chain[0])]
            out_labels = labels_by_pair[(chain[p], chain[0])]
            for combo in itertools.product(*[range(quotients[pr].dim) for pr in pairs]):
                args = []
                for (pr, k) in zip(pairs, combo):
                    rep = quotients[pr].reps[k]
                    args.append(r.coords_to_element(rep, obj, obj))
                out = r.apply(p, args)
                if not out:
                    continue
                vec = r.element_to_coords(out, obj, obj)
                coords = out_q.project_strict(vec)
                entry = {out_labels[k]: c for k, c in enumerate(coords) if c != 0}
                if entry:
                    key = tuple(
                        labels_by_pair[pr][k] for pr, k in zip(pairs, combo)
                    )
                    table[key] = entry
        if table:
            mult[p] = table

    gamma = AInfCategory(field, tuple(range(n)), hom, unit_labels, mult)
    return AuslanderCategory(r, filt, gamma, quotients)


# ---------------------------------------------------------------------------
# integer inequalities


def index_inequality_telescoping(chain) -> bool:
    """max(i_{p+1} - i_1, 0) <= sum_u max(i_{u+1} - i_u, 0)."""
    p = len(chain) - 1
    rhs = sum(max(chain[u + 1] - chain[u], 0) for u in range(p))
    return max(chain[p] - chain[0], 0) <= rhs


def index_inequality_denominators(chain, n: int) -> bool:
    """Replacing any one factor by its denominator lands in the output denominator."""
    p = len(chain) - 1
    terms = [max(chain[u + 1] - chain[u], 0) for u in range(p)]
    total = sum(terms)
    for k in range(p):
        # argument k lives in hom(i_{k+2-1} -> i_k), denominator F^{n - i_k}
        if total - terms[k] + (n - chain[k]) < n - chain[0]:
            return False
    return True


def check_index_inequalities_exhaustive(n_max: int = 8, p_max: int = 6) -> bool:
    """Pure-integer exhaustive sweep of both inequalities (vectorized).

    Subtracting n from both sides of the denominator inequality leaves
    sum_{u != k} max(i_{u+1} - i_u, 0) >= i_k - i_1, so neither inequality
    mentions n; tuples over {0..n-1} are a subset of those over {0..n_max-1},
    and one pass over the largest box is exhaustive for every n <= n_max.
    """
    import numpy as np

    n = n_max
    base = np.arange(n, dtype=np.int8)
    for p in range(1, p_max + 1):
        count = n ** (p + 1)
        cols = np.empty((p + 1, count), dtype=np.int8)
        for k in range(p + 1):
            cols[k] = np.tile(np.repeat(base, n ** (p - k)), n ** k)
        diffs = np.maximum(cols[1:] - cols[:-1], 0).astype(np.int16)
        rhs = diffs.sum(axis=0, dtype=np.int16)
        lhs = np.maximum(cols[-1] - cols[0], 0).astype(np.int16)
        if not (lhs <= rhs).all():
            return False
        drop = cols[0].astype(np.int16)
        for k in range(p):
            if not (rhs - diffs[k] >= cols[k].astype(np.int16) - drop).all():
                return False
    return True


# ---------------------------------------------------------------------------
# generator embedding


def embed_generator(a: AuslanderCategory) -> dict:
    """Basis-level identification R = Gamma(0,0) intertwining all products.

    Returns the label map R -> Gamma(0,0); raises if any table entry fails to
    match bit-exactly (which would indicate a construction bug).
    """
    r = a.base
    obj = r.objects[0]
    space = r.hom[(obj, obj)]
    q = a.quotients[(0, 0)]
    if q.denominator.dim != 0 or q.dim != space.dim:
        raise AuslanderError("Gamma(0,0) is not R on the nose")
    mapping = {}
    for k, rep in enumerate(q.reps):
        nz = [(i, c) for i, c in enumerate(rep) if c != 0]
        if len(nz) != 1 or nz[0][1] != r.field.one:
            raise AuslanderError("Gamma(0,0) representatives are not the basis of R")
        mapping[space.labels[nz[0][0]]] = a.gamma.hom[(0, 0)].labels[k]

    gamma = a.gamma
    for p in sorted(set(r.mult) | set(gamma.mult)):
        r_table = r.mult.get(p, {})
        g_table = gamma.mult.get(p, {})
        g_restricted = {
            key: vec
            for key, vec in g_table.items()
            if all(gamma.src(l) == 0 and gamma.tgt(l) == 0 for l in key)
        }
        translated = {}
        for key, vec in r_table.items():
            translated[tuple(mapping[l] for l in key)] = {
                mapping[l]: c for l, c in vec.items()
            }
        if translated != g_restricted:
            raise AuslanderError(f"generator embedding fails to intertwine m_{p}")
    return mapping


# ---------------------------------------------------------------------------
# lift independence


def verify_lift_independence(a: AuslanderCategory, trials: int = 50, rng: random.Random | None = None) -> bool:
    """Recompute random induced products with perturbed coset lifts.

    Each trial perturbs every argument's representative by a random element
    of its denominator; the projected product must be unchanged.
    """
    rng = rng or random.Random(0)
    r = a.base
    obj = r.objects[0]
    field = r.field
    n = a.n
    gamma = a.gamma

    arities = sorted(r.mult)
    if not arities:
        return True
    for _ in range(trials):
        p = rng.choice(arities)
        chain = tuple(rng.randrange(n) for _ in range(p + 1))
        pairs = [(chain[u + 1], chain[u]) for u in range(p)]
        if any(a.quotients[pr].dim == 0 for pr in pairs):
            continue
        picks = [rng.randrange(a.quotients[pr].dim) for pr in pairs]
        base_args = []
        pert_args = []
        for pr, k in zip(pairs, picks):
            q = a.quotients[pr]
            rep = q.reps[k]
            noise = [field.zero] * len(rep)
            for row in q.denominator.rows:
                c = field.of_int(rng.randint(-2, 2))
                if c != 0:
                    noise = [field.add(x, field.mul(c, y)) for x, y in zip(noise, row)]
            pert = tuple(field.add(x, y) for x, y in zip(rep, noise))
            base_args.append(r.coords_to_element(rep, obj, obj))
            pert_args.append(r.coords_to_element(pert, obj, obj))
        out_q = a.quotients[(chain[p], chain[0])]
        base_out = r.apply(p, base_args)
        pert_out = r.apply(p, pert_args)
        base_vec = r.element_to_coords(base_out, obj, obj) if base_out else (field.zero,) * out_q.ambient.dim
        pert_vec = r.element_to_coords(pert_out, obj, obj) if pert_out else (field.zero,) * out_q.ambient.dim
        if out_q.project_strict(base_vec) != out_q.project_strict(pert_vec):
            return False
    return True


# ---------------------------------------------------------------------------
# flattening (export only)


def flatten(a: AuslanderCategory) -> dict:
    """The direct-sum algebra of all hom blocks, with the unit classes as
    idempotents.  Export-only: its unit is the sum of the idempotents, which
    is not a basis element, so this does not construct an AInfCategory."""
    gamma = a.gamma
    field = gamma.field
    basis = []
    for (j, i), space in sorted(gamma.hom.items()):
        for lab, d in zip(space.labels, space.degrees):
            basis.append({"name": lab, "row": i, "col": j, "degree": d})
    mult = {}
    for p, table in sorted(gamma.mult.items()):
        entries = []
        for key in sorted(table):
            entries.append(
                {
                    "inputs": list(key),
                    "output": {l: field.unparse(c) for l, c in sorted(table[key].items())},
                }
            )
        mult[str(p)] = entries
    return {
        "objects": a.n,
        "basis": basis,
        "idempotents": [gamma.units[i] for i in range(a.n)],
        "mult": mult,
    }
