import random
from fractions import Fraction

import pytest

from ainfbench import GF, QQ, algebra, check_stasheff, validate_structure
from ainfbench.filtration import (
    AppendixParams,
    Filtration,
    FiltrationError,
    appendix_filtration,
    check_filtration,
    degree_filtration,
    filtration_quotient_algebra,
    full_subspace,
    nilpotency_index,
    quotient_by_ideal,
    radical,
    subspace_product,
    zero_subspace,
)
from ainfbench.linalg import Subspace

from .corpus import (
    dual_numbers,
    k_times_k,
    random_filtered_algebra,
    random_nilpotent_algebra,
    toy_algebra,
    unital_m2,
    upper_triangular_2,
)

F = Fraction


def unit_vectors(alg, labels):
    obj = alg.objects[0]
    space = alg.hom[(obj, obj)]
    vecs = []
    for lab in labels:
        v = [alg.field.zero] * space.dim
        v[space.index(lab)] = alg.field.one
        vecs.append(tuple(v))
    return vecs


def span_of(alg, labels):
    obj = alg.objects[0]
    return Subspace(alg.hom[(obj, obj)], alg.field, unit_vectors(alg, labels))


def test_trivial_filtration_passes():
    alg = dual_numbers()
    filt = Filtration(alg, [full_subspace(alg), zero_subspace(alg)])
    assert check_filtration(alg, filt).passed


def test_toy_appendix_style_filtration_passes():
    toy = toy_algebra()
    levels = [
        span_of(toy, ["1", "e", "t"]),
        span_of(toy, ["e", "t"]),
        span_of(toy, ["t"]),
        span_of(toy, ["t"]),
        zero_subspace(toy),
    ]
    filt = Filtration(toy, levels)
    assert check_filtration(toy, filt).passed


def test_bad_filtration_witness():
    toy = toy_algebra()
    levels = [
        span_of(toy, ["1", "e", "t"]),
        span_of(toy, ["1", "t"]),  # contains the unit: m_2(F^1, F^1) escapes F^2
        span_of(toy, ["t"]),
        span_of(toy, ["t"]),
        zero_subspace(toy),
    ]
    filt = Filtration(toy, levels)
    report = check_filtration(toy, filt)
    assert not report.passed
    compat = report.check("compatibility")
    assert not compat.passed
    assert any(w["tuple"] == [1, 1] for w in compat.witnesses)


def test_degree_filtration_degree_zero_algebra():
    alg = dual_numbers()
    filt = degree_filtration(alg)
    assert filt.n == 1
    assert filt.dims() == (2, 0)
    assert check_filtration(alg, filt).passed


def test_degree_filtration_toy():
    toy = toy_algebra()
    filt = degree_filtration(toy)
    assert filt.n == 2
    assert filt.dims() == (3, 1, 0)
    assert filt.levels[1] == span_of(toy, ["t"])
    assert check_filtration(toy, filt).passed


def test_degree_filtration_three_degrees():
    alg = algebra(
        QQ,
        [("1", 0), ("u", -1), ("v", -2)],
        "1",
        {2: unital_m2(["1", "u", "v"], "1", {("u", "u"): {"v": 1}})},
    )
    assert validate_structure(alg).passed and check_stasheff(alg).passed
    filt = degree_filtration(alg)
    assert filt.n == 3
    assert filt.levels[2] == span_of(alg, ["v"])
    assert check_filtration(alg, filt).passed


def test_degree_filtration_rejects_positive_degrees():
    alg = algebra(QQ, [("1", 0), ("s", 1)], "1", {2: unital_m2(["1", "s"], "1", {})})
    with pytest.raises(FiltrationError):
        degree_filtration(alg)


def test_radical_semisimple():
    assert radical(k_times_k()).dim == 0


def test_radical_dual_numbers():
    alg = dual_numbers()
    j = radical(alg)
    assert j == span_of(alg, ["e"])


def test_radical_upper_triangular():
    # trace-form kernel computed by hand: the strictly upper triangular part
    alg = upper_triangular_2()
    j = radical(alg)
    assert j.dim == 1
    assert j == span_of(alg, ["x"])


def test_radical_refuses_prime_field():
    alg = dual_numbers(GF(5))
    with pytest.raises(FiltrationError):
        radical(alg)


def test_radical_invariants_random():
    rng = random.Random(23)
    for _ in range(10):
        alg, xs, ys = random_nilpotent_algebra(rng)
        j = radical(alg)
        assert j == span_of(alg, xs + ys)
        # ideal property
        full = full_subspace(alg)
        assert j.contains_subspace(subspace_product(alg, full, j))
        assert j.contains_subspace(subspace_product(alg, j, full))
        a = nilpotency_index(alg, j)
        assert ideal_power_dim(alg, j, a) == 0
        quotient, _ = quotient_by_ideal(alg, j)
        assert radical(quotient).dim == 0


def ideal_power_dim(alg, j, k):
    from .corpus import ideal_power

    return ideal_power(alg, j, k).dim


def test_appendix_filtration_toy():
    toy = toy_algebra()
    filt, params = appendix_filtration(toy, kappa=1)
    assert isinstance(params, AppendixParams)
    assert params.radical == span_of(toy, ["e"])
    assert params.nil_index == 2
    assert params.big_n == 3
    assert filt.n == 4
    assert filt.dims() == (3, 2, 1, 1, 0)
    assert filt.levels[1] == span_of(toy, ["e", "t"])
    assert filt.levels[2] == span_of(toy, ["t"])
    assert check_filtration(toy, filt).passed
    rbar, _ = filtration_quotient_algebra(toy, filt)
    assert rbar.total_dim() == 1
    assert radical(rbar).dim == 0


def test_appendix_filtration_semisimple_trivial():
    alg = k_times_k()
    filt, params = appendix_filtration(alg, kappa=1)
    assert params.radical.dim == 0
    assert params.nil_index == 1
    assert params.big_n == 0
    assert filt.n == 1
    assert filt.dims() == (2, 0)
    assert check_filtration(alg, filt).passed


def test_appendix_filtration_nonassociative_levels():
    # Degree-0 part k[e], degree -1 part k*t with e*t = t, t*e = 0 and no
    # higher product.  This is not associative ((e*e)*t = 0 but e*(e*t) = t),
    # so the resulting level chain is NOT product-compatible; the level
    # dimensions themselves still follow the radical-power recipe.
    alg = algebra(
        QQ,
        [("1", 0), ("e", 0), ("t", -1)],
        "1",
        {2: unital_m2(["1", "e", "t"], "1", {("e", "t"): {"t": 1}})},
    )
    assert not check_stasheff(alg, n_max=3).passed  # genuinely non-associative
    filt, params = appendix_filtration(alg, kappa=1)
    assert params.nil_index == 2 and params.big_n == 3
    assert filt.n == 5
    assert filt.dims() == (3, 2, 1, 1, 1, 0)
    assert not check_filtration(alg, filt).passed


def test_appendix_filtration_semisimple_with_lower_part():
    # semisimple degree-0 part with nonzero R_{-kappa}: N is raised to 1
    alg = algebra(
        QQ,
        [("1", 0), ("t", -2)],
        "1",
        {2: unital_m2(["1", "t"], "1", {})},
    )
    filt, params = appendix_filtration(alg, kappa=2)
    assert params.nil_index == 1
    assert params.big_n == 1
    assert filt.dims() == (2, 1, 0)
    assert check_filtration(alg, filt).passed
    rbar, _ = filtration_quotient_algebra(alg, filt)
    assert radical(rbar).dim == 0


def test_appendix_rejects_bad_grading():
    toy = toy_algebra()
    with pytest.raises(FiltrationError):
        appendix_filtration(toy, kappa=2)  # t sits in degree -1, not -2


def test_appendix_rejects_prime_field():
    with pytest.raises(FiltrationError):
        appendix_filtration(toy_algebra(GF(7)), kappa=1)


def test_quotient_algebra_is_associative_unital():
    toy = toy_algebra()
    filt, _ = appendix_filtration(toy, kappa=1)
    rbar, pres = filtration_quotient_algebra(toy, filt)
    assert validate_structure(rbar).passed
    assert check_stasheff(rbar).passed
    # induced higher products vanish on the quotient here
    assert all(p == 2 for p in rbar.mult)


def test_random_filtered_algebras_pass():
    rng = random.Random(5)
    for _ in range(6):
        alg, filt = random_filtered_algebra(rng)
        assert check_filtration(alg, filt).passed
        assert 2 <= filt.n <= 5
