from fractions import Fraction

import pytest

from ainfbench import (
    GradedSpace,
    QQ,
    algebra,
    category,
    check_stasheff,
    full_subcategory,
    opposite,
    validate_structure,
)
from ainfbench.ainf import stasheff_defect

from .corpus import (
    ASSOCIATIVE_CORPUS,
    dual_numbers,
    nonassociative_example,
    path_algebra_a3,
    toy_algebra,
    unital_m2,
    upper_triangular_2,
)
from .oracles import naive_stasheff_holds, naive_stasheff_sum

F = Fraction


def test_validate_dual_numbers():
    report = validate_structure(dual_numbers())
    assert report.passed
    assert report.check("minimality").passed


def test_validate_broken_unit_has_witness():
    # same algebra but with m_2(1, e) redefined to zero
    m2 = unital_m2(["1", "e"], "1", {})
    del m2[("1", "e")]
    broken = algebra(QQ, [("1", 0), ("e", 0)], "1", {2: m2})
    report = validate_structure(broken)
    assert not report.passed
    units = report.check("units")
    assert not units.passed
    assert {"arity": 2, "tuple": ["1", "e"], "reason": "m_2(1,f) != f"} in units.witnesses


def test_validate_toy():
    toy = toy_algebra()
    report = validate_structure(toy)
    assert report.passed
    assert report.check("minimality").passed
    assert toy.arity_bound == 3


def test_degree_violation_detected():
    # an arity-2 product landing in the wrong degree
    bad = algebra(
        QQ,
        [("1", 0), ("e", 0), ("t", -1)],
        "1",
        {2: unital_m2(["1", "e", "t"], "1", {("e", "e"): {"t": 1}})},
    )
    report = validate_structure(bad)
    assert not report.check("degrees").passed


@pytest.mark.parametrize("name,make", ASSOCIATIVE_CORPUS)
def test_stasheff_passes_associative_corpus(name, make):
    cat = make()
    assert validate_structure(cat).passed
    report = check_stasheff(cat)
    assert report.passed, report.to_json()


def test_stasheff_toy_all_arities():
    toy = toy_algebra()
    report = check_stasheff(toy)  # default bound 2*3 - 1 = 5
    assert report.passed
    assert report.check("stasheff_n5") is not None


def test_stasheff_toy_matches_naive_oracle():
    toy = toy_algebra()
    for n in range(1, 6):
        for labels in toy.composable_tuples(n):
            assert stasheff_defect(toy, labels) == naive_stasheff_sum(toy, labels)
    assert naive_stasheff_holds(toy, 5) == []


def test_stasheff_nonassociative_witness():
    bad = nonassociative_example()
    report = check_stasheff(bad, n_max=3)
    assert not report.passed
    n3 = report.check("stasheff_n3")
    assert not n3.passed
    tuples = [tuple(w["tuple"]) for w in n3.witnesses]
    assert ("x", "x", "x") in tuples
    # oracle agrees on the witness
    failures = naive_stasheff_holds(bad, 3)
    assert any(labels == ("x", "x", "x") for _, labels, _ in failures)


def test_stasheff_parallel_matches_serial():
    toy = toy_algebra()
    serial = check_stasheff(toy, n_max=4)
    parallel = check_stasheff(toy, n_max=4, jobs=2)
    assert serial.to_json() == parallel.to_json()


def test_opposite_commutative_algebra_fixed():
    alg = dual_numbers()
    assert opposite(alg).tables_equal(alg)


def test_opposite_involution_bit_exact():
    for make in (toy_algebra, path_algebra_a3, upper_triangular_2):
        cat = make()
        assert opposite(opposite(cat)).tables_equal(cat)


def test_opposite_transposes_hom_dims():
    # upper-triangular 2x2 matrices as the path category of v1 -> v2
    hom = {
        ("v1", "v1"): GradedSpace(("e1",), (0,)),
        ("v2", "v2"): GradedSpace(("e2",), (0,)),
        ("v1", "v2"): GradedSpace(("a",), (0,)),
    }
    m2 = {
        ("e1", "e1"): {"e1": F(1)},
        ("e2", "e2"): {"e2": F(1)},
        ("e2", "a"): {"a": F(1)},
        ("a", "e1"): {"a": F(1)},
    }
    cat = category(QQ, ("v1", "v2"), hom, {"v1": "e1", "v2": "e2"}, {2: m2})
    op = opposite(cat)
    assert op.hom[("v2", "v1")].dim == 1
    assert op.hom[("v1", "v2")].dim == 0
    assert check_stasheff(op).passed


def test_opposite_preserves_stasheff_on_toy():
    assert check_stasheff(opposite(toy_algebra())).passed


def test_opposite_preserves_stasheff_on_quotient_category():
    # a multi-object category with odd degrees and genuinely asymmetric
    # tables: the quotient category of the filtered three-dimensional algebra
    from ainfbench.auslander import build_auslander
    from ainfbench.filtration import appendix_filtration

    toy = toy_algebra()
    filt, _ = appendix_filtration(toy, kappa=1)
    gamma = build_auslander(toy, filt).gamma
    op = opposite(gamma)
    assert not op.tables_equal(gamma)
    assert validate_structure(op).passed
    assert check_stasheff(op).passed
    assert opposite(op).tables_equal(gamma)


def test_opposite_preserves_stasheff_on_shifted_extension():
    # odd-degree module part: shift 1 puts the square-zero copy in degree -1
    from ainfbench.hochschild import diagonal_bimodule, square_zero_extension

    ext = square_zero_extension(dual_numbers(), diagonal_bimodule(dual_numbers()), 1)
    op = opposite(ext)
    assert check_stasheff(op).passed
    assert opposite(op).tables_equal(ext)


def test_full_subcategory_restrictions():
    cat = path_algebra_a3()
    sub = full_subcategory(cat, ("v1",))
    assert sub.objects == ("v1",)
    assert sub.total_dim() == 1
    same = full_subcategory(cat, cat.objects)
    assert same.tables_equal(cat)
    with pytest.raises(Exception):
        full_subcategory(cat, ("nope",))


def test_full_subcategory_direct_factor():
    hom = {
        ("u", "u"): GradedSpace(("eu",), (0,)),
        ("v", "v"): GradedSpace(("ev",), (0,)),
    }
    m2 = {("eu", "eu"): {"eu": F(1)}, ("ev", "ev"): {"ev": F(1)}}
    cat = category(QQ, ("u", "v"), hom, {"u": "eu", "v": "ev"}, {2: m2})
    sub = full_subcategory(cat, ("u",))
    assert sub.total_dim() == 1
    assert check_stasheff(sub).passed


def test_unit_normalization_invariant():
    toy = toy_algebra()
    for p, table in toy.mult.items():
        if p == 2:
            continue
        for key in table:
            assert not any(toy.is_unit(lab) for lab in key)
