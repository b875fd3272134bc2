import random
from fractions import Fraction

import pytest

from ainfbench import check_stasheff, full_subcategory, validate_structure
from ainfbench.auslander import (
    build_auslander,
    check_index_inequalities_exhaustive,
    embed_generator,
    flatten,
    index_inequality_telescoping,
    verify_lift_independence,
)
from ainfbench.filtration import (
    Filtration,
    appendix_filtration,
    degree_filtration,
    full_subspace,
    zero_subspace,
)

from .corpus import dual_numbers, random_filtered_algebra, toy_algebra

F = Fraction


@pytest.fixture(scope="module")
def toy_gamma():
    toy = toy_algebra()
    filt, _ = appendix_filtration(toy, kappa=1)
    return build_auslander(toy, filt)


def test_degenerate_single_object():
    alg = dual_numbers()
    filt = Filtration(alg, [full_subspace(alg), zero_subspace(alg)])
    aus = build_auslander(alg, filt)
    assert aus.n == 1
    assert aus.gamma.objects == (0,)
    assert aus.gamma.total_dim() == alg.total_dim()
    mapping = embed_generator(aus)
    assert len(mapping) == 2


def test_toy_gamma_hom_dims(toy_gamma):
    # rowwise dims of hom(j -> i), from level dims (3,2,1,1,0)
    assert toy_gamma.hom_dims() == (
        (3, 2, 1, 1),
        (2, 2, 1, 0),
        (2, 2, 2, 1),
        (1, 1, 1, 1),
    )
    assert toy_gamma.gamma.total_dim() == 23


def test_toy_gamma_valid_ainf(toy_gamma):
    gamma = toy_gamma.gamma
    assert validate_structure(gamma).passed
    report = check_stasheff(gamma)  # arity bound 3 -> n_max 5
    assert report.passed, report.to_json()


def test_toy_gamma_grading(toy_gamma):
    filt = toy_gamma.filtration
    n = toy_gamma.n
    for i in range(n):
        for j in range(n):
            num = filt.level(max(j - i, 0)).degree_dims()
            den = filt.level(n - i).degree_dims()
            want = {
                d: num.get(d, 0) - den.get(d, 0)
                for d in set(num) | set(den)
                if num.get(d, 0) - den.get(d, 0) > 0
            }
            space = toy_gamma.gamma.hom[(j, i)]
            got: dict = {}
            for d in space.degrees:
                got[d] = got.get(d, 0) + 1
            assert got == want


def test_embed_generator_toy(toy_gamma):
    mapping = embed_generator(toy_gamma)
    assert set(mapping) == {"1", "e", "t"}
    gamma00 = full_subcategory(toy_gamma.gamma, (0,))
    assert gamma00.total_dim() == 3


def test_padded_filtration_changes_gamma():
    alg = dual_numbers()
    z = zero_subspace(alg)
    padded = Filtration(alg, [full_subspace(alg), z, z])
    aus = build_auslander(alg, padded)
    assert aus.n == 2
    d = alg.total_dim()
    assert aus.hom_dims() == ((d, 0), (d, d))
    assert check_stasheff(aus.gamma).passed


def test_lift_independence_toy(toy_gamma):
    assert verify_lift_independence(toy_gamma, trials=50, rng=random.Random(42))


def test_index_inequality_single_tuples():
    assert index_inequality_telescoping((0, 3, 1, 2))
    assert index_inequality_telescoping((2, 0))
    assert index_inequality_telescoping((0, 0, 0))


def test_index_inequalities_exhaustive_small():
    assert check_index_inequalities_exhaustive(n_max=5, p_max=4)


def test_flatten_export(toy_gamma):
    flat = flatten(toy_gamma)
    assert flat["objects"] == 4
    assert len(flat["basis"]) == 23
    assert len(flat["idempotents"]) == 4
    assert "2" in flat["mult"] and "3" in flat["mult"]


def test_degree_filtration_gamma_toy():
    toy = toy_algebra()
    filt = degree_filtration(toy)
    aus = build_auslander(toy, filt)
    assert aus.n == 2
    assert aus.hom_dims() == ((3, 1), (2, 2))
    assert check_stasheff(aus.gamma).passed
    embed_generator(aus)


def test_random_filtered_gammas_pass():
    rng = random.Random(17)
    for _ in range(4):
        alg, filt = random_filtered_algebra(rng)
        aus = build_auslander(alg, filt)
        assert validate_structure(aus.gamma).passed
        assert check_stasheff(aus.gamma).passed
        assert verify_lift_independence(aus, trials=20, rng=rng)
        embed_generator(aus)
