import itertools

import pytest
from hypothesis import given, settings, strategies as st

from orthinv.constructions import (
    FamilySpec,
    block_profile,
    build_db_sum,
    build_pf_gram,
    construct,
    construct_combinatorial,
    gram_matrix,
    monomial_sign,
    permutation_sign,
    shuffles,
)
from orthinv.errors import ArityParity, InvalidSpec, NotMultilinear
from orthinv.polynomial import Polynomial, monomial, x, y, z
from orthinv.quadratic import QuadraticSpace, bilinear_form, determinant_d
from orthinv.ring import GF2, ZZ

from test_quadratic import matching_pfaffian

GRID_G = [(2, 2), (2, 4), (2, 6), (3, 2), (3, 4), (4, 4), (4, 6), (5, 4)]
GRID_H = [(3, 3), (3, 5), (4, 4), (4, 6), (5, 5)]
GRID_F = [(4, 4), (4, 6)]


def B(space, i, j):
    return bilinear_form(space, i, j)


def test_monomial_sign_examples():
    assert monomial_sign(monomial(x(1, 1), y(1, 2))) == 1
    assert monomial_sign(monomial(x(1, 1), z(2))) == -1
    assert monomial_sign(monomial(x(2, 1), y(2, 2), x(1, 3), y(1, 4))) == 1


def test_monomial_sign_rejects_repeated_slot():
    with pytest.raises(NotMultilinear):
        monomial_sign(monomial(x(1, 1), y(1, 1)))


@given(st.permutations(range(1, 6)))
def test_permutation_sign_matches_inversion_parity(perm):
    inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    assert permutation_sign(perm) == (-1) ** inversions


def test_block_profile():
    space = QuadraticSpace(5)
    prof = block_profile(monomial(y(1, 1), x(1, 2), z(3), x(2, 4), x(2, 5)), space)
    assert prof.z_count == 1
    assert prof.counts == (2, 2)
    assert prof.starts == ("y", None)
    assert not prof.all_alternating()


def test_pf_gram_small_cases():
    space = QuadraticSpace(2)
    assert build_pf_gram(space, (1, 2)) == B(space, 1, 2)
    expected = B(space, 1, 2) * B(space, 3, 4) - B(space, 1, 3) * B(space, 2, 4) + B(space, 1, 4) * B(space, 2, 3)
    pf = build_pf_gram(space, (1, 2, 3, 4))
    assert pf == expected
    assert pf.coefficient(monomial(x(1, 1), y(1, 2), x(1, 3), y(1, 4))) == 2
    with pytest.raises(ArityParity):
        build_pf_gram(space, (1, 2, 3))


@pytest.mark.parametrize("n,m", [(2, 4), (3, 4), (4, 4)])
def test_pf_gram_against_matching_expansion(n, m):
    space = QuadraticSpace(n)
    assert build_pf_gram(space, range(1, m + 1)) == matching_pfaffian(gram_matrix(space, range(1, m + 1)))


def test_shuffle_signs():
    got = {head: sign for sign, head, _ in shuffles(4, 2)}
    assert got == {(1, 2): 1, (1, 3): -1, (1, 4): 1, (2, 3): 1, (2, 4): -1, (3, 4): 1}
    assert len(list(shuffles(6, 3))) == 20


def test_db_sum_examples():
    space3 = QuadraticSpace(3)
    assert build_db_sum(space3, 3) == determinant_d(space3, (1, 2, 3))
    space = QuadraticSpace(2)
    D = lambda i, j: determinant_d(space, (i, j))  # noqa: E731
    expected = (D(1, 2) * B(space, 3, 4) - D(1, 3) * B(space, 2, 4) + D(1, 4) * B(space, 2, 3)
                + D(2, 3) * B(space, 1, 4) - D(2, 4) * B(space, 1, 3) + D(3, 4) * B(space, 1, 2))
    assert build_db_sum(space, 4) == expected
    with pytest.raises(ArityParity):
        build_db_sum(space3, 4)


def test_db_sum_drops_empty_blocks():
    space = QuadraticSpace(4)
    total = build_db_sum(space, 4)
    # pair 2 unused: four pair-1 letters
    assert total.coefficient(monomial(x(1, 1), y(1, 2), x(1, 3), y(1, 4))) == 0


def test_construct_examples():
    g22 = construct(FamilySpec.from_name("g", 2, 2))
    assert g22 == Polynomial({monomial(x(1, 1), y(1, 2)): 1, monomial(y(1, 1), x(1, 2)): 1}, GF2)
    g24 = construct(FamilySpec.from_name("g", 2, 4))
    assert g24 == Polynomial({monomial(x(1, 1), y(1, 2), x(1, 3), y(1, 4)): 1,
                              monomial(y(1, 1), x(1, 2), y(1, 3), x(1, 4)): 1}, GF2)
    h33 = construct(FamilySpec.from_name("h", 3, 3))
    assert h33 == determinant_d(QuadraticSpace(3), (1, 2, 3)).reduce_mod2()
    assert len(construct(FamilySpec.from_name("tilde-h", 3, 3))) == 6


def test_f_4x4_term_count_and_structure():
    f = construct(FamilySpec.from_name("f", 4, 4))
    assert len(f) == 16
    space = QuadraticSpace(4)
    profiles = [block_profile(mono, space) for mono in f.monomials()]
    full = [p for p in profiles if 0 not in p.counts]
    assert len(full) == 12
    assert all(p.y_first() == 1 for p in full)
    assert sum(1 for p in profiles if p.counts.count(0) == 1) == 4


def test_g_3x4_term_count():
    g = construct_combinatorial(FamilySpec.from_name("g", 3, 4))
    assert len(g) == 14
    space = QuadraticSpace(3)
    counts = sorted(block_profile(mono, space).counts[0] for mono in g.monomials())
    assert counts == [2] * 12 + [4] * 2


def test_h_odd_block_coefficient_vanishes():
    h = construct_combinatorial(FamilySpec.from_name("tilde-h", 3, 5))
    space = QuadraticSpace(3)
    assert all(block_profile(mono, space).counts[0] % 2 == 0 for mono in h.monomials())


@pytest.mark.parametrize("name,grid", [("g", GRID_G), ("h", GRID_H), ("f", GRID_F)])
def test_two_routes_agree(name, grid):
    for n, m in grid:
        for lift in ("mod2", "integer"):
            spec = FamilySpec.from_name(name, n, m).with_lift(lift)
            assert construct(spec) == construct_combinatorial(spec), str(spec)


@pytest.mark.parametrize("name,grid", [("g", GRID_G), ("h", GRID_H), ("f", GRID_F)])
def test_integer_lift_reduces_to_mod2(name, grid):
    for n, m in grid:
        spec = FamilySpec.from_name(name, n, m)
        assert construct(spec.with_lift("integer")).reduce_mod2() == construct(spec)


@pytest.mark.parametrize("n,m", [(4, 4), (4, 6)])
def test_g_equals_h_for_even_dimensions(n, m):
    assert construct(FamilySpec.from_name("g", n, m)) == construct(FamilySpec.from_name("h", n, m))


@pytest.mark.parametrize("n,m", [(4, 4), (4, 6)])
def test_f_is_half_difference(n, m):
    g = construct(FamilySpec.from_name("tilde-g", n, m))
    h = construct(FamilySpec.from_name("tilde-h", n, m))
    assert construct(FamilySpec.from_name("tilde-f", n, m)) * 2 == g - h


@pytest.mark.parametrize("name,grid", [("g", GRID_G), ("h", GRID_H), ("f", GRID_F)])
def test_outputs_are_multilinear(name, grid):
    for n, m in grid:
        p = construct(FamilySpec.from_name(name, n, m))
        assert p.is_multilinear(m)
        assert p.ring is GF2


def _move_slots(p, perm):
    mapping = {i + 1: perm[i] for i in range(len(perm))}
    return p.map_variables(lambda v: v.with_slot(mapping[v.slot]))


@given(st.permutations(range(1, 4)))
def test_determinant_family_is_alternating_in_slots(perm):
    p = construct(FamilySpec.from_name("tilde-h", 3, 3))
    assert _move_slots(p, perm) == p * permutation_sign(perm)


@pytest.mark.parametrize("name,n,m", [("f", 4, 3), ("f", 2, 4), ("g", 4, 2), ("h", 3, 4), ("g", 2, 3)])
def test_invalid_specs(name, n, m):
    with pytest.raises(InvalidSpec):
        FamilySpec.from_name(name, n, m).validate()


def test_unknown_family():
    with pytest.raises(InvalidSpec):
        FamilySpec.from_name("k", 2, 2)
