import pytest
from hypothesis import given, settings, strategies as st

from orthinv.constructions import FamilySpec, construct
from orthinv.errors import TooLarge, UnsupportedDimension
from orthinv.gf2 import GF2Matrix
from orthinv.group import INVARIANT, check_invariance, generator_family
from orthinv.partitions import perfect_matchings, restricted_growth_strings, set_partitions
from orthinv.polynomial import Polynomial, monomial, x, y, z
from orthinv.quadratic import QuadraticSpace, bilinear_form
from orthinv.ring import GF2
from orthinv.solver import (
    MultilinearColumns,
    decomposable_subspace,
    indecomposability_certificate,
    lemma_bound_audit,
    matching_products,
    multilinear_invariant_basis,
    multiplicity_in_s,
    multiplicity_in_xy,
    substitute_z_for_top_pair,
    indecomposable_range,
)


def test_bell_numbers():
    bell = [1, 1, 2, 5, 15, 52, 203, 877]
    assert [sum(1 for _ in set_partitions(m)) for m in range(8)] == bell
    assert sum(1 for _ in set_partitions(4, min_blocks=2)) == 14


@given(st.integers(1, 7))
def test_set_partitions_cover_slots(m):
    seen = set()
    for blocks in set_partitions(m):
        flat = sorted(k for b in blocks for k in b)
        assert flat == list(range(1, m + 1))
        seen.add(blocks)
    assert len(seen) == sum(1 for _ in restricted_growth_strings(m))


def test_perfect_matching_count():
    assert [sum(1 for _ in perfect_matchings(range(k))) for k in (0, 2, 4, 6)] == [1, 1, 3, 15]


@pytest.mark.parametrize("n,m,group", [(2, 1, "SO"), (4, 3, "SO"), (2, 3, "SO"), (3, 1, "SO"), (4, 1, "SO")])
def test_vanishing_spaces(n, m, group):
    assert multilinear_invariant_basis(QuadraticSpace(n), m, group).dim == 0


def test_degree_two_full_group_is_bilinear_form():
    inv = multilinear_invariant_basis(QuadraticSpace(2), 2, "O")
    assert inv.basis == [bilinear_form(QuadraticSpace(2), 1, 2, GF2)]


@pytest.mark.parametrize("n,m,group", [(2, 4, "O"), (3, 3, "SO"), (3, 4, "SO"), (4, 4, "SO"), (5, 3, "SO")])
def test_basis_elements_pass_invariance(n, m, group):
    space = QuadraticSpace(n)
    family = generator_family(space, group, "two")
    for p in multilinear_invariant_basis(space, m, group).basis:
        assert set(check_invariance(p, family).values()) == {INVARIANT}


@pytest.mark.parametrize("n,m,group", [(3, 3, "SO"), (3, 4, "SO"), (4, 2, "SO"), (4, 3, "SO"), (4, 4, "O"), (5, 3, "SO")])
def test_torus_reduction_matches_root_subgroups(n, m, group):
    """Dropping unbalanced monomials agrees with the plain root-subgroup computation."""
    space = QuadraticSpace(n)
    reduced = multilinear_invariant_basis(space, m, group)
    family = generator_family(space, group, "two", torus=False)
    full = multilinear_invariant_basis(space, m, group, weight_zero=False, family=family)
    assert reduced.dim == full.dim
    reduced_vectors = [reduced.columns.to_vector(p) for p in full.basis]
    rows = GF2Matrix(reduced_vectors, reduced.columns.ncols) if reduced_vectors else GF2Matrix.empty(reduced.columns.ncols)
    assert rows.same_rowspace(reduced.matrix)


def test_torus_marker_needed_in_dimension_two():
    space = QuadraticSpace(2)
    without = generator_family(space, "SO", "two", torus=False)
    assert without == []
    assert multilinear_invariant_basis(space, 2, "SO").dim == 2


def test_bare_generator_list_overcounts():
    space = QuadraticSpace(3)
    bare = generator_family(space, "SO", "two", torus=False, lowering=False)
    loose = multilinear_invariant_basis(space, 4, "SO", weight_zero=False, family=bare)
    assert loose.dim > multilinear_invariant_basis(space, 4, "SO").dim == 3


def test_decomposable_dim_for_two_by_four():
    space = QuadraticSpace(2)
    assert decomposable_subspace(space, 4, "O").rank() == 2
    products = matching_products(space, 4)
    assert len(products) == 3
    assert sum(products[1:], products[0]).is_zero()


def test_decomposable_empty_for_odd_three():
    assert decomposable_subspace(QuadraticSpace(3), 3, "SO").rank() == 0


@pytest.mark.parametrize("n,m", [(2, 4), (2, 6), (4, 4)])
def test_decomposable_monotone_in_group(n, m):
    space = QuadraticSpace(n)
    columns = MultilinearColumns(space, m)
    full = decomposable_subspace(space, m, "O", columns=columns)
    special = decomposable_subspace(space, m, "SO", columns=columns)
    assert special.contains_rowspace(full)


@pytest.mark.parametrize("n,m", [(4, 2), (4, 4), (5, 2), (5, 4)])
def test_full_group_invariants_are_bilinear_products(n, m):
    space = QuadraticSpace(n)
    inv = multilinear_invariant_basis(space, m, "O")
    span = GF2Matrix([inv.columns.to_vector(p) for p in matching_products(space, m)], inv.columns.ncols)
    assert inv.matrix.same_rowspace(span)


@pytest.mark.parametrize("name,n,m,dims", [
    ("g", 2, 4, (3, 2)),
    ("h", 3, 3, (1, 0)),
    ("g", 3, 4, (3, 2)),
    ("f", 4, 4, (4, 3)),
])
def test_certificates(name, n, m, dims):
    cert = indecomposability_certificate(FamilySpec.from_name(name, n, m))
    assert not cert.member
    assert cert.target_invariant and cert.in_expected_range and cert.indecomposable
    assert (cert.dim_invariant, cert.dim_decomposable) == dims
    assert cert.witness is not None and not cert.witness.is_zero()


def test_indecomposable_range_flags():
    assert indecomposable_range(FamilySpec.from_name("g", 2, 2))[0] is False
    assert indecomposable_range(FamilySpec.from_name("g", 2, 4)) [:2] == (True, "O")
    assert indecomposable_range(FamilySpec.from_name("h", 3, 3))[:2] == (True, "SO")
    assert indecomposable_range(FamilySpec.from_name("f", 4, 4))[:2] == (True, "SO")
    assert indecomposable_range(FamilySpec.from_name("h", 4, 4))[0] is False


@settings(max_examples=10, deadline=None)
@given(st.permutations(range(1, 5)))
def test_certificate_stable_under_slot_permutation(perm):
    space = QuadraticSpace(2)
    target = construct(FamilySpec.from_name("g", 2, 4))
    mapping = {i + 1: perm[i] for i in range(4)}
    moved = target.map_variables(lambda v: v.with_slot(mapping[v.slot]))
    columns = MultilinearColumns(space, 4)
    decomp = decomposable_subspace(space, 4, "O", columns=columns)
    assert not decomp.contains(columns.to_vector(moved))


def test_multiplicity_examples():
    assert multiplicity_in_xy(construct(FamilySpec.from_name("h", 3, 3))) == 2
    z12 = Polynomial.var(z(1), GF2) * Polynomial.var(z(2), GF2)
    assert multiplicity_in_xy(z12) == 0
    assert multiplicity_in_xy(construct(FamilySpec.from_name("g", 3, 4))) == 2
    assert multiplicity_in_s(construct(FamilySpec.from_name("g", 2, 4))) == 1
    assert multiplicity_in_s(bilinear_form(QuadraticSpace(2), 1, 2, GF2)) == 1


def test_substitution_image():
    space = QuadraticSpace(4)
    mono = Polynomial({monomial(x(2, 1), y(2, 2), x(1, 3), y(1, 4)): 1}, GF2)
    assert substitute_z_for_top_pair(mono, space) == Polynomial({monomial(z(1), z(2), x(1, 3), y(1, 4)): 1}, GF2)
    for m in (4, 6):
        f = construct(FamilySpec.from_name("f", 4, m))
        assert substitute_z_for_top_pair(f, space) == construct(FamilySpec.from_name("g", 3, m))
    with pytest.raises(UnsupportedDimension):
        substitute_z_for_top_pair(mono, QuadraticSpace(3))


def test_lemma_audits():
    assert lemma_bound_audit(QuadraticSpace(3), 4, "SO").ok
    assert lemma_bound_audit(QuadraticSpace(2), 4, "O").ok
    audit = lemma_bound_audit(QuadraticSpace(3), 2, "SO")
    assert audit.multiplicities and all(v == 2 for v in audit.multiplicities)


def test_size_ceiling():
    with pytest.raises(TooLarge):
        MultilinearColumns(QuadraticSpace(5), 7, ceiling=16384)


def test_ceiling_from_environment(monkeypatch):
    from orthinv.solver import default_ceiling

    monkeypatch.setenv("INVARIANT_CEILING", "100")
    assert default_ceiling() == 100
    with pytest.raises(TooLarge):
        multilinear_invariant_basis(QuadraticSpace(3), 5, "SO")
