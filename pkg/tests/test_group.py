import pytest

from equimon.core.corpus import named_group
from equimon.core.group import (
    GroupTooLargeError,
    Perm,
    PermutationError,
    Subgroup,
    SubgroupEnumerationError,
    SubgroupLattice,
    all_subgroups,
    check_group_axioms,
    class_leq,
    class_of,
    compose,
    conjugacy_orbit,
    conjugate_subgroup,
    group_from_generators,
    minimal_generators,
    n_conjugacy_class,
    normalizer,
    subgroup_conjugacy_classes,
    subgroup_generated,
    u_set,
    u_union,
)


def _transposition_01(G):
    return subgroup_generated(G, [G.index_of(Perm.from_cycles(3, (0, 1)))])


def test_compose_applies_right_factor_first():
    p = Perm.from_cycles(3, (0, 1))
    q = Perm.from_cycles(3, (0, 1, 2))
    assert compose(p, q) == Perm.from_cycles(3, (1, 2))


def test_compose_rejects_degree_mismatch():
    with pytest.raises(PermutationError, match="degree mismatch"):
        compose(Perm.identity(2), Perm.identity(3))


def test_non_bijective_array_is_not_a_permutation():
    with pytest.raises(PermutationError, match="not a permutation"):
        Perm((0, 0, 1))


def test_cycle_notation_and_inverse():
    p = Perm.from_cycles(4, (0, 1, 2))
    assert str(p) == "(0 1 2)"
    assert str(Perm.identity(3)) == "()"
    assert compose(p, p.inverse()).is_identity()


@pytest.mark.parametrize("name,order", [
    ("Z1", 1), ("Z2", 2), ("Z3", 3), ("Z4", 4), ("Z2xZ2", 4), ("S3", 6), ("D4", 8), ("Z6", 6),
])
def test_named_group_orders_and_axioms(name, order):
    G = named_group(name)
    assert G.order == order
    assert check_group_axioms(G)
    assert G.elements[0].is_identity()


def test_words_evaluate_to_their_elements(d4):
    assert all(d4.evaluate_word(d4.words[i]) == i for i in range(d4.order))
    assert d4.evaluate_word([]) == 0


def test_closure_beyond_max_order_is_rejected():
    gens = [Perm.from_cycles(3, (0, 1)), Perm.from_cycles(3, (0, 1, 2))]
    with pytest.raises(GroupTooLargeError, match="group too large"):
        group_from_generators(gens, 3, max_order=5)


def test_empty_generating_set_gives_trivial_group():
    G = group_from_generators([], 4)
    assert G.order == 1
    assert G.whole() == G.trivial()


@pytest.mark.parametrize("name,n_subgroups,n_classes", [
    ("Z2", 2, 2), ("Z4", 3, 3), ("Z2xZ2", 5, 5), ("S3", 6, 4), ("D4", 10, 8), ("Z6", 4, 4),
])
def test_subgroup_counts(name, n_subgroups, n_classes):
    G = named_group(name)
    assert len(all_subgroups(G)) == n_subgroups
    assert len(subgroup_conjugacy_classes(G)) == n_classes


def test_subgroups_are_closed_and_sorted(s3):
    subgroups = all_subgroups(s3)
    assert subgroups == sorted(subgroups, key=Subgroup.sort_key)
    for H in subgroups:
        assert subgroup_generated(s3, H.indices()) == H


def test_class_representative_is_smallest_member(s3):
    for cls in subgroup_conjugacy_classes(s3):
        assert cls.representative == min(cls.members, key=Subgroup.sort_key)
        assert set(cls.members) == set(conjugacy_orbit(s3, cls.representative))


def test_class_ids_follow_size_then_mask(d4):
    classes = subgroup_conjugacy_classes(d4)
    assert [c.class_id for c in classes] == list(range(len(classes)))
    keys = [c.representative.sort_key() for c in classes]
    assert keys == sorted(keys)


def test_enumeration_refused_above_cap(s3):
    with pytest.raises(SubgroupEnumerationError, match="subgroup enumeration refused"):
        SubgroupLattice(s3, max_order=4)


def test_normalizer_of_transposition_in_s3(s3):
    H = _transposition_01(s3)
    assert normalizer(s3, H) == H
    assert normalizer(s3, s3.trivial()) == s3.whole()


def test_conjugate_subgroup_is_g_inverse_h_g(s3):
    H = _transposition_01(s3)
    g = s3.index_of(Perm.from_cycles(3, (0, 1, 2)))
    expected = {
        s3.index_of(compose(compose(s3.elements[g].inverse(), s3.elements[h]), s3.elements[g]))
        for h in H.indices()
    }
    assert set(conjugate_subgroup(s3, H, g).indices()) == expected


def test_class_leq_is_containment_up_to_conjugacy(s3):
    trivial = class_of(s3, s3.trivial())
    order_two = class_of(s3, _transposition_01(s3))
    whole = class_of(s3, s3.whole())
    assert class_leq(s3, trivial, order_two)
    assert class_leq(s3, order_two, whole)
    assert not class_leq(s3, whole, order_two)


def test_minimal_generators_generate(d4):
    for H in all_subgroups(d4):
        assert subgroup_generated(d4, minimal_generators(d4, H)) == H
    assert minimal_generators(d4, d4.trivial()) == []


def test_u_union_of_trivial_subgroup_in_s3(s3):
    # {e}, 三个二阶子群（在 N = S3 下合为一类）, A3, S3
    classes = u_union(s3, s3.trivial())
    assert sorted(len(c) for c in classes) == [1, 1, 1, 3]


def test_u_set_empty_without_overgroups(s3):
    H = _transposition_01(s3)
    A3 = subgroup_generated(s3, [s3.index_of(Perm.from_cycles(3, (0, 1, 2)))])
    assert u_set(s3, H, A3) == frozenset()
    assert u_set(s3, H, H) == frozenset({frozenset({H})})


def test_n_class_size_changes_when_only_k_is_conjugated(s3):
    # H = K = ⟨(0 1)⟩：|[K]_{N_H}| = 1，但 K 的另一个共轭在 N_H 下有两个成员
    H = _transposition_01(s3)
    N = normalizer(s3, H)
    assert len(n_conjugacy_class(s3, H, N)) == 1
    others = [K for K in conjugacy_orbit(s3, H) if K != H]
    assert all(len(n_conjugacy_class(s3, K, N)) == 2 for K in others)


def test_n_class_size_invariant_under_joint_conjugation(s3):
    for H in all_subgroups(s3):
        for K in all_subgroups(s3):
            base = len(n_conjugacy_class(s3, K, normalizer(s3, H)))
            for g in range(s3.order):
                gH = conjugate_subgroup(s3, H, g)
                gK = conjugate_subgroup(s3, K, g)
                assert len(n_conjugacy_class(s3, gK, normalizer(s3, gH))) == base


def _s4():
    return group_from_generators([Perm.from_cycles(4, (0, 1)), Perm.from_cycles(4, (0, 1, 2, 3))], 4)


@pytest.fixture(scope="module", params=["Z2", "Z3", "Z4", "Z2xZ2", "S3", "D4", "Z6", "S4"])
def small_group(request):
    return _s4() if request.param == "S4" else named_group(request.param)


def test_s4_lattice():
    G = _s4()
    assert G.order == 24
    assert len(all_subgroups(G)) == 30
    assert len(subgroup_conjugacy_classes(G)) == 11


def test_subgroup_orders_divide_group_order(small_group):
    G = small_group
    for H in all_subgroups(G):
        assert G.order % H.size == 0


def test_conjugation_preserves_order(small_group):
    G = small_group
    for H in all_subgroups(G):
        for g in range(G.order):
            assert conjugate_subgroup(G, H, g).size == H.size


def test_class_size_times_normalizer_is_group_order(small_group):
    G = small_group
    for H in all_subgroups(G):
        assert class_of(G, H).size * normalizer(G, H).size == G.order


def test_class_leq_is_a_partial_order(small_group):
    G = small_group
    classes = subgroup_conjugacy_classes(G)
    leq = {(a.class_id, b.class_id): class_leq(G, a, b) for a in classes for b in classes}
    ids = [c.class_id for c in classes]
    for a in ids:
        assert leq[a, a]
        for b in ids:
            if a != b:
                assert not (leq[a, b] and leq[b, a])
            for c in ids:
                if leq[a, b] and leq[b, c]:
                    assert leq[a, c]
