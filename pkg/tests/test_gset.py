import numpy as np
import pytest

from equimon.core.corpus import named_group, regular_gset, trivial_gset
from equimon.core.group import Perm, PermutationError, Subgroup, all_subgroups, conjugate_subgroup
from equimon.core.gset import (
    ActionError,
    GSet,
    InconsistentActionError,
    MapExistence,
    box_decomposition,
    gset_from_coset_spaces,
    gset_from_generator_action,
    map_exists,
    orbit_of,
    orbits,
    points_with_stabilizer,
    stabilizer,
)


def test_generator_action_matches_coset_construction(z2, six_points):
    X = gset_from_generator_action(z2, [Perm((1, 0, 3, 2, 4, 5))])
    assert X.n_points == 6
    assert np.array_equal(X.act, six_points.act)


def test_action_table_is_read_only(six_points):
    with pytest.raises(ValueError):
        six_points.act[0, 0] = 1


def test_inconsistent_action_is_rejected(z2):
    # Z2 的生成元映到 3-轮换
    with pytest.raises(InconsistentActionError, match="inconsistent action"):
        gset_from_generator_action(z2, [Perm.from_cycles(3, (0, 1, 2))])


def test_generator_image_count_must_match(z2):
    with pytest.raises(ActionError):
        gset_from_generator_action(z2, [])


def test_generator_images_must_share_degree():
    G = named_group("Z2xZ2")
    with pytest.raises(PermutationError, match="degree mismatch"):
        gset_from_generator_action(G, [Perm.identity(2), Perm.identity(3)])


def test_invalid_action_table_is_rejected(z2):
    with pytest.raises(ActionError):
        GSet(z2, 2, np.array([[0, 1], [0, 0]]))
    with pytest.raises(ActionError):
        GSet(z2, 2, np.array([[1, 0], [0, 1]]))


def test_coset_space_argument_must_be_subgroup(s3):
    fake = Subgroup.from_indices([0, 1, 2])
    with pytest.raises(ActionError):
        gset_from_coset_spaces(s3, [fake])


def test_orbits_and_stabilizers(six_points, z2):
    assert [o.points for o in orbits(six_points)] == [(0, 1), (2, 3), (4,), (5,)]
    assert orbit_of(six_points, 3) == (2, 3)
    assert stabilizer(six_points, 0) == z2.trivial()
    assert stabilizer(six_points, 5) == z2.whole()
    assert points_with_stabilizer(six_points, z2.whole()) == (4, 5)


def test_coset_space_sizes(d4):
    X = regular_gset("D4").gset
    assert X.n_points == 8
    assert len(orbits(X)) == 1
    assert trivial_gset(4).gset.n_points == 4


def test_stabilizer_of_translate_is_conjugate(d4):
    X = gset_from_coset_spaces(d4, all_subgroups(d4))
    for x in range(X.n_points):
        Gx = stabilizer(X, x)
        for g in range(d4.order):
            assert stabilizer(X, X.image(g, x)) == conjugate_subgroup(d4, Gx, int(d4.inv[g]))


def test_box_decomposition_of_six_points(six_point_boxes):
    B = six_point_boxes
    assert B.class_ids == (0, 1)
    assert B.alpha == {0: 2, 1: 2}
    assert B.indices == {0: 2, 1: 1}
    assert B.leq(0, 1) and not B.leq(1, 0)
    assert B.leq(0, 0) and B.leq(1, 1)
    assert B.covering_relations() == [(0, 1)]
    assert [o.points for o in B.orbits_in(1)] == [(4,), (5,)]


def test_box_decomposition_of_regular_action(regular_s3, s3):
    B = box_decomposition(regular_s3)
    assert len(B.classes) == 1
    assert B.representative(B.class_ids[0]) == s3.trivial()
    assert B.alpha[B.class_ids[0]] == 1
    assert B.indices[B.class_ids[0]] == 6
    assert B.covering_relations() == []


def test_map_existence(six_points):
    assert map_exists(six_points, 0, 2) == MapExistence.ISO
    assert map_exists(six_points, 0, 4) == MapExistence.HOM
    assert map_exists(six_points, 4, 0) == MapExistence.NONE
