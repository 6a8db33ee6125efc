import itertools

import pytest

from huakit.catalog import field, field_moufang
from huakit.ultra import (NotAFilter, NotPrincipal, SetFamily, TooLarge,
                          UltraError, cofinite_family, is_filter,
                          is_ultrafilter, mask_of, partition_unique_member,
                          principal_family, principal_point,
                          principal_ultraproduct, set_partitions)


# ---------------------------------------------------------------------------
# filters
# ---------------------------------------------------------------------------

def test_principal_family_is_filter():
    fam = principal_family(3, [1])
    assert is_filter(fam)
    assert len(fam) == 4  # supersets of {1} inside a 3-set


def test_principal_family_larger_base_is_filter_not_ultra():
    fam = principal_family(5, [1, 3])
    assert is_filter(fam)
    assert not is_ultrafilter(fam)


def test_family_missing_superset_is_not_filter():
    base = principal_family(3, [1])
    fam = SetFamily(3, set(base.members) - {base.universe})
    assert not is_filter(fam)


def test_family_with_empty_set_is_not_filter():
    fam = SetFamily(3, set(principal_family(3, [1]).members) | {0})
    assert not is_filter(fam)


def test_family_not_closed_under_intersection():
    # {1,2} and {0,2} together with their supersets, but not {2}
    fam = SetFamily(3, [0b110, 0b101, 0b111])
    assert not is_filter(fam)


def test_cofinite_family_on_finite_set_degenerates():
    # literally the whole power set, which contains the empty set
    fam = cofinite_family(4)
    assert 0 in fam.members
    assert not is_filter(fam)
    with pytest.raises(NotAFilter):
        is_ultrafilter(fam)


def test_ultrafilter_iff_singleton_base():
    for n in (3, 4, 5):
        for size in (1, 2, 3):
            for base in itertools.combinations(range(n), size):
                fam = principal_family(n, base)
                assert is_filter(fam)
                assert is_ultrafilter(fam) == (size == 1)


def test_universe_size_cap():
    with pytest.raises(TooLarge):
        SetFamily(21, [])


def test_every_filter_on_a_finite_set_is_fixed():
    from huakit.ultra import is_fixed
    for n in (3, 4):
        for size in (1, 2, n):
            for base in itertools.combinations(range(n), size):
                fam = principal_family(n, base)
                assert is_fixed(fam)
    with pytest.raises(NotAFilter):
        is_fixed(cofinite_family(3))


# ---------------------------------------------------------------------------
# the unique-part property of partitions
# ---------------------------------------------------------------------------

def test_partition_frozen_example():
    # S = {0..4}, principal at 2; parts {0,1} | {2} | {3,4} of S: part 1 wins
    fam = principal_family(5, [2])
    parts = [mask_of(5, [0, 1]), mask_of(5, [2]), mask_of(5, [3, 4])]
    assert partition_unique_member(fam, fam.universe, parts) == 1


def test_partition_single_part():
    fam = principal_family(4, [3])
    member = mask_of(4, [1, 3])
    assert partition_unique_member(fam, member, [member]) == 0


def test_partition_validation():
    fam = principal_family(4, [0])
    with pytest.raises(UltraError):
        partition_unique_member(fam, mask_of(4, [0, 1]),
                                [mask_of(4, [0]), mask_of(4, [0, 1])])
    with pytest.raises(UltraError):
        partition_unique_member(fam, mask_of(4, [0, 1]), [mask_of(4, [0])])
    with pytest.raises(UltraError):
        partition_unique_member(fam, mask_of(4, [1, 2]), [mask_of(4, [1, 2])])


def test_partition_unique_part_exhaustive_n5():
    # every member of every principal ultrafilter on 5 points, partitioned
    # in every possible way: exactly one part always belongs to the filter
    n = 5
    for s in range(n):
        fam = principal_family(n, [s])
        for member in sorted(fam.members):
            pts = [i for i in range(n) if member >> i & 1]
            for partition in set_partitions(pts):
                masks = [mask_of(n, part) for part in partition]
                idx = partition_unique_member(fam, member, masks)
                assert s in partition[idx]
                assert sum(1 for m in masks if m in fam.members) == 1


def test_set_partitions_bell_numbers():
    assert sum(1 for _ in set_partitions(range(4))) == 15
    assert sum(1 for _ in set_partitions(range(5))) == 52


# ---------------------------------------------------------------------------
# principal points and ultraproducts
# ---------------------------------------------------------------------------

def test_principal_point():
    fam = principal_family(4, [2])
    assert principal_point(fam) == 2


def test_principal_point_rejects_nonprincipal():
    fam = principal_family(4, [1, 2])
    with pytest.raises((NotPrincipal, NotAFilter)):
        principal_point(fam)


def test_ultraproduct_identical_fields():
    structures = [field(5)] * 3
    res = principal_ultraproduct(structures, 1)
    assert res["structure"] is structures[1]
    assert res["classes"] == 5 and res["verified"]


def test_ultraproduct_mixed_fields():
    res = principal_ultraproduct([field(3), field(5), field(7)], 2)
    assert res["structure"].q == 7


def test_ultraproduct_with_setfamily_argument():
    fam = principal_family(3, [0])
    res = principal_ultraproduct([field(3), field(5), field(7)], fam)
    assert res["structure"].q == 3


def test_ultraproduct_moufang_projects_hua_tables():
    structures = [field_moufang(5), field_moufang(7)]
    res = principal_ultraproduct(structures, 0)
    assert res["structure"] is structures[0]
    assert res["verified"]


def test_ultraproduct_index_out_of_range():
    with pytest.raises(UltraError):
        principal_ultraproduct([field(3)], 2)


def test_serialisation_of_families():
    # canonical form: sorted list of sorted point lists
    fam = principal_family(3, [1])
    assert fam.sets() == [[0, 1], [0, 1, 2], [1], [1, 2]]
