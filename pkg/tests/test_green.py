import pytest

from semigroup_lab import (build_cyclic, build_ic, build_semilattice_chain,
                           build_tn2, direct_product, green, in_DS, in_LDS,
                           local_submonoid)
from oracles import naive_green_partitions


def test_b21_d_class_sizes(b21):
    data = green(b21)
    assert sorted(data.class_sizes(data.d_class)) == [1, 1, 4]
    # the middle class is the four matrix units
    units = [b21.labels.index(x) for x in ("E11", "E12", "E21", "E22")]
    assert len({data.d_class[u] for u in units}) == 1


def test_ic4_d_classes_all_singleton(ic4):
    data = green(ic4)
    assert data.class_sizes(data.d_class) == [1] * 42


def test_semilattice_d_classes(sl2):
    data = green(sl2)
    assert data.class_sizes(data.d_class) == [1, 1]


def test_in_ds(b21, ic4):
    assert not in_DS(b21)
    assert in_DS(ic4)
    assert in_DS(build_cyclic(6))  # any finite group: one D-class


def test_in_lds(b21, ic4, sl2):
    assert not in_LDS(b21)
    assert in_LDS(ic4)
    assert in_LDS(sl2)


def test_b2_is_lds_but_not_ds(b2):
    assert not in_DS(b2)
    assert in_LDS(b2)


def test_local_submonoid_at_identity(b21):
    local = local_submonoid(b21, b21.identity)
    assert len(local) == 6


def test_local_submonoid_at_e11(b21):
    e11 = b21.labels.index("E11")
    local = local_submonoid(b21, e11)
    assert sorted(local.labels) == ["0", "E11"]
    assert local.identity == local.labels.index("E11")


def test_local_submonoid_semilattice_is_down_set(sl3):
    for e in range(3):
        local = local_submonoid(sl3, e)
        assert sorted(local.labels) == [str(i) for i in range(1, e + 2)]


def test_local_submonoid_rejects_non_idempotent(b21):
    e12 = b21.labels.index("E12")
    with pytest.raises(ValueError, match="not an idempotent"):
        local_submonoid(b21, e12)


@pytest.mark.parametrize("builder", [
    lambda: build_ic(1), lambda: build_ic(2), lambda: build_ic(3),
    lambda: build_ic(4),
    lambda: build_cyclic(2), lambda: build_cyclic(3), lambda: build_cyclic(6),
    lambda: build_semilattice_chain(2), lambda: build_semilattice_chain(3),
    lambda: build_tn2(2), lambda: build_tn2(3),
])
def test_partitions_match_definitional_oracle(builder):
    s = builder()
    data = green(s)
    table = [[int(v) for v in row] for row in s.table]
    r_ref, l_ref, j_ref = naive_green_partitions(table)
    assert data.r_class == r_ref
    assert data.l_class == l_ref
    assert data.j_class == j_ref
    assert data.d_class == j_ref  # D = J in the finite case
    # H = R meet L, as a partition identity
    n = len(s)
    for x in range(n):
        for y in range(n):
            same_h = data.h_class[x] == data.h_class[y]
            assert same_h == (r_ref[x] == r_ref[y] and l_ref[x] == l_ref[y])


def test_b21_oracle(b21):
    table = [[int(v) for v in row] for row in b21.table]
    r_ref, l_ref, j_ref = naive_green_partitions(table)
    data = green(b21)
    assert (data.r_class, data.l_class, data.j_class) == (r_ref, l_ref, j_ref)


def test_product_d_class_count_lower_bound(b2, sl2, c2, sl3):
    for s, t in ((b2, sl2), (sl2, c2), (sl3, sl2)):
        ds = max(green(s).d_class) + 1
        dt = max(green(t).d_class) + 1
        dp = max(green(direct_product(s, t)).d_class) + 1
        assert dp >= max(ds, dt)


def test_d_class_flags(b21):
    data = green(b21)
    classes = data.d_classes()
    for cls, idem, sub in zip(classes, data.d_contains_idempotent,
                              data.d_is_subsemigroup):
        members = {b21.labels[x] for x in cls}
        if members == {"E11", "E12", "E21", "E22"}:
            assert idem and not sub
        else:
            assert idem and sub
