"""Root system closure, invariants, the root poset, and weight data."""

from fractions import Fraction

import pytest

from clusterfan.roots import (
    RootPoset,
    coxeter_data,
    root_system,
    to_json_dict,
    weight_data,
)

# positives, coxeter number, exponents, |W|, all cross-checked against the
# classical closed forms (binomial counts, n!, 2^{n-1} n!, ...).
INVARIANTS = {
    "A1": (1, 2, (1,), 2),
    "A2": (3, 3, (1, 2), 6),
    "A3": (6, 4, (1, 2, 3), 24),
    "A4": (10, 5, (1, 2, 3, 4), 120),
    "A5": (15, 6, (1, 2, 3, 4, 5), 720),
    "B2": (4, 4, (1, 3), 8),
    "B3": (9, 6, (1, 3, 5), 48),
    "B4": (16, 8, (1, 3, 5, 7), 384),
    "C3": (9, 6, (1, 3, 5), 48),
    "D4": (12, 6, (1, 3, 3, 5), 192),
    "F4": (24, 12, (1, 5, 7, 11), 1152),
    "G2": (6, 6, (1, 5), 12),
}


@pytest.mark.parametrize("name", sorted(INVARIANTS))
def test_invariant_table(name):
    rs = root_system(name)
    positives, h, exponents, order = INVARIANTS[name]
    assert rs.num_positive == positives
    assert len(rs.roots) == 2 * positives
    data = coxeter_data(rs)
    assert data.coxeter_number == h
    assert data.exponents == exponents
    assert data.group_order == order
    # nh = 2|positive roots| and sum of exponents = |positive roots|
    assert rs.n * h == 2 * positives
    assert sum(exponents) == positives


def test_roots_ordered_positives_first():
    rs = root_system("B3")
    for idx in range(rs.num_positive):
        assert rs.is_positive(idx)
        assert not rs.is_positive(rs.negate(idx))
        root = rs.roots[idx]
        assert all(c >= 0 for c in root.coords)
        assert tuple(-c for c in root.coords) == rs.roots[rs.negate(idx)].coords


def test_simple_roots_sit_at_their_index():
    rs = root_system("C3")
    for i in range(rs.n):
        idx = rs.simple_index[i]
        coords = rs.roots[idx].coords
        assert coords == tuple(1 if j == i else 0 for j in range(rs.n))


def test_reflection_permutes_roots():
    rs = root_system("G2")
    for i in range(rs.n):
        perm = rs.simple_perm(i)
        assert sorted(perm) == list(range(len(rs.roots)))
        # s_i negates alpha_i and permutes the remaining positives
        assert perm[rs.simple_index[i]] == rs.negate(rs.simple_index[i])
        moved = [idx for idx in range(rs.num_positive)
                 if idx != rs.simple_index[i] and not rs.is_positive(perm[idx])]
        assert moved == []


def test_reflection_perm_is_involutive():
    rs = root_system("B3")
    for idx in range(rs.num_positive):
        perm = rs.reflection_perm(idx)
        for j in range(len(rs.roots)):
            assert perm[perm[j]] == j


def test_root_lengths_two_values():
    rs = root_system("G2")
    lengths = {root.length_half_square for root in rs.positive_roots()}
    assert lengths == {Fraction(1), Fraction(3)}
    rs = root_system("B2")
    lengths = {root.length_half_square for root in rs.positive_roots()}
    assert lengths == {Fraction(1), Fraction(2)}


def test_highest_root_heights():
    # height of the highest root is h - 1
    for name in ("A3", "B3", "D4", "G2", "F4"):
        rs = root_system(name)
        h = coxeter_data(rs).coxeter_number
        assert max(r.height for r in rs.positive_roots()) == h - 1


def test_root_poset_ranks_by_height():
    rs = root_system("A3")
    poset = RootPoset(rs)
    covers = poset.covers()
    for lo, hi in covers:
        assert rs.roots[hi].height == rs.roots[lo].height + 1
        assert poset.leq(lo, hi)
    # A3 Hasse diagram: 5 + 4 edges between heights (3,2,1) = (1,2,3) counts
    by_height = {}
    for idx in range(rs.num_positive):
        by_height.setdefault(rs.roots[idx].height, []).append(idx)
    assert {h: len(v) for h, v in by_height.items()} == {1: 3, 2: 2, 3: 1}


def test_root_poset_simple_roots_minimal():
    rs = root_system("B3")
    poset = RootPoset(rs)
    for i in range(rs.n):
        si = rs.simple_index[i]
        for idx in range(rs.num_positive):
            if idx != si:
                assert not poset.leq(idx, si)


def test_weight_data_pairings():
    rs = root_system("C3")
    wd = weight_data(rs)
    # <omega_i, alpha_j^vee> = delta_ij
    for i, weight in enumerate(wd.fundamental_weights):
        for j in range(rs.n):
            pairing = sum(weight[k] * rs.cartan[j][k] for k in range(rs.n))
            assert pairing == (1 if i == j else 0)
    # half-sum of positive coroots, recomputed from scratch
    total = [Fraction(0)] * rs.n
    for idx in range(rs.num_positive):
        for k, c in enumerate(rs.roots[idx].coroot_coords):
            total[k] += c
    assert wd.coroot_half_sum == tuple(t / 2 for t in total)


def test_json_summary_shape():
    rs = root_system("G2")
    data = to_json_dict(rs)
    assert data["type"] == "G2"
    assert data["rank"] == 2
    assert len(data["roots"]) == 12
    assert len(data["positive_roots"]) == 6
    assert data["h"] == 6
    assert data["exponents"] == [1, 5]
    assert data["group_order"] == 12


def test_reducible_system():
    rs = root_system("A1+A1")
    assert rs.num_positive == 2
    data = to_json_dict(rs)
    assert data["h"] is None
