import numpy as np
import pytest

from equirank import (
    BudgetExceeded,
    DomainError,
    GSet,
    Subgroup,
    alpha_by_moebius,
    build_lattice,
    burnside_orbit_count,
    coset_action,
    decompose,
    disjoint_union,
    make_cyclic,
    make_symmetric,
    restrict_to_invariant,
    trivial_gset,
)
import oracles

S3_DISPLAY = [0, 2, 5, 1, 4, 3]   # element order used when reading configurations


def shift_gset(G, q, display=None):
    display = display if display is not None else list(range(G.order))
    act = oracles.shift_action_table(G.mul, G.inv, q, display)
    return GSet(G, act, name=f"{G.name} shift q={q}")


def test_action_validation():
    Z2 = make_cyclic(2)
    with pytest.raises(DomainError):
        GSet(Z2, np.array([[1, 0], [0, 1]]))          # identity must act trivially
    with pytest.raises(DomainError):
        GSet(Z2, np.array([[0, 1, 2], [1, 2, 0]]))    # order-2 element acting with order 3
    with pytest.raises(DomainError):
        GSet(Z2, np.array([[0, 1], [0, 5]]))          # out of range
    with pytest.raises(BudgetExceeded):
        trivial_gset(make_cyclic(100), 20_000)


def test_orbits_and_stabilizers_against_oracle(zoo):
    for name in ("Z6", "S3", "D4", "Q8"):
        G = zoo[name]
        L = build_lattice(G)
        parts = [coset_action(G, s) for s in L.subgroups]
        X = parts[0]
        for p in parts[1:]:
            X = disjoint_union(X, p)
        assert [set(o) for o in X.orbits] == \
            [set(o) for o in oracles.orbit_partition(X.action)]
        for x in range(X.size):
            assert X.stabilizer(x).elements == oracles.stabilizer_of(X.action, x)
        assert burnside_orbit_count(X) == oracles.burnside_count(X.action) == len(X.orbits)


def test_fix_against_oracle(zoo):
    G = zoo["D4"]
    X = shift_gset(G, 2)
    L = build_lattice(G)
    for s in L.subgroups:
        assert X.fix(s.elements) == oracles.fixed_points(X.action, s.elements)


def test_coset_action_basics(zoo):
    G = zoo["S3"]
    L = build_lattice(G)
    for s in L.subgroups:
        ca = coset_action(G, s)
        assert ca.size == G.order // s.order
        assert len(ca.orbits) == 1
        # the point holding the subgroup itself is index 0 and has stabilizer H
        assert ca.stabilizer(0).elements == s.elements


def test_z6_shift_boxes():
    X = shift_gset(make_cyclic(6), 2)
    D = decompose(X)
    assert [len(b) for b in D.boxes] == [54, 6, 2, 2]
    assert D.alpha == (9, 2, 1, 2)
    assert D.kappa == (2,)
    assert D.boxes[1] == (9, 18, 27, 36, 45, 54)
    assert D.boxes[2] == (21, 42)
    assert D.boxes[3] == (0, 63)
    free_minima = [o[0] for o in D.orbits_in_box(0)]
    assert free_minima == [1, 3, 5, 7, 11, 13, 15, 23, 31]
    assert [D.box_subgroup(i).elements for i in range(4)] == [
        (0,), (0, 3), (0, 2, 4), (0, 1, 2, 3, 4, 5)]


def test_s3_shift_boxes():
    X = shift_gset(make_symmetric(3), 2, display=S3_DISPLAY)
    D = decompose(X)
    assert [len(b) for b in D.boxes] == [42, 18, 2, 2]
    assert D.alpha == (7, 6, 1, 2)
    assert D.kappa == (2,)
    assert D.boxes[2] == (28, 35)
    assert D.boxes[3] == (0, 63)
    assert X.stabilizer(28).elements == (0, 3, 4)
    assert X.stabilizer(5).elements == (0, 2)
    assert D.sub_boxes[1] == {
        1: (9, 18, 27, 36, 45, 54),     # fixed pointwise by (1 2)
        2: (5, 10, 15, 48, 53, 58),     # by (0 1)
        3: (6, 17, 23, 40, 46, 57),     # by (0 2)
    }
    assert [o[0] for o in D.orbits_in_box(0)] == [1, 3, 7, 11, 19, 29, 31]
    assert [D.expected_aut_orbits(i) for i in range(4)] == [1, 3, 1, 1]
    assert [len(D.sub_boxes[i]) for i in range(4)] == [1, 3, 1, 1]


def test_alpha_moebius_matches_direct(zoo):
    for name, G in zoo.items():
        if G.order > 6:
            continue
        X = shift_gset(G, 2)
        D = decompose(X)
        for i in range(D.n_boxes):
            assert alpha_by_moebius(D, i) == D.alpha[i]


def test_alpha_moebius_on_unions(zoo):
    G = zoo["S3"]
    L = build_lattice(G)
    X = disjoint_union(coset_action(G, L.subgroups[1]),
                       coset_action(G, L.subgroups[2]))
    D = decompose(X, L)
    assert D.alpha == (2,)
    assert alpha_by_moebius(D, 0) == 2
    assert D.kappa == ()


def test_burnside_on_random_unions(zoo):
    rng = np.random.default_rng(7)
    for name in ("Z4", "S3", "D4"):
        G = zoo[name]
        L = build_lattice(G)
        for _ in range(10):
            picks = rng.integers(0, len(L.subgroups), size=rng.integers(1, 5))
            X = coset_action(G, L.subgroups[picks[0]])
            for k in picks[1:]:
                X = disjoint_union(X, coset_action(G, L.subgroups[k]))
            assert burnside_orbit_count(X) == len(X.orbits) == len(picks)


def test_restrict_to_invariant():
    X = shift_gset(make_cyclic(6), 2)
    R = restrict_to_invariant(X, [0, 63, 21, 42])
    assert R.orbits == ((0,), (1, 2), (3,))
    with pytest.raises(DomainError):
        restrict_to_invariant(X, [1, 2])              # not closed under the action
    with pytest.raises(DomainError):
        restrict_to_invariant(X, [])


def test_disjoint_union_rejects_mixed_groups():
    with pytest.raises(DomainError):
        disjoint_union(trivial_gset(make_cyclic(2), 2),
                       trivial_gset(make_cyclic(3), 2))
