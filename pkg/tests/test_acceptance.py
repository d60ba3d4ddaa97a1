"""Acceptance gate: one test per criterion, each a single pass/fail line.

Expected values come from the independent routes in oracles.py or from
hand-checkable tables, frozen here; runtime bounds are asserted where a
criterion states one.
"""

import time
from math import factorial

import numpy as np
import pytest

from equirank import (
    BudgetExceeded,
    EquivariantMap,
    alpha_by_moebius,
    alpha_moebius,
    aut_generators,
    aut_group_order,
    aut_orbits_in_box,
    box_end_order,
    build_lattice,
    build_shift,
    burnside_orbit_count,
    ca_from_rule,
    closure,
    collapse_type,
    collapse_type_census,
    compose,
    coset_action,
    decompose,
    decompose_by_boxes,
    disjoint_union,
    end_monoid_order,
    enumerate_aut,
    enumerate_end,
    identity_map,
    is_elementary_collapse,
    make_cyclic,
    recompose,
    relative_rank,
    restrict_to_invariant,
    rule_from_map,
    sym_generators_check,
    trans_generators_check,
    trivial_gset,
    wreath_factorize,
    wreath_multiply,
)
from equirank.cli import parse_specs, run
from equirank.transform import DEFAULT_ENUM_BUDGET

import oracles


class _Budget:
    """Context manager asserting the block ran inside a wall-clock budget."""

    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        if exc_type is None:
            assert elapsed < self.seconds, f"took {elapsed:.1f}s, budget {self.seconds}s"
        return False


def _aut_point_classes(X, lat, decomp):
    """Actual Aut-orbits, via the group generated by the constructed bijections."""
    gens = aut_generators(X, lat, decomp)
    return oracles.orbit_classes_under([g.image for g in gens], X.size)


@pytest.fixture(scope="module")
def lattices(zoo):
    return {name: build_lattice(G) for name, G in zoo.items()}


@pytest.fixture(scope="module")
def small_pool(zoo, lattices):
    """Criterion-4 instances: five small groups, coset actions plus tiny shifts."""
    pool = []
    for name in ("Z1", "Z2", "Z3", "V4", "Z4"):
        G, lat = zoo[name], lattices[name]
        for H in lat.subgroups:
            pool.append((coset_action(G, H), lat))
    shift_qs = {"Z1": range(2, 17), "Z2": range(2, 5), "Z3": range(2, 3)}
    for name, qs in shift_qs.items():
        G, lat = zoo[name], lattices[name]
        for q in qs:
            pool.append((build_shift(G, q).gset, lat))
    return pool


def test_criterion_01_s3_shift_relative_rank():
    with _Budget(5):
        code, report = run(parse_specs(["rank", "S3", "shift:q=2"]))
    assert code == 0
    assert report["relative_rank"] == 8
    assert report["u_sizes"] == [4, 2, 2, 1]
    assert report["kappa_size"] == 1


def test_criterion_02_box_tables_z6_and_s3(zoo, lattices):
    with _Budget(5):
        z6 = build_shift(zoo["Z6"], 2).gset
        dz6 = decompose(z6, lattices["Z6"])
        assert [set(b) for b in dz6.boxes] == [
            set(range(64)) - {0, 63, 21, 42, 9, 18, 36, 27, 45, 54},
            {9, 18, 36, 27, 45, 54},
            {21, 42},
            {0, 63},
        ]
        free = dz6.orbits_in_box(0)
        assert len(dz6.boxes[0]) == 54 and len(free) == 9
        assert all(len(o) == 6 for o in free)

        s3 = build_shift(zoo["S3"], 2).gset
        ds3 = decompose(s3, lattices["S3"])
        assert set(ds3.boxes[3]) == {0, 63}
        assert set(ds3.boxes[2]) == {28, 35}
        assert len(ds3.boxes[1]) == 18
        mid = ds3.orbits_in_box(1)
        assert len(mid) == 6 and all(len(o) == 3 for o in mid)
        assert len(ds3.boxes[0]) == 42
        free3 = ds3.orbits_in_box(0)
        assert len(free3) == 7 and all(len(o) == 6 for o in free3)

        # the 18 transposition-stabilized configs split into 3 Aut-orbits
        classes = _aut_point_classes(s3, lattices["S3"], ds3)
        in_mid = [c for c in classes if c <= set(ds3.boxes[1])]
        assert len(in_mid) == 3 and all(len(c) == 6 for c in in_mid)
        assert set(in_mid) == {frozenset(p) for p in ds3.sub_boxes[1].values()}
        assert ds3.expected_aut_orbits(1) == 3


def test_criterion_03_klein_four_alpha_profile(zoo, lattices):
    X = build_shift(zoo["V4"], 2).gset
    decomp = decompose(X, lattices["V4"])
    assert decomp.alpha == (2, 1, 1, 1, 2)
    assert decomp.n_boxes == 5


def _three_way_check(X, lat):
    """Dumb oracle, representative enumeration, and order formulas must agree.

    Each route runs inside its own feasibility bound; out-of-budget routes
    must raise, and at least the formula route always reports.
    """
    decomp = decompose(X, lat)
    end_formula = end_monoid_order(X)
    aut_formula = aut_group_order(decomp)
    if X.group.order == 1:
        # for the trivial group the all-maps count is the closed form m^m
        assert end_formula == X.size ** X.size

    try:
        end_rows = {tuple(int(v) for v in r) for r in enumerate_end(X).images}
        assert len(end_rows) == end_formula
    except BudgetExceeded:
        assert end_formula > DEFAULT_ENUM_BUDGET
        end_rows = None
    try:
        aut_rows = {tuple(int(v) for v in r) for r in enumerate_aut(X).images}
        assert len(aut_rows) == aut_formula
    except BudgetExceeded:
        aut_rows = None

    if X.size <= 8 and end_formula <= 300_000 and end_rows is not None:
        oracle_rows = oracles.all_equivariant_images(X.action)
        assert end_rows == oracle_rows
        assert aut_rows == {r for r in oracle_rows if oracles.is_bijection(r)}

    for i in range(decomp.n_boxes):
        w = decomp.box_normalizer(i).order // decomp.box_subgroup(i).order
        a = decomp.alpha[i]
        box_formula = box_end_order(decomp, i)
        assert box_formula == (w ** a) * (a ** a)
        sub = restrict_to_invariant(X, decomp.boxes[i], name=f"box{i}")
        try:
            sub_rows = {tuple(int(v) for v in r) for r in enumerate_end(sub).images}
            assert len(sub_rows) == box_formula
            if sub.size <= 8 and box_formula <= 300_000:
                assert sub_rows == oracles.all_equivariant_images(sub.action)
        except BudgetExceeded:
            assert box_formula > DEFAULT_ENUM_BUDGET
        try:
            assert enumerate_aut(sub).size == (w ** a) * factorial(a)
        except BudgetExceeded:
            pass


def test_criterion_04_oracle_equivalence(zoo, lattices, small_pool):
    with _Budget(60):
        for X, lat in small_pool:
            _three_way_check(X, lat)

        # the binary shift of Z2, all the way through
        X = build_shift(zoo["Z2"], 2).gset
        lat = lattices["Z2"]
        assert enumerate_end(X).size == 16
        assert enumerate_aut(X).size == 4
        report = relative_rank(X, lat)
        assert report.relative_rank == 2
        aut = list(enumerate_aut(X).maps())
        V = list(report.generating_set)
        assert closure(X, aut + V).size == 16
        for k in range(len(V)):
            rest = [v for i, v in enumerate(V) if i != k]
            assert closure(X, aut + rest).size < 16


def test_criterion_05_moebius_cross_check(zoo, lattices):
    with _Budget(120):
        for name, G in zoo.items():
            lat = lattices[name]
            instances = [coset_action(G, H) for H in lat.subgroups]
            instances.append(build_shift(G, 2).gset)
            for X in instances:
                decomp = decompose(X, lat)
                for i in range(decomp.n_boxes):
                    assert alpha_by_moebius(decomp, i) == decomp.alpha[i]
                # the subgroup-shaped entry point agrees
                H0 = decomp.box_subgroup(0)
                assert alpha_moebius(X, H0, lat) == decomp.alpha[0]


def test_criterion_06_burnside_on_random_unions(zoo, lattices):
    rng = np.random.default_rng(2024)
    for name, G in zoo.items():
        lat = lattices[name]
        actions = [coset_action(G, H) for H in lat.subgroups]
        for _ in range(50):
            k = int(rng.integers(1, 4))
            parts = [actions[int(i)] for i in rng.integers(0, len(actions), k)]
            X = parts[0]
            for nxt in parts[1:]:
                X = disjoint_union(X, nxt)
            assert burnside_orbit_count(X) == len(X.orbits)


def test_criterion_07_aut_orbit_counts(zoo, lattices):
    for name, G in zoo.items():
        lat = lattices[name]
        instances = [coset_action(G, H) for H in lat.subgroups]
        instances.append(build_shift(G, 2).gset)
        for X in instances:
            decomp = decompose(X, lat)
            classes = _aut_point_classes(X, lat, decomp)
            for i in range(decomp.n_boxes):
                expected = aut_orbits_in_box(X, decomp.box_subgroup(i), lat)
                actual = sum(1 for c in classes if c <= set(decomp.boxes[i]))
                assert actual == expected == len(decomp.sub_boxes[i])


def _check_box_functoriality(X, i, decomp):
    """wreath_multiply matches map composition, over every pair in the box monoid."""
    G = X.group
    sub = restrict_to_invariant(X, decomp.boxes[i], name=f"box{i}")
    sub_decomp = decompose(sub, build_lattice(G))
    end = enumerate_end(sub)
    factors = [wreath_factorize(EquivariantMap(sub, img), 0, sub_decomp)
               for img in end.images]
    F = np.array([f.orbit_map for f in factors], dtype=np.int64)
    T = np.array([f.cosets for f in factors], dtype=np.int64)
    A = end.images.astype(np.int64)
    weights = (sub.size ** np.arange(A.shape[1] - 1, -1, -1)).astype(np.int64)
    keys = A @ weights
    order = np.argsort(keys)
    sorted_keys = keys[order]

    H = sub_decomp.box_subgroup(0)
    CM = np.empty((G.order, G.order), dtype=np.int64)
    for a in range(G.order):
        for b in range(G.order):
            c = int(G.mul[a, b])
            CM[a, b] = min(int(G.mul[c, h]) for h in H.elements)

    M = end.size
    rows = np.arange(min(128, M))
    for start in range(0, M, 128):
        blk = slice(start, min(start + 128, M))
        Ai, Fi, Ti = A[blk], F[blk], T[blk]
        b = Ai.shape[0]
        comp_keys = Ai[:, A] @ weights                     # (pi after tau) images
        p = order[np.searchsorted(sorted_keys, comp_keys)]
        gather = Fi[rows[:b, None, None], F[None, :, :]]
        assert (F[p] == gather).all()
        tgather = Ti[rows[:b, None, None], F[None, :, :]]
        assert (T[p] == CM[T[None, :, :], tgather]).all()

    # a sample of pairs through the public entry points as well
    rng = np.random.default_rng(11)
    for _ in range(min(20, M * M)):
        a, c = int(rng.integers(M)), int(rng.integers(M))
        composed = compose(EquivariantMap(sub, end.images[a]),
                           EquivariantMap(sub, end.images[c]))
        assert wreath_factorize(composed, 0, sub_decomp) == \
            wreath_multiply(factors[a], factors[c], H)


def test_criterion_08_decomposition_and_functoriality(zoo, lattices, small_pool):
    pool = list(small_pool) + [(build_shift(zoo["Z4"], 2).gset, lattices["Z4"])]
    for X, lat in pool:
        decomp = decompose(X, lat)
        if end_monoid_order(X) <= 10_000:
            for img in enumerate_end(X).images:
                tau = EquivariantMap(X, img)
                assert recompose(decompose_by_boxes(tau, decomp)) == tau
        for i in range(decomp.n_boxes):
            if box_end_order(decomp, i) <= 2_000:
                _check_box_functoriality(X, i, decomp)


def test_criterion_09_collapse_census(small_pool):
    for X, lat in small_pool:
        report = relative_rank(X, lat)
        census = collapse_type_census(X, lat)
        assert len(census) == report.relative_rank
        if end_monoid_order(X) <= 10_000:
            decomp = report.decomposition
            realized = set()
            for img in enumerate_end(X).images:
                tau = EquivariantMap(X, img)
                if is_elementary_collapse(tau):
                    realized.add(collapse_type(tau, decomp=decomp))
            assert realized == census


def test_criterion_10_letter_generators():
    with _Budget(60):
        for n in range(1, 7):
            assert sym_generators_check(n) is True
        for n in range(1, 6):
            assert trans_generators_check(n) is True
        # without the defect-1 map the closure stops at the bijections
        for n in range(2, 6):
            letters = trivial_gset(make_cyclic(1), n)
            swap = np.arange(n); swap[[0, 1]] = [1, 0]
            cycle = np.roll(np.arange(n), -1)
            defect = np.arange(n); defect[0] = 1
            bijections = [EquivariantMap(letters, swap), EquivariantMap(letters, cycle)]
            assert closure(letters, bijections).size == factorial(n)
            assert closure(letters, bijections + [EquivariantMap(letters, defect)]).size == n ** n


def test_criterion_11_rule_round_trips(zoo):
    z2 = build_shift(zoo["Z2"], 2)
    for img in enumerate_end(z2.gset).images:
        tau = EquivariantMap(z2.gset, img)
        assert ca_from_rule(z2, rule_from_map(z2, tau)) == tau
    z4 = build_shift(zoo["Z4"], 2)
    end = enumerate_end(z4.gset)
    rng = np.random.default_rng(0)
    for idx in rng.choice(end.size, 100, replace=False):
        tau = EquivariantMap(z4.gset, end.images[int(idx)])
        assert ca_from_rule(z4, rule_from_map(z4, tau)) == tau
    from equirank import minimal_memory_set
    assert minimal_memory_set(z2, identity_map(z2.gset)) == (z2.group.identity,)
