"""Relative rank of the endomorphism monoid over the automorphism group.

For a finite action, every non-invertible equivariant self-map factors
through "collapses" that merge one orbit into another; classifying the
possible collapse types per stabilizer-class box yields an exact count of
how many generators must be added to the automorphisms to generate all
endomorphisms, together with an explicit generating set of point-pushes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import factorial

import numpy as np

from .actions import BoxDecomposition, GSet, decompose, restrict_to_invariant
from .errors import BudgetExceeded, DomainError, PropertyFailure
from .lattice import SubgroupLattice, Subgroup, build_lattice, conjugate_subgroup
from .transform import (
    DEFAULT_ENUM_BUDGET,
    EquivariantMap,
    compose,
    enumerate_aut,
    enumerate_end,
    point_push,
    point_swap,
)


@dataclass(frozen=True)
class CollapseType:
    """Identity card of an elementary collapse.

    `box_index` is the source box (position in the canonical box order);
    `target_class` is the class, under conjugation by the box stabilizer's
    normalizer, of the image point's stabilizer — as a sorted tuple of
    subgroup indices.
    """

    box_index: int
    target_class: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class RankReport:
    """Everything the rank computation produces, in one bundle."""

    gset: GSet
    lattice: SubgroupLattice
    decomposition: BoxDecomposition
    u_sets: tuple                       # per box: tuple of N-classes (subgroup-index tuples)
    kappa: tuple[int, ...]
    relative_rank: int
    generating_set: tuple[EquivariantMap, ...]
    tags: tuple[str, ...]


def _n_class(lattice: SubgroupLattice, N: Subgroup, sub_idx: int) -> tuple[int, ...]:
    """The N-conjugacy class of a subgroup, as sorted subgroup indices."""
    G = lattice.group
    K = lattice.subgroups[sub_idx].element_set
    found = {sub_idx}
    for n in N.elements:
        found.add(lattice.subgroup_index(conjugate_subgroup(G, K, n)))
    return tuple(sorted(found, key=lambda j: lattice.subgroups[j].elements))


def _sorted_classes(lattice: SubgroupLattice, classes) -> tuple:
    return tuple(sorted(classes, key=lambda cl: (lattice.subgroups[cl[0]].order,
                                                 lattice.subgroups[cl[0]].elements)))


def u_set(X: GSet, lattice: SubgroupLattice, i: int,
          decomp: BoxDecomposition | None = None) -> tuple:
    """The N_i-classes of occurring stabilizers that contain box i's subgroup.

    Returned in canonical order (ascending member order, then elements);
    the class of the box's own subgroup always sorts first.
    """
    if decomp is None:
        decomp = decompose(X, lattice)
    if not 0 <= i < decomp.n_boxes:
        raise DomainError(f"box {i} does not exist; X has {decomp.n_boxes} boxes")
    H_idx = lattice.class_reps[decomp.box_classes[i]]
    N = decomp.box_normalizer(i)
    occurring = sorted(set(int(s) for s in decomp.stab_index))
    classes = set()
    for k in occurring:
        if lattice.leq[H_idx, k]:
            classes.add(_n_class(lattice, N, k))
    return _sorted_classes(lattice, classes)


def _all_u_sets(decomp: BoxDecomposition) -> tuple:
    lat = decomp.lattice
    return tuple(u_set(decomp.gset, lat, i, decomp) for i in range(decomp.n_boxes))


def _min_point_with_stab(decomp: BoxDecomposition, sub_idx: int,
                         exclude_orbit: int | None = None) -> int:
    orbit_ids = decomp.gset.orbit_of_point
    for x in range(decomp.gset.size):
        if decomp.stab_index[x] == sub_idx:
            if exclude_orbit is None or orbit_ids[x] != exclude_orbit:
                return x
    raise PropertyFailure(f"no point with stabilizer #{sub_idx} found")


def _v_with_tags(decomp: BoxDecomposition, u_sets) -> tuple[tuple, tuple]:
    """The generating set of point-pushes plus provenance tags.

    For box i (canonical subgroup H_i, points x with G_x = H_i): one push
    onto a second H_i-orbit when the box has at least two orbits, and one
    push onto a representative of each further N_i-class in U(H_i).  Tags
    are 1-based: "push i->i'" for the intra-box push, "push i->(i,j)" for
    the push onto the j-th other class.
    """
    X = decomp.gset
    lat = decomp.lattice
    maps, tags = [], []
    for i in range(decomp.n_boxes):
        H_idx = lat.class_reps[decomp.box_classes[i]]
        x_i = _min_point_with_stab(decomp, H_idx)
        self_class = (H_idx,)
        if decomp.alpha[i] >= 2:
            x_prime = _min_point_with_stab(
                decomp, H_idx, exclude_orbit=int(X.orbit_of_point[x_i]))
            maps.append(point_push(X, x_i, x_prime))
            tags.append(f"push {i + 1}->{i + 1}'")
        j = 0
        for cls in u_sets[i]:
            if cls == self_class:
                continue
            j += 1
            y = _min_point_with_stab(decomp, cls[0])
            maps.append(point_push(X, x_i, y))
            tags.append(f"push {i + 1}->({i + 1},{j})")
    return tuple(maps), tuple(tags)


def generating_set_v(X: GSet, lattice: SubgroupLattice | None = None) -> list[EquivariantMap]:
    """A minimum-size set of pushes generating End together with Aut."""
    if lattice is None:
        lattice = build_lattice(X.group)
    decomp = decompose(X, lattice)
    maps, _ = _v_with_tags(decomp, _all_u_sets(decomp))
    return list(maps)


def relative_rank(X: GSet, lattice: SubgroupLattice | None = None) -> RankReport:
    """How many generators End needs beyond Aut, with an explicit witness set.

    The count is sum over boxes of |U(H_i)|, minus one for every box made
    of a single orbit; the constructed generating set realizes one
    elementary collapse per collapse type, and its size is asserted to
    match the formula.
    """
    if lattice is None:
        lattice = build_lattice(X.group)
    decomp = decompose(X, lattice)
    u_sets = _all_u_sets(decomp)
    kappa = decomp.kappa
    rank = sum(len(u) for u in u_sets) - len(kappa)
    maps, tags = _v_with_tags(decomp, u_sets)
    if len(maps) != rank:
        raise PropertyFailure(
            f"generating set has {len(maps)} pushes but the formula gives {rank}")
    return RankReport(
        gset=X,
        lattice=lattice,
        decomposition=decomp,
        u_sets=u_sets,
        kappa=kappa,
        relative_rank=rank,
        generating_set=maps,
        tags=tags,
    )


def decompose_by_boxes(tau: EquivariantMap,
                       decomp: BoxDecomposition | None = None) -> list[EquivariantMap]:
    """Split tau into per-box factors whose ascending-order composition is tau.

    Factor k acts like tau on box k and fixes everything else.  Because
    stabilizers only grow along equivariant maps, applying the factors
    from the last box down to the first (i.e. composing in ascending box
    order) reproduces tau exactly.
    """
    if decomp is None:
        decomp = decompose(tau.gset)
    out = []
    for box in decomp.boxes:
        img = np.arange(tau.gset.size, dtype=np.int32)
        pts = list(box)
        img[pts] = tau.image[pts]
        out.append(EquivariantMap(tau.gset, img))
    return out


def recompose(factors) -> EquivariantMap:
    """Compose a factor list in ascending order (last factor applied first)."""
    return reduce(compose, factors)


def _kernel_classes(tau: EquivariantMap) -> list[list[int]]:
    by_value: dict[int, list[int]] = {}
    for x, v in enumerate(tau.image):
        by_value.setdefault(int(v), []).append(x)
    return [cls for cls in by_value.values() if len(cls) >= 2]


def _collapse_shape(tau: EquivariantMap):
    """The (source orbit, target orbit) of an elementary collapse, else None.

    Elementary means: the non-singleton kernel classes tie together
    exactly two orbits, covering both completely, with exactly one point
    of the target orbit in each class.  When every class is a pair either
    orbit can serve as the target; the choice does not affect the type.
    """
    classes = _kernel_classes(tau)
    if not classes:
        return None
    orbit_ids = tau.gset.orbit_of_point
    involved = sorted({int(orbit_ids[x]) for cls in classes for x in cls})
    if len(involved) != 2:
        return None
    a_id, b_id = involved
    covered = {x for cls in classes for x in cls}
    a_pts = set(tau.gset.orbits[a_id])
    b_pts = set(tau.gset.orbits[b_id])
    if covered != a_pts | b_pts:
        return None
    def one_per_class(target_pts):
        return all(len(target_pts.intersection(cls)) == 1 for cls in classes)
    if one_per_class(b_pts):
        return (a_id, b_id)
    if one_per_class(a_pts):
        return (b_id, a_id)
    return None


def is_elementary_collapse(tau: EquivariantMap) -> bool:
    """Does tau merge exactly one orbit pair, pointwise, and nothing else?"""
    return _collapse_shape(tau) is not None


def collapse_type(tau: EquivariantMap, lattice: SubgroupLattice | None = None,
                  decomp: BoxDecomposition | None = None,
                  witness: int | None = None) -> CollapseType:
    """Classify an elementary collapse by source box and image-stabilizer class.

    The witness (any point of the collapse's source orbit) is first moved
    by a group element so its stabilizer becomes the box's canonical
    subgroup; the type is then the normalizer-conjugacy class of the
    image point's stabilizer.  Any valid witness yields the same type.
    """
    if decomp is None:
        if lattice is None:
            lattice = build_lattice(tau.gset.group)
        decomp = decompose(tau.gset, lattice)
    lat = decomp.lattice
    shape = _collapse_shape(tau)
    if shape is None:
        raise DomainError("map is not an elementary collapse")
    src_id, _ = shape
    src_orbit = decomp.gset.orbits[src_id]
    if witness is None:
        witness = src_orbit[0]
    elif witness not in src_orbit:
        raise DomainError(f"witness {witness} is not in the source orbit")
    G = lat.group
    box_i = int(decomp.box_of_point[witness])
    H = lat.subgroups[lat.class_reps[decomp.box_classes[box_i]]]
    Gx = lat.subgroups[decomp.stab_index[witness]].element_set
    g = next(g for g in range(G.order)
             if conjugate_subgroup(G, Gx, g) == H.element_set)
    moved = int(decomp.gset.action[g, witness])
    target_idx = int(decomp.stab_index[int(tau.image[moved])])
    N = decomp.box_normalizer(box_i)
    return CollapseType(box_index=box_i, target_class=_n_class(lat, N, target_idx))


def collapse_type_census(X: GSet, lattice: SubgroupLattice | None = None) -> set:
    """Every collapse type realizable on X, found by scanning stabilizer pairs.

    A type (i, [K]) is realizable exactly when some point with stabilizer
    conjugate to H_i can be pushed onto a point with stabilizer K sitting
    in a different orbit.  This route never touches U(H_i) or the rank
    formula, so the two can be compared as independent computations.
    """
    if lattice is None:
        lattice = build_lattice(X.group)
    decomp = decompose(X, lattice)
    lat = lattice
    G = lat.group
    orbit_ids = X.orbit_of_point
    orbits_with: dict[int, set] = {}
    for x in range(X.size):
        orbits_with.setdefault(int(decomp.stab_index[x]), set()).add(int(orbit_ids[x]))
    out = set()
    for s, s_orbits in orbits_with.items():
        for t, t_orbits in orbits_with.items():
            if not lat.leq[s, t]:
                continue
            if len(s_orbits) == 1 and s_orbits == t_orbits:
                continue          # only one orbit available: nothing to merge
            box_i = int(lat.class_of(s))
            box_pos = decomp.box_classes.index(box_i)
            H = lat.subgroups[lat.class_reps[box_i]]
            K = lat.subgroups[s].element_set
            g = next(g for g in range(G.order)
                     if conjugate_subgroup(G, K, g) == H.element_set)
            moved_t = lat.subgroup_index(
                conjugate_subgroup(G, lat.subgroups[t].element_set, g))
            N = decomp.box_normalizer(box_pos)
            out.add(CollapseType(box_index=box_pos,
                                 target_class=_n_class(lat, N, moved_t)))
    return out


@dataclass(frozen=True)
class WreathFactor:
    """The two coordinates of a box endomorphism: orbit map and coset parts.

    `orbit_map[k]` is the position (within the box's orbit list) that
    orbit k lands on; `cosets[k]` is the minimal element of the coset tH
    with tau(x_k) = t.x_{orbit_map[k]}, where x_k is the canonical
    representative of orbit k.
    """

    box_index: int
    orbit_map: tuple[int, ...]
    cosets: tuple[int, ...]


def _box_orbit_reps(decomp: BoxDecomposition, i: int) -> list[int]:
    H_idx = decomp.lattice.class_reps[decomp.box_classes[i]]
    reps = []
    for orbit in decomp.orbits_in_box(i):
        reps.append(min(x for x in orbit if decomp.stab_index[x] == H_idx))
    return reps


def _coset_min(G, t: int, H: Subgroup) -> int:
    return min(int(G.mul[t, h]) for h in H.elements)


def wreath_factorize(tau: EquivariantMap, i: int,
                     decomp: BoxDecomposition | None = None) -> WreathFactor:
    """Split tau's action on box i into an orbit map and per-orbit cosets."""
    if decomp is None:
        decomp = decompose(tau.gset)
    box = set(decomp.boxes[i])
    if any(int(tau.image[x]) not in box for x in box):
        raise DomainError(f"map does not keep box {i} inside itself")
    G = decomp.lattice.group
    H = decomp.box_subgroup(i)
    N = decomp.box_normalizer(i)
    reps = _box_orbit_reps(decomp, i)
    orbit_pos = {int(decomp.gset.orbit_of_point[r]): k for k, r in enumerate(reps)}
    f, cosets = [], []
    for r in reps:
        y = int(tau.image[r])
        k = orbit_pos[int(decomp.gset.orbit_of_point[y])]
        f.append(k)
        t = next(t for t in N.elements if int(decomp.gset.action[t, reps[k]]) == y)
        cosets.append(_coset_min(G, t, H))
    return WreathFactor(box_index=i, orbit_map=tuple(f), cosets=tuple(cosets))


def wreath_multiply(pi: WreathFactor, tau: WreathFactor, H: Subgroup) -> WreathFactor:
    """The factor of the composition (pi after tau), computed from the parts."""
    if pi.box_index != tau.box_index:
        raise DomainError("factors belong to different boxes")
    G = H.group
    f = tuple(pi.orbit_map[k] for k in tau.orbit_map)
    cosets = tuple(_coset_min(G, int(G.mul[tau.cosets[k], pi.cosets[tau.orbit_map[k]]]), H)
                   for k in range(len(tau.orbit_map)))
    return WreathFactor(box_index=pi.box_index, orbit_map=f, cosets=cosets)


def aut_generators(X: GSet, lattice: SubgroupLattice | None = None,
                   decomp: BoxDecomposition | None = None) -> list[EquivariantMap]:
    """A generating set for the equivariant bijections.

    Per box: swaps between the canonical representatives of its orbits
    (these permute the orbits), and for each representative a translation
    to every other point of its orbit sharing its exact stabilizer (these
    realize the per-orbit coset group).
    """
    if decomp is None:
        if lattice is None:
            lattice = build_lattice(X.group)
        decomp = decompose(X, lattice)
    gens = []
    for i in range(decomp.n_boxes):
        H = decomp.box_subgroup(i)
        N = decomp.box_normalizer(i)
        reps = _box_orbit_reps(decomp, i)
        for k in range(1, len(reps)):
            gens.append(point_swap(X, reps[0], reps[k]))
        coset_reps = sorted({_coset_min(X.group, t, H) for t in N.elements})
        for r in reps:
            for t in coset_reps:
                if t not in H.element_set:
                    gens.append(point_swap(X, r, int(X.action[t, r])))
    return gens


def aut_group_order(decomp: BoxDecomposition) -> int:
    """Predicted |Aut| from the per-box wreath structure."""
    total = 1
    for i in range(decomp.n_boxes):
        w = decomp.box_normalizer(i).order // decomp.box_subgroup(i).order
        a = decomp.alpha[i]
        total *= (w ** a) * factorial(a)
    return total


def box_end_order(decomp: BoxDecomposition, i: int) -> int:
    """Predicted |End| of box i on its own."""
    w = decomp.box_normalizer(i).order // decomp.box_subgroup(i).order
    a = decomp.alpha[i]
    return (w ** a) * (a ** a)


def wreath_order_checks(X: GSet, lattice: SubgroupLattice | None = None,
                        budget: int = DEFAULT_ENUM_BUDGET) -> dict:
    """Compare predicted wreath-product orders with enumeration where feasible.

    Returns a report dict; a mismatch raises immediately, because a wrong
    order means the structural bookkeeping is broken, not the input.
    """
    if lattice is None:
        lattice = build_lattice(X.group)
    decomp = decompose(X, lattice)
    boxes = []
    for i in range(decomp.n_boxes):
        end_pred = box_end_order(decomp, i)
        w = decomp.box_normalizer(i).order // decomp.box_subgroup(i).order
        a = decomp.alpha[i]
        aut_pred = (w ** a) * factorial(a)
        sub = restrict_to_invariant(X, decomp.boxes[i], name=f"box{i}")
        try:
            end_enum = enumerate_end(sub, budget=budget).size
        except BudgetExceeded:
            end_enum = None
        try:
            aut_enum = enumerate_aut(sub, budget=budget).size
        except BudgetExceeded:
            aut_enum = None
        if end_enum is not None and end_enum != end_pred:
            raise PropertyFailure(
                f"box {i}: predicted |End| {end_pred}, enumerated {end_enum}")
        if aut_enum is not None and aut_enum != aut_pred:
            raise PropertyFailure(
                f"box {i}: predicted |Aut| {aut_pred}, enumerated {aut_enum}")
        boxes.append({
            "box": i,
            "alpha": a,
            "wreath_base_order": w,
            "end_order_predicted": end_pred,
            "end_order_enumerated": end_enum,
            "aut_order_predicted": aut_pred,
            "aut_order_enumerated": aut_enum,
        })
    aut_pred_total = aut_group_order(decomp)
    try:
        aut_enum_total = enumerate_aut(X, budget=budget).size
    except BudgetExceeded:
        aut_enum_total = None
    if aut_enum_total is not None and aut_enum_total != aut_pred_total:
        raise PropertyFailure(
            f"predicted |Aut| {aut_pred_total}, enumerated {aut_enum_total}")
    return {
        "boxes": boxes,
        "aut_order_predicted": aut_pred_total,
        "aut_order_enumerated": aut_enum_total,
        "verified": aut_enum_total is not None,
    }
