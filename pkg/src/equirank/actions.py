"""Finite group actions as dense tables, and their box decompositions.

A G-set on m points is stored as an integer table of shape (|G|, m) with
act[g, x] = g.x.  The box decomposition groups points by the conjugacy
class of their stabilizer; it is the skeleton every rank computation
hangs off: each box is invariant under every equivariant self-map, and
equivariant bijections additionally preserve the exact stabilizer.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import BudgetExceeded, DomainError, PropertyFailure
from .groups import FiniteGroup
from .lattice import Subgroup, SubgroupLattice, build_lattice

DEFAULT_CELL_BUDGET = 1_000_000
_FULL_COMPAT_WORK = 50_000_000


@dataclass(frozen=True, eq=False)
class GSet:
    """A finite group action, validated on construction."""

    group: FiniteGroup
    action: np.ndarray
    name: str = ""
    point_labels: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "action", np.ascontiguousarray(self.action, dtype=np.int32))
        _check_action(self.group, self.action)
        if self.point_labels is not None:
            labels = tuple(str(s) for s in self.point_labels)
            if len(labels) != self.action.shape[1]:
                raise DomainError("point_labels length does not match the number of points")
            object.__setattr__(self, "point_labels", labels)

    @property
    def size(self) -> int:
        return self.action.shape[1]

    def apply(self, g: int, x: int) -> int:
        return int(self.action[g, x])

    def orbit(self, x: int) -> tuple[int, ...]:
        return tuple(sorted(set(int(v) for v in self.action[:, x])))

    @cached_property
    def orbits(self) -> tuple[tuple[int, ...], ...]:
        """All orbits, ascending by smallest point."""
        seen = np.zeros(self.size, dtype=bool)
        out = []
        for x in range(self.size):
            if seen[x]:
                continue
            o = self.orbit(x)
            seen[list(o)] = True
            out.append(o)
        return tuple(out)

    @cached_property
    def orbit_of_point(self) -> np.ndarray:
        out = np.empty(self.size, dtype=np.int32)
        for i, o in enumerate(self.orbits):
            out[list(o)] = i
        return out

    def stabilizer(self, x: int) -> Subgroup:
        members = np.nonzero(self.action[:, x] == x)[0]
        return Subgroup(self.group, tuple(int(g) for g in members))

    def fix(self, elements) -> tuple[int, ...]:
        """Points fixed by every element in `elements` (a Subgroup or iterable)."""
        if isinstance(elements, Subgroup):
            elements = elements.elements
        mask = np.ones(self.size, dtype=bool)
        pts = np.arange(self.size)
        for h in elements:
            mask &= self.action[int(h)] == pts
        return tuple(int(x) for x in np.nonzero(mask)[0])

    def __repr__(self):
        return f"GSet({self.name or self.group.name}, {self.size} points)"


def _check_action(G: FiniteGroup, act: np.ndarray, budget: int = DEFAULT_CELL_BUDGET) -> None:
    n = G.order
    if act.ndim != 2 or act.shape[0] != n:
        raise DomainError(f"action table has shape {act.shape}, expected ({n}, m)")
    m = act.shape[1]
    if n * m > budget:
        raise BudgetExceeded(f"action table of {n * m} cells exceeds budget {budget}")
    if m and (act.min() < 0 or act.max() >= m):
        raise DomainError("action table entries out of range")
    if (act[G.identity] != np.arange(m)).any():
        raise DomainError("identity does not act trivially")
    if n * n * m <= _FULL_COMPAT_WORK:
        pairs = ((g, h) for g in range(n) for h in range(n))
    else:
        rng = np.random.default_rng(0)
        pairs = zip(rng.integers(0, n, 20_000), rng.integers(0, n, 20_000))
        for g in range(n):
            if (np.sort(act[g]) != np.arange(m)).any():
                raise DomainError(f"element {g} does not act by a permutation")
    for g, h in pairs:
        if (act[g][act[h]] != act[int(G.mul[g, h])]).any():
            raise DomainError(f"action is not compatible with the product at ({g},{h})")


def trivial_gset(G: FiniteGroup, m: int, name: str = "") -> GSet:
    return GSet(G, np.tile(np.arange(m), (G.order, 1)), name=name or f"trivial({m})")


def coset_action(G: FiniteGroup, H: Subgroup, name: str = "") -> GSet:
    """G acting on the left cosets of H, cosets ordered by smallest member."""
    if H.group is not G:
        raise DomainError("subgroup belongs to a different group")
    hs = H.elements
    cosets = sorted({frozenset(int(G.mul[g, h]) for h in hs) for g in range(G.order)},
                    key=min)
    idx_by_min = {min(c): i for i, c in enumerate(cosets)}
    reps = [min(c) for c in cosets]
    act = np.zeros((G.order, len(cosets)), dtype=np.int32)
    for g in range(G.order):
        for i, r in enumerate(reps):
            moved = int(G.mul[g, r])
            act[g, i] = idx_by_min[min(int(G.mul[moved, h]) for h in hs)]
    label = name or f"{G.name}/{{{','.join(G.label(e) for e in hs)}}}"
    return GSet(G, act, name=label)


def disjoint_union(a: GSet, b: GSet, name: str = "") -> GSet:
    """One action on the points of `a` followed by the points of `b`."""
    if a.group is not b.group and not (
            a.group.order == b.group.order and (a.group.mul == b.group.mul).all()):
        raise DomainError("cannot union actions of different groups")
    act = np.hstack([a.action, b.action + a.size])
    return GSet(a.group, act, name=name or f"{a.name}+{b.name}")


def restrict_to_invariant(gset: GSet, points, name: str = "") -> GSet:
    """The induced action on an invariant subset, points kept in ascending order."""
    pts = sorted(set(int(x) for x in points))
    if not pts:
        raise DomainError("cannot restrict to an empty point set")
    new_index = {x: i for i, x in enumerate(pts)}
    sub = gset.action[:, pts]
    hit = set(int(v) for v in sub.ravel())
    if not hit <= set(pts):
        raise DomainError("point set is not invariant under the action")
    remap = np.zeros(gset.size, dtype=np.int32)
    for x, i in new_index.items():
        remap[x] = i
    return GSet(gset.group, remap[sub], name=name or f"{gset.name}|{len(pts)}")


def burnside_orbit_count(gset: GSet) -> int:
    """Number of orbits as the average number of fixed points per element."""
    pts = np.arange(gset.size)
    total = int((gset.action == pts[None, :]).sum())
    if total % gset.group.order != 0:
        raise PropertyFailure("fixed-point total is not divisible by the group order")
    return total // gset.group.order


@dataclass(frozen=True, eq=False)
class BoxDecomposition:
    """Points of a G-set grouped by stabilizer conjugacy class.

    Box order follows the lattice's canonical class order (ascending
    subgroup size, then elements), restricted to the classes that occur.
    `sub_boxes[i]` splits box i by exact stabilizer, keyed by subgroup
    index, and `alpha[i]` counts the G-orbits inside box i.
    """

    gset: GSet
    lattice: SubgroupLattice
    stab_index: np.ndarray                       # per point: subgroup index
    box_classes: tuple[int, ...]                 # lattice class position per box
    boxes: tuple[tuple[int, ...], ...]
    sub_boxes: tuple[dict, ...]
    alpha: tuple[int, ...]

    @property
    def n_boxes(self) -> int:
        return len(self.boxes)

    @cached_property
    def box_of_point(self) -> np.ndarray:
        out = np.empty(self.gset.size, dtype=np.int32)
        for i, box in enumerate(self.boxes):
            out[list(box)] = i
        return out

    def box_subgroup(self, i: int) -> Subgroup:
        """The canonical representative stabilizer of box i."""
        return self.lattice.subgroups[self.lattice.class_reps[self.box_classes[i]]]

    def box_normalizer(self, i: int) -> Subgroup:
        rep = self.lattice.class_reps[self.box_classes[i]]
        return self.lattice.subgroups[self.lattice.normalizer_idx[rep]]

    @cached_property
    def kappa(self) -> tuple[int, ...]:
        """Boxes that hold a single orbit (0-based positions)."""
        return tuple(i for i, a in enumerate(self.alpha) if a == 1)

    def orbits_in_box(self, i: int) -> tuple[tuple[int, ...], ...]:
        member = set(self.boxes[i])
        return tuple(o for o in self.gset.orbits if o[0] in member)

    @cached_property
    def orbits_per_box(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        return tuple(self.orbits_in_box(i) for i in range(self.n_boxes))

    def expected_aut_orbits(self, i: int) -> int:
        """Index of the box stabilizer's normalizer; equals the sub-box count."""
        return self.lattice.group.order // self.box_normalizer(i).order


def decompose(gset: GSet, lattice: SubgroupLattice | None = None) -> BoxDecomposition:
    """Compute the box decomposition of a G-set."""
    if lattice is None:
        lattice = build_lattice(gset.group)
    m = gset.size
    stab_index = np.empty(m, dtype=np.int32)
    for x in range(m):
        members = np.nonzero(gset.action[:, x] == x)[0]
        stab_index[x] = lattice.subgroup_index(frozenset(int(g) for g in members))
    class_of = lattice._class_of_subgroup
    present = sorted(set(int(class_of[s]) for s in stab_index))
    boxes = []
    sub_boxes = []
    alpha = []
    orbit_ids = gset.orbit_of_point
    for c in present:
        pts = tuple(int(x) for x in np.nonzero(class_of[stab_index] == c)[0])
        split: dict[int, list[int]] = {}
        for x in pts:
            split.setdefault(int(stab_index[x]), []).append(x)
        boxes.append(pts)
        sub_boxes.append({k: tuple(v) for k, v in sorted(split.items())})
        alpha.append(len(set(int(orbit_ids[x]) for x in pts)))
    return BoxDecomposition(
        gset=gset,
        lattice=lattice,
        stab_index=stab_index,
        box_classes=tuple(present),
        boxes=tuple(boxes),
        sub_boxes=tuple(sub_boxes),
        alpha=tuple(alpha),
    )


def alpha_by_moebius(decomp: BoxDecomposition, i: int) -> int:
    """Orbit count of box i from fixed-point counts alone.

    Moebius inversion over the subgroup order turns the fixed-point counts
    |Fix(K)| into the number of points whose stabilizer is exactly H, and
    dividing by [N_G(H):H] (the orbit's share of that sub-box) gives the
    orbit count.  An independent route to `alpha`, kept separate so the
    two can be compared.
    """
    lat = decomp.lattice
    H_idx = lat.class_reps[decomp.box_classes[i]]
    H = lat.subgroups[H_idx]
    N = decomp.box_normalizer(i)
    total = 0
    for j, K in enumerate(lat.subgroups):
        if lat.leq[H_idx, j]:
            total += lat.moebius(H_idx, j) * len(decomp.gset.fix(K.elements))
    share = N.order // H.order
    if total % share != 0:
        raise PropertyFailure("sub-box size is not divisible by the normalizer index")
    return total // share


# --- convenience entry points mirroring the method API -----------------------

def orbit(gset: GSet, x: int) -> tuple[int, ...]:
    return gset.orbit(x)


def orbits(gset: GSet) -> tuple[tuple[int, ...], ...]:
    return gset.orbits


def stabilizer(gset: GSet, x: int) -> Subgroup:
    return gset.stabilizer(x)


def fix(gset: GSet, subgroup) -> tuple[int, ...]:
    return gset.fix(subgroup)


def box_decomposition(gset: GSet, lattice: SubgroupLattice | None = None) -> BoxDecomposition:
    return decompose(gset, lattice)


def _box_of_subgroup(decomp: BoxDecomposition, H: Subgroup) -> int:
    lat = decomp.lattice
    cls = lat.class_of(lat.subgroup_index(H.element_set))
    try:
        return decomp.box_classes.index(cls)
    except ValueError:
        raise DomainError(
            f"{{{','.join(map(str, H.elements))}}} is not a stabilizer of any point"
        ) from None


def alpha_moebius(gset: GSet, H: Subgroup, lattice: SubgroupLattice | None = None) -> int:
    """Orbit count of H's box, by Moebius inversion of fixed-point counts."""
    decomp = decompose(gset, lattice)
    return alpha_by_moebius(decomp, _box_of_subgroup(decomp, H))


def aut_orbits_in_box(gset: GSet, H: Subgroup, lattice: SubgroupLattice | None = None) -> int:
    """Number of orbits of the equivariant bijections on H's box.

    Returns the index of the normalizer N_G(H); checks that it matches the
    number of nonempty sub-boxes, which is how the count is realized.
    """
    decomp = decompose(gset, lattice)
    i = _box_of_subgroup(decomp, H)
    lat = decomp.lattice
    j = lat.subgroup_index(H.element_set)
    expected = gset.group.order // lat.subgroups[lat.normalizer_idx[j]].order
    if expected != len(decomp.sub_boxes[i]):
        raise PropertyFailure(
            f"normalizer index {expected} != {len(decomp.sub_boxes[i])} sub-boxes in box {i}"
        )
    return expected


def kappa(gset: GSet, lattice: SubgroupLattice | None = None) -> tuple[int, ...]:
    """Positions of the single-orbit boxes."""
    return decompose(gset, lattice).kappa
