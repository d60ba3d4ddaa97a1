"""Equivariant self-maps of a G-set: construction, enumeration, closure.

Maps are flat image arrays over point indices.  Composition, the monoid
End of all equivariant self-maps, the group Aut of equivariant bijections,
and breadth-first closure of generator sets all live here; the rank
machinery builds on these primitives.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .actions import GSet, trivial_gset
from .errors import BudgetExceeded, ClosureCapExceeded, DomainError, StabilizerError
from .groups import make_cyclic

DEFAULT_ENUM_BUDGET = 2_000_000
DEFAULT_CLOSURE_CAP = 2_000_000


@dataclass(frozen=True, eq=False)
class EquivariantMap:
    """A G-equivariant self-map, stored as an image array.

    Equivariance (image[g.x] = g.image[x]) is checked on construction; it
    already implies that stabilizers can only grow along the map.
    """

    gset: GSet
    image: np.ndarray

    def __post_init__(self):
        img = np.ascontiguousarray(self.image, dtype=np.int32)
        object.__setattr__(self, "image", img)
        m = self.gset.size
        if img.shape != (m,):
            raise DomainError(f"image has shape {img.shape}, expected ({m},)")
        if m and (img.min() < 0 or img.max() >= m):
            raise DomainError("image entries out of range")
        act = self.gset.action
        for g in range(self.gset.group.order):
            if (img[act[g]] != act[g][img]).any():
                raise DomainError(f"map is not equivariant at group element {g}")
        object.__setattr__(self, "_hash", hash(img.tobytes()))

    def __call__(self, x: int) -> int:
        return int(self.image[x])

    def __eq__(self, other):
        if not isinstance(other, EquivariantMap):
            return NotImplemented
        return _same_gset(self.gset, other.gset) and (self.image == other.image).all()

    def __hash__(self):
        return self._hash

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.image)

    def is_bijective(self) -> bool:
        return len(np.unique(self.image)) == self.gset.size

    def __repr__(self):
        shown = ",".join(str(int(v)) for v in self.image[:12])
        tail = ",..." if self.gset.size > 12 else ""
        return f"EquivariantMap[{shown}{tail}]"


def _same_gset(a: GSet, b: GSet) -> bool:
    return a is b or (a.group is b.group and a.action.shape == b.action.shape
                      and (a.action == b.action).all())


def identity_map(X: GSet) -> EquivariantMap:
    return EquivariantMap(X, np.arange(X.size))


def compose(f: EquivariantMap, g: EquivariantMap) -> EquivariantMap:
    """f after g: compose(f, g)(x) = f(g(x))."""
    if not _same_gset(f.gset, g.gset):
        raise DomainError("cannot compose maps on different actions")
    return EquivariantMap(f.gset, f.image[g.image])


def is_equivariant(X: GSet, image) -> bool:
    img = np.asarray(image, dtype=np.int64)
    if img.shape != (X.size,):
        raise DomainError(f"image has shape {img.shape}, expected ({X.size},)")
    if X.size and (img.min() < 0 or img.max() >= X.size):
        raise DomainError("image entries out of range")
    act = X.action
    return all((img[act[g]] == act[g][img]).all() for g in range(X.group.order))


def _stabilizer_masks(X: GSet) -> list[int]:
    """Per point, a bitmask over group elements fixing it."""
    masks = [0] * X.size
    pts = np.arange(X.size)
    for g in range(X.group.order):
        for x in np.nonzero(X.action[g] == pts)[0]:
            masks[int(x)] |= 1 << g
    return masks


def _transporters(X: GSet) -> tuple[np.ndarray, np.ndarray]:
    """Per point p: an orbit representative r and some g with g.r = p.

    Representatives are the minimal point of each orbit.
    """
    rep = np.full(X.size, -1, dtype=np.int32)
    via = np.zeros(X.size, dtype=np.int32)
    for o in X.orbits:
        r = o[0]
        for g in range(X.group.order):
            p = int(X.action[g, r])
            if rep[p] < 0:
                rep[p] = r
                via[p] = g
    return rep, via


def point_push(X: GSet, x: int, y: int) -> EquivariantMap:
    """The map sending g.x to g.y and fixing everything else.

    Well-defined exactly when the stabilizer of x is contained in the
    stabilizer of y; non-invertible exactly when the containment is proper
    or the two orbits differ in size... in fact whenever Gx != Gy.
    """
    masks = _stabilizer_masks(X)
    if masks[x] & ~masks[y]:
        raise StabilizerError(
            f"stabilizer of {x} is not contained in the stabilizer of {y}")
    img = np.arange(X.size, dtype=np.int32)
    seen = set()
    for g in range(X.group.order):
        p = int(X.action[g, x])
        if p not in seen:
            seen.add(p)
            img[p] = X.action[g, y]
    return EquivariantMap(X, img)


def point_swap(X: GSet, x: int, y: int) -> EquivariantMap:
    """Exchange the orbits of x and y along g.x <-> g.y.

    Requires equal stabilizers.  When x and y share an orbit this is the
    translation moving x to y (a bijection of that single orbit); when the
    orbits differ it is an involution exchanging them.
    """
    masks = _stabilizer_masks(X)
    if masks[x] != masks[y]:
        raise StabilizerError(f"stabilizers of {x} and {y} differ")
    if y in X.orbit(x):
        out = point_push(X, x, y)
        assert out.is_bijective()
        return out
    img = np.arange(X.size, dtype=np.int32)
    seen = set()
    for g in range(X.group.order):
        p, q = int(X.action[g, x]), int(X.action[g, y])
        if p not in seen:
            seen.add(p)
            img[p] = q
            img[q] = p
    return EquivariantMap(X, img)


@dataclass(frozen=True, eq=False)
class MonoidClosure:
    """A deduplicated, deterministically ordered set of equivariant maps.

    Rows of `images` are image arrays in lexicographic order.  Instances
    come out of the enumerators (End, Aut) and out of `closure`, which
    also records its seed in `generators`.
    """

    gset: GSet
    images: np.ndarray
    generators: tuple = ()
    _keys: frozenset = field(default=None, repr=False)

    def __post_init__(self):
        imgs = np.ascontiguousarray(self.images, dtype=np.int32)
        object.__setattr__(self, "images", imgs)
        if self._keys is None:
            object.__setattr__(self, "_keys",
                               frozenset(bytes(row.tobytes()) for row in imgs))

    @property
    def size(self) -> int:
        return self.images.shape[0]

    def __len__(self):
        return self.size

    def __contains__(self, item) -> bool:
        if isinstance(item, EquivariantMap):
            arr = item.image
        else:
            arr = np.ascontiguousarray(item, dtype=np.int32)
        return arr.tobytes() in self._keys

    def maps(self):
        for row in self.images:
            yield EquivariantMap(self.gset, row)

    def __repr__(self):
        return f"MonoidClosure({self.size} maps on {self.gset.size} points)"


def _sorted_rows(rows: np.ndarray) -> np.ndarray:
    if rows.shape[0] <= 1:
        return rows
    order = np.lexsort(rows.T[::-1])
    return rows[order]


def _candidates(X: GSet, bijective: bool):
    """Per orbit representative, the admissible image points."""
    masks = _stabilizer_masks(X)
    reps = [o[0] for o in X.orbits]
    cands = []
    for r in reps:
        if bijective:
            cs = [y for y in range(X.size) if masks[y] == masks[r]]
        else:
            cs = [y for y in range(X.size) if not (masks[r] & ~masks[y])]
        cands.append(cs)
    return reps, cands


def end_monoid_order(X: GSet) -> int:
    """|End| as the product over orbit representatives of admissible targets."""
    _, cands = _candidates(X, bijective=False)
    return math.prod(len(c) for c in cands)


def enumerate_end(X: GSet, budget: int = DEFAULT_ENUM_BUDGET) -> MonoidClosure:
    """All equivariant self-maps, by choosing images of orbit representatives.

    A representative x may go to any y whose stabilizer contains that of
    x; the rest of the orbit follows by equivariance.  The product of the
    choice counts is checked against the budget before any work happens.
    """
    reps, cands = _candidates(X, bijective=False)
    total = math.prod(len(c) for c in cands)
    if total > budget:
        raise BudgetExceeded(f"{total} maps exceed the enumeration budget {budget}")
    return MonoidClosure(X, _product_images(X, reps, cands, bijective=False))


def enumerate_aut(X: GSet, budget: int = DEFAULT_ENUM_BUDGET) -> MonoidClosure:
    """All equivariant bijections: equal-stabilizer targets, distinct orbits."""
    reps, cands = _candidates(X, bijective=True)
    total = math.prod(len(c) for c in cands)
    if total > budget:
        raise BudgetExceeded(f"{total} choices exceed the enumeration budget {budget}")
    return MonoidClosure(X, _product_images(X, reps, cands, bijective=True))


def _product_images(X: GSet, reps, cands, bijective: bool) -> np.ndarray:
    _, via = _transporters(X)
    orbit_pts = [np.array(o, dtype=np.int64) for o in X.orbits]
    orbit_via = [via[pts] for pts in orbit_pts]
    orbit_id = X.orbit_of_point
    rows = []
    img = np.empty(X.size, dtype=np.int32)
    for choice in itertools.product(*cands):
        if bijective and len({int(orbit_id[y]) for y in choice}) != len(reps):
            continue
        for pts, gs, y in zip(orbit_pts, orbit_via, choice):
            img[pts] = X.action[gs, y]
        rows.append(img.copy())
    if not rows:
        return np.empty((0, X.size), dtype=np.int32)
    return _sorted_rows(np.stack(rows))


def closure(X: GSet, generators, cap: int = DEFAULT_CLOSURE_CAP) -> MonoidClosure:
    """The submonoid generated by the given maps (identity always included).

    Breadth-first: new elements arise by post-composing frontier elements
    with generators.  Exceeding the cap raises rather than truncating.
    """
    gens = []
    for f in generators:
        if isinstance(f, EquivariantMap):
            if not _same_gset(f.gset, X):
                raise DomainError("generator lives on a different action")
            gens.append(f.image.astype(np.int32))
        else:
            gens.append(EquivariantMap(X, f).image)
    seed = [np.arange(X.size, dtype=np.int32)] + gens
    known: dict[bytes, np.ndarray] = {}
    frontier = []
    for arr in seed:
        key = arr.tobytes()
        if key not in known:
            known[key] = arr
            frontier.append(arr)
    while frontier:
        fresh = []
        for w in frontier:
            for g in gens:
                h = g[w]
                key = h.tobytes()
                if key not in known:
                    if len(known) >= cap:
                        raise ClosureCapExceeded(cap=cap, partial_size=len(known) + 1)
                    known[key] = h
                    fresh.append(h)
        frontier = fresh
    rows = _sorted_rows(np.stack(list(known.values())))
    return MonoidClosure(X, rows, generators=tuple(EquivariantMap(X, g) for g in gens))


def _letters_gset(n: int) -> GSet:
    return trivial_gset(make_cyclic(1), n, name=f"letters({n})")


def sym_generators_check(n: int) -> bool:
    """Do a transposition and an n-cycle generate all n! permutations?"""
    if n > 6:
        raise BudgetExceeded(f"permutation closure limited to n <= 6, got {n}")
    if n < 1:
        raise DomainError("need at least one letter")
    X = _letters_gset(n)
    gens = _sym_seed(X, n)
    return closure(X, gens, cap=math.factorial(n)).size == math.factorial(n)


def trans_generators_check(n: int) -> bool:
    """Do the permutation pair plus one rank-(n-1) map generate all n^n maps?"""
    if n > 5:
        raise BudgetExceeded(f"transformation closure limited to n <= 5, got {n}")
    if n < 1:
        raise DomainError("need at least one letter")
    X = _letters_gset(n)
    gens = _sym_seed(X, n)
    if n >= 2:
        collapse = np.arange(n)
        collapse[0] = 1
        gens.append(EquivariantMap(X, collapse))
    return closure(X, gens, cap=n ** n).size == n ** n


def _sym_seed(X: GSet, n: int) -> list[EquivariantMap]:
    if n < 2:
        return []
    swap = np.arange(n)
    swap[[0, 1]] = [1, 0]
    cycle = np.roll(np.arange(n), -1)
    return [EquivariantMap(X, swap), EquivariantMap(X, cycle)]


def kernel_pairs(f: EquivariantMap) -> set:
    """All ordered pairs (a, b), a != b, with f(a) = f(b)."""
    by_value: dict[int, list[int]] = {}
    for x, v in enumerate(f.image):
        by_value.setdefault(int(v), []).append(x)
    out = set()
    for cls in by_value.values():
        for a in cls:
            for b in cls:
                if a != b:
                    out.add((a, b))
    return out


def map_rank(f: EquivariantMap) -> int:
    """Number of distinct image points."""
    return int(len(np.unique(f.image)))
