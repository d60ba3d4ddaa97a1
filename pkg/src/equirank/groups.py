"""Finite groups as dense index-based multiplication tables.

Elements are always the integers 0..n-1.  Every other module speaks these
indices; optional labels exist purely for display.  Keeping the whole
group as a flat numpy table makes actions, stabilizers and closures plain
array indexing.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, DomainError

# Constructors refuse to build groups larger than this unless the caller
# raises the limit explicitly.  Large enough for S7 x Z2, small enough
# that nothing accidentally allocates gigabytes.
DEFAULT_GROUP_BUDGET = 10_080

# Full associativity verification is cubic; past this order we verify a
# random sample of triples instead (constructors are correct by
# construction, the check guards hand-built tables).
_FULL_ASSOC_LIMIT = 400


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group on elements 0..order-1.

    mul[a, b] is the product a*b, identity is the neutral element's index
    and inv[a] the index of the inverse.  Instances are immutable and safe
    to share; equality is identity (two separately built copies of the
    same table are deliberately distinct objects).
    """

    order: int
    mul: np.ndarray
    identity: int
    inv: np.ndarray
    labels: tuple[str, ...] | None = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "mul", np.asarray(self.mul, dtype=np.int32))
        object.__setattr__(self, "inv", np.asarray(self.inv, dtype=np.int32))
        _check_group_axioms(self)

    def multiply(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def label(self, a: int) -> str:
        if self.labels is not None:
            return self.labels[a]
        return str(a)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = int(self.mul[x, a])
            k += 1
        return k

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup({self.name or 'order ' + str(self.order)})"


def _check_group_axioms(G: FiniteGroup) -> None:
    n = G.order
    mul, inv, e = G.mul, G.inv, G.identity
    if mul.shape != (n, n):
        raise DomainError(f"multiplication table has shape {mul.shape}, expected {(n, n)}")
    if not ((mul >= 0).all() and (mul < n).all()):
        raise DomainError("multiplication table entries out of range")
    if not (mul[e] == np.arange(n)).all() or not (mul[:, e] == np.arange(n)).all():
        raise DomainError(f"element {e} is not a two-sided identity")
    if not (mul[np.arange(n), inv] == e).all() or not (mul[inv, np.arange(n)] == e).all():
        raise DomainError("inverse table is wrong")
    # Each row and column must be a permutation (cancellation).
    if (np.sort(mul, axis=1) != np.arange(n)[None, :]).any() or \
            (np.sort(mul, axis=0) != np.arange(n)[:, None]).any():
        raise DomainError("multiplication table is not a Latin square")
    if n <= _FULL_ASSOC_LIMIT:
        for a in range(n):
            if not (mul[mul[a], :] == mul[a][mul]).all():
                raise DomainError(f"associativity fails for left factor {a}")
    else:
        rng = np.random.default_rng(0)
        a, b, c = (rng.integers(0, n, 20_000) for _ in range(3))
        if not (mul[mul[a, b], c] == mul[a, mul[b, c]]).all():
            raise DomainError("associativity fails on sampled triples")


def _guard_order(n: int, budget: int) -> None:
    if n < 1:
        raise DomainError(f"group order must be positive, got {n}")
    if n > budget:
        raise BudgetExceeded(f"group of order {n} exceeds budget {budget}")


def make_cyclic(n: int, budget: int = DEFAULT_GROUP_BUDGET) -> FiniteGroup:
    """The cyclic group Z_n with addition mod n."""
    _guard_order(n, budget)
    idx = np.arange(n)
    mul = (idx[:, None] + idx[None, :]) % n
    labels = tuple(str(i) for i in range(n))
    return FiniteGroup(n, mul, 0, (-idx) % n, labels, name=f"Z{n}")


def _perm_cycle_label(p: tuple[int, ...]) -> str:
    """Cycle-notation label for a permutation in one-line form, 'e' for the identity."""
    seen, cycles = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            seen.add(start)
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = p[x]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) if cycles else "e"


def _group_from_permutations(perms: list[tuple[int, ...]], name: str) -> FiniteGroup:
    """Build the table for a closed set of permutations under composition.

    The product p*q is the composite "apply q first, then p".
    """
    order = len(perms)
    index = {p: i for i, p in enumerate(perms)}
    mul = np.empty((order, order), dtype=np.int32)
    inv = np.empty(order, dtype=np.int32)
    degree = len(perms[0])
    ident = tuple(range(degree))
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            mul[i, j] = index[tuple(p[q[k]] for k in range(degree))]
        inv_p = [0] * degree
        for k in range(degree):
            inv_p[p[k]] = k
        inv[i] = index[tuple(inv_p)]
    labels = tuple(_perm_cycle_label(p) for p in perms)
    return FiniteGroup(order, mul, index[ident], inv, labels, name=name)


def make_symmetric(n: int, budget: int = DEFAULT_GROUP_BUDGET) -> FiniteGroup:
    """Sym(n) acting on {0..n-1}.

    Elements are enumerated in lexicographic one-line order, so index 0 is
    the identity.  Labels use cycle notation.
    """
    if n < 1:
        raise DomainError(f"degree must be positive, got {n}")
    order = math.factorial(n)
    _guard_order(order, budget)
    perms = [tuple(p) for p in itertools.permutations(range(n))]
    return _group_from_permutations(perms, name=f"S{n}")


def make_dihedral(n: int, budget: int = DEFAULT_GROUP_BUDGET) -> FiniteGroup:
    """Dihedral group of order 2n: rotations and reflections of an n-gon.

    Realized as permutations of the n vertices; for n >= 3 this is the
    usual symmetry group, D1 and D2 fall back to the evident small groups.
    """
    if n < 1:
        raise DomainError(f"polygon size must be positive, got {n}")
    _guard_order(2 * n, budget)
    if n == 1:
        return make_cyclic(2)
    if n == 2:
        return direct_product(make_cyclic(2), make_cyclic(2))
    perms = []
    for k in range(n):
        perms.append(tuple((i + k) % n for i in range(n)))
    for k in range(n):
        perms.append(tuple((k - i) % n for i in range(n)))
    # rotations first (identity included), then reflections
    G = _group_from_permutations(perms, name=f"D{n}")
    return G


def direct_product(a: FiniteGroup, b: FiniteGroup,
                   budget: int = DEFAULT_GROUP_BUDGET) -> FiniteGroup:
    """Componentwise product; element k encodes the pair (k // |b|, k % |b|)."""
    n = a.order * b.order
    _guard_order(n, budget)
    pair = np.arange(n)
    x, y = pair // b.order, pair % b.order
    # mul[(x1,y1),(x2,y2)] = (x1*x2, y1*y2) under the pair encoding
    mul = a.mul[np.ix_(x, x)] * b.order + b.mul[np.ix_(y, y)]
    inv = a.inv[x] * b.order + b.inv[y]
    labels = None
    if a.labels is not None and b.labels is not None:
        labels = tuple(
            f"({a.labels[i]},{b.labels[j]})" for i, j in zip(x, y)
        )
    name = f"{a.name}x{b.name}" if a.name and b.name else ""
    return FiniteGroup(n, mul, a.identity * b.order + b.identity, inv, labels, name=name)


def from_permutation_generators(degree: int, perms, budget: int = DEFAULT_GROUP_BUDGET,
                                name: str = "") -> FiniteGroup:
    """Close a list of permutations of {0..degree-1} under composition.

    Each generator must be a bijection in one-line notation.  The result's
    elements are the distinct permutations of the closure, sorted
    lexicographically so construction is deterministic.
    """
    gens = []
    for p in perms:
        p = tuple(int(x) for x in p)
        if sorted(p) != list(range(degree)):
            raise DomainError(f"{p} is not a permutation of 0..{degree - 1}")
        gens.append(p)
    ident = tuple(range(degree))
    elements = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for q in gens:
                r = tuple(p[q[k]] for k in range(degree))
                if r not in elements:
                    if len(elements) >= budget:
                        raise BudgetExceeded(
                            f"permutation closure exceeds budget {budget}")
                    elements.add(r)
                    nxt.append(r)
        frontier = nxt
    return _group_from_permutations(sorted(elements), name=name)


def conjugate_element(G: FiniteGroup, g: int, h: int) -> int:
    """The conjugate of h by g, i.e. g^-1 * h * g."""
    return int(G.mul[G.inv[g], G.mul[h, g]])
