"""Shift actions on configuration spaces A^G, and their cellular automata.

A configuration assigns a symbol from {0,..,q-1} to every group element,
and G shifts it by (g.x)(h) = x(g^-1 h).  Configurations are encoded as
base-q integers, most significant digit first, over a fixed display
order of the group elements, so the tables produced here can be compared
against hand-written ones digit for digit.

Every cellular automaton built from a local rule lands in the
equivariant maps of the shift, and for a finite group the converse holds
too: `rule_from_map` reads a (full-memory) local rule off any
equivariant map, and `minimal_memory_set` shrinks the memory to the
unique minimal one by a coordinate dependence scan.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .actions import DEFAULT_CELL_BUDGET, GSet
from .errors import BudgetExceeded, DomainError, PropertyFailure
from .groups import FiniteGroup
from .transform import EquivariantMap

# The classic presentation of S3 lists e, then the transpositions a, b,
# and then c, f, g; our element indices sort permutations lexicographically.
_S3_DISPLAY = (0, 2, 5, 1, 4, 3)

_VERIFY_SAMPLES = 200


@dataclass(frozen=True, eq=False)
class ShiftSpace:
    """The action of G on configurations G -> {0,..,q-1}.

    `display` fixes which group element owns which digit position
    (position 0 is the most significant digit).
    """

    group: FiniteGroup
    q: int
    display: tuple[int, ...]
    gset: GSet

    @property
    def alphabet_size(self) -> int:
        return self.q

    @property
    def size(self) -> int:
        return self.gset.size

    @cached_property
    def position_of(self) -> np.ndarray:
        """Inverse of `display`: digit position of each group element."""
        pos = np.empty(self.group.order, dtype=np.int64)
        pos[list(self.display)] = np.arange(self.group.order)
        return pos

    @cached_property
    def weights(self) -> np.ndarray:
        n = self.group.order
        return self.q ** np.arange(n - 1, -1, -1, dtype=np.int64)

    @cached_property
    def digit_table(self) -> np.ndarray:
        """Digits of every configuration, shape (q^|G|, |G|)."""
        codes = np.arange(self.size, dtype=np.int64)
        return (codes[:, None] // self.weights[None, :]) % self.q

    def encode(self, digits) -> int:
        d = np.asarray(list(digits), dtype=np.int64)
        if d.shape != (self.group.order,):
            raise DomainError(f"expected {self.group.order} digits, got {d.shape}")
        if d.size and (d.min() < 0 or d.max() >= self.q):
            raise DomainError(f"digits must lie in 0..{self.q - 1}")
        return int(d @ self.weights)

    def decode(self, code: int) -> tuple[int, ...]:
        if not 0 <= code < self.size:
            raise DomainError(f"configuration code {code} out of range 0..{self.size - 1}")
        return tuple(int(v) for v in (code // self.weights) % self.q)

    def __repr__(self):
        return f"ShiftSpace({self.group.name}, q={self.q}, {self.size} configurations)"


def build_shift(G: FiniteGroup, q: int, display=None,
                budget: int = DEFAULT_CELL_BUDGET) -> ShiftSpace:
    """Construct A^G with the shift action, |A| = q."""
    if q < 2:
        raise DomainError(f"alphabet size must be at least 2, got {q}")
    m = q ** G.order
    if m * G.order > budget:
        raise BudgetExceeded(
            f"shift space of {m} configurations ({m * G.order} cells) exceeds budget {budget}")
    if display is None:
        display = _S3_DISPLAY if (G.name == "S3" and G.order == 6) else tuple(range(G.order))
    else:
        display = tuple(int(i) for i in display)
        if sorted(display) != list(range(G.order)):
            raise DomainError("display order must be a permutation of the group elements")

    n = G.order
    weights = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    codes = np.arange(m, dtype=np.int64)
    digits = (codes[:, None] // weights[None, :]) % q
    act = np.empty((n, m), dtype=np.int32)
    pos = np.empty(n, dtype=np.int64)
    pos[list(display)] = np.arange(n)
    for g in range(n):
        # digit of g.x at position i is the digit of x at g^-1 * display[i]
        perm = pos[G.mul[G.inv[g], list(display)]]
        act[g] = digits[:, perm] @ weights
    gset = GSet(G, act, name=f"{G.name} shift q={q}")
    space = ShiftSpace(group=G, q=q, display=display, gset=gset)
    _verify_shift_rows(space)
    return space


def _verify_shift_rows(space: ShiftSpace) -> None:
    """Spot-check the action table against the defining formula."""
    G, act = space.group, space.gset.action
    rng = np.random.default_rng(7)
    size = min(_VERIFY_SAMPLES, space.size * G.order)
    gs = rng.integers(0, G.order, size)
    xs = rng.integers(0, space.size, size)
    for g, x in zip(gs, xs):
        old = space.decode(int(x))
        new = space.decode(int(act[g, x]))
        for h in range(G.order):
            src = int(G.mul[G.inv[g], h])
            if new[space.position_of[h]] != old[space.position_of[src]]:
                raise PropertyFailure(f"shift row {g} disagrees with the formula at {x}")


@dataclass(frozen=True, eq=False)
class LocalRule:
    """A local rule mu: A^S -> A over a memory set S.

    Patterns are encoded base-q over S in display order, most significant
    first, matching the configuration encoding.  `memory` is stored in
    display order; `table` has one entry per pattern.
    """

    space: ShiftSpace
    memory: tuple[int, ...]
    table: np.ndarray

    def __post_init__(self):
        mem = [int(s) for s in self.memory]
        if len(set(mem)) != len(mem):
            raise DomainError("memory set has repeated elements")
        if mem and not all(0 <= s < self.space.group.order for s in mem):
            raise DomainError("memory set contains invalid group elements")
        mem.sort(key=lambda s: int(self.space.position_of[s]))
        object.__setattr__(self, "memory", tuple(mem))
        table = np.ascontiguousarray(self.table, dtype=np.int64)
        if table.shape != (self.space.q ** len(mem),):
            raise DomainError(
                f"rule table must cover all {self.space.q ** len(mem)} patterns, "
                f"got shape {table.shape}")
        if table.size and (table.min() < 0 or table.max() >= self.space.q):
            raise DomainError(f"rule values must lie in 0..{self.space.q - 1}")
        object.__setattr__(self, "table", table)

    def __repr__(self):
        return f"LocalRule(S={self.memory}, {self.table.size} patterns)"


def ca_from_rule(space: ShiftSpace, rule: LocalRule) -> EquivariantMap:
    """The global map tau(x)(g) = mu((x o R_g)|_S), R_g(h) = g h."""
    if rule.space is not space and (
            rule.space.q != space.q or rule.space.display != space.display
            or rule.space.group.order != space.group.order
            or (rule.space.group.mul != space.group.mul).any()):
        raise DomainError("rule belongs to a different shift space")
    G = space.group
    n, q = G.order, space.q
    digits = space.digit_table
    k = len(rule.memory)
    pat_weights = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    out = np.empty((space.size, n), dtype=np.int64)
    for i, g in enumerate(space.display):
        cols = space.position_of[G.mul[g, list(rule.memory)]] if k else []
        pattern = digits[:, cols] @ pat_weights if k else np.zeros(space.size, dtype=np.int64)
        out[:, i] = rule.table[pattern]
    return EquivariantMap(space.gset, out @ space.weights)


def rule_from_map(space: ShiftSpace, tau) -> LocalRule:
    """Read off the full-memory local rule S = G, mu(x|_G) = tau(x)(e).

    Accepts an EquivariantMap on the shift or a raw image array (rejected
    if not equivariant).  `ca_from_rule` round-trips the result exactly.
    """
    tau = _as_shift_map(space, tau)
    pos_e = int(space.position_of[space.group.identity])
    table = (tau.image.astype(np.int64) // space.weights[pos_e]) % space.q
    return LocalRule(space=space, memory=space.display, table=table)


def _as_shift_map(space: ShiftSpace, tau) -> EquivariantMap:
    if isinstance(tau, EquivariantMap):
        if tau.gset is not space.gset and (
                tau.gset.size != space.size
                or (tau.gset.action != space.gset.action).any()):
            raise DomainError("map does not live on this shift space")
        return tau
    return EquivariantMap(space.gset, np.asarray(tau))


def minimal_memory_set(space: ShiftSpace, tau) -> tuple[int, ...]:
    """The unique minimal memory set of an equivariant map.

    An element s belongs to the minimal set exactly when tau(x)(e)
    depends on x(s) for some configuration x; the scan toggles each
    coordinate over all of A^G.  The result is checked to be a valid
    memory set by rebuilding the map from the restricted rule.
    """
    tau = _as_shift_map(space, tau)
    G = space.group
    n, q = G.order, space.q
    pos_e = int(space.position_of[G.identity])
    out_e = (tau.image.astype(np.int64) // space.weights[pos_e]) % q
    tensor = out_e.reshape((q,) * n)
    axes = [ax for ax in range(n)
            if (tensor != tensor.take([0], axis=ax)).any()]
    memory = tuple(space.display[ax] for ax in axes)

    # validity: the rule restricted to `memory` reproduces tau
    k = len(axes)
    pat_weights = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    pat_digits = (np.arange(q ** k, dtype=np.int64)[:, None] // pat_weights[None, :]) % q
    table = out_e[pat_digits @ space.weights[axes]] if k else out_e[:1]
    rebuilt = ca_from_rule(space, LocalRule(space=space, memory=memory, table=table))
    if (rebuilt.image != tau.image).any():
        raise PropertyFailure("dependence scan did not produce a valid memory set")
    return memory
