"""Shift spaces, configuration encoding, and cellular automata."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equirank import (
    BudgetExceeded,
    DomainError,
    EquivariantMap,
    LocalRule,
    build_shift,
    ca_from_rule,
    compose,
    enumerate_aut,
    enumerate_end,
    identity_map,
    make_cyclic,
    make_symmetric,
    map_rank,
    minimal_memory_set,
    rule_from_map,
)

import oracles


@pytest.fixture(scope="module")
def z6():
    return build_shift(make_cyclic(6), 2)


@pytest.fixture(scope="module")
def s3():
    return build_shift(make_symmetric(3), 2)


@pytest.fixture(scope="module")
def z4():
    return build_shift(make_cyclic(4), 2)


def test_encode_decode_golden(z6, z4):
    assert z6.encode((0, 0, 0, 0, 0, 0)) == 0
    assert z6.encode((0, 1, 1, 0, 1, 0)) == 26
    assert z6.decode(26) == (0, 1, 1, 0, 1, 0)
    assert z4.encode((0, 0, 0, 1)) == 1
    assert z4.gset.orbit(1) == (1, 2, 4, 8)
    with pytest.raises(DomainError):
        z4.encode((0, 0, 2, 0))            # digit out of alphabet
    with pytest.raises(DomainError):
        z4.encode((0, 0, 0))               # wrong length
    with pytest.raises(DomainError):
        z4.decode(16)


def test_shift_action_golden(z6, s3):
    assert z6.gset.apply(1, 6) == 3
    assert z6.decode(3) == (0, 0, 0, 0, 1, 1)
    # display order for S3 is e, a, b, c, f, g; a has element index 2
    assert s3.display == (0, 2, 5, 1, 4, 3)
    assert s3.decode(s3.gset.apply(2, 6)) == (0, 0, 1, 0, 0, 1)
    assert (s3.gset.action[0] == np.arange(64)).all()


def test_build_shift_guards():
    with pytest.raises(DomainError):
        build_shift(make_cyclic(3), 1)
    with pytest.raises(BudgetExceeded):
        build_shift(make_cyclic(6), 10)    # 6 * 10^6 cells
    with pytest.raises(DomainError):
        build_shift(make_cyclic(3), 2, display=(0, 0, 1))


def test_shift_tables_match_oracle():
    cases = [(make_cyclic(n), 2) for n in range(2, 7)]
    cases += [(make_cyclic(2), 3), (make_cyclic(2), 4), (make_symmetric(3), 2)]
    for G, q in cases:
        space = build_shift(G, q)
        expected = oracles.shift_action_table(G.mul, G.inv, q, list(space.display))
        assert (space.gset.action == expected).all()


def test_local_rule_validation(z4):
    LocalRule(space=z4, memory=(), table=[1])
    with pytest.raises(DomainError):
        LocalRule(space=z4, memory=(0, 0), table=[0, 1, 1, 0])
    with pytest.raises(DomainError):
        LocalRule(space=z4, memory=(0, 9), table=[0, 1, 1, 0])
    with pytest.raises(DomainError):
        LocalRule(space=z4, memory=(0, 1), table=[0, 1, 1])
    with pytest.raises(DomainError):
        LocalRule(space=z4, memory=(0, 1), table=[0, 1, 1, 2])


def test_constant_and_identity_rules(z4):
    const = ca_from_rule(z4, LocalRule(space=z4, memory=(), table=[1]))
    assert (const.image == z4.encode((1, 1, 1, 1))).all()
    ident = ca_from_rule(z4, LocalRule(space=z4, memory=(0,), table=[0, 1]))
    assert ident == identity_map(z4.gset)


def test_xor_rule(z4):
    xor = LocalRule(space=z4, memory=(0, 1), table=[0, 1, 1, 0])
    tau = ca_from_rule(z4, xor)
    # hand expansion of tau(x)(g) = x(g) xor x(g+1)
    expected = []
    for c in range(16):
        d = z4.decode(c)
        expected.append(z4.encode([d[i] ^ d[(i + 1) % 4] for i in range(4)]))
    assert tau.as_tuple() == tuple(expected)
    assert not tau.is_bijective() and map_rank(tau) == 8
    assert minimal_memory_set(z4, tau) == (0, 1)


def test_ca_matches_pointwise_oracle(s3):
    rule = LocalRule(space=s3, memory=(0, 2), table=[0, 1, 1, 1])
    tau = ca_from_rule(s3, rule)
    table = {(a, b): int(v) for (a, b), v in
             zip([(0, 0), (0, 1), (1, 0), (1, 1)], rule.table)}
    for c in range(64):
        digits = s3.decode(c)
        config = {s3.display[i]: digits[i] for i in range(6)}
        out = oracles.cellular_step(s3.group.mul, 2, list(s3.display),
                                    [0, 2], table, config)
        assert s3.decode(int(tau.image[c])) == tuple(out[h] for h in s3.display)


def test_rule_space_mismatch(z4, z6):
    rule = LocalRule(space=z4, memory=(0, 1), table=[0, 1, 1, 0])
    with pytest.raises(DomainError):
        ca_from_rule(z6, rule)


def test_rule_from_map_roundtrip(z4):
    ident = identity_map(z4.gset)
    full = rule_from_map(z4, ident)
    assert full.memory == z4.display
    assert ca_from_rule(z4, full) == ident
    with pytest.raises(DomainError):
        rule_from_map(z4, np.array([1, 0] + list(range(2, 16))))


def test_every_endomorphism_is_a_cellular_automaton():
    for space in (build_shift(make_cyclic(2), 2), build_shift(make_cyclic(3), 2)):
        end = enumerate_end(space.gset)
        for img in end.images:
            tau = EquivariantMap(space.gset, img)
            assert ca_from_rule(space, rule_from_map(space, tau)) == tau


def test_bijective_ca_has_ca_inverse():
    space = build_shift(make_cyclic(3), 2)
    ident = identity_map(space.gset)
    for img in enumerate_aut(space.gset).images:
        tau = EquivariantMap(space.gset, img)
        inverse = EquivariantMap(space.gset, np.argsort(img))
        assert compose(tau, inverse) == ident == compose(inverse, tau)
        assert ca_from_rule(space, rule_from_map(space, inverse)) == inverse


def test_minimal_memory_golden(z4):
    assert minimal_memory_set(z4, identity_map(z4.gset)) == (0,)
    const = ca_from_rule(z4, LocalRule(space=z4, memory=(), table=[0]))
    assert minimal_memory_set(z4, const) == ()
    # a rule declared on a larger memory set than it uses gets shrunk
    padded = LocalRule(space=z4, memory=(0, 1, 2),
                       table=[0, 0, 1, 1, 1, 1, 0, 0])   # xor of first two digits
    assert minimal_memory_set(z4, ca_from_rule(z4, padded)) == (0, 1)


def test_minimal_memory_is_contained_in_declared_memory(s3):
    rng = np.random.default_rng(5)
    for _ in range(10):
        memory = tuple(sorted(rng.choice(6, rng.integers(0, 4), replace=False)))
        table = rng.integers(0, 2, 2 ** len(memory))
        rule = LocalRule(space=s3, memory=memory, table=table)
        minimal = minimal_memory_set(s3, ca_from_rule(s3, rule))
        assert set(minimal) <= set(rule.memory)


@given(code=st.integers(min_value=0, max_value=3 ** 4 - 1))
@settings(max_examples=60, deadline=None)
def test_encode_decode_roundtrip(code):
    space = build_shift(make_cyclic(4), 3)
    assert space.encode(space.decode(code)) == code
