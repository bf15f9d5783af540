"""Tests for :mod:`src.identities`
"""
import json

import pytest

from src.errors import BudgetExceeded
from src.identities.chains import (IdentityFailure, OpChain, OpTable, all_tables, enumerate_chains,
                                   idempotentize, load_chain, pad_to_jonsson, preserves, rules, verify_chain)

MAJORITY = OpTable.from_function(2, lambda x, y, z: int(x + y + z >= 2))
MINORITY = OpTable.from_function(2, lambda x, y, z: x ^ y ^ z)
FIRST = OpTable.from_function(2, lambda x, y, z: x)
SECOND = OpTable.from_function(2, lambda x, y, z: y)
THIRD = OpTable.from_function(2, lambda x, y, z: z)
DISCRIMINATOR = OpTable.from_function(2, lambda x, y, z: z if x == y else x)


def test_majority_is_a_jonsson_chain():
    assert verify_chain(OpChain([MAJORITY], 'jonsson')) == (True, None)


@pytest.mark.parametrize('op, failure', [
    (FIRST, IdentityFailure(5, 1, 0, 1)),
    (SECOND, IdentityFailure(2, 1, 0, 1)),
    (THIRD, IdentityFailure(1, 1, 0, 1)),
    (DISCRIMINATOR, IdentityFailure(1, 1, 0, 1)),
])
def test_projections_fail_jonsson(op, failure):
    assert verify_chain(OpChain([op], 'jonsson')) == (False, failure)


def test_discriminator_is_pixley():
    assert verify_chain(OpChain([DISCRIMINATOR], 'pixley')) == (True, None)


def test_directed_chain_pads_to_jonsson():
    directed = OpChain([MAJORITY, THIRD], 'directed-jonsson')
    assert verify_chain(directed) == (True, None)
    padded = pad_to_jonsson(directed)
    assert padded.kind == 'jonsson'
    assert padded.ops == [MAJORITY, THIRD, THIRD]
    assert verify_chain(padded) == (True, None)
    jonsson = OpChain([MAJORITY], 'jonsson')
    assert pad_to_jonsson(jonsson) is jonsson
    with pytest.raises(ValueError):
        pad_to_jonsson(OpChain([DISCRIMINATOR], 'pixley'))


def test_rule_counts():
    assert [r.number for r in rules('jonsson', 3)] == [1, 2, 2, 2, 3, 4, 5]
    assert [r.number for r in rules('pixley', 2)] == [1, 2, 2, 3, 4]
    assert [r.number for r in rules('directed-jonsson', 2)] == [1, 2, 2, 3, 4]
    with pytest.raises(ValueError):
        rules('nu', 1)


def test_preserves():
    assert preserves(MAJORITY, [(0, 1), (1, 0)])
    assert not preserves(MINORITY, [(0, 0), (0, 1), (1, 1)])
    assert not preserves(MAJORITY, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert preserves(MINORITY, [])
    with pytest.raises(ValueError):
        preserves(MAJORITY, [(0, 2)])


def test_idempotentize():
    negated = OpTable.from_function(2, lambda x, y, z: 1 - int(x + y + z >= 2))
    chain = idempotentize(OpChain([negated], 'jonsson'), [0, 1], [[0, 1], [1, 0]])
    assert chain.ops == [MAJORITY]
    assert verify_chain(chain) == (True, None)
    with pytest.raises(ValueError, match='No bijection'):
        idempotentize(OpChain([negated], 'jonsson'), [0, 1], [[0, 1]])
    with pytest.raises(ValueError, match='not a bijection'):
        idempotentize(OpChain([negated], 'jonsson'), [0, 1], [[0, 0]])


@pytest.mark.parametrize('length, kind, count', [
    (1, 'jonsson', 4),
    (1, 'pixley', 4),
    (2, 'directed-jonsson', 16),
])
def test_enumerate_chains(length, kind, count):
    total, found = enumerate_chains(2, length, kind, samples=2)
    assert total == count
    assert len(found) == 2
    assert all(verify_chain(chain) == (True, None) for chain in found)


def test_enumeration_agrees_with_exhaustive_check():
    tables = all_tables(2)
    assert len(tables) == 256
    count = sum(verify_chain(OpChain([OpTable(2, t)], 'jonsson'))[0] for t in tables)
    assert count == enumerate_chains(2, 1, 'jonsson', samples=0)[0]


def test_enumeration_limits():
    with pytest.raises(BudgetExceeded):
        enumerate_chains(3, 1, 'jonsson')
    with pytest.raises(ValueError):
        enumerate_chains(2, 2, 'jonsson')


@pytest.mark.parametrize('n, table', [(2, [0] * 7), (2, [0] * 7 + [2])])
def test_op_table_errors(n, table):
    with pytest.raises(ValueError):
        OpTable(n, table)


def test_op_chain_errors():
    with pytest.raises(ValueError):
        OpChain([MAJORITY, MAJORITY], 'jonsson')
    with pytest.raises(ValueError):
        OpChain([], 'pixley')
    with pytest.raises(ValueError):
        OpChain([MAJORITY], 'near-unanimity')
    with pytest.raises(ValueError):
        OpChain([MAJORITY, OpTable(1, [0])], 'pixley')


def test_load_chain(tmp_path):
    path = tmp_path / 'chain.json'
    path.write_text(json.dumps(OpChain([MAJORITY, THIRD], 'directed-jonsson').get_config()))
    chain = load_chain(str(path))
    assert chain.kind == 'directed-jonsson'
    assert chain.ops == [MAJORITY, THIRD]
    with pytest.raises(ValueError):
        load_chain(str(path), kind='jonsson')
    path.write_text(json.dumps({'n': 2}))
    with pytest.raises(ValueError):
        load_chain(str(path))


@pytest.mark.parametrize('length', [1, 2])
def test_every_directed_chain_pads_to_jonsson(length):
    total, chains = enumerate_chains(2, length, 'directed-jonsson', samples=10 ** 6)
    assert len(chains) == total
    for chain in chains:
        padded = pad_to_jonsson(chain)
        assert len(padded) == 2 * length - 1
        assert padded.ops[::2] == chain.ops
        assert verify_chain(padded) == (True, None)


def test_directed_chain_count_agrees_with_exhaustive_check():
    count = sum(verify_chain(OpChain([OpTable(2, t)], 'directed-jonsson'))[0] for t in all_tables(2))
    assert count == enumerate_chains(2, 1, 'directed-jonsson', samples=0)[0]
