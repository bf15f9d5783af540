"""
@Description: Ternary operation tables, height-1 identity chains, polymorphism tests and chain enumeration
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-08 16:49:31
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-09 17:17:59
"""
import itertools
import json
import logging
from typing import NamedTuple

import numpy as np
from tqdm import tqdm

from src.errors import BudgetExceeded

logger = logging.getLogger(__name__)

KINDS = ('jonsson', 'pixley', 'directed-jonsson')

# Arguments of each term as functions of the pair (x, y).
PATTERNS = {
    'xxx': (0, 0, 0),
    'yyy': (1, 1, 1),
    'xxy': (0, 0, 1),
    'xyy': (0, 1, 1),
    'xyx': (0, 1, 0),
}


class Rule(NamedTuple):
    """op[left](left_pattern) = op[right](right_pattern) for all x, y."""
    number: int
    left: int
    left_pattern: str
    right: int
    right_pattern: str


class IdentityFailure(NamedTuple):
    number: int
    op: int
    x: int
    y: int


class OpTable(object):
    """A total ternary operation on range(n)."""

    def __init__(self, n, table):
        table = np.asarray(table, dtype=np.int64)
        if table.size != n ** 3:
            raise ValueError(f'A ternary table over {n} elements needs {n ** 3} entries, got {table.size}.')
        table = table.reshape((n, n, n))
        if n and (table.min() < 0 or table.max() >= n):
            raise ValueError(f'Table values must lie in range({n}).')
        self.n = n
        self.table = table

    @classmethod
    def from_function(cls, n, f):
        return cls(n, [f(x, y, z) for x, y, z in itertools.product(range(n), repeat=3)])

    def __call__(self, x, y, z):
        return int(self.table[x, y, z])

    def diagonal(self):
        return np.array([self.table[x, x, x] for x in range(self.n)], dtype=np.int64)

    def flat(self):
        return self.table.reshape(-1).tolist()

    def __eq__(self, other):
        if not isinstance(other, OpTable):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.n, tuple(self.flat())))


class OpChain(object):
    def __init__(self, ops, kind):
        if kind not in KINDS:
            raise ValueError(f'Unknown chain kind `{kind}`. Should be one of {KINDS}.')
        ops = list(ops)
        if not ops:
            raise ValueError('A chain needs at least one operation.')
        if len({op.n for op in ops}) != 1:
            raise ValueError('All operations of a chain must share one domain.')
        if kind == 'jonsson' and len(ops) % 2 == 0:
            raise ValueError(f'Jonsson chains have odd length, got {len(ops)}.')
        self.ops = ops
        self.kind = kind

    @property
    def n(self):
        return self.ops[0].n

    def __len__(self):
        return len(self.ops)

    def get_config(self):
        return {'n': self.n, 'kind': self.kind, 'tables': [op.flat() for op in self.ops]}

    @classmethod
    def from_config(cls, config, kind=None):
        for key in ('n', 'tables'):
            if key not in config:
                raise ValueError(f'Operation document is missing `{key}`.')
        n = config.get('n')
        return cls([OpTable(n, table) for table in config.get('tables')], kind or config.get('kind', 'jonsson'))


def load_chain(path, kind=None):
    with open(path, 'r') as f:
        return OpChain.from_config(json.load(f), kind=kind)


def rules(kind, length):
    """The identities of a chain, in the order they are checked.

    Jonsson chains of length 2n+1 link J_{2i-1} with J_{2i} and J_{2i} with
    J_{2i+1} for i in 1..n only; the last operation is handled by the final
    identity.
    """
    last = length - 1
    if kind == 'jonsson':
        n = (length - 1) // 2
        return ([Rule(1, 0, 'xxy', 0, 'xxx')]
                + [Rule(2, i, 'xyx', i, 'xxx') for i in range(length)]
                + [Rule(3, 2 * i - 2, 'xyy', 2 * i - 1, 'xyy') for i in range(1, n + 1)]
                + [Rule(4, 2 * i - 1, 'xxy', 2 * i, 'xxy') for i in range(1, n + 1)]
                + [Rule(5, last, 'xyy', last, 'yyy')])
    if kind == 'pixley':
        return ([Rule(1, 0, 'xyy', 0, 'xxx')]
                + [Rule(2, i, 'xyx', i, 'xxx') for i in range(length)]
                + [Rule(3, i, 'xxy', i + 1, 'xyy') for i in range(last)]
                + [Rule(4, last, 'xxy', last, 'yyy')])
    if kind == 'directed-jonsson':
        return ([Rule(1, 0, 'xxy', 0, 'xxx')]
                + [Rule(2, i, 'xyx', i, 'xxx') for i in range(length)]
                + [Rule(3, i, 'xyy', i + 1, 'xxy') for i in range(last)]
                + [Rule(4, last, 'xyy', last, 'yyy')])
    raise ValueError(f'Unknown chain kind `{kind}`. Should be one of {KINDS}.')


def _evaluate(tables, pattern, n):
    """Values of the term over the (x, y) grid; ``tables`` has shape (..., n, n, n)."""
    x, y = np.meshgrid(np.arange(n), np.arange(n), indexing='ij')
    args = [(x, y)[a] for a in PATTERNS[pattern]]
    return tables[..., args[0], args[1], args[2]]


def verify_chain(chain):
    """Returns (holds, first IdentityFailure or None); operation indices in failures are 1-based."""
    n = chain.n
    for rule in rules(chain.kind, len(chain)):
        lhs = _evaluate(chain.ops[rule.left].table, rule.left_pattern, n)
        rhs = _evaluate(chain.ops[rule.right].table, rule.right_pattern, n)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            x, y = bad[0]
            return False, IdentityFailure(rule.number, rule.left + 1, int(x), int(y))
    return True, None


def preserves(f, R):
    """True iff f applied coordinatewise to any three tuples of R lands in R."""
    R = np.asarray(R, dtype=np.int64)
    if R.size == 0:
        return True
    if R.ndim != 2:
        raise ValueError(f'Relation must be a list of equal-length tuples, got shape {R.shape}.')
    if R.min() < 0 or R.max() >= f.n:
        raise ValueError(f'Relation values must lie in range({f.n}).')
    a, b, c = R[:, None, None, :], R[None, :, None, :], R[None, None, :, :]
    image = f.table[a, b, c]
    weights = f.n ** np.arange(R.shape[1])
    return bool(np.isin(image @ weights, R @ weights).all())


def idempotentize(chain, B, pool):
    """Replace each J_i by alpha_i^-1 o J_i, with alpha_i from ``pool`` matching the diagonal of J_i on B."""
    n = chain.n
    B = sorted(set(B))
    if any(not 0 <= b < n for b in B):
        raise ValueError(f'B must be a subset of range({n}), got {B}.')
    pool = [np.asarray(alpha, dtype=np.int64) for alpha in pool]
    for alpha in pool:
        if sorted(alpha.tolist()) != list(range(n)):
            raise ValueError(f'Pool element {alpha.tolist()} is not a bijection of range({n}).')
    ops = []
    for i, op in enumerate(chain.ops, start=1):
        diagonal = op.diagonal()
        for alpha in pool:
            if all(alpha[b] == diagonal[b] for b in B):
                break
        else:
            raise ValueError(f'No bijection in the pool agrees with the diagonal of operation {i} on B.')
        inverse = np.argsort(alpha)
        ops.append(OpTable(n, inverse[op.table]))
    return OpChain(ops, chain.kind)


def pad_to_jonsson(chain):
    """A directed Jonsson chain D_1..D_m as the Jonsson chain D_1, M_1, D_2, ..., M_{m-1}, D_m.

    M_i(x, y, z) = D_i(x, z, z).
    """
    if chain.kind == 'jonsson':
        return chain
    if chain.kind != 'directed-jonsson':
        raise ValueError(f'Only directed Jonsson chains have a height-1 padding, got `{chain.kind}`.')
    n = chain.n
    z = np.arange(n)
    ops = []
    for i, op in enumerate(chain.ops):
        ops.append(op)
        if i < len(chain) - 1:
            ops.append(OpTable(n, np.broadcast_to(op.table[:, z, z][:, None, :], (n, n, n))))
    return OpChain(ops, 'jonsson')


def all_tables(n):
    """Every ternary table over range(n), shape (n ** n ** 3, n, n, n)."""
    return np.array(list(itertools.product(range(n), repeat=n ** 3)), dtype=np.int64).reshape((-1, n, n, n))


def enumerate_chains(n, length, kind, budget=1 << 20, samples=3, progress=False):
    """Count every chain of the given kind over range(n); returns (count, sample chains).

    Candidates for each position are filtered by their own identities, then
    consecutive positions are matched on the values of their linking terms.
    """
    if n < 1 or length < 1:
        raise ValueError(f'Need n >= 1 and length >= 1, got n={n}, length={length}.')
    if n ** (n ** 3) > budget:
        raise BudgetExceeded(f'{n ** (n ** 3)} tables per position exceed the budget of {budget}.')
    if kind == 'jonsson' and length % 2 == 0:
        raise ValueError(f'Jonsson chains have odd length, got {length}.')
    tables = all_tables(n)
    masks = [np.ones(len(tables), dtype=bool) for _ in range(length)]
    links = {}
    for rule in rules(kind, length):
        if rule.left == rule.right:
            lhs = _evaluate(tables, rule.left_pattern, n)
            rhs = _evaluate(tables, rule.right_pattern, n)
            masks[rule.left] &= (lhs == rhs).reshape(len(tables), -1).all(axis=1)
        else:
            links[rule.left] = (rule.left_pattern, rule.right_pattern)
    candidates = [np.flatnonzero(mask) for mask in masks]

    def keys(position, pattern):
        values = _evaluate(tables[candidates[position]], pattern, n).reshape(len(candidates[position]), -1)
        return [row.tobytes() for row in values]

    counts = np.ones(len(candidates[0]), dtype=object)
    step_keys = []
    for position in tqdm(range(length - 1), disable=not progress, desc=f'{kind} chains'):
        left_pattern, right_pattern = links[position]
        left, right = keys(position, left_pattern), keys(position + 1, right_pattern)
        totals = {}
        for key, count in zip(left, counts):
            totals[key] = totals.get(key, 0) + count
        counts = np.array([totals.get(key, 0) for key in right], dtype=object)
        step_keys.append((left, right))
    total = int(sum(counts))

    found = []

    def extend(prefix):
        if len(found) >= samples:
            return
        position = len(prefix)
        if position == length:
            found.append(OpChain([OpTable(n, tables[candidates[p][i]]) for p, i in enumerate(prefix)], kind))
            return
        for i in range(len(candidates[position])):
            if position and step_keys[position - 1][0][prefix[-1]] != step_keys[position - 1][1][i]:
                continue
            extend(prefix + [i])
            if len(found) >= samples:
                return

    if total and samples:
        extend([])
    logger.debug('%d %s chains of length %d over %d elements', total, kind, length, n)
    return total, found
