"""
@Description: Orbit labels, their permutation action, and finite labeled structures
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-27 17:02:38
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-13 12:46:22
"""
import itertools
from typing import NamedTuple


class OrbitLabel(NamedTuple):
    id: int
    name: str


def permute(t, perm):
    """(t[perm[0]], ..., t[perm[k-1]])"""
    return tuple(t[p] for p in perm)


def compose_perms(tau, sigma):
    """The permutation ``rho`` with permute(permute(t, tau), sigma) == permute(t, rho)."""
    return tuple(tau[s] for s in sigma)


def invert_perm(perm):
    inverse = [0] * len(perm)
    for i, p in enumerate(perm):
        inverse[p] = i
    return tuple(inverse)


def sorting_perm(t):
    """Return (s, perm) with s = sorted(t) and t == permute(s, perm); t must be injective."""
    s = tuple(sorted(t))
    return s, tuple(s.index(x) for x in t)


class Signature(object):
    """Orbits of injective k-tuples, presented as labels with an action of Sym(k).

    The label of ``permute(t, perm)`` is ``act(perm, label of t)``. Entries
    missing from ``action`` default to the identity.
    """

    def __init__(self, k, labels, action=None):
        if k < 2:
            raise ValueError(f'Signature arity must be at least 2, got {k}.')
        if len(set(labels)) != len(labels) or not labels:
            raise ValueError(f'Labels must be a nonempty list of distinct names, got {labels}.')
        self._k = k
        self._labels = [OrbitLabel(i, name) for i, name in enumerate(labels)]
        self._ids = {name: i for i, name in enumerate(labels)}
        self._perms = list(itertools.permutations(range(k)))
        self._action = {}
        for perm, label_in, label_out in (action or []):
            perm = tuple(perm)
            if sorted(perm) != list(range(k)):
                raise ValueError(f'Invalid permutation {perm} for arity {k}.')
            self._action[(perm, self.label_id(label_in))] = self.label_id(label_out)

    @property
    def k(self):
        return self._k

    @property
    def labels(self):
        return list(self._labels)

    @property
    def label_ids(self):
        return range(len(self._labels))

    @property
    def perms(self):
        return self._perms

    def label_id(self, label):
        if isinstance(label, int):
            if not 0 <= label < len(self._labels):
                raise ValueError(f'Unknown label id {label}.')
            return label
        if label not in self._ids:
            raise ValueError(f'Unknown label `{label}`. Should be in {sorted(self._ids)}.')
        return self._ids[label]

    def name(self, label_id):
        return self._labels[label_id].name

    def act(self, perm, label_id):
        return self._action.get((tuple(perm), label_id), label_id)

    def tuple_label(self, labels, t):
        """Label of the injective tuple ``t`` in a labeling keyed by sorted tuples, or None."""
        s, perm = sorting_perm(t)
        label = labels.get(s)
        if label is None:
            return None
        return self.act(perm, label)

    def normalize(self, t, label_id):
        """Turn a label on the injective tuple ``t`` into the label on sorted(t)."""
        s, perm = sorting_perm(t)
        return s, self.act(invert_perm(perm), label_id)

    def group_law_violations(self):
        violations = []
        identity = tuple(range(self._k))
        for label in self.label_ids:
            if self.act(identity, label) != label:
                violations.append(f'identity moves label {self.name(label)}')
        for tau, sigma in itertools.product(self._perms, repeat=2):
            rho = compose_perms(tau, sigma)
            for label in self.label_ids:
                lhs = self.act(sigma, self.act(tau, label))
                rhs = self.act(rho, label)
                if lhs != rhs:
                    violations.append(
                        f'action of {sigma} after {tau} sends {self.name(label)} to '
                        f'{self.name(lhs)} but {rho} sends it to {self.name(rhs)}')
        return violations

    def get_config(self):
        return {
            'k': self._k,
            'labels': [label.name for label in self._labels],
            'action': [[list(perm), self.name(label_in), self.name(label_out)]
                       for (perm, label_in), label_out in sorted(self._action.items())]
        }

    def __eq__(self, other):
        if not isinstance(other, Signature):
            return NotImplemented
        return self is other or self.get_config() == other.get_config()

    def __hash__(self):
        return hash((self._k, tuple(label.name for label in self._labels)))


class LabeledStructure(object):
    """A finite structure on vertices 0..n-1 given by labeled k-tuples.

    Atoms are closed under the signature action on construction. A proper
    structure has only injective atoms and at most one label per k-set;
    improper ones (loops, doubly labeled sets) only occur as bounds.
    """

    def __init__(self, sig, n, atoms=()):
        self._sig = sig
        self._n = n
        closed = set()
        for t, label in atoms:
            t = tuple(t)
            label = sig.label_id(label)
            if len(t) != sig.k or any(not 0 <= x < n for x in t):
                raise ValueError(f'Atom {t} does not fit a {sig.k}-ary structure on {n} vertices.')
            for perm in sig.perms:
                closed.add((permute(t, perm), sig.act(perm, label)))
        self._atoms = frozenset(closed)
        self._labels = {}
        self._proper = True
        for t, label in self._atoms:
            if len(set(t)) < len(t):
                self._proper = False
            elif t == tuple(sorted(t)):
                if self._labels.setdefault(t, label) != label:
                    self._proper = False

    @classmethod
    def from_labels(cls, sig, n, labels):
        """Build from a mapping sorted k-tuple -> label."""
        return cls(sig, n, labels.items())

    @property
    def sig(self):
        return self._sig

    @property
    def n(self):
        return self._n

    @property
    def atoms(self):
        return self._atoms

    @property
    def labels(self):
        """Mapping sorted injective k-tuple -> label id (proper structures only)."""
        return dict(self._labels)

    @property
    def is_proper(self):
        return self._proper

    @property
    def is_full(self):
        return self._proper and all(
            s in self._labels for s in itertools.combinations(range(self._n), self._sig.k))

    def label(self, t):
        return self._sig.tuple_label(self._labels, t)

    def get_config(self):
        return {
            'n': self._n,
            'atoms': [[list(t), self._sig.name(label)]
                      for t, label in sorted(self._atoms) if t == tuple(sorted(t))]
        }

    @classmethod
    def from_config(cls, sig, config):
        return cls(sig, config.get('n'), [(t, label) for t, label in config.get('atoms', [])])

    def __eq__(self, other):
        if not isinstance(other, LabeledStructure):
            return NotImplemented
        return self._n == other._n and self._atoms == other._atoms and self._sig == other._sig

    def __hash__(self):
        return hash((self._n, self._atoms))

    def __repr__(self):
        body = ', '.join(f'{t}:{self._sig.name(label)}' for t, label in sorted(self._labels.items()))
        return f'LabeledStructure(n={self._n}, {{{body}}})'
