"""
@Description: Finite presentations of ground structures, embedding/homomorphism tests and the labeling search
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-26 16:55:25
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-12 11:35:05
"""
import itertools
import json
import logging
import os

from src.structures.signature import LabeledStructure, Signature

logger = logging.getLogger(__name__)


def colex_subsets(n, k):
    """k-subsets of range(n) as sorted tuples, ordered by their largest element first."""
    return sorted(itertools.combinations(range(n), k), key=lambda s: s[::-1])


def _touching_maps(n, size, touched):
    """Injective maps range(size) -> range(n) whose image contains ``touched``."""
    rest = [v for v in range(n) if v not in touched]
    for slots in itertools.permutations(range(size), len(touched)):
        others = [p for p in range(size) if p not in slots]
        for fill in itertools.permutations(rest, len(others)):
            h = [None] * size
            for p, v in zip(slots, touched):
                h[p] = v
            for p, v in zip(others, fill):
                h[p] = v
            yield h


def _check_same_signature(F, X):
    if F.sig != X.sig:
        raise ValueError('Structures are over different signatures.')


def embeds(F, X):
    """True iff an injective vertex map sends every atom of F to an atom of X."""
    _check_same_signature(F, X)
    if F.n > X.n:
        return False
    atoms = sorted(F.atoms)
    for h in itertools.permutations(range(X.n), F.n):
        if all((tuple(h[x] for x in t), label) in X.atoms for t, label in atoms):
            return True
    return False


def maps_hom(F, X):
    """True iff some vertex map, injective or not, sends every atom of F to an atom of X.

    Atoms of F collapsed by the map must meet atoms of X with the same
    repeated-vertex pattern, so a proper X only receives injective images.
    """
    _check_same_signature(F, X)
    atoms = sorted(F.atoms)
    if X.n == 0:
        return F.n == 0
    for h in itertools.product(range(X.n), repeat=F.n):
        if all((tuple(h[x] for x in t), label) in X.atoms for t, label in atoms):
            return True
    return False


class GroundStructure(object):
    """Finite presentation of a k-neoliberal structure with finite duality.

    ``b`` is the largest embedding bound (floored at 2) and ``d`` the largest
    homomorphism bound plus two (floored at 3).
    """

    def __init__(self, sig, embed_bounds=(), hom_bounds=(), name=None):
        self._sig = sig
        self._embed_bounds = list(embed_bounds)
        self._hom_bounds = list(hom_bounds)
        self._name = name
        for bound in self._embed_bounds + self._hom_bounds:
            if bound.sig != sig:
                raise ValueError('Every bound must be over the structure signature.')
        self._b = max([2] + [F.n for F in self._embed_bounds])
        self._d = max(3, max([F.n for F in self._hom_bounds], default=0) + 2)
        # Bounds with loops or doubly labeled sets never embed into a proper structure.
        self._compiled = [
            (F.n, sorted(F.labels.items()))
            for F in self._embed_bounds if F.is_proper and F.labels
        ]

    @property
    def sig(self):
        return self._sig

    @property
    def k(self):
        return self._sig.k

    @property
    def b(self):
        return self._b

    @property
    def d(self):
        return self._d

    @property
    def name(self):
        return self._name or 'inline'

    @property
    def embed_bounds(self):
        return list(self._embed_bounds)

    @property
    def hom_bounds(self):
        return list(self._hom_bounds)

    def violates(self, labels, n, touching=None):
        """True iff some embedding bound embeds into the partial labeling ``labels`` on n vertices."""
        for size, atoms in self._compiled:
            if size > n:
                continue
            if touching is None:
                maps = itertools.permutations(range(n), size)
            else:
                maps = _touching_maps(n, size, touching)
            for h in maps:
                for t, label in atoms:
                    if self._sig.tuple_label(labels, tuple(h[x] for x in t)) != label:
                        break
                else:
                    return True
        return False

    def get_config(self):
        config = self._sig.get_config()
        config.update({
            'name': self._name,
            'embed_bounds': [F.get_config() for F in self._embed_bounds],
            'hom_bounds': [F.get_config() for F in self._hom_bounds]
        })
        return config

    @classmethod
    def from_config(cls, config):
        for key in ('k', 'labels'):
            if key not in config:
                raise ValueError(f'Structure document is missing `{key}`.')
        sig = Signature(config.get('k'), config.get('labels'), config.get('action', []))
        embed_bounds = [LabeledStructure.from_config(sig, F) for F in config.get('embed_bounds', [])]
        hom_bounds = [LabeledStructure.from_config(sig, F) for F in config.get('hom_bounds', [])]
        return cls(sig, embed_bounds, hom_bounds, name=config.get('name'))

    def __repr__(self):
        return f'GroundStructure({self.name}, k={self.k}, b={self._b}, d={self._d})'


def complete_labelings(ground, n, fixed=None, enumerate_first=None, hook=None):
    """Yield the realizable full labelings of n vertices that extend ``fixed``.

    Labelings are dicts keyed by sorted k-tuples. Free k-sets listed in
    ``enumerate_first`` are enumerated exhaustively; every other free k-set
    only needs one realizable completion, which the yielded labeling carries.
    ``hook(s, labels)`` is called after each assignment and prunes on False.
    """
    sig = ground.sig
    current = dict(fixed or {})
    if ground.violates(current, n):
        return
    free = [s for s in colex_subsets(n, sig.k) if s not in current]
    if enumerate_first is None:
        first, tail = free, []
    else:
        wanted = set(enumerate_first)
        first = [s for s in free if s in wanted]
        tail = [s for s in free if s not in wanted]
    order = first + tail

    def assign(i, end):
        if i == end:
            yield
            return
        s = order[i]
        for label in sig.label_ids:
            current[s] = label
            try:
                if ground.violates(current, n, touching=s):
                    continue
                if hook is not None and not hook(s, current):
                    continue
                yield from assign(i + 1, end)
            finally:
                del current[s]

    for _ in assign(0, len(first)):
        for _ in assign(len(first), len(order)):
            yield dict(current)
            break


def realizable(X, ground):
    """A fully labeled X is realizable iff no embedding bound embeds into it."""
    if not X.is_full:
        raise ValueError('Realizability is only defined for fully labeled structures.')
    return not any(embeds(F, X) for F in ground.embed_bounds)


def maps_to_ground(X, ground):
    """Finite duality: X maps homomorphically to the ground structure iff no hom bound maps to X."""
    return not any(maps_hom(F, X) for F in ground.hom_bounds)


def one_point_extensions(X, ground):
    if not X.is_full:
        raise ValueError('One-point extensions need a fully labeled structure.')
    return [LabeledStructure.from_labels(ground.sig, X.n + 1, labels)
            for labels in complete_labelings(ground, X.n + 1, fixed=X.labels)]


def validate_presentation(ground, depth=5):
    """Bounded-size sanity checks of a presentation; returns a list of violations."""
    sig = ground.sig
    if depth < sig.k:
        raise ValueError(f'Validation depth must be at least k={sig.k}, got {depth}.')
    report = list(sig.group_law_violations())
    for label in sig.label_ids:
        X = LabeledStructure.from_labels(sig, sig.k, {tuple(range(sig.k)): label})
        if not realizable(X, ground):
            report.append(f'label {sig.name(label)} is not realizable on any {sig.k}-set')
    level = [LabeledStructure(sig, 0)]
    for size in range(depth):
        following = []
        for X in level:
            extensions = one_point_extensions(X, ground)
            if not extensions:
                if size == sig.k - 1:
                    report.append(f'the {size}-set admits no realizable completion')
                else:
                    report.append(f'{X!r} has no realizable one-point extension')
            following.extend(extensions)
        level = following
        logger.debug('validated %d realizable structures on %d vertices', len(level), size + 1)
    return report


def random_graph():
    sig = Signature(2, ['E', 'N'], [[[1, 0], 'E', 'E'], [[1, 0], 'N', 'N']])
    double = LabeledStructure(sig, 2, [((0, 1), 'E'), ((0, 1), 'N')])
    return GroundStructure(
        sig,
        embed_bounds=[double],
        hom_bounds=[LabeledStructure(sig, 1, [((0, 0), 'E')]),
                    LabeledStructure(sig, 1, [((0, 0), 'N')]),
                    double],
        name='random-graph')


def henson_k3_free():
    base = random_graph()
    sig = base.sig
    triangle = LabeledStructure(sig, 3, [((0, 1), 'E'), ((0, 2), 'E'), ((1, 2), 'E')])
    return GroundStructure(
        sig,
        embed_bounds=base.embed_bounds + [triangle],
        hom_bounds=base.hom_bounds + [triangle],
        name='henson-k3-free')


def hypergraph_3():
    symmetric = [[list(perm), label, label]
                 for perm in itertools.permutations(range(3)) for label in ('H', 'N')]
    sig = Signature(3, ['H', 'N'], symmetric)
    double = LabeledStructure(sig, 3, [((0, 1, 2), 'H'), ((0, 1, 2), 'N')])
    loops = []
    for label in ('H', 'N'):
        loops.append(LabeledStructure(sig, 1, [((0, 0, 0), label)]))
        loops.append(LabeledStructure(sig, 2, [((0, 0, 1), label)]))
    return GroundStructure(sig, embed_bounds=[double], hom_bounds=loops + [double],
                           name='hypergraph-3')


BUILTINS = {
    'random-graph': random_graph,
    'henson-k3-free': henson_k3_free,
    'hypergraph-3': hypergraph_3,
}


def load_structure(name_or_path):
    """A builtin by name, an inline dict, or a path to a JSON presentation."""
    if isinstance(name_or_path, GroundStructure):
        return name_or_path
    if isinstance(name_or_path, dict):
        return GroundStructure.from_config(name_or_path)
    if name_or_path in BUILTINS:
        return BUILTINS[name_or_path]()
    if not os.path.exists(name_or_path):
        raise ValueError(f'Unknown structure `{name_or_path}`. '
                         f'Should be a path or one of {sorted(BUILTINS)}.')
    with open(name_or_path, 'r') as f:
        return GroundStructure.from_config(json.load(f))
