"""
@Description: CSP instances over a ground structure and their file format
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-15 14:38:02
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-16 16:34:58
"""
import json

from src.relations.typed import TypedRelation, full_relation, orbit_relation
from src.structures.ground import load_structure


class Instance(object):
    """Variables plus constraints; each constraint is a TypedRelation whose vars are its scope."""

    def __init__(self, ground, vars, constraints=()):
        self._ground = ground
        self._vars = tuple(vars)
        if len(set(self._vars)) != len(self._vars):
            raise ValueError(f'Instance variables must be distinct, got {self._vars}.')
        self._constraints = list(constraints)
        for c in self._constraints:
            if len(set(c.vars)) != len(c.vars):
                raise ValueError(f'Constraint scope {c.vars} repeats a variable.')
            unknown = [x for x in c.vars if x not in self._vars]
            if unknown:
                raise ValueError(f'Constraint scope {c.vars} uses undeclared variables {unknown}.')

    @property
    def ground(self):
        return self._ground

    @property
    def vars(self):
        return self._vars

    @property
    def constraints(self):
        return list(self._constraints)

    @property
    def is_trivial(self):
        return any(c.is_empty for c in self._constraints)

    def ordered(self, variables):
        """``variables`` as a tuple in instance order."""
        variables = set(variables)
        return tuple(x for x in self._vars if x in variables)

    def covering(self, variables):
        variables = set(variables)
        return [c for c in self._constraints if variables <= set(c.vars)]

    def row_count(self):
        return sum(len(c) for c in self._constraints)

    def get_config(self):
        return {
            'structure': self._ground.name if self._ground.name != 'inline' else self._ground.get_config(),
            'vars': list(self._vars),
            'constraints': [{'scope': list(c.vars), 'rel': c.get_config()} for c in self._constraints]
        }

    @classmethod
    def from_config(cls, config, ground=None):
        """Parse an instance document; ``ground`` overrides its `structure` entry."""
        if ground is None:
            if 'structure' not in config:
                raise ValueError('Instance document is missing `structure`.')
            ground = load_structure(config.get('structure'))
        if 'vars' not in config:
            raise ValueError('Instance document is missing `vars`.')
        constraints = []
        for entry in config.get('constraints', []):
            scope = entry.get('scope')
            if not scope:
                raise ValueError(f'Constraint {entry} has no scope.')
            rel = entry.get('rel', 'full')
            constraints.append(parse_relation(ground, scope, rel))
        return cls(ground, config.get('vars'), constraints)

    def __repr__(self):
        return f'Instance(vars={len(self._vars)}, constraints={len(self._constraints)}, rows={self.row_count()})'


def parse_relation(ground, scope, rel):
    """A row document, ``"full"``, or the ``"orbit:E|N"`` shorthand over an injective k-tuple."""
    if isinstance(rel, dict):
        return TypedRelation.from_config(ground, rel, vars=scope)
    if rel == 'full':
        return full_relation(ground, scope)
    if isinstance(rel, str) and rel.startswith('orbit:'):
        labels = [name for name in rel[len('orbit:'):].split('|') if name]
        if not labels:
            raise ValueError(f'Orbit shorthand `{rel}` names no label.')
        return orbit_relation(ground, scope, labels)
    raise ValueError(f'Unknown relation `{rel}`. Should be a row document, "full" or "orbit:<labels>".')


def load_instance(path, ground=None):
    with open(path, 'r') as f:
        return Instance.from_config(json.load(f), ground=ground)
