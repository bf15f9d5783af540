"""
@Description: Typed relations: rows are equality partitions plus realizable orbit labelings of the quotient
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-21 11:20:20
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-07 14:40:40
"""
import itertools
import re
from collections import defaultdict
from typing import NamedTuple

from src.structures.ground import complete_labelings


class TypeRow(NamedTuple):
    """One full type over m positions.

    ``partition[i]`` is the class of position i, classes numbered by first
    appearance. ``labels`` holds (sorted class k-tuple, label id) pairs.
    """
    partition: tuple
    labels: tuple

    @property
    def n_classes(self):
        return max(self.partition) + 1 if self.partition else 0

    @property
    def is_injective(self):
        return len(set(self.partition)) == len(self.partition)

    def label_map(self):
        return dict(self.labels)


def make_row(sig, partition, labels=None):
    """Canonical row: renumber classes by first appearance and reorient labels.

    Labels on classes missing from ``partition`` are dropped, which is what
    makes restriction to a sub-tuple of positions a projection.
    """
    renumber = {}
    for c in partition:
        renumber.setdefault(c, len(renumber))
    kept = {}
    for t, label in (labels or {}).items():
        if any(c not in renumber for c in t):
            continue
        s, label = sig.normalize(tuple(renumber[c] for c in t), label)
        kept[s] = label
    return TypeRow(tuple(renumber[c] for c in partition), tuple(sorted(kept.items())))


def project_row(sig, row, positions):
    return make_row(sig, [row.partition[i] for i in positions], row.label_map())


def set_partitions(m):
    """All partitions of range(m) as restricted growth strings."""
    def extend(prefix, count):
        if len(prefix) == m:
            yield tuple(prefix)
            return
        for c in range(count + 1):
            yield from extend(prefix + [c], max(count, c + 1))
    yield from extend([], 0)


def describe_row(sig, row):
    """Short display form: the label name for a single injective k-type."""
    if row.is_injective and len(row.partition) == sig.k:
        return sig.name(row.labels[0][1])
    names = [f'{"".join(map(str, t))}={sig.name(label)}' for t, label in row.labels]
    pattern = ''.join(map(str, row.partition))
    return f'[{pattern}]' + (' ' + ' '.join(names) if names else '')


class TypedRelation(object):
    """A relation over named variables, given extensionally by its type rows."""

    def __init__(self, ground, vars, rows=()):
        self._ground = ground
        self._vars = tuple(vars)
        self._rows = frozenset(rows)
        for row in self._rows:
            if len(row.partition) != len(self._vars):
                raise ValueError(f'Row {row} does not fit variables {self._vars}.')

    @property
    def ground(self):
        return self._ground

    @property
    def sig(self):
        return self._ground.sig

    @property
    def vars(self):
        return self._vars

    @property
    def rows(self):
        return self._rows

    @property
    def arity(self):
        return len(self._vars)

    @property
    def is_empty(self):
        return not self._rows

    def positions(self, t):
        unknown = [x for x in t if x not in self._vars]
        if unknown:
            raise ValueError(f'Unknown variables {unknown}, relation is over {self._vars}.')
        return [self._vars.index(x) for x in t]

    def rename(self, mapping):
        return TypedRelation(self._ground, [mapping.get(x, x) for x in self._vars], self._rows)

    def with_rows(self, rows):
        return TypedRelation(self._ground, self._vars, rows)

    def get_config(self):
        sig = self.sig
        rows = []
        for row in sorted(self._rows):
            firsts = {}
            for i, c in enumerate(row.partition):
                firsts.setdefault(c, i)
            classes = [[i for i, c in enumerate(row.partition) if c == cls] for cls in range(row.n_classes)]
            types = {'(' + ','.join(str(firsts[c]) for c in t) + ')': sig.name(label)
                     for t, label in row.labels}
            rows.append({'partition': classes, 'types': types})
        return {'vars': list(self._vars), 'rows': rows}

    @classmethod
    def from_config(cls, ground, config, vars=None):
        """Parse the row format; ``vars`` overrides the document's variable list."""
        sig = ground.sig
        vars = tuple(vars if vars is not None else config.get('vars', []))
        rows = []
        for entry in config.get('rows', []):
            partition = [None] * len(vars)
            for cls_id, members in enumerate(entry.get('partition', [[i] for i in range(len(vars))])):
                for i in members:
                    if not 0 <= i < len(vars) or partition[i] is not None:
                        raise ValueError(f'Invalid partition {entry.get("partition")} for {len(vars)} variables.')
                    partition[i] = cls_id
            if None in partition:
                raise ValueError(f'Partition {entry.get("partition")} does not cover all {len(vars)} positions.')
            labels = {}
            for key, name in entry.get('types', {}).items():
                t = tuple(int(i) for i in re.findall(r'-?\d+', key))
                if len(t) != sig.k:
                    raise ValueError(f'Type key {key} is not a {sig.k}-tuple of positions.')
                labels[tuple(partition[i] for i in t)] = sig.label_id(name)
            row = make_row(sig, partition, labels)
            expected = len(list(itertools.combinations(range(row.n_classes), sig.k)))
            if len(row.labels) != expected:
                raise ValueError(f'Row {entry} does not label every {sig.k}-set of classes.')
            rows.append(row)
        return cls(ground, vars, rows)

    def __len__(self):
        return len(self._rows)

    def __eq__(self, other):
        if not isinstance(other, TypedRelation):
            return NotImplemented
        return self._vars == other._vars and self._rows == other._rows

    def __hash__(self):
        return hash((self._vars, self._rows))

    def __repr__(self):
        body = ', '.join(describe_row(self.sig, row) for row in sorted(self._rows))
        return f'TypedRelation({",".join(map(str, self._vars))}: {{{body}}})'


def _check_distinct(vars):
    if len(set(vars)) != len(vars):
        raise ValueError(f'Variables must be distinct, got {vars}.')


def full_relation(ground, vars):
    """Every realizable type over ``vars``."""
    vars = tuple(vars)
    _check_distinct(vars)
    rows = set()
    for partition in set_partitions(len(vars)):
        n = max(partition) + 1 if partition else 0
        for labels in complete_labelings(ground, n):
            rows.add(make_row(ground.sig, partition, labels))
    return TypedRelation(ground, vars, rows)


def orbit_relation(ground, vars, labels):
    """Union of the given orbits over an injective k-tuple of variables."""
    sig = ground.sig
    vars = tuple(vars)
    _check_distinct(vars)
    if len(vars) != sig.k:
        raise ValueError(f'Orbit relations are {sig.k}-ary, got variables {vars}.')
    base = tuple(range(sig.k))
    return TypedRelation(ground, vars, [TypeRow(base, ((base, sig.label_id(label)),)) for label in labels])


def project(R, t):
    t = tuple(t)
    positions = R.positions(t)
    return TypedRelation(R.ground, t, {project_row(R.sig, row, positions) for row in R.rows})


def intersect(R1, R2):
    if R1.vars != R2.vars:
        raise ValueError(f'Cannot intersect relations over {R1.vars} and {R2.vars}.')
    return R1.with_rows(R1.rows & R2.rows)


def restrict_injective(R):
    return R.with_rows(row for row in R.rows if row.is_injective)


def identify(R, x, y):
    """Conjunction with x = y, then drop y."""
    ix, iy = R.positions((x, y))
    rows = {row for row in R.rows if row.partition[ix] == row.partition[iy]}
    keep = [z for z in R.vars if z != y]
    return project(R.with_rows(rows), keep)


def _partial_matchings(left, right):
    """Injective partial maps from ``right`` into ``left``."""
    if not right:
        yield {}
        return
    head, rest = right[0], right[1:]
    for matching in _partial_matchings(left, rest):
        yield matching
        used = set(matching.values())
        for c in left:
            if c not in used:
                yield {**matching, head: c}


def _join_rows(ground, vars1, vars2, union, keep, r1, r2, shared):
    sig = ground.sig
    to_combined = {r2.partition[vars2.index(x)]: r1.partition[vars1.index(x)] for x in shared}
    shared1 = set(to_combined.values())
    free1 = [c for c in range(r1.n_classes) if c not in shared1]
    free2 = [c for c in range(r2.n_classes) if c not in to_combined]
    for matching in _partial_matchings(free1, free2):
        classes = dict(to_combined)
        classes.update(matching)
        n = r1.n_classes
        for c in free2:
            if c not in classes:
                classes[c] = n
                n += 1
        fixed = r1.label_map()
        consistent = True
        for t, label in r2.labels:
            s, label = sig.normalize(tuple(classes[c] for c in t), label)
            if fixed.setdefault(s, label) != label:
                consistent = False
                break
        if not consistent:
            continue
        combined = list(r1.partition) + [classes[r2.partition[vars2.index(x)]] for x in union[len(vars1):]]
        kept = [combined[union.index(x)] for x in keep]
        wanted = list(itertools.combinations(sorted(set(kept)), sig.k))
        for labels in complete_labelings(ground, n, fixed, enumerate_first=wanted):
            yield make_row(sig, kept, labels)


def join_exists(R1, R2, keep):
    """Conjunction of R1 and R2 with every variable outside ``keep`` quantified away."""
    if R1.sig != R2.sig:
        raise ValueError('Relations are over different signatures.')
    _check_distinct(R1.vars)
    _check_distinct(R2.vars)
    keep = tuple(dict.fromkeys(keep))
    union = R1.vars + tuple(x for x in R2.vars if x not in R1.vars)
    unknown = [x for x in keep if x not in union]
    if unknown:
        raise ValueError(f'Cannot keep {unknown}, the join is over {union}.')
    sig = R1.sig
    shared = [x for x in R1.vars if x in R2.vars]
    pos1, pos2 = R1.positions(shared), R2.positions(shared)
    groups = defaultdict(list)
    for r2 in R2.rows:
        groups[project_row(sig, r2, pos2)].append(r2)
    rows = set()
    for r1 in R1.rows:
        for r2 in groups.get(project_row(sig, r1, pos1), ()):
            rows.update(_join_rows(R1.ground, R1.vars, R2.vars, union, keep, r1, r2, shared))
    return TypedRelation(R1.ground, keep, rows)
