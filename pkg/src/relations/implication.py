"""
@Description: Implications between projections of typed relations, OP-mappings and composition
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-20 10:13:07
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-06 13:29:23
"""
import itertools

from src.relations.typed import TypedRelation, join_exists, project, project_row, restrict_injective


def as_rows(X):
    """Row set of a TypedRelation, or any iterable of rows."""
    if isinstance(X, TypedRelation):
        return X.rows
    return frozenset(X)


def _check_shape(rel, u, v, C, D):
    for name, t in (('u', u), ('v', v)):
        if len(set(t)) != len(t):
            raise ValueError(f'Tuple {name}={t} must be injective.')
        if len(t) >= rel.arity:
            raise ValueError(f'Tuple {name}={t} must be shorter than the variable set {rel.vars}.')
    if len(set(rel.vars)) != rel.arity:
        raise ValueError(f'Implications need distinct variables, got {rel.vars}.')
    if set(u) | set(v) != set(rel.vars):
        raise ValueError(f'u={u} and v={v} must together cover {rel.vars}.')
    for name, rows, t in (('C', C, u), ('D', D, v)):
        if not rows:
            raise ValueError(f'{name} must be nonempty.')
        if any(len(row.partition) != len(t) for row in rows):
            raise ValueError(f'{name} rows do not match the length of {t}.')


def is_implication(rel, u, v, C, D, pre=False):
    """Check the five implication items; returns (holds, first failing item or None).

    With ``pre=True`` the separation item (1) is skipped.
    """
    u, v = tuple(u), tuple(v)
    C, D = as_rows(C), as_rows(D)
    _check_shape(rel, u, v, C, D)
    sig = rel.sig
    upos, vpos = rel.positions(u), rel.positions(v)
    if not pre:
        for i, j in itertools.combinations(range(rel.arity), 2):
            if all(row.partition[i] == row.partition[j] for row in rel.rows):
                return False, 1
    pairs = [(project_row(sig, row, upos), project_row(sig, row, vpos)) for row in rel.rows]
    if not C < {pu for pu, _ in pairs}:
        return False, 2
    if not D < {pv for _, pv in pairs}:
        return False, 3
    if any(pu in C and pv not in D for pu, pv in pairs):
        return False, 4
    reached = {pv for pu, pv in pairs if pu in C}
    if not D <= reached:
        return False, 5
    return True, None


def op_mappings(rel, u, v, injective=False):
    """Pairs (orbit of f(u), orbit of f(v)) over the rows f of ``rel``."""
    sig = rel.sig
    upos, vpos = rel.positions(u), rel.positions(v)
    return {(project_row(sig, row, upos), project_row(sig, row, vpos))
            for row in rel.rows if not injective or row.is_injective}


class Implication(object):
    """A relation with a distinguished (C, u, D, v) reading.

    C and D are row sets over the positions of u and v, so they survive
    renaming of the variables.
    """

    def __init__(self, rel, u, v, C, D):
        self.rel = rel
        self.u = tuple(u)
        self.v = tuple(v)
        self.C = frozenset(as_rows(C))
        self.D = frozenset(as_rows(D))

    @property
    def vars(self):
        return self.rel.vars

    @property
    def n_vars(self):
        return len(set(self.u) | set(self.v))

    def proj_u(self):
        return project(self.rel, self.u).rows

    def proj_v(self):
        return project(self.rel, self.v).rows

    def check(self, pre=False):
        return is_implication(self.rel, self.u, self.v, self.C, self.D, pre=pre)

    def op_mappings(self, injective=False):
        return op_mappings(self.rel, self.u, self.v, injective=injective)

    def rename(self, mapping):
        return Implication(self.rel.rename(mapping),
                           [mapping.get(x, x) for x in self.u],
                           [mapping.get(x, x) for x in self.v], self.C, self.D)

    def restrict_injective(self):
        return Implication(restrict_injective(self.rel), self.u, self.v, self.C, self.D)

    def with_sets(self, C, D):
        return Implication(self.rel, self.u, self.v, C, D)

    def __repr__(self):
        return f'Implication(u={self.u}, v={self.v}, |C|={len(self.C)}, |D|={len(self.D)}, {self.rel!r})'


def _fresh(name, taken):
    base = str(name).split('~')[0]
    i = 1
    while f'{base}~{i}' in taken:
        i += 1
    return f'{base}~{i}'


def align(phi1, phi2):
    """Rename phi2 so that its u becomes phi1's v and nothing else collides."""
    if len(phi1.v) != len(phi2.u):
        raise ValueError(f'Cannot chain v={phi1.v} into u={phi2.u} of a different length.')
    mapping = dict(zip(phi2.u, phi1.v))
    taken = set(phi1.vars) | set(phi2.vars)
    for x in phi2.vars:
        if x not in mapping:
            mapping[x] = _fresh(x, taken)
            taken.add(mapping[x])
    return phi2.rename(mapping)


def composition_bookkeeping(phi1, phi2):
    """Variable counts and the scope intersections that govern the count of phi1 o phi2."""
    phi2 = align(phi1, phi2)
    u1, v1, u2, v2 = set(phi1.u), set(phi1.v), set(phi2.u), set(phi2.v)
    return {
        'p': len(u1 | v2),
        'p1': phi1.n_vars,
        'p2': phi2.n_vars,
        'u1_v2': frozenset(u1 & v2),
        'u1_v1': frozenset(u1 & v1),
        'u1_u2_v2': frozenset(u1 & u2 & v2),
    }


def compose(phi1, phi2):
    """phi1 o phi2: conjunction with phi2's u identified to phi1's v, all but u1 and v2 quantified."""
    if phi1.D != phi2.C:
        raise ValueError('Cannot compose: D of the first implication differs from C of the second.')
    if phi1.proj_v() != phi2.proj_u():
        raise ValueError('Cannot compose: the projections onto v1 and u2 differ.')
    phi2 = align(phi1, phi2)
    keep = [x for x in phi1.vars if x in phi1.u] + [x for x in phi2.vars if x in phi2.v and x not in phi1.u]
    rel = join_exists(phi1.rel, phi2.rel, keep)
    return Implication(rel, phi1.u, phi2.v, phi1.C, phi2.D)


def power(phi, n):
    """The n-fold self composition, by repeated squaring."""
    if n < 1:
        raise ValueError(f'Power must be at least 1, got {n}.')
    result, base = None, phi
    while n:
        if n & 1:
            result = base if result is None else compose(result, base)
        n >>= 1
        if n:
            base = compose(base, base)
    return result
