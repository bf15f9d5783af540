"""
@Description: Brute-force reference semantics: exhaustive satisfiability, joins and random instances
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-18 17:59:41
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-04 11:07:49
"""
import itertools
import logging

import numpy as np

from src.errors import BudgetExceeded
from src.minimality.instance import Instance
from src.relations.typed import TypedRelation, full_relation, make_row, orbit_relation, project, set_partitions
from src.solver.solver import Certificate, Sat, Unsat
from src.structures.ground import complete_labelings
from src.structures.signature import LabeledStructure

logger = logging.getLogger(__name__)


def _partitions(m):
    """Partitions of range(m), most classes first."""
    return sorted(set_partitions(m), key=lambda p: (-(max(p) + 1 if p else 0), p))


def _labeling_for(instance, ground, partition):
    """First realizable labeling of the quotient by ``partition`` satisfying every constraint, or None."""
    sig = ground.sig
    index = {x: i for i, x in enumerate(instance.vars)}
    n = max(partition) + 1 if partition else 0
    checks = []
    for c in instance.constraints:
        classes = [partition[index[x]] for x in c.vars]
        needed = frozenset(itertools.combinations(sorted(set(classes)), sig.k))
        if not needed:
            if make_row(sig, classes) not in c.rows:
                return None
            continue
        patterns = {row.partition for row in c.rows}
        if make_row(sig, classes).partition not in patterns:
            return None
        checks.append((classes, needed, c.rows))

    def hook(s, labels):
        for classes, needed, rows in checks:
            if s in needed and all(t in labels for t in needed):
                if make_row(sig, classes, labels) not in rows:
                    return False
        return True

    wanted = set().union(*(needed for _, needed, _ in checks))
    for labels in complete_labelings(ground, n, enumerate_first=wanted, hook=hook):
        return labels
    return None


def brute_solve(instance, ground=None, budget=7):
    """Exhaustive search over variable partitions and realizable labelings of each quotient.

    Returns Sat with a Certificate for the first solution in enumeration
    order, otherwise Unsat('oracle', []).
    """
    ground = ground or instance.ground
    if ground.sig != instance.ground.sig:
        raise ValueError('Instance and ground structure have different signatures.')
    if len(instance.vars) > budget:
        raise BudgetExceeded(f'{len(instance.vars)} variables exceed the oracle budget of {budget}.')
    for partition in _partitions(len(instance.vars)):
        labels = _labeling_for(instance, ground, partition)
        if labels is None:
            continue
        n = max(partition) + 1 if partition else 0
        structure = LabeledStructure.from_labels(ground.sig, n, labels)
        assignment = {x: partition[i] for i, x in enumerate(instance.vars)}
        logger.debug('oracle solution on %d classes', n)
        return Sat(Certificate(structure, assignment, ground))
    return Unsat('oracle', [])


def brute_join(R1, R2, keep):
    """Join by filtering every type of the union scope, then projecting onto ``keep``."""
    if R1.sig != R2.sig:
        raise ValueError('Relations are over different signatures.')
    union = R1.vars + tuple(x for x in R2.vars if x not in R1.vars)
    joined = full_relation(R1.ground, union)
    pos1, pos2 = joined.positions(R1.vars), joined.positions(R2.vars)
    sig = R1.sig
    rows = {row for row in joined.rows
            if make_row(sig, [row.partition[i] for i in pos1], row.label_map()) in R1.rows
            and make_row(sig, [row.partition[i] for i in pos2], row.label_map()) in R2.rows}
    return project(TypedRelation(R1.ground, union, rows), keep)


def relational_composition(M1, M2):
    """{(a, c) : (a, b) in M1 and (b, c) in M2}."""
    forward = {}
    for b, c in M2:
        forward.setdefault(b, set()).add(c)
    return {(a, c) for a, b in M1 for c in forward.get(b, ())}


def random_instance(ground, n_vars, n_constraints, seed=0, density=0.5, max_arity=None):
    """A reproducible instance on variables x0..x{n-1}.

    Each constraint drops every orbit (or, for wider scopes, every row) with
    probability ``density`` and keeps at least one. Density 0 yields full
    relations only.
    """
    sig = ground.sig
    k = sig.k
    if n_vars < k:
        raise ValueError(f'Need at least k={k} variables, got {n_vars}.')
    if not 0 <= density <= 1:
        raise ValueError(f'Density must lie in [0, 1], got {density}.')
    max_arity = min(max_arity or k, n_vars)
    rng = np.random.default_rng(seed)
    vars = [f'x{i}' for i in range(n_vars)]
    constraints = []
    for _ in range(n_constraints):
        arity = int(rng.integers(k, max_arity + 1))
        scope = [vars[i] for i in sorted(rng.choice(n_vars, size=arity, replace=False))]
        if density == 0:
            constraints.append(full_relation(ground, scope))
        elif arity == k:
            names = [sig.name(label) for label in sig.label_ids]
            kept = [name for name in names if rng.random() >= density]
            constraints.append(orbit_relation(ground, scope, kept or [names[int(rng.integers(len(names)))]]))
        else:
            rows = sorted(full_relation(ground, scope).rows)
            kept = [row for row in rows if rng.random() >= density]
            constraints.append(TypedRelation(ground, scope, kept or [rows[int(rng.integers(len(rows)))]]))
    return Instance(ground, vars, constraints)
