"""
@Description: (k, l)-minimality propagation, instance projections and injectivization
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-16 15:45:15
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-02 17:45:15
"""
import itertools
import logging
from collections import deque

import numpy as np
from networkx.utils import UnionFind

from src.relations.typed import (
    TypedRelation,
    full_relation,
    make_row,
    project,
    project_row,
    restrict_injective,
)
from src.minimality.instance import Instance

logger = logging.getLogger(__name__)


def minimality_params(ground):
    """The (k, max(k+1, b)) pair under which the ground structure has bounded width."""
    return ground.k, max(ground.k + 1, ground.b)


def _subsets(variables, max_size):
    for size in range(1, max_size + 1):
        yield from itertools.combinations(variables, size)


def _trivial(instance, constraints):
    """Refuted instance in canonical form: every constraint emptied."""
    return Instance(instance.ground, instance.vars, [c.with_rows(()) for c in constraints])


def saturate(instance, k, ell, seed=None, trace=None):
    """Return the (k, ell)-minimal instance equivalent to ``instance``.

    Every ell-subset without a covering constraint gets the full relation,
    then projections onto subsets of at most k variables are intersected
    across covering constraints until nothing changes. The result is trivial
    (every constraint emptied) as soon as one constraint empties. ``seed``
    shuffles the propagation order; ``trace`` collects event dicts.
    """
    if not 1 <= k <= ell:
        raise ValueError(f'Need 1 <= k <= ell, got k={k}, ell={ell}.')
    ground = instance.ground
    for c in instance.constraints:
        if c.arity > ell:
            raise ValueError(f'Constraint over {c.vars} has arity {c.arity} > ell={ell}.')
    constraints = instance.constraints
    if any(c.is_empty for c in constraints):
        return _trivial(instance, constraints)

    scopes = [set(c.vars) for c in constraints]
    seeds = [instance.vars] if len(instance.vars) < ell else itertools.combinations(instance.vars, ell)
    for W in seeds:
        if W and not any(set(W) <= s for s in scopes):
            constraints.append(full_relation(ground, W))
            scopes.append(set(W))
            if trace is not None:
                trace.append({'event': 'seed', 'scope': list(W), 'rows': len(constraints[-1])})
    if any(c.is_empty for c in constraints):
        return _trivial(instance, constraints)

    cover = {}
    for i, c in enumerate(constraints):
        for W in _subsets(instance.ordered(c.vars), k):
            cover.setdefault(W, []).append(i)
    order = sorted(cover, key=lambda W: (len(W), [instance.vars.index(x) for x in W]))
    if seed is not None:
        order = [order[i] for i in np.random.default_rng(seed).permutation(len(order))]
    queue, queued = deque(order), set(order)

    while queue:
        W = queue.popleft()
        queued.discard(W)
        covering = cover[W]
        positions = {i: constraints[i].positions(W) for i in covering}
        target = None
        for i in covering:
            rows = {project_row(ground.sig, row, positions[i]) for row in constraints[i].rows}
            target = rows if target is None else target & rows
        for i in covering:
            c = constraints[i]
            kept = {row for row in c.rows if project_row(ground.sig, row, positions[i]) in target}
            if len(kept) == len(c):
                continue
            constraints[i] = c.with_rows(kept)
            logger.debug('projection onto %s removed %d rows from %s', W, len(c) - len(kept), c.vars)
            if trace is not None:
                trace.append({'event': 'restrict', 'on': list(W), 'scope': list(c.vars),
                              'removed': len(c) - len(kept), 'rows': len(kept)})
            if not kept:
                logger.debug('constraint over %s emptied', c.vars)
                if trace is not None:
                    trace.append({'event': 'empty', 'scope': list(c.vars)})
                return _trivial(instance, constraints)
            for V in _subsets(instance.ordered(c.vars), k):
                if V not in queued:
                    queue.append(V)
                    queued.add(V)
    return Instance(ground, instance.vars, constraints)


def projection(instance, t):
    """The common projection of all constraints covering ``t`` (repeats allowed)."""
    t = tuple(t)
    covering = instance.covering(t)
    if not covering:
        raise ValueError(f'No constraint covers {t}.')
    rows = None
    for c in covering:
        projected = project(c, t).rows
        if rows is None:
            rows = projected
        elif projected != rows:
            raise ValueError(f'Covering constraints disagree on {t}; the instance is not minimal.')
    return TypedRelation(instance.ground, t, rows)


def _is_diagonal(rel):
    return all(row.partition[0] == row.partition[1] for row in rel.rows)


def injectivize(instance):
    """Merge variables whose pair projection is diagonal, then keep injective rows only.

    Returns the new instance and the map from old variables to their
    representatives.
    """
    classes = UnionFind(instance.vars)
    for x, y in itertools.combinations(instance.vars, 2):
        if instance.covering((x, y)) and _is_diagonal(projection(instance, (x, y))):
            classes.union(x, y)
    qmap = {}
    for block in classes.to_sets():
        rep = instance.ordered(block)[0]
        for x in block:
            qmap[x] = rep
    sig = instance.ground.sig
    constraints = []
    for c in instance.constraints:
        reps = [qmap[x] for x in c.vars]
        scope = tuple(dict.fromkeys(reps))
        firsts = [reps.index(x) for x in scope]
        rows = set()
        for row in c.rows:
            if all(row.partition[i] == row.partition[reps.index(r)] for i, r in enumerate(reps)):
                rows.add(make_row(sig, [row.partition[i] for i in firsts], row.label_map()))
        constraints.append(restrict_injective(TypedRelation(instance.ground, scope, rows)))
    merged = len(instance.vars) - len(set(qmap.values()))
    if merged:
        logger.info('injectivization merged %d variables', merged)
    return Instance(instance.ground, instance.ordered(set(qmap.values())), constraints), qmap
