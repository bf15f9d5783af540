"""
@Description: Complete implications and the power iteration that produces them
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-10 09:03:57
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-11 11:39:33
"""
import logging
import math

from src.errors import StabilizationError
from src.implications.digraph import build_orbit_digraph, digraph_power, scc_analysis
from src.relations.implication import compose, composition_bookkeeping, power

logger = logging.getLogger(__name__)


def _check_self_implication(phi):
    if phi.C != phi.D:
        raise ValueError('Expected a (C, C)-implication.')
    if phi.proj_u() != phi.proj_v():
        raise ValueError('Expected equal projections onto u and v.')


def shared_indices(phi):
    """Indices i with u_i in the scope of v."""
    return [i for i, x in enumerate(phi.u) if x in phi.v]


def has_stable_count(phi):
    book = composition_bookkeeping(phi, phi)
    return book['p'] == book['p1']


def is_complete(phi):
    _check_self_implication(phi)
    if not has_stable_count(phi):
        return False
    if any(phi.u[i] != phi.v[i] for i in shared_indices(phi)):
        return False
    g = build_orbit_digraph(phi)
    return all(g.graph.has_edge(a, b)
               for S in scc_analysis(g).components for a in S for b in S)


def _perm_order(sigma):
    order, current = 1, dict(sigma)
    while any(current[i] != i for i in current):
        current = {i: sigma[current[i]] for i in current}
        order += 1
    return order


def complete(phi, guard=None):
    """Power an injective (C, C)-implication until it is complete.

    Squares until the variable count is stable, powers by the order of the
    index permutation between v and u, then by the first exponent e whose
    digraph power is idempotent, and finally keeps injective rows. A
    complete input is returned as is.
    """
    if is_complete(phi):
        return phi
    n_orbits = len(phi.proj_u())
    guard = guard or math.factorial(n_orbits) * n_orbits
    psi = phi
    for _ in range(len(phi.u) + 1):
        if has_stable_count(psi):
            break
        psi = compose(psi, psi)
    else:
        raise StabilizationError('Variable count of the powers did not stabilize.')

    sigma = {i: psi.u.index(psi.v[i]) for i in range(len(psi.v)) if psi.v[i] in psi.u}
    if set(sigma) != set(sigma.values()):
        raise StabilizationError(f'Shared coordinates do not form a permutation: {sigma}.')
    order = _perm_order(sigma) if sigma else 1
    if order > 1:
        psi = power(psi, order)

    g = build_orbit_digraph(psi)
    for e in range(1, guard + 1):
        if digraph_power(g, e).arcs == digraph_power(g, 2 * e).arcs:
            break
    else:
        raise StabilizationError(f'No idempotent digraph power within {guard} steps.')
    if e > 1:
        psi = power(psi, e)
    psi = psi.restrict_injective()
    logger.debug('completed with index order %d and exponent %d over %d variables', order, e, psi.n_vars)
    if not is_complete(psi):
        raise StabilizationError('Power iteration ended on an incomplete implication.')
    return psi
