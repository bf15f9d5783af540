"""
@Description: Critical relations and their construction from a cycle of implications
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-11 10:10:10
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-12 12:50:50
"""
import logging
from typing import NamedTuple

from src.implications.complete import complete, is_complete, shared_indices
from src.implications.digraph import build_orbit_digraph, scc_analysis
from src.relations.implication import Implication, as_rows, compose, is_implication, power
from src.relations.typed import full_relation, identify, project, project_row

logger = logging.getLogger(__name__)


class CriticalRelation(NamedTuple):
    phi: Implication
    C: frozenset
    D: frozenset
    u: tuple
    v: tuple


def is_critical(phi, C, D, u=None, v=None):
    """Check both criticality items; returns (holds, first failing item or None)."""
    u = tuple(u if u is not None else phi.u)
    v = tuple(v if v is not None else phi.v)
    C, D = frozenset(as_rows(C)), frozenset(as_rows(D))
    rel = phi.rel
    k = rel.sig.k
    if rel.arity != k + 1 or len(u) != k or len(v) != k:
        raise ValueError(f'Critical relations have k+1={k + 1} variables and k-tuples u, v; '
                         f'got {rel.vars}, u={u}, v={v}.')
    if C & D:
        raise ValueError('C and D must be disjoint.')
    if not all(row.is_injective and len(row.partition) == k for row in C | D):
        raise ValueError('C and D must consist of injective k-types.')
    common = set(u) & set(v)
    if u[0] in common or v[0] in common:
        raise ValueError(f'u_1={u[0]} and v_1={v[0]} must lie outside the common scope {sorted(common)}.')

    candidate = Implication(rel, u, v, C, C)
    holds, _ = is_implication(rel, u, v, C, C)
    try:
        holds = holds and is_complete(candidate)
    except ValueError:
        holds = False
    if not holds:
        return False, 1
    sig = rel.sig
    upos, vpos = rel.positions(u), rel.positions(v)
    for row in full_relation(rel.ground, rel.vars).rows:
        pu, pv = project_row(sig, row, upos), project_row(sig, row, vpos)
        if ((pu in C and pv in C) or (pu in D and pv in D)) and row not in rel.rows:
            return False, 2
    return True, None


def _chain(cycle):
    if not cycle:
        raise ValueError('No cycle: the implication list is empty.')
    for i, phi in enumerate(cycle):
        nxt = cycle[(i + 1) % len(cycle)]
        if phi.D != nxt.C or phi.proj_v() != nxt.proj_u():
            raise ValueError(f'Cycle endpoints mismatched between implications {i} and {(i + 1) % len(cycle)}.')
    phi = cycle[0]
    for nxt in cycle[1:]:
        phi = compose(phi, nxt)
    return phi


def build_critical_from_cycle(cycle, ground):
    """Compose around the cycle, complete, cut out sink and source components, power and identify."""
    phi = _chain(cycle).restrict_injective()
    psi = complete(phi)
    analysis = scc_analysis(build_orbit_digraph(psi))
    C1, E = psi.C, psi.proj_u()
    sinks = [S for S in analysis.sinks if S <= C1]
    sources = [S for S in analysis.sources if S <= E - C1]
    if not sinks or not sources:
        raise ValueError('Completed implication has no sink inside C or no source outside it.')
    C, D = sinks[0], sources[0]
    rho = power(psi.with_sets(C, C), ground.d)

    shared = set(shared_indices(rho))
    free = [i for i in range(len(rho.u)) if i not in shared]
    if not free:
        raise ValueError('Every coordinate of u is shared with v; nothing to keep apart.')
    i0 = free[0]
    rel, v = rho.rel, list(rho.v)
    for i in range(len(rho.u)):
        if i != i0 and v[i] != rho.u[i]:
            rel = identify(rel, rho.u[i], v[i])
            v[i] = rho.u[i]

    order = [i0] + [i for i in range(len(rho.u)) if i != i0]
    u = tuple(rho.u[i] for i in order)
    v = tuple(v[i] for i in order)
    sig = ground.sig
    C = frozenset(project_row(sig, row, order) for row in C)
    D = frozenset(project_row(sig, row, order) for row in D)
    rel = project(rel, u + (v[0],))
    logger.info('critical relation over %s with |C|=%d, |D|=%d', rel.vars, len(C), len(D))
    return CriticalRelation(Implication(rel, u, v, C, C), C, D, u, v)
