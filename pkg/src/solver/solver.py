"""
@Description: Decision procedure: minimality, injectivization, sink refinement and solution extraction
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-23 13:34:46
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-09 16:02:14
"""
import itertools
import logging
from typing import NamedTuple

from networkx.utils import UnionFind

from src.implications.graph import ImplArc, build_instance_impl_graph, instance_relation
from src.minimality.instance import Instance
from src.minimality.saturate import injectivize, minimality_params, projection, saturate
from src.relations.implication import Implication, is_implication, op_mappings
from src.relations.typed import describe_row, make_row, project_row
from src.solver.trace import TraceWriter
from src.structures.ground import realizable
from src.structures.signature import LabeledStructure

logger = logging.getLogger(__name__)


class Certificate(NamedTuple):
    """A realizable labeled quotient and the map sending each variable to its vertex."""
    structure: LabeledStructure
    assignment: dict
    ground: object

    def get_config(self):
        return {
            'structure': self.structure.get_config(),
            'assignment': {str(x): int(i) for x, i in sorted(self.assignment.items(), key=lambda kv: str(kv[0]))},
        }


class Sat(NamedTuple):
    certificate: Certificate
    status = 'sat'


class Unsat(NamedTuple):
    stage: str
    trace: list
    status = 'unsat'


class HardWitness(NamedTuple):
    """Verified arcs of an implication cycle; ``from_cycle`` is kept for the result format."""
    arcs: list
    from_cycle: bool
    status = 'hard'


def _diagonal_classes(instance):
    classes = UnionFind(instance.vars)
    for x, y in itertools.combinations(instance.vars, 2):
        if instance.covering((x, y)):
            if all(row.partition[0] == row.partition[1] for row in projection(instance, (x, y)).rows):
                classes.union(x, y)
    blocks = sorted((instance.ordered(block) for block in classes.to_sets()),
                    key=lambda block: instance.vars.index(block[0]))
    reps = [block[0] for block in blocks]
    return reps, {x: i for i, block in enumerate(blocks) for x in block}


def extract_solution(instance):
    """Certificate of a non-trivial minimal instance whose k-tuple projections are single orbits."""
    ground = instance.ground
    sig = ground.sig
    reps, assignment = _diagonal_classes(instance)
    labels = {}
    for S in itertools.combinations(range(len(reps)), sig.k):
        t = tuple(reps[i] for i in S)
        rows = projection(instance, t).rows
        if len(rows) != 1:
            raise ValueError(f'Projection onto {t} has {len(rows)} orbits, expected exactly one.')
        row = next(iter(rows))
        if not row.is_injective:
            raise RuntimeError(f'Distinct classes {t} are forced equal; the instance is not minimal.')
        labels[S] = row.labels[0][1]
    structure = LabeledStructure.from_labels(sig, len(reps), labels)
    if not realizable(structure, ground):
        raise RuntimeError(f'Extracted structure {structure!r} is not realizable.')
    return Certificate(structure, assignment, ground)


def verify_certificate(instance, cert):
    structure = cert.structure
    if not structure.is_full or not realizable(structure, cert.ground):
        return False
    if any(x not in cert.assignment for x in instance.vars):
        return False
    labels = structure.labels
    sig = instance.ground.sig
    for c in instance.constraints:
        if make_row(sig, [cert.assignment[x] for x in c.vars], labels) not in c.rows:
            return False
    return True


def _restrict(instance, v, F):
    constraints = []
    for c in instance.constraints:
        if set(v) <= set(c.vars):
            positions = c.positions(v)
            c = c.with_rows(row for row in c.rows if project_row(c.sig, row, positions) in F)
        constraints.append(c)
    return Instance(instance.ground, instance.vars, constraints)


def _split(instance, x, y, equal):
    """Keep the rows that identify x and y (``equal``) or separate them."""
    constraints = []
    for c in instance.constraints:
        if x in c.vars and y in c.vars:
            i, j = c.positions((x, y))
            c = c.with_rows(row for row in c.rows if (row.partition[i] == row.partition[j]) == equal)
        constraints.append(c)
    return Instance(instance.ground, instance.vars, constraints)


def mixed_pair(instance):
    """First pair whose projection holds both the diagonal and separated rows, or None.

    Without such a pair, injectivization of a minimal instance loses no solution.
    """
    for x, y in itertools.combinations(instance.vars, 2):
        if instance.covering((x, y)):
            kinds = {row.partition[0] == row.partition[1] for row in projection(instance, (x, y)).rows}
            if len(kinds) == 2:
                return x, y
    return None


def _learn(instance, v, F, w, projections):
    rel = instance_relation(instance, instance.ordered(set(v) | set(w)))
    D = frozenset(pw for pu, pw in op_mappings(rel, v, w) if pu in F)
    if not D or not D < projections[w]:
        return None
    holds, _ = is_implication(rel, v, w, F, D)
    if not holds:
        return None
    return ImplArc((v, F), (w, D), Implication(rel, v, w, F, D))


def _candidates(graph):
    sinks = set(graph.sinks())
    order = graph.instance.vars.index
    return sorted(graph.vertices, key=lambda vertex: (
        vertex not in sinks, len(vertex[1]), [order(x) for x in vertex[0]], sorted(vertex[1])))


class _Search(object):
    """Exact search: every Sat and Unsat it returns holds for the instance it was given."""

    def __init__(self, ground, depth, trace):
        self.ground = ground
        self.depth = depth
        self.trace = trace
        self.k, self.ell = minimality_params(ground)
        self.events = []
        self.iteration = 0

    def saturate(self, instance):
        return saturate(instance, self.k, self.ell, trace=self.events)

    def decide(self, instance):
        """Saturate, injectivize and refine; split on a mixed pair when a lossy injectivization refutes."""
        current = self.saturate(instance)
        self.trace.record('saturate', current)
        if current.is_trivial:
            logger.info('refuted by (%d, %d)-minimality', self.k, self.ell)
            return Unsat('saturate', self.events)

        mixed = mixed_pair(current)
        merged, qmap = injectivize(current)
        merged = self.saturate(merged)
        self.trace.record('injectivize', merged, merged=len(qmap) - len(set(qmap.values())),
                          lossless=mixed is None)
        if merged.is_trivial:
            verdict = Unsat('injectivize', self.events)
        else:
            verdict = self.refine(merged)
        if verdict.status == 'sat':
            cert = verdict.certificate
            return Sat(Certificate(cert.structure, {x: cert.assignment[qmap[x]] for x in current.vars}, cert.ground))
        if verdict.status == 'hard' or mixed is None:
            return verdict

        x, y = mixed
        logger.info('injective refutation dropped rows; splitting on %s = %s', x, y)
        verdicts = []
        for equal in (True, False):
            self.trace.record('split', pair=[x, y], equal=equal)
            branch = self.decide(_split(current, x, y, equal))
            if branch.status == 'sat':
                return branch
            verdicts.append(branch)
        hard = [verdict for verdict in verdicts if verdict.status == 'hard']
        return hard[0] if hard else Unsat('split', self.events)

    def branch(self, current, v, rows):
        """Exact case split of proj_v over its rows."""
        self.trace.record('branch', current, tuple=list(v), rows=len(rows))
        verdicts = []
        for row in sorted(rows):
            restricted = self.saturate(_restrict(current, v, {row}))
            if restricted.is_trivial:
                continue
            verdict = self.refine(restricted)
            if verdict.status == 'sat':
                return verdict
            verdicts.append(verdict)
        hard = [verdict for verdict in verdicts if verdict.status == 'hard']
        return hard[0] if hard else Unsat('refinement', self.events)

    def refine(self, current):
        """Sink refinement of a non-trivial minimal injective instance."""
        sig = self.ground.sig
        while True:
            subsets = list(itertools.combinations(current.vars, self.k))
            projections = {v: projection(current, v).rows for v in subsets}
            if all(len(rows) == 1 for rows in projections.values()):
                self.trace.record('solution', current, iteration=self.iteration)
                return Sat(extract_solution(current))

            self.iteration += 1
            graph = build_instance_impl_graph(current, self.depth)
            committed = None
            for v, F in _candidates(graph):
                refined = self.saturate(_restrict(current, v, F))
                if not refined.is_trivial:
                    changed = [w for w in subsets if w != v and projection(refined, w).rows != projections[w]]
                    if projection(refined, v).rows == F and not changed:
                        self.trace.record('refine', refined, iteration=self.iteration, kind='sink', tuple=list(v),
                                          sink=sorted(describe_row(sig, row) for row in F))
                        verdict = self.refine(refined)
                        if verdict.status != 'unsat':
                            return verdict
                        logger.info('sink %s refuted, keeping its complement', v)
                    else:
                        for w in changed:
                            arc = _learn(current, v, F, w, projections)
                            if arc is not None and not graph.has_arc(arc.source, arc.target):
                                graph.add_arc(arc)
                        continue
                rest = projections[v] - F
                complement = self.saturate(_restrict(current, v, rest))
                if complement.is_trivial:
                    self.trace.record('refuted', current, iteration=self.iteration, tuple=list(v))
                    return Unsat('refinement', self.events)
                committed = (v, rest, complement)
                break

            if committed is None:
                cycle = graph.find_cycle()
                if cycle and all(arc.verify() == (True, None) for arc in cycle):
                    logger.info('no candidate kept the other projections; cycle of %d arcs', len(cycle))
                    self.trace.record('hard', current, iteration=self.iteration, arcs=len(graph.arcs))
                    return HardWitness(cycle, True)
                v = next(v for v in subsets if len(projections[v]) > 1)
                return self.branch(current, v, projections[v])
            v, F, current = committed
            self.trace.record('refine', current, iteration=self.iteration, kind='complement', tuple=list(v),
                              sink=sorted(describe_row(sig, row) for row in F))
            logger.info('iteration %d: complement restriction of %s to %d orbits', self.iteration, v, len(F))


def solve(instance, ground=None, depth=3, trace=None):
    """Decide an instance: Sat with a certificate, Unsat, or a HardWitness carrying a verified cycle."""
    if ground is not None and ground.sig != instance.ground.sig:
        raise ValueError('Instance and ground structure have different signatures.')
    ground = ground or instance.ground
    trace = trace if trace is not None else TraceWriter()
    result = _Search(ground, depth, trace).decide(instance)
    if result.status == 'sat':
        cert = Certificate(result.certificate.structure, result.certificate.assignment, ground)
        if not verify_certificate(instance, cert):
            raise RuntimeError('Extracted solution violates a constraint of the input instance.')
        logger.info('solved')
        return Sat(cert)
    return result
