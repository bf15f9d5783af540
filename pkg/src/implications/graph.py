"""
@Description: The injective implication graph of an instance, with witnesses and cycle search
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-13 12:24:36
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-14 14:12:24
"""
import itertools
import logging

import networkx as nx
from tqdm import tqdm

from src.implications.digraph import to_dot
from src.minimality.saturate import projection
from src.relations.implication import Implication, compose, is_implication, op_mappings
from src.relations.typed import TypedRelation, describe_row, join_exists, project

logger = logging.getLogger(__name__)


def instance_relation(instance, W):
    """The relation the instance defines on the variables W.

    Intersection of the projections of all constraints covering W, or the
    join of the relations on the maximal covered pieces of W.
    """
    W = tuple(W)
    covering = instance.covering(W)
    if covering:
        rows = None
        for c in covering:
            projected = project(c, W).rows
            rows = projected if rows is None else rows & projected
        return TypedRelation(instance.ground, W, rows)
    pieces = set()
    for c in instance.constraints:
        S = instance.ordered(set(c.vars) & set(W))
        if S:
            pieces.add(S)
    pieces = sorted((S for S in pieces if not any(set(S) < set(T) for T in pieces)),
                    key=lambda S: [instance.vars.index(x) for x in S])
    if set().union(*map(set, pieces)) != set(W):
        raise ValueError(f'Variables of {W} are not covered by any constraint.')
    acc = instance_relation(instance, pieces[0])
    for S in pieces[1:]:
        piece = instance_relation(instance, S)
        acc = join_exists(acc, piece, instance.ordered(set(acc.vars) | set(S)))
    return project(acc, W)


def _proper_subsets(rows):
    rows = sorted(rows)
    return [frozenset(F) for size in range(1, len(rows))
            for F in itertools.combinations(rows, size)]


class ImplArc(object):
    """Arc (v, F) -> (w, D); composed arcs keep their path and build the witness on demand."""

    def __init__(self, source, target, witness=None, path=()):
        self.source = source
        self.target = target
        self.path = tuple(path)
        self._witness = witness

    @property
    def composed(self):
        return bool(self.path)

    @property
    def witness(self):
        if self._witness is None:
            phi = self.path[0].witness
            for arc in self.path[1:]:
                phi = compose(phi, arc.witness)
            self._witness = phi
        return self._witness

    def verify(self):
        return self.witness.check()

    def __repr__(self):
        kind = 'composed' if self.composed else 'direct'
        return f'ImplArc({self.source[0]} -> {self.target[0]}, {kind})'


class ImplGraph(object):
    """Vertices (v, F) for k-tuples v of the instance and proper nonempty unions F of proj_v rows."""

    def __init__(self, instance, projections, vertices):
        self.instance = instance
        self.projections = projections
        self.vertices = list(vertices)
        self.arcs = []
        self._out = {vertex: [] for vertex in self.vertices}

    def key(self, vertex):
        """Relation-level identity of a vertex: (projection rows, F)."""
        v, F = vertex
        return self.projections[v], F

    def add_arc(self, arc):
        self.arcs.append(arc)
        self._out[arc.source].append(arc)

    def out_arcs(self, vertex):
        return list(self._out.get(vertex, ()))

    def has_arc(self, source, target):
        return any(arc.target == target for arc in self._out.get(source, ()))

    def sinks(self):
        """Vertices with no arc to a vertex of a different relation-level identity."""
        return [vertex for vertex in self.vertices
                if all(self.key(arc.target) == self.key(vertex) for arc in self._out[vertex])]

    def relation_graph(self):
        g = nx.DiGraph()
        g.add_nodes_from(self.key(vertex) for vertex in self.vertices)
        for arc in sorted(self.arcs, key=lambda a: a.composed):
            a, b = self.key(arc.source), self.key(arc.target)
            if a != b and not g.has_edge(a, b):
                g.add_edge(a, b, arc=arc)
        return g

    def find_cycle(self):
        """Witness arcs of a cycle between distinct relation-level vertices, or None."""
        g = self.relation_graph()
        try:
            edges = nx.find_cycle(g)
        except nx.NetworkXNoCycle:
            return None
        return [g.edges[a, b]['arc'] for a, b in edges]

    def to_networkx(self):
        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        for arc in self.arcs:
            g.add_edge(arc.source, arc.target, composed=arc.composed)
        return g

    def to_dot(self):
        sig = self.instance.ground.sig

        def label(vertex):
            v, F = vertex
            names = ','.join(describe_row(sig, row) for row in sorted(F))
            return f'{",".join(map(str, v))}: {{{names}}}'
        return to_dot(self.to_networkx(), name='implications', label=label)

    def get_config(self):
        sig = self.instance.ground.sig

        def vertex_config(vertex):
            v, F = vertex
            return {'tuple': list(v), 'rows': sorted(describe_row(sig, row) for row in F)}
        cycle = self.find_cycle()
        return {
            'vertices': len(self.vertices),
            'arcs': [{'source': vertex_config(arc.source), 'target': vertex_config(arc.target),
                      'composed': arc.composed} for arc in self.arcs],
            'cycle': None if cycle is None else [vertex_config(arc.source) for arc in cycle],
        }

    def __repr__(self):
        return f'ImplGraph(vertices={len(self.vertices)}, arcs={len(self.arcs)})'


def build_instance_impl_graph(instance, depth=1, progress=False, verify_composed=False):
    """Implication graph of a minimal injective instance, closed under composition up to ``depth`` arcs.

    Direct arcs are checked with ``is_implication`` when found. Composed arcs
    build their witness lazily; with ``verify_composed`` the witness is built
    and checked here and failing arcs are dropped.
    """
    if depth < 1:
        raise ValueError(f'Depth must be at least 1, got {depth}.')
    k = instance.ground.k
    subsets = list(itertools.combinations(instance.vars, k))
    projections = {v: projection(instance, v).rows for v in subsets}
    vertices = [(v, F) for v in subsets for F in _proper_subsets(projections[v])]
    graph = ImplGraph(instance, projections, vertices)
    relations = {}
    pairs = [(v, w) for v, w in itertools.permutations(subsets, 2)
             if len(projections[v]) > 1 and len(projections[w]) > 1]
    for v, w in tqdm(pairs, disable=not progress, desc='implications'):
        W = instance.ordered(set(v) | set(w))
        if W not in relations:
            relations[W] = instance_relation(instance, W)
        rel = relations[W]
        if project(rel, v).rows != projections[v] or project(rel, w).rows != projections[w]:
            continue
        mappings = op_mappings(rel, v, w)
        for F in _proper_subsets(projections[v]):
            D = frozenset(pw for pu, pw in mappings if pu in F)
            if not D or D == projections[w]:
                continue
            holds, _ = is_implication(rel, v, w, F, D)
            if holds:
                graph.add_arc(ImplArc((v, F), (w, D), Implication(rel, v, w, F, D)))
    direct = list(graph.arcs)
    frontier = direct
    for _ in range(2, depth + 1):
        extended = []
        for a in frontier:
            for b in graph.out_arcs(a.target):
                if b.composed or b.target == a.source or graph.has_arc(a.source, b.target):
                    continue
                arc = ImplArc(a.source, b.target, path=(a.path or (a,)) + (b,))
                if verify_composed and not arc.verify()[0]:
                    logger.warning('composed arc %r is not an implication', arc)
                    continue
                graph.add_arc(arc)
                extended.append(arc)
        frontier = extended
    logger.info('implication graph: %d vertices, %d direct arcs, %d composed arcs',
                len(vertices), len(direct), len(graph.arcs) - len(direct))
    return graph
