"""
@Description: Orbit digraphs of implications, strongly connected components, powers and DOT export
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-12 11:17:23
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-13 13:01:07
"""
from typing import NamedTuple

import networkx as nx
import numpy as np

from src.relations.typed import describe_row


class SCCAnalysis(NamedTuple):
    components: list
    sinks: list
    sources: list
    free: frozenset


class OrbitDigraph(object):
    """Arcs (O, P) between the orbits of E wherever the relation has an OP-mapping."""

    def __init__(self, sig, vertices, arcs):
        self.sig = sig
        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(sorted(vertices))
        self.graph.add_edges_from(sorted(arcs))

    @property
    def vertices(self):
        return list(self.graph.nodes)

    @property
    def arcs(self):
        return set(self.graph.edges)

    def is_smooth(self):
        return all(self.graph.in_degree(o) > 0 and self.graph.out_degree(o) > 0 for o in self.graph.nodes)

    def name(self, orbit):
        return describe_row(self.sig, orbit)

    def adjacency(self):
        return nx.to_numpy_array(self.graph, nodelist=self.vertices, dtype=np.int64) > 0

    def __repr__(self):
        arcs = ', '.join(f'{self.name(a)}->{self.name(b)}' for a, b in sorted(self.arcs))
        return f'OrbitDigraph({arcs})'


def build_orbit_digraph(phi):
    E = phi.proj_u()
    if phi.proj_v() != E:
        raise ValueError('Orbit digraphs need equal projections onto u and v.')
    g = OrbitDigraph(phi.rel.sig, E, phi.op_mappings())
    if not g.is_smooth():
        raise RuntimeError(f'Digraph with equal projections is not smooth: {g!r}')
    return g


def scc_analysis(g):
    """Components (with a cycle through them), sink and source components, and component-free vertices."""
    graph = g.graph
    components = [frozenset(s) for s in nx.strongly_connected_components(graph)
                  if len(s) > 1 or graph.has_edge(next(iter(s)), next(iter(s)))]
    components.sort(key=sorted)
    sinks = [S for S in components if all(b in S for a in S for b in graph.successors(a))]
    sources = [S for S in components if all(a in S for b in S for a in graph.predecessors(b))]
    covered = set().union(*components) if components else set()
    return SCCAnalysis(components, sinks, sources, frozenset(set(graph.nodes) - covered))


def digraph_power(g, n):
    """Arcs joined by a walk of exactly n arcs."""
    if n < 1:
        raise ValueError(f'Power must be at least 1, got {n}.')
    result = base = g.adjacency().astype(np.int64)
    for _ in range(n - 1):
        result = np.minimum(result @ base, 1)
    result = result > 0
    vertices = g.vertices
    arcs = [(vertices[i], vertices[j]) for i, j in zip(*np.nonzero(result))]
    return OrbitDigraph(g.sig, vertices, arcs)


def to_dot(graph, name='G', label=str):
    """DOT text for a networkx digraph; ``label`` renders nodes."""
    ids = {node: f'n{i}' for i, node in enumerate(graph.nodes)}
    lines = [f'digraph {name} {{']
    for node, node_id in ids.items():
        text = str(label(node)).replace('"', '\\"')
        lines.append(f'  {node_id} [label="{text}"];')
    for a, b in graph.edges:
        lines.append(f'  {ids[a]} -> {ids[b]};')
    lines.append('}')
    return '\n'.join(lines) + '\n'
