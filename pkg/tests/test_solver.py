"""Tests for :mod:`src.solver`
"""
import json

import pytest

from src.minimality.instance import Instance
from src.minimality.saturate import saturate
from src.oracle.brute import brute_solve, random_instance
from src.relations.typed import TypedRelation, full_relation, project_row
from src.solver.solver import Certificate, extract_solution, mixed_pair, solve, verify_certificate
from src.solver.trace import TraceWriter, projection_table
from src.structures.ground import load_structure
from src.structures.signature import LabeledStructure
from tests.conftest import build_instance

K3 = [(('x', 'y'), 'orbit:E'), (('y', 'z'), 'orbit:E'), (('x', 'z'), 'orbit:E')]
PATH = [(('a', 'b'), 'orbit:E'), (('b', 'c'), 'orbit:E'), (('c', 'd'), 'orbit:E'), (('d', 'e'), 'orbit:E'),
        (('a', 'e'), 'orbit:N')]


def xor_instance(graph):
    sig = graph.sig
    rows = []
    for row in full_relation(graph, ('x', 'y', 'z')).rows:
        if row.is_injective:
            xy = project_row(sig, row, [0, 1]).labels[0][1]
            yz = project_row(sig, row, [1, 2]).labels[0][1]
            if xy != yz:
                rows.append(row)
    return Instance(graph, ('x', 'y', 'z'), [TypedRelation(graph, ('x', 'y', 'z'), rows)])


def test_triangle_unsat_in_henson(henson):
    result = solve(build_instance(henson, 'xyz', K3))
    assert result.status == 'unsat'
    assert result.stage == 'saturate'
    assert any(event['event'] == 'empty' for event in result.trace)


def test_triangle_sat_in_random_graph(graph):
    instance = build_instance(graph, 'xyz', K3)
    result = solve(instance)
    assert result.status == 'sat'
    cert = result.certificate
    assert verify_certificate(instance, cert)
    assert cert.structure.n == 3


def test_path_with_endpoint_non_edge(graph):
    instance = build_instance(graph, 'abcde', PATH)
    result = solve(instance)
    assert result.status == 'sat'
    assert verify_certificate(instance, result.certificate)
    labels = result.certificate.structure
    assignment = result.certificate.assignment
    assert graph.sig.name(labels.label((assignment['a'], assignment['e']))) == 'N'


def test_forced_equality_is_lifted(graph):
    equal = {'rows': [{'partition': [[0, 1]], 'types': {}}]}
    instance = build_instance(graph, 'xyz', [(('x', 'y'), equal), (('y', 'z'), 'orbit:E')])
    result = solve(instance)
    assert result.status == 'sat'
    assignment = result.certificate.assignment
    assert assignment['x'] == assignment['y'] != assignment['z']
    assert verify_certificate(instance, result.certificate)


def test_cyclic_template_gives_hard_witness(graph):
    result = solve(xor_instance(graph))
    assert result.status == 'hard'
    assert result.from_cycle
    assert result.arcs
    assert all(arc.verify() == (True, None) for arc in result.arcs)


def test_hypergraph_solution(hypergraph):
    instance = build_instance(hypergraph, 'wxyz', [(('w', 'x', 'y'), 'orbit:H'), (('x', 'y', 'z'), 'orbit:N')])
    result = solve(instance)
    assert result.status == 'sat'
    assert verify_certificate(instance, result.certificate)


def test_verify_certificate_rejects_wrong_labels(graph):
    sig = graph.sig
    instance = build_instance(graph, 'xyz', K3)
    N = sig.label_id('N')
    wrong = LabeledStructure.from_labels(sig, 3, {(0, 1): N, (0, 2): N, (1, 2): N})
    assert not verify_certificate(instance, Certificate(wrong, {'x': 0, 'y': 1, 'z': 2}, graph))
    assert not verify_certificate(instance, Certificate(wrong, {'x': 0, 'y': 1}, graph))


def test_extract_solution_needs_single_orbits(graph):
    instance = saturate(build_instance(graph, 'xy', [(('x', 'y'), 'orbit:E|N')]), 2, 3)
    with pytest.raises(ValueError):
        extract_solution(instance)


def test_solve_rejects_other_signature(graph, hypergraph):
    with pytest.raises(ValueError):
        solve(build_instance(graph, 'xyz', K3), ground=hypergraph)


def test_trace_file(graph, tmp_path):
    path = tmp_path / 'trace.jsonl'
    with TraceWriter(str(path)) as trace:
        result = solve(build_instance(graph, 'xyz', [(('x', 'y'), 'orbit:E|N')]), trace=trace)
    assert result.status == 'sat'
    records = [json.loads(line) for line in path.read_text().splitlines()]
    assert [record['index'] for record in records] == list(range(len(records)))
    assert records[0]['stage'] == 'saturate'
    assert records[-1]['stage'] == 'solution'
    assert any(record['stage'] == 'refine' for record in records)


def test_projection_table(graph):
    instance = saturate(build_instance(graph, 'xyz', [(('x', 'y'), 'orbit:E')]), 2, 3)
    table = projection_table(instance)
    assert list(table.columns) == ['scope', 'orbits', 'count']
    assert len(table) == 3
    assert table.set_index('scope').loc['x,y', 'orbits'] == 'E'


def test_mixed_pair(graph):
    mixed = saturate(build_instance(graph, 'xyz', [(('x', 'y'), 'full'), (('y', 'z'), 'orbit:E')]), 2, 3)
    assert mixed_pair(mixed) == ('x', 'y')
    assert mixed_pair(saturate(build_instance(graph, 'xyz', K3), 2, 3)) is None
    equal = {'rows': [{'partition': [[0, 1]], 'types': {}}]}
    assert mixed_pair(saturate(build_instance(graph, 'xyz', [(('x', 'y'), equal), (('y', 'z'), 'orbit:E')]), 2, 3)) is None


@pytest.mark.parametrize('name, n_vars, seed', [
    ('random-graph', 5, 80),
    ('random-graph', 5, 86),
    ('henson-k3-free', 5, 15),
    ('henson-k3-free', 5, 39),
    ('henson-k3-free', 5, 40),
    ('henson-k3-free', 5, 89),
    ('henson-k3-free', 5, 110),
    ('hypergraph-3', 4, 3),
    ('hypergraph-3', 4, 26),
    ('hypergraph-3', 4, 44),
    ('hypergraph-3', 4, 80),
    ('hypergraph-3', 4, 88),
])
def test_wide_constraints_agree_with_oracle(name, n_vars, seed):
    ground = load_structure(name)
    instance = random_instance(ground, n_vars, 1 + seed % 6, seed=seed, max_arity=ground.k + 1)
    trace = TraceWriter()
    result = solve(instance, trace=trace)
    if result.status == 'hard':
        assert result.from_cycle and result.arcs
        assert all(arc.verify() == (True, None) for arc in result.arcs)
        assert any(record['stage'] == 'hard' for record in trace.records)
        return
    assert result.status == brute_solve(instance).status
    if result.status == 'sat':
        assert verify_certificate(instance, result.certificate)
