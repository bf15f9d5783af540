"""Tests for :mod:`src.oracle` and its agreement with the relational layer
"""
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from src.errors import BudgetExceeded
from src.minimality.saturate import saturate
from src.oracle.brute import brute_join, brute_solve, random_instance, relational_composition
from src.relations.implication import Implication, compose
from src.relations.typed import full_relation, join_exists, orbit_relation, project_row
from src.solver.solver import verify_certificate
from src.structures.ground import load_structure
from tests.conftest import build_instance

K3 = [(('x', 'y'), 'orbit:E'), (('y', 'z'), 'orbit:E'), (('x', 'z'), 'orbit:E')]
GRAPHS = ['random-graph', 'henson-k3-free']


@pytest.mark.parametrize('name, constraints, status', [
    ('random-graph', K3, 'sat'),
    ('henson-k3-free', K3, 'unsat'),
    ('henson-k3-free', [(('x', 'y'), 'orbit:E'), (('y', 'z'), 'orbit:E')], 'sat'),
    ('random-graph', [(('x', 'y'), 'orbit:E'), (('x', 'y'), 'orbit:N')], 'unsat'),
])
def test_brute_solve_golden(name, constraints, status):
    ground = load_structure(name)
    instance = build_instance(ground, 'xyz', constraints)
    result = brute_solve(instance)
    assert result.status == status
    if status == 'sat':
        assert verify_certificate(instance, result.certificate)


def test_brute_solve_prefers_injective_assignments(graph):
    result = brute_solve(build_instance(graph, 'xyz', [(('x', 'y', 'z'), 'full')]))
    assert sorted(result.certificate.assignment.values()) == [0, 1, 2]


def test_brute_solve_merges_when_forced(graph):
    equal = {'rows': [{'partition': [[0, 1]], 'types': {}}]}
    result = brute_solve(build_instance(graph, 'xyz', [(('x', 'y'), equal), (('y', 'z'), 'orbit:E')]))
    assignment = result.certificate.assignment
    assert assignment['x'] == assignment['y'] != assignment['z']


def test_brute_solve_budget(graph):
    instance = random_instance(graph, 8, 3, seed=1)
    with pytest.raises(BudgetExceeded):
        brute_solve(instance)
    with pytest.raises(ValueError):
        brute_solve(instance, ground=load_structure('hypergraph-3'), budget=10)


def test_random_instance_is_reproducible(henson):
    first = random_instance(henson, 5, 6, seed=3)
    second = random_instance(henson, 5, 6, seed=3)
    assert first.vars == ('x0', 'x1', 'x2', 'x3', 'x4')
    assert [(c.vars, c.rows) for c in first.constraints] == [(c.vars, c.rows) for c in second.constraints]
    assert all(c.rows for c in first.constraints)
    with pytest.raises(ValueError):
        random_instance(henson, 1, 1)
    with pytest.raises(ValueError):
        random_instance(henson, 3, 1, density=1.5)


@pytest.mark.parametrize('name', GRAPHS + ['hypergraph-3'])
def test_density_zero_is_satisfiable(name):
    ground = load_structure(name)
    instance = random_instance(ground, 4, 3, seed=5, density=0)
    assert all(c == full_relation(ground, c.vars) for c in instance.constraints)
    assert brute_solve(instance).status == 'sat'


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10 ** 6), name=st.sampled_from(GRAPHS))
def test_saturation_preserves_solutions(seed, name):
    ground = load_structure(name)
    instance = random_instance(ground, 4, 4, seed=seed)
    saturated = saturate(instance, 2, 3)
    if saturated.is_trivial:
        assert brute_solve(instance).status == 'unsat'
    else:
        assert brute_solve(saturated).status == brute_solve(instance).status


@pytest.mark.parametrize('name', GRAPHS)
def test_brute_join_matches_join(name):
    ground = load_structure(name)
    R1 = orbit_relation(ground, ('x', 'y'), ['E'])
    R2 = orbit_relation(ground, ('y', 'z'), ['E', 'N'])
    for keep in [('x', 'z'), ('x', 'y', 'z'), ('z',)]:
        assert brute_join(R1, R2, keep).rows == join_exists(R1, R2, keep).rows
    wide = full_relation(ground, ('x', 'y', 'z'))
    assert brute_join(wide, R1, ('x', 'z')).rows == join_exists(wide, R1, ('x', 'z')).rows


PAIR_NAMES = ['EE', 'EN', 'NE', 'NN']
ALLOWED_SETS = [set(s) for size in range(1, 5) for s in itertools.combinations(PAIR_NAMES, size)]


def test_composition_follows_relational_composition():
    effective = 0
    for name in GRAPHS:
        ground = load_structure(name)
        sig = ground.sig
        full = full_relation(ground, ('x', 'y', 'z'))

        def relation(allowed):
            return full.with_rows(
                row for row in full.rows if row.is_injective
                and sig.name(project_row(sig, row, [0, 1]).labels[0][1])
                + sig.name(project_row(sig, row, [1, 2]).labels[0][1]) in allowed)

        for first, second in itertools.product(ALLOWED_SETS, repeat=2):
            R1, R2 = relation(first), relation(second)
            proj1 = {project_row(sig, row, [1, 2]) for row in R1.rows}
            proj2 = {project_row(sig, row, [0, 1]) for row in R2.rows}
            if proj1 != proj2:
                continue
            C = {project_row(sig, row, [0, 1]) for row in R1.rows}
            phi1 = Implication(R1, ('x', 'y'), ('y', 'z'), C, proj1)
            phi2 = Implication(R2, ('x', 'y'), ('y', 'z'), proj2, {project_row(sig, row, [1, 2]) for row in R2.rows})
            composed = compose(phi1, phi2)
            assert composed.op_mappings() == relational_composition(phi1.op_mappings(), phi2.op_mappings()), \
                (name, first, second)
            effective += 1
    assert effective >= 100
