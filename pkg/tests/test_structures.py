"""Tests for :mod:`src.structures`
"""
import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from src.structures.ground import (GroundStructure, colex_subsets, complete_labelings, embeds, load_structure,
                                   maps_hom, maps_to_ground, one_point_extensions, realizable, validate_presentation)
from src.structures.signature import LabeledStructure, Signature, compose_perms, permute


def clique(sig, n, label='E'):
    return LabeledStructure(sig, n, [(t, label) for t in itertools.combinations(range(n), 2)])


def test_compose_perms_matches_sequential_permute():
    t = ('a', 'b', 'c')
    for tau, sigma in itertools.product(itertools.permutations(range(3)), repeat=2):
        assert permute(permute(t, tau), sigma) == permute(t, compose_perms(tau, sigma))


@pytest.mark.parametrize('k, labels', [
    (1, ['E']),
    (2, []),
    (2, ['E', 'E']),
])
def test_signature_rejects_bad_input(k, labels):
    with pytest.raises(ValueError):
        Signature(k, labels)


def test_group_law(graph, hypergraph):
    assert graph.sig.group_law_violations() == []
    assert hypergraph.sig.group_law_violations() == []
    swap = Signature(2, ['E', 'N'], [[[1, 0], 'E', 'N'], [[1, 0], 'N', 'E']])
    assert swap.group_law_violations() == []
    broken = Signature(2, ['E', 'N'], [[[1, 0], 'E', 'N']])
    assert broken.group_law_violations()


def test_labeled_structure_closure(graph):
    sig = graph.sig
    X = LabeledStructure(sig, 2, [((1, 0), 'E')])
    assert X.labels == {(0, 1): sig.label_id('E')}
    assert X.is_proper and X.is_full
    assert X.label((1, 0)) == sig.label_id('E')
    doubled = LabeledStructure(sig, 2, [((0, 1), 'E'), ((0, 1), 'N')])
    assert not doubled.is_proper
    with pytest.raises(ValueError):
        LabeledStructure(sig, 2, [((0, 2), 'E')])


@pytest.mark.parametrize('name, k, b, d', [
    ('random-graph', 2, 2, 4),
    ('henson-k3-free', 2, 3, 5),
    ('hypergraph-3', 3, 3, 5),
])
def test_builtin_parameters(name, k, b, d):
    ground = load_structure(name)
    assert (ground.name, ground.k, ground.b, ground.d) == (name, k, b, d)


def test_embeds(graph):
    sig = graph.sig
    triangle = clique(sig, 3)
    path = LabeledStructure(sig, 3, [((0, 1), 'E'), ((1, 2), 'E'), ((0, 2), 'N')])
    assert embeds(triangle, clique(sig, 4))
    assert not embeds(triangle, path)
    assert not embeds(clique(sig, 4), triangle)


@pytest.mark.parametrize('name, small, large', [
    ('random-graph', 3, 4),
    ('henson-k3-free', 3, 4),
    ('hypergraph-3', 3, 4),
])
def test_embedding_is_a_homomorphism(name, small, large):
    ground = load_structure(name)
    sources = [LabeledStructure.from_labels(ground.sig, n, labels)
               for n in (2, small) for labels in complete_labelings(ground, n)]
    targets = [LabeledStructure.from_labels(ground.sig, large, labels) for labels in complete_labelings(ground, large)]
    embedded = 0
    for F, X in itertools.product(sources, targets):
        if embeds(F, X):
            embedded += 1
            assert maps_hom(F, X)
    assert embedded > 0


def test_doubled_pair_maps_to_no_proper_structure(graph, henson):
    sig = graph.sig
    doubled = LabeledStructure(sig, 2, [((0, 1), 'E'), ((0, 1), 'N')])
    for labels in complete_labelings(henson, 4):
        assert not maps_hom(doubled, LabeledStructure.from_labels(sig, 4, labels))
    assert not maps_hom(doubled, clique(sig, 3))
    assert not maps_to_ground(doubled, graph)


def test_realizable_and_duality(graph, henson):
    sig = graph.sig
    triangle = clique(sig, 3)
    assert realizable(triangle, graph)
    assert not realizable(triangle, henson)
    assert maps_to_ground(triangle, graph)
    assert not maps_to_ground(triangle, henson)
    assert not maps_to_ground(LabeledStructure(sig, 1, [((0, 0), 'E')]), graph)
    with pytest.raises(ValueError):
        realizable(LabeledStructure(sig, 3, [((0, 1), 'E')]), graph)


@settings(max_examples=30, deadline=None)
@given(chosen=st.lists(st.booleans(), min_size=5, max_size=5), dropped=st.lists(st.booleans(), min_size=5, max_size=5))
def test_realizable_is_anti_monotone_in_bounds(chosen, dropped):
    ground = load_structure('random-graph')
    sig = ground.sig
    candidates = [
        clique(sig, 3),
        clique(sig, 3, 'N'),
        LabeledStructure(sig, 3, [((0, 1), 'E'), ((1, 2), 'E'), ((0, 2), 'N')]),
        LabeledStructure(sig, 2, [((0, 1), 'N')]),
        clique(sig, 4),
    ]
    larger = [F for F, keep in zip(candidates, chosen) if keep]
    smaller = [F for F, keep, drop in zip(candidates, chosen, dropped) if keep and not drop]
    strict, loose = GroundStructure(sig, embed_bounds=larger), GroundStructure(sig, embed_bounds=smaller)
    for labels in complete_labelings(ground, 4):
        X = LabeledStructure.from_labels(sig, 4, labels)
        if realizable(X, strict):
            assert realizable(X, loose)


def test_colex_order():
    assert colex_subsets(4, 2) == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]


@pytest.mark.parametrize('name, n, count', [
    ('random-graph', 3, 8),
    ('henson-k3-free', 3, 7),
    # triangle-free labeled graphs on four vertices
    ('henson-k3-free', 4, 41),
    ('hypergraph-3', 4, 16),
])
def test_complete_labelings_count(name, n, count):
    ground = load_structure(name)
    labelings = list(complete_labelings(ground, n))
    assert len(labelings) == count
    assert len({tuple(sorted(labels.items())) for labels in labelings}) == count


def test_complete_labelings_fixed_and_partial(graph, henson):
    E, N = henson.sig.label_id('E'), henson.sig.label_id('N')
    forced = list(complete_labelings(henson, 3, fixed={(0, 1): E, (0, 2): E}))
    assert forced == [{(0, 1): E, (0, 2): E, (1, 2): N}]
    assert list(complete_labelings(henson, 3, fixed={(0, 1): E, (0, 2): E, (1, 2): E})) == []
    assert len(list(complete_labelings(graph, 3, enumerate_first=[(0, 1)]))) == 2


def test_one_point_extensions(graph):
    single = LabeledStructure(graph.sig, 1)
    extensions = one_point_extensions(single, graph)
    assert len(extensions) == 2
    assert all(X.n == 2 and X.is_full for X in extensions)


@pytest.mark.parametrize('name, count', [('random-graph', 4), ('henson-k3-free', 3)])
def test_one_point_extensions_of_an_edge(name, count):
    ground = load_structure(name)
    edge = LabeledStructure(ground.sig, 2, [((0, 1), 'E')])
    extensions = one_point_extensions(edge, ground)
    assert len(extensions) == count
    assert all(X.n == 3 and X.label((0, 1)) == ground.sig.label_id('E') for X in extensions)
    assert all(realizable(X, ground) for X in extensions)


@pytest.mark.parametrize('name', ['random-graph', 'henson-k3-free', 'hypergraph-3'])
def test_validate_builtins(name):
    assert validate_presentation(load_structure(name), depth=5) == []


def test_validate_reports_broken_action():
    broken = Signature(2, ['E', 'N'], [[[1, 0], 'E', 'N']])
    report = validate_presentation(GroundStructure(broken), depth=2)
    assert any('sends E' in line for line in report)


def test_validate_reports_unrealizable_label(graph):
    sig = graph.sig
    ground = GroundStructure(sig, embed_bounds=[LabeledStructure(sig, 2, [((0, 1), 'E')])])
    report = validate_presentation(ground, depth=3)
    assert any('label E is not realizable' in line for line in report)
    with pytest.raises(ValueError):
        validate_presentation(ground, depth=1)


def test_load_structure_from_file(tmp_path, henson):
    path = tmp_path / 'henson.json'
    path.write_text(json.dumps(henson.get_config()))
    loaded = load_structure(str(path))
    assert loaded.get_config() == henson.get_config()
    assert loaded.b == 3
    with pytest.raises(ValueError):
        load_structure('no-such-structure')
