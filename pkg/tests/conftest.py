import pytest

from src.minimality.instance import Instance
from src.structures.ground import henson_k3_free, hypergraph_3, random_graph


@pytest.fixture(scope='session')
def graph():
    return random_graph()


@pytest.fixture(scope='session')
def henson():
    return henson_k3_free()


@pytest.fixture(scope='session')
def hypergraph():
    return hypergraph_3()


def build_instance(ground, vars, constraints):
    """Instance from (scope, relation) pairs in the instance file notation."""
    return Instance.from_config(
        {'vars': list(vars), 'constraints': [{'scope': list(scope), 'rel': rel} for scope, rel in constraints]},
        ground=ground)
