import os

import pytest

from formula.patterns import load_spec
from qbf.qdimacs import apply_witness
from synthesis.builder import synthesize_structure

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'fixtures')


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


def fixture_text(name: str) -> str:
    with open(fixture_path(name), encoding='utf-8') as handle:
        return handle.read()


@pytest.fixture(scope='session')
def read_fixture():
    return fixture_text


@pytest.fixture(scope='session')
def fixture_file():
    return fixture_path


@pytest.fixture(scope='session')
def door_spec():
    return load_spec(fixture_text('door.gxw'))


@pytest.fixture(scope='session')
def eq3_spec():
    return load_spec(fixture_text('eq3.gxw'))


@pytest.fixture
def door_structure(door_spec):
    return synthesize_structure(door_spec)


@pytest.fixture
def door_system(door_structure):
    return apply_witness(door_structure, {'out0': False, 'out1': False, 't0start': False})


@pytest.fixture
def eq3_system(eq3_spec):
    return apply_witness(synthesize_structure(eq3_spec), {'out1': False})
