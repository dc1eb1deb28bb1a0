#!/usr/bin/env python3
"""
Shared fixtures: the sample algebras under samples/ and a throwaway config
"""
from pathlib import Path

import pytest
import yaml

from src.algebra.engine import build_algebra
from src.algebra.field import Field
from src.frontend.parser import parse, parse_file
from src.quiver.quiver import Quiver


ROOT = Path(__file__).resolve().parent.parent
SAMPLES = ROOT / 'samples'


def sample_path(name: str) -> str:
    return str(SAMPLES / f"{name}.qvr")


def load_sample(name: str):
    return parse_file(sample_path(name)).build()


@pytest.fixture(scope='session')
def a2():
    return load_sample('a2')


@pytest.fixture(scope='session')
def a3():
    return load_sample('a3')


@pytest.fixture(scope='session')
def example_a():
    return load_sample('example-a')


@pytest.fixture(scope='session')
def example_b():
    return load_sample('example-b')


@pytest.fixture(scope='session')
def example_c():
    return load_sample('example-c')


@pytest.fixture(scope='session')
def example_d():
    return load_sample('example-d')


@pytest.fixture(scope='session')
def example_d_f2():
    """samples/example-d.qvr over F2"""
    text = (SAMPLES / 'example-d.qvr').read_text(encoding='utf-8').replace('field Q', 'field F 2')
    return parse(text, name='example-d-f2').build()


@pytest.fixture(scope='session')
def forked():
    """1 -> 2 and 1 -> 3: two arrows leave the source of any mast"""
    quiver = Quiver(['1', '2', '3'], [('a1', '1', '2'), ('c', '1', '3')])
    return build_algebra(quiver, [], Field.rationals(), name='forked')


@pytest.fixture
def cli_config(tmp_path):
    """config/config.yaml with every output redirected into tmp_path"""
    with open(ROOT / 'config' / 'config.yaml', encoding='utf-8') as f:
        config = yaml.safe_load(f)
    config['logging']['file'] = str(tmp_path / 'lab.log')
    config['checkpointing']['db_path'] = str(tmp_path / 'progress.db')
    config['output']['directory'] = str(tmp_path / 'output')
    path = tmp_path / 'config.yaml'
    path.write_text(yaml.safe_dump(config), encoding='utf-8')
    return str(path)
