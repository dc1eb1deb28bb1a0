#!/usr/bin/env python3
"""
Checkpointing, algebra families and the resumable sweep runner
"""
import logging
from datetime import datetime, timedelta

import pytest

from src.algebra.field import Field
from src.sweeps.families import instances, monomial_algebras, quivers
from src.sweeps.runner import SweepRunner
from src.utils.checkpoint import CheckpointManager
from src.utils.errors import CapExceededError, UniserialLabError


@pytest.fixture
def checkpoint_mgr(tmp_path):
    return CheckpointManager(str(tmp_path / 'checkpoints' / 'progress.db'))


def sweep_config(max_vertices=2, max_arrows=1, verify_with_census=False):
    return {
        'sweeps': {
            'characteristic': 2,
            'max_vertices': max_vertices,
            'max_arrows': max_arrows,
            'max_nilpotency': 4,
            'relation_sets': 4,
            'dichotomy_samples': 20,
            'verify_with_census': verify_with_census,
            'census_dim_cap': 3,
        },
        'uniserial': {'enumeration_cap': 8},
        'checkpointing': {'checkpoint_every': 1},
    }


# Checkpoints

def test_checkpoint_round_trip(checkpoint_mgr):
    assert checkpoint_mgr.get_checkpoint('monomial') is None
    checkpoint_mgr.save_checkpoint('monomial', 'A', 4, 5, 1)
    checkpoint = checkpoint_mgr.get_checkpoint('monomial')
    assert checkpoint['last_index'] == 4
    assert checkpoint['total_done'] == 5
    assert checkpoint['disagreements'] == 1
    assert checkpoint['status'] == 'in_progress'
    checkpoint_mgr.mark_complete('monomial')
    assert checkpoint_mgr.get_checkpoint('monomial')['status'] == 'completed'


def test_checkpoint_errors_and_statistics(checkpoint_mgr):
    checkpoint_mgr.log_error('bounds', 'A', 'boom')
    assert [e['error_message'] for e in checkpoint_mgr.get_errors('bounds')] == ['boom']
    assert checkpoint_mgr.get_errors('monomial') == []
    start = datetime.now()
    checkpoint_mgr.save_statistics('bounds', 3, 0, 1, start, start + timedelta(seconds=2))
    stats = checkpoint_mgr.get_statistics('bounds')
    assert stats['duration_seconds'] == pytest.approx(2.0)
    assert stats['errors'] == 1
    checkpoint_mgr.reset_sweep('bounds')
    assert checkpoint_mgr.get_errors('bounds') == []
    assert checkpoint_mgr.get_statistics('bounds') is None


# Families

def test_quiver_family():
    assert len(list(quivers(2, 1))) == 1
    assert len(list(quivers(2, 2))) == 2
    # 1->2->3, a fork out of 1 and a fork into 3
    assert len([q for q in quivers(3, 2) if len(q.vertices) == 3]) == 3


def test_monomial_family_of_a2():
    algebras = list(monomial_algebras(Field.prime(2), max_vertices=2, max_arrows=1))
    assert len(algebras) == 1
    assert algebras[0].dim == 3
    found = list(instances(iter(algebras)))
    assert len(found) == 1
    assert str(found[0].module.mast) == 'a1'


# Runner

def test_monomial_sweep(checkpoint_mgr):
    runner = SweepRunner(checkpoint_mgr, sweep_config(), logging.getLogger('test'))
    records = list(runner.run('monomial', limit=3))
    assert len(records) == 1
    assert records[0]['ok'] and records[0]['claim'] is True
    # the mast module of A2 is projective: no almost split sequence is needed
    assert records[0]['oracle_verified'] is True
    assert checkpoint_mgr.get_checkpoint('monomial')['status'] == 'completed'
    assert checkpoint_mgr.get_statistics('monomial')['total_instances'] == 1
    assert checkpoint_mgr.get_statistics('monomial')['errors'] == 0
    assert runner.errors == 0
    assert list(runner.run('monomial')) == []


def test_sweep_resumes_after_limit(checkpoint_mgr):
    runner = SweepRunner(checkpoint_mgr, sweep_config(3, 2), logging.getLogger('test'))
    first = list(runner.run('monomial', limit=1))
    checkpoint = checkpoint_mgr.get_checkpoint('monomial')
    assert checkpoint['status'] == 'in_progress'
    assert checkpoint['last_index'] == 0
    second = list(runner.run('monomial', limit=1))
    assert len(first) == len(second) == 1
    assert first[0]['instance'] != second[0]['instance']
    assert checkpoint_mgr.get_checkpoint('monomial')['total_done'] == 2


def test_dichotomy_sweep(checkpoint_mgr):
    runner = SweepRunner(checkpoint_mgr, sweep_config(), logging.getLogger('test'))
    records = list(runner.run('dichotomy'))
    assert [r['branch'] for r in records] == ['indecomposable']
    assert records[0]['middle_term'] == [1, 1]


def test_unknown_sweep(checkpoint_mgr):
    runner = SweepRunner(checkpoint_mgr, sweep_config(), logging.getLogger('test'))
    with pytest.raises(UniserialLabError):
        list(runner.run('everything'))


def test_errors_are_counted(checkpoint_mgr, monkeypatch):
    runner = SweepRunner(checkpoint_mgr, sweep_config(), logging.getLogger('test'))

    def broken(instance):
        raise CapExceededError('out of candidates')

    monkeypatch.setattr(runner, '_monomial', broken)
    assert list(runner.run('monomial')) == []
    assert runner.errors == 1
    assert checkpoint_mgr.get_statistics('monomial')['errors'] == 1
    assert [e['error_message'] for e in checkpoint_mgr.get_errors('monomial')] == ['out of candidates']


@pytest.mark.parametrize('kind', ['monomial', 'multiserial', 'necessity'])
def test_criteria_sweeps_on_three_vertices(checkpoint_mgr, kind):
    # 1 -> 2 -> 3 and the two forks, besides A2 and the Kronecker quiver
    runner = SweepRunner(checkpoint_mgr, sweep_config(3, 2), logging.getLogger('test'))
    records = list(runner.run(kind))
    assert records or kind == 'multiserial'
    assert runner.errors == 0
    assert all(r['ok'] for r in records)
    assert len({r['instance'] for r in records}) == len(records)


def test_bounds_sweep_is_census_verified(checkpoint_mgr):
    # A2 and the Kronecker quiver; only the Kronecker has non-projective mast modules
    runner = SweepRunner(checkpoint_mgr, sweep_config(2, 2, verify_with_census=True), logging.getLogger('test'))
    records = list(runner.run('bounds'))
    assert records
    assert runner.errors == 0
    assert all(r['ok'] and r['verified'] for r in records)
    assert all(r['alpha'] == 1 for r in records)


def test_surjectivity_sweep(checkpoint_mgr):
    runner = SweepRunner(checkpoint_mgr, sweep_config(3, 2), logging.getLogger('test'))
    records = list(runner.run('surjectivity'))
    assert records
    assert runner.errors == 0
    assert all(r['ok'] for r in records)
