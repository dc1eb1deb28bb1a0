#!/usr/bin/env python3
"""
The .qvr reader/writer, JSON reports and the command line
"""
import json
import logging

import jsonlines
import pytest
import yaml

from main import EXIT_EXPECTATION, EXIT_INPUT, EXIT_OK, main
from src.frontend.parser import emit, parse, parse_file, tokenize
from src.frontend.report import emit_report
from src.sweeps.runner import SweepRunner
from src.utils.errors import CapExceededError, ScanError, SemanticError, SyntaxError_
from src.utils.logger import LOGGER_NAME
from tests.conftest import sample_path


# Parser

def test_tokens_carry_positions():
    tokens = tokenize('field Q\nvertices 1 2\n')
    assert [(t.kind, t.text) for t in tokens[:3]] == [('NAME', 'field'), ('NAME', 'Q'), ('NEWLINE', '\n')]
    assert (tokens[3].line, tokens[3].column) == (2, 1)
    assert tokens[-1].kind == 'EOF'


def test_unknown_vertex_position():
    text = 'field Q\nvertices 1 2\narrows\n  a1: 1 -> 9\n'
    with pytest.raises(SemanticError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (4, 12)
    assert info.value.source_line == '  a1: 1 -> 9'
    assert str(info.value).startswith('4:12: unknown vertex 9')


def test_scan_error_position():
    with pytest.raises(ScanError) as info:
        parse('field Q\nvertices 1 $\n')
    assert (info.value.line, info.value.column) == (2, 12)


def test_syntax_error():
    with pytest.raises(SyntaxError_):
        parse('field Q\nvertices 1 2\narrows\n  a1 1 -> 2\n')


def test_field_forms():
    assert parse('field F5\nvertices 1\n').field.name == 'F5'
    assert parse('field F 3\nvertices 1\n').field.name == 'F3'
    with pytest.raises(SemanticError):
        parse('field F 6\nvertices 1\n')
    with pytest.raises(SemanticError):
        parse('field R\nvertices 1\n')


def test_non_parallel_relation_is_semantic():
    with open(sample_path('example-a'), encoding='utf-8') as f:
        source = f.read().replace('b2*g2', 'b1*a1 - g1')
    with pytest.raises(SemanticError):
        parse(source)


def test_relations_with_coefficients_and_equations():
    spec = parse('field Q\nvertices 1 2 3\narrows\n  a: 1 -> 2\n  b: 2 -> 3\n  c: 1 -> 3\n'
                 'relations\n  2/3*b*a = 0*b*a + b*a; \n')
    assert len(spec.relations) == 1
    assert spec.relations[0].source == '1'


def test_empty_relations_section_is_hereditary():
    spec = parse('field Q\nvertices 1 2\narrows\n  a1: 1 -> 2\nrelations\noptions\n  degree_cap = 8\n')
    assert spec.relations == []
    assert spec.options == {'degree_cap': 8}
    assert spec.build().dim == 3


def test_unknown_option():
    with pytest.raises(SemanticError):
        parse('field Q\nvertices 1\noptions\n  speed = 3\n')


def test_emit_then_parse(example_d):
    spec = parse_file(sample_path('example-d'))
    again = parse(emit(spec))
    assert again.quiver.vertices == spec.quiver.vertices
    assert set(again.quiver.arrows) == set(spec.quiver.arrows)
    assert len(again.relations) == len(spec.relations)
    assert again.build().dim == example_d.dim
    assert emit(again) == emit(spec)


# Reports

def test_emit_report_is_deterministic(a3):
    first = emit_report(a3, extra_flag=True)
    assert first == emit_report(a3, extra_flag=True)
    payload = json.loads(first)
    assert payload['path_order'] == 'right-to-left'
    assert payload['result']['dim'] == 6
    assert payload['extra_flag'] is True


# Command line

@pytest.fixture(autouse=True)
def detach_cli_handlers():
    yield
    logger = logging.getLogger(LOGGER_NAME)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()


def run_json(capsys, *argv):
    code = main(list(argv) + ['--json'])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_cli_validate(cli_config, capsys):
    code, payload = run_json(capsys, '--config', cli_config, 'validate', sample_path('example-d'))
    assert code == EXIT_OK
    assert payload['command'] == 'validate'
    assert payload['result']['valid'] is True
    assert payload['result']['dim'] == 12


def test_cli_check_expectation(cli_config, capsys):
    args = ['--config', cli_config, 'check', sample_path('example-d'),
            '--mast', 'a2*a1', '--fdelta', 'd1=1', '--no-witness']
    code, payload = run_json(capsys, *args, '--expect', 'not-irreducible')
    assert code == EXIT_OK
    assert payload['result']['verdict'] == 'not-irreducible'
    assert payload['result']['decided_by'] == 'multiserial'
    code, _ = run_json(capsys, *args, '--expect', 'irreducible')
    assert code == EXIT_EXPECTATION


def test_cli_ar(cli_config, capsys):
    code, payload = run_json(capsys, '--config', cli_config, 'ar', sample_path('a3'), '--module', 'simple:1',
                             '--no-census')
    assert code == EXIT_OK
    assert payload['result']['alpha'] == 1
    assert payload['result']['projective'] is False
    assert payload['result']['verified'] is False
    assert payload['result']['verification'] == 'local-only'
    assert 'census' not in payload['result']


def test_cli_ar_builds_a_census_over_finite_fields(cli_config, capsys):
    code, payload = run_json(capsys, '--config', cli_config, 'ar', sample_path('a3'), '--module', 'simple:2',
                             '--census-dim-cap', '3')
    assert code == EXIT_OK
    result = payload['result']
    assert result['verified'] is True
    assert result['verification'] == 'census'
    assert result['sequence']['verified'] is True
    assert result['census']['count'] == 6
    assert result['radical_embedding_verified'] is True


def test_cli_census_output(cli_config, capsys, tmp_path):
    output = tmp_path / 'census.jsonl'
    code, payload = run_json(capsys, '--config', cli_config, 'census', sample_path('a3'),
                             '--dim-cap', '3', '--output', str(output))
    assert code == EXIT_OK
    assert payload['result']['count'] == 6
    with jsonlines.open(output) as reader:
        assert len(list(reader)) == 6


def test_cli_bad_input(cli_config, capsys, tmp_path):
    bad = tmp_path / 'bad.qvr'
    bad.write_text('field Q\nvertices 1 $\n', encoding='utf-8')
    code, payload = run_json(capsys, '--config', cli_config, 'validate', str(bad))
    assert code == EXIT_INPUT
    assert payload is None
    code, _ = run_json(capsys, '--config', cli_config, 'validate', str(tmp_path / 'missing.qvr'))
    assert code == EXIT_INPUT


def test_cli_bad_point(cli_config, capsys):
    code, _ = run_json(capsys, '--config', cli_config, 'check', sample_path('example-d'),
                       '--mast', 'a2*a1', '--point', 'd1@a1=0')
    assert code == EXIT_INPUT


def test_cli_sweep_with_errors_exits_nonzero(cli_config, capsys, monkeypatch):
    with open(cli_config, encoding='utf-8') as f:
        config = yaml.safe_load(f)
    config['sweeps'].update({'max_vertices': 2, 'max_arrows': 1, 'relation_sets': 4,
                             'verify_with_census': False})
    with open(cli_config, 'w', encoding='utf-8') as f:
        yaml.safe_dump(config, f)

    def broken(self, instance):
        raise CapExceededError('out of candidates')

    monkeypatch.setattr(SweepRunner, '_monomial', broken)
    code, payload = run_json(capsys, '--config', cli_config, 'sweep', 'monomial')
    assert code == EXIT_EXPECTATION
    assert payload['result']['errors'] == 1
    assert payload['result']['verdict'] == 'incomplete'


def test_cli_sweep_agrees(cli_config, capsys):
    with open(cli_config, encoding='utf-8') as f:
        config = yaml.safe_load(f)
    config['sweeps'].update({'max_vertices': 2, 'max_arrows': 1, 'relation_sets': 4})
    with open(cli_config, 'w', encoding='utf-8') as f:
        yaml.safe_dump(config, f)
    code, payload = run_json(capsys, '--config', cli_config, 'sweep', 'monomial')
    assert code == EXIT_OK
    assert payload['result']['errors'] == 0
    assert payload['result']['verdict'] == 'agree'
