"""End-to-end runs of the command-line verbs."""

import io

import pytest
import yaml

from ybsimple.__main__ import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue().splitlines()


@pytest.fixture(autouse=True)
def no_local_config(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)


@pytest.fixture
def s4_file(tmp_path):
    path = tmp_path / 's4.json'
    code, lines = run('construct', 'newsol', '--group', 'Z2', '--aut', '[[1]]', '--j', '0->0,1->1', '-o', str(path))
    assert code == 0
    assert 'size: 4' in lines
    assert f'solution_file: {path}' in lines
    return path


def test_construct_then_verify(s4_file):
    code, lines = run('verify', str(s4_file))
    assert code == 0
    assert lines[:5] == ['kind: solution', 'size: 4', 'involutive: true', 'nondegenerate: true', 'braid: true']


def test_analyze_file(s4_file):
    code, lines = run('analyze', str(s4_file))
    assert code == 0
    assert 'simple: true' in lines
    assert 'perm_group_order: 8' in lines
    assert 'mpl: not-multipermutation' in lines


def test_analyze_family_reports_va_quotient():
    code, lines = run('analyze', '--group', 'Z4', '--aut', '[[1]]', '--j', '0->0,1->2,2->0,3->2')
    assert code == 0
    assert 'v_condition: false' in lines
    assert 'va_quotient_element: 1' in lines
    assert 'va_quotient_size: 4' in lines


def test_construct_report(tmp_path):
    code, lines = run('construct', 'newsol', '--group', 'Z2xZ2', '--aut', '[[0,1],[1,1]]', '--j', 'id', '--report')
    assert code == 0
    assert 'size: 16' in lines
    assert 'brute_simple: true' in lines
    assert 'violations: 0' in lines


def test_brace_of_solution(s4_file, tmp_path):
    out = tmp_path / 'g.json'
    code, lines = run('brace', str(s4_file), '-o', str(out))
    assert code == 0
    assert 'size: 8' in lines
    code, lines = run('verify', str(out))
    assert code == 0
    assert 'brace_ok: true' in lines


def test_simple_family_matches_its_group(tmp_path):
    sol, brace = tmp_path / 'x.json', tmp_path / 'b.json'
    code, lines = run('construct', 'simple-family', '--p', '2', '--primes', '3^1', '-o', str(sol), '--brace', str(brace))
    assert code == 0
    assert 'brace_size: 24' in lines
    assert 'size: 12' in lines
    code, lines = run('iso', '--brace', str(brace), '--from-solution', str(sol))
    assert code == 0
    assert 'isomorphic: true' in lines


def test_grid_and_iso_of_solutions(tmp_path):
    a, b = tmp_path / 'a.json', tmp_path / 'b.json'
    assert run('construct', 'grid', '--n', '3', '--m', '2', '--t', '2', '-o', str(a))[0] == 0
    assert run('construct', 'simple-family', '--p', '2', '--primes', '3', '-o', str(b))[0] == 0
    code, lines = run('iso', str(a), str(b))
    assert code == 0
    assert lines[:2] == ['kind: solution', 'isomorphic: true']


def test_asym_model_verb():
    code, lines = run('construct', 'asym-model', '--group', 'Z2xZ2', '--aut', '[[0,1],[1,1]]', '--j', 'id')
    assert code == 0
    assert 'brace_size: 192' in lines
    assert 'radical_order: 2' in lines


def test_probe_single_group():
    code, lines = run('probe', '--group', 'Z2', '--aut', '[[1]]')
    assert code == 0
    assert 'families: 4' in lines
    assert 'necessary_violations: 0' in lines


def test_malformed_descriptor_exit_code():
    code, lines = run('construct', 'newsol', '--group', 'Q8', '--aut', '[[1]]', '--j', 'id')
    assert code == 2
    assert lines[0] == 'error: descriptor'


def test_missing_file_exit_code(tmp_path):
    code, lines = run('verify', str(tmp_path / 'absent.json'))
    assert code == 2
    assert lines[0] == 'error: descriptor'


def test_cap_exit_code():
    code, lines = run('construct', 'newsol', '--group', 'Z5', '--aut', '[[1]]', '--j', 'id',
                      '--max-group-order', '4')
    assert code == 3
    assert lines == ['error: cap_exceeded', 'cap: max_group_order', 'limit: 4']


def test_failed_predicate_exit_code():
    code, lines = run('construct', 'grid', '--n', '5', '--m', '2', '--t', '2')
    assert code == 1
    assert lines[0] == 'error: grid_t_order'
    assert lines[1] == 'witness: 2, 5, 2'


def test_unknown_verb_exit_code():
    assert run('frobnicate')[0] == 2


def test_config_command_from_file(tmp_path):
    path = tmp_path / 'conf.yaml'
    path.write_text(yaml.safe_dump({'max_brace_size': 50, 'commands': {'construct': {'max_brace_size': 20}}}))
    code, lines = run('-c', str(path), 'config', 'max_brace_size')
    assert code == 0
    assert lines == ['max_brace_size: 50']
    code, lines = run('-c', str(path), 'construct', 'simple-family', '--p', '2', '--primes', '3')
    assert code == 3
    assert 'limit: 20' in lines


def test_config_save(tmp_path):
    target = tmp_path / 'saved.yaml'
    code, _ = run('config', '--save', str(target))
    assert code == 0
    assert yaml.safe_load(target.read_text())['max_perm_group'] == 100000


def test_missing_config_file(tmp_path):
    code, lines = run('-c', str(tmp_path / 'none.yaml'), 'config')
    assert code == 2
    assert lines[0] == 'error: descriptor'
