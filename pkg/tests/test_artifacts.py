"""Solution and brace files."""

import json

import pytest

from ybsimple.core.abgroup import FinAbGroup, identity_aut, scalar_aut
from ybsimple.core.artifacts import (dump_brace, dump_solution, kind_of, load_brace, load_solution,
                                     save_brace, save_solution)
from ybsimple.core.brace import semidirect_trivial
from ybsimple.core.errors import CapExceededError, DescriptorError, SolutionError


def test_solution_file_is_stable(tmp_path, s4):
    path = tmp_path / 's4.json'
    save_solution(s4, path)
    text = path.read_text()
    assert text.splitlines()[1] == '  "kind": "solution",'
    assert '    [0, 1, 3, 2],' in text.splitlines()
    loaded = load_solution(path)
    assert loaded.labels == s4.labels
    assert dump_solution(loaded) == text
    assert kind_of(path) == 'solution'


def test_brace_file_is_stable(tmp_path):
    A = FinAbGroup((3,))
    B = semidirect_trivial(A, FinAbGroup((2,)), [identity_aut(A), scalar_aut(A, 2)])
    path = tmp_path / 'b.json'
    save_brace(B, path)
    loaded = load_brace(path)
    assert (loaded.lam == B.lam).all()
    assert dump_brace(loaded) == path.read_text()
    assert kind_of(path) == 'brace'
    with pytest.raises(CapExceededError):
        load_brace(path, max_size=4)


@pytest.mark.parametrize('payload', [
    'not json',
    '[1, 2]',
    '{"kind": "brace", "size": 1, "add": [[0]], "mul": [[0]]}',
    '{"kind": "solution", "size": 0, "sigma": []}',
    '{"kind": "solution", "size": 2, "sigma": [[0, 1]]}',
    '{"kind": "solution", "size": 2, "sigma": [[0, 1], [0, 5]]}',
    '{"kind": "solution", "size": 2, "labels": ["a"], "sigma": [[0, 1], [0, 1]]}',
    '{"kind": "solution", "size": 2}',
])
def test_malformed_solution_files(tmp_path, payload):
    path = tmp_path / 'bad.json'
    path.write_text(payload)
    with pytest.raises(DescriptorError):
        load_solution(path)


def test_missing_file(tmp_path):
    with pytest.raises(DescriptorError):
        load_solution(tmp_path / 'absent.json')
    with pytest.raises(DescriptorError):
        kind_of(tmp_path / 'absent.json')


def test_axioms_checked_on_load(tmp_path):
    path = tmp_path / 'degenerate.json'
    path.write_text(json.dumps({'kind': 'solution', 'size': 2, 'sigma': [[1, 0], [0, 1]]}))
    with pytest.raises(SolutionError) as info:
        load_solution(path)
    assert info.value.predicate == 'nondegenerate'
