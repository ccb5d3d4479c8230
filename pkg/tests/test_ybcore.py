"""Solutions: validation, permutation groups, orbits, retracts, congruences, isomorphisms."""

import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from ybsimple.core.errors import CapExceededError, SolutionError
from ybsimple.core.ybcore import (Congruence, analyze_solution, congruence_generated, cycle_type,
                                  cyclic_solution, find_solution_isomorphism, is_indecomposable,
                                  is_irretractable, is_simple_solution, is_solution_homomorphism,
                                  make_solution, multipermutation_level, orbits, pair_orbit_representatives,
                                  permutation_group, quotient_solution, retract, trivial_solution,
                                  verify_sigma_condition)

SIGMA4 = [[0, 1, 3, 2], [3, 2, 0, 1], [1, 0, 2, 3], [2, 3, 1, 0]]


def test_four_point_table(s4):
    assert s4.sigma.tolist() == SIGMA4
    assert verify_sigma_condition(s4)


def test_gamma_is_derived():
    S = make_solution(SIGMA4)
    for x in range(4):
        for y in range(4):
            u, v = S.r(x, y)
            assert S.r(u, v) == (x, y)


@pytest.mark.parametrize('sigma, predicate', [
    ([[0, 1], [1, 0], [0, 1]], 'square'),
    ([[0, 2], [0, 1]], 'range'),
    ([[0, 0], [0, 1]], 'row_permutation'),
    ([[1, 0], [0, 1]], 'nondegenerate'),
])
def test_make_solution_rejects(sigma, predicate):
    with pytest.raises(SolutionError) as info:
        make_solution(sigma)
    assert info.value.predicate == predicate


def test_trivial_and_cyclic():
    T = trivial_solution(3)
    assert permutation_group(T).order == 1
    assert len(orbits(T)) == 3
    C = cyclic_solution(4)
    assert permutation_group(C).order == 4
    assert is_indecomposable(C)[0]
    assert retract(C)[0].size == 1
    assert multipermutation_level(C) == 1
    assert multipermutation_level(T) == 1


def test_four_point_group(s4):
    G = permutation_group(s4)
    assert G.order == 8
    assert sorted(cycle_type(row) for row in s4.sigma) == [(1, 1, 2), (1, 1, 2), (4,), (4,)]
    # every element is its word
    for h in range(1, G.order):
        parent = G.elements[G.parent[h]]
        assert np.array_equal(parent[s4.sigma[G.word_point[h]]], G.elements[h])
    assert (G.mul_table[np.arange(G.order), G.inverses] == 0).all()


def test_permutation_group_cap(s4):
    with pytest.raises(CapExceededError) as info:
        permutation_group(s4, max_size=5)
    assert info.value.what == 'max_perm_group'


def test_four_point_is_simple(s4):
    assert is_indecomposable(s4)[0]
    assert is_irretractable(s4)
    assert multipermutation_level(s4) is None
    simple, witness = is_simple_solution(s4)
    assert simple and witness is None


def test_cyclic_four_is_not_simple():
    C = cyclic_solution(4)
    simple, witness = is_simple_solution(C)
    assert not simple
    assert not witness.is_full()
    Q, proj = quotient_solution(C, witness)
    assert 1 < Q.size < 4
    assert is_solution_homomorphism(C, Q, proj)


def test_pair_orbits_cover_all_pairs(s4):
    reps = pair_orbit_representatives(s4)
    assert all(x < y for x, y in reps)
    assert 1 <= len(reps) <= 6
    assert len(pair_orbit_representatives(trivial_solution(3))) == 3


def test_congruence_closure_is_compatible(s16):
    C = congruence_generated(s16, [(0, 1)])
    Q, proj = quotient_solution(s16, C)
    assert is_solution_homomorphism(s16, Q, proj)


def test_congruence_from_labels():
    C = Congruence.from_labels([5, 5, 7, 5])
    assert C.block_count == 2
    assert C.blocks() == [[0, 1, 3], [2]]
    assert not C.is_full() and not C.is_discrete()


def test_retract_of_trivial_solution():
    R, proj = retract(trivial_solution(5))
    assert R.size == 1
    assert not proj.any()


def test_isomorphism_found_under_relabelling(s4):
    perm = np.array([2, 0, 3, 1])
    inv = np.argsort(perm)
    relabelled = make_solution(perm[s4.sigma[inv[:, None], inv[None, :]]])
    f = find_solution_isomorphism(s4, relabelled)
    assert f is not None
    assert is_solution_homomorphism(s4, relabelled, f)


def test_isomorphism_rejected_by_invariants():
    assert find_solution_isomorphism(trivial_solution(3), cyclic_solution(3)) is None
    assert find_solution_isomorphism(trivial_solution(3), trivial_solution(4)) is None


def test_analyze_report_lines(s4):
    lines = analyze_solution(s4).lines()
    assert 'simple: true' in lines
    assert 'perm_group_order: 8' in lines
    assert 'mpl: not-multipermutation' in lines
    assert 'indecomposable: true' in lines


def test_sixteen_point_is_simple(s16):
    assert is_simple_solution(s16)[0]
    report = analyze_solution(s16)
    assert report.indecomposable and report.irretractable


def test_library_runs_without_the_command_line():
    code = (
        "import sys\n"
        "from ybsimple.core.constructions import sweep_newsol\n"
        "from ybsimple.core.ybcore import make_solution\n"
        "make_solution([[0, 1], [0, 1]])\n"
        "assert sweep_newsol(2).violations == []\n"
        "assert 'ybsimple.__main__' not in sys.modules\n"
    )
    result = subprocess.run([sys.executable, '-c', code], cwd=Path(__file__).resolve().parents[1],
                            capture_output=True, text=True)
    assert result.returncode == 0, result.stderr
