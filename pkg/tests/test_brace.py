"""Finite left braces: axioms, socle, ideals, products and the brace of a solution."""

import numpy as np
import pytest

from ybsimple.core.abgroup import FinAbGroup, aut_from_matrix, identity_aut, scalar_aut
from ybsimple.core.brace import (AsymSpec, additive_closure, analyze_brace, asymmetric_product,
                                 brace_from_solution, brace_solution, check_identities, classify_subset,
                                 find_brace_isomorphism, ideal_generated, ideals, is_brace_homomorphism,
                                 is_simple_brace, left_ideal_generated, make_brace, quotient_brace,
                                 restrict_solution, semidirect_trivial, socle, sylow_subgroups,
                                 trivial_brace)
from ybsimple.core.errors import BraceError, CapExceededError
from ybsimple.core.ybcore import cyclic_solution, is_indecomposable


def test_trivial_brace():
    B = trivial_brace(FinAbGroup((2, 3)))
    assert B.is_trivial()
    assert socle(B).is_whole()
    assert not is_simple_brace(B)
    check_identities(B)


def test_make_brace_rejects_mismatched_tables():
    add = FinAbGroup((3,)).add_table
    # multiplication with a different identity
    mul = np.array([[1, 2, 0], [2, 0, 1], [0, 1, 2]])
    with pytest.raises(BraceError) as info:
        make_brace(add, mul)
    assert info.value.predicate == 'neutral'


def test_make_brace_rejects_incompatible_tables():
    # Z5 relabelled by a non-automorphism: every brace of prime order is trivial
    add = FinAbGroup((5,)).add_table
    pi = np.array([0, 2, 1, 3, 4])
    mul = pi[(pi[:, None] + pi[None, :]) % 5]
    with pytest.raises(BraceError) as info:
        make_brace(add, mul)
    assert info.value.predicate == 'brace_compatibility'


def test_make_brace_cap():
    add = FinAbGroup((5,)).add_table
    with pytest.raises(CapExceededError):
        make_brace(add, add, max_size=4)


def test_semidirect_brace_of_z3_by_z2():
    A, T = FinAbGroup((3,)), FinAbGroup((2,))
    B = semidirect_trivial(A, T, [identity_aut(A), scalar_aut(A, 2)])
    assert B.size == 6
    check_identities(B)
    soc = socle(B)
    assert soc.size == 3
    assert soc.is_ideal
    # (a, 1) acts by negation on the first factor
    assert B.lam[1, 2] == 4
    assert not is_simple_brace(B)


def test_semidirect_rejects_non_homomorphism():
    A, T = FinAbGroup((5,)), FinAbGroup((2,))
    with pytest.raises(BraceError) as info:
        semidirect_trivial(A, T, [identity_aut(A), scalar_aut(A, 2)])
    assert info.value.predicate == 'action_homomorphism'


def test_ideals_and_left_ideals():
    A, T = FinAbGroup((3,)), FinAbGroup((2,))
    B = semidirect_trivial(A, T, [identity_aut(A), scalar_aut(A, 2)])
    found = ideals(B)
    assert [I.size for I in found] == [1, 3, 6]
    assert all(I.is_ideal for I in found)
    L = left_ideal_generated(B, [1])
    assert L.is_left_ideal and L.size == 2
    assert ideal_generated(B, 2).size == 3
    syl = sylow_subgroups(B)
    assert sorted(syl) == [2, 3]
    assert all(S.is_left_ideal for S in syl.values())


def test_quotient_brace():
    A, T = FinAbGroup((3,)), FinAbGroup((2,))
    B = semidirect_trivial(A, T, [identity_aut(A), scalar_aut(A, 2)])
    Q, proj = quotient_brace(B, socle(B))
    assert Q.size == 2
    assert is_brace_homomorphism(B, Q, proj)


def test_asymmetric_product_direct_when_form_vanishes():
    H, R = trivial_brace(FinAbGroup((2,))), trivial_brace(FinAbGroup((3,)))
    alpha = np.tile(np.arange(2), (3, 1))
    form = np.zeros((2, 2), dtype=np.int64)
    B = asymmetric_product(AsymSpec(H, R, alpha, form))
    assert B.size == 6
    assert B.is_trivial()
    assert find_brace_isomorphism(B, trivial_brace(FinAbGroup((6,)))) is not None


def test_asymmetric_product_twisted_addition():
    # H = Z2, right factor Z2, b(1, 1) = 1: additive group becomes Z4
    H, R = trivial_brace(FinAbGroup((2,))), trivial_brace(FinAbGroup((2,)))
    alpha = np.tile(np.arange(2), (2, 1))
    form = np.array([[0, 0], [0, 1]])
    B = asymmetric_product(AsymSpec(H, R, alpha, form))
    assert sorted(B.additive_orders.tolist()) == [1, 2, 4, 4]
    assert classify_subset(B, [0, 1]).is_left_ideal


def test_asymmetric_product_rejects_bad_form():
    H, R = trivial_brace(FinAbGroup((2,))), trivial_brace(FinAbGroup((2,)))
    alpha = np.tile(np.arange(2), (2, 1))
    with pytest.raises(BraceError) as info:
        asymmetric_product(AsymSpec(H, R, alpha, np.array([[0, 1], [0, 0]])))
    assert info.value.predicate == 'form_symmetric'


def test_brace_from_four_point_solution(s4):
    B, elements = brace_from_solution(s4)
    assert B.size == 8
    assert elements.shape == (8, 4)
    check_identities(B)
    assert socle(B).size == 1
    # lambda_g(sigma_y) = sigma_{g(y)}
    index = {row.tobytes(): i for i, row in enumerate(elements)}
    for g in range(B.size):
        for y in range(4):
            assert B.lam[g, index[s4.sigma[y].tobytes()]] == index[s4.sigma[elements[g][y]].tobytes()]


def test_brace_of_cyclic_solution_is_trivial():
    B, _ = brace_from_solution(cyclic_solution(5))
    assert B.size == 5
    assert B.is_trivial()


def test_brace_solution_and_restriction():
    A, T = FinAbGroup((3,)), FinAbGroup((2,))
    B = semidirect_trivial(A, T, [identity_aut(A), scalar_aut(A, 2)])
    S = brace_solution(B)
    assert S.size == 6
    orbit = sorted({int(v) for v in B.lam[:, 2]})
    assert orbit == [2, 4]
    R = restrict_solution(B, orbit)
    # the socle acts trivially on itself
    assert R.sigma.tolist() == [[0, 1], [0, 1]]
    assert not is_indecomposable(R)[0]


def test_additive_closure():
    B = trivial_brace(FinAbGroup((2, 2)))
    assert additive_closure(B, [1]) == frozenset({0, 1})
    assert len(additive_closure(B, [1, 2])) == 4


def test_brace_isomorphism_detects_nonisomorphic():
    A, T = FinAbGroup((3,)), FinAbGroup((2,))
    B = semidirect_trivial(A, T, [identity_aut(A), scalar_aut(A, 2)])
    assert find_brace_isomorphism(B, trivial_brace(FinAbGroup((6,)))) is None


def test_analyze_brace_report():
    V = FinAbGroup((2, 2))
    t = aut_from_matrix(V, [[0, 1], [1, 1]])
    B = semidirect_trivial(V, FinAbGroup((3,)), [t.power(s) for s in range(3)])
    lines = analyze_brace(B).lines()
    assert 'brace_ok: true' in lines
    assert 'size: 12' in lines
    assert 'socle_size: 4' in lines
    assert 'simple: false' in lines
