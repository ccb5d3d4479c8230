"""Generative families: the A^2 solutions, the asymmetric-product model, grids and simple braces."""

import dataclasses

import numpy as np
import pytest

from ybsimple.core.abgroup import FinAbGroup, identity_aut, scalar_aut
from ybsimple.core.brace import is_simple_brace, restrict_solution, socle
from ybsimple.core.constructions import (analyze_newsol, build_asym_model, check_t_map, construct_grid,
                                         construct_newsol, construct_simple_family, count_jfamilies,
                                         decide_simple, enumerate_jfamilies, family_class_key, find_family_t,
                                         make_jfamily, model_perm_brace, orbit_set_c, parse_assignments,
                                         parse_prime_powers, probe_converse, sweep_newsol, v_chain, va_quotient)
from ybsimple.core.errors import CapExceededError, ConstructionError, DescriptorError
from ybsimple.core.ybcore import is_simple_solution, is_solution_homomorphism


def test_parse_assignments(z2, v4):
    assert parse_assignments(z2, '0->0,1->1').tolist() == [0, 1]
    assert parse_assignments(v4, 'id').tolist() == [0, 1, 2, 3]
    values = parse_assignments(v4, '(0,0)->(1,1),(0,1)->(0,1),(1,0)->(1,0),(1,1)->(0,0)')
    assert values.tolist() == [3, 1, 2, 0]
    for text in ('0->0', '0->0,0->1,1->1', 'zero'):
        with pytest.raises(DescriptorError):
            parse_assignments(z2, text)


def test_make_jfamily_rejects_asymmetric():
    A = FinAbGroup((3,))
    with pytest.raises(ConstructionError) as info:
        make_jfamily(A, identity_aut(A), [0, 1, 2])
    assert info.value.predicate == 'jfamily_symmetric'
    assert info.value.witness == (1,)


def test_make_jfamily_rejects_non_equivariant():
    A = FinAbGroup((3,))
    with pytest.raises(ConstructionError) as info:
        make_jfamily(A, scalar_aut(A, 2), [0, 1, 1])
    assert info.value.predicate == 'jfamily_equivariant'
    assert info.value.witness == (1, 1)


def test_make_jfamily_rejects_partial(z2):
    with pytest.raises(DescriptorError):
        make_jfamily(z2, identity_aut(z2), [0])


def test_four_point_analysis(j4, s4):
    assert check_t_map(s4, j4)
    report = analyze_newsol(j4, s4)
    lines = report.lines()
    assert 'W_order: 2' in lines
    assert 'C: {0,1}' in lines
    assert 'V_orders: 1:2' in lines
    assert report.orbit_matches
    assert report.brute_simple and report.v_condition and report.sufficient_ok
    assert report.irretractable == report.criterion_irretractable
    assert 'violations: 0' in lines


def test_sixteen_point_analysis(j16, s16):
    report = analyze_newsol(j16, s16)
    assert report.indecomposable
    assert report.v_condition
    assert report.brute_simple
    assert report.violations == []


@pytest.mark.parametrize('order', [3, 4, 5])
def test_orbit_under_negation_with_constant_family(order):
    # sigma moves the second coordinate by c -> 1 - c, so the orbit of (0,0) is A x {0,1}
    A = FinAbGroup((order,))
    j = make_jfamily(A, scalar_aut(A, order - 1), [1] * order)
    report = analyze_newsol(j)
    assert report.W.order == 1
    assert report.C == [0, 1]
    assert report.orbit_matches
    assert 'orbit' not in report.violations


def test_orbit_with_t_of_order_three_and_shifted_family(v4, j16):
    j = make_jfamily(v4, j16.t, v4.add_table[np.arange(4), 1])
    report = analyze_newsol(j)
    assert report.orbit_matches
    assert report.violations == []


def test_orbit_set_uses_powers_of_t_applied_to_j0():
    A = FinAbGroup((7,))
    t = scalar_aut(A, 2)
    j = make_jfamily(A, t, [3] * 7)
    # forward sums 3, 3+5, 3+5+6 and negated backward sums 0, -6, -(6+5)
    assert orbit_set_c(j, v_chain(j, 1)[-1]) == [0, 1, 3]
    report = analyze_newsol(j)
    assert report.C == [0, 1, 3]
    assert report.orbit_matches


def test_v_chain_and_quotient():
    # j takes two values on Z4, so every V_a stops at {0, 2}
    A = FinAbGroup((4,))
    j = make_jfamily(A, identity_aut(A), [0, 2, 0, 2])
    assert [V.order for V in v_chain(j, 1)] == [2]
    S = construct_newsol(j)
    image, proj = va_quotient(j, 1, S)
    assert image.size == 4
    assert is_solution_homomorphism(S, image, proj)
    report = analyze_newsol(j, S)
    assert not report.v_condition
    assert not report.brute_simple
    assert report.violations == []


def test_asym_model_of_sixteen_points(j16):
    m = build_asym_model(j16)
    assert m.H.order == 16
    assert m.A1.size == 12
    assert m.brace.size == 192
    assert m.radical.order == 2
    assert m.coprime and m.additively_generated
    assert m.solution.size == 16


def test_asym_model_requires_invertible_t_minus_id(j4):
    with pytest.raises(ConstructionError) as info:
        build_asym_model(j4)
    assert info.value.predicate == 't_minus_id_invertible'


def test_asym_model_cap(j16):
    with pytest.raises(CapExceededError) as info:
        build_asym_model(j16, max_size=100)
    assert info.value.what == 'max_brace_size'


def test_model_brace_refuses_non_coprime(j16):
    m = dataclasses.replace(build_asym_model(j16), coprime=False)
    with pytest.raises(ConstructionError) as info:
        model_perm_brace(m)
    assert info.value.predicate == 'coprime_order'


def test_model_brace_matches_permutation_group(j16):
    model = model_perm_brace(build_asym_model(j16))
    assert model.size == 96


def test_model_socle_is_the_form_radical(j16):
    m = build_asym_model(j16)
    assert set(socle(m.brace).members) == {int(f) * m.A1.size for f in m.radical.members}
    assert socle(m.brace).size == m.radical.order == 2


def test_model_points_carry_the_sixteen_point_solution(j16, s16):
    m = build_asym_model(j16)
    assert len(set(m.points.tolist())) == 16
    assert np.array_equal(restrict_solution(m.brace, m.points).sigma, s16.sigma)


def test_grid_three_two_two():
    S = construct_grid(3, 2, 2)
    assert S.size == 12
    assert S.sigma[0, 0] == 5
    assert S.sigma[11, 0] == 10
    assert S.labels[11] == '(2,1,1)'
    assert is_simple_solution(S)[0]


def test_grid_five_two_four():
    S = construct_grid(5, 2, 4)
    assert S.size == 20


def test_grid_rejects_wrong_order():
    with pytest.raises(ConstructionError) as info:
        construct_grid(5, 2, 2)
    assert info.value.predicate == 'grid_t_order'
    with pytest.raises(DescriptorError):
        construct_grid(1, 2, 1)


@pytest.mark.parametrize('p, n, t', [(2, 3, 2), (2, 5, 4), (3, 7, 2)])
def test_find_family_t(p, n, t):
    assert find_family_t(p, n) == t


def test_parse_prime_powers():
    assert parse_prime_powers('3^1,7^2') == [(3, 1), (7, 2)]
    assert parse_prime_powers('5') == [(5, 1)]
    with pytest.raises(DescriptorError):
        parse_prime_powers('3^x')


def test_simple_family_smallest():
    family = construct_simple_family(2, [(3, 1)], check_group_iso=True)
    assert (family.n, family.t) == (3, 2)
    assert family.brace.size == 24
    assert family.points.size == 12
    assert family.solution.size == 12
    assert family.brace.lam[6, 6] == 6
    assert socle(family.brace).size == 1
    assert is_simple_brace(family.brace)
    assert family.group_isomorphism is not None


@pytest.mark.parametrize('p, powers', [(4, [(3, 1)]), (3, [(5, 1)]), (2, [(3, 1), (3, 1)]), (2, [])])
def test_simple_family_rejects_parameters(p, powers):
    with pytest.raises(DescriptorError):
        construct_simple_family(p, powers)


def test_simple_family_cap():
    with pytest.raises(CapExceededError):
        construct_simple_family(2, [(3, 1)], max_size=10)


@pytest.mark.slow
def test_simple_family_with_n_five():
    family = construct_simple_family(2, [(5, 1)])
    assert family.brace.size == 160
    assert family.solution.size == 20


def test_enumerate_and_count_families(z2):
    t = identity_aut(z2)
    assert count_jfamilies(z2, t) == 4
    families = list(enumerate_jfamilies(z2, t))
    assert len(families) == 4
    assert len({f.values.tobytes() for f in families}) == 4
    assert len(list(enumerate_jfamilies(z2, t, limit=3))) == 3


def test_negation_forces_constant_families():
    A = FinAbGroup((3,))
    t = scalar_aut(A, 2)
    assert count_jfamilies(A, t) == 3
    assert all(len(set(j.values.tolist())) == 1 for j in enumerate_jfamilies(A, t))


def test_probe_on_z2(z2):
    report = probe_converse(z2, identity_aut(z2))
    lines = report.lines()
    assert report.families == 4
    assert 'truncated: false' in lines
    assert 'vT_simpleT: 2' in lines
    assert 'necessary_violations: 0' in lines
    assert 'converse_counterexamples: 0' in lines


def test_family_class_key_identifies_relabelled_families(v4, j16):
    t = j16.t
    relabelings = [(t.power(z).perm, t.power(-z).perm) for z in range(3)]
    j = make_jfamily(v4, t, v4.add_table[np.arange(4), 1])
    moved = make_jfamily(v4, t, t.perm[j.values[t.inverse().perm]])
    assert moved.values.tolist() != j.values.tolist()
    assert family_class_key(moved, relabelings) == family_class_key(j, relabelings)
    other = make_jfamily(v4, t, np.zeros(4, dtype=np.int64))
    assert family_class_key(other, relabelings) != family_class_key(j, relabelings)


def test_decide_simple_agrees_with_closure():
    A = FinAbGroup((4,))
    for j in enumerate_jfamilies(A, identity_aut(A)):
        S = construct_newsol(j)
        assert decide_simple(j, S) == is_simple_solution(S)[0]


def test_converse_table_counts_every_family_once(v4, j16):
    report = probe_converse(v4, j16.t)
    assert report.families == report.total_families
    assert sum(report.table.values()) == report.families
    assert report.necessary_violations == []


def test_probe_truncation_and_cap(z2):
    report = probe_converse(z2, identity_aut(z2), max_families=1)
    assert report.truncated
    with pytest.raises(CapExceededError):
        probe_converse(FinAbGroup((5,)), identity_aut(FinAbGroup((5,))), max_order=4)


def test_sweep_small_orders():
    stats = sweep_newsol(3)
    assert stats.instances > 0
    assert stats.violations == []


def test_newsol_values_are_independent_of_input_type(z2):
    t = identity_aut(z2)
    a = make_jfamily(z2, t, {0: 0, 1: 1})
    b = make_jfamily(z2, t, np.array([0, 1]))
    assert np.array_equal(construct_newsol(a).sigma, construct_newsol(b).sigma)
