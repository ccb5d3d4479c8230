"""The ring F_p[x]/(1 + x + ... + x^(n-1))."""

import logging

import pytest

from ybsimple.core.cycring import CycRing, build_ring, is_prime
from ybsimple.core.errors import ConstructionError, DescriptorError
from ybsimple.utils.logger import CHECK


def test_is_prime():
    assert [q for q in range(20) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19]


@pytest.mark.parametrize('p, n', [(4, 3), (2, 1), (3, 6)])
def test_rejects_bad_parameters(p, n):
    with pytest.raises(DescriptorError):
        CycRing(p, n)


def test_xi_powers_cycle():
    R = build_ring(2, 3)
    assert R.order == 4
    assert R.xi_power(0) == R.one
    assert R.xi_power(3) == R.one
    # xi^2 = -(1 + xi)
    assert R.coefficients(R.xi_power(2)) == [1, 1]
    xi = R.xi_power(1)
    assert R.mul(xi, R.xi_power(2)) == R.one
    assert R.c.order == 3


def test_multiplication_table_is_commutative_with_unit():
    R = build_ring(3, 4)
    table = R.mul_table
    assert (table == table.T).all()
    assert (table[R.one] == range(R.order)).all()


def test_twist_is_substitution():
    R = build_ring(2, 5)
    f = R.twist_f_aut(4)
    for i in range(5):
        assert R.twist_f(4, R.xi_power(i)) == R.xi_power(4 * i)
    assert f.compose(R.c) == R.c.power(4).compose(f)
    with pytest.raises(DescriptorError):
        R.twist_f_aut(5)


def test_form_on_powers_of_xi():
    R = build_ring(2, 5)
    for i in range(5):
        for k in range(5):
            assert R.form_b(R.xi_power(i), R.xi_power(k)) == (0 if i == k else 1)


@pytest.mark.parametrize('p, n, t', [(2, 3, 2), (2, 5, 4), (3, 7, 2)])
def test_simple_family_properties_hold(p, n, t):
    R = build_ring(p, n)
    assert R.form_nondegenerate
    assert R.c_minus_id_invertible
    R.require_simple_family_properties(t)


def test_degenerate_form_is_reported():
    # p | n - 2 makes J - I singular
    R = build_ring(3, 5)
    assert not R.form_nondegenerate
    with pytest.raises(ConstructionError) as info:
        R.require_simple_family_properties(4)
    assert info.value.predicate == 'form_nondegenerate'


def test_property_checks_name_the_ring(caplog, monkeypatch):
    monkeypatch.setattr(logging.getLogger('YBSimple'), 'propagate', True)
    with caplog.at_level(CHECK, logger='YBSimple'):
        build_ring(2, 9).require_simple_family_properties(8)
    messages = [r.getMessage() for r in caplog.records if r.levelno == CHECK]
    assert 'ring F_2[x]/(1+...+x^8): form_nondegenerate = True' in messages
    assert not any('Phi' in m for m in messages)
