"""The ring F_p[x]/(1 + x + ... + x^(n-1)) with its twists and bilinear form.

Elements are coefficient vectors in the basis 1, xi, ..., xi^(n-2), indexed
through the additive group (Z/p)^(n-1).  Multiplication by xi (``c``) and the
substitution xi -> xi^t (``f_t``) are linear, so both are stored as GroupAut
matrices over that additive group.
"""
from __future__ import annotations

import logging
import math
from functools import cached_property, lru_cache

import numpy as np

from .abgroup import FinAbGroup, GroupAut, aut_from_matrix, rank_mod_p
from .errors import ConstructionError, DescriptorError

logger = logging.getLogger('YBSimple')


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


class CycRing:
    """R = F_p[x]/(x^(n-1)+...+x+1), xi the class of x."""

    def __init__(self, p: int, n: int):
        if not is_prime(p):
            raise DescriptorError(f"{p} is not prime")
        if n < 2:
            raise DescriptorError(f"n={n} must be at least 2")
        if n % p == 0:
            raise DescriptorError(f"p={p} divides n={n}")
        self.p = p
        self.n = n
        self.dim = n - 1
        self.group = FinAbGroup((p,) * self.dim)
        self.order = self.group.order
        self.gram = (np.ones((self.dim, self.dim), dtype=np.int64)
                     - np.eye(self.dim, dtype=np.int64)) % p
        self.c = aut_from_matrix(self.group, self._substitution_matrix(lambda i: i + 1))
        self._check_structure()

    def _xi_power_vector(self, k: int) -> np.ndarray:
        k %= self.n
        vec = np.zeros(self.dim, dtype=np.int64)
        if k < self.dim:
            vec[k] = 1
        else:
            vec[:] = self.p - 1
        return vec

    def _substitution_matrix(self, exponent) -> np.ndarray:
        return np.array([self._xi_power_vector(exponent(i)) for i in range(self.dim)]).T

    def coefficients(self, q: int) -> list[int]:
        return list(self.group.element(q))

    def from_coefficients(self, coeffs) -> int:
        return self.group.index(coeffs)

    def label(self, q: int) -> str:
        return '[' + ','.join(map(str, self.coefficients(q))) + ']'

    def xi_power(self, i: int) -> int:
        return self.group.index(self._xi_power_vector(i))

    @property
    def one(self) -> int:
        return self.xi_power(0)

    def add(self, u: int, v: int) -> int:
        return int(self.group.add_table[u, v])

    def mul(self, u: int, v: int) -> int:
        """Cyclic convolution modulo x^n - 1, then xi^(n-1) reduced away."""
        a = self.group.elements[u]
        b = self.group.elements[v]
        full = np.zeros(self.n, dtype=np.int64)
        for i, ai in enumerate(a):
            if ai:
                full[(i + np.arange(self.dim)) % self.n] += ai * b
        top = full[self.dim]
        return self.group.index((full[:self.dim] - top) % self.p)

    @cached_property
    def mul_table(self) -> np.ndarray:
        order = self.order
        table = np.empty((order, order), dtype=np.int64)
        for u in range(order):
            for v in range(u, order):
                table[u, v] = table[v, u] = self.mul(u, v)
        return table

    def twist_c(self, q: int) -> int:
        return int(self.c.perm[q])

    @lru_cache(maxsize=None)
    def twist_f_aut(self, t: int) -> GroupAut:
        if math.gcd(t, self.n) != 1:
            raise DescriptorError(f"t={t} is not a unit mod {self.n}")
        return aut_from_matrix(self.group, self._substitution_matrix(lambda i: t * i))

    def twist_f(self, t: int, q: int) -> int:
        return int(self.twist_f_aut(t).perm[q])

    def form_b(self, u: int, v: int) -> int:
        a = self.group.elements[u]
        b = self.group.elements[v]
        return int(a @ self.gram @ b % self.p)

    @cached_property
    def form_table(self) -> np.ndarray:
        """b(u, v) for all pairs, values in Z/p."""
        e = self.group.elements
        return (e @ self.gram @ e.T) % self.p

    @cached_property
    def form_rank(self) -> int:
        return rank_mod_p(self.gram, self.p)

    @property
    def form_nondegenerate(self) -> bool:
        return self.form_rank == self.dim

    def preserves_form(self, aut: GroupAut) -> bool:
        table = self.form_table
        return bool(np.array_equal(table[aut.perm[:, None], aut.perm[None, :]], table))

    def _check_structure(self):
        if self.c.order != self.n:
            raise ConstructionError('xi_order', (self.c.order,), f"xi has order {self.c.order}, not {self.n}")
        try:
            self.c.minus_identity()
            self.c_minus_id_invertible = True
        except DescriptorError:
            self.c_minus_id_invertible = False

    def require_simple_family_properties(self, t: int):
        """Raise unless b is non-degenerate, c and f_t are b-orthogonal,
        c - id is invertible and f_t c = c^t f_t."""
        f = self.twist_f_aut(t)
        checks = {
            'form_nondegenerate': self.form_nondegenerate,
            'c_orthogonal': self.preserves_form(self.c),
            'f_orthogonal': self.preserves_form(f),
            'c_minus_id_invertible': self.c_minus_id_invertible,
            'fc_equals_ctf': f.compose(self.c) == self.c.power(t).compose(f),
        }
        for name, ok in checks.items():
            logger.check(f"ring F_{self.p}[x]/(1+...+x^{self.n - 1}): {name} = {ok}")
            if not ok:
                raise ConstructionError(name, (self.p, self.n, t))

    def __repr__(self):
        return f"CycRing(p={self.p}, n={self.n})"


def build_ring(p: int, n: int) -> CycRing:
    return CycRing(p, n)
