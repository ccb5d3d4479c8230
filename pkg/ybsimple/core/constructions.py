"""Generative families of solutions and braces, each with its certificates.

* ``construct_newsol``: the solution on A^2 built from (A, t, j).
* ``analyze_newsol``: orbit, retract, V_a chain and simplicity analysis.
* ``build_asym_model`` / ``model_perm_brace``: the asymmetric-product model
  over the finite group of maps A -> Z/(n).
* ``construct_grid``: solutions on Z/(n) x Z/(m) x Z/(m).
* ``construct_simple_family``: simple braces over F_p[x]/(1+...+x^(n-1)).
* ``enumerate_jfamilies`` / ``probe_converse``: exhaustive experiments.
"""
from __future__ import annotations

import itertools
import logging
import math
import re
from dataclasses import dataclass, field

import numpy as np

from .abgroup import (FinAbGroup, GroupAut, Subgroup, automorphisms, conjugacy_representatives,
                      factor_shapes, parse_element, quotient_map, subgroup_from_members,
                      subgroup_generated, subgroup_join)
from .brace import (DEFAULT_MAX_BRACE_SIZE, AsymSpec, FiniteBrace, additive_closure,
                    asymmetric_product, brace_from_solution, find_brace_isomorphism,
                    is_simple_brace, restrict_solution, semidirect_trivial, socle, trivial_brace)
from .cycring import build_ring, is_prime
from .errors import CapExceededError, ConstructionError, DescriptorError, VerificationError
from .ybcore import (DEFAULT_ISO_MAX_NODES, DEFAULT_MAX_PERM_GROUP, Congruence, Solution,
                     find_solution_isomorphism, is_indecomposable, is_irretractable,
                     is_simple_solution, make_solution, orbit, quotient_solution, retract)

logger = logging.getLogger('YBSimple')

_ASSIGN_RE = re.compile(r'(\([^)]*\)|-?\d+)\s*->\s*(\([^)]*\)|-?\d+)')


@dataclass(frozen=True, eq=False)
class JFamily:
    """The family a -> j_a, stored as ``values[a]`` (element indices)."""

    group: FinAbGroup
    t: GroupAut
    values: np.ndarray

    @property
    def j0(self) -> int:
        return int(self.values[0])

    def describe(self) -> str:
        A = self.group
        return ','.join(f"{A.label(a)}->{A.label(int(v))}" for a, v in enumerate(self.values))


def parse_assignments(A: FinAbGroup, text: str) -> np.ndarray:
    """Parse ``a->j_a`` pairs (``0->0,1->1`` or ``(0,1)->(1,1),...``).

    ``id`` stands for j_a = a.
    """
    if text.strip() == 'id':
        return np.arange(A.order, dtype=np.int64)
    values = np.full(A.order, -1, dtype=np.int64)
    pairs = _ASSIGN_RE.findall(text)
    if not pairs:
        raise DescriptorError(f"malformed family {text!r}")
    for key, value in pairs:
        a = parse_element(A, key)
        if values[a] >= 0:
            raise DescriptorError(f"element {key} assigned twice")
        values[a] = parse_element(A, value)
    if (values < 0).any():
        missing = A.label(int(np.flatnonzero(values < 0)[0]))
        raise DescriptorError(f"family is not total: {missing} has no value")
    return values


def make_jfamily(A: FinAbGroup, t: GroupAut, assignments) -> JFamily:
    """Validate symmetry j_a = j_{-a} and t-equivariance relative to j_0.

    Raises:
        ConstructionError: ``jfamily_symmetric`` (witness a) or
            ``jfamily_equivariant`` (witness a, s).
    """
    if isinstance(assignments, dict):
        values = np.array([assignments[a] for a in range(A.order)], dtype=np.int64)
    else:
        values = np.asarray(assignments, dtype=np.int64)
    if values.shape != (A.order,):
        raise DescriptorError(f"family must assign all {A.order} elements")
    bad = np.flatnonzero(values != values[A.neg])
    if bad.size:
        raise ConstructionError('jfamily_symmetric', (int(bad[0]),))
    shifted = A.add_table[values, A.neg[values[0]]]
    for s in range(t.order):
        ts = t.power(s).perm
        # j_{t^s(a)} - j_0 = t^s(j_a - j_0)
        bad = np.flatnonzero(shifted[ts] != ts[shifted])
        if bad.size:
            raise ConstructionError('jfamily_equivariant', (int(bad[0]), s))
    return JFamily(A, t, values)


def _pair_labels(A: FinAbGroup) -> list[str]:
    return [f"({A.label(a)},{A.label(c)})" for a in range(A.order) for c in range(A.order)]


def construct_newsol(j: JFamily) -> Solution:
    """sigma_{(a1,a2)}(c1,c2) = (t(c1) + a2, t(c2 - j_{t(c1)+a2-a1})), on index a1*|A| + a2."""
    A, t = j.group, j.t
    n = A.order
    idx = np.arange(n * n)
    a1, a2 = (idx // n)[:, None], (idx % n)[:, None]
    c1, c2 = (idx // n)[None, :], (idx % n)[None, :]
    add, neg, tp = A.add_table, A.neg, t.perm
    first = add[tp[c1], a2]
    second = tp[add[c2, neg[j.values[add[first, neg[a1]]]]]]
    S = make_solution(first * n + second, _pair_labels(A))

    # sigma^{-1}_{(a1,a2)}(c1,c2) = (t^{-1}(c1 - a2), t^{-1}(c2) + j_{c1-a1})
    ti = t.inverse().perm
    inverse = ti[add[c1, neg[a2]]] * n + add[ti[c2], j.values[add[c1, neg[a1]]]]
    if not np.array_equal(inverse, S.sigma_inv):
        x, y = np.argwhere(inverse != S.sigma_inv)[0]
        raise ConstructionError('inverse_formula', (int(x), int(y)))
    if not check_t_map(S, j):
        raise ConstructionError('t_map')
    logger.info(f"construct newsol over {A.descriptor()}: {S.size} points")
    return S


def check_t_map(S: Solution, j: JFamily) -> bool:
    """T(a1,a2) = sigma^{-1}_{(a1,a2)}(a1,a2) is a bijection with inverse
    (a1,a2) -> (t(a1+a2-j_0), t(a2-j_0))."""
    A, tp = j.group, j.t.perm
    n = A.order
    diag = S.sigma_inv[np.arange(S.size), np.arange(S.size)]
    a1, a2 = diag // n, diag % n
    back = tp[A.add_table[A.add_table[a1, a2], A.neg[j.j0]]] * n + tp[A.add_table[a2, A.neg[j.j0]]]
    return bool(np.array_equal(back, np.arange(S.size)))


def _coset_union(A: FinAbGroup, W: Subgroup, shifts) -> list[int]:
    members = np.array(W.sorted(), dtype=np.int64)
    result = set()
    for s in shifts:
        result.update(A.add_table[members, s].tolist())
    return sorted(result)


def _partial_sums(A: FinAbGroup, step: GroupAut, base: int, start: int, include_empty: bool) -> set[int]:
    """Values of start, start + step(base), start + step(base) + step^2(base), ...
    over one eventual period (state = exponent mod order, value)."""
    values = set()
    seen = set()
    value = start
    k = 0
    if include_empty:
        values.add(0)
    while (k % step.order, value) not in seen:
        seen.add((k % step.order, value))
        values.add(value)
        k += 1
        value = A.add(value, int(step.power(k).perm[base]))
    return values


def orbit_set_c(j: JFamily, W: Subgroup) -> list[int]:
    """Union of the W-cosets through j_0 + t^{-1}j_0 + ... + t^{-n}j_0 and
    through -(t j_0 + ... + t^n j_0), n >= 0."""
    A, t = j.group, j.t
    forward = _partial_sums(A, t.inverse(), j.j0, j.j0, include_empty=False)
    t_j0 = int(t.perm[j.j0])
    t_sums = _partial_sums(A, t, t_j0, t_j0, include_empty=True)
    backward = {int(A.neg[v]) for v in t_sums}
    return _coset_union(A, W, forward | backward)


def _difference_subgroup(A: FinAbGroup, j: np.ndarray, steps) -> Subgroup:
    steps = np.asarray(sorted(steps), dtype=np.int64)
    diffs = A.add_table[j[:, None], A.neg[j[A.add_table[:, steps]]]]
    return subgroup_generated(A, np.unique(diffs).tolist())


def v_chain(j: JFamily, a: int) -> list[Subgroup]:
    """V_{a,1} = <j_c - j_{c + t^z a}>, V_{a,i+1} = V_{a,i} + <j_c - j_{c+v} : v in V_{a,i}>,
    up to the first repeat."""
    A, t = j.group, j.t
    orbit_a = {int(t.power(z).perm[a]) for z in range(t.order)}
    chain = [_difference_subgroup(A, j.values, orbit_a)]
    while True:
        current = chain[-1]
        extra = _difference_subgroup(A, j.values, current.members)
        nxt = subgroup_join(current, extra)
        if nxt.members == current.members:
            return chain
        chain.append(nxt)


def va_quotient(j: JFamily, a: int, S: Solution | None = None) -> tuple[Solution, np.ndarray]:
    """The epimorphic image on (A/V_a)^2 given by coset projection in both coordinates."""
    A = j.group
    V = v_chain(j, a)[-1]
    Q, pi = quotient_map(A, V)
    if S is None:
        S = construct_newsol(j)
    n = A.order
    labels = pi[np.arange(n * n) // n] * Q.order + pi[np.arange(n * n) % n]
    image, proj = quotient_solution(S, Congruence.from_labels(labels))
    logger.debug(f"V_a quotient for a={A.label(a)}: {S.size} -> {image.size} points")
    return image, proj


@dataclass
class NewsolReport:
    group: FinAbGroup
    W: Subgroup
    C: list[int]
    orbit_matches: bool
    indecomposable: bool
    criterion_irretractable: bool
    irretractable: bool
    V: dict[int, Subgroup]
    v_condition: bool
    necessary_ok: bool
    sufficient_ok: bool
    brute_simple: bool
    t_order: int
    violations: list[str] = field(default_factory=list)

    def lines(self) -> list[str]:
        def fmt(v):
            return 'true' if v else 'false'
        A = self.group
        return [
            f"W_order: {self.W.order}",
            f"C: {{{','.join(A.label(c) for c in self.C)}}}",
            f"orbit_matches: {fmt(self.orbit_matches)}",
            f"indecomposable: {fmt(self.indecomposable)}",
            f"irretractable: {fmt(self.irretractable)}",
            f"criterion_irretractable: {fmt(self.criterion_irretractable)}",
            "V_orders: " + ','.join(f"{A.label(a)}:{V.order}" for a, V in sorted(self.V.items())),
            f"v_condition: {fmt(self.v_condition)}",
            f"necessary_ok: {fmt(self.necessary_ok)}",
            f"sufficient_ok: {fmt(self.sufficient_ok)}",
            f"brute_simple: {fmt(self.brute_simple)}",
            f"violations: {len(self.violations)}",
        ]


def analyze_newsol(j: JFamily, S: Solution | None = None) -> NewsolReport:
    """Orbit, irretractability, V_a and simplicity analysis of the A^2 solution.

    Disagreements between a criterion and brute force are collected in
    ``violations`` and logged, never silently dropped.
    """
    A, t = j.group, j.t
    if S is None:
        S = construct_newsol(j)
    n = A.order
    W = _difference_subgroup(A, j.values, range(n))
    C = orbit_set_c(j, W)
    predicted = sorted(a * n + c for a in range(n) for c in C)
    observed = sorted(orbit(S, 0))
    orbit_matches = predicted == observed
    indecomposable, _ = is_indecomposable(S)

    # nonzero a with j_{a+c} = j_c for every c would make sigma rows collide
    separates = (j.values[A.add_table] != j.values[None, :]).any(axis=1)
    criterion = bool(separates[1:].all())
    irretractable = is_irretractable(S)

    V = {a: v_chain(j, a)[-1] for a in range(1, n)}
    v_condition = all(Va.is_whole() for Va in V.values())
    sufficient = v_condition and (n % 2 == 1 or t.order % 2 == 1)
    simple, _ = is_simple_solution(S)

    violations = []
    if not orbit_matches:
        violations.append('orbit')
    if criterion != irretractable:
        violations.append('irretractable_criterion')
    if simple and not v_condition:
        violations.append('necessary_condition')
    if sufficient and not simple:
        violations.append('sufficient_condition')
    for name in violations:
        logger.error(f"verify newsol {j.describe()}: {name} violated")

    logger.check(f"analyze newsol over {A.descriptor()}: simple={simple}, v_condition={v_condition}")
    return NewsolReport(
        group=A, W=W, C=C, orbit_matches=orbit_matches, indecomposable=indecomposable,
        criterion_irretractable=criterion, irretractable=irretractable, V=V,
        v_condition=v_condition, necessary_ok=v_condition, sufficient_ok=sufficient,
        brute_simple=simple, t_order=t.order, violations=violations,
    )


@dataclass(eq=False)
class AsymModel:
    """B' = H' x_o A1 with its point set X' and the radical H_1 of b'."""

    jfamily: JFamily
    exponent: int
    H: FinAbGroup
    A1: FiniteBrace
    t_group: FinAbGroup
    alpha: np.ndarray
    form: np.ndarray
    brace: FiniteBrace
    points: np.ndarray
    solution: Solution
    radical: Subgroup
    additively_generated: bool
    coprime: bool

    @property
    def H1(self) -> Subgroup:
        return self.radical


def _cyclic(order: int) -> FinAbGroup:
    return FinAbGroup((order,)) if order > 1 else FinAbGroup(())


def build_asym_model(j: JFamily, max_size: int = DEFAULT_MAX_BRACE_SIZE) -> AsymModel:
    """Materialize B' over H' = {f: A -> Z/(n)} and the points
    x'_{(a,c)} = (e_a, (c - t(t - id)^{-1}(j_0), t)).

    Raises:
        ConstructionError: t - id is not invertible, or a certificate fails.
        CapExceededError: |H'| * |A1| exceeds ``max_size``.
    """
    A, t = j.group, j.t
    if A.order < 2:
        raise DescriptorError("the model needs a non-trivial group")
    try:
        s = t.minus_identity()
    except DescriptorError:
        raise ConstructionError('t_minus_id_invertible', (), "t - id is not an automorphism")
    n = A.exponent
    o = t.order
    H = FinAbGroup((n,) * A.order)
    size = H.order * A.order * o
    if size > max_size:
        raise CapExceededError('max_brace_size', max_size, size)

    T = _cyclic(o)
    A1 = semidirect_trivial(A, T, [t.power(z) for z in range(T.order)], max_size)

    # g_{(a,t^z)}(x) = t^{-z}(x - a - (t-id)^{-2}(t^{z+1} - t)(j_0))
    s_inv2 = s.inverse().power(2).perm
    add, neg = A.add_table, A.neg
    t_j0 = int(t.perm[j.j0])
    alpha = np.empty((A1.size, H.order), dtype=np.int64)
    E = H.elements
    for a in range(A.order):
        for z in range(T.order):
            k = int(s_inv2[add[int(t.power(z + 1).perm[j.j0]), neg[t_j0]]])
            g = t.power(-z).perm[add[add[np.arange(A.order), neg[a]], neg[k]]]
            alpha[a * T.order + z] = H.encode(E[:, g])

    # b'(f, h) = (sum f(x) h(y) t(j_{x-y} - j_0), id)
    diff = t.perm[add[j.values[add[np.arange(A.order)[:, None], neg[None, :]]], neg[j.j0]]]
    U = A.elements[diff]
    residues = np.stack([(E @ U[:, :, k] @ E.T) for k in range(A.rank)], axis=-1)
    form = A.encode(residues) * T.order

    left = trivial_brace(H)
    B = asymmetric_product(AsymSpec(left, A1, alpha, form), max_size)

    # x'_{(a,c)} in index order a*|A| + c
    shift = int(s.inverse().perm[j.j0])
    k0 = int(t.perm[shift])
    points = np.array([
        H.index(np.eye(A.order, dtype=np.int64)[a]) * A1.size + add[c, neg[k0]] * T.order + (1 % T.order)
        for a in range(A.order) for c in range(A.order)
    ], dtype=np.int64)
    restricted = restrict_solution(B, points)

    S = construct_newsol(j)
    if not np.array_equal(restricted.sigma, S.sigma):
        x, y = np.argwhere(restricted.sigma != S.sigma)[0]
        raise ConstructionError('point_map_isomorphism', (int(x), int(y)))

    radical_members = np.flatnonzero((form == 0).all(axis=1))
    radical = subgroup_from_members(H, radical_members.tolist())
    expected_socle = {int(f) * A1.size for f in radical_members}
    if set(socle(B).members) != expected_socle:
        raise ConstructionError('socle_is_radical')

    coprime = math.gcd(o, n) == 1
    generated = additive_closure(B, points.tolist())
    additively_generated = len(generated) == B.size
    if coprime and not additively_generated:
        raise ConstructionError('points_generate', (len(generated), B.size))
    logger.info(f"construct asymmetric model: |H'|={H.order}, |A1|={A1.size}, |B'|={B.size}, |H1|={radical.order}")
    return AsymModel(
        jfamily=j, exponent=n, H=H, A1=A1, t_group=T, alpha=alpha, form=form, brace=B,
        points=points, solution=restricted, radical=radical,
        additively_generated=additively_generated, coprime=coprime,
    )


def model_perm_brace(m: AsymModel, max_perm_group: int = DEFAULT_MAX_PERM_GROUP,
                     max_nodes: int = DEFAULT_ISO_MAX_NODES) -> FiniteBrace:
    """H'/H_1 x_o A1, certified isomorphic to the brace of the permutation group."""
    if not m.coprime:
        raise ConstructionError('coprime_order', (m.jfamily.t.order, m.exponent),
                                "order of t and exponent of A must be coprime")
    Q, proj = quotient_map(m.H, m.radical)
    reps = np.array([int(np.flatnonzero(proj == q)[0]) for q in range(Q.order)], dtype=np.int64)

    qform = m.form[reps[:, None], reps[None, :]]
    if not np.array_equal(m.form, qform[proj[:, None], proj[None, :]]):
        raise ConstructionError('quotient_form_well_defined')
    qalpha = proj[m.alpha[:, reps]]
    if not np.array_equal(proj[m.alpha], qalpha[:, proj]):
        raise ConstructionError('quotient_action_well_defined')

    model = asymmetric_product(AsymSpec(trivial_brace(Q), m.A1, qalpha, qform))
    expected = Q.order * m.A1.size
    if model.size != expected:
        raise ConstructionError('model_order', (model.size, expected))

    G, _ = brace_from_solution(construct_newsol(m.jfamily), max_perm_group)
    if G.size != model.size:
        raise ConstructionError('perm_group_order', (G.size, model.size))
    if find_brace_isomorphism(model, G, max_nodes) is None:
        raise ConstructionError('perm_group_isomorphism', (model.size,))
    logger.info(f"iso model H'/H1 x A1 of order {model.size} matches the permutation group brace")
    return model


def _grid_labels(n: int, m: int) -> list[str]:
    return [f"({i},{a},{mu})" for i in range(n) for a in range(m) for mu in range(m)]


def construct_grid(n: int, m: int, t: int) -> Solution:
    """sigma_{(i,a,mu)}(j,c,nu) = (t^mu j + t^a, c + mu, nu + 1 - [i = t^mu j + t^a]),
    on index (i*m + a)*m + mu."""
    if n < 2 or m < 2:
        raise DescriptorError("grid needs n, m > 1")
    powers = [pow(t, k, n) for k in range(m + 1)]
    if math.gcd(t, n) != 1 or powers[m] != 1 or any(powers[k] == 1 for k in range(1, m)):
        raise ConstructionError('grid_t_order', (t, n, m), f"t={t} does not have order {m} mod {n}")
    tp = np.array(powers[:m], dtype=np.int64)
    t_inv = pow(t, -1, n)
    tip = np.array([pow(t_inv, k, n) for k in range(m)], dtype=np.int64)
    size = n * m * m
    idx = np.arange(size)
    i, a, mu = idx // (m * m), (idx // m) % m, idx % m
    I, Aa, Mu = i[:, None], a[:, None], mu[:, None]
    J, Cc, Nu = i[None, :], a[None, :], mu[None, :]
    first = (tp[Mu] * J + tp[Aa]) % n
    third = (Nu + 1 - (I == first)) % m
    S = make_solution((first * m + (Cc + Mu) % m) * m + third, _grid_labels(n, m))

    # inverse: (t^{-mu}(j - t^a), c - mu, nu - 1 + [i = j])
    inv_first = (tip[Mu] * (J - tp[Aa])) % n
    inv_third = (Nu - 1 + (I == J)) % m
    inverse = (inv_first * m + (Cc - Mu) % m) * m + inv_third
    if not np.array_equal(inverse, S.sigma_inv):
        x, y = np.argwhere(inverse != S.sigma_inv)[0]
        raise ConstructionError('grid_inverse_formula', (int(x), int(y)))
    if not is_indecomposable(S)[0]:
        raise ConstructionError('grid_indecomposable', (n, m, t))
    if not is_irretractable(S):
        raise ConstructionError('grid_irretractable', (n, m, t))
    logger.info(f"construct grid ({n},{m},{t}): {size} points")
    return S


def find_family_t(p: int, n: int) -> int:
    """Smallest t in [2, n) with t^p = 1 mod n, t != 1 and t - 1 a unit mod n."""
    for t in range(2, n):
        if pow(t, p, n) == 1 and math.gcd(t - 1, n) == 1:
            return t
    raise ConstructionError('no_t', (p, n), f"no unit of order {p} mod {n} with t - 1 a unit")


@dataclass(eq=False)
class SimpleFamily:
    p: int
    n: int
    t: int
    ring: object
    T: FiniteBrace
    brace: FiniteBrace
    points: np.ndarray
    solution: Solution
    grid: Solution
    point_map_is_identity: bool
    group_isomorphism: np.ndarray | None = None


def construct_simple_family(p: int, prime_powers: list[tuple[int, int]],
                            max_size: int = DEFAULT_MAX_BRACE_SIZE,
                            check_group_iso: bool = False,
                            max_perm_group: int = DEFAULT_MAX_PERM_GROUP,
                            max_nodes: int = DEFAULT_ISO_MAX_NODES) -> SimpleFamily:
    """The simple brace B = (R x| Z/(n)) x_o Z/(p) and its simple solution on n*p^2 points.

    Raises:
        DescriptorError: parameters violate the family's preconditions.
        ConstructionError: any certificate fails.
    """
    if not is_prime(p):
        raise DescriptorError(f"{p} is not prime")
    primes = [q for q, _ in prime_powers]
    if not prime_powers or len(set(primes)) != len(primes):
        raise DescriptorError("primes must be distinct and non-empty")
    for q, e in prime_powers:
        if not is_prime(q) or q == p or e < 1 or (q - 1) % p:
            raise DescriptorError(f"{q}^{e} is not a valid factor for p={p}")
    n = math.prod(q ** e for q, e in prime_powers)
    t = find_family_t(p, n)

    R = build_ring(p, n)
    size = R.order * n * p
    if size > max_size:
        raise CapExceededError('max_brace_size', max_size, size)
    R.require_simple_family_properties(t)

    Zn, Zp = FinAbGroup((n,)), FinAbGroup((p,))
    T = semidirect_trivial(R.group, Zn, [R.c.power(a) for a in range(n)], max_size)
    f = R.twist_f_aut(t)

    # alpha_mu(u, a) = (f^mu u, t^mu a) on index u*n + a
    u_of, a_of = np.arange(T.size) // n, np.arange(T.size) % n
    alpha = np.array([
        f.power(mu).perm[u_of] * n + (pow(t, mu, n) * a_of) % n for mu in range(p)
    ], dtype=np.int64)
    # b((u,a),(v,a')) = b(u,v)
    form = R.form_table[u_of[:, None], u_of[None, :]]
    B = asymmetric_product(AsymSpec(T, trivial_brace(Zp), alpha, form), max_size)
    _check_family_lambda(B, R, n, p, t)

    # g(i, a, mu) = (xi^i, t^a, mu), listed in grid index order
    points = np.array([
        (R.xi_power(i) * n + pow(t, a, n)) * p + mu
        for i in range(n) for a in range(p) for mu in range(p)
    ], dtype=np.int64)
    restricted = restrict_solution(B, points)
    grid = construct_grid(n, p, t)
    identity_ok = bool(np.array_equal(restricted.sigma, grid.sigma))
    if not identity_ok:
        logger.warning(f"iso: point map g is not a solution map for p={p}, n={n}; searching")
        if find_solution_isomorphism(restricted, grid, max_nodes) is None:
            raise ConstructionError('orbit_isomorphism', (p, n))

    if socle(B).size != 1:
        raise ConstructionError('socle_trivial', (socle(B).size,))
    if not is_simple_brace(B):
        raise ConstructionError('brace_simple', (p, n))
    if not is_simple_solution(grid)[0]:
        raise ConstructionError('solution_simple', (p, n))

    family = SimpleFamily(p=p, n=n, t=t, ring=R, T=T, brace=B, points=points,
                          solution=grid, grid=grid, point_map_is_identity=identity_ok)
    if check_group_iso:
        G, _ = brace_from_solution(grid, max_perm_group, max_size)
        family.group_isomorphism = find_brace_isomorphism(G, B, max_nodes)
        if family.group_isomorphism is None:
            raise ConstructionError('group_isomorphism', (p, n))
    logger.info(f"construct simple family p={p}, n={n}, t={t}: |B|={B.size}, |X'|={points.size}")
    return family


def _check_family_lambda(B: FiniteBrace, R, n: int, p: int, t: int):
    """lambda_{(u,a,mu)}(v,a',mu') = (c^a f^mu v, t^mu a', mu' - b(u, c^a f^mu v))."""
    idx = np.arange(B.size)
    u, a, mu = idx // (n * p), (idx // p) % n, idx % p
    f = R.twist_f_aut(t)
    c_pows = np.array([R.c.power(k).perm for k in range(n)])
    f_pows = np.array([f.power(k).perm for k in range(p)])
    t_pows = np.array([pow(t, k, n) for k in range(p)])
    moved = c_pows[a[:, None], f_pows[mu[:, None], u[None, :]]]
    third = (mu[None, :] - R.form_table[u[:, None], moved]) % p
    expected = (moved * n + (t_pows[mu[:, None]] * a[None, :]) % n) * p + third
    if not np.array_equal(expected, B.lam):
        x, y = np.argwhere(expected != B.lam)[0]
        raise ConstructionError('family_lambda_formula', (int(x), int(y)))


def parse_prime_powers(text: str) -> list[tuple[int, int]]:
    """Parse ``3^1,7^2`` (a bare ``3`` means exponent 1)."""
    result = []
    for part in text.split(','):
        part = part.strip()
        m = re.fullmatch(r'(\d+)(?:\^(\d+))?', part)
        if not m:
            raise DescriptorError(f"malformed prime power {part!r}")
        result.append((int(m.group(1)), int(m.group(2) or 1)))
    return result


def _orbits_under_t_and_negation(A: FinAbGroup, t: GroupAut) -> list[int]:
    seen = np.zeros(A.order, dtype=bool)
    seen[0] = True
    reps = []
    for a in range(A.order):
        if seen[a]:
            continue
        reps.append(a)
        stack = [a]
        seen[a] = True
        while stack:
            x = stack.pop()
            for y in (int(t.perm[x]), int(A.neg[x])):
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
    return reps


def _propagate(A: FinAbGroup, t: GroupAut, rep: int, d: int) -> dict[int, int] | None:
    """Extend d_rep along x -> t(x) and x -> -x with d_{t x} = t(d_x), d_{-x} = d_x."""
    values = {rep: d}
    stack = [rep]
    while stack:
        x = stack.pop()
        for y, dy in ((int(t.perm[x]), int(t.perm[values[x]])), (int(A.neg[x]), values[x])):
            if y in values:
                if values[y] != dy:
                    return None
            else:
                values[y] = dy
                stack.append(y)
    return values


def enumerate_jfamilies(A: FinAbGroup, t: GroupAut, limit: int | None = None):
    """Yield every valid family (lexicographic in j_0 then orbit choices), up to ``limit``."""
    reps = _orbits_under_t_and_negation(A, t)
    choices = []
    for rep in reps:
        options = [vals for d in range(A.order) if (vals := _propagate(A, t, rep, d)) is not None]
        choices.append(options)
    count = 0
    for j0 in range(A.order):
        for combo in itertools.product(*choices):
            if limit is not None and count >= limit:
                return
            d = np.zeros(A.order, dtype=np.int64)
            for vals in combo:
                for x, v in vals.items():
                    d[x] = v
            yield make_jfamily(A, t, A.add_table[d, j0])
            count += 1


def count_jfamilies(A: FinAbGroup, t: GroupAut) -> int:
    reps = _orbits_under_t_and_negation(A, t)
    total = A.order
    for rep in reps:
        total *= sum(1 for d in range(A.order) if _propagate(A, t, rep, d) is not None)
    return total


@dataclass
class ProbeReport:
    group: FinAbGroup
    t: GroupAut
    families: int
    total_families: int
    truncated: bool
    table: dict[tuple[bool, bool], int]
    necessary_violations: list[str]
    counterexamples: list[str]

    def lines(self) -> list[str]:
        def key(v, s):
            return f"v{'T' if v else 'F'}_simple{'T' if s else 'F'}"
        return [
            f"group: {self.group.descriptor()}",
            f"t: {self.t.to_list()}",
            f"families: {self.families}",
            f"truncated: {'true' if self.truncated else 'false'}",
        ] + [f"{key(v, s)}: {self.table.get((v, s), 0)}" for v in (True, False) for s in (True, False)] + [
            f"necessary_violations: {len(self.necessary_violations)}",
            f"converse_counterexamples: {len(self.counterexamples)}",
        ] + [f"counterexample: {c}" for c in self.counterexamples]


def family_class_key(j: JFamily, relabelings: list[tuple[np.ndarray, np.ndarray]]) -> tuple[int, ...]:
    """Least relabelled family phi . j . phi^{-1} over automorphisms commuting with t.

    (c1, c2) -> (phi c1, phi c2) is an isomorphism between the two solutions,
    so families with equal keys have isomorphic solutions and equal V_a orders.
    """
    return min(tuple(perm[j.values[inv]].tolist()) for perm, inv in relabelings)


def decide_simple(j: JFamily, S: Solution, V: dict[int, Subgroup] | None = None) -> bool:
    """Simplicity of the A^2 solution, trying cheap proper quotients first.

    A V_a quotient or a retract with 1 < size < |S| is a verified proper
    epimorphic image; otherwise every pair orbit is closed.
    """
    if V is None:
        V = {a: v_chain(j, a)[-1] for a in range(1, j.group.order)}
    for a, Va in V.items():
        if Va.is_whole() or Va.order == 1:
            continue
        try:
            image, _ = va_quotient(j, a, S)
        except VerificationError as e:
            logger.error(f"verify V_a quotient for a={j.group.label(a)}: {e}")
            break
        if 1 < image.size < S.size:
            logger.trace(f"simple: false via V_a quotient onto {image.size} points")
            return False
        break
    if not is_irretractable(S):
        R, _ = retract(S)
        if 1 < R.size < S.size:
            logger.trace(f"simple: false via retract onto {R.size} points")
            return False
    return is_simple_solution(S)[0]


def probe_converse(A: FinAbGroup, t: GroupAut, max_order: int = 9,
                   max_families: int | None = None) -> ProbeReport:
    """Contingency table of (V_a = A for all a != 0) against brute-force simplicity.

    A family with the V condition that is not simple would answer the open
    converse negatively; it is reported, never raised.
    """
    if A.order > max_order:
        raise CapExceededError('probe_max_order', max_order, A.order)
    total = count_jfamilies(A, t)
    table: dict[tuple[bool, bool], int] = {}
    necessary, counterexamples = [], []
    families = 0
    relabelings = [(phi.perm, phi.inverse().perm) for phi in automorphisms(A)
                   if phi.compose(t) == t.compose(phi)]
    cache: dict[tuple[int, ...], tuple[bool, bool]] = {}
    for j in enumerate_jfamilies(A, t, max_families):
        families += 1
        key = family_class_key(j, relabelings)
        cell = cache.get(key)
        if cell is None:
            S = construct_newsol(j)
            V = {a: v_chain(j, a)[-1] for a in range(1, A.order)}
            v_condition = all(Va.is_whole() for Va in V.values())
            cell = cache[key] = (v_condition, decide_simple(j, S, V))
        table[cell] = table.get(cell, 0) + 1
        v_condition, simple = cell
        if simple and not v_condition:
            necessary.append(j.describe())
        if v_condition and not simple:
            counterexamples.append(j.describe())
    truncated = families < total
    if truncated:
        logger.warning(f"probe cap: {A.descriptor()} t={t.to_list()} stopped at {families} of {total} families")
    logger.info(f"probe {A.descriptor()} t={t.to_list()}: {families} families in {len(cache)} classes, "
                f"table {table}")
    return ProbeReport(A, t, families, total, truncated, table, necessary, counterexamples)


def probe_all(max_order: int, max_families: int | None = None,
              conjugacy_reduce: bool = True) -> list[ProbeReport]:
    """probe_converse over every group of order 2..max_order and every t
    (one per conjugacy class when ``conjugacy_reduce``)."""
    reports = []
    for order in range(2, max_order + 1):
        for shape in factor_shapes(order):
            A = FinAbGroup(shape)
            auts = automorphisms(A)
            for t in (conjugacy_representatives(auts) if conjugacy_reduce else auts):
                reports.append(probe_converse(A, t, max_order, max_families))
    return reports


@dataclass
class SweepStats:
    instances: int = 0
    simple: int = 0
    violations: list[str] = field(default_factory=list)


def sweep_newsol(max_order: int, min_order: int = 2) -> SweepStats:
    """Construct and analyze every valid family over every group and automorphism."""
    stats = SweepStats()
    for order in range(min_order, max_order + 1):
        for shape in factor_shapes(order):
            A = FinAbGroup(shape)
            for t in automorphisms(A):
                for j in enumerate_jfamilies(A, t):
                    S = construct_newsol(j)
                    report = analyze_newsol(j, S)
                    stats.instances += 1
                    stats.simple += int(report.brute_simple)
                    stats.violations.extend(f"{A.descriptor()} {t.to_list()} {j.describe()}: {v}"
                                            for v in report.violations)
    logger.info(f"verify sweep up to order {max_order}: {stats.instances} instances, "
                f"{stats.simple} simple, {len(stats.violations)} violations")
    return stats
