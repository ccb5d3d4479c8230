"""Finite left braces as explicit addition and multiplication tables."""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .abgroup import FinAbGroup, GroupAut
from .errors import BraceError, CapExceededError, VerificationError
from .ybcore import (DEFAULT_ISO_MAX_NODES, DEFAULT_MAX_PERM_GROUP, Solution, invert_rows,
                     make_solution, permutation_group)

logger = logging.getLogger('YBSimple')

DEFAULT_MAX_BRACE_SIZE = 4096
DEFAULT_IDEAL_COUNT_MAX_SIZE = 256


def _element_orders(table: np.ndarray, identity: int) -> np.ndarray:
    M = table.shape[0]
    orders = np.zeros(M, dtype=np.int64)
    current = np.arange(M)
    k = 1
    while (orders == 0).any():
        hit = (current == identity) & (orders == 0)
        orders[hit] = k
        current = table[current, np.arange(M)]
        k += 1
    return orders


class FiniteBrace:
    """A validated left brace; build it with :func:`make_brace`.

    ``lam[a, b]`` is lambda_a(b) = -a + a o b.
    """

    def __init__(self, add: np.ndarray, mul: np.ndarray, zero: int, labels: Sequence[str]):
        self.add = add
        self.mul = mul
        self.size = add.shape[0]
        self.zero = zero
        self.labels = list(labels)
        self.neg = np.argmax(add == zero, axis=1)
        self.inv = np.argmax(mul == zero, axis=1)
        self.lam = add[self.neg[:, None], mul]

    @cached_property
    def lam_inv(self) -> np.ndarray:
        return invert_rows(self.lam)

    @cached_property
    def additive_orders(self) -> np.ndarray:
        return _element_orders(self.add, self.zero)

    @cached_property
    def multiplicative_orders(self) -> np.ndarray:
        return _element_orders(self.mul, self.zero)

    def is_trivial(self) -> bool:
        return bool(np.array_equal(self.add, self.mul))

    def __repr__(self):
        return f"FiniteBrace(size={self.size})"


def _latin_rows(table: np.ndarray, what: str):
    M = table.shape[0]
    for a in range(M):
        if np.bincount(table[a], minlength=M).max() != 1:
            raise BraceError(f'{what}_cancellation', (a,), f"{what} row {a} is not a permutation")
        if np.bincount(table[:, a], minlength=M).max() != 1:
            raise BraceError(f'{what}_cancellation', (a,), f"{what} column {a} is not a permutation")


def _identity_of(table: np.ndarray, what: str) -> int:
    M = table.shape[0]
    ident = np.arange(M)
    for e in range(M):
        if np.array_equal(table[e], ident) and np.array_equal(table[:, e], ident):
            return e
    raise BraceError(f'{what}_identity', (), f"no two-sided {what} identity")


def _check_associative(table: np.ndarray, what: str):
    for a in range(table.shape[0]):
        # (a*b)*c vs a*(b*c) for all b, c
        bad = table[table[a]] != table[a][table]
        if bad.any():
            b, c = np.argwhere(bad)[0]
            raise BraceError(f'{what}_associative', (a, int(b), int(c)))


def make_brace(add, mul, labels: Sequence[str] | None = None,
               max_size: int = DEFAULT_MAX_BRACE_SIZE) -> FiniteBrace:
    """Validate addition and multiplication tables as a left brace.

    Raises:
        BraceError: first failing axiom with a witness.
        CapExceededError: more than ``max_size`` elements.
    """
    add = np.asarray(add, dtype=np.int64)
    mul = np.asarray(mul, dtype=np.int64)
    if add.ndim != 2 or add.shape[0] != add.shape[1] or add.shape != mul.shape:
        raise BraceError('square', (), "add and mul must be square tables of equal size")
    M = add.shape[0]
    if M > max_size:
        raise CapExceededError('max_brace_size', max_size, M)
    if ((add < 0) | (add >= M) | (mul < 0) | (mul >= M)).any():
        raise BraceError('range', (), "table entry out of range")
    if labels is None:
        labels = [str(i) for i in range(M)]

    _latin_rows(add, 'additive')
    zero = _identity_of(add, 'additive')
    if not np.array_equal(add, add.T):
        a, b = np.argwhere(add != add.T)[0]
        raise BraceError('additive_commutative', (int(a), int(b)))
    _check_associative(add, 'additive')

    _latin_rows(mul, 'multiplicative')
    one = _identity_of(mul, 'multiplicative')
    if one != zero:
        raise BraceError('neutral', (zero, one), f"additive zero {zero} differs from multiplicative one {one}")
    _check_associative(mul, 'multiplicative')

    for a in range(M):
        # a o (b + c) + a = a o b + a o c
        lhs = add[mul[a][add], a]
        rhs = add[mul[a][:, None], mul[a][None, :]]
        bad = lhs != rhs
        if bad.any():
            b, c = np.argwhere(bad)[0]
            raise BraceError('brace_compatibility', (a, int(b), int(c)))

    B = FiniteBrace(add, mul, zero, labels)
    for a in range(M):
        # lambda_{a o b} = lambda_a lambda_b
        bad = B.lam[mul[a]] != B.lam[a][B.lam]
        if bad.any():
            b, c = np.argwhere(bad)[0]
            raise BraceError('lambda_homomorphism', (a, int(b), int(c)))
    logger.check(f"brace of size {M} passes all axioms")
    return B


def check_identities(B: FiniteBrace) -> list[str]:
    """Verify the derived identities of a brace; returns the names checked.

    Raises:
        BraceError: on the first violated identity.
    """
    add, mul, lam, neg, inv = B.add, B.mul, B.lam, B.neg, B.inv
    rows = np.arange(B.size)[:, None]
    cols = np.arange(B.size)[None, :]

    # a o b^-1 = a - lambda_{a o b^-1}(b)
    c = mul[rows, inv[cols]]
    bad = c != add[rows, neg[lam[c, cols]]]
    if bad.any():
        raise BraceError('inverse_identity', tuple(int(v) for v in np.argwhere(bad)[0]))

    # a - b = a o lambda_{a^-1 o b}(b^-1)
    d = mul[inv[rows], cols]
    bad = add[rows, neg[cols]] != mul[rows, lam[d, inv[cols]]]
    if bad.any():
        raise BraceError('difference_identity', tuple(int(v) for v in np.argwhere(bad)[0]))

    for a in range(B.size):
        bad = lam[a][add] != add[lam[a][:, None], lam[a][None, :]]
        if bad.any():
            b, c2 = np.argwhere(bad)[0]
            raise BraceError('lambda_additive', (a, int(b), int(c2)))

    soc = socle(B)
    if not soc.is_ideal:
        raise BraceError('socle_ideal', tuple(soc.sorted()))
    for p, S in sylow_subgroups(B).items():
        if not S.is_left_ideal:
            raise BraceError('sylow_left_ideal', (p,))
    names = ['inverse_identity', 'difference_identity', 'lambda_additive', 'socle_ideal', 'sylow_left_ideal']
    logger.check(f"brace identities hold: {', '.join(names)}")
    return names


@dataclass(frozen=True, eq=False)
class BraceSubset:
    brace: FiniteBrace
    members: frozenset
    is_left_ideal: bool
    is_ideal: bool

    @property
    def size(self) -> int:
        return len(self.members)

    def __contains__(self, a) -> bool:
        return int(a) in self.members

    def sorted(self) -> list[int]:
        return sorted(self.members)

    @cached_property
    def mask(self) -> np.ndarray:
        mask = np.zeros(self.brace.size, dtype=bool)
        mask[list(self.members)] = True
        return mask

    def is_whole(self) -> bool:
        return self.size == self.brace.size


def classify_subset(B: FiniteBrace, members: Iterable[int]) -> BraceSubset:
    members = frozenset(int(a) for a in members)
    idx = np.array(sorted(members), dtype=np.int64)
    mask = np.zeros(B.size, dtype=bool)
    mask[idx] = True
    subgroup = (B.zero in members and mask[B.add[np.ix_(idx, idx)]].all()
                and mask[B.neg[idx]].all())
    left_ideal = bool(subgroup and mask[B.lam[:, idx]].all())
    conj = B.mul[B.mul[:, idx], B.inv[:, None]]
    ideal = bool(left_ideal and mask[conj].all())
    return BraceSubset(B, members, left_ideal, ideal)


def socle(B: FiniteBrace) -> BraceSubset:
    ident = np.arange(B.size)
    members = [a for a in range(B.size) if np.array_equal(B.lam[a], ident)]
    S = classify_subset(B, members)
    if not S.is_ideal:
        raise BraceError('socle_ideal', tuple(members))
    return S


def additive_closure(B: FiniteBrace, subset: Iterable[int]) -> frozenset:
    mask = np.zeros(B.size, dtype=bool)
    mask[B.zero] = True
    mask[list(subset)] = True
    while True:
        idx = np.flatnonzero(mask)
        before = idx.size
        mask[B.add[np.ix_(idx, idx)].ravel()] = True
        if mask.sum() == before:
            return frozenset(np.flatnonzero(mask).tolist())


def _closure(B: FiniteBrace, seed: Iterable[int], conjugation: bool) -> frozenset:
    mask = np.zeros(B.size, dtype=bool)
    mask[B.zero] = True
    mask[list(seed)] = True
    rounds = 0
    while True:
        rounds += 1
        before = int(mask.sum())
        idx = np.array(sorted(additive_closure(B, np.flatnonzero(mask))), dtype=np.int64)
        mask[idx] = True
        mask[B.lam[:, idx].ravel()] = True
        if conjugation:
            idx = np.flatnonzero(mask)
            mask[B.mul[B.mul[:, idx], B.inv[:, None]].ravel()] = True
        if int(mask.sum()) == before:
            break
    logger.trace(f"ideal closure: {int(mask.sum())} elements after {rounds} rounds")
    return frozenset(np.flatnonzero(mask).tolist())


def left_ideal_generated(B: FiniteBrace, seed: Iterable[int]) -> BraceSubset:
    return classify_subset(B, _closure(B, seed, conjugation=False))


def ideal_generated(B: FiniteBrace, a) -> BraceSubset:
    """Smallest ideal containing ``a`` (an element or an iterable of elements)."""
    seed = [int(a)] if np.isscalar(a) else [int(x) for x in a]
    I = classify_subset(B, _closure(B, seed, conjugation=True))
    if not I.is_ideal:
        raise VerificationError('ideal_closure', tuple(seed))
    return I


def is_simple_brace(B: FiniteBrace) -> bool:
    if B.size < 2:
        raise VerificationError('simple_precondition', (B.size,), "simplicity needs at least 2 elements")
    for a in range(B.size):
        if a == B.zero:
            continue
        if not ideal_generated(B, a).is_whole():
            logger.check(f"brace simple: false, element {a} generates a proper ideal")
            return False
    logger.check(f"brace simple: true on {B.size} elements")
    return True


def ideals(B: FiniteBrace, max_size: int = DEFAULT_IDEAL_COUNT_MAX_SIZE) -> list[BraceSubset]:
    """All ideals, as joins of principal ideals."""
    if B.size > max_size:
        raise CapExceededError('ideal_count_max_size', max_size, B.size)
    found = {frozenset([B.zero])}
    for a in range(B.size):
        found.add(ideal_generated(B, a).members)
    frontier = list(found)
    while frontier:
        new = []
        for I in frontier:
            for J in list(found):
                K = additive_closure(B, I | J)
                if K not in found:
                    found.add(K)
                    new.append(K)
        frontier = new
    return [classify_subset(B, m) for m in sorted(found, key=lambda s: (len(s), sorted(s)))]


def sylow_subgroups(B: FiniteBrace) -> dict[int, BraceSubset]:
    """Sylow p-subgroups of (B, +), keyed by the prime p."""
    orders = B.additive_orders
    result = {}
    n = B.size
    p = 2
    while n > 1:
        if n % p == 0:
            while n % p == 0:
                n //= p
            members = [a for a in range(B.size) if _is_power_of(int(orders[a]), p)]
            result[p] = classify_subset(B, members)
        p += 1
    return result


def _is_power_of(k: int, p: int) -> bool:
    while k % p == 0:
        k //= p
    return k == 1


def trivial_brace(G: FinAbGroup) -> FiniteBrace:
    table = G.add_table
    return make_brace(table, table, [G.label(i) for i in range(G.order)])


def _action_perms(action, A: FinAbGroup, T: FinAbGroup) -> np.ndarray:
    perms = []
    for s in range(T.order):
        t = action(s) if callable(action) else action[s]
        perms.append(t.perm if isinstance(t, GroupAut) else np.asarray(t, dtype=np.int64))
    perms = np.array(perms, dtype=np.int64).reshape(T.order, A.order)
    return perms


def semidirect_trivial(A: FinAbGroup, T: FinAbGroup, action,
                       max_size: int = DEFAULT_MAX_BRACE_SIZE) -> FiniteBrace:
    """The brace A x T with (a,s)+(a',s') = (a+a', s+s') and (a,s)(a',s') = (a+s.a', s+s').

    ``action`` maps each element index of T to a GroupAut of A (a list or a
    callable).  Element (a, s) has index a*|T| + s.

    Raises:
        BraceError: if the action is not a homomorphism T -> Aut(A).
    """
    P = _action_perms(action, A, T)
    if not np.array_equal(P[0], np.arange(A.order)):
        raise BraceError('action_homomorphism', (0,), "action of zero is not the identity")
    for s in range(T.order):
        if np.bincount(P[s], minlength=A.order).max() != 1:
            raise BraceError('action_homomorphism', (s,), f"action of {s} is not bijective")
        bad = P[s][A.add_table] != A.add_table[P[s][:, None], P[s][None, :]]
        if bad.any():
            raise BraceError('action_homomorphism', (s,), f"action of {s} is not additive")
        composed = P[s][P] != P[T.add_table[s]]
        if composed.any():
            s2 = int(np.argwhere(composed)[0][0])
            raise BraceError('action_homomorphism', (s, s2))

    nT = T.order
    idx = np.arange(A.order * nT)
    a, s = idx // nT, idx % nT
    ai, aj = a[:, None], a[None, :]
    si, sj = s[:, None], s[None, :]
    st = T.add_table[si, sj]
    add = A.add_table[ai, aj] * nT + st
    mul = A.add_table[ai, P[si, aj]] * nT + st
    labels = [f"({A.label(x)},{T.label(y)})" for x, y in zip(a, s)]
    B = make_brace(add, mul, labels, max_size)
    logger.debug(f"semidirect brace {A.descriptor()} x {T.descriptor()} of size {B.size}")
    return B


@dataclass(eq=False)
class AsymSpec:
    """Data of an asymmetric product left x_o right.

    ``alpha[r]`` is the permutation of the left brace given by right element
    r; ``form[f, h]`` is an element index of the right brace.
    """

    left: FiniteBrace
    right: FiniteBrace
    alpha: np.ndarray
    form: np.ndarray

    def __post_init__(self):
        self.alpha = np.asarray(self.alpha, dtype=np.int64)
        self.form = np.asarray(self.form, dtype=np.int64)


def check_asym_spec(spec: AsymSpec):
    H, A1 = spec.left, spec.right
    alpha = np.asarray(spec.alpha, dtype=np.int64)
    form = np.asarray(spec.form, dtype=np.int64)
    if alpha.shape != (A1.size, H.size) or form.shape != (H.size, H.size):
        raise BraceError('asym_shape', (), "alpha or form has the wrong shape")
    if not np.array_equal(alpha[A1.zero], np.arange(H.size)):
        raise BraceError('alpha_homomorphism', (A1.zero,), "alpha of the identity is not the identity")
    for r in range(A1.size):
        P = alpha[r]
        if (alpha[A1.mul[r]] != P[alpha]).any():
            r2 = int(np.argwhere((alpha[A1.mul[r]] != P[alpha]).any(axis=1))[0][0])
            raise BraceError('alpha_homomorphism', (r, r2))
        if (P[H.add] != H.add[P[:, None], P[None, :]]).any():
            raise BraceError('alpha_additive', (r,))
        if (P[H.mul] != H.mul[P[:, None], P[None, :]]).any():
            raise BraceError('alpha_multiplicative', (r,))
    if not np.array_equal(form, form.T):
        f, h = np.argwhere(form != form.T)[0]
        raise BraceError('form_symmetric', (int(f), int(h)))
    for f in range(H.size):
        bad = form[H.add[f]] != A1.add[form[f][None, :], form]
        if bad.any():
            g, h = np.argwhere(bad)[0]
            raise BraceError('form_bilinear', (f, int(g), int(h)))
    for r in range(A1.size):
        # lambda_r(b(f, h)) = b(alpha_r f, alpha_r h)
        P = alpha[r]
        bad = A1.lam[r][form] != form[P[:, None], P[None, :]]
        if bad.any():
            f, h = np.argwhere(bad)[0]
            raise BraceError('form_compatibility', (r, int(f), int(h)))
    logger.check("asymmetric product data: alpha homomorphism, form symmetric bilinear, compatibility")


def asymmetric_product(spec: AsymSpec, max_size: int = DEFAULT_MAX_BRACE_SIZE) -> FiniteBrace:
    """The brace on left x right with

        (f, a) + (h, c) = (f + h, a + c + b(f, h))
        (f, a)(h, c)    = (f o alpha_a(h), a o c)

    Element (f, a) has index f*|right| + a.
    """
    check_asym_spec(spec)
    H, A1 = spec.left, spec.right
    alpha = np.asarray(spec.alpha, dtype=np.int64)
    form = np.asarray(spec.form, dtype=np.int64)
    size = H.size * A1.size
    if size > max_size:
        raise CapExceededError('max_brace_size', max_size, size)
    nR = A1.size
    idx = np.arange(size)
    l, r = idx // nR, idx % nR
    li, lj = l[:, None], l[None, :]
    ri, rj = r[:, None], r[None, :]
    add = H.add[li, lj] * nR + A1.add[A1.add[ri, rj], form[li, lj]]
    mul = H.mul[li, alpha[ri, lj]] * nR + A1.mul[ri, rj]
    labels = [f"({H.labels[x]},{A1.labels[y]})" for x, y in zip(l, r)]
    B = make_brace(add, mul, labels, max_size)
    _check_asym_projections(B, spec)
    logger.debug(f"asymmetric product brace of size {B.size}")
    return B


def _check_asym_projections(B: FiniteBrace, spec: AsymSpec):
    nR = spec.right.size
    left = np.arange(B.size) // nR
    if not np.array_equal(left[B.add], spec.left.add[left[:, None], left[None, :]]):
        raise BraceError('left_projection_additive')
    right_part = [spec.left.zero * nR + r for r in range(nR)]
    if not classify_subset(B, right_part).is_left_ideal:
        raise BraceError('right_factor_left_ideal')
    if not spec.form.any() and (spec.alpha == np.arange(spec.left.size)).all():
        right = np.arange(B.size) % nR
        if not np.array_equal(right[B.add], spec.right.add[right[:, None], right[None, :]]):
            raise BraceError('direct_product')


def brace_from_solution(S: Solution, max_perm_group: int = DEFAULT_MAX_PERM_GROUP,
                        max_size: int = DEFAULT_MAX_BRACE_SIZE,
                        check_words: bool = True) -> tuple[FiniteBrace, np.ndarray]:
    """The left brace on the permutation group of S.

    Multiplication is composition; addition is rebuilt along the stored
    words from g + sigma_z = g o sigma_{g^-1(z)}.  Returns the brace and the
    group elements (row i is the permutation of element i).
    """
    G = permutation_group(S, max_perm_group)
    if G.order > max_size:
        raise CapExceededError('max_brace_size', max_size, G.order)
    add = _rebuild_addition(G)
    labels = ['[' + ','.join(map(str, row)) + ']' for row in G.elements]
    B = make_brace(add, G.mul_table, labels, max_size)

    # lambda_g(sigma_y) = sigma_{g(y)}
    gen_index = G.right[0][G.gen_of_point]
    bad = B.lam[:, gen_index] != gen_index[G.elements]
    if bad.any():
        g, y = np.argwhere(bad)[0]
        raise VerificationError('lambda_on_generators', (int(g), int(y)))

    if check_words:
        G2 = permutation_group(S, max_perm_group, generator_order=reversed(range(S.size)))
        add2 = _rebuild_addition(G2)
        phi = np.array([G.index_of(row) for row in G2.elements], dtype=np.int64)
        if not np.array_equal(phi[add2], add[phi[:, None], phi[None, :]]):
            raise VerificationError('addition_word_independent')
    logger.debug(f"brace from solution: permutation group of order {G.order}")
    return B, G.elements


def _rebuild_addition(G) -> np.ndarray:
    M = G.order
    add = np.empty((M, M), dtype=np.int64)
    add[:, 0] = np.arange(M)
    for h in range(1, M):
        hp = G.parent[h]
        K = add[:, hp]
        z = G.elements[hp][G.word_point[h]]
        w = G.inverse_elements[K, z]
        add[:, h] = G.right[K, G.gen_of_point[w]]
    return add


def quotient_brace(B: FiniteBrace, I: BraceSubset) -> tuple[FiniteBrace, np.ndarray]:
    """B/I with cosets labeled by their smallest member, and the projection."""
    if not I.is_ideal:
        raise BraceError('not_ideal', tuple(I.sorted()))
    idx = np.array(I.sorted(), dtype=np.int64)
    reps_of = B.add[:, idx].min(axis=1)
    reps, proj = np.unique(reps_of, return_inverse=True)
    proj = proj.reshape(-1)
    qadd = proj[B.add[reps[:, None], reps[None, :]]]
    qmul = proj[B.mul[reps[:, None], reps[None, :]]]
    labels = [B.labels[r] + '+I' for r in reps]
    Q = make_brace(qadd, qmul, labels)
    if not np.array_equal(proj[B.add], Q.add[proj[:, None], proj[None, :]]) or \
            not np.array_equal(proj[B.mul], Q.mul[proj[:, None], proj[None, :]]):
        raise VerificationError('quotient_projection')
    return Q, proj


def _brace_invariants(B: FiniteBrace) -> list[tuple]:
    soc = socle(B).mask
    ident = np.arange(B.size)
    return [
        (int(B.additive_orders[a]), int(B.multiplicative_orders[a]),
         int((B.lam[a] == ident).sum()), bool(soc[a]))
        for a in range(B.size)
    ]


def _close_map(f: np.ndarray, B1: FiniteBrace, B2: FiniteBrace, code1, code2) -> bool:
    while True:
        changed = False
        for t1, t2 in ((B1.add, B2.add), (B1.mul, B2.mul)):
            D = np.flatnonzero(f >= 0)
            targets = t1[np.ix_(D, D)].ravel()
            images = t2[np.ix_(f[D], f[D])].ravel()
            known = f[targets] >= 0
            if (f[targets[known]] != images[known]).any():
                return False
            new_targets, first = np.unique(targets[~known], return_index=True)
            if new_targets.size:
                f[new_targets] = images[~known][first]
                changed = True
        if not changed:
            return True
        defined = f[f >= 0]
        if np.unique(defined).size != defined.size:
            return False
        D = np.flatnonzero(f >= 0)
        if (code1[D] != code2[f[D]]).any():
            return False


def find_brace_isomorphism(B1: FiniteBrace, B2: FiniteBrace,
                           max_nodes: int = DEFAULT_ISO_MAX_NODES) -> np.ndarray | None:
    """A bijection preserving + and o, or None."""
    if B1.size != B2.size:
        return None
    inv1, inv2 = _brace_invariants(B1), _brace_invariants(B2)
    if Counter(inv1) != Counter(inv2):
        return None
    codes = {key: i for i, key in enumerate(sorted(set(inv1)))}
    code1 = np.array([codes[k] for k in inv1], dtype=np.int64)
    code2 = np.array([codes[k] for k in inv2], dtype=np.int64)
    class_size = Counter(inv1)

    # generators of B1 under both operations, rarest invariant first
    generators = []
    span = np.full(B1.size, -1, dtype=np.int64)
    span[B1.zero] = B1.zero
    _close_map(span, B1, B1, code1, code1)
    for a in sorted(range(B1.size), key=lambda x: (class_size[inv1[x]], -B1.additive_orders[x], x)):
        if span[a] < 0:
            generators.append(a)
            span[a] = a
            _close_map(span, B1, B1, code1, code1)

    nodes = 0

    def search(f, depth):
        nonlocal nodes
        if depth == len(generators):
            return f
        g = generators[depth]
        if f[g] >= 0:
            return search(f, depth + 1)
        used = np.zeros(B2.size, dtype=bool)
        used[f[f >= 0]] = True
        for cand in np.flatnonzero((code2 == code1[g]) & ~used):
            nodes += 1
            if nodes > max_nodes:
                raise CapExceededError('iso_max_nodes', max_nodes)
            logger.trace(f"search: node {nodes}, trying {g} -> {int(cand)}")
            trial = f.copy()
            trial[g] = cand
            if _close_map(trial, B1, B2, code1, code2):
                found = search(trial, depth + 1)
                if found is not None:
                    return found
        return None

    start = np.full(B1.size, -1, dtype=np.int64)
    start[B1.zero] = B2.zero
    f = search(start, 0)
    if f is None:
        logger.debug(f"brace iso search exhausted after {nodes} nodes")
        return None
    if (f < 0).any() or not is_brace_homomorphism(B1, B2, f):
        raise VerificationError('brace_iso_certificate')
    logger.debug(f"brace iso found after {nodes} nodes")
    return f


def is_brace_homomorphism(B1: FiniteBrace, B2: FiniteBrace, f) -> bool:
    f = np.asarray(f, dtype=np.int64)
    return bool(np.array_equal(f[B1.add], B2.add[f[:, None], f[None, :]])
                and np.array_equal(f[B1.mul], B2.mul[f[:, None], f[None, :]]))


def brace_solution(B: FiniteBrace) -> Solution:
    """The solution r(a, b) = (lambda_a(b), lambda^{-1}_{lambda_a(b)}(a)) on B."""
    return make_solution(B.lam, B.labels)


def restrict_solution(B: FiniteBrace, points: Sequence[int]) -> Solution:
    """The brace solution restricted to a lambda-invariant set of points."""
    points = np.asarray(points, dtype=np.int64)
    position = np.full(B.size, -1, dtype=np.int64)
    position[points] = np.arange(points.size)
    table = position[B.lam[points[:, None], points[None, :]]]
    if (table < 0).any():
        i, j = np.argwhere(table < 0)[0]
        raise VerificationError('lambda_invariant', (int(points[i]), int(points[j])))
    return make_solution(table, [B.labels[p] for p in points])


@dataclass
class BraceReport:
    brace_ok: bool
    size: int
    socle_size: int
    simple: bool | None
    ideal_count: int | None

    def lines(self) -> list[str]:
        def fmt(v):
            if v is None:
                return 'n/a'
            if isinstance(v, bool):
                return 'true' if v else 'false'
            return str(v)
        return [
            f"brace_ok: {fmt(self.brace_ok)}",
            f"size: {self.size}",
            f"socle_size: {self.socle_size}",
            f"simple: {fmt(self.simple)}",
            f"ideal_count: {fmt(self.ideal_count)}",
        ]


def analyze_brace(B: FiniteBrace, ideal_count_max_size: int = DEFAULT_IDEAL_COUNT_MAX_SIZE) -> BraceReport:
    check_identities(B)
    count = len(ideals(B, ideal_count_max_size)) if B.size <= ideal_count_max_size else None
    return BraceReport(
        brace_ok=True,
        size=B.size,
        socle_size=socle(B).size,
        simple=is_simple_brace(B) if B.size > 1 else None,
        ideal_count=count,
    )
