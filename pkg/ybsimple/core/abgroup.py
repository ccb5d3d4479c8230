"""Finite abelian groups as products of cyclic factors.

Elements are residue tuples, addressed everywhere by their lexicographic
index (first factor most significant).  Automorphisms are integer matrices
whose column j is the image of the j-th canonical generator.
"""
from __future__ import annotations

import itertools
import json
import logging
import math
import re
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import DescriptorError, VerificationError

logger = logging.getLogger('YBSimple')

_GROUP_RE = re.compile(r'^Z(\d+)(?:xZ(\d+))*$')


@dataclass(frozen=True)
class FinAbGroup:
    """Product Z/(n_1) x ... x Z/(n_k); the empty product is the trivial group."""

    factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'factors', tuple(int(n) for n in self.factors))
        for n in self.factors:
            if n < 2:
                raise DescriptorError(f"cyclic factor {n} is below 2")

    @property
    def rank(self) -> int:
        return len(self.factors)

    @cached_property
    def order(self) -> int:
        return math.prod(self.factors)

    @cached_property
    def exponent(self) -> int:
        return reduce(math.lcm, self.factors, 1)

    @cached_property
    def strides(self) -> np.ndarray:
        strides = np.ones(self.rank, dtype=np.int64)
        for i in range(self.rank - 2, -1, -1):
            strides[i] = strides[i + 1] * self.factors[i + 1]
        return strides

    @cached_property
    def moduli(self) -> np.ndarray:
        return np.array(self.factors, dtype=np.int64)

    @cached_property
    def elements(self) -> np.ndarray:
        """All residue tuples as an (order, rank) array in index order."""
        if not self.factors:
            return np.zeros((1, 0), dtype=np.int64)
        grids = np.indices(self.factors).reshape(self.rank, -1)
        return grids.T.astype(np.int64)

    def encode(self, residues) -> np.ndarray:
        """Index of each residue row (any integers, reduced here)."""
        residues = np.asarray(residues, dtype=np.int64)
        if not self.factors:
            return np.zeros(residues.shape[:-1], dtype=np.int64)
        return ((residues % self.moduli) * self.strides).sum(axis=-1)

    def index(self, residues: Sequence[int]) -> int:
        return int(self.encode(np.asarray(residues).reshape(self.rank)))

    def element(self, idx: int) -> tuple[int, ...]:
        return tuple(int(r) for r in self.elements[idx])

    @cached_property
    def add_table(self) -> np.ndarray:
        e = self.elements
        return self.encode(e[:, None, :] + e[None, :, :])

    @cached_property
    def neg(self) -> np.ndarray:
        return self.encode(-self.elements)

    def add(self, x: int, y: int) -> int:
        return int(self.add_table[x, y])

    def sub(self, x: int, y: int) -> int:
        return int(self.add_table[x, self.neg[y]])

    def multiple(self, k: int, x: int) -> int:
        return self.index(k * self.elements[x])

    def generator(self, j: int) -> int:
        """Index of the j-th canonical generator."""
        return int(self.strides[j])

    def label(self, idx: int) -> str:
        residues = self.element(idx)
        if len(residues) == 1:
            return str(residues[0])
        return '(' + ','.join(map(str, residues)) + ')'

    def descriptor(self) -> str:
        if not self.factors:
            return 'trivial'
        return 'x'.join(f'Z{n}' for n in self.factors)

    def __repr__(self):
        return f"FinAbGroup({self.descriptor()})"


def parse_group(descriptor: str) -> FinAbGroup:
    """Parse ``Zn(xZn)*`` into a group with factors in listed order."""
    text = descriptor.strip()
    if not _GROUP_RE.match(text):
        raise DescriptorError(f"malformed group descriptor: {descriptor!r}")
    return FinAbGroup(tuple(int(part[1:]) for part in text.split('x')))


def parse_matrix(text: str) -> list[list[int]]:
    """Parse a row-major integer matrix written as ``[[a,b],[c,d]]``."""
    try:
        matrix = json.loads(text)
    except (TypeError, ValueError) as e:
        raise DescriptorError(f"malformed matrix {text!r}: {e}")
    if (not isinstance(matrix, list) or not matrix
            or not all(isinstance(row, list) for row in matrix)
            or not all(isinstance(v, int) for row in matrix for v in row)):
        raise DescriptorError(f"matrix must be a list of integer rows: {text!r}")
    return matrix


def parse_element(G: FinAbGroup, text: str) -> int:
    """Parse ``3`` (cyclic groups) or ``(1,0)`` into an element index."""
    body = text.strip().strip('()')
    try:
        residues = [int(v) for v in body.split(',')] if body else []
    except ValueError:
        raise DescriptorError(f"malformed element {text!r}")
    if len(residues) != G.rank:
        raise DescriptorError(f"element {text!r} needs {G.rank} residues")
    return G.index(residues)


@dataclass(frozen=True, eq=False)
class GroupAut:
    """Automorphism of a FinAbGroup given by its matrix."""

    group: FinAbGroup
    matrix: tuple[tuple[int, ...], ...]

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64).reshape(self.group.rank, self.group.rank)

    @cached_property
    def perm(self) -> np.ndarray:
        """Image index of every element."""
        G = self.group
        return G.encode(G.elements @ self.array.T)

    def __call__(self, x):
        return self.perm[x]

    def __eq__(self, other):
        return (isinstance(other, GroupAut) and self.group == other.group
                and np.array_equal(self.perm, other.perm))

    def __hash__(self):
        return hash((self.group, self.perm.tobytes()))

    def compose(self, other: GroupAut) -> GroupAut:
        """self after other."""
        product = self.array @ other.array
        return _from_array(self.group, product)

    def inverse(self) -> GroupAut:
        G = self.group
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(G.order)
        columns = [G.elements[inv[G.generator(j)]] for j in range(G.rank)]
        return _from_array(G, np.array(columns, dtype=np.int64).T.reshape(G.rank, G.rank))

    def power(self, s: int) -> GroupAut:
        s %= self.order
        base = self
        result = identity_aut(self.group)
        while s:
            if s & 1:
                result = result.compose(base)
            base = base.compose(base)
            s >>= 1
        return result

    @cached_property
    def order(self) -> int:
        return aut_order(self)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.perm, np.arange(self.group.order)))

    def minus_identity(self) -> GroupAut:
        """The map t - id, validated as an automorphism."""
        return aut_from_matrix(self.group, self.array - np.eye(self.group.rank, dtype=np.int64))

    def to_list(self) -> list[list[int]]:
        return [list(row) for row in self.matrix]

    def __repr__(self):
        return f"GroupAut({self.group.descriptor()}, {self.to_list()})"


def _from_array(G: FinAbGroup, M: np.ndarray) -> GroupAut:
    reduced = M % G.moduli[:, None] if G.rank else M
    return GroupAut(G, tuple(tuple(int(v) for v in row) for row in reduced))


def _well_defined(G: FinAbGroup, M: np.ndarray) -> tuple[int, int] | None:
    for i, j in itertools.product(range(G.rank), repeat=2):
        if (int(M[i, j]) * G.factors[j]) % G.factors[i]:
            return (i, j)
    return None


def aut_from_matrix(G: FinAbGroup, M) -> GroupAut:
    """Validate ``M`` as an automorphism of ``G``.

    Raises:
        DescriptorError: wrong shape, ill-defined, or not injective.
    """
    M = np.asarray(M, dtype=np.int64)
    if M.shape != (G.rank, G.rank):
        raise DescriptorError(f"matrix shape {M.shape} does not match rank {G.rank}")
    bad = _well_defined(G, M)
    if bad is not None:
        raise DescriptorError(
            f"matrix entry {bad} is not well defined: {G.factors[bad[0]]} does not divide "
            f"{int(M[bad])}*{G.factors[bad[1]]}")
    t = _from_array(G, M)
    if np.unique(t.perm).size != G.order:
        raise DescriptorError(f"matrix {M.tolist()} is not injective on {G.descriptor()}")
    return t


def identity_aut(G: FinAbGroup) -> GroupAut:
    return _from_array(G, np.eye(G.rank, dtype=np.int64))


def scalar_aut(G: FinAbGroup, k: int) -> GroupAut:
    return aut_from_matrix(G, k * np.eye(G.rank, dtype=np.int64))


def aut_order(t: GroupAut) -> int:
    """Least s >= 1 with t^s = id, from the cycle lengths of t."""
    perm = t.perm
    seen = np.zeros(perm.size, dtype=bool)
    order = 1
    for start in range(perm.size):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        order = math.lcm(order, length)
    return order


def automorphisms(G: FinAbGroup) -> list[GroupAut]:
    """Every automorphism of ``G``, in lexicographic order of matrices."""
    choices = []
    for i, j in itertools.product(range(G.rank), repeat=2):
        step = G.factors[i] // math.gcd(G.factors[i], G.factors[j])
        choices.append(range(0, G.factors[i], step))
    result = []
    for entries in itertools.product(*choices):
        M = np.array(entries, dtype=np.int64).reshape(G.rank, G.rank)
        t = _from_array(G, M)
        if np.unique(t.perm).size == G.order:
            result.append(t)
    logger.debug(f"{len(result)} automorphisms of {G.descriptor()}")
    return result


def conjugacy_representatives(auts: list[GroupAut]) -> list[GroupAut]:
    """One automorphism per conjugacy class of the list (taken as a group)."""
    seen = set()
    reps = []
    inverses = [s.inverse() for s in auts]
    for t in auts:
        key = t.perm.tobytes()
        if key in seen:
            continue
        reps.append(t)
        for s, s_inv in zip(auts, inverses):
            seen.add(s.compose(t).compose(s_inv).perm.tobytes())
    return reps


def factor_shapes(order: int) -> list[tuple[int, ...]]:
    """Invariant-factor lists n_1 | n_2 | ... with product ``order``."""
    if order == 1:
        return [()]
    shapes = []

    def extend(prefix, remaining):
        if remaining == 1:
            shapes.append(tuple(prefix))
            return
        low = prefix[-1] if prefix else 2
        for n in range(low, remaining + 1):
            if remaining % n == 0 and (not prefix or n % prefix[-1] == 0):
                extend(prefix + [n], remaining // n)

    extend([], order)
    return sorted(shapes, key=lambda s: (len(s), s))


@dataclass(frozen=True)
class Subgroup:
    group: FinAbGroup
    members: frozenset[int]
    generators: tuple[int, ...] = field(default=())

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x) -> bool:
        return int(x) in self.members

    @cached_property
    def mask(self) -> np.ndarray:
        mask = np.zeros(self.group.order, dtype=bool)
        mask[list(self.members)] = True
        return mask

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def is_whole(self) -> bool:
        return self.order == self.group.order

    def labels(self) -> list[str]:
        return [self.group.label(x) for x in self.sorted()]

    def __repr__(self):
        return f"Subgroup({self.group.descriptor()}, order={self.order})"


def subgroup_generated(G: FinAbGroup, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``gens``, by worklist closure."""
    gens = sorted({int(g) for g in gens} - {0})
    members = {0}
    worklist = [0]
    while worklist:
        x = worklist.pop()
        for g in gens:
            y = int(G.add_table[x, g])
            if y not in members:
                members.add(y)
                worklist.append(y)
    S = Subgroup(G, frozenset(members), _greedy_generators(G, gens))
    _assert_closed(S)
    return S


def subgroup_from_members(G: FinAbGroup, members: Iterable[int]) -> Subgroup:
    """Wrap a set already known to be a subgroup, choosing generators."""
    members = frozenset(int(x) for x in members)
    S = Subgroup(G, members, _greedy_generators(G, sorted(members)))
    _assert_closed(S)
    return S


def subgroup_join(S: Subgroup, T: Subgroup) -> Subgroup:
    return subgroup_generated(S.group, S.generators + T.generators)


def _greedy_generators(G: FinAbGroup, candidates: Sequence[int]) -> tuple[int, ...]:
    chosen = []
    span = {0}
    for c in candidates:
        if c in span:
            continue
        chosen.append(int(c))
        frontier = list(span)
        while frontier:
            x = frontier.pop()
            for g in chosen:
                y = int(G.add_table[x, g])
                if y not in span:
                    span.add(y)
                    frontier.append(y)
    return tuple(chosen)


def _assert_closed(S: Subgroup):
    idx = np.array(S.sorted(), dtype=np.int64)
    sums = S.group.add_table[np.ix_(idx, idx)]
    if 0 not in S.members or not S.mask[sums].all() or not S.mask[S.group.neg[idx]].all():
        raise VerificationError('subgroup_closed', message=f"{S} is not closed under + and negation")


def _exgcd(a: int, b: int) -> np.ndarray:
    """2x2 determinant-one integer matrix M with M @ [a, b] = [gcd(a, b), 0]."""
    a_sign = -1 if a < 0 else 1
    b_sign = -1 if b < 0 else 1
    a, b = a * a_sign, b * b_sign
    M = np.array([[b, 0, 1], [a, 1, 0]], dtype=object)
    while M[1, 0] != 0:
        q = M[0, 0] // M[1, 0]
        M[0] -= q * M[1]
        M = M[::-1]
    g = M[0, 0]
    M = M[:, 1:] * np.array([a_sign, b_sign], dtype=object)
    if g != 0:
        M[1] = [-b_sign * b // g, a_sign * a // g]
    return M


def _diagonalize(R: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row/column reduce ``R`` to diagonal D, returning (D, Sinv) with Sinv @ R @ T = D."""
    D = R.astype(object)
    rows, cols = D.shape
    Sinv = np.eye(rows, dtype=object)

    def clear_col(i):
        if (D[i + 1:, i] == 0).all():
            return False
        for j in range(i + 1, rows):
            M = _exgcd(D[i, i], D[j, i])
            D[[i, j]] = M @ D[[i, j]]
            Sinv[[i, j]] = M @ Sinv[[i, j]]
        return True

    def clear_row(i):
        if (D[i, i + 1:] == 0).all():
            return False
        for j in range(i + 1, cols):
            M = _exgcd(D[i, i], D[i, j]).T
            D[:, [i, j]] = D[:, [i, j]] @ M
        return True

    for i in range(min(rows, cols)):
        clear_col(i)
        while clear_row(i) and clear_col(i):
            pass
    return D, Sinv


def rank_mod_p(M, p: int) -> int:
    """Rank of an integer matrix over F_p, read off its diagonal form."""
    M = np.asarray(M, dtype=np.int64) % p
    if M.size == 0:
        return 0
    D, _ = _diagonalize(M)
    return sum(1 for i in range(min(D.shape)) if D[i, i] % p)


def quotient_map(G: FinAbGroup, S: Subgroup) -> tuple[FinAbGroup, np.ndarray]:
    """Cyclic decomposition of G/S and the projection as an index array.

    The relation lattice spanned by the factor orders and the generators of
    ``S`` is diagonalized; coordinates of Sinv @ x modulo the diagonal give
    the coset label.
    """
    k = G.rank
    if k == 0:
        return G, np.zeros(1, dtype=np.int64)
    columns = [G.factors[i] * np.eye(k, dtype=np.int64)[:, i] for i in range(k)]
    columns += [G.elements[g] for g in S.generators]
    R = np.array(columns, dtype=np.int64).T
    D, Sinv = _diagonalize(R)
    diagonal = [abs(int(D[i, i])) for i in range(k)]
    kept = [i for i, d in enumerate(diagonal) if d > 1]
    Q = FinAbGroup(tuple(diagonal[i] for i in kept))
    coords = (G.elements.astype(object) @ Sinv.T)[:, kept] if kept else np.zeros((G.order, 0), dtype=object)
    proj = Q.encode(np.array([[int(v) % diagonal[i] for v, i in zip(row, kept)] for row in coords],
                             dtype=np.int64).reshape(G.order, len(kept)))

    if G.order != S.order * Q.order:
        raise VerificationError('quotient_order', message=f"|G|={G.order} != |S|*|G/S|")
    if not np.array_equal(proj[G.add_table], Q.add_table[proj[:, None], proj[None, :]]):
        raise VerificationError('quotient_homomorphism')
    if set(np.flatnonzero(proj == 0).tolist()) != set(S.members):
        raise VerificationError('quotient_kernel')
    return Q, proj
