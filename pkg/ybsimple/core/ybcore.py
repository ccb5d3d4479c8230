"""Involutive non-degenerate set-theoretic solutions as dense sigma tables.

A solution on {0..N-1} is stored as ``sigma[x, y] = sigma_x(y)``; the second
component of r(x, y) = (sigma_x(y), gamma_y(x)) is derived as
gamma_y(x) = sigma^{-1}_{sigma_x(y)}(x) and kept as ``gamma[y, x]``.
"""
from __future__ import annotations

import logging
import math
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceededError, SolutionError, VerificationError
from ..utils.disjoint_set import DisjointSet

logger = logging.getLogger('YBSimple')

DEFAULT_MAX_PERM_GROUP = 100000
DEFAULT_ISO_MAX_NODES = 200000


def invert_rows(table: np.ndarray) -> np.ndarray:
    """Row-wise inverse permutations."""
    inv = np.empty_like(table)
    rows = np.arange(table.shape[0])[:, None]
    inv[rows, table] = np.arange(table.shape[1])[None, :]
    return inv


def cycle_type(perm: np.ndarray) -> tuple[int, ...]:
    seen = np.zeros(perm.size, dtype=bool)
    lengths = []
    for start in range(perm.size):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))


class Solution:
    """A validated solution; build it with :func:`make_solution`."""

    def __init__(self, sigma: np.ndarray, labels: Sequence[str]):
        self.sigma = sigma
        self.size = sigma.shape[0]
        self.labels = list(labels)
        self.sigma_inv = invert_rows(sigma)
        # gamma[y, x] = sigma_inv[sigma[x, y], x]
        xs = np.arange(self.size)[:, None]
        self.gamma = self.sigma_inv[sigma, xs].T.copy()

    def r(self, x: int, y: int) -> tuple[int, int]:
        return int(self.sigma[x, y]), int(self.gamma[y, x])

    @cached_property
    def distinct_rows(self) -> int:
        return int(np.unique(self.sigma, axis=0).shape[0])

    def __repr__(self):
        return f"Solution(size={self.size})"


def _check_permutation_rows(table: np.ndarray, predicate: str):
    n = table.shape[1]
    for x, row in enumerate(table):
        counts = np.bincount(row, minlength=n)
        if (counts != 1).any():
            repeated = int(np.flatnonzero(counts > 1)[0])
            raise SolutionError(predicate, (x, repeated), f"row {x} not a permutation")


def check_involutive(S: Solution) -> tuple[int, int] | None:
    u = S.sigma
    v = S.gamma.T
    N = S.size
    X, Y = np.meshgrid(np.arange(N), np.arange(N), indexing='ij')
    ok = (S.sigma[u, v] == X) & (S.gamma[v, u] == Y)
    if ok.all():
        return None
    x, y = np.argwhere(~ok)[0]
    return int(x), int(y)


def check_braid(S: Solution) -> tuple[int, int, int] | None:
    """First triple where r12 r23 r12 differs from r23 r12 r23, or None."""
    sig, gam = S.sigma, S.gamma
    N = S.size
    Y, Z = np.meshgrid(np.arange(N), np.arange(N), indexing='ij')

    def r(a, b):
        return sig[a, b], gam[b, a]

    for x in range(N):
        X = np.full_like(Y, x)
        # r12 r23 r12
        a1, b1 = r(X, Y)
        b2, c2 = r(b1, Z)
        a3, b3 = r(a1, b2)
        left = (a3, b3, c2)
        # r23 r12 r23
        b1, c1 = r(Y, Z)
        a2, b2 = r(X, b1)
        b3, c3 = r(b2, c1)
        right = (a2, b3, c3)
        bad = ~((left[0] == right[0]) & (left[1] == right[1]) & (left[2] == right[2]))
        if bad.any():
            y, z = np.argwhere(bad)[0]
            return x, int(y), int(z)
    return None


def make_solution(sigma, labels: Sequence[str] | None = None) -> Solution:
    """Validate a sigma table as an involutive non-degenerate braided solution.

    Raises:
        SolutionError: with the failing predicate and a witness.
    """
    table = np.asarray(sigma, dtype=np.int64)
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise SolutionError('square', (), f"sigma table must be square, got shape {table.shape}")
    N = table.shape[0]
    if ((table < 0) | (table >= N)).any():
        x, y = np.argwhere((table < 0) | (table >= N))[0]
        raise SolutionError('range', (int(x), int(y)), "sigma entry out of range")
    if labels is None:
        labels = [str(i) for i in range(N)]
    if len(labels) != N:
        raise SolutionError('labels', (len(labels),), f"expected {N} labels")
    _check_permutation_rows(table, 'row_permutation')
    S = Solution(table, labels)
    _check_permutation_rows(S.gamma, 'nondegenerate')
    bad = check_involutive(S)
    if bad is not None:
        raise SolutionError('involutive', bad)
    bad = check_braid(S)
    if bad is not None:
        raise SolutionError('braid', bad)
    logger.check(f"verify solution of size {N}: involutive, nondegenerate, braid")
    return S


def verify_sigma_condition(S: Solution) -> bool:
    """sigma_x sigma_{sigma_x^{-1}(y)} = sigma_y sigma_{sigma_y^{-1}(x)} for all x, y."""
    sig = S.sigma
    left = sig[np.arange(S.size)[:, None, None], sig[S.sigma_inv]]
    return bool(np.array_equal(left, left.transpose(1, 0, 2)))


@dataclass(eq=False)
class PermGroup:
    """The group generated by the sigma_x, with one generator word per element.

    Element 0 is the identity.  For every other element h,
    ``h = elements[parent[h]] o sigma_{word_point[h]}``.
    """

    degree: int
    elements: np.ndarray
    parent: np.ndarray
    word_point: np.ndarray
    gen_points: list[int]
    gen_of_point: np.ndarray
    right: np.ndarray
    _index: dict = field(repr=False, default_factory=dict)

    @property
    def order(self) -> int:
        return self.elements.shape[0]

    def index_of(self, perm) -> int:
        return self._index[np.asarray(perm, dtype=np.int64).tobytes()]

    @cached_property
    def mul_table(self) -> np.ndarray:
        """mul[a, b] = index of a o b, filled column by column along words."""
        M = self.order
        mul = np.empty((M, M), dtype=np.int64)
        mul[:, 0] = np.arange(M)
        for b in range(1, M):
            mul[:, b] = self.right[mul[:, self.parent[b]], self.gen_of_point[self.word_point[b]]]
        return mul

    @cached_property
    def inverses(self) -> np.ndarray:
        inv = np.empty(self.order, dtype=np.int64)
        rows, cols = np.nonzero(self.mul_table == 0)
        inv[rows] = cols
        return inv

    @cached_property
    def inverse_elements(self) -> np.ndarray:
        return invert_rows(self.elements)

    def orbits(self) -> list[list[int]]:
        ds = DisjointSet(self.degree)
        # generators sit one step from the identity
        for perm in self.elements[self.right[0]]:
            for x in range(self.degree):
                ds.unite(x, int(perm[x]))
        return ds.to_list()


def permutation_group(S: Solution, max_size: int = DEFAULT_MAX_PERM_GROUP,
                      generator_order: Iterable[int] | None = None) -> PermGroup:
    """Breadth-first closure of the sigma_x under composition.

    Raises:
        CapExceededError: if the group grows past ``max_size`` elements.
    """
    N = S.size
    points = list(generator_order) if generator_order is not None else list(range(N))
    gen_points = []
    gen_of_point = np.empty(N, dtype=np.int64)
    seen_rows = {}
    for x in points:
        key = S.sigma[x].tobytes()
        if key not in seen_rows:
            seen_rows[key] = len(gen_points)
            gen_points.append(x)
        gen_of_point[x] = seen_rows[key]
    gens = [S.sigma[x] for x in gen_points]

    identity = np.arange(N, dtype=np.int64)
    elements = [identity]
    index = {identity.tobytes(): 0}
    parent = [0]
    word_point = [-1]
    right = []
    queue = deque([0])
    while queue:
        h = queue.popleft()
        row = []
        for gi, g in enumerate(gens):
            product = elements[h][g]
            key = product.tobytes()
            k = index.get(key)
            if k is None:
                k = len(elements)
                if k >= max_size:
                    raise CapExceededError('max_perm_group', max_size, k + 1)
                index[key] = k
                elements.append(product)
                parent.append(h)
                word_point.append(gen_points[gi])
                queue.append(k)
            row.append(k)
        right.append(row)
    # right[] is filled in BFS order, which is index order
    G = PermGroup(
        degree=N,
        elements=np.array(elements, dtype=np.int64),
        parent=np.array(parent, dtype=np.int64),
        word_point=np.array(word_point, dtype=np.int64),
        gen_points=gen_points,
        gen_of_point=gen_of_point,
        right=np.array(right, dtype=np.int64).reshape(len(elements), len(gens)),
        _index=index,
    )
    logger.debug(f"permutation group of degree {N}: order {G.order}, {len(gens)} generators")
    return G


def orbits(S: Solution) -> list[list[int]]:
    """Orbits of the group generated by the sigma_x, ordered by smallest point."""
    ds = DisjointSet(S.size)
    for x in range(S.size):
        for y in range(S.size):
            ds.unite(y, int(S.sigma[x, y]))
    return ds.to_list()


def orbit(S: Solution, point: int) -> list[int]:
    return next(o for o in orbits(S) if point in o)


def is_indecomposable(S: Solution) -> tuple[bool, list[list[int]]]:
    parts = orbits(S)
    logger.check(f"orbit partition sizes {[len(p) for p in parts]}")
    return len(parts) == 1, parts


@dataclass(eq=False)
class Congruence:
    """A sigma-compatible partition with canonical block labels."""

    forest: DisjointSet
    labels: np.ndarray

    @classmethod
    def from_forest(cls, forest: DisjointSet) -> Congruence:
        return cls(forest, np.array(forest.labels(), dtype=np.int64))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> Congruence:
        labels = np.asarray(labels, dtype=np.int64)
        ds = DisjointSet(labels.size)
        first = {}
        for x, lab in enumerate(labels.tolist()):
            if lab in first:
                ds.unite(first[lab], x)
            else:
                first[lab] = x
        return cls.from_forest(ds)

    @property
    def block_count(self) -> int:
        return len(self.forest)

    def blocks(self) -> list[list[int]]:
        return self.forest.to_list()

    def is_full(self) -> bool:
        return self.block_count == 1

    def is_discrete(self) -> bool:
        return self.block_count == self.labels.size


def _close_congruence(S: Solution, ds: DisjointSet) -> DisjointSet:
    N = S.size
    flat = S.sigma.reshape(-1)
    rounds = 0
    while True:
        rounds += 1
        if len(ds) == 1:
            break
        L = np.array(ds.labels(), dtype=np.int64)
        key = (L[:, None] * N + L[None, :]).reshape(-1)
        order = np.argsort(key, kind='stable')
        k = key[order]
        img = flat[order]
        clash = np.flatnonzero((k[1:] == k[:-1]) & (L[img[1:]] != L[img[:-1]]))
        if clash.size == 0:
            break
        for i in clash.tolist():
            ds.unite(int(img[i]), int(img[i + 1]))
    logger.trace(f"congruence closure settled after {rounds} rounds with {len(ds)} blocks")
    return ds


def congruence_generated(S: Solution, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Smallest congruence containing ``pairs``."""
    ds = DisjointSet(S.size)
    for x, y in pairs:
        ds.unite(int(x), int(y))
    return Congruence.from_forest(_close_congruence(S, ds))


def quotient_solution(S: Solution, C: Congruence) -> tuple[Solution, np.ndarray]:
    """Induced solution on the blocks of ``C`` and the projection."""
    L = C.labels
    blocks = C.blocks()
    reps = np.array([b[0] for b in blocks], dtype=np.int64)
    induced = L[S.sigma[reps[:, None], reps[None, :]]]
    mismatch = L[S.sigma] != induced[L[:, None], L[None, :]]
    if mismatch.any():
        x, y = np.argwhere(mismatch)[0]
        raise VerificationError('congruence_compatible', (int(x), int(y)))
    labels = ['{' + ','.join(S.labels[i] for i in b) + '}' for b in blocks]
    Q = make_solution(induced, labels)
    return Q, L.copy()


def retract(S: Solution) -> tuple[Solution, np.ndarray]:
    """Quotient by x ~ y iff sigma_x = sigma_y."""
    _, first_index, inverse = np.unique(S.sigma, axis=0, return_index=True, return_inverse=True)
    C = Congruence.from_labels(first_index[inverse.reshape(-1)])
    R, proj = quotient_solution(S, C)
    logger.debug(f"retract: {S.size} -> {R.size} points")
    return R, proj


def is_irretractable(S: Solution) -> bool:
    return S.distinct_rows == S.size


def multipermutation_level(S: Solution) -> int | None:
    """Least n with |Ret^n(S)| = 1; None when the retract sizes stall above 1."""
    level = 0
    current = S
    while current.size > 1:
        nxt, _ = retract(current)
        if nxt.size == current.size:
            return None
        current = nxt
        level += 1
    return level


def pair_orbit_representatives(S: Solution) -> list[tuple[int, int]]:
    """One unordered pair x < y per orbit of the diagonal action of the sigma_x.

    Principal congruences are constant along these orbits, since each
    sigma_z is a permutation of finite order compatible with every congruence.
    """
    N = S.size
    x, y = np.divmod(np.arange(N * N), N)
    lo, hi = np.minimum(x, y), np.maximum(x, y)
    label = lo * N + hi
    rows = np.unique(S.sigma, axis=0)
    images = [np.minimum(r[lo], r[hi]) * N + np.maximum(r[lo], r[hi]) for r in rows]
    while True:
        nxt = label.copy()
        for img in images:
            np.minimum.at(nxt, img, label)
            nxt = np.minimum(nxt, nxt[img])
        nxt = nxt[nxt]
        if np.array_equal(nxt, label):
            break
        label = nxt
    reps = np.unique(label[lo < hi])
    return [(int(r // N), int(r % N)) for r in reps]


def is_simple_solution(S: Solution) -> tuple[bool, Congruence | None]:
    """Every pair generates the full congruence.  Returns a witness otherwise."""
    N = S.size
    if N < 2:
        raise VerificationError('simple_precondition', (N,), "simplicity needs at least 2 points")
    pairs = pair_orbit_representatives(S)
    logger.trace(f"simple: {len(pairs)} pair orbits on {N} points")
    for x, y in pairs:
        C = congruence_generated(S, [(x, y)])
        if not C.is_full():
            logger.check(f"simple: false, pair ({x},{y}) generates {C.block_count} blocks")
            return False, C
    logger.check(f"simple: true on {N} points")
    return True, None


def _point_invariants(S: Solution) -> list[tuple]:
    orbit_size = {}
    for part in orbits(S):
        for x in part:
            orbit_size[x] = len(part)
    row_classes = Counter(S.sigma[x].tobytes() for x in range(S.size))
    return [
        (cycle_type(S.sigma[x]), cycle_type(S.gamma[x]), orbit_size[x],
         row_classes[S.sigma[x].tobytes()], int(S.sigma[x, x] == x))
        for x in range(S.size)
    ]


def find_solution_isomorphism(S1: Solution, S2: Solution,
                              max_nodes: int = DEFAULT_ISO_MAX_NODES) -> np.ndarray | None:
    """A bijection f with f(sigma_x(y)) = sigma'_{f(x)}(f(y)), or None."""
    N = S1.size
    if N != S2.size:
        return None
    if S1.distinct_rows != S2.distinct_rows:
        return None
    inv1 = _point_invariants(S1)
    inv2 = _point_invariants(S2)
    if Counter(inv1) != Counter(inv2):
        return None
    candidates = {}
    for y, key in enumerate(inv2):
        candidates.setdefault(key, []).append(y)
    class_size = Counter(inv1)
    order = sorted(range(N), key=lambda x: (class_size[inv1[x]], x))

    f = np.full(N, -1, dtype=np.int64)
    used = np.zeros(N, dtype=bool)
    mapped: list[int] = []
    nodes = 0

    def assign(x, y, trail):
        """Map x -> y and propagate; False on conflict."""
        work = [(x, y)]
        while work:
            a, b = work.pop()
            if f[a] >= 0:
                if f[a] != b:
                    return False
                continue
            if used[b] or inv1[a] != inv2[b]:
                return False
            f[a] = b
            used[b] = True
            trail.append(a)
            for c in list(mapped) + [a]:
                fc = f[c]
                work.append((int(S1.sigma[a, c]), int(S2.sigma[b, fc])))
                work.append((int(S1.sigma[c, a]), int(S2.sigma[fc, b])))
            mapped.append(a)
        return True

    def undo(trail):
        for a in reversed(trail):
            used[f[a]] = False
            f[a] = -1
            mapped.pop()

    def search():
        nonlocal nodes
        x = next((p for p in order if f[p] < 0), None)
        if x is None:
            return True
        for y in candidates[inv1[x]]:
            if used[y]:
                continue
            nodes += 1
            if nodes > max_nodes:
                raise CapExceededError('iso_max_nodes', max_nodes)
            logger.trace(f"search: node {nodes}, {len(mapped)} points mapped, trying {x} -> {y}")
            trail = []
            if assign(x, y, trail) and search():
                return True
            undo(trail)
        return False

    if not search():
        logger.debug(f"iso search exhausted after {nodes} nodes")
        return None
    if not np.array_equal(f[S1.sigma], S2.sigma[f[:, None], f[None, :]]):
        raise VerificationError('iso_certificate', message="propagated map is not a homomorphism")
    logger.debug(f"iso found after {nodes} nodes")
    return f


def is_solution_homomorphism(S1: Solution, S2: Solution, f) -> bool:
    f = np.asarray(f, dtype=np.int64)
    return bool(np.array_equal(f[S1.sigma], S2.sigma[f[:, None], f[None, :]]))


def trivial_solution(n: int) -> Solution:
    """The flip r(x, y) = (y, x)."""
    return make_solution(np.tile(np.arange(n), (n, 1)))


def cyclic_solution(n: int) -> Solution:
    """sigma_x = (0 1 ... n-1) for every x."""
    return make_solution(np.tile((np.arange(n) + 1) % n, (n, 1)))


@dataclass
class SolutionReport:
    involutive: bool
    nondegenerate: bool
    braid: bool
    sigma_condition: bool
    indecomposable: bool
    irretractable: bool
    mpl: int | None
    simple: bool | None
    perm_group_order: int

    def lines(self) -> list[str]:
        def fmt(v):
            if isinstance(v, bool):
                return 'true' if v else 'false'
            return str(v)
        return [
            f"involutive: {fmt(self.involutive)}",
            f"nondegenerate: {fmt(self.nondegenerate)}",
            f"braid: {fmt(self.braid)}",
            f"indecomposable: {fmt(self.indecomposable)}",
            f"irretractable: {fmt(self.irretractable)}",
            f"mpl: {'not-multipermutation' if self.mpl is None else self.mpl}",
            f"simple: {'n/a' if self.simple is None else fmt(self.simple)}",
            f"perm_group_order: {self.perm_group_order}",
        ]


def analyze_solution(S: Solution, max_perm_group: int = DEFAULT_MAX_PERM_GROUP) -> SolutionReport:
    """Full predicate report for an already validated solution."""
    sigma_ok = verify_sigma_condition(S)
    if not sigma_ok:
        raise VerificationError('sigma_condition', message="sigma-condition disagrees with braid check")
    G = permutation_group(S, max_perm_group)
    indecomposable, _ = is_indecomposable(S)
    simple = is_simple_solution(S)[0] if S.size > 1 else None
    report = SolutionReport(
        involutive=True, nondegenerate=True, braid=True, sigma_condition=sigma_ok,
        indecomposable=indecomposable, irretractable=is_irretractable(S),
        mpl=multipermutation_level(S), simple=simple, perm_group_order=G.order,
    )
    if simple and S.size > 2 and not indecomposable:
        raise VerificationError('simple_implies_indecomposable', (S.size,))
    if simple and S.size > 2 and not _is_prime(S.size) and not report.irretractable:
        raise VerificationError('simple_implies_irretractable', (S.size,))
    return report


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))
