"""Brute-force oracles and a zoo of small modules shared by the tests.

Everything here avoids the package's row reduction and search code: spans
are enumerated as explicit sets of vectors, normal subgroups as unions of
conjugacy classes, and the module zoo carries hand-derived (r, g) data.
"""

from __future__ import annotations

import itertools
import random

import numpy as np

from fir.constructions import cyclic, dihedral, direct_product, symmetric
from fir.groups import FiniteGroup, conjugacy_classes
from fir.linalg import FpMatrix
from fir.modrep import FpModule, change_basis, direct_sum


# -- vector spaces as explicit sets -----------------------------------------

def span_set(vectors, p: int, n: int) -> frozenset[tuple[int, ...]]:
    """All F_p-combinations of the given vectors."""
    vecs = [np.asarray(v, dtype=np.int64) % p for v in vectors]
    out = set()
    for coeffs in itertools.product(range(p), repeat=len(vecs)):
        acc = np.zeros(n, dtype=np.int64)
        for c, v in zip(coeffs, vecs):
            acc = (acc + c * v) % p
        out.add(tuple(int(x) for x in acc))
    return frozenset(out)


def all_vectors(p: int, n: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(p), repeat=n))


def all_subspaces(p: int, n: int) -> set[frozenset]:
    """Every subspace of F_p^n, grown one vector at a time from {0}."""
    zero = frozenset([(0,) * n])
    seen = {zero}
    frontier = [zero]
    vectors = all_vectors(p, n)
    while frontier:
        nxt = []
        for S in frontier:
            for v in vectors:
                if v in S:
                    continue
                T = frozenset(
                    tuple((s[i] + c * v[i]) % p for i in range(n)) for s in S for c in range(p)
                )
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    return seen


def invariant_under(S: frozenset, mats: list[np.ndarray], p: int) -> bool:
    for A in mats:
        for v in S:
            w = tuple(int(x) for x in (A @ np.array(v)) % p)
            if w not in S:
                return False
    return True


def invariant_subspaces(mats: list[np.ndarray], p: int, n: int) -> list[frozenset]:
    return [S for S in all_subspaces(p, n) if invariant_under(S, mats, p)]


def subspace_set(W) -> frozenset:
    """An FpSubspace as the explicit set of its vectors."""
    return span_set(list(W.basis), W.p, W.ambient_dim)


# -- groups -----------------------------------------------------------------

def normal_subgroups(G: FiniteGroup) -> list[frozenset[int]]:
    """All normal subgroups, as unions of conjugacy classes closed under products."""
    classes = conjugacy_classes(G)
    rest = [c for c in classes if 0 not in c]
    found = []
    for k in range(len(rest) + 1):
        for combo in itertools.combinations(rest, k):
            members = np.concatenate([np.array([0])] + [np.asarray(c) for c in combo])
            if G.n % len(members):
                continue
            mask = np.zeros(G.n, dtype=bool)
            mask[members] = True
            if mask[G.table[np.ix_(members, members)]].all():
                found.append(frozenset(int(x) for x in members))
    return found


def brute_element_orders(G: FiniteGroup) -> list[int]:
    out = []
    for g in range(G.n):
        x, k = g, 1
        while x != 0:
            x = G.mul(x, g)
            k += 1
        out.append(k)
    return out


# -- the module zoo ---------------------------------------------------------
# Each family lists pairwise non-isomorphic irreducible modules of one group
# with their dimension r and endomorphism degree g, derived by hand. Direct
# sums of irreducibles are completely reducible, and such a sum is cyclic
# exactly when every irreducible W occurs at most r/g times.

def _power_rep(A: np.ndarray, p: int, exponent_of):
    return lambda x: FpMatrix(np.linalg.matrix_power(A, exponent_of(x)) % p, p)


def _trivial(G, p):
    return FpModule.from_function(G, p, 1, lambda x: FpMatrix([[1]], p))


def _sign(G, p):
    P = G.permutations

    def parity(x):
        perm, seen, sign = P[x], set(), 1
        for i in range(len(perm)):
            if i in seen:
                continue
            j, length = i, 0
            while j not in seen:
                seen.add(j)
                j = perm[j]
                length += 1
            sign *= (-1) ** (length - 1)
        return sign

    return FpModule.from_function(G, p, 1, lambda x: FpMatrix([[parity(x) % p]], p))


def _sum_zero_perm(G, p, scale=None):
    # action on {x : sum x = 0} in the basis e_i - e_{n}
    P = G.permutations
    n = P.shape[1]

    def rho(x):
        m = np.zeros((n - 1, n - 1), dtype=np.int64)
        for i in range(n - 1):
            # g(e_i - e_n) = f_a - f_b with f_n = 0
            a, b = P[x][i], P[x][n - 1]
            if a < n - 1:
                m[a, i] += 1
            if b < n - 1:
                m[b, i] -= 1
        if scale is not None:
            m = m * scale(x)
        return FpMatrix(m % p, p)

    return FpModule.from_function(G, p, n - 1, rho)


def _companion(coeffs: list[int]) -> np.ndarray:
    # x^d + c_{d-1} x^{d-1} + ... + c_0, coeffs = [c_0, ..., c_{d-1}]
    d = len(coeffs)
    m = np.zeros((d, d), dtype=np.int64)
    m[1:, :-1] = np.eye(d - 1, dtype=np.int64)
    m[:, -1] = [-c for c in coeffs]
    return m


def zoo() -> list[tuple[str, list[tuple[FpModule, int, int]]]]:
    """Families (label, [(module, r, g), ...])."""
    fams = []

    C3 = cyclic(3)
    A3 = _companion([1, 1])  # x^2+x+1 over F_2
    fams.append(("C3/F2", [(_trivial(C3, 2), 1, 1),
                           (FpModule.from_function(C3, 2, 2, _power_rep(A3, 2, int)), 2, 2)]))

    C5 = cyclic(5)
    A5 = _companion([1, 1, 1, 1])
    fams.append(("C5/F2", [(_trivial(C5, 2), 1, 1),
                           (FpModule.from_function(C5, 2, 4, _power_rep(A5, 2, int)), 4, 4)]))

    C7 = cyclic(7)
    fams.append(("C7/F2", [(_trivial(C7, 2), 1, 1),
                           (FpModule.from_function(C7, 2, 3, _power_rep(_companion([1, 1, 0]), 2, int)), 3, 3),
                           (FpModule.from_function(C7, 2, 3, _power_rep(_companion([1, 0, 1]), 2, int)), 3, 3)]))

    C33 = direct_product(cyclic(3), cyclic(3))  # element i*3+j
    fam = [(_trivial(C33, 2), 1, 1)]
    for a, b in [(1, 0), (0, 1), (1, 1), (1, 2)]:
        rep = _power_rep(A3, 2, lambda x, a=a, b=b: (a * (x // 3) + b * (x % 3)) % 3)
        fam.append((FpModule.from_function(C33, 2, 2, rep), 2, 2))
    fams.append(("C3xC3/F2", fam))

    C4 = cyclic(4)
    fams.append(("C4/F3", [(_trivial(C4, 3), 1, 1),
                           (FpModule.from_function(C4, 3, 1, lambda x: FpMatrix([[(-1) ** x % 3]], 3)), 1, 1),
                           (FpModule.from_function(C4, 3, 2, _power_rep(_companion([1, 0]), 3, int)), 2, 2)]))

    V4 = direct_product(cyclic(2), cyclic(2))
    fam = []
    for a, b in [(0, 0), (1, 0), (0, 1), (1, 1)]:
        fam.append((FpModule.from_function(
            V4, 3, 1, lambda x, a=a, b=b: FpMatrix([[(-1) ** (a * (x // 2) + b * (x % 2)) % 3]], 3)), 1, 1))
    fams.append(("C2xC2/F3", fam))

    S3 = symmetric(3)
    fams.append(("S3/F2", [(_trivial(S3, 2), 1, 1), (_sum_zero_perm(S3, 2), 2, 1)]))
    fams.append(("S3/F3", [(_trivial(S3, 3), 1, 1), (_sign(S3, 3), 1, 1)]))

    D4 = dihedral(4)
    pos = {0: (1, 0), 1: (0, 1), 2: (-1, 0), 3: (0, -1)}  # square vertices

    def square(x):
        P = D4.permutations[x]
        cols = [pos[int(P[0])], pos[int(P[1])]]
        return FpMatrix(np.array(cols).T % 3, 3)

    fams.append(("D4/F3", [(_trivial(D4, 3), 1, 1), (_sign(D4, 3), 1, 1),
                           (FpModule.from_function(D4, 3, 2, square), 2, 1)]))

    S4 = symmetric(4)
    sgn = _sign(S4, 3)
    fams.append(("S4/F3", [(_trivial(S4, 3), 1, 1), (sgn, 1, 1),
                           (_sum_zero_perm(S4, 3), 3, 1),
                           (_sum_zero_perm(S4, 3, scale=lambda x: int(sgn.act(x).array[0, 0])), 3, 1)]))
    return fams


def random_invertible(rng: random.Random, n: int, p: int) -> FpMatrix:
    while True:
        m = np.array([[rng.randrange(p) for _ in range(n)] for _ in range(n)], dtype=np.int64)
        if round(np.linalg.det(m)) % p:
            return FpMatrix(m, p)


def generated_modules(max_dim: int = 6, seed: int = 20240601):
    """Completely reducible modules as disguised direct sums of zoo irreducibles.

    Yields (label, module, expected_cyclic) with expected_cyclic computed from
    the hand-derived (r, g) data, independently of any search.
    """
    rng = random.Random(seed)
    for label, fam in zoo():
        for total in range(1, max_dim + 1):
            for combo in itertools.combinations_with_replacement(range(len(fam)), total):
                dim = sum(fam[i][1] for i in combo)
                if dim > max_dim:
                    continue
                counts = {i: combo.count(i) for i in set(combo)}
                expected = all(k * fam[i][2] <= fam[i][1] for i, k in counts.items())
                M = direct_sum(*(fam[i][0] for i in combo)) if len(combo) > 1 else fam[combo[0]][0]
                P = random_invertible(rng, M.dim, M.p)
                yield f"{label}{list(combo)}", change_basis(M, P), expected
