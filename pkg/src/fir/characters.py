"""Exact complex character tables by Dixon's method.

Characters are found as simultaneous eigenvectors of the class
multiplication matrices over F_ell, with ell = 1 (mod exp G). A character
value at g is then stored exactly as its eigenvalue-multiplicity vector
m in Z_{>=0}^e: the value is sum_j m_j * zeta^j, where zeta is the
primitive e-th root of unity that reduces to ``z`` modulo ell. No floating
point is involved anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from fir.exceptions import OracleCapExceeded, OracleInconsistency
from fir.groups import FiniteGroup, SubgroupSet, conjugacy_classes, order_cap, prime_factors
from fir.linalg import _kernel_array, _rref, is_prime, matmul_mod

MAX_CLASSES = 256


@dataclass
class ClassData:
    group: FiniteGroup
    classes: list[np.ndarray]
    class_of: np.ndarray
    inverse_class: np.ndarray
    structure_constants: np.ndarray = field(repr=False)  # a[i, j, k]

    @property
    def sizes(self) -> np.ndarray:
        return np.array([c.size for c in self.classes], dtype=np.int64)

    @property
    def representatives(self) -> np.ndarray:
        return np.array([int(c[0]) for c in self.classes], dtype=np.int64)

    def __len__(self) -> int:
        return len(self.classes)

    def check_counts(self) -> bool:
        """sum_k a_ijk |C_k| = |C_i| |C_j| for every (i, j)."""
        lhs = self.structure_constants @ self.sizes
        return bool((lhs == np.outer(self.sizes, self.sizes)).all())


def class_data(G: FiniteGroup) -> ClassData:
    """Conjugacy classes ordered by (size, smallest element), with structure constants.

    a[i, j, k] counts pairs (x, y) in C_i x C_j with x*y equal to the
    smallest element of C_k.
    """
    classes = sorted(conjugacy_classes(G), key=lambda c: (c.size, int(c[0])))
    r = len(classes)
    class_of = np.empty(G.n, dtype=np.int64)
    for i, c in enumerate(classes):
        class_of[c] = i
    inverse_class = class_of[G.inverse[[int(c[0]) for c in classes]]]
    a = np.zeros((r, r, r), dtype=np.int64)
    everything = np.arange(G.n)
    for k, c in enumerate(classes):
        z = int(c[0])
        ys = G.table[G.inverse, z]  # y = x^-1 z
        np.add.at(a[:, :, k], (class_of[everything], class_of[ys]), 1)
    return ClassData(G, classes, class_of, inverse_class, a)


def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime ell = 1 (mod exponent) with ell > 2*ceil(sqrt(order))."""
    bound = 2 * (math.isqrt(order - 1) + 1)  # 2*ceil(sqrt(order))
    ell = bound + 1
    ell += (1 - ell) % exponent
    while not is_prime(ell):
        ell += exponent
    return ell


def primitive_root(ell: int) -> int:
    factors = prime_factors(ell - 1)
    return next(g for g in range(2, ell) if all(pow(g, (ell - 1) // f, ell) != 1 for f in factors)) if ell > 2 else 1


def hessenberg_charpoly(A: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial of A over F_p, coefficients low -> high."""
    H = np.array(A, dtype=np.int64) % p
    n = H.shape[0]
    for m in range(1, n - 1):
        nz = np.flatnonzero(H[m:, m - 1])
        if nz.size == 0:
            continue
        i = m + int(nz[0])
        if i != m:
            H[[i, m]] = H[[m, i]]
            H[:, [i, m]] = H[:, [m, i]]
        inv = pow(int(H[m, m - 1]), -1, p)
        for i in range(m + 1, n):
            u = int(H[i, m - 1]) * inv % p
            if u:
                H[i] = (H[i] - u * H[m]) % p
                H[:, m] = (H[:, m] + u * H[:, i]) % p
    # Hessenberg recurrence; h(a, b) is 1-indexed
    h = lambda a, b: int(H[a - 1, b - 1])  # noqa: E731
    polys: list[list[int]] = [[1]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        pm = [0] + prev  # X * p_{m-1}
        for k, c in enumerate(prev):
            pm[k] = (pm[k] - h(m, m) * c) % p
        t = 1
        for i in range(1, m):
            t = t * h(m - i + 1, m - i) % p
            coef = t * h(m - i, m) % p
            for k, c in enumerate(polys[m - i - 1]):
                pm[k] = (pm[k] - coef * c) % p
        polys.append(pm)
    return polys[n]


def roots_mod(coeffs: list[int], p: int) -> list[int]:
    xs = np.arange(p, dtype=np.int64)
    vals = np.zeros(p, dtype=np.int64)
    for c in reversed(coeffs):
        vals = (vals * xs + c) % p
    return np.flatnonzero(vals == 0).tolist()


def _split(space: np.ndarray, pivots: list[int], M: np.ndarray, ell: int) -> list[tuple[np.ndarray, list[int]]]:
    """Split a row space into eigenspaces of w -> M w (acting on rows as x M^T)."""
    m = space.shape[0]
    R = matmul_mod(space, np.ascontiguousarray(M.T), ell)[:, pivots]
    lam_list = roots_mod(hessenberg_charpoly(R, ell), ell)
    pieces = []
    for lam in lam_list:
        shifted = (R - lam * np.eye(m, dtype=np.int64)) % ell
        left = _kernel_array(np.ascontiguousarray(shifted.T), ell)
        sub = matmul_mod(left, space, ell)
        red, piv = _rref(sub, ell)
        pieces.append((red[: len(piv)], piv))
    if sum(p[0].shape[0] for p in pieces) != m:
        raise OracleInconsistency("class matrix is not diagonalizable over F_ell")
    return pieces


@dataclass
class CharacterTable:
    group: FiniteGroup
    class_data: ClassData = field(repr=False)
    e: int
    ell: int
    z: int  # element of order e in F_ell standing for zeta
    degrees: list[int]
    multiplicities: np.ndarray = field(repr=False)  # (rows, classes, e)
    values_mod: np.ndarray = field(repr=False)  # (rows, classes)

    def __len__(self) -> int:
        return len(self.degrees)

    @property
    def characters(self) -> np.ndarray:
        return self.multiplicities

    def kernel_classes(self, row: int) -> list[int]:
        return np.flatnonzero(self.multiplicities[row, :, 0] == self.degrees[row]).tolist()

    @cached_property
    def kernel_orders(self) -> list[int]:
        sizes = self.class_data.sizes
        return [int(sizes[self.kernel_classes(i)].sum()) for i in range(len(self))]

    def value_text(self, row: int, cls: int) -> str:
        terms = []
        for j, m in enumerate(self.multiplicities[row, cls]):
            if m:
                base = "1" if j == 0 else ("z" if j == 1 else f"z^{j}")
                terms.append(base if m == 1 else (str(m) if j == 0 else f"{m}*{base}"))
        return "+".join(terms) if terms else "0"


def _multiplicity_vectors(values: np.ndarray, power_classes: np.ndarray, e: int, ell: int, z: int) -> np.ndarray:
    # m_j = e^-1 * sum_t chi(x^t) z^(-jt)
    z_inv = pow(z, -1, ell)
    exps = (np.outer(np.arange(e), np.arange(e)) % e)
    zpow = np.array([pow(z_inv, k, ell) for k in range(e)], dtype=np.int64)
    Z = zpow[exps]
    e_inv = pow(e, -1, ell)
    rows, r = values.shape
    out = np.zeros((rows, r, e), dtype=np.int64)
    for k in range(r):
        samples = values[:, power_classes[k]]  # chi(x^t) over (row, t)
        out[:, k, :] = matmul_mod(samples, np.ascontiguousarray(Z.T), ell) * e_inv % ell
    return out


def dixon_table(G: FiniteGroup) -> CharacterTable:
    """The exact character table of G, rows sorted by degree.

    Rows of equal degree are ordered by their multiplicity vectors in
    decreasing lexicographic order, which puts the trivial character first.
    """
    n = G.n
    if n > order_cap():
        raise OracleCapExceeded(f"group order {n} exceeds the order cap {order_cap()}")
    cd = class_data(G)
    r = len(cd)
    if r > MAX_CLASSES:
        raise OracleCapExceeded(f"{r} conjugacy classes exceed the oracle limit {MAX_CLASSES}")
    e = G.exponent
    ell = dixon_prime(n, e)
    z = pow(primitive_root(ell), (ell - 1) // e, ell)
    a = cd.structure_constants % ell

    spaces = [(np.eye(r, dtype=np.int64), list(range(r)))]
    for j in range(r):
        if all(s.shape[0] == 1 for s, _ in spaces):
            break
        Mj = np.ascontiguousarray(a[:, j, :])
        nxt = []
        for s, piv in spaces:
            nxt.extend([(s, piv)] if s.shape[0] == 1 else _split(s, piv, Mj, ell))
        spaces = nxt
    if len(spaces) != r or any(s.shape[0] != 1 for s, _ in spaces):
        raise OracleInconsistency("class matrices failed to separate the characters")

    sizes = cd.sizes
    inv_sizes = np.array([pow(int(s), -1, ell) for s in sizes], dtype=np.int64)
    rows = []
    for s, _ in spaces:
        w = s[0]
        if w[0] != 1:
            raise OracleInconsistency("central character does not take 1 on the identity class")
        norm = int((w * w[cd.inverse_class] % ell * inv_sizes % ell).sum() % ell)
        d2 = n * pow(norm, -1, ell) % ell
        d = next((k for k in range(1, math.isqrt(n) + 1) if k * k % ell == d2), None)
        if d is None:
            raise OracleInconsistency("character degree could not be recovered")
        chi = d * w % ell * inv_sizes % ell
        rows.append((d, chi))

    values = np.array([chi for _, chi in rows], dtype=np.int64)
    degrees = [d for d, _ in rows]

    reps = cd.representatives
    power_classes = np.zeros((r, e), dtype=np.int64)
    for k, x in enumerate(reps):
        y = 0
        for t in range(e):
            power_classes[k, t] = cd.class_of[y]
            y = G.table[y, x]
    mult = _multiplicity_vectors(values, power_classes, e, ell, z)
    deg_arr = np.array(degrees, dtype=np.int64)
    if (mult > deg_arr[:, None, None]).any() or (mult.sum(axis=2) != deg_arr[:, None]).any():
        raise OracleInconsistency("eigenvalue multiplicities are not consistent with the degrees")

    order = sorted(range(r), key=lambda i: (degrees[i], tuple(-int(x) for x in mult[i].ravel())))
    return CharacterTable(
        group=G,
        class_data=cd,
        e=e,
        ell=ell,
        z=z,
        degrees=[degrees[i] for i in order],
        multiplicities=mult[order],
        values_mod=values[order],
    )


def kernel_of(row: int, table: CharacterTable, G: FiniteGroup | None = None) -> SubgroupSet:
    """{g : every eigenvalue of the representation at g equals 1}."""
    G = G or table.group
    members = np.concatenate([table.class_data.classes[k] for k in table.kernel_classes(row)])
    return SubgroupSet(G, members, check=False)


def faithful_irreducible_exists(G: FiniteGroup, table: CharacterTable | None = None) -> tuple[bool, int | None]:
    """Whether some irreducible character has trivial kernel, and the first such row."""
    table = table or dixon_table(G)
    for i, k in enumerate(table.kernel_orders):
        if k == 1:
            return True, i
    return False, None


def orthogonality_holds(table: CharacterTable) -> bool:
    """sum_k |C_k| chi(C_k) psi(C_k^-1) = delta * |G| modulo ell, for all row pairs."""
    cd = table.class_data
    v = table.values_mod
    gram = matmul_mod(v * cd.sizes % table.ell, np.ascontiguousarray(v[:, cd.inverse_class].T), table.ell)
    expected = (np.eye(len(table), dtype=np.int64) * table.group.n) % table.ell
    return bool((gram == expected).all())

