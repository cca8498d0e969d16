"""Builders for the concrete groups used throughout the package.

Semidirect products ``V x| H`` with ``V = F_p^d`` number their elements
``h * p**d + v`` where ``v`` is the base-p integer encoding of the vector
(coordinate i carries weight ``p**i``). The identity is therefore 0.
"""

from __future__ import annotations

from functools import reduce
from typing import Mapping

import numpy as np

from fir.exceptions import InvalidAction
from fir.fields import GF
from fir.groups import FiniteGroup, GroupHom, check_order, from_permutations
from fir.linalg import FpMatrix


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    check_order(n)
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, name=f"C{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """G x H with (g, h) numbered g * |H| + h."""
    n, m = G.n, H.n
    check_order(n * m)
    t = G.table[:, None, :, None] * m + H.table[None, :, None, :]
    name = f"{G.name}x{H.name}" if G.name and H.name else ""
    return FiniteGroup(t.reshape(n * m, n * m), name=name)


def vector_digits(p: int, d: int) -> np.ndarray:
    """Row v holds the coordinates of the vector encoded by v."""
    size = p**d
    v = np.arange(size)
    return np.stack([(v // p**i) % p for i in range(d)], axis=1) if d else np.zeros((1, 0), dtype=np.int64)


def encode_vectors(rows: np.ndarray, p: int) -> np.ndarray:
    d = rows.shape[-1]
    return (rows % p) @ (p ** np.arange(d, dtype=np.int64))


def close_action(H: FiniteGroup, p: int, d: int, action: Mapping[int, FpMatrix]) -> list[FpMatrix]:
    """Extend an action given on generators to every element of H.

    Raises InvalidAction if the generator images do not define a
    homomorphism H -> GL_d(p) or do not reach every element.
    """
    ident = FpMatrix.identity(d, p)
    gens = sorted(int(g) for g in action)
    for g, M in action.items():
        if M.p != p or M.shape != (d, d):
            raise InvalidAction(f"action of {g} is not a {d}x{d} matrix over F_{p}")
    acts: list[FpMatrix | None] = [None] * H.n
    acts[0] = ident
    queue = [0]
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        for g in gens:
            y = H.mul(x, g)
            M = acts[x] @ action[g]
            if acts[y] is None:
                acts[y] = M
                queue.append(y)
            elif acts[y] != M:
                raise InvalidAction(f"action is not a homomorphism (conflict at element {y})")
    if len(queue) != H.n:
        raise InvalidAction("acting elements do not generate the group")
    return acts  # type: ignore[return-value]


def semidirect_vector(p: int, d: int, H: FiniteGroup, action: Mapping[int, FpMatrix], name: str = "") -> FiniteGroup:
    """F_p^d x| H with (v, h)(w, k) = (v + h.w, hk)."""
    size = p**d
    n = size * H.n
    check_order(n)
    acts = close_action(H, p, d, action)
    digits = vector_digits(p, d)
    add = encode_vectors(digits[:, None, :] + digits[None, :, :], p)
    # act_perm[h, w] = encoding of h.w
    act_perm = np.stack([encode_vectors(matrix_apply_rows(M, digits), p) for M in acts])
    table = np.empty((n, n), dtype=np.int64)
    for ha in range(H.n):
        moved = add[:, act_perm[ha]]  # moved[v, w] = v + ha.w
        for hb in range(H.n):
            h = H.table[ha, hb]
            table[ha * size:(ha + 1) * size, hb * size:(hb + 1) * size] = h * size + moved
    return FiniteGroup(table, name=name)


def matrix_apply_rows(M: FpMatrix, rows: np.ndarray) -> np.ndarray:
    """Apply M to each row vector (as a column) of rows."""
    return (rows @ M.array.T) % M.p


def block_diagonal(blocks: list[FpMatrix]) -> FpMatrix:
    p = blocks[0].p
    size = sum(b.rows for b in blocks)
    out = np.zeros((size, size), dtype=np.int64)
    k = 0
    for b in blocks:
        out[k:k + b.rows, k:k + b.rows] = b.array
        k += b.rows
    return FpMatrix(out, p)


def affine_scalar_group(d: int, q: int) -> FiniteGroup:
    """G(d, q) = F_q^d x| F_q^*, scalars acting by multiplication.

    F_q^* is the cyclic group on exponents of the smallest primitive
    element, so element ``k * q**d + v`` is the pair (v, w^k).
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    F = GF(q)
    check_order(q**d * (q - 1))
    H = cyclic(q - 1)
    action = {}
    if q > 2:
        action[1] = block_diagonal([F.mult_matrix(F.primitive_element)] * d)
    return semidirect_vector(F.p, d * F.e, H, action, name=f"G({d},{q})")


def affine_line_group(q: int) -> FiniteGroup:
    """G(q) = F_q^+ x| F_q^*."""
    G = affine_scalar_group(1, q)
    G.name = f"G({q})"
    return G


def diagonal_affine_group(d: int, q: int) -> FiniteGroup:
    """V x| T with V = F_q^d and T the full diagonal subgroup of GL(V)."""
    F = GF(q)
    check_order(q**d * (q - 1) ** d)
    T = reduce(direct_product, [cyclic(q - 1) for _ in range(d)])
    mult = F.mult_matrix(F.primitive_element)
    ident = FpMatrix.identity(F.e, F.p)
    action = {}
    if q > 2:
        for i in range(d):
            gen = (q - 1) ** (d - 1 - i)
            action[gen] = block_diagonal([mult if j == i else ident for j in range(d)])
    return semidirect_vector(F.p, d * F.e, T, action, name=f"diag({d},{q})")


def hyperplane_projection(d: int, q: int, functional, source: FiniteGroup | None = None,
                          target: FiniteGroup | None = None) -> GroupHom:
    """Epimorphism G(d,q) -> G(q), (v, c) -> (lambda(v), c), whose kernel is ker(lambda).

    ``functional`` lists d coefficients in F_q (integer-encoded).
    """
    F = GF(q)
    coeffs = [int(c) for c in functional]
    if len(coeffs) != d or not any(coeffs):
        raise ValueError("functional must be a non-zero vector of length d")
    source = source or affine_scalar_group(d, q)
    target = target or affine_line_group(q)
    size = q**d
    images = np.empty(source.n, dtype=np.int64)
    for x in range(source.n):
        k, v = divmod(x, size)
        value = 0
        for i, c in enumerate(coeffs):
            value = F.add(value, F.mul(c, (v // q**i) % q))
        images[x] = k * q + value
    return GroupHom(source, target, images)


def burnside_example() -> FiniteGroup:
    """(C3 x C3) x| C2 with C2 acting by inversion."""
    return semidirect_vector(3, 2, cyclic(2), {1: FpMatrix([[2, 0], [0, 2]], 3)}, name="burnside")


def isaacs_example() -> FiniteGroup:
    """(C2)^4 x| C3 with C3 acting without non-trivial fixed points."""
    c = FpMatrix([[0, 1], [1, 1]], 2)
    return semidirect_vector(2, 4, cyclic(3), {1: block_diagonal([c, c])}, name="isaacs")


def symmetric(n: int) -> FiniteGroup:
    if n <= 1:
        return cyclic(1)
    gens = ["(1 2)"] if n == 2 else ["(" + " ".join(str(i) for i in range(1, n + 1)) + ")", "(1 2)"]
    return from_permutations(gens, name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n <= 2:
        return cyclic(1)
    return from_permutations([f"(1 2 {k})" for k in range(3, n + 1)], name=f"A{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n."""
    if n == 1:
        return cyclic(2)
    if n == 2:
        G = direct_product(cyclic(2), cyclic(2))
        G.name = "D2"
        return G
    rot = "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"
    refl = "".join(f"({i} {n + 1 - i})" for i in range(1, n // 2 + 1))
    return from_permutations([rot, refl], name=f"D{n}")


def quaternion() -> FiniteGroup:
    """Q8 in its regular permutation representation."""
    return from_permutations(["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"], name="Q8")
