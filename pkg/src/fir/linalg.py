"""Dense exact linear algebra over prime fields F_p.

Matrices are numpy ``int64`` arrays with every entry reduced into ``[0, p)``.
Subspaces are stored as the non-zero rows of their reduced row-echelon form,
which makes equality of subspaces plain array equality.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

import numpy as np

from fir.exceptions import DimensionMismatch, ModulusMismatch

MAX_MODULUS = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _check_modulus(p: int) -> int:
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    if p >= MAX_MODULUS:
        raise ValueError(f"modulus {p} exceeds {MAX_MODULUS}")
    return p


def _as_array(data, p: int) -> np.ndarray:
    arr = np.array(data, dtype=np.int64)
    if arr.ndim == 1 and arr.size == 0:
        arr = arr.reshape(0, 0)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d array, got shape {arr.shape}")
    return np.mod(arr, p)


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product of two reduced int64 arrays modulo p without overflow."""
    inner = a.shape[-1]
    if inner == 0:
        return np.zeros(a.shape[:-1] + b.shape[-1:], dtype=np.int64)
    if inner * (p - 1) ** 2 < 2**63:
        return np.mod(a @ b, p)
    # large working primes: fall back to Python integers
    out = np.mod(a.astype(object) @ b.astype(object), p)
    return out.astype(np.int64)


class FpMatrix:
    """An immutable matrix over F_p."""

    __slots__ = ("p", "array")

    def __init__(self, data, p: int):
        p = _check_modulus(p)
        arr = data.astype(np.int64) % p if isinstance(data, np.ndarray) else _as_array(data, p)
        if arr.ndim != 2:
            raise DimensionMismatch(f"expected a 2-d array, got shape {arr.shape}")
        arr.setflags(write=False)
        self.p = p
        self.array = arr

    @classmethod
    def _wrap(cls, arr: np.ndarray, p: int) -> "FpMatrix":
        # trusted constructor: arr already reduced int64
        m = object.__new__(cls)
        arr.setflags(write=False)
        m.p = p
        m.array = arr
        return m

    @classmethod
    def identity(cls, n: int, p: int) -> "FpMatrix":
        return cls(np.eye(n, dtype=np.int64), p)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FpMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.array.shape

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.array.ravel())

    def tolist(self) -> list[list[int]]:
        return self.array.tolist()

    def _same_field(self, other: "FpMatrix") -> None:
        if self.p != other.p:
            raise ModulusMismatch(f"moduli differ: {self.p} vs {other.p}")

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        self._same_field(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        return FpMatrix._wrap(matmul_mod(self.array, other.array, self.p), self.p)

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        self._same_field(other)
        return FpMatrix._wrap((self.array + other.array) % self.p, self.p)

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        self._same_field(other)
        return FpMatrix._wrap((self.array - other.array) % self.p, self.p)

    def __neg__(self) -> "FpMatrix":
        return FpMatrix._wrap((-self.array) % self.p, self.p)

    def scale(self, c: int) -> "FpMatrix":
        return FpMatrix._wrap((self.array * (int(c) % self.p)) % self.p, self.p)

    @property
    def T(self) -> "FpMatrix":
        return FpMatrix._wrap(np.ascontiguousarray(self.array.T), self.p)

    def apply(self, v) -> np.ndarray:
        """Matrix times column vector."""
        v = np.asarray(v, dtype=np.int64)
        return matmul_mod(self.array, v, self.p)

    def inverse(self) -> "FpMatrix":
        n = self.rows
        if n != self.cols:
            raise DimensionMismatch("only square matrices are invertible")
        aug = np.concatenate([self.array, np.eye(n, dtype=np.int64)], axis=1)
        red, pivots = _rref(aug, self.p)
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return FpMatrix._wrap(np.ascontiguousarray(red[:, n:]), self.p)

    def __pow__(self, k: int) -> "FpMatrix":
        if k < 0:
            return self.inverse() ** (-k)
        result = FpMatrix.identity(self.rows, self.p)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.array, other.array)

    def __hash__(self) -> int:
        return hash((self.p, self.array.shape, self.array.tobytes()))

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p}, {self.array.tolist()})"


def _rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        column = a[r:, c]
        i = int((column != 0).argmax())
        if not column[i]:
            continue
        i += r
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        col = a[:, c].copy()
        col[r] = 0
        # entries stay below p, so the products fit in int64 for p < 2^31
        a -= col[:, None] * a[r]
        a %= p
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: FpMatrix) -> FpMatrix:
    """Reduced row-echelon form; zero rows are kept at the bottom."""
    red, _ = _rref(m.array, m.p)
    return FpMatrix._wrap(red, m.p)


def rank(m: FpMatrix) -> int:
    return len(_rref(m.array, m.p)[1])


def _kernel_array(a: np.ndarray, p: int) -> np.ndarray:
    cols = a.shape[1]
    red, pivots = _rref(a, p)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-red[i, f]) % p
    return basis


def kernel(m: FpMatrix) -> "FpSubspace":
    """Right null space {x : m x = 0}."""
    return FpSubspace.span(_kernel_array(m.array, m.p), m.p, m.cols)


class FpSubspace:
    """A subspace of F_p^n held by its canonical (RREF) basis."""

    __slots__ = ("p", "ambient_dim", "basis", "_pivots")

    def __init__(self, basis: np.ndarray, p: int, ambient_dim: int, pivots: Sequence[int]):
        # trusted: basis must already be in RREF without zero rows
        basis.setflags(write=False)
        self.p = p
        self.ambient_dim = ambient_dim
        self.basis = basis
        self._pivots = tuple(pivots)

    @classmethod
    def span(cls, vectors, p: int, ambient_dim: int) -> "FpSubspace":
        p = _check_modulus(p)
        arr = np.array(vectors, dtype=np.int64).reshape(-1, ambient_dim) if len(vectors) else np.zeros((0, ambient_dim), dtype=np.int64)
        red, pivots = _rref(arr, p)
        return cls(np.ascontiguousarray(red[: len(pivots)]), p, ambient_dim, pivots)

    @classmethod
    def zero(cls, n: int, p: int) -> "FpSubspace":
        return cls(np.zeros((0, n), dtype=np.int64), _check_modulus(p), n, ())

    @classmethod
    def full(cls, n: int, p: int) -> "FpSubspace":
        return cls(np.eye(n, dtype=np.int64), _check_modulus(p), n, range(n))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def pivots(self) -> tuple[int, ...]:
        return self._pivots

    def reduce(self, v) -> np.ndarray:
        """Remainder of v after eliminating the pivot coordinates."""
        v = np.array(v, dtype=np.int64) % self.p
        for row, c in zip(self.basis, self._pivots):
            if v[c]:
                v = (v - v[c] * row) % self.p
        return v

    def __contains__(self, v) -> bool:
        return not self.reduce(v).any()

    def coordinates(self, v) -> np.ndarray:
        """Coefficients of v in the canonical basis (v must lie in the subspace)."""
        if v not in self:
            raise ValueError("vector is not in the subspace")
        return np.array([int(v[c]) % self.p for c in self._pivots], dtype=np.int64)

    def matrix(self) -> FpMatrix:
        return FpMatrix._wrap(self.basis.copy(), self.p)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpSubspace):
            return NotImplemented
        return (
            self.p == other.p
            and self.ambient_dim == other.ambient_dim
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.ambient_dim, self.basis.tobytes()))

    def __repr__(self) -> str:
        return f"FpSubspace(p={self.p}, n={self.ambient_dim}, basis={self.basis.tolist()})"


def _compatible(u: FpSubspace, w: FpSubspace) -> None:
    if u.p != w.p:
        raise ModulusMismatch(f"moduli differ: {u.p} vs {w.p}")
    if u.ambient_dim != w.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions differ: {u.ambient_dim} vs {w.ambient_dim}")


def subspace_sum(u: FpSubspace, w: FpSubspace) -> FpSubspace:
    _compatible(u, w)
    return FpSubspace.span(np.concatenate([u.basis, w.basis]), u.p, u.ambient_dim)


def annihilator(u: FpSubspace) -> FpSubspace:
    """{x : b . x = 0 for every basis row b}."""
    return FpSubspace.span(_kernel_array(u.basis, u.p), u.p, u.ambient_dim)


def intersection(u: FpSubspace, w: FpSubspace) -> FpSubspace:
    _compatible(u, w)
    constraints = np.concatenate([annihilator(u).basis, annihilator(w).basis])
    return FpSubspace.span(_kernel_array(constraints, u.p), u.p, u.ambient_dim)


def contains(u: FpSubspace, w) -> bool:
    """Whether u contains the vector or subspace w."""
    if isinstance(w, FpSubspace):
        _compatible(u, w)
        return all(row in u for row in w.basis)
    return w in u


def quotient_dim(u: FpSubspace, w: FpSubspace) -> int:
    """dim(u / w); w must be a subspace of u."""
    if not contains(u, w):
        raise ValueError("second subspace is not contained in the first")
    return u.dim - w.dim


def solve_commutant(
    a: Sequence[FpMatrix],
    b: Sequence[FpMatrix],
    *,
    a_dim: int | None = None,
    b_dim: int | None = None,
    p: int | None = None,
) -> tuple[int, list[FpMatrix]]:
    """Solve X a_i = b_i X for all i, X ranging over b_dim x a_dim matrices.

    Returns the dimension of the solution space and a basis of it. The
    keyword arguments are needed only when the sequences are empty.
    """
    if len(a) != len(b):
        raise DimensionMismatch(f"sequence lengths differ: {len(a)} vs {len(b)}")
    moduli = {m.p for m in itertools.chain(a, b)}
    if p is not None:
        moduli.add(p)
    if len(moduli) > 1:
        raise ModulusMismatch(f"mixed moduli {sorted(moduli)}")
    if not moduli:
        raise ValueError("modulus unknown: pass p= when both sequences are empty")
    p = moduli.pop()
    if a_dim is None:
        if not a:
            raise ValueError("pass a_dim= when the sequences are empty")
        a_dim = a[0].rows
    if b_dim is None:
        if not b:
            raise ValueError("pass b_dim= when the sequences are empty")
        b_dim = b[0].rows
    for m in a:
        if m.shape != (a_dim, a_dim):
            raise DimensionMismatch(f"expected {a_dim}x{a_dim}, got {m.shape}")
    for m in b:
        if m.shape != (b_dim, b_dim):
            raise DimensionMismatch(f"expected {b_dim}x{b_dim}, got {m.shape}")

    unknowns = a_dim * b_dim
    if unknowns == 0:
        return 0, []
    # row-major vec: vec(X A) = (I_b kron A^T) vec X,  vec(B X) = (B kron I_a) vec X
    blocks = [
        (np.kron(np.eye(b_dim, dtype=np.int64), ai.array.T) - np.kron(bi.array, np.eye(a_dim, dtype=np.int64))) % p
        for ai, bi in zip(a, b)
    ]
    system = np.concatenate(blocks) if blocks else np.zeros((0, unknowns), dtype=np.int64)
    sol = _kernel_array(system, p)
    sol, _ = _rref(sol, p)
    basis = [FpMatrix._wrap(row.reshape(b_dim, a_dim).copy(), p) for row in sol]
    return len(basis), basis


def iter_vectors(p: int, d: int, *, normalized: bool = False) -> Iterator[np.ndarray]:
    """Non-zero vectors of F_p^d in lexicographic order.

    With ``normalized`` only vectors whose first non-zero entry is 1 are
    produced, one per line through the origin.
    """
    for tup in itertools.product(range(p), repeat=d):
        if not any(tup):
            continue
        if normalized and next(x for x in tup if x) != 1:
            continue
        yield np.array(tup, dtype=np.int64)


def stack(matrices: Iterable[FpMatrix], p: int, cols: int) -> FpMatrix:
    arrays = [m.array for m in matrices]
    if not arrays:
        return FpMatrix.zeros(0, cols, p)
    return FpMatrix._wrap(np.concatenate(arrays), p)
