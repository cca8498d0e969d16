"""Finite fields F_q, q = p^e, as polynomial quotients of F_p[x].

An element is encoded as the integer sum(c_k * p**k) of its coefficient
vector (c_0, ..., c_{e-1}) in the power basis 1, x, ..., x^{e-1}.
"""

from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np

from fir.exceptions import NotPrimePower
from fir.linalg import FpMatrix, is_prime


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p**e, or raise NotPrimePower."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = next(f for f in range(2, q + 1) if q % f == 0)
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1 or not is_prime(p):
        raise NotPrimePower(f"{q} is not a prime power")
    return p, e


def _polymod(a: list[int], f: list[int], p: int) -> list[int]:
    # coefficients low -> high; f monic
    a = [x % p for x in a]
    df = len(f) - 1
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i]
        if c:
            for k in range(df + 1):
                a[i - df + k] = (a[i - df + k] - c * f[k]) % p
    return (a[:df] + [0] * df)[:df]


def _monic_polys(p: int, degree: int):
    # lexicographic on (c_{deg-1}, ..., c_0)
    for high_to_low in itertools.product(range(p), repeat=degree):
        yield list(reversed(high_to_low)) + [1]


def is_irreducible(f: list[int], p: int) -> bool:
    deg = len(f) - 1
    if deg <= 0:
        return False
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(p, d):
            if not any(_polymod(f, g, p)):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> list[int]:
    """Lexicographically smallest monic irreducible polynomial of degree e.

    Polynomials x^e + c_{e-1} x^{e-1} + ... + c_0 are compared by the tuple
    (c_{e-1}, ..., c_0). Returned as coefficients low -> high.
    """
    for f in _monic_polys(p, e):
        if is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class GF:
    def __init__(self, q: int):
        self.p, self.e = prime_power(q)
        self.q = q
        self.modulus = smallest_irreducible(self.p, self.e)

    def to_vec(self, a: int) -> list[int]:
        return [(a // self.p**k) % self.p for k in range(self.e)]

    def from_vec(self, v) -> int:
        return sum((int(c) % self.p) * self.p**k for k, c in enumerate(v))

    def add(self, a: int, b: int) -> int:
        return self.from_vec([x + y for x, y in zip(self.to_vec(a), self.to_vec(b))])

    def neg(self, a: int) -> int:
        return self.from_vec([-x for x in self.to_vec(a)])

    @cached_property
    def _mul_table(self) -> np.ndarray:
        q, p, e = self.q, self.p, self.e
        table = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            va = self.to_vec(a)
            for b in range(a, q):
                vb = self.to_vec(b)
                prod = [0] * (2 * e - 1)
                for i, x in enumerate(va):
                    for j, y in enumerate(vb):
                        prod[i + j] += x * y
                table[a, b] = table[b, a] = self.from_vec(_polymod(prod, self.modulus, p))
        return table

    def mul(self, a: int, b: int) -> int:
        return int(self._mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(np.flatnonzero(self._mul_table[a] == 1)[0])

    def multiplicative_order(self, a: int) -> int:
        x, k = a, 1
        while x != 1:
            x = self.mul(x, a)
            k += 1
        return k

    @cached_property
    def primitive_element(self) -> int:
        """Smallest encoded element generating F_q^*."""
        if self.q == 2:
            return 1
        return next(a for a in range(2, self.q) if self.multiplicative_order(a) == self.q - 1)

    def mult_matrix(self, a: int) -> FpMatrix:
        """Matrix of x -> a*x on F_q viewed as F_p^e (column k = a * x^k)."""
        cols = [self.to_vec(self.mul(a, self.p**k)) for k in range(self.e)]
        return FpMatrix(np.array(cols, dtype=np.int64).T.reshape(self.e, self.e), self.p)
