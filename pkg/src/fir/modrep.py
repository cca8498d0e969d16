"""Finite-dimensional modules over group algebras F_p G.

A module is a homomorphism G -> GL_d(p) given on a generating set of G;
matrices act on column vectors. The cyclicity questions asked by the
criteria layer are answered two independent ways here: by exhaustive
spinning, and by the multiplicity formula s*g <= r on the isotypic
decomposition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

import numpy as np

from fir.constructions import close_action
from fir.exceptions import DimensionMismatch, NotCompletelyReducible, SearchCapExceeded
from fir.groups import FiniteGroup
from fir.linalg import (
    FpMatrix,
    FpSubspace,
    _rref,
    annihilator,
    iter_vectors,
    kernel,
    matmul_mod,
    solve_commutant,
    subspace_sum,
)

SEARCH_CAP = 2**16


class FpModule:
    """An F_p G-module of dimension ``dim``.

    ``action`` maps each element of a generating set of ``group`` to its
    matrix. The extension to all of G is computed (and thereby checked to
    be a homomorphism) at construction.
    """

    def __init__(self, group: FiniteGroup, p: int, dim: int, action: Mapping[int, FpMatrix]):
        self.group = group
        self.p = p
        self.dim = dim
        self.action = {int(g): M for g, M in sorted(action.items())}
        self._all = close_action(group, p, dim, self.action)

    @classmethod
    def from_function(cls, group: FiniteGroup, p: int, dim: int, rho) -> "FpModule":
        """Module whose generators act by rho(g); rho must be a homomorphism."""
        return cls(group, p, dim, {g: rho(g) for g in group.generators})

    @property
    def generators(self) -> tuple[int, ...]:
        return tuple(self.action)

    @property
    def generator_matrices(self) -> list[FpMatrix]:
        return list(self.action.values())

    def act(self, g: int) -> FpMatrix:
        return self._all[g]

    @cached_property
    def all_matrices(self) -> np.ndarray:
        """Array of shape (|G|, dim, dim) holding act(g) for every g."""
        if not self._all:
            return np.zeros((0, self.dim, self.dim), dtype=np.int64)
        return np.stack([M.array for M in self._all])

    def __repr__(self) -> str:
        return f"<FpModule dim={self.dim} over F_{self.p} for {self.group!r}>"


def trivial_module(G: FiniteGroup, p: int, dim: int) -> FpModule:
    ident = FpMatrix.identity(dim, p)
    return FpModule(G, p, dim, {g: ident for g in G.generators})


def permutation_module(G: FiniteGroup, p: int) -> FpModule:
    """F_p^d with G permuting coordinates, for a group built from permutations."""
    if G.permutations is None:
        raise ValueError("group carries no permutation representation")
    d = G.permutations.shape[1]

    def rho(g: int) -> FpMatrix:
        m = np.zeros((d, d), dtype=np.int64)
        m[G.permutations[g], np.arange(d)] = 1  # e_i -> e_{g(i)}
        return FpMatrix(m, p)

    return FpModule.from_function(G, p, d, rho)


def change_basis(M: FpModule, P: FpMatrix) -> FpModule:
    """Isomorphic module with action P^-1 act(g) P."""
    Pinv = P.inverse()
    return FpModule(M.group, M.p, M.dim, {g: Pinv @ A @ P for g, A in M.action.items()})


def direct_sum(*modules: FpModule) -> FpModule:
    first = modules[0]
    G, p = first.group, first.p
    dim = sum(M.dim for M in modules)
    action = {}
    for g in G.generators:
        block = np.zeros((dim, dim), dtype=np.int64)
        k = 0
        for M in modules:
            block[k:k + M.dim, k:k + M.dim] = M.act(g).array
            k += M.dim
        action[g] = FpMatrix(block, p)
    return FpModule(G, p, dim, action)


def _check_cap(M: FpModule, cap: int | None) -> None:
    limit = SEARCH_CAP if cap is None else cap
    if M.p ** M.dim > limit:
        raise SearchCapExceeded(f"{M.p}^{M.dim} vectors exceed the search cap {limit}")


def spin(M: FpModule, v) -> FpSubspace:
    """The cyclic submodule generated by v."""
    v = np.asarray(v, dtype=np.int64) % M.p
    if v.shape != (M.dim,):
        raise DimensionMismatch(f"vector of length {v.shape} in a module of dimension {M.dim}")
    p, d = M.p, M.dim
    # row w times images gives the rows (A w)^T for every generator A
    images = np.concatenate([A.array.T for A in M.generator_matrices], axis=1) if M.generators else None
    basis, pivots = _rref(v[None, :], p)
    basis = basis[:len(pivots)]
    while basis.shape[0] and images is not None and len(pivots) < d:
        grown = np.concatenate([basis, matmul_mod(basis, images, p).reshape(-1, d)])
        red, new_pivots = _rref(grown, p)
        if len(new_pivots) == len(pivots):
            break
        basis, pivots = red[:len(new_pivots)], new_pivots
    if len(pivots) == d:
        return FpSubspace.full(d, p)
    return FpSubspace(basis, p, d, pivots)


def is_invariant(M: FpModule, W: FpSubspace) -> bool:
    return all(
        all(((A.array @ row) % M.p) in W for row in W.basis) for A in M.generator_matrices
    )


def submodule(M: FpModule, W: FpSubspace) -> FpModule:
    """The action restricted to an invariant subspace, in W's canonical basis."""
    pivots = list(W.pivots)
    action = {}
    for g, A in M.action.items():
        images = (A.array @ W.basis.T) % M.p  # column j = A w_j
        for j in range(W.dim):
            if images[:, j] not in W:
                raise ValueError("subspace is not invariant")
        action[g] = FpMatrix(images[pivots, :], M.p)
    return FpModule(M.group, M.p, W.dim, action)


def _codes(p: int, d: int, vectors: np.ndarray) -> np.ndarray:
    # base-p integer of each row, first coordinate most significant
    return vectors @ (p ** np.arange(d - 1, -1, -1, dtype=np.int64))


def _mark_span(seen: np.ndarray, W: FpSubspace) -> None:
    """Flag every vector of W in a table indexed by base-p codes."""
    k = W.dim
    coeffs = np.array(list(itertools.product(range(W.p), repeat=k)), dtype=np.int64).reshape(-1, k)
    seen[_codes(W.p, W.ambient_dim, matmul_mod(coeffs, W.basis, W.p))] = True


def is_cyclic_spin(M: FpModule, cap: int | None = None) -> tuple[bool, np.ndarray | None]:
    """Exhaustive search for a generating vector.

    Returns (True, v) with v the lexicographically first generator, or
    (False, None). Only vectors with leading coefficient 1 are tried: every
    scalar multiple of a generator generates, and the normalized one comes
    first in lexicographic order. Vectors inside a proper spin already seen
    are skipped, since they cannot generate either.
    """
    if M.dim == 0:
        return True, np.zeros(0, dtype=np.int64)
    _check_cap(M, cap)
    seen = np.zeros(M.p ** M.dim, dtype=bool)
    for v in iter_vectors(M.p, M.dim, normalized=True):
        if seen[int(_codes(M.p, M.dim, v))]:
            continue
        S = spin(M, v)
        if S.dim == M.dim:
            return True, v
        _mark_span(seen, S)
    return False, None


def is_irreducible(M: FpModule, cap: int | None = None) -> bool:
    if M.dim == 0:
        return False
    _check_cap(M, cap)
    return all(spin(M, v).dim == M.dim for v in iter_vectors(M.p, M.dim, normalized=True))


@dataclass(frozen=True)
class IsotypicComponent:
    irreducible_basis: FpSubspace  # one irreducible submodule W
    r: int  # dim W
    g: int  # dim_F_p End(W)
    s: int  # multiplicity of W
    component: FpSubspace = field(repr=False)  # the isotypic component

    @property
    def cyclic(self) -> bool:
        return self.s * self.g <= self.r


@dataclass(frozen=True)
class IsotypicSummary:
    components: tuple[IsotypicComponent, ...]

    @property
    def dim(self) -> int:
        return sum(c.s * c.r for c in self.components)


def decompose(M: FpModule, cap: int | None = None) -> IsotypicSummary:
    """Isotypic decomposition of a completely reducible module.

    Irreducible submodules are found as minimal-dimensional spins of
    vectors outside the part already accounted for; for each, the
    multiplicity is dim Hom(W, M) / dim End(W).
    """
    if M.dim:
        _check_cap(M, cap)
    p = M.p
    done = FpSubspace.zero(M.dim, p)
    components: list[IsotypicComponent] = []
    while done.dim < M.dim:
        best: FpSubspace | None = None
        for v in iter_vectors(p, M.dim, normalized=True):
            if v in done:
                continue
            S = spin(M, v)
            if best is None or S.dim < best.dim:
                best = S
                if S.dim == 1:
                    break
        W = submodule(M, best)
        if not is_irreducible(W, cap):
            raise NotCompletelyReducible("a minimal cyclic submodule outside the socle part is reducible")
        g, _ = solve_commutant(W.generator_matrices, W.generator_matrices, a_dim=W.dim, b_dim=W.dim, p=p)
        hom, homs = solve_commutant(W.generator_matrices, M.generator_matrices, a_dim=W.dim, b_dim=M.dim, p=p)
        if hom % g:
            raise NotCompletelyReducible(f"dim Hom(W, M) = {hom} is not a multiple of dim End(W) = {g}")
        s = hom // g
        images = [X.array.T for X in homs]  # rows span the image of each X
        comp = FpSubspace.span(np.concatenate(images), p, M.dim)
        if comp.dim != s * W.dim:
            raise NotCompletelyReducible(f"isotypic component has dimension {comp.dim}, expected {s * W.dim}")
        new_done = subspace_sum(done, comp)
        if new_done.dim != done.dim + comp.dim:
            raise NotCompletelyReducible("isotypic components are not independent")
        done = new_done
        components.append(IsotypicComponent(best, W.dim, g, s, comp))
    summary = IsotypicSummary(tuple(components))
    if summary.dim != M.dim:
        raise NotCompletelyReducible("multiplicities do not account for the whole module")
    return summary


def akizuki_cyclic(M: FpModule, cap: int | None = None) -> bool:
    """Cyclicity through the multiplicity bound s*g <= r for every component."""
    return all(c.cyclic for c in decompose(M, cap).components)


def dual_module(M: FpModule) -> FpModule:
    """Contragredient module: g acts by the transpose of act(g^-1)."""
    G = M.group
    return FpModule(G, M.p, M.dim, {g: M.act(G.inv(g)).T for g in M.generators})


def largest_submodule_in_kernel(M: FpModule, functional) -> FpSubspace:
    """{v : functional(act(g) v) = 0 for all g}: the core of the hyperplane ker(functional)."""
    lam = np.asarray(functional, dtype=np.int64) % M.p
    rows = np.einsum("j,gjk->gk", lam, M.all_matrices) % M.p
    return kernel(FpMatrix(rows.reshape(-1, M.dim), M.p))


def weisner_hyperplane_exists(M: FpModule, cap: int | None = None) -> tuple[bool, np.ndarray | None]:
    """Search for a hyperplane containing no non-zero submodule.

    Functionals are tried in lexicographic order with leading coefficient 1;
    the first whose kernel has trivial core is returned. A functional that
    vanishes on a non-zero core found earlier is skipped.
    """
    if M.dim == 0:
        return True, np.zeros(0, dtype=np.int64)
    _check_cap(M, cap)
    seen = np.zeros(M.p ** M.dim, dtype=bool)
    for lam in iter_vectors(M.p, M.dim, normalized=True):
        if seen[int(_codes(M.p, M.dim, lam))]:
            continue
        K = largest_submodule_in_kernel(M, lam)
        if K.dim == 0:
            return True, lam
        _mark_span(seen, annihilator(K))
    return False, None
