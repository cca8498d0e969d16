"""The socle of a finite group and its abelian p-parts as F_p G-modules."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from fir.exceptions import AbelianMinimalNotElementary, CarrierNotNormal
from fir.groups import (
    FiniteGroup,
    SubgroupSet,
    is_abelian,
    join,
    meet,
    minimal_normal_subgroups,
    subgroup_generated,
)
from fir.linalg import FpMatrix
from fir.modrep import FpModule


@dataclass
class TpModule:
    """The p-part of the abelian socle, with coordinates and conjugation action.

    ``coords`` maps each carrier element to its coordinate tuple with
    respect to ``basis_elements``; the action matrix of g has as column i
    the coordinates of g b_i g^-1.
    """

    p: int
    carrier: SubgroupSet
    basis_elements: tuple[int, ...]
    coords: dict[int, tuple[int, ...]] = field(repr=False)
    module: FpModule | None = field(default=None, repr=False)
    summands: tuple[SubgroupSet, ...] = field(default=(), repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis_elements)

    def coordinates(self, x: int) -> np.ndarray:
        return np.array(self.coords[int(x)], dtype=np.int64)

    def element(self, v) -> int:
        G = self.carrier.parent
        x = 0
        for b, c in zip(self.basis_elements, v):
            x = G.mul(x, G.power(b, int(c) % self.p))
        return x


@dataclass
class SocleReport:
    minimal_normals: list[SubgroupSet]
    sr: SubgroupSet
    t_parts: dict[int, TpModule]
    primes: list[int]
    socle: SubgroupSet

    @property
    def abelian_part(self) -> SubgroupSet:
        """T(G), the product of all T(G)_p."""
        G = self.socle.parent
        return join(G, [tp.carrier for tp in self.t_parts.values()]) if self.t_parts else G.trivial()


def _prime_of(N: SubgroupSet) -> int:
    G = N.parent
    orders = np.unique(G.element_order[N.members])
    orders = orders[orders != 1]
    if orders.size != 1:
        raise AbelianMinimalNotElementary(f"abelian minimal normal subgroup with element orders {orders.tolist()}")
    p = int(orders[0])
    k = N.order
    while k % p == 0:
        k //= p
    if k != 1:
        raise AbelianMinimalNotElementary(f"order {N.order} is not a power of {p}")
    return p


def _coordinate_map(G: FiniteGroup, p: int, basis: list[int]) -> dict[int, tuple[int, ...]]:
    coords: dict[int, tuple[int, ...]] = {0: ()}
    for b in basis:
        powers = [G.power(b, c) for c in range(p)]
        coords = {G.mul(x, powers[c]): v + (c,) for x, v in coords.items() for c in range(p)}
    return coords


def _conjugation_action(G: FiniteGroup, p: int, basis: tuple[int, ...], coords, gens) -> dict[int, FpMatrix]:
    d = len(basis)
    action = {}
    for g in gens:
        cols = []
        for b in basis:
            y = G.mul(G.mul(g, b), G.inv(g))
            if y not in coords:
                raise CarrierNotNormal(f"conjugate of {b} by {g} leaves the carrier")
            cols.append(coords[y])
        action[g] = FpMatrix(np.array(cols, dtype=np.int64).T.reshape(d, d), p)
    return action


def action_matrices(tp: TpModule, G: FiniteGroup) -> FpModule:
    """The conjugation module on T(G)_p, given on G's generating set."""
    action = _conjugation_action(G, tp.p, tp.basis_elements, tp.coords, G.generators)
    return FpModule(G, tp.p, tp.dim, action)


def socle_report(G: FiniteGroup) -> SocleReport:
    """Decompose Soc(G) into its non-abelian part and abelian p-parts.

    Within each prime the abelian minimal normal subgroups are taken in
    canonical order and adjoined greedily whenever they meet the product so
    far trivially; complete reducibility makes that product the whole
    p-part.
    """
    minimal = minimal_normal_subgroups(G)
    nonabelian = [N for N in minimal if not is_abelian(N)]
    by_prime: dict[int, list[SubgroupSet]] = {}
    for N in minimal:
        if is_abelian(N):
            by_prime.setdefault(_prime_of(N), []).append(N)

    t_parts: dict[int, TpModule] = {}
    for p in sorted(by_prime):
        carrier = join(G, by_prime[p])
        current = G.trivial()
        chosen: list[SubgroupSet] = []
        basis: list[int] = []
        for N in by_prime[p]:
            if not meet(N, current).is_trivial():
                continue
            chosen.append(N)
            for x in N.members[1:]:
                x = int(x)
                if x not in current:
                    basis.append(x)
                    current = subgroup_generated(G, basis)
        if current != carrier:
            raise AssertionError(f"greedy direct product does not reach T(G)_{p}")
        coords = _coordinate_map(G, p, basis)
        if len(coords) != carrier.order:
            raise AbelianMinimalNotElementary(f"basis of T(G)_{p} is not independent")
        tp = TpModule(p, carrier, tuple(basis), coords, summands=tuple(chosen))
        tp.module = action_matrices(tp, G)
        t_parts[p] = tp

    sr = join(G, nonabelian) if nonabelian else G.trivial()
    socle = join(G, minimal) if minimal else G.trivial()
    return SocleReport(minimal, sr, t_parts, sorted(t_parts), socle)
