"""Finite groups as multiplication tables, and subgroup machinery.

Elements are the integers ``0..n-1`` with the identity fixed at 0;
``table[a, b]`` is the index of the product ``a*b``. Everything here is
vectorized over the table with numpy, which keeps the O(n^2) scans cheap
for the desk-scale orders this package targets.
"""

from __future__ import annotations

import math
import os
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np

from fir.exceptions import (
    GroupTableError,
    NoIdentity,
    NoInverse,
    NotASubgroup,
    NotAssociative,
    NotClosed,
    OrderCapExceeded,
    PrimeDoesNotDivideOrder,
)

DEFAULT_ORDER_CAP = 5000
# full n^3 associativity scan below this order, Light's test above it
FULL_ASSOCIATIVITY_CAP = 128


def order_cap(cap: int | None = None) -> int:
    if cap is not None:
        return int(cap)
    env = os.environ.get("FIR_ORDER_CAP")
    return int(env) if env else DEFAULT_ORDER_CAP


def check_order(n: int, cap: int | None = None) -> None:
    limit = order_cap(cap)
    if n > limit:
        raise OrderCapExceeded(f"group order {n} exceeds the order cap {limit}")


def prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class FiniteGroup:
    """A validated finite group given by its Cayley table."""

    def __init__(self, table: np.ndarray, name: str = ""):
        # trusted constructor: use from_cayley for untrusted tables
        table = np.ascontiguousarray(table, dtype=np.int64)
        table.setflags(write=False)
        self.table = table
        self.n = table.shape[0]
        self.name = name
        self.permutations: np.ndarray | None = None  # set by from_permutations
        inverse = np.argmin(table, axis=1)
        inverse.setflags(write=False)
        self.inverse = inverse

    @property
    def order(self) -> int:
        return self.n

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<FiniteGroup{label} of order {self.n}>"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, a: int, k: int) -> int:
        x = 0
        base = a if k >= 0 else self.inv(a)
        for _ in range(abs(k)):
            x = int(self.table[x, base])
        return x

    def conjugates_of(self, x: int) -> np.ndarray:
        """g x g^-1 for every g, indexed by g."""
        return self.table[self.table[:, x], self.inverse]

    @cached_property
    def element_order(self) -> np.ndarray:
        n = self.n
        orders = np.zeros(n, dtype=np.int64)
        idx = np.arange(n)
        pw = idx.copy()
        k = 1
        while (orders == 0).any():
            orders[(pw == 0) & (orders == 0)] = k
            pw = self.table[pw, idx]
            k += 1
        orders.setflags(write=False)
        return orders

    @cached_property
    def exponent(self) -> int:
        return reduce(math.lcm, (int(o) for o in np.unique(self.element_order)), 1)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by decreasing element order."""
        gens: list[int] = []
        mask = np.zeros(self.n, dtype=bool)
        mask[0] = True
        for x in sorted(range(self.n), key=lambda a: (-int(self.element_order[a]), a)):
            if not mask[x]:
                gens.append(x)
                mask = _closure_mask(self, gens)
        return tuple(gens)

    def whole(self) -> "SubgroupSet":
        return SubgroupSet(self, range(self.n), check=False)

    def trivial(self) -> "SubgroupSet":
        return SubgroupSet(self, [0], check=False)


def from_cayley(table, name: str = "") -> FiniteGroup:
    """Validate a Cayley table and relabel so that the identity is 0."""
    t = np.array(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise GroupTableError(f"table must be a non-empty square array, got shape {t.shape}")
    n = t.shape[0]
    bad = np.argwhere((t < 0) | (t >= n))
    if bad.size:
        a, b = (int(x) for x in bad[0])
        raise NotClosed(f"product of {a} and {b} is {int(t[a, b])}, outside 0..{n - 1}")
    if n <= FULL_ASSOCIATIVITY_CAP:
        _check_associative_full(t)
    idx = np.arange(n)
    ids = [e for e in range(n) if np.array_equal(t[e], idx) and np.array_equal(t[:, e], idx)]
    if not ids:
        raise NoIdentity("no two-sided identity element")
    e = ids[0]
    if e != 0:
        relabel = idx.copy()
        relabel[[0, e]] = relabel[[e, 0]]
        # new label of old element x is relabel[x]; relabel is an involution
        t = relabel[t[np.ix_(relabel, relabel)]]
    for a in range(n):
        if not ((t[a] == 0) & (t[:, a] == 0)).any():
            raise NoInverse(f"element {a} has no two-sided inverse")
    if n > FULL_ASSOCIATIVITY_CAP:
        _check_associative_light(t)
    return FiniteGroup(t, name=name)


def _check_associative_full(t: np.ndarray) -> None:
    n = t.shape[0]
    for a in range(n):
        left = t[t[a]]  # (a*b)*c over (b, c)
        right = t[a][t]  # a*(b*c)
        diff = np.argwhere(left != right)
        if diff.size:
            b, c = (int(x) for x in diff[0])
            raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")


def _check_associative_light(t: np.ndarray) -> None:
    # Light's test: checking middle elements from a generating set suffices
    n = t.shape[0]
    mask = np.zeros(n, dtype=bool)
    mask[0] = True
    gens: list[int] = []
    for x in range(n):
        if mask[x]:
            continue
        gens.append(x)
        frontier = np.flatnonzero(mask)
        while frontier.size:
            new = np.unique(t[np.ix_(frontier, gens)])
            new = new[~mask[new]]
            mask[new] = True
            frontier = new
    for b in gens:
        left = t[t[:, b]]  # (a*b)*c over (a, c)
        right = t[:, t[b]]  # a*(b*c)
        diff = np.argwhere(left != right)
        if diff.size:
            a, c = (int(x) for x in diff[0])
            raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")


def parse_cycles(text: str) -> list[list[int]]:
    """Parse cycle notation such as "(1 2 3)(4 5)" into 1-based cycles."""
    text = text.strip()
    cycles = []
    for chunk in text.replace(")", ")\n").split("\n"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise ValueError(f"malformed cycle {chunk!r}")
        body = chunk[1:-1].replace(",", " ").split()
        cycles.append([int(x) for x in body])
    return cycles


def cycles_to_images(cycles: Sequence[Sequence[int]], degree: int) -> list[int]:
    images = list(range(degree))
    seen = set()
    for cyc in cycles:
        for k, point in enumerate(cyc):
            if point < 1 or point > degree:
                raise ValueError(f"point {point} outside 1..{degree}")
            if point in seen:
                raise ValueError(f"point {point} appears twice")
            seen.add(point)
            images[point - 1] = cyc[(k + 1) % len(cyc)] - 1
    return images


def from_permutations(generators: Sequence, name: str = "", cap: int | None = None) -> FiniteGroup:
    """Group generated by permutations.

    Each generator is either a cycle string over 1-based points, e.g.
    ``"(1 2 3)(4 5)"``, or a sequence of 0-based images. The product
    ``a*b`` is composition ``x -> a(b(x))``; elements are numbered in the
    order breadth-first search from the identity discovers them.
    """
    limit = order_cap(cap)
    parsed_cycles = [parse_cycles(g) if isinstance(g, str) else None for g in generators]
    degree = 1
    for g, cyc in zip(generators, parsed_cycles):
        if cyc is None:
            degree = max(degree, len(g))
        else:
            degree = max([degree] + [max(c) for c in cyc if c])
    perms = []
    for g, cyc in zip(generators, parsed_cycles):
        if cyc is None:
            images = list(g) + list(range(len(g), degree))
            if sorted(images) != list(range(degree)):
                raise ValueError(f"{list(g)} is not a permutation")
        else:
            images = cycles_to_images(cyc, degree)
        perms.append(tuple(images))

    identity = tuple(range(degree))
    elements = [identity]
    index = {identity: 0}
    head = 0
    while head < len(elements):
        x = elements[head]
        head += 1
        for g in perms:
            y = tuple(x[i] for i in g)  # x o g
            if y not in index:
                if len(elements) >= limit:
                    raise OrderCapExceeded(f"permutation group order exceeds the order cap {limit}")
                index[y] = len(elements)
                elements.append(y)

    P = np.array(elements, dtype=np.int64)
    n = len(elements)
    if degree <= 15:
        weights = degree ** np.arange(degree, dtype=np.int64)
        codes = P @ weights
        order = np.argsort(codes)
        sorted_codes = codes[order]
        table = np.empty((n, n), dtype=np.int64)
        for b in range(n):
            prod_codes = P[:, P[b]] @ weights
            table[:, b] = order[np.searchsorted(sorted_codes, prod_codes)]
    else:
        table = np.empty((n, n), dtype=np.int64)
        for b in range(n):
            prods = P[:, P[b]]
            table[:, b] = [index[tuple(row)] for row in prods.tolist()]
    G = FiniteGroup(table, name=name)
    P.setflags(write=False)
    G.permutations = P
    return G


class SubgroupSet:
    """A subgroup of a FiniteGroup, held as a sorted member list."""

    __slots__ = ("parent", "members", "mask")

    def __init__(self, parent: FiniteGroup, members: Iterable[int], check: bool = True):
        mem = np.unique(np.fromiter((int(x) for x in members), dtype=np.int64))
        mask = np.zeros(parent.n, dtype=bool)
        mask[mem] = True
        if check:
            if not mask[0]:
                raise NotASubgroup("subset does not contain the identity")
            prods = parent.table[np.ix_(mem, mem)]
            if not mask[prods].all():
                raise NotASubgroup("subset is not closed under multiplication")
        mem.setflags(write=False)
        mask.setflags(write=False)
        self.parent = parent
        self.members = mem
        self.mask = mask

    @property
    def order(self) -> int:
        return int(self.members.size)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[x])

    def __iter__(self):
        return (int(x) for x in self.members)

    def key(self) -> tuple[int, tuple[int, ...]]:
        """Canonical sort key: (order, members)."""
        return self.order, tuple(int(x) for x in self.members)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubgroupSet):
            return NotImplemented
        return self.parent is other.parent and np.array_equal(self.members, other.members)

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members.tobytes()))

    def __le__(self, other: "SubgroupSet") -> bool:
        return bool(other.mask[self.members].all())

    def __lt__(self, other: "SubgroupSet") -> bool:
        return self <= other and self.order < other.order

    def is_trivial(self) -> bool:
        return self.order == 1

    def __repr__(self) -> str:
        shown = self.members.tolist() if self.order <= 12 else f"{self.members[:12].tolist()}..."
        return f"SubgroupSet(order={self.order}, members={shown})"

    def as_group(self) -> tuple[FiniteGroup, np.ndarray]:
        """The subgroup as a standalone group, plus the embedding into the parent."""
        lookup = np.full(self.parent.n, -1, dtype=np.int64)
        lookup[self.members] = np.arange(self.order)
        table = lookup[self.parent.table[np.ix_(self.members, self.members)]]
        return FiniteGroup(table), self.members.copy()


def _closure_mask(G: FiniteGroup, gens: Sequence[int]) -> np.ndarray:
    mask = np.zeros(G.n, dtype=bool)
    mask[0] = True
    gens = [int(g) for g in gens]
    if not gens:
        return mask
    frontier = np.array([0], dtype=np.int64)
    while frontier.size:
        new = np.unique(G.table[np.ix_(frontier, gens)])
        new = new[~mask[new]]
        mask[new] = True
        frontier = new
    return mask


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> SubgroupSet:
    return SubgroupSet(G, np.flatnonzero(_closure_mask(G, list(gens))), check=False)


def join(G: FiniteGroup, subgroups: Iterable[SubgroupSet]) -> SubgroupSet:
    """Subgroup generated by the union of several subgroups."""
    gens: list[int] = []
    for S in subgroups:
        gens.extend(S.members.tolist())
    return subgroup_generated(G, sorted(set(gens)))


def meet(A: SubgroupSet, B: SubgroupSet) -> SubgroupSet:
    return SubgroupSet(A.parent, np.flatnonzero(A.mask & B.mask), check=False)


def is_subgroup(G: FiniteGroup, members: Iterable[int]) -> bool:
    try:
        SubgroupSet(G, members)
    except NotASubgroup:
        return False
    return True


def _conjugation_grid(G: FiniteGroup, xs: np.ndarray) -> np.ndarray:
    # result[g, i] = g * xs[i] * g^-1
    return G.table[G.table[:, xs], G.inverse[:, None]]


def conjugacy_class(G: FiniteGroup, x: int) -> np.ndarray:
    return np.unique(G.conjugates_of(x))


def conjugacy_classes(G: FiniteGroup) -> list[np.ndarray]:
    """Classes in order of their smallest element."""
    seen = np.zeros(G.n, dtype=bool)
    classes = []
    for x in range(G.n):
        if not seen[x]:
            cls = conjugacy_class(G, x)
            seen[cls] = True
            classes.append(cls)
    return classes


def center(G: FiniteGroup) -> SubgroupSet:
    t = G.table
    return SubgroupSet(G, np.flatnonzero((t == t.T).all(axis=1)), check=False)


def normal_closure(G: FiniteGroup, seed: int) -> SubgroupSet:
    return subgroup_generated(G, conjugacy_class(G, seed))


def is_normal(G: FiniteGroup, S: SubgroupSet) -> bool:
    if S.parent is not G:
        raise NotASubgroup("subgroup belongs to a different group")
    return bool(S.mask[_conjugation_grid(G, S.members)].all())


def core(G: FiniteGroup, S: SubgroupSet) -> SubgroupSet:
    """Largest normal subgroup of G inside S (intersection of all conjugates)."""
    if S.parent is not G:
        raise NotASubgroup("subgroup belongs to a different group")
    keep = S.mask[_conjugation_grid(G, S.members)].all(axis=0)
    return SubgroupSet(G, S.members[keep], check=False)


def normalizer(G: FiniteGroup, S: SubgroupSet) -> SubgroupSet:
    keep = S.mask[_conjugation_grid(G, S.members)].all(axis=1)
    return SubgroupSet(G, np.flatnonzero(keep), check=False)


def minimal_normal_subgroups(G: FiniteGroup) -> list[SubgroupSet]:
    """Minimal normal subgroups, sorted by (order, members).

    Every minimal normal subgroup is the normal closure of each of its
    non-identity elements, so the normal closures of class representatives
    form a complete candidate list.
    """
    candidates: dict[bytes, SubgroupSet] = {}
    for cls in conjugacy_classes(G)[1:]:
        N = subgroup_generated(G, cls)
        candidates.setdefault(N.members.tobytes(), N)
    cands = sorted(candidates.values(), key=SubgroupSet.key)
    minimal = [N for N in cands if not any(M < N for M in cands)]
    return minimal


def is_abelian(S: SubgroupSet | FiniteGroup) -> bool:
    if isinstance(S, FiniteGroup):
        S = S.whole()
    sub = S.parent.table[np.ix_(S.members, S.members)]
    return bool((sub == sub.T).all())


def is_cyclic_group(S: SubgroupSet | FiniteGroup) -> bool:
    if isinstance(S, FiniteGroup):
        S = S.whole()
    return bool((S.parent.element_order[S.members] == S.order).any())


def exponent(G: FiniteGroup) -> int:
    return G.exponent


def _is_power_of(k: int, p: int) -> bool:
    while k % p == 0:
        k //= p
    return k == 1


def sylow(G: FiniteGroup, p: int) -> SubgroupSet:
    """One Sylow p-subgroup, grown from a cyclic p-subgroup through normalizers."""
    if p < 2 or G.n % p:
        raise PrimeDoesNotDivideOrder(f"{p} does not divide the group order {G.n}")
    target = 1
    while G.n % (target * p) == 0:
        target *= p
    orders = G.element_order
    p_elements = np.array([x for x in range(G.n) if _is_power_of(int(orders[x]), p)], dtype=np.int64)
    start = int(p_elements[np.argmax(orders[p_elements])])
    P = subgroup_generated(G, [start])
    while P.order < target:
        N = normalizer(G, P)
        extra = next(int(y) for y in p_elements if N.mask[y] and not P.mask[y])
        P = subgroup_generated(G, P.members.tolist() + [extra])
    return P


def commutator_subgroup(G: FiniteGroup, A: SubgroupSet, B: SubgroupSet) -> SubgroupSet:
    t, inv = G.table, G.inverse
    a = A.members[:, None]
    b = B.members[None, :]
    comms = t[t[inv[a], inv[b]], t[a, b]]
    return subgroup_generated(G, np.unique(comms))


def lower_central_series(G: FiniteGroup) -> list[SubgroupSet]:
    series = [G.whole()]
    while True:
        nxt = commutator_subgroup(G, series[-1], G.whole())
        if nxt == series[-1]:
            return series
        series.append(nxt)


def is_nilpotent(G: FiniteGroup) -> bool:
    return lower_central_series(G)[-1].is_trivial()


class GroupHom:
    """A homomorphism given by the image of every source element."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, images: Sequence[int]):
        img = np.array(images, dtype=np.int64)
        if img.shape != (source.n,) or (img < 0).any() or (img >= target.n).any():
            raise ValueError("images must map every source element into the target")
        lhs = img[source.table]
        rhs = target.table[img[:, None], img[None, :]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            a, b = (int(x) for x in bad[0])
            raise ValueError(f"not a homomorphism at ({a}, {b})")
        img.setflags(write=False)
        self.source = source
        self.target = target
        self.images = img

    def kernel(self) -> SubgroupSet:
        return SubgroupSet(self.source, np.flatnonzero(self.images == 0), check=False)

    def image(self) -> SubgroupSet:
        return SubgroupSet(self.target, np.unique(self.images), check=False)

    def is_surjective(self) -> bool:
        return np.unique(self.images).size == self.target.n
