from __future__ import annotations

import itertools
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fir.constructions import (
    affine_line_group,
    affine_scalar_group,
    alternating,
    burnside_example,
    cyclic,
    diagonal_affine_group,
    dihedral,
    direct_product,
    hyperplane_projection,
    isaacs_example,
    quaternion,
    semidirect_vector,
    symmetric,
)
from fir.exceptions import (
    InvalidAction,
    NoIdentity,
    NoInverse,
    NotASubgroup,
    NotAssociative,
    NotClosed,
    NotPrimePower,
    OrderCapExceeded,
    PrimeDoesNotDivideOrder,
)
from fir.fields import GF, smallest_irreducible
from fir.groups import (
    GroupHom,
    SubgroupSet,
    center,
    conjugacy_classes,
    core,
    from_cayley,
    from_permutations,
    is_abelian,
    is_cyclic_group,
    is_nilpotent,
    is_normal,
    lower_central_series,
    minimal_normal_subgroups,
    normal_closure,
    normalizer,
    parse_cycles,
    subgroup_generated,
    sylow,
)
from fir.linalg import FpMatrix
from oracles import brute_element_orders, normal_subgroups

SMALL_GROUPS = {
    "C6": lambda: cyclic(6),
    "C12": lambda: cyclic(12),
    "C2xC2": lambda: direct_product(cyclic(2), cyclic(2)),
    "C3xC3": lambda: direct_product(cyclic(3), cyclic(3)),
    "S3": lambda: symmetric(3),
    "S4": lambda: symmetric(4),
    "A4": lambda: alternating(4),
    "D4": lambda: dihedral(4),
    "D5": lambda: dihedral(5),
    "D6": lambda: dihedral(6),
    "Q8": quaternion,
    "burnside": burnside_example,
    "isaacs": isaacs_example,
    "G(1,5)": lambda: affine_line_group(5),
    "G(2,2)": lambda: affine_scalar_group(2, 2),
    "diag(2,3)": lambda: diagonal_affine_group(2, 3),
    "C2xS3": lambda: direct_product(cyclic(2), symmetric(3)),
    "Q8xC3": lambda: direct_product(quaternion(), cyclic(3)),
}


@pytest.fixture(scope="module", params=sorted(SMALL_GROUPS))
def small(request):
    G = SMALL_GROUPS[request.param]()
    return G, normal_subgroups(G)


# -- construction from tables -------------------------------------------------

def test_trivial_table():
    G = from_cayley([[0]])
    assert G.order == 1
    assert G.element_order.tolist() == [1]


def test_c2_table():
    G = from_cayley([[0, 1], [1, 0]])
    assert G.order == 2
    assert G.element_order.tolist() == [1, 2]


def test_identity_relabelled_to_zero():
    G = from_cayley([[1, 0], [0, 1]])  # identity is element 1
    assert G.table.tolist() == [[0, 1], [1, 0]]


def test_nonassociative_latin_square():
    square = [[(2 * a + 2 * b) % 3 for b in range(3)] for a in range(3)]
    assert all(sorted(row) == [0, 1, 2] for row in square)
    with pytest.raises(NotAssociative):
        from_cayley(square)


def test_table_errors():
    with pytest.raises(NotClosed):
        from_cayley([[0, 5], [1, 0]])
    with pytest.raises(NoIdentity):
        from_cayley([[0, 0], [0, 0]])
    with pytest.raises(NoInverse):
        from_cayley([[0, 1], [1, 1]])  # max on {0, 1}


def test_light_test_on_large_tables():
    n = 130
    idx = np.arange(n)
    t = (idx[:, None] + idx[None, :]) % n
    assert from_cayley(t).order == n
    t[5, 7], t[5, 8] = t[5, 8], t[5, 7]
    with pytest.raises(NotAssociative):
        from_cayley(t)


def test_cayley_roundtrip_of_builders():
    for make in (burnside_example, quaternion, lambda: symmetric(4)):
        G = make()
        H = from_cayley(G.table)
        assert np.array_equal(H.table, G.table)


# -- permutations ---------------------------------------------------------------

def test_cycle_parsing():
    assert parse_cycles("(1 2 3)(4 5)") == [[1, 2, 3], [4, 5]]
    with pytest.raises(ValueError):
        parse_cycles("(1 2")
    with pytest.raises(ValueError):
        from_permutations(["(1 2)(2 3)"])


def test_permutation_groups():
    C3 = from_permutations(["(1 2 3)"])
    assert C3.order == 3 and is_cyclic_group(C3)
    S3 = from_permutations(["(1 2 3)", "(1 2)"])
    assert S3.order == 6 and not is_abelian(S3)


def test_d5_involutions():
    D5 = from_permutations(["(1 2 3 4 5)", "(2 5)(3 4)"])
    assert D5.order == 10
    assert sum(D5.mul(g, g) == 0 for g in range(10)) == 6


def test_zero_based_image_lists():
    G = from_permutations([[1, 2, 0], [1, 0, 2]])
    assert G.order == 6


def test_order_cap(monkeypatch):
    with pytest.raises(OrderCapExceeded):
        from_permutations(["(1 2 3 4 5)", "(1 2)"], cap=50)
    monkeypatch.setenv("FIR_ORDER_CAP", "10")
    with pytest.raises(OrderCapExceeded):
        cyclic(11)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.permutations(range(5)), min_size=1, max_size=3))
def test_element_orders_and_lagrange(perms):
    G = from_permutations([list(p) for p in perms])
    assert G.element_order.tolist() == brute_element_orders(G)
    assert 120 % G.order == 0
    for S in [center(G), *minimal_normal_subgroups(G), *(normal_closure(G, g) for g in G.generators)]:
        assert G.order % S.order == 0
        assert is_normal(G, S)
    assert G.order % G.exponent == 0


# -- builders ---------------------------------------------------------------------

@pytest.mark.parametrize("d,q,order", [(1, 3, 6), (2, 3, 18), (1, 4, 12), (2, 4, 48), (1, 5, 20), (3, 2, 8)])
def test_affine_orders(d, q, order):
    assert affine_scalar_group(d, q).order == order == q**d * (q - 1)


def test_named_orders():
    assert burnside_example().order == 18
    assert isaacs_example().order == 48
    assert quaternion().order == 8
    assert alternating(5).order == 60
    assert diagonal_affine_group(2, 3).order == 36


def test_product_of_coprime_cyclics_is_cyclic():
    G = direct_product(cyclic(2), cyclic(3))
    assert G.order == 6 and is_cyclic_group(G)
    assert 6 in G.element_order.tolist()


def test_semidirect_rejects_bad_action():
    # an order-3 matrix cannot represent the generator of C2
    with pytest.raises(InvalidAction):
        semidirect_vector(2, 2, cyclic(2), {1: FpMatrix([[0, 1], [1, 1]], 2)})


def test_fields():
    assert smallest_irreducible(2, 2) == [1, 1, 1]
    assert smallest_irreducible(3, 2) == [1, 0, 1]
    assert smallest_irreducible(2, 3) == [1, 1, 0, 1]
    for q in (4, 8, 9):
        F = GF(q)
        assert F.multiplicative_order(F.primitive_element) == q - 1
        for a, b, c in itertools.product(range(q), repeat=3):
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        for a in range(1, q):
            assert F.mul(a, F.inv(a)) == 1
    with pytest.raises(NotPrimePower):
        GF(6)


# -- centers, cores, normal subgroups --------------------------------------------

def test_center_examples():
    C7 = cyclic(7)
    assert center(C7) == C7.whole()
    assert center(quaternion()).order == 2
    assert center(affine_scalar_group(2, 3)).is_trivial()
    assert center(symmetric(3)).is_trivial()


@pytest.mark.parametrize("d,q", [(1, 3), (2, 3), (1, 4), (2, 4), (1, 5), (2, 5), (3, 3)])
def test_affine_groups_centerless_for_q_above_two(d, q):
    assert center(affine_scalar_group(d, q)).is_trivial()


def test_center_matches_commuting_pairs():
    G = quaternion()
    brute = [z for z in range(G.n) if all(G.mul(z, g) == G.mul(g, z) for g in range(G.n))]
    assert center(G).members.tolist() == brute


def test_core_examples():
    S3 = symmetric(3)
    assert core(S3, S3.whole()) == S3.whole()
    P = sylow(S3, 2)
    assert P.order == 2 and not is_normal(S3, P)
    assert core(S3, P).is_trivial()


def test_burnside_lines_have_nontrivial_core():
    G = burnside_example()
    V = SubgroupSet(G, range(9))  # translations are the indices 0..8
    assert is_normal(G, V)
    lines = {subgroup_generated(G, [v]) for v in range(1, 9)}
    assert len(lines) == 4
    for L in lines:
        assert L.order == 3
        assert is_normal(G, L)
        assert core(G, L) == L


def test_minimal_normal_examples():
    assert sorted(N.order for N in minimal_normal_subgroups(cyclic(6))) == [2, 3]
    mins = minimal_normal_subgroups(burnside_example())
    assert [N.order for N in mins] == [3, 3, 3, 3]
    (V4,) = minimal_normal_subgroups(symmetric(4))
    assert V4.order == 4 and not is_cyclic_group(V4)


def test_minimal_normals_against_enumeration(small):
    G, normals = small
    nontrivial = [N for N in normals if len(N) > 1]
    expected = {N for N in nontrivial if not any(M < N for M in nontrivial)}
    got = {frozenset(N) for N in minimal_normal_subgroups(G)}
    assert got == expected


def test_normal_closure_against_enumeration(small):
    G, normals = small
    for g in range(G.n):
        N = normal_closure(G, g)
        assert is_normal(G, N) and g in N
        assert frozenset(N) == min((M for M in normals if g in M), key=len)
        assert all(frozenset(N) <= M for M in normals if g in M)


def test_core_against_enumeration(small):
    G, normals = small
    subgroups = {subgroup_generated(G, [a, b]) for a in range(G.n) for b in range(0, G.n, 3)}
    for S in subgroups:
        K = core(G, S)
        assert is_normal(G, K) and K <= S
        assert frozenset(K) == max((M for M in normals if M <= frozenset(S)), key=len)
        assert G.order % S.order == 0


def test_normalizer_contains_subgroup(small):
    G, _ = small
    for x in range(G.n):
        S = subgroup_generated(G, [x])
        N = normalizer(G, S)
        assert S <= N and G.order % N.order == 0
        assert is_normal(G, S) == (N.order == G.order)


def test_class_equation(small):
    G, _ = small
    classes = conjugacy_classes(G)
    assert sum(len(c) for c in classes) == G.n
    assert sorted(np.concatenate(classes).tolist()) == list(range(G.n))
    assert all(G.n % len(c) == 0 for c in classes)


def test_not_a_subgroup():
    with pytest.raises(NotASubgroup):
        SubgroupSet(symmetric(3), [0, 1, 2, 4])


# -- Sylow, nilpotency ----------------------------------------------------------

def test_sylow_examples():
    assert sylow(cyclic(12), 2).order == 4
    P = sylow(symmetric(4), 2)
    assert P.order == 8
    assert sum(symmetric(4).mul(g, g) == 0 for g in P) == 6
    with pytest.raises(PrimeDoesNotDivideOrder):
        sylow(cyclic(9), 2)


def test_sylow_orders(small):
    G, _ = small
    for p in {2, 3, 5} & {p for p in range(2, 6) if G.n % p == 0}:
        P = sylow(G, p)
        k = G.n
        while k % p == 0:
            k //= p
        assert P.order == G.n // k


def test_nilpotency():
    assert not is_nilpotent(symmetric(3))
    assert is_nilpotent(quaternion())
    assert is_nilpotent(cyclic(12))
    assert is_nilpotent(direct_product(quaternion(), cyclic(3)))
    assert not is_nilpotent(alternating(4))
    assert [S.order for S in lower_central_series(symmetric(3))] == [6, 3]


def test_exponent_and_cyclicity():
    assert cyclic(12).exponent == 12
    assert direct_product(cyclic(2), cyclic(2)).exponent == 2
    assert symmetric(4).exponent == 12
    assert not is_cyclic_group(direct_product(cyclic(2), cyclic(2)))


# -- homomorphisms ------------------------------------------------------------------

def test_hyperplane_projection():
    hom = hyperplane_projection(2, 3, [1, 0])
    assert hom.is_surjective()
    K = hom.kernel()
    assert K.order == 3
    assert is_normal(hom.source, K)


def test_group_hom_validation():
    G = cyclic(4)
    GroupHom(G, cyclic(2), [0, 1, 0, 1])
    with pytest.raises(ValueError):
        GroupHom(G, cyclic(2), [0, 1, 1, 0])


def test_subgroup_as_group():
    G = symmetric(4)
    H, emb = sylow(G, 2).as_group()
    assert H.order == 8
    assert Counter(H.element_order.tolist()) == Counter(G.element_order[emb].tolist())
