from __future__ import annotations

import random

import pytest
import sympy
from hypothesis import given, strategies as st

from hopfological.exactla import prime_field
from hopfological.hmod import direct_sum, random_module, regular, shift, tensor, trivial
from hopfological.hopf import exterior, group_algebra, p_dg, taft
from hopfological.hopfomod import cone, random_chain_map, bmodule_catalog
from hopfological.kzero import CycloQuotientRing, K0Error, k0_class, k0_dual, k0_pairing_basic, k0_ring, k0_triangle_check
from hopfological.modalg import ground, k_times_k, path_algebra_A2, truncated_poly_pdg

q = sympy.Symbol("q")

GRADED = [p_dg(2), p_dg(3), p_dg(5), exterior(1), exterior(2), exterior(3), taft(2), taft(3), taft(4)]


def expected_relation(H):
    n = H.params[0]
    if H.kind == "exterior":
        return sympy.Poly((1 + q) ** n, q)
    return sympy.Poly(sum(q ** k for k in range(n)), q)


@pytest.mark.parametrize("H", GRADED, ids=lambda H: H.name)
def test_relations_and_basic_classes(H):
    R = k0_ring(H)
    assert sympy.Poly(list(reversed(R.relation)), q) == expected_relation(H)
    assert k0_class(regular(H), R).is_zero()
    assert k0_class(trivial(H), R) == 1
    assert k0_class(shift(trivial(H), 1), R) == -1


def test_ring_names_and_degenerate_cases():
    assert k0_ring(p_dg(3)).name == "Z[q,q^-1]/(1+q+q^2)"
    assert k0_ring(p_dg(3, graded=False)).name == "Z/3"
    assert k0_ring(exterior(1)).name == "Z[q]/(1+q)"
    assert k0_ring(exterior(2)).name == "Z[q]/((1+q)^2)"
    assert k0_ring(exterior(0)).name == "0"
    assert k0_ring(taft(3)).name == "Z[q]/(1+q+q^2)"
    assert k0_ring(group_algebra(3)).name == "0"
    assert k0_ring(group_algebra(4, prime_field(2))).name == "Z/4"
    assert k0_class(regular(group_algebra(3))).is_zero()
    with pytest.raises(K0Error):
        CycloQuotientRing([2, 1])
    with pytest.raises(K0Error):
        CycloQuotientRing([1, 2])


@given(a=st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=4),
       b=st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=4))
def test_ring_arithmetic_against_sympy(a, b):
    # oracle: clear denominators with q^21 (= 1 modulo 1 + q + q^2) and reduce in Q[q]
    R = CycloQuotientRing([1, 1, 1])
    rel = sympy.Poly(1 + q + q ** 2, q)

    def poly(d):
        return sympy.Poly(sum(c * q ** (e + 21) for e, c in d.items()) + 0 * q, q)
    x, y = R.element(a), R.element(b)
    got = sympy.Poly(sum(c * q ** k for k, c in enumerate(R.mul(x, y))) + 0 * q, q)
    assert (poly(a) * poly(b)).rem(rel) == got
    assert R.mul(R.pow_q(1), R.pow_q(-1)) == R.one
    assert R.bar(R.bar(x)) == x


def test_k0_ring_modulus():
    R = k0_ring(p_dg(5, graded=False))
    H = p_dg(5, graded=False)
    assert k0_class(direct_sum([trivial(H)] * 7), R) == 2
    assert k0_class(regular(p_dg(5, graded=False)), R).is_zero()


@pytest.mark.parametrize("H", [p_dg(3), exterior(2), taft(3)], ids=lambda H: H.name)
@given(seed=st.integers(0, 10_000))
def test_additivity_and_multiplicativity(H, seed):
    rng = random.Random(seed)
    R = k0_ring(H)
    M = random_module(H, rng, max_dim=3)
    N = random_module(H, rng, max_dim=3)
    assert k0_class(direct_sum([M, N]), R) == k0_class(M, R) + k0_class(N, R)
    assert k0_class(tensor(M, N), R) == k0_class(M, R) * k0_class(N, R)


@pytest.mark.parametrize("H", [p_dg(3), p_dg(5), exterior(1)], ids=lambda H: H.name)
def test_dual_is_bar(H):
    rng = random.Random(11)
    R = k0_ring(H)
    for _ in range(5):
        M = random_module(H, rng, max_dim=4)
        assert k0_class(k0_dual(M), R) == k0_class(M, R).bar()


@pytest.mark.parametrize("A", [truncated_poly_pdg(3), ground(p_dg(3)), path_algebra_A2()], ids=lambda A: A.name)
def test_triangles_are_additive(A):
    rng = random.Random(5)
    mods = bmodule_catalog(A, rng)
    for _ in range(8):
        M, N = rng.choice(mods), rng.choice(mods)
        _, tri = cone(random_chain_map(M, N, rng))
        assert k0_triangle_check(tri)


@pytest.mark.parametrize("A", [path_algebra_A2(), k_times_k(), ground(p_dg(3))], ids=lambda A: A.name)
def test_pairing_is_identity(A):
    P = k0_pairing_basic(A)
    n = len(A.idempotents)
    assert [[int(P[i][j] == (1 if i == j else 0)) for j in range(n)] for i in range(n)] == [[1] * n] * n


def test_pairing_is_sesquilinear():
    A = path_algebra_A2()
    H = A.hopf
    R = k0_ring(H)
    V = trivial(H, 2)
    P = k0_pairing_basic(A, V)
    qv = k0_class(V, R)
    assert P[0][0] == k0_class(k0_dual(V), R) == qv.bar()
    assert P[0][1].is_zero() and P[1][0].is_zero()
    with pytest.raises(K0Error):
        k0_pairing_basic(truncated_poly_pdg(3))
