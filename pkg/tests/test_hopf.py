from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from hopfological.exactla import Mat, prime_field, rank, vstack
from hopfological.hopf import (
    HopfError, exterior, group_algebra, left_integral, p_dg, parse_builtin, taft, verify_hopf,
)

BUILTINS = [
    p_dg(2), p_dg(3), p_dg(5), p_dg(3, graded=False), exterior(1), exterior(2), exterior(2, prime_field(3)),
    taft(2), taft(3), group_algebra(2), group_algebra(3), group_algebra(4, prime_field(2)),
]


@pytest.mark.parametrize("H", BUILTINS, ids=lambda H: f"{H.name}@{H.field.spec}")
def test_builtins_verify(H):
    assert verify_hopf(H) == []


def test_untwisted_taft_is_rejected():
    assert verify_hopf(taft(3, twisted=False))


@pytest.mark.parametrize("H", BUILTINS, ids=lambda H: f"{H.name}@{H.field.spec}")
def test_integral_is_left_integral_and_unique(H):
    F = H.field
    lam = H.integral
    for i in range(H.dim):
        hl = H.mul(H.basis(i), lam)
        e = H.eps(H.basis(i))
        assert hl == {k: F.mul(e, x) for k, x in lam.items() if F.mul(e, x)}
    # independent count: the space {x : h x = eps(h) x} is one-dimensional
    blocks = []
    for i in range(H.dim):
        L = H.left_mult_matrix(i)
        e = H.eps(H.basis(i))
        blocks.append(L - Mat.identity(F, H.dim).scale(e) if e else L)
    assert H.dim - rank(vstack(blocks)) == 1


@pytest.mark.parametrize("H", [p_dg(3), taft(3), exterior(2), group_algebra(3)], ids=lambda H: H.name)
@given(data=st.data())
def test_delta_is_multiplicative_and_antipode(H, data):
    F = H.field

    def elem():
        return {i: F.coerce(c) for i in range(H.dim) if (c := data.draw(st.integers(-2, 2)))}
    x, y = elem(), elem()
    assert H.delta(H.mul(x, y)) == H.tensor_mul(H.delta(x), H.delta(y))
    # m (S (x) id) Delta = eps 1
    acc = {}
    for (a, b), c in H.delta(x).items():
        for k, v in H.mul(H.S(H.basis(a)), H.basis(b)).items():
            acc[k] = F.add(acc.get(k, F.zero), F.mul(c, v))
    acc = {k: v for k, v in acc.items() if v}
    e = H.eps(x)
    assert acc == ({k: F.mul(e, v) for k, v in H.unit.items()} if e else {})


def test_left_integral_solver_agrees_with_builtin_normalization():
    for H in BUILTINS:
        lam = left_integral(H)
        ratio = None
        for k, x in H.integral.items():
            r = H.field.div(x, lam[k])
            assert ratio is None or ratio == r
            ratio = r


def test_builtin_specs():
    assert parse_builtin("p_dg:3").name == "p_dg:3"
    assert parse_builtin("p_dg:3:ungraded").modulus == 1
    assert parse_builtin("group_algebra:4@GF(2)").projectives is not None
    with pytest.raises(HopfError):
        parse_builtin("p_dg:3@QQ")
    with pytest.raises(HopfError):
        parse_builtin("nonsense:1")


def test_cocommutativity_flags():
    assert p_dg(3).cocommutative and exterior(2).cocommutative and group_algebra(3).cocommutative
    assert not taft(3).cocommutative
