from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from hopfological.exactla import Mat
from hopfological.hopf import exterior, p_dg
from hopfological.modalg import (
    ALGEBRA_KINDS, AlgebraError, AlgebraMap, dg_square_zero, ground, identity_map, make_builtin_algebra,
    opposite, parse_builtin_algebra, path_algebra_A2, smash, taft_adjoint, taft_truncated, tensor_algebras,
    truncated_poly_pdg, upper_triangular_2, verify_module_algebra,
)

GOOD = [k for k in ALGEBRA_KINDS if k != "taft_truncated_broken"]


@pytest.mark.parametrize("kind", GOOD)
def test_catalog_verifies(kind):
    assert verify_module_algebra(make_builtin_algebra(kind)) == []


def test_broken_taft_algebra_is_rejected():
    fails = verify_module_algebra(make_builtin_algebra("taft_truncated_broken"))
    assert "module algebra axiom" in fails


@pytest.mark.parametrize("p", [2, 3, 5])
@given(data=st.data())
def test_leibniz_rule_on_random_elements(p, data):
    A = truncated_poly_pdg(p)
    F = A.field

    def elem():
        return {i: F.coerce(c) for i in range(A.dim) if (c := data.draw(st.integers(0, p - 1)))}
    a, b = elem(), elem()
    d = A.action.act(1)
    lhs = d.apply(A.mul(a, b))
    rhs = A.mul(d.apply(a), b)
    for k, x in A.mul(a, d.apply(b)).items():
        rhs[k] = F.add(rhs.get(k, F.zero), x)
    assert lhs == {k: x for k, x in rhs.items() if x}


def test_leibniz_sign_on_dg_algebra():
    # d(e e) with |e| odd: d(ab) = d(a) b + (-1)^{|a|} a d(b)
    A = dg_square_zero()
    F = A.field
    d = A.action.act(1)
    for i in range(A.dim):
        for j in range(A.dim):
            a, b = A.basis(i), A.basis(j)
            sign = F.coerce(-1) if A.parity(i) else F.one
            rhs = A.mul(d.apply(a), b)
            for k, x in A.mul(a, d.apply(b)).items():
                rhs[k] = F.add(rhs.get(k, F.zero), F.mul(sign, x))
            assert d.apply(A.mul(a, b)) == {k: x for k, x in rhs.items() if x}


def test_smash_commutation_relation():
    A = truncated_poly_pdg(3)
    B = smash(A)
    F = A.field
    one_H, dH = {0: F.one}, {1: F.one}
    x = A.basis(1)
    # (1 # d)(x # 1) = d(x) # 1 + x # d
    lhs = B.mul(B.elem(A.unit, dH), B.elem(x, one_H))
    rhs = dict(B.elem(A.action.act(1).apply(x), one_H))
    rhs.update(B.elem(x, dH))
    assert lhs == rhs
    assert B.verify() == []


def test_opposite_and_tensor():
    U = upper_triangular_2(exterior(1))
    assert verify_module_algebra(opposite(U)) == []
    P = truncated_poly_pdg(3)
    assert verify_module_algebra(tensor_algebras(P, P)) == []
    assert tensor_algebras(P, P).dim == 9
    with pytest.raises(AlgebraError):
        opposite(taft_adjoint(3))
    with pytest.raises(AlgebraError):
        opposite(taft_truncated(3))
    assert verify_module_algebra(opposite(taft_adjoint(3), force=True))
    T = taft_truncated(3)
    assert verify_module_algebra(tensor_algebras(T, T, force=True))


def test_algebra_maps():
    A = dg_square_zero()
    assert identity_map(A).verify() == []
    k = ground(A.hopf)
    F = A.field
    aug = Mat.from_lists(F, [[1, 0, 0]])
    assert AlgebraMap(A, k, aug).verify() == []
    with pytest.raises(AlgebraError):
        AlgebraMap(A, k, Mat.from_lists(F, [[1, 1, 0]]))
    P = truncated_poly_pdg(3)
    unit = Mat.from_lists(P.field, [[1], [0], [0]])
    assert AlgebraMap(ground(P.hopf), P, unit).verify() == []


def test_path_algebra_data():
    A = path_algebra_A2()
    F = A.field
    e1, e2 = A.idempotents
    assert A.mul(e1, e1) == e1 and A.mul(e2, e2) == e2 and A.mul(e1, e2) == {}
    assert A.is_trivial_action()
    assert parse_builtin_algebra("truncated_poly_pdg:5").dim == 5
    assert A.resolution is not None and len(A.resolution["terms"]) == 2
    assert F.one == A.unit[0] == A.unit[1]


def test_hopf_override():
    A = make_builtin_algebra("ground", hopf=p_dg(5))
    assert A.hopf.name == "p_dg:5" and A.dim == 1
