from __future__ import annotations

import itertools

import pytest
import sympy
from hypothesis import given, strategies as st

from hopfological.exactla import (
    QQ, FieldError, Mat, Subspace, cyclotomic_field, field_from_spec, inverse, kron, nullspace,
    prime_field, rank, rref, solve,
)

FIELDS = [prime_field(2), prime_field(3), prime_field(5), QQ, cyclotomic_field(3), cyclotomic_field(4)]


def small_ints(n):
    return st.lists(st.integers(-3, 3), min_size=n, max_size=n)


@st.composite
def scalars(draw, F):
    if F.kind == "cyclotomic":
        return F.coerce(tuple(draw(small_ints(F.degree))))
    return F.coerce(draw(st.integers(-20, 20)))


@st.composite
def matrices(draw, F, max_rows=4, max_cols=4):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return Mat.from_lists(F, [[draw(scalars(F)) for _ in range(c)] for _ in range(r)])


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: F.spec)
@given(data=st.data())
def test_field_axioms(F, data):
    a, b, c = (data.draw(scalars(F)) for _ in range(3))
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == F.zero
    if a:
        assert F.mul(a, F.inv(a)) == F.one
    assert F.parse(F.render(a)) == a


def test_zero_is_falsy_everywhere():
    for F in FIELDS:
        assert not F.zero and F.one


def test_balanced_rendering_and_cyclotomic_parse():
    assert prime_field(3).render(2) == "-1"
    F = cyclotomic_field(4)
    x = F.parse("1/2 + 1/3 z")
    assert F.render(x) == "1/2 + 1/3 z"
    z = F.zeta()
    assert F.pow(z, 4) == F.one and F.pow(z, 2) == F.neg(F.one)
    with pytest.raises(FieldError):
        field_from_spec("GF(4)")


@given(data=st.data())
def test_rank_matches_sympy_over_rationals(data):
    m = data.draw(matrices(QQ, 5, 5))
    oracle = sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) for x in row]
                           for row in m.to_lists()]).rank()
    assert rank(m) == oracle


@pytest.mark.parametrize("p", [2, 3])
@given(data=st.data())
def test_kernel_size_by_enumeration(p, data):
    F = prime_field(p)
    m = data.draw(matrices(F, 3, 4))
    count = sum(1 for x in itertools.product(range(p), repeat=m.ncols)
                if not m.apply({i: v for i, v in enumerate(x) if v}))
    assert count == p ** (m.ncols - rank(m))
    ker = nullspace(m)
    assert ker.ncols == m.ncols - rank(m)
    assert (m @ ker).is_zero()


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: F.spec)
@given(data=st.data())
def test_solve_and_inverse(F, data):
    a = data.draw(matrices(F, 4, 4))
    x = Mat.from_lists(F, [[data.draw(scalars(F)) for _ in range(2)] for _ in range(a.ncols)])
    b = a @ x
    y = solve(a, b)
    assert y is not None and a @ y == b
    if a.nrows == a.ncols:
        inv = inverse(a)
        assert (inv is not None) == (rank(a) == a.nrows)
        if inv is not None:
            assert (a @ inv).is_identity()


@given(data=st.data())
def test_rref_is_canonical(data):
    F = prime_field(5)
    a = data.draw(matrices(F, 4, 5))
    r1, piv, rk = rref(a)
    r2, _, _ = rref(r1)
    assert r1 == r2 and rk == rank(a) == len(piv)


def test_kron_mixed_product():
    F = QQ
    a = Mat.from_lists(F, [[1, 2], [0, 1]])
    b = Mat.from_lists(F, [[0, 1], [1, 1]])
    c = Mat.from_lists(F, [[2, 0], [1, 3]])
    d = Mat.from_lists(F, [[1, -1], [0, 2]])
    assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)


@given(data=st.data())
def test_subspace_coordinates(data):
    F = prime_field(3)
    vecs = [{j: data.draw(st.integers(0, 2)) for j in range(4)} for _ in range(3)]
    vecs = [{j: x for j, x in v.items() if x} for v in vecs]
    S = Subspace(F, 4, vecs)
    assert S.dim == (rank(Mat.from_columns(F, 4, vecs)) if vecs else 0)
    for v in vecs:
        assert S.contains(v)
        c = S.coords(v)
        rebuilt = {}
        for b, x in zip(S.basis, c):
            for k, y in b.items():
                rebuilt[k] = F.add(rebuilt.get(k, F.zero), F.mul(x, y))
        assert {k: x for k, x in rebuilt.items() if x} == v
    assert len(S.complement()) + S.dim == 4
