from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from hopfological.exactla import Mat, prime_field, rank
from hopfological.hmod import (
    conjugate, direct_sum, freeness_iso, hom, hom_act, intertwiner_r, is_h_linear, is_stably_zero,
    jordan_type, lambda_act, materialize, quotient, random_graded_basis_change, random_module,
    regular, shift, slash_cohomology, stable_hom, stable_invariants, tensor, trivial, verify_module,
)
from hopfological.hopf import exterior, group_algebra, p_dg, taft

SMALL = [p_dg(2), p_dg(3), exterior(1), exterior(2), taft(2), group_algebra(2, prime_field(2)),
         group_algebra(3), p_dg(3, graded=False)]


def block(H, size, start):
    """Cyclic module k[d]/d^size over p_dg(p), lowest degree `start`."""
    p = H.params[0]
    R = regular(H, start)
    if size == p:
        return R
    return quotient(R, [{k: H.field.one} for k in range(size, p)])[0]


def blocks_module(H, sizes, rng):
    M = direct_sum([block(H, a, s) for a, s in sizes])
    return materialize(conjugate(M, random_graded_basis_change(M, rng)))


def stable_oracle(p, a, b):
    """dim Hom in the stable category of k[x]/x^p between Jordan blocks."""
    return min(a, b) - max(0, a + b - p)


@pytest.mark.parametrize("H", SMALL, ids=lambda H: H.name)
@given(seed=st.integers(0, 10_000))
def test_operations_produce_modules(H, seed):
    rng = random.Random(seed)
    M = random_module(H, rng, max_dim=4)
    N = random_module(H, rng, max_dim=4)
    for X in (M, tensor(M, N), hom(M, N), shift(M, 1), shift(M, -1)):
        assert verify_module(X) == []


@pytest.mark.parametrize("H", SMALL, ids=lambda H: H.name)
@given(seed=st.integers(0, 10_000))
def test_freeness(H, seed):
    M = random_module(H, random.Random(seed), max_dim=4)
    fm, gm = freeness_iso(M)
    assert (fm.matrix @ gm.matrix).is_identity()
    MH = tensor(M, regular(H))
    g = is_stably_zero(MH)
    assert g is not None
    assert lambda_act(MH, MH, g).is_identity()


@pytest.mark.parametrize("p", [2, 3, 5])
@given(data=st.data())
def test_stable_hom_matches_jordan_block_formula(p, data):
    H = p_dg(p)
    rng = random.Random(data.draw(st.integers(0, 10_000)))
    sizes = st.lists(st.tuples(st.integers(1, p), st.integers(-2, 2)), min_size=1, max_size=2)
    ms, ns = data.draw(sizes), data.draw(sizes)
    M, N = blocks_module(H, ms, rng), blocks_module(H, ns, rng)
    expected = sum(stable_oracle(p, a, b) for a, _ in ms for b, _ in ns)
    assert stable_hom(M, N)[0] == expected
    assert jordan_type(M) == sorted(ms)


@given(seed=st.integers(0, 10_000))
def test_jordan_type_by_rank_sequence(seed):
    rng = random.Random(seed)
    H = p_dg(3)
    M = random_module(H, rng, max_dim=6)
    d = M.act(1)
    ranks = [M.dim]
    power = Mat.identity(H.field, M.dim)
    for _ in range(3):
        power = d @ power
        ranks.append(rank(power))
    # number of blocks of size >= k is rank(d^{k-1}) - rank(d^k)
    jt = [s for s, _ in jordan_type(M)]
    for k in range(1, 4):
        assert sum(1 for s in jt if s >= k) == ranks[k - 1] - ranks[k]


def test_jordan_and_slash_examples():
    H = p_dg(3)
    rng = random.Random(3)
    M = direct_sum([block(H, 2, 2), regular(H, -1), trivial(H, 5)])
    M = materialize(conjugate(M, random_graded_basis_change(M, rng)))
    assert jordan_type(M) == [(1, 5), (2, 2), (3, -1)]
    assert slash_cohomology(M, 1) == {3: 1, 5: 1}
    assert slash_cohomology(M, 2) == {2: 1, 5: 1}
    assert jordan_type(shift(trivial(H), 1)) == [(2, -2)]


def test_shift_round_trip_is_stably_trivial():
    for H in (p_dg(3), exterior(1), taft(2)):
        M = random_module(H, random.Random(1), max_dim=4)
        back = shift(shift(M, 1), -1)
        dm = stable_hom(M, M)[0]
        assert stable_hom(back, back)[0] == dm
        assert stable_hom(M, back)[0] == dm


@pytest.mark.parametrize("H", [taft(2), exterior(2), p_dg(3)], ids=lambda H: H.name)
@given(seed=st.integers(0, 10_000))
def test_hom_action_is_a_representation(H, seed):
    rng = random.Random(seed)
    F = H.field
    M = random_module(H, rng, max_dim=3)
    N = random_module(H, rng, max_dim=3)
    f = Mat.from_lists(F, [[F.coerce(rng.randint(-1, 1)) for _ in range(M.dim)] for _ in range(N.dim)])
    for a in H.generators:
        for b in H.generators:
            ab = H.mul(H.basis(a), H.basis(b))
            lhs = hom_act(M, N, ab, f)
            rhs = hom_act(M, N, H.basis(a), hom_act(M, N, H.basis(b), f))
            assert lhs == rhs


def test_dg_sign_on_exterior():
    H = exterior(1)
    F = H.field
    rng = random.Random(7)
    for _ in range(5):
        M, N = random_module(H, rng, max_dim=4), random_module(H, rng, max_dim=4)
        for i in range(N.dim):
            for j in range(M.dim):
                f = Mat.zeros(F, N.dim, M.dim)
                f.rows[i][j] = F.one
                deg = N.degrees[i] - M.degrees[j]
                rhs = N.act(1) @ f - (f @ M.act(1)).scale(F.coerce((-1) ** deg))
                assert hom_act(M, N, {1: F.one}, f) == rhs


def test_semisimple_everything_is_stably_zero():
    H = group_algebra(3)
    M = random_module(H, random.Random(0), max_dim=5)
    assert is_stably_zero(M) is not None
    assert stable_invariants(hom(M, M)).dim == 0


def test_trivial_module_not_stably_zero():
    for H in (p_dg(3), exterior(1), taft(3), group_algebra(2, prime_field(2))):
        assert is_stably_zero(trivial(H)) is None


@pytest.mark.parametrize("H", [p_dg(3), exterior(1), taft(2), group_algebra(2)], ids=lambda H: H.name)
def test_intertwiner(H):
    V = random_module(H, random.Random(4), max_dim=3)
    r = intertwiner_r(V)
    assert r.is_h_linear()
    assert rank(r.matrix) == r.matrix.nrows
    assert is_h_linear(r.source, r.target, r.matrix)
