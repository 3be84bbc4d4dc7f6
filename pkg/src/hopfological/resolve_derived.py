"""Truncated bar resolutions, finite cofibrant replacements, derived tensor
and Hom, restriction and induction along module-algebra maps."""

from __future__ import annotations

from .exactla import Mat, Subspace, kron, nullspace, rank, solve
from .hmod import (
    HModule, jordan_type, lam_quotient, submodule as hsubmodule, tensor as htensor,
)
from .hopfomod import (
    BLinearMap, BModule, BModuleError, algebra_module, chain_maps, cone, direct_sum_B,
    enriched_hom, projective_module, quasi_iso, quotient_B, restrict_along, tensor_h,
    verify_bmodule,
)
from .modalg import AlgebraMap, ModuleAlgebra

N_MAX = 3
MAX_DIM = 4096


class EffortBoundExceeded(ValueError):
    pass


class TruncationRegimeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# bar construction


def tensor_power(A: ModuleAlgebra, m: int) -> BModule:
    """A^{(x) m} as an (A, A)-bimodule: left action on the first factor, right
    action on the last, H diagonally."""
    assert m >= 1
    F = A.field
    d = A.dim
    h = A.action
    for _ in range(m - 1):
        h = htensor(h, A.action)
    rest = Mat.identity(F, d ** (m - 1))
    return BModule(A, h, lambda i: kron(A.left_mult_matrix(i), rest), right_algebra=A,
                   right_fn=lambda i: kron(rest, A.right_mult_matrix(i)),
                   cofibrant=True, label=f"A^{m}")


def mult_matrix(A: ModuleAlgebra) -> Mat:
    """mu: A (x) A -> A."""
    d = A.dim
    return Mat.from_columns(A.field, d, [A.mult.get((a, b), {}) for a in range(d) for b in range(d)])


def face(A: ModuleAlgebra, m: int, i: int) -> Mat:
    """d_i: A^{(x) m} -> A^{(x)(m-1)} multiplying factors i and i+1."""
    F = A.field
    d = A.dim
    return kron(kron(Mat.identity(F, d ** i), mult_matrix(A)), Mat.identity(F, d ** (m - 2 - i)))


def bar_delta(A: ModuleAlgebra, n: int, faces: str = "alternating") -> Mat:
    """delta_n: A^{(x)(n+2)} -> A^{(x)(n+1)}, sum_{i=0}^{n} (-1)^i d_i (no cyclic face).
    faces='first' keeps d_0 only (a deliberately wrong map for negative tests)."""
    F = A.field
    m = n + 2
    out = face(A, m, 0)
    if faces == "first":
        return out
    for i in range(1, m - 1):
        f = face(A, m, i)
        out = out.axpy(F.one if i % 2 == 0 else F.neg(F.one), f)
    return out


class BarStageData:
    def __init__(self, a, n, c, x, delta_tilde, stages, q_dim):
        self.a = a
        self.n = n
        self.c = c                # C_n
        self.x = x                # X_n = A^{(n+2)} (x) Q^{(x) n}, the source of delta~_n
        self.delta_tilde = delta_tilde  # delta~_n : X_n -> C_{n-1}
        self.stages = stages      # [C_{-1}, C_0, ..., C_n]
        self.q_dim = q_dim

    @property
    def filtration(self) -> list[list[int]]:
        """F^0 = C_{-1} = A, ..., F^{n+1} = C_n, as index sets (tails of the basis)."""
        N = self.c.dim
        return [list(range(N - s.dim, N)) for s in self.stages]

    def next_delta_tilde(self, faces: str = "alternating") -> Mat:
        """delta~_{n+1}: A^{(n+3)} (x) Q^{(x)(n+1)} -> C_n as a matrix."""
        return _delta_tilde(self.a, self.n + 1, self.q_dim, self.c.dim, faces)


def _delta_tilde(A, n, qdim, target_dim, faces="alternating") -> Mat:
    F = A.field
    dn = bar_delta(A, n, faces)
    if n == 0:
        return dn
    m = kron(dn, Mat.identity(F, qdim ** n))
    # place into the first block (X_{n-1} (x) Q) of C_{n-1}
    rows = m.rows + [{} for _ in range(target_dim - m.nrows)]
    return Mat(F, target_dim, m.ncols, rows)


def _x_module(A: ModuleAlgebra, n: int) -> BModule:
    Q = lam_quotient(A.hopf)[0]
    X = tensor_power(A, n + 2)
    for _ in range(n):
        X = tensor_h(X, Q)
    X.label = f"A^{n + 2}Q^{n}"
    return X


def bar_stage(A: ModuleAlgebra, n: int, n_max: int = N_MAX, max_dim: int = MAX_DIM) -> BarStageData:
    """C_n = Cone(delta~_n : A^{(n+2)} (x) Q^{(x) n} -> C_{n-1}), C_{-1} = A."""
    H = A.hopf
    if not H.cocommutative:
        raise BModuleError("the bar construction records a bimodule structure; "
                           f"{H.name} is not cocommutative")
    if n < 0 or n > n_max:
        raise EffortBoundExceeded(f"effort bound exceeded: stage {n} outside 0..{n_max}")
    qd = H.dim - 1
    dims = [A.dim]
    for k in range(n + 1):
        dims.append(A.dim ** (k + 2) * qd ** (k + 1) + dims[-1])
    if dims[-1] > max_dim:
        raise EffortBoundExceeded(f"effort bound exceeded: dim C_{n} = {dims[-1]} > {max_dim}")
    C = algebra_module(A, bimodule=True)
    stages = [C]
    X = dt = None
    for k in range(n + 1):
        X = _x_module(A, k)
        dt = _delta_tilde(A, k, qd, C.dim)
        u = BLinearMap(X, C, dt, require_b=True)
        C, _ = cone(u)
        C.label = f"C_{k}"
        C.cofibrant = True
        stages.append(C)
        assert C.dim == dims[k + 1]
    return BarStageData(A, n, C, X, dt, stages, qd)


def extra_degeneracy_piece(A: ModuleAlgebra, m: int) -> HModule:
    """A^{(m)} = ker(delta: A^{(x) m} -> A^{(x)(m-1)}) (A^{(1)} = A) as an H-module."""
    T = tensor_power(A, m).h
    if m == 1:
        return T
    ker = nullspace(bar_delta(A, m - 2)).columns()
    if not ker:
        return HModule(A.hopf, [], actions=[Mat.zeros(A.field, 0, 0)] * A.hopf.dim)
    return hsubmodule(T, ker)[0]


def _strip_free(jt, N):
    return sorted(b for b in jt if b[0] != N)


def bar_checks(stage: BarStageData, faces: str = "alternating") -> dict[str, bool | None]:
    """(i) B-module axioms, (ii) filtration, (iii) delta~ o delta = 0,
    (iv) stable comparison with A^{(n+2)} (x) Q^{(x)(n+1)} (None when the
    Hopf algebra has no Jordan-type diagnostic)."""
    A, n, C = stage.a, stage.n, stage.c
    H, F = A.hopf, A.field
    report: dict[str, bool | None] = {}
    report["B-module"] = not verify_bmodule(C)
    # (ii)
    ok = True
    filt = stage.filtration
    N = C.dim
    acts = ([C.a_act(i) for i in range(A.dim)] + [C.r_act(i) for i in range(A.dim)]
            + [C.h.act(g) for g in range(H.dim)])
    for k, idx in enumerate(filt):
        lo = idx[0] if idx else N
        for m in acts:
            for j in idx:
                if any(r < lo for r in m.column(j)):
                    ok = False
        prev_lo = filt[k - 1][0] if k else N
        want = A.dim ** (k + 1) * stage.q_dim ** k
        if prev_lo - lo != want:
            ok = False
        block = list(range(lo, prev_lo))
        ref = algebra_module(A, bimodule=True) if k == 0 else tensor_h(_x_module(A, k - 1), lam_quotient(H)[0])
        ref_acts = ([ref.a_act(i) for i in range(A.dim)] + [ref.r_act(i) for i in range(A.dim)]
                    + [ref.h.act(g) for g in range(H.dim)])
        for m, r in zip(acts, ref_acts):
            if m.submatrix(block, block) != r:
                ok = False
    report["filtration"] = ok
    # (iii)
    nxt = stage.next_delta_tilde()
    dd = bar_delta(A, n + 2, faces)
    comp = nxt @ kron(dd, Mat.identity(F, stage.q_dim ** (n + 1)))
    report["delta annihilation"] = comp.is_zero()
    # (iv)
    try:
        Npow = {"p_dg": H.params[0], "exterior": 2, "taft": H.params[0]}[H.kind]
        if H.kind == "exterior" and H.params[0] != 1:
            raise KeyError
    except (KeyError, IndexError):
        report["stable comparison"] = None
        return report
    ref = extra_degeneracy_piece(A, n + 2)
    Q = lam_quotient(H)[0]
    for _ in range(n + 1):
        ref = htensor(ref, Q)
    report["stable comparison"] = (_strip_free(jordan_type(C.h), Npow)
                                   == _strip_free(jordan_type(ref), Npow))
    return report


# ---------------------------------------------------------------------------
# finite cofibrant replacements (trivial action regime)


class FiniteReplacementData:
    def __init__(self, p: BModule, epi: BLinearMap, certificate, terms):
        self.p, self.epi, self.certificate, self.terms = p, epi, certificate, terms


def _summand_data(A: ModuleAlgebra, M: BModule, i: int, j: int, cache):
    """(Ae_i as a B-module with its A-basis, e_jM as an H-module with its M-basis)."""
    key = (i, j)
    if key in cache:
        return cache[key]
    F = A.field
    P = projective_module(A, i)
    e_i = A.idempotents[i]
    Sa = Subspace(F, A.dim, [v for v in (A.mul(A.basis(k), e_i) for k in range(A.dim)) if v])
    ej = M.a_elem(A.idempotents[j])
    vecs = [c for c in ej.columns() if c]
    if vecs:
        V, incl = hsubmodule(M.h, vecs)
        Sm = Subspace(F, M.dim, vecs)
    else:
        V = HModule(A.hopf, [], actions=[Mat.zeros(F, 0, 0)] * A.hopf.dim)
        Sm = Subspace(F, M.dim)
    assert [dict(b) for b in Sm.basis] == [dict(b) for b in (incl.columns() if vecs else [])]
    cache[key] = (P, Sa, V, Sm)
    return cache[key]


def validate_resolution(A: ModuleAlgebra, res) -> None:
    """Shape, idempotents and exactness of 0 -> P_L -> ... -> P_0 -> A -> 0."""
    if A.idempotents is None:
        raise BModuleError(f"{A.name} records no idempotents")
    for e in A.idempotents:
        if A.mul(e, e) != e:
            raise BModuleError("resolution summands need idempotents")
    terms = res["terms"]
    for k, ds in enumerate(res["d"]):
        if k == 0:
            continue
        for s, entries in ds.items():
            i, j = terms[k][s]
            for t, elem in entries:
                i2, j2 = terms[k - 1][t]
                for (a, b) in elem:
                    # a in e_i A e_i2, b in e_j2 A e_j
                    av, bv = A.basis(a), A.basis(b)
                    if A.mul(A.mul(A.idempotents[i], av), A.idempotents[i2]) != av or \
                            A.mul(A.mul(A.idempotents[j2], bv), A.idempotents[j]) != bv:
                        raise BModuleError("resolution differential is not a bimodule map")
    # exactness, checked on P_. (x)_A A
    Rm = algebra_module(A)
    mods, maps, epi = _complex_terms(A, Rm, res, {})
    chain = [epi] + maps[1:]
    for k in range(1, len(chain)):
        if not (chain[k - 1] @ chain[k]).is_zero():
            raise BModuleError(f"resolution differential does not square to zero at term {k - 1}")
    ranks = [rank(epi)] + [rank(m) for m in maps[1:]] + [0]
    if ranks[0] != A.dim:
        raise BModuleError("resolution is not exact (augmentation not onto)")
    for k, T in enumerate(mods):
        if ranks[k] + ranks[k + 1] != T.dim:
            raise BModuleError(f"resolution is not exact at term {k}")


def _complex_terms(A, M, res, cache):
    """Terms P_k (x)_A M as B-modules, differentials and the augmentation onto M."""
    F = A.field
    terms = res["terms"]
    mods = []
    pieces = []
    for summands in terms:
        parts = []
        offs = []
        off = 0
        for (i, j) in summands:
            P, Sa, V, Sm = _summand_data(A, M, i, j, cache)
            parts.append(tensor_h(P, V))
            offs.append(off)
            off += P.dim * V.dim
        T = direct_sum_B(parts) if parts else None
        mods.append(T)
        pieces.append((offs, summands))
    maps = [None]
    for k in range(1, len(terms)):
        src, tgt = mods[k], mods[k - 1]
        m = Mat.zeros(F, tgt.dim, src.dim)
        offs_s, sums_s = pieces[k]
        offs_t, sums_t = pieces[k - 1]
        for s, entries in res["d"][k].items():
            i, j = sums_s[s]
            P, Sa, V, Sm = _summand_data(A, M, i, j, cache)
            for t, elem in entries:
                i2, j2 = sums_t[t]
                P2, Sa2, V2, Sm2 = _summand_data(A, M, i2, j2, cache)
                for xa, bx in enumerate(Sa.basis):
                    for ym, vm in enumerate(Sm.basis):
                        col = offs_s[s] + xa * V.dim + ym
                        for (a, b), c in elem.items():
                            left = A.mul(bx, A.basis(a))
                            right = M.a_act(b).apply(vm)
                            if not left or not right:
                                continue
                            lc = Sa2.coords(left)
                            rc = Sm2.coords(right)
                            for p, x in enumerate(lc):
                                if not x:
                                    continue
                                for q, y in enumerate(rc):
                                    if y:
                                        r = offs_t[t] + p * V2.dim + q
                                        m.rows[r][col] = F.add(m.rows[r].get(col, F.zero),
                                                               F.mul(c, F.mul(x, y)))
                                        if not m.rows[r][col]:
                                            del m.rows[r][col]
        maps.append(m)
    # augmentation x (x) m -> x m
    T0 = mods[0]
    offs, sums = pieces[0]
    cols = []
    for s, (i, j) in enumerate(sums):
        P, Sa, V, Sm = _summand_data(A, M, i, j, cache)
        for bx in Sa.basis:
            act = M.a_elem(bx)
            for vm in Sm.basis:
                cols.append(act.apply(vm))
    epi = Mat.from_columns(F, M.dim, cols)
    assert epi.ncols == T0.dim
    return mods, maps, epi


def finite_cofibrant_replacement(M: BModule, res=None) -> FiniteReplacementData:
    """Iterated-cone lift of a finite bimodule resolution, tensored with M,
    with a surjective quasi-isomorphism onto M."""
    A = M.algebra
    if not A.is_trivial_action():
        raise TruncationRegimeError("finite replacements need a module algebra with trivial H-action")
    res = res if res is not None else A.resolution
    if res is None:
        raise TruncationRegimeError(f"no finite bimodule resolution recorded for {A.name}")
    validate_resolution(A, res)
    F = A.field
    Q = lam_quotient(A.hopf)[0]
    mods, maps, epi0 = _complex_terms(A, M, res, {})
    C = mods[0]
    epi = epi0
    for k in range(1, len(mods)):
        X = mods[k]
        dk = maps[k]
        for _ in range(k - 1):
            X = tensor_h(X, Q)
            dk = kron(dk, Mat.identity(F, Q.dim))
        rows = dk.rows + [{} for _ in range(C.dim - dk.nrows)]
        u = BLinearMap(X, C, Mat(F, C.dim, dk.ncols, rows), require_b=True)
        newC, tri = cone(u)
        S, keep = newC._reducer
        off = X.dim * A.hopf.dim
        epi = Mat.from_columns(F, M.dim, [epi.column(j - off) if j >= off else {} for j in keep])
        C = newC
    C.cofibrant = True
    C.label = f"p({M.label})"
    e = BLinearMap(C, M, epi, require_b=True)
    if rank(epi) != M.dim:
        raise BModuleError("replacement map is not surjective (resolution not exact)")
    ok, witness = quasi_iso(e)
    assert ok, "replacement map is not a quasi-isomorphism"
    return FiniteReplacementData(C, e, witness, mods)


def trivial_replacement(M: BModule) -> FiniteReplacementData:
    """A cofibrant M replaces itself."""
    I = BLinearMap(M, M, Mat.identity(M.field, M.dim), require_b=True)
    return FiniteReplacementData(M, I, None, [M])


def replacement_for(M: BModule) -> FiniteReplacementData:
    if M.cofibrant:
        return trivial_replacement(M)
    A = M.algebra
    if A.is_trivial_action() and A.resolution is not None:
        return finite_cofibrant_replacement(M)
    raise TruncationRegimeError("no finite replacement available (outside the finite-replacement regime)")


# ---------------------------------------------------------------------------
# derived functors


def tensor_over(X: BModule, P: BModule) -> tuple[BModule, Mat]:
    """X (x)_{A2} P for a bimodule X with right A2 = P.algebra action."""
    if not X.is_bimodule or X.right_algebra is not P.algebra:
        raise BModuleError("first argument must be a bimodule with a right action of the second's algebra")
    F = X.field
    I_P = Mat.identity(F, P.dim)
    I_X = Mat.identity(F, X.dim)
    amb = BModule(X.algebra, htensor(X.h, P.h), lambda i: kron(X.a_act(i), I_P),
                  label=f"{X.label}*{P.label}")
    rels = []
    A2 = P.algebra
    for a in range(A2.dim):
        R = kron(X.r_act(a), I_P)
        L = kron(I_X, P.a_act(a))
        diff = R - L
        rels.extend(c for c in diff.columns() if c)
    D, proj = quotient_B(amb, rels, label=f"{X.label}(x)_A {P.label}")
    D._ambient = amb
    return D, proj


def _lift_comparison(r1: FiniteReplacementData, r2: FiniteReplacementData):
    """A chain map phi: p1 -> p2 with epi2 o phi homotopic to epi1."""
    P1, P2, M = r1.p, r2.p, r1.epi.target
    F = M.field
    phis = chain_maps(P1, P2)
    E = enriched_hom(P1, M)
    W = E.module
    lamW = W.lam()
    cols = []
    for ph in phis:
        cols.append(_vec(r2.epi.matrix @ ph))
    for k in range(len(E.maps)):
        img = lamW.column(k)
        g = E.combine([img.get(t, F.zero) for t in range(len(E.maps))])
        cols.append({key: F.neg(x) for key, x in _vec(g).items()})
    A = Mat.from_columns(F, M.dim * P1.dim, cols)
    b = Mat.from_columns(F, M.dim * P1.dim, [_vec(r1.epi.matrix)])
    x = solve(A, b)
    if x is None:
        return None
    phi = Mat.zeros(F, P2.dim, P1.dim)
    for k, ph in enumerate(phis):
        c = x.rows[k].get(0)
        if c:
            phi = phi.axpy(c, ph)
    return BLinearMap(P1, P2, phi, require_b=True)


def _vec(f: Mat) -> dict:
    n = f.ncols
    return {i * n + j: x for i, r in enumerate(f.rows) for j, x in r.items()}


def derived_tensor(X: BModule, M: BModule, replacement: FiniteReplacementData | None = None,
                   second: FiniteReplacementData | None = None):
    """X (x)^L_{A2} M computed as X (x)_{A2} pM.  With a second replacement,
    also certifies the two outputs quasi-isomorphic; returns (D, certificate)
    where certificate is None or (map, True)."""
    r1 = replacement or replacement_for(M)
    D1, proj1 = tensor_over(X, r1.p)
    if second is None:
        return D1, None
    D2, proj2 = tensor_over(X, second.p)
    phi = _lift_comparison(r1, second)
    if phi is None:
        raise BModuleError("could not compare the two replacements")
    F = X.field
    lifted = kron(Mat.identity(F, X.dim), phi.matrix)
    S1, keep1 = D1._reducer
    cols = [proj2.apply(lifted.column(j)) for j in keep1]
    m = BLinearMap(D1, D2, Mat.from_columns(F, D2.dim, cols), require_b=True)
    ok, _ = quasi_iso(m)
    return D1, (m, ok)


def derived_hom(X: BModule, M: BModule):
    """Hom_{A1}(X, M) for cofibrant X: an H-module, or a B2-module when X is a
    bimodule with right A2-action ((a.f)(x) = f(x.a))."""
    if not X.cofibrant:
        raise BModuleError("derived_hom needs a cofibrant first argument (replace it first)")
    E = enriched_hom(X, M)
    W = E.module
    if not X.is_bimodule:
        return W
    A2 = X.right_algebra
    F = X.field

    def a_fn(i):
        R = X.r_act(i)
        cols = []
        for k in range(len(E.maps)):
            f = E.matrix(k)
            g = f @ R
            if A2.parity(i) and W.parity(k):
                g = g.scale(F.neg(F.one))
            c = E.coords(g)
            if c is None:
                raise BModuleError("right action does not preserve Hom_A")
            cols.append({t: x for t, x in enumerate(c) if x})
        return Mat.from_columns(F, W.dim, cols)
    return BModule(A2, W, a_fn, label=f"RHom({X.label},{M.label})")


def algebra_bimodule_along(phi: AlgebraMap) -> BModule:
    """A2 as an (A2, A1)-bimodule, A1 acting on the right through phi."""
    A1, A2 = phi.source, phi.target

    def r_fn(i):
        x = phi.matrix.column(i)
        acc = Mat.zeros(A2.field, A2.dim, A2.dim)
        for k, c in x.items():
            acc = acc.axpy(c, A2.right_mult_matrix(k))
        return acc
    return BModule(A2, A2.action, A2.left_mult_matrix, right_algebra=A1, right_fn=r_fn,
                   cofibrant=True, label="A2")


def induce_along(phi: AlgebraMap, M: BModule, replacement: FiniteReplacementData | None = None) -> BModule:
    """phi_!(M) = A2 (x)^L_{A1} M."""
    D, _ = derived_tensor(algebra_bimodule_along(phi), M, replacement)
    return D


def algebra_quasi_iso(phi: AlgebraMap):
    """Whether phi: A1 -> A2 restricts to a quasi-isomorphism A1 -> phi^*A2."""
    src = algebra_module(phi.source)
    tgt = restrict_along(phi, algebra_module(phi.target))
    return quasi_iso(BLinearMap(src, tgt, phi.matrix, require_b=True))
