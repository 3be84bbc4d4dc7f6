"""Finite-dimensional graded H-modules.

An HModule stores one action matrix per basis element of H (column
convention: column j of act(i) is e_i . v_j), computed lazily for derived
modules.  Degrees are integers; comparisons happen modulo the Hopf algebra's
grading modulus.  Parities (for super Hopf algebras) are degrees mod 2.
"""

from __future__ import annotations

import random as _random
from collections import defaultdict

from .exactla import (
    Mat, Subspace, block_diag, inverse, kron, nullspace, rank, solve,
)
from .hopf import HopfAlgebra


class ModuleError(ValueError):
    pass


class HModule:
    def __init__(self, hopf: HopfAlgebra, degrees, actions=None, action_fn=None, label=""):
        self.hopf = hopf
        self.field = hopf.field
        self.degrees = list(degrees)
        self.dim = len(self.degrees)
        self.label = label
        self._acts: dict[int, Mat] = {}
        if actions is not None:
            if len(actions) != hopf.dim:
                raise ModuleError("need one action matrix per Hopf basis element")
            for i, m in enumerate(actions):
                if m.shape != (self.dim, self.dim):
                    raise ModuleError("action matrix has the wrong shape")
                self._acts[i] = m
        elif action_fn is None:
            raise ModuleError("no action given")
        self._fn = action_fn
        self._cache: dict = {}

    def __repr__(self):
        return f"HModule({self.label or '?'}, dim={self.dim}, over {self.hopf.name})"

    # actions -------------------------------------------------------------
    def act(self, i: int) -> Mat:
        m = self._acts.get(i)
        if m is None:
            m = self._fn(i)
            self._acts[i] = m
        return m

    def act_elem(self, x: dict) -> Mat:
        F = self.field
        rows = [{} for _ in range(self.dim)]
        for i, c in x.items():
            for r, row in zip(rows, self.act(i).rows):
                if row:
                    F.axpy(r, c, row)
        return Mat(F, self.dim, self.dim, rows)

    def lam(self) -> Mat:
        if "lam" not in self._cache:
            self._cache["lam"] = self.act_elem(self.hopf.integral)
        return self._cache["lam"]

    def actions(self) -> list[Mat]:
        return [self.act(i) for i in range(self.hopf.dim)]

    # grading -------------------------------------------------------------
    def parity(self, k: int) -> int:
        return self.degrees[k] & 1 if self.hopf.super else 0

    def odd_indices(self) -> set[int]:
        if not self.hopf.super:
            return set()
        return {k for k, d in enumerate(self.degrees) if d & 1}

    def key(self, k: int) -> int:
        return self.hopf.deg_key(self.degrees[k])

    def blocks(self) -> dict[int, list[int]]:
        out = defaultdict(list)
        for k in range(self.dim):
            out[self.key(k)].append(k)
        return dict(out)

    def shifted(self, r: int) -> "HModule":
        """Same action, degrees raised by r."""
        return HModule(self.hopf, [d + r for d in self.degrees], action_fn=self.act,
                       label=f"{self.label}{{{r}}}")

    def graded_dims(self) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        for d in self.degrees:
            out[d] += 1
        return dict(out)


# ---------------------------------------------------------------------------
# helpers on matrices


def flip_rows(m: Mat, odd: set[int]) -> Mat:
    """P m with P = diag((-1)^parity)."""
    if not odd:
        return m
    F = m.field
    rows = [({j: F.neg(x) for j, x in r.items()} if i in odd else r) for i, r in enumerate(m.rows)]
    return Mat(F, m.nrows, m.ncols, rows)


def flip_cols(m: Mat, odd: set[int]) -> Mat:
    """m P with P = diag((-1)^parity)."""
    if not odd:
        return m
    F = m.field
    rows = [{j: (F.neg(x) if j in odd else x) for j, x in r.items()} for r in m.rows]
    return Mat(F, m.nrows, m.ncols, rows)


def _same_hopf(m, n):
    if m.hopf is not n.hopf:
        raise ModuleError("modules over different Hopf algebras")


# ---------------------------------------------------------------------------
# constructors


def trivial(H: HopfAlgebra, degree: int = 0, dim: int = 1) -> HModule:
    """k_0 shifted to the given degree (dim copies)."""
    F = H.field

    def fn(i):
        e = H.counit[i]
        return Mat.identity(F, dim).scale(e) if e else Mat.zeros(F, dim, dim)
    return HModule(H, [degree] * dim, action_fn=fn, label="k0" if degree == 0 else f"k0{{{degree}}}")


def trivial_like(M: HModule) -> HModule:
    """M_0: the underlying graded space of M with the trivial action."""
    H, F, n = M.hopf, M.field, M.dim

    def fn(i):
        e = H.counit[i]
        return Mat.identity(F, n).scale(e) if e else Mat.zeros(F, n, n)
    return HModule(H, M.degrees, action_fn=fn, label=f"{M.label}_0")


def regular(H: HopfAlgebra, shift: int = 0) -> HModule:
    return HModule(H, [d + shift for d in H.degrees], action_fn=H.left_mult_matrix,
                   label="H" if not shift else f"H{{{shift}}}")


def regular_lam(H: HopfAlgebra) -> HModule:
    """H shifted so that the integral sits in degree 0; target of lambda."""
    return regular(H, -H.integral_degree)


def from_generators(H: HopfAlgebra, degrees, gen_mats: dict, label="") -> HModule:
    """Module from matrices for the algebra generators of H, extended along
    the basis words of a builtin."""
    if H.words is None:
        raise ModuleError("this Hopf algebra records no basis words; give every action matrix")
    F = H.field
    n = len(degrees)
    mats = {g: (m if isinstance(m, Mat) else Mat.from_lists(F, m, n)) for g, m in gen_mats.items()}
    acts = []
    for w in H.words:
        m = Mat.identity(F, n)
        for g in reversed(w):
            m = mats[g] @ m
        acts.append(m)
    return HModule(H, degrees, actions=acts, label=label)


def direct_sum(mods, label="") -> HModule:
    mods = list(mods)
    H = mods[0].hopf
    for m in mods:
        _same_hopf(m, mods[0])
    degs = [d for m in mods for d in m.degrees]
    return HModule(H, degs, action_fn=lambda i: block_diag([m.act(i) for m in mods]),
                   label=label or "(+)".join(m.label for m in mods))


def tensor(M: HModule, N: HModule) -> HModule:
    """M (x) N with h(m (x) n) = sum (-1)^{|h2||m|} h1 m (x) h2 n; index m*dimN + n."""
    _same_hopf(M, N)
    H = M.hopf
    F = H.field
    oddM = M.odd_indices()
    degs = [a + b for a in M.degrees for b in N.degrees]

    def fn(i):
        acc = Mat.zeros(F, M.dim * N.dim, M.dim * N.dim)
        for (a, b), c in H.comult[i].items():
            left = M.act(a)
            if H.parity(b):
                left = flip_cols(left, oddM)
            acc = acc.axpy(c, kron(left, N.act(b)))
        return acc
    return HModule(H, degs, action_fn=fn, label=f"({M.label}*{N.label})")


def hom_terms(H: HopfAlgebra, x: dict):
    """Terms (coef, a, b) of Delta(x), with the Koszul sign of the Hom action
    folded in: (h.f) = sum coef * h2 P^{|h1|} f P^{|h1|} S^{-1}(h1)."""
    F = H.field
    out = []
    for (a, b), c in H.delta(x).items():
        if H.parity(a) and H.parity(b):
            c = F.neg(c)
        out.append((c, a, b))
    return out


def hom(M: HModule, N: HModule) -> HModule:
    """Hom_k(M, N) with (h.f)(m) = sum +- h2 f(S^{-1}(h1) m).

    Basis f_{ij} (e^M_j -> e^N_i) sits at index i*dimM + j and has degree
    deg e^N_i - deg e^M_j.
    """
    _same_hopf(M, N)
    H = M.hopf
    F = H.field
    oddM, oddN = M.odd_indices(), N.odd_indices()
    degs = [b - a for b in N.degrees for a in M.degrees]
    n = M.dim * N.dim

    def fn(i):
        acc = Mat.zeros(F, n, n)
        for c, a, b in hom_terms(H, H.basis(i)):
            left = N.act(b)
            right = M.act_elem(H.S_inv(H.basis(a)))
            if H.parity(a):
                left = flip_cols(left, oddN)
                right = flip_rows(right, oddM)
            acc = acc.axpy(c, kron(left, right.T))
        return acc
    return HModule(H, degs, action_fn=fn, label=f"Hom({M.label},{N.label})")


def hom_act(M: HModule, N: HModule, x: dict, f: Mat) -> Mat:
    """x . f for f in Hom_k(M, N), computed without building the Hom module."""
    H = M.hopf
    F = H.field
    oddM, oddN = M.odd_indices(), N.odd_indices()
    acc = Mat.zeros(F, N.dim, M.dim)
    for c, a, b in hom_terms(H, x):
        left = N.act(b)
        right = M.act_elem(H.S_inv(H.basis(a)))
        if H.parity(a):
            left = flip_cols(left, oddN)
            right = flip_rows(right, oddM)
        acc = acc.axpy(c, left @ f @ right)
    return acc


def lambda_act(M: HModule, N: HModule, f: Mat) -> Mat:
    return hom_act(M, N, M.hopf.integral, f)


def vec_of(f: Mat) -> dict:
    n = f.ncols
    return {i * n + j: x for i, r in enumerate(f.rows) for j, x in r.items()}


def mat_of(F, v: dict, nrows: int, ncols: int) -> Mat:
    rows = [{} for _ in range(nrows)]
    for k, x in v.items():
        i, j = divmod(k, ncols)
        rows[i][j] = x
    return Mat(F, nrows, ncols, rows)


def submodule(M: HModule, vectors, label="") -> tuple[HModule, Mat]:
    """The H-submodule spanned by the given (homogeneous) vectors, which must be
    H-stable; returns it with the inclusion matrix."""
    F = M.field
    S = Subspace(F, M.dim, vectors)
    basis = S.basis
    degs = []
    for b in basis:
        ks = {M.key(k) for k in b}
        if len(ks) != 1:
            raise ModuleError("submodule basis is not homogeneous")
        degs.append(M.degrees[min(b)])
    incl = Mat.from_columns(F, M.dim, basis)

    def fn(i):
        act = M.act(i)
        cols = []
        for b in basis:
            img = act.apply(b)
            if S.reduce(img):
                raise ModuleError("subspace is not H-stable")
            cols.append({k: x for k, x in enumerate(S.coords(img)) if x})
        return Mat.from_columns(F, len(basis), cols)
    return HModule(M.hopf, degs, action_fn=fn, label=label or f"sub({M.label})"), incl


def quotient(M: HModule, vectors, label="") -> tuple[HModule, Mat]:
    """M modulo the H-submodule spanned by vectors; basis = standard vectors
    at the non-pivot positions.  Returns it with the projection matrix."""
    F = M.field
    S = Subspace(F, M.dim, vectors)
    keep = S.complement()
    pos = {j: k for k, j in enumerate(keep)}
    n = len(keep)

    def project(v):
        r = S.reduce(v)
        return {pos[j]: x for j, x in r.items()}
    proj = Mat.from_columns(F, n, [project({j: F.one}) for j in range(M.dim)])

    def fn(i):
        act = M.act(i)
        return Mat.from_columns(F, n, [project(act.column(j)) for j in keep])
    Q = HModule(M.hopf, [M.degrees[j] for j in keep], action_fn=fn, label=label or f"quot({M.label})")
    Q._cache["reducer"] = S
    return Q, proj


def conjugate(M: HModule, P: Mat, label="") -> HModule:
    """Module with action P^{-1} rho P (P a graded change of basis)."""
    Pinv = inverse(P)
    if Pinv is None:
        raise ModuleError("change of basis is singular")
    return HModule(M.hopf, M.degrees, action_fn=lambda i: Pinv @ M.act(i) @ P, label=label or M.label)


def verify_module(M: HModule, full: bool = False) -> list[str]:
    """Failed checks.  Checking g e_j for the algebra generators g and all j
    suffices: then rho is multiplicative on every word."""
    H = M.hopf
    fails = []
    if not M.act_elem(H.unit).is_identity():
        fails.append("unit acts as identity")
    idx = range(H.dim) if full else H.generators
    for i in idx:
        a = M.act(i)
        for r, row in enumerate(a.rows):
            for c in row:
                if not H.same_degree(M.degrees[r], M.degrees[c] + H.degrees[i]):
                    fails.append("action homogeneous")
                    break
            else:
                continue
            break
    for i in idx:
        for j in range(H.dim):
            lhs = M.act(i) @ M.act(j)
            rhs = M.act_elem(H.mult.get((i, j), {}))
            if lhs != rhs:
                fails.append(f"representation ({H.labels[i]})({H.labels[j]})")
                return fails
    return fails


# ---------------------------------------------------------------------------
# invariants and the stable category


def invariants(V: HModule) -> Mat:
    """Columns form a basis of {v : h v = eps(h) v}."""
    H = V.hopf
    F = V.field
    cols = []
    gens = H.generators
    for key, idx in sorted(V.blocks().items()):
        rows = []
        for g in gens:
            a = V.act(g).take_cols(idx)
            e = H.counit[g]
            arows = [dict(r) for r in a.rows]
            if e:
                for c, j in enumerate(idx):
                    F.axpy(arows[j], F.neg(e), {c: F.one})
            rows.extend(r for r in arows if r)
        sysm = Mat(F, len(rows), len(idx), rows)
        ns = nullspace(sysm)
        for v in ns.columns():
            cols.append({idx[k]: x for k, x in v.items()})
    return Mat.from_columns(F, V.dim, cols)


class StableInvariants:
    def __init__(self, dim, by_degree, reps):
        self.dim = dim
        self.by_degree = by_degree
        self.reps = reps

    def __repr__(self):
        return f"StableInvariants(dim={self.dim}, by_degree={self.by_degree})"


def stable_invariants(V: HModule) -> StableInvariants:
    """Z(V)/(Lambda.V), degree by degree; reps are vectors of V."""
    H = V.hopf
    F = V.field
    lam = V.lam()
    Z = invariants(V).columns()
    zb = defaultdict(list)
    for z in Z:
        zb[V.key(min(z))].append(z)
    by_degree = {}
    reps = []
    blocks = V.blocks()
    dl = H.integral_degree
    for key, idx in sorted(blocks.items()):
        if key not in zb:
            continue
        S = Subspace(F, V.dim)
        src = H.deg_key(V.degrees[idx[0]] - dl)
        for j in blocks.get(src, []):
            img = lam.column(j)
            if img:
                S.add(img)
        before = S.dim
        mine = []
        for z in zb[key]:
            if S.add(z):
                mine.append(z)
        assert S.dim - before == len(mine)
        if mine:
            by_degree[key] = len(mine)
            reps.extend(mine)
    return StableInvariants(len(reps), by_degree, reps)


def lambda_rank(V: HModule) -> int:
    return rank(V.lam())


def _lambda_system(V: HModule, W: HModule, target: Mat, deg: int | None):
    """Columns of the linear system g -> Lambda.g restricted to maps of the
    given degree (None = all), with the right-hand side vec(target)."""
    H = V.hopf
    F = V.field
    oddV, oddW = V.odd_indices(), W.odd_indices()
    terms = []
    for c, a, b in hom_terms(H, H.integral):
        left = W.act(b)
        right = V.act_elem(H.S_inv(H.basis(a)))
        if H.parity(a):
            left = flip_cols(left, oddW)
            right = flip_rows(right, oddV)
        terms.append((c, left.columns(), right.rows))
    unknowns = []
    for i in range(W.dim):
        for j in range(V.dim):
            if deg is None or H.same_degree(W.degrees[i] - V.degrees[j], deg):
                unknowns.append((i, j))
    cols = []
    n = V.dim
    for i, j in unknowns:
        col: dict = {}
        for c, lcols, rrows in terms:
            li, rj = lcols[i], rrows[j]
            if not li or not rj:
                continue
            for k, x in li.items():
                cx = F.mul(c, x)
                base = k * n
                F.axpy(col, cx, {base + l: y for l, y in rj.items()})
        cols.append(col)
    A = Mat.from_columns(F, W.dim * V.dim, cols)
    rhs = Mat.from_columns(F, W.dim * V.dim, [vec_of(target)])
    return A, rhs, unknowns


def lambda_preimage(V: HModule, W: HModule, target: Mat):
    """Some g in Hom_k(V, W) with Lambda.g = target, or None."""
    H = V.hopf
    tdeg = None
    for i, r in enumerate(target.rows):
        for j in r:
            tdeg = W.degrees[i] - V.degrees[j]
            break
        if tdeg is not None:
            break
    deg = None if tdeg is None else tdeg - H.integral_degree
    A, rhs, unknowns = _lambda_system(V, W, target, deg)
    x = solve(A, rhs)
    if x is None:
        return None
    g = Mat.zeros(V.field, W.dim, V.dim)
    for (i, j), r in zip(unknowns, x.rows):
        v = r.get(0)
        if v:
            g.rows[i][j] = v
    return g


def _projective_pieces(H: HopfAlgebra, e_index: int, parity: int):
    """(He as an H-module shifted by `parity`, its basis in H, g with Lambda.g = Id)."""
    key = ("proj", e_index, parity)
    if key not in H._cache:
        e, _ = H.projectives[e_index]
        F = H.field
        reg = regular(H, parity)
        vecs = [H.mul(H.basis(i), e) for i in range(H.dim)]
        He, incl = submodule(reg, [v for v in vecs if v])
        g = lambda_preimage(He, He, Mat.identity(F, He.dim))
        assert g is not None, "projective He without a homotopy witness"
        H._cache[key] = (He, incl.columns(), g)
    return H._cache[key]


def is_stably_zero(V: HModule):
    """Some g (a linear map, not H-linear in general) with Lambda.g = Id_V, or
    None when V is not projective."""
    H = V.hopf
    F = V.field
    if V.dim == 0:
        return Mat.zeros(F, 0, 0)
    eL = H.eps(H.integral)
    if eL:
        g = Mat.identity(F, V.dim).scale(F.inv(eL))
        return g if lambda_act(V, V, g).is_identity() else lambda_preimage(V, V, Mat.identity(F, V.dim))
    if H.projectives is None:
        return lambda_preimage(V, V, Mat.identity(F, V.dim))
    # socle test: pick generators w with independent socle images
    socles = Subspace(F, V.dim)
    chosen = []  # (projective index, w)
    total = 0
    for pi, (e, s) in enumerate(H.projectives):
        Pe = V.act_elem(e)
        Ps = V.act_elem(s)
        He_dim = _projective_pieces(H, pi, 0)[0].dim
        for key, idx in sorted(V.blocks().items()):
            for j in idx:
                w = Pe.column(j)
                if not w:
                    continue
                if socles.add(Ps.apply(w)):
                    chosen.append((pi, w))
                    total += He_dim
    if total != V.dim:
        return None
    cols = []
    blocks = []
    for pi, w in chosen:
        par = V.parity(min(w))
        He, hbasis, g = _projective_pieces(H, pi, par)
        for b in hbasis:
            cols.append(V.act_elem(b).apply(w))
        blocks.append(g)
    Phi = Mat.from_columns(F, V.dim, cols)
    Phinv = inverse(Phi)
    assert Phinv is not None, "socle test accepted a non-isomorphism"
    G = Phi @ block_diag(blocks) @ Phinv
    assert lambda_act(V, V, G).is_identity(), "projective witness failed"
    return G


def stable_hom(M: HModule, N: HModule):
    """(dim, reps) of Hom in the stable category; reps are matrices M -> N."""
    si = stable_invariants(hom(M, N))
    F = M.field
    return si.dim, [mat_of(F, v, N.dim, M.dim) for v in si.reps], si.by_degree


# ---------------------------------------------------------------------------
# shift functors


def lam_quotient(H: HopfAlgebra) -> tuple[HModule, Mat]:
    """H/k.Lambda from the shifted regular module (Lambda in degree 0)."""
    if "Q" not in H._cache:
        H._cache["Q"] = quotient(regular_lam(H), [H.integral], label="H/kL")
    return H._cache["Q"]


def eps_kernel(H: HopfAlgebra) -> tuple[HModule, Mat]:
    if "K" not in H._cache:
        F = H.field
        reg = regular(H)
        emat = Mat(F, 1, H.dim, [{i: e for i, e in enumerate(H.counit) if e}])
        ker = nullspace(emat).columns()
        H._cache["K"] = submodule(reg, ker, label="ker(eps)")
    return H._cache["K"]


def shift(M: HModule, direction: int = 1) -> HModule:
    """T(M) = M (x) H/kLambda, T^{-1}(M) = M (x) ker(eps)."""
    if direction == 1:
        out = tensor(M, lam_quotient(M.hopf)[0])
    elif direction == -1:
        out = tensor(M, eps_kernel(M.hopf)[0])
    else:
        raise ModuleError("shift direction must be +1 or -1")
    out.label = f"T{'' if direction == 1 else '^-1'}({M.label})"
    return out


class HLinearMap:
    def __init__(self, source: HModule, target: HModule, matrix: Mat):
        if matrix.shape != (target.dim, source.dim):
            raise ModuleError("map has the wrong shape")
        self.source, self.target, self.matrix = source, target, matrix

    def is_h_linear(self) -> bool:
        return is_h_linear(self.source, self.target, self.matrix)


def is_h_linear(M: HModule, N: HModule, f: Mat, gens=None) -> bool:
    H = M.hopf
    for r, row in enumerate(f.rows):
        for c in row:
            if not H.same_degree(N.degrees[r], M.degrees[c]):
                return False
    for g in (H.generators if gens is None else gens):
        if N.act(g) @ f != f @ M.act(g):
            return False
    return True


def freeness_iso(M: HModule):
    """f_M : M (x) H -> M_0 (x) H, m (x) l -> sum +- S^{-1}(l1) m (x) l2, and
    its inverse m (x) h -> sum +- h1 m (x) h2, both checked H-linear."""
    H = M.hopf
    F = H.field
    R = regular(H)
    src = tensor(M, R)
    tgt = tensor(trivial_like(M), R)
    n, d = M.dim, H.dim
    oddM = M.odd_indices()
    f = Mat.zeros(F, n * d, n * d)
    g = Mat.zeros(F, n * d, n * d)
    for l in range(d):
        for (a, b), c in H.comult[l].items():
            sa = M.act_elem(H.S_inv(H.basis(a)))
            ha = M.act(a)
            if H.parity(a):
                sa = flip_cols(sa, oddM)
                ha = flip_cols(ha, oddM)
            # column (m, l) of f gets c * (S^{-1}(a) m) (x) e_b
            for m in range(n):
                for k, x in sa.column(m).items():
                    F.axpy(f.rows[k * d + b], F.mul(c, x), {m * d + l: F.one})
                for k, x in ha.column(m).items():
                    F.axpy(g.rows[k * d + b], F.mul(c, x), {m * d + l: F.one})
    fm = HLinearMap(src, tgt, f)
    gm = HLinearMap(tgt, src, g)
    assert (f @ g).is_identity() and (g @ f).is_identity(), "freeness maps are not inverse"
    assert fm.is_h_linear() and gm.is_h_linear(), "freeness map is not H-linear"
    return fm, gm


def intertwiner_r(V: HModule, effort: int = 200, seed: int = 0) -> HLinearMap:
    """An H-linear isomorphism r: H (x) V -> V (x) H with r(Lambda (x) v) = v (x) Lambda."""
    H = V.hopf
    F = H.field
    R = regular(H)
    X = tensor(R, V)
    Y = tensor(V, R)
    n, d = V.dim, H.dim
    Z = invariants(hom(X, Y)).columns()
    # keep degree-0 maps only
    homm = [z for z in Z if all(H.same_degree(Y.degrees[k // X.dim], X.degrees[k % X.dim]) for k in z)]
    # constraint r(Lambda (x) v_j) = v_j (x) Lambda, linear in the coefficients
    rows_A = []
    rhs = []
    lam = H.integral
    for j in range(n):
        src = {}
        for a, c in lam.items():
            src[a * n + j] = c
        tgt = {j * d + a: c for a, c in lam.items()}
        for out in range(n * d):
            row = {}
            for t, z in enumerate(homm):
                acc = F.zero
                for s, c in src.items():
                    x = z.get(out * X.dim + s)
                    if x:
                        acc = F.add(acc, F.mul(c, x))
                if acc:
                    row[t] = acc
            rows_A.append(row)
            rhs.append({0: tgt[out]} if out in tgt else {})
    A = Mat(F, len(rows_A), len(homm), rows_A)
    b = Mat(F, len(rhs), 1, rhs)
    x0 = solve(A, b)
    if x0 is None:
        raise ModuleError("no intertwiner exists (upstream bug)")
    null = nullspace(A).columns()
    rng = _random.Random(seed)

    def build(coeffs):
        v = {}
        for t, c in coeffs.items():
            if c:
                F.axpy(v, c, homm[t])
        return mat_of(F, v, Y.dim, X.dim)
    base = {t: r.get(0) for t, r in enumerate(x0.rows) if r.get(0)}
    for attempt in range(effort):
        coeffs = dict(base)
        if attempt:
            for nv in null:
                c = F.random(rng, 2)
                for t, y in nv.items():
                    coeffs[t] = F.add(coeffs.get(t, F.zero), F.mul(c, y))
        r = build(coeffs)
        if inverse(r) is not None:
            return HLinearMap(X, Y, r)
    raise ModuleError("no invertible intertwiner found within the effort bound")


# ---------------------------------------------------------------------------
# nilpotent-generator diagnostics


def _nilpotent_generator(H: HopfAlgebra):
    if H.kind == "p_dg":
        return 1, H.params[0]
    if H.kind == "exterior" and H.params[0] == 1:
        return 1, 2
    if H.kind == "taft":
        n = H.params[0]
        return 1, n
    raise ModuleError(f"jordan_type/slash need a single nilpotent generator; got {H.name}")


def jordan_type(M: HModule):
    """Sorted list of (block size, lowest degree) for the nilpotent generator."""
    H = M.hopf
    g, N = _nilpotent_generator(H)
    D = M.act(g)
    F = M.field
    graded = H.modulus == 0 or H.modulus >= N
    powers = [Mat.identity(F, M.dim)]
    for _ in range(N):
        powers.append(D @ powers[-1])
    if not graded:
        ranks = [rank(p) for p in powers]
        out = []
        for s in range(1, N + 1):
            cnt = (ranks[s - 1] - ranks[s]) - ((ranks[s] - ranks[s + 1]) if s < N else 0)
            out += [(s, 0)] * cnt
        return sorted(out)
    blocks = M.blocks()

    def r(a, s):
        idx = blocks.get(H.deg_key(a), [])
        if not idx or s > N:
            return 0
        if s == 0:
            return len(idx)
        return rank(powers[s].take_cols(idx))

    out = []
    keys = sorted({M.degrees[k] for k in range(M.dim)}) if H.modulus == 0 else sorted(blocks)
    for a in keys:
        def S(s):
            return r(a, s) - r(a - 1, s + 1)
        for L in range(1, N + 1):
            cnt = S(L - 1) - S(L)
            out += [(L, a)] * cnt
    return sorted(out)


def slash_cohomology(M: HModule, q: int) -> dict[int, int]:
    """Per-degree dims of ker d^q / im d^{N-q}."""
    H = M.hopf
    g, N = _nilpotent_generator(H)
    if not 1 <= q <= N - 1:
        raise ModuleError(f"q must lie in 1..{N - 1}")
    F = M.field
    D = M.act(g)
    Dq = Mat.identity(F, M.dim)
    for _ in range(q):
        Dq = D @ Dq
    Dp = Mat.identity(F, M.dim)
    for _ in range(N - q):
        Dp = D @ Dp
    blocks = M.blocks()
    out = {}
    for key, idx in sorted(blocks.items()):
        ker = len(idx) - rank(Dq.take_cols(idx))
        src = H.deg_key(M.degrees[idx[0]] - (N - q))
        im = rank(Dp.take_cols(blocks.get(src, [])).take_rows(idx)) if src in blocks else 0
        dim = ker - im
        if dim:
            out[key] = dim
    return out


# ---------------------------------------------------------------------------
# random modules


def random_graded_basis_change(M: HModule, rng) -> Mat:
    """Block-diagonal (per degree) product L U of unit triangular matrices
    with entries in {-1, 0, 1}, so the inverse keeps small coefficients."""
    F = M.field
    rows = [{} for _ in range(M.dim)]
    for key, idx in sorted(M.blocks().items()):
        k = len(idx)
        L = Mat.identity(F, k)
        U = Mat.identity(F, k)
        for i in range(k):
            for j in range(i):
                c = rng.choice((-1, 0, 1))
                if c:
                    L.rows[i][j] = F.coerce(c)
                c = rng.choice((-1, 0, 1))
                if c:
                    U.rows[j][i] = F.coerce(c)
        B = L @ U
        for a, r in enumerate(B.rows):
            for b, x in r.items():
                rows[idx[a]][idx[b]] = x
    return Mat(F, M.dim, M.dim, rows)


def random_homogeneous(H: HopfAlgebra, rng, degree_key=None) -> dict:
    F = H.field
    keys = sorted({H.deg_key(d) for d in H.degrees})
    key = rng.choice(keys) if degree_key is None else degree_key
    x = {}
    for i in range(H.dim):
        if H.deg_key(H.degrees[i]) == key:
            c = F.random(rng, 2)
            if c:
                x[i] = c
    return x


def random_module(H: HopfAlgebra, rng=None, pieces: int | None = None, max_dim: int | None = None,
                  basis_change: bool = True) -> HModule:
    """Direct sum of shifted trivial, regular and cyclic (sub/quotient of H)
    modules, followed by a random graded change of basis."""
    rng = rng or _random.Random(0)
    if pieces is None:
        pieces = rng.randint(1, 2)
    parts = []
    for _ in range(pieces):
        r = rng.randint(-2, 2)
        kind = rng.choice(["trivial", "regular", "quot", "sub", "quot", "sub"])
        if kind == "trivial":
            parts.append(trivial(H, r))
            continue
        if kind == "regular":
            parts.append(regular(H, r))
            continue
        x = {}
        while not x:
            x = random_homogeneous(H, rng)
        R = regular(H, r)
        vecs = [H.mul(H.basis(i), x) for i in range(H.dim)]
        vecs = [v for v in vecs if v]
        if kind == "sub":
            if vecs:
                parts.append(submodule(R, vecs)[0])
            else:
                parts.append(trivial(H, r))
        else:
            Q = quotient(R, vecs)[0]
            parts.append(Q if Q.dim else trivial(H, r))
    M = direct_sum(parts)
    if max_dim is not None and M.dim > max_dim:
        return random_module(H, rng, 1, max_dim, basis_change)
    M = materialize(M)
    if basis_change and M.dim:
        M = materialize(conjugate(M, random_graded_basis_change(M, rng)))
    M.label = "M"
    return M


def materialize(M: HModule) -> HModule:
    """Copy with every action matrix computed now."""
    return HModule(M.hopf, M.degrees, actions=M.actions(), label=M.label)


def string_module(H: HopfAlgebra, strings) -> HModule:
    """For Taft algebras: Z/n-graded strings (start degree, length) with d
    raising degree by one and K acting by zeta^degree."""
    F = H.field
    n = H.params[0]
    z = F.zeta()
    degs = []
    dmat_rows = []
    for start, L in strings:
        base = len(degs)
        for t in range(L):
            degs.append(start + t)
        for t in range(L):
            dmat_rows.append((base + t + 1, base + t) if t + 1 < L else None)
    N = len(degs)
    D = Mat.zeros(F, N, N)
    for e in dmat_rows:
        if e:
            D.rows[e[0]][e[1]] = F.one
    Kmat = Mat.diag(F, [F.pow(z, d % n) for d in degs])
    return from_generators(H, degs, {H.generators[0]: Kmat, H.generators[1]: D}, label="strings")
