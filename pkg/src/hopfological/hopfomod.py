"""Hopfological modules: modules over the smash product B = A # H.

A BModule carries left A-action matrices, an HModule for the H-action on
the same basis and, for bimodules, an optional right action of a second
module algebra.  Homotopy-category computations all reduce to the H-module
Hom_A(M, N) with the S^{-1}-twisted action.
"""

from __future__ import annotations

import random as _random
from collections import defaultdict

from .exactla import Mat, Subspace, block_diag, kron, nullspace, rank, solve
from .hmod import (
    HModule, flip_cols, flip_rows, hom_act, invariants, is_h_linear, is_stably_zero,
    lam_quotient, eps_kernel, mat_of, regular_lam, stable_invariants, tensor as htensor,
    vec_of, verify_module,
)
from .modalg import AlgebraMap, ModuleAlgebra


class BModuleError(ValueError):
    pass


class BModule:
    def __init__(self, algebra: ModuleAlgebra, h: HModule, a_fn, right_algebra=None, right_fn=None,
                 cofibrant: bool = False, label: str = ""):
        self.algebra = algebra
        self.hopf = algebra.hopf
        self.field = algebra.field
        self.h = h
        self.dim = h.dim
        self.degrees = h.degrees
        self._a_fn = a_fn
        self._a: dict[int, Mat] = {}
        self.right_algebra = right_algebra
        self._r_fn = right_fn
        self._r: dict[int, Mat] = {}
        self.cofibrant = cofibrant
        self.label = label

    def __repr__(self):
        return f"BModule({self.label or '?'}, dim={self.dim}, over {self.algebra.name}#{self.hopf.name})"

    def a_act(self, i: int) -> Mat:
        m = self._a.get(i)
        if m is None:
            m = self._a_fn(i)
            self._a[i] = m
        return m

    def a_elem(self, x: dict) -> Mat:
        F = self.field
        acc = Mat.zeros(F, self.dim, self.dim)
        for i, c in x.items():
            acc = acc.axpy(c, self.a_act(i))
        return acc

    def r_act(self, i: int) -> Mat:
        if self._r_fn is None:
            raise BModuleError("module has no right action")
        m = self._r.get(i)
        if m is None:
            m = self._r_fn(i)
            self._r[i] = m
        return m

    @property
    def is_bimodule(self) -> bool:
        return self._r_fn is not None

    def materialize(self) -> "BModule":
        for i in range(self.algebra.dim):
            self.a_act(i)
        for i in range(self.hopf.dim):
            self.h.act(i)
        if self.is_bimodule:
            for i in range(self.right_algebra.dim):
                self.r_act(i)
        return self


def verify_bmodule(M: BModule) -> list[str]:
    A, H, F = M.algebra, M.hopf, M.field
    fails = [f"H-module: {f}" for f in verify_module(M.h)]
    if not M.a_elem(A.unit).is_identity():
        fails.append("A unit")
    for i in range(A.dim):
        a = M.a_act(i)
        for r, row in enumerate(a.rows):
            if any(not H.same_degree(M.degrees[r], M.degrees[c] + A.degrees[i]) for c in row):
                fails.append("A-action homogeneous")
                break
        for j in range(A.dim):
            if a @ M.a_act(j) != M.a_elem(A.mult.get((i, j), {})):
                fails.append("A-representation")
                return fails
    # h(a m) = sum (-1)^{|h2||a|} (h1.a)(h2 m), for generators h
    for g in H.generators:
        for i in range(A.dim):
            lhs = M.h.act(g) @ M.a_act(i)
            rhs = Mat.zeros(F, M.dim, M.dim)
            for (h1, h2), c in H.comult[g].items():
                if H.parity(h2) and A.parity(i):
                    c = F.neg(c)
                ha = A.action.act(h1).column(i)
                if ha:
                    rhs = rhs.axpy(c, M.a_elem(ha) @ M.h.act(h2))
            if lhs != rhs:
                fails.append("smash compatibility")
                return fails
    if M.is_bimodule:
        R = M.right_algebra
        for i in range(R.dim):
            for j in range(R.dim):
                # right action: (m.a).b = m.(ab), i.e. rho(b) rho(a) = rho(ab)
                if M.r_act(j) @ M.r_act(i) != _elem(M.r_act, R.mult.get((i, j), {}), M):
                    fails.append("right representation")
                    return fails
            for k in range(A.dim):
                if M.r_act(i) @ M.a_act(k) != M.a_act(k) @ M.r_act(i):
                    fails.append("bimodule")
                    return fails
            for g in H.generators:
                lhs = M.h.act(g) @ M.r_act(i)
                rhs = Mat.zeros(F, M.dim, M.dim)
                # h(m.a) = sum (-1)^{|h2||m|} (h1 m).(h2 a)
                for (h1, h2), c in H.comult[g].items():
                    hb = R.action.act(h2).column(i)
                    if hb:
                        left = M.h.act(h1)
                        if H.parity(h2):
                            left = flip_cols(left, M.h.odd_indices())
                        rhs = rhs.axpy(c, _elem(M.r_act, hb, M) @ left)
                if lhs != rhs:
                    fails.append("right smash compatibility")
                    return fails
    return fails


def _elem(fn, x: dict, M) -> Mat:
    acc = Mat.zeros(M.field, M.dim, M.dim)
    for i, c in x.items():
        acc = acc.axpy(c, fn(i))
    return acc


# ---------------------------------------------------------------------------
# constructors


def algebra_module(A: ModuleAlgebra, bimodule: bool = False) -> BModule:
    """A as a left B-module (free of rank one), optionally with its right action."""
    return BModule(A, A.action, A.left_mult_matrix,
                   right_algebra=A if bimodule else None,
                   right_fn=A.right_mult_matrix if bimodule else None,
                   cofibrant=True, label="A")


def tensor_h(M: BModule, V: HModule, label: str = "") -> BModule:
    """M (x) V with A acting on M and H diagonally; the right action of a
    bimodule passes V with a Koszul sign."""
    I = Mat.identity(M.field, V.dim)
    oddV = V.odd_indices()

    def a_fn(i):
        return kron(M.a_act(i), I)
    r_fn = None
    # the right action survives only for cocommutative H
    if M.is_bimodule and M.hopf.cocommutative:
        R = M.right_algebra

        def r_fn(i):
            P = flip_rows(I, oddV) if R.parity(i) else I
            return kron(M.r_act(i), P)
    return BModule(M.algebra, htensor(M.h, V), a_fn, M.right_algebra if r_fn else None, r_fn,
                   cofibrant=M.cofibrant, label=label or f"({M.label}*{V.label})")


def free_module(A: ModuleAlgebra, V: HModule, label: str = "") -> BModule:
    M = tensor_h(algebra_module(A), V, label=label or f"A*{V.label}")
    M.cofibrant = True
    return M


def direct_sum_B(mods, label: str = "") -> BModule:
    mods = list(mods)
    A = mods[0].algebra
    from .hmod import direct_sum
    r_fn = None
    if all(m.is_bimodule for m in mods):
        def r_fn(i):
            return block_diag([m.r_act(i) for m in mods])
    return BModule(A, direct_sum([m.h for m in mods]),
                   lambda i: block_diag([m.a_act(i) for m in mods]),
                   mods[0].right_algebra if r_fn else None, r_fn,
                   cofibrant=all(m.cofibrant for m in mods),
                   label=label or "(+)".join(m.label for m in mods))


def _induced(S: Subspace, keep, act, positions):
    """Matrix of `act` on the quotient by S in the basis `keep`."""
    F = S.field
    n = len(keep)
    cols = []
    for j in keep:
        r = S.reduce(act.column(j))
        cols.append({positions[k]: x for k, x in r.items()})
    return Mat.from_columns(F, n, cols)


def quotient_B(M: BModule, vectors, label: str = "") -> tuple[BModule, Mat]:
    """M modulo the B-submodule spanned by `vectors` (must be stable under A,
    H and any right action); returns the quotient and the projection."""
    F = M.field
    S = Subspace(F, M.dim, vectors)
    for b in S.basis:
        for i in range(M.algebra.dim):
            if S.reduce(M.a_act(i).apply(b)):
                raise BModuleError("relations are not A-stable")
        if M.is_bimodule:
            for i in range(M.right_algebra.dim):
                if S.reduce(M.r_act(i).apply(b)):
                    raise BModuleError("relations are not stable under the right action")
    keep = S.complement()
    pos = {j: k for k, j in enumerate(keep)}
    n = len(keep)
    proj = Mat.from_columns(F, n, [{pos[k]: x for k, x in S.reduce({j: F.one}).items()}
                                   for j in range(M.dim)])

    def hfn(i):
        act = M.h.act(i)
        for b in S.basis:
            if S.reduce(act.apply(b)):
                raise BModuleError("relations are not H-stable")
        return _induced(S, keep, act, pos)
    h = HModule(M.hopf, [M.degrees[j] for j in keep], action_fn=hfn, label=label)
    r_fn = (lambda i: _induced(S, keep, M.r_act(i), pos)) if M.is_bimodule else None
    Q = BModule(M.algebra, h, lambda i: _induced(S, keep, M.a_act(i), pos),
                M.right_algebra, r_fn, label=label or f"quot({M.label})")
    Q._reducer = (S, keep)
    return Q, proj


def submodule_B(M: BModule, vectors, label: str = "", cofibrant: bool = False) -> tuple[BModule, Mat]:
    F = M.field
    S = Subspace(F, M.dim, vectors)
    basis = S.basis
    incl = Mat.from_columns(F, M.dim, basis)

    def restrict(act):
        cols = []
        for b in basis:
            img = act.apply(b)
            if S.reduce(img):
                raise BModuleError("subspace is not stable")
            cols.append({k: x for k, x in enumerate(S.coords(img)) if x})
        return Mat.from_columns(F, len(basis), cols)
    degs = [M.degrees[min(b)] for b in basis]
    h = HModule(M.hopf, degs, action_fn=lambda i: restrict(M.h.act(i)), label=label)
    r_fn = (lambda i: restrict(M.r_act(i))) if M.is_bimodule else None
    return BModule(M.algebra, h, lambda i: restrict(M.a_act(i)), M.right_algebra, r_fn,
                   cofibrant=cofibrant, label=label or f"sub({M.label})"), incl


def h_as_bmodule(A: ModuleAlgebra, V: HModule, character: dict | None = None, label="") -> BModule:
    """An H-module with A acting through a character (trivial-action algebras)."""
    F = A.field
    n = V.dim
    if character is None:
        character = {i: x for i, x in A.unit.items()}
        # augmentation: unit -> 1, everything else -> 0
        character = {next(iter(A.unit)): F.one} if len(A.unit) == 1 else character

    def a_fn(i):
        c = character.get(i, F.zero)
        return Mat.identity(F, n).scale(c) if c else Mat.zeros(F, n, n)
    return BModule(A, V, a_fn, label=label or V.label)


def simple_module(A: ModuleAlgebra, j: int, V: HModule | None = None) -> BModule:
    """S_j (x) V for a basic algebra with trivial action."""
    from .hmod import trivial
    if A.characters is None:
        raise BModuleError(f"{A.name} records no simple modules")
    V = V if V is not None else trivial(A.hopf)
    return h_as_bmodule(A, V, A.characters[j], label=f"S{j + 1}")


def projective_module(A: ModuleAlgebra, i: int) -> BModule:
    """A e_i (a summand of A; cofibrant) for trivial-action algebras."""
    if A.idempotents is None:
        raise BModuleError(f"{A.name} records no idempotents")
    e = A.idempotents[i]
    R = algebra_module(A)
    vecs = [A.mul(A.basis(k), e) for k in range(A.dim)]
    P, _ = submodule_B(R, [v for v in vecs if v], label=f"P{i + 1}", cofibrant=True)
    return P


def restrict_along(phi: AlgebraMap, N: BModule) -> BModule:
    """phi^*: B2-modules -> B1-modules by pulling back the A-action."""
    if N.algebra is not phi.target:
        raise BModuleError("module is not over the target of phi")
    return BModule(phi.source, N.h, lambda i: N.a_elem(phi.matrix.column(i)),
                   label=f"res({N.label})")


def shift_B(M: BModule, direction: int = 1) -> BModule:
    H = M.hopf
    if direction == 1:
        out = tensor_h(M, lam_quotient(H)[0])
    elif direction == -1:
        out = tensor_h(M, eps_kernel(H)[0])
    else:
        raise BModuleError("shift direction must be +1 or -1")
    out.label = f"T{'' if direction == 1 else '^-1'}({M.label})"
    return out


# ---------------------------------------------------------------------------
# maps


def is_a_linear(M: BModule, N: BModule, f: Mat) -> bool:
    H = M.hopf
    for r, row in enumerate(f.rows):
        for c in row:
            if not H.same_degree(N.degrees[r], M.degrees[c]):
                return False
    return all(N.a_act(i) @ f == f @ M.a_act(i) for i in range(M.algebra.dim))


class BLinearMap:
    """A linear map between B-modules with verified flags."""

    def __init__(self, source: BModule, target: BModule, matrix: Mat, require_b: bool = False):
        if matrix.shape != (target.dim, source.dim):
            raise BModuleError("map has the wrong shape")
        self.source, self.target, self.matrix = source, target, matrix
        self.a_linear = is_a_linear(source, target, matrix)
        self.h_linear = is_h_linear(source.h, target.h, matrix)
        if require_b and not self.b_linear:
            raise BModuleError("map is not B-linear")

    @property
    def b_linear(self) -> bool:
        return self.a_linear and self.h_linear

    def __matmul__(self, other: "BLinearMap") -> "BLinearMap":
        return BLinearMap(other.source, self.target, self.matrix @ other.matrix)


def identity_B(M: BModule) -> BLinearMap:
    return BLinearMap(M, M, Mat.identity(M.field, M.dim))


# ---------------------------------------------------------------------------
# enriched Hom and the homotopy category


class EnrichedHom:
    """Hom_A(M, N) as an H-module W; `maps[k]` is basis vector k as vec(f)."""

    def __init__(self, M, N, W, maps, reducer):
        self.source, self.target, self.module, self.maps, self._S = M, N, W, maps, reducer

    def matrix(self, k) -> Mat:
        return mat_of(self.field, self.maps[k], self.target.dim, self.source.dim)

    @property
    def field(self):
        return self.source.field

    def combine(self, coeffs) -> Mat:
        F = self.field
        v: dict = {}
        for c, m in zip(coeffs, self.maps):
            if c:
                F.axpy(v, c, m)
        return mat_of(F, v, self.target.dim, self.source.dim)

    def coords(self, f: Mat):
        v = vec_of(f)
        if self._S.reduce(v):
            return None
        return self._S.coords(v)


def a_linear_maps(M: BModule, N: BModule) -> list[dict]:
    """Basis (as vec dicts) of the graded A-linear maps: a f = (-1)^{|a||f|} f a."""
    A, H, F = M.algebra, M.hopf, M.field
    nm = M.dim
    by_deg = defaultdict(list)
    for i in range(N.dim):
        for j in range(nm):
            by_deg[H.deg_key(N.degrees[i] - M.degrees[j])].append((i, j))
    Na = [N.a_act(a).columns() for a in range(A.dim)]
    Ma = [M.a_act(a).rows for a in range(A.dim)]
    out = []
    for key, unknowns in sorted(by_deg.items()):
        odd = H.super and (N.degrees[unknowns[0][0]] - M.degrees[unknowns[0][1]]) & 1
        eqs: dict = defaultdict(dict)
        for u, (i, j) in enumerate(unknowns):
            for a in range(A.dim):
                s = F.neg(F.one) if (odd and A.parity(a)) else F.one
                for k, x in Na[a][i].items():
                    row = eqs[(a, k, j)]
                    row[u] = F.add(row.get(u, F.zero), x)
                for j2, y in Ma[a][j].items():
                    row = eqs[(a, i, j2)]
                    row[u] = F.sub(row.get(u, F.zero), F.mul(s, y))
        rows = [{u: x for u, x in r.items() if x} for r in eqs.values()]
        rows = [r for r in rows if r]
        ns = nullspace(Mat(F, len(rows), len(unknowns), rows))
        for v in ns.columns():
            out.append({unknowns[u][0] * nm + unknowns[u][1]: x for u, x in v.items()})
    return out


def enriched_hom(M: BModule, N: BModule) -> EnrichedHom:
    if M.algebra is not N.algebra:
        raise BModuleError("modules over different module algebras")
    H, F = M.hopf, M.field
    S = Subspace(F, M.dim * N.dim, a_linear_maps(M, N))
    maps = S.basis
    nm = M.dim
    degs = []
    for v in maps:
        i, j = divmod(min(v), nm)
        degs.append(N.degrees[i] - M.degrees[j])

    def fn(h):
        cols = []
        for v in maps:
            g = vec_of(hom_act(M.h, N.h, H.basis(h), mat_of(F, v, N.dim, M.dim)))
            if S.reduce(g):
                raise BModuleError("Hom_A is not H-stable (sign convention bug)")
            cols.append({k: x for k, x in enumerate(S.coords(g)) if x})
        return Mat.from_columns(F, len(maps), cols)
    W = HModule(H, degs, action_fn=fn, label=f"Hom_A({M.label},{N.label})")
    return EnrichedHom(M, N, W, maps, S)


def chain_maps(M: BModule, N: BModule, degree: int | None = 0) -> list[Mat]:
    """Basis of Hom_B(M, N) = Z(Hom_A(M, N)) in the given degree (None: the
    whole graded space; nonzero degrees give maps that commute with H in the
    graded sense only)."""
    E = enriched_hom(M, N)
    W = E.module
    Z = invariants(W)
    H = M.hopf
    out = []
    for z in Z.columns():
        if degree is not None and not H.same_degree(W.degrees[min(z)], degree):
            continue
        f = E.combine([z.get(k, E.field.zero) for k in range(len(E.maps))])
        if degree is not None and H.same_degree(degree, 0):
            assert is_a_linear(M, N, f) and is_h_linear(M.h, N.h, f), "chain map is not B-linear"
        out.append(f)
    return out


def homotopy_hom(M: BModule, N: BModule, degree: int | None = None):
    """(dim, representatives, per-degree dims) of the stable invariants of
    Hom_A(M, N): degree 0 is Hom in the homotopy category, degree k is Hom
    into the k-th grading shift; degree=None returns the whole graded space."""
    E = enriched_hom(M, N)
    W = E.module
    si = stable_invariants(W)
    H = M.hopf
    reps, by_degree = [], {}
    for z in si.reps:
        key = H.deg_key(W.degrees[min(z)])
        if degree is not None and key != H.deg_key(degree):
            continue
        reps.append(E.combine([z.get(k, E.field.zero) for k in range(len(E.maps))]))
        by_degree[key] = by_degree.get(key, 0) + 1
    return len(reps), reps, by_degree


def null_homotopy_witness(f: BLinearMap):
    """Some A-linear g with Lambda.g = f, or None when [f] != 0."""
    if not f.b_linear:
        raise BModuleError("map is not B-linear")
    M, N = f.source, f.target
    E = enriched_hom(M, N)
    F = M.field
    c = E.coords(f.matrix)
    assert c is not None, "B-linear map outside Hom_A"
    if not any(c):
        return Mat.zeros(F, N.dim, M.dim)
    lam = E.module.lam()
    rhs = Mat(F, len(c), 1, [({0: x} if x else {}) for x in c])
    x = solve(lam, rhs)
    if x is None:
        return None
    g = E.combine([r.get(0, F.zero) for r in x.rows])
    from .hmod import lambda_act
    assert lambda_act(M.h, N.h, g) == f.matrix, "witness check failed"
    return g


def factor_through_lambda(f: BLinearMap, g: Mat) -> Mat:
    """g~: M (x) H' -> N, m (x) h -> (h.g)(m); then f = g~ o lambda_M."""
    M, N = f.source, f.target
    H, F = M.hopf, M.field
    d = H.dim
    out = Mat.zeros(F, N.dim, M.dim * d)
    for h in range(d):
        hg = hom_act(M.h, N.h, H.basis(h), g)
        for j in range(M.dim):
            for i, x in hg.column(j).items():
                out.rows[i][j * d + h] = x
    return out


def lambda_embed(M: BModule) -> BLinearMap:
    H, F = M.hopf, M.field
    T = tensor_h(M, regular_lam(H))
    d = H.dim
    cols = [{j * d + c: x for c, x in H.integral.items()} for j in range(M.dim)]
    return BLinearMap(M, T, Mat.from_columns(F, T.dim, cols), require_b=True)


# ---------------------------------------------------------------------------
# cones and triangles


class TriangleData:
    """X --u--> Y --v--> C_u --w--> TX, with the embedded SES 0 -> Y -> C -> TX -> 0."""

    def __init__(self, u, v, w, cone, tx, xh_map):
        self.u, self.v, self.w = u, v, w
        self.X, self.Y, self.C, self.TX = u.source, u.target, cone, tx
        self.xh_map = xh_map  # X (x) H' -> C
        self.comparison = None  # C -> Z for triangles built from a SES

    def ses_exact(self) -> bool:
        v, w = self.v.matrix, self.w.matrix
        return (rank(v) == self.Y.dim and rank(w) == self.TX.dim
                and (w @ v).is_zero() and self.Y.dim + self.TX.dim == self.C.dim)

    def vu_factors(self) -> bool:
        """v o u equals the composite X -> X (x) H' -> C through lambda_X."""
        lam = lambda_embed(self.X).matrix
        return (self.v.matrix @ self.u.matrix) == (self.xh_map @ lam)


def cone(u: BLinearMap):
    """Cone of a B-linear map: (X (x) H' + Y) / span{(x (x) Lambda, -u(x))}."""
    if not u.b_linear:
        raise BModuleError("cone needs a B-linear map")
    X, Y = u.source, u.target
    H, F = X.hopf, X.field
    d = H.dim
    Hp = regular_lam(H)
    XH = tensor_h(X, Hp)
    amb = direct_sum_B([XH, Y])
    off = XH.dim
    rels = []
    for x in range(X.dim):
        r = {x * d + c: a for c, a in H.integral.items()}
        for k, y in u.matrix.column(x).items():
            r[off + k] = F.neg(y)
        rels.append(r)
    C, proj = quotient_B(amb, rels, label=f"Cone({X.label}->{Y.label})")
    C.cofibrant = X.cofibrant and Y.cofibrant
    Qm, qproj = lam_quotient(H)
    TX = tensor_h(X, Qm, label=f"T({X.label})")
    S, keep = C._reducer
    wcols = []
    nq = Qm.dim
    for j in keep:
        if j < off:
            x, c = divmod(j, d)
            wcols.append({x * nq + k: a for k, a in qproj.column(c).items()})
        else:
            wcols.append({})
    w = BLinearMap(C, TX, Mat.from_columns(F, TX.dim, wcols))
    v = BLinearMap(Y, C, proj.take_cols(range(off, off + Y.dim)))
    xh = proj.take_cols(range(off))
    tri = TriangleData(u, v, w, C, TX, xh)
    return C, tri


def quasi_iso(f: BLinearMap):
    """(True, witness) when the cone of f is stably zero as an H-module."""
    C, _ = cone(f)
    g = is_stably_zero(C.h)
    return g is not None, g


def contractible_certificate(A: ModuleAlgebra):
    """Some x in A with Lambda.x = 1, or None."""
    F = A.field
    lam = A.action.lam()
    rhs = Mat(F, A.dim, 1, [({0: A.unit[i]} if i in A.unit else {}) for i in range(A.dim)])
    x = solve(lam, rhs)
    if x is None:
        return None
    return {i: r[0] for i, r in enumerate(x.rows) if r.get(0)}


def lift_section(beta: BLinearMap, gamma0: Mat, Z: BModule) -> BLinearMap:
    """Given a B-linear surjection beta: C -> Z (x) H and an A-linear section
    gamma0, return the B-linear section z (x) h -> sum h2 gamma0(S^{-1}(h1) z (x) 1)."""
    from .hmod import freeness_iso
    C, ZH = beta.source, beta.target
    H, F = C.hopf, C.field
    d = H.dim
    if not beta.b_linear:
        raise BModuleError("beta is not B-linear")
    if ZH.dim != Z.dim * d or rank(beta.matrix) != ZH.dim:
        raise BModuleError("beta is not a surjection onto Z (x) H")
    if not (beta.matrix @ gamma0).is_identity():
        raise BModuleError("gamma0 is not a section of beta")
    if not is_a_linear(ZH, C, gamma0):
        raise BModuleError("gamma0 is not A-linear")
    fm, _ = freeness_iso(Z.h)
    # Gamma: Z_0 (x) H -> C, z (x) h -> (-1)^{|h||z|} h . gamma0(z (x) 1)
    cols = []
    for z in range(Z.dim):
        base = {}
        for u, c in H.unit.items():
            F.axpy(base, c, gamma0.column(z * d + u))
        for h in range(d):
            img = C.h.act(h).apply(base)
            if H.parity(h) and Z.h.parity(z):
                img = {k: F.neg(x) for k, x in img.items()}
            cols.append(img)
    Gamma = Mat.from_columns(F, C.dim, cols)
    gamma = BLinearMap(ZH, C, Gamma @ fm.matrix)
    assert gamma.b_linear, "lifted section is not B-linear"
    assert (beta.matrix @ gamma.matrix).is_identity(), "lifted map is not a section"
    return gamma


def find_a_section(p: BLinearMap):
    """An A-linear s with p s = Id, or None."""
    Y, Z = p.source, p.target
    A, H, F = Y.algebra, Y.hopf, Y.field
    unknowns = [(k, l) for k in range(Y.dim) for l in range(Z.dim) if H.same_degree(Y.degrees[k], Z.degrees[l])]
    rows, rhs = [], []
    P = p.matrix
    # (p s)[r][l] = delta
    pcols = P.columns()
    eq = defaultdict(dict)
    for t, (k, l) in enumerate(unknowns):
        for r, x in pcols[k].items():
            eq[("p", r, l)][t] = x
    for (tag, r, l), row in eq.items():
        rows.append(row)
        rhs.append({0: F.one} if r == l else {})
    for r in range(Z.dim):
        if ("p", r, r) not in eq:
            return None
    # rho_Y(a) s = s rho_Z(a)
    for a in range(A.dim):
        Ya = Y.a_act(a).columns()
        Za = Z.a_act(a).rows
        eqa = defaultdict(dict)
        for t, (k, l) in enumerate(unknowns):
            for r, x in Ya[k].items():
                eqa[(r, l)][t] = F.add(eqa[(r, l)].get(t, F.zero), x)
            for l2, y in Za[l].items():
                eqa[(k, l2)][t] = F.sub(eqa[(k, l2)].get(t, F.zero), y)
        for row in eqa.values():
            row = {t: x for t, x in row.items() if x}
            if row:
                rows.append(row)
                rhs.append({})
    sysm = Mat(F, len(rows), len(unknowns), rows)
    x = solve(sysm, Mat(F, len(rhs), 1, rhs))
    if x is None:
        return None
    s = Mat.zeros(F, Y.dim, Z.dim)
    for (k, l), r in zip(unknowns, x.rows):
        if r.get(0):
            s.rows[k][l] = r[0]
    return s


def triangle_from_ses(i: BLinearMap, p: BLinearMap, section: Mat | None = None) -> TriangleData:
    """Distinguished triangle X -> Y -> C_i -> TX for an A-split SES
    0 -> X -> Y -> Z -> 0; the connecting map is the pair (w, comparison)
    with comparison: C_i -> Z a quasi-isomorphism."""
    X, Y, Z = i.source, i.target, p.target
    if not (i.b_linear and p.b_linear):
        raise BModuleError("SES maps must be B-linear")
    if not (p.matrix @ i.matrix).is_zero() or rank(i.matrix) != X.dim or rank(p.matrix) != Z.dim \
            or X.dim + Z.dim != Y.dim:
        raise BModuleError("sequence is not exact")
    s = section if section is not None else find_a_section(p)
    if s is None or not (p.matrix @ s).is_identity() or not is_a_linear(Z, Y, s):
        raise BModuleError("sequence is not A-split")
    C, tri = cone(i)
    S, keep = C._reducer
    off = X.dim * X.hopf.dim
    F = X.field
    cols = []
    for j in keep:
        cols.append(p.matrix.column(j - off) if j >= off else {})
    comp = BLinearMap(C, Z, Mat.from_columns(F, Z.dim, cols), require_b=True)
    ok, _ = quasi_iso(comp)
    assert ok, "cone comparison is not a quasi-isomorphism"
    tri.comparison = comp
    tri.section = s
    return tri


# ---------------------------------------------------------------------------
# random data and catalogs


def random_chain_map(M: BModule, N: BModule, rng) -> BLinearMap:
    F = M.field
    basis = chain_maps(M, N)
    f = Mat.zeros(F, N.dim, M.dim)
    for b in basis:
        c = F.random(rng, 2)
        if c:
            f = f.axpy(c, b)
    return BLinearMap(M, N, f, require_b=True)


def bmodule_catalog(A: ModuleAlgebra, rng=None, small: bool = True) -> list[BModule]:
    """A handful of B-modules over A: A, free modules on small H-modules, shifts."""
    from .hmod import random_module, trivial
    rng = rng or _random.Random(0)
    H = A.hopf
    mods = [algebra_module(A), free_module(A, trivial(H, 1)), shift_B(algebra_module(A), 1)]
    V = random_module(H, rng, pieces=1, max_dim=4 if small else None)
    mods.append(free_module(A, V))
    if A.is_trivial_action() and A.characters:
        mods.append(simple_module(A, 0))
    return mods
