"""H-module algebras, smash products, opposite and tensor module algebras,
and a small catalog of examples."""

from __future__ import annotations

from .exactla import Mat
from .hmod import HModule, from_generators, tensor as tensor_modules, verify_module
from .hopf import HopfAlgebra, exterior, p_dg, taft


class AlgebraError(ValueError):
    pass


class ModuleAlgebra:
    """Finite-dimensional graded algebra with an H-action.

    mult[(i, j)] = a_i a_j as a dict; unit is a dict; `action` is an HModule
    on the same basis.  `idempotents` / `characters` describe a basic
    algebra with trivial action (primitive orthogonal idempotents and the
    matching one-dimensional representations), when known.
    """

    def __init__(self, hopf: HopfAlgebra, labels, mult, unit, degrees, action: HModule,
                 kind="custom", params=(), idempotents=None, characters=None, resolution=None):
        self.hopf = hopf
        self.field = hopf.field
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.mult = mult
        self.unit = unit
        self.degrees = list(degrees)
        self.action = action
        self.kind = kind
        self.params = tuple(params)
        self.idempotents = idempotents
        self.characters = characters
        self.resolution = resolution
        self._cache: dict = {}
        if action.dim != self.dim:
            raise AlgebraError("action has the wrong dimension")

    def __repr__(self):
        return f"ModuleAlgebra({self.name}, dim={self.dim}, over {self.hopf.name})"

    @property
    def name(self):
        if self.params:
            return f"{self.kind}:" + ",".join(str(p) for p in self.params)
        return self.kind

    def parity(self, i: int) -> int:
        return self.degrees[i] & 1 if self.hopf.super else 0

    def basis(self, i):
        return {i: self.field.one}

    def mul(self, x: dict, y: dict) -> dict:
        F = self.field
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                r = self.mult.get((i, j))
                if r:
                    F.axpy(out, F.mul(a, b), r)
        return out

    def left_mult_matrix(self, i: int) -> Mat:
        key = ("L", i)
        if key not in self._cache:
            F = self.field
            cols = [self.mult.get((i, j), {}) for j in range(self.dim)]
            self._cache[key] = Mat.from_columns(F, self.dim, cols)
        return self._cache[key]

    def right_mult_matrix(self, i: int) -> Mat:
        key = ("R", i)
        if key not in self._cache:
            F = self.field
            cols = [self.mult.get((j, i), {}) for j in range(self.dim)]
            self._cache[key] = Mat.from_columns(F, self.dim, cols)
        return self._cache[key]

    def act(self, h: int, a: dict) -> dict:
        return self.action.act(h).apply(a)

    def is_trivial_action(self) -> bool:
        H = self.hopf
        for i in range(H.dim):
            m = self.action.act(i)
            e = H.counit[i]
            target = Mat.identity(self.field, self.dim).scale(e) if e else Mat.zeros(self.field, self.dim, self.dim)
            if m != target:
                return False
        return True

    def render(self, x: dict) -> str:
        from .hopf import render_element
        return render_element(self.field, self.labels, x)


def verify_module_algebra(A: ModuleAlgebra) -> list[str]:
    """Failed axioms (empty when A is an H-module algebra)."""
    H = A.hopf
    F = A.field
    fails = []
    n = A.dim
    if len(A.degrees) != n:
        fails.append("shape")
        return fails
    for (i, j), r in A.mult.items():
        for k in r:
            if not H.same_degree(A.degrees[k], A.degrees[i] + A.degrees[j]):
                fails.append("multiplication homogeneous")
                break
        else:
            continue
        break
    for i in range(n):
        for j in range(n):
            ij = A.mult.get((i, j), {})
            for k in range(n):
                if A.mul(ij, A.basis(k)) != A.mul(A.basis(i), A.mult.get((j, k), {})):
                    fails.append("associativity")
                    break
            else:
                continue
            break
        else:
            continue
        break
    for i in range(n):
        if A.mul(A.unit, A.basis(i)) != A.basis(i) or A.mul(A.basis(i), A.unit) != A.basis(i):
            fails.append("unit")
            break
    fails += [f"action: {f}" for f in verify_module(A.action)]
    if fails:
        return fails
    # h.(ab) = sum (-1)^{|h2||a|} (h1.a)(h2.b)
    acts = [A.action.act(h) for h in range(H.dim)]
    bad = False
    for h in range(H.dim):
        for i in range(n):
            for j in range(n):
                lhs = acts[h].apply(A.mult.get((i, j), {}))
                rhs: dict = {}
                for (a, b), c in H.comult[h].items():
                    if H.parity(b) and A.parity(i):
                        c = F.neg(c)
                    ha = acts[a].column(i)
                    hb = acts[b].column(j)
                    if ha and hb:
                        F.axpy(rhs, c, A.mul(ha, hb))
                if lhs != rhs:
                    bad = True
                    break
            if bad:
                break
        if bad:
            break
        hu = acts[h].apply(A.unit)
        e = H.counit[h]
        if hu != ({k: F.mul(e, x) for k, x in A.unit.items()} if e else {}):
            fails.append("h.1 = eps(h)1")
            break
    if bad:
        fails.append("module algebra axiom")
    fails += _leibniz_crosscheck(A)
    return fails


def _leibniz_crosscheck(A: ModuleAlgebra) -> list[str]:
    """Specialised Leibniz rules for the builtin Hopf kinds."""
    H = A.hopf
    F = A.field
    n = A.dim
    if H.kind == "p_dg" or (H.kind == "exterior" and H.params[0] == 1):
        D = A.action.act(1)

        def coef(i):
            return F.one if H.kind == "p_dg" or not A.parity(i) else F.neg(F.one)
        name = "Leibniz (p-DG)" if H.kind == "p_dg" else "Leibniz (DG)"
    elif H.kind == "taft":
        m = H.params[0]
        Kmat = A.action.act(H.generators[0])
        z = F.zeta()
        if Kmat != Mat.diag(F, [F.pow(z, d % m) for d in A.degrees]):
            return []  # K does not act by zeta^degree; the general axiom suffices
        D = A.action.act(H.generators[1])

        def coef(i):
            return F.pow(z, A.degrees[i] % m)
        name = "Leibniz (n-DG)"
    else:
        return []
    for i in range(n):
        for j in range(n):
            lhs = D.apply(A.mult.get((i, j), {}))
            rhs = A.mul(D.column(i), A.basis(j))
            F.axpy(rhs, coef(i), A.mul(A.basis(i), D.column(j)))
            if lhs != rhs:
                return [name]
    return []


# ---------------------------------------------------------------------------
# smash products


class SmashAlgebra:
    """B = A # H on A (x) H (index a*dim H + h) with
    (a (x) h)(b (x) l) = sum (-1)^{|h2||b|} a (h1.b) (x) h2 l."""

    def __init__(self, A: ModuleAlgebra):
        self.a = A
        self.hopf = A.hopf
        self.field = A.field
        H = A.hopf
        self.dim = A.dim * H.dim
        self.labels = [f"{A.labels[i]}#{H.labels[h]}" for i in range(A.dim) for h in range(H.dim)]
        self.degrees = [A.degrees[i] + H.degrees[h] for i in range(A.dim) for h in range(H.dim)]
        self.unit = {}
        F = self.field
        for i, x in A.unit.items():
            for h, y in H.unit.items():
                self.unit[i * H.dim + h] = F.mul(x, y)
        self._mult: dict = {}

    def split(self, k):
        return divmod(k, self.hopf.dim)

    def mult_basis(self, p: int, q: int) -> dict:
        if (p, q) in self._mult:
            return self._mult[(p, q)]
        A, H, F = self.a, self.hopf, self.field
        i, h = self.split(p)
        j, l = self.split(q)
        out: dict = {}
        for (h1, h2), c in H.comult[h].items():
            if H.parity(h2) and A.parity(j):
                c = F.neg(c)
            hb = A.action.act(h1).column(j)
            if not hb:
                continue
            left = A.mul(A.basis(i), hb)
            right = H.mult.get((h2, l), {})
            for a, x in left.items():
                for g, y in right.items():
                    F.axpy(out, F.mul(c, F.mul(x, y)), {a * H.dim + g: F.one})
        self._mult[(p, q)] = out
        return out

    def mul(self, x: dict, y: dict) -> dict:
        F = self.field
        out: dict = {}
        for p, a in x.items():
            for q, b in y.items():
                r = self.mult_basis(p, q)
                if r:
                    F.axpy(out, F.mul(a, b), r)
        return out

    def elem(self, a: dict, h: dict) -> dict:
        F = self.field
        return {i * self.hopf.dim + g: F.mul(x, y) for i, x in a.items() for g, y in h.items()}

    def delta_B(self, p: int) -> dict:
        """Delta_B(a (x) h) = sum (a (x) h1) (x) (1 (x) h2), keys (p1, p2) in B (x) B."""
        A, H = self.a, self.hopf
        i, h = self.split(p)
        out = {}
        one = A.unit
        F = self.field
        for (h1, h2), c in H.comult[h].items():
            for u, x in one.items():
                out[(i * H.dim + h1, u * H.dim + h2)] = F.mul(c, x)
        return out

    def verify(self) -> list[str]:
        fails = []
        n = self.dim
        basis = [{k: self.field.one} for k in range(n)]
        for p in range(n):
            for q in range(n):
                pq = self.mult_basis(p, q)
                for r in range(n):
                    if self.mul(pq, basis[r]) != self.mul(basis[p], self.mult_basis(q, r)):
                        fails.append("associativity")
                        return fails
        for p in range(n):
            if self.mul(self.unit, basis[p]) != basis[p] or self.mul(basis[p], self.unit) != basis[p]:
                fails.append("unit")
                break
        return fails


def smash(A: ModuleAlgebra, check: bool = True) -> SmashAlgebra:
    if check:
        fails = verify_module_algebra(A)
        if fails:
            raise AlgebraError(f"not an H-module algebra: {', '.join(fails)}")
    B = SmashAlgebra(A)
    if check:
        fails = B.verify()
        assert not fails, f"smash product failed: {fails}"
    return B


# ---------------------------------------------------------------------------
# opposite and tensor products


def opposite(A: ModuleAlgebra, force: bool = False) -> ModuleAlgebra:
    """A^op with a o b = (-1)^{|a||b|} b a; only for cocommutative H unless forced."""
    H = A.hopf
    if not force and not H.cocommutative:
        raise AlgebraError("opposite module algebras need a cocommutative Hopf algebra; "
                           f"{H.name} is not cocommutative")
    F = A.field
    mult = {}
    for i in range(A.dim):
        for j in range(A.dim):
            r = A.mult.get((j, i))
            if r:
                if A.parity(i) and A.parity(j):
                    r = {k: F.neg(x) for k, x in r.items()}
                mult[(i, j)] = r
    return ModuleAlgebra(H, A.labels, mult, A.unit, A.degrees, A.action,
                         kind=f"op({A.kind})", params=A.params)


def tensor_algebras(A1: ModuleAlgebra, A2: ModuleAlgebra, force: bool = False) -> ModuleAlgebra:
    """A1 (x) A2 with (a (x) b)(a' (x) b') = (-1)^{|b||a'|} aa' (x) bb' and
    the diagonal H-action; only for cocommutative H unless forced."""
    H = A1.hopf
    if A2.hopf is not H:
        raise AlgebraError("module algebras over different Hopf algebras")
    if not force and not H.cocommutative:
        raise AlgebraError("tensor products of module algebras need a cocommutative Hopf algebra; "
                           f"{H.name} is not cocommutative")
    F = A1.field
    n2 = A2.dim
    mult = {}
    for i in range(A1.dim):
        for j in range(n2):
            for k in range(A1.dim):
                for l in range(n2):
                    x = A1.mult.get((i, k))
                    y = A2.mult.get((j, l))
                    if not x or not y:
                        continue
                    s = F.neg(F.one) if (A2.parity(j) and A1.parity(k)) else F.one
                    out = {}
                    for a, u in x.items():
                        for b, v in y.items():
                            out[a * n2 + b] = F.mul(s, F.mul(u, v))
                    mult[(i * n2 + j, k * n2 + l)] = out
    unit = {a * n2 + b: F.mul(u, v) for a, u in A1.unit.items() for b, v in A2.unit.items()}
    labels = [f"{x}(x){y}" for x in A1.labels for y in A2.labels]
    degs = [d1 + d2 for d1 in A1.degrees for d2 in A2.degrees]
    act = tensor_modules(A1.action, A2.action)
    out = ModuleAlgebra(H, labels, mult, unit, degs, act, kind="tensor",
                        params=(A1.name, A2.name))
    if not force:
        fails = verify_module_algebra(out)
        assert not fails, f"tensor module algebra failed: {fails}"
    return out


# ---------------------------------------------------------------------------
# morphisms


class AlgebraMap:
    """phi: A1 -> A2 given by a matrix (column j = phi(a_j))."""

    def __init__(self, source: ModuleAlgebra, target: ModuleAlgebra, matrix: Mat, check: bool = True):
        self.source, self.target, self.matrix = source, target, matrix
        if check:
            fails = self.verify()
            if fails:
                raise AlgebraError(f"not a module algebra morphism: {', '.join(fails)}")

    def __call__(self, x: dict) -> dict:
        return self.matrix.apply(x)

    def verify(self) -> list[str]:
        A1, A2 = self.source, self.target
        H = A1.hopf
        fails = []
        if self.matrix.shape != (A2.dim, A1.dim):
            return ["shape"]
        for r, row in enumerate(self.matrix.rows):
            for c in row:
                if not H.same_degree(A2.degrees[r], A1.degrees[c]):
                    fails.append("degree")
                    break
        if self(A1.unit) != A2.unit:
            fails.append("unit")
        for i in range(A1.dim):
            for j in range(A1.dim):
                if self(A1.mult.get((i, j), {})) != A2.mul(self.matrix.column(i), self.matrix.column(j)):
                    fails.append("multiplicative")
                    break
            else:
                continue
            break
        for g in H.generators:
            if A2.action.act(g) @ self.matrix != self.matrix @ A1.action.act(g):
                fails.append("equivariant")
                break
        return fails


def identity_map(A: ModuleAlgebra) -> AlgebraMap:
    return AlgebraMap(A, A, Mat.identity(A.field, A.dim))


# ---------------------------------------------------------------------------
# catalog


def _trivial_action(H: HopfAlgebra, degrees) -> HModule:
    from .hmod import trivial_like
    base = HModule(H, degrees, action_fn=lambda i: Mat.zeros(H.field, len(degrees), len(degrees)))
    return trivial_like(base)


def trivial_action(H: HopfAlgebra, labels, mult, unit, degrees=None, kind="trivial_action",
                   params=(), **kw) -> ModuleAlgebra:
    """Any algebra with h.a = eps(h) a."""
    degrees = degrees if degrees is not None else [0] * len(labels)
    return ModuleAlgebra(H, labels, mult, unit, degrees, _trivial_action(H, degrees),
                         kind=kind, params=params, **kw)


def ground(H: HopfAlgebra) -> ModuleAlgebra:
    """k itself."""
    F = H.field
    return trivial_action(H, ["1"], {(0, 0): {0: F.one}}, {0: F.one}, kind="ground",
                          idempotents=[{0: F.one}], characters=[{0: F.one}],
                          resolution={"terms": [[(0, 0)]], "d": [None]})


def truncated_poly(H: HopfAlgebra, m: int, var="x", degree=0, kind="truncated_poly") -> ModuleAlgebra:
    """k[x]/(x^m) with trivial action."""
    F = H.field
    labels = ["1", var] + [f"{var}^{k}" for k in range(2, m)]
    mult = {(i, j): {i + j: F.one} for i in range(m) for j in range(m) if i + j < m}
    return trivial_action(H, labels, mult, {0: F.one}, [degree * k for k in range(m)], kind=kind,
                          params=(m,))


def truncated_poly_pdg(p: int, H: HopfAlgebra | None = None) -> ModuleAlgebra:
    """F_p[x]/(x^p) with the derivative d/dx; deg x = -1 so that d has degree 1."""
    H = H or p_dg(p)
    F = H.field
    labels = ["1", "x"] + [f"x^{k}" for k in range(2, p)]
    mult = {(i, j): {i + j: F.one} for i in range(p) for j in range(p) if i + j < p}
    degs = [-k for k in range(p)]
    D = Mat.zeros(F, p, p)
    for k in range(1, p):
        D.rows[k - 1][k] = F.coerce(k)
    act = from_generators(H, degs, {1: D}, label="A")
    return ModuleAlgebra(H, labels, mult, {0: F.one}, degs, act, kind="truncated_poly_pdg", params=(p,))


def dg_square_zero(H: HopfAlgebra | None = None) -> ModuleAlgebra:
    """k[e, t]/(e^2, et, t^2) with |e| = 0, |t| = 1 and d e = t, over k[d]/d^2."""
    H = H or exterior(1)
    F = H.field
    labels = ["1", "e", "t"]
    mult = {(0, 0): {0: F.one}, (0, 1): {1: F.one}, (1, 0): {1: F.one},
            (0, 2): {2: F.one}, (2, 0): {2: F.one}}
    degs = [0, 0, 1]
    D = Mat.zeros(F, 3, 3)
    D.rows[2][1] = F.one
    act = from_generators(H, degs, {1: D}, label="A")
    return ModuleAlgebra(H, labels, mult, {0: F.one}, degs, act, kind="dg_square_zero")


def path_algebra_A2(H: HopfAlgebra | None = None) -> ModuleAlgebra:
    """Path algebra of 1 -> 2: basis e1, e2, a with a = e1 a e2; trivial action.
    Carries its bimodule resolution 0 -> Ae1(x)e2A -> Ae1(x)e1A + Ae2(x)e2A -> A."""
    H = H or p_dg(3)
    F = H.field
    one = F.one
    mult = {(0, 0): {0: one}, (1, 1): {1: one}, (0, 2): {2: one}, (2, 1): {2: one}}
    res = path_resolution_A2(F)
    return trivial_action(H, ["e1", "e2", "a"], mult, {0: one, 1: one}, [0, 0, 0],
                          kind="path_algebra_A2",
                          idempotents=[{0: one}, {1: one}],
                          characters=[{0: one}, {1: one}],
                          resolution=res)


def path_resolution_A2(F):
    """Terms: list of summands (i, j) = A e_i (x) e_j A; differential d[k][s] =
    list of (target summand, {(a, b): c}) meaning e_i (x) e_j -> sum c a (x) b."""
    one = F.one
    terms = [[(0, 0), (1, 1)], [(0, 1)]]
    d1 = {0: [(1, {(2, 1): one}), (0, {(0, 2): F.neg(one)})]}
    return {"terms": terms, "d": [None, d1]}


def k_times_k(H: HopfAlgebra | None = None) -> ModuleAlgebra:
    H = H or p_dg(3)
    F = H.field
    one = F.one
    mult = {(0, 0): {0: one}, (1, 1): {1: one}}
    return trivial_action(H, ["e1", "e2"], mult, {0: one, 1: one}, [0, 0], kind="k_times_k",
                          idempotents=[{0: one}, {1: one}], characters=[{0: one}, {1: one}],
                          resolution={"terms": [[(0, 0), (1, 1)]], "d": [None]})


def upper_triangular_2(H: HopfAlgebra | None = None) -> ModuleAlgebra:
    """Upper-triangular 2x2 matrices (E11, E12, E22) with trivial action."""
    H = H or p_dg(3)
    F = H.field
    one = F.one
    # E11 E11 = E11, E11 E12 = E12, E12 E22 = E12, E22 E22 = E22
    mult = {(0, 0): {0: one}, (0, 1): {1: one}, (1, 2): {1: one}, (2, 2): {2: one}}
    return trivial_action(H, ["E11", "E12", "E22"], mult, {0: one, 2: one}, [0, 0, 0],
                          kind="upper_triangular_2")


def lower_triangular_2(H: HopfAlgebra | None = None) -> ModuleAlgebra:
    """Lower-triangular 2x2 matrices (E11, E21, E22) with trivial action."""
    H = H or p_dg(3)
    F = H.field
    one = F.one
    mult = {(0, 0): {0: one}, (1, 0): {1: one}, (2, 1): {1: one}, (2, 2): {2: one}}
    return trivial_action(H, ["E11", "E21", "E22"], mult, {0: one, 2: one}, [0, 0, 0],
                          kind="lower_triangular_2")


def taft_truncated(n: int, broken: bool = False, H: HopfAlgebra | None = None) -> ModuleAlgebra:
    """k[x]/(x^{n+1}) over the Taft algebra: K x^k = zeta^k x^k and
    d x^k = (k)_zeta x^{k+1}.  broken=True uses (k)_{zeta^2} instead, which
    violates the twisted Leibniz rule."""
    H = H or taft(n)
    F = H.field
    z = F.zeta()
    base = F.pow(z, 2) if broken else z
    m = n + 1
    labels = ["1", "x"] + [f"x^{k}" for k in range(2, m)]
    mult = {(i, j): {i + j: F.one} for i in range(m) for j in range(m) if i + j < m}
    degs = list(range(m))
    D = Mat.zeros(F, m, m)
    for k in range(1, m - 1 + 1):
        if k + 1 < m:
            qk = F.zero
            for t in range(k):
                qk = F.add(qk, F.pow(base, t))
            if qk:
                D.rows[k + 1][k] = qk
    Kmat = Mat.diag(F, [F.pow(z, k % n) for k in degs])
    K, d = H.generators
    act = from_generators(H, degs, {K: Kmat, d: D}, label="A")
    return ModuleAlgebra(H, labels, mult, {0: F.one}, degs, act,
                         kind="taft_truncated_broken" if broken else "taft_truncated", params=(n,))


def taft_adjoint(n: int, H: HopfAlgebra | None = None) -> ModuleAlgebra:
    """H itself with the adjoint action h.a = sum h1 a S(h2) (noncommutative)."""
    H = H or taft(n)
    F = H.field

    def adj(i):
        cols = []
        for j in range(H.dim):
            out: dict = {}
            for (a, b), c in H.comult[i].items():
                F.axpy(out, c, H.mul(H.mul(H.basis(a), H.basis(j)), H.S(H.basis(b))))
            cols.append(out)
        return Mat.from_columns(F, H.dim, cols)
    act = HModule(H, H.degrees, actions=[adj(i) for i in range(H.dim)], label="ad")
    return ModuleAlgebra(H, H.labels, H.mult, H.unit, H.degrees, act, kind="taft_adjoint", params=(n,))


ALGEBRA_KINDS = ("ground", "truncated_poly_pdg", "dg_square_zero", "path_algebra_A2", "k_times_k",
                 "upper_triangular_2", "lower_triangular_2", "taft_truncated", "taft_truncated_broken",
                 "taft_adjoint", "truncated_poly")


def make_builtin_algebra(kind: str, *params, hopf: HopfAlgebra | None = None) -> ModuleAlgebra:
    """Catalog entries; `hopf` overrides the default Hopf algebra where allowed."""
    try:
        if kind == "ground":
            return ground(hopf or p_dg(3))
        if kind == "truncated_poly_pdg":
            (p,) = params or (3,)
            return truncated_poly_pdg(int(p), hopf)
        if kind == "truncated_poly":
            (m,) = params or (2,)
            return truncated_poly(hopf or p_dg(2), int(m))
        if kind == "dg_square_zero":
            return dg_square_zero(hopf)
        if kind == "path_algebra_A2":
            return path_algebra_A2(hopf)
        if kind == "k_times_k":
            return k_times_k(hopf)
        if kind == "upper_triangular_2":
            return upper_triangular_2(hopf)
        if kind == "lower_triangular_2":
            return lower_triangular_2(hopf)
        if kind in ("taft_truncated", "taft_truncated_broken"):
            (n,) = params or (3,)
            return taft_truncated(int(n), kind.endswith("broken"), hopf)
        if kind == "taft_adjoint":
            (n,) = params or (3,)
            return taft_adjoint(int(n), hopf)
    except (TypeError, ValueError) as exc:
        raise AlgebraError(f"bad parameters for {kind}: {exc}") from exc
    raise AlgebraError(f"unknown module algebra kind {kind!r}")


def parse_builtin_algebra(text: str, hopf: HopfAlgebra | None = None) -> ModuleAlgebra:
    """'truncated_poly_pdg:3', 'dg_square_zero', 'path_algebra_A2', 'taft_truncated:3', ..."""
    parts = text.split(":")
    return make_builtin_algebra(parts[0], *parts[1:], hopf=hopf)
