"""Grothendieck groups of stable categories as quotients of Z[q, q^-1], classes
of modules, triangle additivity and the RHom pairing for basic algebras."""

from __future__ import annotations

from math import comb

from .exactla import Mat, rank
from .hmod import HModule, hom as hhom, trivial
from .hopf import HopfAlgebra


class K0Error(ValueError):
    pass


def _render_poly(coeffs, var="q", compact: bool = False) -> str:
    terms = []
    for e, c in enumerate(coeffs):
        if not c:
            continue
        mono = "1" if e == 0 else (var if e == 1 else f"{var}^{e}")
        if e == 0:
            t = str(abs(c))
        elif abs(c) == 1:
            t = mono
        else:
            t = f"{abs(c)}{mono}"
        terms.append(("-" if c < 0 else "+", t))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    sep = "" if compact else " "
    for s, t in terms[1:]:
        out += f"{sep}{s}{sep}{t}"
    return out


class CycloQuotientRing:
    """Z[q, q^-1] / (r(q)) (optionally also modulo an integer), r monic.

    Elements are tuples of length deg r holding the canonical remainder."""

    def __init__(self, relation, modulus: int | None = None, name: str = ""):
        rel = [int(c) for c in relation]
        while rel and rel[-1] == 0:
            rel.pop()
        if not rel or rel[-1] != 1:
            raise K0Error("relation must be a monic integer polynomial")
        if len(rel) > 1 and rel[0] not in (1, -1) and not (modulus and _unit_mod(rel[0], modulus)):
            raise K0Error("q must be invertible in the quotient (constant term a unit)")
        self.relation = tuple(rel)
        self.modulus = modulus
        self.degree = len(rel) - 1
        self.name = name or self._default_name()

    def _default_name(self) -> str:
        if self.degree == 0:
            return "0"
        body = f"Z[q,q^-1]/({_render_poly(self.relation, compact=True)})"
        return body + (f" mod {self.modulus}" if self.modulus else "")

    def __repr__(self):
        return f"CycloQuotientRing({self.name})"

    def __eq__(self, other):
        return (isinstance(other, CycloQuotientRing) and self.relation == other.relation
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.relation, self.modulus))

    def _norm(self, c: int) -> int:
        return c % self.modulus if self.modulus else c

    def _reduce_poly(self, coeffs) -> tuple:
        c = [self._norm(x) for x in coeffs]
        d = self.degree
        r = self.relation
        while len(c) > d:
            top = c.pop()
            if top:
                base = len(c) - d
                for k in range(d):
                    c[base + k] = self._norm(c[base + k] - top * r[k])
        c += [0] * (d - len(c))
        return tuple(c)

    def _q_inv(self) -> tuple:
        # r = r0 + q s(q)  =>  q^-1 = -s(q) / r0
        r0 = self.relation[0]
        inv0 = r0 if r0 in (1, -1) else pow(r0, -1, self.modulus)
        return self._reduce_poly([-inv0 * x for x in self.relation[1:]])

    def element(self, laurent: dict[int, int]) -> tuple:
        """Reduce a Laurent polynomial {exponent: coefficient}."""
        if self.degree == 0:
            return ()
        laurent = {e: c for e, c in laurent.items() if c}
        if not laurent:
            return self.zero
        lo = min(0, min(laurent))
        coeffs = [0] * (max(laurent) - lo + 1)
        for e, c in laurent.items():
            coeffs[e - lo] += c
        x = self._reduce_poly(coeffs)
        if lo:
            x = self.mul(x, self.pow_q(lo))
        return x

    def pow_q(self, k: int) -> tuple:
        if self.degree == 0:
            return ()
        base = self._reduce_poly([0, 1]) if k >= 0 else self._q_inv()
        out = self.one
        for _ in range(abs(k)):
            out = self.mul(out, base)
        return out

    @property
    def zero(self) -> tuple:
        return (0,) * self.degree

    @property
    def one(self) -> tuple:
        return self._reduce_poly([1]) if self.degree else ()

    def add(self, a, b) -> tuple:
        return tuple(self._norm(x + y) for x, y in zip(a, b))

    def neg(self, a) -> tuple:
        return tuple(self._norm(-x) for x in a)

    def sub(self, a, b) -> tuple:
        return self.add(a, self.neg(b))

    def mul(self, a, b) -> tuple:
        if self.degree == 0:
            return ()
        out = [0] * (2 * self.degree - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self._reduce_poly(out)

    def scalar(self, n: int) -> tuple:
        return self._reduce_poly([n]) if self.degree else ()

    def bar(self, a) -> tuple:
        """q -> q^-1."""
        return self.element({-e: c for e, c in enumerate(a)})

    def render(self, a) -> str:
        return _render_poly(a)


def _unit_mod(a: int, m: int) -> bool:
    from math import gcd
    return gcd(a, m) == 1


class K0Class:
    def __init__(self, ring: CycloQuotientRing, value):
        self.ring = ring
        self.value = tuple(value)
        assert len(self.value) == ring.degree

    def __eq__(self, other):
        if isinstance(other, int):
            other = K0Class(self.ring, self.ring.scalar(other))
        return isinstance(other, K0Class) and self.ring == other.ring and self.value == other.value

    def __hash__(self):
        return hash((self.ring, self.value))

    def __add__(self, other):
        return K0Class(self.ring, self.ring.add(self.value, other.value))

    def __sub__(self, other):
        return K0Class(self.ring, self.ring.sub(self.value, other.value))

    def __neg__(self):
        return K0Class(self.ring, self.ring.neg(self.value))

    def __mul__(self, other):
        if isinstance(other, int):
            other = K0Class(self.ring, self.ring.scalar(other))
        return K0Class(self.ring, self.ring.mul(self.value, other.value))

    __rmul__ = __mul__

    def bar(self) -> "K0Class":
        return K0Class(self.ring, self.ring.bar(self.value))

    def is_zero(self) -> bool:
        return not any(self.value)

    def __repr__(self):
        return f"[{self.ring.render(self.value)}]"

    def __str__(self):
        return self.ring.render(self.value)


# ---------------------------------------------------------------------------


def _semisimple(H: HopfAlgebra) -> bool:
    return bool(H.eps(H.integral))


def k0_ring(H: HopfAlgebra) -> CycloQuotientRing:
    """The ring K_0(H-umod) for the builtin families."""
    if H.kind == "p_dg":
        p = H.params[0]
        if len(H.params) > 1:
            return CycloQuotientRing([-1, 1], modulus=p, name=f"Z/{p}")
        rel = [1] * p
        return CycloQuotientRing(rel, name=f"Z[q,q^-1]/({_render_poly(rel, compact=True)})")
    if H.kind == "exterior":
        m = H.params[0]
        if H.modulus:
            raise K0Error("K0 is only implemented for Z-graded exterior algebras")
        rel = [comb(m, k) for k in range(m + 1)]
        if m == 0:
            return CycloQuotientRing(rel, name="0")
        name = "Z[q]/(1+q)" if m == 1 else f"Z[q]/((1+q)^{m})"
        return CycloQuotientRing(rel, name=name)
    if H.kind == "taft":
        n = H.params[0]
        rel = [1] * n
        return CycloQuotientRing(rel, name=f"Z[q]/({_render_poly(rel, compact=True)})")
    if H.kind == "group_algebra":
        n = H.params[0]
        if _semisimple(H):
            # every module is projective: the stable category is zero
            return CycloQuotientRing([1], name="0")
        if H.projectives is not None:
            return CycloQuotientRing([-1, 1], modulus=n, name=f"Z/{n}")
    raise K0Error(f"K0 is not implemented for {H.name}")


def _eigen_dims(M: HModule, K: int, z, n: int) -> dict[int, int]:
    F = M.field
    out = {}
    Km = M.act(K)
    for i in range(n):
        c = F.pow(z, i)
        shifted = Km - Mat.identity(F, M.dim).scale(c)
        out[i] = M.dim - rank(shifted)
    assert sum(out.values()) == M.dim, "K is not diagonalizable"
    return out


def k0_class(M: HModule, ring: CycloQuotientRing | None = None) -> K0Class:
    """Image of a composition series: graded dimension (graded local cases),
    K-eigenspace dimensions (Taft), or total dimension (ungraded)."""
    H = M.hopf
    R = ring or k0_ring(H)
    if R.degree == 0:
        return K0Class(R, ())
    if H.kind == "taft":
        n = H.params[0]
        dims = _eigen_dims(M, H.generators[0], H.field.zeta(), n)
        return K0Class(R, R.element(dims))
    if H.kind == "p_dg" and len(H.params) > 1 or H.kind == "group_algebra":
        return K0Class(R, R.scalar(M.dim))
    return K0Class(R, R.element(M.graded_dims()))


def k0_triangle_check(t) -> bool:
    """[Y] = [X] + [C] for a triangle X -> Y -> C -> T X."""
    X, Y, C = t.X.h, t.Y.h, t.C.h
    R = k0_ring(X.hopf)
    return k0_class(Y, R) == k0_class(X, R) + k0_class(C, R)


def k0_dual(V: HModule) -> HModule:
    """V* = Hom_k(V, k_0)."""
    return hhom(V, trivial(V.hopf))


def k0_pairing_basic(A, V: HModule | None = None) -> list[list[K0Class]]:
    """Matrix of [RHom_A(P_i (x) V, S_j)] for a basic algebra with trivial
    action; with V = k_0 it is the identity."""
    from .hopfomod import projective_module, simple_module, tensor_h
    from .resolve_derived import derived_hom
    if not A.is_trivial_action():
        raise K0Error("the pairing is implemented for trivial-action algebras only")
    if A.idempotents is None or A.characters is None:
        raise K0Error(f"{A.name} is not presented as a basic algebra")
    R = k0_ring(A.hopf)
    n = len(A.idempotents)
    out = []
    for i in range(n):
        P = projective_module(A, i)
        if V is not None:
            P = tensor_h(P, V)
            P.cofibrant = True
        out.append([k0_class(derived_hom(P, simple_module(A, j)), R) for j in range(n)])
    return out
