"""Exact fields and linear algebra.

Three kinds of field are supported: prime fields GF(p) (elements are ints in
[0, p)), the rationals (gmpy2.mpq) and cyclotomic fields Q[z]/Phi_n(z)
(elements are tuples of mpq with trailing zeros stripped, so that zero is the
empty tuple).  In every case the zero element is falsy, which the matrix code
relies on.

Matrices keep one dict {column: entry} per row and only store nonzero entries.
"""

from __future__ import annotations

import re
from functools import lru_cache

from gmpy2 import mpq


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    kind = ""
    spec = ""

    def __repr__(self):
        return f"Field({self.spec})"

    def __reduce__(self):
        return (field_from_spec, (self.spec,))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        if k < 0:
            a, k = self.inv(a), -k
        r = self.one
        while k:
            if k & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            k >>= 1
        return r

    def axpy(self, dst: dict, c, src: dict):
        """dst += c * src, in place, dropping zeros."""
        add, mul = self.add, self.mul
        for k, v in src.items():
            x = add(dst.get(k, self.zero), mul(c, v))
            if x:
                dst[k] = x
            else:
                dst.pop(k, None)

    def random(self, rng, bound: int = 3):
        return self.coerce(rng.randint(-bound, bound))

    def random_nonzero(self, rng, bound: int = 3):
        while True:
            x = self.random(rng, bound)
            if x:
                return x


class PrimeField(Field):
    kind = "prime"

    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"GF({p}): {p} is not prime")
        self.p = p
        self.char = p
        self.spec = f"GF({p})"
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, str):
            return self.parse(x)
        q = mpq(x)
        return int(q.numerator) * pow(int(q.denominator), -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def axpy(self, dst, c, src):
        p = self.p
        for k, v in src.items():
            x = (dst.get(k, 0) + c * v) % p
            if x:
                dst[k] = x
            else:
                dst.pop(k, None)

    def balanced(self, a) -> int:
        return a - self.p if a > self.p // 2 else a

    def render(self, a) -> str:
        return str(self.balanced(a))

    def parse(self, s: str):
        s = s.strip()
        try:
            if "/" in s:
                n, d = s.split("/")
                return int(n) * pow(int(d), -1, self.p) % self.p
            return int(s) % self.p
        except (ValueError, ZeroDivisionError) as e:
            raise FieldError(f"cannot parse {s!r} over {self.spec}") from e


class RationalField(Field):
    kind = "rationals"

    def __init__(self):
        self.char = 0
        self.spec = "QQ"
        self.zero = mpq(0)
        self.one = mpq(1)

    def coerce(self, x):
        if isinstance(x, str):
            return self.parse(x)
        return mpq(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def axpy(self, dst, c, src):
        for k, v in src.items():
            x = dst.get(k, 0) + c * v
            if x:
                dst[k] = x
            else:
                dst.pop(k, None)

    def render(self, a) -> str:
        return str(a)

    def parse(self, s: str):
        try:
            return mpq(s.strip().replace(" ", ""))
        except (ValueError, ZeroDivisionError) as e:
            raise FieldError(f"cannot parse {s!r} over QQ") from e


def cyclotomic_polynomial(n: int) -> list[int]:
    """Integer coefficients of Phi_n, lowest degree first (x^n - 1 divided by
    Phi_d for the proper divisors d of n)."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_exact_div(num, cyclotomic_polynomial(d))
    return num


def _poly_exact_div(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    assert not any(a), "inexact polynomial division"
    return q


cyclotomic_polynomial = lru_cache(maxsize=None)(cyclotomic_polynomial)

_CYC_TERM = re.compile(r"^(?P<coef>[0-9/]*)\s*\*?\s*(?P<z>z(\^(?P<exp>\d+))?)?$")


class CyclotomicField(Field):
    kind = "cyclotomic"

    def __init__(self, n: int):
        if n < 1:
            raise FieldError("cyclotomic(n) needs n >= 1")
        self.n = n
        self.char = 0
        self.spec = f"QQ(zeta_{n})"
        self.phi = [mpq(c) for c in cyclotomic_polynomial(n)]
        self.degree = len(self.phi) - 1
        self.zero = ()
        self.one = (mpq(1),)
        # x^k mod Phi_n for degree <= k <= 2*degree - 2
        d = self.degree
        red = {}
        cur = [mpq(0)] * d
        if d:
            cur = [-c for c in self.phi[:d]]  # x^d
        for k in range(d, 2 * d - 1):
            red[k] = list(cur)
            top = cur[-1]
            cur = [mpq(0)] + cur[:-1]
            if top:
                for i in range(d):
                    cur[i] -= top * self.phi[i]
        self._red = red
        # products repeat heavily (powers of zeta times small rationals)
        self._memo: dict = {}

    @staticmethod
    def _strip(c) -> tuple:
        c = list(c)
        while c and not c[-1]:
            c.pop()
        return tuple(c)

    def coerce(self, x):
        if isinstance(x, tuple):
            return self._reduce_poly(x)
        if isinstance(x, str):
            return self.parse(x)
        return self._strip([mpq(x)])

    def zeta(self):
        return self._reduce_poly((mpq(0), mpq(1)))

    def _reduce_poly(self, c) -> tuple:
        c = [mpq(v) for v in c]
        d = self.degree
        while len(c) > d:
            top = c.pop()
            if top:
                k = len(c) - d
                for i in range(d):
                    c[k + i] -= top * self.phi[i]
        return self._strip(c)

    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        r = list(a)
        for i, v in enumerate(b):
            r[i] += v
        return self._strip(r)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return tuple(-v for v in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        key = (a, b)
        r = self._memo.get(key)
        if r is None:
            r = self._mul(a, b)
            if len(self._memo) > 200000:
                self._memo.clear()
            self._memo[key] = r
        return r

    def _mul(self, a, b):
        if len(a) == 1:
            c = a[0]
            return tuple(c * v for v in b)
        if len(b) == 1:
            c = b[0]
            return tuple(c * v for v in a)
        prod = [mpq(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        d = self.degree
        if len(prod) <= d:
            return self._strip(prod)
        out = prod[:d]
        for k in range(d, len(prod)):
            c = prod[k]
            if c:
                for i, r in enumerate(self._red[k]):
                    if r:
                        out[i] += c * r
        return self._strip(out)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if len(a) == 1:
            return (1 / a[0],)
        # solve a * x = 1 via the multiplication matrix
        d = self.degree
        cols = []
        for k in range(d):
            xk = tuple([mpq(0)] * k + [mpq(1)])
            col = list(self.mul(a, xk)) + [mpq(0)] * d
            cols.append(col[:d])
        m = Mat.from_lists(QQ, [[cols[j][i] for j in range(d)] for i in range(d)])
        rhs = Mat.from_lists(QQ, [[mpq(1)]] + [[mpq(0)] for _ in range(d - 1)])
        x = solve(m, rhs)
        assert x is not None
        return self._strip([x.entry(i, 0) for i in range(d)])

    def render(self, a) -> str:
        if not a:
            return "0"
        parts = []
        for k, c in enumerate(a):
            if not c:
                continue
            if k == 0:
                term = str(abs(c))
            else:
                mono = "z" if k == 1 else f"z^{k}"
                term = mono if abs(c) == 1 else f"{abs(c)} {mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, term))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            s += f" {sign} {term}"
        return s

    def parse(self, s: str):
        text = s.strip()
        if not text:
            raise FieldError("empty scalar")
        tokens = re.findall(r"[+-]?[^+-]+", text.replace(" ", ""))
        coeffs: dict[int, mpq] = {}
        for tok in tokens:
            sign = -1 if tok.startswith("-") else 1
            body = tok.lstrip("+-")
            m = _CYC_TERM.match(body)
            if not m or (not m.group("coef") and not m.group("z")):
                raise FieldError(f"cannot parse {s!r} over {self.spec}")
            c = mpq(m.group("coef")) if m.group("coef") else mpq(1)
            k = 0
            if m.group("z"):
                k = int(m.group("exp")) if m.group("exp") else 1
            coeffs[k] = coeffs.get(k, mpq(0)) + sign * c
        top = max(coeffs)
        return self._reduce_poly([coeffs.get(i, mpq(0)) for i in range(top + 1)])

    def random(self, rng, bound: int = 3):
        return self._strip([mpq(rng.randint(-bound, bound)) for _ in range(self.degree)])


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


@lru_cache(maxsize=None)
def cyclotomic_field(n: int) -> CyclotomicField:
    return CyclotomicField(n)


QQ = RationalField()


def field_from_spec(spec: str) -> Field:
    """Accepts "GF(p)", "prime:p", "QQ", "rationals", "QQ(zeta_n)",
    "cyclotomic:n"."""
    s = spec.strip()
    m = re.fullmatch(r"GF\((\d+)\)|prime:(\d+)", s)
    if m:
        return prime_field(int(m.group(1) or m.group(2)))
    if s in ("QQ", "rationals", "Q"):
        return QQ
    m = re.fullmatch(r"QQ\(zeta_(\d+)\)|cyclotomic:(\d+)", s)
    if m:
        return cyclotomic_field(int(m.group(1) or m.group(2)))
    raise FieldError(f"unknown field spec {spec!r}")


# ---------------------------------------------------------------------------
# matrices


class Mat:
    """Matrix over an exact field.  Treat instances as immutable."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, nrows: int, ncols: int, rows=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else [{} for _ in range(nrows)]

    # construction
    @classmethod
    def zeros(cls, field, nrows, ncols):
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field, n):
        one = field.one
        return cls(field, n, n, [{i: one} for i in range(n)])

    @classmethod
    def diag(cls, field, entries):
        entries = [field.coerce(e) for e in entries]
        return cls(field, len(entries), len(entries), [({i: e} if e else {}) for i, e in enumerate(entries)])

    @classmethod
    def from_lists(cls, field, lists, ncols=None):
        lists = list(lists)
        if ncols is None:
            ncols = len(lists[0]) if lists else 0
        rows = []
        for r in lists:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            d = {}
            for j, x in enumerate(r):
                x = field.coerce(x)
                if x:
                    d[j] = x
            rows.append(d)
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, field, nrows, columns):
        columns = list(columns)
        rows = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, x in col.items():
                rows[i][j] = x
        return cls(field, nrows, len(columns), rows)

    # access
    def entry(self, i, j):
        return self.rows[i].get(j, self.field.zero)

    def to_lists(self):
        z = self.field.zero
        return [[r.get(j, z) for j in range(self.ncols)] for r in self.rows]

    def columns(self) -> list[dict]:
        cols = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, x in r.items():
                cols[j][i] = x
        return cols

    def column(self, j) -> dict:
        return {i: r[j] for i, r in enumerate(self.rows) if j in r}

    def nnz(self):
        return sum(len(r) for r in self.rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __repr__(self):
        F = self.field
        body = "; ".join(" ".join(F.render(x) for x in row) for row in self.to_lists())
        return f"Mat[{self.nrows}x{self.ncols} {F.spec}]({body})"

    # arithmetic
    def _check(self, other):
        if self.field is not other.field:
            raise ValueError("field mismatch")

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.field is other.field and self.nrows == other.nrows
                and self.ncols == other.ncols and self.rows == other.rows)

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(tuple(sorted(r.items())) for r in self.rows)))

    def is_zero(self):
        return not any(self.rows)

    def is_identity(self):
        if self.nrows != self.ncols:
            return False
        one = self.field.one
        return all(r == {i: one} for i, r in enumerate(self.rows))

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        F = self.field
        orows = other.rows
        out = []
        for r in self.rows:
            acc: dict = {}
            for k, v in r.items():
                ok = orows[k]
                if ok:
                    F.axpy(acc, v, ok)
            out.append(acc)
        return Mat(F, self.nrows, other.ncols, out)

    def __add__(self, other):
        return self.axpy(self.field.one, other)

    def __sub__(self, other):
        return self.axpy(self.field.neg(self.field.one), other)

    def axpy(self, c, other):
        """self + c * other"""
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        F = self.field
        out = []
        for r, s in zip(self.rows, other.rows):
            d = dict(r)
            if s:
                F.axpy(d, c, s)
            out.append(d)
        return Mat(F, self.nrows, self.ncols, out)

    def __neg__(self):
        F = self.field
        return Mat(F, self.nrows, self.ncols, [{j: F.neg(x) for j, x in r.items()} for r in self.rows])

    def scale(self, c):
        F = self.field
        c = F.coerce(c) if not isinstance(c, (tuple,)) else c
        if not c:
            return Mat.zeros(F, self.nrows, self.ncols)
        mul = F.mul
        return Mat(F, self.nrows, self.ncols, [{j: mul(c, x) for j, x in r.items()} for r in self.rows])

    @property
    def T(self):
        rows = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, x in r.items():
                rows[j][i] = x
        return Mat(self.field, self.ncols, self.nrows, rows)

    def apply(self, v: dict) -> dict:
        """Matrix times a sparse column vector."""
        F = self.field
        add, mul = F.add, F.mul
        out = {}
        for i, r in enumerate(self.rows):
            if not r:
                continue
            acc = F.zero
            if len(v) < len(r):
                for k, x in v.items():
                    y = r.get(k)
                    if y:
                        acc = add(acc, mul(y, x))
            else:
                for k, y in r.items():
                    x = v.get(k)
                    if x:
                        acc = add(acc, mul(y, x))
            if acc:
                out[i] = acc
        return out

    def take_rows(self, idx):
        idx = list(idx)
        return Mat(self.field, len(idx), self.ncols, [dict(self.rows[i]) for i in idx])

    def take_cols(self, idx):
        idx = list(idx)
        pos = {j: k for k, j in enumerate(idx)}
        rows = [{pos[j]: x for j, x in r.items() if j in pos} for r in self.rows]
        return Mat(self.field, self.nrows, len(idx), rows)

    def submatrix(self, ridx, cidx):
        return self.take_rows(ridx).take_cols(cidx)

    def rank(self) -> int:
        return rref(self)[2]

    def is_square(self):
        return self.nrows == self.ncols


def hstack(mats, field=None, nrows=None):
    mats = list(mats)
    if not mats:
        return Mat(field, nrows or 0, 0)
    F = mats[0].field
    n = mats[0].nrows
    rows = [{} for _ in range(n)]
    off = 0
    for m in mats:
        if m.nrows != n:
            raise ValueError("hstack row mismatch")
        for i, r in enumerate(m.rows):
            for j, x in r.items():
                rows[i][j + off] = x
        off += m.ncols
    return Mat(F, n, off, rows)


def vstack(mats, field=None, ncols=None):
    mats = list(mats)
    if not mats:
        return Mat(field, 0, ncols or 0)
    F = mats[0].field
    n = mats[0].ncols
    rows = []
    for m in mats:
        if m.ncols != n:
            raise ValueError("vstack column mismatch")
        rows.extend(dict(r) for r in m.rows)
    return Mat(F, len(rows), n, rows)


def block_diag(mats, field=None):
    mats = list(mats)
    F = mats[0].field if mats else field
    nr = sum(m.nrows for m in mats)
    nc = sum(m.ncols for m in mats)
    rows = []
    off = 0
    for m in mats:
        for r in m.rows:
            rows.append({j + off: x for j, x in r.items()})
        off += m.ncols
    return Mat(F, nr, nc, rows)


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product; row (i_a, i_b) sits at i_a * b.nrows + i_b."""
    a._check(b)
    F = a.field
    mul = F.mul
    nb, mb = b.nrows, b.ncols
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            d = {}
            if ra and rb:
                for ja, x in ra.items():
                    base = ja * mb
                    for jb, y in rb.items():
                        d[base + jb] = mul(x, y)
            rows.append(d)
    return Mat(F, a.nrows * nb, a.ncols * mb, rows)


# ---------------------------------------------------------------------------
# elimination


def _echelon(F: Field, rows: list[dict]) -> list[tuple[int, dict]]:
    """Reduced echelon basis of the span of rows, as (pivot, row) sorted by
    pivot; every row has 1 at its pivot and 0 at the other pivots."""
    table: dict[int, dict] = {}
    neg, inv, mul = F.neg, F.inv, F.mul
    for r in rows:
        if not r:
            continue
        r = dict(r)
        while r:
            lead = min(r)
            p = table.get(lead)
            if p is None:
                break
            F.axpy(r, neg(r[lead]), p)
        if not r:
            continue
        c = inv(r[lead])
        if c != F.one:
            r = {j: mul(c, x) for j, x in r.items()}
        table[lead] = r
    pivots = sorted(table)
    # back substitution, highest pivot first
    for idx in range(len(pivots) - 1, -1, -1):
        pc = pivots[idx]
        prow = table[pc]
        for q in pivots[:idx]:
            other = table[q]
            x = other.get(pc)
            if x:
                F.axpy(other, neg(x), prow)
    return [(pc, table[pc]) for pc in pivots]


def rref(m: Mat):
    """(reduced, pivots, rank) with reduced the unique reduced row echelon form."""
    ech = _echelon(m.field, m.rows)
    rows = [r for _, r in ech] + [{} for _ in range(m.nrows - len(ech))]
    return Mat(m.field, m.nrows, m.ncols, rows), [p for p, _ in ech], len(ech)


def rank(m: Mat) -> int:
    return len(_echelon(m.field, m.rows))


def nullspace(m: Mat) -> Mat:
    """Columns form a basis of the kernel, one per free column (in order)."""
    F = m.field
    ech = _echelon(F, m.rows)
    pivset = {p for p, _ in ech}
    cols = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = {f: F.one}
        for p, r in ech:
            x = r.get(f)
            if x:
                v[p] = F.neg(x)
        cols.append(v)
    return Mat.from_columns(F, m.ncols, cols)


def solve(a: Mat, b: Mat):
    """Some x with a @ x == b (free variables set to zero), or None."""
    if a.nrows != b.nrows:
        raise ValueError(f"solve: dimension mismatch {a.shape} vs {b.shape}")
    a._check(b)
    F = a.field
    n = a.ncols
    aug = []
    for ra, rb in zip(a.rows, b.rows):
        d = dict(ra)
        for j, x in rb.items():
            d[n + j] = x
        aug.append(d)
    ech = _echelon(F, aug)
    rows = [{} for _ in range(n)]
    for p, r in ech:
        if p >= n:
            return None
        rows[p] = {j - n: x for j, x in r.items() if j >= n}
    return Mat(F, n, b.ncols, rows)


def inverse(m: Mat):
    if not m.is_square():
        raise ValueError("inverse of non-square matrix")
    x = solve(m, Mat.identity(m.field, m.nrows))
    if x is None or not (m @ x).is_identity():
        return None
    return x


class Subspace:
    """Subspace of F^n kept as a reduced basis: each basis vector has 1 at its
    pivot and 0 at every other pivot, so coordinates are read off at pivots."""

    def __init__(self, field: Field, n: int, vectors=()):
        self.field = field
        self.n = n
        self.pivots: list[int] = []
        self.basis: list[dict] = []
        self._where: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    @property
    def dim(self):
        return len(self.basis)

    def reduce(self, v: dict) -> dict:
        F = self.field
        r = dict(v)
        hits = [k for k in r if k in self._where]
        for k in hits:
            x = r.get(k)
            if x:
                F.axpy(r, F.neg(x), self.basis[self._where[k]])
        return r

    def add(self, v: dict) -> bool:
        F = self.field
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        c = F.inv(r[p])
        r = {j: F.mul(c, x) for j, x in r.items()}
        for b in self.basis:
            x = b.get(p)
            if x:
                F.axpy(b, F.neg(x), r)
        self._where[p] = len(self.basis)
        self.pivots.append(p)
        self.basis.append(r)
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def coords(self, v: dict) -> list:
        """Coordinates of v (assumed to lie in the subspace) in self.basis."""
        z = self.field.zero
        return [v.get(p, z) for p in self.pivots]

    def complement(self) -> list[int]:
        ps = set(self.pivots)
        return [j for j in range(self.n) if j not in ps]

    def matrix(self) -> Mat:
        return Mat.from_columns(self.field, self.n, self.basis)


def vec_dense(F, v: dict, n: int) -> list:
    return [v.get(i, F.zero) for i in range(n)]


def vec_sparse(F, xs) -> dict:
    out = {}
    for i, x in enumerate(xs):
        x = F.coerce(x)
        if x:
            out[i] = x
    return out
