"""JSON documents for Hopf algebras, modules, module algebras, hopfological
modules, maps and resolutions.

A document is {"format_version", "field", "kind", "payload"}; structure
tensors are dense nested arrays of scalars rendered canonically by the field
(balanced residues, fractions "a/b", cyclotomic polynomials in "z")."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .exactla import Field, FieldError, Mat, field_from_spec
from .hmod import HModule, verify_module
from .hopf import BUILTIN_KINDS, HopfAlgebra, HopfError, parse_builtin, verify_hopf
from .hopfomod import BLinearMap, BModule, verify_bmodule
from .modalg import ALGEBRA_KINDS, ModuleAlgebra, make_builtin_algebra, verify_module_algebra

FORMAT_VERSION = 1
KINDS = ("hopf", "hmodule", "modalgebra", "bmodule", "map", "resolution")


class DocumentError(ValueError):
    pass


class DocumentSyntaxError(DocumentError):
    def __init__(self, msg, line, column):
        super().__init__(f"syntax error at line {line}, column {column}: {msg}")
        self.line, self.column = line, column


class DocumentSemanticError(DocumentError):
    pass


@dataclass
class Document:
    field: str
    kind: str
    payload: dict = dc_field(default_factory=dict)
    format_version: int = FORMAT_VERSION


def serialize(doc: Document) -> str:
    return json.dumps({"format_version": doc.format_version, "field": doc.field,
                       "kind": doc.kind, "payload": doc.payload}, indent=1, sort_keys=True) + "\n"


def parse(text: str) -> Document:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentSyntaxError(e.msg, e.lineno, e.colno) from None
    if not isinstance(raw, dict):
        raise DocumentSemanticError("document must be an object")
    for key in ("format_version", "field", "kind", "payload"):
        if key not in raw:
            raise DocumentSemanticError(f"missing key {key!r}")
    if raw["format_version"] != FORMAT_VERSION:
        raise DocumentSemanticError(f"unsupported format_version {raw['format_version']!r}")
    if raw["kind"] not in KINDS:
        raise DocumentSemanticError(f"unknown entity kind {raw['kind']!r}")
    return Document(raw["field"], raw["kind"], raw["payload"], raw["format_version"])


# ---------------------------------------------------------------------------
# scalars, vectors, matrices


def _vec_out(F: Field, x: dict, n: int) -> list[str]:
    return [F.render(x.get(i, F.zero)) for i in range(n)]


def _vec_in(F: Field, v, n: int, what: str) -> dict:
    if not isinstance(v, list) or len(v) != n:
        raise DocumentSemanticError(f"{what} shape: expected a list of {n} scalars")
    out = {}
    for i, s in enumerate(v):
        c = _scalar(F, s, what)
        if c:
            out[i] = c
    return out


def _scalar(F: Field, s, what: str):
    if isinstance(s, int) and not isinstance(s, bool):
        s = str(s)
    if not isinstance(s, str):
        raise DocumentSemanticError(f"{what}: scalars must be strings, got {s!r}")
    try:
        return F.parse(s)
    except FieldError as e:
        raise DocumentSemanticError(f"{what}: {e}") from None


def _mat_out(m: Mat) -> list[list[str]]:
    F = m.field
    return [[F.render(r.get(j, F.zero)) for j in range(m.ncols)] for r in m.rows]


def _mat_in(F: Field, rows, nrows: int, ncols: int, what: str) -> Mat:
    if not isinstance(rows, list) or len(rows) != nrows or any(
            not isinstance(r, list) or len(r) != ncols for r in rows):
        raise DocumentSemanticError(f"{what} shape: expected a {nrows}x{ncols} matrix")
    return Mat(F, nrows, ncols, [{j: c for j, s in enumerate(r) if (c := _scalar(F, s, what))}
                                 for r in rows])


def _ints(v, what: str, n: int | None = None) -> list[int]:
    if not isinstance(v, list) or any(not isinstance(x, int) or isinstance(x, bool) for x in v) \
            or (n is not None and len(v) != n):
        raise DocumentSemanticError(f"{what} shape: expected a list of integers")
    return list(v)


def _need(payload: dict, *keys):
    for k in keys:
        if k not in payload:
            raise DocumentSemanticError(f"payload is missing {k!r}")


# ---------------------------------------------------------------------------
# Hopf algebras


def builtin_spec(H: HopfAlgebra) -> str | None:
    if H.kind not in BUILTIN_KINDS:
        return None
    parts = [H.kind] + [str(p) for p in H.params]
    return ":".join(parts) + f"@{H.field.spec}"


def hopf_payload(H: HopfAlgebra) -> dict:
    F, n = H.field, H.dim
    return {
        "builtin": builtin_spec(H),
        "kind": H.kind,
        "params": [p if isinstance(p, int) else str(p) for p in H.params],
        "labels": H.labels,
        "degrees": H.degrees,
        "modulus": H.modulus,
        "super": H.super,
        "mult": [[_vec_out(F, H.mult.get((i, j), {}), n) for j in range(n)] for i in range(n)],
        "unit": _vec_out(F, H.unit, n),
        "comult": [[[F.render(H.comult[i].get((a, b), F.zero)) for b in range(n)] for a in range(n)]
                   for i in range(n)],
        "counit": [F.render(H.counit[i]) for i in range(n)],
        "antipode": [_vec_out(F, H.antipode[i], n) for i in range(n)],
        "integral": _vec_out(F, H.integral, n),
        "generators": H.generators,
    }


# loaded structures are interned by canonical payload, so that modules read
# from separate documents share one Hopf algebra / module algebra instance
_INTERN: dict = {}


def _interned(kind: str, F: Field, p: dict, build):
    key = (kind, F.spec, json.dumps(p, sort_keys=True))
    obj = _INTERN.get(key)
    if obj is None:
        obj = build(F, p)
        if len(_INTERN) > 256:
            _INTERN.clear()
        _INTERN[key] = obj
    return obj


def hopf_from_payload(F: Field, p: dict) -> HopfAlgebra:
    return _interned("hopf", F, p, _hopf_from_payload)


def _hopf_from_payload(F: Field, p: dict) -> HopfAlgebra:
    _need(p, "labels", "degrees", "mult", "unit", "comult", "counit", "antipode")
    labels = p["labels"]
    if not isinstance(labels, list) or not labels:
        raise DocumentSemanticError("labels shape: expected a nonempty list")
    n = len(labels)
    degrees = _ints(p["degrees"], "degrees", n)
    mult_raw = p["mult"]
    if not isinstance(mult_raw, list) or len(mult_raw) != n or any(
            not isinstance(r, list) or len(r) != n for r in mult_raw):
        raise DocumentSemanticError(f"mult shape: expected {n}x{n}x{n}")
    mult = {}
    for i in range(n):
        for j in range(n):
            x = _vec_in(F, mult_raw[i][j], n, "mult")
            if x:
                mult[(i, j)] = x
    com_raw = p["comult"]
    if not isinstance(com_raw, list) or len(com_raw) != n:
        raise DocumentSemanticError(f"comult shape: expected {n}x{n}x{n}")
    comult = []
    for i in range(n):
        try:
            m = _mat_in(F, com_raw[i], n, n, "comult")
        except DocumentSemanticError:
            raise DocumentSemanticError(f"comult shape: expected {n}x{n}x{n}") from None
        comult.append({(a, b): c for a, r in enumerate(m.rows) for b, c in r.items()})
    unit = _vec_in(F, p["unit"], n, "unit")
    cou = p["counit"]
    if not isinstance(cou, list) or len(cou) != n:
        raise DocumentSemanticError("counit shape")
    counit = [_scalar(F, s, "counit") for s in cou]
    anti_raw = p["antipode"]
    if not isinstance(anti_raw, list) or len(anti_raw) != n:
        raise DocumentSemanticError("antipode shape")
    antipode = [_vec_in(F, v, n, "antipode") for v in anti_raw]
    spec = p.get("builtin")
    if spec:
        try:
            B = parse_builtin(spec)
        except (HopfError, FieldError) as e:
            raise DocumentSemanticError(f"bad builtin spec: {e}") from None
        if (B.field.spec == F.spec and B.mult == mult and B.comult == comult and B.unit == unit
                and list(B.counit) == counit and B.antipode == antipode and B.degrees == degrees):
            return B
    integral = _vec_in(F, p["integral"], n, "integral") if "integral" in p else None
    modulus = p.get("modulus", 0)
    H = HopfAlgebra(F, labels, mult, unit, comult, counit, antipode, degrees,
                    modulus=modulus, super_=bool(p.get("super", False)), integral=integral,
                    integral_scale=F.one if integral else None,
                    kind=p.get("kind", "custom") if not spec else "custom",
                    params=tuple(p.get("params", ())) if not spec else (),
                    generators=p.get("generators"))
    fails = verify_hopf(H)
    if fails:
        raise DocumentSemanticError("Hopf axioms fail: " + ", ".join(fails))
    return H


# ---------------------------------------------------------------------------
# modules and algebras


def hmodule_payload(M: HModule) -> dict:
    return {"hopf": hopf_payload(M.hopf), "degrees": M.degrees, "label": M.label,
            "actions": [_mat_out(M.act(i)) for i in range(M.hopf.dim)]}


def hmodule_from_payload(F: Field, p: dict, H: HopfAlgebra | None = None) -> HModule:
    _need(p, "degrees", "actions")
    H = H or hopf_from_payload(F, p["hopf"])
    degrees = _ints(p["degrees"], "degrees")
    acts = p["actions"]
    if not isinstance(acts, list) or len(acts) != H.dim:
        raise DocumentSemanticError("actions shape: one matrix per Hopf basis element")
    d = len(degrees)
    M = HModule(H, degrees, actions=[_mat_in(F, a, d, d, "actions") for a in acts],
                label=p.get("label", ""))
    fails = verify_module(M)
    if fails:
        raise DocumentSemanticError("H-module axioms fail: " + ", ".join(fails))
    return M


def _res_out(F, res):
    if res is None:
        return None
    d_out = [None]
    for ds in res["d"][1:]:
        d_out.append({str(s): [[t, [[a, b, F.render(c)] for (a, b), c in sorted(el.items())]]
                               for t, el in entries] for s, entries in ds.items()})
    return {"terms": [[list(x) for x in term] for term in res["terms"]], "d": d_out}


def _res_in(F, r):
    if r is None:
        return None
    try:
        terms = [[tuple(x) for x in term] for term in r["terms"]]
        d = [None]
        for ds in r["d"][1:]:
            d.append({int(s): [(int(t), {(int(a), int(b)): _scalar(F, c, "resolution")
                                         for a, b, c in el}) for t, el in entries]
                      for s, entries in ds.items()})
    except (KeyError, TypeError, ValueError) as e:
        raise DocumentSemanticError(f"resolution shape: {e}") from None
    return {"terms": terms, "d": d}


def modalg_payload(A: ModuleAlgebra) -> dict:
    F, n = A.field, A.dim
    return {
        "hopf": hopf_payload(A.hopf),
        "builtin": A.name if A.kind in ALGEBRA_KINDS else None,
        "kind": A.kind,
        "params": list(A.params),
        "labels": A.labels,
        "degrees": A.degrees,
        "mult": [[_vec_out(F, A.mult.get((i, j), {}), n) for j in range(n)] for i in range(n)],
        "unit": _vec_out(F, A.unit, n),
        "action": [_mat_out(A.action.act(i)) for i in range(A.hopf.dim)],
        "idempotents": None if A.idempotents is None else [_vec_out(F, e, n) for e in A.idempotents],
        "characters": None if A.characters is None else [_vec_out(F, c, n) for c in A.characters],
        "resolution": _res_out(F, A.resolution),
    }


def modalg_from_payload(F: Field, p: dict) -> ModuleAlgebra:
    return _interned("modalg", F, p, _modalg_from_payload)


def _modalg_from_payload(F: Field, p: dict) -> ModuleAlgebra:
    _need(p, "hopf", "labels", "degrees", "mult", "unit", "action")
    H = hopf_from_payload(F, p["hopf"])
    labels = p["labels"]
    n = len(labels)
    degrees = _ints(p["degrees"], "degrees", n)
    mr = p["mult"]
    if not isinstance(mr, list) or len(mr) != n or any(not isinstance(r, list) or len(r) != n for r in mr):
        raise DocumentSemanticError(f"mult shape: expected {n}x{n}x{n}")
    mult = {}
    for i in range(n):
        for j in range(n):
            x = _vec_in(F, mr[i][j], n, "mult")
            if x:
                mult[(i, j)] = x
    unit = _vec_in(F, p["unit"], n, "unit")
    acts = p["action"]
    if not isinstance(acts, list) or len(acts) != H.dim:
        raise DocumentSemanticError("action shape: one matrix per Hopf basis element")
    action = HModule(H, degrees, actions=[_mat_in(F, a, n, n, "action") for a in acts])
    idem = p.get("idempotents")
    chars = p.get("characters")
    A = ModuleAlgebra(H, labels, mult, unit, degrees, action, kind=p.get("kind", "custom"),
                      params=tuple(p.get("params", ())),
                      idempotents=None if idem is None else [_vec_in(F, e, n, "idempotents") for e in idem],
                      characters=None if chars is None else [_vec_in(F, c, n, "characters") for c in chars],
                      resolution=_res_in(F, p.get("resolution")))
    spec = p.get("builtin")
    if spec:
        try:
            kind, *params = spec.split(":")
            B = make_builtin_algebra(kind, *(params[0].split(",") if params else []), hopf=H)
        except (ValueError, TypeError):
            B = None
        if B is not None and B.mult == A.mult and B.unit == A.unit and B.degrees == A.degrees \
                and all(B.action.act(i) == A.action.act(i) for i in range(H.dim)):
            A = B
    fails = verify_module_algebra(A)
    if fails:
        raise DocumentSemanticError("module-algebra axioms fail: " + ", ".join(fails))
    return A


def bmodule_payload(M: BModule) -> dict:
    A = M.algebra
    out = {"algebra": modalg_payload(A), "degrees": M.degrees, "label": M.label,
           "cofibrant": M.cofibrant,
           "h_actions": [_mat_out(M.h.act(i)) for i in range(A.hopf.dim)],
           "a_actions": [_mat_out(M.a_act(i)) for i in range(A.dim)],
           "right_algebra": None, "r_actions": None}
    if M.is_bimodule:
        out["right_algebra"] = modalg_payload(M.right_algebra)
        out["r_actions"] = [_mat_out(M.r_act(i)) for i in range(M.right_algebra.dim)]
    return out


def bmodule_from_payload(F: Field, p: dict) -> BModule:
    _need(p, "algebra", "degrees", "h_actions", "a_actions")
    A = modalg_from_payload(F, p["algebra"])
    degrees = _ints(p["degrees"], "degrees")
    d = len(degrees)
    ha = p["h_actions"]
    if not isinstance(ha, list) or len(ha) != A.hopf.dim:
        raise DocumentSemanticError("h_actions shape: one matrix per Hopf basis element")
    h = HModule(A.hopf, degrees, actions=[_mat_in(F, a, d, d, "h_actions") for a in ha],
                label=p.get("label", ""))
    aa = p["a_actions"]
    if not isinstance(aa, list) or len(aa) != A.dim:
        raise DocumentSemanticError("a_actions shape: one matrix per algebra basis element")
    amats = [_mat_in(F, a, d, d, "a_actions") for a in aa]
    R = rf = None
    if p.get("right_algebra") is not None:
        R = A if p["right_algebra"] == p["algebra"] else modalg_from_payload(F, p["right_algebra"])
        rr = p.get("r_actions")
        if not isinstance(rr, list) or len(rr) != R.dim:
            raise DocumentSemanticError("r_actions shape: one matrix per right-algebra basis element")
        rmats = [_mat_in(F, a, d, d, "r_actions") for a in rr]
        rf = rmats.__getitem__
    M = BModule(A, h, amats.__getitem__, R, rf, cofibrant=bool(p.get("cofibrant", False)),
                label=p.get("label", ""))
    fails = verify_bmodule(M)
    if fails:
        raise DocumentSemanticError("hopfological module axioms fail: " + ", ".join(fails))
    return M


def map_payload(f: BLinearMap) -> dict:
    return {"source": bmodule_payload(f.source), "target": bmodule_payload(f.target),
            "matrix": _mat_out(f.matrix)}


def map_from_payload(F: Field, p: dict) -> BLinearMap:
    _need(p, "source", "target", "matrix")
    X = bmodule_from_payload(F, p["source"])
    Y = bmodule_from_payload(F, p["target"])
    m = _mat_in(F, p["matrix"], Y.dim, X.dim, "matrix")
    f = BLinearMap(X, Y, m)
    if not f.b_linear:
        raise DocumentSemanticError("map is not B-linear")
    return f


# ---------------------------------------------------------------------------


def to_document(obj, kind: str | None = None) -> Document:
    if isinstance(obj, HopfAlgebra):
        return Document(obj.field.spec, "hopf", hopf_payload(obj))
    if isinstance(obj, HModule):
        return Document(obj.field.spec, "hmodule", hmodule_payload(obj))
    if isinstance(obj, ModuleAlgebra):
        if kind == "resolution":
            return Document(obj.field.spec, "resolution",
                            {"algebra": modalg_payload(obj), "resolution": _res_out(obj.field, obj.resolution)})
        return Document(obj.field.spec, "modalgebra", modalg_payload(obj))
    if isinstance(obj, BModule):
        return Document(obj.field.spec, "bmodule", bmodule_payload(obj))
    if isinstance(obj, BLinearMap):
        return Document(obj.source.field.spec, "map", map_payload(obj))
    raise DocumentError(f"cannot serialize {type(obj).__name__}")


def from_document(doc: Document):
    try:
        F = field_from_spec(doc.field)
    except FieldError as e:
        raise DocumentSemanticError(f"bad field spec: {e}") from None
    p = doc.payload
    if not isinstance(p, dict):
        raise DocumentSemanticError("payload must be an object")
    try:
        if doc.kind == "hopf":
            return hopf_from_payload(F, p)
        if doc.kind == "hmodule":
            return hmodule_from_payload(F, p)
        if doc.kind == "modalgebra":
            return modalg_from_payload(F, p)
        if doc.kind == "bmodule":
            return bmodule_from_payload(F, p)
        if doc.kind == "map":
            return map_from_payload(F, p)
        if doc.kind == "resolution":
            _need(p, "algebra", "resolution")
            A = modalg_from_payload(F, p["algebra"])
            return _res_in(F, p["resolution"]), A
    except (KeyError, TypeError, IndexError) as e:
        raise DocumentSemanticError(f"malformed payload: {e!r}") from None
    raise DocumentSemanticError(f"unknown entity kind {doc.kind!r}")


def dumps(obj, kind: str | None = None) -> str:
    return serialize(to_document(obj, kind))


def loads(text: str):
    return from_document(parse(text))
