"""Command-line front end.

Every command reads documents (JSON files written by `builtin` or by the
library's serializer) or a `--builtin` spec, prints a human-readable report
(or a JSON report with --json) and exits with 0 = success/true,
1 = false/none, 2 = error."""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import hmod, hopfomod, io, kzero, modalg, resolve_derived
from .hopf import HopfAlgebra, HopfError, parse_builtin, verify_hopf
from .exactla import FieldError, Mat

EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


class CliError(Exception):
    pass


class Report:
    """Collected output: lines for humans, a dict for --json, and a status."""

    def __init__(self):
        self.lines: list[str] = []
        self.data: dict = {}
        self.status = EXIT_OK
        self.document: str | None = None

    def say(self, key: str, value, text: str | None = None):
        self.data[key] = value
        self.lines.append(text if text is not None else f"{key}: {value}")


# ---------------------------------------------------------------------------
# inputs


def _read(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}") from None
    return io.loads(text)


def _hopf(args) -> HopfAlgebra:
    if args.builtin:
        return parse_builtin(args.builtin)
    obj = _read(_one(args))
    if isinstance(obj, HopfAlgebra):
        return obj
    if hasattr(obj, "hopf"):
        return obj.hopf
    raise CliError("expected a Hopf algebra")


def parse_algebra_spec(spec: str) -> modalg.ModuleAlgebra:
    """'truncated_poly_pdg:3' or 'upper_triangular_2/exterior:1' (algebra / Hopf algebra)."""
    if "/" in spec:
        a, h = spec.split("/", 1)
        return modalg.parse_builtin_algebra(a, hopf=parse_builtin(h))
    return modalg.parse_builtin_algebra(spec)


def _algebra(args) -> modalg.ModuleAlgebra:
    if args.builtin:
        return parse_algebra_spec(args.builtin)
    obj = _read(_one(args))
    if isinstance(obj, modalg.ModuleAlgebra):
        return obj
    if isinstance(obj, hopfomod.BModule):
        return obj.algebra
    raise CliError("expected a module algebra")


def _one(args, k: int = 0) -> str:
    if len(args.files) <= k:
        raise CliError("missing input file")
    return args.files[k]


def _hmodule(args, k=0) -> hmod.HModule:
    obj = _read(_one(args, k))
    if isinstance(obj, hopfomod.BModule):
        return obj.h
    if isinstance(obj, hmod.HModule):
        return obj
    raise CliError(f"{args.files[k]}: expected an H-module")


def _bmodule(args, k=0) -> hopfomod.BModule:
    obj = _read(_one(args, k))
    if isinstance(obj, hopfomod.BModule):
        return obj
    raise CliError(f"{args.files[k]}: expected a hopfological module")


def _map(args, k=0) -> hopfomod.BLinearMap:
    obj = _read(_one(args, k))
    if isinstance(obj, hopfomod.BLinearMap):
        return obj
    raise CliError(f"{args.files[k]}: expected a map")


def _render_mat(m: Mat) -> list[list[str]]:
    F = m.field
    return [[F.render(r.get(j, F.zero)) for j in range(m.ncols)] for r in m.rows]


# ---------------------------------------------------------------------------
# commands


def cmd_verify_hopf(args, rep):
    H = _hopf(args)
    fails = verify_hopf(H)
    rep.say("hopf", H.name)
    rep.say("failures", fails, "all Hopf axioms hold" if not fails else "failed: " + ", ".join(fails))
    rep.status = EXIT_FALSE if fails else EXIT_OK


def cmd_integral(args, rep):
    H = _hopf(args)
    rep.say("integral", H.render(H.integral), H.render(H.integral))


BUILTIN_OBJECTS = ("hopf", "trivial", "regular", "regular-lam", "algebra", "algebra-module", "bimodule",
                   "free-trivial", "simple", "projective", "identity", "lambda-embed", "resolution")


def cmd_builtin(args, rep):
    what = args.object
    spec = _one(args)
    index = args.index
    if what in ("hopf", "trivial", "regular", "regular-lam"):
        H = parse_builtin(spec)
        obj = {"hopf": lambda: H, "trivial": lambda: hmod.trivial(H, args.degree),
               "regular": lambda: hmod.regular(H), "regular-lam": lambda: hmod.regular_lam(H)}[what]()
    else:
        A = parse_algebra_spec(spec)
        if what == "algebra":
            obj = A
        elif what == "resolution":
            if A.resolution is None:
                raise CliError(f"{A.name} records no resolution")
            obj = io.to_document(A, "resolution")
        elif what == "algebra-module":
            obj = hopfomod.algebra_module(A)
        elif what == "bimodule":
            obj = hopfomod.algebra_module(A, bimodule=True)
        elif what == "free-trivial":
            obj = hopfomod.free_module(A, hmod.trivial(A.hopf, args.degree))
        elif what == "simple":
            obj = hopfomod.simple_module(A, index)
        elif what == "projective":
            obj = hopfomod.projective_module(A, index)
        elif what == "identity":
            obj = hopfomod.identity_B(hopfomod.algebra_module(A))
        elif what == "lambda-embed":
            obj = hopfomod.lambda_embed(hopfomod.algebra_module(A))
        else:
            raise CliError(f"unknown builtin object {what!r}")
    text = io.serialize(obj) if isinstance(obj, io.Document) else io.dumps(obj)
    rep.document = text


def _emit_module(rep, obj):
    rep.document = io.dumps(obj)


def cmd_tensor(args, rep):
    _emit_module(rep, hmod.tensor(_hmodule(args, 0), _hmodule(args, 1)))


def cmd_hom(args, rep):
    _emit_module(rep, hmod.hom(_hmodule(args, 0), _hmodule(args, 1)))


def cmd_invariants(args, rep):
    V = _hmodule(args)
    inv = hmod.invariants(V)
    rep.say("dim", inv.ncols)
    rep.say("basis", _render_mat(inv.T) if inv.ncols else [], None)
    rep.lines.pop()


def cmd_stable_invariants(args, rep):
    V = _hmodule(args)
    si = hmod.stable_invariants(V)
    rep.say("dim", si.dim)
    rep.say("by_degree", {str(k): v for k, v in sorted(si.by_degree.items())})


def cmd_stable_hom(args, rep):
    dim, reps, by_degree = hmod.stable_hom(_hmodule(args, 0), _hmodule(args, 1))
    rep.say("dim", dim)
    rep.say("by_degree", {str(k): v for k, v in sorted(by_degree.items())})


def cmd_acyclic(args, rep):
    V = _hmodule(args)
    g = hmod.is_stably_zero(V)
    rep.say("acyclic", g is not None, "acyclic" if g is not None else "not acyclic")
    rep.status = EXIT_OK if g is not None else EXIT_FALSE


def cmd_shift(args, rep):
    obj = _read(_one(args))
    d = -1 if args.inverse else 1
    if isinstance(obj, hopfomod.BModule):
        _emit_module(rep, hopfomod.shift_B(obj, d))
    elif isinstance(obj, hmod.HModule):
        _emit_module(rep, hmod.shift(obj, d))
    else:
        raise CliError("expected a module")


def cmd_cone(args, rep):
    C, _ = hopfomod.cone(_map(args))
    _emit_module(rep, C)


def cmd_triangle(args, rep):
    u = _map(args)
    C, tri = hopfomod.cone(u)
    rep.say("dims", [u.source.dim, u.target.dim, C.dim])
    rep.say("ses_exact", tri.ses_exact())
    rep.say("vu_factors", tri.vu_factors())
    try:
        rep.say("k0_additive", kzero.k0_triangle_check(tri))
    except kzero.K0Error:
        rep.say("k0_additive", None)
    ok = tri.ses_exact() and tri.vu_factors() and rep.data["k0_additive"] is not False
    rep.status = EXIT_OK if ok else EXIT_FALSE


def cmd_quasi_iso(args, rep):
    ok, _ = hopfomod.quasi_iso(_map(args))
    rep.say("quasi_iso", ok, "quasi-isomorphism" if ok else "not a quasi-isomorphism")
    rep.status = EXIT_OK if ok else EXIT_FALSE


def cmd_homotopy_hom(args, rep):
    dim, _, by_degree = hopfomod.homotopy_hom(_bmodule(args, 0), _bmodule(args, 1))
    rep.say("dim", dim)
    rep.say("by_degree", {str(k): v for k, v in sorted(by_degree.items())})


def cmd_witness(args, rep):
    g = hopfomod.null_homotopy_witness(_map(args))
    if g is None:
        rep.say("witness", None, "not null-homotopic")
        rep.status = EXIT_FALSE
    else:
        rep.say("witness", _render_mat(g))


def cmd_contractible(args, rep):
    A = _algebra(args)
    x = hopfomod.contractible_certificate(A)
    if x is None:
        rep.say("witness", None, "no certificate: Lambda.x = 1 has no solution")
        rep.status = EXIT_FALSE
    else:
        rep.say("witness", A.render(x), A.render(x))


def cmd_smash(args, rep):
    A = _algebra(args)
    B = modalg.smash(A)
    fails = B.verify()
    rep.say("dim", B.dim)
    rep.say("failures", fails, "smash product verified" if not fails else "failed: " + ", ".join(fails))
    rep.status = EXIT_FALSE if fails else EXIT_OK


def cmd_opposite(args, rep):
    A = _algebra(args)
    Aop = modalg.opposite(A, force=args.force)
    fails = modalg.verify_module_algebra(Aop)
    rep.say("failures", fails, "opposite is a module algebra" if not fails else "failed: " + ", ".join(fails))
    rep.status = EXIT_FALSE if fails else EXIT_OK


def cmd_bar_stage(args, rep):
    A = _algebra(args)
    st = resolve_derived.bar_stage(A, args.n, n_max=args.effort or resolve_derived.N_MAX,
                                   max_dim=args.max_dim)
    rep.say("dims", [s.dim for s in st.stages])
    checks = resolve_derived.bar_checks(st)
    rep.say("checks", checks)
    rep.status = EXIT_OK if all(v is not False for v in checks.values()) else EXIT_FALSE


def cmd_replace(args, rep):
    M = _bmodule(args)
    r = resolve_derived.replacement_for(M)
    rep.say("dim", r.p.dim, None)
    rep.lines.pop()
    rep.document = io.dumps(r.p)


def cmd_derived_tensor(args, rep):
    D, _ = resolve_derived.derived_tensor(_bmodule(args, 0), _bmodule(args, 1))
    _emit_module(rep, D)


def cmd_derived_hom(args, rep):
    W = resolve_derived.derived_hom(_bmodule(args, 0), _bmodule(args, 1))
    _emit_module(rep, W)


def cmd_k0_ring(args, rep):
    R = kzero.k0_ring(_hopf(args))
    rep.say("ring", R.name, R.name)


def cmd_k0_class(args, rep):
    c = kzero.k0_class(_hmodule(args))
    rep.say("class", str(c), str(c))


def cmd_k0_pairing(args, rep):
    A = _algebra(args)
    m = kzero.k0_pairing_basic(A)
    rep.say("pairing", [[str(c) for c in row] for row in m],
            "\n".join(" ".join(str(c) for c in row) for row in m))


def cmd_jordan(args, rep):
    jt = hmod.jordan_type(_hmodule(args))
    rep.say("jordan_type", [list(b) for b in jt], " ".join(f"{s}@{d}" for s, d in jt))


def cmd_slash(args, rep):
    out = hmod.slash_cohomology(_hmodule(args), args.q)
    rep.say("slash", {str(k): v for k, v in sorted(out.items())})


COMMANDS = {
    "verify-hopf": cmd_verify_hopf, "integral": cmd_integral, "builtin": cmd_builtin,
    "tensor": cmd_tensor, "hom": cmd_hom, "invariants": cmd_invariants,
    "stable-invariants": cmd_stable_invariants, "stable-hom": cmd_stable_hom, "acyclic": cmd_acyclic,
    "shift": cmd_shift, "cone": cmd_cone, "triangle": cmd_triangle, "quasi-iso": cmd_quasi_iso,
    "homotopy-hom": cmd_homotopy_hom, "witness": cmd_witness, "contractible": cmd_contractible,
    "smash": cmd_smash, "opposite": cmd_opposite, "bar-stage": cmd_bar_stage, "replace": cmd_replace,
    "derived-tensor": cmd_derived_tensor, "derived-hom": cmd_derived_hom, "k0-ring": cmd_k0_ring,
    "k0-class": cmd_k0_class, "k0-pairing": cmd_k0_pairing, "jordan": cmd_jordan, "slash": cmd_slash,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hopfological", description="Hopfological algebra toolkit")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("files", nargs="*", help="input documents (or a builtin spec for `builtin`)")
    p.add_argument("--builtin", help="builtin Hopf algebra (e.g. p_dg:3) or module algebra spec")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
    p.add_argument("--effort", type=int, default=None, help="search bound (bar stages: N_max)")
    p.add_argument("--max-dim", type=int, default=resolve_derived.MAX_DIM, help="dimension cap")
    p.add_argument("-o", "--output", help="write the produced document here instead of stdout")
    p.add_argument("--as", dest="object", default="hopf", choices=BUILTIN_OBJECTS,
                   help="what `builtin` should emit")
    p.add_argument("--index", type=int, default=0, help="idempotent/simple index for `builtin`")
    p.add_argument("--degree", type=int, default=0, help="degree of trivial pieces for `builtin`")
    p.add_argument("--inverse", action="store_true", help="`shift`: apply T^-1")
    p.add_argument("--force", action="store_true", help="`opposite`: build even when refused")
    p.add_argument("-n", type=int, default=0, help="`bar-stage`: stage index")
    p.add_argument("-q", type=int, default=1, help="`slash`: exponent")
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    random.seed(args.seed)
    rep = Report()
    try:
        COMMANDS[args.command](args, rep)
    except (CliError, io.DocumentError, HopfError, FieldError, ValueError, AssertionError) as e:
        msg = str(e) or type(e).__name__
        if args.json:
            out.write(json.dumps({"command": args.command, "error": msg}) + "\n")
        else:
            print(f"error: {msg}", file=sys.stderr)
        return EXIT_ERROR
    if rep.document is not None and args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(rep.document)
    if args.json:
        data = dict(rep.data, command=args.command, status=rep.status)
        if rep.document is not None and not args.output:
            data["document"] = json.loads(rep.document)
        out.write(json.dumps(data, sort_keys=True) + "\n")
    else:
        if rep.document is not None and not args.output:
            out.write(rep.document)
        for line in rep.lines:
            out.write(line + "\n")
    return rep.status


def main() -> None:
    sys.exit(run())
