from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, strategies as st

from hopfological.exactla import cyclotomic_field, prime_field
from hopfological.hmod import random_module
from hopfological.hopf import exterior, group_algebra, p_dg, taft
from hopfological.hopfomod import bmodule_catalog, random_chain_map
from hopfological.io import (
    DocumentSemanticError, DocumentSyntaxError, Document, _scalar, dumps, loads, parse, serialize,
)
from hopfological.modalg import ALGEBRA_KINDS, make_builtin_algebra, path_algebra_A2, truncated_poly_pdg

HOPFS = [p_dg(2), p_dg(3), p_dg(3, graded=False), exterior(1), exterior(2), taft(2), taft(3),
         group_algebra(3), group_algebra(4, prime_field(2))]
ALGEBRAS = [k for k in ALGEBRA_KINDS if k != "taft_truncated_broken"]


@pytest.mark.parametrize("H", HOPFS, ids=lambda H: H.name)
def test_hopf_round_trip(H):
    text = dumps(H)
    back = loads(text)
    assert back is H or dumps(back) == text
    assert back.mult == H.mult and back.comult == H.comult and back.integral == H.integral


@pytest.mark.parametrize("kind", ALGEBRAS)
def test_module_algebra_and_bmodule_round_trip(kind):
    A = make_builtin_algebra(kind)
    text = dumps(A)
    B = loads(text)
    assert dumps(B) == text
    rng = random.Random(1)
    mods = bmodule_catalog(A, rng)
    for M in mods:
        M2 = loads(dumps(M))
        assert M2.dim == M.dim and dumps(M2) == dumps(M)
    f = random_chain_map(mods[0], mods[1], rng)
    g = loads(dumps(f))
    assert g.matrix == f.matrix


@pytest.mark.parametrize("H", [p_dg(3), exterior(2), taft(3)], ids=lambda H: H.name)
@given(seed=st.integers(0, 10_000))
def test_hmodule_round_trip(H, seed):
    M = random_module(H, random.Random(seed), max_dim=4)
    N = loads(dumps(M))
    assert N.hopf.mult == M.hopf.mult and N.hopf.comult == M.hopf.comult
    assert N.degrees == M.degrees
    assert all(N.act(i) == M.act(i) for i in range(H.dim))


def test_separately_loaded_modules_share_hopf_algebra():
    H = exterior(1)
    rng = random.Random(0)
    a = loads(dumps(random_module(H, rng)))
    b = loads(dumps(random_module(H, rng)))
    assert a.hopf is b.hopf


def test_resolution_document():
    A = path_algebra_A2()
    res, A2 = loads(dumps(A, kind="resolution"))
    assert res == A.resolution
    assert A2.dim == A.dim


def test_syntax_errors_carry_position():
    with pytest.raises(DocumentSyntaxError) as e:
        parse('{\n  "field": "GF(3)",\n  "kind": }')
    assert e.value.line == 3
    assert "line 3, column" in str(e.value)


def test_envelope_errors():
    good = json.loads(dumps(p_dg(3)))
    for key in ("format_version", "field", "kind", "payload"):
        bad = dict(good)
        del bad[key]
        with pytest.raises(DocumentSemanticError):
            loads(json.dumps(bad))
    with pytest.raises(DocumentSemanticError):
        loads(json.dumps({**good, "format_version": 2}))
    with pytest.raises(DocumentSemanticError):
        loads(json.dumps({**good, "kind": "nonsense"}))
    with pytest.raises(DocumentSemanticError):
        loads(json.dumps({**good, "field": "GF(4)"}))


def test_shape_errors_are_reported():
    doc = json.loads(dumps(p_dg(3)))
    doc["payload"]["comult"] = doc["payload"]["comult"][:2]
    with pytest.raises(DocumentSemanticError, match="comult shape: expected 3x3x3"):
        loads(json.dumps(doc))


def test_custom_structures_are_verified():
    doc = json.loads(dumps(p_dg(3)))
    doc["payload"]["builtin"] = None
    assert loads(json.dumps(doc)).dim == 3
    doc["payload"]["counit"][1] = "1"
    with pytest.raises(DocumentSemanticError, match="Hopf axioms fail"):
        loads(json.dumps(doc))
    M = random_module(p_dg(3), random.Random(2), max_dim=3)
    mdoc = json.loads(dumps(M))
    d = mdoc["payload"]["actions"][1]
    d[0][0] = "1" if d[0][0] == "0" else "0"
    with pytest.raises(DocumentSemanticError):
        loads(json.dumps(mdoc))


def test_broken_module_algebra_is_rejected():
    doc = json.loads(dumps(make_builtin_algebra("taft_truncated_broken")))
    with pytest.raises(DocumentSemanticError, match="module-algebra axioms fail"):
        loads(json.dumps(doc))


def test_scalar_syntax():
    F = cyclotomic_field(4)
    assert _scalar(F, "1/2 + 1/3 z", "x") == F.parse("1/2 + 1/3 z")
    assert _scalar(prime_field(3), 5, "x") == 2
    with pytest.raises(DocumentSemanticError):
        _scalar(prime_field(3), 1.5, "x")
    with pytest.raises(DocumentSemanticError):
        _scalar(prime_field(3), "1/0", "x")


def test_serialize_is_stable():
    doc = Document("GF(3)", "hopf", json.loads(dumps(truncated_poly_pdg(3).hopf))["payload"])
    assert parse(serialize(doc)) == doc
