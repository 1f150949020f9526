import pytest

from dgsemi.catalog import shifted_module
from dgsemi.semidual import (approx_equivalent, auslander_membership, bass_membership, classify_shift,
                             derived_reflexive, is_semidualizing, psi, theorem_suite)
from dgsemi.tensor import tensor_algebras, tensor_modules

def _compatible(v1, v2):
    """Two verdicts never contradict: decided verdicts agree."""
    return v1.inconclusive or v2.inconclusive or v1.verdict == v2.verdict


def test_gorenstein_candidates(catalog):
    t2 = catalog["T2"]
    assert is_semidualizing(t2.algebra, t2.module("regular"), 6).holds
    r = is_semidualizing(t2.algebra, t2.module("residue"), 6)
    assert r.fails
    # Ext^i(k, k) = k in every degree, so the homothety misses homology in negative degrees
    assert r.witnesses


@pytest.mark.parametrize("role,expected", [("regular", "holds"), ("dualizing", "holds"), ("residue", "fails")])
def test_short_artinian_semidualizing(catalog, role, expected):
    s3 = catalog["S3"]
    assert is_semidualizing(s3.algebra, s3.module(role), 4).verdict == expected


def test_koszul_regular_is_semidualizing(catalog):
    e = catalog["K"]
    assert is_semidualizing(e.algebra, e.module("regular"), 4).holds


def test_foxby_classes_over_short_artinian(catalog):
    s3 = catalog["S3"]
    a, R, k, w = s3.algebra, s3.module("regular"), s3.module("residue"), s3.module("dualizing")
    assert bass_membership(a, w, w, 4).holds
    assert auslander_membership(a, w, R, 4).holds
    # k has infinite projective and injective dimension: both certificates apply
    b = bass_membership(a, w, k, 4)
    assert b.fails and "unbounded_certificate" in b.witnesses
    assert auslander_membership(a, w, k, 4).fails
    # every finite module is reflexive for the dualizing module
    for m in (R, k, w):
        assert derived_reflexive(a, w, m, 4).holds


def test_regular_module_classes(catalog):
    t2 = catalog["T2"]
    a, R, k = t2.algebra, t2.module("regular"), t2.module("residue")
    # over R itself Bass and Auslander classes are everything with bounded homology
    for m in (R, k):
        assert bass_membership(a, R, m, 4).holds
        assert auslander_membership(a, R, m, 4).holds


def test_direct_and_factored_routes_agree(catalog):
    s3, t2 = catalog["S3"], catalog["T2"]
    a = tensor_algebras(s3.algebra, t2.algebra)
    w_r = tensor_modules(s3.module("dualizing"), t2.module("regular"), a)
    cases = [(s3.module(x), t2.module(y)) for x in ("regular", "dualizing", "residue")
             for y in ("regular", "residue")]
    for x, y in cases:
        m = tensor_modules(x, y, a)
        d1 = is_semidualizing(a, m, 4, strategy="direct")
        f1 = is_semidualizing(a, m, 4, strategy="factored")
        assert d1.verdict == f1.verdict
        for check in (bass_membership, auslander_membership):
            assert _compatible(check(a, w_r, m, 4, strategy="direct"), check(a, w_r, m, 4, strategy="factored"))


@pytest.mark.parametrize("role", ["regular", "dualizing", "residue"])
def test_verdicts_stable_at_larger_bound(catalog, role):
    s3 = catalog["S3"]
    a, w, m = s3.algebra, s3.module("dualizing"), s3.module(role)
    for d in (3, 4):
        assert is_semidualizing(a, m, d).verdict == is_semidualizing(a, m, d + 2).verdict
        for check in (bass_membership, auslander_membership):
            v, v2 = check(a, w, m, d), check(a, w, m, d + 2)
            # a larger bound may decide more but never flips or withdraws a decision
            assert v.inconclusive or v2.verdict == v.verdict


def test_classify_shift(catalog):
    s3 = catalog["S3"]
    a, R, w = s3.algebra, s3.module("regular"), s3.module("dualizing")
    v = classify_shift(a, w, shifted_module(w, 2), 6)
    assert v.equivalent and v.shift == 2
    v = classify_shift(a, shifted_module(R, -1), R, 6)
    assert v.equivalent and v.shift == 1
    v = classify_shift(a, w, R, 6)
    assert v.distinct and v.invariant == "generator counts"


def test_approx_is_reflexive(catalog):
    s3 = catalog["S3"]
    assert approx_equivalent(s3.algebra, s3.module("dualizing"), s3.module("dualizing"), 4).holds


def test_psi_requires_semidualizing_inputs(catalog):
    s3, t2 = catalog["S3"], catalog["T2"]
    img = psi(s3.module("dualizing"), t2.module("regular"), 4)
    assert img.report.holds
    with pytest.raises(ValueError):
        psi(s3.module("residue"), t2.module("regular"), 4)


def test_theorem_suite_small(catalog):
    t2 = catalog["T2"]
    cases = [(t2.module("regular"), t2.module("regular")), (t2.module("residue"), t2.module("regular"))]
    rep = theorem_suite(t2.algebra, t2.algebra, cases, 4)
    checks = {r.check for r in rep.records}
    assert "semidualizing_tensor" in checks and "semidualizing_tensor_converse" in checks
    assert not any(r.fails for r in rep.records)
    assert len(rep.psi_images) == 1
    assert all(r.seconds is not None and r.seconds >= 0 for r in rep.records)
    assert theorem_suite(t2.algebra, t2.algebra, [], 4).records == []
