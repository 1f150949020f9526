import pytest

from dgsemi.catalog import make_truncated_poly
from dgsemi.complexes import is_quasi_iso
from dgsemi.resolutions import (is_minimal, lift_morphism, poincare_coefficients, semifree_resolution,
                                truncate_resolution, verify_semifree, window_hom, window_tensor)
from dgsemi.scalars import QQ

import oracles

# maximal ideals typed by hand on the monomial bases
IDEALS = {"T2": [[0, 1]], "T3": [[0, 1, 0], [0, 0, 1]], "S3": [[0, 1, 0], [0, 0, 1]]}


def _oracle_betti(entry, role, length):
    a, m = entry.algebra, entry.module(role)
    p = a.field.characteristic
    act = m.total_action()
    mats = [act[:, b, :].tolist() for b in range(a.dim)]
    return oracles.betti_numbers(a.mult.tolist(), IDEALS[entry.name], m.complex.total_dim, mats, length, p)


@pytest.mark.parametrize("name,role,d", [("T2", "residue", 10), ("T3", "residue", 6), ("S3", "dualizing", 2),
                                         ("S3", "residue", 4), ("S3", "dualizing", 4), ("T2", "regular", 3)])
def test_poincare_matches_iterated_kernel_oracle(catalog, name, role, d):
    e = catalog[name]
    res = semifree_resolution(e.algebra, e.module(role), d)
    assert res.minimal
    assert poincare_coefficients(res) == _oracle_betti(e, role, d)
    assert verify_semifree(res).holds
    assert is_minimal(res).holds


def test_known_betti_sequences(catalog):
    t2, s3 = catalog["T2"], catalog["S3"]
    assert poincare_coefficients(semifree_resolution(t2.algebra, t2.module("residue"), 10)) == [1] * 11
    assert poincare_coefficients(semifree_resolution(s3.algebra, s3.module("dualizing"), 2)) == [2, 3, 6]
    assert poincare_coefficients(semifree_resolution(s3.algebra, s3.module("residue"), 4)) == [1, 2, 4, 8, 16]


@pytest.mark.parametrize("name,role", [("S3", "dualizing"), ("S3", "residue"), ("T3", "residue")])
def test_reversed_order_gives_same_poincare(catalog, name, role):
    e = catalog[name]
    a, m = e.algebra, e.module(role)
    assert (poincare_coefficients(semifree_resolution(a, m, 4)) ==
            poincare_coefficients(semifree_resolution(a, m, 4, order="reversed")))


def test_nonminimal_resolution_is_still_a_resolution(catalog):
    e = catalog["S3"]
    res = semifree_resolution(e.algebra, e.module("dualizing"), 3, minimal=False)
    assert not res.minimal
    assert verify_semifree(res).holds
    with pytest.raises(ValueError):
        poincare_coefficients(res)


def test_dg_algebra_resolution(catalog):
    e = catalog["K"]
    res = semifree_resolution(e.algebra, e.module("regular"), 4)
    assert verify_semifree(res).holds
    assert res.ladder.counts() == {0: 1}


def test_truncation_gives_prefix(catalog):
    e = catalog["S3"]
    res = semifree_resolution(e.algebra, e.module("residue"), 4)
    short = truncate_resolution(res, 2)
    assert poincare_coefficients(short) == [1, 2, 4]
    assert verify_semifree(short).holds
    with pytest.raises(ValueError):
        truncate_resolution(res, 5)


def test_rational_field_resolution():
    e = make_truncated_poly(QQ, 3)
    res = semifree_resolution(e.algebra, e.module("residue"), 5)
    assert poincare_coefficients(res) == [1] * 6


def test_windows():
    assert window_hom(6, 0).as_list() == [-5, None]
    assert window_tensor(6, 0).as_list() == [None, 5]
    assert window_tensor(4, -2).as_list() == [None, 1]


def test_lift_identity_on_generators(catalog):
    e = catalog["S3"]
    res = semifree_resolution(e.algebra, e.module("dualizing"), 3)
    F = res.ladder
    # the identity of F is determined by sending each generator to itself
    bottom = {i: F.element(F.gen_degrees[i], {i: e.algebra.unit}) for i in range(F.ngens)}
    phi = lift_morphism(F, bottom, F.to_module())
    assert phi is not None and phi.check().holds
    assert is_quasi_iso(phi).holds
