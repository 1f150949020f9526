import numpy as np
import pytest

from dgsemi.catalog import make_koszul, make_truncated_poly, shifted_module, standard_catalog
from dgsemi.dg import (algebra_from_total, generator_counts, h0_data, regular_module, validate_dg_algebra,
                       validate_dg_module, validate_locality)
from dgsemi.scalars import GF, QQ
from dgsemi.tensor import tensor_algebras, tensor_modules

from helpers import mutate_algebra, mutate_module, oracle_algebra_broken, oracle_module_broken


@pytest.mark.parametrize("name", ["k", "T2", "T3", "S3", "K"])
def test_catalog_structures_pass_validators_and_oracle(catalog, name):
    e = catalog[name]
    assert validate_dg_algebra(e.algebra).holds
    assert oracle_algebra_broken(e.algebra) == set()
    assert validate_locality(e.algebra).holds
    for m in e.modules.values():
        assert validate_dg_module(m).holds
        assert oracle_module_broken(m) == set()


@pytest.mark.parametrize("seed", range(40))
def test_mutations_report_the_oracle_axioms(catalog, seed):
    rng = np.random.default_rng(seed)
    e = catalog[["T2", "T3", "S3", "K"][seed % 4]]
    for _ in range(20):
        if seed % 2:
            r = mutate_algebra(e.algebra, rng)
            if r is None:
                continue
            x, _where = r
            expected, report = oracle_algebra_broken(x), validate_dg_algebra(x)
        else:
            m = list(e.modules.values())[seed % len(e.modules)]
            r = mutate_module(m, rng)
            if r is None:
                continue
            x, _where = r
            expected, report = oracle_module_broken(x), validate_dg_module(x)
        if expected:
            assert report.fails
            assert set(report.witnesses["failed_axioms"]) == expected
            assert report.witnesses["axiom"] in expected
            return
        assert report.holds
    pytest.skip("no effective mutation drawn")


def test_noncommutative_table_is_rejected():
    f = GF(5)
    # basis 1, x, y in degree 0 with xy = 1·x but yx = 0
    mult = f.zeros(9, 3).reshape(3, 3, 3)
    for i in range(3):
        mult[i, 0, i] = mult[i, i, 0] = 1
    mult[1, 1, 2] = 1
    a = algebra_from_total(f, [0, 0, 0], f.zeros(3, 3), mult, f.matrix([[1, 0, 0]])[0])
    r = validate_dg_algebra(a)
    assert r.fails and "graded_commutative" in r.witnesses["failed_axioms"]


def test_tensor_algebra_of_catalog_factors_validates(catalog):
    s3 = catalog["S3"]
    a = tensor_algebras(s3.algebra, catalog["T2"].algebra)
    assert a.dim == 6
    assert validate_dg_algebra(a).holds and oracle_algebra_broken(a) == set()
    m = tensor_modules(s3.module("dualizing"), catalog["T2"].module("residue"), a)
    assert validate_dg_module(m).holds and oracle_module_broken(m) == set()
    kk = tensor_algebras(catalog["K"].algebra, catalog["K"].algebra)
    assert kk.complex.dims == {0: 4, 1: 8, 2: 4}
    assert validate_dg_algebra(kk).holds


def test_koszul_homology(catalog):
    k = catalog["K"].algebra
    assert k.complex.homology_dims() == {0: 1, 1: 1}


def test_h0_and_generators_of_dualizing_module(catalog):
    s3 = catalog["S3"]
    assert h0_data(s3.algebra).dim == 3
    assert generator_counts(s3.module("dualizing"), [0]) == {0: 2}
    assert generator_counts(s3.module("regular"), [0]) == {0: 1}
    assert generator_counts(s3.module("residue"), [0]) == {0: 1}


def test_shifted_module_still_validates(catalog):
    m = regular_module(catalog["K"].algebra)
    for n in (-3, 1, 2):
        s = shifted_module(m, n)
        assert validate_dg_module(s).holds
        assert oracle_module_broken(s) == set()


def test_rational_catalog_matches():
    t = make_truncated_poly(QQ, 3)
    assert validate_dg_algebra(t.algebra).holds
    k = make_koszul(t)
    assert validate_dg_algebra(k.algebra).holds
    # H_0 = k[x]/(x), H_1 = ann(x) = (x²)
    assert k.algebra.complex.homology_dims() == {0: 1, 1: 1}


def test_catalog_is_deterministic():
    a, b = standard_catalog(), standard_catalog()
    for name in a:
        assert np.array_equal(a[name].algebra.mult, b[name].algebra.mult)
