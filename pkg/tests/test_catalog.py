import numpy as np
import pytest

from dgsemi.catalog import make_truncated_poly, random_complex, standard_catalog
from dgsemi.complexes import validate_complex
from dgsemi.constructions import tensor_over
from dgsemi.scalars import GF

import oracles


def test_names_and_dimensions(catalog):
    assert sorted(catalog) == ["K", "S3", "T2", "T3", "k"]
    assert [catalog[n].algebra.dim for n in ("k", "T2", "T3", "S3", "K")] == [1, 2, 3, 3, 4]


def test_dualizing_module_has_two_generators(catalog):
    s3 = catalog["S3"]
    w, k = s3.module("dualizing"), s3.module("residue")
    assert tensor_over(w, k).module.complex.total_dim == 2
    # socle of ω: elements killed by x and y
    act = w.total_action()
    ann = oracles.nullspace(np.concatenate([act[:, 1, :], act[:, 2, :]]).tolist(), 101, 3)
    assert len(ann) == 1


def test_field_entry_is_its_own_residue(catalog):
    e = catalog["k"]
    assert e.module("regular") is e.module("residue")


def test_random_complex_is_seeded(catalog):
    f = GF(101)
    x, y = random_complex(f, seed=3), random_complex(f, seed=3)
    assert x.dims == y.dims
    assert all(np.array_equal(x.d(i), y.d(i)) for i in x.diffs)
    assert validate_complex(x).holds
    assert set(x.dims) <= {0, 1, 2, 3} and max(x.dims.values(), default=0) <= 4


def test_random_complex_limits():
    with pytest.raises(ValueError):
        random_complex(max_dim=7)


def test_truncated_poly_requires_n_at_least_2():
    with pytest.raises(ValueError):
        make_truncated_poly(n=1)


def test_other_prime_field():
    cat = standard_catalog(GF(7))
    assert cat["S3"].algebra.field == GF(7)
