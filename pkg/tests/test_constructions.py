import pytest

from dgsemi.complexes import ChainMap, DGComplex, identity_map
from dgsemi.constructions import boxtimes, check_isomorphism, inclusion_maps, restrict, tensor_over
from dgsemi.dg import regular_module, validate_dg_module
from dgsemi.scalars import GF
from dgsemi.tensor import tensor_algebras

from helpers import construction_instances, oracle_isomorphism

@pytest.mark.parametrize("index", range(20))
def test_constructed_maps_are_isomorphisms(catalog, index):
    kind, label, build = construction_instances(catalog)[index]
    r = build()
    assert r.report.holds, (label, r.report.reason)
    assert oracle_isomorphism(r.map, r.source, r.target), label
    assert validate_dg_module(r.target).holds


def test_instances_cover_each_construction(catalog):
    kinds = [k for k, _, _ in construction_instances(catalog)]
    assert len(kinds) == 20 and set(kinds) == {"alpha", "gamma", "eta"}


def test_relative_tensor_dimensions(catalog):
    s3 = catalog["S3"]
    R, k, w = s3.module("regular"), s3.module("residue"), s3.module("dualizing")
    assert tensor_over(R, w).module.complex.dims == {0: 3}
    assert tensor_over(k, k).module.complex.dims == {0: 1}
    # ω ⊗ k = ω / mω, two minimal generators
    assert tensor_over(w, k).module.complex.dims == {0: 2}


def test_restriction_along_inclusion(catalog):
    a1, a2 = catalog["S3"].algebra, catalog["T2"].algebra
    a = tensor_algebras(a1, a2)
    i1, i2 = inclusion_maps(a)
    m = restrict(regular_module(a), i1, a1)
    assert m.algebra is a1
    assert validate_dg_module(m).holds
    assert m.complex.dims == {0: 6}


def test_broken_map_is_not_an_isomorphism(catalog):
    r = construction_instances(catalog)[1][2]()
    f = r.source.field
    comps = {n: f.scale(f.scalar(0), r.map.comp(n)) for n in r.source.complex.dims}
    bad = ChainMap(r.map.source, r.map.target, 0, comps)
    mc = check_isomorphism(bad, r.source, r.target)
    assert not mc.isomorphism and not mc.bijective
    assert not oracle_isomorphism(bad, r.source, r.target)


def test_boxtimes_sign():
    # f' = id on x' in degree 1, f'' of degree 1: the sign is (-1)^{|f''||x'|} = -1
    f = GF(101)
    x1 = DGComplex(f, {1: 1})
    y = DGComplex(f, {0: 1, 1: 1})
    g = ChainMap(y, y, 1, {0: f.matrix([[3]])})
    t = boxtimes(identity_map(x1), g)
    assert t.degree == 1
    assert t.comp(1)[0, 0] == f.scalar(-3)
    x0 = DGComplex(f, {0: 1})
    assert boxtimes(identity_map(x0), g).comp(0)[0, 0] == f.scalar(3)
