"""Deterministic example algebras and modules, plus seeded random complexes."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .complexes import DGComplex
from .dg import (DGAlgebra, DGModule, LocalityCertificate, StructureError, algebra_from_total,
                 module_from_total, regular_module)
from .scalars import Field, GF

DEFAULT_FIELD = GF(101)


@dataclass
class CatalogEntry:
    name: str
    algebra: DGAlgebra
    modules: dict[str, DGModule] = field(default_factory=dict)

    @property
    def locality(self) -> LocalityCertificate | None:
        return self.algebra.locality

    def module(self, role: str) -> DGModule:
        return self.modules[role]


def _residue(a: DGAlgebra, name: str = "k") -> DGModule:
    """k = A/m in degree 0: the unit acts as 1, everything else as 0."""
    f = a.field
    act = f.zeros(a.dim, 1).reshape(1, a.dim, 1)
    for b in a.basis_in(0):
        act[0, b, 0] = a.unit[b]
    return module_from_total(a, [0], f.zeros(1, 1), act, name=name)


def _degree0_algebra(f: Field, mult: np.ndarray, unit: np.ndarray, ideal, exponent, name) -> DGAlgebra:
    n = mult.shape[0]
    cert = LocalityCertificate([f.reduce(np.asarray(v, dtype=object) if f.dtype is object else
                                         np.asarray(v, dtype=np.int64)) for v in ideal], exponent)
    return algebra_from_total(f, [0] * n, f.zeros(n, n), f.reduce(mult), unit, cert, name)


def make_field(spec: Field = DEFAULT_FIELD) -> CatalogEntry:
    f = spec
    mult = f.zeros(1, 1).reshape(1, 1, 1)
    mult[0, 0, 0] = f.scalar(1)
    unit = f.zero_vector(1)
    unit[0] = f.scalar(1)
    a = _degree0_algebra(f, mult, unit, [], 1, "k")
    k = regular_module(a, "k")
    return CatalogEntry("k", a, {"regular": k, "residue": k})


def make_truncated_poly(spec: Field = DEFAULT_FIELD, n: int = 2) -> CatalogEntry:
    """k[x]/(xⁿ) with monomial basis 1, x, …, x^{n-1}."""
    if n < 2:
        raise ValueError("n must be at least 2")
    f = spec
    mult = f.zeros(n * n, n).reshape(n, n, n)
    for i in range(n):
        for j in range(n):
            if i + j < n:
                mult[i + j, i, j] = f.scalar(1)
    unit = f.zero_vector(n)
    unit[0] = f.scalar(1)
    ideal = [[1 if k == i else 0 for k in range(n)] for i in range(1, n)]
    name = f"T{n}"
    a = _degree0_algebra(f, mult, unit, ideal, n, name)
    return CatalogEntry(name, a, {"regular": regular_module(a, name), "residue": _residue(a)})


def make_short_artinian(spec: Field = DEFAULT_FIELD) -> CatalogEntry:
    """S3 = k[x,y]/(x², xy, y²) with basis 1, x, y and its dualizing module ω."""
    f = spec
    mult = f.zeros(9, 3).reshape(3, 3, 3)
    one = f.scalar(1)
    for i in range(3):
        mult[i, 0, i] = one
        mult[i, i, 0] = one
    unit = f.zero_vector(3)
    unit[0] = one
    a = _degree0_algebra(f, mult, unit, [[0, 1, 0], [0, 0, 1]], 2, "S3")
    return CatalogEntry("S3", a, {"regular": regular_module(a, "S3"), "residue": _residue(a),
                                  "dualizing": dual_module(a, "omega")})


def dual_module(a: DGAlgebra, name: str = "omega") -> DGModule:
    """Hom_k(A, k) for a degree-0 algebra with (r·φ)(s) = φ(sr), on the dual basis."""
    f = a.field
    if any(d != 0 for d in a.degrees):
        raise StructureError("dual_module expects an algebra concentrated in degree 0")
    n = a.dim
    # (b·φ_j)(e_l) = φ_j(e_l e_b) = T[j, l, b], so the φ_l-coefficient is T[j, l, b]
    act = np.transpose(a.mult, (1, 2, 0))  # act[l, b, j] = T[j, l, b]
    return module_from_total(a, [0] * n, f.zeros(n, n), act.copy(), name=name)


def make_koszul(base: CatalogEntry, x: np.ndarray | None = None) -> CatalogEntry:
    """K = R ⊕ R·e with |e| = 1, e² = 0 and ∂e = x, for x in the maximal ideal of R."""
    r = base.algebra
    f = r.field
    if any(d != 0 for d in r.degrees):
        raise StructureError("make_koszul needs a degree-0 base algebra")
    n = r.dim
    if x is None:
        x = r.locality.ideal[0]
    x = f.reduce(np.asarray(x, dtype=r.mult.dtype))
    # x must lie in the span of the certified ideal
    span = np.stack(r.locality.ideal, axis=1) if r.locality.ideal else f.zeros(n, 0)
    if f.solve(span, x) is None:
        raise StructureError("x is not in the certified maximal ideal")
    mult = f.zeros(4 * n * n, 2 * n).reshape(2 * n, 2 * n, 2 * n)
    T = r.mult
    mult[:n, :n, :n] = T
    mult[n:, :n, n:] = T          # r·(s e) = (rs) e
    mult[n:, n:, :n] = T          # (r e)·s = (rs) e
    diff = f.zeros(2 * n, 2 * n)
    # ∂(r e) = r x
    diff[:n, n:] = f.reduce(np.einsum("kij,j->ki", T, x))
    unit = f.zero_vector(2 * n)
    unit[:n] = r.unit
    ideal = [np.concatenate([v, f.zero_vector(n)]) for v in r.locality.ideal]
    cert = LocalityCertificate(ideal, r.locality.exponent)
    name = f"K({base.name})"
    a = algebra_from_total(f, [0] * n + [1] * n, diff, mult, unit, cert, name)
    return CatalogEntry(name, a, {"regular": regular_module(a, name)})


def shifted_module(m: DGModule, n: int) -> DGModule:
    """Σⁿ M with a·(Σⁿ x) = (-1)^{n|a|} Σⁿ(a x)."""
    f = m.field
    s = f.sign(n)
    cx = DGComplex(f, {i + n: d for i, d in m.complex.dims.items()},
                   {i + n: f.scale(s, d) for i, d in m.complex.diffs.items()})
    blocks = {(b, j + n): f.scale(f.sign(n * m.algebra.degrees[b]), blk) for (b, j), blk in m.blocks.items()}
    return DGModule(m.algebra, cx, blocks, name=f"Σ^{n}{m.name}")


def random_complex(spec: Field = DEFAULT_FIELD, seed: int = 0, max_dim: int = 4,
                   degrees: tuple[int, int] = (0, 3)) -> DGComplex:
    """A seeded random complex; each ∂_i factors through ker ∂_{i-1}.

    Randomness comes from numpy's PCG64 generator seeded with ``seed``.
    """
    if max_dim > 6 or degrees[1] - degrees[0] > 5:
        raise ValueError("random_complex is limited to max_dim ≤ 6 and range width ≤ 5")
    f = spec
    rng = np.random.default_rng(seed)
    lo, hi = degrees
    bound = f.characteristic if f.characteristic else 7
    dims = {i: int(rng.integers(0, max_dim + 1)) for i in range(lo, hi + 1)}
    diffs = {}
    for i in range(lo + 1, hi + 1):
        src, tgt = dims[i], dims[i - 1]
        if not src or not tgt:
            continue
        ker = f.kernel_basis(diffs[i - 1]) if (i - 1) in diffs else f.eye(tgt)
        if ker.shape[1] == 0:
            continue
        coeff = f.matrix(rng.integers(0, bound, size=(ker.shape[1], src)).tolist(), (ker.shape[1], src))
        d = f.mul(ker, coeff)
        if not f.is_zero(d):
            diffs[i] = d
    return DGComplex(f, dims, diffs)


def standard_catalog(spec: Field = DEFAULT_FIELD) -> dict[str, CatalogEntry]:
    t2 = make_truncated_poly(spec, 2)
    return {"k": make_field(spec), "T2": t2, "T3": make_truncated_poly(spec, 3),
            "S3": make_short_artinian(spec), "K": make_koszul(t2)}
