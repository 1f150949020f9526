"""Tensor products over k of DG algebras and modules, with Koszul signs."""

from __future__ import annotations

import numpy as np

from .complexes import ComplexError, tensor_blocks, tensor_complexes
from .dg import DGAlgebra, DGModule, LocalityCertificate, offsets
from .scalars import Field


class TensorIndex:
    """Coordinates on ⊕_{p+q=n} X_p ⊗ Y_q, blocks p ascending, X-index major."""

    def __init__(self, xdims: dict[int, int], ydims: dict[int, int]):
        self.xdims = {i: d for i, d in xdims.items() if d}
        self.ydims = {i: d for i, d in ydims.items() if d}
        self.blocks = tensor_blocks(self.xdims, self.ydims)
        self.dims = {n: sum(self.xdims[p] * self.ydims[q] for p, q, _ in bl)
                     for n, bl in self.blocks.items()}
        self._off = {(p, q): off for bl in self.blocks.values() for p, q, off in bl}

    def pos(self, p: int, a: int, q: int, b: int) -> int:
        return self._off[(p, q)] + a * self.ydims[q] + b

    def offset(self, p: int, q: int) -> int | None:
        return self._off.get((p, q))

    def decode(self, n: int, k: int) -> tuple[int, int, int, int]:
        for p, q, off in self.blocks[n]:
            w = self.xdims[p] * self.ydims[q]
            if off <= k < off + w:
                a, b = divmod(k - off, self.ydims[q])
                return p, a, q, b
        raise IndexError(k)


def _total_pairs(d1: list[int], d2: list[int]) -> list[tuple[int, int]]:
    """Pairs (i, j) of total basis indices in the tensor's total order."""
    dims1, dims2 = _count(d1), _count(d2)
    o1, o2 = offsets(dims1), offsets(dims2)
    out = []
    for n, bl in sorted(tensor_blocks(dims1, dims2).items()):
        for p, q, _ in bl:
            for a in range(dims1[p]):
                for b in range(dims2[q]):
                    out.append((o1[p] + a, o2[q] + b))
    return out


def _count(degs: list[int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for d in degs:
        out[d] = out.get(d, 0) + 1
    return out


def tensor_algebras(a1: DGAlgebra, a2: DGAlgebra) -> DGAlgebra:
    """A'⊗A'' with (a'⊗a'')(b'⊗b'') = (-1)^{|a''||b'|} a'b' ⊗ a''b''."""
    if a1.field != a2.field:
        raise ComplexError("field mismatch")
    f = a1.field
    pairs = _total_pairs(a1.degrees, a2.degrees)
    idx = {pr: k for k, pr in enumerate(pairs)}
    n = len(pairs)
    i1 = np.array([p[0] for p in pairs])
    i2 = np.array([p[1] for p in pairs])
    deg1 = np.array(a1.degrees)[i1]
    deg2 = np.array(a2.degrees)[i2]
    # sign depends on |a''| (left, second factor) and |b'| (right, first factor)
    sg = np.array([[f.sign(int(deg2[x]) * int(deg1[y])) for y in range(n)] for x in range(n)], dtype=object)
    T1 = a1.mult[np.ix_(i1, i1, i1)]
    T2 = a2.mult[np.ix_(i2, i2, i2)]
    mult = f.reduce(T1 * T2 * sg[None, :, :])
    if f.dtype is not object:
        mult = mult.astype(np.int64)
    # ∂(a'⊗a'') = ∂a'⊗a'' + (-1)^{|a'|} a'⊗∂a''
    D1, D2 = a1.diff_total, a2.diff_total
    eq2 = (i2[:, None] == i2[None, :])
    eq1 = (i1[:, None] == i1[None, :])
    par = np.array([f.sign(int(d)) for d in deg1], dtype=object)
    diff = f.reduce(D1[np.ix_(i1, i1)] * eq2 + D2[np.ix_(i2, i2)] * eq1 * par[None, :])
    if f.dtype is not object:
        diff = diff.astype(np.int64)
    unit = f.zero_vector(n)
    for k in range(n):
        unit[k] = f.scalar(a1.unit[i1[k]] * a2.unit[i2[k]])
    from .dg import algebra_from_total
    degs = [int(a) + int(b) for a, b in zip(deg1, deg2)]
    out = algebra_from_total(f, degs, diff, mult, unit, name=f"({a1.name}⊗{a2.name})")
    out.factors = (a1, a2)
    out.locality = _tensor_locality(a1, a2, idx, n)
    out.pair_index = idx
    return out


def _tensor_locality(a1, a2, idx, n):
    if a1.locality is None or a2.locality is None:
        return None
    f = a1.field

    def vec_pair(u, v):
        w = f.zero_vector(n)
        for i in np.flatnonzero(u != 0):
            for j in np.flatnonzero(v != 0):
                w[idx[(int(i), int(j))]] = f.scalar(u[i] * v[j])
        return w

    b1 = [a1.basis_vector(i) for i in a1.basis_in(0)]
    b2 = [a2.basis_vector(j) for j in a2.basis_in(0)]
    left = [vec_pair(m, y) for m in a1.locality.ideal for y in b2]
    right = [vec_pair(x, m) for x in b1 for m in a2.locality.ideal]
    e = a1.locality.exponent + a2.locality.exponent - 1
    return LocalityCertificate(left + right, e, factor_ideals=[left, right])


def tensor_modules(m1: DGModule, m2: DGModule, algebra: DGAlgebra | None = None) -> DGModule:
    """M'⊗M'' over A'⊗A'' with (a'⊗a'')(n'⊗n'') = (-1)^{|a''||n'|} a'n' ⊗ a''n''."""
    if m1.field != m2.field:
        raise ComplexError("field mismatch")
    f = m1.field
    a = algebra if algebra is not None else tensor_algebras(m1.algebra, m2.algebra)
    cx = tensor_complexes(m1.complex, m2.complex)
    ti = TensorIndex(m1.complex.dims, m2.complex.dims)
    a1, a2 = m1.algebra, m2.algebra
    blocks = {}
    for k, (b1, b2) in enumerate(_total_pairs(a1.degrees, a2.degrees)):
        db1, db2 = a1.degrees[b1], a2.degrees[b2]
        for n, bl in ti.blocks.items():
            t = n + db1 + db2
            if not cx.dim(t):
                continue
            out = None
            for p, q, off in bl:
                s1 = m1.blocks.get((b1, p))
                s2 = m2.blocks.get((b2, q))
                if s1 is None or s2 is None:
                    continue
                o = ti.offset(p + db1, q + db2)
                blk = f.scale(f.sign(db2 * p), f.kron(s1, s2))
                if out is None:
                    out = f.zeros(cx.dim(t), cx.dim(n))
                out[o:o + blk.shape[0], off:off + blk.shape[1]] = blk
            if out is not None:
                blocks[(k, n)] = out
    mod = DGModule(a, cx, blocks, name=f"({m1.name}⊗{m2.name})")
    mod.factors = (m1, m2)
    return mod


def tensor_vector(ti: TensorIndex, n: int, p: int, x: np.ndarray, q: int, y: np.ndarray, field: Field) -> np.ndarray:
    """The vector x ⊗ y (x ∈ X_p, y ∈ Y_q) in degree n = p + q."""
    v = field.zero_vector(ti.dims.get(n, 0))
    o = ti.offset(p, q)
    if o is None:
        return v
    v[o:o + len(x) * len(y)] = field.reduce(np.kron(x, y))
    return v
