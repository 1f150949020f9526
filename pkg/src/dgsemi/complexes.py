"""Bounded chain complexes of finite-dimensional vector spaces.

Complexes are indexed homologically: ``d(i)`` maps degree ``i`` to ``i - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .scalars import Field
from .verdicts import EVERYWHERE, TrustWindow, VerdictReport, fails, holds


class ComplexError(ValueError):
    pass


@dataclass(eq=False)
class DGComplex:
    field: Field
    dims: dict[int, int]
    diffs: dict[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        self.dims = {i: int(n) for i, n in self.dims.items() if n}
        for i, m in list(self.diffs.items()):
            if m.shape != (self.dim(i - 1), self.dim(i)):
                raise ComplexError(f"differential in degree {i} has shape {m.shape}, expected "
                                   f"{(self.dim(i - 1), self.dim(i))}")
            if m.size == 0:
                del self.diffs[i]

    def dim(self, i: int) -> int:
        return self.dims.get(i, 0)

    def d(self, i: int) -> np.ndarray:
        m = self.diffs.get(i)
        if m is None:
            return self.field.zeros(self.dim(i - 1), self.dim(i))
        return m

    @property
    def lo(self) -> int:
        return min(self.dims) if self.dims else 0

    @property
    def hi(self) -> int:
        return max(self.dims) if self.dims else -1

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    @cached_property
    def _ranks(self) -> dict[int, int]:
        return {}

    def rank_d(self, i: int) -> int:
        if i not in self._ranks:
            self._ranks[i] = self.field.rank(self.d(i)) if i in self.diffs else 0
        return self._ranks[i]

    def homology_dim(self, i: int) -> int:
        return self.dim(i) - self.rank_d(i) - self.rank_d(i + 1)

    def homology_dims(self, degrees=None) -> dict[int, int]:
        degrees = self.degrees if degrees is None else degrees
        return {i: self.homology_dim(i) for i in degrees}

    def __repr__(self) -> str:
        return f"DGComplex({self.field}, dims={dict(sorted(self.dims.items()))})"


def zero_complex(field: Field) -> DGComplex:
    return DGComplex(field, {})


def validate_complex(x: DGComplex) -> VerdictReport:
    for i in range(x.lo + 1, x.hi + 1):
        if i in x.diffs and (i - 1) in x.diffs:
            if not x.field.is_zero(x.field.mul(x.d(i - 1), x.d(i))):
                return fails("validate_complex", f"d∘d != 0 at degree {i}", witnesses={"degree": i})
    return holds("validate_complex")


# --------------------------------------------------------------------- homology


@dataclass
class HomologyDegree:
    """Explicit homology in one degree: cycles, boundaries and class representatives."""

    field: Field
    cycles: np.ndarray
    boundaries: np.ndarray
    reps: np.ndarray

    @property
    def dim(self) -> int:
        return self.reps.shape[1]

    @cached_property
    def _frame(self) -> np.ndarray:
        return np.concatenate([self.boundaries, self.reps], axis=1)

    def coordinates(self, z: np.ndarray) -> np.ndarray:
        """Coordinates of cycle(s) ``z`` in the homology basis."""
        if self.dim == 0:
            return self.field.zeros(0, z.shape[1] if z.ndim > 1 else 1)
        sol = self.field.solve(self._frame, z if z.ndim > 1 else z.reshape(-1, 1))
        if sol is None:
            raise ComplexError("vector is not a cycle")
        return sol[self.boundaries.shape[1]:]


@dataclass
class HomologyData:
    complex: DGComplex
    degrees: dict[int, HomologyDegree]

    def dim(self, i: int) -> int:
        h = self.degrees.get(i)
        return h.dim if h is not None else 0

    def dims(self) -> dict[int, int]:
        return {i: h.dim for i, h in sorted(self.degrees.items())}

    def __getitem__(self, i: int) -> HomologyDegree:
        h = self.degrees.get(i)
        if h is None:
            f = self.complex.field
            n = self.complex.dim(i)
            z = f.zeros(n, 0)
            return HomologyDegree(f, z, z, z)
        return h


def homology_degree(x: DGComplex, i: int) -> HomologyDegree:
    f = x.field
    cycles = f.kernel_basis(x.d(i)) if i in x.diffs else f.eye(x.dim(i))
    bounds = f.image_basis(x.d(i + 1)) if (i + 1) in x.diffs else f.zeros(x.dim(i), 0)
    reps = f.complement_columns(bounds, cycles)
    return HomologyDegree(f, cycles, bounds, reps)


def homology(x: DGComplex, degrees=None) -> HomologyData:
    if not validate_complex(x).holds:
        raise ComplexError("homology of an invalid complex")
    degrees = x.degrees if degrees is None else degrees
    return HomologyData(x, {i: homology_degree(x, i) for i in degrees if x.dim(i)})


# -------------------------------------------------------------------- chain maps


@dataclass(eq=False)
class ChainMap:
    source: DGComplex
    target: DGComplex
    degree: int
    comps: dict[int, np.ndarray]

    def comp(self, i: int) -> np.ndarray:
        m = self.comps.get(i)
        if m is None:
            return self.source.field.zeros(self.target.dim(i + self.degree), self.source.dim(i))
        return m

    def check(self) -> VerdictReport:
        """The chain-map equation d∘f = (-1)^n f∘d in every degree."""
        f = self.source.field
        sgn = f.sign(self.degree)
        lo = min(self.source.lo, self.target.lo - self.degree)
        hi = max(self.source.hi, self.target.hi - self.degree)
        for i in range(lo, hi + 2):
            lhs = f.mul(self.target.d(i + self.degree), self.comp(i))
            rhs = f.scale(sgn, f.mul(self.comp(i - 1), self.source.d(i)))
            if not np.array_equal(lhs, rhs):
                return fails("chain_map", f"chain-map equation fails at degree {i}", witnesses={"degree": i})
        return holds("chain_map")

    def induced(self, i: int, hs: HomologyDegree, ht: HomologyDegree) -> np.ndarray:
        return ht.coordinates(self.source.field.mul(self.comp(i), hs.reps))

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self ∘ other."""
        f = self.source.field
        comps = {i: f.mul(self.comp(i + other.degree), other.comp(i)) for i in other.source.degrees}
        return ChainMap(other.source, self.target, self.degree + other.degree, comps)


def identity_map(x: DGComplex) -> ChainMap:
    return ChainMap(x, x, 0, {i: x.field.eye(x.dim(i)) for i in x.degrees if x.dim(i)})


def map_homology_bijective(f: ChainMap, i: int) -> tuple[bool, int, int]:
    """Whether H_i(f) is bijective, plus the two homology dimensions."""
    s, t = f.source, f.target
    ds, dt = s.homology_dim(i), t.homology_dim(i + f.degree)
    if ds != dt:
        return False, ds, dt
    if ds == 0:
        return True, 0, 0
    hs, ht = homology_degree(s, i), homology_degree(t, i + f.degree)
    m = f.induced(i, hs, ht)
    return s.field.rank(m) == ds, ds, dt


def is_quasi_iso(f: ChainMap, window: TrustWindow = EVERYWHERE) -> VerdictReport:
    if not f.check().holds:
        raise ComplexError("is_quasi_iso needs a chain map")
    lo = min(f.source.lo, f.target.lo - f.degree)
    hi = max(f.source.hi, f.target.hi - f.degree)
    table = {}
    for i in window.clip(lo, hi):
        ok, ds, dt = map_homology_bijective(f, i)
        table[i] = [ds, dt]
        if not ok:
            return fails("is_quasi_iso", f"H_{i} not bijective", window=window,
                         witnesses={"homology_dims": table, "degree": i})
    return holds("is_quasi_iso", window=window, witnesses={"homology_dims": table})


# -------------------------------------------------------------- shifts, truncation


def shift(x: DGComplex, n: int) -> DGComplex:
    """(Σⁿx)_i = x_{i-n} with differential (-1)ⁿ∂."""
    f = x.field
    s = f.sign(n)
    return DGComplex(f, {i + n: d for i, d in x.dims.items()},
                     {i + n: f.scale(s, m) for i, m in x.diffs.items()})


def quotient_projection(field: Field, sub: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Projection onto a coordinate complement of span(sub) and its section.

    Returns ``(proj, lift)`` with ``proj @ lift == I`` and ``proj @ sub == 0``.
    """
    red, pivots = field.rref(sub.T.copy()) if sub.shape[1] else (field.zeros(0, n), [])
    rest = [j for j in range(n) if j not in set(pivots)]
    # v - red^T v[pivots] kills the pivot coordinates
    reducer = field.sub(field.eye(n), field.mul(red.T.copy(), field.eye(n)[pivots, :]))
    proj = reducer[rest, :]
    lift = field.eye(n)[:, rest]
    return proj, lift


def soft_truncate_below(x: DGComplex, n: int) -> tuple[DGComplex, ChainMap]:
    """Keep degrees > n, replace degree n by its cycles, drop the rest."""
    f = x.field
    z = f.kernel_basis(x.d(n)) if x.dim(n) else f.zeros(0, 0)
    dims = {i: d for i, d in x.dims.items() if i > n}
    dims[n] = z.shape[1]
    diffs = {i: m for i, m in x.diffs.items() if i > n + 1}
    if x.dim(n + 1) and z.shape[1]:
        coords = f.solve(z, x.d(n + 1))
        diffs[n + 1] = coords
    t = DGComplex(f, dims, diffs)
    comps = {i: f.eye(x.dim(i)) for i in x.dims if i > n}
    if z.shape[1]:
        comps[n] = z
    return t, ChainMap(t, x, 0, comps)


def soft_truncate_above(x: DGComplex, n: int) -> tuple[DGComplex, ChainMap]:
    """Keep degrees < n, replace degree n by x_n / boundaries, drop the rest."""
    f = x.field
    bounds = f.image_basis(x.d(n + 1)) if (n + 1) in x.diffs else f.zeros(x.dim(n), 0)
    proj, lift = quotient_projection(f, bounds, x.dim(n))
    dims = {i: d for i, d in x.dims.items() if i < n}
    dims[n] = proj.shape[0]
    diffs = {i: m for i, m in x.diffs.items() if i < n}
    if x.dim(n) and x.dim(n - 1):
        diffs[n] = f.mul(x.d(n), lift)
    t = DGComplex(f, dims, diffs)
    comps = {i: f.eye(x.dim(i)) for i in x.dims if i < n}
    if proj.shape[0]:
        comps[n] = proj
    return t, ChainMap(x, t, 0, comps)


# ------------------------------------------------------------------ tensor products


def tensor_blocks(xdims: dict[int, int], ydims: dict[int, int]) -> dict[int, list[tuple[int, int, int]]]:
    """Per total degree: ``(p, q, offset)`` blocks of x_p ⊗ y_q, p ascending."""
    out: dict[int, list] = {}
    for p in sorted(xdims):
        for q in sorted(ydims):
            out.setdefault(p + q, []).append((p, q))
    res = {}
    for i, pairs in out.items():
        off = 0
        blocks = []
        for p, q in sorted(pairs):
            blocks.append((p, q, off))
            off += xdims[p] * ydims[q]
        res[i] = blocks
    return res


def tensor_complexes(x: DGComplex, y: DGComplex) -> DGComplex:
    """x ⊗ y with ∂(a⊗b) = ∂a⊗b + (-1)^|a| a⊗∂b; basis x-index major."""
    if x.field != y.field:
        raise ComplexError("field mismatch")
    f = x.field
    blocks = tensor_blocks(x.dims, y.dims)
    dims = {i: sum(x.dim(p) * y.dim(q) for p, q, _ in bl) for i, bl in blocks.items()}
    diffs = {}
    for i, bl in blocks.items():
        if not dims.get(i - 1):
            continue
        tgt = {(p, q): off for p, q, off in blocks.get(i - 1, [])}
        m = f.zeros(dims[i - 1], dims[i])
        for p, q, off in bl:
            w = x.dim(p) * y.dim(q)
            if (p - 1, q) in tgt and p in x.diffs:
                o = tgt[(p - 1, q)]
                m[o:o + x.dim(p - 1) * y.dim(q), off:off + w] = f.kron(x.d(p), f.eye(y.dim(q)))
            if (p, q - 1) in tgt and q in y.diffs:
                o = tgt[(p, q - 1)]
                m[o:o + x.dim(p) * y.dim(q - 1), off:off + w] = f.scale(f.sign(p), f.kron(f.eye(x.dim(p)), y.d(q)))
        if not f.is_zero(m):
            diffs[i] = m
    return DGComplex(f, dims, diffs)


def tensor_chain_maps(a: ChainMap, b: ChainMap) -> ChainMap:
    """(a⊗b)(x⊗y) = (-1)^{|b||x|} a(x)⊗b(y)."""
    f = a.source.field
    src = tensor_complexes(a.source, b.source)
    tgt = tensor_complexes(a.target, b.target)
    sb = tensor_blocks(a.source.dims, b.source.dims)
    tb = tensor_blocks(a.target.dims, b.target.dims)
    n = a.degree + b.degree
    comps = {}
    for i, bl in sb.items():
        tgt_off = {(p, q): off for p, q, off in tb.get(i + n, [])}
        m = f.zeros(tgt.dim(i + n), src.dim(i))
        for p, q, off in bl:
            key = (p + a.degree, q + b.degree)
            if key not in tgt_off:
                continue
            o = tgt_off[key]
            blk = f.scale(f.sign(b.degree * p), f.kron(a.comp(p), b.comp(q)))
            m[o:o + blk.shape[0], off:off + blk.shape[1]] = blk
        comps[i] = m
    return ChainMap(src, tgt, n, comps)


def kunneth_compare(x: DGComplex, y: DGComplex) -> VerdictReport:
    """Build ⊕ H_p(x)⊗H_q(y) → H_i(x⊗y) on homology bases; check bijectivity."""
    f = x.field
    t = tensor_complexes(x, y)
    hx, hy = homology(x), homology(y)
    blocks = tensor_blocks(x.dims, y.dims)
    table = {}
    for i in sorted(blocks):
        ht = homology_degree(t, i)
        cols = []
        expected = 0
        for p, q, off in blocks[i]:
            rx, ry = hx[p].reps, hy[q].reps
            if rx.shape[1] == 0 or ry.shape[1] == 0:
                continue
            expected += rx.shape[1] * ry.shape[1]
            emb = f.zeros(t.dim(i), rx.shape[1] * ry.shape[1])
            emb[off:off + x.dim(p) * y.dim(q), :] = f.kron(rx, ry)
            cols.append(emb)
        table[i] = [expected, ht.dim]
        if expected != ht.dim:
            return fails("kunneth_compare", f"dimension mismatch in degree {i}", witnesses={"dims": table})
        if expected:
            m = ht.coordinates(np.concatenate(cols, axis=1))
            if f.rank(m) != expected:
                return fails("kunneth_compare", f"Künneth map not bijective in degree {i}",
                             witnesses={"dims": table})
    return holds("kunneth_compare", witnesses={"dims": table})
