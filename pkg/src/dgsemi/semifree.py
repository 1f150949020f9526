"""Semifree DG modules given by a basis ladder, and Hom / tensor out of them.

A ladder is a list of generator degrees plus, for each generator ``e_i``,
its differential ``∂e_i = Σ_j c_ji e_j`` with ``c_ji`` homogeneous algebra
elements and ``e_j`` of strictly lower degree.  Elements of the module are
``Σ b e_i``; the k-basis in degree n is the pairs ``(i, b)`` with
``d_i + |b| = n``, generator-major.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .complexes import ChainMap, DGComplex
from .dg import DGAlgebra, DGModule
from .scalars import Field


@dataclass(eq=False)
class SemifreeModule:
    algebra: DGAlgebra
    gen_degrees: list[int]
    diff: list[dict[int, np.ndarray]] = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        if not self.diff:
            self.diff = [{} for _ in self.gen_degrees]

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def ngens(self) -> int:
        return len(self.gen_degrees)

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.gen_degrees:
            out[d] = out.get(d, 0) + 1
        return out

    # -------------------------------------------------------------- k-structure
    @cached_property
    def _pieces(self) -> dict[int, list[tuple[int, int]]]:
        a = self.algebra
        out: dict[int, list] = {}
        for i, d in enumerate(self.gen_degrees):
            for b in range(a.dim):
                out.setdefault(d + a.degrees[b], []).append((i, b))
        return out

    def piece(self, n: int) -> list[tuple[int, int]]:
        return self._pieces.get(n, [])

    @cached_property
    def _piece_index(self) -> dict[int, dict[tuple[int, int], int]]:
        return {n: {ib: k for k, ib in enumerate(lst)} for n, lst in self._pieces.items()}

    def dim(self, n: int) -> int:
        return len(self._pieces.get(n, ()))

    @cached_property
    def _diff_cache(self) -> dict[int, np.ndarray]:
        return {}

    def d(self, n: int) -> np.ndarray:
        """The differential F_n → F_{n-1}, built on demand."""
        if n not in self._diff_cache:
            self._diff_cache[n] = self._build_d(n)
        return self._diff_cache[n]

    def _build_d(self, n: int) -> np.ndarray:
        a, f = self.algebra, self.field
        lst = self._pieces.get(n, [])
        tgt = self._piece_index.get(n - 1, {})
        m = f.zeros(len(tgt), len(lst))
        if not tgt or not lst:
            return m
        D = a.diff_total
        # entries stay unreduced until the end; int64 has room for small primes
        for col, (i, b) in enumerate(lst):
            # ∂(b e_i) = ∂b e_i + (-1)^{|b|} Σ_j (b c_ji) e_j
            for k in np.flatnonzero(D[:, b] != 0):
                m[tgt[(i, int(k))], col] += D[k, b]
            s = f.sign(a.degrees[b])
            for j, c in self.diff[i].items():
                prod = a.mult[:, b, :].dot(c)
                for k in np.flatnonzero(prod != 0):
                    m[tgt[(j, int(k))], col] += s * prod[k]
        return f.reduce_inplace(m)

    @cached_property
    def complex(self) -> DGComplex:
        dims = {n: len(lst) for n, lst in self._pieces.items()}
        diffs = {n: self.d(n) for n in self._pieces if n - 1 in self._pieces}
        return DGComplex(self.field, dims, {n: m for n, m in diffs.items() if not self.field.is_zero(m)})

    def to_module(self) -> DGModule:
        a, f = self.algebra, self.field
        cx = self.complex
        blocks = {}
        for b in range(a.dim):
            db = a.degrees[b]
            left = a.mult[:, b, :]
            for n, lst in self._pieces.items():
                tgt = self._piece_index.get(n + db)
                if not tgt:
                    continue
                m = f.zeros(len(tgt), len(lst))
                for col, (i, c) in enumerate(lst):
                    for k in np.flatnonzero(left[:, c] != 0):
                        m[tgt[(i, int(k))], col] = left[k, c]
                if not f.is_zero(m):
                    blocks[(b, n)] = m
        return DGModule(a, cx, blocks, name=self.name)

    def element(self, n: int, coeffs: dict[int, np.ndarray]) -> np.ndarray:
        """The vector Σ c_i e_i in degree n from algebra coefficients."""
        f = self.field
        idx = self._piece_index.get(n, {})
        v = f.zero_vector(len(idx))
        for i, c in coeffs.items():
            for b in np.flatnonzero(c != 0):
                v[idx[(i, int(b))]] = c[b]
        return v

    def coefficients(self, n: int, v: np.ndarray) -> dict[int, np.ndarray]:
        """Inverse of :meth:`element`."""
        f = self.field
        out: dict[int, np.ndarray] = {}
        for k in np.flatnonzero(v != 0):
            i, b = self.piece(n)[k]
            out.setdefault(i, f.zero_vector(self.algebra.dim))[b] = v[k]
        return out

    def truncate(self, d: int) -> "SemifreeModule":
        keep = [i for i, g in enumerate(self.gen_degrees) if g <= d]
        new = {old: k for k, old in enumerate(keep)}
        diff = [{new[j]: c for j, c in self.diff[i].items()} for i in keep]
        return SemifreeModule(self.algebra, [self.gen_degrees[i] for i in keep], diff, self.name)


def free_module(a: DGAlgebra, degrees: list[int], name: str = "") -> SemifreeModule:
    """⊕ Σ^{d} A with zero differential on the generators."""
    return SemifreeModule(a, list(degrees), name=name)


def ladder_from_complex(a: DGAlgebra, x: DGComplex, name: str = "") -> SemifreeModule:
    """A k-complex as a semifree module over the field algebra ``a = k``."""
    degs, diff = [], []
    start = {}
    for n in sorted(x.dims):
        start[n] = len(degs)
        degs += [n] * x.dim(n)
    f = a.field
    for n in sorted(x.dims):
        for col in range(x.dim(n)):
            dd = {}
            if n in x.diffs:
                for r in np.flatnonzero(x.d(n)[:, col] != 0):
                    c = f.zero_vector(1)
                    c[0] = x.d(n)[r, col]
                    dd[start[n - 1] + int(r)] = c
            diff.append(dd)
    return SemifreeModule(a, degs, diff, name)


# ---------------------------------------------------------------- Hom out of F


class HomComplex:
    """Hom_A(F, Y) for a ladder F: degree-n basis is (i, y) with y ∈ Y_{n + d_i}."""

    def __init__(self, F: SemifreeModule, Y: DGModule, with_action: bool = True):
        self.F, self.Y = F, Y
        f, a = F.field, F.algebra
        ydeg = sorted(Y.complex.dims)
        pieces: dict[int, list[tuple[int, int]]] = {}
        for i, d in enumerate(F.gen_degrees):
            for yd in ydeg:
                pieces.setdefault(yd - d, []).append((i, yd))
        self.layout = {}
        dims = {}
        for n, lst in pieces.items():
            off, lay = 0, {}
            for i, yd in lst:
                lay[i] = (off, yd)
                off += Y.dim(yd)
            self.layout[n] = lay
            dims[n] = off
        diffs = {}
        # ladder coefficients repeat a lot; act with each (coefficient, degree) once
        acts: dict = {}

        def act(c, yd):
            key = (tuple(c.tolist()), yd)
            if key not in acts:
                acts[key] = (a.vector_degree(c), Y.act_vec(c, yd))
            return acts[key]

        for n, lay in self.layout.items():
            tgt = self.layout.get(n - 1)
            if not tgt:
                continue
            m = f.zeros(dims[n - 1], dims[n])
            sn = f.sign(n)
            for i, (o_t, yd_t) in tgt.items():
                # ∂_Y on the i-component
                if i in lay:
                    o_s, yd_s = lay[i]
                    blk = Y.complex.d(yd_s)
                    if blk.size:
                        m[o_t:o_t + blk.shape[0], o_s:o_s + blk.shape[1]] = blk
                # -(-1)^n f(∂e_i),  f(c e_j) = (-1)^{n|c|} c f(e_j)
                for j, c in F.diff[i].items():
                    if j not in lay:
                        continue
                    o_s, yd_s = lay[j]
                    dc, blk = act(c, yd_s)
                    if blk.size:
                        s = f.scalar(-sn * f.sign(n * dc))
                        m[o_t:o_t + blk.shape[0], o_s:o_s + blk.shape[1]] += s * blk
            m = f.reduce_inplace(m)
            if not f.is_zero(m):
                diffs[n] = m
        self.complex = DGComplex(f, dims, diffs)
        self._module = None
        self.with_action = with_action

    def component(self, n: int, i: int) -> slice:
        """Rows of the i-th generator's component inside degree n."""
        o, yd = self.layout[n][i]
        return slice(o, o + self.Y.dim(yd))

    @property
    def module(self) -> DGModule:
        """Hom as a DG A-module: (a·f)(e_i) = a·f(e_i)."""
        if self._module is None:
            self._module = self._module_from(None)
        return self._module

    def module_from(self, t: int) -> DGModule:
        """Hom as a module, with action blocks only on degrees >= t.

        Enough for truncations at t, and much cheaper when Hom is long below t.
        """
        return self._module_from(t)

    def _module_from(self, lo):
        f, a, Y = self.F.field, self.F.algebra, self.Y
        blocks = {}
        for b in range(a.dim):
            db = a.degrees[b]
            for n, lay in self.layout.items():
                if lo is not None and n < lo:
                    continue
                tgt = self.layout.get(n + db)
                if not tgt:
                    continue
                m = None
                for i, (o_s, yd) in lay.items():
                    if i not in tgt:
                        continue
                    blk = Y.blocks.get((b, yd))
                    if blk is None:
                        continue
                    if m is None:
                        m = f.zeros(self.complex.dim(n + db), self.complex.dim(n))
                    o_t = tgt[i][0]
                    m[o_t:o_t + blk.shape[0], o_s:o_s + blk.shape[1]] = blk
                if m is not None:
                    blocks[(b, n)] = m
        return DGModule(a, self.complex, blocks, name=f"Hom({self.F.name},{Y.name})")


def hom_complex(a: DGAlgebra, src: SemifreeModule, tgt: DGModule) -> HomComplex:
    if not isinstance(src, SemifreeModule):
        raise TypeError("Hom complexes need a source with a declared finite free basis")
    if src.algebra is not a:
        raise ValueError("source ladder lives over a different algebra")
    return HomComplex(src, tgt)


# --------------------------------------------------------------- F ⊗_A Y


class TensorOverLadder:
    """F ⊗_A Y for a ladder F: degree-n basis is (i, y) with y ∈ Y_{n - d_i}."""

    def __init__(self, F: SemifreeModule, Y: DGModule):
        self.F, self.Y = F, Y
        f, a = F.field, F.algebra
        ydeg = sorted(Y.complex.dims)
        pieces: dict[int, list[tuple[int, int]]] = {}
        for i, d in enumerate(F.gen_degrees):
            for yd in ydeg:
                pieces.setdefault(yd + d, []).append((i, yd))
        self.layout = {}
        dims = {}
        for n, lst in pieces.items():
            off, lay = 0, {}
            for i, yd in lst:
                lay[i] = (off, yd)
                off += Y.dim(yd)
            self.layout[n] = lay
            dims[n] = off
        diffs = {}
        acts: dict = {}

        def act(c, yd):
            key = (tuple(c.tolist()), yd)
            if key not in acts:
                acts[key] = (a.vector_degree(c), Y.act_vec(c, yd))
            return acts[key]

        for n, lay in self.layout.items():
            tgt = self.layout.get(n - 1)
            if not tgt:
                continue
            m = f.zeros(dims[n - 1], dims[n])
            for i, (o_s, yd_s) in lay.items():
                di = F.gen_degrees[i]
                # (-1)^{d_i} e_i ⊗ ∂y
                if i in tgt:
                    blk = Y.complex.d(yd_s)
                    if blk.size:
                        o_t = tgt[i][0]
                        m[o_t:o_t + blk.shape[0], o_s:o_s + blk.shape[1]] = f.scale(f.sign(di), blk)
                # c e_j ⊗ y = (-1)^{|c| d_j} e_j ⊗ c y
                for j, c in F.diff[i].items():
                    if j not in tgt:
                        continue
                    dc, blk = act(c, yd_s)
                    if not blk.size:
                        continue
                    o_t = tgt[j][0]
                    s = f.sign(dc * F.gen_degrees[j])
                    m[o_t:o_t + blk.shape[0], o_s:o_s + blk.shape[1]] += s * blk
            m = f.reduce_inplace(m)
            if not f.is_zero(m):
                diffs[n] = m
        self.complex = DGComplex(f, dims, diffs)
        self._module = None

    @property
    def module(self) -> DGModule:
        """a·(e_i ⊗ y) = (-1)^{|a| d_i} e_i ⊗ a y."""
        if self._module is None:
            f, a, Y = self.F.field, self.F.algebra, self.Y
            blocks = {}
            for b in range(a.dim):
                db = a.degrees[b]
                for n, lay in self.layout.items():
                    tgt = self.layout.get(n + db)
                    if not tgt:
                        continue
                    m = None
                    for i, (o_s, yd) in lay.items():
                        blk = Y.blocks.get((b, yd))
                        if blk is None or i not in tgt:
                            continue
                        if m is None:
                            m = f.zeros(self.complex.dim(n + db), self.complex.dim(n))
                        o_t = tgt[i][0]
                        m[o_t:o_t + blk.shape[0], o_s:o_s + blk.shape[1]] = f.scale(
                            f.sign(db * self.F.gen_degrees[i]), blk)
                    if m is not None:
                        blocks[(b, n)] = m
            self._module = DGModule(a, self.complex, blocks, name=f"({self.F.name}⊗{Y.name})")
        return self._module


# ------------------------------------------------------------ tensor of ladders


def tensor_ladders(F1: SemifreeModule, F2: SemifreeModule, algebra: DGAlgebra) -> SemifreeModule:
    """F'⊗_k F'' over A'⊗A'' with generators e'_i⊗e''_j, ordered by total degree."""
    f = F1.field
    idx = algebra.pair_index
    a1, a2 = F1.algebra, F2.algebra
    pairs = sorted(((i, j) for i in range(F1.ngens) for j in range(F2.ngens)),
                   key=lambda ij: (F1.gen_degrees[ij[0]] + F2.gen_degrees[ij[1]], ij))
    gid = {p: k for k, p in enumerate(pairs)}
    one1, one2 = a1.unit, a2.unit
    n = algebra.dim

    def pair_vec(u, v, sign=1):
        w = f.zero_vector(n)
        for x in np.flatnonzero(u != 0):
            for y in np.flatnonzero(v != 0):
                w[idx[(int(x), int(y))]] = f.scalar(sign * u[x] * v[y])
        return w

    degs, diff = [], []
    for i, j in pairs:
        di = F1.gen_degrees[i]
        degs.append(di + F2.gen_degrees[j])
        dd: dict[int, np.ndarray] = {}
        # ∂e'_i ⊗ e''_j = Σ (c'⊗1)(e'_l⊗e''_j)
        for l, c in F1.diff[i].items():
            k = gid[(l, j)]
            dd[k] = f.add(dd.get(k, f.zero_vector(n)), pair_vec(c, one2))
        # (-1)^{d_i} e'_i ⊗ c'' e''_l = (-1)^{d_i + |c''| d_i} (1⊗c'')(e'_i⊗e''_l)
        for l, c in F2.diff[j].items():
            k = gid[(i, l)]
            s = (-1) ** ((di + a2.vector_degree(c) * di) % 2)
            dd[k] = f.add(dd.get(k, f.zero_vector(n)), pair_vec(one1, c, s))
        diff.append({k: v for k, v in dd.items() if not f.is_zero(v)})
    out = SemifreeModule(algebra, degs, diff, name=f"({F1.name}⊗{F2.name})")
    out.pair_gens = gid
    return out


# ------------------------------------------------------------ evaluation maps


def evaluation_map(F: SemifreeModule, M: DGModule, Y=None, inclusion=None) -> ChainMap:
    """ξ: F ⊗_A Hom_A(F, M) → M, e_i ⊗ φ ↦ (-1)^{|φ| d_i} φ(e_i).

    ``Y``/``inclusion`` let the Hom factor be replaced by a subcomplex ``Y``
    with degreewise inclusion matrices into Hom_A(F, M).
    """
    f = F.field
    H = HomComplex(F, M)
    if Y is None:
        Y = H.module
        inclusion = {n: f.eye(H.complex.dim(n)) for n in H.complex.dims}
    T = TensorOverLadder(F, Y)
    comps = {}
    for n, lay in T.layout.items():
        if not M.dim(n):
            continue
        m = f.zeros(M.dim(n), T.complex.dim(n))
        for i, (o_s, yd) in lay.items():
            inc = inclusion.get(yd)
            if inc is None or i not in H.layout.get(yd, {}):
                continue
            rows = inc[H.component(yd, i), :]
            m[:, o_s:o_s + Y.dim(yd)] = f.scale(f.sign(yd * F.gen_degrees[i]), rows)
        comps[n] = m
    return ChainMap(T.complex, M.complex, 0, comps)
