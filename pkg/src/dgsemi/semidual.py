"""Semidualizing, Bass, Auslander and reflexivity verdicts on certified windows.

Each predicate is reduced to a homology-level map known on a window of
degrees (an :class:`HMap`).  Two routes produce it:

* direct: resolve over the algebra itself and build the chain map;
* factored: for modules M'⊗M'' over A'⊗A'', compute the factor maps and
  combine them by Künneth, using that η̃ and γ̃ are isomorphisms.

``strategy="auto"`` takes the factored route when every input is a tensor
of factor modules over the tensor algebra, and the direct route otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import time
from itertools import product

import numpy as np

from .complexes import ChainMap, DGComplex, homology_degree, is_quasi_iso, quotient_projection
from .dg import (DGAlgebra, DGModule, StructureError, generator_counts, homological_bounds, validate_dg_algebra,
                 validate_dg_module, validate_locality)
from .resolutions import (SemifreeResolution, chain_maps_space, hom_vector_to_map, poincare_coefficients,
                          semifree_resolution, window_hom, window_tensor)
from .semifree import HomComplex, SemifreeModule, TensorOverLadder, evaluation_map, tensor_ladders
from .tensor import tensor_algebras, tensor_modules
from .verdicts import TrustWindow, VerdictReport, fails, holds, inconclusive

# degrees of certified vanishing required beyond the homology of the inputs
DEPTH = 2
# consecutive vanishing degrees needed at a window edge to treat homology as bounded
MARGIN = 2


# --------------------------------------------------------------- windowed maps


@dataclass
class HMap:
    """A map on homology known on ``window``.

    ``src``/``tgt`` are homology dimensions for window degrees, ``mats`` the
    induced matrices where both are nonzero.  ``support`` bounds the degrees
    where either side can be nonzero at all (``None`` for unknown).
    """

    window: TrustWindow
    src: dict[int, int]
    tgt: dict[int, int]
    mats: dict[int, np.ndarray]
    support: tuple[int | None, int | None] = (None, None)
    field: object = None

    def bijective(self, n: int) -> bool:
        s, t = self.src.get(n, 0), self.tgt.get(n, 0)
        if s != t:
            return False
        if s == 0:
            return True
        return self.field.rank(self.mats[n]) == s

    def violations(self) -> list[int]:
        return [n for n in sorted(set(self.src) | set(self.tgt)) if not self.bijective(n)]

    def table(self) -> dict[int, list[int]]:
        return {n: [self.src.get(n, 0), self.tgt.get(n, 0)] for n in sorted(set(self.src) | set(self.tgt))}

    def nonzero(self) -> list[int]:
        return [n for n in sorted(set(self.src) | set(self.tgt)) if self.src.get(n) or self.tgt.get(n)]

    def unknown(self) -> list[tuple[int | None, int | None]]:
        """Intervals outside the window where homology may be nonzero."""
        lo, hi = self.support
        out = []
        if self.window.lo is not None and (lo is None or lo < self.window.lo):
            out.append((lo, self.window.lo - 1))
        if self.window.hi is not None and (hi is None or hi > self.window.hi):
            out.append((self.window.hi + 1, hi))
        return out


def hmap_of(phi: ChainMap, window: TrustWindow, support=None) -> HMap:
    """Homology of a chain map on the window (clipped to where either side lives)."""
    f = phi.source.field
    lo = min(phi.source.lo, phi.target.lo - phi.degree)
    hi = max(phi.source.hi, phi.target.hi - phi.degree)
    src, tgt, mats = {}, {}, {}
    for n in window.clip(lo, hi):
        s = phi.source.homology_dim(n)
        t = phi.target.homology_dim(n + phi.degree)
        if s:
            src[n] = s
        if t:
            tgt[n] = t
        if s and t:
            mats[n] = phi.induced(n, homology_degree(phi.source, n), homology_degree(phi.target, n + phi.degree))
    if support is None:
        support = (lo, hi)
    return HMap(window, src, tgt, mats, support, f)


def _isum(a, b):
    lo = None if a[0] is None or b[0] is None else a[0] + b[0]
    hi = None if a[1] is None or b[1] is None else a[1] + b[1]
    return lo, hi


def tensor_hmaps(h1: HMap, h2: HMap, field) -> HMap:
    """The Künneth tensor of two windowed homology maps, on the largest certified window."""
    nz1 = [(p, p) for p in h1.nonzero()]
    nz2 = [(q, q) for q in h2.nonzero()]
    u1, u2 = h1.unknown(), h2.unknown()
    bad = [_isum(a, b) for a in u1 for b in nz2 + u2] + [_isum(a, b) for a in nz1 for b in u2]
    sums = sorted({p + q for p in h1.nonzero() for q in h2.nonzero()})
    lows = [bhi for blo, bhi in bad if blo is None and bhi is not None]
    highs = [blo for blo, bhi in bad if bhi is None and blo is not None]
    if any(blo is None and bhi is None for blo, bhi in bad):
        return HMap(TrustWindow(1, 0), {}, {}, {}, _isum(h1.support, h2.support), field)
    lo = max(lows) + 1 if lows else None
    hi = min(highs) - 1 if highs else None
    # bounded bad intervals trim the window from the nearer side
    for blo, bhi in bad:
        if blo is None or bhi is None or (lo is not None and bhi < lo) or (hi is not None and blo > hi):
            continue
        mid_w = ((lo if lo is not None else blo - 10 ** 6) + (hi if hi is not None else bhi + 10 ** 6)) / 2
        if (blo + bhi) / 2 < mid_w:
            lo = bhi + 1
        else:
            hi = blo - 1
    window = TrustWindow(lo, hi)
    src, tgt, mats = {}, {}, {}
    for n in sums:
        if n not in window:
            continue
        pairs = [(p, n - p) for p in h1.nonzero() if (n - p) in h2.nonzero()]
        s = sum(h1.src.get(p, 0) * h2.src.get(q, 0) for p, q in pairs)
        t = sum(h1.tgt.get(p, 0) * h2.tgt.get(q, 0) for p, q in pairs)
        if s:
            src[n] = s
        if t:
            tgt[n] = t
        if s and t:
            m = field.zeros(t, s)
            ro = co = 0
            for p, q in pairs:
                s1, s2 = h1.src.get(p, 0), h2.src.get(q, 0)
                t1, t2 = h1.tgt.get(p, 0), h2.tgt.get(q, 0)
                if s1 * s2 and t1 * t2:
                    # each block is ± the Kronecker product; the sign does not affect rank
                    m[ro:ro + t1 * t2, co:co + s1 * s2] = field.kron(h1.mats[p], h2.mats[q])
                ro += t1 * t2
                co += s1 * s2
            mats[n] = m
    return HMap(window, src, tgt, mats, _isum(h1.support, h2.support), field)


def _verdict(check: str, hm: HMap, need: tuple[int | None, int | None], params: dict,
             extra: dict | None = None) -> VerdictReport:
    """fails on any in-window violation; holds when the window covers ``need``."""
    wit = {"homology_dims": hm.table()}
    if extra:
        wit.update(extra)
    bad = hm.violations()
    if hm.window.is_empty:
        return inconclusive(check, "empty certified window", window=hm.window, witnesses=wit, parameters=params)
    if bad:
        wit["failing_degrees"] = bad
        return fails(check, f"homology map not bijective in degree {bad[0]}", window=hm.window,
                     witnesses=wit, parameters=params)
    lo, hi = need
    w = hm.window
    if (lo is not None and w.lo is not None and w.lo > lo) or (hi is not None and w.hi is not None and w.hi < hi):
        return inconclusive(check, f"window {w} does not cover required degrees [{lo}, {hi}]",
                            window=w, witnesses=wit, parameters=params)
    if (lo is None and w.lo is not None) or (hi is None and w.hi is not None):
        return inconclusive(check, f"window {w} is bounded where the check needs all degrees",
                            window=w, witnesses=wit, parameters=params)
    return holds(check, window=w, witnesses=wit, parameters=params)


# ------------------------------------------------------------------ preliminaries


def _hbounds(m: DGModule):
    b = homological_bounds(m)
    if not b.homology_dims:
        return None
    return int(b.inf), int(b.sup)


def _check_inputs(a: DGAlgebra, *mods: DGModule):
    def check_algebra():
        v = validate_dg_algebra(a)
        if not v.holds:
            return f"algebra fails validation: {v.reason}"
        if not validate_locality(a).holds:
            return "algebra needs a valid locality certificate"
        return None

    err = _cached(("valid", id(a)), lambda: ((a,), check_algebra()))
    if err:
        raise StructureError(err)
    for m in mods:
        if m.algebra is not a:
            raise StructureError(f"module {m.name} lives over a different algebra")
        v = _cached(("valid", id(m)), lambda: ((m,), validate_dg_module(m)))
        if not v.holds:
            raise StructureError(f"module {m.name} fails validation: {v.reason}")


def _is_factored(a: DGAlgebra, *mods: DGModule) -> bool:
    if len(getattr(a, "factors", ())) != 2:
        return False
    return all(len(getattr(m, "factors", ())) == 2 and m.algebra is a
               and m.factors[0].algebra is a.factors[0] and m.factors[1].algebra is a.factors[1]
               for m in mods)


def _route(strategy: str, a: DGAlgebra, *mods: DGModule) -> str:
    if strategy == "auto":
        return "factored" if _is_factored(a, *mods) else "direct"
    if strategy == "factored" and not _is_factored(a, *mods):
        raise ValueError("factored route needs tensor modules over a tensor algebra")
    return strategy


_CACHE: dict = {}


def _cached(key, fn):
    if key not in _CACHE:
        _CACHE[key] = fn()
    return _CACHE[key][1]


def clear_cache():
    _CACHE.clear()


def _resolution(a: DGAlgebra, m: DGModule, d: int) -> SemifreeResolution:
    return _cached(("res", id(a), id(m), d), lambda: ((a, m), semifree_resolution(a, m, d)))


# -------------------------------------------------------------------- homothety


def homothety(a: DGAlgebra, res: SemifreeResolution) -> tuple[ChainMap, HomComplex]:
    """χ: A → Hom_A(F, C), a ↦ (e_i ↦ a·ε(e_i))."""
    f = a.field
    F, C = res.ladder, res.target
    H = HomComplex(F, C)
    comps = {}
    for n in a.complex.dims:
        if not H.complex.dim(n):
            continue
        m = f.zeros(H.complex.dim(n), a.complex.dim(n))
        for col, b in enumerate(a.basis_in(n)):
            for i, (o, yd) in H.layout[n].items():
                img = f.mul(C.act(b, F.gen_degrees[i]), res.augment[i].reshape(-1, 1))[:, 0]
                m[o:o + len(img), col] = img
        comps[n] = m
    chi = ChainMap(a.complex, H.complex, 0, comps)
    return chi, H


def _homothety_hmap(a: DGAlgebra, c: DGModule, d: int) -> HMap:
    def build():
        res = _resolution(a, c, d)
        chi, H = homothety(a, res)
        if not chi.check().holds:
            raise AssertionError("homothety is not a chain map")
        if res.ladder.ngens == 0:
            w = TrustWindow()
        else:
            w = window_hom(d, c.complex.hi)
        lo = a.complex.lo if not H.complex.dims else min(a.complex.lo, H.complex.lo)
        hi = max(a.complex.hi, H.complex.hi)
        # Hom lives in degrees ≤ sup C - inf F for every truncation
        return ((a, c), hmap_of(chi, w, (None if w.lo is not None else lo, hi)))
    return _cached(("chi", id(a), id(c), d), build)


def is_semidualizing(a: DGAlgebra, c: DGModule, d: int, strategy: str = "auto",
                     validate: bool = True) -> VerdictReport:
    """Homothety A → RHom_A(C, C) a quasi-isomorphism, certified on window_hom(d, sup C)."""
    if validate:
        _check_inputs(a, c)
    route = _route(strategy, a, c)
    params = {"D": d, "algebra": a.name, "module": c.name, "route": route}
    if route == "factored":
        a1, a2 = a.factors
        c1, c2 = c.factors
        hm = tensor_hmaps(_homothety_hmap(a1, c1, d), _homothety_hmap(a2, c2, d), a.field)
    else:
        hm = _homothety_hmap(a, c, d)
    ha = _hbounds_algebra(a)
    need = (ha[0] - DEPTH, None) if ha else (None, None)
    return _verdict("semidualizing", hm, need, params)


def _hbounds_algebra(a: DGAlgebra):
    dims = {i: n for i, n in a.complex.homology_dims().items() if n}
    return (min(dims), max(dims)) if dims else None


# ---------------------------------------------------------------- module truncations


@dataclass(eq=False)
class Truncation:
    module: DGModule
    inclusion: dict[int, np.ndarray]   # for truncation below: τX → X
    projection: dict[int, np.ndarray]  # for truncation above: X → τX


def truncate_module_below(x: DGModule, t: int) -> Truncation:
    """The submodule X_{>t} ⊕ Z_t."""
    f = x.field
    cx = x.complex
    z = f.kernel_basis(cx.d(t)) if cx.dim(t) else f.zeros(0, 0)
    dims = {i: n for i, n in cx.dims.items() if i > t}
    if z.shape[1]:
        dims[t] = z.shape[1]
    diffs = {i: m for i, m in cx.diffs.items() if i > t + 1}
    if z.shape[1] and cx.dim(t + 1) and (t + 1) in cx.diffs:
        diffs[t + 1] = f.solve(z, cx.d(t + 1))
    new = DGComplex(f, dims, diffs)
    a = x.algebra
    blocks = {}
    for (b, j), blk in x.blocks.items():
        db = a.degrees[b]
        if j > t:
            blocks[(b, j)] = blk
        elif j == t and z.shape[1]:
            img = f.mul(blk, z)
            if db == 0:
                img = f.solve(z, img)
            if not f.is_zero(img):
                blocks[(b, j)] = img
    mod = DGModule(a, new, blocks, name=f"τ≥{t}{x.name}")
    inc = {i: f.eye(cx.dim(i)) for i in cx.dims if i > t}
    if z.shape[1]:
        inc[t] = z
    return Truncation(mod, inc, {})


def truncate_module_above(x: DGModule, s: int) -> Truncation:
    """The quotient X_{<s} ⊕ X_s / B_s."""
    f = x.field
    cx = x.complex
    bounds = f.image_basis(cx.d(s + 1)) if (s + 1) in cx.diffs else f.zeros(cx.dim(s), 0)
    proj, lift = quotient_projection(f, bounds, cx.dim(s))
    dims = {i: n for i, n in cx.dims.items() if i < s}
    dims[s] = proj.shape[0]
    diffs = {i: m for i, m in cx.diffs.items() if i < s}
    if proj.shape[0] and cx.dim(s - 1) and s in cx.diffs:
        diffs[s] = f.mul(cx.d(s), lift)
    new = DGComplex(f, dims, diffs)
    a = x.algebra
    blocks = {}
    for (b, j), blk in x.blocks.items():
        tj = j + a.degrees[b]
        if j > s or tj > s:
            continue
        m = blk
        if tj == s:
            m = f.mul(proj, m)
        if j == s:
            m = f.mul(m, lift)
        if m.size and not f.is_zero(m):
            blocks[(b, j)] = m
    mod = DGModule(a, new, blocks, name=f"τ≤{s}{x.name}")
    pr = {i: f.eye(cx.dim(i)) for i in cx.dims if i < s}
    if proj.shape[0]:
        pr[s] = proj
    return Truncation(mod, {}, pr)


def _bounded_bottom(cx: DGComplex, w: TrustWindow) -> int | None:
    """Cut degree t when H vanishes on the first MARGIN degrees of a [lo, ∞) window."""
    if not cx.dims:
        return w.lo
    lo = w.lo if w.lo is not None else cx.lo
    if cx.lo > lo + MARGIN - 1:
        return max(lo, cx.lo)
    if not all(cx.homology_dim(n) == 0 for n in range(lo, lo + MARGIN)):
        return None
    # cut as high as the homology allows: the truncation stays a quasi-isomorphism
    t = lo + MARGIN
    while t <= cx.hi and cx.homology_dim(t) == 0:
        t += 1
    return t


def _bounded_top(cx: DGComplex, w: TrustWindow) -> int | None:
    """Cut degree s when H vanishes on the last MARGIN degrees of a (-∞, hi] window."""
    if not cx.dims:
        return w.hi
    hi = w.hi if w.hi is not None else cx.hi
    if cx.hi < hi - MARGIN + 1:
        return min(hi, cx.hi)
    if not all(cx.homology_dim(n) == 0 for n in range(hi - MARGIN + 1, hi + 1)):
        return None
    s = hi - MARGIN
    while s >= cx.lo and cx.homology_dim(s) == 0:
        s -= 1
    return s


# ------------------------------------------------------------------------ Bass


@dataclass
class _Partial:
    """A factor computation: an HMap, or the reason it could not be certified."""

    hmap: HMap | None
    reason: str = ""
    witnesses: dict = field(default_factory=dict)
    # the inner complex (RHom(C, M) or C ⊗^L M) is known to have unbounded homology
    unbounded: bool = False
    # the inner complex has some certified nonzero homology
    inner_nonzero: bool = False


def _unbounded_certificate(a: DGAlgebra, c: DGModule, m: DGModule, res: SemifreeResolution) -> dict | None:
    """Certify that RHom_A(C, M) and C ⊗^L_A M have unbounded homology.

    Applies when A is a finite-dimensional local algebra in degree 0, H(C) is a
    single module and H(M) is a single k-vector space killed by the maximal
    ideal.  Both complexes then have homology k^{β_n(C)} up to shift.  Such an
    A has depth 0, so a module of finite projective dimension is free
    (Auslander-Buchsbaum); a first syzygy generator therefore forces
    β_n(C) ≠ 0 for every n.
    """
    if any(x != 0 for x in a.degrees) or not res.minimal:
        return None
    hc = [n for n, v in c.complex.homology_dims().items() if v]
    hm = {n: v for n, v in m.complex.homology_dims().items() if v}
    if len(hc) != 1 or len(hm) != 1:
        return None
    (sm, r), = hm.items()
    if res.bound < hc[0] + 1 or not res.ladder.counts().get(hc[0] + 1):
        return None
    if generator_counts(m, [sm]).get(sm) != r:
        return None
    return {"rule": "depth 0: finite projective dimension forces freeness",
            "betti_numbers": poincare_coefficients(res), "copies_of_k": r, "degree": sm}


def _bass_partial(a: DGAlgebra, c: DGModule, m: DGModule, d: int) -> _Partial:
    def build():
        res = _resolution(a, c, d)
        F = res.ladder
        X = HomComplex(F, m)
        wx = window_hom(d, m.complex.hi) if F.ngens else TrustWindow()
        wit = {"hom_window": wx.as_list(),
               "hom_homology": {n: X.complex.homology_dim(n) for n in wx.clip(X.complex.lo, X.complex.hi)}}
        nonzero = any(wit["hom_homology"].values())
        t = _bounded_bottom(X.complex, wx)
        if t is None:
            cert = _unbounded_certificate(a, c, m, res)
            if cert is not None:
                wit["unbounded_certificate"] = cert
                return ((a, c, m), _Partial(None, "RHom(C, M) has unbounded homology", wit, True, True))
            return ((a, c, m), _Partial(None, "RHom(C, M) not certified bounded: homology near the window "
                                              f"bottom {wx.lo}", wit, inner_nonzero=nonzero))
        tr = truncate_module_below(X.module_from(t), t)
        xi = evaluation_map(F, m, tr.module, tr.inclusion)
        if not xi.check().holds:
            raise AssertionError("evaluation is not a chain map")
        inf_t = tr.module.complex.lo if tr.module.complex.dims else 0
        w = window_tensor(d, inf_t) if F.ngens else TrustWindow()
        wit["truncated_at"] = t
        lo = min(xi.source.lo, m.complex.lo)
        return ((a, c, m), _Partial(hmap_of(xi, w, (lo, None)), "", wit, inner_nonzero=nonzero))
    return _cached(("bass", id(a), id(c), id(m), d), build)


def _combine(kind: str, a: DGAlgebra, parts: tuple[_Partial, _Partial]) -> _Partial:
    p1, p2 = parts
    wit = {"factors": [p1.witnesses, p2.witnesses]}
    nonzero = p1.inner_nonzero and p2.inner_nonzero
    if (p1.unbounded and p2.inner_nonzero) or (p2.unbounded and p1.inner_nonzero):
        # Künneth: unbounded homology tensored with nonzero homology stays unbounded
        return _Partial(None, "inner complex of a factor is unbounded and the other is nonzero", wit, True, True)
    if p1.hmap is None or p2.hmap is None:
        reason = "; ".join(p.reason for p in parts if p.hmap is None)
        return _Partial(None, f"factor not certified: {reason}", wit, inner_nonzero=nonzero)
    return _Partial(tensor_hmaps(p1.hmap, p2.hmap, a.field), "", wit, inner_nonzero=nonzero)


def bass_membership(a: DGAlgebra, c: DGModule, m: DGModule, d: int, strategy: str = "auto",
                    validate: bool = True) -> VerdictReport:
    """ξ: C ⊗^L RHom(C, M) → M a quasi-isomorphism, with RHom(C, M) bounded."""
    if validate:
        _check_inputs(a, c, m)
    route = _route(strategy, a, c, m)
    params = {"D": d, "algebra": a.name, "C": c.name, "M": m.name, "route": route}
    if route == "factored":
        p = _combine("bass", a, tuple(_bass_partial(a.factors[k], c.factors[k], m.factors[k], d)
                                      for k in range(2)))
    else:
        p = _bass_partial(a, c, m, d)
    hb = _hbounds(m)
    if hb is None and _m_is_zero(m):
        return holds("bass", parameters=params, reason="M is acyclic")
    if p.unbounded:
        return fails("bass", p.reason, witnesses=p.witnesses, parameters=params)
    if p.hmap is None:
        return inconclusive("bass", p.reason, witnesses=p.witnesses, parameters=params)
    need = (None, hb[1] + 1)
    return _verdict("bass", p.hmap, need, params, p.witnesses)


def _m_is_zero(m: DGModule) -> bool:
    return all(v == 0 for v in m.complex.homology_dims().values())


# ------------------------------------------------------------------- Auslander


def coevaluation_map(F: SemifreeModule, m: DGModule, T: TensorOverLadder, tr: Truncation) -> tuple[ChainMap, HomComplex]:
    """γ: M → Hom_A(F, τ(F⊗M)), m ↦ (e_i ↦ (-1)^{|m| d_i} [e_i ⊗ m])."""
    f = m.field
    tgt = tr.module
    H = HomComplex(F, tgt)
    comps = {}
    for n in m.complex.dims:
        if not H.complex.dim(n):
            continue
        mat = f.zeros(H.complex.dim(n), m.dim(n))
        for i, (o, yd) in H.layout[n].items():
            # yd = n + d_i is the degree of e_i ⊗ m in F ⊗ M
            lay = T.layout.get(yd, {})
            if i not in lay:
                continue
            ot, ym = lay[i]
            s = f.sign(n * F.gen_degrees[i])
            block = f.zeros(T.complex.dim(yd), m.dim(n))
            block[ot:ot + m.dim(n), :] = f.scale(s, f.eye(m.dim(n)))
            pr = tr.projection.get(yd)
            if pr is None:
                continue
            mat[o:o + tgt.dim(yd), :] = f.mul(pr, block)
        comps[n] = mat
    return ChainMap(m.complex, H.complex, 0, comps), H


def _auslander_partial(a: DGAlgebra, c: DGModule, m: DGModule, d: int) -> _Partial:
    def build():
        res = _resolution(a, c, d)
        F = res.ladder
        T = TensorOverLadder(F, m)
        inf_m = m.complex.lo if m.complex.dims else 0
        wt = window_tensor(d, inf_m) if F.ngens else TrustWindow()
        wit = {"tensor_window": wt.as_list(),
               "tensor_homology": {n: T.complex.homology_dim(n) for n in wt.clip(T.complex.lo, T.complex.hi)}}
        nonzero = any(wit["tensor_homology"].values())
        s = _bounded_top(T.complex, wt)
        if s is None:
            cert = _unbounded_certificate(a, c, m, res)
            if cert is not None:
                wit["unbounded_certificate"] = cert
                return ((a, c, m), _Partial(None, "C ⊗^L M has unbounded homology", wit, True, True))
            return ((a, c, m), _Partial(None, "C ⊗^L M not certified bounded: homology near the window "
                                              f"top {wt.hi}", wit, inner_nonzero=nonzero))
        tr = truncate_module_above(T.module, s)
        gamma, H = coevaluation_map(F, m, T, tr)
        if not gamma.check().holds:
            raise AssertionError("γ is not a chain map")
        w = window_hom(d, s) if F.ngens else TrustWindow()
        wit["truncated_at"] = s
        hi = max(m.complex.hi, H.complex.hi) if H.complex.dims else m.complex.hi
        return ((a, c, m), _Partial(hmap_of(gamma, w, (None, hi)), "", wit, inner_nonzero=nonzero))
    return _cached(("auslander", id(a), id(c), id(m), d), build)


def auslander_membership(a: DGAlgebra, c: DGModule, m: DGModule, d: int, strategy: str = "auto",
                         validate: bool = True) -> VerdictReport:
    """γ: M → RHom(C, C ⊗^L M) a quasi-isomorphism, with C ⊗^L M bounded."""
    if validate:
        _check_inputs(a, c, m)
    route = _route(strategy, a, c, m)
    params = {"D": d, "algebra": a.name, "C": c.name, "M": m.name, "route": route}
    if _m_is_zero(m):
        return holds("auslander", parameters=params, reason="M is acyclic")
    if route == "factored":
        p = _combine("auslander", a, tuple(_auslander_partial(a.factors[k], c.factors[k], m.factors[k], d)
                                           for k in range(2)))
    else:
        p = _auslander_partial(a, c, m, d)
    if p.unbounded:
        return fails("auslander", p.reason, witnesses=p.witnesses, parameters=params)
    if p.hmap is None:
        return inconclusive("auslander", p.reason, witnesses=p.witnesses, parameters=params)
    hb = _hbounds(m)
    return _verdict("auslander", p.hmap, (hb[0] - 1, None), params, p.witnesses)


# ------------------------------------------------------------------ reflexivity


def biduality_map(G: SemifreeModule, c: DGModule, L: SemifreeResolution, tr: Truncation,
                  X: HomComplex) -> tuple[ChainMap, HomComplex]:
    """δ: G → Hom_A(L, C), g ↦ (l ↦ (-1)^{|g||l|} ε_L(l)(g))."""
    f = c.field
    a = G.algebra
    Y = HomComplex(L.ladder, c)
    comps = {}
    for n in G.complex.dims:
        if not Y.complex.dim(n):
            continue
        mat = f.zeros(Y.complex.dim(n), G.complex.dim(n))
        for k, (o, yd) in Y.layout[n].items():
            dk = L.ladder.gen_degrees[k]
            # ε_L(l_k) as an element of Hom_A(G, C) of degree d_k
            phi = f.mul(tr.inclusion[dk], L.augment[k].reshape(-1, 1))[:, 0] if dk in tr.inclusion else None
            if phi is None:
                continue
            for col, (i, b) in enumerate(G.piece(n)):
                if i not in X.layout.get(dk, {}):
                    continue
                val = phi[X.component(dk, i)]
                s = f.sign(n * dk + dk * a.degrees[b])
                img = f.mul(c.act(b, dk + G.gen_degrees[i]), val.reshape(-1, 1))[:, 0]
                mat[o:o + c.dim(yd), col] = f.scale(s, img)
        comps[n] = mat
    return ChainMap(G.complex, Y.complex, 0, comps), Y


def _reflexive_partial(a: DGAlgebra, c: DGModule, m: DGModule, d: int) -> _Partial:
    def build():
        G = _resolution(a, m, d)
        X = HomComplex(G.ladder, c)
        wx = window_hom(d, c.complex.hi) if G.ladder.ngens else TrustWindow()
        wit = {"hom_window": wx.as_list(),
               "hom_homology": {n: X.complex.homology_dim(n) for n in wx.clip(X.complex.lo, X.complex.hi)}}
        t = _bounded_bottom(X.complex, wx)
        if t is None:
            return ((a, c, m), _Partial(None, "RHom(M, C) not certified bounded: homology near the window "
                                              f"bottom {wx.lo}", wit))
        tr = truncate_module_below(X.module_from(t), t)
        L = semifree_resolution(a, tr.module, d)
        delta, Y = biduality_map(G.ladder, c, L, tr, X)
        if not delta.check().holds:
            raise AssertionError("δ is not a chain map")
        w = window_hom(d, c.complex.hi) if L.ladder.ngens else TrustWindow()
        wit["truncated_at"] = t
        hb = _hbounds(m)
        if G.ladder.ngens and hb[1] > d - 1:
            return ((a, c, m), _Partial(None, f"degree bound {d} below sup M + 1", wit))
        gc = G.ladder.complex
        hi = max(gc.hi if gc.dims else 0, Y.complex.hi if Y.complex.dims else 0)
        hm = hmap_of(delta, w, (None, hi))
        # H(G) agrees with H(M) through degree d - 1 and H(M) vanishes above it
        if G.ladder.ngens:
            for n in [n for n in hm.src if n >= d]:
                del hm.src[n]
                hm.mats.pop(n, None)
        return ((a, c, m), _Partial(hm, "", wit))
    return _cached(("reflexive", id(a), id(c), id(m), d), build)


def derived_reflexive(a: DGAlgebra, c: DGModule, m: DGModule, d: int, strategy: str = "auto",
                      validate: bool = True) -> VerdictReport:
    """δ: M → RHom(RHom(M, C), C) a quasi-isomorphism, with RHom(M, C) bounded."""
    if validate:
        _check_inputs(a, c, m)
    route = _route(strategy, a, c, m)
    params = {"D": d, "algebra": a.name, "C": c.name, "M": m.name, "route": route}
    if _m_is_zero(m):
        return holds("reflexive", parameters=params, reason="M is acyclic")
    if route == "factored":
        p = _combine("reflexive", a, tuple(_reflexive_partial(a.factors[k], c.factors[k], m.factors[k], d)
                                           for k in range(2)))
    else:
        p = _reflexive_partial(a, c, m, d)
    if p.hmap is None:
        return inconclusive("reflexive", p.reason, witnesses=p.witnesses, parameters=params)
    hb = _hbounds(m)
    return _verdict("reflexive", p.hmap, (hb[0] - 1, hb[1] + 1), params, p.witnesses)


# ------------------------------------------------------------ vanishing lemma


def vanishing_checks(a: DGAlgebra, c: DGModule, m: DGModule, d: int) -> dict[str, bool | None]:
    """M ≃ 0, F(d) ⊗_A M acyclic on its window, Hom_A(F(d), M) acyclic on its window."""
    res = _resolution(a, c, d)
    F = res.ladder
    T = TensorOverLadder(F, m).complex
    H = HomComplex(F, m).complex
    inf_m = m.complex.lo if m.complex.dims else 0
    wt = window_tensor(d, inf_m)
    wh = window_hom(d, m.complex.hi)
    return {
        "zero": _m_is_zero(m),
        "tensor_acyclic": all(T.homology_dim(n) == 0 for n in wt.clip(T.lo, T.hi)),
        "hom_acyclic": all(H.homology_dim(n) == 0 for n in wh.clip(H.lo, H.hi)),
    }


# ------------------------------------------------------------ shift classes


@dataclass
class ShiftClassVerdict:
    outcome: str                      # "equivalent", "distinct" or "inconclusive"
    shift: int | None = None
    invariant: str | None = None
    evidence: dict = field(default_factory=dict)

    @property
    def equivalent(self) -> bool:
        return self.outcome == "equivalent"

    @property
    def distinct(self) -> bool:
        return self.outcome == "distinct"

    def to_dict(self) -> dict:
        return {"outcome": self.outcome, "shift": self.shift, "invariant": self.invariant,
                "evidence": {str(k): v for k, v in self.evidence.items()}}


def _hdims(m: DGModule) -> dict[int, int]:
    return {i: n for i, n in m.complex.homology_dims().items() if n}


def _shifted_equal(x: dict[int, int], y: dict[int, int], n: int) -> bool:
    return x == {i + n: v for i, v in y.items()}


def _invariants(m: DGModule) -> dict[str, dict]:
    a = m.algebra
    out = {"generator counts": generator_counts(m, sorted(_hdims(m)))}
    cert = a.locality
    for k, ideal in enumerate(cert.factor_ideals if cert else []):
        out[f"relative generator counts {k + 1}"] = generator_counts(m, sorted(_hdims(m)), ideal)
    return out


def _poincare(a: DGAlgebra, m: DGModule, length: int) -> list[int]:
    hb = _hbounds(m)
    if hb is None:
        return []
    if _is_factored(a, m):
        p1 = _poincare(a.factors[0], m.factors[0], length)
        p2 = _poincare(a.factors[1], m.factors[1], length)
        out = [0] * length
        for i, x in enumerate(p1):
            for j, y in enumerate(p2):
                if i + j < length:
                    out[i + j] += x * y
        return out
    res = _resolution(a, m, hb[0] + length - 1)
    coeffs = poincare_coefficients(res)
    # align at inf H(M) so shifted modules compare equal
    lo = min(res.ladder.counts()) if res.ladder.counts() else hb[0]
    pad = [0] * max(0, lo - hb[0])
    return (pad + coeffs)[:length]


def _probe_resolution(a: DGAlgebra, b: DGModule, top: int) -> SemifreeModule:
    """A ladder for B complete through degree ``top``."""
    if _is_factored(a, b):
        r1 = semifree_resolution(a.factors[0], b.factors[0], top - (b.factors[1].complex.lo))
        r2 = semifree_resolution(a.factors[1], b.factors[1], top - (b.factors[0].complex.lo))
        F = tensor_ladders(r1.ladder, r2.ladder, a)
        return F.truncate(top)
    return semifree_resolution(a, b, top).ladder


def _candidate_classes(f, dim: int, seed: int = 0, exhaustive_limit: int = 10 ** 4, random_count: int = 64):
    """Echelon basis vectors, then every vector (small spaces) or seeded random ones."""
    eye = f.eye(dim)
    for k in range(dim):
        yield eye[:, k]
    p = f.characteristic
    if p and p ** dim <= exhaustive_limit:
        for coeffs in product(range(p), repeat=dim):
            if sum(1 for c in coeffs if c) > 1:
                yield f.matrix([list(coeffs)]).reshape(-1)
        return
    rng = np.random.default_rng(seed)
    bound = p if p else 5
    for _ in range(random_count):
        yield f.matrix([rng.integers(0, bound, size=dim).tolist()]).reshape(-1)


def classify_shift(a: DGAlgebra, b: DGModule, c: DGModule, d: int, check_semidualizing: bool = True,
                   strategy: str = "auto") -> ShiftClassVerdict:
    """Decide whether C ≃ Σⁿ B for some n, by invariants and then by lifting.

    The reported shift is that n; the lifting searches for a quasi-isomorphism
    from a resolution of B to Σ^{-n} C.
    """
    from .catalog import shifted_module
    if check_semidualizing:
        for x in (b, c):
            v = is_semidualizing(a, x, d, strategy=strategy)
            if not v.holds:
                return ShiftClassVerdict("inconclusive", evidence={"reason": f"{x.name} is not certified "
                                                                             f"semidualizing ({v.verdict})"})
    hb, hc = _hdims(b), _hdims(c)
    if not hb or not hc:
        if not hb and not hc:
            return ShiftClassVerdict("equivalent", 0, evidence={"reason": "both acyclic"})
        return ShiftClassVerdict("distinct", invariant="graded homology dimensions",
                                 evidence={"B": hb, "C": hc})
    n = min(hb) - min(hc)
    if not _shifted_equal(hb, hc, n):
        return ShiftClassVerdict("distinct", invariant="graded homology dimensions", evidence={"B": hb, "C": hc})
    ib, ic = _invariants(b), _invariants(c)
    for name in ib:
        if not _shifted_equal(ib[name], ic.get(name, {}), n):
            return ShiftClassVerdict("distinct", invariant=name, evidence={"B": ib[name], "C": ic.get(name)})
    length = min(d, 4) + 1
    pb, pc = _poincare(a, b, length), _poincare(a, c, length)
    if pb != pc:
        return ShiftClassVerdict("distinct", invariant="Poincaré coefficients", evidence={"B": pb, "C": pc})
    # lifting: chain maps F_B → Σⁿ C that are quasi-isomorphisms
    sc = shifted_module(c, n)
    top = max(b.complex.hi, sc.complex.hi) + 1
    F = _probe_resolution(a, b, top)
    H, cyc, bnd = chain_maps_space(F, sc, 0)
    f = a.field
    if cyc.shape[1] == 0:
        return ShiftClassVerdict("inconclusive", -n, evidence={"reason": "no chain maps on the truncated ladder"})
    reps = f.complement_columns(bnd, cyc)
    window = TrustWindow(None, top - 1)
    tried = 0
    for coeff in _candidate_classes(f, reps.shape[1]):
        tried += 1
        v = f.mul(reps, coeff.reshape(-1, 1))[:, 0]
        phi = hom_vector_to_map(H, 0, v)
        if is_quasi_iso(phi, window).holds:
            return ShiftClassVerdict("equivalent", -n, evidence={"candidates_tried": tried,
                                                                "window": window.as_list(),
                                                                "homology_dims": hb})
    return ShiftClassVerdict("inconclusive", -n, evidence={"candidates_tried": tried,
                                                          "reason": "no quasi-isomorphism found"})


def approx_equivalent(a: DGAlgebra, b: DGModule, c: DGModule, d: int, strategy: str = "auto") -> VerdictReport:
    """B ≈ C as mutual Bass containment: B ∈ B_C and C ∈ B_B."""
    v1 = bass_membership(a, c, b, d, strategy=strategy)
    v2 = bass_membership(a, b, c, d, strategy=strategy)
    wit = {"B_in_Bass_C": v1.verdict, "C_in_Bass_B": v2.verdict}
    if v1.holds and v2.holds:
        return holds("approx", witnesses=wit)
    if v1.fails or v2.fails:
        return fails("approx", "a Bass containment fails", witnesses=wit)
    return inconclusive("approx", "a Bass containment is inconclusive", witnesses=wit)


# ----------------------------------------------------------------------- psi


@dataclass(eq=False)
class PsiImage:
    module: DGModule
    report: VerdictReport


def psi(c1: DGModule, c2: DGModule, d: int, algebra: DGAlgebra | None = None) -> PsiImage:
    """C'⊗C'' for semidualizing factors; the tensor's own verdict is computed and must hold."""
    for x in (c1, c2):
        v = is_semidualizing(x.algebra, x, d)
        if not v.holds:
            raise ValueError(f"ψ needs semidualizing inputs; {x.name} is {v.verdict}")
    a = algebra or tensor_algebras(c1.algebra, c2.algebra)
    m = tensor_modules(c1, c2, a)
    rep = is_semidualizing(a, m, d)
    if not rep.holds:
        raise AssertionError(f"ψ({c1.name}, {c2.name}) is not semidualizing: {rep}")
    return PsiImage(m, rep)


# -------------------------------------------------------------- theorem suite


@dataclass
class SuiteReport:
    records: list[VerdictReport] = field(default_factory=list)
    psi_images: list[str] = field(default_factory=list)
    classes: list[list[str]] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.records)

    def to_dict(self) -> dict:
        return {"records": [r.to_dict() for r in self.records], "psi_images": self.psi_images,
                "classes": self.classes, "all_hold": self.all_hold}


def _tensor_expectation(check: str, factors: list[VerdictReport], tensor: VerdictReport,
                        params: dict, strict_converse: bool = False) -> VerdictReport:
    """Both factors hold ⇒ tensor holds; otherwise the tensor must not hold.

    With ``strict_converse`` a failing factor must give a failing tensor, and
    an inconclusive factor leaves the sub-check inconclusive.
    """
    wit = {"factors": [v.verdict for v in factors], "tensor": tensor.verdict,
           "tensor_window": tensor.window.as_list(), "tensor_reason": tensor.reason}
    if all(v.holds for v in factors):
        if tensor.holds:
            return holds(check, window=tensor.window, witnesses=wit, parameters=params)
        if tensor.fails:
            return fails(check, "factors hold but the tensor does not", witnesses=wit, parameters=params)
        return inconclusive(check, f"tensor verdict inconclusive: {tensor.reason}", witnesses=wit,
                            parameters=params)
    name = check + "_converse"
    if strict_converse:
        if not any(v.fails for v in factors):
            return inconclusive(name, "factor verdicts inconclusive", witnesses=wit, parameters=params)
        if tensor.fails:
            return holds(name, window=tensor.window, witnesses=wit, parameters=params)
        if tensor.holds:
            return fails(name, "a factor fails but the tensor holds", witnesses=wit, parameters=params)
        return inconclusive(name, f"tensor verdict inconclusive: {tensor.reason}", witnesses=wit,
                            parameters=params)
    if tensor.holds:
        return fails(name, "a factor does not hold but the tensor does", witnesses=wit, parameters=params)
    return holds(name, window=tensor.window, witnesses=wit, parameters=params)


def theorem_suite(a1: DGAlgebra, a2: DGAlgebra, cases: list[tuple[DGModule, DGModule]], d: int,
                  tests: list[tuple[DGModule, DGModule]] | None = None,
                  predicates=("bass", "auslander", "reflexive")) -> SuiteReport:
    """Tensor-product theorem checks for every pair in ``cases``.

    * semidualizing: forward (both factors ⇒ tensor) and converse (a failing
      factor ⇒ failing tensor);
    * Bass / Auslander / reflexivity: for every semidualizing case C and every
      test pair N (defaults to ``cases``), factor memberships against the
      tensor membership;
    * ≈-compatibility and ψ-injectivity via :func:`classify_shift`.
    """
    rep = SuiteReport()
    if not cases:
        return rep
    a = tensor_algebras(a1, a2)
    tests = cases if tests is None else tests
    tens = {}
    semid = []
    for c1, c2 in cases:
        t0 = time.perf_counter()
        key = (c1.name, c2.name)
        t = tensor_modules(c1, c2, a)
        tens[key] = t
        v1 = is_semidualizing(a1, c1, d)
        v2 = is_semidualizing(a2, c2, d)
        vt = is_semidualizing(a, t, d)
        params = {"D": d, "C'": c1.name, "C''": c2.name}
        r = _tensor_expectation("semidualizing_tensor", [v1, v2], vt, params, strict_converse=True)
        r.seconds = time.perf_counter() - t0
        rep.records.append(r)
        if v1.holds and v2.holds:
            semid.append((c1, c2, t))
    checks = {"bass": bass_membership, "auslander": auslander_membership, "reflexive": derived_reflexive}
    for c1, c2, ct in semid:
        for n1, n2 in tests:
            nt = tens.get((n1.name, n2.name)) or tensor_modules(n1, n2, a)
            for name in predicates:
                t0 = time.perf_counter()
                fn = checks[name]
                v1 = fn(a1, c1, n1, d)
                v2 = fn(a2, c2, n2, d)
                vt = fn(a, ct, nt, d)
                params = {"D": d, "C": ct.name, "N": nt.name}
                r = _tensor_expectation(f"{name}_tensor", [v1, v2], vt, params)
                r.seconds = time.perf_counter() - t0
                rep.records.append(r)
    # ≈-compatibility on pairs of semidualizing tensors, and ψ-injectivity
    classes: list[list[int]] = []
    for i, (c1, c2, ct) in enumerate(semid):
        placed = False
        for cl in classes:
            t0 = time.perf_counter()
            j = cl[0]
            d1, d2, dt = semid[j]
            s1 = classify_shift(a1, c1, d1, d)
            s2 = classify_shift(a2, c2, d2, d)
            st = classify_shift(a, ct, dt, d)
            params = {"D": d, "left": ct.name, "right": dt.name}
            wit = {"factor_outcomes": [s1.outcome, s2.outcome], "tensor_outcome": st.outcome,
                   "tensor_invariant": st.invariant, "tensor_shift": st.shift}
            if "inconclusive" in (s1.outcome, s2.outcome, st.outcome):
                rep.records.append(inconclusive("approx_compatibility", "a classification is inconclusive",
                                                witnesses=wit, parameters=params,
                                                seconds=time.perf_counter() - t0))
            else:
                factors_eq = s1.equivalent and s2.equivalent
                ok = factors_eq == st.equivalent
                if factors_eq and ok:
                    ok = st.shift == s1.shift + s2.shift
                rec = holds if ok else (lambda c, **kw: fails(c, "tensor class disagrees with factor classes", **kw))
                rep.records.append(rec("approx_compatibility", witnesses=wit, parameters=params,
                                       seconds=time.perf_counter() - t0))
            if st.equivalent:
                cl.append(i)
                placed = True
                break
        if not placed:
            classes.append([i])
    rep.psi_images = [semid[cl[0]][2].name for cl in classes]
    rep.classes = [[semid[i][2].name for i in cl] for cl in classes]
    t0 = time.perf_counter()
    factor_classes = set()
    for c1, c2, _ in semid:
        factor_classes.add((_class_label(a1, c1, [x for x, _, _ in semid], d),
                            _class_label(a2, c2, [y for _, y, _ in semid], d)))
    wit = {"image_size": len(classes), "factor_class_pairs": len(factor_classes)}
    if semid:
        check = holds if len(classes) == len(factor_classes) else (
            lambda c, **kw: fails(c, "ψ identifies distinct factor classes", **kw))
        rep.records.append(check("psi_injective", witnesses=wit, parameters={"D": d},
                                 seconds=time.perf_counter() - t0))
    return rep


def _class_label(a: DGAlgebra, c: DGModule, pool: list[DGModule], d: int) -> int:
    """Index of the first module in ``pool`` equivalent to ``c``."""
    for k, x in enumerate(pool):
        if x is c or classify_shift(a, x, c, d).equivalent:
            return k
    return -1
