"""Truncated semifree resolutions by cycle killing, and the trust-window rules."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .complexes import ChainMap, ComplexError, homology_degree, is_quasi_iso
from .dg import DGAlgebra, DGModule, h0_data, ideal_in_degree0
from .semifree import HomComplex, SemifreeModule
from .verdicts import TrustWindow, VerdictReport, fails, holds, inconclusive


@dataclass(eq=False)
class SemifreeResolution:
    """A ladder F with an augmentation ε: F → M, complete through degree ``bound``.

    ``augment[i]`` is ε(e_i) as a vector of M in degree d_i.  The augmentation
    is a quasi-isomorphism in degrees ≤ bound - 1 and surjective on H_bound.
    """

    ladder: SemifreeModule
    target: DGModule
    augment: list[np.ndarray]
    bound: int
    minimal: bool = False
    extra: dict = field(default_factory=dict)

    @property
    def algebra(self) -> DGAlgebra:
        return self.ladder.algebra

    @property
    def field(self):
        return self.ladder.field

    @property
    def gen_degrees(self) -> list[int]:
        return self.ladder.gen_degrees

    def augmentation(self) -> ChainMap:
        f, F, M = self.field, self.ladder, self.target
        cx = F.complex
        comps = {}
        for n in cx.dims:
            if not M.dim(n):
                continue
            m = f.zeros(M.dim(n), cx.dim(n))
            for col, (i, b) in enumerate(F.piece(n)):
                m[:, col] = f.mul(M.act(b, F.gen_degrees[i]), self.augment[i].reshape(-1, 1))[:, 0]
            comps[n] = m
        return ChainMap(cx, M.complex, 0, comps)

    def window(self) -> TrustWindow:
        """Degrees where H(F) agrees with H(M)."""
        return TrustWindow(None, self.bound - 1)


def _cone_spaces(F: SemifreeModule, aug: list[np.ndarray], M: DGModule, j: int):
    """Cycle and boundary matrices of the cone of ε in degree j (on F_{j-1} ⊕ M_j)."""
    f = F.field
    cx = F  # the ladder builds only the differentials asked for
    nf, nm = cx.dim(j - 1), M.dim(j)
    # Φ: (z, m) ↦ (∂z, εz − ∂m) ∈ F_{j−2} ⊕ M_{j−1}
    eps_prev = _aug_matrix(F, aug, M, j - 1)
    top = np.concatenate([cx.d(j - 1), f.zeros(cx.dim(j - 2), nm)], axis=1)
    bot = np.concatenate([eps_prev, f.neg(M.complex.d(j))], axis=1)
    phi = np.concatenate([top, bot], axis=0)
    cycles = f.kernel_basis(phi) if phi.shape[0] else f.eye(nf + nm)
    # Ψ: x ∈ F_j ↦ (∂x, εx), m' ∈ M_{j+1} ↦ (0, ∂m')
    eps_j = _aug_matrix(F, aug, M, j)
    left = np.concatenate([cx.d(j), eps_j], axis=0)
    right = np.concatenate([f.zeros(nf, M.dim(j + 1)), M.complex.d(j + 1)], axis=0)
    psi = np.concatenate([left, right], axis=1)
    bounds = f.image_basis(psi) if psi.shape[1] else f.zeros(nf + nm, 0)
    return cycles, bounds


def _aug_matrix(F: SemifreeModule, aug, M: DGModule, n: int) -> np.ndarray:
    f = F.field
    piece = F.piece(n)
    m = f.zeros(M.dim(n), len(piece))
    if not M.dim(n):
        return m
    for col, (i, b) in enumerate(piece):
        m[:, col] = f.mul(M.act(b, F.gen_degrees[i]), aug[i].reshape(-1, 1))[:, 0]
    return m


def _act_on_cone(F: SemifreeModule, M: DGModule, j: int, a: np.ndarray, vs: np.ndarray) -> np.ndarray:
    """a·(z, m) for a degree-0 algebra element a, applied to every column of ``vs``."""
    f = F.field
    nf = F.dim(j - 1)
    out = f.zeros(*vs.shape)
    piece = F.piece(j - 1)
    if nf and piece:
        gens = np.array([i for i, _ in piece])
        basis = np.array([b for _, b in piece])
        pos = F._piece_index[j - 1]
        left = f.reduce(np.einsum("kcb,c->kb", F.algebra.mult, a))
        for k, b in zip(*np.nonzero(left)):
            cols = np.flatnonzero(basis == b)
            if not len(cols):
                continue
            rows = np.array([pos[(int(i), int(k))] for i in gens[cols]], dtype=np.intp)
            out[rows, :] = out[rows, :] + left[k, b] * vs[cols, :]
    if M.dim(j):
        out[nf:, :] = f.mul(M.act_vec(a, j), vs[nf:, :])
    return f.reduce(out)


def semifree_resolution(a: DGAlgebra, m: DGModule, d: int, minimal: bool | None = None,
                        order: str = "canonical") -> SemifreeResolution:
    """Resolve M by killing cycles of the cone of the partial augmentation, through degree d.

    With a locality certificate, each stage adds minimal generators (a basis of
    the cone homology modulo the maximal ideal), giving a minimal resolution.
    ``order="reversed"`` picks complements with the ambient basis reversed; it
    exists to check that Poincaré coefficients do not depend on the choice.
    """
    if m.algebra is not a:
        raise ValueError("module lives over a different algebra")
    f = a.field
    use_min = a.is_local if minimal is None else (minimal and a.is_local)
    ideal = [v for v in ideal_in_degree0(a) if a.vector_degree(v) == 0] if use_min else []
    degs: list[int] = []
    diff: list[dict] = []
    aug: list[np.ndarray] = []
    start = m.complex.lo if m.complex.dims else d + 1
    for j in range(start, d + 1):
        F = SemifreeModule(a, list(degs), [dict(x) for x in diff], name=m.name)
        cycles, bounds = _cone_spaces(F, aug, m, j)
        if cycles.shape[1] == 0:
            continue
        sub = bounds
        if ideal:
            extra = [_act_on_cone(F, m, j, x, cycles) for x in ideal]
            # a spanning set is enough: the complement step eliminates anyway
            sub = np.concatenate([bounds, *extra], axis=1)
        amb = cycles[:, ::-1] if order == "reversed" else cycles
        new = f.complement_columns(sub, amb)
        nf = F.dim(j - 1)
        for k in range(new.shape[1]):
            z, mv = new[:nf, k], new[nf:, k]
            degs.append(j)
            diff.append(F.coefficients(j - 1, z) if nf else {})
            aug.append(mv.copy())
    F = SemifreeModule(a, degs, diff, name=f"F({m.name})")
    return SemifreeResolution(F, m, aug, d, minimal=bool(use_min))


# ----------------------------------------------------------------- verification


def verify_semifree(res: SemifreeResolution) -> VerdictReport:
    """Ladder freeness, the ∂-filtration condition and the quasi-isomorphism window."""
    F = res.ladder
    a = F.algebra
    for i, dd in enumerate(F.diff):
        for j, c in dd.items():
            if not (0 <= j < F.ngens):
                return fails("verify_semifree", f"generator {i} refers to unknown generator {j}")
            if F.gen_degrees[j] >= F.gen_degrees[i]:
                return fails("verify_semifree", f"∂e_{i} uses e_{j} of degree ≥ {F.gen_degrees[i]}",
                             witnesses={"generator": i, "uses": j})
            dc = a.vector_degree(c)
            if dc is not None and dc + F.gen_degrees[j] != F.gen_degrees[i] - 1:
                return fails("verify_semifree", f"∂e_{i} is not homogeneous of degree {F.gen_degrees[i] - 1}")
    cx = F.complex
    for n in cx.dims:
        if n + 1 in cx.diffs and n in cx.diffs:
            if not F.field.is_zero(F.field.mul(cx.d(n), cx.d(n + 1))):
                return fails("verify_semifree", f"∂² ≠ 0 in degree {n + 1}")
    eps = res.augmentation()
    if not eps.check().holds:
        return fails("verify_semifree", "augmentation is not a chain map")
    q = is_quasi_iso(eps, res.window())
    if not q.holds:
        return fails("verify_semifree", f"augmentation not a quasi-isomorphism: {q.reason}",
                     window=res.window(), witnesses=q.witnesses)
    return holds("verify_semifree", window=res.window(), witnesses=q.witnesses)


def is_minimal(res: SemifreeResolution) -> VerdictReport:
    """Every degree-0 differential coefficient lies in the maximal ideal."""
    a = res.algebra
    if not a.is_local:
        return inconclusive("is_minimal", "no locality certificate")
    f = a.field
    h0 = h0_data(a)
    cert = [h0_proj(a, h0, v) for v in a.locality.ideal]
    span = np.stack(cert, axis=1) if cert else f.zeros(h0.dim, 0)
    r = f.rank(span) if cert else 0
    for i, dd in enumerate(res.ladder.diff):
        for j, c in dd.items():
            if a.vector_degree(c) != 0:
                continue
            w = h0_proj(a, h0, c)
            if f.rank(np.concatenate([span, w.reshape(-1, 1)], axis=1)) > r:
                return fails("is_minimal", f"∂e_{i} has a unit coefficient on e_{j}",
                             witnesses={"generator": i, "on": j})
    return holds("is_minimal")


def h0_proj(a: DGAlgebra, h0, v: np.ndarray) -> np.ndarray:
    r = a.basis_in(0)
    return a.field.mul(h0.proj, v[r.start:r.stop].reshape(-1, 1))[:, 0]


def poincare_coefficients(res: SemifreeResolution) -> list[int]:
    """Number of generators in each degree from the lowest through the bound."""
    if not res.minimal:
        raise ValueError("Poincaré coefficients need a minimal resolution")
    counts = res.ladder.counts()
    if not counts:
        return []
    lo = min(counts)
    return [counts.get(i, 0) for i in range(lo, res.bound + 1)]


def truncate_resolution(res: SemifreeResolution, d: int) -> SemifreeResolution:
    if d > res.bound:
        raise ValueError("cannot truncate above the bound")
    keep = [i for i, g in enumerate(res.gen_degrees) if g <= d]
    return SemifreeResolution(res.ladder.truncate(d), res.target, [res.augment[i] for i in keep], d,
                              res.minimal)


# ---------------------------------------------------------------------- windows


def window_hom(d: int, target_sup: int) -> TrustWindow:
    """Hom_A(F(d), Q) has the right homology in degrees ≥ sup Q − d + 1."""
    return TrustWindow(target_sup - d + 1, None)


def window_tensor(d: int, partner_inf: int) -> TrustWindow:
    """F(d) ⊗_A M has the right homology in degrees ≤ d + inf M − 1."""
    return TrustWindow(None, d + partner_inf - 1)


# ---------------------------------------------------------------------- lifting


def chain_maps_space(F: SemifreeModule, Y: DGModule, n: int = 0):
    """Degree-n chain maps F → Y (as Hom cycles) and the null-homotopic ones."""
    H = HomComplex(F, Y)
    f = F.field
    cx = H.complex
    if not cx.dim(n):
        z = f.zeros(0, 0)
        return H, z, z
    cyc = f.kernel_basis(cx.d(n)) if n in cx.diffs else f.eye(cx.dim(n))
    bnd = f.image_basis(cx.d(n + 1)) if n + 1 in cx.diffs else f.zeros(cx.dim(n), 0)
    return H, cyc, bnd


def hom_vector_to_map(H: HomComplex, n: int, v: np.ndarray) -> ChainMap:
    """The degree-n k-linear map F → Y encoded by a Hom vector, on total complexes."""
    F, Y = H.F, H.Y
    f = F.field
    a = F.algebra
    comps = {}
    lay = H.layout.get(n, {})
    for deg in F.complex.dims:
        t = deg + n
        if not Y.dim(t):
            continue
        m = f.zeros(Y.dim(t), F.complex.dim(deg))
        for col, (i, b) in enumerate(F.piece(deg)):
            if i not in lay:
                continue
            o, yd = lay[i]
            img = v[o:o + Y.dim(yd)]
            # f(b e_i) = (-1)^{n|b|} b f(e_i)
            s = f.sign(n * a.degrees[b])
            m[:, col] = f.scale(s, f.mul(Y.act(b, yd), img.reshape(-1, 1))[:, 0])
        comps[deg] = m
    return ChainMap(F.complex, Y.complex, n, comps)


def lift_morphism(F: SemifreeModule | SemifreeResolution, bottom: dict[int, np.ndarray],
                  Y: DGModule | SemifreeResolution, n: int = 0) -> ChainMap | None:
    """Extend prescribed values on generators to a degree-n chain map F → Y.

    ``bottom`` maps generator indices to their images in Y.  The extension is
    found by solving for a cycle of Hom_A(F, Y) with those components, so a
    bad choice at a low stage can never block a later one; returns None when no
    extension exists on the truncated ladder.
    """
    if isinstance(F, SemifreeResolution):
        F = F.ladder
    if isinstance(Y, SemifreeResolution):
        Y = Y.ladder.to_module()
    f = F.field
    H = HomComplex(F, Y)
    cx = H.complex
    dim = cx.dim(n)
    if not dim:
        return hom_vector_to_map(H, n, f.zero_vector(0)) if not any(
            not f.is_zero(v) for v in bottom.values()) else None
    rows = [cx.d(n)] if n in cx.diffs else []
    rhs = [f.zero_vector(cx.dim(n - 1))] if n in cx.diffs else []
    for i, val in bottom.items():
        sl = H.component(n, i)
        sel = f.eye(dim)[sl, :]
        rows.append(sel)
        rhs.append(f.reduce(np.asarray(val, dtype=sel.dtype)))
    mat = np.concatenate(rows, axis=0)
    b = np.concatenate(rhs)
    x = f.solve(mat, b)
    if x is None:
        return None
    return hom_vector_to_map(H, n, x)


def resolution_homology_map(res: SemifreeResolution, i: int):
    """H_i(ε) as a matrix between canonical homology bases."""
    eps = res.augmentation()
    hs, ht = homology_degree(eps.source, i), homology_degree(eps.target, i)
    if hs.dim == 0 or ht.dim == 0:
        raise ComplexError(f"no homology in degree {i}")
    return eps.induced(i, hs, ht)
