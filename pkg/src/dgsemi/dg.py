"""DG algebras and DG modules as structure-constant tables.

An algebra carries a total basis ordered by degree; ``mult[k, i, j]`` is the
coefficient of basis element ``k`` in ``b_i * b_j``.  A module stores its
action degreewise: ``blocks[(i, j)]`` is the matrix of ``b_i *`` from
``M_j`` to ``M_{j + |b_i|}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .complexes import DGComplex, homology_degree, quotient_projection, validate_complex
from .scalars import Field
from .verdicts import VerdictReport, fails, holds, inconclusive


class StructureError(ValueError):
    pass


def offsets(dims: dict[int, int]) -> dict[int, int]:
    out, acc = {}, 0
    for i in sorted(dims):
        out[i] = acc
        acc += dims[i]
    return out


def total_matrix(x: DGComplex) -> np.ndarray:
    """The differential of ``x`` as one matrix on the degree-ordered total basis."""
    f = x.field
    off = offsets(x.dims)
    n = x.total_dim
    m = f.zeros(n, n)
    for i, blk in x.diffs.items():
        m[off[i - 1]:off[i - 1] + x.dim(i - 1), off[i]:off[i] + x.dim(i)] = blk
    return m


@dataclass
class LocalityCertificate:
    """Lifts to A_0 of a basis of the maximal ideal of H_0(A), plus a nilpotency exponent."""

    ideal: list[np.ndarray]
    exponent: int
    # ideals of H_0(A) pulled back from tensor factors, used as extra shift invariants
    factor_ideals: list[list[np.ndarray]] = field(default_factory=list)


@dataclass(eq=False)
class DGAlgebra:
    complex: DGComplex
    mult: np.ndarray
    unit: np.ndarray
    locality: LocalityCertificate | None = None
    name: str = ""
    factors: tuple = ()

    @property
    def field(self) -> Field:
        return self.complex.field

    @cached_property
    def degrees(self) -> list[int]:
        """Degree of each total basis element."""
        out = []
        for i in sorted(self.complex.dims):
            out += [i] * self.complex.dim(i)
        return out

    @cached_property
    def offsets(self) -> dict[int, int]:
        return offsets(self.complex.dims)

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def index(self, degree: int, k: int) -> int:
        return self.offsets[degree] + k

    def basis_in(self, degree: int) -> range:
        o = self.offsets.get(degree)
        return range(0) if o is None else range(o, o + self.complex.dim(degree))

    @cached_property
    def diff_total(self) -> np.ndarray:
        return total_matrix(self.complex)

    def d(self, v: np.ndarray) -> np.ndarray:
        return self.field.mul(self.diff_total, v)

    def multiply(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        f = self.field
        return f.reduce(np.einsum("kij,i,j->k", self.mult, u, v))

    def left(self, i: int) -> np.ndarray:
        """Matrix of left multiplication by basis element ``i``."""
        return self.mult[:, i, :]

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zero_vector(self.dim)
        v[i] = self.field.scalar(1)
        return v

    def vector_degree(self, v: np.ndarray) -> int | None:
        ds = {self.degrees[i] for i in np.flatnonzero(v != 0)}
        if len(ds) > 1:
            raise StructureError("inhomogeneous element")
        return ds.pop() if ds else None

    @property
    def is_local(self) -> bool:
        return self.locality is not None

    def __repr__(self) -> str:
        return f"DGAlgebra({self.name or '?'}, dims={dict(sorted(self.complex.dims.items()))})"


@dataclass(eq=False)
class DGModule:
    algebra: DGAlgebra
    complex: DGComplex
    blocks: dict[tuple[int, int], np.ndarray]
    name: str = ""
    factors: tuple = ()

    @property
    def field(self) -> Field:
        return self.complex.field

    def dim(self, j: int) -> int:
        return self.complex.dim(j)

    def act(self, b: int, j: int) -> np.ndarray:
        """Matrix of ``b_b *`` from degree ``j`` to ``j + |b|``."""
        m = self.blocks.get((b, j))
        if m is None:
            return self.field.zeros(self.dim(j + self.algebra.degrees[b]), self.dim(j))
        return m

    def act_vec(self, a: np.ndarray, j: int) -> np.ndarray:
        """Matrix of multiplication by a homogeneous algebra element on degree ``j``."""
        f = self.field
        da = self.algebra.vector_degree(a)
        if da is None:
            return f.zeros(0, self.dim(j))
        out = f.zeros(self.dim(j + da), self.dim(j))
        for b in np.flatnonzero(a != 0):
            blk = self.blocks.get((int(b), j))
            if blk is not None:
                out = f.add(out, f.scale(a[b], blk))
        return out

    def total_action(self) -> np.ndarray:
        """Dense tensor S[:, b, :] = left action of b on the total module basis."""
        f = self.field
        off = offsets(self.complex.dims)
        n = self.complex.total_dim
        s = f.zeros(n * self.algebra.dim, n).reshape(n, self.algebra.dim, n)
        for (b, j), blk in self.blocks.items():
            t = j + self.algebra.degrees[b]
            if j in off and t in off:
                s[off[t]:off[t] + self.dim(t), b, off[j]:off[j] + self.dim(j)] = blk
        return s

    def __repr__(self) -> str:
        return f"DGModule({self.name or '?'}, dims={dict(sorted(self.complex.dims.items()))})"


# ------------------------------------------------------------------ constructors


def algebra_from_total(field: Field, degrees: list[int], diff: np.ndarray, mult: np.ndarray,
                       unit: np.ndarray, locality=None, name="") -> DGAlgebra:
    """Build an algebra from a degree-sorted total basis."""
    cx = complex_from_total(field, degrees, diff)
    return DGAlgebra(cx, mult, unit, locality, name)


def complex_from_total(field: Field, degrees: list[int], diff: np.ndarray) -> DGComplex:
    if list(degrees) != sorted(degrees):
        raise StructureError("total basis must be sorted by degree")
    dims: dict[int, int] = {}
    for d in degrees:
        dims[d] = dims.get(d, 0) + 1
    off = offsets(dims)
    diffs = {}
    for i in dims:
        if i - 1 in dims:
            blk = diff[off[i - 1]:off[i - 1] + dims[i - 1], off[i]:off[i] + dims[i]]
            if not field.is_zero(blk):
                diffs[i] = blk.copy()
    return DGComplex(field, dims, diffs)


def module_from_total(algebra: DGAlgebra, degrees: list[int], diff: np.ndarray,
                      action: np.ndarray, name="") -> DGModule:
    """Build a module from total matrices; ``action[:, b, :]`` is left mult by b."""
    f = algebra.field
    cx = complex_from_total(f, degrees, diff)
    off = offsets(cx.dims)
    blocks = {}
    for b in range(algebra.dim):
        db = algebra.degrees[b]
        for j in cx.dims:
            t = j + db
            if t not in cx.dims:
                continue
            blk = action[off[t]:off[t] + cx.dim(t), b, off[j]:off[j] + cx.dim(j)]
            if not f.is_zero(blk):
                blocks[(b, j)] = blk.copy()
    return DGModule(algebra, cx, blocks, name)


def regular_module(a: DGAlgebra, name: str | None = None) -> DGModule:
    """A as a module over itself."""
    return module_from_total(a, a.degrees, a.diff_total, a.mult, name=name or a.name)


def sign_table(field: Field, degs: list[int]) -> np.ndarray:
    return np.array([[field.sign(x * y) for y in degs] for x in degs], dtype=object)


# --------------------------------------------------------------------- validators


def _first_nonzero(arr: np.ndarray):
    nz = np.argwhere(arr != 0)
    return tuple(int(v) for v in nz[0]) if len(nz) else None


def algebra_axiom_failures(a: DGAlgebra) -> list[tuple[str, tuple]]:
    """All broken algebra axioms as (axiom, basis indices) pairs, in a fixed order."""
    f = a.field
    out = []
    if not validate_complex(a.complex).holds:
        out.append(("differential", ()))
    if any(d < 0 for d in a.degrees):
        out.append(("positively_graded", ()))
    n = a.dim
    T = a.mult
    degs = np.array(a.degrees)
    expected = degs[:, None, None] == (degs[None, :, None] + degs[None, None, :])
    bad = _first_nonzero((T != 0) & ~expected)
    if bad is not None:
        out.append(("grading", bad))
    D = a.diff_total
    # the differential must lower degree by one
    dexp = degs[:, None] == degs[None, :] - 1
    bad = _first_nonzero((D != 0) & ~dexp)
    if bad is not None:
        out.append(("differential_degree", bad))
    u = a.unit
    try:
        udeg = a.vector_degree(u)
    except StructureError:
        udeg = None
    if udeg != 0:
        out.append(("unital", ("unit not homogeneous of degree 0",)))
    else:
        lu = f.reduce(np.einsum("kij,i->kj", T, u))
        ru = f.reduce(np.einsum("kij,j->ki", T, u))
        eye = f.eye(n)
        bad = _first_nonzero(lu != eye) or _first_nonzero(ru != eye)
        if bad is not None:
            out.append(("unital", bad))
    lhs = f.reduce(np.einsum("kij,mkl->mijl", T, T))      # (b_i b_j) b_l
    rhs = f.reduce(np.einsum("kjl,mik->mijl", T, T))      # b_i (b_j b_l)
    bad = _first_nonzero(lhs != rhs)
    if bad is not None:
        out.append(("associative", bad[1:]))
    sg = sign_table(f, a.degrees)
    swapped = f.reduce(T.transpose(0, 2, 1) * sg[None, :, :])
    bad = _first_nonzero(T != swapped)
    if bad is not None:
        out.append(("graded_commutative", bad[1:]))
    odd = [i for i in range(n) if a.degrees[i] % 2]
    for i in odd:
        if np.any(T[:, i, i] != 0):
            out.append(("odd_square_zero", (i,)))
            break
    # Leibniz: D(b_i b_j) = (D b_i) b_j + (-1)^|i| b_i (D b_j)
    left = f.reduce(np.einsum("mk,kij->mij", D, T))
    t1 = f.reduce(np.einsum("ki,mkj->mij", D, T))
    par = np.array([f.sign(d) for d in a.degrees], dtype=object)
    t2 = f.reduce(np.einsum("kj,mik->mij", D, T) * par[None, :, None])
    bad = _first_nonzero(left != f.reduce(t1 + t2))
    if bad is not None:
        out.append(("leibniz", bad[1:]))
    return out


def validate_dg_algebra(a: DGAlgebra) -> VerdictReport:
    failures = algebra_axiom_failures(a)
    if failures:
        axiom, idx = failures[0]
        return fails("validate_dg_algebra", f"axiom '{axiom}' fails at basis indices {idx}",
                     witnesses={"axiom": axiom, "indices": list(idx),
                                "failed_axioms": [ax for ax, _ in failures]})
    return holds("validate_dg_algebra")


def module_axiom_failures(m: DGModule) -> list[tuple[str, tuple]]:
    a, f = m.algebra, m.field
    out = []
    if not validate_complex(m.complex).holds:
        out.append(("differential", ()))
    S = m.total_action()
    T = a.mult
    mdeg = []
    for j in sorted(m.complex.dims):
        mdeg += [j] * m.dim(j)
    # blocks are degree-correct by construction; only unit, associativity, Leibniz can break
    u = a.unit
    lu = f.reduce(np.einsum("mbn,b->mn", S, u))
    bad = _first_nonzero(lu != f.eye(len(mdeg)))
    if bad is not None:
        out.append(("unital", bad))
    lhs = f.reduce(np.einsum("kij,mkn->mijn", T, S))      # (b_i b_j) x
    rhs = f.reduce(np.einsum("mip,pjn->mijn", S, S))      # b_i (b_j x)
    bad = _first_nonzero(lhs != rhs)
    if bad is not None:
        out.append(("associative", bad[1:]))
    DM = total_matrix(m.complex)
    DA = a.diff_total
    left = f.reduce(np.einsum("mp,pin->min", DM, S))
    t1 = f.reduce(np.einsum("ki,mkn->min", DA, S))
    par = np.array([f.sign(d) for d in a.degrees], dtype=object)
    t2 = f.reduce(np.einsum("mip,pn->min", S, DM) * par[None, :, None])
    bad = _first_nonzero(left != f.reduce(t1 + t2))
    if bad is not None:
        out.append(("leibniz", bad[1:]))
    return out


def validate_dg_module(m: DGModule) -> VerdictReport:
    failures = module_axiom_failures(m)
    if failures:
        axiom, idx = failures[0]
        return fails("validate_dg_module", f"axiom '{axiom}' fails at indices {idx}",
                     witnesses={"axiom": axiom, "indices": list(idx),
                                "failed_axioms": [ax for ax, _ in failures]})
    return holds("validate_dg_module")


# ------------------------------------------------------------------------ locality


@dataclass
class H0Data:
    """H_0(A) = A_0 / ∂A_1 with a projection from A_0 coordinates."""

    proj: np.ndarray
    lift: np.ndarray

    @property
    def dim(self) -> int:
        return self.proj.shape[0]


def h0_data(a: DGAlgebra) -> H0Data:
    f = a.field
    n0 = a.complex.dim(0)
    bounds = f.image_basis(a.complex.d(1)) if 1 in a.complex.diffs else f.zeros(n0, 0)
    proj, lift = quotient_projection(f, bounds, n0)
    return H0Data(proj, lift)


def _deg0(a: DGAlgebra, v: np.ndarray) -> np.ndarray:
    r = a.basis_in(0)
    return v[r.start:r.stop]


def _embed0(a: DGAlgebra, w: np.ndarray) -> np.ndarray:
    v = a.field.zero_vector(a.dim)
    r = a.basis_in(0)
    v[r.start:r.stop] = w
    return v


def validate_locality(a: DGAlgebra) -> VerdictReport:
    cert = a.locality
    if cert is None:
        return inconclusive("validate_locality", "no locality certificate supplied")
    f = a.field
    h0 = h0_data(a)
    if h0.dim == 0:
        return fails("validate_locality", "H_0(A) = 0")
    gens = [f.mul(h0.proj, _deg0(a, v)) for v in cert.ideal]
    span = np.stack(gens, axis=1) if gens else f.zeros(h0.dim, 0)
    r = f.rank(span) if gens else 0
    if r != h0.dim - 1:
        return fails("validate_locality", f"ideal has codimension {h0.dim - r}, expected 1")
    # closure under multiplication by H_0(A)
    basis0 = [_embed0(a, f.mul(h0.lift, f.eye(h0.dim)[:, k])) for k in range(h0.dim)]
    prods = []
    for x in basis0:
        for v in cert.ideal:
            prods.append(f.mul(h0.proj, _deg0(a, a.multiply(x, v))))
    if prods and f.rank(np.concatenate([span, np.stack(prods, axis=1)], axis=1)) != r:
        return fails("validate_locality", "span is not an ideal of H_0(A)")
    # nilpotency: products of `exponent` ideal elements vanish in H_0
    power = list(cert.ideal)
    for _ in range(cert.exponent - 1):
        power = [a.multiply(x, v) for x in power for v in cert.ideal]
    for v in power:
        if not f.is_zero(f.mul(h0.proj, _deg0(a, v))):
            return fails("validate_locality", f"ideal^{cert.exponent} != 0")
    return holds("validate_locality", witnesses={"dim_H0": h0.dim, "exponent": cert.exponent})


def ideal_in_degree0(a: DGAlgebra, ideal: list[np.ndarray] | None = None) -> list[np.ndarray]:
    """Lifts of the maximal ideal of H_0(A) together with ∂A_1, as A-vectors."""
    f = a.field
    cert = a.locality
    vs = list(cert.ideal if ideal is None else ideal)
    if 1 in a.complex.diffs:
        b = f.image_basis(a.complex.d(1))
        vs += [_embed0(a, b[:, k]) for k in range(b.shape[1])]
    return vs


# ------------------------------------------------------------ homological bounds


def generator_counts(m: DGModule, degrees=None, ideal=None) -> dict[int, int]:
    """dim H_i / I·H_i per degree (Nakayama counts); I defaults to the maximal ideal."""
    f = m.field
    ideal = ideal_in_degree0(m.algebra, ideal)
    degrees = m.complex.degrees if degrees is None else degrees
    out = {}
    for i in degrees:
        h = homology_degree(m.complex, i)
        if h.dim == 0:
            continue
        imgs = [f.mul(m.act_vec(x, i), h.reps) for x in ideal if m.algebra.vector_degree(x) == 0]
        if imgs:
            coords = h.coordinates(np.concatenate(imgs, axis=1))
            out[i] = h.dim - f.rank(coords)
        else:
            out[i] = h.dim
    return out


@dataclass
class HomologicalBounds:
    inf: float
    sup: float
    homology_dims: dict[int, int]
    generators: dict[int, int] | None


def homological_bounds(m: DGModule) -> HomologicalBounds:
    dims = {i: d for i, d in m.complex.homology_dims().items() if d}
    if not dims:
        return HomologicalBounds(float("inf"), float("-inf"), {}, {} if m.algebra.is_local else None)
    gens = generator_counts(m, sorted(dims)) if m.algebra.is_local else None
    return HomologicalBounds(min(dims), max(dims), dims, gens)
