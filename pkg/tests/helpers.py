"""Shared test utilities: table extraction and seeded single-constant mutations."""

from __future__ import annotations

import numpy as np

from dgsemi.dg import algebra_from_total, module_from_total, total_matrix

import oracles


def algebra_tables(a):
    return list(a.degrees), a.diff_total, a.mult, a.unit


def module_tables(m):
    degs = []
    for j in sorted(m.complex.dims):
        degs += [j] * m.dim(j)
    return degs, total_matrix(m.complex), m.total_action()


def oracle_algebra_broken(a) -> set[str]:
    degs, diff, mult, unit = algebra_tables(a)
    p = a.field.characteristic
    return oracles.algebra_axioms_broken(degs, diff.tolist(), mult.tolist(), unit.tolist(), p)


def oracle_module_broken(m) -> set[str]:
    a = m.algebra
    adegs, adiff, mult, unit = algebra_tables(a)
    mdegs, mdiff, act = module_tables(m)
    p = a.field.characteristic
    return oracles.module_axioms_broken(adegs, adiff.tolist(), mult.tolist(), unit.tolist(),
                                        mdegs, mdiff.tolist(), act.tolist(), p)


def _bump(f, arr, idx, rng):
    out = arr.copy()
    delta = int(rng.integers(1, f.characteristic or 5))
    out[idx] = f.scalar(out[idx] + delta)
    return out


def mutate_algebra(a, rng):
    """Change one constant of the differential, multiplication or unit of ``a``.

    Returns None when the change does not survive construction (for example a
    differential entry of the wrong degree, which the graded storage drops).
    """
    f = a.field
    degs, diff, mult, unit = algebra_tables(a)
    table = rng.choice(["diff", "mult", "mult", "unit"])
    if table == "diff":
        idx = tuple(int(rng.integers(0, s)) for s in diff.shape)
        diff = _bump(f, diff, idx, rng)
    elif table == "mult":
        idx = tuple(int(rng.integers(0, s)) for s in mult.shape)
        mult = _bump(f, mult, idx, rng)
    else:
        idx = (int(rng.integers(0, len(unit))),)
        unit = _bump(f, unit, idx, rng)
    b = algebra_from_total(f, degs, diff, mult, unit, a.locality, a.name)
    if not np.array_equal(b.diff_total, diff):
        return None
    return b, (str(table), idx)


def mutate_module(m, rng):
    """Change one constant of the differential or action of ``m`` (None if dropped)."""
    f, a = m.field, m.algebra
    degs, diff, act = module_tables(m)
    table = rng.choice(["diff", "action", "action"])
    if table == "diff":
        idx = tuple(int(rng.integers(0, s)) for s in diff.shape)
        diff = _bump(f, diff, idx, rng)
    else:
        idx = tuple(int(rng.integers(0, s)) for s in act.shape)
        act = _bump(f, act, idx, rng)
    n = module_from_total(a, degs, diff, act, m.name)
    if not np.array_equal(total_matrix(n.complex), diff) or not np.array_equal(n.total_action(), act):
        return None
    return n, (str(table), idx)


# ------------------------------------------------------------ construction instances


def construction_instances(catalog):
    """Twenty (kind, label, builder) triples covering α, γ̃ and η̃ over catalog factors."""
    from dgsemi.constructions import alpha_map, eta_tilde, gamma_tilde
    from dgsemi.resolutions import semifree_resolution

    def mod(name, role):
        return catalog[name].module(role)

    def ladder(name, role, d):
        e = catalog[name]
        return semifree_resolution(e.algebra, e.module(role), d).ladder

    alpha = [(("T2", "residue"), ("S3", "dualizing")), (("S3", "regular"), ("S3", "dualizing")),
             (("K", "regular"), ("T2", "regular")), (("k", "residue"), ("S3", "residue")),
             (("S3", "dualizing"), ("K", "regular")), (("T3", "residue"), ("T2", "residue")),
             (("K", "regular"), ("K", "regular"))]
    gamma = [(("S3", "dualizing", "dualizing"), ("T2", "residue", "regular")),
             (("S3", "regular", "residue"), ("S3", "dualizing", "regular")),
             (("K", "regular", "regular"), ("T2", "regular", "residue")),
             (("T2", "residue", "residue"), ("T2", "residue", "residue")),
             (("S3", "dualizing", "residue"), ("k", "regular", "regular")),
             (("T3", "regular", "residue"), ("S3", "dualizing", "dualizing")),
             (("K", "regular", "regular"), ("S3", "residue", "dualizing"))]
    eta = [(("S3", "dualizing", 1, "dualizing"), ("T2", "residue", 2, "residue")),
           (("T2", "residue", 3, "regular"), ("S3", "residue", 1, "dualizing")),
           (("S3", "regular", 0, "residue"), ("S3", "dualizing", 1, "regular")),
           (("K", "regular", 2, "regular"), ("T2", "residue", 2, "residue")),
           (("T3", "residue", 2, "residue"), ("k", "regular", 0, "regular")),
           (("S3", "dualizing", 2, "residue"), ("T2", "regular", 1, "residue"))]
    out = []
    for (n1, r1), (n2, r2) in alpha:
        out.append(("alpha", f"α {n1}/{r1} ⊗ {n2}/{r2}",
                    lambda n1=n1, r1=r1, n2=n2, r2=r2: alpha_map(mod(n1, r1), mod(n2, r2))))
    for (n1, x1, y1), (n2, x2, y2) in gamma:
        out.append(("gamma", f"γ̃ {n1}({x1},{y1}) ⊗ {n2}({x2},{y2})",
                    lambda n1=n1, x1=x1, y1=y1, n2=n2, x2=x2, y2=y2:
                    gamma_tilde(mod(n1, x1), mod(n1, y1), mod(n2, x2), mod(n2, y2))))
    for (n1, s1, d1, t1), (n2, s2, d2, t2) in eta:
        out.append(("eta", f"η̃ F_{d1}({n1}/{s1})→{t1} ⊗ F_{d2}({n2}/{s2})→{t2}",
                    lambda n1=n1, s1=s1, d1=d1, t1=t1, n2=n2, s2=s2, d2=d2, t2=t2:
                    eta_tilde(ladder(n1, s1, d1), mod(n1, t1), ladder(n2, s2, d2), mod(n2, t2))))
    return out


def oracle_isomorphism(phi, src, tgt) -> bool:
    """Chain map and degreewise bijective, by oracle elimination on every component."""
    p = src.field.characteristic
    k = phi.degree
    degs = set(src.complex.dims) | {n - k for n in tgt.complex.dims}
    for n in degs:
        m = oracles.to_lists(phi.comp(n), p)
        if not (src.dim(n) == tgt.dim(n + k) == oracles.rank(m, p)):
            return False
        if not (tgt.dim(n + k - 1) and src.dim(n)):
            continue
        left = oracles.matmul(oracles.to_lists(tgt.complex.d(n + k), p), m, p)
        if src.dim(n - 1):
            right = oracles.matmul(oracles.to_lists(phi.comp(n - 1), p),
                                   oracles.to_lists(src.complex.d(n), p), p)
        else:
            right = [[0] * src.dim(n) for _ in range(tgt.dim(n + k - 1))]
        if left != right:
            return False
    return True
