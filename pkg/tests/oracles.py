"""Independent reference computations used as test oracles.

Nothing here imports the package's elimination code.  Linear algebra is
plain Gaussian elimination on Python lists over Fraction (for Q) or ints
modulo p, written for clarity rather than speed.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


class Arith:
    def __init__(self, p: int):
        self.p = p

    def norm(self, x):
        if self.p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        return 1 / Fraction(x) if self.p == 0 else pow(int(x), -1, self.p)


def to_lists(m, p: int) -> list[list]:
    ar = Arith(p)
    return [[ar.norm(v) for v in row] for row in m.tolist()] if hasattr(m, "tolist") else \
        [[ar.norm(v) for v in row] for row in m]


def echelon(rows: list[list], p: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form by textbook elimination."""
    ar = Arith(p)
    rows = [[ar.norm(v) for v in r] for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        s = ar.inv(rows[r][c])
        rows[r] = [ar.norm(v * s) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                t = rows[i][c]
                rows[i] = [ar.norm(a - t * b) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m, p: int) -> int:
    rows = to_lists(m, p)
    if not rows or not rows[0]:
        return 0
    return len(echelon(rows, p)[1])


def nullspace(m, p: int, ncols: int | None = None) -> list[list]:
    rows = to_lists(m, p)
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    red, piv = echelon(rows, p) if rows and n else ([], [])
    ar = Arith(p)
    out = []
    for j in range(n):
        if j in piv:
            continue
        v = [ar.norm(0)] * n
        v[j] = ar.norm(1)
        for i, pc in enumerate(piv):
            v[pc] = ar.norm(-red[i][j])
        out.append(v)
    return out


def homology_dims(dims: dict[int, int], diffs: dict[int, object], p: int) -> dict[int, int]:
    """dim H_i = dim C_i - rank d_i - rank d_{i+1}."""
    def rk(i):
        if i not in diffs or not dims.get(i) or not dims.get(i - 1):
            return 0
        return rank(diffs[i], p)
    return {i: n - rk(i) - rk(i + 1) for i, n in dims.items()}


def matmul(a: list[list], b: list[list], p: int) -> list[list]:
    ar = Arith(p)
    if not a or not b:
        return [[ar.norm(0)] * (len(b[0]) if b else 0) for _ in a]
    return [[ar.norm(sum(x * y for x, y in zip(row, col))) for col in zip(*b)] for row in a]


# ------------------------------------------------------------------ tensor products


def tensor_complex(xd, xdiff, yd, ydiff, p: int):
    """x⊗y with basis (p, a, q, b) and ∂(x⊗y) = ∂x⊗y + (-1)^{|x|} x⊗∂y."""
    ar = Arith(p)
    basis: dict[int, list[tuple]] = {}
    for i, j in product(sorted(xd), sorted(yd)):
        for a, b in product(range(xd[i]), range(yd[j])):
            basis.setdefault(i + j, []).append((i, a, j, b))
    dims = {n: len(v) for n, v in basis.items()}
    diffs = {}
    for n, src in basis.items():
        tgt = basis.get(n - 1)
        if not tgt:
            continue
        pos = {t: k for k, t in enumerate(tgt)}
        m = [[ar.norm(0)] * len(src) for _ in tgt]
        for col, (i, a, j, b) in enumerate(src):
            if i in xdiff and xd.get(i - 1):
                dx = to_lists(xdiff[i], p)
                for a2 in range(xd[i - 1]):
                    if dx[a2][a]:
                        m[pos[(i - 1, a2, j, b)]][col] = ar.norm(m[pos[(i - 1, a2, j, b)]][col] + dx[a2][a])
            if j in ydiff and yd.get(j - 1):
                dy = to_lists(ydiff[j], p)
                s = -1 if i % 2 else 1
                for b2 in range(yd[j - 1]):
                    if dy[b2][b]:
                        k = pos[(i, a, j - 1, b2)]
                        m[k][col] = ar.norm(m[k][col] + s * dy[b2][b])
        diffs[n] = m
    return dims, diffs


# ------------------------------------------------------------ axiom brute force


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


def algebra_axioms_broken(degs, diff, mult, unit, p: int) -> set[str]:
    """Axioms violated by total tables: diff[k][j] is the b_k coefficient of ∂b_j,
    mult[k][i][j] the b_k coefficient of b_i b_j."""
    ar = Arith(p)
    n = len(degs)
    z = ar.norm(0)
    D = [[ar.norm(diff[k][j]) for j in range(n)] for k in range(n)]
    T = [[[ar.norm(mult[k][i][j]) for j in range(n)] for i in range(n)] for k in range(n)]
    u = [ar.norm(v) for v in unit]
    bad = set()

    def prod(x, y):
        out = [z] * n
        for i in range(n):
            if x[i] == 0:
                continue
            for j in range(n):
                if y[j] == 0:
                    continue
                for k in range(n):
                    if T[k][i][j]:
                        out[k] = ar.norm(out[k] + x[i] * y[j] * T[k][i][j])
        return out

    def dif(x):
        return [ar.norm(sum(D[k][j] * x[j] for j in range(n))) for k in range(n)]

    def e(i):
        v = [z] * n
        v[i] = ar.norm(1)
        return v

    def add(x, y, s=1):
        return [ar.norm(a + s * b) for a, b in zip(x, y)]

    for j in range(n):
        if any(dif(dif(e(j)))):
            bad.add("differential")
        for k in range(n):
            if D[k][j] and degs[k] != degs[j] - 1:
                bad.add("differential_degree")
    for k, i, j in product(range(n), repeat=3):
        if T[k][i][j] and degs[k] != degs[i] + degs[j]:
            bad.add("grading")
    udeg = {degs[i] for i in range(n) if u[i]}
    if udeg != {0}:
        bad.add("unital")
    else:
        for i in range(n):
            if prod(u, e(i)) != e(i) or prod(e(i), u) != e(i):
                bad.add("unital")
    for i, j, l in product(range(n), repeat=3):
        if prod(prod(e(i), e(j)), e(l)) != prod(e(i), prod(e(j), e(l))):
            bad.add("associative")
            break
    for i, j in product(range(n), repeat=2):
        sw = [ar.norm(_sgn(degs[i] * degs[j]) * v) for v in prod(e(j), e(i))]
        if prod(e(i), e(j)) != sw:
            bad.add("graded_commutative")
        if i == j and degs[i] % 2 and any(prod(e(i), e(i))):
            bad.add("odd_square_zero")
        lhs = dif(prod(e(i), e(j)))
        rhs = add(prod(dif(e(i)), e(j)), prod(e(i), dif(e(j))), _sgn(degs[i]))
        if lhs != rhs:
            bad.add("leibniz")
    return bad


def module_axioms_broken(adegs, adiff, mult, unit, mdegs, mdiff, act, p: int) -> set[str]:
    """act[k][b][j]: the x_k coefficient of b_b·x_j; mdiff[k][j] likewise for ∂."""
    ar = Arith(p)
    n, m = len(adegs), len(mdegs)
    z = ar.norm(0)
    A = [[[ar.norm(act[k][b][j]) for j in range(m)] for b in range(n)] for k in range(m)]
    DM = [[ar.norm(mdiff[k][j]) for j in range(m)] for k in range(m)]
    bad = set()

    def e(i, size):
        v = [z] * size
        v[i] = ar.norm(1)
        return v

    def acts(a, x):
        out = [z] * m
        for b in range(n):
            if a[b] == 0:
                continue
            for j in range(m):
                if x[j] == 0:
                    continue
                for k in range(m):
                    if A[k][b][j]:
                        out[k] = ar.norm(out[k] + a[b] * x[j] * A[k][b][j])
        return out

    def prod(x, y):
        return [ar.norm(sum(mult[k][i][j] * x[i] * y[j] for i in range(n) for j in range(n)))
                for k in range(n)]

    def da(x):
        return [ar.norm(sum(adiff[k][j] * x[j] for j in range(n))) for k in range(n)]

    def dm(x):
        return [ar.norm(sum(DM[k][j] * x[j] for j in range(m))) for k in range(m)]

    u = [ar.norm(v) for v in unit]
    for j in range(m):
        if any(dm(dm(e(j, m)))):
            bad.add("differential")
        if acts(u, e(j, m)) != e(j, m):
            bad.add("unital")
    for i, j, l in product(range(n), range(n), range(m)):
        if acts(prod(e(i, n), e(j, n)), e(l, m)) != acts(e(i, n), acts(e(j, n), e(l, m))):
            bad.add("associative")
            break
    for b, j in product(range(n), range(m)):
        lhs = dm(acts(e(b, n), e(j, m)))
        t1 = acts(da(e(b, n)), e(j, m))
        t2 = acts(e(b, n), dm(e(j, m)))
        rhs = [ar.norm(x + _sgn(adegs[b]) * y) for x, y in zip(t1, t2)]
        if lhs != rhs:
            bad.add("leibniz")
    return bad


# ------------------------------------------------------- Betti numbers by syzygies


def betti_numbers(amult, ideal, mdim: int, act, length: int, p: int) -> list[int]:
    """Minimal Betti numbers of a module over an Artinian local algebra in degree 0.

    ``amult[k][i][j]`` is the algebra table, ``ideal`` a k-basis of the maximal
    ideal, ``act[b]`` the matrix of b on the module.  Each step takes minimal
    generators of the current module (a complement of m·N in N) and passes to
    the kernel of the resulting free cover.
    """
    ar = Arith(p)
    n = len(amult)
    # current module: a subspace (list of vectors) of an ambient space with action matrices
    amb_dim = mdim
    amb_act = [to_lists(x, p) for x in act]
    sub = [[ar.norm(1 if i == j else 0) for i in range(mdim)] for j in range(mdim)]
    out = []
    for _ in range(length + 1):
        if not sub:
            out.append(0)
            sub = []
            continue

        def act_on(vec, coeffs):
            res = [ar.norm(0)] * amb_dim
            for b in range(n):
                if coeffs[b]:
                    col = [ar.norm(sum(amb_act[b][r][c] * vec[c] for c in range(amb_dim))) for r in range(amb_dim)]
                    res = [ar.norm(x + coeffs[b] * y) for x, y in zip(res, col)]
            return res

        msub = [act_on(v, x) for v in sub for x in ideal]
        base = rank(msub, p) if msub else 0
        gens = []
        cur = list(msub)
        for v in sub:
            if rank(cur + [v], p) > (rank(cur, p) if cur else 0):
                cur.append(v)
                gens.append(v)
        beta = len(gens)
        assert base + beta == rank(sub, p)
        out.append(beta)
        # free cover R^beta -> ambient: basis (g, b) ↦ b·gens[g]
        cols = []
        for g in range(beta):
            for b in range(n):
                e = [0] * n
                e[b] = 1
                cols.append(act_on(gens[g], e))
        mat = [list(row) for row in zip(*cols)]
        ker = nullspace(mat, p, beta * n)
        # new ambient R^beta with left multiplication
        new_act = []
        for b in range(n):
            m = [[ar.norm(0)] * (beta * n) for _ in range(beta * n)]
            for g in range(beta):
                for j in range(n):
                    for k in range(n):
                        if amult[k][b][j]:
                            m[g * n + k][g * n + j] = ar.norm(amult[k][b][j])
            new_act.append(m)
        amb_dim, amb_act, sub = beta * n, new_act, ker
    return out
