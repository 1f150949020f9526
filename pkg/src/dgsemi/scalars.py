"""Exact scalars and dense matrices over the rationals or a prime field.

Matrices are plain numpy arrays.  Over F_p they have dtype int64 with
entries in ``[0, p)``; over Q they have dtype object holding reduced
:class:`fractions.Fraction` values.  Elimination is delegated to FLINT
(``python-flint``), which does exact reduced row echelon forms.  Matrices
are first split into the connected blocks of their nonzero pattern, since
the complexes built here are mostly very sparse.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import flint
import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

__all__ = ["Field", "QQ", "GF"]

# int64 matmul stays exact while n * (p-1)^2 < 2^63.
_SMALL_PRIME = 1 << 20
# below this many entries the block decomposition costs more than it saves
_DENSE_ENTRIES = 1024


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """The scalar field: ``characteristic == 0`` means Q, otherwise F_p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and (not _is_prime(p) or p >= 1 << 31):
            raise ValueError(f"characteristic must be 0 or a prime < 2^31, got {p}")

    # ------------------------------------------------------------------ scalars
    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime-field"

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic != 0

    @property
    def dtype(self):
        if self.characteristic == 0 or self.characteristic >= _SMALL_PRIME:
            return object
        return np.int64

    def __str__(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def scalar(self, x):
        """Canonical representative of ``x`` (int, Fraction or "a/b" string)."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        p = self.characteristic
        if p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({p})")
            return (x.numerator * pow(x.denominator, -1, p)) % p
        return int(x) % p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self.characteristic == 0:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.characteristic)

    def sign(self, e: int):
        """(-1)^e as a field scalar."""
        return self.scalar(-1 if e % 2 else 1)

    def to_str(self, x) -> str:
        return str(x)

    # ----------------------------------------------------------------- matrices
    def zeros(self, rows: int, cols: int) -> np.ndarray:
        if self.dtype is object:
            z = np.empty((rows, cols), dtype=object)
            z.fill(self.scalar(0))
            return z
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        m = self.zeros(n, n)
        for i in range(n):
            m[i, i] = self.scalar(1)
        return m

    def zero_vector(self, n: int) -> np.ndarray:
        return self.zeros(n, 1)[:, 0]

    def matrix(self, rows, shape=None) -> np.ndarray:
        """Build a canonical matrix from nested sequences or an array."""
        arr = np.asarray(rows, dtype=object)
        if shape is not None:
            arr = arr.reshape(shape)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
        out = self.zeros(*arr.shape)
        for idx, v in np.ndenumerate(arr):
            out[idx] = self.scalar(v)
        return out

    def reduce(self, m: np.ndarray) -> np.ndarray:
        """Bring an integer/object array to canonical form."""
        p = self.characteristic
        if p == 0:
            return m
        if self.dtype is object:
            return np.vectorize(lambda v: int(v) % p, otypes=[object])(m) if m.size else m
        return np.mod(m, p)

    def reduce_inplace(self, m: np.ndarray) -> np.ndarray:
        """Like :meth:`reduce`, overwriting ``m`` when it holds machine integers."""
        if self.dtype is object:
            return self.reduce(m)
        return np.remainder(m, self.characteristic, out=m)

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[-1] == 0 or (a.ndim and a.shape[0] == 0) or (b.ndim > 1 and b.shape[1] == 0):
            shape = (a.shape[0],) + ((b.shape[1],) if b.ndim > 1 else ())
            return self.zeros(*shape) if len(shape) == 2 else self.zero_vector(shape[0])
        return self.reduce(a.dot(b))

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(a + b)

    def sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(a - b)

    def scale(self, c, a: np.ndarray) -> np.ndarray:
        return self.reduce(a * self.scalar(c))

    def neg(self, a: np.ndarray) -> np.ndarray:
        return self.reduce(-a)

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.size == 0 or b.size == 0:
            return self.zeros(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])
        return self.reduce(np.kron(a, b))

    def is_zero(self, a: np.ndarray) -> bool:
        if self.dtype is object:
            return not np.any(a != 0)
        return not a.any()

    # ----------------------------------------------------------- FLINT bridge
    def _to_flint(self, m: np.ndarray):
        r, c = m.shape
        if self.characteristic == 0:
            return flint.fmpq_mat(r, c, [flint.fmpq(v.numerator, v.denominator) for v in m.ravel()])
        return flint.nmod_mat(r, c, [int(v) for v in m.ravel()], self.characteristic)

    def _from_flint(self, fm, rows: int, cols: int) -> np.ndarray:
        out = self.zeros(rows, cols)
        if rows * cols == 0:
            return out
        if self.characteristic == 0:
            vals = [Fraction(int(v.p), int(v.q)) for v in fm.entries()]
            out[:, :] = np.array(vals, dtype=object).reshape(rows, cols)
        else:
            out[:, :] = np.array([int(v) for v in fm.entries()], dtype=out.dtype).reshape(rows, cols)
        return out

    # ------------------------------------------------------------- elimination
    def _components(self, m: np.ndarray) -> list[tuple[np.ndarray, np.ndarray]]:
        """Row and column index sets of the connected blocks of the nonzero pattern."""
        rows, cols = np.nonzero(m)
        nr = m.shape[0]
        g = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols + nr)), shape=(nr + m.shape[1],) * 2)
        _, label = connected_components(g, directed=False)
        # rows and columns carrying a nonzero, grouped by block
        used_r = np.unique(rows)
        used_c = np.unique(cols)
        lr, lc = label[used_r], label[used_c + nr]
        out = []
        order_r, order_c = np.argsort(lr, kind="stable"), np.argsort(lc, kind="stable")
        keys_r, starts_r = np.unique(lr[order_r], return_index=True)
        keys_c, starts_c = np.unique(lc[order_c], return_index=True)
        rs = np.split(used_r[order_r], starts_r[1:])
        cs = np.split(used_c[order_c], starts_c[1:])
        for r, c in zip(rs, cs):
            out.append((r, c))
        return out

    def rank(self, m: np.ndarray) -> int:
        if m.size == 0 or self.is_zero(m):
            return 0
        if m.size <= _DENSE_ENTRIES:
            return int(self._to_flint(m).rank())
        total = 0
        for r, c in self._components(m):
            if len(r) == 1 or len(c) == 1:
                total += 1
            else:
                total += int(self._to_flint(m[np.ix_(r, c)]).rank())
        return total

    def _rref_dense(self, m: np.ndarray) -> np.ndarray:
        fm, r = self._to_flint(m).rref()
        return self._from_flint(fm, *m.shape)[: int(r)]

    def rref(self, m: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form (nonzero rows only) and pivot columns."""
        rows, cols = m.shape
        if m.size == 0 or self.is_zero(m):
            return self.zeros(0, cols), []
        if m.size <= _DENSE_ENTRIES:
            red = self._rref_dense(m)
            return red, (red != 0).argmax(axis=1).tolist()
        # the reduced echelon form of a block matrix is assembled from its blocks
        blocks, pivots = [], []
        for r, c in self._components(m):
            sub = m[np.ix_(r, c)]
            if len(r) == 1:
                red = self.scale(self.inv(sub[0, 0]), sub)
            else:
                red = self._rref_dense(sub)
            full = self.zeros(red.shape[0], cols)
            full[:, c] = red
            blocks.append(full)
            pivots.append(c[(red != 0).argmax(axis=1)])
        pivots = np.concatenate(pivots)
        order = np.argsort(pivots, kind="stable")
        return np.concatenate(blocks)[order], pivots[order].tolist()

    def kernel_basis(self, m: np.ndarray) -> np.ndarray:
        """Columns spanning the null space, in the canonical echelon basis."""
        rows, cols = m.shape
        red, pivots = self.rref(m)
        piv = set(pivots)
        free = [j for j in range(cols) if j not in piv]
        out = self.zeros(cols, len(free))
        if free:
            out[free, range(len(free))] = self.scalar(1)
            if pivots:
                out[pivots, :] = self.neg(red[:, free])
        return out

    def image_basis(self, m: np.ndarray) -> np.ndarray:
        """Columns spanning the column space: the reduced echelon basis of it."""
        red, _ = self.rref(m.T.copy())
        return red.T.copy()

    def pivot_columns(self, m: np.ndarray) -> list[int]:
        return self.rref(m)[1]

    def solve(self, m: np.ndarray, b: np.ndarray):
        """Some x with ``m @ x == b``, or None.  ``b`` may be a vector or a matrix."""
        vec = b.ndim == 1
        bb = b.reshape(-1, 1) if vec else b
        rows, cols = m.shape
        if bb.shape[0] != rows:
            raise ValueError("right-hand side has the wrong length")
        k = bb.shape[1]
        if rows == 0:
            x = self.zeros(cols, k)
            return x[:, 0] if vec else x
        aug = np.concatenate([m, bb], axis=1)
        red, pivots = self.rref(aug)
        if any(pc >= cols for pc in pivots):
            return None
        x = self.zeros(cols, k)
        for i, pc in enumerate(pivots):
            x[pc, :] = red[i, cols:]
        return x[:, 0] if vec else x

    def complement_columns(self, sub: np.ndarray, ambient: np.ndarray) -> np.ndarray:
        """Columns of ``ambient`` extending a basis of span(sub) to span(sub + ambient)."""
        n_sub = sub.shape[1]
        both = np.concatenate([sub, ambient], axis=1)
        if both.shape[1] == 0:
            return ambient[:, :0]
        pivots = self.pivot_columns(both)
        keep = [pc - n_sub for pc in pivots if pc >= n_sub]
        return ambient[:, keep]


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)
