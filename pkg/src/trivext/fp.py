"""Exact dense linear algebra over a prime field F_p.

Everything downstream (algebras, modules, tensor products, syzygies) is
driven by the handful of primitives here: row reduction with deterministic
pivoting, rank/kernel, solving, and quotient spaces with chosen bases.
Matrices are immutable wrappers around int64 numpy arrays holding residues
in [0, p).  The prime is kept small enough that a matrix product never
overflows int64.
"""

from __future__ import annotations

import numpy as np

DEFAULT_PRIME = 32003

# (p-1)^2 * inner_dim must stay below 2^63 for exact int64 matmul; with
# p < 2^20 that allows inner dimensions up to ~8e6, far past desk scale.
_MAX_PRIME = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"modulus {p!r} is not prime")
    if p > _MAX_PRIME:
        raise ValueError(f"prime {p} too large for exact int64 arithmetic")
    return p


def _as_residues(p: int, data) -> np.ndarray:
    a = np.array(data, dtype=np.int64) % p
    return a


class Mat:
    """Immutable dense matrix over F_p; entries are residues in [0, p)."""

    __slots__ = ("p", "a")

    def __init__(self, p: int, data):
        a = _as_residues(p, data)
        if a.ndim != 2:
            raise ValueError(f"expected a 2-d array, got shape {a.shape}")
        a.setflags(write=False)
        self.p = p
        self.a = a

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "Mat":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, p: int, n: int) -> "Mat":
        return cls(p, np.eye(n, dtype=np.int64))

    @classmethod
    def from_rows(cls, p: int, rows) -> "Mat":
        return cls(p, rows)

    @classmethod
    def column(cls, p: int, vec) -> "Mat":
        v = _as_residues(p, vec).reshape(-1, 1)
        return cls(p, v)

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self):
        return self.a.shape

    @property
    def T(self) -> "Mat":
        return Mat(self.p, self.a.T)

    def __matmul__(self, other: "Mat") -> "Mat":
        self._same_field(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        return Mat(self.p, (self.a @ other.a) % self.p)

    def __add__(self, other: "Mat") -> "Mat":
        self._same_field(other)
        return Mat(self.p, self.a + other.a)

    def __sub__(self, other: "Mat") -> "Mat":
        self._same_field(other)
        return Mat(self.p, self.a - other.a)

    def __neg__(self) -> "Mat":
        return Mat(self.p, -self.a)

    def scale(self, c: int) -> "Mat":
        return Mat(self.p, self.a * (c % self.p))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.p == other.p
            and self.shape == other.shape
            and np.array_equal(self.a, other.a)
        )

    def __hash__(self):
        return hash((self.p, self.shape, self.a.tobytes()))

    def _same_field(self, other: "Mat") -> None:
        if self.p != other.p:
            raise ValueError(f"mixed moduli {self.p} and {other.p}")

    def is_zero(self) -> bool:
        return not self.a.any()

    def apply(self, vec: np.ndarray) -> np.ndarray:
        """Apply to a column vector given as a 1-d residue array."""
        return (self.a @ (np.asarray(vec, dtype=np.int64) % self.p)) % self.p

    def rref(self) -> tuple["Mat", tuple[int, ...]]:
        """Reduced row-echelon form and pivot columns.

        Pivoting is deterministic (first nonzero entry in each column), so
        every basis chosen downstream is reproducible.
        """
        r, pivots = _rref(self.a.copy(), self.p)
        return Mat(self.p, r), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> "Mat":
        """Canonical basis of the right kernel, one vector per row."""
        red, pivots = _rref(self.a.copy(), self.p)
        n = self.cols
        free = [c for c in range(n) if c not in pivots]
        if not free:
            return Mat.zeros(self.p, 0, n)
        vecs = np.zeros((len(free), n), dtype=np.int64)
        for i, c in enumerate(free):
            vecs[i, c] = 1
            for j, pc in enumerate(pivots):
                vecs[i, pc] = (-red[j, c]) % self.p
        canon, _ = _rref(vecs, self.p)
        return Mat(self.p, canon)

    def column_space(self) -> "Subspace":
        return Subspace.from_rows(self.p, self.rows, self.a.T)

    def row_space(self) -> "Subspace":
        return Subspace.from_rows(self.p, self.cols, self.a)

    def solve(self, b) -> np.ndarray | None:
        """A particular solution of self @ x = b, or None if inconsistent."""
        bcol = _as_residues(self.p, b).reshape(-1)
        if bcol.shape[0] != self.rows:
            raise ValueError("right-hand side length does not match rows")
        aug = np.hstack([self.a, bcol.reshape(-1, 1)])
        red, pivots = _rref(aug, self.p)
        if self.cols in pivots:
            return None
        x = np.zeros(self.cols, dtype=np.int64)
        for j, pc in enumerate(pivots):
            x[pc] = red[j, self.cols]
        return x

    def solve_matrix(self, b: "Mat") -> "Mat | None":
        """X with self @ X = b, or None if some column is inconsistent."""
        self._same_field(b)
        aug = np.hstack([self.a, b.a])
        red, pivots = _rref(aug, self.p)
        if any(pc >= self.cols for pc in pivots):
            return None
        x = np.zeros((self.cols, b.cols), dtype=np.int64)
        for j, pc in enumerate(pivots):
            x[pc] = red[j, self.cols:]
        return Mat(self.p, x)

    def inverse(self) -> "Mat":
        if self.rows != self.cols:
            raise ValueError("only square matrices are invertible")
        inv = self.solve_matrix(Mat.identity(self.p, self.rows))
        if inv is None or (self.a @ inv.a % self.p != np.eye(self.rows, dtype=np.int64)).any():
            raise ValueError("matrix is singular")
        return inv

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def __repr__(self):
        return f"Mat(p={self.p}, {self.a.tolist()})"


def _rref(a: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """In-place Gauss-Jordan elimination; returns (matrix, pivot columns)."""
    a %= p
    m, n = a.shape
    row = 0
    pivots = []
    for col in range(n):
        if row >= m:
            break
        nz = np.nonzero(a[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + nz[0]
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        inv = pow(int(a[row, col]), p - 2, p)
        a[row] = (a[row] * inv) % p
        others = a[:, col].copy()
        others[row] = 0
        if others.any():
            a -= np.outer(others, a[row])
            a %= p
        pivots.append(col)
        row += 1
    return a, tuple(pivots)


def hstack(mats: list[Mat]) -> Mat:
    p = mats[0].p
    return Mat(p, np.hstack([m.a for m in mats]))


def vstack(mats: list[Mat]) -> Mat:
    p = mats[0].p
    return Mat(p, np.vstack([m.a for m in mats]))


def kron(a: Mat, b: Mat) -> Mat:
    a._same_field(b)
    return Mat(a.p, np.kron(a.a, b.a) % a.p)


def block_diag(mats: list[Mat], p: int | None = None) -> Mat:
    if not mats:
        if p is None:
            raise ValueError("empty block_diag needs an explicit prime")
        return Mat.zeros(p, 0, 0)
    p = mats[0].p
    r = sum(m.rows for m in mats)
    c = sum(m.cols for m in mats)
    out = np.zeros((r, c), dtype=np.int64)
    i = j = 0
    for m in mats:
        out[i:i + m.rows, j:j + m.cols] = m.a
        i += m.rows
        j += m.cols
    return Mat(p, out)


class Subspace:
    """A subspace of F_p^n with a canonical row-echelon basis.

    The basis rows are the reduced row-echelon form of any spanning set, so
    two constructions of the same subspace compare equal entrywise.
    """

    __slots__ = ("p", "ambient", "basis")

    def __init__(self, p: int, ambient: int, basis: Mat):
        self.p = p
        self.ambient = ambient
        self.basis = basis

    @classmethod
    def from_rows(cls, p: int, ambient: int, rows) -> "Subspace":
        if isinstance(rows, Mat):
            m = rows
        else:
            arr = np.asarray(rows, dtype=np.int64)
            if arr.size == 0:
                arr = arr.reshape(0, ambient)
            m = Mat(p, arr.reshape(-1, ambient) if arr.size else arr)
        if m.cols != ambient:
            raise ValueError(f"vectors of length {m.cols} in ambient dim {ambient}")
        red, pivots = m.rref()
        return cls(p, ambient, Mat(p, red.a[: len(pivots)]))

    @classmethod
    def zero(cls, p: int, ambient: int) -> "Subspace":
        return cls(p, ambient, Mat.zeros(p, 0, ambient))

    @classmethod
    def full(cls, p: int, ambient: int) -> "Subspace":
        return cls(p, ambient, Mat.identity(p, ambient))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def pivots(self) -> tuple[int, ...]:
        return tuple(int(np.nonzero(row)[0][0]) for row in self.basis.a)

    def contains(self, vec) -> bool:
        v = _as_residues(self.p, vec).reshape(-1)
        return self.basis.T.solve(v) is not None if self.dim else not v.any()

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis.a)

    def sum(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient dimension mismatch")
        return Subspace.from_rows(self.p, self.ambient, vstack([self.basis, other.basis]))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def rank_and_kernel(m: Mat) -> tuple[int, Subspace]:
    """Rank together with the right kernel; rank + dim kernel = cols."""
    ker = m.kernel()
    return m.cols - ker.rows, Subspace(m.p, m.cols, ker)


def solve(m: Mat, b) -> tuple[np.ndarray | None, Subspace]:
    """Particular solution of m @ x = b (None if unsolvable) plus the kernel."""
    return m.solve(b), rank_and_kernel(m)[1]


def quotient_basis(ambient_dim: int, sub: Subspace) -> tuple[Mat, Mat]:
    """Projection/section pair for F_p^ambient -> F_p^ambient / sub.

    The complement is spanned by the coordinate vectors at the non-pivot
    positions of the canonical basis of ``sub``, so projection @ section is
    the identity and the kernel of the projection is exactly ``sub``.
    """
    if sub.ambient != ambient_dim:
        raise ValueError("subspace ambient dimension mismatch")
    p = sub.p
    pivots = sub.pivots()
    nonpivot = [c for c in range(ambient_dim) if c not in pivots]
    # v - sum_j v[pivot_j] * basis_j kills the subspace; its non-pivot
    # coordinates are the quotient coordinates.
    select = np.zeros((sub.dim, ambient_dim), dtype=np.int64)
    for j, pc in enumerate(pivots):
        select[j, pc] = 1
    reduce = (np.eye(ambient_dim, dtype=np.int64) - sub.basis.a.T @ select) % p
    proj = reduce[nonpivot, :] if nonpivot else np.zeros((0, ambient_dim), dtype=np.int64)
    sect = np.zeros((ambient_dim, len(nonpivot)), dtype=np.int64)
    for i, c in enumerate(nonpivot):
        sect[c, i] = 1
    return Mat(p, proj), Mat(p, sect)
