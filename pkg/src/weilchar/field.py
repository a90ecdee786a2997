"""Exact dense linear algebra over the prime fields F_p, p an odd prime.

Matrices are immutable numpy int64 arrays with entries reduced mod p.  Subspaces
are canonicalized to their reduced row echelon basis, so equality and hashing
are structural and cheap.  All eliminations are exact; nothing here touches
floating point.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, ZeroFormClass


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


class Fp:
    """The field Z/pZ for an odd prime p with 3 <= p <= 97."""

    __slots__ = ("p", "half", "nonsquare")

    def __init__(self, p: int) -> None:
        if not isinstance(p, int) or not _is_prime(p) or not 3 <= p <= 97:
            raise ValueError(f"p must be an odd prime in [3, 97], got {p!r}")
        self.p = p
        #: the field element 1/2, used for all half-form evaluations
        self.half = (p + 1) // 2
        self.nonsquare = next(a for a in range(2, p) if self.legendre(a) == -1)

    def el(self, x: int) -> int:
        return x % self.p

    def neg(self, x: int) -> int:
        return (-x) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"0 is not invertible mod {self.p}")
        return pow(a, self.p - 2, self.p)

    def legendre(self, a: int) -> int:
        """Quadratic residue symbol of a, by the Euler criterion a^((p-1)/2)."""
        t = pow(a % self.p, (self.p - 1) // 2, self.p)
        return -1 if t == self.p - 1 else t

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Fp) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Fp", self.p))

    def __repr__(self) -> str:
        return f"Fp({self.p})"


class SquareClass:
    """An element of F_p^*/(F_p^*)^2, tagged as the square or nonsquare class.

    The canonical representative is 1 for the square class and the smallest
    nonsquare mod p otherwise.
    """

    __slots__ = ("field", "is_square")

    def __init__(self, field: Fp, is_square: bool) -> None:
        self.field = field
        self.is_square = bool(is_square)

    @classmethod
    def of(cls, field: Fp, a: int) -> "SquareClass":
        if a % field.p == 0:
            raise ZeroFormClass("0 has no square class")
        return cls(field, field.legendre(a) == 1)

    @classmethod
    def unit(cls, field: Fp) -> "SquareClass":
        return cls(field, True)

    @property
    def rep(self) -> int:
        return 1 if self.is_square else self.field.nonsquare

    def times(self, a: int) -> "SquareClass":
        """Multiply by a nonzero field scalar."""
        return SquareClass.of(self.field, self.rep * a)

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if self.field != other.field:
            raise DimensionMismatch("square classes over different fields")
        return SquareClass(self.field, self.is_square == other.is_square)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SquareClass)
            and other.field == self.field
            and other.is_square == self.is_square
        )

    def __hash__(self) -> int:
        return hash(("SquareClass", self.field.p, self.is_square))

    def __repr__(self) -> str:
        tag = "square" if self.is_square else "nonsquare"
        return f"SquareClass(p={self.field.p}, rep={self.rep}, {tag})"

    def as_dict(self) -> dict:
        return {"rep": self.rep, "is_square": self.is_square}


def _as_array(data, p: int) -> np.ndarray:
    a = np.asarray(data, dtype=np.int64) % p
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d array, got shape {a.shape}")
    return a


class FpMatrix:
    """An immutable matrix over F_p backed by a numpy int64 array."""

    __slots__ = ("field", "a")

    def __init__(self, field: Fp, data) -> None:
        self.field = field
        arr = _as_array(data, field.p)
        arr.setflags(write=False)
        self.a = arr

    @classmethod
    def identity(cls, field: Fp, n: int) -> "FpMatrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, field: Fp, nrows: int, ncols: int) -> "FpMatrix":
        return cls(field, np.zeros((nrows, ncols), dtype=np.int64))

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    @property
    def nrows(self) -> int:
        return self.a.shape[0]

    @property
    def ncols(self) -> int:
        return self.a.shape[1]

    @property
    def T(self) -> "FpMatrix":
        return FpMatrix(self.field, self.a.T)

    def _check(self, other: "FpMatrix") -> None:
        if not isinstance(other, FpMatrix) or other.field != self.field:
            raise DimensionMismatch("matrix operands over different fields")

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        self._check(other)
        return FpMatrix(self.field, self.a + other.a)

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        self._check(other)
        return FpMatrix(self.field, self.a - other.a)

    def __neg__(self) -> "FpMatrix":
        return FpMatrix(self.field, -self.a)

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise DimensionMismatch("inner dimensions differ")
        return FpMatrix(self.field, self.a @ other.a)

    def scale(self, c: int) -> "FpMatrix":
        return FpMatrix(self.field, self.a * (c % self.field.p))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FpMatrix)
            and other.field == self.field
            and other.shape == self.shape
            and bool(np.array_equal(other.a, self.a))
        )

    def __hash__(self) -> int:
        return hash(("FpMatrix", self.field.p, self.shape, self.a.tobytes()))

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.field.p},\n{self.a})"

    def tolist(self) -> list[list[int]]:
        return self.a.tolist()

    def rref(self) -> tuple["FpMatrix", tuple[int, ...]]:
        """Reduced row echelon form and the tuple of pivot column indices."""
        p = self.field.p
        a = self.a.copy()
        nrows, ncols = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            nz = np.nonzero(a[r:, c])[0]
            if nz.size == 0:
                continue
            pr = r + int(nz[0])
            if pr != r:
                a[[r, pr]] = a[[pr, r]]
            a[r] = (a[r] * self.field.inv(int(a[r, c]))) % p
            col = a[:, c].copy()
            col[r] = 0
            a = (a - np.outer(col, a[r])) % p
            pivots.append(c)
            r += 1
        return FpMatrix(self.field, a), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> "Subspace":
        """The right null space {x : A x = 0} as a subspace of F_p^ncols."""
        p = self.field.p
        red, pivots = self.rref()
        free = [c for c in range(self.ncols) if c not in pivots]
        rows = np.zeros((len(free), self.ncols), dtype=np.int64)
        for i, fc in enumerate(free):
            rows[i, fc] = 1
            for j, pc in enumerate(pivots):
                rows[i, pc] = (-red.a[j, fc]) % p
        return Subspace.from_rows(self.field, self.ncols, rows)

    def det(self) -> int:
        if self.nrows != self.ncols:
            raise DimensionMismatch("determinant of a non-square matrix")
        p = self.field.p
        a = self.a.copy()
        n = self.nrows
        d = 1
        for c in range(n):
            nz = np.nonzero(a[c:, c])[0]
            if nz.size == 0:
                return 0
            pr = c + int(nz[0])
            if pr != c:
                a[[c, pr]] = a[[pr, c]]
                d = (-d) % p
            piv = int(a[c, c])
            d = (d * piv) % p
            inv = self.field.inv(piv)
            col = a[c + 1 :, c].copy()
            a[c + 1 :] = (a[c + 1 :] - np.outer((col * inv) % p, a[c])) % p
        return d

    def inv(self) -> "FpMatrix":
        if self.nrows != self.ncols:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.nrows
        aug = FpMatrix(self.field, np.hstack([self.a, np.eye(n, dtype=np.int64)]))
        red, pivots = aug.rref()
        if len(pivots) < n or pivots[:n] != tuple(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return FpMatrix(self.field, red.a[:, n:])


class RowSolver:
    """Solves y @ M = d over F_p for a fixed M and many right hand sides d.

    Gaussian elimination on M^T is done once; each solve is then a matrix
    product plus a consistency check on the non-pivot rows.
    """

    __slots__ = ("field", "nrows", "ncols", "tableau", "reduced", "pivots", "rank")

    def __init__(self, M: FpMatrix) -> None:
        self.field = M.field
        p = M.field.p
        self.nrows = M.nrows  # length of the unknown y
        self.ncols = M.ncols  # length of the right hand side d
        a = M.a.T.copy()  # ncols x nrows
        e = np.eye(self.ncols, dtype=np.int64)
        pivots: list[int] = []
        r = 0
        for c in range(self.nrows):
            if r == self.ncols:
                break
            nz = np.nonzero(a[r:, c])[0]
            if nz.size == 0:
                continue
            pr = r + int(nz[0])
            if pr != r:
                a[[r, pr]] = a[[pr, r]]
                e[[r, pr]] = e[[pr, r]]
            inv = self.field.inv(int(a[r, c]))
            a[r] = (a[r] * inv) % p
            e[r] = (e[r] * inv) % p
            col = a[:, c].copy()
            col[r] = 0
            a = (a - np.outer(col, a[r])) % p
            e = (e - np.outer(col, e[r])) % p
            pivots.append(c)
            r += 1
        self.tableau = e
        self.reduced = a
        self.pivots = tuple(pivots)
        self.rank = len(pivots)

    def solve(self, d) -> np.ndarray | None:
        """One solution y of y @ M = d, or None if the system is inconsistent."""
        p = self.field.p
        d = np.asarray(d, dtype=np.int64) % p
        t = (self.tableau @ d) % p
        if np.any(t[self.rank :]):
            return None
        y = np.zeros(self.nrows, dtype=np.int64)
        y[list(self.pivots)] = t[: self.rank]
        return y

    def solve_many(self, D: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Solutions for each row of D: (Y, ok) with Y[i] valid iff ok[i]."""
        p = self.field.p
        D = np.asarray(D, dtype=np.int64) % p
        T = (D @ self.tableau.T) % p
        ok = ~np.any(T[:, self.rank :], axis=1) if self.rank < self.ncols else np.ones(len(D), bool)
        Y = np.zeros((len(D), self.nrows), dtype=np.int64)
        if self.pivots:
            Y[:, list(self.pivots)] = T[:, : self.rank]
        return Y, ok


class Subspace:
    """A subspace of F_p^ambient held as its canonical rref basis (rows)."""

    __slots__ = ("field", "ambient", "basis", "pivots", "_solver")

    def __init__(self, field: Fp, ambient: int, basis: FpMatrix, pivots: tuple[int, ...]) -> None:
        self.field = field
        self.ambient = ambient
        self.basis = basis
        self.pivots = pivots
        self._solver: RowSolver | None = None

    @classmethod
    def from_rows(cls, field: Fp, ambient: int, rows) -> "Subspace":
        arr = np.asarray(rows, dtype=np.int64)
        if arr.size == 0:
            arr = np.zeros((0, ambient), dtype=np.int64)
        else:
            arr = arr.reshape(-1, ambient) % field.p
        red, pivots = FpMatrix(field, arr).rref()
        return cls(field, ambient, FpMatrix(field, red.a[: len(pivots)]), pivots)

    @classmethod
    def zero(cls, field: Fp, ambient: int) -> "Subspace":
        return cls.from_rows(field, ambient, np.zeros((0, ambient), dtype=np.int64))

    @classmethod
    def full(cls, field: Fp, ambient: int) -> "Subspace":
        return cls.from_rows(field, ambient, np.eye(ambient, dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def coset_rep(self, v) -> np.ndarray:
        """The canonical representative of v + self: zeros at pivot coordinates."""
        p = self.field.p
        v = np.asarray(v, dtype=np.int64) % p
        for row, c in zip(self.basis.a, self.pivots):
            coef = int(v[c])
            if coef:
                v = (v - coef * row) % p
        return v

    def contains(self, v) -> bool:
        return not np.any(self.coset_rep(v))

    def coordinates(self, v) -> np.ndarray | None:
        """Coefficients of v in the canonical basis, or None if v is outside."""
        if self._solver is None:
            self._solver = RowSolver(self.basis)
        return self._solver.solve(v)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.from_rows(
            self.field, self.ambient, np.vstack([self.basis.a, other.basis.a])
        )

    def perp_dot(self) -> "Subspace":
        """Orthogonal complement for the standard dot product."""
        return self.basis.kernel()

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return (self.perp_dot() + other.perp_dot()).perp_dot()

    def complement_std(self) -> "Subspace":
        """The complement spanned by standard basis vectors off the pivot set."""
        rows = np.eye(self.ambient, dtype=np.int64)[
            [c for c in range(self.ambient) if c not in self.pivots]
        ]
        return Subspace.from_rows(self.field, self.ambient, rows)

    def vectors(self) -> np.ndarray:
        """All p^dim member vectors as an array of shape (p^dim, ambient)."""
        p, k = self.field.p, self.dim
        if k == 0:
            return np.zeros((1, self.ambient), dtype=np.int64)
        coefs = np.indices((p,) * k).reshape(k, -1).T
        return (coefs @ self.basis.a) % p

    def _check(self, other: "Subspace") -> None:
        if other.field != self.field or other.ambient != self.ambient:
            raise DimensionMismatch("subspaces of different ambient spaces")

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(row) for row in self.basis.a)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subspace)
            and other.field == self.field
            and other.ambient == self.ambient
            and other.basis == self.basis
        )

    def __hash__(self) -> int:
        return hash(("Subspace", self.field.p, self.ambient, self.basis.a.tobytes()))

    def __repr__(self) -> str:
        return f"Subspace(p={self.field.p}, dim={self.dim} of {self.ambient},\n{self.basis.a})"
