"""Quadratic spaces over F_p: diagonalization, Witt invariants, Weil indices.

A quadratic space is carried by its symmetric gram matrix; the form value at v
is v @ gram @ v, and psi(half * value) is the phase summed by the Weil index.
Degenerate grams are allowed everywhere; invariants refer to the nondegenerate
part obtained by splitting off the radical.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .characters import AdditiveCharacter, approx_eq
from .errors import DimensionMismatch, EnumerationTooLarge
from .field import Fp, FpMatrix, SquareClass, Subspace

BRUTE_CAP = 10**6


class QuadraticSpace:
    """A finite-dimensional F_p space with a symmetric bilinear gram matrix."""

    __slots__ = ("field", "gram")

    def __init__(self, field: Fp, gram) -> None:
        g = gram if isinstance(gram, FpMatrix) else FpMatrix(field, gram)
        if g.nrows != g.ncols:
            raise DimensionMismatch("gram must be square")
        if np.any((g.a - g.a.T) % field.p):
            raise DimensionMismatch("gram must be symmetric")
        self.field = field
        self.gram = g

    @classmethod
    def zero(cls, field: Fp, dim: int = 0) -> "QuadraticSpace":
        return cls(field, np.zeros((dim, dim), dtype=np.int64))

    @classmethod
    def diagonal(cls, field: Fp, entries) -> "QuadraticSpace":
        return cls(field, np.diag(np.asarray(list(entries), dtype=np.int64) % field.p))

    @property
    def dim(self) -> int:
        return self.gram.nrows

    def value(self, v) -> int:
        v = np.asarray(v, dtype=np.int64)
        return int((v @ self.gram.a @ v) % self.field.p)

    def pairing(self, u, v) -> int:
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        return int((u @ self.gram.a @ v) % self.field.p)

    def radical(self) -> Subspace:
        return self.gram.kernel()

    def rank(self) -> int:
        return self.gram.rank()

    def nondegenerate_part(self) -> "QuadraticSpace":
        """The restriction to the standard complement of the radical."""
        comp = self.radical().complement_std()
        b = comp.basis.a
        return QuadraticSpace(self.field, (b @ self.gram.a @ b.T) % self.field.p)

    def diagonalize(self) -> list[int]:
        """Nonzero diagonal entries of a congruent diagonal form (one per rank)."""
        nd = self.nondegenerate_part()
        if nd.dim == 0:
            return []
        a, _ = _symmetric_diagonalize(nd.gram.a, self.field)
        return [int(x) for x in a.diagonal()]

    def diagonal_transform(self) -> tuple[FpMatrix, list[int]]:
        """(A, entries) with A invertible and A @ gram @ A.T = diag(entries).

        The entry list has full length dim; zeros mark the radical directions.
        """
        p = self.field.p
        rad = self.radical()
        comp = rad.complement_std()
        nd_gram = (comp.basis.a @ self.gram.a @ comp.basis.a.T) % p
        if comp.dim:
            diag, ops = _symmetric_diagonalize(nd_gram, self.field)
            top = (ops @ comp.basis.a) % p
            entries = [int(x) for x in diag.diagonal()]
        else:
            top = np.zeros((0, self.dim), dtype=np.int64)
            entries = []
        rows = np.vstack([top, rad.basis.a])
        entries += [0] * rad.dim
        return FpMatrix(self.field, rows), entries

    def disc(self) -> SquareClass:
        """Discriminant of the nondegenerate part; class of 1 when rank is 0."""
        d = 1
        for e in self.diagonalize():
            d = (d * e) % self.field.p
        return SquareClass.of(self.field, d) if self.rank() else SquareClass.unit(self.field)

    def __add__(self, other: "QuadraticSpace") -> "QuadraticSpace":
        if other.field != self.field:
            raise DimensionMismatch("direct sum over different fields")
        n, m = self.dim, other.dim
        g = np.zeros((n + m, n + m), dtype=np.int64)
        g[:n, :n] = self.gram.a
        g[n:, n:] = other.gram.a
        return QuadraticSpace(self.field, g)

    def __neg__(self) -> "QuadraticSpace":
        return QuadraticSpace(self.field, (-self.gram.a) % self.field.p)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, QuadraticSpace)
            and other.field == self.field
            and other.gram == self.gram
        )

    def __hash__(self) -> int:
        return hash(("QuadraticSpace", self.field.p, self.gram.a.tobytes()))

    def __repr__(self) -> str:
        return f"QuadraticSpace(p={self.field.p},\n{self.gram.a})"


def _symmetric_diagonalize(gram: np.ndarray, field: Fp) -> tuple[np.ndarray, np.ndarray]:
    """Symmetric row/column elimination of an invertible symmetric matrix.

    Returns (D, A) with D diagonal and A @ gram @ A.T = D.  When every
    remaining diagonal entry is zero, some off-diagonal entry is not, and
    adding that row and column to the pivot position produces 2 * entry != 0
    (characteristic is odd).
    """
    p = field.p
    g = gram.copy()
    n = g.shape[0]
    ops = np.eye(n, dtype=np.int64)

    def addrow(i: int, j: int, c: int) -> None:
        g[i] = (g[i] + c * g[j]) % p
        g[:, i] = (g[:, i] + c * g[:, j]) % p
        ops[i] = (ops[i] + c * ops[j]) % p

    def swap(i: int, j: int) -> None:
        g[[i, j]] = g[[j, i]]
        g[:, [i, j]] = g[:, [j, i]]
        ops[[i, j]] = ops[[j, i]]

    for k in range(n):
        if g[k, k] == 0:
            cand = [j for j in range(k + 1, n) if g[j, j]]
            if cand:
                swap(k, cand[0])
            else:
                j = next(j for j in range(k + 1, n) if g[k, j])
                addrow(k, j, 1)
        piv = int(g[k, k])
        inv = field.inv(piv)
        for j in range(k + 1, n):
            if g[j, k]:
                addrow(j, k, (-g[j, k] * inv) % p)
    return g, ops


def weil_index(char: AdditiveCharacter, q: QuadraticSpace) -> complex:
    """gamma(q), multiplicative over a diagonalization of the nondegenerate part."""
    out = 1 + 0j
    for e in q.diagonalize():
        out *= char.gamma(e)
    return out


def weil_index_bruteforce(
    char: AdditiveCharacter, q: QuadraticSpace, cap: int = BRUTE_CAP
) -> complex:
    """gamma(q) by direct summation of psi(half * q(v, v)) over the whole space.

    Normalization is p^(-rank/2 - dim_radical), so degenerate forms are fine.
    """
    p = char.p
    if p**q.dim > cap:
        raise EnumerationTooLarge(f"{p}^{q.dim} points exceeds cap {cap}")
    if q.dim == 0:
        return 1 + 0j
    vs = np.indices((p,) * q.dim).reshape(q.dim, -1).T % p
    vals = (np.einsum("ij,jk,ik->i", vs, q.gram.a, vs)) % p
    s = complex(char.psi_array((char.field.half * vals) % p).sum())
    rad = q.dim - q.rank()
    return s * float(p) ** (-q.rank() / 2 - rad)


@dataclass(frozen=True, eq=False)
class WittInvariants:
    """Rank, discriminant and Weil index of the nondegenerate part of a form."""

    rank: int
    disc: SquareClass
    gamma: complex

    def __add__(self, other: "WittInvariants") -> "WittInvariants":
        return WittInvariants(self.rank + other.rank, self.disc * other.disc,
                              self.gamma * other.gamma)

    def witt_equal(self, other: "WittInvariants", tol: float = 1e-8) -> bool:
        """Same Witt class: rank parity, Weil index, and compatible disc.

        Representatives of one class whose ranks differ by 2k have
        discriminants differing by (-1)^k, the class of k hyperbolic planes.
        """
        if (self.rank - other.rank) % 2:
            return False
        if not approx_eq(self.gamma, other.gamma, tol):
            return False
        k = (self.rank - other.rank) // 2
        want = other.disc.times(pow(-1, abs(k), self.disc.field.p))
        return self.disc == want

    def same(self, other: "WittInvariants", tol: float = 1e-8) -> bool:
        """Exactly equal rank and disc, approximately equal gamma."""
        return (
            self.rank == other.rank
            and self.disc == other.disc
            and approx_eq(self.gamma, other.gamma, tol)
        )


def witt_invariants(char: AdditiveCharacter, q: QuadraticSpace) -> WittInvariants:
    return WittInvariants(q.rank(), q.disc(), weil_index(char, q))


def hyperbolic_plane(field: Fp) -> QuadraticSpace:
    return QuadraticSpace(field, [[0, 1], [1, 0]])
