"""Symplectic vector spaces over F_p, their Lagrangians and group elements.

The standard space F_p^{2n} carries the gram matrix J = [[0, I], [-I, 0]] and
form(u, v) = u @ J @ v.  The doubled space is the same vector space squared
with gram diag(-J, J); graphs of group elements and the diagonal are
Lagrangians there.
"""

from __future__ import annotations

from itertools import product as _cartesian

import numpy as np

from .errors import DimensionMismatch, EnumerationTooLarge
from .field import Fp, FpMatrix, SquareClass, Subspace

LAGRANGIAN_CAP = 100_000
GROUP_CAP = 100_000


def standard_gram(field: Fp, n: int) -> FpMatrix:
    eye = np.eye(n, dtype=np.int64)
    z = np.zeros((n, n), dtype=np.int64)
    return FpMatrix(field, np.block([[z, eye], [-eye, z]]))


class SymplecticSpace:
    """F_p^dim with a fixed invertible antisymmetric gram matrix."""

    __slots__ = ("field", "gram", "_doubled", "_lagrangians")

    def __init__(self, field: Fp, n: int | None = None, gram: FpMatrix | None = None) -> None:
        self.field = field
        if gram is None:
            if n is None or n < 1:
                raise DimensionMismatch("need n >= 1 or an explicit gram matrix")
            gram = standard_gram(field, n)
        p = field.p
        a = gram.a
        if a.shape[0] != a.shape[1] or a.shape[0] % 2:
            raise DimensionMismatch("gram must be square of even dimension")
        if np.any((a + a.T) % p) or np.any(a.diagonal() % p):
            raise DimensionMismatch("gram must be alternating")
        if gram.det() == 0:
            raise DimensionMismatch("gram must be nondegenerate")
        self.gram = gram
        self._doubled: SymplecticSpace | None = None
        self._lagrangians: list[Lagrangian] | None = None

    @property
    def dim(self) -> int:
        return self.gram.nrows

    @property
    def n(self) -> int:
        return self.dim // 2

    def form(self, u, v) -> int:
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        return int((u @ self.gram.a @ v) % self.field.p)

    def subspace(self, rows) -> Subspace:
        return Subspace.from_rows(self.field, self.dim, rows)

    def is_isotropic(self, sub: Subspace) -> bool:
        b = sub.basis.a
        return not np.any((b @ self.gram.a @ b.T) % self.field.p)

    def lagrangian(self, rows) -> "Lagrangian":
        sub = self.subspace(rows)
        return Lagrangian(self, sub)

    def standard_lagrangian(self) -> "Lagrangian":
        rows = np.zeros((self.n, self.dim), dtype=np.int64)
        rows[:, : self.n] = np.eye(self.n, dtype=np.int64)
        return self.lagrangian(rows)

    def symp_perp(self, sub: Subspace) -> Subspace:
        """{v : form(b, v) = 0 for all basis vectors b}."""
        return FpMatrix(self.field, (sub.basis.a @ self.gram.a) % self.field.p).kernel()

    def element(self, mat) -> "SpElement":
        return SpElement(self, FpMatrix(self.field, mat))

    def identity(self) -> "SpElement":
        return self.element(np.eye(self.dim, dtype=np.int64))

    def transvection(self, v, lam: int = 1) -> "SpElement":
        """x -> x + lam * form(x, v) * v."""
        p = self.field.p
        v = np.asarray(v, dtype=np.int64) % p
        jv = (self.gram.a @ v) % p
        mat = (np.eye(self.dim, dtype=np.int64) + (lam % p) * np.outer(v, jv)) % p
        return self.element(mat)

    def order(self) -> int:
        p, n = self.field.p, self.n
        out = p ** (n * n)
        for i in range(1, n + 1):
            out *= p ** (2 * i) - 1
        return out

    def lagrangian_count(self) -> int:
        p, n = self.field.p, self.n
        out = 1
        for i in range(1, n + 1):
            out *= p**i + 1
        return out

    def all_lagrangians(self, cap: int = LAGRANGIAN_CAP) -> list["Lagrangian"]:
        """Every Lagrangian, by incremental isotropic extension with dedup."""
        if self.lagrangian_count() > cap:
            raise EnumerationTooLarge(
                f"{self.lagrangian_count()} Lagrangians exceeds cap {cap}"
            )
        if self._lagrangians is not None:
            return self._lagrangians
        level: set[Subspace] = {Subspace.zero(self.field, self.dim)}
        for _ in range(self.n):
            nxt: set[Subspace] = set()
            for sub in level:
                perp = self.symp_perp(sub)
                for v in perp.vectors():
                    if not np.any(v) or sub.contains(v):
                        continue
                    nxt.add(sub + Subspace.from_rows(self.field, self.dim, v[None, :]))
            level = nxt
        out = sorted(
            (Lagrangian(self, sub) for sub in level),
            key=lambda l: l.sub.basis.a.tobytes(),
        )
        assert len(out) == self.lagrangian_count()
        self._lagrangians = out
        return out

    def random_element(self, rng) -> "SpElement":
        """Uniformly random group element via a random symplectic basis."""
        rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
        p = self.field.p
        es: list[np.ndarray] = []
        fs: list[np.ndarray] = []
        cons = np.zeros((0, self.dim), dtype=np.int64)
        for _ in range(self.n):
            ker = FpMatrix(self.field, cons).kernel() if len(cons) else Subspace.full(
                self.field, self.dim
            )
            kb = ker.basis.a
            while True:
                e = (rng.integers(0, p, kb.shape[0]) @ kb) % p
                if np.any(e):
                    break
            while True:
                f = (rng.integers(0, p, kb.shape[0]) @ kb) % p
                s = self.form(e, f)
                if s:
                    break
            f = (f * self.field.inv(s)) % p
            es.append(e)
            fs.append(f)
            cons = np.vstack([cons, (e @ self.gram.a) % p, (f @ self.gram.a) % p])
        mat = np.stack(es + fs, axis=1)
        return self.element(mat)

    def random_lagrangian(self, rng) -> "Lagrangian":
        rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
        return self.random_element(rng).image(self.standard_lagrangian())

    def elements(self, cap: int = GROUP_CAP) -> list["SpElement"]:
        """The whole group, exhaustively; guarded by the order formula."""
        order = self.order()
        if order > cap:
            raise EnumerationTooLarge(f"group order {order} exceeds cap {cap}")
        if self.n == 1 and self.gram == standard_gram(self.field, 1):
            p = self.field.p
            out = []
            for a, b, c, d in _cartesian(range(p), repeat=4):
                if (a * d - b * c) % p == 1:
                    out.append(self.element([[a, b], [c, d]]))
            assert len(out) == order
            return out
        return self._bfs_elements(order)

    def _bfs_elements(self, order: int) -> list["SpElement"]:
        p = self.field.p
        dirs: list[np.ndarray] = []
        eye = np.eye(self.dim, dtype=np.int64)
        for i in range(self.dim):
            dirs.append(eye[i])
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                dirs.append((eye[i] + eye[j]) % p)
                dirs.append((eye[i] - eye[j]) % p)
        gens = [self.transvection(v).mat.a for v in dirs]
        start = np.eye(self.dim, dtype=np.int64)
        seen = {start.tobytes(): start}
        frontier = [start]
        while frontier:
            nxt = []
            for m in frontier:
                for g in gens:
                    h = (g @ m) % p
                    key = h.tobytes()
                    if key not in seen:
                        seen[key] = h
                        nxt.append(h)
            frontier = nxt
        if len(seen) != order:
            raise RuntimeError(
                f"transvection closure found {len(seen)} elements, expected {order}"
            )
        return [self.element(m) for m in seen.values()]

    def doubled(self) -> "SymplecticSpace":
        """The same space squared, with gram diag(-J, J)."""
        if self._doubled is None:
            j = self.gram.a
            z = np.zeros_like(j)
            self._doubled = SymplecticSpace(
                self.field, gram=FpMatrix(self.field, np.block([[-j, z], [z, j]]))
            )
        return self._doubled

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SymplecticSpace)
            and other.field == self.field
            and other.gram == self.gram
        )

    def __hash__(self) -> int:
        return hash(("SymplecticSpace", self.field.p, self.gram.a.tobytes()))

    def __repr__(self) -> str:
        return f"SymplecticSpace(p={self.field.p}, dim={self.dim})"


class Lagrangian:
    """A maximal isotropic subspace, canonicalized through its rref basis."""

    __slots__ = ("space", "sub")

    def __init__(self, space: SymplecticSpace, sub: Subspace) -> None:
        if sub.dim != space.n:
            raise DimensionMismatch(f"Lagrangian must have dim {space.n}, got {sub.dim}")
        if not space.is_isotropic(sub):
            raise DimensionMismatch("subspace is not isotropic")
        self.space = space
        self.sub = sub

    @property
    def basis(self) -> FpMatrix:
        return self.sub.basis

    @property
    def dim(self) -> int:
        return self.sub.dim

    def transform(self, g: "SpElement") -> "Lagrangian":
        rows = (self.sub.basis.a @ g.mat.a.T) % self.space.field.p
        return Lagrangian(self.space, Subspace.from_rows(self.space.field, self.space.dim, rows))

    def doubled(self) -> "Lagrangian":
        """The Lagrangian {(a, b) : a, b in self} of the doubled space."""
        b = self.sub.basis.a
        k, d = b.shape
        rows = np.zeros((2 * k, 2 * d), dtype=np.int64)
        rows[:k, :d] = b
        rows[k:, d:] = b
        w = self.space.doubled()
        return Lagrangian(w, Subspace.from_rows(w.field, w.dim, rows))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Lagrangian)
            and other.space == self.space
            and other.sub == self.sub
        )

    def __hash__(self) -> int:
        return hash(("Lagrangian", hash(self.space), hash(self.sub)))

    def __repr__(self) -> str:
        return f"Lagrangian(p={self.space.field.p},\n{self.sub.basis.a})"


class SpElement:
    """An element of Sp(V), validated at construction."""

    __slots__ = ("space", "mat")

    def __init__(self, space: SymplecticSpace, mat: FpMatrix) -> None:
        p = space.field.p
        if mat.shape != (space.dim, space.dim):
            raise DimensionMismatch("wrong matrix size for this space")
        if np.any((mat.a.T @ space.gram.a @ mat.a - space.gram.a) % p):
            raise DimensionMismatch("matrix does not preserve the symplectic form")
        self.space = space
        self.mat = mat

    def __mul__(self, other: "SpElement") -> "SpElement":
        if other.space != self.space:
            raise DimensionMismatch("elements of different spaces")
        return SpElement(self.space, self.mat @ other.mat)

    def inv(self) -> "SpElement":
        return SpElement(self.space, self.mat.inv())

    def apply(self, v) -> np.ndarray:
        return (self.mat.a @ np.asarray(v, dtype=np.int64)) % self.space.field.p

    def image(self, l: Lagrangian) -> Lagrangian:
        return l.transform(self)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.mat.a, np.eye(self.space.dim, dtype=np.int64)))

    def graph(self) -> Lagrangian:
        """The graph {(x, gx)} as a Lagrangian of the doubled space."""
        d = self.space.dim
        rows = np.hstack([np.eye(d, dtype=np.int64), self.mat.a.T])
        w = self.space.doubled()
        return Lagrangian(w, Subspace.from_rows(w.field, w.dim, rows))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SpElement)
            and other.space == self.space
            and other.mat == self.mat
        )

    def __hash__(self) -> int:
        return hash(("SpElement", hash(self.space), self.mat.a.tobytes()))

    def __repr__(self) -> str:
        return f"SpElement(p={self.space.field.p},\n{self.mat.a})"


def diagonal_lagrangian(space: SymplecticSpace) -> Lagrangian:
    """The diagonal {(x, x)} inside the doubled space."""
    return space.identity().graph()


def kernel_of_displacement(g: SpElement) -> Subspace:
    """ker(g - 1) as a subspace of V."""
    eye = np.eye(g.space.dim, dtype=np.int64)
    return FpMatrix(g.space.field, g.mat.a - eye).kernel()


def displacement_disc(g: SpElement, complement: Subspace | None = None) -> SquareClass:
    """Discriminant of (v, w) -> form((g-1)v, w) on a complement of ker(g-1).

    The induced pairing on V / ker(g-1) is symmetric and nondegenerate; its
    determinant mod squares does not depend on the chosen complement.  For the
    identity this is the class of 1.
    """
    space = g.space
    p = space.field.p
    ker = kernel_of_displacement(g)
    if complement is None:
        complement = ker.complement_std()
    if complement.dim != space.dim - ker.dim:
        raise DimensionMismatch("complement has the wrong dimension")
    if (complement + ker).dim != space.dim:
        raise DimensionMismatch("subspace does not complement ker(g-1)")
    if complement.dim == 0:
        return SquareClass.unit(space.field)
    b = complement.basis.a
    moved = (b @ (g.mat.a - np.eye(space.dim, dtype=np.int64)).T) % p
    gram = (moved @ space.gram.a @ b.T) % p
    det = FpMatrix(space.field, gram).det()
    return SquareClass.of(space.field, det)
