"""The lattice model of the Weil representation as explicit complex matrices.

Sections over a Lagrangian l are functions on the p^n canonical coset
representatives of V/l (zeros at l's pivot coordinates).  The change-of-model
kernel between l1 and l2 is supported where v - w lands in l1 + l2 and there
equals

    psi(half * (form(a1, v) + form(a2, w))) * p^(-dim(l1 / l1^l2) / 2)

for any splitting v - w = a1 + a2 with a_i in l_i.  The operator of a lifted
group element twists the (g l, l) kernel by g on the first slot and scales by
the lift value; its matrix trace is the brute-force character oracle.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .characters import AdditiveCharacter
from .charformula import CheckReport, diagonal_form
from .errors import DimensionMismatch
from .field import FpMatrix, RowSolver
from .metaplectic import MpElement
from .symplectic import Lagrangian


class SectionBasis:
    """The canonical coset representatives of V/l, indexed in row-major order."""

    __slots__ = ("l", "free", "reps")

    def __init__(self, l: Lagrangian) -> None:
        p = l.space.field.p
        d = l.space.dim
        free = [c for c in range(d) if c not in l.sub.pivots]
        k = len(free)
        coefs = np.indices((p,) * k).reshape(k, -1).T if k else np.zeros((1, 0), np.int64)
        reps = np.zeros((p**k, d), dtype=np.int64)
        if k:
            reps[:, free] = coefs
        reps.setflags(write=False)
        self.l = l
        self.free = tuple(free)
        self.reps = reps

    @property
    def size(self) -> int:
        return len(self.reps)

    def lift(self, i: int) -> np.ndarray:
        return self.reps[i]

    def index(self, v) -> int:
        """Index of the coset of v; reduces v to its canonical representative."""
        p = self.l.space.field.p
        rep = self.l.sub.coset_rep(v)
        out = 0
        for c in self.free:
            out = out * p + int(rep[c])
        return out


class _PairKernel:
    """Cached solver and normalization for the (l1, l2) kernel."""

    __slots__ = ("char", "l1", "l2", "solver", "k1", "b1", "b2", "norm")

    def __init__(self, char: AdditiveCharacter, l1: Lagrangian, l2: Lagrangian) -> None:
        if l1.space != l2.space:
            raise DimensionMismatch("kernel needs Lagrangians of one space")
        self.char = char
        self.l1 = l1
        self.l2 = l2
        self.b1 = l1.sub.basis.a
        self.b2 = l2.sub.basis.a
        self.k1 = self.b1.shape[0]
        self.solver = RowSolver(FpMatrix(l1.space.field, np.vstack([self.b1, self.b2])))
        inter = l1.sub.intersect(l2.sub).dim
        self.norm = float(char.p) ** (-(l1.dim - inter) / 2)

    def values(self, V: np.ndarray, W: np.ndarray) -> np.ndarray:
        """Kernel values row-wise for stacked first/second slot vectors."""
        p = self.char.p
        half = self.char.field.half
        j = self.l1.space.gram.a
        D = (V - W) % p
        Y, ok = self.solver.solve_many(D)
        A1 = (Y[:, : self.k1] @ self.b1) % p
        A2 = (Y[:, self.k1 :] @ self.b2) % p
        q = (np.einsum("ij,ij->i", A1 @ j % p, V) + np.einsum("ij,ij->i", A2 @ j % p, W)) % p
        return np.where(ok, self.char.psi_array((half * q) % p) * self.norm, 0.0)

    def value(self, v, w) -> complex:
        V = np.asarray(v, dtype=np.int64)[None, :]
        W = np.asarray(w, dtype=np.int64)[None, :]
        return complex(self.values(V, W)[0])


@lru_cache(maxsize=512)
def _pair_kernel(char: AdditiveCharacter, l1: Lagrangian, l2: Lagrangian) -> _PairKernel:
    return _PairKernel(char, l1, l2)


def kernel_value(char: AdditiveCharacter, l1: Lagrangian, l2: Lagrangian, v, w) -> complex:
    """The (l1, l2) kernel at arbitrary lifts (v, w); zero off v - w in l1 + l2."""
    return _pair_kernel(char, l1, l2).value(v, w)


def intertwiner(char: AdditiveCharacter, l1: Lagrangian, l2: Lagrangian) -> np.ndarray:
    """Matrix of the change of model from sections over l1 to sections over l2.

    Entry [y, x] is the kernel at (lift(x), lift(y)); composing two of these
    multiplies the matrices in codomain-first order.
    """
    pk = _pair_kernel(char, l1, l2)
    s1 = SectionBasis(l1)
    s2 = SectionBasis(l2)
    V = np.repeat(s1.reps[None, :, :], s2.size, axis=0).reshape(-1, l1.space.dim)
    W = np.repeat(s2.reps[:, None, :], s1.size, axis=1).reshape(-1, l1.space.dim)
    return pk.values(V, W).reshape(s2.size, s1.size)


def weil_operator(e: MpElement, l: Lagrangian | None = None) -> np.ndarray:
    """The operator of (g, t) on sections over l: t(l) times the g-twisted
    (g l, l) kernel, with entry [y, x] at (g lift(x), lift(y))."""
    if l is None:
        l = e.base
    p = e.char.p
    g = e.g
    pk = _pair_kernel(e.char, g.image(l), l)
    basis = SectionBasis(l)
    moved = (basis.reps @ g.mat.a.T) % p
    V = np.repeat(moved[None, :, :], basis.size, axis=0).reshape(-1, l.space.dim)
    W = np.repeat(basis.reps[:, None, :], basis.size, axis=1).reshape(-1, l.space.dim)
    return e.value_at(l) * pk.values(V, W).reshape(basis.size, basis.size)


def trace_oracle(e: MpElement, l: Lagrangian | None = None) -> complex:
    """Brute-force character value: the diagonal sum of the operator matrix."""
    return complex(np.trace(weil_operator(e, l)))


def check_diagonal_kernel(e: MpElement, l: Lagrangian | None = None) -> CheckReport:
    """Diagonal of the untwisted operator kernel against the support form:
    psi(half q(x, x)) * p^(-dim(l / gl^l)/2) on the support, zero elsewhere."""
    if l is None:
        l = e.base
    char = e.char
    p = char.p
    g = e.g
    df = diagonal_form(g, l)
    pk = _pair_kernel(char, g.image(l), l)
    basis = SectionBasis(l)
    moved = (basis.reps @ g.mat.a.T) % p
    diag = pk.values(moved, basis.reps)
    inter = g.image(l).sub.intersect(l.sub).dim
    norm = float(p) ** (-(l.dim - inter) / 2)
    bad = []
    for i, x in enumerate(basis.reps):
        if df.support.contains(x):
            want = char.psi((char.field.half * df.value(x)) % p) * norm
        else:
            want = 0.0
        if abs(diag[i] - want) > 1e-10:
            bad.append({"x": x.tolist(), "got": complex(diag[i]), "want": complex(want)})
    return CheckReport(
        label="diagonal-kernel",
        ok=not bad,
        details={"support_dim": df.support.dim, "checked": basis.size},
        witness=bad or None,
    )
