"""Closed-form character values and the diagonal support form of (g, l).

The trace of the Weil operator of a lifted g has two closed forms: one through
the discriminant of the displacement pairing of g, one through the Maslov
index of (graph(g), diagonal, l + l) in the doubled space.  Both are checked
against the brute-force operator trace elsewhere.

The diagonal support form (S_hat, q) describes where the diagonal of the
operator kernel is supported in V/l and which phases appear there; its dual
form lives on l ^ (g-1)V.  The structural checks of this module tie their
dimensions, Witt invariants and transfer isometry to closed formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Any

import numpy as np

from .characters import AdditiveCharacter, approx_eq
from .errors import SingularGMinusOne
from .field import FpMatrix, RowSolver, SquareClass, Subspace
from .maslov import Orientation, maslov_class, orientation_pairing
from .metaplectic import MpElement, character_factor
from .quadform import QuadraticSpace, witt_invariants
from .symplectic import (
    Lagrangian,
    SpElement,
    diagonal_lagrangian,
    displacement_disc,
    kernel_of_displacement,
)


@dataclass(frozen=True)
class DiagonalForm:
    """The support space and phase form of the diagonal kernel of g at l."""

    g: SpElement
    l: Lagrangian
    #: S_hat = {x in V/l : (g-1)x in g l + l}, inside canonical coset coordinates
    support: Subspace
    #: gram of q(x, y) = form(a + b, y) on the support basis
    gram: FpMatrix
    #: rows: the transfer a + b in l for each support basis vector
    transfer: FpMatrix
    #: S_hat' = l ^ (g-1)V
    dual_support: Subspace
    #: gram of q'(a, b) = form(a, y) with b = (g-1)y, on the dual basis
    dual_gram: FpMatrix

    def form_space(self) -> QuadraticSpace:
        return QuadraticSpace(self.l.space.field, self.gram)

    def dual_form_space(self) -> QuadraticSpace:
        return QuadraticSpace(self.l.space.field, self.dual_gram)

    def value(self, x) -> int:
        """q(x, x) for a vector x of the support (in ambient coordinates)."""
        c = self.support.coordinates(x)
        if c is None:
            raise ValueError("vector is not in the support")
        return int((c @ self.gram.a @ c) % self.l.space.field.p)


def diagonal_form(g: SpElement, l: Lagrangian) -> DiagonalForm:
    space = g.space
    field = space.field
    p = field.p
    d = space.dim
    eye = np.eye(d, dtype=np.int64)
    gm1 = (g.mat.a - eye) % p
    bl = l.sub.basis.a
    gl = g.image(l)

    # support: (g-1)x must fall in g l + l, and x ranges over coset reps of l
    sum_sub = gl.sub + l.sub
    mem = sum_sub.perp_dot().basis.a  # rows u with u . v = 0 iff v in the sum
    cons = [(mem @ gm1) % p] if mem.size else []
    cons.append(eye[list(l.sub.pivots)])
    support = FpMatrix(field, np.vstack([c for c in cons if len(c)])).kernel()

    # decompose (g-1)x = g a + b + (g-1)c with a, b, c in l; q(x, y) = form(a+b, y)
    k = bl.shape[0]
    system = FpMatrix(field, np.vstack([(bl @ g.mat.a.T) % p, bl, (bl @ gm1.T) % p]))
    solver = RowSolver(system)
    sup = support.basis.a
    transfer = np.zeros((support.dim, d), dtype=np.int64)
    for i, x in enumerate(sup):
        y = solver.solve((x @ gm1.T) % p)
        assert y is not None, "support vector has no decomposition"
        transfer[i] = ((y[:k] + y[k : 2 * k]) @ bl) % p
    gram = (transfer @ space.gram.a @ sup.T) % p
    assert not np.any((gram - gram.T) % p), "support form is not symmetric"

    # dual: S' = l ^ (g-1)V with q'(a, b) = form(a, y), b = (g-1)y
    image = Subspace.from_rows(field, d, gm1.T)
    dual_support = l.sub.intersect(image)
    dsolver = RowSolver(FpMatrix(field, gm1.T))
    db = dual_support.basis.a
    pre = np.zeros((dual_support.dim, d), dtype=np.int64)
    for i, b in enumerate(db):
        y = dsolver.solve(b)
        assert y is not None
        pre[i] = y
    dual_gram = (db @ space.gram.a @ pre.T) % p
    assert not np.any((dual_gram - dual_gram.T) % p), "dual form is not symmetric"

    return DiagonalForm(
        g=g,
        l=l,
        support=support,
        gram=FpMatrix(field, gram),
        transfer=FpMatrix(field, transfer),
        dual_support=dual_support,
        dual_gram=FpMatrix(field, dual_gram),
    )


def trace_closed_form(char: AdditiveCharacter, g: SpElement) -> complex:
    """p^(dim ker(g-1)/2) * gamma(1)^(dim V - dim ker - 1) * gamma(disc)."""
    d = g.space.dim
    k = kernel_of_displacement(g).dim
    disc = displacement_disc(g)
    return math.sqrt(char.p) ** k * char.gamma(1) ** (d - k - 1) * char.gamma_class(disc)


def trace_from_factor(e: MpElement, l: Lagrangian | None = None) -> complex:
    """p^(dim ker(g-1)/2) * t(l) * gamma(tau(graph, diagonal, l + l))."""
    k = kernel_of_displacement(e.g).dim
    return math.sqrt(e.char.p) ** k * character_factor(e, l)


@dataclass(frozen=True)
class CheckReport:
    label: str
    ok: bool
    details: dict = dc_field(default_factory=dict)
    witness: Any = None


def check_kernel_dims(g: SpElement, l: Lagrangian) -> CheckReport:
    """Radical and rank of the support form against their closed formulas."""
    df = diagonal_form(g, l)
    space = g.space
    ker = kernel_of_displacement(g)
    lker = l.sub.intersect(ker).dim
    gll = g.image(l).sub.intersect(l.sub).dim
    q = df.form_space()
    want_rad = ker.dim - lker
    want_rank = space.n - ker.dim - gll + 2 * lker
    got_rad = q.dim - q.rank()
    got_rank = q.rank()
    want_dual = space.n - ker.dim + lker
    dual_ok = df.dual_support.dim == want_dual
    ok = got_rad == want_rad and got_rank == want_rank and dual_ok
    return CheckReport(
        label="kernel-dims",
        ok=ok,
        details={
            "radical": (got_rad, want_rad),
            "rank": (got_rank, want_rank),
            "dual_dim": (df.dual_support.dim, want_dual),
            "support_dim": q.dim,
        },
    )


def check_maslov_class(char: AdditiveCharacter, g: SpElement, l: Lagrangian) -> CheckReport:
    """Witt data of the support form vs the Maslov index of (graph, diag, l+l),
    and its discriminant vs (-1)^dim(l ^ (g-1)l) * pairing(gl, l) * disp disc."""
    df = diagonal_form(g, l)
    inv_q = witt_invariants(char, df.form_space())
    mc = maslov_class(char, g.graph(), diagonal_lagrangian(g.space), l.doubled())
    same = inv_q.same(mc.inv)

    space = g.space
    p = space.field.p
    gm1 = (g.mat.a - np.eye(space.dim, dtype=np.int64)) % p
    moved_l = Subspace.from_rows(space.field, space.dim, (l.sub.basis.a @ gm1.T) % p)
    o = Orientation.default(l)
    pair = orientation_pairing(o.transform(g), o)
    sign = pow(-1, l.sub.intersect(moved_l).dim, p)
    want_disc = SquareClass.of(space.field, sign) * pair * displacement_disc(g)
    disc_ok = inv_q.disc == want_disc
    ok = same and disc_ok
    return CheckReport(
        label="maslov-class",
        ok=ok,
        details={
            "support_inv": (inv_q.rank, inv_q.disc.rep, inv_q.gamma),
            "maslov_inv": (mc.inv.rank, mc.inv.disc.rep, mc.inv.gamma),
            "disc_formula": want_disc.rep,
        },
    )


def check_transfer_isometry(g: SpElement, l: Lagrangian) -> CheckReport:
    """The transfer x -> a + b carries the support form to the dual form."""
    df = diagonal_form(g, l)
    p = g.space.field.p
    coords = []
    for row in df.transfer.a:
        c = df.dual_support.coordinates(row)
        if c is None:
            return CheckReport(label="transfer-isometry", ok=False, witness=row.tolist())
        coords.append(c)
    if df.support.dim == 0:
        return CheckReport(label="transfer-isometry", ok=True)
    c = np.asarray(coords, dtype=np.int64)
    pulled = (c @ df.dual_gram.a @ c.T) % p
    ok = bool(np.array_equal(pulled, df.gram.a))
    return CheckReport(label="transfer-isometry", ok=ok,
                       details={"pulled": pulled.tolist(), "gram": df.gram.tolist()})


def check_inverse_identity(g: SpElement, l: Lagrangian) -> CheckReport:
    """For invertible g - 1: the dual form equals form(a, (g-1)^(-1) b) and
    -form(a, (g^(-1)-1)^(-1) b), two independent inverse computations."""
    space = g.space
    field = space.field
    p = field.p
    eye = np.eye(space.dim, dtype=np.int64)
    gm1 = FpMatrix(field, g.mat.a - eye)
    if gm1.det() == 0:
        raise SingularGMinusOne("g - 1 is singular")
    df = diagonal_form(g, l)
    b = df.dual_support.basis.a
    j = space.gram.a
    first = (b @ j @ gm1.inv().a @ b.T) % p
    ginv = g.inv()
    hm1 = FpMatrix(field, ginv.mat.a - eye)
    second = (-(b @ j @ hm1.inv().a @ b.T)) % p
    ok = bool(np.array_equal(first, df.dual_gram.a)) and bool(
        np.array_equal(second, df.dual_gram.a)
    )
    return CheckReport(
        label="inverse-identity",
        ok=ok,
        details={
            "dual_gram": df.dual_gram.tolist(),
            "resolvent": first.tolist(),
            "inverse_route": second.tolist(),
        },
    )
