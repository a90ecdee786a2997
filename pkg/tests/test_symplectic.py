"""Symplectic spaces, Lagrangian enumeration, group element generation."""

import numpy as np
import pytest

from weilchar.errors import DimensionMismatch, EnumerationTooLarge
from weilchar.field import Fp, FpMatrix, Subspace
from weilchar.symplectic import (
    Lagrangian,
    SymplecticSpace,
    diagonal_lagrangian,
    displacement_disc,
    kernel_of_displacement,
    standard_gram,
)

SP4_F3_ORDER = 51840


def space(p, n):
    return SymplecticSpace(Fp(p), n)


def test_standard_gram_is_alternating_invertible():
    for p, n in ((3, 1), (5, 2), (7, 3)):
        f = Fp(p)
        j = standard_gram(f, n)
        assert not np.any((j.a + j.a.T) % p)
        assert j.det() != 0


def test_form_on_standard_basis():
    sp = space(5, 2)
    e = np.eye(4, dtype=np.int64)
    assert sp.form(e[0], e[2]) == 1
    assert sp.form(e[2], e[0]) == 4
    assert sp.form(e[0], e[1]) == 0
    assert sp.form(e[1], e[3]) == 1


def test_rejects_degenerate_or_odd_gram():
    f = Fp(5)
    with pytest.raises(DimensionMismatch):
        SymplecticSpace(f, gram=FpMatrix(f, np.zeros((2, 2), np.int64)))
    with pytest.raises(DimensionMismatch):
        SymplecticSpace(f, gram=FpMatrix(f, [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]))
    with pytest.raises(DimensionMismatch):
        SymplecticSpace(f, gram=FpMatrix(f, [[1, 1], [-1, 0]]))


def test_lagrangian_validation():
    sp = space(5, 1)
    l = sp.lagrangian([[1, 0]])
    assert l.dim == 1
    with pytest.raises(DimensionMismatch):
        sp.lagrangian([[1, 0], [0, 1]])  # not isotropic at full dim
    sp2 = space(5, 2)
    with pytest.raises(DimensionMismatch):
        sp2.lagrangian([[1, 0, 0, 0]])  # wrong dimension
    with pytest.raises(DimensionMismatch):
        sp2.lagrangian([[1, 0, 0, 0], [0, 0, 1, 0]])  # pairs to 1, not isotropic


@pytest.mark.parametrize("p,n,count", [(3, 1, 4), (5, 1, 6), (3, 2, 40), (5, 2, 156)])
def test_lagrangian_counts(p, n, count):
    sp = space(p, n)
    assert sp.lagrangian_count() == count
    lags = sp.all_lagrangians()
    assert len(lags) == count
    assert len({l for l in lags}) == count
    for l in lags[:10]:
        assert sp.is_isotropic(l.sub)


def test_all_lagrangians_cap():
    sp = space(97, 2)  # (97+1)(97^2+1) = 922580 subspaces
    with pytest.raises(EnumerationTooLarge):
        sp.all_lagrangians(cap=1000)


def test_sl2_enumeration_matches_order():
    sp = space(3, 1)
    els = sp.elements()
    assert len(els) == 24 == sp.order()
    seen = {e for e in els}
    assert len(seen) == 24


def test_sp4_f3_order_formula():
    assert space(3, 2).order() == SP4_F3_ORDER


def test_sp4_f3_bfs_enumeration():
    els = space(3, 2).elements()
    assert len(els) == SP4_F3_ORDER


def test_group_cap_enforced():
    with pytest.raises(EnumerationTooLarge):
        space(11, 2).elements()


def test_transvection_is_symplectic_and_fixes_hyperplane():
    sp = space(7, 2)
    v = np.array([1, 2, 3, 4], dtype=np.int64)
    t = sp.transvection(v, 3)
    # symplectic by construction (validated in SpElement); fixes v and its perp
    assert np.array_equal((t.mat.a @ v) % 7, v)
    k = kernel_of_displacement(t)
    assert k.dim == 3
    assert k.contains(v)


def test_random_element_is_symplectic_and_spreads():
    rng = np.random.default_rng(2)
    sp = space(5, 2)
    seen = set()
    for _ in range(60):
        g = sp.random_element(rng)  # constructor validates the form
        seen.add(g)
    assert len(seen) > 50


def test_random_lagrangian_valid():
    rng = np.random.default_rng(4)
    sp = space(7, 2)
    for _ in range(20):
        l = sp.random_lagrangian(rng)
        assert sp.is_isotropic(l.sub)
        assert l.dim == 2


def test_element_apply_and_image():
    sp = space(5, 1)
    g = sp.element([[2, 0], [0, 3]])
    assert np.array_equal(g.apply([1, 1]), np.array([2, 3]))
    l = sp.standard_lagrangian()
    assert g.image(l) == l
    h = sp.element([[0, 1], [4, 0]])
    assert h.image(l) == sp.lagrangian([[0, 1]])


def test_inverse_and_products():
    rng = np.random.default_rng(12)
    sp = space(7, 2)
    eye = sp.identity()
    for _ in range(20):
        g = sp.random_element(rng)
        h = sp.random_element(rng)
        assert (g * g.inv()) == eye
        assert ((g * h).inv()) == (h.inv() * g.inv())


def test_graph_and_diagonal_are_doubled_lagrangians():
    sp = space(5, 2)
    dd = sp.doubled()
    rng = np.random.default_rng(9)
    assert diagonal_lagrangian(sp).sub.dim == 4
    for _ in range(10):
        g = sp.random_element(rng)
        gr = g.graph()
        assert gr.space == dd
        assert dd.is_isotropic(gr.sub)
    assert sp.identity().graph() == diagonal_lagrangian(sp)


def test_displacement_kernel_and_disc():
    sp = space(5, 1)
    g = sp.element([[2, 0], [0, 3]])
    assert kernel_of_displacement(g).dim == 0
    # pairing <(g-1)v, w> on the standard basis: det = 2 mod 5, a nonsquare
    d = displacement_disc(g)
    assert not d.is_square
    assert kernel_of_displacement(sp.identity()).dim == 2
    assert displacement_disc(sp.identity()).is_square  # empty form, unit class


def test_displacement_disc_complement_independent():
    rng = np.random.default_rng(23)
    sp = space(7, 2)
    for _ in range(25):
        g = sp.random_element(rng)
        ker = kernel_of_displacement(g)
        if ker.dim in (0, sp.dim):
            continue
        base = displacement_disc(g)
        # rebuild with an explicitly randomized complement
        comp = ker.complement_std()
        mix = rng.integers(0, 7, (comp.dim, ker.dim))
        rows = (comp.basis.a + mix @ ker.basis.a) % 7
        other = Subspace.from_rows(sp.field, sp.dim, rows)
        assert displacement_disc(g, other) == base


def test_doubled_space_gram_blocks():
    sp = space(3, 1)
    dd = sp.doubled()
    j = sp.gram.a
    expect = np.block([
        [(-j) % 3, np.zeros((2, 2), np.int64)],
        [np.zeros((2, 2), np.int64), j],
    ])
    assert np.array_equal(dd.gram.a, expect % 3)


def test_lagrangian_transform_and_doubling():
    sp = space(5, 1)
    l = sp.standard_lagrangian()
    ld = l.doubled()
    assert ld.space == sp.doubled()
    assert ld.dim == 2
    g = sp.element([[1, 1], [0, 1]])
    assert g.image(l) == l
    assert g.image(sp.lagrangian([[0, 1]])) == sp.lagrangian([[1, 1]])
