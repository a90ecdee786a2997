"""Additive characters of F_p and Weil indices of scalars via Gauss sums."""

from __future__ import annotations

import math

import numpy as np

from .errors import ZeroFormClass
from .field import Fp, SquareClass


def approx_eq(x: complex, y: complex, tol: float = 1e-8, scale: float = 1.0) -> bool:
    """Approximate equality with tolerance tol * max(1, scale)."""
    return abs(x - y) <= tol * max(1.0, scale)


class AdditiveCharacter:
    """psi(x) = exp(2 pi i * scale * x / p), a nontrivial character of (F_p, +).

    Also provides the Weil index gamma(a) of the scalar quadratic form a x^2,
    normalized so |gamma(a)| = 1:

        gamma(a) = p^(-1/2) * sum_x psi((1/2) a x^2)

    where 1/2 is the field element (p+1)/2.
    """

    __slots__ = ("field", "scale", "_roots", "_gamma_cache")

    def __init__(self, field: Fp, scale: int = 1) -> None:
        self.field = field
        scale %= field.p
        if scale == 0:
            raise ValueError("character scale must be nonzero mod p")
        self.scale = scale
        self._roots = np.exp(2j * math.pi * np.arange(field.p) / field.p)
        self._gamma_cache: dict[int, complex] = {}

    @property
    def p(self) -> int:
        return self.field.p

    def psi(self, x: int) -> complex:
        return complex(self._roots[(self.scale * x) % self.p])

    def psi_array(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        return self._roots[(self.scale * xs) % self.p]

    def gamma(self, a: int) -> complex:
        a %= self.p
        if a == 0:
            raise ZeroFormClass("gamma is undefined at 0")
        g = self._gamma_cache.get(a)
        if g is None:
            xs = np.arange(self.p, dtype=np.int64)
            vals = (self.field.half * a * xs * xs) % self.p
            g = complex(self.psi_array(vals).sum()) / math.sqrt(self.p)
            self._gamma_cache[a] = g
        return g

    def gamma_class(self, cls: SquareClass) -> complex:
        return self.gamma(cls.rep)

    def chi(self, a: int) -> complex:
        """The quadratic character as gamma(-1) * gamma(a); equals legendre(a)."""
        return self.gamma(-1) * self.gamma(a)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, AdditiveCharacter)
            and other.field == self.field
            and other.scale == self.scale
        )

    def __hash__(self) -> int:
        return hash(("AdditiveCharacter", self.p, self.scale))

    def __repr__(self) -> str:
        return f"AdditiveCharacter(p={self.p}, scale={self.scale})"
