"""Subordination targets ``Phi`` with ``Phi(0) = 1``, ``Phi'(0) > 0``, real ``Phi''(0)``.

Three built-in families are provided together with a ``Custom`` escape hatch:

* ``halfplane``            ``(1 + z) / (1 - z)``
* ``order_alpha(alpha)``   ``(1 + (1 - 2 alpha) z) / (1 - z)``,  ``0 <= alpha < 1``
* ``strong_beta(beta)``    ``((1 + z) / (1 - z)) ** beta``,      ``0 < beta <= 1``

For a custom generator the caller remains responsible for ``Phi`` being
biholomorphic on the disk with positive real part; only the Taylor data is
checked here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import series as ps
from .errors import InvalidInputError

HALFPLANE = "halfplane"
ORDER_ALPHA = "alpha"
STRONG_BETA = "beta"
CUSTOM = "custom"

BUILTIN_TOL = 1e-13
CUSTOM_TOL = 1e-10
# Slack for the non-strict inequalities of the side conditions.
CONDITION_TOL = 1e-12


@dataclass(frozen=True)
class GeneratorPhi:
    kind: str
    param: float | None
    d1: float
    d2: float
    series: ps.TruncatedSeries = field(repr=False, compare=False)

    @property
    def name(self) -> str:
        if self.kind in (ORDER_ALPHA, STRONG_BETA):
            return f"{self.kind}={self.param:g}"
        return self.kind

    def value(self, z):
        """Pointwise ``Phi(z)``; custom generators fall back to the truncated series."""
        z = np.asarray(z, dtype=complex)
        if self.kind == HALFPLANE:
            out = (1 + z) / (1 - z)
        elif self.kind == ORDER_ALPHA:
            out = (1 + (1 - 2 * self.param) * z) / (1 - z)
        elif self.kind == STRONG_BETA:
            out = np.exp(self.param * np.log((1 + z) / (1 - z)))
        else:
            out = np.asarray(ps.evaluate(self.series, z))
        return out if out.ndim else complex(out)

    def inverse(self, q):
        """Pointwise ``Phi^{-1}(q)`` on the branch with ``Phi^{-1}(1) = 0``."""
        q = np.asarray(q, dtype=complex)
        if self.kind == HALFPLANE:
            out = (q - 1) / (q + 1)
        elif self.kind == ORDER_ALPHA:
            out = (q - 1) / (q + 1 - 2 * self.param)
        elif self.kind == STRONG_BETA:
            # clip the argument so that points beyond the principal sheet map outside U
            a = np.clip(np.angle(q) / self.param, -math.pi, math.pi)
            s = np.abs(q) ** (1 / self.param) * np.exp(1j * a)
            out = (s - 1) / (s + 1)
        else:
            psi = phi_inverse_series(self, self.series.order)
            out = np.asarray(ps.evaluate(psi, q - 1))
        return out if out.ndim else complex(out)

    def contains(self, q) -> np.ndarray:
        """Whether ``q`` lies in ``Phi(U)``, i.e. ``|Phi^{-1}(q)| < 1``."""
        return np.abs(self.inverse(q)) < 1


def _series_halfplane(n: int) -> ps.TruncatedSeries:
    c = np.full(n + 1, 2.0)
    c[0] = 1.0
    return ps.TruncatedSeries(c, n)


def _series_alpha(alpha: float, n: int) -> ps.TruncatedSeries:
    c = np.full(n + 1, 2.0 * (1.0 - alpha))
    c[0] = 1.0
    return ps.TruncatedSeries(c, n)


@lru_cache(maxsize=256)
def _series_beta(beta: float, n: int) -> ps.TruncatedSeries:
    return ps.pow_real(_series_halfplane(n), beta)


def _verify(phi: GeneratorPhi, tol: float) -> GeneratorPhi:
    c = phi.series.coeffs
    if not phi.d1 > 0:
        raise InvalidInputError(f"Phi'(0) must be positive, got {phi.d1}")
    if abs(c[0] - 1) > tol:
        raise InvalidInputError(f"Phi(0) must be 1, series gives {c[0]}")
    if abs(c[1] - phi.d1) > tol:
        raise InvalidInputError(f"Phi'(0) = {phi.d1} disagrees with series c1 = {c[1]}")
    if abs(2 * c[2] - phi.d2) > tol:
        raise InvalidInputError(f"Phi''(0) = {phi.d2} disagrees with series 2*c2 = {2 * c[2]}")
    return phi


def halfplane(order: int = ps.DEFAULT_ORDER) -> GeneratorPhi:
    return _verify(GeneratorPhi(HALFPLANE, None, 2.0, 4.0, _series_halfplane(order)), BUILTIN_TOL)


def order_alpha(alpha: float, order: int = ps.DEFAULT_ORDER) -> GeneratorPhi:
    alpha = float(alpha)
    if not 0 <= alpha < 1:
        raise InvalidInputError(f"alpha must lie in [0, 1), got {alpha}")
    t = 1.0 - alpha
    return _verify(
        GeneratorPhi(ORDER_ALPHA, alpha, 2 * t, 4 * t, _series_alpha(alpha, order)), BUILTIN_TOL
    )


def strong_beta(beta: float, order: int = ps.DEFAULT_ORDER) -> GeneratorPhi:
    beta = float(beta)
    if not 0 < beta <= 1:
        raise InvalidInputError(f"beta must lie in (0, 1], got {beta}")
    return _verify(
        GeneratorPhi(STRONG_BETA, beta, 2 * beta, 4 * beta**2, _series_beta(beta, order)),
        BUILTIN_TOL,
    )


def custom(series: ps.TruncatedSeries, d1: float, d2: float) -> GeneratorPhi:
    """Generator given by its Taylor series; ``d1``, ``d2`` are cross-checked against it."""
    if isinstance(d2, complex) or np.iscomplexobj(d2):
        if abs(np.imag(d2)) > CUSTOM_TOL:
            raise InvalidInputError(f"Phi''(0) must be real, got {d2}")
        d2 = float(np.real(d2))
    return _verify(GeneratorPhi(CUSTOM, None, float(d1), float(d2), series), CUSTOM_TOL)


def parse(descriptor: str, order: int = ps.DEFAULT_ORDER) -> GeneratorPhi:
    """Build a generator from ``halfplane``, ``alpha=A`` or ``beta=B``."""
    text = descriptor.strip().lower()
    if text == HALFPLANE:
        return halfplane(order)
    key, sep, val = text.partition("=")
    if sep:
        try:
            x = float(val)
        except ValueError:
            raise InvalidInputError(f"bad generator parameter in {descriptor!r}") from None
        if key == ORDER_ALPHA:
            return order_alpha(x, order)
        if key == STRONG_BETA:
            return strong_beta(x, order)
    raise InvalidInputError(f"unknown generator {descriptor!r}; use halfplane, alpha=A or beta=B")


def phi_series(phi: GeneratorPhi, order: int) -> ps.TruncatedSeries:
    """Taylor series of ``Phi`` at 0 to the requested order."""
    if order < ps.MIN_ORDER:
        raise InvalidInputError(f"order must be >= {ps.MIN_ORDER}")
    if phi.kind == HALFPLANE:
        return _series_halfplane(order)
    if phi.kind == ORDER_ALPHA:
        return _series_alpha(phi.param, order)
    if phi.kind == STRONG_BETA:
        return _series_beta(phi.param, order)
    return ps.TruncatedSeries(phi.series.coeffs, order)


def phi_inverse_series(phi: GeneratorPhi, order: int) -> ps.TruncatedSeries:
    """Germ ``psi`` with ``Phi(psi(q)) = q`` near ``q = 1``, as a series in ``q - 1``."""
    s = phi_series(phi, order)
    c = s.coeffs.copy()
    c[0] = 0.0
    return ps.reversion(ps.TruncatedSeries(c, order))


def _le(a: float, b: float) -> bool:
    return a <= b + CONDITION_TOL * max(1.0, abs(a), abs(b))


def condition_thm1(phi: GeneratorPhi) -> bool:
    """``|Phi''(0) + 2 Phi'(0)^2| >= 2 Phi'(0) > 0``."""
    d1, d2 = phi.d1, phi.d2
    return d1 > 0 and _le(2 * d1, abs(d2 + 2 * d1 * d1))


def condition_thm2(phi: GeneratorPhi) -> bool:
    """``2 Phi'(0) - 2 Phi'(0)^2 <= Phi''(0) <= 6 Phi'(0)^2 - 2 Phi'(0)``."""
    d1, d2 = phi.d1, phi.d2
    return _le(2 * d1 - 2 * d1 * d1, d2) and _le(d2, 6 * d1 * d1 - 2 * d1)
