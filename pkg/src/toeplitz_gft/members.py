"""Normalized class members on the unit disk built by subordination.

A member ``G(z) = z g(z)`` solves ``z G'(z) / G(z) = Phi(w(z))`` for a Schwarz
function ``w``; hence ``g = exp(int_0^z (Phi(w(t)) - 1) / t dt)``. Schwarz
functions are finite Blaschke-type products

    w(z) = exp(i theta) * z * prod_k (z - a_k) / (1 - conj(a_k) z),   |a_k| < 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import series as ps
from .bounds import CoeffPair
from .errors import InvalidInputError
from .generators import GeneratorPhi, phi_series

SAMPLE_RADIUS = 0.95
# Gauss-Legendre nodes on [0, 1] for pointwise evaluation of g away from the
# coefficient path; 128 nodes resolve radii up to 0.95 to roundoff.
QUAD_NODES = 128


@dataclass(frozen=True)
class SchwarzSpec:
    theta: float = 0.0
    zeros: tuple[complex, ...] = ()

    def __post_init__(self):
        zs = tuple(complex(a) for a in self.zeros)
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "theta", float(self.theta))
        for a in zs:
            if not abs(a) < 1:
                raise InvalidInputError(f"Blaschke zero {a} is not inside the unit disk")

    @property
    def rotation(self) -> complex:
        # exact unit values at multiples of pi/2 keep the extremal coefficients clean
        q, r = divmod(self.theta, math.pi / 2)
        if r == 0.0:
            return (1, 1j, -1, -1j)[int(q) % 4]
        return complex(math.cos(self.theta), math.sin(self.theta))

    def __call__(self, z):
        """Pointwise ``w(z)``."""
        z = np.asarray(z, dtype=complex)
        out = self.rotation * z
        for a in self.zeros:
            out = out * (z - a) / (1 - np.conj(a) * z)
        return out

    def to_dict(self) -> dict:
        return {
            "theta": self.theta,
            "zeros": [{"re": a.real, "im": a.imag} for a in self.zeros],
        }


def schwarz_series(s: SchwarzSpec, order: int = ps.DEFAULT_ORDER) -> ps.TruncatedSeries:
    w = ps.TruncatedSeries([0.0, s.rotation], order)
    for a in s.zeros:
        w = ps.mul(w, blaschke_factor_series(a, order))
    return w


def blaschke_factor_series(a: complex, order: int = ps.DEFAULT_ORDER) -> ps.TruncatedSeries:
    """``(z - a) / (1 - conj(a) z) = -a + (1 - |a|^2) sum_k conj(a)^(k-1) z^k``."""
    ab = np.conj(a)
    c = np.empty(order + 1, dtype=complex)
    c[0] = -a
    c[1:] = (1 - abs(a) ** 2) * ab ** np.arange(order)
    return ps.TruncatedSeries(c, order)


@lru_cache(maxsize=None)
def _gauss_legendre(n: int):
    x, wts = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1), 0.5 * wts


@dataclass(frozen=True)
class ClassMember:
    """Scalar factor ``g`` of ``G(z) = z g(z)`` with its provenance.

    ``g_series`` is exact to its order. Pointwise values come from the closed
    forms of ``Phi`` and ``w``; see :meth:`value`.
    """

    g_series: ps.TruncatedSeries
    phi: GeneratorPhi
    schwarz: SchwarzSpec
    coeffs: CoeffPair

    @property
    def a2(self) -> complex:
        return self.coeffs.b2

    @property
    def a3(self) -> complex:
        return self.coeffs.b3

    def h(self, z):
        """``z G'(z) / G(z) = Phi(w(z))``."""
        return self.phi.value(self.schwarz(z))

    def logderiv(self, z):
        """``z g'(z) / g(z) = Phi(w(z)) - 1``."""
        return self.h(z) - 1

    def value(self, z):
        """``g(z)`` via Gauss-Legendre quadrature of the log-derivative along ``[0, z]``."""
        z = np.asarray(z, dtype=complex)
        s, wts = _gauss_legendre(QUAD_NODES)
        integrand = self.logderiv(z[..., None] * s) / s
        out = np.exp(integrand @ wts)
        return out if out.ndim else complex(out)

    def derivative(self, z):
        z = np.asarray(z, dtype=complex)
        safe = np.where(z == 0, 1.0, z)
        out = np.where(z == 0, self.g_series.coeffs[1], self.value(z) * self.logderiv(z) / safe)
        return out if out.ndim else complex(out)


def member_from_schwarz(
    phi: GeneratorPhi, s: SchwarzSpec, order: int = ps.DEFAULT_ORDER
) -> ClassMember:
    if order < ps.MIN_ORDER:
        raise InvalidInputError(f"order must be >= {ps.MIN_ORDER}")
    w = schwarz_series(s, order)
    h = ps.compose(phi_series(phi, order), w)
    g = ps.exp_series(ps.integrate_logderiv(h))
    return ClassMember(g, phi, s, CoeffPair(complex(g.coeffs[1]), complex(g.coeffs[2])))


def member_logderiv_series(m: ClassMember) -> ps.TruncatedSeries:
    """``z G'/G = 1 + z g'/g`` recomputed from ``g_series``."""
    g = m.g_series
    z = ps.identity(g.order)
    return ps.one(g.order) + ps.mul(z, ps.div(g.derivative(), g))


def random_schwarz(rng_seed: int | Sequence[int], max_zeros: int = 2) -> SchwarzSpec:
    """Uniform rotation, ``U{0..max_zeros}`` zeros, each uniform in the disk of radius 0.95."""
    if max_zeros < 0:
        raise InvalidInputError("max_zeros must be >= 0")
    rng = np.random.default_rng(rng_seed)
    theta = float(rng.uniform(0.0, 2 * math.pi))
    k = int(rng.integers(0, max_zeros + 1))
    r = SAMPLE_RADIUS * np.sqrt(rng.uniform(size=k))
    ang = rng.uniform(0.0, 2 * math.pi, size=k)
    return SchwarzSpec(theta, tuple(r * np.exp(1j * ang)))
