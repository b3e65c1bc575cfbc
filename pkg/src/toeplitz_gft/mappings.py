"""Mappings ``G(z) = z g(z)`` on a p-ball and their directional coefficients.

Every mapping here has a scalar factor of the form ``g(z) = f(z_1 / r)`` with
``r = sup |z_1|`` and a univariate *profile* ``f`` (``f(0) = 1``). The slice
``zeta -> g(zeta z0)`` is then ``f(u_1 zeta / r)`` for ``u_1 = z0[0]``.

A profile exposes ``g_series`` (exact Taylor data), ``value(zeta)`` and
``logderiv(zeta) = zeta f'(zeta) / f(zeta)``; :class:`~.members.ClassMember`
satisfies this.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import series as ps
from .domains import DomainSpec, grad_rho, pair, rho
from .errors import InvalidInputError, SingularJacobianError
from .generators import GeneratorPhi
from .members import ClassMember, SchwarzSpec, member_from_schwarz

EXTRACTION_RADIUS = 0.5
# Extraction order used by directional_b: aliasing of coefficient k picks up
# c_{k+M} r0^M, which at M = 8 * 3 = 24 is still ~1e-6 for slices with a pole
# on the unit circle. M = 64 pushes it below roundoff.
DIRECTIONAL_KMAX = 8
FD_STEP = 1e-6


class _UnitProfile:
    """``f == 1``: the identity mapping ``G(z) = z``."""

    def __init__(self, order: int = ps.DEFAULT_ORDER):
        self.g_series = ps.one(order)

    def value(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.ones(z.shape, dtype=complex)
        return out if out.ndim else complex(out)

    def logderiv(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        return out if out.ndim else complex(out)


@dataclass(frozen=True)
class MappingZG:
    domain: DomainSpec
    profile: object
    kind: str = "member"

    def _arg(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        if z.shape[-1] != self.domain.n:
            raise InvalidInputError(f"expected a point of C^{self.domain.n}")
        return z[..., 0] / self.domain.r1

    def g(self, z):
        return self.profile.value(self._arg(z))

    def jg_z(self, z):
        """``J_g(z) z = f'(l) l`` with ``l = z_1 / r``."""
        t = self._arg(z)
        return self.profile.value(t) * self.profile.logderiv(t)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return z * np.asarray(self.g(z))[..., None]

    def slice_series(self, z0) -> ps.TruncatedSeries:
        """Series of ``zeta -> g(zeta z0)``."""
        z0 = np.asarray(z0, dtype=complex)
        return self.profile.g_series.scaled(z0[0] / self.domain.r1)


@dataclass(frozen=True)
class DirectionalCoeffs:
    z: tuple
    b2: complex
    b3: complex


def identity_map(domain: DomainSpec, order: int = ps.DEFAULT_ORDER) -> MappingZG:
    return MappingZG(domain, _UnitProfile(order), "identity")


def from_member(member: ClassMember, domain: DomainSpec) -> MappingZG:
    """``G(z) = z g_member(z_1 / r)``."""
    return MappingZG(domain, member, "member")


def extremal_G(phi: GeneratorPhi, domain: DomainSpec, order: int = ps.DEFAULT_ORDER) -> MappingZG:
    """``G(z) = z exp(int_0^{z_1/r} (Phi(i t) - 1) / t dt)``."""
    m = member_from_schwarz(phi, SchwarzSpec(math.pi / 2), order)
    return MappingZG(domain, m, "extremal")


def _require_nonzero(d: DomainSpec, z) -> tuple[np.ndarray, float]:
    z = np.asarray(z, dtype=complex)
    r = rho(d, z)
    if r == 0:
        raise InvalidInputError("directional quantities need z != 0")
    return z, r


def frechet_slice_coeffs(
    G: MappingZG,
    z,
    k_max: int = 3,
    r0: float = EXTRACTION_RADIUS,
    n_samples: int | None = None,
) -> list[np.ndarray]:
    """Vectors ``D^k G(0)(z0^k) / k!`` for ``k = 0..k_max``, ``z0 = z / rho(z)``.

    Obtained by discrete Fourier inversion of ``zeta -> G(zeta z0)`` on the
    circle ``|zeta| = r0`` with ``8 k_max`` samples unless given.
    """
    if k_max < 3:
        raise InvalidInputError("k_max must be >= 3")
    z, r = _require_nonzero(G.domain, z)
    z0 = z / r
    m = n_samples or 8 * k_max
    zeta = r0 * np.exp(2j * np.pi * np.arange(m) / m)
    samples = G(zeta[:, None] * z0[None, :])
    coef = np.fft.fft(samples, axis=0)[: k_max + 1] / m
    coef /= (r0 ** np.arange(k_max + 1))[:, None]
    return [coef[k] for k in range(k_max + 1)]


def directional_b(G: MappingZG, z, **extract) -> DirectionalCoeffs:
    """``b_k = 2 (d rho/dz)(z) [D^k G(0)(z^k)/k!] / rho(z)^k`` for ``k = 2, 3``."""
    z, _ = _require_nonzero(G.domain, z)
    extract.setdefault("k_max", DIRECTIONAL_KMAX)
    X = frechet_slice_coeffs(G, z, **extract)
    gr = grad_rho(G.domain, z)
    return DirectionalCoeffs(tuple(complex(x) for x in z), 2 * pair(gr, X[2]), 2 * pair(gr, X[3]))


def directional_d(G: MappingZG, z, **extract) -> DirectionalCoeffs:
    """Euclidean-ball form ``d_k = <D^k G(0)(z^k)/k!, z> / |z|^(k+1)``."""
    if G.domain.p != 2.0:
        raise InvalidInputError("conjugate pairing form is only defined on the Euclidean ball")
    z, r = _require_nonzero(G.domain, z)
    extract.setdefault("k_max", DIRECTIONAL_KMAX)
    X = frechet_slice_coeffs(G, z, **extract)
    d = [np.sum(r**k * X[k] * np.conj(z)) / r ** (k + 1) for k in (2, 3)]
    return DirectionalCoeffs(tuple(complex(x) for x in z), complex(d[0]), complex(d[1]))


def slice_coeffs(G: MappingZG, z) -> tuple[complex, complex]:
    """``(a2, a3)`` of ``zeta -> zeta g(zeta z0)`` from exact series data."""
    z, r = _require_nonzero(G.domain, z)
    s = G.slice_series(z / r)
    return complex(s.coeffs[1]), complex(s.coeffs[2])


def transfer_form(G: MappingZG, z) -> np.ndarray:
    """Closed form ``J_G(z)^{-1} G(z) = z g(z) / (g(z) + J_g(z) z)``."""
    z, _ = _require_nonzero(G.domain, z)
    g = G.g(z)
    den = g + G.jg_z(z)
    if abs(den) <= 1e-14 * max(1.0, abs(g)):
        raise SingularJacobianError(f"g(z) + J_g(z) z vanishes at z = {z}")
    return z * g / den


def jacobian_fd(G: MappingZG, z, step: float = FD_STEP) -> np.ndarray:
    """Central-difference Jacobian of the holomorphic map ``G``."""
    z = np.asarray(z, dtype=complex)
    h = step * max(1.0, float(np.max(np.abs(z))))
    n = z.size
    J = np.zeros((n, n), dtype=complex)
    for k in range(n):
        e = np.zeros(n, dtype=complex)
        e[k] = h
        J[:, k] = (G(z + e) - G(z - e)) / (2 * h)
    return J


def transfer_form_numeric(G: MappingZG, z, step: float = FD_STEP) -> np.ndarray:
    """Solve ``J_G(z) x = G(z)`` with a finite-difference Jacobian."""
    z = np.asarray(z, dtype=complex)
    return np.linalg.solve(jacobian_fd(G, z, step), G(z))


@dataclass(frozen=True)
class MembershipReport:
    ok: bool
    n_points: int
    n_outside: int
    max_inverse_modulus: float


def sample_directions(d: DomainSpec, n_dirs: int, seed: int = 0) -> np.ndarray:
    """Unit-``rho`` directions: half rotate ``e_1``, the rest are random."""
    rng = np.random.default_rng(seed)
    k = (n_dirs + 1) // 2
    dirs = np.zeros((n_dirs, d.n), dtype=complex)
    dirs[:k, 0] = np.exp(2j * np.pi * np.arange(k) / k)
    v = rng.standard_normal((n_dirs - k, d.n)) + 1j * rng.standard_normal((n_dirs - k, d.n))
    if len(v):
        dirs[k:] = v / np.asarray(rho(d, v))[:, None]
    return dirs


def membership_check(
    G: MappingZG,
    phi: GeneratorPhi,
    n_dirs: int = 32,
    n_radii: int = 16,
    seed: int = 0,
    r_max: float = 0.95,
) -> MembershipReport:
    """Sampled test of ``rho(z) / (2 (d rho/dz) J_G^{-1} G) in Phi(U)`` on ``0 < rho <= r_max``.

    Sound but incomplete: it certifies only the sampled points.
    """
    d = G.domain
    dirs = sample_directions(d, n_dirs, seed)
    radii = r_max * np.arange(1, n_radii + 1) / n_radii
    worst, outside, count = 0.0, 0, 0
    for u in dirs:
        for R in radii:
            z = R * u
            p = transfer_form(G, z)
            q = rho(d, z) / (2 * pair(grad_rho(d, z), p))
            m = float(np.abs(phi.inverse(q)))
            worst = max(worst, m)
            outside += not m < 1
            count += 1
    return MembershipReport(outside == 0, count, outside, worst)
