"""p-ball domains ``{z in C^n : rho(z) < 1}`` with ``rho(z) = (sum |z_j|^p)^(1/p)``.

For ``1 < p < inf`` the Minkowski functional is C^1 off the origin. The
holomorphic-coordinate gradient is the Wirtinger derivative

    d rho / d z_j = 1/2 * rho^(1-p) * |z_j|^(p-2) * conj(z_j).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError

LEMMA_TOL = 1e-10


@dataclass(frozen=True)
class DomainSpec:
    n: int = 2
    p: float = 2.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise InvalidInputError(f"dimension must be a positive integer, got {self.n}")
        if not (1 < self.p < np.inf):
            raise InvalidInputError(f"p must satisfy 1 < p < inf, got {self.p}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "p", float(self.p))

    @property
    def r1(self) -> float:
        """``sup |z_1|`` over the domain."""
        return 1.0


def _vec(d: DomainSpec, z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if z.shape[-1] != d.n:
        raise InvalidInputError(f"expected a point of C^{d.n}, got shape {z.shape}")
    return z


def rho(d: DomainSpec, z) -> float | np.ndarray:
    """Minkowski functional; ``z`` may carry leading batch axes."""
    z = _vec(d, z)
    a = np.abs(z)
    if d.p == 2.0:
        out = np.sqrt(np.sum(a * a, axis=-1))
    else:
        # scale by the max modulus to avoid under/overflow of |z|^p
        m = np.max(a, axis=-1)
        safe = np.where(m == 0, 1.0, m)
        out = m * np.sum((a / safe[..., None]) ** d.p, axis=-1) ** (1 / d.p)
    return float(out) if np.ndim(out) == 0 else out


def grad_rho(d: DomainSpec, z) -> np.ndarray:
    """``d rho / d z`` as a covector; components with ``z_j = 0`` are 0."""
    z = _vec(d, z)
    r = np.asarray(rho(d, z))
    if np.any(r == 0):
        raise InvalidInputError("rho is not differentiable at the origin")
    a = np.abs(z)
    u = z / r[..., None]
    au = a / r[..., None]
    # |u_j|^(p-2) conj(u_j) written as |u_j|^(p-1) * conj(phase) so that p < 2 is safe at 0
    phase = np.where(a == 0, 0.0, np.conj(u) / np.where(au == 0, 1.0, au))
    return 0.5 * au ** (d.p - 1) * phase


def pair(cov: np.ndarray, v: np.ndarray) -> complex | np.ndarray:
    """Bilinear pairing ``sum_j cov_j v_j`` (no conjugation)."""
    out = np.sum(np.asarray(cov) * np.asarray(v), axis=-1)
    return complex(out) if np.ndim(out) == 0 else out


def grad_rho_fd(d: DomainSpec, z, step: float = 1e-6) -> np.ndarray:
    """Central-difference Wirtinger gradient ``(d/dx - i d/dy) / 2`` in each coordinate."""
    z = _vec(d, z).astype(complex)
    out = np.zeros(d.n, dtype=complex)
    for j in range(d.n):
        e = np.zeros(d.n, dtype=complex)
        e[j] = step
        dx = (rho(d, z + e) - rho(d, z - e)) / (2 * step)
        dy = (rho(d, z + 1j * e) - rho(d, z - 1j * e)) / (2 * step)
        out[j] = 0.5 * (dx - 1j * dy)
    return out


@dataclass(frozen=True)
class Lemma1Report:
    euler: bool
    boundary: bool
    scaling: bool
    rotation: bool
    residuals: tuple[float, float, float, float]

    @property
    def ok(self) -> bool:
        return self.euler and self.boundary and self.scaling and self.rotation


def _rel(a, b) -> float:
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b)) / np.max(np.abs(b)))


def lemma1_check(d: DomainSpec, z, tol: float = LEMMA_TOL) -> Lemma1Report:
    """Check the four Minkowski-functional identities at ``z``.

    (a) ``2 grad(z) . z = rho(z)``;  (b) the same equals 1 on the boundary;
    (c) ``grad`` is invariant under ``z -> lam z`` for ``lam in {0.5, 2}``;
    (d) ``grad(e^{i theta} z) = e^{-i theta} grad(z)`` at ``theta = 1``.
    """
    z = _vec(d, z)
    r = rho(d, z)
    if r == 0:
        raise InvalidInputError("lemma1_check needs z != 0")
    g = grad_rho(d, z)
    ra = _rel(2 * pair(g, z), r)
    z0 = z / r
    rb = _rel(2 * pair(grad_rho(d, z0), z0), 1.0)
    rc = max(_rel(grad_rho(d, lam * z), g) for lam in (0.5, 2.0))
    rot = np.exp(1j * 1.0)
    rd = _rel(grad_rho(d, rot * z), g / rot)
    res = (ra, rb, rc, rd)
    return Lemma1Report(*(x <= tol for x in res), residuals=res)
