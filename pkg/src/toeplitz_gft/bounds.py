"""Toeplitz determinants of ``(b2, b3)`` and their sharp bounds in terms of ``Phi``.

Determinants are returned as complex numbers; the bounds are real and apply
to their modulus.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConditionNotMetError
from .generators import GeneratorPhi, condition_thm1, condition_thm2


@dataclass(frozen=True)
class CoeffPair:
    b2: complex
    b3: complex


@dataclass(frozen=True)
class BoundReport:
    B22: float | None
    B31: float | None
    thm1_ok: bool
    thm2_ok: bool


def det_t22(c: CoeffPair) -> complex:
    return complex(c.b2**2 - c.b3**2)


def det_t31(c: CoeffPair) -> complex:
    b2, b3 = c.b2, c.b3
    return complex(2 * b2**2 * b3 - 2 * b2**2 - b3**2 + 1)


def toeplitz_matrix(c: CoeffPair) -> np.ndarray:
    """The symmetric matrix ``[[1, b2, b3], [b2, 1, b2], [b3, b2, 1]]``."""
    b2, b3 = c.b2, c.b3
    return np.array([[1, b2, b3], [b2, 1, b2], [b3, b2, 1]], dtype=complex)


def _t22_formula(d1: float, d2: float) -> float:
    return d1**2 + d1**2 / 4 * (d2 / (2 * d1) + d1) ** 2


def _t31_formula(d1: float, d2: float) -> float:
    r = d2 / (2 * d1)
    return 1 + 2 * d1**2 + d1**2 / 4 * (3 * d1 - r) * (r + d1)


THM1_TEXT = "|Phi''(0) + 2 Phi'(0)^2| >= 2 Phi'(0) > 0"
THM2_TEXT = "2 Phi'(0) - 2 Phi'(0)^2 <= Phi''(0) <= 6 Phi'(0)^2 - 2 Phi'(0)"


def bound_t22(phi: GeneratorPhi, force: bool = False) -> float:
    """Sharp bound on ``|b2^2 - b3^2|``; ``force`` skips the side condition."""
    if not force and not condition_thm1(phi):
        raise ConditionNotMetError(
            f"T22 bound needs {THM1_TEXT}; {phi.name} has d1={phi.d1}, d2={phi.d2}", THM1_TEXT
        )
    return float(_t22_formula(phi.d1, phi.d2))


def bound_t31(phi: GeneratorPhi, force: bool = False) -> float:
    """Sharp bound on ``|2 b2^2 b3 - 2 b2^2 - b3^2 + 1|``."""
    if not force and not condition_thm2(phi):
        raise ConditionNotMetError(
            f"T31 bound needs {THM2_TEXT}; {phi.name} has d1={phi.d1}, d2={phi.d2}", THM2_TEXT
        )
    return float(_t31_formula(phi.d1, phi.d2))


def bound_b2(phi: GeneratorPhi) -> float:
    return float(phi.d1)


def fs_bound(phi: GeneratorPhi, lam: complex) -> float:
    """Bound on ``|b3 - lam b2^2|``: ``(d1/2) max{1, |d2/(2 d1) + (1 - 2 lam) d1|}``."""
    d1, d2 = phi.d1, phi.d2
    return float(d1 / 2 * max(1.0, abs(d2 / (2 * d1) + (1 - 2 * lam) * d1)))


def bound_report(phi: GeneratorPhi, force: bool = False) -> BoundReport:
    """Both bounds with their condition flags; a failing bound is ``None`` unless forced."""
    ok1, ok2 = condition_thm1(phi), condition_thm2(phi)
    b22 = bound_t22(phi, force=True) if (ok1 or force) else None
    b31 = bound_t31(phi, force=True) if (ok2 or force) else None
    return BoundReport(b22, b31, ok1, ok2)


# Reference polynomials for the classical subclasses.
def alpha_t22(alpha: float) -> float:
    return (1 - alpha) ** 2 * (4 * alpha**2 - 12 * alpha + 13)


def alpha_t31(alpha: float) -> float:
    return 12 * alpha**4 - 52 * alpha**3 + 91 * alpha**2 - 74 * alpha + 24


def beta_t22(beta: float) -> float:
    return 9 * beta**4 + 4 * beta**2


def beta_t31(beta: float) -> float:
    return 15 * beta**4 + 8 * beta**2 + 1
