"""Truncated complex power series.

A :class:`TruncatedSeries` holds the Taylor coefficients ``c[0..N]`` of a
holomorphic germ at the origin. Every operation returns a series of the same
order ``N``; terms of degree above ``N`` are dropped.

    >>> f = TruncatedSeries([1, 1], order=4)        # 1 + z
    >>> g = div(one(4), TruncatedSeries([1, -1], order=4))
    >>> g.coeffs.real
    array([1., 1., 1., 1., 1.])
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import InvalidInputError

DEFAULT_ORDER = 24
MIN_ORDER = 3
# Accepted slack for the normalization c0 == 1 of log/pow/integrate_logderiv.
UNIT_TOL = 1e-12
# The div/exp/log recurrences cancel heavily for germs with nearby
# singularities. They run in extended precision, and their outputs keep an
# extended shadow so that chains like exp(beta * log f) never round in between.
_ACC = np.clongdouble


class TruncatedSeries:
    """Immutable dense series ``c0 + c1 z + ... + cN z^N`` with complex ``ck``."""

    __slots__ = ("_c", "_x")

    def __init__(self, coeffs: Sequence[complex] | np.ndarray, order: int | None = None):
        c = np.asarray(coeffs, dtype=complex).ravel()
        if order is None:
            order = c.size - 1
        if order < MIN_ORDER:
            raise InvalidInputError(f"series order must be >= {MIN_ORDER}, got {order}")
        out = np.zeros(order + 1, dtype=complex)
        m = min(c.size, order + 1)
        out[:m] = c[:m]
        out.flags.writeable = False
        self._c = out
        self._x = None

    @classmethod
    def _from_ext(cls, x: np.ndarray) -> "TruncatedSeries":
        out = cls(x.astype(complex))
        x.flags.writeable = False
        out._x = x
        return out

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def order(self) -> int:
        return self._c.size - 1

    def __getitem__(self, k):
        return self._c[k]

    def __len__(self):
        return self._c.size

    def __repr__(self):
        return f"TruncatedSeries({np.array2string(self._c, precision=6)}, order={self.order})"

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and bool(np.array_equal(self._c, other._c))

    __hash__ = None

    def __add__(self, other):
        return add(self, _coerce(other, self.order))

    __radd__ = __add__

    def __sub__(self, other):
        return add(self, negate(_coerce(other, self.order)))

    def __rsub__(self, other):
        return add(_coerce(other, self.order), negate(self))

    def __neg__(self):
        return negate(self)

    def __mul__(self, other):
        if np.isscalar(other):
            if self._x is not None:
                return TruncatedSeries._from_ext(self._x * _ACC(other))
            return TruncatedSeries(self._c * other)
        return mul(self, other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if np.isscalar(other):
            return TruncatedSeries(self._c / other)
        return div(self, other)

    def __rtruediv__(self, other):
        return div(_coerce(other, self.order), self)

    def __call__(self, z):
        return evaluate(self, z)

    def derivative(self) -> "TruncatedSeries":
        """Formal derivative; the top coefficient becomes 0."""
        k = np.arange(1, self.order + 1)
        return TruncatedSeries(self._c[1:] * k, self.order)

    def scaled(self, a: complex) -> "TruncatedSeries":
        """Series of ``z -> f(a z)``."""
        return TruncatedSeries(self._c * a ** np.arange(self.order + 1), self.order)


def _ext(f: TruncatedSeries) -> np.ndarray:
    return f._x if f._x is not None else f.coeffs.astype(_ACC)


def _coerce(x, order: int) -> TruncatedSeries:
    if isinstance(x, TruncatedSeries):
        return x
    return constant(x, order)


def _check_orders(f: TruncatedSeries, g: TruncatedSeries) -> None:
    if f.order != g.order:
        raise InvalidInputError(f"order mismatch: {f.order} vs {g.order}")


def constant(c: complex, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    return TruncatedSeries([c], order)


def one(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    return constant(1.0, order)


def identity(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """The series ``z``."""
    return TruncatedSeries([0.0, 1.0], order)


def add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    _check_orders(f, g)
    return TruncatedSeries(f.coeffs + g.coeffs)


def negate(f: TruncatedSeries) -> TruncatedSeries:
    return TruncatedSeries(-f.coeffs)


def mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the common order."""
    _check_orders(f, g)
    return TruncatedSeries(np.convolve(f.coeffs, g.coeffs)[: f.order + 1], f.order)


def div(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Formal quotient ``f / g``; requires ``g[0] != 0``."""
    _check_orders(f, g)
    if g.coeffs[0] == 0:
        raise InvalidInputError("division by a series with zero constant term")
    a, b = _ext(f), _ext(g)
    n = f.order
    q = np.zeros(n + 1, dtype=_ACC)
    for k in range(n + 1):
        q[k] = (a[k] - np.dot(b[1 : k + 1], q[k - 1 :: -1][:k])) / b[0]
    return TruncatedSeries._from_ext(q)


def exp_series(f: TruncatedSeries) -> TruncatedSeries:
    """``exp(f)`` from ``g' = f' g``: ``k g_k = sum_j j f_j g_{k-j}``."""
    n = f.order
    c = _ext(f)
    jf = c * np.arange(n + 1)
    g = np.zeros(n + 1, dtype=_ACC)
    g[0] = np.exp(c[0])
    for k in range(1, n + 1):
        g[k] = np.dot(jf[1 : k + 1], g[k - 1 :: -1]) / k
    return TruncatedSeries._from_ext(g)


def _require_unit(f: TruncatedSeries, what: str) -> None:
    if abs(f.coeffs[0] - 1.0) > UNIT_TOL:
        raise InvalidInputError(f"{what} needs constant term 1, got {f.coeffs[0]!r}")


def log_series(f: TruncatedSeries) -> TruncatedSeries:
    """Principal-branch ``log(f)`` for ``f[0] == 1`` (so ``log(f)[0] == 0``)."""
    _require_unit(f, "log_series")
    n = f.order
    c = _ext(f)
    L = np.zeros(n + 1, dtype=_ACC)
    jL = np.zeros(n + 1, dtype=_ACC)
    for k in range(1, n + 1):
        # k f_k = sum_{j=1..k} j L_j f_{k-j}, with f_0 = 1
        L[k] = c[k] - np.dot(jL[1:k], c[k - 1 : 0 : -1]) / k
        jL[k] = k * L[k]
    return TruncatedSeries._from_ext(L)


def pow_real(f: TruncatedSeries, beta: float) -> TruncatedSeries:
    """``f**beta`` on the branch with value 1 at the origin."""
    _require_unit(f, "pow_real")
    out = exp_series(log_series(f) * float(beta))
    c = out.coeffs.copy()
    c[0] = 1.0
    return TruncatedSeries(c, f.order)


def integrate_logderiv(f: TruncatedSeries) -> TruncatedSeries:
    """Series of ``int_0^z (f(t) - 1) / t dt``; coefficient k is ``f_k / k``."""
    _require_unit(f, "integrate_logderiv")
    n = f.order
    r = np.zeros(n + 1, dtype=complex)
    r[1:] = f.coeffs[1:] / np.arange(1, n + 1)
    return TruncatedSeries(r, n)


def compose(f: TruncatedSeries, w: TruncatedSeries) -> TruncatedSeries:
    """Horner evaluation of ``f(w(z))``; requires ``w[0] == 0``."""
    _check_orders(f, w)
    if w.coeffs[0] != 0:
        raise InvalidInputError("compose needs an inner series with zero constant term")
    n = f.order
    wc = w.coeffs
    acc = np.zeros(n + 1, dtype=complex)
    acc[0] = f.coeffs[n]
    for k in range(n - 1, -1, -1):
        acc = np.convolve(acc, wc)[: n + 1]
        acc[0] += f.coeffs[k]
    return TruncatedSeries(acc, n)


def evaluate(f: TruncatedSeries, z):
    """Evaluate the truncated polynomial at ``z`` (scalar or array)."""
    z = np.asarray(z, dtype=complex)
    acc = np.full(z.shape, f.coeffs[-1], dtype=complex)
    for c in f.coeffs[-2::-1]:
        acc = acc * z + c
    return acc if acc.ndim else complex(acc)


def geometric(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """``1 / (1 - z)``."""
    return TruncatedSeries(np.ones(order + 1), order)


def reversion(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse of ``f`` with ``f[0] == 0`` and ``f[1] != 0``.

    Uses Newton iteration on ``f(psi(x)) = x``; each step doubles the number
    of correct coefficients.
    """
    c = f.coeffs
    if c[0] != 0 or c[1] == 0:
        raise InvalidInputError("reversion needs f[0] == 0 and f[1] != 0")
    n = f.order
    x = identity(n)
    df = f.derivative()
    psi = x / c[1]
    correct = 2
    while correct <= n + 1:
        resid = compose(f, psi) - x
        psi = psi - resid / compose(df, psi)
        correct *= 2
    resid = compose(f, psi) - x
    psi = psi - resid / compose(df, psi)
    out = psi.coeffs.copy()
    out[0] = 0.0
    return TruncatedSeries(out, n)
