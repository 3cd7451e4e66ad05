"""
Truncated complex power series.

A :class:`TruncatedSeries` holds the Taylor coefficients ``c_0 .. c_N`` of an
analytic function about the origin. ``N`` is the *order*: coefficients above it
are unknown, not zero, so every binary operation truncates to the smaller order
of its operands.

    >>> f = TruncatedSeries([0, 1, 1, 1, 1])      # z/(1-z) to order 4
    >>> revert(NormalizedSeries(f)).coeffs.real
    array([ 0.,  1., -1.,  1., -1.])

:class:`NormalizedSeries` adds the constraint ``c_0 = 0, c_1 = 1`` used for
functions ``f(z) = z + a_2 z^2 + ...``.
"""

from __future__ import annotations

import csv
import io
import json
from numbers import Number
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "SeriesError",
    "ZeroConstantTermError",
    "TruncatedSeries",
    "NormalizedSeries",
    "add",
    "mul",
    "div",
    "compose",
    "exp_series",
    "log_series",
    "power",
    "integrate",
    "derivative",
    "dilate",
    "root_k",
    "revert",
    "to_csv",
    "from_csv",
    "to_json",
    "from_json",
]

ZERO_TOL = 1e-14
DEFAULT_ORDER = 12


class SeriesError(ValueError):
    pass


class ZeroConstantTermError(SeriesError, ZeroDivisionError):
    pass


class TruncatedSeries:
    """Immutable truncated power series with complex coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[complex] | "TruncatedSeries"):
        if isinstance(coeffs, TruncatedSeries):
            arr = coeffs._c
        else:
            arr = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                           dtype=complex)
        if arr.ndim != 1:
            raise SeriesError("coefficients must be one-dimensional")
        if arr.size < 2:
            raise SeriesError("a series needs order >= 1 (at least two coefficients)")
        if not np.all(np.isfinite(arr)):
            raise SeriesError("coefficients must be finite")
        arr = arr.copy()
        arr.flags.writeable = False
        self._c = arr

    @classmethod
    def constant(cls, value: complex, order: int) -> "TruncatedSeries":
        c = np.zeros(order + 1, dtype=complex)
        c[0] = value
        return TruncatedSeries(c)

    @classmethod
    def monomial(cls, n: int, order: int, value: complex = 1.0) -> "TruncatedSeries":
        if n > order:
            raise SeriesError(f"monomial degree {n} exceeds order {order}")
        c = np.zeros(order + 1, dtype=complex)
        c[n] = value
        return TruncatedSeries(c)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def order(self) -> int:
        return self._c.size - 1

    def __len__(self) -> int:
        return self._c.size

    def __getitem__(self, n):
        return self._c[n]

    def __iter__(self):
        return iter(self._c)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({np.array2string(self._c, precision=6)})"

    def __call__(self, z):
        """Evaluate the truncated polynomial at ``z`` (scalar or array)."""
        z = np.asarray(z, dtype=complex)
        out = np.full(z.shape, self._c[-1], dtype=complex)
        for c in self._c[-2::-1]:
            out = out * z + c
        return out if out.ndim else complex(out)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise SeriesError(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self._c[: order + 1])

    def allclose(self, other, tol: float = 1e-12) -> bool:
        other = _as_series(other, self.order)
        n = min(self.order, other.order)
        return bool(np.max(np.abs(self._c[: n + 1] - other._c[: n + 1])) <= tol)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        return add(self, _as_series(other, self.order))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self._c)

    def __sub__(self, other):
        return add(self, -_as_series(other, self.order))

    def __rsub__(self, other):
        return add(_as_series(other, self.order), -self)

    def __mul__(self, other):
        if isinstance(other, Number):
            return TruncatedSeries(self._c * other)
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            return TruncatedSeries(self._c / other)
        return div(self, other)

    def __rtruediv__(self, other):
        return div(_as_series(other, self.order), self)

    def __pow__(self, p):
        return power(self, p)


class NormalizedSeries(TruncatedSeries):
    """Series ``z + a_2 z^2 + a_3 z^3 + ...`` (``c_0 = 0`` and ``c_1 = 1`` exactly)."""

    __slots__ = ()

    def __init__(self, coeffs):
        super().__init__(coeffs)
        if self._c[0] != 0 or self._c[1] != 1:
            raise SeriesError(
                f"not normalized: c0={self._c[0]!r}, c1={self._c[1]!r} (need 0 and 1)")

    @classmethod
    def from_tail(cls, tail: Sequence[complex], order: int | None = None) -> "NormalizedSeries":
        """Build ``z + tail[0] z^2 + tail[1] z^3 + ...``, zero-padded to ``order``."""
        order = max(order or 0, len(tail) + 1)
        c = np.zeros(order + 1, dtype=complex)
        c[1] = 1.0
        c[2 : 2 + len(tail)] = tail
        return cls(c)

    @classmethod
    def identity(cls, order: int) -> "NormalizedSeries":
        return cls.from_tail([], order)

    def a(self, n: int) -> complex:
        return complex(self._c[n])


def _as_series(x, order: int) -> TruncatedSeries:
    if isinstance(x, TruncatedSeries):
        return x
    if isinstance(x, Number):
        return TruncatedSeries.constant(x, order)
    return TruncatedSeries(x)


def _min_order(*series: TruncatedSeries) -> int:
    return min(s.order for s in series)


# array kernels (all operate on coefficient arrays of equal length) --------------

_WIDE = np.clongdouble


def _mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.convolve(a, b)[: a.size]


def _div(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if abs(b[0]) < ZERO_TOL:
        raise ZeroConstantTermError(f"divisor has constant term {b[0]!r}")
    n = a.size
    q = np.zeros(n, dtype=complex)
    q[0] = a[0] / b[0]
    for i in range(1, n):
        q[i] = (a[i] - np.dot(b[1 : i + 1], q[i - 1 :: -1])) / b[0]
    return q


def _exp(a: np.ndarray) -> np.ndarray:
    n = a.size
    e = np.zeros(n, dtype=complex)
    e[0] = 1.0
    ja = np.arange(n) * a
    for i in range(1, n):
        e[i] = np.dot(ja[1 : i + 1], e[i - 1 :: -1]) / i
    return e


def _log(a: np.ndarray) -> np.ndarray:
    if abs(a[0]) < ZERO_TOL:
        raise ZeroConstantTermError("log of a series with vanishing constant term")
    n = a.size
    out = np.zeros(n, dtype=complex)
    out[0] = np.log(a[0])
    jl = np.zeros(n, dtype=complex)
    for i in range(1, n):
        s = np.dot(jl[1:i], a[i - 1 : 0 : -1]) if i > 1 else 0.0
        out[i] = (a[i] - s / i) / a[0]
        jl[i] = i * out[i]
    return out


def _compose(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    # Horner in extended precision: the partial sums cancel heavily for
    # inner series with large coefficients.
    outer = outer.astype(_WIDE)
    inner = inner.astype(_WIDE)
    res = np.zeros(inner.size, dtype=_WIDE)
    res[0] = outer[-1]
    for c in outer[-2::-1]:
        res = _mul(res, inner)
        res[0] += c
    return res.astype(complex)


# public operations ------------------------------------------------------------

def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = _min_order(a, b) + 1
    return TruncatedSeries(a.coeffs[:n] + b.coeffs[:n])


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = _min_order(a, b) + 1
    return TruncatedSeries(_mul(a.coeffs[:n], b.coeffs[:n]))


def div(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Quotient ``a/b``; raises :class:`ZeroConstantTermError` if ``|b_0| < 1e-14``."""
    n = _min_order(a, b) + 1
    return TruncatedSeries(_div(a.coeffs[:n], b.coeffs[:n]))


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """Coefficients of ``outer(inner(z))``. The inner series must vanish at 0."""
    if inner[0] != 0:
        raise SeriesError(f"inner series must have zero constant term, got {inner[0]!r}")
    n = _min_order(outer, inner) + 1
    return TruncatedSeries(_compose(outer.coeffs[:n], inner.coeffs[:n]))


def exp_series(a: TruncatedSeries) -> TruncatedSeries:
    if a[0] != 0:
        raise SeriesError("exp_series requires a zero constant term")
    return TruncatedSeries(_exp(a.coeffs))


def log_series(a: TruncatedSeries) -> TruncatedSeries:
    """Principal logarithm; the constant term is ``log(a_0)``."""
    return TruncatedSeries(_log(a.coeffs))


def power(a: TruncatedSeries, p) -> TruncatedSeries:
    """``a**p``. Integer ``p >= 0`` uses repeated products; otherwise ``a_0 != 0``
    is required and the principal branch ``a_0**p * exp(p log(a/a_0))`` is used."""
    if isinstance(p, (int, np.integer)) and p >= 0:
        out = np.zeros(len(a), dtype=complex)
        out[0] = 1.0
        base = a.coeffs
        while p:
            if p & 1:
                out = _mul(out, base)
            p >>= 1
            if p:
                base = _mul(base, base)
        return TruncatedSeries(out)
    c = a.coeffs
    if abs(c[0]) < ZERO_TOL:
        raise ZeroConstantTermError("non-integer power of a series vanishing at 0")
    lg = _log(c / c[0])
    return TruncatedSeries(c[0] ** p * _exp(p * lg))


def integrate(a: TruncatedSeries) -> TruncatedSeries:
    """Termwise antiderivative vanishing at 0; the order grows by one."""
    c = np.zeros(len(a) + 1, dtype=complex)
    c[1:] = a.coeffs / np.arange(1, len(a) + 1)
    return TruncatedSeries(c)


def derivative(a: TruncatedSeries) -> TruncatedSeries:
    if a.order < 2:
        raise SeriesError("derivative of an order-1 series has order 0")
    return TruncatedSeries(a.coeffs[1:] * np.arange(1, len(a)))


def dilate(a: TruncatedSeries, k: int) -> TruncatedSeries:
    """``a(z**k)``; the order becomes ``k * order``."""
    if k < 1:
        raise SeriesError("k must be a positive integer")
    c = np.zeros(k * a.order + 1, dtype=complex)
    c[::k] = a.coeffs
    return TruncatedSeries(c)


def root_k(a: TruncatedSeries, k: int, tol: float = 1e-12) -> NormalizedSeries:
    """Principal ``a**(1/k)`` for ``a = z**k (1 + u(z))`` with ``u(0) = 0``.

    Returns ``z (1 + u)**(1/k)`` of order ``a.order - k + 1``.
    """
    if k < 1:
        raise SeriesError("k must be a positive integer")
    c = a.coeffs
    if a.order < k:
        raise SeriesError(f"order {a.order} too small for a k={k} root")
    if np.any(np.abs(c[:k]) > tol) or abs(c[k] - 1) > tol:
        raise SeriesError("root_k expects a series of the form z**k (1 + u), u(0) = 0")
    tail = c[k:].copy()
    tail[0] = 1.0
    if tail.size == 1 or k == 1:
        body = tail
    else:
        body = _exp(_log(tail) / k)
    out = np.zeros(body.size + 1, dtype=complex)
    out[1:] = body
    return NormalizedSeries(out)


def revert(f: NormalizedSeries) -> NormalizedSeries:
    """Compositional inverse ``g`` with ``g(f(z)) = z`` to the order of ``f``.

    Solved degree by degree: ``[z^n] sum_m g_m f^m = 0`` for ``n >= 2``,
    using ``[z^n] f^n = 1``.
    """
    if not isinstance(f, NormalizedSeries):
        f = NormalizedSeries(f)
    c = f.coeffs.astype(_WIDE)
    n = c.size
    powers = [None, c]
    for _ in range(2, n):
        powers.append(_mul(powers[-1], c))
    g = np.zeros(n, dtype=complex)
    g[1] = 1.0
    for deg in range(2, n):
        # solve against the already-rounded lower coefficients so each degree
        # carries only its own rounding error
        g[deg] = -sum(_WIDE(g[m]) * powers[m][deg] for m in range(1, deg))
    return NormalizedSeries(g)


# serialization ----------------------------------------------------------------

def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def to_csv(s: TruncatedSeries, header: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(["index", "re", "im"])
    for i, c in enumerate(s.coeffs):
        w.writerow([i, _fmt(c.real), _fmt(c.imag)])
    return buf.getvalue()


def from_csv(text: str) -> TruncatedSeries:
    """Parse ``index,re,im`` rows (header optional). Missing indices are zero."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(x.strip() for x in r)]
    if rows and rows[0][0].strip().lower() == "index":
        rows = rows[1:]
    if not rows:
        raise SeriesError("no coefficient rows")
    entries = {}
    for r in rows:
        if len(r) != 3:
            raise SeriesError(f"expected 3 columns, got {r!r}")
        try:
            i = int(r[0])
            entries[i] = complex(float(r[1]), float(r[2]))
        except ValueError as exc:
            raise SeriesError(f"bad row {r!r}") from exc
        if i < 0:
            raise SeriesError("negative index")
    c = np.zeros(max(entries) + 1, dtype=complex)
    for i, v in entries.items():
        c[i] = v
    return TruncatedSeries(c)


def to_json(s: TruncatedSeries) -> str:
    return json.dumps([[float(c.real), float(c.imag)] for c in s.coeffs])


def from_json(text: str) -> TruncatedSeries:
    try:
        data = json.loads(text)
        return TruncatedSeries([complex(float(re), float(im)) for re, im in data])
    except (TypeError, ValueError) as exc:
        raise SeriesError(f"invalid series JSON: {exc}") from exc
