"""Incomplete gamma functions, harmonic numbers and adaptive Gauss-Kronrod quadrature."""

from __future__ import annotations

import heapq
import math
from typing import Callable, Sequence

import numpy as np

EULER_GAMMA = 0.57721566490153286061

_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 1000


class NumericalError(ArithmeticError):
    """A series, continued fraction or quadrature failed to converge."""


def _check_domain(a: float, x: float) -> None:
    if not a > 0:
        raise ValueError(f"incomplete gamma needs a > 0, got a={a}")
    if not x >= 0:
        raise ValueError(f"incomplete gamma needs x >= 0, got x={x}")


def _lower_series(a: float, x: float) -> float:
    # gamma(a, x) = e^-x x^a sum_n x^n / (a (a+1) ... (a+n))
    if x == 0.0:
        return 0.0
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            return total * math.exp(-x + a * math.log(x))
    raise NumericalError(f"lower incomplete gamma series did not converge (a={a}, x={x})")


def _upper_cf(a: float, x: float) -> float:
    # Modified Lentz on Gamma(a, x) = e^-x x^a / (x+1-a- 1(1-a)/(x+3-a- ...))
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h * math.exp(-x + a * math.log(x))
    raise NumericalError(f"upper incomplete gamma continued fraction did not converge (a={a}, x={x})")


def upper_incomplete_gamma(a: float, x: float) -> float:
    """Non-regularized upper incomplete gamma ``Gamma(a, x)``.

    Series for ``x < a + 1``, continued fraction otherwise.
    """
    _check_domain(a, x)
    if x < a + 1.0:
        return math.gamma(a) - _lower_series(a, x)
    return _upper_cf(a, x)


def lower_incomplete_gamma(a: float, x: float) -> float:
    _check_domain(a, x)
    if x < a + 1.0:
        return _lower_series(a, x)
    return math.gamma(a) - _upper_cf(a, x)


def gamma_interval(a: float, lo: float, hi: float) -> float:
    """``int_lo^hi t**(a-1) e**-t dt`` without subtracting two near-equal tails."""
    if hi < lo:
        return -gamma_interval(a, hi, lo)
    _check_domain(a, lo)
    split = a + 1.0
    if hi <= split:
        return _lower_series(a, hi) - _lower_series(a, lo)
    if lo >= split:
        upper_hi = _upper_cf(a, hi) if math.isfinite(hi) else 0.0
        return _upper_cf(a, lo) - upper_hi
    upper_hi = _upper_cf(a, hi) if math.isfinite(hi) else 0.0
    return (_lower_series(a, split) - _lower_series(a, lo)) + (_upper_cf(a, split) - upper_hi)


def harmonic_number(n: int) -> float:
    if n < 1:
        raise ValueError(f"harmonic number needs n >= 1, got {n}")
    return math.fsum(1.0 / k for k in range(1, n + 1))


# 15-point Kronrod rule with its embedded 7-point Gauss rule (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

KRONROD_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Gauss nodes are the odd-indexed Kronrod nodes.
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[1::2] = np.concatenate([_WG, _WG[-2::-1]])


def _gk15(f: Callable, a: float, b: float):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    vals = np.array([np.asarray(f(mid + half * t), dtype=float) for t in KRONROD_NODES])
    k = half * np.tensordot(KRONROD_WEIGHTS, vals, axes=1)
    g = half * np.tensordot(GAUSS_WEIGHTS, vals, axes=1)
    return k, np.abs(k - g)


def adaptive_quad(segments: Sequence[tuple[Callable, float, float]], rtol: float = 1e-10,
                  atol: float = 0.0, limit: int = 5000):
    """Globally adaptive G7-K15 quadrature over a list of ``(f, a, b)`` pieces.

    ``f`` may return a scalar or a fixed-shape array; for arrays the
    tolerance applies componentwise. The interval with the largest error
    estimate is bisected until the summed estimate meets
    ``max(atol, rtol * |I|)``. Returns ``(value, error_estimate)``.
    """
    heap = []
    total = None
    err_total = None
    counter = 0
    for f, a, b in segments:
        if not b > a:
            continue
        val, err = _gk15(f, a, b)
        total = val if total is None else total + val
        err_total = err if err_total is None else err_total + err
        heapq.heappush(heap, (-float(np.max(err)), counter, f, a, b, val, err))
        counter += 1
    if total is None:
        return 0.0, 0.0

    while True:
        target = np.maximum(atol, rtol * np.abs(total))
        if np.all(err_total <= target):
            break
        if counter >= limit:
            raise NumericalError(
                f"quadrature hit {limit} subintervals; error {np.max(err_total):.3g} "
                f"above target {np.max(target):.3g}")
        _, _, f, a, b, val, err = heapq.heappop(heap)
        m = 0.5 * (a + b)
        if not (a < m < b):
            raise NumericalError("quadrature interval collapsed below float resolution")
        v1, e1 = _gk15(f, a, m)
        v2, e2 = _gk15(f, m, b)
        total = total - val + v1 + v2
        err_total = err_total - err + e1 + e2
        for piece in ((a, m, v1, e1), (m, b, v2, e2)):
            heapq.heappush(heap, (-float(np.max(piece[3])), counter, f, piece[0], piece[1], piece[2], piece[3]))
            counter += 1

    # Re-sum from the leaves so cancellation from the running updates is dropped.
    total = sum((item[5] for item in heap), start=0.0 * heap[0][5])
    err_total = sum((item[6] for item in heap), start=0.0 * heap[0][6])
    return total, err_total
