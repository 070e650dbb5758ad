"""Scalar special functions: incomplete gamma, Laguerre polynomials, log-factorials."""

from __future__ import annotations

import math

import numpy as np
from scipy import special as sps

# ln(n!) is tabulated exactly up to here, log-gamma beyond
_EXACT_LOGFACT_MAX = 256
_LOGFACT_TABLE = np.concatenate(([0.0], np.cumsum(np.log(np.arange(1, _EXACT_LOGFACT_MAX + 1)))))


def _check_order(N: int) -> int:
    if int(N) != N or N < 1:
        raise ValueError(f"incomplete gamma order must be a positive integer, got {N!r}")
    return int(N)


def _check_arg(x: float) -> float:
    x = float(x)
    if not x >= 0.0:
        raise ValueError(f"incomplete gamma argument must be nonnegative, got {x!r}")
    return x


def regularized_lower_gamma(N: int, x: float) -> float:
    """Return gamma(N, x) / (N-1)!, the Poisson tail probability P(n >= N)."""
    return float(sps.gammainc(_check_order(N), _check_arg(x)))


def regularized_upper_gamma(N: int, x: float) -> float:
    """Return 1 - gamma(N, x) / (N-1)!, the Poisson head probability P(n < N)."""
    return float(sps.gammaincc(_check_order(N), _check_arg(x)))


def lower_incomplete_gamma(N: int, x: float) -> float:
    """Lower incomplete gamma function of positive integer order.

    gamma(N, x) = (N-1)! [1 - exp(-x) sum_{j<N} x^j / j!]

    The bracket is the regularized function, evaluated without forming the
    difference ``1 - ...`` so that no digits are lost for large ``x``.

    Raises:
        ValueError: if ``N < 1`` or ``x < 0``.
    """
    N = _check_order(N)
    p = regularized_lower_gamma(N, x)
    return math.exp(log_factorial(N - 1)) * p


def upper_incomplete_gamma(N: int, x: float) -> float:
    """(N-1)! - gamma(N, x), computed from the complementary regularized sum."""
    N = _check_order(N)
    return math.exp(log_factorial(N - 1)) * regularized_upper_gamma(N, x)


def log_lower_incomplete_gamma(N: int, x: float) -> float:
    """ln gamma(N, x); finite for every x > 0 even when gamma itself underflows."""
    N = _check_order(N)
    x = _check_arg(x)
    if x == 0.0:
        return -math.inf
    p = sps.gammainc(N, x)
    if p > 1e-300:
        return log_factorial(N - 1) + math.log(p)
    # deep lower tail: leading term of sum_{j>=N} e^{-x} x^j / j! dominates
    js = np.arange(N, N + 200)
    logs = -x + js * math.log(x) - sps.gammaln(js + 1)
    return log_factorial(N - 1) + float(sps.logsumexp(logs))


def laguerre(N: int, x: float) -> float:
    """Laguerre polynomial L_N(x) by the upward three-term recurrence.

    (n+1) L_{n+1} = (2n+1-x) L_n - n L_{n-1}
    """
    if int(N) != N or N < 0:
        raise ValueError(f"Laguerre order must be a nonnegative integer, got {N!r}")
    N = int(N)
    prev, cur = 1.0, 1.0 - x
    if N == 0:
        return prev
    for n in range(1, N):
        prev, cur = cur, ((2 * n + 1 - x) * cur - n * prev) / (n + 1)
    return cur


def log_factorial(n):
    """ln(n!); exact table for small n, log-gamma above. Accepts arrays."""
    arr = np.asarray(n)
    if np.any(arr < 0):
        raise ValueError("log_factorial needs nonnegative integers")
    if arr.ndim == 0:
        k = int(arr)
        if k <= _EXACT_LOGFACT_MAX:
            return float(_LOGFACT_TABLE[k])
        return float(sps.gammaln(k + 1))
    arr = arr.astype(np.int64)
    out = sps.gammaln(arr + 1.0)
    small = arr <= _EXACT_LOGFACT_MAX
    out[small] = _LOGFACT_TABLE[arr[small]]
    return out
