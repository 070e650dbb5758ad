"""Constructors for the coherent-state families.

Every constructor returns a normalized :class:`~fockbench.fock.FockVector`.
Series-defined states pick their cutoff automatically: the smallest ``M``
whose neglected probability is below ``tail_tol``. The neglected probability
beyond the evaluated range is bounded by a geometric series, which is valid
because every family here has term ratios ``|c_{n+1}/c_n|^2`` that decrease
monotonically past the distribution peak.

Global phase convention: the lowest populated Fock component carries phase
zero, and the component ``n`` steps above it carries ``arg(alpha) * n``.
"""

from __future__ import annotations

import cmath
import math
from typing import Callable

import numpy as np
from scipy import special as sps

from fockbench import special
from fockbench.fock import (
    DEFAULT_TAIL_TOL,
    DeformParam,
    FockVector,
    create,
    deformed_create,
    inner_product,
    _as_k,
)

MAX_CUTOFF = 20000


def _log_abs(alpha: complex) -> float:
    r = abs(alpha)
    return math.log(r) if r > 0 else -math.inf


def _powers(n: np.ndarray, log_r: float) -> np.ndarray:
    """n * ln|alpha| with the convention 0 * ln 0 = 0."""
    if math.isinf(log_r):
        return np.where(n == 0, 0.0, -np.inf)
    return n * log_r


def _auto_length(logw: Callable[[np.ndarray], np.ndarray], tail_tol: float) -> tuple[int, float]:
    """Number of series terms to keep so the relative neglected weight <= tail_tol.

    ``logw(n)`` returns ln|c_n| for the unnormalized series. Returns the term
    count and the neglected-probability estimate.
    """
    length = 64
    while True:
        n = np.arange(length + 1)
        lw = 2.0 * logw(n)
        head, last = lw[:-1], lw[-1]
        top = np.max(head)
        if not np.isfinite(top):
            raise ValueError("series has no nonzero terms")
        if last == -np.inf:
            beyond = 0.0
        else:
            log_ratio = last - lw[-2]
            past_peak = np.argmax(head) < length - 1
            if log_ratio >= 0 or not past_peak:
                if length >= MAX_CUTOFF:
                    raise ValueError("series does not converge within MAX_CUTOFF terms")
                length = min(2 * length, MAX_CUTOFF)
                continue
            # geometric bound on sum_{j >= length} |c_j|^2
            beyond = math.exp(last - top) / -math.expm1(log_ratio)
        p = np.exp(head - top)
        total = math.fsum(p)
        # suffix[i] = weight strictly above index i, plus what lies beyond
        suffix = np.concatenate((np.cumsum(p[::-1])[::-1][1:], [0.0])) + beyond
        rel = suffix / total
        ok = np.nonzero(rel <= tail_tol)[0]
        if ok.size:
            return int(ok[0]) + 1, float(rel[ok[0]])
        if length >= MAX_CUTOFF:
            raise ValueError("series does not converge within MAX_CUTOFF terms")
        length = min(2 * length, MAX_CUTOFF)


def _series_state(
    logw: Callable[[np.ndarray], np.ndarray],
    alpha: complex,
    offset: int,
    tail_tol: float,
    cutoff: int | None,
) -> FockVector:
    """Build sum_n |c_n| e^{i n arg(alpha)} |offset + n>, normalized."""
    if cutoff is None:
        terms, tail = _auto_length(logw, tail_tol)
        cutoff = offset + terms - 1
    else:
        if cutoff < offset:
            raise ValueError(f"cutoff {cutoff} lies below the lowest populated index {offset}")
        terms, tail = cutoff - offset + 1, float("nan")
    n = np.arange(terms)
    lw = logw(n)
    mag = np.exp(lw - np.max(lw))
    phase = np.exp(1j * n * cmath.phase(alpha)) if alpha != 0 else np.ones(terms)
    amps = np.zeros(cutoff + 1, dtype=complex)
    amps[offset:] = mag * phase
    amps /= np.linalg.norm(amps)
    if math.isnan(tail):
        tail = _tail_estimate(logw, terms)
    return FockVector(amps, tail_tol, tail)


def _tail_estimate(logw, terms: int) -> float:
    """Relative weight above an explicitly requested cutoff."""
    try:
        full, _ = _auto_length(logw, 1e-30)
    except ValueError:
        return float("nan")
    full = max(full, terms + 64)
    lw = 2.0 * logw(np.arange(full))
    top = np.max(lw)
    p = np.exp(lw - top)
    return float(math.fsum(p[terms:]) / math.fsum(p))


def coherent(alpha: complex, tail_tol: float = DEFAULT_TAIL_TOL, cutoff: int | None = None) -> FockVector:
    """Glauber coherent state: c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!)."""
    lr = _log_abs(alpha)
    return _series_state(lambda n: _powers(n, lr) - 0.5 * special.log_factorial(n), alpha, 0, tail_tol, cutoff)


def utcs(alpha: complex, N: int, tail_tol: float = DEFAULT_TAIL_TOL) -> FockVector:
    """Upper-truncated coherent state: coherent amplitudes kept on |0>..|N>."""
    if N < 0:
        raise ValueError("truncation order N must be nonnegative")
    lr = _log_abs(alpha)
    s = _series_state(lambda n: _powers(n, lr) - 0.5 * special.log_factorial(n), alpha, 0, tail_tol, N)
    return FockVector(s.amplitudes, tail_tol, 0.0)


def ltcs(alpha: complex, N: int, tail_tol: float = DEFAULT_TAIL_TOL, cutoff: int | None = None) -> FockVector:
    """Lower-truncated coherent state: coherent amplitudes on |N+1>, |N+2>, ...

    c_{N+1+n} is proportional to alpha^n / sqrt((N+1+n)!), so the lowest
    populated component is real and positive.
    """
    if N < 0:
        raise ValueError("truncation order N must be nonnegative")
    lr = _log_abs(alpha)
    return _series_state(
        lambda n: _powers(n, lr) - 0.5 * special.log_factorial(n + N + 1), alpha, N + 1, tail_tol, cutoff
    )


def _deformed_log_weights(alpha: complex, m: int, k: float):
    lr = _log_abs(alpha)

    def logw(n):
        out = _powers(n, lr) - special.log_factorial(n) + 0.5 * special.log_factorial(n + m)
        for j in range(m):
            out = out - np.log1p(k * (n + j))
        return out

    return logw


def pacs(alpha: complex, m: int, tail_tol: float = DEFAULT_TAIL_TOL, cutoff: int | None = None) -> FockVector:
    """Photon-added coherent state, normalized (a^dag)^m |alpha>."""
    if m < 1:
        raise ValueError("photon-addition order m must be >= 1")
    return _series_state(_deformed_log_weights(alpha, m, 0.0), alpha, m, tail_tol, cutoff)


def deformed_pacs(
    alpha: complex, m: int, k, tail_tol: float = DEFAULT_TAIL_TOL, cutoff: int | None = None
) -> FockVector:
    """Normalized (B^dag)^m |alpha> with B^dag = a^dag (1 + k n)^{-1}.

    k = 0 gives :func:`pacs`; k = 1 gives ``ltcs(alpha, m - 1)``.
    """
    if m < 1:
        raise ValueError("photon-addition order m must be >= 1")
    return _series_state(_deformed_log_weights(alpha, m, _as_k(k)), alpha, m, tail_tol, cutoff)


def bernoulli_approx(alpha: complex, N: int) -> FockVector:
    """Two-level approximation of ``ltcs(alpha, N)`` valid for N >> |alpha|^2.

    sqrt((N+2)/(2+N+|alpha|^2)) * (|N+1> + alpha/sqrt(N+2) |N+2>)
    """
    if N < 0:
        raise ValueError("truncation order N must be nonnegative")
    x = abs(alpha) ** 2
    pref = math.sqrt((N + 2) / (2 + N + x))
    amps = np.zeros(N + 3, dtype=complex)
    amps[N + 1] = pref
    amps[N + 2] = pref * alpha / math.sqrt(N + 2)
    return FockVector(amps)


def phase_state(theta: float, s: int) -> FockVector:
    """Truncated phase state (1+s)^{-1/2} sum_{n<=s} e^{i n theta} |n>."""
    if s < 0:
        raise ValueError("phase-state dimension index s must be nonnegative")
    n = np.arange(s + 1)
    return FockVector(np.exp(1j * n * theta) / math.sqrt(s + 1))


def b_displaced_vacuum(
    alpha: complex, k, terms: int | None = None, tail_tol: float = DEFAULT_TAIL_TOL
) -> FockVector:
    """Normalized exp(alpha B^dag - alpha* A)|0>.

    c_n is proportional to alpha^n / (sqrt(n!) (1+k)(1+2k)...(1+(n-1)k)).
    ``terms`` fixes the number of retained series terms; by default it is
    chosen from ``tail_tol``.
    """
    k = _as_k(k)
    lr = _log_abs(alpha)

    def logw(n):
        n = np.asarray(n)
        if k == 0.0:
            prod = np.zeros(n.shape)
        else:
            # prod_{j=1}^{n-1} (1 + j k) = k^{n-1} Gamma(n + 1/k) / Gamma(1 + 1/k)
            prod = (n - 1) * math.log(k) + sps.gammaln(n + 1.0 / k) - sps.gammaln(1.0 + 1.0 / k)
        return _powers(n, lr) - 0.5 * special.log_factorial(n) - prod

    cutoff = None if terms is None else terms - 1
    return _series_state(logw, alpha, 0, tail_tol, cutoff)


def apply_repeated(op, s: FockVector, times: int, *args) -> FockVector:
    for _ in range(times):
        s = op(s, *args)
    return s


def pacs_by_operators(alpha: complex, m: int, tail_tol: float = DEFAULT_TAIL_TOL) -> FockVector:
    """normalize((a^dag)^m coherent(alpha)), the operator route to :func:`pacs`."""
    return apply_repeated(create, coherent(alpha, tail_tol), m).normalize()


def deformed_pacs_by_operators(alpha: complex, m: int, k, tail_tol: float = DEFAULT_TAIL_TOL) -> FockVector:
    """normalize((B^dag)^m coherent(alpha))."""
    d = DeformParam(_as_k(k))
    return apply_repeated(deformed_create, coherent(alpha, tail_tol), m, d).normalize()


def coherent_decomposition_check(alpha: complex, N: int) -> float:
    """Norm distance between |alpha> and its UTCS + LTCS reconstruction.

    The coherent state is split into its components on {0..N} and {N+1..}
    with weights <UTCS|alpha> and <LTCS|alpha> computed from the vectors
    themselves; all three vectors share a common cutoff.
    """
    base = coherent(alpha)
    top = max(base.cutoff, ltcs(alpha, N).cutoff, N + 1)
    coh = coherent(alpha, cutoff=top)
    u = utcs(alpha, N)
    l = ltcs(alpha, N, cutoff=top)
    recon = inner_product(u, coh) * u.padded(top) + inner_product(l, coh) * l.padded(top)
    return float(np.linalg.norm(recon - coh.padded(top)))


def printed_norm_utcs(alpha: complex, N: int) -> float:
    """N_u from exp(|alpha|^2) [1 - gamma(N+1, |alpha|^2) / N!]."""
    x = abs(alpha) ** 2
    return 1.0 / math.sqrt(math.exp(x) * special.regularized_upper_gamma(N + 1, x))


def printed_norm_ltcs(alpha: complex, N: int) -> float:
    """N_l as printed: exp(|alpha|^2) gamma(N+1, |alpha|^2) / N!, inverted and rooted."""
    x = abs(alpha) ** 2
    return 1.0 / math.sqrt(math.exp(x) * special.regularized_lower_gamma(N + 1, x))


def series_norm_ltcs(alpha: complex, N: int) -> float:
    """N_l from direct summation of sum_n |alpha|^{2n} / (N+1+n)!.

    Equals the printed constant times |alpha|^{N+1}.
    """
    x = abs(alpha) ** 2
    log_inv_sq = x + special.log_lower_incomplete_gamma(N + 1, x) - special.log_factorial(N) - (N + 1) * math.log(x)
    return math.exp(-0.5 * log_inv_sq)


def printed_decomposition_distance(alpha: complex, N: int) -> float:
    """Distance of the literal two-term decomposition with the printed N_u, N_l.

    e^{-|alpha|^2/2} / (N_u N_l) [N_l |u> + N_u alpha^{N+1} |l>]
    """
    nu, nl = printed_norm_utcs(alpha, N), printed_norm_ltcs(alpha, N)
    base = coherent(alpha)
    top = max(base.cutoff, ltcs(alpha, N).cutoff, N + 1)
    coh = coherent(alpha, cutoff=top).padded(top)
    u = utcs(alpha, N).padded(top)
    l = ltcs(alpha, N, cutoff=top).padded(top)
    pref = math.exp(-abs(alpha) ** 2 / 2) / (nu * nl)
    recon = pref * (nl * u + nu * alpha ** (N + 1) * l)
    return float(np.linalg.norm(recon - coh))
