"""Single-mode nonclassicality diagnostics.

Everything is computed from Fock amplitudes. Closed forms for the truncated
coherent states come in pairs: the commonly quoted expression, and the one
with the incomplete-gamma indices that direct summation actually gives. Both
can be compared against the numerics.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from fockbench import special, states
from fockbench.fock import FockVector, inner_product, ladder_moments, _require_normalized

DEFAULT_PHASE_GRID = 2048


class QuadratureStats(NamedTuple):
    """Means and variances of X = (a^dag + a)/sqrt2 and P = (a - a^dag)/(i sqrt2)."""

    mean_x: float
    mean_p: float
    var_x: float
    var_p: float

    @property
    def squeezed(self) -> bool:
        return min(self.var_x, self.var_p) < 0.5

    @property
    def delta_x(self) -> float:
        return math.sqrt(self.var_x)

    @property
    def delta_p(self) -> float:
        return math.sqrt(self.var_p)


@dataclass(frozen=True)
class PhaseDistribution:
    theta_grid: np.ndarray
    density: np.ndarray

    def integral(self) -> float:
        # uniform periodic grid: trapezoid rule reduces to a plain sum
        return float(np.sum(self.density) * (2 * math.pi / self.theta_grid.size))

    def fwhm(self) -> float:
        """Full width at half maximum of the main peak, in radians.

        Measured by linear interpolation on the periodic grid around the
        global maximum; returns 2*pi when the density never drops to half.
        """
        d = self.density
        size = d.size
        step = 2 * math.pi / size
        peak = int(np.argmax(d))
        half = d[peak] / 2
        if np.all(d >= half):
            return 2 * math.pi

        def walk(direction):
            i = peak
            for count in range(1, size):
                j = (peak + direction * count) % size
                if d[j] < half:
                    frac = (d[i] - half) / (d[i] - d[j])
                    return (count - 1 + frac) * step
                i = j
            return math.pi

        return walk(1) + walk(-1)


def quadrature_stats(s: FockVector) -> QuadratureStats:
    """Quadrature means and variances of a normalized state."""
    m = ladder_moments(s)
    re_a, im_a = m.mean_a.real, m.mean_a.imag
    var_x = 0.5 + m.mean_n + m.mean_a2.real - 2 * re_a * re_a
    var_p = 0.5 + m.mean_n - m.mean_a2.real - 2 * im_a * im_a
    return QuadratureStats(math.sqrt(2) * re_a, math.sqrt(2) * im_a, var_x, var_p)


def photon_number_variance(s: FockVector) -> float:
    m = ladder_moments(s)
    return m.mean_n2 - m.mean_n**2


def mandel_q(s: FockVector) -> float:
    """Mandel Q = Var(n)/<n> - 1; negative for sub-Poissonian light.

    Raises:
        ValueError: for the vacuum, where Q is undefined.
    """
    m = ladder_moments(s)
    if m.mean_n <= 0.0:
        raise ValueError("Mandel Q is undefined for a state with <n> = 0")
    return (m.mean_n2 - m.mean_n**2) / m.mean_n - 1.0


def bernoulli_number_variance(alpha: complex, N: int) -> float:
    """|alpha|^2 (2+N) / (2+|alpha|^2+N)^2, the number variance of the two-level limit."""
    x = abs(alpha) ** 2
    return x * (2 + N) / (2 + x + N) ** 2


def bernoulli_mandel_q(alpha: complex, N: int) -> float:
    x = abs(alpha) ** 2
    return x / ((2 + N + x) * (1 + N + x)) - 1.0


def phase_distribution(s: FockVector, grid_size: int = DEFAULT_PHASE_GRID) -> PhaseDistribution:
    """P(theta) = |sum_n c_n e^{-i n theta}|^2 / (2 pi) on a uniform grid over [-pi, pi)."""
    _require_normalized(s)
    if grid_size < 1:
        raise ValueError("grid_size must be positive")
    theta = -math.pi + 2 * math.pi * np.arange(grid_size) / grid_size
    n = np.arange(s.dim)
    amp = np.exp(-1j * np.outer(theta, n)) @ s.amplitudes
    return PhaseDistribution(theta, np.abs(amp) ** 2 / (2 * math.pi))


def pegg_barnett_density(s: FockVector, theta: float, dim_index: int) -> float:
    """(s+1)/(2 pi) |<theta|psi>|^2 for a finite phase state of index ``dim_index``."""
    ov = inner_product(states.phase_state(theta, dim_index), s)
    return (dim_index + 1) / (2 * math.pi) * abs(ov) ** 2


class ClosedFormPair(NamedTuple):
    """A literal printed expression next to its index-corrected counterpart."""

    printed: float | complex | None
    corrected: float | complex


def ltcs_variance_closed_form(alpha: complex, N: int) -> ClosedFormPair:
    """Quadrature variance of ``ltcs(alpha, N)`` for real alpha.

    printed:   1/2 [1 + 2|alpha|^2 ((N+1) gamma(N,x)/gamma(N+1,x) - 1)]
    corrected: same with prefactor N, which follows from <n> of the LTCS.

    Raises:
        ValueError: for N = 0, where gamma(0, x) is undefined.
    """
    if N < 1:
        raise ValueError("closed form requires N >= 1")
    x = abs(alpha) ** 2
    ratio = _lower_gamma_ratio(N, x)
    printed = 0.5 * (1 + 2 * x * ((N + 1) * ratio - 1))
    corrected = 0.5 * (1 + 2 * x * (N * ratio - 1))
    return ClosedFormPair(printed, corrected)


def _lower_gamma_ratio(N: int, x: float) -> float:
    """gamma(N, x) / gamma(N+1, x), in log space."""
    if x == 0.0:
        # both vanish like x^N / N and x^{N+1} / (N+1)
        return math.inf
    return math.exp(special.log_lower_incomplete_gamma(N, x) - special.log_lower_incomplete_gamma(N + 1, x))


def _head_sum(N: int, x: float) -> float:
    """sum_{n=0}^{N} x^n / n!, times e^{-x}."""
    return special.regularized_upper_gamma(N + 1, x)


def utcs_mean_a_closed_form(alpha: complex, N: int) -> ClosedFormPair:
    """<a> for ``utcs(alpha, N)``.

    printed:   N alpha [(N-1)! - gamma(N-1,x)] / [N! - gamma(N,x)]
    corrected: N alpha [(N-1)! - gamma(N,x)]   / [N! - gamma(N+1,x)]
    """
    x = abs(alpha) ** 2
    corrected = alpha * (_head_sum(N - 1, x) / _head_sum(N, x)) if N >= 1 else 0j
    printed = None
    if N >= 2:
        printed = N * alpha * _upper_literal(N - 1, N - 1, x) / _upper_literal(N, N, x)
    return ClosedFormPair(printed, corrected)


def utcs_mean_a2_closed_form(alpha: complex, N: int) -> ClosedFormPair:
    """<a^2> for ``utcs(alpha, N)``.

    printed:   N(N-1) alpha^2 [(N-1)! - gamma(N-1,x)] / [N! - gamma(N,x)]
    corrected: N(N-1) alpha^2 [(N-2)! - gamma(N-1,x)] / [N! - gamma(N+1,x)]
    """
    x = abs(alpha) ** 2
    corrected = alpha**2 * (_head_sum(N - 2, x) / _head_sum(N, x)) if N >= 2 else 0j
    printed = None
    if N >= 2:
        printed = N * (N - 1) * alpha**2 * _upper_literal(N - 1, N - 1, x) / _upper_literal(N, N, x)
    return ClosedFormPair(printed, corrected)


def utcs_mean_n_closed_form(alpha: complex, N: int) -> ClosedFormPair:
    """<n> for ``utcs(alpha, N)``; same index pattern as :func:`utcs_mean_a_closed_form`."""
    x = abs(alpha) ** 2
    corrected = x * (_head_sum(N - 1, x) / _head_sum(N, x)) if N >= 1 else 0.0
    printed = None
    if N >= 2:
        printed = N * x * _upper_literal(N - 1, N - 1, x) / _upper_literal(N, N, x)
    return ClosedFormPair(printed, corrected)


def ltcs_mean_n_closed_form(alpha: complex, N: int) -> ClosedFormPair:
    """<n> for ``ltcs(alpha, N)``: N x gamma(N,x)/gamma(N+1,x) (printed and corrected agree)."""
    if N < 1:
        x = abs(alpha) ** 2
        # sum_{n>=1} n x^n/n! / sum_{n>=1} x^n/n!
        val = x / -math.expm1(-x) if x > 0 else 1.0
        return ClosedFormPair(None, val)
    x = abs(alpha) ** 2
    val = N * x * _lower_gamma_ratio(N, x)
    return ClosedFormPair(val, val)


def _upper_literal(fact_order: int, gamma_order: int, x: float) -> float:
    """fact_order! - gamma(gamma_order, x), both terms exactly as written.

    Evaluated relative to e^{-x} scaling would lose the literal structure, so
    the factorial and the incomplete gamma are formed separately.
    """
    return math.exp(special.log_factorial(fact_order)) - special.lower_incomplete_gamma(gamma_order, x)


def pacs_ltcs_overlap(alpha: complex, N: int) -> ClosedFormPair:
    """|<pacs(alpha, N+1) | ltcs(alpha, N)>|^2.

    ``printed`` is x^{N+1} / [(N+1) gamma(N+1,x) L_{N+1}(-x)]; ``corrected``
    holds the numeric overlap of the two constructed vectors.
    """
    x = abs(alpha) ** 2
    m = N + 1
    printed = None
    if x > 0:
        log_val = (
            m * math.log(x)
            - math.log(m)
            - special.log_lower_incomplete_gamma(m, x)
            - math.log(special.laguerre(m, -x))
        )
        printed = math.exp(log_val)
    p = states.pacs(alpha, m)
    l = states.ltcs(alpha, N)
    top = max(p.cutoff, l.cutoff)
    p = states.pacs(alpha, m, cutoff=top)
    l = states.ltcs(alpha, N, cutoff=top)
    return ClosedFormPair(printed, abs(inner_product(p, l)) ** 2)


def pacs_norm_closed_form(alpha: complex, m: int) -> float:
    """sum_n |alpha|^{2n} (n+m)!/(n!)^2 = m! L_m(-|alpha|^2) e^{|alpha|^2}."""
    x = abs(alpha) ** 2
    return math.exp(special.log_factorial(m) + x) * special.laguerre(m, -x)


def resolution_of_identity_matrix(
    N: int,
    alpha_max: float,
    radial_nodes: int,
    angular_nodes: int,
    basis_dim: int,
) -> np.ndarray:
    """(1/pi) int d^2 alpha [gamma(N+1,|alpha|^2)/N!] |alpha,N;l><alpha,N;l| on the disk.

    Product rule: Gauss-Legendre in r = |alpha|^2 over [0, alpha_max^2]
    (d^2 alpha = dr dphi / 2) times the periodic trapezoid rule in phi.
    Only the leading ``basis_dim`` block is returned.
    """
    r_nodes, r_weights = np.polynomial.legendre.leggauss(radial_nodes)
    rmax = alpha_max**2
    r_nodes = 0.5 * rmax * (r_nodes + 1.0)
    r_weights = 0.5 * rmax * r_weights
    phis = 2 * math.pi * np.arange(angular_nodes) / angular_nodes
    dphi = 2 * math.pi / angular_nodes

    blocks = []
    for r, wr in zip(r_nodes, r_weights):
        weight = special.regularized_lower_gamma(N + 1, r) * wr * dphi / (2 * math.pi)
        for phi in phis:
            v = states.ltcs(math.sqrt(r) * complex(math.cos(phi), math.sin(phi)), N).padded(basis_dim - 1)
            blocks.append(weight * np.outer(v, v.conj()))
    # numpy's pairwise summation keeps the result order-deterministic
    return np.sum(np.array(blocks), axis=0)


def resolution_of_identity_check(
    N: int,
    alpha_max: float = 8.0,
    radial_nodes: int = 96,
    angular_nodes: int | None = None,
    basis_dim: int = 12,
    tol: float = 1e-6,
) -> float:
    """Max elementwise deviation of the quadrature from I - sum_{n<=N} |n><n|.

    Warns when the probability mass of |basis_dim - 1> beyond ``alpha_max``
    (the dominant neglected contribution) exceeds ``tol``.
    """
    if angular_nodes is None:
        angular_nodes = 2 * basis_dim + 2
    # mass of x^{d-1} e^{-x} / (d-1)! beyond alpha_max^2
    outside = special.regularized_upper_gamma(basis_dim, alpha_max**2)
    if outside > tol:
        warnings.warn(
            f"integrand tail beyond alpha_max={alpha_max} is {outside:.2e} > {tol:.1e}",
            RuntimeWarning,
            stacklevel=2,
        )
    mat = resolution_of_identity_matrix(N, alpha_max, radial_nodes, angular_nodes, basis_dim)
    target = np.diag([0.0 if n <= N else 1.0 for n in range(basis_dim)])
    return float(np.max(np.abs(mat - target)))
