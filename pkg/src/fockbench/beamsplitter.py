"""Beam-splitter transformation, partial trace and entanglement potential.

The beam splitter is U = exp(Gamma a^dag b - Gamma^* a b^dag) with complex
transmittance Gamma = |Gamma| e^{i theta}. It conserves n_a + n_b, so it is
applied sector by sector. Two independent routes are available:

* ``"expm"``: matrix exponential of the tridiagonal generator in each sector;
* ``"binomial"``: the closed form obtained from
  U a^dag U^dag = cos|G| a^dag - e^{-i theta} sin|G| b^dag and
  U b^dag U^dag = cos|G| b^dag + e^{+i theta} sin|G| a^dag.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy import linalg as sla

from fockbench import special
from fockbench.fock import FockVector, _require_normalized

BALANCED = 1j * math.pi / 4
MAX_SECTOR = 4096


@dataclass(frozen=True, eq=False)
class TwoModeVector:
    """Amplitudes d[n, k] over |n>_a |k>_b."""

    amplitudes: np.ndarray

    def __post_init__(self):
        d = np.array(self.amplitudes, dtype=complex)
        if d.ndim != 2:
            raise ValueError("two-mode amplitudes must be a matrix")
        d.setflags(write=False)
        object.__setattr__(self, "amplitudes", d)

    @classmethod
    def product(cls, a: FockVector, b: FockVector) -> "TwoModeVector":
        return cls(np.outer(a.amplitudes, b.amplitudes))

    @property
    def cutoffs(self) -> tuple[int, int]:
        return self.amplitudes.shape[0] - 1, self.amplitudes.shape[1] - 1

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def __repr__(self):
        return f"TwoModeVector(cutoffs={self.cutoffs}, norm={self.norm():.12g})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    entries: np.ndarray

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def purity(self) -> float:
        return float(np.sum(np.abs(self.entries) ** 2))


@dataclass(frozen=True)
class BeamSplitterParam:
    Gamma: complex = BALANCED

    @property
    def mixing_angle(self) -> float:
        return abs(self.Gamma)

    @property
    def phase(self) -> float:
        return cmath.phase(self.Gamma) if self.Gamma != 0 else 0.0


def _as_param(g) -> BeamSplitterParam:
    return g if isinstance(g, BeamSplitterParam) else BeamSplitterParam(complex(g))


def sector_generator(total: int, g) -> np.ndarray:
    """Gamma a^dag b - Gamma^* a b^dag on the basis |total - j, j>, j = 0..total."""
    g = _as_param(g)
    j = np.arange(total + 1)
    gen = np.zeros((total + 1, total + 1), dtype=complex)
    # a^dag b |n, j> = sqrt((n+1) j) |n+1, j-1>
    up = np.sqrt((total - j[1:] + 1) * j[1:])
    gen[j[:-1], j[1:]] += g.Gamma * up
    gen[j[1:], j[:-1]] += -np.conj(g.Gamma) * up
    return gen


def sector_unitary_expm(total: int, g) -> np.ndarray:
    return sla.expm(sector_generator(total, g))


def sector_unitary_binomial(total: int, g, dps: int = 40) -> np.ndarray:
    """Closed-form sector matrix <total-q, q| U |total-j, j>.

    Expands (c a^dag + s_ab b^dag)^n (c b^dag + s_ba a^dag)^k |0,0> / sqrt(n! k!).
    The double sum alternates in sign and cancels heavily for large sectors,
    so it is accumulated with ``dps`` decimal digits.
    """
    g = _as_param(g)
    return _binomial_cached(total, g.Gamma, dps).copy()


@functools.lru_cache(maxsize=256)
def _binomial_cached(total: int, gamma: complex, dps: int) -> np.ndarray:
    """Extended-precision evaluation behind :func:`sector_unitary_binomial`."""
    g = BeamSplitterParam(gamma)
    with mpmath.workdps(dps):
        theta = mpmath.mpf(g.mixing_angle)
        phase = mpmath.mpf(g.phase)
        c = mpmath.cos(theta)
        s_ab = -mpmath.expj(-phase) * mpmath.sin(theta)
        s_ba = mpmath.expj(phase) * mpmath.sin(theta)
        sqrt_fact = [mpmath.sqrt(mpmath.factorial(i)) for i in range(total + 1)]
        c_pow = [c**i for i in range(total + 1)]
        ab_pow = [s_ab**i for i in range(total + 1)]
        ba_pow = [s_ba**i for i in range(total + 1)]
        out = np.zeros((total + 1, total + 1), dtype=complex)
        for j in range(total + 1):
            n, k = total - j, j
            acc = [mpmath.mpc(0)] * (total + 1)
            scale = 1 / (sqrt_fact[n] * sqrt_fact[k])
            left = [math.comb(n, i) * c_pow[i] * ab_pow[n - i] for i in range(n + 1)]
            right = [math.comb(k, l) * c_pow[l] * ba_pow[k - l] for l in range(k + 1)]
            for i in range(n + 1):
                for l in range(k + 1):
                    p, q = i + k - l, n - i + l
                    acc[q] += left[i] * right[l] * sqrt_fact[p] * sqrt_fact[q]
            acc = [v * scale for v in acc]
            out[:, j] = [complex(v) for v in acc]
    out.setflags(write=False)
    return out


def _sector_slices(shape: tuple[int, int], total: int):
    """Row/column indices of amplitudes with n + k = total inside ``shape``."""
    j = np.arange(total + 1)
    n = total - j
    keep = (n < shape[0]) & (j < shape[1])
    return n[keep], j[keep], keep


def bs_apply(state: TwoModeVector, g=BALANCED, method: str = "expm") -> TwoModeVector:
    """Apply the beam splitter to a two-mode state.

    The output grid is square with side ``n_max`` + 1, where ``n_max`` is the
    largest total photon number present, so nothing is truncated.

    Raises:
        ValueError: if a sector exceeds MAX_SECTOR or ``method`` is unknown.
    """
    if method == "expm":
        unitary = sector_unitary_expm
    elif method == "binomial":
        unitary = sector_unitary_binomial
    else:
        raise ValueError(f"unknown beam-splitter method {method!r}")
    d = state.amplitudes
    ma, mb = d.shape
    top = ma + mb - 2
    if top + 1 > MAX_SECTOR:
        raise ValueError(f"photon-number sector {top} exceeds MAX_SECTOR={MAX_SECTOR}")
    out = np.zeros((top + 1, top + 1), dtype=complex)
    for total in range(top + 1):
        n, j, keep = _sector_slices(d.shape, total)
        vec = np.zeros(total + 1, dtype=complex)
        vec[keep] = d[n, j]
        if not np.any(vec):
            continue
        res = unitary(total, g) @ vec
        jj = np.arange(total + 1)
        out[total - jj, jj] = res
    return TwoModeVector(out)


def _vacuum_input_column(total: int, g) -> np.ndarray:
    """U|total, 0>: sqrt(C(total, q)) cos^{total-q} (-e^{-i theta} sin)^q on |total-q, q>."""
    g = _as_param(g)
    c = math.cos(g.mixing_angle)
    s_ab = -cmath.exp(-1j * g.phase) * math.sin(g.mixing_angle)
    q = np.arange(total + 1)
    lf = special.log_factorial
    mag = np.exp(0.5 * (lf(total) - lf(q) - lf(total - q)))
    return mag * c ** (total - q) * s_ab**q


def bs_output_vacuum_input(psi: FockVector, g=BALANCED) -> TwoModeVector:
    """Beam-splitter output for |psi>_a |0>_b, via the general sector route."""
    _require_normalized(psi)
    vac = FockVector.basis(0)
    return bs_apply(TwoModeVector.product(psi, vac), g)


def bs_output_vacuum_input_direct(psi: FockVector, g=BALANCED) -> TwoModeVector:
    """Same output as :func:`bs_output_vacuum_input` from the one-column closed form.

    Only U|n, 0> is needed when mode b is empty, which makes this route cheap
    enough for parameter sweeps.
    """
    _require_normalized(psi)
    dim = psi.dim
    out = np.zeros((dim, dim), dtype=complex)
    for n, cn in enumerate(psi.amplitudes):
        if cn == 0:
            continue
        q = np.arange(n + 1)
        out[n - q, q] += cn * _vacuum_input_column(n, g)
    return TwoModeVector(out)


def printed_disentangled_output(psi: FockVector, g=BALANCED, swap: bool = False) -> TwoModeVector:
    """Literal disentangled-form output sum_n c_n e^{nB} sum_k A^k sqrt(C(n,k)) |n-k>|k>.

    Uses B = -e^{-i theta} tan|Gamma| and A = 2 log sec|Gamma| as printed, or
    the two coefficients exchanged when ``swap`` is set. No renormalization.
    """
    A, B = _printed_coefficients(g, swap)
    dim = psi.dim
    lf = special.log_factorial
    out = np.zeros((dim, dim), dtype=complex)
    for n, cn in enumerate(psi.amplitudes):
        if cn == 0:
            continue
        k = np.arange(n + 1)
        binom = np.exp(0.5 * (lf(n) - lf(k) - lf(n - k)))
        out[n - k, k] += cn * np.exp(n * B) * A**k * binom
    return TwoModeVector(out)


def _printed_coefficients(g, swap: bool) -> tuple[complex, complex]:
    g = _as_param(g)
    B = -cmath.exp(-1j * g.phase) * math.tan(g.mixing_angle)
    A = complex(2 * math.log(1 / math.cos(g.mixing_angle)))
    return (B, A) if swap else (A, B)


def disentangling_discrepancy(psi: FockVector, g=BALANCED) -> dict[str, float]:
    """Norm distance of the literal disentangled output from the exact one.

    Keys: ``printed`` (coefficients as written) and ``swapped`` (A and B
    exchanged).
    """
    exact = bs_output_vacuum_input(psi, g).amplitudes
    out = {}
    for label, swap in (("printed", False), ("swapped", True)):
        lit = printed_disentangled_output(psi, g, swap).amplitudes
        m = max(exact.shape[0], lit.shape[0])
        a = np.zeros((m, m), dtype=complex)
        b = np.zeros((m, m), dtype=complex)
        a[: exact.shape[0], : exact.shape[1]] = exact
        b[: lit.shape[0], : lit.shape[1]] = lit
        out[label] = float(np.linalg.norm(a - b))
    return out


def reduce_mode_a(chi: TwoModeVector) -> DensityMatrix:
    """rho_a[n, m] = sum_k d[n, k] conj(d[m, k])."""
    d = chi.amplitudes
    return DensityMatrix(d @ d.conj().T)


def printed_reduced_density(psi: FockVector, g=BALANCED, swap: bool = False) -> DensityMatrix:
    """Literal reduced-density expression with the |A|^{2k}/k! weights, unnormalized.

    rho = sum_{n,m} c_n c_m^* e^{B(n+m)} sum_{k<=min(n,m)} |A|^{2k}/k!
          sqrt(C(n,k) C(m,k)) |n-k><m-k|
    """
    A, B = _printed_coefficients(g, swap)
    c = psi.amplitudes
    dim = psi.dim
    lf = special.log_factorial
    rho = np.zeros((dim, dim), dtype=complex)
    nz = np.nonzero(c)[0]
    for n in nz:
        for m in nz:
            pref = c[n] * np.conj(c[m]) * np.exp(B * (n + m))
            for k in range(min(n, m) + 1):
                w = abs(A) ** (2 * k) / math.exp(lf(k))
                w *= math.exp(0.5 * (lf(n) - lf(k) - lf(n - k) + lf(m) - lf(k) - lf(m - k)))
                rho[n - k, m - k] += pref * w
    return DensityMatrix(rho)


def linear_entropy(rho: DensityMatrix) -> float:
    """1 - Tr rho^2 = 1 - sum |rho_nm|^2 for Hermitian rho."""
    return float(1.0 - rho.purity())


def entanglement_potential(psi: FockVector, g=BALANCED, method: str = "direct") -> float:
    """Linear entropy of output mode a when |psi> meets vacuum on a beam splitter.

    ``method="direct"`` uses the vacuum-input closed form; ``"sector"`` runs
    the general sector-wise matrix exponential.
    """
    if method == "direct":
        chi = bs_output_vacuum_input_direct(psi, g)
    elif method == "sector":
        chi = bs_output_vacuum_input(psi, g)
    else:
        raise ValueError(f"unknown method {method!r}")
    return linear_entropy(reduce_mode_a(chi))
