"""Named cross-check suites run by ``fockbench check``.

Each suite returns a :class:`CheckResult`: the largest deviation found, the
tolerance it is held to, and a list of informational lines. The lines
document literal printed formulas that disagree with the numerics; those
disagreements are reported, never counted as failures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from fockbench import beamsplitter, metrics, states
from fockbench.fock import ladder_moments

SQRT10 = math.sqrt(10.0)


@dataclass
class CheckResult:
    name: str
    max_deviation: float
    tolerance: float
    ledger: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance

    def report(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{self.name}: max deviation {self.max_deviation:.3e} (tolerance {self.tolerance:.1e}) {status}"]
        lines += [f"  {ln}" for ln in self.ledger]
        return "\n".join(lines)


def _rel(a: complex, b: complex) -> float:
    scale = max(abs(a), abs(b), 1e-300)
    return abs(a - b) / scale


def identity(order: int = 0, basis_dim: int = 12, alpha_max: float = 8.0) -> CheckResult:
    dev = metrics.resolution_of_identity_check(order, alpha_max=alpha_max, basis_dim=basis_dim)
    return CheckResult(f"identity (N={order}, basis_dim={basis_dim})", dev, 1e-6)


def decomposition(alphas=(SQRT10, 2.0, 0.5, 0.0, 1 + 1j), orders=(0, 2, 5, 10)) -> CheckResult:
    worst = 0.0
    ledger = []
    for a in alphas:
        for N in orders:
            worst = max(worst, states.coherent_decomposition_check(a, N))
    for a, N in ((SQRT10, 5), (2.0, 0)):
        lit = states.printed_decomposition_distance(a, N)
        ledger.append(f"printed N_u/N_l weights at alpha={a:.6g}, N={N}: distance {lit:.6g}")
    a, N = SQRT10, 5
    ratio = states.series_norm_ltcs(a, N) / states.printed_norm_ltcs(a, N)
    ledger.append(f"series N_l / printed N_l at alpha=sqrt10, N=5: {ratio:.12g} (|alpha|^(N+1) = {abs(a) ** (N + 1):.12g})")
    return CheckResult("decomposition", worst, 1e-10, ledger)


def closed_forms(alphas=(SQRT10, 1.3, 0.7 + 0.4j), orders=range(1, 16)) -> CheckResult:
    """Corrected closed forms against amplitude numerics; printed forms are reported."""
    worst = 0.0
    ledger = []
    printed_dev: dict[str, float] = {}

    def note(label, printed, numeric):
        if printed is None:
            return
        printed_dev[label] = max(printed_dev.get(label, 0.0), _rel(printed, numeric))

    for a in alphas:
        for N in orders:
            u = states.utcs(a, N, tail_tol=1e-20)
            l = states.ltcs(a, N, tail_tol=1e-20)
            mu, ml = ladder_moments(u), ladder_moments(l)

            pair = metrics.utcs_mean_a_closed_form(a, N)
            worst = max(worst, _rel(pair.corrected, mu.mean_a))
            note("utcs <a>", pair.printed, mu.mean_a)

            pair = metrics.utcs_mean_a2_closed_form(a, N)
            if N >= 2:
                worst = max(worst, _rel(pair.corrected, mu.mean_a2))
            note("utcs <a^2>", pair.printed, mu.mean_a2)

            pair = metrics.utcs_mean_n_closed_form(a, N)
            worst = max(worst, _rel(pair.corrected, mu.mean_n))
            note("utcs <n>", pair.printed, mu.mean_n)

            pair = metrics.ltcs_mean_n_closed_form(a, N)
            worst = max(worst, _rel(pair.corrected, ml.mean_n))
            note("ltcs <n>", pair.printed, ml.mean_n)

            worst = max(worst, _rel(ml.mean_a, a), _rel(ml.mean_a2, a * a))

            if complex(a).imag == 0:
                pair = metrics.ltcs_variance_closed_form(a, N)
                q = metrics.quadrature_stats(l)
                worst = max(worst, _rel(pair.corrected, q.var_x), _rel(pair.corrected, q.var_p))
                note("ltcs variance", pair.printed, q.var_x)

        for N in range(0, 8):
            pair = metrics.pacs_ltcs_overlap(a, N)
            worst = max(worst, _rel(pair.printed, pair.corrected))
            note("pacs-ltcs overlap", pair.printed, pair.corrected)

        for N in (0, 5, 20, 60):
            b = states.bernoulli_approx(a, N)
            worst = max(worst, abs(metrics.bernoulli_number_variance(a, N) - metrics.photon_number_variance(b)))
            worst = max(worst, abs(metrics.bernoulli_mandel_q(a, N) - metrics.mandel_q(b)))

    for label, dev in printed_dev.items():
        ledger.append(f"printed {label}: max relative deviation from numerics {dev:.3e}")
    return CheckResult("closed-forms", worst, 1e-9, ledger)


def bs_oracle(max_photons: int = 40, samples: int = 3, seed: int = 7) -> CheckResult:
    """Sector matrix exponential against the binomial closed form on random states."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for gamma in (beamsplitter.BALANCED, 0.9 * np.exp(0.3j)):
        for _ in range(samples):
            d = _random_two_mode(max_photons, rng)
            x = beamsplitter.bs_apply(d, gamma, method="expm").amplitudes
            y = beamsplitter.bs_apply(d, gamma, method="binomial").amplitudes
            worst = max(worst, float(np.max(np.abs(x - y))))
    psi = states.ltcs(SQRT10, 2)
    direct = beamsplitter.bs_output_vacuum_input_direct(psi).amplitudes
    sector = beamsplitter.bs_output_vacuum_input(psi).amplitudes
    worst = max(worst, float(np.max(np.abs(direct - sector))))

    ledger = []
    dis = beamsplitter.disentangling_discrepancy(psi)
    ledger.append(
        f"printed disentangled output (ltcs(sqrt10,2)): distance {dis['printed']:.6g}; "
        f"with A and B exchanged: {dis['swapped']:.6g}"
    )
    rho_lit = beamsplitter.printed_reduced_density(psi).entries
    rho = beamsplitter.reduce_mode_a(beamsplitter.bs_output_vacuum_input(psi)).entries
    tr = np.trace(rho_lit)
    ledger.append(
        f"printed reduced density (ltcs(sqrt10,2)): trace {tr:.6g}, "
        f"max deviation after trace normalization {np.max(np.abs(rho_lit / tr - rho)):.6g}"
    )
    return CheckResult(f"bs-oracle (photons <= {max_photons})", worst, 1e-11, ledger)


def _random_two_mode(max_photons: int, rng) -> beamsplitter.TwoModeVector:
    side = max_photons + 1
    d = rng.normal(size=(side, side)) + 1j * rng.normal(size=(side, side))
    n = np.arange(side)
    d[(n[:, None] + n[None, :]) > max_photons] = 0.0
    return beamsplitter.TwoModeVector(d / np.linalg.norm(d))


SUITES = {
    "identity": identity,
    "decomposition": decomposition,
    "closed-forms": closed_forms,
    "bs-oracle": bs_oracle,
}
