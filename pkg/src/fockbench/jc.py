"""Sequential-atom generation of deformed photon-added states.

A two-level atom prepared in |e> crosses the cavity, interacts briefly through

    H = lambda (B^dag sigma_- + B sigma_+),      B = (B^dag)^dag,

and is detected in |g>. Each success applies B^dag to the field (to leading
order in lambda t); ``steps`` successes starting from |alpha> produce
``deformed_pacs(alpha, steps, k)``, which is ``ltcs(alpha, steps - 1)`` at k = 1.

Atomic conventions are sigma_+|g> = |e> and sigma_-|e> = |g>.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from fockbench import states
from fockbench.fock import (
    DeformParam,
    FockVector,
    _as_k,
    _require_normalized,
    annihilate,
    deformed_annihilate_adjoint,
    deformed_create,
    infidelity,
    ladder_moments,
    number,
)

SHORT_TIME_WARN = 0.1
# infidelities of interest reach 1e-14, far below the default truncation
PROTOCOL_TAIL_TOL = 1e-24


class NothingToPostselectError(ValueError):
    """The ground-state branch is empty, e.g. for lambda*t = 0."""


@dataclass(frozen=True)
class AtomFieldState:
    """Field amplitudes paired with the atomic |e> and |g> states."""

    excited_branch: FockVector
    ground_branch: FockVector

    def norm_sq(self) -> float:
        return self.excited_branch.norm() ** 2 + self.ground_branch.norm() ** 2


@dataclass(frozen=True)
class ProtocolReport:
    final_field: FockVector
    per_step_success_prob: tuple[float, ...]
    cumulative_success_prob: float
    fidelity_vs_analytic: float
    infidelity_vs_analytic: float = field(default=0.0)


def _couplings(dim: int, k: float) -> np.ndarray:
    """<n+1| B^dag |n> = sqrt(n+1) / (1 + k n)."""
    n = np.arange(dim)
    return np.sqrt(n + 1.0) / (1.0 + k * n)


def jc_short_time_step(field_state: FockVector, lambda_t: float, k, exact: bool = False) -> AtomFieldState:
    """Evolve field (x) |e> for one atom transit.

    The first-order branch applies I - i lambda t (B^dag sigma_- + B sigma_+)
    and renormalizes the joint state. The exact branch rotates every doublet
    {|n, e>, |n+1, g>} by the angle lambda t <n+1|B^dag|n>.
    """
    _require_normalized(field_state)
    k = _as_k(k)
    if not exact and abs(lambda_t) > SHORT_TIME_WARN:
        warnings.warn(
            f"first-order evolution used with |lambda t| = {abs(lambda_t):g} > {SHORT_TIME_WARN}",
            RuntimeWarning,
            stacklevel=2,
        )
    c = field_state.amplitudes
    if exact:
        angle = lambda_t * _couplings(c.size, k)
        excited = c * np.cos(angle)
        ground = np.zeros(c.size + 1, dtype=complex)
        ground[1:] = -1j * np.sin(angle) * c
        return AtomFieldState(field_state._replace(excited), field_state._replace(ground))
    ground = deformed_create(field_state, DeformParam(k)).amplitudes * (-1j * lambda_t)
    total = math.sqrt(1.0 + np.vdot(ground, ground).real)
    return AtomFieldState(field_state._replace(c / total), field_state._replace(ground / total))


def postselect_ground(s: AtomFieldState) -> tuple[FockVector, float]:
    """Condition on detecting the atom in |g>.

    Returns the normalized ground-branch field and the detection probability.

    Raises:
        NothingToPostselectError: when the ground branch vanishes.
    """
    g = s.ground_branch
    prob = g.norm() ** 2
    if prob == 0.0:
        raise NothingToPostselectError("nothing to post-select: the ground-state branch is empty")
    return g.normalize(), prob


def run_protocol(
    alpha: complex,
    steps: int,
    lambda_t: float,
    k,
    exact: bool = False,
    tail_tol: float = PROTOCOL_TAIL_TOL,
) -> ProtocolReport:
    """Send ``steps`` atoms through the cavity, keeping only ground-state detections.

    The analytic target is built on the same Fock cutoff as the evolved field,
    so the reported infidelity measures the dynamics rather than truncation.
    """
    if steps < 1:
        raise ValueError("steps must be a positive integer")
    k = _as_k(k)
    fld = states.coherent(alpha, tail_tol=tail_tol)
    probs = []
    for _ in range(steps):
        fld, p = postselect_ground(jc_short_time_step(fld, lambda_t, k, exact))
        probs.append(p)
    target = states.deformed_pacs(alpha, steps, k, tail_tol=tail_tol, cutoff=fld.cutoff)
    inf = infidelity(target, fld)
    return ProtocolReport(fld, tuple(probs), float(np.prod(probs)), 1.0 - inf, inf)


def linearized_coupling_fidelity(alpha: complex, N: int, k) -> tuple[float, bool]:
    """Compare (1 - k n) a with (1 + k n)^{-1} a acting on ``ltcs(alpha, N)``.

    Returns the fidelity of the two normalized results and whether the
    validity condition k <n> < 1 holds in the LTCS (a warning is issued if not).
    """
    k = _as_k(k)
    psi = states.ltcs(alpha, N)
    valid = k * ladder_moments(psi).mean_n < 1.0
    if not valid:
        warnings.warn(f"k<n> >= 1 for ltcs(alpha, {N}); linearized coupling is outside its range", RuntimeWarning)
    lowered = annihilate(psi)
    exact = deformed_annihilate_adjoint(psi, k)
    approx = lowered._replace(lowered.amplitudes - k * number(lowered).amplitudes)
    if approx.is_zero():
        return 0.0, valid
    return 1.0 - infidelity(exact, approx), valid
