"""Truncated Fock-space vectors and the (deformed) ladder-operator algebra.

Ordinary operators act as

    a|n> = sqrt(n)|n-1>,     a^dag|n> = sqrt(n+1)|n+1>,

and the deformed pair used throughout is

    A   = (1 + k n) a,
    B^dag = a^dag (1 + k n)^{-1},

which satisfy [A, B^dag] = 1. For k = 1, B^dag is a right inverse of a.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

import numpy as np

DEFAULT_TAIL_TOL = 1e-12
NORM_TOL = 1e-9


class CutoffOverflowError(ValueError):
    """Raised when an operation would push probability past the retained cutoff."""


class NotNormalizedError(ValueError):
    """Raised when a normalized state is required but the norm deviates."""


@dataclass(frozen=True)
class DeformParam:
    """Deformation strength k of the operators A and B^dag, 0 <= k <= 1."""

    k: float = 0.0

    def __post_init__(self):
        k = float(self.k)
        if not 0.0 <= k <= 1.0:
            raise ValueError(f"deformation k must lie in [0, 1], got {self.k!r}")
        object.__setattr__(self, "k", k)


def _as_k(d) -> float:
    if isinstance(d, DeformParam):
        return d.k
    return DeformParam(d).k


@dataclass(frozen=True, eq=False)
class FockVector:
    """Complex amplitudes c_0..c_M over the Fock basis |0>..|M>.

    Instances are immutable; every operation returns a new vector.

    Attributes:
        amplitudes: read-only complex array of length ``cutoff + 1``.
        tail_tol: largest neglected probability tolerated above the cutoff.
        tail: estimated probability discarded above the cutoff when the
            vector was built from an amplitude formula (0 for exact data).
    """

    amplitudes: np.ndarray
    tail_tol: float = DEFAULT_TAIL_TOL
    tail: float = field(default=0.0)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size == 0:
            amps = np.zeros(1, dtype=complex)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, n: int, cutoff: int | None = None, tail_tol: float = DEFAULT_TAIL_TOL) -> "FockVector":
        """The number state |n>, stored with ``cutoff`` (default ``n``)."""
        cutoff = n if cutoff is None else cutoff
        if cutoff < n:
            raise CutoffOverflowError(f"|{n}> does not fit below cutoff {cutoff}")
        amps = np.zeros(cutoff + 1, dtype=complex)
        amps[n] = 1.0
        return cls(amps, tail_tol)

    @property
    def cutoff(self) -> int:
        return self.amplitudes.size - 1

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_zero(self) -> bool:
        return not np.any(self.amplitudes)

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm() - 1.0) <= tol

    def normalize(self) -> "FockVector":
        nrm = self.norm()
        if nrm == 0.0:
            raise ZeroDivisionError("cannot normalize the zero vector")
        return self._replace(self.amplitudes / nrm)

    def padded(self, cutoff: int) -> np.ndarray:
        """Amplitudes zero-padded (or truncated) to length ``cutoff + 1``."""
        out = np.zeros(cutoff + 1, dtype=complex)
        m = min(cutoff, self.cutoff) + 1
        out[:m] = self.amplitudes[:m]
        return out

    def scaled(self, factor: complex) -> "FockVector":
        return self._replace(self.amplitudes * factor)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def _replace(self, amps) -> "FockVector":
        return FockVector(amps, self.tail_tol, self.tail)

    def __repr__(self):
        return f"FockVector(cutoff={self.cutoff}, norm={self.norm():.12g})"


def _require_normalized(s: FockVector) -> None:
    if not s.is_normalized():
        raise NotNormalizedError(f"state norm {s.norm()!r} deviates from 1 by more than {NORM_TOL}")


def annihilate(s: FockVector) -> FockVector:
    """a|psi>: c'_n = sqrt(n+1) c_{n+1}; the cutoff drops by one."""
    c = s.amplitudes
    if c.size == 1:
        return s._replace(np.zeros(1))
    n = np.arange(1, c.size)
    return s._replace(np.sqrt(n) * c[1:])


def _raise_with(s: FockVector, weights: np.ndarray, extend: bool) -> FockVector:
    out = np.zeros(s.dim + 1, dtype=complex)
    out[1:] = weights * s.amplitudes
    if extend:
        return s._replace(out)
    lost = abs(out[-1]) ** 2
    if lost > s.tail_tol:
        raise CutoffOverflowError(f"raising would drop probability {lost:.3g} above cutoff {s.cutoff}")
    return s._replace(out[:-1])


def create(s: FockVector, extend: bool = True) -> FockVector:
    """a^dag|psi>: c'_{n+1} = sqrt(n+1) c_n.

    With ``extend`` (default) the cutoff grows by one. Otherwise the top
    component is dropped and CutoffOverflowError is raised if it carried more
    than ``tail_tol`` probability.
    """
    n = np.arange(s.dim)
    return _raise_with(s, np.sqrt(n + 1.0), extend)


def deformed_create(s: FockVector, d, extend: bool = True) -> FockVector:
    """B^dag|psi> = a^dag (1 + k n)^{-1}|psi>: c'_{n+1} = sqrt(n+1) / (1 + k n) c_n."""
    k = _as_k(d)
    n = np.arange(s.dim)
    return _raise_with(s, np.sqrt(n + 1.0) / (1.0 + k * n), extend)


def deformed_annihilate(s: FockVector, d) -> FockVector:
    """A|psi> = (1 + k n) a|psi>: c'_n = (1 + k n) sqrt(n+1) c_{n+1}."""
    k = _as_k(d)
    out = annihilate(s)
    n = np.arange(out.dim)
    return out._replace((1.0 + k * n) * out.amplitudes)


def deformed_annihilate_adjoint(s: FockVector, d) -> FockVector:
    """(B^dag)^dag|psi> = (1 + k n)^{-1} a|psi>, the Hermitian partner of B^dag."""
    k = _as_k(d)
    out = annihilate(s)
    n = np.arange(out.dim)
    return out._replace(out.amplitudes / (1.0 + k * n))


def number(s: FockVector) -> FockVector:
    """n|psi>."""
    return s._replace(np.arange(s.dim) * s.amplitudes)


def inner_product(a: FockVector, b: FockVector) -> complex:
    """<a|b> over the common index range."""
    m = min(a.dim, b.dim)
    return complex(np.vdot(a.amplitudes[:m], b.amplitudes[:m]))


def fidelity(a: FockVector, b: FockVector) -> float:
    """|<a|b>|^2 / (<a|a><b|b>)."""
    return 1.0 - infidelity(a, b)


def infidelity(a: FockVector, b: FockVector) -> float:
    """1 - fidelity, evaluated as the squared perpendicular component.

    Forming ``1 - |<a|b>|^2`` directly loses everything below ~1e-16; the
    residual of ``b`` after projecting onto ``a`` does not.
    """
    m = max(a.dim, b.dim) - 1
    x = a.padded(m)
    y = b.padded(m)
    x = x / np.linalg.norm(x)
    y = y / np.linalg.norm(y)
    perp = y - np.vdot(x, y) * x
    return float(min(1.0, np.vdot(perp, perp).real))


def distance(a: FockVector, b: FockVector) -> float:
    """Euclidean norm of a - b, padding the shorter vector with zeros."""
    m = max(a.dim, b.dim) - 1
    return float(np.linalg.norm(a.padded(m) - b.padded(m)))


class LadderMoments(NamedTuple):
    mean_a: complex
    mean_a2: complex
    mean_n: float
    mean_n2: float


def ladder_moments(s: FockVector) -> LadderMoments:
    """<a>, <a^2>, <n>, <n^2> of a normalized state."""
    _require_normalized(s)
    c = s.amplitudes
    n = np.arange(s.dim, dtype=float)
    p = np.abs(c) ** 2
    mean_a = complex(np.sum(np.conj(c[:-1]) * c[1:] * np.sqrt(n[1:])))
    if s.dim > 2:
        mean_a2 = complex(np.sum(np.conj(c[:-2]) * c[2:] * np.sqrt(n[1:-1] * n[2:])))
    else:
        mean_a2 = 0j
    return LadderMoments(mean_a, mean_a2, float(np.sum(n * p)), float(np.sum(n * n * p)))


def dumps(s: FockVector) -> str:
    """Text dump: a header line, then ``n<TAB>re<TAB>im`` per retained index."""
    lines = [f"# cutoff={s.cutoff} tail_tol={float(s.tail_tol)!r}"]
    for n, c in enumerate(s.amplitudes):
        lines.append(f"{n}\t{float(c.real)!r}\t{float(c.imag)!r}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> FockVector:
    """Inverse of :func:`dumps`."""
    rows = [ln for ln in text.splitlines() if ln.strip()]
    if not rows or not rows[0].startswith("#"):
        raise ValueError("missing FockVector header line")
    header = dict(tok.split("=", 1) for tok in rows[0].lstrip("#").split())
    cutoff = int(header["cutoff"])
    tail_tol = float(header.get("tail_tol", DEFAULT_TAIL_TOL))
    amps = np.zeros(cutoff + 1, dtype=complex)
    for ln in rows[1:]:
        n, re, im = ln.split("\t")
        amps[int(n)] = complex(float(re), float(im))
    return FockVector(amps, tail_tol)


def save(s: FockVector, path) -> None:
    Path(path).write_text(dumps(s))


def load(path) -> FockVector:
    return loads(Path(path).read_text())


def random_state(cutoff: int, rng: np.random.Generator) -> FockVector:
    """Normalized vector with i.i.d. complex Gaussian amplitudes (for tests)."""
    c = rng.normal(size=cutoff + 1) + 1j * rng.normal(size=cutoff + 1)
    return FockVector(c / np.linalg.norm(c))
