"""Parameter sweeps behind the ``fig`` subcommand, and the tabular output format."""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from fockbench import beamsplitter, metrics, states

SQRT10 = math.sqrt(10.0)
# tighter than the constructor default so the 12 printed digits are all signal
FIG_TAIL_TOL = 1e-16


@dataclass
class SweepTable:
    column_names: list[str]
    rows: list[tuple[float, ...]]
    comments: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        width = len(self.column_names)
        for row in self.rows:
            if len(row) != width:
                raise ValueError(f"row {row!r} does not match {width} columns")
            if not all(math.isfinite(v) for v in row):
                raise ValueError(f"non-finite value in row {row!r}")

    def column(self, name: str) -> np.ndarray:
        i = self.column_names.index(name)
        return np.array([row[i] for row in self.rows])

    def to_csv(self) -> str:
        lines = [f"# {key}={value}" for key, value in self.comments.items()]
        lines.append(",".join(self.column_names))
        lines.extend(",".join(_fmt(v) for v in row) for row in self.rows)
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "parameters": self.comments,
            "columns": self.column_names,
            "rows": [[float(_fmt(v)) for v in row] for row in self.rows],
        }
        return json.dumps(payload, indent=1) + "\n"


def _fmt(v: float) -> str:
    out = f"{float(v):.12g}"
    return "0" if out == "-0" else out


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("FOCKBENCH_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(fn: Callable, items: Iterable) -> list:
    """Ordered map, parallel over FOCKBENCH_THREADS workers."""
    items = list(items)
    workers = _threads()
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _fmt_alpha(alpha: complex) -> str:
    alpha = complex(alpha)
    return repr(alpha.real) if alpha.imag == 0 else repr(alpha)


def fig1(alpha: complex = SQRT10, orders: Sequence[int] = (2, 3, 5), grid: int = 101,
         tail_tol: float = FIG_TAIL_TOL) -> SweepTable:
    """Quadrature uncertainties of deformed_pacs(alpha, N, k) across k in [0, 1]."""
    ks = np.linspace(0.0, 1.0, grid)

    def point(k):
        row = [float(k)]
        for N in orders:
            q = metrics.quadrature_stats(states.deformed_pacs(alpha, N, float(k), tail_tol=tail_tol))
            row += [q.delta_x, q.delta_p]
        return tuple(row)

    cols = ["k"] + [f"{name}_N{N}" for N in orders for name in ("dX", "dP")]
    return SweepTable(cols, _pmap(point, ks), _params(figure="fig1", alpha=alpha, orders=orders, grid=grid,
                                                       tail_tol=tail_tol, state="deformed_pacs(alpha,m=N,k)"))


def fig2(alpha: complex = SQRT10, n_max: int = 30, tail_tol: float = FIG_TAIL_TOL) -> SweepTable:
    """Quadrature uncertainties of the UTCS and LTCS against the cutoff N."""

    def point(N):
        u = metrics.quadrature_stats(states.utcs(alpha, N, tail_tol=tail_tol))
        l = metrics.quadrature_stats(states.ltcs(alpha, N, tail_tol=tail_tol))
        return (float(N), u.delta_x, u.delta_p, l.delta_x, l.delta_p)

    cols = ["N", "utcs_dX", "utcs_dP", "ltcs_dX", "ltcs_dP"]
    return SweepTable(cols, _pmap(point, range(n_max + 1)),
                      _params(figure="fig2", alpha=alpha, n_max=n_max, tail_tol=tail_tol))


def _phase_figure(name: str, family, prefix: str, alpha, orders, grid, tail_tol) -> SweepTable:
    dists = _pmap(lambda N: metrics.phase_distribution(family(alpha, N, tail_tol=tail_tol), grid), orders)
    theta = dists[0].theta_grid
    rows = [tuple([float(t)] + [float(d.density[i]) for d in dists]) for i, t in enumerate(theta)]
    cols = ["theta"] + [f"{prefix}_N{N}" for N in orders]
    return SweepTable(cols, rows, _params(figure=name, alpha=alpha, orders=orders, grid=grid, tail_tol=tail_tol))


def fig3(alpha: complex = SQRT10, orders: Sequence[int] = (2, 10, 20), grid: int = metrics.DEFAULT_PHASE_GRID,
         tail_tol: float = FIG_TAIL_TOL) -> SweepTable:
    """Phase distributions of the UTCS."""
    return _phase_figure("fig3", states.utcs, "P_u", alpha, orders, grid, tail_tol)


def fig4(alpha: complex = SQRT10, orders: Sequence[int] = (2, 10, 20), grid: int = metrics.DEFAULT_PHASE_GRID,
         tail_tol: float = FIG_TAIL_TOL) -> SweepTable:
    """Phase distributions of the LTCS."""
    return _phase_figure("fig4", states.ltcs, "P_l", alpha, orders, grid, tail_tol)


def fig5(alpha: complex = SQRT10, n_max: int = 40, tail_tol: float = FIG_TAIL_TOL) -> SweepTable:
    """Mandel Q of the LTCS against the cutoff N."""

    def point(N):
        s = states.ltcs(alpha, N, tail_tol=tail_tol)
        return (float(N), metrics.mandel_q(s))

    return SweepTable(["N", "Q_ltcs"], _pmap(point, range(n_max + 1)),
                      _params(figure="fig5", alpha=alpha, n_max=n_max, tail_tol=tail_tol))


def fig6(alpha: complex = SQRT10, n_max: int = 10, tail_tol: float = FIG_TAIL_TOL) -> SweepTable:
    """Entanglement potential of the UTCS and LTCS against the cutoff N."""

    def point(N):
        eu = beamsplitter.entanglement_potential(states.utcs(alpha, N, tail_tol=tail_tol))
        el = beamsplitter.entanglement_potential(states.ltcs(alpha, N, tail_tol=tail_tol))
        return (float(N), eu, el)

    return SweepTable(["N", "EP_utcs", "EP_ltcs"], _pmap(point, range(n_max + 1)),
                      _params(figure="fig6", alpha=alpha, n_max=n_max, tail_tol=tail_tol))


def fig7(orders: Sequence[int] = (1, 2, 3, 4), alpha_max: float = 4.0, grid: int = 41,
         tail_tol: float = FIG_TAIL_TOL) -> SweepTable:
    """Entanglement potential of pacs(|alpha|, N) and ltcs(|alpha|, N) against |alpha|."""
    amps = np.linspace(0.0, alpha_max, grid)

    def point(r):
        row = [float(r)]
        for N in orders:
            row.append(beamsplitter.entanglement_potential(states.pacs(float(r), N, tail_tol=tail_tol)))
            row.append(beamsplitter.entanglement_potential(states.ltcs(float(r), N, tail_tol=tail_tol)))
        return tuple(row)

    cols = ["abs_alpha"] + [f"EP_{fam}_N{N}" for N in orders for fam in ("pacs", "ltcs")]
    return SweepTable(cols, _pmap(point, amps), _params(figure="fig7", orders=orders, alpha_max=alpha_max,
                                                         grid=grid, tail_tol=tail_tol))


def _params(**kw) -> dict[str, str]:
    out = {}
    for key, value in kw.items():
        if key == "alpha":
            value = _fmt_alpha(value)
        elif isinstance(value, (tuple, list)):
            value = " ".join(str(v) for v in value)
        out[key] = str(value)
    return out


FIGURES: dict[str, Callable[..., SweepTable]] = {
    "fig1": fig1,
    "fig2": fig2,
    "fig3": fig3,
    "fig4": fig4,
    "fig5": fig5,
    "fig6": fig6,
    "fig7": fig7,
}


def cmd_fig(figure_id: str, **overrides) -> SweepTable:
    """Run a figure sweep with its default parameters, replaced by any ``overrides``.

    Raises:
        KeyError: unknown figure id.
        TypeError: an override the figure does not accept.
    """
    if figure_id not in FIGURES:
        raise KeyError(f"unknown figure {figure_id!r}; choose from {', '.join(FIGURES)}")
    return FIGURES[figure_id](**{k: v for k, v in overrides.items() if v is not None})
