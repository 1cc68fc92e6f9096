"""Ground-state phase identification, 2-D phase maps and 1-D extremum search.

A "phase" is the level family whose member energy is minimal at a
parameter point.  At h = 0 each family is two-fold degenerate in the
sign of S_t^z; for h > 0 the S_t^z > 0 member is reported.  Phase
boundaries are curves of exact energy ties between two families and are
refined by bisection along grid edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .analytic import (
    FAMILIES,
    base_energies,
    family_quantum_numbers,
    family_vector,
    spectral_coefficients,
)
from .hamiltonian import ModelParams
from .negativity import gtn, gtn_pure, negativity, negativity_pure
from .thermal import DensityMatrix

#: scanned-parameter names accepted by the axis arguments
AXES = ("h", "d", "j1")

TIE_TOL = 1e-9
BISECT_TOL = 1e-6


@dataclass(frozen=True)
class PhaseLabel:
    """Ground-state label: quantum numbers, branch and tie diagnostics."""

    s_t: Fraction
    s_t_z: Fraction
    branch: str
    tied_with: tuple[str, ...] = ()

    @property
    def family(self) -> str:
        m = abs(self.s_t_z)
        key = f"{self.s_t},{m}"
        return key + f",{self.branch}" if self.branch else key

    @property
    def display(self) -> str:
        sup = f"^{self.branch}" if self.branch else ""
        return f"|{self.s_t},{self.s_t_z}>{sup}"

    @property
    def is_boundary(self) -> bool:
        return bool(self.tied_with)


@dataclass
class PhaseMap:
    """Rectangular phase scan: per-cell family labels plus boundary points.

    labels[iy, ix] indexes into FAMILIES.  boundaries maps an unordered
    family pair to the bisection-refined points (x, y) on their interface,
    chained into drawing order.  character[iy, ix] is the index of the
    dominant product-basis amplitude of the local ground eigenvector,
    which marks eigenvector-character changes inside a single phase.
    """

    x_name: str
    y_name: str
    x: np.ndarray
    y: np.ndarray
    fixed: ModelParams
    labels: np.ndarray
    character: np.ndarray
    boundaries: dict = field(default_factory=dict)

    def family_at(self, ix: int, iy: int) -> str:
        return FAMILIES[self.labels[iy, ix]]


def _with_axis(par: ModelParams, axis: str, value: float) -> ModelParams:
    if axis not in AXES:
        raise ValueError(f"unknown axis {axis!r}; expected one of {AXES}")
    return replace(par, **{{"h": "h", "d": "D", "j1": "J1"}[axis]: float(value)})


def _member_energies(par: ModelParams) -> np.ndarray:
    """Minimal member energy per family (the favored S_t^z sign at this h)."""
    be = base_energies(par)
    habs = abs(par.h)
    return np.array(
        [be[k] - habs * float(family_quantum_numbers(k)[1]) for k in FAMILIES]
    )


def _ground_index(par: ModelParams, tie_tol: float = TIE_TOL) -> tuple[int, tuple[int, ...]]:
    """First family index within tie tolerance of the minimum, plus the ties.

    The tolerant first-index rule keeps the reported label deterministic
    on exactly degenerate sets (total-spin multiplets at D = 0, phase
    boundaries) instead of depending on rounding of equal energies.
    """
    energies = _member_energies(par)
    e_min = energies.min()
    scale = max(1.0, abs(e_min))
    close = np.where(energies - e_min <= tie_tol * scale)[0]
    i = int(close[0])
    return i, tuple(int(j) for j in close[1:])


def ground_phase(par: ModelParams, tie_tol: float = TIE_TOL) -> PhaseLabel:
    """Label of the minimal-energy family; ties within tolerance are flagged."""
    i, ties = _ground_index(par, tie_tol)
    s_t, m, branch = family_quantum_numbers(FAMILIES[i])
    sign = +1 if par.h >= 0 else -1
    return PhaseLabel(
        s_t=s_t, s_t_z=sign * m, branch=branch,
        tied_with=tuple(FAMILIES[j] for j in ties),
    )


def scan_phases(x_axis: tuple[str, float, float, int],
                y_axis: tuple[str, float, float, int],
                fixed: ModelParams) -> PhaseMap:
    """Label every cell of a 2-D parameter grid and refine the boundaries.

    Each axis is (name, min, max, count) with name in {"h", "d", "j1"};
    count >= 2 and min < max are required.
    """
    for name, lo, hi, n in (x_axis, y_axis):
        if name not in AXES:
            raise ValueError(f"unknown axis {name!r}")
        if n < 2:
            raise ValueError(f"axis {name!r} needs at least 2 points, got {n}")
        if not lo < hi:
            raise ValueError(f"axis {name!r} range is degenerate: [{lo}, {hi}]")
    xs = np.linspace(x_axis[1], x_axis[2], x_axis[3])
    ys = np.linspace(y_axis[1], y_axis[2], y_axis[3])
    labels = np.empty((len(ys), len(xs)), dtype=int)
    character = np.empty_like(labels)
    for iy, yv in enumerate(ys):
        for ix, xv in enumerate(xs):
            par = _with_axis(_with_axis(fixed, x_axis[0], xv), y_axis[0], yv)
            k = _ground_index(par)[0]
            labels[iy, ix] = k
            vec = family_vector(FAMILIES[k], par, +1 if par.h >= 0 else -1)
            character[iy, ix] = int(np.argmax(np.abs(vec)))
    boundaries = _refine_boundaries(xs, ys, labels, x_axis[0], y_axis[0], fixed)
    return PhaseMap(
        x_name=x_axis[0], y_name=y_axis[0], x=xs, y=ys, fixed=fixed,
        labels=labels, character=character, boundaries=boundaries,
    )


def _refine_boundaries(xs, ys, labels, x_name, y_name, fixed) -> dict:
    points: dict[tuple[str, str], list[tuple[float, float]]] = {}

    def bisect(p_low, p_high, k_low, along_x, fixed_other):
        lo, hi = p_low, p_high
        while hi - lo > BISECT_TOL:
            mid = (lo + hi) / 2
            par = _with_axis(fixed, x_name if along_x else y_name, mid)
            par = _with_axis(par, y_name if along_x else x_name, fixed_other)
            if _ground_index(par)[0] == k_low:
                lo = mid
            else:
                hi = mid
        return (lo + hi) / 2

    ny, nx = labels.shape
    for iy in range(ny):
        for ix in range(nx - 1):
            a, b = labels[iy, ix], labels[iy, ix + 1]
            if a != b:
                xcross = bisect(xs[ix], xs[ix + 1], a, True, ys[iy])
                pair = tuple(sorted((FAMILIES[a], FAMILIES[b])))
                points.setdefault(pair, []).append((xcross, ys[iy]))
    for iy in range(ny - 1):
        for ix in range(nx):
            a, b = labels[iy, ix], labels[iy + 1, ix]
            if a != b:
                ycross = bisect(ys[iy], ys[iy + 1], a, False, xs[ix])
                pair = tuple(sorted((FAMILIES[a], FAMILIES[b])))
                points.setdefault(pair, []).append((xs[ix], ycross))
    return {pair: _chain_points(np.array(pts)) for pair, pts in points.items()}


def _chain_points(pts: np.ndarray) -> np.ndarray:
    """Greedy nearest-neighbor ordering of boundary points into a polyline."""
    if len(pts) <= 2:
        return pts
    scale = np.ptp(pts, axis=0)
    scale[scale == 0] = 1.0
    norm = pts / scale
    # start from an extreme point to avoid starting mid-curve
    start = int(np.argmax(norm[:, 0] + norm[:, 1]))
    remaining = list(range(len(pts)))
    order = [remaining.pop(start)]
    while remaining:
        last = norm[order[-1]]
        dists = [np.hypot(*(norm[j] - last)) for j in remaining]
        order.append(remaining.pop(int(np.argmin(dists))))
    return pts[order]


def phase_gtn(family: str, par: ModelParams, quantity: str = "gtn",
              mode: str = "vector") -> float:
    """Entanglement of one phase at a parameter point.

    mode "vector" uses the single S_t^z > 0 eigenvector (the per-phase
    characterization); mode "mixture" uses the equal mixture of the
    S_t^z = +/-m partner eigenvectors, which is the h -> 0 ground state
    of the phase.  quantity selects gtn, n_mu or n_s1.
    """
    if mode == "vector":
        v = family_vector(family, par, +1)
        if quantity == "gtn":
            return gtn_pure(v)
        if quantity == "n_mu":
            return negativity_pure(v, "mu")
        if quantity == "n_s1":
            return negativity_pure(v, "s1")
        raise ValueError(f"unknown quantity {quantity!r}")
    if mode == "mixture":
        coeffs = spectral_coefficients(par)
        vp = family_vector(family, par, +1, coeffs)
        vm = family_vector(family, par, -1, coeffs)
        rho = DensityMatrix((np.outer(vp, vp) + np.outer(vm, vm)) / 2, 0.0)
        if quantity == "gtn":
            return gtn(rho).gtn
        if quantity == "n_mu":
            return negativity(rho, "mu")[0]
        if quantity == "n_s1":
            return negativity(rho, "s1")[0]
        raise ValueError(f"unknown quantity {quantity!r}")
    raise ValueError(f"unknown mode {mode!r}; expected 'vector' or 'mixture'")


def find_gtn_maximum(family: str, axis: str, bounds: tuple[float, float],
                     fixed: ModelParams, quantity: str = "gtn",
                     mode: str = "vector", coarse: int = 401,
                     require_stability: bool = False,
                     location_tol: float = 1e-4) -> tuple[float, float]:
    """Maximize a phase's entanglement along one parameter axis.

    Coarse grid scan followed by golden-section refinement of the best
    bracket; returns (location, value).  With require_stability the
    family must be the ground state somewhere in the range and the
    search is restricted to that stable sub-range.
    """
    lo, hi = bounds
    if not lo < hi:
        raise ValueError(f"empty search range [{lo}, {hi}]")
    family_quantum_numbers(family)  # validates the key
    xs = np.linspace(lo, hi, coarse)
    if require_stability:
        stable = np.array(
            [ground_phase(_with_axis(fixed, axis, x)).family == family for x in xs]
        )
        if not stable.any():
            raise ValueError(
                f"phase {family!r} is not the ground state anywhere in [{lo}, {hi}]"
            )
        xs = xs[stable]

    def f(x):
        return phase_gtn(family, _with_axis(fixed, axis, x), quantity, mode)

    vals = np.array([f(x) for x in xs])
    i = int(np.argmax(vals))
    a = xs[max(i - 1, 0)]
    b = xs[min(i + 1, len(xs) - 1)]
    if a == b:
        return float(xs[i]), float(vals[i])
    invphi = (math.sqrt(5) - 1) / 2
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > location_tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x_star = (a + b) / 2
    return float(x_star), float(f(x_star))
