"""Parameter-plane scans of entanglement measures and contour extraction.

Scans evaluate one scalar quantity (gtn, n_mu or n_s1) on a rectangular
grid.  Grid cells are independent, so the drivers optionally fan rows
out to a thread pool; results land in a preallocated array keyed by
index, which makes serial and parallel runs identical.  Contours are
extracted with marching squares and linear edge interpolation.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from ._version import __version__
from .analytic import FAMILIES, family_vector
from .hamiltonian import ModelParams, build_hamiltonian, diagonalize
from .negativity import negativity, negativity_pure, partial_transpose
from .phases import _ground_index
from .units import PhysicalParams, exchange_in_kelvin, field_to_h_over_j
from .thermal import thermal_density_matrix

#: h/J used in place of an exact zero field, where the ground state is
#: two-fold degenerate; override with zero_field_offset=0 to keep h = 0
ZERO_FIELD_OFFSET = 1e-9

QUANTITIES = ("gtn", "n_mu", "n_s1")


@dataclass
class GridScan:
    """Scalar values on a rectangular grid plus reproduction metadata.

    values[iy, ix] belongs to (x[ix], y[iy]).  metadata carries the fixed
    model parameters, the temperature mode and the code version; it is
    deliberately free of timestamps so identical configurations export
    byte-identical files.
    """

    x_name: str
    y_name: str
    x: np.ndarray
    y: np.ndarray
    quantity: str
    values: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.y = np.asarray(self.y, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (len(self.y), len(self.x)):
            raise ValueError(
                f"values shape {self.values.shape} does not match grid "
                f"({len(self.y)}, {len(self.x)})"
            )


@dataclass
class ContourSet:
    """Isovalue polylines extracted from a GridScan."""

    isovalues: list[float]
    polylines: dict = field(default_factory=dict)  # isovalue -> list of (n,2) arrays

    def total_points(self) -> int:
        return sum(len(p) for lines in self.polylines.values() for p in lines)


def _axis(spec: tuple[float, float, int], name: str) -> np.ndarray:
    lo, hi, n = spec
    if n < 2:
        raise ValueError(f"axis {name} needs at least 2 points")
    if not lo < hi:
        raise ValueError(f"axis {name} range is degenerate: [{lo}, {hi}]")
    return np.linspace(lo, hi, int(n))


def _run_rows(n_rows: int, worker, threads: int) -> None:
    if threads <= 1:
        for iy in range(n_rows):
            worker(iy)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(worker, range(n_rows)))


def _pure_quantity(vec: np.ndarray, quantity: str) -> float:
    if quantity == "gtn":
        vals = [negativity_pure(vec, s) for s in ("mu", "s1", "s2")]
        return (vals[0] * vals[1] * vals[2]) ** (1.0 / 3.0)
    if quantity == "n_mu":
        return negativity_pure(vec, "mu")
    if quantity == "n_s1":
        return negativity_pure(vec, "s1")
    raise ValueError(f"unknown quantity {quantity!r}; expected one of {QUANTITIES}")


def _rho_quantity(rho: np.ndarray, quantity: str) -> float:
    if quantity == "gtn":
        vals = [negativity(rho, s)[0] for s in ("mu", "s1", "s2")]
        return (vals[0] * vals[1] * vals[2]) ** (1.0 / 3.0)
    if quantity == "n_mu":
        return negativity(rho, "mu")[0]
    if quantity == "n_s1":
        return negativity(rho, "s1")[0]
    raise ValueError(f"unknown quantity {quantity!r}; expected one of {QUANTITIES}")


def scan_gtn_zero_T(h_range: tuple[float, float, int],
                    d_range: tuple[float, float, int],
                    j1: float, quantity: str = "gtn", threads: int = 1,
                    zero_field_offset: float = ZERO_FIELD_OFFSET) -> GridScan:
    """Ground-state entanglement over the (h/J, D/J) plane at fixed J1/J.

    Each cell takes the pure S_t^z > 0 member of the minimal-energy
    family.  Cells where two families tie within tolerance keep the
    first family in the canonical order; exact h = 0 rows are offset to
    a tiny positive field by default to make the member unique.
    """
    hs = _axis(h_range, "h/J")
    ds = _axis(d_range, "D/J")
    values = np.empty((len(ds), len(hs)))

    def worker(iy: int) -> None:
        d = ds[iy]
        for ix, h in enumerate(hs):
            heff = h if h != 0 else zero_field_offset
            par = ModelParams(J=1.0, J1=j1, D=d, h=heff)
            k = _ground_index(par)[0]
            vec = family_vector(FAMILIES[k], par, +1 if heff >= 0 else -1)
            values[iy, ix] = _pure_quantity(vec, quantity)

    _run_rows(len(ds), worker, threads)
    return GridScan(
        x_name="h/J", y_name="D/J", x=hs, y=ds, quantity=quantity, values=values,
        metadata={
            "J1/J": j1, "temperature": "ground-state (pure member)",
            "zero_field_offset": zero_field_offset, "version": __version__,
        },
    )


def scan_thermal(kt_range: tuple[float, float, int],
                 h_range: tuple[float, float, int],
                 par: ModelParams, quantity: str = "gtn",
                 threads: int = 1) -> GridScan:
    """Thermal entanglement over the (k_B T / J, h/J) plane.

    One diagonalization per field column; the Boltzmann mixture is then
    reassembled per temperature from the cached eigensystem.
    """
    kts = _axis(kt_range, "k_BT/J")
    hs = _axis(h_range, "h/J")
    if kts[0] <= 0:
        raise ValueError("temperatures must be positive")
    values = np.empty((len(hs), len(kts)))

    def worker(iy: int) -> None:
        spec = diagonalize(build_hamiltonian(replace(par, h=hs[iy])))
        for ix, kt in enumerate(kts):
            rho = thermal_density_matrix(spec, kt)
            values[iy, ix] = _rho_quantity(rho.matrix, quantity)

    _run_rows(len(hs), worker, threads)
    return GridScan(
        x_name="k_BT/J", y_name="h/J", x=kts, y=hs, quantity=quantity, values=values,
        metadata={
            "J1/J": par.J1, "D/J": par.D, "temperature": "thermal",
            "version": __version__,
        },
    )


def scan_thermal_physical(t_range_kelvin: tuple[float, float, int],
                          b_range_tesla: tuple[float, float, int],
                          phys: PhysicalParams, quantity: str = "gtn",
                          threads: int = 1) -> GridScan:
    """Thermal map in laboratory units: temperature in K, field in T."""
    ts = _axis(t_range_kelvin, "T (K)")
    bs = _axis(b_range_tesla, "B (T)")
    if ts[0] <= 0:
        raise ValueError("temperatures must be positive")
    J_K = exchange_in_kelvin(phys)
    par0 = ModelParams(J=1.0, J1=phys.J1_wavenumber / phys.J_wavenumber, D=phys.D_over_J)
    values = np.empty((len(bs), len(ts)))

    def worker(iy: int) -> None:
        h = field_to_h_over_j(phys, field_tesla=bs[iy])
        spec = diagonalize(build_hamiltonian(replace(par0, h=h)))
        for ix, T in enumerate(ts):
            rho = thermal_density_matrix(spec, T / J_K)
            values[iy, ix] = _rho_quantity(rho.matrix, quantity)

    _run_rows(len(bs), worker, threads)
    return GridScan(
        x_name="T (K)", y_name="B (T)", x=ts, y=bs, quantity=quantity, values=values,
        metadata={
            "J (cm^-1)": phys.J_wavenumber, "J1 (cm^-1)": phys.J1_wavenumber,
            "D/J": phys.D_over_J, "g": phys.g_factor, "temperature": "thermal",
            "version": __version__,
        },
    )


def thermal_crossing_temperatures(par: ModelParams, site="mu",
                                  kt_range: tuple[float, float] = (0.05, 4.0),
                                  n_scan: int = 400, tol: float = 1e-8) -> list[float]:
    """Temperatures where an eigenvalue of the partial transpose changes sign.

    Each crossing is a kink of the entanglement-versus-temperature curve.
    Located by scanning the count of negative eigenvalues and bisecting
    every change.
    """
    spec = diagonalize(build_hamiltonian(par))

    def neg_count(kt: float) -> int:
        rho = thermal_density_matrix(spec, kt)
        lam = np.linalg.eigvalsh(partial_transpose(rho.matrix, site))
        return int((lam < -1e-12).sum())

    kts = np.linspace(kt_range[0], kt_range[1], n_scan)
    counts = [neg_count(k) for k in kts]
    crossings = []
    for i in range(len(kts) - 1):
        if counts[i] != counts[i + 1]:
            lo, hi = kts[i], kts[i + 1]
            c_lo = counts[i]
            while hi - lo > tol:
                mid = (lo + hi) / 2
                if neg_count(mid) == c_lo:
                    lo = mid
                else:
                    hi = mid
            crossings.append((lo + hi) / 2)
    return crossings


# ---------------------------------------------------------------------------
# marching squares
# ---------------------------------------------------------------------------

# corner bits: 1 = bottom-left, 2 = bottom-right, 4 = top-right, 8 = top-left;
# each entry lists (edge_a, edge_b) segments with edges b(ottom), r, t, l
_CASES = {
    0: [], 15: [],
    1: [("l", "b")], 14: [("l", "b")],
    2: [("b", "r")], 13: [("b", "r")],
    4: [("r", "t")], 11: [("r", "t")],
    8: [("t", "l")], 7: [("t", "l")],
    3: [("l", "r")], 12: [("l", "r")],
    6: [("b", "t")], 9: [("b", "t")],
}


def _interp(pa, pb, va, vb, iso):
    t = 0.5 if vb == va else (iso - va) / (vb - va)
    t = min(max(t, 0.0), 1.0)
    return (pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1]))


def _cell_segments(x0, x1, y0, y1, v00, v10, v11, v01, iso):
    code = (v00 >= iso) | ((v10 >= iso) << 1) | ((v11 >= iso) << 2) | ((v01 >= iso) << 3)
    if code in (0, 15):
        return []
    pts = {
        "b": _interp((x0, y0), (x1, y0), v00, v10, iso),
        "r": _interp((x1, y0), (x1, y1), v10, v11, iso),
        "t": _interp((x0, y1), (x1, y1), v01, v11, iso),
        "l": _interp((x0, y0), (x0, y1), v00, v01, iso),
    }
    if code in (5, 10):
        center_above = (v00 + v10 + v11 + v01) / 4.0 >= iso
        if code == 5:
            pairs = [("b", "r"), ("t", "l")] if center_above else [("l", "b"), ("r", "t")]
        else:
            pairs = [("l", "b"), ("r", "t")] if center_above else [("b", "r"), ("t", "l")]
    else:
        pairs = _CASES[code]
    return [(pts[a], pts[b]) for a, b in pairs]


def _chain_segments(segments, scale=(1.0, 1.0)):
    """Join segments sharing endpoints into polylines.

    Endpoints are matched through coordinates snapped at 1e-12 of the
    axis scale; shared cell edges interpolate to bit-identical floats, so
    the snapping only guards against pathological roundoff.  Open chains
    are walked from their endpoints first, then any remaining loops.
    """
    sx = max(abs(scale[0]), 1.0) * 1e-12
    sy = max(abs(scale[1]), 1.0) * 1e-12

    def key(p):
        return (round(p[0] / sx), round(p[1] / sy))

    adj: dict = {}
    for i, (a, b) in enumerate(segments):
        adj.setdefault(key(a), []).append(i)
        adj.setdefault(key(b), []).append(i)
    used = [False] * len(segments)

    def walk(k, p0):
        line = [p0]
        while True:
            nxt = next((i for i in adj.get(k, []) if not used[i]), None)
            if nxt is None:
                return line
            used[nxt] = True
            a, b = segments[nxt]
            q = b if key(a) == k else a
            line.append(q)
            k = key(q)

    polylines = []
    for k, incident in adj.items():
        if len(incident) == 1 and not used[incident[0]]:
            a, b = segments[incident[0]]
            start = a if key(a) == k else b
            line = walk(k, start)
            if len(line) > 1:
                polylines.append(np.array(line))
    for i, (a, b) in enumerate(segments):
        if not used[i]:
            line = walk(key(a), a)
            if len(line) > 1:
                polylines.append(np.array(line))
    return polylines


def extract_contours(scan: GridScan, isovalues) -> ContourSet:
    """Marching-squares isolines of a grid scan.

    Isovalues outside the data range yield empty polyline lists, which is
    a legitimate result rather than an error.
    """
    isovalues = [float(v) for v in np.atleast_1d(isovalues)]
    out = ContourSet(isovalues=isovalues)
    vals = scan.values
    xs, ys = scan.x, scan.y
    scale = (np.abs(xs).max(), np.abs(ys).max())
    for iso in isovalues:
        segments = []
        for iy in range(len(ys) - 1):
            for ix in range(len(xs) - 1):
                segments.extend(
                    _cell_segments(
                        xs[ix], xs[ix + 1], ys[iy], ys[iy + 1],
                        vals[iy, ix], vals[iy, ix + 1],
                        vals[iy + 1, ix + 1], vals[iy + 1, ix], iso,
                    )
                )
        out.polylines[iso] = _chain_segments(segments, scale)
    return out


def interpolate(scan: GridScan, x: float, y: float) -> float:
    """Bilinear interpolation of scan values at an arbitrary point."""
    ix = np.clip(np.searchsorted(scan.x, x) - 1, 0, len(scan.x) - 2)
    iy = np.clip(np.searchsorted(scan.y, y) - 1, 0, len(scan.y) - 2)
    x0, x1 = scan.x[ix], scan.x[ix + 1]
    y0, y1 = scan.y[iy], scan.y[iy + 1]
    tx = 0.0 if x1 == x0 else (x - x0) / (x1 - x0)
    ty = 0.0 if y1 == y0 else (y - y0) / (y1 - y0)
    v = scan.values
    return float(
        v[iy, ix] * (1 - tx) * (1 - ty)
        + v[iy, ix + 1] * tx * (1 - ty)
        + v[iy + 1, ix] * (1 - tx) * ty
        + v[iy + 1, ix + 1] * tx * ty
    )
