"""Unit-speed curves in R^(2m+s)(-3s) and their Frenet apparatus.

A curve is carried as a `CurveTrace`: a strictly increasing arclength grid,
positions, and coordinate derivatives gamma', gamma'', ... to some depth.
The covariant chain T, nabla_T T, nabla_T^2 T, ... is computed exactly from
those derivatives (no Christoffel sampling): in orthonormal-frame components

    nabla_T W = dW/dt + Phi(T, W)

with Phi bilinear and constant-coefficient, so the time derivatives of every
chain level follow from the Leibniz rule.  Derivative depth d supports the
chain up to nabla_T^(d-1) T, i.e. Frenet order up to d.
"""
from __future__ import annotations

import csv
from math import comb
from dataclasses import dataclass, field

import numpy as np

from .manifold import (ModelParams, connection_term, coords_to_frame,
                       frame_to_coords)

__all__ = [
    "CurveTrace",
    "FrenetData",
    "FrameDegeneracyError",
    "fd_derivative",
    "unit_speed_check",
    "covariant_chain",
    "frenet_apparatus",
    "osculating_order",
]


class FrameDegeneracyError(RuntimeError):
    """A curvature crosses the order-detection threshold mid-window."""

    def __init__(self, message, index, windows):
        super().__init__(message)
        self.index = index          # 1-based curvature index that degenerates
        self.windows = windows      # list of (t_lo, t_hi) where k_i > threshold


# ---------------------------------------------------------------------------
# finite differences on a uniform grid (4th order, one-sided at the ends)
# ---------------------------------------------------------------------------

# 4th-order first-derivative stencils on 5 points, offset = position of the
# evaluation node within the stencil
_FD5 = {
    0: np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0,
    1: np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / 12.0,
    2: np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0,
    3: np.array([-1.0, 6.0, -18.0, 10.0, 3.0]) / 12.0,
    4: np.array([3.0, -16.0, 36.0, -48.0, 25.0]) / 12.0,
}


def fd_derivative(arr: np.ndarray, h: float, stride: int = 1) -> np.ndarray:
    """d/dt along axis 0: 4th-order central stencil, one-sided at the ends.

    stride > 1 evaluates the stencil on every stride-th sample (effective
    step stride*h).  Chained differencing of deep derivatives on fine grids
    otherwise hits the roundoff floor eps/h^k; a wider effective step trades
    a little truncation error for orders of magnitude less noise.
    """
    arr = np.asarray(arr, dtype=float)
    q = int(stride)
    if q < 1:
        raise ValueError("stride must be >= 1")
    if len(arr) <= 4 * q:
        raise ValueError("need more than 4*stride samples for differencing")
    H = q * h
    out = np.empty_like(arr)
    out[2 * q:-2 * q] = (arr[:-4 * q] - 8 * arr[q:-3 * q]
                         + 8 * arr[3 * q:-q] - arr[4 * q:]) / (12 * H)
    n = len(arr)
    for i in range(2 * q):
        out[i] = np.tensordot(_FD5[0], arr[i:i + 4 * q + 1:q], axes=(0, 0)) / H
        out[n - 1 - i] = np.tensordot(
            _FD5[4], arr[n - 1 - i - 4 * q:n - i:q], axes=(0, 0)) / H
    return out


# ---------------------------------------------------------------------------
# trace container
# ---------------------------------------------------------------------------

@dataclass
class CurveTrace:
    """Sampled unit-speed curve with coordinate derivatives.

    derivs[k] holds gamma^(k+1) on the grid, so derivs[0] is the velocity.
    """

    params: ModelParams
    ts: np.ndarray
    points: np.ndarray
    derivs: list[np.ndarray]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.ts = np.asarray(self.ts, dtype=float)
        self.points = np.asarray(self.points, dtype=float)
        if np.any(np.diff(self.ts) <= 0):
            raise ValueError("parameter grid must be strictly increasing")
        if self.points.shape != (len(self.ts), self.params.dim):
            raise ValueError("points must have shape (n, 2m+s)")
        self.derivs = [np.asarray(d, dtype=float) for d in self.derivs]
        for d in self.derivs:
            if d.shape != self.points.shape:
                raise ValueError("every derivative array must match points' shape")
        if not self.derivs:
            raise ValueError("at least the velocity gamma' is required")

    @property
    def n(self) -> int:
        return len(self.ts)

    @property
    def depth(self) -> int:
        return len(self.derivs)

    @property
    def y(self) -> np.ndarray:
        return self.points[:, self.params.m:2 * self.params.m]

    @property
    def velocity(self) -> np.ndarray:
        return self.derivs[0]

    @classmethod
    def from_positions(cls, params: ModelParams, ts, points, depth: int = 4,
                       meta: dict | None = None) -> "CurveTrace":
        """Build a trace from sampled positions only; derivatives by FD.

        The grid must be uniform (FD stencils assume constant step).
        """
        ts = np.asarray(ts, dtype=float)
        steps = np.diff(ts)
        if np.max(np.abs(steps - steps[0])) > 1e-9 * max(1.0, abs(steps[0])):
            raise ValueError("from_positions requires a uniform grid")
        h = steps[0]
        derivs = []
        cur = np.asarray(points, dtype=float)
        for _ in range(depth):
            cur = fd_derivative(cur, h)
            derivs.append(cur)
        return cls(params, ts, np.asarray(points, dtype=float), derivs,
                   meta=dict(meta or {}))

    @classmethod
    def from_csv(cls, params: ModelParams, path, depth: int = 4) -> "CurveTrace":
        """Load columns t, x_1..x_m, y_1..y_m, z_1..z_s; derivatives by FD."""
        rows = []
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            if len(header) < 1 + params.dim:
                raise ValueError(
                    f"csv needs {1 + params.dim} columns (t + coordinates), "
                    f"got {len(header)}")
            for row in reader:
                if row:
                    rows.append([float(x) for x in row[:1 + params.dim]])
        data = np.asarray(rows, dtype=float)
        return cls.from_positions(params, data[:, 0], data[:, 1:1 + params.dim],
                                  depth=depth, meta={"source": str(path)})

    def to_csv(self, path, include_derivatives: bool = True) -> None:
        """Write t, coordinates and (optionally) the derivative columns.

        `from_csv` only consumes the t/coordinate columns, so the
        derivative columns are informational and round-trip safely.
        """
        coord_names = ([f"x{i+1}" for i in range(self.params.m)]
                       + [f"y{i+1}" for i in range(self.params.m)]
                       + [f"z{a+1}" for a in range(self.params.s)])
        header = ["t"] + coord_names
        blocks = [self.points]
        if include_derivatives:
            for k, d in enumerate(self.derivs, start=1):
                header += [f"d{k}_{name}" for name in coord_names]
                blocks.append(d)
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            for i in range(self.n):
                row = [f"{self.ts[i]:.16e}"]
                for block in blocks:
                    row += [f"{v:.16e}" for v in block[i]]
                writer.writerow(row)

    def tangent_frame(self) -> np.ndarray:
        """Frame components of the velocity, per sample."""
        return coords_to_frame(self.params, self.velocity, self.y)


# ---------------------------------------------------------------------------
# unit-speed diagnostic
# ---------------------------------------------------------------------------

def unit_speed_check(trace: CurveTrace) -> dict:
    """Max over samples of |g(T,T) - 1| (frame components make g the dot)."""
    tf = trace.tangent_frame()
    dev = np.abs(np.sum(tf * tf, axis=-1) - 1.0)
    return {"max_deviation": float(np.max(dev)), "per_sample": dev}


# ---------------------------------------------------------------------------
# exact covariant chain with Leibniz bookkeeping
# ---------------------------------------------------------------------------

def _frame_jet(trace: CurveTrace) -> list[np.ndarray]:
    """Time derivatives of the velocity's frame components, exactly.

    Frame components of gamma' are polynomial in (gamma-derivatives, y):
        A = gamma'_y/2, B = gamma'_x/2,
        C_alpha = (gamma'_z_alpha - <y, gamma'_x>)/2.
    Differentiating j times uses gamma^(j+1) and the Leibniz rule on
    <y, gamma'_x>.  Returns [W, W', W'', ...] up to order depth-1.
    """
    params = trace.params
    m = params.m
    d = trace.depth
    g = [trace.points] + trace.derivs  # g[k] = gamma^(k)
    jets = []
    for j in range(d):
        W = np.empty_like(trace.points)
        W[:, :m] = g[j + 1][:, m:2 * m] / 2.0
        W[:, m:2 * m] = g[j + 1][:, :m] / 2.0
        # d^j/dt^j <y, gamma'_x> = sum_i C(j,i) <y^(i), gamma^(1+j-i)_x>
        acc = np.zeros(len(trace.ts))
        for i in range(j + 1):
            acc += comb(j, i) * np.sum(g[i][:, m:2 * m] * g[j + 1 - i][:, :m], axis=-1)
        W[:, 2 * m:] = (g[j + 1][:, 2 * m:] - acc[:, None]) / 2.0
        jets.append(W)
    return jets


def covariant_chain(trace: CurveTrace) -> list[np.ndarray]:
    """[T, nabla_T T, nabla_T^2 T, ...] in frame components, exact.

    Depth: with derivatives up to gamma^(d), the chain has d entries.
    Uses nabla_T W = W' + Phi(T, W) and the Leibniz rule
        (nabla_T W)^(j) = W^(j+1) + sum_i C(j,i) Phi(T^(i), W^(j-i)).
    """
    params = trace.params
    tjet = _frame_jet(trace)           # derivatives of T's frame components
    d = len(tjet)
    levels = [list(tjet)]              # jets of chain level 0
    for lvl in range(1, d):
        prev = levels[-1]
        avail = len(prev) - 1          # can produce this many derivatives
        cur = []
        for j in range(avail):
            W = prev[j + 1].copy()
            for i in range(j + 1):
                W += comb(j, i) * connection_term(params, tjet[i], prev[j - i])
            cur.append(W)
        levels.append(cur)
    return [lv[0] for lv in levels]


# ---------------------------------------------------------------------------
# Frenet apparatus
# ---------------------------------------------------------------------------

@dataclass
class FrenetData:
    """Per-sample orthonormal frame (frame components) and curvatures."""

    params: ModelParams
    ts: np.ndarray
    order: int
    frames: np.ndarray          # (order, n, dim) frame components of V_1..V_r
    curvatures: np.ndarray      # (order-1, n), k_1..k_{r-1}
    threshold: float
    raw_curvatures: np.ndarray  # (max_order-1, n) including sub-threshold ones
    degeneracy: list = field(default_factory=list)

    def frame_coords(self, trace: CurveTrace) -> np.ndarray:
        """Frenet frames in coordinate components."""
        return np.stack([frame_to_coords(self.params, self.frames[i], trace.y)
                         for i in range(self.order)])


def frenet_apparatus(trace: CurveTrace, max_order: int | None = None,
                     threshold: float = 1e-6, edge_trim: int = 4,
                     strict_degeneracy: bool = False) -> FrenetData:
    """Gram-Schmidt Frenet apparatus from the exact covariant chain.

    k_i is extracted from the Gram-Schmidt residual norms of the chain
    (r_j = k_1 k_2 ... k_j); the order r is the first index whose curvature
    stays below `threshold` on the whole window.  Frames are sign-aligned
    with the previous sample to prevent spurious flips.

    Order detection and degeneracy analysis ignore `edge_trim` samples at
    each window end, where one-sided difference stencils of sampled traces
    are noisier; the returned arrays still cover the full grid.

    If a curvature crosses the threshold mid-window the data is degenerate:
    with strict_degeneracy=True a FrameDegeneracyError carrying the
    above-threshold subwindows is raised, otherwise they are recorded in
    FrenetData.degeneracy.
    """
    dev = unit_speed_check(trace)["max_deviation"]
    default_tol = 1e-5 if trace.meta.get("sampled") else 1e-8
    tol = trace.meta.get("unit_speed_tol", default_tol)
    if dev > tol:
        raise ValueError(f"trace is not unit speed: max |g(T,T)-1| = {dev:.3e}")

    chain = covariant_chain(trace)
    if max_order is None:
        max_order = len(chain)
    max_order = min(max_order, len(chain), trace.params.dim)
    n = trace.n
    dim = trace.params.dim

    frames = np.zeros((max_order, n, dim))
    resid = np.zeros((max_order - 1, n)) if max_order > 1 else np.zeros((0, n))
    alive = np.ones(max_order, dtype=bool)
    for idx in range(n):
        basis = []
        for j in range(max_order):
            if not alive[j]:
                break
            v = chain[j][idx].copy()
            for b in basis:
                v -= np.dot(v, b) * b
            nv = float(np.linalg.norm(v))
            if j >= 1:
                resid[j - 1, idx] = nv
            if nv < 1e-13:
                break
            basis.append(v / nv)
        for j, b in enumerate(basis):
            frames[j, idx] = b

    # curvatures from residual ratios
    raw_k = np.zeros_like(resid)
    prod = np.ones(n)
    for j in range(max_order - 1):
        with np.errstate(divide="ignore", invalid="ignore"):
            raw_k[j] = np.where(prod > 0, resid[j] / prod, 0.0)
        prod = prod * raw_k[j]

    # order detection: first curvature below threshold on the whole window
    interior = slice(edge_trim, n - edge_trim) if n > 2 * edge_trim else slice(None)
    order = max_order
    degeneracy = []
    for j in range(max_order - 1):
        kmax = float(np.max(raw_k[j][interior]))
        kmin = float(np.min(raw_k[j][interior]))
        if kmax < threshold:
            order = j + 1
            break
        if kmin < threshold <= kmax:
            above = raw_k[j][interior] >= threshold
            windows = _contiguous_windows(trace.ts[interior], above)
            degeneracy.append({"curvature_index": j + 1, "windows": windows})
            if strict_degeneracy:
                raise FrameDegeneracyError(
                    f"curvature k_{j+1} crosses threshold {threshold:g} "
                    f"mid-window; above-threshold subwindows: {windows}",
                    j + 1, windows)
            order = j + 2  # keep it, but the report carries the split windows
    # sign alignment pass (sequential)
    for j in range(1, order):
        for idx in range(1, n):
            if np.dot(frames[j, idx], frames[j, idx - 1]) < 0:
                frames[j, idx] = -frames[j, idx]
    kept = raw_k[:order - 1] if order > 1 else np.zeros((0, n))
    return FrenetData(params=trace.params, ts=trace.ts, order=order,
                      frames=frames[:order], curvatures=kept,
                      threshold=threshold, raw_curvatures=raw_k,
                      degeneracy=degeneracy)


def _contiguous_windows(ts: np.ndarray, mask: np.ndarray) -> list:
    windows = []
    start = None
    for i, good in enumerate(mask):
        if good and start is None:
            start = i
        elif not good and start is not None:
            windows.append((float(ts[start]), float(ts[i - 1])))
            start = None
    if start is not None:
        windows.append((float(ts[start]), float(ts[-1])))
    return windows


def osculating_order(fd: FrenetData) -> int:
    """Detected osculating order r."""
    return fd.order
