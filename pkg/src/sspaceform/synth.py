"""Curve synthesis in R^(2m+s)(-3s).

Two constructions are provided.

* `integrate_frenet_system`: prescribe curvature functions k_1..k_{r-1} and
  an admissible orthonormal initial frame, then integrate gamma' = V_1 and
  the Frenet equations with the exact frame-component connection (RK4,
  modified Gram-Schmidt re-orthonormalization every step).  Any prescribed
  data yields a curve with exactly those curvatures; whether derived
  quantities (contact angles, g(phiT, V_i)) stay constant depends on the
  data being self-consistent, which the caller must check downstream.

* `steered_slant_curve`: the constrained construction for slant curves with
  prescribed contact angles, prescribed k1(t), constant p2 = g(phiT, V2)
  and k2 = c2 k1 enforced exactly.  Writing the horizontal part of T as
  zeta in C^m restricted to a C^2 subspace (needs m >= 2), the constraints
  reduce to one steering angle psi(t) with

      psi' = b - p2 k1/P  +-  sqrt(R(k1) / (P W0^2)),
      R(k1) = (c2^2 + a/(a-1)) k1^2 - (2 b p2/P) k1 - p2^2 (b^2 + sP)/P,

  P = 1 - a, W0^2 = (P - p2^2)/P^2.  The construction exists exactly where
  R >= 0; `SlantSteeringError` reports the feasible window otherwise.
  Everything downstream of the imposed constraints (k3, g(phiT, V4), ...)
  is measured, not prescribed.

Builtins: a geodesic, a flat-slice circle, the f-biharmonic Legendre
catenary, an order-3 proper f-biharmonic curve, and the classical R^6(-6)
worked-example configuration (`builtin_example_r6`) together with its
realizability analysis.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .curve import CurveTrace, FrenetData, fd_derivative, frenet_apparatus
from .manifold import ModelParams, connection_term, frame_to_coords

__all__ = [
    "SynthesisSpec",
    "SynthesisError",
    "SlantSteeringError",
    "integrate_frenet_system",
    "steered_slant_curve",
    "phiT_aligned_curve",
    "geodesic_trace",
    "flat_circle_trace",
    "legendre_catenary",
    "case2_order3_curve",
    "R6ExampleConfig",
    "builtin_example_r6",
    "r6_example_realizability",
]


class SynthesisError(RuntimeError):
    pass


class SlantSteeringError(SynthesisError):
    """The steering radicand is negative somewhere on the requested window."""

    def __init__(self, message, feasible_abs_t):
        super().__init__(message)
        self.feasible_abs_t = feasible_abs_t


# ---------------------------------------------------------------------------
# prescribed-curvature Frenet integration
# ---------------------------------------------------------------------------

@dataclass
class SynthesisSpec:
    """Prescription for `integrate_frenet_system`.

    curvatures[i] is the callable k_{i+1}(t); the osculating order of the
    synthesized curve is len(curvatures) + 1.  frame0 holds orthonormal
    frame components of V_1..V_r at t_anchor (defaults to 0), p0 the
    initial point.  Curvature functions must be positive on the window.
    """

    params: ModelParams
    p0: np.ndarray
    frame0: np.ndarray
    curvatures: list
    window: tuple[float, float] = (-2.0, 2.0)
    step: float = 1e-3
    t_anchor: float = 0.0
    drift_tol: float = 1e-6
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.p0 = np.asarray(self.p0, dtype=float)
        self.frame0 = np.asarray(self.frame0, dtype=float)
        r = len(self.curvatures) + 1
        if self.frame0.shape != (r, self.params.dim):
            raise ValueError(
                f"frame0 must be ({r}, {self.params.dim}) for order {r}")
        gram = self.frame0 @ self.frame0.T
        if np.max(np.abs(gram - np.eye(r))) > 1e-12:
            raise ValueError("initial frame is not orthonormal to 1e-12")
        lo, hi = self.window
        if not lo <= self.t_anchor <= hi:
            raise ValueError("t_anchor must lie inside the window")

    @property
    def order(self) -> int:
        return len(self.curvatures) + 1


def _frenet_rhs(params: ModelParams, t, frame, pos, kfuns):
    """d/dt of (frame rows, position) under the Frenet + connection system."""
    r = frame.shape[0]
    T = frame[0]
    kvals = [k(t) for k in kfuns]
    dframe = np.empty_like(frame)
    for j in range(r):
        target = np.zeros(params.dim)
        if j > 0:
            target -= kvals[j - 1] * frame[j - 1]
        if j < r - 1:
            target += kvals[j] * frame[j + 1]
        dframe[j] = target - connection_term(params, T, frame[j])
    y = pos[params.m:2 * params.m]
    dpos = frame_to_coords(params, T, y)
    return dframe, dpos


def _orthonormalize(frame: np.ndarray) -> tuple[np.ndarray, float]:
    """Modified Gram-Schmidt; returns the corrected frame and the drift
    (worst orthonormality defect of the input frame)."""
    gram = frame @ frame.T
    drift = float(np.max(np.abs(gram - np.eye(len(frame)))))
    out = frame.copy()
    for j in range(len(out)):
        v = out[j]
        for i in range(j):
            v = v - np.dot(v, out[i]) * out[i]
        out[j] = v / np.linalg.norm(v)
    return out, drift


def integrate_frenet_system(spec: SynthesisSpec) -> tuple[CurveTrace, FrenetData]:
    """Integrate the prescribed-curvature Frenet system with RK4.

    The frame is re-orthonormalized after every step; if a single step's
    drift exceeds spec.drift_tol the step size is declared too large and a
    SynthesisError is raised.  Prescribed curvatures must stay positive on
    the window.  Returns the sampled trace (coordinate derivatives to depth
    4 for the downstream Frenet machinery: velocity exact, higher by
    4th-order differencing) and the integrated frames as FrenetData.
    """
    params = spec.params
    lo, hi = spec.window
    n_fwd = int(round((hi - spec.t_anchor) / spec.step))
    n_bwd = int(round((spec.t_anchor - lo) / spec.step))
    kfuns = list(spec.curvatures)
    ts_grid = spec.t_anchor + spec.step * np.arange(-n_bwd, n_fwd + 1)
    for i, k in enumerate(kfuns):
        vals = np.array([k(t) for t in ts_grid])
        if np.any(vals <= 0):
            raise SynthesisError(
                f"prescribed curvature k_{i+1} hits zero or below on the window")

    def march(n_steps, direction):
        h = direction * spec.step
        frame = spec.frame0.copy()
        pos = spec.p0.copy()
        t = spec.t_anchor
        frames, poss, vels = [frame.copy()], [pos.copy()], []
        y = pos[params.m:2 * params.m]
        vels.append(frame_to_coords(params, frame[0], y))
        for _ in range(n_steps):
            df1, dp1 = _frenet_rhs(params, t, frame, pos, kfuns)
            df2, dp2 = _frenet_rhs(params, t + h / 2, frame + h / 2 * df1,
                                   pos + h / 2 * dp1, kfuns)
            df3, dp3 = _frenet_rhs(params, t + h / 2, frame + h / 2 * df2,
                                   pos + h / 2 * dp2, kfuns)
            df4, dp4 = _frenet_rhs(params, t + h, frame + h * df3,
                                   pos + h * dp3, kfuns)
            frame = frame + h / 6 * (df1 + 2 * df2 + 2 * df3 + df4)
            pos = pos + h / 6 * (dp1 + 2 * dp2 + 2 * dp3 + dp4)
            frame, drift = _orthonormalize(frame)
            if drift > spec.drift_tol:
                raise SynthesisError(
                    f"frame drift {drift:.3e} exceeds {spec.drift_tol:g} in a "
                    f"single step: step {spec.step:g} too large")
            t += h
            frames.append(frame.copy())
            poss.append(pos.copy())
            y = pos[params.m:2 * params.m]
            vels.append(frame_to_coords(params, frame[0], y))
        return frames, poss, vels

    f_fwd, p_fwd, v_fwd = march(n_fwd, +1.0)
    f_bwd, p_bwd, v_bwd = march(n_bwd, -1.0)
    frames = np.array(f_bwd[::-1][:-1] + f_fwd)     # (n, r, dim)
    points = np.array(p_bwd[::-1][:-1] + p_fwd)
    vels = np.array(v_bwd[::-1][:-1] + v_fwd)
    ts = ts_grid

    stride = max(1, int(round(0.005 / spec.step)))
    derivs = [vels]
    cur = vels
    for _ in range(4):
        cur = fd_derivative(cur, spec.step, stride=stride)
        derivs.append(cur)
    trace = CurveTrace(params, ts, points, derivs,
                       meta={"synthesized": True, "fd_stride": stride,
                             **spec.meta})
    kmat = np.array([[k(t) for t in ts] for k in kfuns]) if kfuns else np.zeros((0, len(ts)))
    fdata = FrenetData(params=params, ts=ts, order=spec.order,
                       frames=frames.transpose(1, 0, 2), curvatures=kmat,
                       threshold=0.0, raw_curvatures=kmat)
    return trace, fdata


# ---------------------------------------------------------------------------
# steering construction for slant curves
# ---------------------------------------------------------------------------

def steered_slant_curve(params: ModelParams, thetas, k1, p2: float,
                        c2: float, window=(-1.0, 1.0), step: float = 1e-3,
                        branch: int = +1, psi0: float = 0.0,
                        p0=None) -> CurveTrace:
    """Slant curve with exact contact angles, prescribed k1, k2 = c2 k1 and
    constant g(phiT, V2) = p2.

    `branch` selects the sign of the steering square root (the only
    remaining freedom besides isometries).  Requires m >= 2 and a < 1.
    Raises SlantSteeringError when the requested window leaves the region
    where the steering radicand is nonnegative.
    """
    m, s = params.m, params.s
    if m < 2:
        raise SynthesisError("steering construction needs m >= 2")
    sv = np.cos(np.asarray(thetas, dtype=float))
    if len(sv) != s:
        raise ValueError(f"need {s} contact angles")
    a = float(np.sum(sv ** 2))
    b = float(np.sum(sv))
    P = 1.0 - a
    if P < 1e-12:
        raise SynthesisError("a = 1: T = V, geodesic; nothing to steer")
    if p2 ** 2 > P:
        raise ValueError("|p2| cannot exceed sqrt(1-a)")
    W0sq = (P - p2 * p2) / (P * P)
    if W0sq < 1e-14:
        raise SynthesisError(
            "phiT parallel V2 (|p2| = sqrt(1-a)): degenerate steering; "
            "use the closed-form zeta' = q i zeta construction instead")
    W0 = np.sqrt(W0sq)
    A2 = c2 * c2 + a / (a - 1.0)
    B1 = -2.0 * b * p2 / P
    C0 = -p2 * p2 * (b * b + s * P) / P

    def radicand(t):
        k = k1(t)
        return A2 * k * k + B1 * k + C0

    lo, hi = window
    probe = np.linspace(lo, hi, max(101, int((hi - lo) / step) + 1))
    rad = np.array([radicand(t) for t in probe])
    if np.any(rad < -1e-13):
        good = np.abs(probe[rad >= -1e-13])
        feas = float(np.max(good)) if len(good) else 0.0
        raise SlantSteeringError(
            f"steering radicand negative on part of [{lo}, {hi}]; the slant "
            f"configuration (a={a:.4g}, b={b:.4g}, p2={p2:.4g}, c2={c2:.4g}) "
            f"with this k1 is realizable only for |t| <~ {feas:.4g}", feas)
    # identically-vanishing radicand (c2^2 = a/(1-a), b p2 = 0, p2 = 0 case):
    # sqrt of rounding noise would randomly kick the steering, so detect the
    # degenerate family and drop the root term exactly.
    radicand_zero = float(np.max(np.abs(rad))) < 1e-12

    def psi_rhs(t):
        if radicand_zero:
            return b - p2 * k1(t) / P
        R = max(radicand(t), 0.0)
        return b - p2 * k1(t) / P + branch * np.sqrt(R / (P * W0sq))

    if p0 is None:
        p0 = np.zeros(params.dim)
    p0 = np.asarray(p0, dtype=float)
    # the curve lives in the C^2 span of the first two horizontal pairs:
    # state = zeta in C^2 (4 floats), nu in C^2 (4), psi (1), gamma (dim)
    nst = 9 + params.dim

    def rhs(t, st):
        zeta = st[0:2] + 1j * st[2:4]
        nu = st[4:6] + 1j * st[6:8]
        psi = st[8]
        k = k1(t)
        q = 2.0 * b + p2 * k / P
        e_psi = np.cos(psi) * nu + np.sin(psi) * (1j * nu)
        dzeta = q * 1j * zeta + k * W0 * e_psi
        dnu = -k * W0 * np.exp(-1j * psi) * zeta
        y = st[9 + m:9 + 2 * m]
        Av, Bv = zeta.real, zeta.imag
        dg = np.zeros(params.dim)
        dg[0:2] = 2 * Bv
        dg[m:m + 2] = 2 * Av
        dg[2 * m:] = 2 * sv + 2 * np.dot(Bv, y[:2])
        out = np.empty(nst)
        out[0:2] = dzeta.real
        out[2:4] = dzeta.imag
        out[4:6] = dnu.real
        out[6:8] = dnu.imag
        out[8] = psi_rhs(t)
        out[9:] = dg
        return out

    st0 = np.zeros(nst)
    st0[0] = np.sqrt(P)      # zeta(0) on the first complex axis
    st0[5] = np.sqrt(P)      # nu(0) on the second
    st0[8] = psi0
    st0[9:] = p0

    def march(t_end):
        n = int(round(abs(t_end) / step))
        h = np.sign(t_end) * step if n else step
        st = st0.copy()
        t = 0.0
        recs = [st.copy()]
        for _ in range(n):
            a1 = rhs(t, st)
            a2 = rhs(t + h / 2, st + h / 2 * a1)
            a3 = rhs(t + h / 2, st + h / 2 * a2)
            a4 = rhs(t + h, st + h * a3)
            st = st + h / 6 * (a1 + 2 * a2 + 2 * a3 + a4)
            t += h
            recs.append(st.copy())
        return recs

    if not lo <= 0.0 <= hi:
        raise ValueError("steering window must contain t = 0")
    rec_f = march(hi)
    rec_b = march(lo)
    recs = np.array(rec_b[::-1][:-1] + rec_f)
    ts = step * np.arange(-len(rec_b) + 1, len(rec_f))

    zeta = recs[:, 0:2] + 1j * recs[:, 2:4]
    points = recs[:, 9:]
    vel_frame = np.zeros((len(ts), params.dim))
    vel_frame[:, 0:2] = zeta.real
    vel_frame[:, m:m + 2] = zeta.imag
    vel_frame[:, 2 * m:] = sv
    vels = frame_to_coords(params, vel_frame,
                           points[:, params.m:2 * params.m])
    stride = max(1, int(round(0.005 / step)))
    derivs = [vels]
    cur = vels
    for _ in range(4):
        cur = fd_derivative(cur, step, stride=stride)
        derivs.append(cur)
    return CurveTrace(params, ts, points, derivs,
                      meta={"synthesized": True, "steered": True,
                            "fd_stride": stride,
                            "thetas": tuple(float(x) for x in np.atleast_1d(thetas)),
                            "p2": p2, "c2": c2, "branch": branch})


# ---------------------------------------------------------------------------
# builtin traces
# ---------------------------------------------------------------------------

def phiT_aligned_curve(params: ModelParams, thetas, k1, epsilon: int = +1,
                       window=(-2.0, 2.0), step: float = 1e-3,
                       p0=None) -> CurveTrace:
    """Slant curve with phiT parallel V2 (the case III configuration).

    Here the steering space degenerates: zeta' = q i zeta with
    q = 2b + epsilon k1/sqrt(1-a), a pure phase rotation.  The second
    curvature of the result obeys the structural identity
    k2 = sqrt(a d^2 - a s + b^2 + 2 epsilon b d + s), d = k1/sqrt(1-a).
    """
    s = params.s
    sv = np.cos(np.asarray(thetas, dtype=float))
    if len(sv) != s:
        raise ValueError(f"need {s} contact angles")
    a = float(np.sum(sv ** 2))
    b = float(np.sum(sv))
    P = 1.0 - a
    if P < 1e-12:
        raise SynthesisError("a = 1 is the geodesic case")
    if epsilon not in (-1, 1):
        raise ValueError("epsilon must be +-1")
    if p0 is None:
        p0 = np.zeros(params.dim)
    p0 = np.asarray(p0, dtype=float)

    def rhs(t, st):
        zeta = st[0] + 1j * st[1]
        q = 2.0 * b + epsilon * k1(t) / np.sqrt(P)
        dz = q * 1j * zeta
        y = st[2 + params.m:2 + 2 * params.m]
        out = np.empty(2 + params.dim)
        out[0], out[1] = dz.real, dz.imag
        dg = np.zeros(params.dim)
        dg[0] = 2 * st[1]            # x_1' = 2 B_1
        dg[params.m] = 2 * st[0]     # y_1' = 2 A_1
        dg[2 * params.m:] = 2 * sv + 2 * st[1] * y[0]
        out[2:] = dg
        return out

    lo, hi = window
    if not lo <= 0.0 <= hi:
        raise ValueError("window must contain t = 0")
    st0 = np.zeros(2 + params.dim)
    st0[0] = np.sqrt(P)
    st0[2:] = p0

    def march(t_end):
        n = int(round(abs(t_end) / step))
        h = np.sign(t_end) * step if n else step
        st = st0.copy()
        t = 0.0
        recs = [st.copy()]
        for _ in range(n):
            a1 = rhs(t, st)
            a2 = rhs(t + h / 2, st + h / 2 * a1)
            a3 = rhs(t + h / 2, st + h / 2 * a2)
            a4 = rhs(t + h, st + h * a3)
            st = st + h / 6 * (a1 + 2 * a2 + 2 * a3 + a4)
            t += h
            recs.append(st.copy())
        return recs

    rec_f = march(hi)
    rec_b = march(lo)
    recs = np.array(rec_b[::-1][:-1] + rec_f)
    ts = step * np.arange(-len(rec_b) + 1, len(rec_f))
    points = recs[:, 2:]
    vel_frame = np.zeros((len(ts), params.dim))
    vel_frame[:, 0] = recs[:, 0]
    vel_frame[:, params.m] = recs[:, 1]
    vel_frame[:, 2 * params.m:] = sv
    vels = frame_to_coords(params, vel_frame, points[:, params.m:2 * params.m])
    stride = max(1, int(round(0.005 / step)))
    derivs = [vels]
    cur = vels
    for _ in range(3):
        cur = fd_derivative(cur, step, stride=stride)
        derivs.append(cur)
    return CurveTrace(params, ts, points, derivs,
                      meta={"synthesized": True, "fd_stride": stride,
                            "phiT_aligned": True, "epsilon": epsilon})


def geodesic_trace(params: ModelParams, thetas=None, window=(-2.0, 2.0),
                   n: int = 1001) -> CurveTrace:
    """Integral curve of V = sum cos(theta_alpha) xi_alpha with a = 1.

    Defaults to the integral curve of xi_1 (theta = (0, pi/2, ..)).
    """
    s = params.s
    if thetas is None:
        thetas = [0.0] + [np.pi / 2] * (s - 1)
    sv = np.cos(np.asarray(thetas, dtype=float))
    if abs(np.sum(sv ** 2) - 1.0) > 1e-12:
        raise ValueError("geodesic integral curve of V needs a = 1")
    ts = np.linspace(window[0], window[1], n)
    points = np.zeros((n, params.dim))
    points[:, 2 * params.m:] = 2.0 * ts[:, None] * sv
    vel = np.zeros_like(points)
    vel[:, 2 * params.m:] = 2.0 * sv
    zeros = np.zeros_like(points)
    return CurveTrace(params, ts, points, [vel] + [zeros.copy() for _ in range(3)],
                      meta={"builtin": "geodesic"})


def flat_circle_trace(params: ModelParams, radius: float = 2.0,
                      window=None, n: int = 2001) -> CurveTrace:
    """Circle in the flat (y_1, y_2) slice (x = z = 0); needs m >= 2.

    Unit speed gives y(t) = R (cos(2t/R), sin(2t/R)); k1 = 2/R, closing
    period 2 pi/k1 = pi R.
    """
    if params.m < 2:
        raise ValueError("flat circle needs m >= 2")
    R = radius
    if window is None:
        window = (0.0, np.pi * R)
    ts = np.linspace(window[0], window[1], n)
    w = 2.0 / R
    points = np.zeros((len(ts), params.dim))
    points[:, params.m] = R * np.cos(w * ts)
    points[:, params.m + 1] = R * np.sin(w * ts)
    derivs = []
    for order in range(1, 5):
        d = np.zeros_like(points)
        ph = order * np.pi / 2.0
        d[:, params.m] = R * w ** order * np.cos(w * ts + ph)
        d[:, params.m + 1] = R * w ** order * np.sin(w * ts + ph)
        derivs.append(d)
    return CurveTrace(params, ts, points, derivs,
                      meta={"builtin": "circle", "k1": w, "radius": R})


def legendre_catenary(params: ModelParams, window=(-2.0, 2.0),
                      n: int = 4001) -> CurveTrace:
    """The f-biharmonic Legendre catenary in the flat y-plane.

    y_1 = 2 asinh(t), y_2 = 2 sqrt(1+t^2), all other coordinates zero:
    a Frenet curve of order 2 with k1 = 1/(1+t^2), Legendre (all contact
    angles pi/2), and proper f-biharmonic for f = c1 (1+t^2)^(3/2).
    Analytic derivatives to depth 4.
    """
    if params.m < 2:
        raise ValueError("catenary embedding needs m >= 2")
    ts = np.linspace(window[0], window[1], n)
    u = 1.0 + ts ** 2
    points = np.zeros((len(ts), params.dim))
    points[:, params.m] = 2.0 * np.arcsinh(ts)
    points[:, params.m + 1] = 2.0 * np.sqrt(u)
    d1 = np.zeros_like(points)
    d1[:, params.m] = 2.0 * u ** -0.5
    d1[:, params.m + 1] = 2.0 * ts * u ** -0.5
    d2 = np.zeros_like(points)
    d2[:, params.m] = -2.0 * ts * u ** -1.5
    d2[:, params.m + 1] = 2.0 * u ** -1.5
    d3 = np.zeros_like(points)
    d3[:, params.m] = -2.0 * u ** -1.5 + 6.0 * ts ** 2 * u ** -2.5
    d3[:, params.m + 1] = -6.0 * ts * u ** -2.5
    d4 = np.zeros_like(points)
    d4[:, params.m] = 18.0 * ts * u ** -2.5 - 30.0 * ts ** 3 * u ** -3.5
    d4[:, params.m + 1] = -6.0 * u ** -2.5 + 30.0 * ts ** 2 * u ** -3.5
    return CurveTrace(params, ts, points, [d1, d2, d3, d4],
                      meta={"builtin": "catenary", "k1": "1/(1+t^2)"})


def case2_order3_curve(window=(-2.0, 2.0), step: float = 1e-3,
                       c3: float = 4.0, c4: float = 0.0) -> CurveTrace:
    """Order-3 proper f-biharmonic slant curve in R^6(-6), global in t.

    Contact angles (pi/3, 2pi/3) give a = 1/2, b = 0; with c2 = 1 =
    sqrt(a/(1-a)) and p2 = 0 the steering radicand vanishes identically and
    the third curvature vanishes, so the master equations hold with
    f = c1 k1^(-3/2) for any k1 in the eps = 0 closed-form family.  The
    default k1 = 1/(2+t^2) (c2 = 1, c3 = 4, c4 = 0).
    """
    params = ModelParams(m=2, s=2)
    denom0 = 16.0 + 16.0  # c2 = 1
    k1 = lambda t: 4.0 * c3 / (c3 ** 2 * (t + c4) ** 2 + denom0)
    trace = steered_slant_curve(params, (np.pi / 3, 2 * np.pi / 3), k1,
                                p2=0.0, c2=1.0, window=window, step=step)
    trace.meta["builtin"] = "case2-order3"
    trace.meta["k1_c3_c4"] = (c3, c4)
    return trace


# ---------------------------------------------------------------------------
# the classical R^6(-6) worked-example configuration
# ---------------------------------------------------------------------------

@dataclass
class R6ExampleConfig:
    """The classical R^6(-6) configuration: m = s = 2, theta = (pi/2, pi/3),
    k1 = k2 from the eps = 0 closed-form family, k3 fixed by the constant
    product k2 k3, g(phiT, V2) = sqrt(1-a) cos(beta) with cos^2(beta) = 1/18.

    The scalar data satisfies the constant-beta characterization exactly
    (`constants_summary`), but is not realizable by an actual curve: see
    `r6_example_realizability`.  cos(beta) is pinned to the negative branch,
    the only one whose steering construction is real anywhere.
    """

    c1: float = 1.0
    c2: float = 1.0
    c3: float = 4.0
    c4: float = 0.0
    params: ModelParams = field(default_factory=lambda: ModelParams(m=2, s=2))
    thetas: tuple = (np.pi / 2, np.pi / 3)

    @property
    def a(self) -> float:
        return float(np.sum(np.cos(self.thetas) ** 2))

    @property
    def b(self) -> float:
        return float(np.sum(np.cos(self.thetas)))

    @property
    def cos_beta(self) -> float:
        return -np.sqrt(2.0) / 6.0

    @property
    def p2(self) -> float:
        return float(np.sqrt(1.0 - self.a) * self.cos_beta)

    def k1(self, t):
        c2, c3, c4 = self.c2, self.c3, self.c4
        return 4.0 * c3 / (c3 ** 2 * np.asarray(t) ** 2 + 2 * c3 ** 2 * c4 * np.asarray(t)
                           + c3 ** 2 * c4 ** 2 + 16 * c2 ** 2 + 16.0)

    def k2(self, t):
        return self.c2 * self.k1(t)

    @property
    def k2k3_target(self) -> float:
        c, s = self.params.c, self.params.s
        sin2b = 2.0 * self.cos_beta * np.sqrt(1.0 - self.cos_beta ** 2)
        return float(abs(3.0 * (c - s) * sin2b / 8.0) * (1.0 - self.a))

    def k3(self, t):
        return self.k2k3_target / self.k2(t)

    def f(self, t):
        return self.c1 * self.k1(t) ** -1.5

    def bracket(self) -> float:
        c, s = self.params.c, self.params.s
        return float(self.b ** 2
                     + ((c + 3 * s + 3 * (c - s) * self.cos_beta ** 2) / 4.0)
                     * (1.0 - self.a))

    def constants_summary(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "one_minus_a": 1.0 - self.a,
            "cos_beta": self.cos_beta,
            "cos2_beta": self.cos_beta ** 2,
            "bracket": self.bracket(),
            "k2k3": self.k2k3_target,
            "f_at_0": float(self.f(0.0)),
            "k1_at_0": float(self.k1(0.0)),
        }

    def feasible_abs_t(self) -> float:
        """Largest |t| where the steering radicand stays nonnegative."""
        P = 1.0 - self.a
        A2 = self.c2 ** 2 + self.a / (self.a - 1.0)
        B1 = -2.0 * self.b * self.p2 / P
        C0 = -self.p2 ** 2 * (self.b ** 2 + self.params.s * P) / P
        # radicand is A2 k^2 + B1 k + C0 with k = k1(t) decreasing in |t|
        disc = B1 ** 2 - 4 * A2 * C0
        kmin = (-B1 + np.sqrt(disc)) / (2 * A2)
        # invert k1(t) = kmin (c4 = 0 default family)
        val = 4 * self.c3 / kmin - 16 * self.c2 ** 2 - 16.0
        return float(np.sqrt(max(val, 0.0)) / self.c3) if self.c4 == 0 else np.nan

    def steering_trace(self, window=None, step: float = 1e-3,
                       branch: int = +1) -> CurveTrace:
        """Best-possible realization: slant, k1, k2 = c2 k1, p2 all exact."""
        if window is None:
            tmax = 0.95 * self.feasible_abs_t()
            window = (-tmax, tmax)
        return steered_slant_curve(self.params, self.thetas, self.k1,
                                   p2=self.p2, c2=self.c2, window=window,
                                   step=step, branch=branch)

    def synthesis_spec(self, window=(-2.0, 2.0), step: float = 1e-3) -> SynthesisSpec:
        """Order-4 prescription (k1, k2, k3 as configured) with the
        admissible initial frame extracted from the steering construction
        at t = 0 (eta^1(V1)=0, eta^2(V1)=1/2, eta_alpha(V2)=0,
        g(phiT,V2)=p2, g(phiT,V3)=0, g(phiT,V4)=-sqrt((1-a)(1-cos^2 beta))
        all hold there)."""
        frame0, p0 = self.initial_frame()
        return SynthesisSpec(params=self.params, p0=p0, frame0=frame0,
                             curvatures=[self.k1, self.k2, self.k3],
                             window=window, step=step,
                             meta={"builtin": "r6-example"})

    def initial_frame(self) -> tuple[np.ndarray, np.ndarray]:
        """V_1..V_4 frame components at t = 0 from the steering chain."""
        small = steered_slant_curve(self.params, self.thetas, self.k1,
                                    p2=self.p2, c2=self.c2,
                                    window=(-0.02, 0.02), step=1e-4)
        fd = frenet_apparatus(small, max_order=4)
        i0 = small.n // 2
        frame = np.array([fd.frames[j][i0] for j in range(4)])
        frame, _ = _orthonormalize(frame)
        return frame, small.points[i0]


def builtin_example_r6(c1: float = 1.0, c2: float = 1.0, c3: float = 4.0,
                       c4: float = 0.0) -> R6ExampleConfig:
    """The classical worked-example configuration in R^6(-6)."""
    return R6ExampleConfig(c1=c1, c2=c2, c3=c3, c4=c4)


def r6_example_realizability(config: R6ExampleConfig | None = None,
                             step: float = 1e-3) -> dict:
    """Measured realizability analysis of the worked-example data.

    Constructs the best-possible curves (both steering branches) on the
    maximal window and reports: the feasible |t| bound, the measured k3
    against the configured target, the g(phiT,V4) drift, and the slant
    drift of the order-4 truncated Frenet run on [-2, 2].  The configured
    scalar data is *not* the Frenet data of any actual curve: eta_1(V3) =
    g(phiT,V2)/k2 exceeds the Cauchy-Schwarz bound for |t| > ~1.70, the
    steering radicand is negative for |t| > ~1.54, and inside the window
    the measured k3 disagrees with the target pointwise.
    """
    from .biharmonic import WeightFunction, check_conditions
    from .slant import contact_angles

    cfg = config or builtin_example_r6()
    out = {"feasible_abs_t": cfg.feasible_abs_t(),
           "k3_target_at_0": float(cfg.k3(0.0))}
    # Cauchy-Schwarz bound: |eta_1(V3)| = |p2|/k2(t) <= 1  =>  k1 >= |p2|/c2
    kbound = abs(cfg.p2) / cfg.c2
    val = 4 * cfg.c3 / kbound - 16 * cfg.c2 ** 2 - 16.0
    out["cauchy_schwarz_abs_t"] = float(np.sqrt(max(val, 0.0)) / cfg.c3)
    branches = {}
    for branch in (+1, -1):
        trace = cfg.steering_trace(step=step, branch=branch)
        fd = frenet_apparatus(trace, max_order=5)
        prof = contact_angles(trace)
        k1, k2 = fd.curvatures[0], fd.curvatures[1]
        k3 = fd.curvatures[2] if fd.order >= 4 else np.zeros(trace.n)
        sl = slice(10, trace.n - 10)
        tgt = cfg.k3(trace.ts)
        f = WeightFunction(ts=trace.ts, f=cfg.f(trace.ts),
                           fp=np.gradient(cfg.f(trace.ts), trace.ts),
                           fpp=np.gradient(np.gradient(cfg.f(trace.ts), trace.ts), trace.ts),
                           c1=cfg.c1)
        rep = check_conditions(trace, fd, prof, f)
        branches[branch] = {
            "k3_measured_at_0": float(k3[trace.n // 2]),
            "k3_target_at_0": float(cfg.k3(0.0)),
            "k3_max_relative_mismatch": float(np.max(np.abs(k3[sl] - tgt[sl]) / tgt[sl])),
            "k2_over_k1_deviation": float(np.max(np.abs(k2[sl] / k1[sl] - cfg.c2))),
            "slant_deviation": prof.constancy_deviation,
            "eq4_residual": rep.residuals["eq4"],
            "verdict": rep.verdict,
        }
    out["steering_branches"] = branches
    out["conclusion"] = (
        "no curve realizes the configured scalar data; the configuration "
        "satisfies the constant-beta algebra but fails realizability")
    return out
