"""Slant diagnostics: contact angles, the constants a and b, the field V,
and the decomposition of phi T along the Frenet frame.

For a unit-speed curve with tangent T, the contact angles are defined by
eta_alpha(T) = cos(theta_alpha) constant.  Derived scalars:

    a = sum cos^2 theta_alpha        (in [0, s], < 1 for non-geodesic slant)
    b = sum cos theta_alpha
    V = sum cos(theta_alpha) xi_alpha

phi T has squared norm 1 - a; its angles within span{V2, V3, V4} are

    g(phiT, V2) = sqrt(1-a) cos(beta),
    cos(w), sin(w) from the projection onto span{V3, V4}.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .curve import CurveTrace, FrenetData, fd_derivative
from .manifold import ModelParams, Point, Tangent, connection_term, phi_frame

__all__ = [
    "SlantProfile",
    "PhiTDecomposition",
    "contact_angles",
    "slant_field_V",
    "nabla_phiT_check",
    "phiT_decomposition",
]


@dataclass
class SlantProfile:
    """Contact angles and derived constants of a (candidate) slant curve."""

    params: ModelParams
    thetas: np.ndarray              # radians, per alpha
    a: float                        # sum cos^2 theta
    b: float                        # sum cos theta
    constancy_deviation: float      # max |eta_alpha(T) - cos theta_alpha|
    is_slant: bool
    tolerance: float
    eta_samples: np.ndarray = field(repr=False, default=None)

    @property
    def cos_thetas(self) -> np.ndarray:
        return np.cos(self.thetas)


def contact_angles(trace: CurveTrace, tolerance: float | None = None) -> SlantProfile:
    """Measure the contact angles of a unit-speed trace.

    theta_alpha = arccos(mean eta_alpha(T)); the curve is flagged slant when
    the worst per-sample deviation from the mean stays below `tolerance`
    (default from trace.meta['slant_tol'], else 1e-5 for analytic traces,
    1e-3 for traces built by differencing sampled positions).
    """
    if tolerance is None:
        default = 1e-3 if trace.meta.get("sampled", False) else 1e-5
        tolerance = trace.meta.get("slant_tol", default)
    tf = trace.tangent_frame()
    etas = tf[:, 2 * trace.params.m:]          # eta_alpha(T) = C_alpha
    means = etas.mean(axis=0)
    deviation = float(np.max(np.abs(etas - means))) if len(etas) else 0.0
    thetas = np.arccos(np.clip(means, -1.0, 1.0))
    cos = np.cos(thetas)
    return SlantProfile(
        params=trace.params,
        thetas=thetas,
        a=float(np.sum(cos ** 2)),
        b=float(np.sum(cos)),
        constancy_deviation=deviation,
        is_slant=bool(deviation <= tolerance),
        tolerance=float(tolerance),
        eta_samples=etas,
    )


def slant_field_V(profile: SlantProfile, p: Point) -> Tangent:
    """The field V = sum cos(theta_alpha) xi_alpha at p."""
    params = profile.params
    comp = np.zeros(params.dim)
    comp[2 * params.m:] = 2.0 * profile.cos_thetas
    return Tangent(p, comp)


def v_frame(profile: SlantProfile) -> np.ndarray:
    """Frame components of V (xi_alpha slots carry cos theta_alpha)."""
    params = profile.params
    out = np.zeros(params.dim)
    out[2 * params.m:] = profile.cos_thetas
    return out


def nabla_phiT_check(trace: CurveTrace, fd: FrenetData,
                     profile: SlantProfile) -> dict:
    """Residual of nabla_T(phi T) = (1-a) sum xi + b(-T + V) + k1 phi V2.

    The left side is computed exactly from the trace derivatives (phi T in
    frame components is algebraic in T, so its jet follows from T's jet);
    the right side uses the measured k1 and V2.  A geodesic input is valid
    (both sides reduce to the xi/V terms with k1 = 0) but is flagged.
    """
    params = trace.params
    m = params.m
    if trace.depth < 2:
        raise ValueError("need gamma'' to differentiate phi T")
    # d/dt of phiT's frame components: phi is constant-coefficient on frames
    from .curve import _frame_jet
    tjet = _frame_jet(trace)
    tf = tjet[0]
    phiT = phi_frame(params, tf)
    phiT_dot = phi_frame(params, tjet[1])
    lhs = phiT_dot + connection_term(params, tf, phiT)

    a, b = profile.a, profile.b
    xibar = np.zeros(params.dim)
    xibar[2 * m:] = 1.0
    Vf = v_frame(profile)
    geodesic = fd.order < 2
    if geodesic:
        k1 = np.zeros(trace.n)
        phiV2 = np.zeros_like(tf)
    else:
        k1 = fd.curvatures[0]
        phiV2 = phi_frame(params, fd.frames[1])
    rhs = (1 - a) * xibar + b * (-tf + Vf) + k1[:, None] * phiV2
    res = np.linalg.norm(lhs - rhs, axis=-1)
    return {
        "max_residual": float(np.max(res)),
        "per_sample": res,
        "geodesic": geodesic,
    }


@dataclass
class PhiTDecomposition:
    """Projection of phi T onto the Frenet frame, with angle functions."""

    ts: np.ndarray
    p2: np.ndarray                  # g(phiT, V2)
    p3: np.ndarray                  # g(phiT, V3), zeros if r < 3
    p4: np.ndarray                  # g(phiT, V4), zeros if r < 4
    beta: np.ndarray                # arccos(p2 / sqrt(1-a)) in [0, pi]
    w: np.ndarray                   # angle in span{V3, V4}; nan where undefined
    sin2beta_sign: np.ndarray       # sign of sin(2 beta) per sample
    norm_defect: np.ndarray         # p2^2+p3^2+p4^2 - (1-a), when span covers
    in_span_v234: bool              # |phiT|^2 - (p2^2+p3^2+p4^2) small
    degenerate: bool                # a = 1: phi T = 0
    signs: dict
    derivative_residual: float      # eq. d/dt p2 = k2 p3


def phiT_decomposition(trace: CurveTrace, fd: FrenetData,
                       profile: SlantProfile, span_tol: float = 1e-6) -> PhiTDecomposition:
    """Inner products of phi T with V2..V4 and the angles beta, w.

    beta is reported in [0, pi] (arccos branch); the sign ambiguities of the
    sin-beta terms are resolved per sample from the measured inner products
    and reported in `signs`.  When 1 - a < 1e-12, phi T vanishes identically
    and the decomposition is flagged degenerate.
    """
    if fd.order < 2:
        raise ValueError("phi T decomposition needs osculating order >= 2")
    params = trace.params
    one_minus_a = 1.0 - profile.a
    n = trace.n
    phiT = phi_frame(params, trace.tangent_frame())
    if one_minus_a < 1e-12:
        zeros = np.zeros(n)
        return PhiTDecomposition(
            ts=trace.ts, p2=zeros, p3=zeros.copy(), p4=zeros.copy(),
            beta=np.full(n, np.nan), w=np.full(n, np.nan),
            sin2beta_sign=zeros.copy(), norm_defect=zeros.copy(),
            in_span_v234=True, degenerate=True, signs={},
            derivative_residual=0.0)

    def proj(i):
        if fd.order >= i + 1:
            return np.einsum("nd,nd->n", phiT, fd.frames[i])
        return np.zeros(n)

    p2, p3, p4 = proj(1), proj(2), proj(3)
    sq = np.sqrt(one_minus_a)
    beta = np.arccos(np.clip(p2 / sq, -1.0, 1.0))
    sinb = np.sin(beta)
    # w: angle of the projection onto span{V3, V4} relative to V3
    plane = np.hypot(p3, p4)
    w = np.where(plane > span_tol * sq, np.arctan2(p4, p3), np.nan)
    norm_defect = p2 ** 2 + p3 ** 2 + p4 ** 2 - one_minus_a
    phiT_norm2 = np.einsum("nd,nd->n", phiT, phiT)
    in_span = bool(np.max(np.abs(phiT_norm2 - (p2 ** 2 + p3 ** 2 + p4 ** 2)))
                   <= max(span_tol, 1e-10) * max(1.0, one_minus_a))
    # derivative identity d/dt g(phiT,V2) = k2 g(phiT,V3)
    if fd.order >= 3:
        h = trace.ts[1] - trace.ts[0]
        dp2 = fd_derivative(p2, h)
        resid = float(np.max(np.abs(dp2 - fd.curvatures[1] * p3)))
    else:
        resid = float(np.max(np.abs(fd_derivative(p2, trace.ts[1] - trace.ts[0]))))
    signs = {
        "sin_beta_cos_w": np.sign(p3),
        "sin_beta_sin_w": np.sign(p4),
    }
    return PhiTDecomposition(
        ts=trace.ts, p2=p2, p3=p3, p4=p4, beta=beta, w=w,
        sin2beta_sign=np.sign(2 * np.cos(beta) * sinb),
        norm_defect=norm_defect, in_span_v234=in_span, degenerate=False,
        signs=signs, derivative_residual=resid)
