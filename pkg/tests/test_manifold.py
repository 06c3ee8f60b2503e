"""Structure identities, connection, and curvature of the coordinate model."""
import numpy as np
import pytest

from sspaceform import manifold as mf
from sspaceform.manifold import ModelParams, Point, Tangent


def random_tangent(rng, params, p=None):
    if p is None:
        p = Point(rng.uniform(-1, 1, params.dim))
    return Tangent(p, rng.uniform(-1, 1, params.dim))


# ---------------------------------------------------------------------------
# model parameters and basic types
# ---------------------------------------------------------------------------

def test_model_params():
    params = ModelParams(m=2, s=2)
    assert params.dim == 6
    assert params.c == -6.0
    with pytest.raises(ValueError):
        ModelParams(m=0, s=1)
    with pytest.raises(ValueError):
        ModelParams(m=1, s=0)


def test_tangent_dimension_mismatch():
    with pytest.raises(ValueError):
        Tangent(Point(np.zeros(6)), np.zeros(5))


# ---------------------------------------------------------------------------
# phi, eta, metric
# ---------------------------------------------------------------------------

def test_phi_kills_xi(params22):
    p = Point(np.array([0.3, -0.2, 0.7, 0.1, 0.0, 0.5]))
    for alpha in (1, 2):
        xi = mf.xi_tangent(params22, alpha, p)
        assert np.allclose(mf.phi_apply(params22, xi).components, 0.0)


def test_phi_maps_frame_fields(params22):
    # X_i = 2 d/dy_i must map to X_{m+i} = 2(d/dx_i + y_i sum d/dz)
    rng = np.random.default_rng(3)
    p = Point(rng.uniform(-1, 1, 6))
    y = p.coords[2:4]
    for i in range(2):
        Xi = np.zeros(6)
        Xi[2 + i] = 2.0
        out = mf.phi_apply(params22, Tangent(p, Xi)).components
        expect = np.zeros(6)
        expect[i] = 2.0
        expect[4:] = 2.0 * y[i]
        assert np.allclose(out, expect, atol=1e-14)


def test_phi_square_identity(params22):
    rng = np.random.default_rng(0)
    for _ in range(20):
        v = random_tangent(rng, params22)
        phiv = mf.phi_apply(params22, v)
        phi2v = mf.phi_apply(params22, phiv).components
        recon = -v.components.copy()
        for alpha in (1, 2):
            xi = mf.xi_tangent(params22, alpha, v.base)
            recon += mf.eta_eval(params22, alpha, v) * xi.components
        assert np.max(np.abs(phi2v - recon)) < 1e-12


def test_eta_on_xi_and_phi(params22):
    rng = np.random.default_rng(1)
    p = Point(rng.uniform(-1, 1, 6))
    for alpha in (1, 2):
        for beta in (1, 2):
            val = mf.eta_eval(params22, alpha, mf.xi_tangent(params22, beta, p))
            assert abs(val - (alpha == beta)) < 1e-15
    v = random_tangent(rng, params22, p)
    for alpha in (1, 2):
        assert abs(mf.eta_eval(params22, alpha, mf.phi_apply(params22, v))) < 1e-15


def test_eta_z_component_at_origin(params22):
    # dz_1-component 2, all x, y zero -> eta_1 = 1
    v = Tangent(Point(np.zeros(6)), np.array([0, 0, 0, 0, 2.0, 0]))
    assert mf.eta_eval(params22, 1, v) == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(IndexError):
        mf.eta_eval(params22, 3, v)


def test_metric_orthonormal_frame(params22):
    # the frame X_i, X_{m+i} = phi X_i, xi_alpha is g-orthonormal everywhere
    rng = np.random.default_rng(2)
    p = Point(rng.uniform(-1, 1, 6))
    y = p.coords[2:4]
    frame = []
    for i in range(2):
        Xi = np.zeros(6)
        Xi[2 + i] = 2.0
        frame.append(Xi)
    for i in range(2):
        Xmi = np.zeros(6)
        Xmi[i] = 2.0
        Xmi[4:] = 2.0 * y[i]
        frame.append(Xmi)
    for alpha in (1, 2):
        frame.append(mf.xi_tangent(params22, alpha, p).components)
    G = np.array([[mf.metric_eval(params22, Tangent(p, u), Tangent(p, v))
                   for v in frame] for u in frame])
    assert np.max(np.abs(G - np.eye(6))) < 1e-14


def test_metric_compatibility_identity(params22):
    rng = np.random.default_rng(4)
    for _ in range(20):
        p = Point(rng.uniform(-1, 1, 6))
        u = random_tangent(rng, params22, p)
        v = random_tangent(rng, params22, p)
        lhs = mf.metric_eval(params22, u, v)
        rhs = mf.metric_eval(params22, mf.phi_apply(params22, u),
                             mf.phi_apply(params22, v))
        rhs += sum(mf.eta_eval(params22, a, u) * mf.eta_eval(params22, a, v)
                   for a in (1, 2))
        assert abs(lhs - rhs) < 1e-12


def test_metric_mismatched_base_points(params22):
    u = Tangent(Point(np.zeros(6)), np.ones(6))
    v = Tangent(Point(np.ones(6)), np.ones(6))
    with pytest.raises(ValueError):
        mf.metric_eval(params22, u, v)


def test_metric_inverse_closed_form(params22):
    rng = np.random.default_rng(5)
    for _ in range(5):
        p = rng.uniform(-2, 2, 6)
        G = mf.metric_matrix(params22, p)
        Gi = mf.metric_inverse(params22, p)
        assert np.max(np.abs(Gi - np.linalg.inv(G))) < 1e-12


# ---------------------------------------------------------------------------
# structure report
# ---------------------------------------------------------------------------

def test_verify_structure_r6():
    rep = mf.verify_structure(ModelParams(2, 2), samples=100, seed=0)
    assert rep.max_residual < 1e-12, rep.residuals


def test_verify_structure_sasakian():
    rep = mf.verify_structure(ModelParams(1, 1), samples=1, seed=7)
    assert rep.max_residual < 1e-12


def test_verify_structure_negative_control():
    rep = mf.verify_structure(ModelParams(2, 2), samples=10, seed=0,
                              metric_perturbation=1e-3)
    assert rep.residuals["metric_compat"] > 1e-5


def test_verify_structure_bad_samples():
    with pytest.raises(ValueError):
        mf.verify_structure(ModelParams(2, 2), samples=0)


# ---------------------------------------------------------------------------
# Christoffel symbols and the connection
# ---------------------------------------------------------------------------

def test_christoffel_analytic_vs_fd(params22):
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(10):
        p = rng.uniform(-1, 1, 6)
        worst = max(worst, np.max(np.abs(mf.christoffel(params22, p)
                                         - mf.christoffel_fd(params22, p))))
    assert worst < 1e-6


def test_christoffel_torsion_free(params22):
    rng = np.random.default_rng(7)
    for _ in range(5):
        G = mf.christoffel(params22, rng.uniform(-1, 1, 6))
        assert np.max(np.abs(G - G.transpose(0, 2, 1))) < 1e-10
        Gfd = mf.christoffel_fd(params22, rng.uniform(-1, 1, 6))
        assert np.max(np.abs(Gfd - Gfd.transpose(0, 2, 1))) < 1e-6


def test_nabla_xi_is_minus_phi(params22):
    # covariant_derivative of xi_alpha along any curve equals -phi(T)
    rng = np.random.default_rng(8)
    c0, c1, c2 = rng.uniform(-1, 1, (3, 6))

    def curve(t):
        return c0 + c1 * t + c2 * t * t

    for alpha in (1, 2):
        def field(t, alpha=alpha):
            comp = np.zeros(6)
            comp[4 + alpha - 1] = 2.0
            return comp

        t0 = 0.3
        out = mf.covariant_derivative(params22, curve, field, t0)
        vel = c1 + 2 * c2 * t0
        phiT = mf.phi_apply(params22, Tangent(Point(curve(t0)), vel)).components
        assert np.max(np.abs(out.components + phiT)) < 1e-8


def test_connection_table_frame_fields(params22):
    # nabla_{X_i} X_{m+j} = delta_ij sum_alpha xi_alpha
    for i in range(2):
        for j in range(2):
            def curve(t, i=i):
                p = np.zeros(6)
                p[2 + i] = 2.0 * t   # integral curve of X_i = 2 d/dy_i
                return p

            def field(t, j=j):
                # X_{m+j} along the curve: depends on y_j which is constant
                # on this curve unless j == i
                p = curve(t)
                comp = np.zeros(6)
                comp[j] = 2.0
                comp[4:] = 2.0 * p[2 + j]
                return comp

            out = mf.covariant_derivative(params22, curve, field, 0.2)
            expect = np.zeros(6)
            expect[4:] = 2.0 * (i == j)   # sum_alpha xi_alpha
            assert np.max(np.abs(out.components - expect)) < 1e-8, (i, j)


def test_nabla_phi_formula(params22):
    # (nabla_X phi)Y = sum_alpha { g(phiX, phiY) xi_alpha + eta_alpha(Y) phi^2 X }
    rng = np.random.default_rng(9)
    c0, c1 = rng.uniform(-1, 1, (2, 6))
    Y = rng.uniform(-1, 1, 6)

    def curve(t):
        return c0 + c1 * t

    def phiY_field(t):
        p = Point(curve(t))
        return mf.phi_apply(params22, Tangent(p, Y)).components

    def Y_field(t):
        return Y

    t0 = 0.1
    p = Point(curve(t0))
    lhs = (mf.covariant_derivative(params22, curve, phiY_field, t0).components
           - mf.phi_apply(params22, mf.covariant_derivative(
               params22, curve, Y_field, t0)).components)
    X = Tangent(p, c1)
    Yt = Tangent(p, Y)
    phiX = mf.phi_apply(params22, X)
    phiYt = mf.phi_apply(params22, Yt)
    phi2X = mf.phi_apply(params22, phiX).components
    rhs = np.zeros(6)
    for alpha in (1, 2):
        rhs += (mf.metric_eval(params22, phiX, phiYt)
                * mf.xi_tangent(params22, alpha, p).components)
        rhs += mf.eta_eval(params22, alpha, Yt) * phi2X
    assert np.max(np.abs(lhs - rhs)) < 1e-6


def test_metric_compatibility_along_curves(params22):
    # d/dt g(V, W) = g(nabla_T V, W) + g(V, nabla_T W) along random curves
    rng = np.random.default_rng(10)
    c0, c1, c2, a0, a1, b0, b1 = rng.uniform(-1, 1, (7, 6))

    def curve(t):
        return c0 + c1 * t + c2 * t * t

    def V(t):
        return a0 + a1 * np.sin(t)

    def W(t):
        return b0 + b1 * t

    t0, h = 0.2, 1e-4

    def gVW(t):
        p = Point(curve(t))
        return mf.metric_eval(params22, Tangent(p, V(t)), Tangent(p, W(t)))

    dg = (gVW(t0 - 2 * h) - 8 * gVW(t0 - h) + 8 * gVW(t0 + h)
          - gVW(t0 + 2 * h)) / (12 * h)
    p = Point(curve(t0))
    nv = mf.covariant_derivative(params22, curve, V, t0)
    nw = mf.covariant_derivative(params22, curve, W, t0)
    rhs = (mf.metric_eval(params22, nv, Tangent(p, W(t0)))
           + mf.metric_eval(params22, Tangent(p, V(t0)), nw))
    assert abs(dg - rhs) < 1e-6


# ---------------------------------------------------------------------------
# curvature
# ---------------------------------------------------------------------------

def test_curvature_antisymmetry(params22):
    rng = np.random.default_rng(11)
    p = Point(rng.uniform(-1, 1, 6))
    X = random_tangent(rng, params22, p)
    Z = random_tangent(rng, params22, p)
    out = mf.curvature_model(params22, X, X, Z)
    assert np.max(np.abs(out.components)) < 1e-14


def test_phi_sectional_curvature(params22):
    # g(R(X, phiX) phiX, X) = c = -3s for unit X orthogonal to all xi
    rng = np.random.default_rng(12)
    for _ in range(20):
        p = Point(rng.uniform(-1, 1, 6))
        v = rng.uniform(-1, 1, 6)
        # make eta_alpha(v) = 0: v_z_alpha = <y, v_x>
        v[4] = v[5] = np.dot(p.coords[2:4], v[:2])
        t = Tangent(p, v)
        nv = np.sqrt(mf.metric_eval(params22, t, t))
        t = Tangent(p, v / nv)
        pt = mf.phi_apply(params22, t)
        r = mf.curvature_model(params22, t, pt, pt)
        sec = mf.metric_eval(params22, r, t)
        assert abs(sec - params22.c) < 1e-6


def test_curvature_model_vs_numeric(params22):
    rng = np.random.default_rng(13)
    for _ in range(50):
        p = rng.uniform(-1, 1, 6)
        X, Y, Z = rng.uniform(-1, 1, (3, 6))
        pt = Point(p)
        rm = mf.curvature_model(params22, Tangent(pt, X), Tangent(pt, Y),
                                Tangent(pt, Z)).components
        rn = mf.curvature_numeric(params22, lambda q: X, lambda q: Y,
                                  lambda q: Z, p).components
        scale = max(np.max(np.abs(rm)), 1e-10)
        assert np.max(np.abs(rm - rn)) / scale < 1e-5


def test_curvature_numeric_varying_fields(params22):
    def Xf(q):
        return np.array([np.sin(q[1]), q[2], 1.0, q[0] * q[3], 0.5, q[1] ** 2])

    def Yf(q):
        return np.array([q[3], 1.0, np.cos(q[0]), 0.2, 0.1 * q[4], 1.0])

    def Zf(q):
        return np.array([1.0, q[5], q[1], np.sin(q[2]), 0.3, 0.1])

    rng = np.random.default_rng(14)
    p = rng.uniform(-0.5, 0.5, 6)
    pt = Point(p)
    rm = mf.curvature_model(params22, Tangent(pt, Xf(p)), Tangent(pt, Yf(p)),
                            Tangent(pt, Zf(p))).components
    rn = mf.curvature_numeric(params22, Xf, Yf, Zf, p).components
    assert np.max(np.abs(rm - rn)) / np.max(np.abs(rm)) < 1e-5


def test_curvature_numeric_xy_equal_vanishes(params22):
    rng = np.random.default_rng(15)
    p = rng.uniform(-1, 1, 6)
    X, Z = rng.uniform(-1, 1, (2, 6))
    rn = mf.curvature_numeric(params22, lambda q: X, lambda q: X,
                              lambda q: Z, p).components
    assert np.max(np.abs(rn)) < 1e-8


def test_curvature_numeric_z_directions_sasakian(params11):
    # z-heavy directions in the m = 1, s = 1 model reproduce the formula
    rng = np.random.default_rng(16)
    p = rng.uniform(-1, 1, 3)
    X = np.array([0.1, 0.0, 1.0])
    Y = np.array([0.0, 0.2, 1.0])
    Z = np.array([0.0, 0.0, 1.0])
    pt = Point(p)
    rm = mf.curvature_model(params11, Tangent(pt, X), Tangent(pt, Y),
                            Tangent(pt, Z)).components
    rn = mf.curvature_numeric(params11, lambda q: X, lambda q: Y,
                              lambda q: Z, p).components
    assert np.max(np.abs(rm - rn)) < 1e-6


def test_curvature_numeric_step_guard(params22):
    with pytest.raises(ValueError):
        mf.curvature_numeric(params22, lambda q: q, lambda q: q, lambda q: q,
                             np.zeros(6), h=1e-9)


def test_covariant_derivative_sample_form(params22):
    # the (Point, velocity) call form agrees with the curve-callable form
    rng = np.random.default_rng(17)
    c0, c1, c2 = rng.uniform(-1, 1, (3, 6))
    a0, a1 = rng.uniform(-1, 1, (2, 6))

    def curve(t):
        return c0 + c1 * t + c2 * t * t

    def fld(t):
        return a0 + a1 * np.sin(t)

    t0 = 0.4
    via_curve = mf.covariant_derivative(params22, curve, fld, t0)
    sample = (Point(curve(t0)), Tangent(Point(curve(t0)), c1 + 2 * c2 * t0))
    via_sample = mf.covariant_derivative(params22, sample, fld, t0)
    assert np.max(np.abs(via_curve.components - via_sample.components)) < 1e-8


def test_christoffel_fd_richardson(params22):
    # the metric entries are quadratic in y, so the 4th-order stencil is
    # already exact; the Richardson variant must agree at rounding level
    rng = np.random.default_rng(18)
    p = rng.uniform(-1, 1, 6)
    Ga = mf.christoffel(params22, p)
    rich = np.max(np.abs(mf.christoffel_fd(params22, p, h=1e-2,
                                           richardson=True) - Ga))
    assert rich < 1e-10
