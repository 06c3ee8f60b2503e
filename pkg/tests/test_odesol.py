"""Closed-form candidates, residual ground truth, and the RK4 oracle."""
import numpy as np
import pytest

from sspaceform import odesol
from sspaceform.manifold import ModelParams
from sspaceform.odesol import (OdeSolutionSpec, case_iii_profile,
                               f_from_k1, first_integral, k1_closed_form,
                               lambda_constants, numeric_solution_oracle,
                               ode_residual, real_domain_report)


def spec_iii(c2, c3, c4):
    return OdeSolutionSpec(epsilon=0, lam=0.0, c2=c2, c3=c3, c4=c4)


# ---------------------------------------------------------------------------
# spec validation
# ---------------------------------------------------------------------------

def test_spec_validation():
    with pytest.raises(ValueError):
        OdeSolutionSpec(epsilon=2, lam=1.0, c2=0.0, c3=1.0, c4=0.0)
    with pytest.raises(ValueError):
        OdeSolutionSpec(epsilon=1, lam=0.0, c2=0.0, c3=1.0, c4=0.0)
    with pytest.raises(ValueError):
        OdeSolutionSpec(epsilon=0, lam=0.0, c2=-1.0, c3=1.0, c4=0.0)
    s = OdeSolutionSpec(epsilon=0, lam=3.0, c2=0.0, c3=1.0, c4=0.0)
    assert s.lam == 0.0  # eps = 0 normalizes lambda


# ---------------------------------------------------------------------------
# case (iii): exact family
# ---------------------------------------------------------------------------

def test_case_iii_reference_instance():
    # (c2, c3, c4) = (1, 4, 0) is y = 1/(2 + t^2)
    ts = np.linspace(-2, 2, 4001)
    y, ok = k1_closed_form(spec_iii(1.0, 4.0, 0.0), ts)
    assert ok.all()
    assert np.max(np.abs(y - 1.0 / (2.0 + ts ** 2))) < 1e-12


def test_case_iii_residual_exact():
    # LHS = RHS = 8/(2+t^2)^4 for the reference instance
    spec = spec_iii(1.0, 4.0, 0.0)
    ts = np.linspace(-2, 2, 2001)
    y, yp, ypp = case_iii_profile(spec, ts)
    res = ode_residual(y, spec, yp=yp, ypp=ypp)
    assert res["max_residual"] < 1e-10
    lhs = 3 * yp ** 2 - 2 * y * ypp
    assert np.max(np.abs(lhs - 8.0 / (2.0 + ts ** 2) ** 4)) < 1e-12


def test_case_iii_parameter_grid():
    # default validation grid, away from poles
    ts = np.linspace(-2, 2, 801)
    for c2 in (0.0, 1.0, 2.0):
        for c3 in (1.0, 4.0, 10.0):
            for c4 in (-1.0, 0.0, 1.0):
                spec = spec_iii(c2, c3, c4)
                y, yp, ypp = case_iii_profile(spec, ts)
                _, ok = k1_closed_form(spec, ts)
                res = ode_residual(y[ok], spec, yp=yp[ok], ypp=ypp[ok])
                assert res["max_residual"] < 1e-10, (c2, c3, c4)


def test_case_iii_degenerate_c3_zero():
    y, ok = k1_closed_form(spec_iii(1.0, 0.0, 0.0), np.linspace(-1, 1, 101))
    assert ok.all()
    assert np.allclose(y, 0.0)   # M = 0: y vanishes identically


def test_constant_solution_residual():
    # y = lam/sqrt(1+c2^2) solves the eps = +1 equation exactly
    spec = OdeSolutionSpec(epsilon=1, lam=1.3, c2=0.7, c3=1.0, c4=0.0)
    y0 = spec.lam / np.sqrt(1 + spec.c2 ** 2)
    n = 101
    y = np.full(n, y0)
    res = ode_residual(y, spec, yp=np.zeros(n), ypp=np.zeros(n))
    assert res["max_residual"] < 1e-14


def test_negative_control_residual():
    # y = t with eps = 0, c2 = 0: LHS = 3, RHS = 4 t^4
    spec = spec_iii(0.0, 1.0, 0.0)
    ts = np.linspace(0.1, 1.5, 57)
    res = ode_residual(ts.copy(), spec, yp=np.ones_like(ts),
                       ypp=np.zeros_like(ts))
    assert np.max(np.abs(res["per_sample"] - np.abs(3 - 4 * ts ** 4))) < 1e-12


# ---------------------------------------------------------------------------
# cases (i) / (ii): literal formulas have empty real interior domain
# ---------------------------------------------------------------------------

def test_case_i_nowhere_real():
    for c3 in (0.5, 1.0, 3.0):
        spec = OdeSolutionSpec(epsilon=1, lam=1.0, c2=1.0, c3=c3, c4=0.0)
        rep = real_domain_report(spec, window=(-2, 2), n=4001)
        assert rep["nowhere_real"], rep


def test_case_i_N_nonpositive_everywhere():
    # N <= -2 c3^2 lam^2 sec^2(u): verify the bound numerically
    lam, c2, c3 = 1.0, 1.0, 0.8
    u = np.linspace(-1.5, 1.5, 10001)
    sec2 = 1.0 / np.cos(u) ** 2
    N = lam ** 2 * sec2 * (-(1 + c2 ** 2 + c3 ** 2) * sec2 + (1 + c2 ** 2 - c3 ** 2))
    assert np.all(N <= -2 * c3 ** 2 * lam ** 2 * sec2 + 1e-12)


def test_case_ii_real_only_on_measure_zero():
    spec = OdeSolutionSpec(epsilon=-1, lam=1.0, c2=1.0, c3=2.0, c4=0.0)
    rep = real_domain_report(spec, window=(-2, 2), n=4001)
    # only the isolated point u = 0 can be real
    assert rep["real_fraction"] < 1e-3


def test_case_i_c3_zero_isolated_points():
    # c3 = 0: N = 0 only where cos^2 u = 1, where D = 0 as well; the
    # evaluation must flag a domain error (0/0), not fabricate a value
    spec = OdeSolutionSpec(epsilon=1, lam=1.0, c2=1.0, c3=0.0, c4=0.0)
    y, ok = k1_closed_form(spec, np.array([0.0]))
    assert not ok[0]
    assert np.isnan(y[0])


# ---------------------------------------------------------------------------
# the RK4 oracle
# ---------------------------------------------------------------------------

def test_oracle_matches_case_iii():
    spec = spec_iii(1.0, 4.0, 0.0)
    sol = numeric_solution_oracle(spec, y0=0.5, y0prime=0.0,
                                  window=(-2, 2), step=1e-3)
    assert not sol.truncated
    expect = 1.0 / (2.0 + sol.ts ** 2)
    assert np.max(np.abs(sol.y - expect)) < 1e-6


def test_oracle_constant_solution():
    spec = OdeSolutionSpec(epsilon=1, lam=2.0, c2=1.0, c3=1.0, c4=0.0)
    y0 = spec.lam / np.sqrt(1 + spec.c2 ** 2)
    sol = numeric_solution_oracle(spec, y0=y0, y0prime=0.0,
                                  window=(-2, 2), step=1e-3)
    assert np.max(np.abs(sol.y - y0)) < 1e-8


def test_oracle_fourth_order_convergence():
    spec = spec_iii(1.0, 4.0, 0.0)

    def max_err(step):
        sol = numeric_solution_oracle(spec, y0=0.5, y0prime=0.0,
                                      window=(0, 2), step=step)
        return np.max(np.abs(sol.y - 1.0 / (2.0 + sol.ts ** 2)))

    ratio = max_err(2e-2) / max_err(1e-2)
    assert 13.0 <= ratio <= 19.0, f"convergence ratio {ratio}"


def test_oracle_first_integral_conserved():
    spec = OdeSolutionSpec(epsilon=1, lam=1.0, c2=0.5, c3=1.0, c4=0.0)
    sol = numeric_solution_oracle(spec, y0=0.9, y0prime=0.1,
                                  window=(-1, 1), step=5e-4)
    C = first_integral(sol.y, sol.yp, spec)
    assert np.max(np.abs(C - C[len(C) // 2])) < 1e-9


def test_solutions_bounded_by_first_integral():
    # genuine solutions never blow up: (y')^2 = C y^3 - 4(1+c2^2) y^4
    # - 4 eps lam^2 y^2 bounds y above by C/(4(1+c2^2)) when eps >= 0
    spec = spec_iii(0.0, 1.0, 0.0)
    sol = numeric_solution_oracle(spec, y0=2.0, y0prime=30.0,
                                  window=(-2, 2), step=2e-4, blowup=1e6)
    assert not sol.truncated
    C = first_integral(np.array([2.0]), np.array([30.0]), spec)[0]
    assert np.max(sol.y) <= C / 4.0 + 1e-6


def test_oracle_truncates_degenerate_trajectories():
    # a slope steep enough to cross y = 0 within one step hits the
    # singular line y'' ~ 1/(2y); the guard truncates and reports where
    spec = spec_iii(0.0, 1.0, 0.0)
    sol = numeric_solution_oracle(spec, y0=1.0, y0prime=-1e4,
                                  window=(0, 2), step=1e-3)
    assert sol.truncated
    assert sol.blowup_t is not None and sol.blowup_t < 0.1


def test_oracle_input_guards():
    spec = spec_iii(0.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        numeric_solution_oracle(spec, y0=-1.0, y0prime=0.0)
    with pytest.raises(ValueError):
        numeric_solution_oracle(spec, y0=1.0, y0prime=0.0, window=(1, 2),
                                t0=0.0)


# ---------------------------------------------------------------------------
# lambda constants and the weight builder
# ---------------------------------------------------------------------------

def test_lambda_constants_r6_bracket_vanishes():
    lam, eps = lambda_constants(0.25, 0.5, ModelParams(2, 2), "IV",
                                beta=np.arccos(-np.sqrt(2) / 6))
    assert eps == 0
    assert lam < 1e-7


def test_lambda_constants_case_I():
    lam, eps = lambda_constants(0.5, np.sqrt(2) / 2, (1.0, 1), "I")
    assert eps == 1
    assert lam == pytest.approx(1.0, abs=1e-14)


def test_lambda_constants_degenerate_geodesic_params():
    s = 2
    lam, eps = lambda_constants(1.0, float(s), (float(s), s), "I")
    assert lam == pytest.approx(s, abs=1e-14)
    assert eps == 1
    with pytest.raises(ValueError):
        lambda_constants(0.5, 0.5, (1.0, 1), "IV")   # beta missing
    with pytest.raises(ValueError):
        lambda_constants(0.5, 0.5, (1.0, 1), "V")


def test_f_from_k1_reference():
    ts = np.linspace(-2, 2, 801)

    def k1(ts):
        u = 2.0 + ts ** 2
        return 1.0 / u, -2.0 * ts / u ** 2, (6.0 * ts ** 2 - 4.0) / u ** 3

    f = f_from_k1(ts, k1, c1=1.0)
    assert np.max(np.abs(f.f - (2.0 + ts ** 2) ** 1.5)) < 1e-12
    assert not f.is_constant
    # eq (1): 3 k1'/k1 + 2 f'/f = 0 exactly with analytic derivatives
    k1v, k1p, _ = k1(ts)
    assert np.max(np.abs(3 * k1p / k1v + 2 * f.fp / f.f)) < 1e-12


def test_f_from_k1_constant_flagged():
    ts = np.linspace(0, 1, 101)
    f = f_from_k1(ts, np.full(101, 0.5), np.zeros(101), np.zeros(101), c1=2.0)
    assert f.is_constant


def test_f_from_k1_random_profiles_satisfy_eq1():
    # reconstructed f always satisfies eq (1) below 1e-8 (a1 identities)
    rng = np.random.default_rng(21)
    ts = np.linspace(-1, 1, 501)
    for _ in range(10):
        a, b, c = rng.uniform(0.2, 1.0), rng.uniform(0.5, 3.0), rng.uniform(-0.5, 0.5)
        k1v = np.exp(a * np.sin(b * ts + c))
        k1p = a * b * np.cos(b * ts + c) * k1v
        k1pp = (a * b) ** 2 * (-np.sin(b * ts + c) + a * np.cos(b * ts + c) ** 2) * k1v
        f = f_from_k1(ts, k1v, k1p, k1pp, c1=rng.uniform(0.5, 2.0))
        eq1 = 3 * k1p / k1v + 2 * f.fp / f.f
        assert np.max(np.abs(eq1)) < 1e-8
        # a1 second identity: f''/f = (15/4)(k1'/k1)^2 - (3/2) k1''/k1
        ident = f.fpp / f.f - (15 / 4 * (k1p / k1v) ** 2 - 1.5 * k1pp / k1v)
        assert np.max(np.abs(ident)) < 1e-8


def test_f_from_k1_guards():
    ts = np.linspace(0, 1, 101)
    with pytest.raises(ValueError):
        f_from_k1(ts, np.full(101, -0.5), np.zeros(101), np.zeros(101))
    with pytest.raises(ValueError):
        f_from_k1(ts, np.full(101, 0.5), np.zeros(101), np.zeros(101), c1=0.0)


def test_closed_form_and_oracle_agree_where_both_defined():
    # wherever the closed form is real with tiny residual, the oracle
    # launched from its values reproduces it
    spec = spec_iii(2.0, 10.0, -1.0)
    y0, yp0, _ = (float(v) for v in case_iii_profile(spec, 0.0))
    sol = numeric_solution_oracle(spec, y0=y0, y0prime=yp0,
                                  window=(-1.5, 1.5), step=5e-4)
    expect, _, _ = case_iii_profile(spec, sol.ts)
    assert np.max(np.abs(sol.y - expect)) < 1e-8


def test_lambda_constants_accepts_profile(case2_profile):
    # SlantProfile form of the call: a = 1/2, b = 0, case II bracket = b^2
    lam, eps = lambda_constants(case2_profile, ModelParams(2, 2), "II")
    assert eps == 0
    assert lam < 1e-7
