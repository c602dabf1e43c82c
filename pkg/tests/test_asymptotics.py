import math
import random

import mpmath
import numpy as np
import pytest

from k4perc import asymptotics as A


def test_mu_endpoint_and_limit():
    assert A.mu(1 / 3, 3) == pytest.approx(0, abs=1e-12)
    assert abs(A.mu(0.2, 1e-8) - 1.5) < 1e-6
    vals = [A.mu(1 / 3, b) for b in np.linspace(0.01, 3, 300)]
    assert all(x > y for x, y in zip(vals, vals[1:]))
    with pytest.raises(A.DomainError):
        A.mu(0, 1)


def test_beta_star():
    assert abs(A.beta_star(1 / 3 - 1e-12, 1e-9) - 3) < 1e-3
    assert A.beta_star(0.2, 1e-10) == pytest.approx(0.770185, abs=1e-5)
    r = random.Random(0)
    for _ in range(50):
        a = r.uniform(0.01, 0.33)
        assert abs(A.mu(a, A.beta_star(a, 1e-12))) < 1e-10
    with pytest.raises(A.DomainError):
        A.beta_star(0.5)


def test_beta_star_high_precision():
    b = A.beta_star(0.2, 1e-14)
    with mpmath.workdps(40):
        root = mpmath.findroot(lambda x: A.mu(mpmath.mpf("0.2"), x, mpmath), b)
        assert abs(float(root) - b) < 1e-12


def test_xi_knot_continuity():
    for a in np.linspace(0.05, 0.33, 8):
        for e in np.linspace(0.01, 0.9, 8):
            knot = e / a
            if not A.beta_eps(a, e) <= knot <= 1 / a:
                continue
            lo, hi = A._xi_low(a, knot, e), A._xi_high(a, knot, e)
            assert abs(lo - hi) < 1e-10


def test_xi_at_zero_eps():
    for a, b in [(0.2, 1.0), (0.1, 3.0), (0.3, 2.5)]:
        xi0 = A.xi_eps(a, b, 0.0)
        assert xi0 == pytest.approx(-a * b * b / 2 + b * math.log(a * b), abs=1e-12)
        assert A.mu(a, b) == pytest.approx(1.5 + xi0, abs=1e-12)


def test_xi_finite_at_left_endpoint():
    for e in (0.01, 0.3, 0.6, 0.99):
        assert math.isfinite(A.xi_eps(0.3, A.beta_eps(0.3, e), e))


def test_mu_eps_identities():
    r = random.Random(1)
    for _ in range(200):
        a = r.uniform(0.05, 0.33)
        e = r.uniform(0.001, min(0.99, 3 * a))
        b = r.uniform(A.beta_eps(a, e), 1 / a)
        me = A.mu_eps(a, b, e)
        assert me == pytest.approx(A.nu_eps(a, e) + A.xi_eps(a, b, e), abs=1e-10)
        assert me <= A.mu(a, b) + 1e-12
        if e / a <= 1 / a:
            assert A.mu_eps(a, e / a, e) == pytest.approx(A.mu(a, e / a), abs=1e-10)


def test_mu_eps_below_mu_on_grid():
    for a in (0.1, 0.2, 0.3):
        for e in np.linspace(0.01, min(0.99, 3 * a), 12):
            for b in np.linspace(A.beta_eps(a, e), 1 / a, 80):
                assert A.mu_eps(a, b, e) <= A.mu(a, b) + 1e-12


def test_nu_eps_negative_at_three_alpha():
    for a in np.linspace(0.02, 0.33, 20):
        assert A.nu_eps(a, 3 * a) < 0


def test_mu_positive_at_beta_eps():
    for a in np.linspace(0.02, 0.33, 15):
        es = A.eps_star(a)
        for e in np.linspace(1e-6, es, 40):
            assert A.mu_at_beta_eps(a, e) > 0
            assert A.mu_at_beta_eps(a, e) == pytest.approx(A.mu(a, A.beta_eps(a, e)), abs=1e-10)


def test_eps_star():
    assert A.eps_star(0.2) == pytest.approx(0.25248, abs=1e-4)
    e = A.eps_star(0.2)
    assert e * (1 - math.log(e)) == pytest.approx(0.6, abs=1e-10)
    r = random.Random(2)
    for _ in range(50):
        a = r.uniform(0.01, 0.33)
        assert abs(A.nu_eps(a, A.eps_star(a))) < 1e-8
    seq = [A.eps_star(a) for a in np.linspace(0.05, 0.333, 30)]
    assert all(x < y for x, y in zip(seq, seq[1:])) and seq[-1] > 0.9


def test_psi_and_y_star():
    for e in (0.0, 0.05, 0.1, 0.18):
        assert A.psi_eps(1.0, e) == pytest.approx(2 / math.e)
    assert A.y_star(0) == pytest.approx(0.819, abs=1e-3)
    ys = [A.y_star(e) for e in np.linspace(0, 0.18, 20)]
    assert all(x < y for x, y in zip(ys, ys[1:]))
    assert A.y_star(1e-9) - A.y_star(0) < 1e-6
    for e in (0.0, 0.1):
        y = A.y_star(e)
        assert A._psi_curve(y) == pytest.approx(3 / (2 * math.e) + e, abs=1e-10)
    with pytest.raises(A.DomainError):
        A.psi_eps(0.5, 0.2)


def test_zeta_values_and_minima():
    assert A.zeta(1 / 3) == pytest.approx((math.e / 6) ** (1 / 3), abs=1e-10)
    assert A.zeta(0.5) == pytest.approx(1 / math.sqrt(2), abs=1e-10)
    assert A.zeta(1.0) == pytest.approx(1.0, abs=1e-10)
    for x in np.linspace(1 / 3, 1, 50):
        assert A.zeta(x) == pytest.approx(A.zeta_closed(x), rel=1e-12)
    x1, x2 = A.zeta_stationary_points()
    assert x1 == pytest.approx(0.439, abs=3e-3) and x2 == pytest.approx(0.692, abs=3e-3)
    # they are minima on their branches
    for x, lo, hi in ((x1, 1 / 3, 0.5), (x2, 0.5, 1.0)):
        grid = np.linspace(lo + 1e-6, hi - 1e-6, 200)
        assert min(A.zeta(g) for g in grid) >= A.zeta(x) - 1e-12


def test_case_sums_below_one():
    sums = A.case_sums(8)
    for got, ref in zip(sums, (0.23, 0.43, 0.63, 0.90)):
        assert abs(got - ref) <= 0.02
    assert all(s < 1 for s in sums)


def test_spot_values_report():
    rep = A.proof_constants(8)
    assert rep.all_pass and rep.extended_agree
    v = rep.values
    assert v["nu_beta_2"] == pytest.approx(2 * math.log((2 / 3) * math.e ** 3 / 16), abs=1e-12)
    assert v["nu_beta_9"] == pytest.approx(9 * math.log(3 * math.e ** 3 / 16), abs=1e-12)
    assert v["sqrt21"] == pytest.approx((math.sqrt(21) - 3) / 2)
    assert v["log_level_margin"] == pytest.approx(1 + 2 * math.log(3 / (2 * math.e)))
    # the curvature bound carries a factor 3/2 on 3 + 2 log(3/(4e)) = 0.4246
    assert v["nu_curvature_bound"] == pytest.approx(1.5 * (3 + 2 * math.log(3 / (4 * math.e))))


def test_extended_precision_agrees():
    with mpmath.workdps(50):
        for a, b in [(0.2, 0.7), (0.3, 2.0)]:
            assert float(A.mu(mpmath.mpf(a), mpmath.mpf(b), mpmath)) == pytest.approx(A.mu(a, b), abs=1e-14)
        assert float(A.zeta(mpmath.mpf(1) / 3, mpmath)) == pytest.approx(A.zeta(1 / 3), abs=1e-14)


def test_threshold_params():
    tp = A.ThresholdParams(alpha=0.2, n=1000, eps=0.1)
    assert tp.p == pytest.approx(math.sqrt(0.2 / (1000 * math.log(1000))))
    assert tp.k_alpha == pytest.approx(2 * tp.q_alpha)
    assert tp.beta_eps == pytest.approx(A.delta_eps(0.1) / 0.2)
