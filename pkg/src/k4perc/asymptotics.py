"""Scalar exponents and constants behind the K4 threshold.

All functions take plain floats. Those used in the constants report also take
``lib=mpmath`` (anything with ``log``, ``exp``, ``sqrt`` and ``e``) so every
value can be recomputed at extended precision. Roots are found by bracketed
bisection; each bracket comes with a sign change that is checked first.
"""

import json
import math
from dataclasses import asdict, dataclass, field

import mpmath

TOL = 1e-12
KNOT_TOL = 1e-9


class DomainError(ValueError):
    pass


def bisect(f, lo, hi, tol=TOL, maxiter=400):
    """Root of ``f`` in ``[lo, hi]``; ``f(lo)`` and ``f(hi)`` must differ in sign."""
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise DomainError(f"no sign change on [{lo}, {hi}]")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo <= tol:
            break
    return 0.5 * (lo + hi)


def _xlogx(x, lib=math):
    return 0 * x if x == 0 else x * lib.log(x)


def _xlog_x_over_e(x, lib=math):
    """``x log(x/e)``, with its limit 0 at ``x = 0``."""
    return 0 * x if x == 0 else x * (lib.log(x) - 1)


# -- threshold exponents ------------------------------------------------------

def mu(alpha, beta, lib=math):
    """``3/2 + beta log(alpha beta) - alpha beta^2 / 2``."""
    if alpha <= 0 or beta <= 0:
        raise DomainError("mu needs alpha > 0 and beta > 0")
    return 1.5 + beta * lib.log(alpha * beta) - alpha * beta ** 2 / 2


def beta_star(alpha, tol=TOL):
    """Root of ``mu(alpha, .)`` on ``(0, 3]``, for ``0 < alpha < 1/3``."""
    if not 0 < alpha <= 1 / 3:
        raise DomainError("beta_star needs 0 < alpha < 1/3")
    return bisect(lambda b: mu(alpha, b), 1e-300, 3.0, tol)


def delta_eps(eps, lib=math):
    return 1 - lib.sqrt(1 - eps)


def beta_eps(alpha, eps, lib=math):
    return delta_eps(eps, lib) / alpha


def _xi_low(alpha, beta, eps, lib=math):
    ab = alpha * beta
    d = 2 * ab - eps
    return -alpha * beta ** 2 / 2 + d / (2 * alpha) * lib.log(lib.e * ab ** 2 / d)


def _xi_high(alpha, beta, eps, lib=math):
    return (-alpha * beta ** 2 / 2 + beta * lib.log(alpha * beta)
            - _xlog_x_over_e(eps, lib) / (2 * alpha))


def xi_eps(alpha, beta, eps, lib=math):
    """Large-deviation exponent of ``P(q, k)``: two branches split at ``eps/alpha``."""
    if not 0 <= eps < 1:
        raise DomainError("eps must lie in [0, 1)")
    lo, hi = beta_eps(alpha, eps, lib), 1 / alpha
    if not lo - 1e-12 <= beta <= hi + 1e-12:
        raise DomainError(f"beta={beta} outside [{lo}, {hi}]")
    knot = eps / alpha
    if eps > 0 and abs(beta - knot) <= 1e-12 * max(1.0, knot):
        a, b = _xi_low(alpha, knot, eps, lib), _xi_high(alpha, knot, eps, lib)
        if abs(a - b) > KNOT_TOL:
            raise ArithmeticError("xi branches disagree at the knot")
        return b
    if beta < knot:
        return _xi_low(alpha, beta, eps, lib)
    return _xi_high(alpha, beta, eps, lib)


def nu_eps(alpha, eps, lib=math):
    """``3/2 + eps (2 alpha)^-1 log(eps/e)``; decreasing in eps on (0, 1)."""
    return 1.5 + _xlog_x_over_e(eps, lib) / (2 * alpha)


def mu_eps(alpha, beta, eps, lib=math):
    """First-moment exponent for cores of relative size ``eps``.

    Equal to ``mu`` for ``beta >= eps/alpha``; below the knot it is the
    corrected formula, which equals ``nu_eps + xi_eps``.
    """
    if not 0 <= eps <= 3 * alpha + 1e-15:
        raise DomainError("mu_eps needs 0 <= eps <= 3 alpha")
    lo, hi = beta_eps(alpha, eps, lib), 1 / alpha
    if not lo - 1e-12 <= beta <= hi + 1e-12:
        raise DomainError(f"beta={beta} outside [{lo}, {hi}]")
    m = mu(alpha, beta, lib)
    if beta >= eps / alpha:
        return m
    d = 2 * alpha * beta - eps
    return (m - beta * lib.log(alpha * beta) + _xlog_x_over_e(eps, lib) / (2 * alpha)
            + d / (2 * alpha) * lib.log(lib.e * (alpha * beta) ** 2 / d))


def eps_star(alpha, tol=TOL):
    """Root in ``(0, 3 alpha)`` of ``3/2 + eps (2 alpha)^-1 log(eps/e) = 0``.

    Equivalently ``eps (1 - log eps) = 3 alpha``; the left side increases to 1
    on ``(0, 1]``.
    """
    if not 0 < alpha < 1 / 3:
        raise DomainError("eps_star needs 0 < alpha < 1/3")
    return bisect(lambda e: nu_eps(alpha, e), 1e-300, min(3 * alpha, 1.0), tol)


# -- psi and y* -------------------------------------------------------------

PSI_EPS_MAX = 1 / (2 * math.e)


def _psi_curve(y, lib=math):
    return (lib.e / 2) ** (1 - 2 * y) * y ** 2


def psi_eps(y, eps, lib=math):
    """``max{3/(2e) + eps, (e/2)^(1-2y) y^2}`` for ``0 <= eps < 1/(2e)``."""
    if not 0 <= eps < PSI_EPS_MAX:
        raise DomainError("psi_eps needs 0 <= eps < 1/(2e)")
    if not 0 <= y <= 1:
        raise DomainError("y must lie in [0, 1]")
    return max(3 / (2 * lib.e) + eps, _psi_curve(y, lib))


def y_star(eps, tol=TOL):
    """Where the two branches of ``psi_eps`` meet."""
    if not 0 <= eps < PSI_EPS_MAX:
        raise DomainError("y_star needs 0 <= eps < 1/(2e)")
    level = 3 / (2 * math.e) + eps
    y = bisect(lambda t: _psi_curve(t) - level, 0.0, 1.0, tol)
    if abs(_psi_curve(y) - level) > KNOT_TOL:
        raise ArithmeticError("psi branches disagree at y*")
    return y


# -- constants of the core-counting induction -------------------------------

ZETA_CONST = 2 / math.e


def a_const(lib=math):
    z = 2 / lib.e
    return 6 / (z ** 5 * 120 * 5 ** 5)


def gammas(k, lib=math):
    """``(gamma_1(k), ..., gamma_5(k))`` of the core-counting induction."""
    e = lib.e
    z = 2 / e
    A = a_const(lib)
    g1 = (4 / (z ** 3 * e ** 3)) / k + (4 / (z ** 5 * e ** 5)) / k ** 3
    g2 = (A * z * 4 ** 2 * 5 ** 7 / e ** 4) / k + (A / z * 4 ** 2 * 5 ** 7 / e ** 6) / k ** 3
    g3 = (A ** 2 * z ** 3 * 5 ** 14 * 4 ** 3 / e ** 7) / k ** 3
    g4 = (A * z ** 2 * 4 ** 2 * 5 ** 7 / e ** 3) / k ** 2
    g5 = (A * z ** 3 * 6 * 5 ** 8 * 8 ** 2 / (2 * e ** 2)) / k ** 4
    return g1, g2, g3, g4, g5


CASE_WEIGHTS = (
    (1, 1, 1, 0, 0),
    (1, 2, 3, 1, 0),
    (1, 3, 6, 2, 0),
    (1, 4, 10, 3, 1),
)


def case_sums(k, lib=math):
    g = gammas(k, lib)
    return tuple(sum(w * x for w, x in zip(ws, g)) for ws in CASE_WEIGHTS)


def eta(e1, e2, lib=math):
    """``e^(1-e1+e3) (1-e1)^(-e2) e1^(2e1) e2^(2e2) e3^e3`` with ``e3 = 1-e1-e2``."""
    e3 = 1 - e1 - e2
    if min(e1, e2, e3) < 0:
        raise DomainError("eta needs e1, e2, 1-e1-e2 >= 0")
    shrink = e2 * lib.log(1 - e1) if e2 else 0
    log_eta = ((1 - e1 + e3) - shrink + 2 * _xlogx(e1, lib)
               + 2 * _xlogx(e2, lib) + _xlogx(e3, lib))
    return lib.exp(log_eta)


def zeta(e1, lib=math):
    """``eta(e1, min(e1, 1-e1)) / (e1 e^(1-e1))`` on ``[1/3, 1]``."""
    if not 1 / 3 - 1e-15 <= e1 <= 1:
        raise DomainError("zeta is used on [1/3, 1]")
    return eta(e1, min(e1, 1 - e1), lib) / (e1 * lib.exp(1 - e1))


def zeta_closed(e1, lib=math):
    """Closed forms of ``zeta`` on the two branches."""
    if e1 <= 0.5:
        a = 1 - 2 * e1
        return lib.exp(a + _xlogx(a, lib) + (4 * e1 - 1) * lib.log(e1)
                       - e1 * lib.log(1 - e1))
    return lib.exp(_xlogx(1 - e1, lib) + (2 * e1 - 1) * lib.log(e1))


def dlog_zeta(e1):
    """Derivative of ``log zeta`` (a sign oracle for monotonicity)."""
    if e1 < 0.5:
        return (math.log(e1 ** 4 / ((1 - e1) * (1 - 2 * e1) ** 2))
                + (e1 ** 2 + e1 - 1) / (e1 * (1 - e1)))
    return math.log(e1 ** 2 / (1 - e1)) + (e1 - 1) / e1


def zeta_stationary_points(tol=TOL):
    """``(x1, x2)``: the minima of ``zeta`` on ``[1/3, 1/2]`` and ``[1/2, 1)``."""
    x1 = bisect(dlog_zeta, 1 / 3, 0.5 - 1e-9, tol)
    x2 = bisect(dlog_zeta, 0.5 + 1e-9, 1 - 1e-9, tol)
    return x1, x2


def nu_beta(alpha, beta, lib=math):
    """``beta log(alpha beta e^3 / 16)``."""
    return beta * lib.log(alpha * beta * lib.e ** 3 / 16)


def mu_at_beta_eps(alpha, eps, lib=math):
    """``mu(alpha, beta_eps)``; the shortcut form is
    ``3/2 + (2 alpha)^-1 (2 d log d - d^2)`` with ``d = delta_eps``."""
    d = delta_eps(eps, lib)
    return 1.5 + (2 * _xlogx(d, lib) - d ** 2) / (2 * alpha)


@dataclass
class ThresholdParams:
    alpha: float
    n: int
    beta: float = 1.0
    eps: float = 0.0
    y: float = 1.0

    @property
    def p(self):
        return math.sqrt(self.alpha / (self.n * math.log(self.n)))

    @property
    def k_alpha(self):
        return math.log(self.n) / self.alpha

    @property
    def q_alpha(self):
        return math.log(self.n) / (2 * self.alpha)

    @property
    def delta_eps(self):
        return delta_eps(self.eps)

    @property
    def beta_eps(self):
        return beta_eps(self.alpha, self.eps)


# reference values with the tolerance each is checked at
SPOT_VALUES = {
    "case_sum_1": (0.23, 0.02),
    "case_sum_2": (0.43, 0.02),
    "case_sum_3": (0.63, 0.02),
    "case_sum_4": (0.90, 0.02),
    "y_hat": (0.819, 0.003),
    "x1": (0.439, 0.003),
    "x2": (0.692, 0.003),
    "nu_beta_2": (-0.356, 0.003),
    "nu_beta_9": (11.934, 0.003),
    "nu_curvature_bound": (0.637, 0.003),
    "log_level_margin": (-0.189, 0.003),
    "sqrt21": (0.791, 0.003),
}


@dataclass
class ConstantsReport:
    k: int
    values: dict
    checks: dict = field(default_factory=dict)
    extended_agree: bool = True

    @property
    def all_pass(self):
        return all(c["pass"] for c in self.checks.values()) and self.extended_agree

    def to_json(self, indent=None):
        d = asdict(self)
        d["all_pass"] = self.all_pass
        return json.dumps(d, indent=indent)


def _constant_values(k, lib=math):
    e = lib.e
    vals = {"zeta_const": 2 / e, "A": a_const(lib)}
    for j, g in enumerate(gammas(k, lib), 1):
        vals[f"gamma{j}"] = g
    for j, s in enumerate(case_sums(k, lib), 1):
        vals[f"case_sum_{j}"] = s
    vals["nu_beta_2"] = nu_beta(1 / lib.mpf(3) if lib is mpmath else 1 / 3, 2, lib)
    vals["nu_beta_9"] = nu_beta(1 / lib.mpf(3) if lib is mpmath else 1 / 3, 9, lib)
    # lower bound on the second y-derivative of nu(3/(2y), 3/(2e) + eps)
    vals["nu_curvature_bound"] = 1.5 * (3 + 2 * lib.log(3 / (4 * e)))
    vals["log_level_margin"] = 1 + 2 * lib.log(3 / (2 * e))
    vals["sqrt21"] = (lib.sqrt(21) - 3) / 2
    vals["zeta_1_3"] = zeta(1 / lib.mpf(3) if lib is mpmath else 1 / 3, lib)
    vals["zeta_1_2"] = zeta(0.5, lib)
    vals["zeta_1"] = zeta(1.0, lib)
    return vals


def proof_constants(k=8):
    """Every constant of the counting induction and the core-size argument,
    with pass/fail against the reference values and an extended-precision
    recomputation of the closed forms."""
    if k < 8:
        raise DomainError("the induction constants are stated for k >= 8")
    vals = _constant_values(k)
    vals["y_hat"] = y_star(0.0)
    vals["x1"], vals["x2"] = zeta_stationary_points()
    checks = {}
    for name, (ref, tol) in SPOT_VALUES.items():
        got = vals[name]
        checks[name] = {"value": got, "reference": ref, "tol": tol,
                        "pass": abs(got - ref) <= tol}
    exact = {
        "zeta_1_3": (math.e / 6) ** (1 / 3),
        "zeta_1_2": 1 / math.sqrt(2),
        "zeta_1": 1.0,
    }
    for name, ref in exact.items():
        checks[name] = {"value": vals[name], "reference": ref, "tol": 1e-10,
                        "pass": abs(vals[name] - ref) <= 1e-10}
    with mpmath.workdps(50):
        hi = _constant_values(k, mpmath)
        agree = all(abs(float(hi[name]) - vals[name]) <= 1e-12 * max(1.0, abs(vals[name]))
                    for name in hi)
    return ConstantsReport(k, vals, checks, agree)
