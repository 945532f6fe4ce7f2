"""Built-in catalog of exact (f, xi, theta) triples.

Each entry pairs an arbitrary element f of the generalized Burgers equation
u_t + u*u_x + f(t,x)*u_xx = 0 with the coefficient xi of its reduction
operator Q = d_t + xi*d_x and the potential theta solving the potential
fast diffusion equation theta_t = theta_xx / theta_x.  The three fields are
tied together pointwise by

    f = -1/theta_x,        xi = -theta_t/theta_x,

which every entry satisfies to roundoff on its valid domain.

Domains of validity are not intrinsic to the closed forms; the predicates
here exclude zero sets of denominators (and of theta_x) with a fixed margin
and are a deliberate engineering choice, documented per entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from scipy.optimize import brentq

from .jets import (Antiderivative, Point, Region, ScalarField,
                   SingularPointError, arctan, cos, cosh, coth, exp, log_abs,
                   sin, sinh, tan, tanh)

#: margin used by all validity predicates to keep denominators away from zero
EPS_DEN = 1e-8

#: reference abscissa anchoring the quadrature constant of case 5
CASE5_W0 = 2.0

#: default parameter for case 5 when none is supplied
CASE5_DEFAULT_LAMBDA = 1.0

N_CASES = 17


@dataclass(frozen=True)
class CatalogEntry:
    """One catalog row: closed forms plus validity metadata."""

    id: int
    f: ScalarField
    xi: ScalarField
    theta: ScalarField
    lam: Optional[float]
    valid: Callable[[Point], bool]
    singular_description: str
    sample_region: Region
    f_expr: str
    xi_expr: str
    theta_expr: str

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "f_expr": self.f_expr,
            "xi_expr": self.xi_expr,
            "theta_expr": self.theta_expr,
            "singular_description": self.singular_description,
        }


def _always_valid(p: Point) -> bool:
    return True


def _case5_denominator_roots(lam: float) -> tuple[float, ...]:
    """Real roots of d(w) = w - 1 + lam*exp(-w), the zero set of f/(-t).

    For lam > 0 the minimum of d is log(lam) at w = log(lam), which gives
    zero, one (double), or two roots; for lam <= 0 d is strictly increasing
    with a single root; for lam = 0 the root is w = 1.
    """
    if lam == 0.0:
        return (1.0,)

    def d(w: float) -> float:
        return w - 1.0 + lam * math.exp(-w)

    if lam > 0.0:
        m = math.log(lam)
        if m > 0.0:
            return ()
        if m == 0.0:
            return (0.0,)
        # two simple roots bracketing the minimum
        lo = m - 1.0
        while d(lo) <= 0.0:
            lo -= 1.0
        hi = m + 1.0
        while d(hi) <= 0.0:
            hi += 1.0
        return (brentq(d, lo, m), brentq(d, m, hi))

    lo, hi = -1.0, 1.0
    while d(lo) >= 0.0:
        lo *= 2.0
    while d(hi) <= 0.0:
        hi *= 2.0
    return (brentq(d, lo, hi),)


def _build_case5(lam: float) -> CatalogEntry:
    roots = _case5_denominator_roots(lam)

    def den(w):
        return w - 1.0 + lam * exp(-w)

    d_at_w0 = den(CASE5_W0)
    if abs(d_at_w0) <= EPS_DEN:
        raise ValueError(
            f"case 5 with lambda={lam} is singular at the quadrature anchor w={CASE5_W0}")

    theta_int = Antiderivative(lambda w: 1.0 / den(w), CASE5_W0, abs_tol=1e-12)

    def valid(p: Point) -> bool:
        t, x = p
        if abs(t) <= EPS_DEN:
            return False
        w = x / t
        if abs(den(w)) <= EPS_DEN:
            return False
        lo, hi = min(w, CASE5_W0), max(w, CASE5_W0)
        return not any(lo < r < hi for r in roots)

    f = ScalarField(lambda T, X: T - X - lam * T * exp(-X / T), name="f[5]")
    xi = ScalarField(lambda T, X: 1.0 - lam * exp(-X / T), name="xi[5]")
    theta = ScalarField(lambda T, X: log_abs(T) + theta_int(X / T), name="theta[5]")

    if roots:
        sing = (f"t = 0 and the rays x/t = w* with w* in "
                f"{tuple(round(r, 12) for r in roots)} (zeros of x/t - 1 + lam*exp(-x/t))")
    else:
        sing = "t = 0"
    return CatalogEntry(
        id=5, f=f, xi=xi, theta=theta, lam=lam, valid=valid,
        singular_description=sing,
        sample_region=Region(0.5, 1.0, 1.5, 3.0),
        f_expr=f"t - x - {lam:g}*t*exp(-x/t)",
        xi_expr=f"1 - {lam:g}*exp(-x/t)",
        theta_expr=(f"ln|t| + integral from w0={CASE5_W0:g} to x/t of "
                    f"dw/(w - 1 + {lam:g}*exp(-w))"),
    )


def _entry(case_id, f, xi, theta, valid, singular, region, f_expr, xi_expr, theta_expr):
    return CatalogEntry(
        id=case_id, f=f, xi=xi, theta=theta, lam=None, valid=valid,
        singular_description=singular, sample_region=region,
        f_expr=f_expr, xi_expr=xi_expr, theta_expr=theta_expr,
    )


def _build_case(case_id: int) -> CatalogEntry:
    E = EPS_DEN
    if case_id == 1:
        return _entry(
            1,
            ScalarField(lambda T, X: 1.0 + exp(-T - X), name="f[1]"),
            ScalarField(lambda T, X: exp(-T - X), name="xi[1]"),
            ScalarField(lambda T, X: -log_abs(exp(X) + exp(-T)), name="theta[1]"),
            _always_valid, "none (smooth on all of R^2)",
            Region(0.0, 1.0, -1.0, 1.0),
            "1 + exp(-t-x)", "exp(-t-x)", "-ln(exp(x) + exp(-t))")
    if case_id == 2:
        return _entry(
            2,
            ScalarField(lambda T, X: -1.0, name="f[2]"),
            ScalarField(lambda T, X: 0.0, name="xi[2]"),
            ScalarField(lambda T, X: X, name="theta[2]"),
            _always_valid, "none (constant-coefficient equation)",
            Region(0.0, 1.0, -2.0, 2.0),
            "-1", "0", "x")
    if case_id == 3:
        return _entry(
            3,
            ScalarField(lambda T, X: 1.0 - exp(-T - X), name="f[3]"),
            ScalarField(lambda T, X: -exp(-T - X), name="xi[3]"),
            ScalarField(lambda T, X: -log_abs(exp(X) - exp(-T)), name="theta[3]"),
            lambda p: abs(math.exp(p.x) - math.exp(-p.t)) > E,
            "the curve x = -t (zero of exp(x) - exp(-t))",
            Region(0.2, 1.2, 0.3, 1.3),
            "1 - exp(-t-x)", "-exp(-t-x)", "-ln|exp(x) - exp(-t)|")
    if case_id == 4:
        return _entry(
            4,
            ScalarField(lambda T, X: -exp(-X), name="f[4]"),
            ScalarField(lambda T, X: -exp(-X), name="xi[4]"),
            ScalarField(lambda T, X: exp(X) + T, name="theta[4]"),
            _always_valid, "none (smooth on all of R^2)",
            Region(0.0, 1.0, -1.0, 1.0),
            "-exp(-x)", "-exp(-x)", "exp(x) + t")
    if case_id == 6:
        return _entry(
            6,
            ScalarField(lambda T, X: (T * T - X * X) / (2.0 * T), name="f[6]"),
            ScalarField(lambda T, X: X / T, name="xi[6]"),
            ScalarField(lambda T, X: log_abs((X - T) / (X + T)), name="theta[6]"),
            lambda p: abs(p.t) > E and abs(p.x - p.t) > E and abs(p.x + p.t) > E,
            "the lines t = 0, x = t, x = -t",
            Region(0.5, 1.0, 1.5, 3.0),
            "(t^2 - x^2)/(2t)", "x/t", "ln|(x-t)/(x+t)|")
    if case_id == 7:
        return _entry(
            7,
            ScalarField(lambda T, X: -X * X / (2.0 * T), name="f[7]"),
            ScalarField(lambda T, X: X / T, name="xi[7]"),
            ScalarField(lambda T, X: -2.0 * T / X, name="theta[7]"),
            lambda p: abs(p.t) > E and abs(p.x) > E,
            "the lines t = 0, x = 0",
            Region(1.0, 2.0, 1.0, 3.0),
            "-x^2/(2t)", "x/t", "-2t/x")
    if case_id == 8:
        return _entry(
            8,
            ScalarField(lambda T, X: -(T * T + X * X) / (2.0 * T), name="f[8]"),
            ScalarField(lambda T, X: X / T, name="xi[8]"),
            ScalarField(lambda T, X: 2.0 * arctan(X / T), name="theta[8]"),
            lambda p: abs(p.t) > E,
            "the line t = 0",
            Region(0.5, 1.5, -1.0, 1.0),
            "-(t^2 + x^2)/(2t)", "x/t", "2*arctan(x/t)")
    if case_id == 9:
        return _entry(
            9,
            ScalarField(lambda T, X: -cos(X) * cos(X) / (2.0 * T), name="f[9]"),
            ScalarField(lambda T, X: -sin(2.0 * X) / (2.0 * T), name="xi[9]"),
            ScalarField(lambda T, X: 2.0 * T * tan(X), name="theta[9]"),
            lambda p: abs(p.t) > E and abs(math.cos(p.x)) > E,
            "the line t = 0 and the lines x = pi/2 + k*pi",
            Region(0.5, 1.5, -0.6, 0.6),
            "-cos(x)^2/(2t)", "-sin(2x)/(2t)", "2t*tan(x)")
    if case_id == 10:
        return _entry(
            10,
            ScalarField(lambda T, X: cosh(X) * cosh(X) / (2.0 * T), name="f[10]"),
            ScalarField(lambda T, X: -sinh(2.0 * X) / (2.0 * T), name="xi[10]"),
            ScalarField(lambda T, X: -2.0 * T * tanh(X), name="theta[10]"),
            lambda p: abs(p.t) > E,
            "the line t = 0",
            Region(0.5, 1.5, -1.0, 1.0),
            "cosh(x)^2/(2t)", "-sinh(2x)/(2t)", "-2t*tanh(x)")
    if case_id == 11:
        return _entry(
            11,
            ScalarField(lambda T, X: -sinh(X) * sinh(X) / (2.0 * T), name="f[11]"),
            ScalarField(lambda T, X: sinh(2.0 * X) / (2.0 * T), name="xi[11]"),
            ScalarField(lambda T, X: -2.0 * T * coth(X), name="theta[11]"),
            lambda p: abs(p.t) > E and abs(math.sinh(p.x)) > E,
            "the lines t = 0, x = 0",
            Region(0.5, 1.5, 0.5, 1.5),
            "-sinh(x)^2/(2t)", "sinh(2x)/(2t)", "-2t*coth(x)")
    if case_id == 12:
        return _entry(
            12,
            ScalarField(lambda T, X: (cos(2.0 * X) - cos(2.0 * T)) / (2.0 * sin(2.0 * T)),
                        name="f[12]"),
            ScalarField(lambda T, X: sin(2.0 * X) / sin(2.0 * T), name="xi[12]"),
            ScalarField(lambda T, X: log_abs(sin(X - T) / sin(X + T)), name="theta[12]"),
            lambda p: (abs(math.sin(2.0 * p.t)) > E
                       and abs(math.sin(p.x - p.t)) > E
                       and abs(math.sin(p.x + p.t)) > E),
            "the lines t = k*pi/2 and x = t + k*pi, x = -t + k*pi",
            Region(0.3, 0.7, 1.0, 1.4),
            "(cos(2x) - cos(2t))/(2 sin(2t))", "sin(2x)/sin(2t)",
            "ln|sin(x-t)/sin(x+t)|")
    if case_id == 13:
        return _entry(
            13,
            ScalarField(lambda T, X: (cosh(2.0 * T) - cosh(2.0 * X)) / (2.0 * sinh(2.0 * T)),
                        name="f[13]"),
            ScalarField(lambda T, X: sinh(2.0 * X) / sinh(2.0 * T), name="xi[13]"),
            ScalarField(lambda T, X: log_abs(sinh(X - T) / sinh(X + T)), name="theta[13]"),
            lambda p: (abs(math.sinh(2.0 * p.t)) > E
                       and abs(math.sinh(p.x - p.t)) > E
                       and abs(math.sinh(p.x + p.t)) > E),
            "the lines t = 0, x = t, x = -t",
            Region(0.3, 0.8, 1.2, 2.0),
            "(cosh(2t) - cosh(2x))/(2 sinh(2t))", "sinh(2x)/sinh(2t)",
            "ln|sinh(x-t)/sinh(x+t)|")
    if case_id == 14:
        return _entry(
            14,
            ScalarField(lambda T, X: (sinh(2.0 * T) - sinh(2.0 * X)) / (2.0 * cosh(2.0 * T)),
                        name="f[14]"),
            ScalarField(lambda T, X: cosh(2.0 * X) / cosh(2.0 * T), name="xi[14]"),
            ScalarField(lambda T, X: log_abs(sinh(X - T) / cosh(X + T)), name="theta[14]"),
            lambda p: abs(math.sinh(p.x - p.t)) > E,
            "the line x = t",
            Region(0.3, 0.8, 1.2, 2.0),
            "(sinh(2t) - sinh(2x))/(2 cosh(2t))", "cosh(2x)/cosh(2t)",
            "ln|sinh(x-t)/cosh(x+t)|")
    if case_id == 15:
        return _entry(
            15,
            ScalarField(lambda T, X: (cosh(2.0 * T) + cosh(2.0 * X)) / (2.0 * sinh(2.0 * T)),
                        name="f[15]"),
            ScalarField(lambda T, X: -sinh(2.0 * X) / sinh(2.0 * T), name="xi[15]"),
            ScalarField(lambda T, X: log_abs(cosh(X - T) / cosh(X + T)), name="theta[15]"),
            lambda p: abs(math.sinh(2.0 * p.t)) > E,
            "the line t = 0",
            Region(0.3, 0.8, -1.0, 1.0),
            "(cosh(2t) + cosh(2x))/(2 sinh(2t))", "-sinh(2x)/sinh(2t)",
            "ln|cosh(x-t)/cosh(x+t)|")
    if case_id == 16:
        return _entry(
            16,
            ScalarField(lambda T, X: (cos(2.0 * T) - cosh(2.0 * X)) / (2.0 * sin(2.0 * T)),
                        name="f[16]"),
            ScalarField(lambda T, X: sinh(2.0 * X) / sin(2.0 * T), name="xi[16]"),
            ScalarField(lambda T, X: 2.0 * arctan(cos(T) / sin(T) * tanh(X)), name="theta[16]"),
            lambda p: abs(math.sin(2.0 * p.t)) > E,
            "the lines t = k*pi/2",
            Region(0.3, 0.7, 0.3, 1.0),
            "(cos(2t) - cosh(2x))/(2 sin(2t))", "sinh(2x)/sin(2t)",
            "2*arctan(cot(t)*tanh(x))")
    if case_id == 17:
        return _entry(
            17,
            ScalarField(lambda T, X: (cos(2.0 * X) - cosh(2.0 * T)) / (2.0 * sinh(2.0 * T)),
                        name="f[17]"),
            ScalarField(lambda T, X: sin(2.0 * X) / sinh(2.0 * T), name="xi[17]"),
            ScalarField(lambda T, X: 2.0 * arctan(cosh(T) / sinh(T) * tan(X)), name="theta[17]"),
            lambda p: abs(math.sinh(2.0 * p.t)) > E and abs(math.cos(p.x)) > E,
            "the line t = 0 and the lines x = pi/2 + k*pi",
            Region(0.3, 0.8, -0.6, 0.6),
            "(cos(2x) - cosh(2t))/(2 sinh(2t))", "sin(2x)/sinh(2t)",
            "2*arctan(coth(t)*tan(x))")
    raise AssertionError(case_id)


def get_case(case_id: int, lam: Optional[float] = None) -> CatalogEntry:
    """Catalog entry by id in 1..17; ``lam`` is accepted only for case 5."""
    if not isinstance(case_id, int) or not 1 <= case_id <= N_CASES:
        raise ValueError(f"case id must be an integer in 1..{N_CASES}, got {case_id!r}")
    if case_id == 5:
        return _build_case5(CASE5_DEFAULT_LAMBDA if lam is None else float(lam))
    if lam is not None:
        raise ValueError(f"parameter lambda applies to case 5 only, not case {case_id}")
    return _build_case(case_id)


def iter_cases(lam: Optional[float] = None) -> list[CatalogEntry]:
    """All 17 entries, with ``lam`` forwarded to case 5."""
    return [get_case(i, lam if i == 5 else None) for i in range(1, N_CASES + 1)]


def eval_case(case_id: int, p: Point, lam: Optional[float] = None) -> tuple[float, float, float]:
    """Pointwise (f, xi, theta) of a case; singular points raise."""
    entry = get_case(case_id, lam)
    if not entry.valid(p):
        raise SingularPointError(
            f"case {case_id} is singular at {tuple(p)}; singular set: "
            f"{entry.singular_description}")
    return (entry.f.value(*p), entry.xi.value(*p), entry.theta.value(*p))


def case5_theta_reduction_check(p: Point) -> float:
    """|theta_5(p) - ln|x - t|| for the reducible parameter value lam = 0.

    At lam = 0 the integrand of case 5 is 1/(w-1), whose antiderivative
    anchored at w0 = 2 is ln|w-1|, so theta = ln|t| + ln|x/t - 1| =
    ln|x - t| with no leftover constant.  Returns the absolute mismatch,
    which should vanish to quadrature accuracy.
    """
    entry = get_case(5, 0.0)
    t, x = p
    if not (t > 0.0 and x / t > 1.0):
        raise SingularPointError(
            f"reduction check requires t > 0 and x/t > 1, got {tuple(p)}")
    if abs(x - t) <= EPS_DEN:
        raise SingularPointError(f"x = t is a logarithmic singularity at lam = 0, got {tuple(p)}")
    return abs(entry.theta.value(t, x) - math.log(abs(x - t)))


def catalog_json(lam: Optional[float] = None) -> list[dict]:
    """Plain-data form of the whole catalog (for JSON export)."""
    return [e.to_dict() for e in iter_cases(lam)]
