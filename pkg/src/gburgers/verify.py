"""Residual operators and grid sweep reporting.

Every differential relation used in this package is checked here by direct
substitution of exact jets:

* ``gbe_residual``        u_t + u*u_x + f*u_xx
* ``pfde_residual``       theta_t - theta_xx/theta_x
* ``gfde_residual``       theta_t - theta_xx/theta_x - h(theta)*theta_x
* ``potential_residual``  theta_t - xi/f  and  theta_x + 1/f
* ``reduced_system_residual``  f_t + xi*f_x - xi_x*f  and  xi_t + xi*xi_x + f*xi_xx
* ``determining_residuals``    the five-equation system on the coefficients
  of a reduction operator polynomial in u

Raw residuals are signed; each operator also has a ``*_scaled`` companion
reporting |r| / (1 + sum of |term|), which makes tolerances comparable
across fields spanning orders of magnitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, Sequence

import numpy as np

from .jets import (EvaluationError, Jet3, Point, Region, ScalarField, eval_jet)

#: f must stay this far from zero before 1/f-terms are formed
EPS_COEFF = 1e-13

#: default u-samples for the fifth determining equation; the residual is a
#: polynomial of degree <= 4 in u, so vanishing at five distinct samples is
#: equivalent to identical vanishing.
U_SAMPLES = (-2.0, -0.5, 0.0, 0.5, 2.0)

JetFn = Callable[[ScalarField, Point], Jet3]


class DegenerateGradientError(EvaluationError):
    """theta_x vanished where 1/theta_x is required."""


class VanishingCoefficientError(EvaluationError):
    """The arbitrary element f vanished where 1/f is required."""


class EmptySweepError(Exception):
    """Every point of a requested sweep was invalid."""


# -- pointwise residuals -----------------------------------------------------

def _gbe_terms(u, f, p, jet_fn):
    ju = jet_fn(u, p)
    jf = jet_fn(f, p)
    return (ju.d_t, ju.v * ju.d_x, jf.v * ju.d_xx)


def gbe_residual(u: ScalarField, f: ScalarField, p: Point, jet_fn: JetFn = eval_jet) -> float:
    """Signed residual of u_t + u*u_x + f*u_xx at p."""
    return sum(_gbe_terms(u, f, p, jet_fn))


def gbe_residual_scaled(u: ScalarField, f: ScalarField, p: Point,
                        jet_fn: JetFn = eval_jet) -> float:
    terms = _gbe_terms(u, f, p, jet_fn)
    return abs(sum(terms)) / (1.0 + sum(abs(s) for s in terms))


def _pfde_terms(theta, p, jet_fn):
    j = jet_fn(theta, p)
    if abs(j.d_x) <= EPS_COEFF:
        raise DegenerateGradientError(f"theta_x = {j.d_x} at {tuple(p)}")
    return (j.d_t, -j.d_xx / j.d_x), j


def pfde_residual(theta: ScalarField, p: Point, jet_fn: JetFn = eval_jet) -> float:
    """Signed residual of theta_t - theta_xx/theta_x at p."""
    terms, _ = _pfde_terms(theta, p, jet_fn)
    return sum(terms)


def pfde_residual_scaled(theta: ScalarField, p: Point, jet_fn: JetFn = eval_jet) -> float:
    terms, _ = _pfde_terms(theta, p, jet_fn)
    return abs(sum(terms)) / (1.0 + sum(abs(s) for s in terms))


def gfde_residual(theta: ScalarField, h: Callable[[float], float], p: Point,
                  jet_fn: JetFn = eval_jet) -> float:
    """Signed residual of theta_t - theta_xx/theta_x - h(theta)*theta_x.

    ``h`` is a univariate function of the field value; only its value
    enters, so any float->float callable works.  Reduces to
    :func:`pfde_residual` when h is identically zero.
    """
    terms, j = _pfde_terms(theta, p, jet_fn)
    return sum(terms) - h(j.v) * j.d_x


def gfde_residual_scaled(theta: ScalarField, h: Callable[[float], float], p: Point,
                         jet_fn: JetFn = eval_jet) -> float:
    terms, j = _pfde_terms(theta, p, jet_fn)
    hx = h(j.v) * j.d_x
    return abs(sum(terms) - hx) / (1.0 + sum(abs(s) for s in terms) + abs(hx))


def potential_residual(theta: ScalarField, f: ScalarField, xi: ScalarField, p: Point,
                       jet_fn: JetFn = eval_jet) -> tuple[float, float]:
    """Residuals of the potential system theta_t = xi/f, theta_x = -1/f."""
    jt = jet_fn(theta, p)
    jf = jet_fn(f, p)
    jx = jet_fn(xi, p)
    if abs(jf.v) <= EPS_COEFF:
        raise VanishingCoefficientError(f"f = {jf.v} at {tuple(p)}")
    return (jt.d_t - jx.v / jf.v, jt.d_x + 1.0 / jf.v)


def potential_residual_scaled(theta: ScalarField, f: ScalarField, xi: ScalarField,
                              p: Point, jet_fn: JetFn = eval_jet) -> float:
    jt = jet_fn(theta, p)
    jf = jet_fn(f, p)
    jx = jet_fn(xi, p)
    if abs(jf.v) <= EPS_COEFF:
        raise VanishingCoefficientError(f"f = {jf.v} at {tuple(p)}")
    r1 = jt.d_t - jx.v / jf.v
    r2 = jt.d_x + 1.0 / jf.v
    s1 = 1.0 + abs(jt.d_t) + abs(jx.v / jf.v)
    s2 = 1.0 + abs(jt.d_x) + abs(1.0 / jf.v)
    return max(abs(r1) / s1, abs(r2) / s2)


def reduced_system_residual(f: ScalarField, xi: ScalarField, p: Point,
                            jet_fn: JetFn = eval_jet) -> tuple[float, float]:
    """Residuals of the well-determined pair on (f, xi).

    r4 = 0 simultaneously certifies xi as a solution of the generalized
    Burgers equation with arbitrary element f.
    """
    jf = jet_fn(f, p)
    jx = jet_fn(xi, p)
    r3 = jf.d_t + jx.v * jf.d_x - jx.d_x * jf.v
    r4 = jx.d_t + jx.v * jx.d_x + jf.v * jx.d_xx
    return (r3, r4)


def reduced_system_residual_scaled(f: ScalarField, xi: ScalarField, p: Point,
                                   jet_fn: JetFn = eval_jet) -> float:
    jf = jet_fn(f, p)
    jx = jet_fn(xi, p)
    t3 = (jf.d_t, jx.v * jf.d_x, -jx.d_x * jf.v)
    t4 = (jx.d_t, jx.v * jx.d_x, jf.v * jx.d_xx)
    s3 = 1.0 + sum(abs(s) for s in t3)
    s4 = 1.0 + sum(abs(s) for s in t4)
    return max(abs(sum(t3)) / s3, abs(sum(t4)) / s4)


# -- reduction-operator coefficients ----------------------------------------

@dataclass(frozen=True)
class ReductionOperatorCoefficients:
    """Coefficient fields of Q = d_t + xi*d_x + eta*d_u with

        xi  = xi1(t,x)*u + xi0(t,x),
        eta = xi1*(xi1 - 1)/(3f)*u^3 + (xi1_x + xi1*xi0/f)*u^2
              + eta1(t,x)*u + eta0(t,x).
    """

    xi1: ScalarField
    xi0: ScalarField
    eta1: ScalarField
    eta0: ScalarField

    @staticmethod
    def common_operator() -> "ReductionOperatorCoefficients":
        """xi1 = 1, all others zero: admitted by every arbitrary element f."""
        one = ScalarField(lambda t, x: 1.0, name="1")
        zero = ScalarField(lambda t, x: 0.0, name="0")
        return ReductionOperatorCoefficients(one, zero, zero, zero)

    @staticmethod
    def from_xi(xi: ScalarField) -> "ReductionOperatorCoefficients":
        """xi independent of u, eta = 0 (the potential-system branch)."""
        zero = ScalarField(lambda t, x: 0.0, name="0")
        return ReductionOperatorCoefficients(zero, xi, zero, zero)


@dataclass(frozen=True)
class DeterminingResiduals:
    """The five determining residuals with their scales."""

    residuals: tuple[float, float, float, float, float]
    scales: tuple[float, float, float, float, float]

    @property
    def scaled(self) -> tuple[float, float, float, float, float]:
        return tuple(abs(r) / s for r, s in zip(self.residuals, self.scales))

    @property
    def max_scaled(self) -> float:
        return max(self.scaled)


def determining_residuals(f: ScalarField, coeffs: ReductionOperatorCoefficients,
                          p: Point, u_samples: Sequence[float] = U_SAMPLES,
                          jet_fn: JetFn = eval_jet) -> DeterminingResiduals:
    """Evaluate all five determining equations at p.

    The first four are split equations on the coefficient fields; the fifth
    couples eta back in and is polynomial of degree <= 4 in u, so it is
    evaluated at ``u_samples`` and reported as the max over samples.
    """
    F = jet_fn(f, p)
    if abs(F.v) <= EPS_COEFF:
        raise VanishingCoefficientError(f"f = {F.v} at {tuple(p)}")
    J1 = jet_fn(coeffs.xi1, p)
    J0 = jet_fn(coeffs.xi0, p)
    H1 = jet_fn(coeffs.eta1, p)
    H0 = jet_fn(coeffs.eta0, p)

    fv, ft, fx = F.v, F.d_t, F.d_x
    x1, x1t, x1x, x1xx = J1.v, J1.d_t, J1.d_x, J1.d_xx
    x0, x0t, x0x, x0xx = J0.v, J0.d_t, J0.d_x, J0.d_xx
    e1, e1x = H1.v, H1.d_x
    e0 = H0.v

    ta = (x1 * (x1 - 1.0) * (2.0 * x1 + 1.0),)
    tb = (-fx * x1 * x1, fx * x1, x1 * x0 * (2.0 * x1 + 1.0), 4.0 * fv * x1 * x1x)
    tc = ((ft / fv) * (x1 - 1.0), -2.0 * (fx / fv) * x1 * x0, -(fx / fv) * x0,
          3.0 * fv * x1xx, 2.0 * (x1x * x0 + x1 * x0x), (2.0 * x1 + 1.0) * e1,
          -x1t, x0x)
    td = (x0t, 2.0 * x0 * x0x, fv * x0xx, -e0 * (2.0 * x1 + 1.0),
          -(ft / fv) * x0, -(fx / fv) * x0 * x0, -2.0 * fv * e1x)

    # Fifth equation: reconstruct eta as a jet for each sample of u.  The
    # u^2 coefficient involves xi1_x, so eta's second derivatives consume
    # third derivatives of xi1; the shifted jet is exact through order 2,
    # which is all the equation reads.
    P3 = (J1 * (J1 - 1.0)) / (F * 3.0)
    P2 = J1.deriv_x() + (J1 * J0) / F
    re_best = -1.0
    se_best = 1.0
    for u in u_samples:
        ETA = P3 * (u ** 3) + P2 * (u * u) + H1 * u + H0
        xi_v = x1 * u + x0
        xi_x = x1x * u + x0x
        te = (ETA.d_t, u * ETA.d_x, fv * ETA.d_xx, 2.0 * xi_x * ETA.v,
              -(ft / fv) * ETA.v, -(fx / fv) * xi_v * ETA.v)
        re = abs(sum(te))
        if re > re_best:
            re_best = re
            se_best = 1.0 + sum(abs(s) for s in te)

    residuals = (sum(ta), sum(tb), sum(tc), sum(td), re_best)
    scales = tuple(1.0 + sum(abs(s) for s in ts) for ts in (ta, tb, tc, td)) + (se_best,)
    return DeterminingResiduals(residuals, scales)


@dataclass(frozen=True)
class LinearReductionOperator:
    """Reduction operator with coefficients linear in x.

    Q = d_t + ((a*t + b1)*x + d1*t + d0)/D * d_x
            + (-(a*t + b2)*u + a*x + d1)/D * d_u,   D = a*t^2 + (b1+b2)*t + c.

    Operators of this family are equivalent to Lie symmetry operators; no
    compatible f is prescribed here, so callers verify a candidate f via
    :func:`determining_residuals`.
    """

    a: float = 0.0
    b1: float = 0.0
    b2: float = 0.0
    c: float = 0.0
    d0: float = 0.0
    d1: float = 0.0

    def __post_init__(self) -> None:
        if self.a == 0.0 and self.b1 + self.b2 == 0.0 and self.c == 0.0:
            raise ValueError("denominator a*t^2 + (b1+b2)*t + c is identically zero")


def linear_operator_fields(q: LinearReductionOperator) -> ReductionOperatorCoefficients:
    a, b1, b2, c, d0, d1 = q.a, q.b1, q.b2, q.c, q.d0, q.d1

    def den(T):
        return a * T * T + (b1 + b2) * T + c

    zero = ScalarField(lambda t, x: 0.0, name="0")
    xi0 = ScalarField(lambda T, X: ((a * T + b1) * X + d1 * T + d0) / den(T), name="lin-xi0")
    eta1 = ScalarField(lambda T, X: -(a * T + b2) / den(T), name="lin-eta1")
    eta0 = ScalarField(lambda T, X: (a * X + d1) / den(T), name="lin-eta0")
    return ReductionOperatorCoefficients(xi1=zero, xi0=xi0, eta1=eta1, eta0=eta0)


# -- grid sweeps ---------------------------------------------------------------

@dataclass(frozen=True)
class SweepReport:
    max_abs_residual: float
    argmax: Point
    points_checked: int
    points_skipped: int
    scale_used: str = "relative"

    def to_dict(self) -> dict:
        return {
            "max_abs_residual": self.max_abs_residual,
            "argmax": {"t": self.argmax.t, "x": self.argmax.x},
            "points_checked": self.points_checked,
            "points_skipped": self.points_skipped,
            "scale_used": self.scale_used,
        }


def _sweep_rows(residual_fn, ts, xs, valid):
    best = -1.0
    argmax = Point(math.nan, math.nan)
    checked = 0
    skipped = 0
    for t in ts:
        for x in xs:
            p = Point(float(t), float(x))
            if valid is not None and not valid(p):
                skipped += 1
                continue
            try:
                r = abs(residual_fn(p))
            except EvaluationError:
                skipped += 1
                continue
            if not math.isfinite(r):
                skipped += 1
                continue
            checked += 1
            if r > best:
                best = r
                argmax = p
    return best, argmax, checked, skipped


def sweep(residual_fn: Callable[[Point], float], region: Region,
          n_t: int, n_x: int,
          valid: Optional[Callable[[Point], bool]] = None,
          jobs: int = 1,
          scale_used: str = "relative") -> SweepReport:
    """Max |residual_fn| over the inclusive uniform n_t x n_x grid.

    Invalid points (``valid`` false, or an :class:`EvaluationError`) are
    skipped and counted.  The reduction is deterministic regardless of the
    worker count: max by value with ties broken by lexicographically
    smallest (t, x).
    """
    if n_t < 2 or n_x < 2:
        raise ValueError("grid must be at least 2x2")
    ts, xs = region.grid(n_t, n_x)

    if jobs <= 1:
        chunks = [_sweep_rows(residual_fn, ts, xs, valid)]
    else:
        row_blocks = np.array_split(ts, min(jobs, len(ts)))
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(
                lambda block: _sweep_rows(residual_fn, block, xs, valid), row_blocks))

    best = -1.0
    argmax = Point(math.nan, math.nan)
    checked = 0
    skipped = 0
    for b, am, ch, sk in chunks:
        checked += ch
        skipped += sk
        if b > best or (b == best and ch > 0 and (am.t, am.x) < (argmax.t, argmax.x)):
            best = b
            argmax = am
    if checked == 0:
        raise EmptySweepError(
            f"no valid points in {region} on a {n_t}x{n_x} grid ({skipped} skipped)")
    return SweepReport(best, argmax, checked, skipped, scale_used)
