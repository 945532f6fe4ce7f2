"""Third-order jets of scalar fields of (t, x).

A :class:`Jet3` carries the value of a field at a point together with all
partial derivatives up to total order three.  Jets are computed by forward
propagation of truncated bivariate Taylor coefficients, never by finite
differences; :func:`fd_jet` provides an independent central-difference
oracle used only for cross-checking.

Field expressions are written against the elementary functions of this
module (``exp``, ``log_abs``, ``sin``, ...), which accept plain floats,
numpy arrays, and jets, so the same closed form serves pointwise
evaluation, vectorized sampling, and exact differentiation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.integrate import quad


class EvaluationError(Exception):
    """A field could not be evaluated at the requested point.

    Raised instead of returning NaN/inf so that sweeps can count and skip
    invalid points deterministically.
    """


class SingularPointError(EvaluationError):
    """Evaluation at a point of a known singular set."""


class Point(NamedTuple):
    t: float
    x: float


@dataclass(frozen=True)
class Region:
    """Closed rectangle [t0, t1] x [x0, x1]."""

    t0: float
    t1: float
    x0: float
    x1: float

    def __post_init__(self) -> None:
        if not (self.t0 <= self.t1 and self.x0 <= self.x1):
            raise ValueError(f"degenerate region {self}")

    @classmethod
    def parse(cls, text: str) -> "Region":
        parts = [float(s) for s in text.split(",")]
        if len(parts) != 4:
            raise ValueError("region must be 't0,t1,x0,x1'")
        return cls(*parts)

    def grid(self, n_t: int, n_x: int) -> tuple[np.ndarray, np.ndarray]:
        return (np.linspace(self.t0, self.t1, n_t),
                np.linspace(self.x0, self.x1, n_x))

    def shrink(self, margin: float) -> "Region":
        return Region(self.t0 + margin, self.t1 - margin,
                      self.x0 + margin, self.x1 - margin)

    def sample(self, rng: np.random.Generator) -> Point:
        return Point(rng.uniform(self.t0, self.t1), rng.uniform(self.x0, self.x1))


# Coefficient layout: c[n] is the Taylor coefficient of (t-t0)^i (x-x0)^j,
# i.e. d^{i+j} f / dt^i dx^j / (i! j!), for the multi-index _IDX[n].
_IDX = ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3))
_POS = {ij: n for n, ij in enumerate(_IDX)}
_PRODUCT_TERMS = tuple(
    (_POS[(i1 + i2, j1 + j2)], n1, n2)
    for n1, (i1, j1) in enumerate(_IDX)
    for n2, (i2, j2) in enumerate(_IDX)
    if i1 + i2 + j1 + j2 <= 3
)


class Jet3:
    """Truncated bivariate Taylor polynomial of total order 3.

    Closed under arithmetic and composition with smooth univariate
    functions; singular operations (division by zero constant part, log at
    zero, ...) raise :class:`EvaluationError`.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs: list[float]):
        self.c = coeffs

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(v: float) -> "Jet3":
        return Jet3([float(v), 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])

    @staticmethod
    def variable_t(t0: float) -> "Jet3":
        return Jet3([float(t0), 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])

    @staticmethod
    def variable_x(x0: float) -> "Jet3":
        return Jet3([float(x0), 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])

    @staticmethod
    def from_derivatives(v, d_t, d_x, d_tt, d_tx, d_xx, d_ttt, d_ttx, d_txx, d_xxx) -> "Jet3":
        return Jet3([v, d_t, d_x, d_tt / 2.0, d_tx, d_xx / 2.0,
                     d_ttt / 6.0, d_ttx / 2.0, d_txx / 2.0, d_xxx / 6.0])

    # -- derivative accessors ---------------------------------------------

    @property
    def v(self) -> float:
        return self.c[0]

    @property
    def d_t(self) -> float:
        return self.c[1]

    @property
    def d_x(self) -> float:
        return self.c[2]

    @property
    def d_tt(self) -> float:
        return 2.0 * self.c[3]

    @property
    def d_tx(self) -> float:
        return self.c[4]

    @property
    def d_xx(self) -> float:
        return 2.0 * self.c[5]

    @property
    def d_ttt(self) -> float:
        return 6.0 * self.c[6]

    @property
    def d_ttx(self) -> float:
        return 2.0 * self.c[7]

    @property
    def d_txx(self) -> float:
        return 2.0 * self.c[8]

    @property
    def d_xxx(self) -> float:
        return 6.0 * self.c[9]

    def entries(self) -> tuple[float, ...]:
        """All ten derivatives in the order (v, d_t, d_x, d_tt, d_tx, d_xx,
        d_ttt, d_ttx, d_txx, d_xxx)."""
        return (self.v, self.d_t, self.d_x, self.d_tt, self.d_tx, self.d_xx,
                self.d_ttt, self.d_ttx, self.d_txx, self.d_xxx)

    def __repr__(self) -> str:
        names = ("v", "d_t", "d_x", "d_tt", "d_tx", "d_xx",
                 "d_ttt", "d_ttx", "d_txx", "d_xxx")
        body = ", ".join(f"{n}={e:.6g}" for n, e in zip(names, self.entries()))
        return f"Jet3({body})"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Jet3):
            a, b = self.c, other.c
            return Jet3([a[n] + b[n] for n in range(10)])
        if isinstance(other, (int, float)):
            out = list(self.c)
            out[0] += other
            return Jet3(out)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet3):
            a, b = self.c, other.c
            return Jet3([a[n] - b[n] for n in range(10)])
        if isinstance(other, (int, float)):
            out = list(self.c)
            out[0] -= other
            return Jet3(out)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, float)):
            out = [-ci for ci in self.c]
            out[0] += other
            return Jet3(out)
        return NotImplemented

    def __neg__(self):
        return Jet3([-ci for ci in self.c])

    def __mul__(self, other):
        if isinstance(other, Jet3):
            a, b = self.c, other.c
            out = [0.0] * 10
            for k, n1, n2 in _PRODUCT_TERMS:
                out[k] += a[n1] * b[n2]
            return Jet3(out)
        if isinstance(other, (int, float)):
            return Jet3([ci * other for ci in self.c])
        return NotImplemented

    __rmul__ = __mul__

    def _reciprocal(self) -> "Jet3":
        u = self.c[0]
        if u == 0.0:
            raise EvaluationError("division by zero in jet evaluation")
        iu = 1.0 / u
        return self.compose(iu, -iu * iu, 2.0 * iu ** 3, -6.0 * iu ** 4)

    def __truediv__(self, other):
        if isinstance(other, Jet3):
            return self * other._reciprocal()
        if isinstance(other, (int, float)):
            if other == 0:
                raise EvaluationError("division by zero in jet evaluation")
            return self * (1.0 / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, float)):
            return self._reciprocal() * other
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self._reciprocal() ** (-n)
        out = Jet3.constant(1.0)
        for _ in range(n):
            out = out * self
        return out

    # -- composition -------------------------------------------------------

    def compose(self, g0: float, g1: float, g2: float, g3: float) -> "Jet3":
        """Jet of g(self) given derivatives g0..g3 of g at self.v."""
        w = list(self.c)
        w[0] = 0.0
        W = Jet3(w)
        W2 = W * W
        W3 = W2 * W
        h2 = g2 / 2.0
        h3 = g3 / 6.0
        out = [g1 * W.c[n] + h2 * W2.c[n] + h3 * W3.c[n] for n in range(10)]
        out[0] = g0
        return Jet3(out)

    def deriv_t(self) -> "Jet3":
        """Jet of the t-derivative field.

        Exact through total order 2; the order-3 entries of the result are
        zero-filled, not true fourth derivatives of the parent.
        """
        out = [0.0] * 10
        for n, (i, j) in enumerate(_IDX):
            if i + j <= 2:
                out[n] = (i + 1) * self.c[_POS[(i + 1, j)]]
        return Jet3(out)

    def deriv_x(self) -> "Jet3":
        """Jet of the x-derivative field (see :meth:`deriv_t`)."""
        out = [0.0] * 10
        for n, (i, j) in enumerate(_IDX):
            if i + j <= 2:
                out[n] = (j + 1) * self.c[_POS[(i, j + 1)]]
        return Jet3(out)


# -- elementary functions (float / ndarray / Jet3) --------------------------

def _dispatch(w, jet_fn, np_fn, math_fn):
    if isinstance(w, Jet3):
        return jet_fn(w)
    if isinstance(w, np.ndarray):
        return np_fn(w)
    return math_fn(w)


def exp(w):
    def on_jet(j):
        e = math.exp(j.c[0])
        return j.compose(e, e, e, e)
    return _dispatch(w, on_jet, np.exp, math.exp)


def log_abs(w):
    """ln|w|; the derivatives of ln|g| are g'/g regardless of sign."""
    def on_jet(j):
        u = j.c[0]
        if u == 0.0:
            raise EvaluationError("log of zero in jet evaluation")
        iu = 1.0 / u
        return j.compose(math.log(abs(u)), iu, -iu * iu, 2.0 * iu ** 3)
    def on_float(u):
        if u == 0.0:
            raise EvaluationError("log of zero")
        return math.log(abs(u))
    return _dispatch(w, on_jet, lambda a: np.log(np.abs(a)), on_float)


def sqrt(w):
    def on_jet(j):
        u = j.c[0]
        if u <= 0.0:
            raise EvaluationError("sqrt of non-positive value in jet evaluation")
        s = math.sqrt(u)
        return j.compose(s, 0.5 / s, -0.25 / (u * s), 0.375 / (u * u * s))
    return _dispatch(w, on_jet, np.sqrt, math.sqrt)


def sin(w):
    def on_jet(j):
        s, c = math.sin(j.c[0]), math.cos(j.c[0])
        return j.compose(s, c, -s, -c)
    return _dispatch(w, on_jet, np.sin, math.sin)


def cos(w):
    def on_jet(j):
        s, c = math.sin(j.c[0]), math.cos(j.c[0])
        return j.compose(c, -s, -c, s)
    return _dispatch(w, on_jet, np.cos, math.cos)


def tan(w):
    def on_jet(j):
        v = math.tan(j.c[0])
        q = 1.0 + v * v
        return j.compose(v, q, 2.0 * v * q, q * (2.0 + 6.0 * v * v))
    return _dispatch(w, on_jet, np.tan, math.tan)


def sinh(w):
    def on_jet(j):
        s, c = math.sinh(j.c[0]), math.cosh(j.c[0])
        return j.compose(s, c, s, c)
    return _dispatch(w, on_jet, np.sinh, math.sinh)


def cosh(w):
    def on_jet(j):
        s, c = math.sinh(j.c[0]), math.cosh(j.c[0])
        return j.compose(c, s, c, s)
    return _dispatch(w, on_jet, np.cosh, math.cosh)


def tanh(w):
    def on_jet(j):
        v = math.tanh(j.c[0])
        q = 1.0 - v * v
        return j.compose(v, q, -2.0 * v * q, q * (6.0 * v * v - 2.0))
    return _dispatch(w, on_jet, np.tanh, math.tanh)


def coth(w):
    # coth' = 1 - coth^2, same recursion as tanh.
    def on_jet(j):
        s = math.sinh(j.c[0])
        if s == 0.0:
            raise EvaluationError("coth at zero in jet evaluation")
        v = math.cosh(j.c[0]) / s
        q = 1.0 - v * v
        return j.compose(v, q, -2.0 * v * q, q * (6.0 * v * v - 2.0))
    def on_float(u):
        s = math.sinh(u)
        if s == 0.0:
            raise EvaluationError("coth at zero")
        return math.cosh(u) / s
    return _dispatch(w, on_jet, lambda a: np.cosh(a) / np.sinh(a), on_float)


def arctan(w):
    def on_jet(j):
        u = j.c[0]
        q = 1.0 / (1.0 + u * u)
        return j.compose(math.atan(u), q, -2.0 * u * q * q,
                         (6.0 * u * u - 2.0) * q ** 3)
    return _dispatch(w, on_jet, np.arctan, math.atan)


# -- scalar fields -----------------------------------------------------------

class ScalarField:
    """A scalar field of (t, x) defined by a closed-form expression.

    ``expr(t, x)`` must be written against the elementary functions of this
    module so that it evaluates on floats, numpy arrays, and jets alike.
    Evaluation is pure: no state, no side effects.
    """

    __slots__ = ("expr", "name")

    def __init__(self, expr: Callable, name: str = ""):
        self.expr = expr
        self.name = name

    def _call(self, t, x):
        try:
            return self.expr(t, x)
        except EvaluationError:
            raise
        except (ZeroDivisionError, OverflowError, ValueError) as exc:
            raise EvaluationError(f"{exc} (field {self.name or '<anonymous>'})") from exc

    def jet(self, p: Point) -> Jet3:
        t, x = p
        if not (math.isfinite(t) and math.isfinite(x)):
            raise ValueError(f"non-finite evaluation point {p!r}")
        r = self._call(Jet3.variable_t(t), Jet3.variable_x(x))
        j = r if isinstance(r, Jet3) else Jet3.constant(float(r))
        for ci in j.c:
            if not math.isfinite(ci):
                raise EvaluationError(
                    f"non-finite derivative of field {self.name or '<anonymous>'} at {p!r}")
        return j

    def value(self, t: float, x: float) -> float:
        r = self._call(float(t), float(x))
        r = float(r)
        if not math.isfinite(r):
            raise EvaluationError(
                f"non-finite value of field {self.name or '<anonymous>'} at ({t}, {x})")
        return r

    def sample(self, t: float, xs: np.ndarray) -> np.ndarray:
        """Vectorized values at fixed t over an array of x."""
        r = self._call(t, xs)
        if isinstance(r, np.ndarray):
            return r.astype(float)
        return np.full(np.shape(xs), float(r))

    # fields compose by arithmetic into new fields

    def _binary(self, other, op, tag):
        if isinstance(other, ScalarField):
            return ScalarField(lambda t, x: op(self.expr(t, x), other.expr(t, x)),
                               name=f"({self.name}{tag}{other.name})")
        if isinstance(other, (int, float)):
            return ScalarField(lambda t, x: op(self.expr(t, x), other),
                               name=f"({self.name}{tag}{other})")
        return NotImplemented

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b, "+")

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b, "-")

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a, "-r")

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b, "*")

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a / b, "/")

    def __rtruediv__(self, other):
        return self._binary(other, lambda a, b: b / a, "/r")

    def __neg__(self):
        return ScalarField(lambda t, x: -self.expr(t, x), name=f"(-{self.name})")


def constant_field(v: float, name: str = "") -> ScalarField:
    v = float(v)
    return ScalarField(lambda t, x: v, name=name or f"{v:g}")


def eval_jet(field: ScalarField, p: Point) -> Jet3:
    """Exact jet of ``field`` at ``p`` by forward Taylor propagation."""
    return field.jet(p)


def fd_jet(field: ScalarField, p: Point, h: float = 1e-4) -> Jet3:
    """Second-order central-difference approximation of all Jet3 entries.

    Independent of :func:`eval_jet` (uses only pointwise field values);
    meant for cross-validation in tests, not production use.
    """
    if h <= 0:
        raise ValueError("stencil width h must be positive")
    t, x = p

    def F(dt: float, dx: float) -> float:
        return field.value(t + dt, x + dx)

    f00 = F(0, 0)
    fp0, fm0 = F(h, 0), F(-h, 0)
    f0p, f0m = F(0, h), F(0, -h)
    fpp, fpm = F(h, h), F(h, -h)
    fmp, fmm = F(-h, h), F(-h, -h)
    f2p0, f2m0 = F(2 * h, 0), F(-2 * h, 0)
    f02p, f02m = F(0, 2 * h), F(0, -2 * h)

    h2 = h * h
    h3 = h2 * h
    return Jet3.from_derivatives(
        v=f00,
        d_t=(fp0 - fm0) / (2 * h),
        d_x=(f0p - f0m) / (2 * h),
        d_tt=(fp0 - 2 * f00 + fm0) / h2,
        d_tx=(fpp - fpm - fmp + fmm) / (4 * h2),
        d_xx=(f0p - 2 * f00 + f0m) / h2,
        d_ttt=(f2p0 - 2 * fp0 + 2 * fm0 - f2m0) / (2 * h3),
        d_ttx=(fpp - 2 * f0p + fmp - fpm + 2 * f0m - fmm) / (2 * h3),
        d_txx=(fpp - 2 * fp0 + fpm - fmp + 2 * fm0 - fmm) / (2 * h3),
        d_xxx=(f02p - 2 * f0p + 2 * f0m - f02m) / (2 * h3),
    )


class Antiderivative:
    """Univariate antiderivative F(w) = integral of g from w0 to w.

    The value is computed by adaptive quadrature; all derivatives come from
    the closed form of the integrand (F' = g, F'' = g', F''' = g''), so
    jets through an Antiderivative stay exact apart from the quadrature
    tolerance on the value itself.
    """

    def __init__(self, integrand: Callable, w0: float, abs_tol: float = 1e-12):
        self.integrand = integrand
        self.w0 = float(w0)
        self.abs_tol = abs_tol
        self._cache: dict[float, float] = {}

    def _value(self, w: float) -> float:
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        try:
            val, _ = quad(self.integrand, self.w0, w,
                          epsabs=self.abs_tol, epsrel=self.abs_tol, limit=200)
        except Exception as exc:  # scipy signals bad integrands in several ways
            raise EvaluationError(f"quadrature failed on [{self.w0}, {w}]: {exc}") from exc
        if not math.isfinite(val):
            raise EvaluationError(f"quadrature diverged on [{self.w0}, {w}]")
        if len(self._cache) < 200_000:
            self._cache[w] = val
        return val

    def __call__(self, w):
        if isinstance(w, Jet3):
            w0v = w.c[0]
            gj = self.integrand(Jet3.variable_t(w0v))
            if not isinstance(gj, Jet3):
                gj = Jet3.constant(float(gj))
            return w.compose(self._value(w0v), gj.v, gj.d_t, gj.d_tt)
        if isinstance(w, np.ndarray):
            return np.array([self._value(float(wi)) for wi in np.ravel(w)]).reshape(np.shape(w))
        return self._value(float(w))
