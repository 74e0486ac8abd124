"""Quasiclassical coordinate machinery for the Weber equation.

The scaled variable is t = x / sqrt(lam) and the action integral

    xi(t) = int_1^t sqrt(s^2 - 1) ds
          = (t sqrt(t^2-1) - log(t + sqrt(t^2-1))) / 2,

branched over t = +-1, with the lower side xi(t - i0) taken on the real
half-line t <= 1 (the case Im lam >= 0; the lower half-plane follows by
conjugation).  The Langer variable eta(t) = ((3/2) xi)^(2/3) is analytic
across (-1, 1], and z_lam(x) = lam^(2/3) eta(x / sqrt(lam)) carries the
equation into a perturbed Airy equation u'' - z u = V0 u.

This module evaluates xi on the unwrapped sheet in closed form, inverts
the maps, locates the turning point x_*(lam) (the minimizer of |z_lam| on
the positive half-line), discretizes the image curve of the positive real
axis with its two arcs split at z_*, and integrates kernel envelopes
along that curve.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .branched import BranchedComplex
from .errors import (BranchError, ConvergenceError, DomainError, RangeError,
                     SingularityError, UsageError)

__all__ = [
    "SpectralParameter",
    "XiValue",
    "TurningPoint",
    "GammaContour",
    "ETA0",
    "ETA_E",
    "xi",
    "xi_ray",
    "eta",
    "eta_deriv",
    "z_of_x",
    "dz_dx",
    "x_of_z",
    "t_of_eta",
    "in_DT",
    "v_eta",
    "V0",
    "turning_point",
    "gamma_contour",
    "gamma_by_kappa",
    "gamma_by_chi",
    "kappa0",
    "chi0",
    "kappa1",
    "gamma_integral",
    "gamma_integral_scaled",
]

ETA0 = -(3.0 * math.pi / 8.0) ** (2.0 / 3.0)
ETA_E = -(3.0 * math.pi / 4.0) ** (2.0 / 3.0)

_TWO_THIRDS = 2.0 / 3.0
_CBRT2 = 2.0 ** (1.0 / 3.0)


# ----------------------------------------------------------------------
# Spectral parameter
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralParameter:
    """lam = modulus * exp(2 i theta), theta in [0, pi/2], modulus >= 1/2."""

    modulus: float
    theta: float

    def __post_init__(self):
        if not self.modulus >= 0.5:
            raise DomainError(f"|lam| >= 1/2 required, got {self.modulus}")
        if not -1e-15 <= self.theta <= math.pi / 2 + 1e-15:
            raise DomainError(f"theta must lie in [0, pi/2], got {self.theta}")

    @classmethod
    def from_any(cls, lam) -> "SpectralParameter":
        if isinstance(lam, SpectralParameter):
            return lam
        lam = complex(lam)
        if lam.imag < -1e-300:
            raise DomainError("Im lam < 0: conjugate the data instead")
        arg = math.atan2(lam.imag, lam.real)   # in [0, pi]
        return cls(abs(lam), arg / 2.0)

    @property
    def value(self) -> complex:
        return self.modulus * cmath.exp(2j * self.theta)

    @property
    def arg(self) -> float:
        return 2.0 * self.theta

    @property
    def sqrt(self) -> complex:
        return math.sqrt(self.modulus) * cmath.exp(1j * self.theta)

    def power(self, p: float) -> complex:
        """Principal lam**p (valid while |2 p theta| <= pi)."""
        return self.modulus ** p * cmath.exp(2j * p * self.theta)


def _lam(lam) -> SpectralParameter:
    return SpectralParameter.from_any(lam)


# ----------------------------------------------------------------------
# xi on the unwrapped sheet
# ----------------------------------------------------------------------

def _xi_lower_core(t):
    """xi for Im t <= 0, lower side on the reals; vectorized.

    Returns (val, arg_unwrapped, w) where val is the principal complex
    value, arg_unwrapped its continuous argument (anchored at arg 0 on
    t > 1) and w the matching branch of sqrt(t^2 - 1).
    """
    t = np.asarray(t, dtype=complex)
    tm1 = t - 1.0
    m = np.abs(tm1)
    on_cut = (tm1.imag == 0.0) & (tm1.real < 0.0)
    phi = np.where(on_cut, math.pi, -np.arctan2(tm1.imag, tm1.real))
    phi = np.where(m == 0.0, 0.0, phi)
    q = 2.0 + tm1
    q_cut = (q.imag == 0.0) & (q.real < 0.0)
    p = np.where(q_cut, -1j * np.sqrt(np.abs(np.where(q_cut, q.real, 1.0))),
                 np.sqrt(np.where(q_cut, 1.0, q)))
    w = np.sqrt(m) * np.exp(-0.5j * phi) * p
    u = t + w
    u_cut = (u.imag == 0.0) & (u.real < 0.0)
    logu = np.where(u_cut,
                    np.log(np.abs(np.where(u_cut, u, 1.0))) - 1j * math.pi,
                    np.log(np.where(u_cut, 1.0, u)))
    val = 0.5 * (t * w - logu)
    i_fac = val * np.exp(1.5j * phi)
    arg = -1.5 * phi + np.arctan2(i_fac.imag, i_fac.real)
    arg = np.where(np.abs(val) == 0.0, 0.0, arg)
    return val, arg, w


def _xi_any(t):
    """xi for arbitrary complex t (reals taken on the lower side)."""
    t = np.asarray(t, dtype=complex)
    upper = t.imag > 0.0
    tl = np.where(upper, np.conj(t), t)
    val, arg, w = _xi_lower_core(tl)
    val = np.where(upper, np.conj(val), val)
    arg = np.where(upper, -arg, arg)
    w = np.where(upper, np.conj(w), w)
    return val, arg, w


@dataclass(frozen=True)
class XiValue:
    """xi(t) with its unwrapped argument and the side used on the cut."""

    value: BranchedComplex
    t: complex
    side: str = "lower"

    @property
    def principal(self) -> complex:
        return self.value.value


def xi(t: complex, side: str | None = None) -> XiValue:
    """xi(t) on the unwrapped sheet.

    ``side`` ("lower"/"upper") selects the cut side and is required for
    real t <= 1; elsewhere the point determines the sheet.
    """
    t = complex(t)
    if t.imag == 0.0 and t.real <= 1.0:
        if side is None:
            raise BranchError("real t <= 1 needs a cut-side flag")
    elif side is None:
        side = "lower" if t.imag <= 0.0 else "upper"
    if side not in ("lower", "upper"):
        raise ValueError(f"side must be 'lower' or 'upper', got {side!r}")
    if side == "upper":
        v, a, _ = _xi_lower_core(np.conj(t))
        return XiValue(BranchedComplex(float(abs(v)), float(-a)), t, side)
    v, a, _ = _xi_lower_core(t)
    return XiValue(BranchedComplex(float(abs(v)), float(a)), t, side)


@dataclass(frozen=True)
class RayXi:
    """Vector evaluation of xi along the ray t = r exp(-i theta)."""

    r: np.ndarray
    theta: float
    value: np.ndarray          # principal complex values
    arg: np.ndarray            # unwrapped arguments
    dxi_dr: np.ndarray         # d xi / dr = exp(-i theta) sqrt(t^2 - 1)
    kappa: np.ndarray          # Re(e^{2 i theta} xi)
    v: np.ndarray              # Im(e^{2 i theta} xi)

    @property
    def modulus(self) -> np.ndarray:
        return np.abs(self.value)


def xi_ray(r, theta: float) -> RayXi:
    """xi along t = r exp(-i theta), r >= 0, theta in [0, pi/2]."""
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r < 0):
        raise DomainError("ray parameter r must be >= 0")
    t = r * cmath.exp(-1j * theta)
    val, arg, w = _xi_lower_core(t)
    m = np.abs(val)
    rot = 2.0 * theta + arg
    kappa = m * np.cos(rot)
    vv = m * np.sin(rot)
    dxi = cmath.exp(-1j * theta) * w
    return RayXi(r, theta, val, arg, dxi, kappa, vv)


# ----------------------------------------------------------------------
# eta and its derivative
# ----------------------------------------------------------------------

# eta(1+u) = cbrt(2) u (1 + u/10 - 2 u^2/175 + 37 u^3/15750 + ...)
_ETA_SER = (1.0, 0.1, -2.0 / 175.0, 37.0 / 15750.0)
_DETA_SER = (1.0, 0.2, -6.0 / 175.0, 148.0 / 15750.0)


def _eta_from_xi(val, arg):
    m = np.abs(val)
    return (1.5 * m) ** _TWO_THIRDS * np.exp(1j * _TWO_THIRDS * arg)


def _eta_series(u):
    u = np.asarray(u, dtype=complex)
    acc = np.zeros_like(u)
    for c in reversed(_ETA_SER):
        acc = acc * u + c
    return _CBRT2 * u * acc


def _deta_series(u):
    u = np.asarray(u, dtype=complex)
    acc = np.zeros_like(u)
    for c in reversed(_DETA_SER):
        acc = acc * u + c
    return _CBRT2 * acc


def _eta_any(t):
    """eta for arbitrary complex t off the cut (-inf, -1); vectorized."""
    t = np.asarray(t, dtype=complex)
    val, arg, _ = _xi_any(t)
    out = _eta_from_xi(val, arg)
    near = np.abs(t - 1.0) <= 1e-3
    if np.any(near):
        out = np.where(near, _eta_series(t - 1.0), out)
    return out


def _deta_any(t):
    t = np.asarray(t, dtype=complex)
    val, arg, w = _xi_any(t)
    m = np.abs(val)
    safe = np.where(m == 0.0, 1.0, m)
    out = w * (1.5 * safe) ** (-1.0 / 3.0) * np.exp(-1j * arg / 3.0)
    near = np.abs(t - 1.0) <= 1e-3
    if np.any(near):
        out = np.where(near, _deta_series(t - 1.0), out)
    return out


def eta(t: complex, side: str = "lower") -> complex:
    """Langer variable eta(t) = ((3/2) xi(t))^(2/3).

    Analytic on the plane cut along (-inf, -1); real and increasing on
    (-1, 1], with eta(0) = ETA0 and the two-sided limit eta(-1) = ETA_E.
    """
    t = complex(t)
    if t.imag == 0.0:
        if t.real < -1.0:
            raise BranchError("eta is cut along (-inf, -1)")
        if t.real == -1.0:
            return complex(ETA_E)
    if side == "upper" and t.imag == 0.0:
        return complex(np.conj(_eta_any(np.conj(t))[()]))
    return complex(_eta_any(t)[()])


def eta_deriv(t: complex, side: str = "lower") -> complex:
    """d eta / dt, with the removable point at t = 1 filled by its series."""
    t = complex(t)
    if t.imag == 0.0 and t.real <= -1.0:
        raise BranchError("eta is cut along (-inf, -1)")
    if side == "upper" and t.imag == 0.0:
        return complex(np.conj(_deta_any(np.conj(t))[()]))
    return complex(_deta_any(t)[()])


def in_DT(t: complex) -> bool:
    """Membership in the principal sheet domain of the eta-isomorphism."""
    t = complex(t)
    if t.imag == 0.0 and -1.0 < t.real <= 1.0:
        return True
    if t.imag == 0.0 and t.real <= -1.0:
        return False
    _, arg, _ = _xi_any(t)
    return bool(abs(arg) < 1.5 * math.pi)


# ----------------------------------------------------------------------
# z_lam and its inverse
# ----------------------------------------------------------------------

def z_of_x(x: complex, lam) -> complex:
    """z_lam(x) = lam^(2/3) eta(x / sqrt(lam))."""
    sp = _lam(lam)
    t = complex(x) / sp.sqrt
    if not in_DT(t):
        raise DomainError(f"x/sqrt(lam) = {t} outside the map's domain")
    return sp.power(_TWO_THIRDS) * complex(_eta_any(t)[()])


def dz_dx(x: complex, lam) -> complex:
    """z_lam'(x) = lam^(1/6) eta'(x / sqrt(lam))."""
    sp = _lam(lam)
    t = complex(x) / sp.sqrt
    if not in_DT(t):
        raise DomainError(f"x/sqrt(lam) = {t} outside the map's domain")
    return sp.power(1.0 / 6.0) * complex(_deta_any(t)[()])


def _newton_eta(t0: complex, target: complex, tol: float) -> complex:
    t = complex(t0)
    for _ in range(40):
        f = complex(_eta_any(t)[()]) - target
        if abs(f) <= tol:
            return t
        d = complex(_deta_any(t)[()])
        t = t - f / d
    raise ConvergenceError(f"eta inversion stalled at target {target}")


def _t_seed_large(eta_target: complex) -> complex:
    """Asymptotic inverse for |eta| >> 1, from xi ~ t^2/2 - log(2t)/2 - 1/4.

    Tracks the argument of t^2 continuously from 3/2 arg(eta), so the
    seed lands on the correct half-sheet even near the domain boundary.
    """
    base = 1.5 * cmath.phase(eta_target)
    xi_goal = (2.0 / 3.0) * abs(eta_target) ** 1.5 * cmath.exp(1j * base)
    t = math.sqrt(2.0 * abs(xi_goal)) * cmath.exp(0.5j * base)
    for _ in range(6):
        w = 2.0 * xi_goal + cmath.log(2.0 * t) + 0.5
        a = cmath.phase(w)
        k = round((base - a) / (2.0 * math.pi))
        a += 2.0 * math.pi * k
        t = math.sqrt(abs(w)) * cmath.exp(0.5j * a)
    return t


def t_of_eta(eta_target: complex, t_seed: complex | None = None) -> complex:
    """Invert eta(t) = eta_target on the principal sheet.

    Without a seed: Newton from the local series for small targets, from
    the quadratic asymptotic inverse for large ones, and by continuation
    along the straight segment from eta = 0 in between (the segment stays
    off the cut (-inf, ETA_E] for any admissible target).
    """
    eta_target = complex(eta_target)
    if eta_target.imag == 0.0 and eta_target.real <= ETA_E + 1e-13:
        raise DomainError("eta on the excluded half-line (-inf, eta_E]")
    tol = 1e-13 * (1.0 + abs(eta_target))
    if t_seed is not None:
        return _newton_eta(complex(t_seed), eta_target, tol)
    m = abs(eta_target)
    if m <= 0.5:
        return _newton_eta(1.0 + eta_target / _CBRT2, eta_target, tol)
    if m > 6.0:
        return _newton_eta(_t_seed_large(eta_target), eta_target, tol)
    n_steps = max(2, int(math.ceil(3.0 * m)))
    t = 1.0 + 0.0j
    for k in range(1, n_steps + 1):
        target = eta_target * (k / n_steps)
        t = _newton_eta(t, target, 1e-12 * (1.0 + abs(target)))
    return _newton_eta(t, eta_target, tol)


def _t_of_eta_batch(targets: np.ndarray, t_seed: complex) -> np.ndarray:
    """Vector Newton for a cluster of nearby eta targets."""
    t = np.full(targets.shape, complex(t_seed))
    tol = 1e-13 * (1.0 + np.abs(targets))
    for _ in range(50):
        f = _eta_any(t) - targets
        done = np.abs(f) <= tol
        if np.all(done):
            return t
        d = _deta_any(t)
        t = np.where(done, t, t - f / d)
    raise ConvergenceError("batched eta inversion stalled")


def x_of_z(z: complex, lam) -> complex:
    """Inverse of z_lam, via Newton continuation in the eta plane."""
    sp = _lam(lam)
    eta_target = complex(z) / sp.power(_TWO_THIRDS)
    t = t_of_eta(eta_target)
    return sp.sqrt * t


# ----------------------------------------------------------------------
# Effective potential
# ----------------------------------------------------------------------

def v_eta(eta_val: complex, n_nodes: int = 32) -> complex:
    """Residual potential v(eta) = f''(eta)/f(eta), f = sqrt(eta'(t(eta))).

    Differentiates f on a circle of radius min(0.1, |eta - eta_E| / 4)
    by the trapezoidal Cauchy rule (spectrally accurate); the branch of
    the square root is continued around the circle.
    """
    return _v_eta_with_seed(complex(eta_val), None, n_nodes)[0]


def V0(z: complex, lam) -> complex:
    """V0(z, lam) = v(z lam^(-2/3)) lam^(-4/3)."""
    sp = _lam(lam)
    eta_val = complex(z) / sp.power(_TWO_THIRDS)
    return v_eta(eta_val) * sp.power(-4.0 / 3.0)


def _v_eta_with_seed(eta_val: complex, t_seed: complex | None,
                     n_nodes: int = 32) -> tuple[complex, complex]:
    """(v(eta), t(eta)) reusing a nearby inverse-map seed."""
    eta_val = complex(eta_val)
    if eta_val.imag == 0.0 and eta_val.real <= ETA_E + 1e-13:
        raise BranchError("eta on the excluded half-line")
    dist = abs(eta_val - ETA_E)
    if dist < 1e-4:
        raise SingularityError(f"eta within {dist:.2e} of the singular point")
    radius = min(0.1, dist / 4.0)
    t_center = t_of_eta(eta_val, t_seed=t_seed) if t_seed is not None \
        else t_of_eta(eta_val)
    thetas = 2.0 * math.pi * np.arange(n_nodes) / n_nodes
    targets = eta_val + radius * np.exp(1j * thetas)
    ts = _t_of_eta_batch(targets, t_center)
    g = _deta_any(ts)
    args = np.unwrap(np.angle(g))
    f = np.sqrt(np.abs(g)) * np.exp(0.5j * args)
    g_c = complex(_deta_any(t_center)[()])
    a_c = math.atan2(g_c.imag, g_c.real)
    k = round((args[0] - a_c) / (2.0 * math.pi))
    a_c += 2.0 * math.pi * k
    f_c = math.sqrt(abs(g_c)) * cmath.exp(0.5j * a_c)
    f2 = (2.0 / radius ** 2) * np.mean(f * np.exp(-2j * thetas))
    return complex(f2 / f_c), t_center


def V0_along(zs, lam) -> np.ndarray:
    """V0 at an ordered chain of nearby points (a discretized contour).

    The inverse map is seeded from the previous point, which makes the
    sweep linear-time; values match V0 point by point.
    """
    sp = _lam(lam)
    scale = sp.power(-4.0 / 3.0)
    pw = sp.power(_TWO_THIRDS)
    out = np.empty(len(zs), complex)
    seed = None
    for k, z in enumerate(zs):
        val, seed = _v_eta_with_seed(complex(z) / pw, seed)
        out[k] = val * scale
    return out


# ----------------------------------------------------------------------
# Turning point
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class TurningPoint:
    x_star: complex
    t_star: complex
    r_star: float
    z_star: complex


def _dmod2_ray(r, theta: float):
    """d/dr |xi|^2 along the ray (exact, via the closed forms)."""
    ray = xi_ray(np.atleast_1d(r), theta)
    return 2.0 * (np.conj(ray.value) * ray.dxi_dr).real


def turning_point(lam) -> TurningPoint:
    """The minimizer x_* of |z_lam(x)| on the positive half-line.

    |xi|^2 is strictly convex along the ray, so a dense scan brackets the
    unique stationary point; golden-section plus a bisection polish on
    the derivative pin it to ~1e-12.
    """
    sp = _lam(lam)
    th = sp.theta
    if th == 0.0:
        x_star = sp.sqrt
        return TurningPoint(x_star, 1.0 + 0.0j, 1.0, 0.0 + 0.0j)
    rs = np.arange(0.0, 2.0 + 1e-12, 1e-3)
    g = _dmod2_ray(rs, th)
    if g[0] >= -1e-14 and np.all(g >= -1e-14):
        r_star = 0.0
    else:
        idx = int(np.argmax(g > 0.0))
        lo, hi = rs[idx - 1], rs[idx]
        gr = 0.5 * (math.sqrt(5.0) - 1.0)
        a, b = lo, hi
        c = b - gr * (b - a)
        d = a + gr * (b - a)
        fc = float(np.abs(xi_ray(c, th).value[0])) ** 2
        fd = float(np.abs(xi_ray(d, th).value[0])) ** 2
        while b - a > 1e-12:
            if fc < fd:
                b, d, fd = d, c, fc
                c = b - gr * (b - a)
                fc = float(np.abs(xi_ray(c, th).value[0])) ** 2
            else:
                a, c, fc = c, d, fd
                d = a + gr * (b - a)
                fd = float(np.abs(xi_ray(d, th).value[0])) ** 2
        r_star = 0.5 * (a + b)
        # polish the stationarity of d|xi|^2/dr by bisection (convexity)
        h = 1e-6
        a, b = max(lo, r_star - h), min(hi, r_star + h)
        ga, gb = float(_dmod2_ray(a, th)[0]), float(_dmod2_ray(b, th)[0])
        if ga < 0.0 < gb:
            for _ in range(60):
                mid = 0.5 * (a + b)
                gm = float(_dmod2_ray(mid, th)[0])
                if gm < 0.0:
                    a = mid
                else:
                    b = mid
            r_star = 0.5 * (a + b)
    t_star = r_star * cmath.exp(-1j * th)
    x_star = sp.sqrt * t_star
    z_star = sp.power(_TWO_THIRDS) * complex(_eta_any(t_star)[()])
    return TurningPoint(x_star, t_star, r_star, z_star)


# ----------------------------------------------------------------------
# The image curve of the positive half-line
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class GammaContour:
    """Discretized image of [0, x_max] under z_lam, split at z_*."""

    lam: SpectralParameter
    nodes: np.ndarray
    x_params: np.ndarray
    kappa_params: np.ndarray
    tangents: np.ndarray       # z_lam'(x) at the nodes
    weights: np.ndarray        # arc-length quadrature weights
    split_index: int

    @property
    def z_star(self) -> complex:
        return complex(self.nodes[self.split_index])

    @property
    def minus(self) -> np.ndarray:
        return self.nodes[: self.split_index + 1]

    @property
    def plus(self) -> np.ndarray:
        return self.nodes[self.split_index:]


def _graded(a: float, b: float, n: int, toward_a: bool) -> np.ndarray:
    """n+1 points on [a, b], geometrically refined toward one end.

    The cell ratio is 1.1, tempered for large n so the largest-to-
    smallest cell ratio stays below ~1e6.
    """
    if n <= 0:
        return np.array([a, b]) if b > a else np.array([a])
    log_r = min(math.log(1.1), math.log(1e6) / n)
    k = np.arange(n + 1)
    u = np.expm1(k * log_r) / np.expm1(n * log_r)
    return a + (b - a) * (u if toward_a else 1.0 - u[::-1])


def gamma_contour(lam, x_max: float, n: int = 64) -> GammaContour:
    """Graded discretization of z_lam([0, x_max]) refined near x_*."""
    sp = _lam(lam)
    if n < 16:
        raise DomainError("need n >= 16 nodes")
    tp = turning_point(sp)
    x_star = tp.x_star.real
    if not x_max > x_star:
        raise DomainError("x_max must exceed the turning point")
    L_left, L_right = x_star, x_max - x_star
    n_left = int(round(n * L_left / (L_left + L_right)))
    n_left = min(max(n_left, 0 if L_left == 0 else 8), n - 8)
    n_right = n - n_left
    if L_left > 0:
        xs_left = _graded(0.0, x_star, n_left, toward_a=False)
    else:
        xs_left = np.array([0.0])
    xs_right = _graded(x_star, x_max, n_right, toward_a=True)
    xs = np.concatenate([xs_left[:-1], xs_right])
    split = len(xs_left) - 1
    rr = xs / math.sqrt(sp.modulus)
    ray = xi_ray(rr, sp.theta)
    pow23 = sp.power(_TWO_THIRDS)
    m = np.abs(ray.value)
    nodes = pow23 * (1.5 * m) ** _TWO_THIRDS * np.exp(1j * _TWO_THIRDS * ray.arg)
    nodes = np.where(m == 0.0, 0.0 + 0.0j, nodes)
    t = rr * cmath.exp(-1j * sp.theta)
    tangents = sp.power(1.0 / 6.0) * _deta_any(t)
    dx = np.diff(xs)
    w = np.zeros_like(xs)
    w[:-1] += 0.5 * dx
    w[1:] += 0.5 * dx
    weights = w * np.abs(tangents)
    return GammaContour(sp, nodes, xs, ray.kappa, tangents, weights, split)


# ----------------------------------------------------------------------
# Scalar curve parametrizations
# ----------------------------------------------------------------------

def kappa0(lam) -> float:
    """kappa at the r = 0 endpoint: -(pi/4) sin(2 theta)."""
    sp = _lam(lam)
    return -(math.pi / 4.0) * math.sin(2.0 * sp.theta)


def chi0(lam) -> float:
    """chi at the r = 0 endpoint: (pi/4) cos(2 theta)."""
    sp = _lam(lam)
    return (math.pi / 4.0) * math.cos(2.0 * sp.theta)


def _kappa_r(r: float, th: float) -> float:
    return float(xi_ray(r, th).kappa[0])


def _chi_r(r: float, th: float) -> float:
    return float(xi_ray(r, th).v[0])


def _z_from_r(sp: SpectralParameter, r: float) -> complex:
    t = r * cmath.exp(-1j * sp.theta)
    return sp.power(_TWO_THIRDS) * complex(_eta_any(t)[()])


def gamma_by_kappa(lam, kappa: float) -> complex:
    """Point of the image curve with Re(e^{2 i theta} xi) = kappa.

    Monotone bisection in r; for real positive lam the real part is flat
    (zero) before the turning point, so the search starts there.
    """
    sp = _lam(lam)
    th = sp.theta
    if th == 0.0:
        if kappa < -1e-13:
            raise RangeError("kappa below the curve's range")
        if abs(kappa) <= 1e-13:
            return 0.0 + 0.0j
        r_lo = 1.0
    else:
        k_start = kappa0(sp)
        if kappa < k_start - 1e-13:
            raise RangeError(f"kappa < kappa0 = {k_start:.6f}")
        r_lo = 0.0
    r_hi = max(2.0, 2.0 * r_lo)
    while _kappa_r(r_hi, th) < kappa:
        r_hi *= 2.0
        if r_hi > 1e8:
            raise ConvergenceError("kappa bracket expansion failed")
    for _ in range(200):
        mid = 0.5 * (r_lo + r_hi)
        if _kappa_r(mid, th) < kappa:
            r_lo = mid
        else:
            r_hi = mid
        if r_hi - r_lo < 1e-14 * (1.0 + r_hi):
            break
    return _z_from_r(sp, 0.5 * (r_lo + r_hi))


def gamma_by_chi(lam, chi: float, delta: float = math.pi / 6.0) -> complex:
    """Point of the lower arc with Im(e^{2 i theta} xi) = chi.

    The chi parametrization is used on the arc before the turning point
    for small arguments of lam (arg lam <= delta).
    """
    sp = _lam(lam)
    if sp.arg > delta + 1e-12:
        raise DomainError("chi parametrization requires arg lam <= delta")
    tp = turning_point(sp)
    c_hi = chi0(sp)
    c_lo = _chi_r(tp.r_star, sp.theta)
    if not (c_lo - 1e-12 <= chi <= c_hi + 1e-12):
        raise RangeError(f"chi outside [{c_lo:.6f}, {c_hi:.6f}]")
    r_lo, r_hi = 0.0, tp.r_star
    for _ in range(200):
        mid = 0.5 * (r_lo + r_hi)
        if _chi_r(mid, sp.theta) > chi:
            r_lo = mid
        else:
            r_hi = mid
        if r_hi - r_lo < 1e-14 * (1.0 + r_hi):
            break
    return _z_from_r(sp, 0.5 * (r_lo + r_hi))


def kappa1(lam) -> tuple[float, float]:
    """(kappa_1, r_1) where the curve e^{2 i theta} xi crosses arg -pi/4.

    Defined by v(kappa_1) = -kappa_1 with kappa_1 > 0.
    """
    sp = _lam(lam)
    th = sp.theta
    tp = turning_point(sp)

    def h(r):
        ray = xi_ray(r, th)
        return float(ray.kappa[0] + ray.v[0])

    r_lo = tp.r_star
    if h(r_lo) > 1e-12:
        return _kappa_r(r_lo, th), r_lo
    r_hi = max(2.0, 2.0 * r_lo)
    while h(r_hi) < 0.0:
        r_hi *= 2.0
        if r_hi > 1e8:
            raise ConvergenceError("kappa_1 bracket expansion failed")
    for _ in range(120):
        mid = 0.5 * (r_lo + r_hi)
        if h(mid) < 0.0:
            r_lo = mid
        else:
            r_hi = mid
    r1 = 0.5 * (r_lo + r_hi)
    return _kappa_r(r1, th), r1


# ----------------------------------------------------------------------
# Envelope integrals along the curve
# ----------------------------------------------------------------------

_KINDS = ("exp_decay", "exp_grow", "power", "mixed", "v0")


def _r_of_point(sp: SpectralParameter, z) -> float:
    """Ray parameter of a point on the image curve."""
    x = x_of_z(complex(z), sp)
    if abs(x.imag) > 1e-8 * (1.0 + abs(x)):
        raise DomainError(f"point {z} does not lie on the image curve")
    if x.real < -1e-12:
        raise DomainError("curve parameter must be >= 0")
    return max(x.real, 0.0) / math.sqrt(sp.modulus)


def _integrand_factory(sp: SpectralParameter, alpha: float, kind: str,
                       shift: float):
    """|f(s(r))| |ds/dr| with the exponential scaled by exp(-shift)."""
    lam_abs = sp.modulus
    pow23 = lam_abs ** _TWO_THIRDS
    th = sp.theta

    def parts(r):
        ray = xi_ray(r, th)
        m = np.abs(ray.value)
        s_abs = pow23 * (1.5 * m) ** _TWO_THIRDS
        t = np.atleast_1d(r) * cmath.exp(-1j * th)
        ds = lam_abs ** (1.0 / 6.0) * math.sqrt(lam_abs) * np.abs(_deta_any(t))
        re_s32 = 1.5 * lam_abs * ray.kappa
        return s_abs, ds, re_s32

    if kind == "exp_decay":
        def f(r):
            s_abs, ds, re32 = parts(r)
            return np.exp(-(4.0 / 3.0) * (re32 - shift)) / (1.0 + s_abs) ** alpha * ds
    elif kind == "exp_grow":
        def f(r):
            s_abs, ds, re32 = parts(r)
            return np.exp((4.0 / 3.0) * (re32 - shift)) / (1.0 + s_abs) ** alpha * ds
    elif kind == "power":
        def f(r):
            s_abs, ds, _ = parts(r)
            return ds / (1.0 + s_abs) ** alpha
    elif kind == "mixed":
        def f(r):
            s_abs, ds, _ = parts(r)
            return ds / ((1.0 + s_abs) * (1.0 + s_abs / pow23) ** alpha)
    elif kind == "v0":
        def f(r):
            s_abs, ds, _ = parts(r)
            return ds / (lam_abs ** (4.0 / 3.0) + s_abs ** 2)
    else:
        raise ValueError(f"unknown kind {kind!r}; expected one of {_KINDS}")
    return f


def gamma_integral_scaled(lam, z_from, z_to, alpha: float, kind: str,
                          shift: float = 0.0) -> float:
    """Arc-length envelope integral along the image curve.

    ``shift`` rescales the exponential kinds by exp(-+ (4/3) shift) so
    ratios against the theorem right-hand sides can be formed without
    overflow; pass Re z^(3/2) of the reference point.
    """
    sp = _lam(lam)
    r_from = 0.0 if z_from is None else _r_of_point(sp, z_from)
    r_to = None if z_to is None else _r_of_point(sp, z_to)
    if r_to is not None and r_to < r_from - 1e-12:
        raise DomainError("need x(z_from) <= x(z_to)")
    if kind == "exp_grow" and r_to is None:
        raise UsageError("growing exponential needs a finite upper endpoint")
    f = _integrand_factory(sp, alpha, kind, shift)

    def fs(r):
        return float(f(r)[0])

    if r_to is not None:
        val, _ = quad(fs, r_from, r_to, epsabs=1e-300, epsrel=1e-9, limit=400)
        return val
    if kind == "exp_decay":
        # cut once the exponential has dropped by e^-46 from the endpoint
        r_cut = max(r_from + 1.0, 2.0)
        lam_abs = sp.modulus
        k_from = _kappa_r(r_from, sp.theta)
        while 2.0 * lam_abs * (_kappa_r(r_cut, sp.theta) - k_from) < 46.0:
            r_cut *= 1.5
            if r_cut > 1e6:
                break
        val, _ = quad(fs, r_from, r_cut, epsabs=1e-300, epsrel=1e-9, limit=400)
        return val
    # algebraic tails: substitute r = 1/u on [r_cut, inf)
    r_cut = max(10.0, 2.0 * r_from + 1.0)
    val, _ = quad(fs, r_from, r_cut, epsabs=1e-300, epsrel=1e-9, limit=400)

    def f_tail(u):
        return fs(1.0 / u) / (u * u)

    tail, _ = quad(f_tail, 0.0, 1.0 / r_cut, epsabs=1e-300, epsrel=1e-9,
                   limit=400, points=[0.0])
    return val + tail


def gamma_integral(lam, z_from, z_to, alpha: float, kind: str) -> float:
    """Unscaled envelope integral; may overflow for extreme exponents."""
    return gamma_integral_scaled(lam, z_from, z_to, alpha, kind, shift=0.0)
