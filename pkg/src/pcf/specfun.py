"""Reference evaluators: complex Airy functions, complex Gamma, and the
recessive Weber solution psi(x, lam) with its derivative.

psi is the solution of

    -y''(x) + x^2 y(x) = lam y(x)

fixed by y ~ (x sqrt2)^((lam-1)/2) exp(-x^2/2) as x -> +infinity.  It is
evaluated by seeding (psi, psi') far out on the decaying side from the
asymptotic series and integrating the ODE inward; integrating toward the
growing directions (negative x, the imaginary axis) is stable as well
because the target solution dominates there.  All values carry an explicit
complex log-scale so that nothing over- or underflows on wide sweeps.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sp
from scipy.integrate import solve_ivp

from .errors import ConvergenceError, DomainError, PoleError

__all__ = [
    "AiryValue",
    "PsiValue",
    "airy",
    "airy_bi",
    "airy_scaled",
    "gamma_complex",
    "psi",
    "psi_grid",
    "psi_rotated",
    "psi_rotated_grid",
    "psi_zero",
    "psi_complex",
    "OMEGA",
]

OMEGA = cmath.exp(2j * math.pi / 3)


# ----------------------------------------------------------------------
# Airy and Gamma
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class AiryValue:
    ai: complex
    ai_prime: complex


def airy(z: complex) -> AiryValue:
    """Ai(z) and Ai'(z) for complex z (amos backend, ~1e-13 relative)."""
    a, ap, _, _ = sp.airy(complex(z))
    return AiryValue(complex(a), complex(ap))


def airy_bi(z: complex) -> tuple[complex, complex]:
    """Bi(z) and Bi'(z) built as i*(2 exp(-i pi/3) Ai(omega z) - Ai(z)).

    The combination is used verbatim (rather than a separate backend call)
    so that downstream identities relying on it hold bit-for-bit.
    """
    z = complex(z)
    a = airy(z)
    aw = airy(OMEGA * z)
    c = 2.0 * cmath.exp(-1j * math.pi / 3)
    bi = 1j * (c * aw.ai - a.ai)
    bip = 1j * (c * OMEGA * aw.ai_prime - a.ai_prime)
    return bi, bip


def _airy_scaled_coeffs(n: int = 18):
    c = [1.0]
    for k in range(n - 1):
        c.append(c[-1] * (3 * k + 2.5) * (3 * k + 1.5) * (3 * k + 0.5)
                 / (54.0 * (k + 1) * (k + 0.5)))
    return np.array(c)


_ASY_C = _airy_scaled_coeffs()
# a'(z) series coefficients: (c_k - d_k) with d_k = -c_k (6k+1)/(6k-1)
_ASY_CP = _ASY_C * np.array([0.0] + [12.0 * k / (6.0 * k - 1.0)
                                     for k in range(1, len(_ASY_C))])


def airy_scaled(z: complex, z32: complex | None = None) -> tuple[complex, complex]:
    """a(z) = Ai(z) exp((2/3) z^(3/2)) and its derivative a'(z).

    ``z32`` optionally supplies the branched value of z^(3/2); default is
    the principal power with the lower side taken on the negative reals.
    Large moduli away from the negative half-line are summed directly
    from the scaled asymptotic series, which never over- or underflows.
    """
    z = complex(z)
    if z32 is None:
        z32 = zpow(z, 1.5)
    if abs(z) >= 12.0 and abs(cmath.phase(z)) <= math.pi - 0.05:
        zeta = (2.0 / 3.0) * z ** 1.5
        inv = 1.0 / zeta
        powers = inv ** np.arange(len(_ASY_C))
        signs = (-1.0) ** np.arange(len(_ASY_C))
        s_a = np.sum(signs * _ASY_C * powers)
        s_ap = np.sum(signs * _ASY_CP * powers)
        pref = 1.0 / (2.0 * math.sqrt(math.pi))
        za = z ** -0.25
        return pref * za * s_a, pref * (z ** 0.25) * s_ap
    av = airy(z)
    e = cmath.exp((2.0 / 3.0) * z32)
    sq = zpow(z, 0.5)
    return av.ai * e, (av.ai_prime + sq * av.ai) * e


def zpow(z: complex, p: float) -> complex:
    """Principal z**p with the lower side of the cut taken for z < 0."""
    z = complex(z)
    if z == 0:
        return 0.0 + 0.0j
    if z.imag == 0.0 and z.real < 0.0:
        return cmath.exp(p * (math.log(-z.real) - 1j * math.pi))
    return cmath.exp(p * cmath.log(z))


def gamma_complex(w: complex) -> complex:
    """Gamma(w) for complex w, rejecting the poles at 0, -1, -2, ..."""
    w = complex(w)
    if w.imag == 0.0 and w.real <= 0.0 and abs(w.real - round(w.real)) < 1e-14:
        raise PoleError(f"Gamma pole at w = {w.real:g}")
    return complex(sp.gamma(w))


# ----------------------------------------------------------------------
# The Weber/parabolic-cylinder oracle
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PsiValue:
    """One evaluation of psi: scaled value, derivative and log-scale.

    The true values are ``psi_scaled * exp(log_scale)`` and
    ``psi_prime_scaled * exp(log_scale)``; the properties materialize them
    (which may overflow to inf for extreme arguments, by design).
    """

    psi_scaled: complex
    psi_prime_scaled: complex
    log_scale: complex
    x: complex
    lam: complex

    @property
    def psi(self) -> complex:
        return self.psi_scaled * cmath.exp(self.log_scale)

    @property
    def psi_prime(self) -> complex:
        return self.psi_prime_scaled * cmath.exp(self.log_scale)

    @property
    def log_abs(self) -> float:
        return math.log(abs(self.psi_scaled)) + self.log_scale.real \
            if self.psi_scaled != 0 else -math.inf


def _seed_far(x: float, lam: complex) -> tuple[complex, complex, complex]:
    """Asymptotic seed (S, S', L): psi = S exp(L) at large positive x.

    Sums the recessive series adaptively; raises if it cannot reach
    ~1e-12 before the asymptotic terms turn around.
    """
    lam = complex(lam)
    a = -lam / 2.0
    z2 = 2.0 * x * x
    S = 1.0 + 0.0j
    dS = 0.0 + 0.0j
    poch = 1.0 + 0.0j
    term = 1.0 + 0.0j
    prev = 1.0
    ok = False
    for s in range(1, 80):
        poch *= ((0.5 + a) + (2 * s - 2)) * ((0.5 + a) + (2 * s - 1))
        term = (-1) ** s * poch / (math.factorial(s) * (2.0 * z2) ** s)
        mag = abs(term)
        if mag > prev and s > 2:
            break
        S += term
        dS += term * (-2.0 * s) / x
        prev = mag
        if mag < 1e-13 * abs(S):
            ok = True
            break
    if not ok:
        raise ConvergenceError(
            f"asymptotic seed did not converge at x = {x:g} for lam = {lam}")
    L = ((lam - 1.0) / 2.0) * cmath.log(x * math.sqrt(2.0)) - x * x / 2.0
    gp = (lam - 1.0) / (2.0 * x) - x
    return S, S * gp + dS, L


def _pick_x_far(lam: complex, x_need: float) -> float:
    x_far = max(8.0, 3.0 * math.sqrt(abs(lam)), 1.05 * x_need + 1.0)
    for _ in range(8):
        try:
            _seed_far(x_far, lam)
            return x_far
        except ConvergenceError:
            x_far *= 1.3
    raise ConvergenceError(f"no usable seed radius for lam = {lam}")


def _march(lam: complex, t0: float, t1: float, y: np.ndarray, log0: complex,
           targets: np.ndarray, direction_scale: complex = 1.0,
           rtol: float = 1e-11):
    """Integrate y'' = ((s*d)^2 - lam) d^2 y from t0 to t1 along a real
    parameter, renormalizing in chunks; collect states at ``targets``.

    ``direction_scale`` d maps the parameter to the complex line x = s*d
    (d=1: real axis).  Returns (values, derivs, logs) at targets plus the
    final state.  Derivatives are with respect to the parameter s.
    """
    d = complex(direction_scale)
    d2 = d * d

    def rhs(s, yv):
        f = ((s * d) ** 2 - lam) * d2
        return [yv[1], f * yv[0]]

    sign = 1.0 if t1 >= t0 else -1.0
    targets = np.asarray(targets, dtype=float)
    order = np.argsort(sign * targets)
    out_v = np.zeros(len(targets), complex)
    out_d = np.zeros(len(targets), complex)
    out_l = np.zeros(len(targets), complex)
    cur = t0
    log = complex(log0)
    for idx in order:
        tt = targets[idx]
        while sign * (tt - cur) > 1e-13:
            # keep per-chunk growth bounded so the state stays O(1)
            rate = max(1.0, abs(cur) + abs(tt), math.sqrt(abs(lam)))
            step = min(sign * (tt - cur), 30.0 / rate)
            sol = solve_ivp(rhs, (cur, cur + sign * step), y, method="DOP853",
                            rtol=rtol, atol=1e-14, dense_output=False)
            if not sol.success:
                raise ConvergenceError(f"ODE integration failed: {sol.message}")
            y = sol.y[:, -1].astype(complex)
            cur = float(sol.t[-1])
            m = max(abs(y[0]), abs(y[1]))
            if m > 0.0 and (m > 1e6 or m < 1e-6):
                y = y / m
                log += math.log(m)
        out_v[idx] = y[0]
        out_d[idx] = y[1]
        out_l[idx] = log
    return out_v, out_d, out_l, y, cur, log


def psi_grid(xs, lam) -> list[PsiValue]:
    """psi at many real x in one inward integration pass."""
    lam = complex(lam)
    if abs(lam) < 0.5:
        raise DomainError("|lam| >= 1/2 required")
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    x_far = _pick_x_far(lam, float(np.max(np.abs(xs))) if xs.size else 0.0)
    S, Sp, L = _seed_far(x_far, lam)
    y0 = np.array([S, Sp], complex)
    vals, ders, logs, *_ = _march(lam, x_far, float(np.min(xs)), y0, L, xs)
    return [PsiValue(complex(v), complex(dv), complex(lg), float(x), lam)
            for v, dv, lg, x in zip(vals, ders, logs, xs)]


def psi(x: float, lam: complex) -> PsiValue:
    """psi(x, lam) and d/dx psi at real x (either sign)."""
    return psi_grid([float(x)], lam)[0]


def psi_zero(lam: complex) -> tuple[complex, complex]:
    """Closed forms for psi(0, lam) and psi'(0, lam) (Gamma quotients)."""
    lam = complex(lam)
    v = math.sqrt(math.pi) * 2.0 ** ((lam - 1.0) / 4.0) * sp.rgamma((3.0 - lam) / 4.0)
    d = -math.sqrt(math.pi) * 2.0 ** ((lam + 3.0) / 4.0) * sp.rgamma((1.0 - lam) / 4.0)
    return complex(v), complex(d)


def psi_rotated_grid(xs, lam, sign: int) -> list[PsiValue]:
    """psi(sign*i*x, -lam) for many real x >= 0 in one outward pass.

    Solves g(s) = psi(sign*i*s, -lam), which satisfies the same Weber
    equation -g'' + s^2 g = lam g, seeded at s = 0 by the closed forms.
    The returned PsiValue holds psi and the derivative with respect to the
    *first argument* of psi (not the ray parameter).
    """
    lam = complex(lam)
    if abs(lam) < 0.5:
        raise DomainError("|lam| >= 1/2 required")
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    if np.any(xs < 0):
        raise DomainError("ray parameter must be >= 0")
    v0, d0 = psi_zero(-lam)
    y0 = np.array([v0, sign * 1j * d0], complex)
    vals, ders, logs, *_ = _march(lam, 0.0, float(np.max(xs)), y0, 0.0, xs)
    out = []
    for v, dv, lg, x in zip(vals, ders, logs, xs):
        # g'(s) = sign*i * psi'(arg); invert the chain rule
        psip = dv / (sign * 1j)
        out.append(PsiValue(complex(v), complex(psip), complex(lg),
                            sign * 1j * float(x), -lam))
    return out


def psi_rotated(x: float, lam: complex, sign: int) -> PsiValue:
    return psi_rotated_grid([float(x)], lam, sign)[0]


def weber_continue(lam: complex, s0: complex, y0: complex, dy0: complex,
                   log0: complex, s1: complex) -> tuple[complex, complex, complex]:
    """Continue a Weber solution y'' = (s^2 - lam) y along the straight
    segment s0 -> s1; returns (y, dy/ds, log_scale) at s1.

    Used for short analytic continuations off a ray (Cauchy circles).
    """
    lam = complex(lam)
    d = complex(s1) - complex(s0)
    if d == 0:
        return y0, dy0, log0
    y = np.array([y0, dy0 * d], complex)

    def rhs(u, yv):
        ss = s0 + u * d
        return [yv[1], (ss * ss - lam) * d * d * yv[0]]

    sol = solve_ivp(rhs, (0.0, 1.0), y, method="DOP853", rtol=1e-11,
                    atol=1e-14)
    if not sol.success:
        raise ConvergenceError(f"segment continuation failed: {sol.message}")
    return complex(sol.y[0, -1]), complex(sol.y[1, -1] / d), complex(log0)


def psi_complex(x: complex, lam: complex, variant: str = "0") -> PsiValue:
    """psi at complex argument reached from one of the four rays.

    ``variant`` names the ray the continuation starts from: "0"/"*" anchor
    on the real axis at Re(x'), "+"/"-" anchor on the imaginary axis; in
    the rotated variants the function evaluated is psi(+-i x, -lam) as a
    function of x, matching psi_rotated.  Used for Cauchy differentiation
    circles around on-ray probes.
    """
    x = complex(x)
    lam = complex(lam)
    if variant in ("0", "*"):
        base = psi(x.real, lam)
        if x.imag == 0.0:
            return base
        d = 1j * x.imag
        y0 = np.array([base.psi_scaled, base.psi_prime_scaled * d], complex)

        def rhs(u, yv):
            xx = x.real + u * d
            return [yv[1], (xx * xx - lam) * d * d * yv[0]]

        sol = solve_ivp(rhs, (0.0, 1.0), y0, method="DOP853", rtol=1e-11,
                        atol=1e-14)
        if not sol.success:
            raise ConvergenceError(f"segment continuation failed: {sol.message}")
        return PsiValue(complex(sol.y[0, -1]), complex(sol.y[1, -1] / d),
                        base.log_scale, x, lam)
    if variant not in ("+", "-"):
        raise ValueError(f"unknown variant {variant!r}")
    sign = +1 if variant == "+" else -1
    base = psi_rotated(x.real, lam, sign)
    if x.imag == 0.0:
        return base
    # g(s) = psi(sign*i*s, -lam) continued to complex s = x
    d = 1j * x.imag
    g0 = base.psi_scaled
    gp0 = base.psi_prime_scaled * (sign * 1j)   # back to d/ds
    y0 = np.array([g0, gp0 * d], complex)

    def rhs(u, yv):
        ss = x.real + u * d
        return [yv[1], (ss * ss - lam) * d * d * yv[0]]

    sol = solve_ivp(rhs, (0.0, 1.0), y0, method="DOP853", rtol=1e-11, atol=1e-14)
    if not sol.success:
        raise ConvergenceError(f"segment continuation failed: {sol.message}")
    g = complex(sol.y[0, -1])
    gp = complex(sol.y[1, -1] / d)
    return PsiValue(g, gp / (sign * 1j), base.log_scale, sign * 1j * x, -lam)
