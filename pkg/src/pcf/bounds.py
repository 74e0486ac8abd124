"""Envelope estimates and exact identities for the four Weber solutions.

The combinations F = psi' + psi sqrt(x^2 - lam), formed for each of the
solutions psi(+-x, lam), psi(+-ix, -lam), obey envelope bounds

    |F| <= C |phi(lam or -lam) * rho(x, lam) * exp(-+ lam xi(x/sqrt lam))|

on variant-specific z-plane regions; this module evaluates both sides
with explicit log-scaling, reconstructs the Airy-normalized solutions
A_nu from psi, and verifies their connection formulas and Wronskians.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import domains, quasi, specfun
from .errors import BranchError, DomainError, PcfError
from .quasi import SpectralParameter, _lam
from .specfun import OMEGA, zpow

__all__ = [
    "SolutionVariant",
    "EstimateRecord",
    "phi_lambda",
    "phi_lambda_reflected",
    "rho",
    "rho0",
    "sqrt_x2_minus_lambda",
    "f_expression",
    "estimate_rhs",
    "estimate_ratio",
    "estimate_sweep",
    "olver_ratio",
    "a_nu_from_psi",
    "a_nu_deriv",
    "wronskian_check",
    "connection_check_A",
    "variant_domain_kind",
]

_LOG_PHI_CONST = 0.75 * math.log(2.0) + 0.5 * math.log(math.pi)


class SolutionVariant(str, Enum):
    """The four solutions: 0 <-> psi(x, lam), + <-> psi(ix, -lam),
    - <-> psi(-ix, -lam), * <-> psi(-x, lam)."""

    ZERO = "0"
    PLUS = "+"
    MINUS = "-"
    STAR = "*"


def _variant(v) -> SolutionVariant:
    return SolutionVariant(v)


_DOMAIN_KIND = {
    SolutionVariant.ZERO: "D0",
    SolutionVariant.PLUS: "Dplus",
    SolutionVariant.MINUS: "Dminus",
    SolutionVariant.STAR: "Dstar",
}


def variant_domain_kind(variant) -> str:
    return _DOMAIN_KIND[_variant(variant)]


# ----------------------------------------------------------------------
# Scalar ingredients
# ----------------------------------------------------------------------

def phi_lambda(lam) -> complex:
    """phi(lam) = 2^(3/4) sqrt(pi) (lam / 2e)^(lam/4), principal branch."""
    lam = complex(lam if not isinstance(lam, SpectralParameter) else lam.value)
    if lam.imag == 0.0 and lam.real <= 0.0:
        raise BranchError("phi is cut along the negative reals")
    return cmath.exp(_LOG_PHI_CONST
                     + (lam / 4.0) * (cmath.log(lam) - math.log(2.0 * math.e)))


def phi_lambda_reflected(lam) -> complex:
    """phi(-lam) continued from Im lam > 0 (Log(-lam) = Log lam - i pi)."""
    lam = complex(lam if not isinstance(lam, SpectralParameter) else lam.value)
    if lam == 0:
        raise BranchError("phi is cut along the negative reals")
    log_neg = cmath.log(lam) - 1j * math.pi
    return cmath.exp(_LOG_PHI_CONST
                     + (-lam / 4.0) * (log_neg - math.log(2.0 * math.e)))


def _log_abs_phi(lam: complex) -> float:
    return _LOG_PHI_CONST + ((lam / 4.0) * (cmath.log(lam)
                                            - math.log(2.0 * math.e))).real


def _log_abs_phi_reflected(lam: complex) -> float:
    log_neg = cmath.log(lam) - 1j * math.pi
    return _LOG_PHI_CONST + ((-lam / 4.0) * (log_neg
                                             - math.log(2.0 * math.e))).real


def rho(x: float, lam) -> float:
    """(1 + |lam|^(1/2) + |x^2-lam|^(1/2)) / (1 + |lam|^(5/12) + |x^2-lam|^(5/4))."""
    lam = complex(lam if not isinstance(lam, SpectralParameter) else lam.value)
    d = abs(x * x - lam)
    al = abs(lam)
    return (1.0 + al ** 0.5 + d ** 0.5) / (1.0 + al ** (5.0 / 12.0) + d ** 1.25)


def rho0(x: float, lam) -> float:
    """1 + |lam|^(1/12) + |x^2 - lam|^(1/4)."""
    lam = complex(lam if not isinstance(lam, SpectralParameter) else lam.value)
    return 1.0 + abs(lam) ** (1.0 / 12.0) + abs(x * x - lam) ** 0.25


def sqrt_x2_minus_lambda(x: float, lam) -> complex:
    """The branch of sqrt(x^2 - lam) analytic on the positive half-line
    with argument -> 0 as x -> +infinity; lam + i0 on the real axis."""
    sp = _lam(lam)
    lv = sp.value
    x = float(x)
    if sp.theta == 0.0:
        d = x * x - lv.real
        return complex(math.sqrt(d)) if d >= 0 else -1j * math.sqrt(-d)
    return cmath.sqrt(x * x - lv)


def lam_xi(x: float, lam) -> complex:
    """lam * xi(x / sqrt(lam)) on the unwrapped sheet, x >= 0 real."""
    sp = _lam(lam)
    r = float(x) / math.sqrt(sp.modulus)
    ray = quasi.xi_ray(r, sp.theta)
    return sp.modulus * complex(ray.kappa[0], ray.v[0])


# ----------------------------------------------------------------------
# F-expressions and envelopes
# ----------------------------------------------------------------------

def _psi_values_grid(xs, lam, variant: SolutionVariant) -> list[specfun.PsiValue]:
    """The variant's psi family on a whole x grid in one integration pass."""
    lam = lam.value if isinstance(lam, SpectralParameter) else complex(lam)
    xs = [float(x) for x in xs]
    if variant is SolutionVariant.ZERO:
        return specfun.psi_grid(xs, lam)
    if variant is SolutionVariant.STAR:
        return specfun.psi_grid([-x for x in xs], lam)
    sign = +1 if variant is SolutionVariant.PLUS else -1
    return specfun.psi_rotated_grid(xs, lam, sign)


def _psi_for_variant(x: float, lam, variant: SolutionVariant) -> specfun.PsiValue:
    return _psi_values_grid([x], lam, variant)[0]


def _f_scaled_pv(pv: specfun.PsiValue, x: float, lam,
                 variant: SolutionVariant) -> tuple[complex, complex]:
    s = sqrt_x2_minus_lambda(x, lam)
    if variant in (SolutionVariant.ZERO, SolutionVariant.STAR):
        mant = pv.psi_prime_scaled + pv.psi_scaled * s
    else:
        mant = pv.psi_prime_scaled + 1j * pv.psi_scaled * s
    return mant, pv.log_scale


def _f_scaled(x: float, lam, variant: SolutionVariant) -> tuple[complex, complex]:
    """(mantissa, log_scale) with F = mantissa * exp(log_scale)."""
    pv = _psi_for_variant(x, lam, variant)
    return _f_scaled_pv(pv, x, lam, variant)


def f_expression(x: float, lam, variant) -> complex:
    """F for the chosen solution at real x >= 0 (x is the ray parameter)."""
    mant, log = _f_scaled(x, lam, _variant(variant))
    return mant * cmath.exp(log)


def _log_rhs(x: float, lam, variant: SolutionVariant) -> float:
    sp = _lam(lam)
    lv = sp.value
    lx = lam_xi(x, sp)
    lr = math.log(rho(x, sp))
    half_pi_im = 0.5 * math.pi * lv.imag
    if variant is SolutionVariant.ZERO:
        return _log_abs_phi(lv) + lr - lx.real
    if variant is SolutionVariant.PLUS:
        return _log_abs_phi_reflected(lv) + half_pi_im + lr + lx.real
    if variant is SolutionVariant.MINUS:
        return _log_abs_phi_reflected(lv) + lr - lx.real
    return _log_abs_phi(lv) + half_pi_im + lr + lx.real


def estimate_rhs(x: float, lam, variant) -> float:
    """Envelope right-hand side with unit constant."""
    return math.exp(_log_rhs(x, lam, _variant(variant)))


def estimate_ratio(x: float, lam, variant) -> float:
    """|F| / envelope, formed in log space so wide sweeps cannot overflow."""
    v = _variant(variant)
    mant, log = _f_scaled(x, lam, v)
    if mant == 0:
        return 0.0
    return math.exp(math.log(abs(mant)) + log.real - _log_rhs(x, lam, v))


@dataclass(frozen=True)
class EstimateRecord:
    """One verification sample of an envelope estimate."""

    x: float
    lam: complex
    variant: str
    lhs: float
    rhs: float
    ratio: float
    in_domain: bool
    error: str | None = None


_VARIANT_LAMBDA_OK = {
    SolutionVariant.ZERO: lambda arg, d: arg < math.pi - 1e-12,
    SolutionVariant.PLUS: lambda arg, d: arg <= math.pi - d + 1e-12,
    SolutionVariant.MINUS: lambda arg, d: True,
    SolutionVariant.STAR: lambda arg, d: arg >= d - 1e-12,
}


def _arg_lower(z: complex) -> float:
    """Principal argument with the lower side taken on the negative reals."""
    if z.imag == 0.0 and z.real < 0.0:
        return -math.pi
    return cmath.phase(z)


def display_sheet_ok(variant, z: complex) -> bool:
    """Whether the displayed envelope's exponent branch matches the
    solution's exponential multiplier at z.

    The rotated multipliers exp((2/3)(z rot)^(3/2)) coincide with
    exp(-+(2/3) z^(3/2)) only on one side of the rotated cut; on the other
    sheet the combination decays/grows with the opposite exponential and
    the literal display does not apply (its stated arcs never enter that
    sheet).
    """
    v = _variant(variant)
    a = _arg_lower(complex(z))
    if v is SolutionVariant.ZERO:
        return True
    if v is SolutionVariant.MINUS:
        return a < -math.pi / 3.0
    return a < math.pi / 3.0


def estimate_sweep(xs, lams, variant, delta: float = math.pi / 6.0
                   ) -> list[EstimateRecord]:
    """Envelope ratios over a grid, with region membership per point.

    Out-of-region points are recorded with in_domain=False rather than
    skipped; per-point failures are captured in the record's error field.
    """
    v = _variant(variant)
    xs = [float(x) for x in np.atleast_1d(xs)]
    out: list[EstimateRecord] = []
    for lam in np.atleast_1d(lams):
        sp = _lam(lam)
        lv = sp.value
        spec = None
        if _VARIANT_LAMBDA_OK[v](sp.arg, delta):
            try:
                spec = domains.DomainSpec(_DOMAIN_KIND[v], sp, delta)
            except DomainError:
                spec = None
        try:
            pvs = _psi_values_grid(xs, sp, v)
        except PcfError as exc:
            out.extend(EstimateRecord(x, lv, v.value, math.nan, math.nan,
                                      math.nan, False, str(exc)) for x in xs)
            continue
        for x, pv in zip(xs, pvs):
            try:
                mant, log = _f_scaled_pv(pv, x, sp, v)
                lr = _log_rhs(x, sp, v)
                lhs = abs(mant) * math.exp(min(log.real, 700.0))
                rhs = math.exp(min(lr, 700.0))
                ratio = (math.exp(math.log(abs(mant)) + log.real - lr)
                         if mant != 0 else 0.0)
            except PcfError as exc:
                out.append(EstimateRecord(x, lv, v.value, math.nan, math.nan,
                                          math.nan, False, str(exc)))
                continue
            ind = False
            note = None
            if spec is not None:
                try:
                    z = quasi.z_of_x(x, sp)
                    ind = z != 0 and display_sheet_ok(v, z) \
                        and domains.in_domain(spec, z)
                except PcfError as exc:
                    note = str(exc)
            out.append(EstimateRecord(x, lv, v.value, lhs, rhs, ratio, ind,
                                      note))
    return out


def _olver_from_pv(pv: specfun.PsiValue, x: float, sp: SpectralParameter
                   ) -> tuple[float, float]:
    lx = lam_xi(x, sp)
    r0 = rho0(x, sp)
    base = _log_abs_phi(sp.value) - lx.real
    r1 = 0.0 if pv.psi_scaled == 0 else math.exp(
        math.log(abs(pv.psi_scaled)) + pv.log_scale.real + math.log(r0) - base)
    r2 = 0.0 if pv.psi_prime_scaled == 0 else math.exp(
        math.log(abs(pv.psi_prime_scaled)) + pv.log_scale.real
        - math.log(r0) - base)
    return r1, r2


def olver_ratio(x: float, lam) -> tuple[float, float]:
    """The two classical envelope ratios |psi| rho0 / |phi e^(-lam xi)|
    and |psi'| / (rho0 |phi e^(-lam xi)|); valid for every real x."""
    sp = _lam(lam)
    pv = specfun.psi(float(x), sp.value)
    return _olver_from_pv(pv, float(x), sp)


def olver_sweep(xs, lams) -> list[tuple[float, complex, float, float]]:
    """Both classical ratios over a grid, one integration pass per lam."""
    out = []
    xs = [float(x) for x in np.atleast_1d(xs)]
    for lam in np.atleast_1d(lams):
        sp = _lam(lam)
        pvs = specfun.psi_grid(xs, sp.value)
        for x, pv in zip(xs, pvs):
            r1, r2 = _olver_from_pv(pv, x, sp)
            out.append((x, sp.value, r1, r2))
    return out


# ----------------------------------------------------------------------
# The Airy-normalized solutions reconstructed from psi
# ----------------------------------------------------------------------

_ROT = {
    SolutionVariant.ZERO: 1.0 + 0.0j,
    SolutionVariant.PLUS: OMEGA,
    SolutionVariant.MINUS: np.conj(OMEGA),
    SolutionVariant.STAR: OMEGA,
}


def _check_variant_lambda(v: SolutionVariant, sp: SpectralParameter,
                          delta: float):
    if not _VARIANT_LAMBDA_OK[v](sp.arg, delta):
        raise DomainError(
            f"variant {v.value!r} not defined for arg lam = {sp.arg:.4f}")


def _a_prefactor(v: SolutionVariant, lam: complex) -> complex:
    """Multiplier c with A_nu = c * psi_nu(x) * sqrt(z'(x))."""
    if v is SolutionVariant.ZERO:
        return 1.0 / phi_lambda(lam)
    if v is SolutionVariant.PLUS:
        return phi_lambda(lam) * cmath.exp(1j * math.pi / 12.0
                                           + 1j * math.pi * lam / 4.0) \
            / (2.0 ** 1.5 * math.pi)
    if v is SolutionVariant.MINUS:
        return phi_lambda(lam) * cmath.exp(-1j * math.pi / 12.0
                                           - 1j * math.pi * lam / 4.0) \
            / (2.0 ** 1.5 * math.pi)
    return cmath.exp(-1j * math.pi / 6.0 + 1j * math.pi * lam / 2.0) \
        / phi_lambda(lam)


class _VariantEvaluator:
    """(a_nu, A_nu) near one probe, continued from a single on-ray base.

    All four solutions are Weber solutions in a real ray parameter s (s
    is x for variants 0/+/-, and -x for *); one base integration anchors
    the family and short straight segments reach nearby complex
    pullbacks, which makes Cauchy circles cheap.
    """

    def __init__(self, lam, v: SolutionVariant, x_anchor: float):
        self.sp = _lam(lam)
        self.lv = self.sp.value
        self.v = v
        self.pref = _a_prefactor(v, self.lv)
        if v is SolutionVariant.ZERO:
            pv = specfun.psi(x_anchor, self.lv)
            self._s0, dy = x_anchor, pv.psi_prime_scaled
        elif v is SolutionVariant.STAR:
            pv = specfun.psi(-x_anchor, self.lv)
            self._s0, dy = -x_anchor, pv.psi_prime_scaled
        else:
            sign = +1 if v is SolutionVariant.PLUS else -1
            pv = specfun.psi_rotated(x_anchor, self.lv, sign)
            self._s0, dy = x_anchor, sign * 1j * pv.psi_prime_scaled
        self._y, self._dy, self._log = pv.psi_scaled, dy, pv.log_scale
        self._t_seed: complex | None = None

    def _s_target(self, xc: complex) -> complex:
        return -xc if self.v is SolutionVariant.STAR else xc

    def at_x(self, xc: complex) -> tuple[complex, complex]:
        """(a_nu, A_nu) at z = z_lam(xc)."""
        z = quasi.z_of_x(xc, self.sp)
        zp = quasi.dz_dx(xc, self.sp)
        sq = cmath.sqrt(zp)
        y, _, log = specfun.weber_continue(self.lv, self._s0, self._y,
                                           self._dy, self._log,
                                           self._s_target(xc))
        expo = (2.0 / 3.0) * zpow(z * _ROT[self.v], 1.5)
        mant = self.pref * y * sq
        return mant * cmath.exp(log + expo), mant * cmath.exp(log)

    def at_z(self, zz: complex) -> tuple[complex, complex]:
        eta_t = complex(zz) / self.sp.power(2.0 / 3.0)
        t = quasi.t_of_eta(eta_t, t_seed=self._t_seed)
        self._t_seed = t
        return self.at_x(self.sp.sqrt * t)


def _a_values_at(xc: complex, lam, v: SolutionVariant
                 ) -> tuple[complex, complex]:
    """(a_nu, A_nu) at z = z_lam(xc); xc may sit slightly off the axis."""
    ev = _VariantEvaluator(lam, v, float(xc.real if isinstance(xc, complex)
                                         else xc))
    return ev.at_x(complex(xc))


def a_nu_from_psi(x: float, lam, variant, delta: float = math.pi / 6.0
                  ) -> tuple[complex, complex]:
    """Invert the identification of A_nu with the psi family.

    Returns (a_nu, A_nu) at z = z_lam(x): A_nu is the solution of the
    perturbed Airy equation asymptotic to its Airy seed, and a_nu strips
    the exponential, a_nu = A_nu * exp((2/3) (z rot_nu)^(3/2)).
    """
    v = _variant(variant)
    sp = _lam(lam)
    _check_variant_lambda(v, sp, delta)
    return _a_values_at(float(x), sp, v)


def a_nu_deriv(z: complex, lam, variant, delta: float = math.pi / 6.0,
               n_nodes: int = 16) -> complex:
    """d a_nu / dz at a point of the z plane, by a Cauchy circle.

    The radius 0.1 (1+|z|)^(-1/2) keeps the circle inside the validity
    region for on-curve probes; each circle node is pulled back through
    the coordinate map and evaluated via the psi route.
    """
    v = _variant(variant)
    sp = _lam(lam)
    _check_variant_lambda(v, sp, delta)
    z = complex(z)
    ev = _VariantEvaluator(sp, v, quasi.x_of_z(z, sp).real)
    radius = 0.1 * (1.0 + abs(z)) ** -0.5
    thetas = 2.0 * math.pi * np.arange(n_nodes) / n_nodes
    acc = 0.0 + 0.0j
    for th in thetas:
        a_val, _ = ev.at_z(z + radius * cmath.exp(1j * th))
        acc += a_val * cmath.exp(-1j * th)
    return acc / (n_nodes * radius)


def _big_a_deriv(z: complex, lam, v: SolutionVariant,
                 n_nodes: int = 16) -> tuple[complex, complex]:
    """(A_nu(z), dA_nu/dz) by a Cauchy circle through the psi route."""
    sp = _lam(lam)
    z = complex(z)
    ev = _VariantEvaluator(sp, v, quasi.x_of_z(z, sp).real)
    radius = 0.1 * (1.0 + abs(z)) ** -0.5
    thetas = 2.0 * math.pi * np.arange(n_nodes) / n_nodes
    acc = 0.0 + 0.0j
    for th in thetas:
        _, big = ev.at_z(z + radius * cmath.exp(1j * th))
        acc += big * cmath.exp(-1j * th)
    _, big0 = ev.at_z(z)
    return big0, acc / (n_nodes * radius)


def _gamma_factor(lam: complex) -> complex:
    """2 sqrt(pi) Gamma((lam+1)/2) / phi(lam)^2."""
    return 2.0 * math.sqrt(math.pi) \
        * specfun.gamma_complex((lam + 1.0) / 2.0) / phi_lambda(lam) ** 2


def wronskian_check(lam, probe_z: complex, delta: float = math.pi / 6.0
                    ) -> dict[str, tuple[complex, complex, float]]:
    """All pairwise Wronskians W{f, g} = f g' - f' g of the A_nu family
    against their closed forms, at one probe point.

    Returns name -> (computed, expected, relative residual).
    """
    sp = _lam(lam)
    if not 0.0 < sp.arg < math.pi:
        raise DomainError("Wronskian table needs 0 < arg lam < pi")
    lv = sp.value
    vals = {}
    for v in SolutionVariant:
        vals[v] = _big_a_deriv(probe_z, sp, v)
    g = _gamma_factor(lv)

    def w(u, v):
        (fu, du), (fv, dv) = vals[u], vals[v]
        return fu * dv - du * fv

    expected = {
        "W(A0,A+)": cmath.exp(-1j * math.pi / 6.0) / (2.0 * math.pi),
        "W(A0,A-)": cmath.exp(1j * math.pi / 6.0) / (2.0 * math.pi),
        "W(A*,A+)": -cmath.exp(1j * math.pi / 6.0)
                    * cmath.exp(1j * math.pi * lv) / (2.0 * math.pi),
        "W(A*,A-)": cmath.exp(1j * math.pi / 2.0) / (2.0 * math.pi),
        "W(A0,A*)": cmath.exp(-1j * math.pi / 6.0) / math.pi
                    * cmath.exp(1j * math.pi * lv / 2.0)
                    * cmath.cos(math.pi * lv / 2.0) * g,
        "W(A-,A+)": cmath.exp(-1j * math.pi / 2.0) / (2.0 * math.pi) / g,
    }
    computed = {
        "W(A0,A+)": w(SolutionVariant.ZERO, SolutionVariant.PLUS),
        "W(A0,A-)": w(SolutionVariant.ZERO, SolutionVariant.MINUS),
        "W(A*,A+)": w(SolutionVariant.STAR, SolutionVariant.PLUS),
        "W(A*,A-)": w(SolutionVariant.STAR, SolutionVariant.MINUS),
        "W(A0,A*)": w(SolutionVariant.ZERO, SolutionVariant.STAR),
        "W(A-,A+)": w(SolutionVariant.MINUS, SolutionVariant.PLUS),
    }
    return {k: (computed[k], expected[k],
                abs(computed[k] - expected[k]) / abs(expected[k]))
            for k in expected}


def connection_check_A(lam, probe_z: complex, delta: float = math.pi / 6.0
                       ) -> dict[str, float]:
    """Relative residuals of the four linear relations among the A_nu,
    evaluated through the psi route at one probe point (Im lam > 0)."""
    sp = _lam(lam)
    if not 0.0 < sp.arg < math.pi:
        raise DomainError("connection table needs 0 < arg lam < pi")
    lv = sp.value
    x = quasi.x_of_z(probe_z, sp)
    a = {v: _a_values_at(x, sp, v)[1] for v in SolutionVariant}
    g = _gamma_factor(lv)
    e = cmath.exp
    pi = math.pi
    c = 2.0 * cmath.cos(pi * lv / 2.0)
    rels = {
        "A0": (a[SolutionVariant.ZERO],
               g * (e(-1j * pi / 3) * a[SolutionVariant.PLUS]
                    + e(1j * pi / 3) * a[SolutionVariant.MINUS])),
        "A+": (a[SolutionVariant.PLUS],
               e(-1j * pi * lv / 2) / c / g
               * (e(1j * pi * lv) * e(1j * pi / 3) * a[SolutionVariant.ZERO]
                  + a[SolutionVariant.STAR])),
        "A-": (a[SolutionVariant.MINUS],
               e(-1j * pi * lv / 2) / c / g
               * (e(1j * pi / 3) * a[SolutionVariant.STAR]
                  + e(-1j * pi / 3) * a[SolutionVariant.ZERO])),
        "A*": (a[SolutionVariant.STAR],
               g * (e(1j * pi * lv) * e(-1j * pi / 3)
                    * a[SolutionVariant.MINUS] + a[SolutionVariant.PLUS])),
    }
    out = {}
    for name, (lhs, rhs) in rels.items():
        scale = max(abs(lhs), abs(rhs))
        out[name] = abs(lhs - rhs) / scale if scale > 0 else 0.0
    return out
