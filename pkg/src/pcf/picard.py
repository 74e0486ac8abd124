"""Contour Picard solver for the perturbed Airy equation.

Solves the integral equation

    v(z) = a(z) + int_{Upsilon_phi(z)} J(z, s) V0(s, lam) v(s) ds,

where a(z) = Ai(z) exp((2/3) z^(3/2)) and the kernel

    J(z, s) = -2 pi i e^(-i pi/3) (a(z) a(s w) -
               exp((4/3)(z^(3/2) - s^(3/2))) a(z w) a(s)),  w = e^(2 pi i/3),

independently of the psi-based route.  The sum v = A_0 e^((2/3) z^(3/2))
strips the exponential from the recessive solution; the rotated solutions
come from the same core applied in a rotated frame with the potential
conjugated accordingly.  Collocation uses a single master contour whose
tails serve as the nested contours of the interior nodes, so one
iteration is a triangular matrix pass.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import domains, quasi
from .domains import _auto_T
from .errors import ContourError, ConvergenceError, DomainError
from .quasi import SpectralParameter, _lam
from .specfun import OMEGA, airy, airy_scaled, zpow

__all__ = ["PicardRun", "kernel_J", "solve_a0", "solve_a_variant",
           "KERNEL_PREFACTOR"]

# -2 pi i e^(-i pi/3); with it, J equals pi * (Ai(s) Bi(z) - Ai(z) Bi(s))
# times exp((2/3)(z^(3/2) - s^(3/2))), Bi standard (W{Ai, Bi} = 1/pi).
# That is the resolvent kernel for contours oriented from infinity toward
# the anchor; this solver walks the contour anchor-to-infinity, so the
# iteration uses the opposite orientation (_ORIENT), calibrated against
# the psi-based route.
KERNEL_PREFACTOR = -2j * math.pi * cmath.exp(-1j * math.pi / 3.0)
_ORIENT = -1.0

_OMEGA_BAR = np.conj(OMEGA)


def _g_pair(w: complex, p_w: complex) -> tuple[complex, complex]:
    """G(w) = Ai(w omega) exp(-(2/3) w^(3/2)) and G'(w) + 2 sqrt(w) G(w).

    The exponent uses the base branch w^(3/2) (not (w omega)^(3/2)), which
    is what the kernel factorization requires on every sheet; the two
    agree only for arg w <= pi/3.
    """
    w = complex(w)
    ww = w * OMEGA
    if abs(w) >= 12.0 and cmath.phase(w) <= math.pi / 3.0 + 1e-12:
        # here (w omega)^(3/2) = -w^(3/2) exactly, so the scaled pair of
        # the rotated argument is already normalized correctly
        aw, awp = airy_scaled(ww)
        aiw_scaled = awp - zpow(ww, 0.5) * aw        # Ai'(ww) e^{(2/3)q}
        g = aw
        gp = OMEGA * aiw_scaled + zpow(w, 0.5) * aw
        return g, gp
    av = airy(ww)
    e = cmath.exp(-(2.0 / 3.0) * p_w)
    g = av.ai * e
    gp = (OMEGA * av.ai_prime + zpow(w, 0.5) * av.ai) * e
    return g, gp


def kernel_J(z: complex, s: complex) -> complex:
    """Exponential-stripped Green kernel (as displayed, oriented from
    infinity toward z); J(z, z) = 0, and J = pi (Ai(s) Bi(z) - Ai(z) Bi(s))
    exp((2/3)(z^(3/2) - s^(3/2))) with the standard Bi."""
    z, s = complex(z), complex(s)
    pz, ps = zpow(z, 1.5), zpow(s, 1.5)
    az, _ = airy_scaled(z, pz)
    as_, _ = airy_scaled(s, ps)
    gz, _ = _g_pair(z, pz)
    gs, _ = _g_pair(s, ps)
    e = cmath.exp(-(4.0 / 3.0) * (ps - pz))
    return KERNEL_PREFACTOR * (az * gs - e * as_ * gz)


@dataclass(frozen=True)
class PicardRun:
    """Result of one contour Picard solve."""

    lam: SpectralParameter
    anchor_z: complex
    variant: str
    phi: float
    truncation: float
    n_nodes: int
    changes: list[float] = field(repr=False)
    converged: bool
    a_value: complex
    a_derivative: complex

    @property
    def iterations(self) -> int:
        return len(self.changes)

    @property
    def contraction_ratios(self) -> list[float]:
        return [b / a for a, b in zip(self.changes, self.changes[1:]) if a > 0]


def _phi_window(variant: str, lam: SpectralParameter, zeta0: complex,
                delta: float) -> tuple[float, float]:
    """Admissible asymptotic directions for the rotated-frame contour."""
    a = cmath.phase(zeta0)
    lo = max(-math.pi / 3.0 + delta / 3.0, a - 2.0 * math.pi / 3.0 + delta / 3.0)
    hi = min(math.pi / 3.0 - delta / 3.0, a + 2.0 * math.pi / 3.0 - delta / 3.0)
    cut = 4.0 * lam.theta / 3.0 - math.pi / 3.0
    margin = delta / 6.0
    if variant == "+":
        lo = max(lo, cut + margin)
    elif variant == "*":
        hi = min(hi, cut - margin)
    if lo > hi:
        raise ContourError(
            f"no admissible contour direction for variant {variant!r} at "
            f"anchor arg {a:.4f}")
    return lo, hi


def _asymptotic_sector_ok(variant: str, lam: SpectralParameter, z: complex,
                          delta: float, eps: float) -> bool:
    """Anchor sector of the defining asymptotics, per variant."""
    from .branched import Sector, sector_contains
    th = lam.theta
    if variant == "0":
        sec = Sector(-math.pi + 4.0 * th / 3.0 + eps, math.pi - delta / 3.0)
    elif variant == "+":
        sec = Sector(-math.pi + 4.0 * th / 3.0 + eps,
                     math.pi / 3.0 - delta / 3.0)
    elif variant == "-":
        sec = Sector(-math.pi / 3.0 + delta / 3.0,
                     math.pi + 4.0 * th / 3.0 - eps)
    elif variant == "*":
        sec = Sector(math.pi / 3.0 + delta / 3.0,
                     math.pi + 4.0 * th / 3.0 - eps)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return sector_contains(sec, z, 1e-12)


_ESTIMATE_KIND = {"0": "D0", "+": "Dplus", "-": "Dminus", "*": "Dstar"}

# cancellation budget: beyond arg zeta = pi/3 the kernel's two scaled
# parts grow like exp(-(4/3) Re zeta^(3/2)) before cancelling, and the
# iteration stops contracting once that factor swamps the potential
_DEPTH_BUDGET = 18.0


def _anchor_ok(variant: str, lam: SpectralParameter, z: complex,
               delta: float, eps: float) -> bool:
    """Anchors are accepted in the variant's estimate region or in its
    defining-asymptotics sector (the solution continues analytically
    between the two; contour admissibility is checked separately)."""
    if _asymptotic_sector_ok(variant, lam, z, delta, eps):
        return True
    try:
        spec = domains.DomainSpec(_ESTIMATE_KIND[variant], lam, delta, eps)
        return domains.in_domain(spec, z)
    except DomainError:
        return False


def _conditioning_depth(zeta0: complex) -> float:
    if abs(cmath.phase(zeta0)) <= math.pi / 3.0:
        return 0.0
    return max(0.0, -(4.0 / 3.0) * zpow(zeta0, 1.5).real)


def anchor_reachable(variant, z: complex, lam, delta: float = math.pi / 6.0
                     ) -> bool:
    """Whether solve_a_variant can handle this anchor: lambda-sector
    validity, anchor region, kernel conditioning budget, and an actual
    contour that stays inside the shifted validity region (a coarse
    trial contour is searched, which also detects homotopy blocks by the
    removed disk and its shadow)."""
    try:
        _prepare(str(getattr(variant, "value", variant)), complex(z),
                 _lam(lam), delta, n=65, T=None)
        return True
    except (DomainError, ContourError):
        return False


_ROTATIONS = {"0": 1.0 + 0.0j, "+": OMEGA, "-": _OMEGA_BAR, "*": OMEGA}


def _node_checker(sp: SpectralParameter, delta: float, eps: float,
                  back: complex):
    dz_spec = domains.DomainSpec("DZdelta", sp, delta, eps)

    def node_ok(s):
        try:
            return domains.in_domain(dz_spec, back * s)
        except DomainError:
            return False

    return node_ok


def _find_contour(variant: str, sp: SpectralParameter, zeta0: complex,
                  delta: float, n: int, T: float | None, node_ok,
                  phi: float | None = None):
    """Search the admissible directions for a contour whose nodes all
    stay inside the shifted validity region."""
    lo, hi = _phi_window(variant, sp, zeta0, delta)
    if phi is not None:
        if not lo - 1e-12 <= phi <= hi + 1e-12:
            raise ContourError(f"phi = {phi} outside [{lo:.4f}, {hi:.4f}]")
        cands = [phi]
    else:
        base = min(max(cmath.phase(zeta0), lo), hi)
        cands = [base]
        cands += [lo + (hi - lo) * f for f in (0.95, 0.65, 0.35, 0.05)]
    for phi in cands:
        # quadratic grading over the exponential support, then a geometric
        # tail out to tau ~ 1e6: the kernel's algebraically decaying part
        # (~tau^-2) still contributes visibly at tau ~ 1e2.
        T_exp = T if T is not None else _auto_T(phi)
        u = np.linspace(0.0, 1.0, n)
        grid = [T_exp * u * u]
        t_cur = T_exp
        while t_cur < 1e6:
            t_cur *= 1.12
            grid.append([t_cur])
        tau_grid = np.concatenate(grid)
        try:
            cand = domains.upsilon_contour(zeta0, phi, tau_grid=tau_grid)
        except DomainError:
            continue
        if cand.degenerate:
            continue
        if all(node_ok(s) for s in cand.nodes):
            return cand
    raise ContourError(
        f"no contour from anchor {zeta0} stays inside the validity region")


def _prepare(variant: str, z: complex, sp: SpectralParameter, delta: float,
             n: int, T: float | None, phi: float | None = None):
    """Validate a request and locate its contour.

    Returns (zeta0, rot, back, contour).
    """
    if variant not in _ROTATIONS:
        raise ValueError(f"unknown variant {variant!r}")
    if variant == "*" and sp.arg < delta - 1e-12:
        raise DomainError("variant '*' needs arg lam >= delta")
    if variant == "+" and sp.arg > math.pi - delta + 1e-12:
        raise DomainError("variant '+' needs arg lam <= pi - delta")
    eps = domains.choose_epsilon(delta)
    if not _anchor_ok(variant, sp, z, delta, eps):
        raise DomainError(
            f"anchor z = {z} outside the validity region of variant {variant!r}")
    rot = _ROTATIONS[variant]
    back = np.conj(rot)
    zeta0 = z * rot
    depth = _conditioning_depth(zeta0)
    if depth > _DEPTH_BUDGET:
        raise DomainError(
            f"anchor too deep past the rotated sheet boundary "
            f"(conditioning factor e^{depth:.1f}); use the psi route there")
    node_ok = _node_checker(sp, delta, eps, back)
    contour = _find_contour(variant, sp, zeta0, delta, n, T, node_ok, phi)
    return zeta0, rot, back, contour


def _picard_core(contour, zeta0: complex, lam: SpectralParameter,
                 variant: str, potential, tol: float,
                 max_iter: int) -> PicardRun:
    """Collocation Picard iteration on a prepared master contour."""
    s = contour.nodes
    tau_w = contour.weights
    tang = contour.tangents
    a_s = np.empty(len(s), complex)
    g_s = np.empty(len(s), complex)
    p_s = np.empty(len(s), complex)
    for k, sk in enumerate(s):
        p_s[k] = zpow(sk, 1.5)
        a_s[k], _ = airy_scaled(sk, p_s[k])
        g_s[k], _ = _g_pair(sk, p_s[k])
    if potential is None:
        v_s = np.zeros(len(s), complex)
    else:
        v_s = np.asarray(potential(s), complex)

    # subcontour trapezoid weights: row k integrates over nodes k..end
    m = len(s)
    W = np.tile(tau_w, (m, 1))
    tri = np.triu(np.ones((m, m)))
    W = W * tri
    dt = np.diff(contour.tau)
    for k in range(m - 1):
        W[k, k] = 0.5 * dt[k]
    W[m - 1, m - 1] = 0.0

    # kernel matrix J(s_k, s_j) for j >= k; Re p is nondecreasing along
    # the contour, so the exponent differences stay in the left half-plane
    dp = p_s[:, None] - p_s[None, :]
    E = np.where(tri > 0, np.exp((4.0 / 3.0) * np.where(tri > 0, dp, 0.0)), 0.0)
    J = _ORIENT * KERNEL_PREFACTOR \
        * (np.outer(a_s, g_s) - E * np.outer(g_s, a_s))
    M = W * J * (v_s * tang)[None, :]

    v = a_s.copy()
    changes: list[float] = []
    converged = False
    for _ in range(max_iter):
        v_new = a_s + M @ v
        change = float(np.max(np.abs(v_new - v)))
        changes.append(change)
        v = v_new
        if change < tol:
            converged = True
            break
    if not converged:
        raise ConvergenceError(
            f"Picard iteration did not reach tol={tol:g} in {max_iter} steps "
            f"(last change {changes[-1]:.3e})")

    # derivative at the anchor from the decomposed form
    # v = a (1 + I_G) + G(w) * PREF * I_E with the endpoint terms canceling
    a0, a0p = airy_scaled(zeta0, p_s[0])
    g0, g0p = _g_pair(zeta0, p_s[0])
    row = W[0, :] * v_s * tang * v
    i_g = _ORIENT * KERNEL_PREFACTOR * np.sum(row * g_s)
    shifted = np.exp((4.0 / 3.0) * (p_s[0] - p_s))
    i_e = _ORIENT * KERNEL_PREFACTOR * np.sum(row * a_s * shifted)
    dv = a0p * (1.0 + i_g) - g0p * i_e
    return PicardRun(lam, zeta0, variant, contour.phi,
                     float(contour.tau[-1] - contour.tau[0]), len(s),
                     changes, converged, complex(v[0]), complex(dv))


def solve_a0(z: complex, lam, delta: float = math.pi / 6.0,
             tol: float = 1e-10, max_iter: int = 50, n: int = 560,
             T: float | None = None, potential="V0") -> PicardRun:
    """Solve for a_0(z, lam) by Picard iteration on a kernel contour.

    ``potential`` is "V0" for the true residual potential, None for the
    unperturbed test hook (returns the Airy seed exactly), or a callable
    mapping an ndarray of contour nodes to potential values.
    """
    return solve_a_variant("0", z, lam, delta=delta, tol=tol,
                           max_iter=max_iter, n=n, T=T, potential=potential)


def solve_a_variant(variant, z: complex, lam, delta: float = math.pi / 6.0,
                    tol: float = 1e-10, max_iter: int = 50, n: int = 560,
                    T: float | None = None, potential="V0",
                    phi: float | None = None) -> PicardRun:
    """Solve for a_nu(z, lam), nu in {0, +, -, *}.

    The rotated solutions are computed in the frame zeta = z * rot_nu in
    which the seed is Ai(zeta); the potential transforms to
    rot * V0(rot_conj * zeta).  The anchor must lie in the variant's
    asymptotic sector and the contour must stay inside the shifted
    validity region (checked node by node; a few contour directions are
    tried before giving up).
    """
    variant = str(getattr(variant, "value", variant))
    sp = _lam(lam)
    z = complex(z)
    zeta0, rot, back, contour = _prepare(variant, z, sp, delta, n, T, phi)

    if potential == "V0":
        def pot(nodes):
            return rot * quasi.V0_along(back * np.asarray(nodes), sp)
    else:
        pot = potential

    run = _picard_core(contour, zeta0, sp, variant, pot, tol, max_iter)
    # report in the original frame: a_nu(z) = v(zeta0), da/dz = rot * dv
    return PicardRun(sp, z, variant, run.phi, run.truncation, run.n_nodes,
                     run.changes, run.converged, run.a_value,
                     complex(rot * run.a_derivative))
