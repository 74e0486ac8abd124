"""Validity regions in the z plane and the kernel-estimate contour family.

The singular point z_E(lam) = lam^(2/3) * ETA_E is removed together with a
small disk and the disk's radial shadow; the remaining regions used by the
derivative estimates are intersections of sectors with half-plane-like
sets bounded by level curves Im(z e^(i alpha))^(3/2) = const that are
tangent to the removed disk.  The curves Upsilon_phi(z) along which the
perturbed-Airy kernels are integrated are level curves of the same family
through z, asymptotic to the ray arg s = phi.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .branched import Sector, sector_contains
from .errors import DomainError
from .quasi import ETA_E, SpectralParameter, _lam

__all__ = [
    "DomainSpec",
    "UpsilonContour",
    "z_E_point",
    "z0_point",
    "b_eps_disk",
    "w_tangent",
    "level_value",
    "in_domain",
    "upsilon_contour",
    "choose_phi",
    "choose_epsilon",
    "DOMAIN_KINDS",
]

DOMAIN_KINDS = ("DZ", "DZdelta", "H_plus", "H_minus",
                "D0", "Dplus", "Dminus", "Dstar")

_TWO_THIRDS = 2.0 / 3.0


def z_E_point(lam) -> complex:
    """Image of x = -sqrt(lam): lam^(2/3) * ETA_E."""
    sp = _lam(lam)
    return sp.power(_TWO_THIRDS) * ETA_E


def z0_point(lam) -> complex:
    """Image of x = 0: -lam^(2/3) (3 pi / 8)^(2/3)."""
    sp = _lam(lam)
    return sp.power(_TWO_THIRDS) * -(3.0 * math.pi / 8.0) ** _TWO_THIRDS


def b_eps_disk(lam, epsilon: float) -> tuple[complex, float]:
    """Removed disk around the singular point: (center, radius)."""
    zE = z_E_point(lam)
    return zE, abs(zE) * math.sin(epsilon)


def level_value(z: complex, alpha: float) -> float:
    """Im (z e^(i alpha))^(3/2), principal power."""
    w = complex(z) * cmath.exp(1j * alpha)
    return (w ** 1.5).imag


def w_tangent(lam, sign: int, delta: float, epsilon: float | None = None) -> complex:
    """Tangency point of the level family with the removed disk.

    Maximizes Im(z e^(i(pi/3 -+ delta/3)))^(3/2) over the boundary circle;
    sign=+1 needs arg lam in [delta, pi], sign=-1 arg lam in [0, pi-delta].
    Ties are broken toward the smallest circle angle.
    """
    sp = _lam(lam)
    if sign == +1:
        if not (delta - 1e-12 <= sp.arg <= math.pi + 1e-12):
            raise DomainError("sign=+1 requires arg lam in [delta, pi]")
        alpha = math.pi / 3.0 - delta / 3.0
    elif sign == -1:
        if not (-1e-12 <= sp.arg <= math.pi - delta + 1e-12):
            raise DomainError("sign=-1 requires arg lam in [0, pi-delta]")
        alpha = math.pi / 3.0 + delta / 3.0
    else:
        raise ValueError("sign must be +1 or -1")
    if epsilon is None:
        epsilon = choose_epsilon(delta)
    center, radius = b_eps_disk(sp, epsilon)
    taus = np.linspace(0.0, 2.0 * math.pi, 257)[:-1]
    vals = np.array([level_value(center + radius * cmath.exp(1j * t), alpha)
                     for t in taus])
    k = int(np.argmax(vals))
    lo, hi = taus[k] - taus[1], taus[k] + taus[1]
    gr = 0.5 * (math.sqrt(5.0) - 1.0)

    def f(t):
        return level_value(center + radius * cmath.exp(1j * t), alpha)

    a, b = lo, hi
    c, d = b - gr * (b - a), a + gr * (b - a)
    fc, fd = f(c), f(d)
    while b - a > 1e-12:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - gr * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + gr * (b - a)
            fd = f(d)
    t_best = 0.5 * (a + b)
    return center + radius * cmath.exp(1j * t_best)


@lru_cache(maxsize=32)
def choose_epsilon(delta: float) -> float:
    """Disk half-angle for a given delta.

    Starts at delta/6 and halves until the tangency level at w_(+delta)
    does not exceed the level of z0 for a probe grid of spectral
    parameters with arg lam in [delta, pi].
    """
    if not 0.0 < delta < math.pi / 5.0:
        raise DomainError("delta must lie in (0, pi/5)")
    eps = delta / 6.0
    moduli = (0.5, 1.0, 4.0, 16.0, 64.0, 256.0)
    args = np.linspace(delta, math.pi, 13)
    alpha = math.pi / 3.0 - delta / 3.0
    for _ in range(20):
        ok = True
        for m in moduli:
            for a in args:
                sp = SpectralParameter(m, a / 2.0)
                w = w_tangent(sp, +1, delta, epsilon=eps)
                if level_value(w, alpha) > level_value(z0_point(sp), alpha) + 1e-12:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return eps
        eps *= 0.5
    raise DomainError(f"no admissible epsilon found for delta = {delta}")


# ----------------------------------------------------------------------
# Region membership
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class DomainSpec:
    """One of the named validity regions, frozen with its levels.

    Level thresholds for the half-plane-like parts are computed at
    construction so membership tests are pure lookups.
    """

    kind: str
    lam: SpectralParameter
    delta: float = math.pi / 6.0
    epsilon: float | None = None
    _levels: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in DOMAIN_KINDS:
            raise DomainError(f"unknown region kind {self.kind!r}")
        if not 0.0 < self.delta < math.pi / 5.0:
            raise DomainError("delta must lie in (0, pi/5)")
        sp = _lam(self.lam)
        object.__setattr__(self, "lam", sp)
        eps = self.epsilon if self.epsilon is not None else choose_epsilon(self.delta)
        if not 0.0 < eps < self.delta / 3.0:
            raise DomainError("epsilon must lie in (0, delta/3)")
        object.__setattr__(self, "epsilon", eps)
        d = self.delta
        if self.kind in ("H_plus", "Dstar"):
            if sp.arg < d - 1e-12:
                raise DomainError(f"{self.kind} needs arg lam >= delta")
            w = w_tangent(sp, +1, d, epsilon=eps)
            self._levels["plus"] = level_value(w, math.pi / 3.0 - d / 3.0)
        if self.kind in ("H_minus", "Dplus"):
            if sp.arg > math.pi - d + 1e-12:
                raise DomainError(f"{self.kind} needs arg lam <= pi - delta")
            w = w_tangent(sp, -1, d, epsilon=eps)
            self._levels["minus"] = level_value(w, math.pi / 3.0 + d / 3.0)


def _in_dz(sp: SpectralParameter, z: complex, tol: float) -> bool:
    eta_val = z / sp.power(_TWO_THIRDS)
    return not (abs(eta_val.imag) <= tol and eta_val.real <= ETA_E + tol)


def _in_dz_delta(spec: DomainSpec, z: complex, tol: float) -> bool:
    sp = spec.lam
    zE, radius = b_eps_disk(sp, spec.epsilon)
    if abs(z - zE) <= radius + tol:
        return False
    darg = (cmath.phase(z) - cmath.phase(zE) + math.pi) % (2.0 * math.pi) - math.pi
    if abs(darg) <= spec.epsilon + tol and abs(z) >= abs(zE) * math.cos(spec.epsilon) - tol:
        return False
    return True


def _in_h(spec: DomainSpec, z: complex, sign: int, tol: float) -> bool:
    d = spec.delta
    if sign == +1:
        sec = Sector(-math.pi + d / 3.0, -math.pi / 3.0 + d / 3.0)
        alpha = math.pi / 3.0 - d / 3.0
        lvl = spec._levels["plus"]
    else:
        sec = Sector(-math.pi - d / 3.0, -math.pi / 3.0 - d / 3.0)
        alpha = math.pi / 3.0 + d / 3.0
        lvl = spec._levels["minus"]
    if not sector_contains(sec, z, tol):
        return False
    return level_value(z, alpha) >= lvl - tol


def in_domain(spec: DomainSpec, z: complex, tol: float = 1e-12) -> bool:
    """Membership of z in the region described by ``spec``."""
    z = complex(z)
    if z == 0:
        raise DomainError("membership undefined at z = 0")
    sp = spec.lam
    d = spec.delta
    th = sp.theta
    kind = spec.kind
    if kind == "DZ":
        return _in_dz(sp, z, tol)
    if kind == "DZdelta":
        return _in_dz_delta(spec, z, tol)
    if kind == "H_plus":
        return _in_h(spec, z, +1, tol)
    if kind == "H_minus":
        return _in_h(spec, z, -1, tol)
    if not _in_dz_delta(spec, z, tol):
        return False
    arg = cmath.phase(z)
    if kind == "D0":
        return abs(arg) <= math.pi - d / 3.0 + tol
    if kind == "Dminus":
        return abs(math.pi / 3.0 - arg) >= d / 3.0 - tol
    if kind == "Dplus":
        hspec = spec if "minus" in spec._levels else DomainSpec(
            "H_minus", sp, d, spec.epsilon)
        if sector_contains(Sector(-math.pi + 4.0 * th / 3.0,
                                  math.pi / 3.0 - d / 3.0), z, tol):
            return True
        if sector_contains(Sector(math.pi / 3.0 + 4.0 * th / 3.0 + d / 3.0,
                                  math.pi - d / 3.0), z, tol):
            return True
        return _in_h(hspec, z, -1, tol)
    if kind == "Dstar":
        hspec = spec if "plus" in spec._levels else DomainSpec(
            "H_plus", sp, d, spec.epsilon)
        if sector_contains(Sector(math.pi / 3.0 + d / 3.0,
                                  math.pi + 4.0 * th / 3.0), z, tol):
            return True
        if sector_contains(Sector(-math.pi / 3.0 + d / 3.0,
                                  -math.pi / 3.0 + d / 3.0 + 4.0 * th / 3.0),
                           z, tol):
            return True
        return _in_h(hspec, z, +1, tol)
    raise DomainError(f"unknown region kind {kind!r}")


# ----------------------------------------------------------------------
# Kernel-estimate contours
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class UpsilonContour:
    """Discretized level curve Im(s e^(-i phi))^(3/2) = const through z.

    Parametrized by tau = Re((s e^(-i phi))^(3/2)) >= x0, so that
    s(tau) = e^(i phi) (tau + i y)^(2/3); Re s^(3/2) is affine in tau and
    the trace is asymptotic to the ray arg s = phi.
    """

    z: complex
    phi: float
    tau: np.ndarray
    nodes: np.ndarray
    tangents: np.ndarray       # ds/dtau
    weights: np.ndarray        # trapezoid weights in tau
    x0: float
    y: float
    degenerate: bool = False

    def arc_weights(self) -> np.ndarray:
        return self.weights * np.abs(self.tangents)


def choose_phi(z: complex, delta: float) -> float:
    """Contour direction for anchor z: clamp(arg z) into the admissible
    band, leaving a delta/3 margin on every constraint."""
    z = complex(z)
    if z == 0:
        raise DomainError("no contour through the origin")
    a = cmath.phase(z)
    if abs(a) > math.pi - 2.0 * delta / 3.0 + 1e-12:
        raise DomainError("anchor too close to the negative half-line")
    bound = math.pi / 3.0 - delta / 3.0
    return min(max(a, -bound), bound)


def _auto_T(phi: float) -> float:
    c = max(math.cos(1.5 * phi), 0.05)
    return 28.0 / c


def upsilon_contour(z: complex, phi: float, T: float | None = None,
                    n: int = 256,
                    tau_grid: np.ndarray | None = None) -> UpsilonContour:
    """Discretize the level curve through z toward its asymptotic ray.

    Nodes are graded quadratically toward the anchor; ``tau_grid``
    overrides the parameter grid (offsets from the anchor parameter, for
    callers that need custom tails).  The degenerate aperture
    |arg z - phi| = 2 pi/3 (curve through the origin) is handled by
    splitting at the origin and excluding it from the nodes.
    """
    z = complex(z)
    if z == 0:
        raise DomainError("no contour through the origin")
    if abs(phi) > math.pi / 3.0 + 1e-12:
        raise DomainError("|phi| <= pi/3 required")
    gap = cmath.phase(z) - phi
    if abs(gap) > 2.0 * math.pi / 3.0 + 1e-12:
        raise DomainError("|arg z - phi| <= 2 pi/3 required")
    if T is None:
        T = _auto_T(phi)
    w = (z * cmath.exp(-1j * phi)) ** 1.5
    x0, y = w.real, w.imag
    degenerate = abs(abs(gap) - 2.0 * math.pi / 3.0) <= 1e-9
    if tau_grid is not None:
        tau = x0 + np.asarray(tau_grid, dtype=float)
        T = float(tau[-1] - x0)
    else:
        u = np.linspace(0.0, 1.0, n)
        tau = x0 + T * u * u
    if degenerate:
        sgn = 1.0 if gap >= 0 else -1.0
        tau = tau[np.abs(tau) > 1e-9]          # origin excluded
        rot = cmath.exp(1j * phi)
        branch = np.where(tau < 0, cmath.exp(2j * math.pi * sgn / 3.0), 1.0)
        nodes = rot * branch * np.abs(tau) ** _TWO_THIRDS
        tangents = rot * branch * _TWO_THIRDS * np.abs(tau) ** (-1.0 / 3.0) \
            * np.sign(tau)
    else:
        base = tau + 1j * y
        nodes = cmath.exp(1j * phi) * base ** _TWO_THIRDS
        tangents = cmath.exp(1j * phi) * _TWO_THIRDS * base ** (-1.0 / 3.0)
    wts = np.zeros_like(tau)
    dt = np.diff(tau)
    wts[:-1] += 0.5 * dt
    wts[1:] += 0.5 * dt
    return UpsilonContour(z, phi, tau, nodes, tangents, wts, x0, y, degenerate)
