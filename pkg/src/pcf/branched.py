"""Complex values carried with an unwrapped argument.

Everything downstream (the xi map, its 2/3 power, the z-plane geometry)
lives on sheets of a logarithmic cover, so arguments are stored as plain
radians on the universal cover and are never reduced mod 2*pi implicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BranchError, DomainError, ResolutionError

DEFAULT_TOL = 1e-12

__all__ = [
    "BranchedComplex",
    "Sector",
    "pow_branched",
    "continue_arg",
    "sector_contains",
    "DEFAULT_TOL",
]


@dataclass(frozen=True)
class BranchedComplex:
    """A complex value as (modulus, unwrapped argument).

    ``arg`` is *not* reduced mod 2*pi; two instances with arguments
    differing by 2*pi denote distinct points of the cover that project to
    the same complex number.  A zero modulus canonically carries arg 0.
    """

    modulus: float
    arg: float

    def __post_init__(self):
        if not (self.modulus >= 0.0):
            raise ValueError(f"modulus must be >= 0, got {self.modulus}")
        if not (math.isfinite(self.modulus) and math.isfinite(self.arg)):
            raise ValueError("modulus and arg must be finite")
        if self.modulus == 0.0 and self.arg != 0.0:
            object.__setattr__(self, "arg", 0.0)

    @property
    def value(self) -> complex:
        """Principal projection onto the complex plane."""
        return complex(self.modulus * math.cos(self.arg),
                       self.modulus * math.sin(self.arg))

    @classmethod
    def from_complex(cls, z: complex, arg: float | None = None) -> "BranchedComplex":
        """Lift ``z`` to the cover.

        ``arg`` selects the sheet; it must agree with the principal
        argument of ``z`` mod 2*pi.  Default is the principal lift.
        """
        z = complex(z)
        m = abs(z)
        if m == 0.0:
            return cls(0.0, 0.0)
        a0 = math.atan2(z.imag, z.real)
        if arg is None:
            return cls(m, a0)
        k = round((arg - a0) / (2.0 * math.pi))
        lifted = a0 + 2.0 * math.pi * k
        if abs(lifted - arg) > 1e-9:
            raise BranchError(
                f"arg {arg} is not a lift of the principal argument {a0}")
        return cls(m, lifted)

    def conjugate(self) -> "BranchedComplex":
        return BranchedComplex(self.modulus, -self.arg)

    def __mul__(self, other: "BranchedComplex") -> "BranchedComplex":
        return BranchedComplex(self.modulus * other.modulus, self.arg + other.arg)

    def __truediv__(self, other: "BranchedComplex") -> "BranchedComplex":
        if other.modulus == 0.0:
            raise ZeroDivisionError("division by branched zero")
        return BranchedComplex(self.modulus / other.modulus, self.arg - other.arg)


def pow_branched(w: BranchedComplex, p: float) -> BranchedComplex:
    """w**p on the unwrapped sheet: (m, a) -> (m**p, p*a)."""
    if w.modulus == 0.0:
        if p < 0:
            raise DomainError("0**p with p < 0")
        return BranchedComplex(0.0, 0.0)
    return BranchedComplex(w.modulus ** p, p * w.arg)


def continue_arg(path: Sequence[complex],
                 seed_arg: float | None = None) -> list[BranchedComplex]:
    """Lift an ordered sequence of nonzero samples to the cover.

    The first sample gets ``seed_arg`` (default: its principal argument);
    subsequent arguments follow by continuity.  Consecutive samples must
    subtend less than pi at the origin, otherwise the winding is ambiguous
    and the caller has to refine the path.
    """
    zs = np.asarray(path, dtype=complex)
    if zs.size == 0:
        return []
    if np.any(zs == 0):
        raise DomainError("path passes through 0")
    pr = np.angle(zs)
    if seed_arg is None:
        seed_arg = float(pr[0])
    else:
        k = round((seed_arg - pr[0]) / (2.0 * math.pi))
        if abs(pr[0] + 2.0 * math.pi * k - seed_arg) > 1e-9:
            raise BranchError("seed_arg is not a lift of the first sample's argument")
    d = np.diff(pr)
    d = (d + math.pi) % (2.0 * math.pi) - math.pi
    if np.any(np.abs(d) >= math.pi * (1.0 - 1e-9)):
        raise ResolutionError("consecutive samples subtend >= pi; refine the path")
    args = seed_arg + np.concatenate(([0.0], np.cumsum(d)))
    return [BranchedComplex(float(abs(z)), float(a)) for z, a in zip(zs, args)]


@dataclass(frozen=True)
class Sector:
    """Closed/open sector alpha <= arg z <= beta, width at most 2*pi.

    ``S[-pi, pi]`` models the plane cut along the negative reals with the
    two cut sides kept distinct; distinguishing them requires testing a
    BranchedComplex (plain complex numbers cannot carry the side).
    """

    alpha: float
    beta: float
    closed_lo: bool = True
    closed_hi: bool = True

    def __post_init__(self):
        if self.beta < self.alpha:
            raise ValueError("need alpha <= beta")
        if self.beta - self.alpha > 2.0 * math.pi + 1e-12:
            raise ValueError("sector wider than 2*pi")


def sector_contains(s: Sector, z: complex | BranchedComplex,
                    tol: float = DEFAULT_TOL) -> bool:
    """Membership of ``z`` in sector ``s``.

    For a plain complex, the principal argument is tested against
    [alpha, beta] up to shifts by 2*pi.  A BranchedComplex is tested with
    its unwrapped argument as-is, which distinguishes the two sides of the
    cut for S[-pi, pi].  Closed endpoints are widened by ``tol``; open
    endpoints are strict.
    """
    if isinstance(z, BranchedComplex):
        if z.modulus == 0.0:
            raise DomainError("sector membership undefined at z = 0")
        candidates = [z.arg]
    else:
        z = complex(z)
        if z == 0:
            raise DomainError("sector membership undefined at z = 0")
        a = math.atan2(z.imag, z.real)
        candidates = [a - 2.0 * math.pi, a, a + 2.0 * math.pi]
    for a in candidates:
        lo_ok = (a >= s.alpha - tol) if s.closed_lo else (a > s.alpha)
        hi_ok = (a <= s.beta + tol) if s.closed_hi else (a < s.beta)
        if lo_ok and hi_ok:
            return True
    return False
