"""Quasiclassical numerics for the Weber equation -y'' + x^2 y = lam y.

Submodules
----------
branched   complex values carried with an unwrapped argument
specfun    Airy/Gamma backends and the recessive Weber oracle psi
quasi      the xi/eta coordinate maps, turning points, image curves and
           envelope integrals along them
domains    validity regions in the z plane and kernel contours
bounds     envelope estimates, solution identification, Wronskians
picard     contour integral-equation solver for the Airy-normalized
           solutions
suites     grid verification suites for the analytic inequalities
harness    campaign runners behind the pcf command line
"""

from . import bounds, branched, domains, picard, quasi, specfun, suites
from .branched import BranchedComplex, Sector, continue_arg, pow_branched, sector_contains
from .bounds import SolutionVariant
from .quasi import SpectralParameter

__version__ = "0.1.0"

__all__ = [
    "bounds", "branched", "domains", "picard", "quasi", "specfun", "suites",
    "BranchedComplex", "Sector", "SolutionVariant", "SpectralParameter",
    "continue_arg", "pow_branched", "sector_contains",
]
