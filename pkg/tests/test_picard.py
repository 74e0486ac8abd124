import cmath
import math

import pytest

from pcf import bounds, domains, picard, quasi, specfun
from pcf.errors import DomainError
from pcf.quasi import SpectralParameter

DELTA = math.pi / 6.0


def test_kernel_vanishes_on_diagonal():
    assert picard.kernel_J(1 + 0.5j, 1 + 0.5j) == 0


def test_kernel_green_identity():
    # J = pi (Ai(s) Bi(z) - Ai(z) Bi(s)) exp((2/3)(z^{3/2} - s^{3/2}))
    for z, s in ((2.0, 3.0), (1.0 - 1.0j, 2.5 - 0.5j)):
        J = picard.kernel_J(z, s)
        j0 = specfun.airy(s).ai * specfun.airy_bi(z)[0] \
            - specfun.airy(z).ai * specfun.airy_bi(s)[0]
        ref = math.pi * j0 * cmath.exp(
            (2 / 3) * (specfun.zpow(z, 1.5) - specfun.zpow(s, 1.5)))
        assert abs(J - ref) < 1e-10 * max(abs(J), 1e-10)


def test_kernel_potential_bound_on_contour():
    lam = 4.0
    w = quasi.z_of_x(3.0, lam)
    phi = domains.choose_phi(w, DELTA)
    cont = domains.upsilon_contour(w, phi, n=40)
    sup = 0.0
    for s in cont.nodes[1:20]:
        val = abs(picard.kernel_J(w, s) * quasi.V0(s, lam)) \
            * (1 + abs(w)) ** 0.25 * (4.0 ** (4 / 3) + abs(s) ** 2) \
            * (1 + abs(s)) ** 0.25
        sup = max(sup, val)
    assert sup <= 10.0


def test_zero_potential_hook():
    lam = 4.0
    z = quasi.z_of_x(3.0, lam)
    run = picard.solve_a0(z, lam, potential=None)
    seed, _ = specfun.airy_scaled(z)
    assert run.a_value == pytest.approx(seed, abs=1e-14)
    assert run.iterations == 1
    assert run.converged


def test_a0_matches_psi_route():
    lam = 4.0
    z = quasi.z_of_x(3.0, lam)
    run = picard.solve_a0(z, lam)
    a_psi, _ = bounds.a_nu_from_psi(3.0, lam, "0")
    assert abs(run.a_value / a_psi - 1.0) < 1e-3
    d_psi = bounds.a_nu_deriv(z, lam, "0")
    assert abs(run.a_derivative / d_psi - 1.0) < 1e-3


def test_variants_match_psi_route():
    cases = [("-", 2j, 0.35), ("+", 4 * cmath.exp(1j * math.pi / 3), 1.0),
             ("*", 4 * cmath.exp(3j * math.pi / 4), 1.0)]
    for var, lam, x in cases:
        sp = SpectralParameter.from_any(lam)
        z = quasi.z_of_x(x, sp)
        run = picard.solve_a_variant(var, z, sp)
        a_psi, _ = bounds.a_nu_from_psi(x, sp, var)
        assert abs(run.a_value / a_psi - 1.0) < 1e-2, var


def test_sector_precondition():
    sp = SpectralParameter.from_any(2j)
    # far outside every region of variant '+': the excluded shadow ray
    zE = domains.z_E_point(sp)
    with pytest.raises(DomainError):
        picard.solve_a_variant("+", 1.5 * zE, sp)
    with pytest.raises(DomainError):
        picard.solve_a_variant("*", quasi.z_of_x(1.0, 4.0), 4.0)


def test_conditioning_guard():
    # anchor deep past the rotated sheet boundary is rejected
    sp = SpectralParameter.from_any(16 * cmath.exp(1j * 2.6))
    z = quasi.z_of_x(8.8, sp)
    assert not picard.anchor_reachable("+", z, sp)
    with pytest.raises(DomainError):
        picard.solve_a_variant("+", z, sp)


def test_discretization_self_consistency():
    lam = 4.0
    z = quasi.z_of_x(3.0, lam)
    a1 = picard.solve_a0(z, lam).a_value
    a2 = picard.solve_a0(z, lam, n=1120).a_value
    assert abs(a2 - a1) < 5e-10


def test_contour_choice_independence():
    sp = SpectralParameter.from_any(4 * cmath.exp(1j * 1.2))
    z = quasi.z_of_x(2.3, sp)
    zeta0 = z  # variant 0 frame
    lo, hi = picard._phi_window("0", sp, zeta0, DELTA)
    phis = [lo + 0.3 * (hi - lo), lo + 0.8 * (hi - lo)]
    runs = [picard.solve_a_variant("0", z, sp, phi=p) for p in phis]
    assert abs(runs[0].a_value - runs[1].a_value) < 1e-6


def test_contraction_scaling():
    rates = {}
    for m in (4.0, 16.0, 64.0):
        sp = SpectralParameter(m, DELTA)
        z = quasi.z_of_x(1.2 * math.sqrt(m), sp)
        run = picard.solve_a0(z, sp)
        assert run.changes == sorted(run.changes, reverse=True)
        rates[m] = run.contraction_ratios[0]
    for m0, m1 in ((4.0, 16.0), (16.0, 64.0)):
        expected = (m0 / m1) ** (2.0 / 3.0)
        actual = rates[m1] / rates[m0]
        assert expected / 3.0 <= actual <= expected * 3.0


def test_asymptotic_error_scaling():
    sup = 0.0
    for m in (4.0, 16.0):
        sp = SpectralParameter(m, 0.7)
        for x in (1.3 * math.sqrt(m), 2.0 * math.sqrt(m)):
            z = quasi.z_of_x(x, sp)
            run = picard.solve_a0(z, sp)
            seed, _ = specfun.airy_scaled(z)
            err = abs(run.a_value / seed - 1.0)
            sup = max(sup, err * m ** (2 / 3) * (1 + abs(z)) ** 0.5)
    assert sup <= 10.0


def test_picard_solution_satisfies_ode():
    # u = exp(-(2/3) z^{3/2}) v solves u'' - z u = V0 u; finite differences
    # across three neighboring anchors on the curve
    lam = 4.0
    h = 2e-3
    z0 = quasi.z_of_x(3.0, lam).real
    us = []
    for z in (z0 - h, z0, z0 + h):
        run = picard.solve_a0(complex(z), lam)
        us.append(run.a_value * cmath.exp(-(2 / 3) * specfun.zpow(z, 1.5)))
    upp = (us[0] - 2 * us[1] + us[2]) / h ** 2
    res = abs(upp - z0 * us[1] - quasi.V0(z0, lam) * us[1])
    assert res <= 1e-4 * abs(us[1])


def test_run_metadata():
    lam = 4.0
    z = quasi.z_of_x(3.0, lam)
    run = picard.solve_a0(z, lam)
    assert run.converged
    assert run.n_nodes >= 560
    assert run.variant == "0"
    assert run.anchor_z == z
    assert run.iterations == len(run.changes)
