import cmath
import math

import numpy as np
import pytest

from pcf import domains, quasi
from pcf.errors import DomainError
from pcf.quasi import ETA_E, SpectralParameter

DELTA = math.pi / 6.0


def test_z_E_point():
    assert domains.z_E_point(1.0).real == pytest.approx(
        -(3 * math.pi / 4) ** (2 / 3), rel=1e-13)
    assert domains.z_E_point(1.0).real == pytest.approx(-1.770774, abs=1e-4)
    zE = domains.z_E_point(cmath.exp(1j * math.pi / 2))
    assert cmath.phase(zE) == pytest.approx(-2 * math.pi / 3, rel=1e-12)
    assert abs(zE) == pytest.approx((3 * math.pi / 4) ** (2 / 3), rel=1e-12)


def test_b_eps_disk():
    eps = 0.05
    center, radius = domains.b_eps_disk(4.0, eps)
    assert center == domains.z_E_point(4.0)
    assert radius == pytest.approx(abs(center) * math.sin(eps), rel=1e-14)


def test_choose_epsilon_range():
    eps = domains.choose_epsilon(DELTA)
    assert 0.0 < eps < DELTA / 3.0


def test_w_tangent_on_boundary_and_argmax():
    sp = SpectralParameter.from_any(4j)
    w = domains.w_tangent(sp, +1, DELTA)
    center, radius = domains.b_eps_disk(sp, domains.choose_epsilon(DELTA))
    assert abs(abs(w - center) - radius) < 1e-10
    alpha = math.pi / 3 - DELTA / 3
    lvl = domains.level_value(w, alpha)
    # argmax: perturbations along the boundary do not increase the level
    t0 = cmath.phase(w - center)
    for dt in (-1e-4, 1e-4):
        wp = center + radius * cmath.exp(1j * (t0 + dt))
        assert domains.level_value(wp, alpha) <= lvl + 1e-12


def test_w_tangent_ordering_condition():
    for lam in (cmath.exp(1j * DELTA), 4j, 16 * cmath.exp(2.8j)):
        sp = SpectralParameter.from_any(lam)
        w = domains.w_tangent(sp, +1, DELTA)
        alpha = math.pi / 3 - DELTA / 3
        assert domains.level_value(w, alpha) \
            <= domains.level_value(domains.z0_point(sp), alpha) + 1e-12


def test_w_tangent_hypotheses():
    with pytest.raises(DomainError):
        domains.w_tangent(SpectralParameter(4.0, 0.01), +1, DELTA)
    with pytest.raises(DomainError):
        domains.w_tangent(SpectralParameter(4.0, math.pi / 2), -1, DELTA)


def test_in_domain_excluded_parts():
    sp = SpectralParameter.from_any(2j)
    spec = domains.DomainSpec("DZdelta", sp, DELTA)
    zE = domains.z_E_point(sp)
    assert not domains.in_domain(spec, zE)
    assert not domains.in_domain(spec, zE * 1.4)     # radial shadow
    assert domains.in_domain(spec, zE * 0.5)         # before the disk
    with pytest.raises(DomainError):
        domains.in_domain(spec, 0.0)
    dz = domains.DomainSpec("DZ", sp, DELTA)
    assert not domains.in_domain(dz, sp.power(2 / 3) * (ETA_E - 1.0))
    assert domains.in_domain(dz, 1.0 + 0j)


def test_membership_consistency():
    rng = np.random.default_rng(5)
    for lam in (2j, 4 * cmath.exp(1j * 2.0)):
        sp = SpectralParameter.from_any(lam)
        d0 = domains.DomainSpec("D0", sp, DELTA)
        dzd = domains.DomainSpec("DZdelta", sp, DELTA)
        for _ in range(150):
            z = complex(rng.uniform(-8, 8), rng.uniform(-8, 8))
            if z == 0:
                continue
            if domains.in_domain(d0, z):
                assert domains.in_domain(dzd, z)


def test_curve_inside_d0():
    for lam in (2j, 4 * cmath.exp(1j * 2.6), cmath.exp(1j * DELTA)):
        sp = SpectralParameter.from_any(lam)
        spec = domains.DomainSpec("D0", sp, DELTA)
        gc = quasi.gamma_contour(sp, 6.0 * math.sqrt(sp.modulus), 48)
        for z in gc.nodes:
            if abs(z) > 1e-9:
                assert domains.in_domain(spec, z)


def test_domain_spec_validation():
    with pytest.raises(DomainError):
        domains.DomainSpec("bogus", SpectralParameter(1.0, 0.5))
    with pytest.raises(DomainError):
        domains.DomainSpec("D0", SpectralParameter(1.0, 0.5), delta=1.0)
    with pytest.raises(DomainError):
        domains.DomainSpec("Dstar", SpectralParameter(1.0, 0.01), DELTA)
    with pytest.raises(DomainError):
        domains.DomainSpec("Dplus", SpectralParameter(1.0, math.pi / 2), DELTA)


# ----------------------------------------------------------------------
# Kernel contours
# ----------------------------------------------------------------------

def test_upsilon_anchor_and_ray_case():
    z = 2.0 * cmath.exp(0.4j)
    cont = domains.upsilon_contour(z, 0.4, n=64)
    assert abs(cont.nodes[0] - z) < 1e-12
    # arg z = phi degenerates into the ray e^{i phi} [|z|, inf)
    assert np.allclose(np.angle(cont.nodes), 0.4, atol=1e-12)
    assert np.all(np.diff(np.abs(cont.nodes)) > 0)


def test_upsilon_level_and_monotonicity():
    z = 1.5 * cmath.exp(1.9j)
    phi = domains.choose_phi(z, DELTA)
    cont = domains.upsilon_contour(z, phi, n=200)
    w = (cont.nodes * cmath.exp(-1j * phi)) ** 1.5
    assert np.max(np.abs(w.imag - cont.y)) < 1e-10
    p = cont.nodes ** 1.5
    assert np.all(np.diff(p.real) > 0)


def test_upsilon_nesting():
    z = 1.5 * cmath.exp(1.9j)
    phi = domains.choose_phi(z, DELTA)
    cont = domains.upsilon_contour(z, phi, n=101)
    w = cont.nodes[40]
    sub = domains.upsilon_contour(w, phi, n=50)
    wq = (sub.nodes * cmath.exp(-1j * phi)) ** 1.5
    assert np.max(np.abs(wq.imag - cont.y)) < 1e-9
    assert sub.x0 >= cont.x0 - 1e-12


def test_upsilon_degenerate():
    z = 2.0 * cmath.exp(2j * math.pi / 3)
    cont = domains.upsilon_contour(z, 0.0, n=400)
    assert cont.degenerate
    assert np.min(np.abs(cont.nodes)) > 1e-7
    assert abs(cont.nodes[0] - z) < 1e-9


def test_upsilon_preconditions():
    with pytest.raises(DomainError):
        domains.upsilon_contour(1.0 + 0j, 1.2)
    with pytest.raises(DomainError):
        domains.upsilon_contour(cmath.exp(2.9j), 0.0)
    with pytest.raises(DomainError):
        domains.upsilon_contour(0.0, 0.0)


def test_choose_phi():
    assert domains.choose_phi(1.0, DELTA) == 0.0
    d = math.pi / 6
    phi = domains.choose_phi(cmath.exp(1j * math.pi / 2), d)
    assert phi == pytest.approx(math.pi / 3 - math.pi / 18)
    assert abs(math.pi / 2 - phi) <= 2 * math.pi / 3 - d / 3 + 1e-12
    a = -(math.pi - 2 * d / 3)
    phi = domains.choose_phi(cmath.exp(1j * a), d)
    assert phi == pytest.approx(-math.pi / 3 + d / 3)
    assert abs(a - phi) == pytest.approx(2 * math.pi / 3 - d / 3)
    with pytest.raises(DomainError):
        domains.choose_phi(cmath.exp(1j * (math.pi - 0.01)), d)


def test_upsilon_power_integral_bound():
    z = 2.0 * cmath.exp(-1.2j)
    phi = domains.choose_phi(z, DELTA)
    cont = domains.upsilon_contour(z, phi, n=3000)
    aw = cont.arc_weights()
    for alpha in (1.5, 2.0, 3.0):
        val = float(np.sum(aw / (1 + np.abs(cont.nodes)) ** alpha))
        tail = (1 + abs(cont.nodes[-1])) ** (1 - alpha) / (alpha - 1)
        assert val + tail <= 2.0 / (alpha - 1.0)


def test_upsilon_exponential_integral_bound():
    sup = 0.0
    for az in np.linspace(-(math.pi - 2 * DELTA / 3), math.pi - 2 * DELTA / 3, 7):
        z = 2.0 * cmath.exp(1j * az)
        phi = domains.choose_phi(z, DELTA)
        cont = domains.upsilon_contour(z, phi, n=3000)
        aw = cont.arc_weights()
        decay = np.exp(-(4.0 / 3.0) * (cont.tau - cont.x0)
                       * math.cos(1.5 * phi))
        for alpha in (0.0, 1.0, 2.0):
            val = float(np.sum(decay / (1 + np.abs(cont.nodes)) ** alpha * aw))
            sup = max(sup, val * (1 + abs(z)) ** (alpha + 0.5))
    assert sup <= 10.0
