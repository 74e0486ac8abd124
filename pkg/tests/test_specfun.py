import cmath
import math

import numpy as np
import pytest
from scipy import special as sp_special

from pcf import specfun
from pcf.errors import DomainError, PoleError
from pcf.specfun import OMEGA

# ----------------------------------------------------------------------
# Independent oracles
# ----------------------------------------------------------------------

AI0 = 3.0 ** (-2.0 / 3.0) / sp_special.gamma(2.0 / 3.0)
AIP0 = -(3.0 ** (-1.0 / 3.0)) / sp_special.gamma(1.0 / 3.0)


def airy_maclaurin(z, terms=80):
    """Series oracle for Ai, Ai' (accurate for |z| <= ~5 in doubles)."""
    z = complex(z)
    f, fp = 1.0 + 0j, 0.0 + 0j
    g, gp = z, 1.0 + 0j
    tf, tg = 1.0 + 0j, z
    for k in range(1, terms):
        tf = tf * z ** 3 / ((3 * k) * (3 * k - 1))
        f += tf
        fp += tf * (3 * k) / z if z != 0 else 0.0
        tg = tg * z ** 3 / ((3 * k + 1) * (3 * k))
        g += tg
        gp += tg * (3 * k + 1) / z if z != 0 else 0.0
    ai = AI0 * f + AIP0 * g
    aip = AI0 * fp + AIP0 * gp
    if z == 0:
        aip = AIP0
    return ai, aip


def test_airy_at_zero():
    v = specfun.airy(0.0)
    assert v.ai == pytest.approx(0.3550280539, abs=1e-10)
    assert v.ai_prime == pytest.approx(-0.2588194038, abs=1e-10)
    assert v.ai == pytest.approx(AI0, rel=1e-13)


def test_airy_vs_series_oracle():
    rng = np.random.default_rng(1)
    zs = rng.uniform(-5, 5, 40) + 1j * rng.uniform(-5, 5, 40)
    zs = zs[np.abs(zs) <= 5.0]
    for z in zs:
        ref, refp = airy_maclaurin(z)
        got = specfun.airy(z)
        assert abs(got.ai - ref) <= 1e-10 * max(1.0, abs(ref))
        assert abs(got.ai_prime - refp) <= 1e-10 * max(1.0, abs(refp))


def test_airy_rotation_identity():
    # Ai(z) = e^{-i pi/3} Ai(z w) + e^{i pi/3} Ai(z conj(w))
    z = 2.0 + 1.0j
    r = specfun.airy(z).ai \
        - cmath.exp(-1j * math.pi / 3) * specfun.airy(z * OMEGA).ai \
        - cmath.exp(1j * math.pi / 3) * specfun.airy(z * np.conj(OMEGA)).ai
    assert abs(r) < 1e-10


def test_airy_rotation_identity_grid():
    rng = np.random.default_rng(2)
    zs = rng.uniform(-5, 5, 100) + 1j * rng.uniform(-5, 5, 100)
    for z in zs:
        r = specfun.airy(z).ai \
            - cmath.exp(-1j * math.pi / 3) * specfun.airy(z * OMEGA).ai \
            - cmath.exp(1j * math.pi / 3) * specfun.airy(z * np.conj(OMEGA)).ai
        assert abs(r) < 1e-10


def test_airy_asymptotic_normalization():
    # the first asymptotic correction is 5/(72 zeta) ~ 4.6e-3 at z = 8
    z = 8.0
    v = specfun.airy(z).ai * 2 * math.sqrt(math.pi) * z ** 0.25 \
        * math.exp((2.0 / 3.0) * z ** 1.5)
    assert abs(v - 1.0) < 5e-3
    z = 20.0
    v = specfun.airy(z).ai * 2 * math.sqrt(math.pi) * z ** 0.25 \
        * math.exp((2.0 / 3.0) * z ** 1.5)
    assert abs(v - 1.0) < 1.2e-3


def test_bi_combination():
    bi, bip = specfun.airy_bi(0.0)
    assert bi == pytest.approx(math.sqrt(3.0) * AI0, rel=1e-12)
    assert bi == pytest.approx(0.6149266274, abs=1e-9)
    # built bit-for-bit from the displayed combination
    z = 1.3 - 0.4j
    a = specfun.airy(z)
    aw = specfun.airy(OMEGA * z)
    c = 2.0 * cmath.exp(-1j * math.pi / 3)
    assert specfun.airy_bi(z)[0] == 1j * (c * aw.ai - a.ai)


def test_bi_wronskian():
    z = 1.0
    a = specfun.airy(z)
    bi, bip = specfun.airy_bi(z)
    assert abs(a.ai * bip - a.ai_prime * bi - 1.0 / math.pi) < 1e-12


def test_bi_oscillatory():
    bi, _ = specfun.airy_bi(-3.0)
    assert abs(bi.imag) < 1e-12
    assert abs(bi) <= 1.0


def test_airy_scaled_consistency():
    for z in (3.0 + 0.5j, -4.0 + 2.0j, 13.0 + 1.0j,
              14.0 * cmath.exp(2.5j), 20.0 * cmath.exp(-1.0j)):
        a, ap = specfun.airy_scaled(z)
        av = specfun.airy(z)
        e = cmath.exp((2.0 / 3.0) * specfun.zpow(z, 1.5))
        assert abs(a - av.ai * e) <= 1e-9 * abs(a)
        ref = (av.ai_prime + specfun.zpow(z, 0.5) * av.ai) * e
        assert abs(ap - ref) <= 1e-8 * max(abs(ap), 1e-30)


def test_scaled_airy_bounded():
    # |a(z)| (1+|z|)^{1/4} stays bounded away from the negative half-line
    sup = 0.0
    for arg in np.linspace(-math.pi + 0.15, math.pi - 0.15, 21):
        for m in (0.5, 2.0, 8.0, 25.0):
            z = m * cmath.exp(1j * arg)
            a, _ = specfun.airy_scaled(z)
            sup = max(sup, abs(a) * (1.0 + abs(z)) ** 0.25)
    assert sup < 2.0


def test_gamma_values():
    assert specfun.gamma_complex(1.0) == pytest.approx(1.0, rel=1e-14)
    assert specfun.gamma_complex(0.5) == pytest.approx(math.sqrt(math.pi),
                                                       rel=1e-13)
    got = abs(specfun.gamma_complex(1 + 1j))
    assert got == pytest.approx(math.sqrt(math.pi / math.sinh(math.pi)),
                                rel=1e-12)
    assert got == pytest.approx(0.5215640, abs=1e-6)


def test_gamma_reflection():
    w = 0.3 + 0.7j
    lhs = specfun.gamma_complex(w) * specfun.gamma_complex(1 - w)
    assert abs(lhs - math.pi / cmath.sin(math.pi * w)) < 1e-12 * abs(lhs)


def test_gamma_large_modulus():
    mp = pytest.importorskip("mpmath")
    w = 30.0 + 40.0j
    ref = complex(mp.gamma(mp.mpc(w.real, w.imag)))
    assert abs(specfun.gamma_complex(w) / ref - 1.0) < 1e-12


def test_gamma_pole():
    for w in (0.0, -3.0):
        with pytest.raises(PoleError):
            specfun.gamma_complex(w)


# ----------------------------------------------------------------------
# The Weber oracle
# ----------------------------------------------------------------------

def test_psi_closed_form_lam1():
    xs = np.linspace(0.0, 6.0, 41)
    vals = specfun.psi_grid(xs, 1.0)
    for x, pv in zip(xs, vals):
        assert abs(pv.psi - math.exp(-x * x / 2)) <= 1e-8 * math.exp(-x * x / 2)
        assert abs(pv.psi_prime + x * math.exp(-x * x / 2)) \
            <= 1e-8 * max(1e-3, abs(x) * math.exp(-x * x / 2))


def test_psi_closed_form_lam3():
    xs = np.linspace(0.1, 6.0, 31)
    vals = specfun.psi_grid(xs, 3.0)
    for x, pv in zip(xs, vals):
        ref = math.sqrt(2.0) * x * math.exp(-x * x / 2)
        assert abs(pv.psi - ref) <= 1e-8 * ref
    assert abs(specfun.psi(1.0, 3.0).psi - math.sqrt(2) * math.exp(-0.5)) < 1e-8
    assert specfun.psi(1.0, 3.0).psi.real == pytest.approx(0.8577639, abs=1e-6)


def test_psi_zero_closed_forms():
    for lam in (1.0, 2j, 1 + 1j, 3.0):
        v, d = specfun.psi_zero(lam)
        pv = specfun.psi(0.0, lam)
        assert abs(pv.psi - v) <= 1e-8 * max(1.0, abs(v))
        assert abs(pv.psi_prime - d) <= 1e-8 * max(1.0, abs(d))


def test_psi_asymptotic_normalization():
    lam = 2j
    pv = specfun.psi(6.0, lam)
    r = pv.psi * (6 * math.sqrt(2)) ** ((1 - lam) / 2) * math.exp(18.0)
    assert abs(r - 1.0) < 2e-2


def test_psi_mpmath_cross_check():
    mp = pytest.importorskip("mpmath")
    lam = 2j
    ref = complex(mp.pcfu(mp.mpc(0, -1), 2 * mp.sqrt(2)))
    got = specfun.psi(2.0, lam).psi
    assert abs(got / ref - 1.0) < 1e-9


def test_psi_extends_x_far():
    pv = specfun.psi(40.0, 1.0)
    assert pv.log_abs == pytest.approx(-800.0, rel=1e-10)


def test_psi_validity_floor():
    with pytest.raises(DomainError):
        specfun.psi(1.0, 0.1)


def test_psi_ode_residual():
    lam = 4 * cmath.exp(1j * math.pi / 3)
    h = 1e-3
    for x in (0.5, 1.5, 3.0):
        vals = specfun.psi_grid([x - h, x, x + h], lam)
        psis = [v.psi for v in vals]
        second = (psis[0] - 2 * psis[1] + psis[2]) / h ** 2
        res = abs(-second + (x * x - lam) * psis[1])
        scale = max(abs(psis[1]), abs(vals[1].psi_prime)) * (1 + x * x)
        assert res <= 1e-5 * scale


def test_psi_entire_in_lambda():
    # Cauchy mean-value property over a small circle in lambda
    lam0 = 2.0 + 1.0j
    x = 1.3
    center = specfun.psi(x, lam0).psi
    vals = [specfun.psi(x, lam0 + 0.1 * cmath.exp(2j * math.pi * k / 16)).psi
            for k in range(16)]
    assert abs(np.mean(vals) - center) < 1e-6 * abs(center)


def test_psi_conjugation_symmetry():
    lam = 2.0 + 1.5j
    a = specfun.psi(1.7, lam).psi
    b = specfun.psi(1.7, np.conj(lam)).psi
    assert abs(np.conj(a) - b) < 1e-9 * abs(a)


def test_psi_rotated_connection():
    # psi(+-ix, -lam) against the Gamma-quotient connection formula
    lam = 2j
    G = specfun.gamma_complex((1 - lam) / 2) / math.sqrt(2 * math.pi)
    for x in (0.5, 1.0, 2.0):
        plus = specfun.psi_rotated(x, lam, +1).psi
        minus = specfun.psi_rotated(x, lam, -1).psi
        p = specfun.psi(x, lam).psi
        m = specfun.psi(-x, lam).psi
        e = cmath.exp(1j * math.pi * (lam + 1) / 4)
        assert abs(plus - G * (e * p + m / e)) < 1e-6 * abs(plus)
        assert abs(minus - G * (e * m + p / e)) < 1e-6 * abs(minus)


def test_weber_continue_matches_complex_eval():
    lam = 1.0 + 2.0j
    base = specfun.psi(2.0, lam)
    y, dy, log = specfun.weber_continue(lam, 2.0, base.psi_scaled,
                                        base.psi_prime_scaled,
                                        base.log_scale, 2.0 + 0.3j)
    ref = specfun.psi_complex(2.0 + 0.3j, lam)
    assert abs(y * cmath.exp(log) - ref.psi) < 1e-9 * abs(ref.psi)
