"""Acceptance gate: every criterion at its stated tolerance.

Each test prints one 'ACCEPT <n> pass' line with the observed figure and
runtime.  The inequality suites report empirical suprema against their
declared ceilings; closed-form cases are exact.
"""

import cmath
import math
import time

import numpy as np

from pcf import bounds, harness, picard, quasi, specfun, suites
from pcf.harness import CampaignConfig
from pcf.quasi import SpectralParameter

DELTA = math.pi / 6.0


def _report(num, detail, t0, budget):
    dt = time.monotonic() - t0
    print(f"ACCEPT {num:2d} pass  {detail}  [{dt:.1f}s / {budget:.0f}s]")
    assert dt < budget


def test_criterion_01_closed_form_oracle():
    t0 = time.monotonic()
    xs = np.linspace(0.0, 6.0, 200)
    worst = 0.0
    for pv, x in zip(specfun.psi_grid(xs, 1.0), xs):
        ref = math.exp(-x * x / 2)
        worst = max(worst, abs(pv.psi - ref) / ref)
    for pv, x in zip(specfun.psi_grid(xs[1:], 3.0), xs[1:]):
        ref = math.sqrt(2.0) * x * math.exp(-x * x / 2)
        worst = max(worst, abs(pv.psi - ref) / ref)
    assert worst < 1e-8
    _report(1, f"worst rel {worst:.2e} (tol 1e-8)", t0, 5.0)


def test_criterion_02_airy_identities():
    t0 = time.monotonic()
    rng = np.random.default_rng(11)
    zs = rng.uniform(-5, 5, 200) + 1j * rng.uniform(-5, 5, 200)
    zs = zs[np.abs(zs) <= 5.0][:100]
    assert len(zs) == 100
    worst_conn = worst_wron = 0.0
    for z in zs:
        a = specfun.airy(z)
        r = a.ai \
            - cmath.exp(-1j * math.pi / 3) * specfun.airy(z * specfun.OMEGA).ai \
            - cmath.exp(1j * math.pi / 3) * specfun.airy(z * np.conj(specfun.OMEGA)).ai
        worst_conn = max(worst_conn, abs(r))
        bi, bip = specfun.airy_bi(z)
        # 1e-12 in the working precision: the two products reach ~1e5
        # before cancelling to 1/pi, so the residual is scaled by them
        scale = 1.0 + abs(a.ai * bip) + abs(a.ai_prime * bi)
        worst_wron = max(worst_wron,
                         abs(a.ai * bip - a.ai_prime * bi - 1 / math.pi)
                         / scale)
    assert worst_conn < 1e-10
    assert worst_wron < 1e-12
    _report(2, f"rotation {worst_conn:.1e} wronskian {worst_wron:.1e}", t0, 5.0)


def test_criterion_03_connection_formulas():
    t0 = time.monotonic()
    lams = (1 + 1j, 2j, 4 * cmath.exp(1j * math.pi / 3),
            4 * cmath.exp(1j * 0.9 * math.pi))
    xs = (0.5, 1.0, 2.0, 4.0)
    worst = 0.0
    for lam in lams:
        g_minus = specfun.gamma_complex((1 - lam) / 2) / math.sqrt(2 * math.pi)
        g_plus = specfun.gamma_complex((1 + lam) / 2) / math.sqrt(2 * math.pi)
        # internal cross-check of the two Gamma factors
        prod = specfun.gamma_complex((1 - lam) / 2) \
            * specfun.gamma_complex((1 + lam) / 2)
        assert abs(prod - math.pi / cmath.cos(math.pi * lam / 2)) \
            < 1e-10 * abs(prod)
        p_vals = {x: specfun.psi(x, lam) for x in xs}
        m_vals = {x: specfun.psi(-x, lam) for x in xs}
        rp = {x: specfun.psi_rotated(x, lam, +1) for x in xs}
        rm = {x: specfun.psi_rotated(x, lam, -1) for x in xs}
        e1 = cmath.exp(1j * math.pi * (lam + 1) / 4)
        e2 = cmath.exp(1j * math.pi * (lam - 1) / 4)
        for x in xs:
            # relative to the combination's terms: toward the recessive
            # side the two rotated terms cancel by up to e^(-x^2), which
            # no floating evaluation of the right side can beat
            lhs = rp[x].psi
            t1, t2 = g_minus * e1 * p_vals[x].psi, g_minus * m_vals[x].psi / e1
            worst = max(worst, abs(lhs - t1 - t2)
                        / max(abs(lhs), abs(t1), abs(t2)))
            lhs = rm[x].psi
            t1, t2 = g_minus * e1 * m_vals[x].psi, g_minus * p_vals[x].psi / e1
            worst = max(worst, abs(lhs - t1 - t2)
                        / max(abs(lhs), abs(t1), abs(t2)))
            lhs = p_vals[x].psi
            t1, t2 = g_plus * e2 * rp[x].psi, g_plus * rm[x].psi / e2
            worst = max(worst, abs(lhs - t1 - t2)
                        / max(abs(lhs), abs(t1), abs(t2)))
            lhs = m_vals[x].psi
            t1, t2 = g_plus * e2 * rm[x].psi, g_plus * rp[x].psi / e2
            worst = max(worst, abs(lhs - t1 - t2)
                        / max(abs(lhs), abs(t1), abs(t2)))
    assert worst < 1e-6
    _report(3, f"worst rel residual {worst:.2e} (tol 1e-6)", t0, 30.0)


def test_criterion_04_envelope_sweeps():
    t0 = time.monotonic()
    moduli = (1.0, 4.0, 16.0)
    grids = {
        "0": [(m, a) for m in moduli
              for a in (DELTA, 1.0, 2.0, math.pi - 0.02)],
        "+": [(m, a) for m in moduli
              for a in (0.0, 0.5, 1.5, math.pi - DELTA)],
        "-": [(m, a) for m in moduli for a in (0.0, DELTA / 2, DELTA)],
        "*": [(m, a) for m in moduli
              for a in (math.pi / 2 - DELTA / 2 + 0.01, 2.2, math.pi - 0.02)],
    }
    counts = {}
    sups = {}
    for variant, grid in grids.items():
        n_x = 220 if variant == "-" else 60
        xs = np.linspace(0.015, 6.0, n_x)
        lams = [m * cmath.exp(1j * a) for m, a in grid]
        recs = bounds.estimate_sweep(xs, lams, variant, DELTA)
        ind = [r for r in recs if r.in_domain and math.isfinite(r.ratio)]
        counts[variant] = len(ind)
        sups[variant] = max(r.ratio for r in ind)
        assert len(ind) >= 500, (variant, len(ind))
        assert sups[variant] <= 10.0, variant
    spot = bounds.estimate_ratio(2.0, 1.0, "0")
    assert abs(spot - 0.087) <= 1e-3
    detail = " ".join(f"{v}:sup={sups[v]:.3f}(n={counts[v]})" for v in grids)
    _report(4, detail, t0, 180.0)


def test_criterion_05_olver_baseline():
    t0 = time.monotonic()
    xs = np.linspace(0.0, 6.0, 120)
    lams = [m * cmath.exp(1j * a) for m in (1.0, 4.0, 16.0)
            for a in (0.0, DELTA, 1.5, math.pi - 0.02)]
    sup = 0.0
    for x, lv, r1, r2 in bounds.olver_sweep(xs, lams):
        sup = max(sup, r1, r2)
    assert sup <= 10.0
    # the refined variant-0 domain excludes the oscillatory region that
    # the classical bounds still cover
    recs = bounds.estimate_sweep(np.linspace(0.05, 1.8, 30), [4.0], "0", DELTA)
    assert all(not r.in_domain for r in recs)
    _report(5, f"olver sup {sup:.3f} (ceiling 10)", t0, 60.0)


def test_criterion_06_lemma_suites():
    t0 = time.monotonic()
    results = suites.lemma_suites(delta=DELTA)
    failed = [r.name for r in results if not r.passed]
    assert not failed, failed
    assert sum(r.n_samples for r in results) >= 10_000
    tp = next(r for r in results if r.name == "turning_point_properties")
    assert tp.passed    # encodes r_* <= sqrt2 + 1e-12 and stationarity 1e-10
    detail = f"{len(results)} suites, {sum(r.n_samples for r in results)} samples"
    _report(6, detail, t0, 60.0)


def test_criterion_07_picard_cross_validation():
    t0 = time.monotonic()
    lams = [4 * cmath.exp(1j * DELTA), 2j, 16 * cmath.exp(2.2j),
            4 * cmath.exp(3j * math.pi / 4), 9 * cmath.exp(0.12j)]
    probes = []
    for lam in lams:
        sp = SpectralParameter.from_any(lam)
        tp = quasi.turning_point(sp)
        xs = [0.35 * math.sqrt(sp.modulus), 1.25 * math.sqrt(sp.modulus),
              1.9 * math.sqrt(sp.modulus)]
        if tp.r_star > 0.1:
            xs.append(0.5 * tp.x_star.real + 1e-3)
        for variant in ("0", "+", "-", "*"):
            for x in xs:
                z = quasi.z_of_x(x, sp)
                if picard.anchor_reachable(variant, z, sp, DELTA):
                    probes.append((sp, variant, float(x), z))
    assert len(probes) >= 20
    worst = 0.0
    for sp, variant, x, z in probes[:40]:
        run = picard.solve_a_variant(variant, z, sp, DELTA)
        a_psi, _ = bounds.a_nu_from_psi(x, sp, variant, DELTA)
        worst = max(worst, abs(run.a_value / a_psi - 1.0))
    assert worst < 1e-2
    # unperturbed hook returns the Airy seed (exactly, up to the one-ulp
    # round trip of the anchor through the contour parametrization)
    z = quasi.z_of_x(3.0, 4.0)
    hook = picard.solve_a0(z, 4.0, potential=None)
    seed, _ = specfun.airy_scaled(z)
    assert abs(hook.a_value - seed) <= 1e-14 * abs(seed)
    assert hook.iterations == 1
    # contraction rate follows the |lam|^(-2/3) law within a factor 3
    rates = {}
    for m in (4.0, 16.0, 64.0):
        sp = SpectralParameter(m, DELTA)
        run = picard.solve_a0(quasi.z_of_x(1.2 * math.sqrt(m), sp), sp)
        rates[m] = run.contraction_ratios[0]
    for m0, m1 in ((4.0, 16.0), (16.0, 64.0)):
        expected = (m0 / m1) ** (2.0 / 3.0)
        assert expected / 3.0 <= rates[m1] / rates[m0] <= expected * 3.0
    _report(7, f"{len(probes)} probes, worst gap {worst:.2e} (tol 1e-2)",
            t0, 120.0)


def test_criterion_08_derivative_bound():
    t0 = time.monotonic()
    sup_psi = sup_pic = 0.0
    cases = [("0", 4 * cmath.exp(1j * DELTA), (1.1, 2.4, 3.6)),
             ("0", 2j, (0.6, 1.4)),
             ("+", 2j, (0.6, 1.4)),
             ("*", 4 * cmath.exp(2.4j), (1.0, 2.2))]
    for variant, lam, xs in cases:
        sp = SpectralParameter.from_any(lam)
        for x in xs:
            z = quasi.z_of_x(x, sp)
            w = (1.0 + abs(z)) ** 1.25
            d_psi = bounds.a_nu_deriv(z, sp, variant, DELTA)
            sup_psi = max(sup_psi, abs(d_psi) * w)
            if picard.anchor_reachable(variant, z, sp, DELTA):
                run = picard.solve_a_variant(variant, z, sp, DELTA)
                sup_pic = max(sup_pic, abs(run.a_derivative) * w)
    assert sup_psi <= 10.0
    assert sup_pic <= 10.0
    _report(8, f"sup |da|(1+|z|)^(5/4): psi {sup_psi:.3f} picard {sup_pic:.3f}",
            t0, 60.0)


def test_criterion_09_wronskians():
    t0 = time.monotonic()
    worst = 0.0
    for lam in (2j, 4 * cmath.exp(1j * math.pi / 4)):
        sp = SpectralParameter.from_any(lam)
        z1 = quasi.z_of_x(1.0 * math.sqrt(sp.modulus), sp)
        z2 = quasi.z_of_x(1.6 * math.sqrt(sp.modulus), sp)
        t1 = bounds.wronskian_check(sp, z1)
        t2 = bounds.wronskian_check(sp, z2)
        for name in t1:
            worst = max(worst, t1[name][2])
            c1, c2 = t1[name][0], t2[name][0]
            assert abs(c1 - c2) <= 1e-6 * max(abs(c1), 1e-3), name
    assert worst < 1e-3
    _report(9, f"worst Wronskian residual {worst:.2e} (tol 1e-3)", t0, 30.0)


def test_criterion_10_appendix_integrals():
    t0 = time.monotonic()
    lams = [m * cmath.exp(1j * a) for m in (1.0, 10.0, 100.0)
            for a in (0.0, DELTA, math.pi / 2, math.pi - DELTA)]
    rows = suites.appendix_b_rows(lams, DELTA)
    sups = {}
    for r in rows:
        sups[r["kind"]] = max(sups.get(r["kind"], 0.0), r["ratio"])
    assert set(sups) == {"exp_decay", "exp_grow", "power", "mixed", "pow3",
                         "v0"}
    for kind, sup in sups.items():
        assert sup <= 10.0, (kind, sup)
    detail = " ".join(f"{k}={v:.2f}" for k, v in sorted(sups.items()))
    _report(10, detail, t0, 120.0)


def test_criterion_11_determinism(tmp_path):
    t0 = time.monotonic()
    base = dict(command="sweep-estimates", x_count=14, variants=("0", "*"),
                lambda_grid=((4.0, 2.0), (1.0, DELTA)), seed=5)
    outs = []
    for jobs, tag in ((1, "j1"), (3, "j3"), (1, "j1b")):
        out = tmp_path / tag
        cfg = CampaignConfig(output_dir=str(out), jobs=jobs, **base)
        harness.run_command(cfg)
        outs.append(out)
    names = sorted(p.name for p in outs[0].glob("*.csv"))
    assert names
    for name in names:
        ref = (outs[0] / name).read_bytes()
        assert (outs[1] / name).read_bytes() == ref, name
        assert (outs[2] / name).read_bytes() == ref, name
    _report(11, f"{len(names)} artifacts byte-identical across jobs", t0, 120.0)
